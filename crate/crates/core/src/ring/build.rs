use std::sync::Arc;

use super::{digits, undigits, Elem, FiniteRing, RingKind, RingTables, CONSTRUCTION_BUDGET};
use crate::error::{Error, Result};

fn tabulate(n: usize, f: impl Fn(usize, usize) -> usize) -> Vec<Elem> {
    (0..n * n).map(|i| Elem::from(f(i / n, i % n))).collect()
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn check_budget(what: &'static str, size: usize) -> Result<()> {
    if size > CONSTRUCTION_BUDGET {
        Err(Error::Size {
            what,
            size,
            budget: CONSTRUCTION_BUDGET,
        })
    } else {
        Ok(())
    }
}

fn zn_tables(n: usize, name: String) -> RingTables {
    RingTables {
        name,
        labels: (0..n).map(|i| i.to_string()).collect(),
        add: tabulate(n, |a, b| (a + b) % n),
        mul: tabulate(n, |a, b| (a * b) % n),
        zero: Elem(0),
        one: Elem(1),
        kind: RingKind::Zn(n),
    }
}

/// A field used only as the scalar ring of an algebra; carries no algebra
/// structure of its own.
fn bare_field(q: usize) -> Result<Arc<FiniteRing>> {
    let tables = if q == 4 {
        gf4_tables()
    } else {
        zn_tables(q, format!("GF({q})"))
    };
    Ok(Arc::new(FiniteRing::from_tables(tables, None)?))
}

fn identity_scalars(q: usize) -> Vec<Elem> {
    (0..q).map(Elem::from).collect()
}

/// Integers modulo n. When n is prime the ring is marked as an algebra over
/// its prime field.
pub fn make_zn(n: usize) -> Result<FiniteRing> {
    if n < 2 {
        return Err(Error::Construction(format!(
            "Z{n}: modulus must be at least 2"
        )));
    }
    check_budget("ring construction", n)?;
    let scalars = if is_prime(n) {
        Some((bare_field(n)?, identity_scalars(n)))
    } else {
        None
    };
    FiniteRing::from_tables(zn_tables(n, format!("Z{n}")), scalars)
}

fn gf4_tables() -> RingTables {
    // Bits b0 + 2 b1 stand for b0 + b1 w with w^2 = w + 1.
    let mul = |a: usize, b: usize| {
        let (a0, a1, b0, b1) = (a & 1, a >> 1, b & 1, b >> 1);
        let c0 = (a0 * b0) ^ (a1 * b1);
        let c1 = (a0 * b1) ^ (a1 * b0) ^ (a1 * b1);
        c0 | (c1 << 1)
    };
    RingTables {
        name: "GF(4)".into(),
        labels: ["0", "1", "w", "w+1"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
        add: tabulate(4, |a, b| a ^ b),
        mul: tabulate(4, mul),
        zero: Elem(0),
        one: Elem(1),
        kind: RingKind::Gf4,
    }
}

/// GF(q) for q in {2, 3, 4, 5, 7}, marked as an algebra over its prime field.
pub fn make_gf(q: usize) -> Result<FiniteRing> {
    match q {
        2 | 3 | 5 | 7 => FiniteRing::from_tables(
            zn_tables(q, format!("GF({q})")),
            Some((bare_field(q)?, identity_scalars(q))),
        ),
        4 => FiniteRing::from_tables(gf4_tables(), Some((bare_field(2)?, identity_scalars(2)))),
        _ => Err(Error::Construction(format!(
            "GF({q}) is not supported; fields are GF(2), GF(3), GF(4), GF(5), GF(7)"
        ))),
    }
}

fn require_field(k: &FiniteRing) -> Result<Arc<FiniteRing>> {
    if !k.is_field() {
        return Err(Error::Construction(format!("{} is not a field", k.name())));
    }
    Ok(Arc::new(k.clone()))
}

fn wrap(label: &str) -> String {
    if label.contains('+') {
        format!("({label})")
    } else {
        label.to_string()
    }
}

/// Dual numbers a + b e (e^2 = 0) over the field `k`.
pub fn make_dual(k: &FiniteRing) -> Result<FiniteRing> {
    let field = require_field(k)?;
    let q = field.size();
    check_budget("ring construction", q * q)?;
    let n = q * q;
    let (f, g) = (field.clone(), field.clone());
    let add = tabulate(n, |x, y| {
        let (a, b, c, d) = (x % q, x / q, y % q, y / q);
        f.add(a.into(), c.into()).index() + q * f.add(b.into(), d.into()).index()
    });
    let mul = tabulate(n, |x, y| {
        let (a, b, c, d) = (
            Elem::from(x % q),
            Elem::from(x / q),
            Elem::from(y % q),
            Elem::from(y / q),
        );
        let re = g.mul(a, c);
        let eps = g.add(g.mul(a, d), g.mul(b, c));
        re.index() + q * eps.index()
    });
    let labels = (0..n)
        .map(|x| {
            let (a, b) = (Elem::from(x % q), Elem::from(x / q));
            let eps = match b.index() {
                1 => "e".to_string(),
                _ => format!("{}e", wrap(field.label(b))),
            };
            match (a.index(), b.index()) {
                (_, 0) => field.label(a).to_string(),
                (0, _) => eps,
                _ => format!("{}+{}", field.label(a), eps),
            }
        })
        .collect();
    let tables = RingTables {
        name: format!("{}[e]", field.name()),
        labels,
        add,
        mul,
        zero: Elem(0),
        one: Elem(1),
        kind: RingKind::Dual(field.clone()),
    };
    FiniteRing::from_tables(tables, Some((field, identity_scalars(q))))
}

/// Direct product R1 x R2. The result is an algebra over the diagonal copy of
/// K when both factors are algebras over fields of the same size.
pub fn make_product(r1: &FiniteRing, r2: &FiniteRing) -> Result<FiniteRing> {
    let (n1, n2) = (r1.size(), r2.size());
    check_budget("ring construction", n1 * n2)?;
    let n = n1 * n2;
    let split = |x: usize| (Elem::from(x / n2), Elem::from(x % n2));
    let add = tabulate(n, |x, y| {
        let ((a1, a2), (b1, b2)) = (split(x), split(y));
        r1.add(a1, b1).index() * n2 + r2.add(a2, b2).index()
    });
    let mul = tabulate(n, |x, y| {
        let ((a1, a2), (b1, b2)) = (split(x), split(y));
        r1.mul(a1, b1).index() * n2 + r2.mul(a2, b2).index()
    });
    let labels = (0..n)
        .map(|x| {
            let (a, b) = split(x);
            format!("({},{})", r1.label(a), r2.label(b))
        })
        .collect();
    let scalars = match (r1.algebra(), r2.algebra()) {
        (Some(a1), Some(a2)) if a1.field().size() == a2.field().size() => {
            let diag = a1
                .scalars()
                .iter()
                .zip(a2.scalars())
                .map(|(s1, s2)| Elem::from(s1.index() * n2 + s2.index()))
                .collect();
            Some((a1.field().clone(), diag))
        }
        _ => None,
    };
    let tables = RingTables {
        name: format!("{}x{}", r1.name(), r2.name()),
        labels,
        add,
        mul,
        zero: Elem::from(r1.zero().index() * n2 + r2.zero().index()),
        one: Elem::from(r1.one().index() * n2 + r2.one().index()),
        kind: RingKind::Product(Arc::new(r1.clone()), Arc::new(r2.clone())),
    };
    FiniteRing::from_tables(tables, scalars)
}

/// Double numbers over `k`, i.e. K x K.
pub fn make_double(k: &FiniteRing) -> Result<FiniteRing> {
    require_field(k)?;
    make_product(k, k)
}

fn matmul(field: &FiniteRing, n: usize, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let mut c = vec![field.zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            let mut s = field.zero();
            for k in 0..n {
                s = field.add(s, field.mul(a[i * n + k], b[k * n + j]));
            }
            c[i * n + j] = s;
        }
    }
    c
}

fn matrix_label(field: &FiniteRing, n: usize, e: &[Elem]) -> String {
    let rows: Vec<String> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| field.label(e[i * n + j]).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    format!("[{}]", rows.join("; "))
}

fn scalar_matrices(field: &FiniteRing, n: usize, encode: impl Fn(&[Elem]) -> usize) -> Vec<Elem> {
    field
        .elements()
        .map(|k| {
            let mut e = vec![field.zero(); n * n];
            for i in 0..n {
                e[i * n + i] = k;
            }
            Elem::from(encode(&e))
        })
        .collect()
}

/// The full matrix ring M_n(K), n in {1, 2, 3}.
pub fn make_matrix_ring(k: &FiniteRing, n: usize) -> Result<FiniteRing> {
    let field = require_field(k)?;
    if !(1..=3).contains(&n) {
        return Err(Error::Construction(format!("matrix size {n} not in 1..=3")));
    }
    let q = field.size();
    let size = q.checked_pow((n * n) as u32).unwrap_or(usize::MAX);
    check_budget("ring construction", size)?;
    let decode = |x: usize| digits(x, q, n * n);
    let add = tabulate(size, |x, y| {
        let (a, b) = (decode(x), decode(y));
        let c: Vec<Elem> = a.iter().zip(&b).map(|(&s, &t)| field.add(s, t)).collect();
        undigits(&c, q)
    });
    let mul = tabulate(size, |x, y| {
        undigits(&matmul(&field, n, &decode(x), &decode(y)), q)
    });
    let labels = (0..size)
        .map(|x| matrix_label(&field, n, &decode(x)))
        .collect();
    let identity = scalar_matrices(&field, n, |e| undigits(e, q))[field.one().index()];
    let scalars = scalar_matrices(&field, n, |e| undigits(e, q));
    let tables = RingTables {
        name: format!("M{n}({})", field.name()),
        labels,
        add,
        mul,
        zero: Elem(0),
        one: identity,
        kind: RingKind::Matrix {
            n,
            field: field.clone(),
        },
    };
    FiniteRing::from_tables(tables, Some((field, scalars)))
}

/// Upper triangular n x n matrices over K (the ternions for n = 2).
pub fn make_ternions(k: &FiniteRing, n: usize) -> Result<FiniteRing> {
    let field = require_field(k)?;
    if !(2..=3).contains(&n) {
        return Err(Error::Construction(format!(
            "triangular matrix size {n} not in 2..=3"
        )));
    }
    let q = field.size();
    let slots: Vec<usize> = (0..n)
        .flat_map(|i| (i..n).map(move |j| i * n + j))
        .collect();
    let size = q.checked_pow(slots.len() as u32).unwrap_or(usize::MAX);
    check_budget("ring construction", size)?;
    let decode = |x: usize| {
        let mut e = vec![field.zero(); n * n];
        for (slot, d) in slots.iter().zip(digits(x, q, slots.len())) {
            e[*slot] = d;
        }
        e
    };
    let encode = |e: &[Elem]| {
        let ds: Vec<Elem> = slots.iter().map(|&s| e[s]).collect();
        undigits(&ds, q)
    };
    let add = tabulate(size, |x, y| {
        let (a, b) = (decode(x), decode(y));
        let c: Vec<Elem> = a.iter().zip(&b).map(|(&s, &t)| field.add(s, t)).collect();
        encode(&c)
    });
    let mul = tabulate(size, |x, y| {
        encode(&matmul(&field, n, &decode(x), &decode(y)))
    });
    let labels = (0..size)
        .map(|x| matrix_label(&field, n, &decode(x)))
        .collect();
    let scalars = scalar_matrices(&field, n, encode);
    let tables = RingTables {
        name: format!("T{n}({})", field.name()),
        labels,
        add,
        mul,
        zero: Elem(0),
        one: scalars[field.one().index()],
        kind: RingKind::Ternions {
            n,
            field: field.clone(),
        },
    };
    FiniteRing::from_tables(tables, Some((field, scalars)))
}

/// The desk-scale rings every exhaustive property check runs over.
pub fn builtin_rings() -> Vec<FiniteRing> {
    let gf2 = make_gf(2).expect("GF(2)");
    let gf3 = make_gf(3).expect("GF(3)");
    let z4 = make_zn(4).expect("Z4");
    vec![
        gf2.clone(),
        gf3.clone(),
        make_gf(4).expect("GF(4)"),
        make_gf(5).expect("GF(5)"),
        make_gf(7).expect("GF(7)"),
        z4.clone(),
        make_zn(6).expect("Z6"),
        make_zn(8).expect("Z8"),
        make_zn(9).expect("Z9"),
        make_dual(&gf2).expect("GF(2)[e]"),
        make_dual(&gf3).expect("GF(3)[e]"),
        make_double(&gf2).expect("GF(2)xGF(2)"),
        make_double(&gf3).expect("GF(3)xGF(3)"),
        make_product(&z4, &gf2).expect("Z4xGF(2)"),
        make_matrix_ring(&gf2, 2).expect("M2(GF(2))"),
        make_ternions(&gf2, 2).expect("T2(GF(2))"),
        make_ternions(&gf3, 2).expect("T2(GF(3))"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_is_a_field_with_three_units() {
        let f = make_gf(4).unwrap();
        assert!(f.is_field());
        assert_eq!(f.units().len(), 3);
        let w = f.elem_by_label("w").unwrap();
        assert_eq!(f.label(f.mul(w, w)), "w+1");
    }

    #[test]
    fn unsupported_fields_rejected() {
        assert!(make_gf(6).is_err());
        assert!(make_gf(11).is_err());
        let z4 = make_zn(4).unwrap();
        assert!(make_dual(&z4).is_err());
        assert!(make_matrix_ring(&z4, 2).is_err());
    }

    #[test]
    fn budget_enforced() {
        let k2 = make_gf(2).unwrap();
        assert!(matches!(make_matrix_ring(&k2, 3), Err(Error::Size { .. })));
        let k3 = make_gf(3).unwrap();
        assert!(matches!(make_ternions(&k3, 3), Err(Error::Size { .. })));
        assert_eq!(make_ternions(&k2, 3).unwrap().size(), 64);
        assert_eq!(make_matrix_ring(&k3, 2).unwrap().size(), 81);
    }

    #[test]
    fn labels_are_readable() {
        let k3 = make_gf(3).unwrap();
        let d = make_dual(&k3).unwrap();
        assert_eq!(d.label(Elem(7)), "1+2e");
        let gf4 = make_gf(4).unwrap();
        let d4 = make_dual(&gf4).unwrap();
        assert_eq!(d4.label(Elem(15)), "w+1+(w+1)e");
        let m = make_matrix_ring(&make_gf(2).unwrap(), 2).unwrap();
        assert_eq!(m.label(m.one()), "[1 0; 0 1]");
    }

    #[test]
    fn all_builtins_have_unique_labels() {
        for r in builtin_rings() {
            let mut l = r.labels().to_vec();
            l.sort();
            l.dedup();
            assert_eq!(l.len(), r.size(), "{r}");
        }
    }
}
