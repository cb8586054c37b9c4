//! Finite rings with identity, stored extensionally as addition and
//! multiplication tables.
//!
//! Every ring in this crate is small enough that structural questions (units,
//! the Jacobson radical, isomorphism) are answered by exhaustive scans. The
//! structured constructors ([`make_zn`], [`make_dual`], [`make_matrix_ring`],
//! ...) keep enough metadata to print elements readably and, for matrix rings,
//! to decode an element back into its entries.

mod build;
mod iso;
mod spec;

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

pub use build::{
    builtin_rings, make_double, make_dual, make_gf, make_matrix_ring, make_product, make_ternions,
    make_zn,
};
pub use iso::ring_isomorphic;
pub use spec::parse_ring;

/// Largest ring that any constructor will build.
pub const CONSTRUCTION_BUDGET: usize = 256;
/// Largest ring whose axioms are verified on every triple; larger rings are
/// checked on a fixed pseudo-random sample.
pub const FULL_VALIDATION_BUDGET: usize = 64;
/// Largest ring accepted by [`ring_isomorphic`].
pub const ISOMORPHISM_BUDGET: usize = 16;

const SAMPLED_TRIPLES: usize = 20_000;

static NEXT_RING_ID: AtomicU64 = AtomicU64::new(1);

/// An element of a [`FiniteRing`], identified by its index in the ring's
/// element list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Elem(pub u16);

impl Elem {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for Elem {
    fn from(i: usize) -> Self {
        Elem(i as u16)
    }
}

/// How a ring was built. Used for labels and for decoding matrix entries.
#[derive(Debug, Clone)]
pub enum RingKind {
    /// Integers modulo n (a prime field when n is prime).
    Zn(usize),
    /// GF(4), built from the polynomial x^2 + x + 1 over GF(2).
    Gf4,
    /// Dual numbers a + b e with e^2 = 0 over a field.
    Dual(Arc<FiniteRing>),
    /// Direct product; element (a, b) has index a * |right| + b.
    Product(Arc<FiniteRing>, Arc<FiniteRing>),
    /// Full n x n matrices over a field; entries are stored row-major as the
    /// base-q digits of the index, least significant first.
    Matrix { n: usize, field: Arc<FiniteRing> },
    /// Upper triangular n x n matrices over a field, entries on and above the
    /// diagonal in row-major order as base-q digits.
    Ternions { n: usize, field: Arc<FiniteRing> },
}

/// The K-algebra structure of a ring: an embedded copy of a finite field K
/// that commutes with every element, together with a K-basis.
#[derive(Debug, Clone)]
pub struct Algebra {
    field: Arc<FiniteRing>,
    scalars: Vec<Elem>,
    basis: Vec<Elem>,
    coords: Vec<Vec<Elem>>,
}

impl Algebra {
    pub fn field(&self) -> &Arc<FiniteRing> {
        &self.field
    }

    /// Ring elements that form the embedded copy of K, indexed by field element.
    pub fn scalars(&self) -> &[Elem] {
        &self.scalars
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Elem] {
        &self.basis
    }

    /// Coordinates of `x` with respect to [`Algebra::basis`], as field elements.
    pub fn coords(&self, x: Elem) -> &[Elem] {
        &self.coords[x.index()]
    }

    pub fn is_scalar(&self, x: Elem) -> bool {
        self.scalars.contains(&x)
    }
}

/// A finite associative ring with 1 != 0.
#[derive(Debug, Clone)]
pub struct FiniteRing {
    id: u64,
    name: String,
    size: usize,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    zero: Elem,
    one: Elem,
    inverse: Vec<Option<Elem>>,
    commutative: bool,
    labels: Vec<String>,
    kind: RingKind,
    algebra: Option<Algebra>,
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Raw table data handed to [`FiniteRing::from_tables`].
pub struct RingTables {
    pub name: String,
    pub labels: Vec<String>,
    pub add: Vec<Elem>,
    pub mul: Vec<Elem>,
    pub zero: Elem,
    pub one: Elem,
    pub kind: RingKind,
}

impl FiniteRing {
    /// Validates the tables and builds the ring. `scalars`, when given, is the
    /// embedding of a field K into the ring (indexed by field element).
    pub fn from_tables(
        tables: RingTables,
        scalars: Option<(Arc<FiniteRing>, Vec<Elem>)>,
    ) -> Result<Self> {
        let size = tables.labels.len();
        if size > CONSTRUCTION_BUDGET {
            return Err(Error::Size {
                what: "ring construction",
                size,
                budget: CONSTRUCTION_BUDGET,
            });
        }
        if size < 2 {
            return Err(Error::Construction(
                "ring needs at least two elements".into(),
            ));
        }
        if tables.add.len() != size * size || tables.mul.len() != size * size {
            return Err(Error::Construction(
                "table dimensions do not match size".into(),
            ));
        }
        if tables
            .add
            .iter()
            .chain(tables.mul.iter())
            .chain([&tables.zero, &tables.one])
            .any(|e| e.index() >= size)
        {
            return Err(Error::Construction("table entry out of range".into()));
        }
        if tables.zero == tables.one {
            return Err(Error::Construction("1 must differ from 0".into()));
        }

        let mut ring = FiniteRing {
            id: NEXT_RING_ID.fetch_add(1, Ordering::Relaxed),
            name: tables.name,
            size,
            add: tables.add,
            mul: tables.mul,
            neg: Vec::new(),
            zero: tables.zero,
            one: tables.one,
            inverse: Vec::new(),
            commutative: false,
            labels: tables.labels,
            kind: tables.kind,
            algebra: None,
        };
        ring.validate_axioms()?;

        ring.neg = (0..size)
            .map(|a| {
                let a = Elem::from(a);
                ring.elements()
                    .find(|&b| ring.add(a, b) == ring.zero)
                    .expect("additive inverses checked during validation")
            })
            .collect();
        ring.inverse = (0..size)
            .map(|a| {
                let a = Elem::from(a);
                ring.elements()
                    .find(|&b| ring.mul(a, b) == ring.one && ring.mul(b, a) == ring.one)
            })
            .collect();
        let commutative = ring
            .elements()
            .all(|a| ring.elements().all(|b| ring.mul(a, b) == ring.mul(b, a)));
        ring.commutative = commutative;

        if let Some((field, scalars)) = scalars {
            ring.algebra = Some(ring.build_algebra(field, scalars)?);
        }
        Ok(ring)
    }

    fn validate_axioms(&self) -> Result<()> {
        let n = self.size;
        let fail = |what: &str| Err(Error::Construction(format!("{}: {what}", self.name)));

        for a in self.elements() {
            if self.add(a, self.zero) != a || self.add(self.zero, a) != a {
                return fail("zero is not an additive identity");
            }
            if self.mul(a, self.one) != a || self.mul(self.one, a) != a {
                return fail("one is not a multiplicative identity");
            }
            if !self.elements().any(|b| self.add(a, b) == self.zero) {
                return fail("missing additive inverse");
            }
            for b in self.elements() {
                if self.add(a, b) != self.add(b, a) {
                    return fail("addition is not commutative");
                }
            }
        }

        let check = |a: Elem, b: Elem, c: Elem| -> Result<()> {
            if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                return fail("addition is not associative");
            }
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return fail("multiplication is not associative");
            }
            if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                return fail("left distributivity fails");
            }
            if self.mul(self.add(a, b), c) != self.add(self.mul(a, c), self.mul(b, c)) {
                return fail("right distributivity fails");
            }
            Ok(())
        };

        if n <= FULL_VALIDATION_BUDGET {
            for a in self.elements() {
                for b in self.elements() {
                    for c in self.elements() {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
            for _ in 0..SAMPLED_TRIPLES {
                let a = Elem::from(rng.gen_range(0..n));
                let b = Elem::from(rng.gen_range(0..n));
                let c = Elem::from(rng.gen_range(0..n));
                check(a, b, c)?;
            }
        }
        Ok(())
    }

    fn build_algebra(&self, field: Arc<FiniteRing>, scalars: Vec<Elem>) -> Result<Algebra> {
        let err = |msg: &str| Err(Error::Construction(format!("{}: {msg}", self.name)));
        if scalars.len() != field.size() {
            return err("scalar embedding has the wrong length");
        }
        if !field.is_field() {
            return err("scalar ring is not a field");
        }
        if scalars[field.one().index()] != self.one || scalars[field.zero().index()] != self.zero {
            return err("scalar embedding does not preserve 0 and 1");
        }
        for a in field.elements() {
            for b in field.elements() {
                let (sa, sb) = (scalars[a.index()], scalars[b.index()]);
                if scalars[field.add(a, b).index()] != self.add(sa, sb)
                    || scalars[field.mul(a, b).index()] != self.mul(sa, sb)
                {
                    return err("scalar embedding is not a ring homomorphism");
                }
            }
        }
        for &s in &scalars {
            if self.elements().any(|x| self.mul(s, x) != self.mul(x, s)) {
                return err("embedded field is not central");
            }
        }

        // Greedy basis: extend the span one element at a time.
        let mut coords: Vec<Option<Vec<Elem>>> = vec![None; self.size];
        coords[self.zero.index()] = Some(Vec::new());
        let mut basis = Vec::new();
        for x in self.elements() {
            if coords[x.index()].is_some() {
                continue;
            }
            let spanned: Vec<(Elem, Vec<Elem>)> = coords
                .iter()
                .enumerate()
                .filter_map(|(i, c)| c.clone().map(|c| (Elem::from(i), c)))
                .collect();
            let mut next: Vec<Option<Vec<Elem>>> = vec![None; self.size];
            for (s, c) in spanned {
                for k in field.elements() {
                    let y = self.add(s, self.mul(scalars[k.index()], x));
                    let mut cy = c.clone();
                    cy.push(k);
                    next[y.index()] = Some(cy);
                }
            }
            coords = next;
            basis.push(x);
        }
        let coords: Vec<Vec<Elem>> = coords
            .into_iter()
            .map(|c| c.expect("basis spans the ring"))
            .collect();
        if field.size().pow(basis.len() as u32) != self.size {
            return err("ring is not a vector space over the embedded field");
        }
        Ok(Algebra {
            field,
            scalars,
            basis,
            coords,
        })
    }

    /// Process-unique identity of this ring value (shared by clones).
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn kind(&self) -> &RingKind {
        &self.kind
    }

    pub fn algebra(&self) -> Option<&Algebra> {
        self.algebra.as_ref()
    }

    pub fn require_algebra(&self) -> Result<&Algebra> {
        self.algebra
            .as_ref()
            .ok_or_else(|| Error::NoAlgebraStructure(self.name.clone()))
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone + '_ {
        (0..self.size).map(Elem::from)
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a.index() * self.size + b.index()]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a.index() * self.size + b.index()]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a.index()]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// Two-sided inverse of `a`, if any.
    #[inline]
    pub fn inverse(&self, a: Elem) -> Option<Elem> {
        self.inverse[a.index()]
    }

    #[inline]
    pub fn is_unit(&self, a: Elem) -> bool {
        self.inverse[a.index()].is_some()
    }

    pub fn units(&self) -> Vec<Elem> {
        self.elements().filter(|&a| self.is_unit(a)).collect()
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn is_field(&self) -> bool {
        self.commutative && self.elements().all(|a| a == self.zero || self.is_unit(a))
    }

    /// A finite ring is local iff its non-units are closed under addition.
    pub fn is_local(&self) -> bool {
        let nonunits: Vec<Elem> = self.elements().filter(|&a| !self.is_unit(a)).collect();
        nonunits
            .iter()
            .all(|&a| nonunits.iter().all(|&b| !self.is_unit(self.add(a, b))))
    }

    /// J(R) = { r : 1 - a r is a unit for every a }.
    pub fn jacobson_radical(&self) -> Vec<Elem> {
        self.elements()
            .filter(|&r| {
                self.elements()
                    .all(|a| self.is_unit(self.sub(self.one, self.mul(a, r))))
            })
            .collect()
    }

    /// Additive order of `a`.
    pub fn additive_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.zero {
            x = self.add(x, a);
            k += 1;
        }
        k
    }

    pub fn label(&self, a: Elem) -> &str {
        &self.labels[a.index()]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn elem_by_label(&self, label: &str) -> Option<Elem> {
        self.labels.iter().position(|l| l == label).map(Elem::from)
    }

    /// The ring element corresponding to the field element `k`.
    pub fn scalar_embed(&self, k: Elem) -> Result<Elem> {
        let alg = self.require_algebra()?;
        alg.scalars
            .get(k.index())
            .copied()
            .ok_or_else(|| Error::Domain(format!("{} is not a field element", k.0)))
    }

    /// k * x for a field element k.
    pub fn scale(&self, k: Elem, x: Elem) -> Result<Elem> {
        Ok(self.mul(self.scalar_embed(k)?, x))
    }

    /// Entries of a matrix-ring element (row-major, as field elements).
    pub fn matrix_entries(&self, a: Elem) -> Option<Vec<Elem>> {
        match &self.kind {
            RingKind::Matrix { n, field } => Some(digits(a.index(), field.size(), n * n)),
            _ => None,
        }
    }

    /// Inverse of [`FiniteRing::matrix_entries`].
    pub fn matrix_from_entries(&self, entries: &[Elem]) -> Option<Elem> {
        match &self.kind {
            RingKind::Matrix { n, field } if entries.len() == n * n => {
                Some(Elem::from(undigits(entries, field.size())))
            }
            _ => None,
        }
    }

    pub fn tables(&self) -> TablesDump {
        let rows = |t: &[Elem]| -> Vec<Vec<u16>> {
            t.chunks(self.size)
                .map(|r| r.iter().map(|e| e.0).collect())
                .collect()
        };
        TablesDump {
            name: self.name.clone(),
            size: self.size,
            labels: self.labels.clone(),
            zero: self.zero.0,
            one: self.one.0,
            units: self.units().iter().map(|e| e.0).collect(),
            add: rows(&self.add),
            mul: rows(&self.mul),
        }
    }
}

/// JSON form of a ring's tables.
#[derive(Debug, Serialize)]
pub struct TablesDump {
    pub name: String,
    pub size: usize,
    pub labels: Vec<String>,
    pub zero: u16,
    pub one: u16,
    pub units: Vec<u16>,
    pub add: Vec<Vec<u16>>,
    pub mul: Vec<Vec<u16>>,
}

pub(crate) fn digits(mut x: usize, base: usize, len: usize) -> Vec<Elem> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(Elem::from(x % base));
        x /= base;
    }
    out
}

pub(crate) fn undigits(ds: &[Elem], base: usize) -> usize {
    ds.iter().rev().fold(0, |acc, d| acc * base + d.index())
}

/// Checks that `alpha` is K-linear from `src` to `dst` over their embedded
/// fields. Both rings must be algebras over fields of the same size. For the
/// prime fields used here, linear and semilinear coincide.
pub fn is_k_linear(src: &FiniteRing, dst: &FiniteRing, alpha: &[Elem]) -> Result<bool> {
    let (sa, da) = (src.require_algebra()?, dst.require_algebra()?);
    if sa.field.size() != da.field.size() {
        return Err(Error::Domain(format!(
            "{} and {} are algebras over different fields",
            src.name, dst.name
        )));
    }
    if alpha.len() != src.size() {
        return Ok(false);
    }
    let additive = src.elements().all(|a| {
        src.elements()
            .all(|b| alpha[src.add(a, b).index()] == dst.add(alpha[a.index()], alpha[b.index()]))
    });
    if !additive {
        return Ok(false);
    }
    Ok(sa.field.elements().all(|k| {
        let (ks, kd) = (sa.scalars[k.index()], da.scalars[k.index()]);
        src.elements()
            .all(|x| alpha[src.mul(ks, x).index()] == dst.mul(kd, alpha[x.index()]))
    }))
}

/// Additive maps only; used when rings lack a shared field (e.g. Z4).
pub fn is_additive(src: &FiniteRing, dst: &FiniteRing, alpha: &[Elem]) -> bool {
    alpha.len() == src.size()
        && src.elements().all(|a| {
            src.elements().all(|b| {
                alpha[src.add(a, b).index()] == dst.add(alpha[a.index()], alpha[b.index()])
            })
        })
}

pub fn is_bijection(src: &FiniteRing, dst: &FiniteRing, alpha: &[Elem]) -> bool {
    if alpha.len() != src.size() || src.size() != dst.size() {
        return false;
    }
    let mut seen = vec![false; dst.size()];
    alpha
        .iter()
        .all(|&y| y.index() < seen.len() && !std::mem::replace(&mut seen[y.index()], true))
}
