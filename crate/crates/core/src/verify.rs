//! Executable checks of the structural claims the library is built around.
//! `chaingeo verify all` prints one row per check.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chain::{
    bartolone_points, is_jordan_isomorphism, is_strong_jordan_system, jordan_induced_map,
    ChainGeometry, CrossRatio, JordanMap,
};
use crate::error::{Error, Result};
use crate::grassmann::{all_subspaces, is_complementary, matrix_shape, to_subspace, Subspace};
use crate::lie::{
    apollonius, apollonius_all_orientations, from_pentacyclic, in_contact, to_pentacyclic,
    LieCycle, UnorientedCircle,
};
use crate::pline::{graph_isomorphic, ProjectiveLine};
use crate::ring::{
    builtin_rings, make_dual, make_gf, make_matrix_ring, make_product, make_zn, ring_isomorphic,
    Elem, FiniteRing,
};

const SEED: u64 = 0x00c0_ffee;

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Outcome = Result<(bool, String)>;

fn report(id: u8, name: &'static str, outcome: Outcome) -> CheckReport {
    let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    CheckReport {
        id,
        name,
        passed,
        detail,
    }
}

/// All checks, in order.
pub fn run_all() -> Vec<CheckReport> {
    vec![
        report(1, "quadric membership and round trip", quadric_membership()),
        report(2, "contact agrees with tangency", contact_vs_geometry()),
        report(3, "Apollonius solutions", apollonius_checks()),
        report(4, "octahedron lines over Z4 and GF(2)[e]", octahedron()),
        report(5, "nine points over GF(2)xGF(2)", nine_points()),
        report(6, "field criterion and diameter", field_criterion()),
        report(7, "radical points", radical_points()),
        report(8, "chain axioms", chain_axioms()),
        report(9, "cross ratio and common chains", cross_ratio_criterion()),
        report(10, "parametrised points cover the line", bartolone()),
        report(11, "transpose on M2(GF(2))", transpose_map()),
        report(12, "Grassmannian of 2-spaces in GF(2)^4", grassmann()),
        report(13, "strong Jordan systems", strong_systems()),
    ]
}

/// Plain-text table of `reports`.
pub fn format_table(reports: &[CheckReport]) -> String {
    let width = reports.iter().map(|r| r.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for r in reports {
        let status = if r.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!(
            "{:>2}  {:<width$}  {status}  {}\n",
            r.id, r.name, r.detail
        ));
    }
    out
}

/// A random cycle: mostly circles, then spears, points and infinity.
pub fn random_cycle<R: Rng>(rng: &mut R) -> LieCycle {
    let m = [rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0)];
    match rng.gen_range(0..20) {
        0..=11 => {
            let r: f64 = rng.gen_range(0.1..10.0);
            let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            LieCycle::circle(m, sign * r).expect("valid circle")
        }
        12..=14 => LieCycle::point(m).expect("valid point"),
        15..=18 => {
            let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            LieCycle::spear_through(m, [t.cos(), t.sin()]).expect("valid spear")
        }
        _ => LieCycle::Infinity,
    }
}

/// A random cycle touching `x` in oriented contact.
pub fn random_contact<R: Rng>(rng: &mut R, x: &LieCycle) -> LieCycle {
    let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let u = [t.cos(), t.sin()];
    let want_spear = rng.gen_bool(0.3);
    let new_r = |rng: &mut R| {
        let r: f64 = rng.gen_range(0.1..10.0);
        if rng.gen_bool(0.5) {
            r
        } else {
            -r
        }
    };
    match *x {
        LieCycle::Circle(_) | LieCycle::Point(_) => {
            let (m, r) = match *x {
                LieCycle::Circle(c) => (c.center(), c.radius()),
                LieCycle::Point(p) => (p, 0.0),
                _ => unreachable!(),
            };
            if want_spear {
                // a0 + a.m + r = 0 for the unit normal a = u.
                let a0 = -(u[0] * m[0] + u[1] * m[1]) - r;
                LieCycle::spear_hesse([a0, u[0], u[1]]).expect("unit normal")
            } else {
                let mut r2 = new_r(rng);
                if (r2 - r).abs() < 0.05 {
                    r2 += 1.0;
                }
                let d = r - r2;
                LieCycle::circle([m[0] + d * u[0], m[1] + d * u[1]], r2).expect("valid circle")
            }
        }
        LieCycle::Spear(s) => {
            let a = s.coefficients();
            if want_spear {
                LieCycle::spear_hesse([rng.gen_range(-10.0..10.0), a[1], a[2]]).expect("unit")
            } else {
                let m = [rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0)];
                let r = -(a[0] + a[1] * m[0] + a[2] * m[1]);
                if r.abs() < 1e-3 {
                    LieCycle::point(m).expect("valid point")
                } else {
                    LieCycle::circle(m, r).expect("valid circle")
                }
            }
        }
        LieCycle::Infinity => {
            LieCycle::spear_through([rng.gen_range(-10.0..10.0), 0.0], u).expect("valid spear")
        }
    }
}

/// Tangency decided from centres, radii and line coefficients alone.
pub fn geometric_contact(x: &LieCycle, y: &LieCycle, tol: f64) -> bool {
    fn disc(c: &LieCycle) -> Option<([f64; 2], f64)> {
        match *c {
            LieCycle::Circle(c) => Some((c.center(), c.radius())),
            LieCycle::Point(p) => Some((p, 0.0)),
            _ => None,
        }
    }
    match (x, y) {
        (LieCycle::Infinity, LieCycle::Infinity) => true,
        (LieCycle::Infinity, LieCycle::Spear(_)) | (LieCycle::Spear(_), LieCycle::Infinity) => true,
        (LieCycle::Infinity, _) | (_, LieCycle::Infinity) => false,
        (LieCycle::Spear(s), LieCycle::Spear(t)) => {
            let (a, b) = (s.coefficients(), t.coefficients());
            (a[1] - b[1]).abs() <= tol && (a[2] - b[2]).abs() <= tol
        }
        (LieCycle::Spear(s), c) | (c, LieCycle::Spear(s)) => {
            let (m, r) = disc(c).expect("circle or point");
            let a = s.coefficients();
            let scale = 1.0 + a[0].abs() + m[0].abs() + m[1].abs() + r.abs();
            (a[0] + a[1] * m[0] + a[2] * m[1] + r).abs() <= tol * scale
        }
        (c, d) => {
            let ((m, r), (n, s)) = (disc(c).expect("disc"), disc(d).expect("disc"));
            let dist2 = (m[0] - n[0]).powi(2) + (m[1] - n[1]).powi(2);
            let scale = 1.0 + dist2 + (r - s).powi(2);
            (dist2 - (r - s).powi(2)).abs() <= tol * scale
        }
    }
}

fn round_trip_error(c: &LieCycle, back: &LieCycle) -> Option<f64> {
    let err = |a: &[f64], b: &[f64]| {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    };
    match (c, back) {
        (LieCycle::Circle(a), LieCycle::Circle(b)) => Some(err(
            &[a.center()[0], a.center()[1], a.radius()],
            &[b.center()[0], b.center()[1], b.radius()],
        )),
        (LieCycle::Point(a), LieCycle::Point(b)) => Some(err(a, b)),
        (LieCycle::Spear(a), LieCycle::Spear(b)) => Some(err(&a.coefficients(), &b.coefficients())),
        (LieCycle::Infinity, LieCycle::Infinity) => Some(0.0),
        _ => None,
    }
}

fn quadric_membership() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut worst_residual, mut worst_trip) = (0.0f64, 0.0f64);
    for _ in 0..1000 {
        let c = random_cycle(&mut rng);
        let q = to_pentacyclic(&c);
        worst_residual = worst_residual.max(q.residual().abs());
        match round_trip_error(&c, &from_pentacyclic(&q)?) {
            Some(e) => worst_trip = worst_trip.max(e),
            None => return Ok((false, format!("variant changed for {c}"))),
        }
    }
    Ok((
        worst_residual <= 1e-12 && worst_trip <= 1e-9,
        format!("max residual {worst_residual:.1e}, max round-trip error {worst_trip:.1e}"),
    ))
}

fn contact_vs_geometry() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let (mut disagreements, mut touching) = (0, 0);
    for i in 0..1000 {
        let x = random_cycle(&mut rng);
        let y = if i % 2 == 0 {
            random_contact(&mut rng, &x)
        } else {
            random_cycle(&mut rng)
        };
        let form = in_contact(&x, &y);
        touching += usize::from(form);
        if form != geometric_contact(&x, &y, 1e-9) {
            disagreements += 1;
        }
    }
    Ok((
        disagreements == 0,
        format!("{disagreements} disagreements in 1000 pairs ({touching} in contact)"),
    ))
}

fn apollonius_checks() -> Outcome {
    let t = 3f64.sqrt();
    let inputs = [[0.0, 0.0], [2.0, 0.0], [1.0, t]].map(|m| LieCycle::circle(m, 1.0).unwrap());
    let res = apollonius(&inputs[0], &inputs[1], &inputs[2])?;
    // Descartes: k4 = 3 +- 2 sqrt 3 for three unit circles.
    let expected = [-1.0 / (3.0 + 2.0 * t), -1.0 / (3.0 - 2.0 * t)];
    let mut soddy_ok = res.solutions.len() == 2;
    for want in expected {
        let hit = res.solutions.iter().any(|s| match s.cycle {
            LieCycle::Circle(c) => {
                let m = c.center();
                let touching = inputs.iter().all(|i| in_contact(i, &s.cycle));
                (c.radius() - want).abs() <= 1e-9
                    && (m[0] - 1.0).abs() <= 1e-9
                    && (m[1] - 1.0 / t).abs() <= 1e-9
                    && touching
            }
            _ => false,
        });
        soddy_ok &= hit;
    }

    let circles = [[0.0, 0.0], [6.0, 0.0], [3.0, 5.0]].map(|m| UnorientedCircle {
        center: m,
        radius: 1.0,
    });
    let all = apollonius_all_orientations(&circles)?;
    let oriented: Vec<[LieCycle; 2]> = circles
        .iter()
        .map(|c| {
            let p = LieCycle::circle(c.center, c.radius).unwrap();
            [p, p.flipped()]
        })
        .collect();
    let each_touches = all.solutions.iter().all(|s| {
        oriented
            .iter()
            .all(|pair| pair.iter().any(|c| in_contact(&s.cycle, c)))
    });
    let mut unoriented = BTreeSet::new();
    for s in &all.solutions {
        if let LieCycle::Circle(c) = s.cycle {
            let m = c.center();
            let key = |x: f64| (x * 1e6).round() as i64;
            unoriented.insert((key(m[0]), key(m[1]), key(c.radius().abs())));
        }
    }
    let general_ok = all.solutions.len() == 8 && each_touches && unoriented.len() == 8;
    Ok((
        soddy_ok && general_ok,
        format!(
            "Soddy pair {}, general position: {} oriented / {} unoriented solutions",
            if soddy_ok { "matches" } else { "mismatch" },
            all.solutions.len(),
            unoriented.len()
        ),
    ))
}

fn line_of(ring: FiniteRing) -> Result<ProjectiveLine> {
    ProjectiveLine::new(Arc::new(ring))
}

fn octahedron() -> Outcome {
    let z4 = make_zn(4)?;
    let d2 = make_dual(&make_gf(2)?)?;
    let rings_differ = !ring_isomorphic(&z4, &d2)?;
    let (g, h) = (line_of(z4)?.distant_graph(), line_of(d2)?.distant_graph());
    let shape_ok = [&g, &h].iter().all(|g| {
        let s = g.stats();
        s.vertices == 6 && s.edges == 12 && s.regular_degree() == Some(4)
    });
    let iso = graph_isomorphic(&g, &h)?;
    Ok((
        shape_ok && iso && rings_differ,
        format!("6 vertices, 12 edges, 4-regular: {shape_ok}; graphs isomorphic: {iso}; rings isomorphic: {}", !rings_differ),
    ))
}

fn nine_points() -> Outcome {
    let f2 = make_gf(2)?;
    let line = line_of(make_product(&f2, &f2)?)?;
    let stats = line.distant_graph().stats();
    // (a, b) ~ (c, d) distant iff a_i d_i - b_i c_i != 0 in each factor.
    let comp = |x: Elem, i: usize| (x.index() >> (1 - i)) & 1;
    let mut rule_ok = true;
    for (i, p) in line.points().iter().enumerate() {
        for (j, q) in line.points().iter().enumerate() {
            let expected = (0..2)
                .all(|k| (comp(p.a, k) * comp(q.b, k) + comp(p.b, k) * comp(q.a, k)) % 2 == 1);
            rule_ok &= line.distant_idx(i, j) == expected;
        }
    }
    let ok = line.len() == 9 && stats.edges == 18 && stats.regular_degree() == Some(4) && rule_ok;
    Ok((
        ok,
        format!(
            "{} points, {} edges, degree {}, componentwise rule holds: {rule_ok}",
            line.len(),
            stats.edges,
            stats
                .regular_degree()
                .map_or("irregular".to_string(), |d| d.to_string())
        ),
    ))
}

fn field_criterion() -> Outcome {
    let mut failures = Vec::new();
    let rings = builtin_rings();
    for r in &rings {
        let name = r.name().to_string();
        let field = r.is_field();
        let stats = line_of(r.clone())?.distant_graph().stats();
        if stats.complete != field || stats.max_diameter() > 2 {
            failures.push(name);
        }
    }
    Ok((
        failures.is_empty(),
        if failures.is_empty() {
            format!("{} rings checked", rings.len())
        } else {
            format!("failed for {}", failures.join(", "))
        },
    ))
}

/// r with 1 - r a a unit for every a.
fn quasi_regular_radical(r: &FiniteRing) -> Vec<Elem> {
    r.elements()
        .filter(|&x| r.elements().all(|a| r.is_unit(r.sub(r.one(), r.mul(x, a)))))
        .collect()
}

fn radical_points() -> Outcome {
    let f2 = make_gf(2)?;
    let rings = [
        make_zn(4)?,
        make_dual(&f2)?,
        make_product(&f2, &f2)?,
        make_matrix_ring(&f2, 2)?,
        crate::ring::make_ternions(&f2, 2)?,
    ];
    let mut failures = Vec::new();
    for r in rings {
        let name = r.name().to_string();
        let j = quasi_regular_radical(&r);
        let line = line_of(r)?;
        let ring = line.ring().clone();
        let expected: BTreeSet<_> = j
            .iter()
            .map(|&x| line.canonical(ring.one(), x))
            .collect::<Result<_>>()?;
        let got: BTreeSet<_> = line.radical_points().into_iter().collect();
        if got != expected {
            failures.push(name);
        }
    }
    Ok((
        failures.is_empty(),
        if failures.is_empty() {
            "5 rings checked".to_string()
        } else {
            format!("failed for {}", failures.join(", "))
        },
    ))
}

fn geometry(ring: FiniteRing) -> Result<ChainGeometry> {
    ChainGeometry::new(line_of(ring)?)
}

/// Every distant triple lies on exactly one chain, and two distinct points
/// share a chain iff they are distant.
pub fn chain_axioms_hold(g: &ChainGeometry) -> Result<bool> {
    let line = g.line();
    let chains = g.all_chains()?;
    let idx: Vec<Vec<usize>> = chains
        .iter()
        .map(|c| c.points().iter().map(|p| line.index_of(p)).collect())
        .collect::<Result<_>>()?;
    let n = line.len();
    let mut through = vec![0usize; n * n * n];
    let mut cochain = vec![false; n * n];
    for c in &idx {
        for &a in c {
            for &b in c {
                cochain[a * n + b] = true;
                for &d in c {
                    through[(a * n + b) * n + d] += 1;
                }
            }
        }
    }
    for [a, b, c] in g.distant_triples() {
        if through[(a * n + b) * n + c] != 1 {
            return Ok(false);
        }
    }
    for a in 0..n {
        for b in 0..n {
            if a != b && cochain[a * n + b] != line.distant_idx(a, b) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn chain_axioms() -> Outcome {
    let f2 = make_gf(2)?;
    let dual = geometry(make_dual(&f2)?)?;
    let chains = dual.all_chains()?;
    let graph = dual.line().distant_graph();
    let n = graph.len();
    let mut triangles = BTreeSet::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if graph.adjacent(a, b) && graph.adjacent(b, c) && graph.adjacent(a, c) {
                    triangles.insert(vec![a, b, c]);
                }
            }
        }
    }
    let chain_sets: BTreeSet<Vec<usize>> = chains
        .iter()
        .map(|c| {
            c.points()
                .iter()
                .map(|p| dual.line().index_of(p))
                .collect::<Result<Vec<_>>>()
        })
        .map(|v| {
            v.map(|mut v| {
                v.sort();
                v
            })
        })
        .collect::<Result<_>>()?;
    let dual_ok =
        chains.len() == 8 && chains.iter().all(|c| c.len() == 3) && chain_sets == triangles;

    let double = geometry(make_product(&f2, &f2)?)?;
    let double_count = double.all_chains()?.len();

    let mut failures = Vec::new();
    let mut checked = 0;
    for r in builtin_rings() {
        if r.algebra().is_none() {
            continue;
        }
        let name = r.name().to_string();
        let g = geometry(r)?;
        checked += 1;
        if !chain_axioms_hold(&g)? {
            failures.push(name);
        }
    }
    let ok = dual_ok && double_count == 6 && failures.is_empty();
    Ok((
        ok,
        format!(
            "GF(2)[e]: {} chains on {} triangles; GF(2)xGF(2): {double_count} chains; axioms in {checked} geometries{}",
            chains.len(),
            triangles.len(),
            if failures.is_empty() { String::new() } else { format!(", failed: {}", failures.join(", ")) }
        ),
    ))
}

/// Over all ordered quadruples of mutually distant points: the fourth point
/// lies on the chain of the first three iff the cross ratio class meets the
/// embedded field. Returns (quadruples, exceptions).
pub fn cross_ratio_exceptions(g: &ChainGeometry) -> Result<(usize, usize)> {
    let line = g.line();
    let n = line.len();
    let (mut total, mut bad) = (0, 0);
    let orders = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    for triple in g.distant_triples() {
        let chain = {
            let [a, b, c] = triple.map(|i| line.point(i));
            g.chain_through(&a, &b, &c)?
        };
        for d in 0..n {
            if !triple.iter().all(|&t| line.distant_idx(t, d)) {
                continue;
            }
            let p4 = line.point(d);
            for order in orders {
                let [a, b, c] = order.map(|k| line.point(triple[k]));
                let cr = g.cross_ratio(&a, &b, &c, &p4)?;
                total += 1;
                let meets = match &cr {
                    CrossRatio::Affine(_) => cr.meets_field(g.ring()),
                    CrossRatio::NonAffine => false,
                };
                if meets != chain.contains(&p4) {
                    bad += 1;
                }
            }
        }
    }
    Ok((total, bad))
}

fn cross_ratio_criterion() -> Outcome {
    let g = geometry(make_dual(&make_gf(3)?)?)?;
    let (total, bad) = cross_ratio_exceptions(&g)?;
    Ok((
        bad == 0 && total > 0,
        format!("{total} quadruples, {bad} exceptions"),
    ))
}

fn identity(r: &FiniteRing) -> Vec<Elem> {
    r.elements().collect()
}

/// Transpose on M2(K), as an element table.
pub fn transpose_table(m: &FiniteRing) -> Result<Vec<Elem>> {
    m.elements()
        .map(|x| {
            let e = m
                .matrix_entries(x)
                .filter(|e| e.len() == 4)
                .ok_or_else(|| Error::WrongRingKind(format!("{} is not M2(K)", m.name())))?;
            m.matrix_from_entries(&[e[0], e[2], e[1], e[3]])
                .ok_or_else(|| Error::Internal("transpose left the ring".into()))
        })
        .collect()
}

fn swap_table(r: &FiniteRing, factor: usize) -> Vec<Elem> {
    r.elements()
        .map(|x| Elem::from((x.index() % factor) * factor + x.index() / factor))
        .collect()
}

fn bartolone() -> Outcome {
    let mut failures = Vec::new();
    let mut maps = 0;
    for r in builtin_rings() {
        let name = r.name().to_string();
        let ring = Arc::new(r);
        let line = ProjectiveLine::new(ring.clone())?;
        if bartolone_points(&line)? != line.points() {
            failures.push(format!("{name} (coverage)"));
        }
        let mut tables = vec![identity(&ring)];
        if name == "GF(4)" {
            tables.push(ring.elements().map(|x| ring.mul(x, x)).collect());
        }
        if name == "GF(2)xGF(2)" || name == "GF(3)xGF(3)" {
            let k = (ring.size() as f64).sqrt().round() as usize;
            tables.push(swap_table(&ring, k));
        }
        if name == "M2(GF(2))" {
            tables.push(transpose_table(&ring)?);
        }
        for t in tables {
            let map = JordanMap::new(ring.clone(), ring.clone(), t)?;
            maps += 1;
            match jordan_induced_map(&map, &line, &line) {
                Ok(_) => {}
                Err(Error::WellDefinedness { point }) => {
                    failures.push(format!("{name} (ill-defined at {point})"))
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok((
        failures.is_empty(),
        if failures.is_empty() {
            format!("all built-in rings covered, {maps} Jordan maps well defined")
        } else {
            format!("failed: {}", failures.join(", "))
        },
    ))
}

fn transpose_map() -> Outcome {
    let m = Arc::new(make_matrix_ring(&make_gf(2)?, 2)?);
    let t = transpose_table(&m)?;
    let jordan = is_jordan_isomorphism(&m, &m, &t);
    let g = ChainGeometry::new(ProjectiveLine::new(m.clone())?)?;
    let map = JordanMap::new(m.clone(), m.clone(), t)?;
    let induced = jordan_induced_map(&map, g.line(), g.line())?;
    let chains = g.all_chains()?;
    let bijective = induced.is_bijective(g.line().len());
    let distance = induced.preserves_distant(g.line(), g.line());
    let onto = induced.maps_chains_onto(g.line(), g.line(), &chains, &chains)?;
    Ok((
        jordan && g.line().len() == 35 && bijective && distance && onto,
        format!(
            "Jordan: {jordan}; {} points, bijective: {bijective}, distance preserved: {distance}, {} chains mapped onto: {onto}",
            g.line().len(),
            chains.len()
        ),
    ))
}

fn grassmann() -> Outcome {
    let f2 = make_gf(2)?;
    let line = line_of(make_matrix_ring(&f2, 2)?)?;
    let (n, field) = matrix_shape(line.ring())?;
    let image: Vec<Subspace> = line
        .points()
        .iter()
        .map(|p| to_subspace(&line, p))
        .collect::<Result<_>>()?;
    let distinct: BTreeSet<&Subspace> = image.iter().collect();
    let all = all_subspaces(&field, 2 * n, n);
    let covers = distinct.len() == 35 && distinct.iter().copied().eq(all.iter());
    let (mut distant, mut complementary, mut mismatches) = (0, 0, 0);
    for i in 0..image.len() {
        for j in i + 1..image.len() {
            let d = line.distant_idx(i, j);
            let c = is_complementary(&image[i], &image[j])?;
            distant += usize::from(d);
            complementary += usize::from(c);
            mismatches += usize::from(d != c);
        }
    }
    Ok((
        covers && distant == 280 && complementary == 280 && mismatches == 0,
        format!(
            "{} echelon forms (all 2-subspaces: {covers}); {distant} distant, {complementary} complementary pairs",
            distinct.len()
        ),
    ))
}

/// a b a in S for all a, b in S.
pub fn aba_closed(ring: &FiniteRing, subset: &[Elem]) -> bool {
    let member: BTreeSet<Elem> = subset.iter().copied().collect();
    subset.iter().all(|&a| {
        subset
            .iter()
            .all(|&b| member.contains(&ring.mul(ring.mul(a, b), a)))
    })
}

fn strong_systems() -> Outcome {
    let k3 = make_gf(3)?;
    let d3 = make_dual(&k3)?;
    let d2 = make_dual(&make_gf(2)?)?;
    let m3 = make_matrix_ring(&k3, 2)?;
    let symmetric: Vec<Elem> = m3
        .elements()
        .filter(|&x| {
            let e = m3.matrix_entries(x).expect("matrix");
            e[1] == e[2]
        })
        .collect();
    let a = is_strong_jordan_system(&d3, &identity(&d3))?;
    let b = is_strong_jordan_system(&d2, &identity(&d2))?;
    let c = is_strong_jordan_system(&m3, &symmetric)?;
    let examples_ok = a.is_system && a.is_strong && !b.is_strong && !c.is_strong;

    // Every strong system among the whole ring, its embedded field and the
    // symmetric matrices must be closed under a b a.
    let mut candidates: Vec<(String, FiniteRing, Vec<Elem>)> = Vec::new();
    for r in builtin_rings().into_iter().chain([m3.clone()]) {
        let Some(alg) = r.algebra() else { continue };
        let scalars = alg.scalars().to_vec();
        let all = identity(&r);
        let name = r.name().to_string();
        candidates.push((format!("{name}, S=R"), r.clone(), all));
        candidates.push((format!("{name}, S=K"), r.clone(), scalars));
    }
    candidates.push(("M2(GF(3)), S=symmetric".into(), m3.clone(), symmetric));
    let mut strong = 0;
    let mut failures = Vec::new();
    for (name, r, s) in &candidates {
        if is_strong_jordan_system(r, s)?.is_strong {
            strong += 1;
            if !aba_closed(r, s) {
                failures.push(name.clone());
            }
        }
    }
    Ok((
        examples_ok && failures.is_empty(),
        format!(
            "GF(3)[e]: ({}, {}); GF(2)[e]: strong {}; symmetric M2(GF(3)): strong {}; {strong} strong systems closed under aba{}",
            a.is_system,
            a.is_strong,
            b.is_strong,
            c.is_strong,
            if failures.is_empty() { String::new() } else { format!(", failed: {}", failures.join(", ")) }
        ),
    ))
}
