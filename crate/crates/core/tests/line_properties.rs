use std::collections::BTreeSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use chaingeo::chain::{
    algebra_iso_map, is_strong_jordan_system, jordan_induced_map, ChainGeometry, CrossRatio,
    JordanMap,
};
use chaingeo::pline::{is_invertible, Matrix2, ProjectiveLine};
use chaingeo::ring::{builtin_rings, Elem, FiniteRing};

fn lines() -> Vec<ProjectiveLine> {
    builtin_rings()
        .into_iter()
        .map(|r| ProjectiveLine::new(Arc::new(r)).unwrap())
        .collect()
}

fn geometries() -> Vec<ChainGeometry> {
    lines()
        .into_iter()
        .filter(|l| l.ring().algebra().is_some())
        .map(|l| ChainGeometry::new(l).unwrap())
        .collect()
}

fn random_invertible(ring: &FiniteRing, rng: &mut ChaCha8Rng) -> Matrix2 {
    loop {
        let mut e = || Elem::from(rng.gen_range(0..ring.size()));
        let m = Matrix2::new(e(), e(), e(), e());
        if is_invertible(ring, &m) {
            return m;
        }
    }
}

#[test]
fn distant_is_irreflexive_and_symmetric() {
    for l in lines() {
        for i in 0..l.len() {
            assert!(!l.distant_idx(i, i), "{}", l.ring().name());
            for j in 0..l.len() {
                assert_eq!(l.distant_idx(i, j), l.distant_idx(j, i));
            }
        }
    }
}

#[test]
fn same_point_iff_unit_proportional() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for l in lines() {
        let r = l.ring().clone();
        let units = r.units();
        for _ in 0..200 {
            let p = l.point(rng.gen_range(0..l.len()));
            let q = l.point(rng.gen_range(0..l.len()));
            let c = l.canonical(p.a, p.b).unwrap();
            assert_eq!(l.canonical(c.a, c.b).unwrap(), c);
            let u = units[rng.gen_range(0..units.len())];
            assert_eq!(l.canonical(r.mul(u, p.a), r.mul(u, p.b)).unwrap(), p);
            let proportional = units
                .iter()
                .any(|&u| r.mul(u, p.a) == q.a && r.mul(u, p.b) == q.b);
            assert_eq!(proportional, p == q, "{}", r.name());
        }
    }
}

#[test]
fn radical_theorem_on_all_builtins() {
    for l in lines() {
        let r = l.ring().clone();
        let expected: BTreeSet<_> = r
            .jacobson_radical()
            .into_iter()
            .map(|x| l.canonical(r.one(), x).unwrap())
            .collect();
        let got: BTreeSet<_> = l.radical_points().into_iter().collect();
        assert_eq!(got, expected, "{}", r.name());
    }
}

#[test]
fn projectivities_are_graph_automorphisms() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for l in lines() {
        let r = l.ring().clone();
        for _ in 0..100 {
            let m = random_invertible(&r, &mut rng);
            let perm = l.act_permutation(&m).unwrap();
            let image: BTreeSet<_> = perm.iter().collect();
            assert_eq!(image.len(), l.len());
            for i in 0..l.len() {
                for j in 0..l.len() {
                    assert_eq!(l.distant_idx(i, j), l.distant_idx(perm[i], perm[j]));
                }
            }
        }
    }
}

#[test]
fn chains_have_field_size_plus_one_distant_points() {
    for g in geometries() {
        let q = g.ring().algebra().unwrap().scalars().len();
        let l = g.line();
        for c in g.all_chains().unwrap() {
            assert_eq!(c.len(), q + 1, "{}", g.ring().name());
            let idx: Vec<usize> = c.points().iter().map(|p| l.index_of(p).unwrap()).collect();
            for &a in &idx {
                for &b in &idx {
                    assert_eq!(a == b, !l.distant_idx(a, b));
                }
            }
        }
    }
}

#[test]
fn projectivities_permute_chains_and_keep_cross_ratios() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for g in geometries() {
        let l = g.line();
        let r = l.ring().clone();
        let chains: BTreeSet<Vec<_>> = g
            .all_chains()
            .unwrap()
            .iter()
            .map(|c| c.points().to_vec())
            .collect();
        let triples = g.distant_triples();
        for _ in 0..20 {
            let m = random_invertible(&r, &mut rng);
            let moved: BTreeSet<Vec<_>> = chains
                .iter()
                .map(|c| {
                    let mut v: Vec<_> = c.iter().map(|p| l.act(&m, p).unwrap()).collect();
                    v.sort();
                    v
                })
                .collect();
            assert_eq!(moved, chains, "{}", r.name());

            for _ in 0..10 {
                let [a, b, c] = triples[rng.gen_range(0..triples.len())];
                let d = rng.gen_range(0..l.len());
                let pts = [a, b, c, d].map(|i| l.point(i));
                let img = pts.map(|p| l.act(&m, &p).unwrap());
                let before = g.cross_ratio(&pts[0], &pts[1], &pts[2], &pts[3]).unwrap();
                let after = g.cross_ratio(&img[0], &img[1], &img[2], &img[3]).unwrap();
                assert_eq!(before, after, "{}", r.name());
            }
        }
    }
}

#[test]
fn cross_ratio_of_standard_points() {
    let g = geometries()
        .into_iter()
        .find(|g| g.ring().name() == "GF(3)[e]")
        .unwrap();
    let l = g.line();
    let r = l.ring().clone();
    let p = |a: Elem, b: Elem| l.canonical(a, b).unwrap();
    let (one, zero) = (r.one(), r.zero());
    let two = r.add(one, one);
    let cr = g
        .cross_ratio(&p(one, zero), &p(zero, one), &p(one, one), &p(two, one))
        .unwrap();
    assert_eq!(cr, CrossRatio::Affine(vec![two]));
}

#[test]
fn identity_and_automorphisms_induce_expected_maps() {
    for l in lines() {
        let r = l.ring().clone();
        let id = JordanMap::new(r.clone(), r.clone(), r.elements().collect()).unwrap();
        assert!(jordan_induced_map(&id, &l, &l).unwrap().is_identity());
    }
    // Frobenius on GF(4) and the factor swap on GF(2)xGF(2).
    for l in lines() {
        let r = l.ring().clone();
        let table: Vec<Elem> = match r.name() {
            "GF(4)" => r.elements().map(|x| r.mul(x, x)).collect(),
            "GF(2)xGF(2)" => r
                .elements()
                .map(|x| Elem::from((x.index() % 2) * 2 + x.index() / 2))
                .collect(),
            _ => continue,
        };
        let map = JordanMap::new(r.clone(), r.clone(), table).unwrap();
        let induced = jordan_induced_map(&map, &l, &l).unwrap();
        assert!(!induced.is_identity());
        assert_eq!(induced, algebra_iso_map(&map, &l, &l).unwrap());
    }
}

#[test]
fn strong_systems_are_closed_under_triple_products() {
    for l in lines() {
        let r = l.ring().clone();
        let Some(alg) = r.algebra() else { continue };
        for subset in [r.elements().collect::<Vec<_>>(), alg.scalars().to_vec()] {
            if is_strong_jordan_system(&r, &subset).unwrap().is_strong {
                for &a in &subset {
                    for &b in &subset {
                        assert!(subset.contains(&r.mul(r.mul(a, b), a)));
                    }
                }
            }
        }
    }
}
