use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use chaingeo::chain::ChainGeometry;
use chaingeo::grassmann::{all_subspaces, is_complementary, to_subspace, Subspace};
use chaingeo::pline::{is_invertible, Matrix2, ProjectiveLine};
use chaingeo::ring::{make_gf, make_matrix_ring, Elem, FiniteRing};

fn line_over(n: usize, q: usize) -> ProjectiveLine {
    let k = make_gf(q).unwrap();
    let r = if n == 1 {
        k
    } else {
        make_matrix_ring(&k, n).unwrap()
    };
    ProjectiveLine::new(Arc::new(r)).unwrap()
}

fn check_correspondence(n: usize, q: usize, expected_points: usize) {
    let l = line_over(n, q);
    assert_eq!(l.len(), expected_points);
    let images: Vec<Subspace> = l.points().iter().map(|p| to_subspace(&l, p).unwrap()).collect();
    let mut sorted = images.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), images.len(), "to_subspace is injective");
    let field = Arc::new(make_gf(q).unwrap());
    assert_eq!(sorted, all_subspaces(&field, 2 * n, n), "to_subspace is onto");
    for i in 0..images.len() {
        for j in 0..images.len() {
            assert_eq!(
                l.distant_idx(i, j),
                is_complementary(&images[i], &images[j]).unwrap()
            );
        }
    }
}

#[test]
fn classical_lines() {
    check_correspondence(1, 2, 3);
    check_correspondence(1, 3, 4);
}

#[test]
fn two_by_two_over_gf2() {
    check_correspondence(2, 2, 35);
}

#[test]
fn two_by_two_over_gf3() {
    let start = Instant::now();
    let l = line_over(2, 3);
    let built = start.elapsed();
    assert_eq!(l.len(), 130);
    eprintln!("line over M2(GF(3)) built in {built:?}");
    check_correspondence(2, 3, 130);
}

fn chain_is_mutually_complementary(g: &ChainGeometry, points: &[chaingeo::pline::ProjPoint], q: usize) {
    assert_eq!(points.len(), q + 1);
    let subs: Vec<Subspace> = points.iter().map(|p| to_subspace(g.line(), p).unwrap()).collect();
    for (i, u) in subs.iter().enumerate() {
        for v in &subs[i + 1..] {
            assert!(is_complementary(u, v).unwrap());
        }
    }
}

#[test]
fn chains_are_complementary_families() {
    let g = ChainGeometry::new(line_over(2, 2)).unwrap();
    for c in g.all_chains().unwrap() {
        chain_is_mutually_complementary(&g, c.points(), 2);
    }
    // M2(GF(3)) is too large to list every chain; sample images of the
    // standard chain instead.
    let g = ChainGeometry::new(line_over(2, 3)).unwrap();
    let r: &FiniteRing = g.ring();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let m = loop {
            let mut e = || Elem::from(rng.gen_range(0..r.size()));
            let m = Matrix2::new(e(), e(), e(), e());
            if is_invertible(r, &m) {
                break m;
            }
        };
        let c = g.chain_image(&m).unwrap();
        chain_is_mutually_complementary(&g, c.points(), 3);
    }
}
