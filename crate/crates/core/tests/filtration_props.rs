mod common;

use proptest::prelude::*;

use superkit::algebra::{dual_super_numbers, grassmann_named, odd_ideal, AlgebraMap, SuperIdeal};
use superkit::filtration::{check_gr_tensor_iso, graded_companion, gr_map, FilteredSuperAlgebra};
use superkit::linalg;
use superkit::Field;

fn odd_adic(a: &superkit::algebra::AlgebraRef) -> FilteredSuperAlgebra {
    FilteredSuperAlgebra::adic(a, &odd_ideal(a).unwrap()).unwrap()
}

/// `(1, 2, 1) * (1, 2, 1)` as a polynomial product of dimension tables.
fn convolve_dims(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

#[test]
fn comparison_map_on_fixtures() {
    let q = Field::Rational;
    let k = grassmann_named(q, &[]).unwrap();
    let fixtures = vec![
        grassmann_named(q, &["th"]).unwrap(),
        grassmann_named(q, &["th1", "th2"]).unwrap(),
        dual_super_numbers(&k, "e0", "e1").unwrap().algebra,
        dual_super_numbers(&grassmann_named(q, &["a"]).unwrap(), "e0", "e1").unwrap().algebra,
        k,
    ];
    for a in &fixtures {
        for b in &fixtures {
            let (fa, fb) = (odd_adic(a), odd_adic(b));
            let iso = check_gr_tensor_iso(&fa, &fb).unwrap();
            let da = graded_companion(&fa).unwrap().component_dims();
            let db = graded_companion(&fb).unwrap().component_dims();
            assert_eq!(iso.degree_dims, convolve_dims(&da, &db));
        }
    }
    let l2 = odd_adic(&fixtures[1]);
    assert_eq!(check_gr_tensor_iso(&l2, &l2).unwrap().degree_dims, vec![1, 4, 6, 4, 1]);
}

#[test]
fn gr_of_identity_between_filtrations() {
    let q = Field::Rational;
    let mut rng = common::rng(7);
    for _ in 0..20 {
        let f = common::random_filtered(&mut rng, q, 8);
        let a = f.algebra();
        let maximal = {
            let n = a.dim();
            // nilpotent elements: kernel of the trace of left multiplication
            let traces: Vec<_> = (0..n)
                .map(|i| {
                    let m = a.left_mul_matrix(&linalg::unit_vec(q, n, i));
                    (0..n).fold(q.zero(), |acc, k| &acc + &m[k][k])
                })
                .collect();
            SuperIdeal::from_vectors(a, linalg::nullspace(&[traces], n, q)).unwrap()
        };
        let src = graded_companion(&odd_adic(a)).unwrap();
        let dst = graded_companion(&FilteredSuperAlgebra::adic(a, &maximal).unwrap()).unwrap();
        let g = gr_map(&AlgebraMap::identity(a), &src, &dst).unwrap();
        assert!(g.is_multiplicative().is_ok());
        assert!(g.preserves_parity());
        for (i, img) in g.images().iter().enumerate() {
            for (j, c) in img.iter().enumerate() {
                if !c.is_zero() {
                    assert_eq!(src.degree(i), dst.degree(j));
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(24) })]

    #[test]
    fn comparison_map_on_random_pairs(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let f = common::random_filtered(&mut rng, Field::Rational, 6);
        let g = common::random_filtered(&mut rng, Field::Rational, 6);
        let iso = check_gr_tensor_iso(&f, &g);
        prop_assert!(iso.is_ok(), "{:?}", iso.err());
    }

    #[test]
    fn gr_products_ignore_the_representative(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let f = common::random_filtered(&mut rng, Field::Rational, 8);
        let a = f.algebra();
        let gr = graded_companion(&f).unwrap();
        let n = a.dim();
        for i in 0..n {
            for j in 0..n {
                let (di, dj) = (gr.degree(i), gr.degree(j));
                let pi = common::random_element(&mut rng, a, None);
                let pj = common::random_element(&mut rng, a, None);
                let ri = linalg::add(gr.representative(i), &f.level(di + 1).subspace().reduce(pi.coords()).iter().zip(pi.coords()).map(|(r, p)| p - r).collect::<Vec<_>>());
                let rj = linalg::add(gr.representative(j), &f.level(dj + 1).subspace().reduce(pj.coords()).iter().zip(pj.coords()).map(|(r, p)| p - r).collect::<Vec<_>>());
                prop_assert!(f.level(di + 1).subspace().contains(&linalg::sub(&ri, gr.representative(i))));
                let want = gr.class(di + dj, &a.mul_coords(gr.representative(i), gr.representative(j)));
                let got = gr.class(di + dj, &a.mul_coords(&ri, &rj));
                prop_assert_eq!(got, want);
            }
        }
    }
}
