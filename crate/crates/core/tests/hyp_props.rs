mod common;

use superkit::algebra::Parity;
use superkit::hyp::{
    additive_super_truncation, additive_truncation, canonical_decompose, canonical_recompose, check_gr_hyp_duality, check_hyp_filtration,
    grassmann_truncation, truncated_hyp, TruncatedHopf,
};
use superkit::lie::check_axioms;
use superkit::linalg::{self, Vector};
use superkit::{Error, Field};

/// `(e_p^* e_q^*)(b_m) = (-1)^{|b_p||b_q|} Δ(b_m)_{pq}`, read straight off
/// the coproduct table.
fn basis_convolution(h: &TruncatedHopf, p: usize, q: usize) -> Vector {
    let f = h.field();
    let n = h.dim();
    let a = h.algebra();
    let odd = a.parity(p) == Parity::Odd && a.parity(q) == Parity::Odd;
    (0..n)
        .map(|m| {
            let c = h.hopf().coproduct_coords(&linalg::unit_vec(f, n, m))[p * n + q].clone();
            if odd {
                -c
            } else {
                c
            }
        })
        .collect()
}

#[test]
fn convolution_matches_the_coproduct_table() {
    for f in [Field::Rational, Field::prime(3).unwrap()] {
        for (name, h) in common::hyp_fixtures(f) {
            let n = h.dim();
            for p in 0..n {
                for q in 0..n {
                    let got = h.convolve_truncated(&linalg::unit_vec(f, n, p), &linalg::unit_vec(f, n, q));
                    assert_eq!(got, basis_convolution(&h, p, q), "{name} ({p}, {q})");
                }
            }
        }
    }
}

#[test]
fn filtration_lemmas_hold_on_all_fixtures() {
    for f in [Field::Rational, Field::prime(5).unwrap()] {
        for (name, h) in common::hyp_fixtures(f) {
            assert!(h.dim() <= 12);
            let r = check_hyp_filtration(&h);
            assert!(r.passed(), "{name} over {f}: {r}");
            let d = check_gr_hyp_duality(&h).unwrap();
            assert!(d.passed(), "{name} over {f}: {d}");
        }
    }
}

#[test]
fn canonical_form_round_trips_on_the_whole_dual_over_f3() {
    let f3 = Field::prime(3).unwrap();
    for (name, h) in common::hyp_fixtures(f3) {
        if h.dim() > 6 {
            continue;
        }
        let even = h.odd_level(0).clone();
        for phi in common::all_vectors_f3(h.dim()) {
            let table = canonical_decompose(&h, &phi).unwrap();
            assert!(table.values().all(|psi| even.contains(psi)), "{name}");
            assert_eq!(canonical_recompose(&h, &table).unwrap(), phi, "{name}");
        }
    }
}

#[test]
fn canonical_form_round_trips_on_bases() {
    let q = Field::Rational;
    let mut rng = common::rng(3);
    for (name, h) in common::hyp_fixtures(q) {
        let n = h.dim();
        let alg = h.algebra().clone();
        let mut probes: Vec<Vector> = (0..n).map(|i| linalg::unit_vec(q, n, i)).collect();
        probes.extend((0..10).map(|_| common::random_element(&mut rng, &alg, None).coords().to_vec()));
        for phi in probes {
            let table = canonical_decompose(&h, &phi).unwrap();
            assert_eq!(canonical_recompose(&h, &table).unwrap(), phi, "{name}");
        }
    }
}

#[test]
fn levels_and_truncation() {
    let q = Field::Rational;
    let ga = additive_truncation(q, 4).unwrap();
    for k in 0..=4 {
        assert_eq!(truncated_hyp(&ga, k).unwrap().space.dim(), k + 1);
    }
    let d = linalg::unit_vec(q, 5, 1);
    let d2 = ga.convolve(&d, &d).unwrap();
    assert_eq!(ga.level_of(&d2), 2);
    let d4 = ga.convolve(&d2, &d2).unwrap();
    assert!(matches!(ga.convolve(&d4, &d), Err(Error::TruncationExceeded { .. })));

    let gs = additive_super_truncation(q, 2).unwrap();
    let lie = gs.primitive_lie().unwrap();
    assert_eq!(lie.space().dims(), (1, 1));
    assert!(check_axioms(&lie).passed());
    // Δt carries θ⊗θ, so the odd primitive squares to a nonzero even one
    let odd = lie.odd_indices()[0];
    assert!(!linalg::is_zero_vec(&lie.basis_bracket(odd, odd)));

    let lam = grassmann_truncation(q, &["a", "b"]).unwrap();
    let plie = lam.primitive_lie().unwrap();
    assert_eq!(plie.space().dims(), (0, 2));
    assert!(linalg::is_zero_vec(&plie.basis_bracket(0, 1)));
}
