mod common;

use superkit::hcp::{
    check_exact_sequence, gl_pair, pseudoabelian_example, purely_even_pair, r_radical, subgroup, subordinated_closure, validate_pair,
    ExactSequenceData, HarishChandraPair, Representation,
};
use superkit::lie::check_axioms;
use superkit::linalg::{self, Subspace};
use superkit::poly::{Mat, Poly};
use superkit::Field;

#[test]
fn constructed_pairs_validate() {
    for f in [Field::Rational, Field::prime(3).unwrap(), Field::prime(5).unwrap()] {
        let mut pairs: Vec<HarishChandraPair> = (1..=3).map(|n| pseudoabelian_example(f, n).unwrap()).collect();
        for (m, n) in [(1, 0), (0, 1), (1, 1), (2, 1), (1, 2)] {
            pairs.push(gl_pair(f, m, n).unwrap());
        }
        for p in &pairs {
            let r = validate_pair(p);
            assert!(r.passed(), "{} over {f}: {r}", p.name);
            assert!(check_axioms(p.lie()).passed(), "{}", p.name);
        }
    }
}

fn coordinate_subspaces(f: Field, n: usize) -> Vec<Subspace> {
    (0u32..1 << n).map(|m| Subspace::span(f, n, (0..n).filter(|i| m >> i & 1 == 1).map(|i| linalg::unit_vec(f, n, i)))).collect()
}

#[test]
fn closure_is_the_largest_subordinated_submodule() {
    let q = Field::Rational;
    let pairs = [gl_pair(q, 1, 1).unwrap(), pseudoabelian_example(q, 1).unwrap(), pseudoabelian_example(q, 2).unwrap(), gl_pair(q, 2, 1).unwrap()];
    for p in &pairs {
        let t = p.dim_v();
        assert!(t <= 4);
        let candidates = common::echelon_subspaces(q, t);
        let g0 = p.group.lie_dim();
        let lie_rs = if g0 <= 3 { common::echelon_subspaces(q, g0) } else { coordinate_subspaces(q, g0) };
        for lie_r in &lie_rs {
            let sub = subordinated_closure(p, lie_r).unwrap();
            assert!(sub.iterations <= t.max(1), "{}: {} iterations", p.name, sub.iterations);
            let oracle = common::brute_force_subordinated(p, lie_r, &candidates);
            assert_eq!(sub.w, oracle, "{} with Lie(R) = {:?}", p.name, lie_r.basis());
            let (_, lie_h) = r_radical(p, lie_r).unwrap();
            assert!(lie_h.is_subspace_of(lie_r));
        }
    }
}

#[test]
fn radicals_of_the_examples() {
    let q = Field::Rational;
    for n in 1..=3 {
        let p = pseudoabelian_example(q, n).unwrap();
        let x = Subspace::span(q, n + 1, vec![linalg::unit_vec(q, n + 1, n)]);
        let (w, h) = r_radical(&p, &x).unwrap();
        assert_eq!(w.w, Subspace::full(q, 2 * n));
        assert!(w.stable);
        assert_eq!(h, x);
        let (w0, h0) = r_radical(&p, &Subspace::zero(q, n + 1)).unwrap();
        assert!(w0.w.is_zero() && h0.is_zero());
    }
    let p = gl_pair(q, 1, 1).unwrap();
    let scalar = Subspace::span(q, 2, vec![vec![q.one(), q.one()]]);
    let (w, h) = r_radical(&p, &scalar).unwrap();
    assert_eq!(w.w, Subspace::full(q, 2));
    assert_eq!(h, scalar);
}

/// The trivial subgroup of the group of `p`, with `dim_w` odd vectors.
fn trivial_subgroup(p: &HarishChandraPair, dim_w: usize) -> HarishChandraPair {
    let f = p.field();
    let n = p.group.size;
    let nv = n * n + 1;
    let eqs = (0..n * n)
        .map(|k| {
            let x = Poly::var(f, nv, k);
            if k / n == k % n {
                x.sub(&Poly::one(f, nv))
            } else {
                x
            }
        })
        .collect();
    let group = subgroup(&p.group, &[], vec![], eqs).unwrap();
    if dim_w == 0 {
        return purely_even_pair("E", group).unwrap();
    }
    let rho = Mat::identity(dim_w, &Poly::one(f, nv));
    let labels = (1..=dim_w).map(|i| format!("w{i}")).collect();
    HarishChandraPair::new("E", group, labels, Representation::Polynomial(rho), vec![vec![vec![]; dim_w]; dim_w], vec![]).unwrap()
}

fn identity(f: Field, n: usize) -> Vec<linalg::Vector> {
    (0..n).map(|i| linalg::unit_vec(f, n, i)).collect()
}

#[test]
fn exact_sequences() {
    let q = Field::Rational;
    let gl = gl_pair(q, 2, 1).unwrap();
    let e = trivial_subgroup(&gl, 0);
    let s = ExactSequenceData { inner: &e, mid: &gl, outer: &gl, embedding: vec![], projection: identity(q, 4), even_exact: true };
    let r = check_exact_sequence(&s).unwrap();
    assert!(r.passed(), "{r}");

    // the G_a factor of the pseudoabelian group acts trivially on V
    let p = pseudoabelian_example(q, 1).unwrap();
    let ga = p.group.generators[1].clone();
    let x = linalg::unit_vec(q, 2, 1);
    let n = purely_even_pair("N", subgroup(&p.group, &[x], vec![ga], vec![]).unwrap()).unwrap();
    let s = ExactSequenceData { inner: &n, mid: &p, outer: &p, embedding: vec![], projection: identity(q, 2), even_exact: true };
    assert!(check_exact_sequence(&s).unwrap().passed());

    // span{E13, E31} is moved by the unipotent part of GL_2
    let gl11 = gl_pair(q, 1, 1).unwrap();
    let (z, u1, u2) = (linalg::zero_vec(q, 2), linalg::unit_vec(q, 2, 0), linalg::unit_vec(q, 2, 1));
    let idx = |l: &str| gl.v_index(l).unwrap();
    let mut projection = vec![z.clone(); 4];
    projection[idx("E23")] = u1;
    projection[idx("E32")] = u2;
    let embedding = vec![linalg::unit_vec(q, 4, idx("E13")), linalg::unit_vec(q, 4, idx("E31"))];
    let e2 = trivial_subgroup(&gl, 2);
    let s = ExactSequenceData { inner: &e2, mid: &gl, outer: &gl11, embedding, projection, even_exact: true };
    let r = check_exact_sequence(&s).unwrap();
    assert!(r.get("(1) superspace sequence exact").unwrap().passed);
    assert!(!r.get("(2a) W is G-stable").unwrap().passed);
    assert!(!r.passed());

    let bad = ExactSequenceData { inner: &e, mid: &gl, outer: &gl, embedding: vec![], projection: vec![z; 3], even_exact: true };
    assert!(check_exact_sequence(&bad).is_err());
}
