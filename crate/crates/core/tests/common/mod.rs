//! Shared generators and brute-force oracles for the integration tests.
#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use superkit::algebra::{
    odd_ideal, quotient_by_ideal, truncated_poly, AlgebraHandle, AlgebraRef, Element, Parity, SuperAlgebra, SuperIdeal, SuperVectorSpace,
};
use superkit::filtration::FilteredSuperAlgebra;
use superkit::gamma::{EnvelopingOracle, Gamma, Letter};
use superkit::hcp::{specialize, HarishChandraPair};
use superkit::hopf::{cyclic_functions, cyclic_group_algebra, grassmann_hopf, tensor_hopf, trivial_hopf, CoidealCoaction, HopfSuperAlgebra};
use superkit::hyp::{additive_super_truncation, additive_truncation, grassmann_truncation, multiplicative_truncation, tensor_truncation, TruncatedHopf};
use superkit::linalg::{self, Subspace, Vector};
use superkit::poly::Mat;
use superkit::{Field, Scalar};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_scalar(rng: &mut impl Rng, field: Field) -> Scalar {
    let n: i64 = rng.gen_range(-3..=3);
    if rng.gen_bool(0.2) {
        field.ratio(n, rng.gen_range(1..=3)).unwrap_or_else(|_| field.int(n))
    } else {
        field.int(n)
    }
}

/// A random element of the given parity (or inhomogeneous when `None`).
pub fn random_element(rng: &mut impl Rng, alg: &AlgebraRef, parity: Option<Parity>) -> Element {
    let f = alg.field();
    let coords: Vector = (0..alg.dim())
        .map(|i| {
            if parity.is_some_and(|p| alg.parity(i) != p) || rng.gen_bool(0.4) {
                f.zero()
            } else {
                small_scalar(rng, f)
            }
        })
        .collect();
    alg.element(coords).unwrap()
}

/// Product of Grassmann monomials by counting inversions, independent of
/// any structure table: `θ_S θ_T = (-1)^{inv(S,T)} θ_{S ∪ T}` or 0.
pub fn grassmann_monomial_product(s: u32, t: u32) -> Option<(bool, u32)> {
    if s & t != 0 {
        return None;
    }
    let mut inversions = 0;
    for i in 0..32 {
        if s >> i & 1 == 1 {
            inversions += (t & ((1u32 << i) - 1)).count_ones();
        }
    }
    Some((inversions % 2 == 1, s | t))
}

/// Moves an algebra to a random parity-preserving basis.
pub fn change_basis(rng: &mut impl Rng, a: &AlgebraRef) -> (AlgebraRef, Vec<Vector>) {
    let f = a.field();
    let n = a.dim();
    loop {
        let p: Vec<Vector> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if a.parity(i) != a.parity(j) {
                            f.zero()
                        } else if i == j {
                            f.int(rng.gen_range(1..=2))
                        } else if rng.gen_bool(0.3) {
                            small_scalar(rng, f)
                        } else {
                            f.zero()
                        }
                    })
                    .collect()
            })
            .collect();
        // columns of `cols` are the new basis vectors in old coordinates
        let cols = linalg::transpose(&p, n);
        let Some(inv) = linalg::inverse(&p, f) else { continue };
        let to_new = |v: &[Scalar]| linalg::mat_vec(&inv, v, f);
        let labels = (0..n).map(|i| format!("u{i}")).collect();
        let parities = (0..n).map(|i| a.parity(i)).collect();
        let space = SuperVectorSpace::new(labels, parities).unwrap();
        let unit = to_new(a.unit_coords());
        let b = SuperAlgebra::new(f, space, unit, |i, j| to_new(&a.mul_coords(&cols[i], &cols[j]))).unwrap();
        return (b, inv);
    }
}

/// A random local superalgebra of dimension at most `max_dim`, filtered by
/// an adic, weighted or trivial filtration, in a random basis.
pub fn random_filtered(rng: &mut impl Rng, field: Field, max_dim: usize) -> FilteredSuperAlgebra {
    loop {
        let ne = rng.gen_range(0..=2);
        let no = rng.gen_range(0..=3);
        let deg = rng.gen_range(1..=3);
        let even: Vec<String> = (0..ne).map(|i| format!("t{i}")).collect();
        let odd: Vec<String> = (0..no).map(|i| format!("s{i}")).collect();
        let e: Vec<&str> = even.iter().map(String::as_str).collect();
        let o: Vec<&str> = odd.iter().map(String::as_str).collect();
        let (a, m) = truncated_poly(field, &e, &o, deg).unwrap();
        let n = a.dim();
        // a monomial ideal to divide by
        let mut killed = Vec::new();
        if rng.gen_bool(0.5) && n > 2 {
            let k = rng.gen_range(1..n);
            for i in 0..n {
                let divisible = m.monomials[i].0.iter().zip(&m.monomials[k].0).all(|(x, y)| x >= y)
                    && m.monomials[i].1 & m.monomials[k].1 == m.monomials[k].1;
                if divisible {
                    killed.push(linalg::unit_vec(field, n, i));
                }
            }
        }
        let ideal = SuperIdeal::from_vectors(&a, killed).unwrap();
        let q = quotient_by_ideal(&a, &ideal).unwrap();
        if q.algebra.dim() > max_dim || q.algebra.dim() == 0 {
            continue;
        }
        let (we, wo) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
        let weight = |i: usize| -> usize {
            let (alpha, mask) = &m.monomials[i];
            alpha.iter().map(|&x| x as usize).sum::<usize>() * we + mask.count_ones() as usize * wo
        };
        let top = (0..n).map(weight).max().unwrap_or(0);
        let kind = rng.gen_range(0..4);
        let qa = q.algebra.clone();
        let chain: Vec<Subspace> = match kind {
            0 => {
                let f = FilteredSuperAlgebra::adic(&qa, &odd_ideal(&qa).unwrap()).unwrap();
                f.chain().iter().map(|i| i.subspace().clone()).collect()
            }
            1 => {
                let maximal = Subspace::span(field, qa.dim(), (1..n).map(|i| q.projection.apply_coords(&linalg::unit_vec(field, n, i))));
                let mi = SuperIdeal::from_vectors(&qa, maximal.basis().to_vec()).unwrap();
                let f = FilteredSuperAlgebra::adic(&qa, &mi).unwrap();
                f.chain().iter().map(|i| i.subspace().clone()).collect()
            }
            2 => (0..=top + 1)
                .map(|k| {
                    let gens = (0..n).filter(|&i| weight(i) >= k).map(|i| q.projection.apply_coords(&linalg::unit_vec(field, n, i)));
                    Subspace::span(field, qa.dim(), gens)
                })
                .collect(),
            _ => vec![Subspace::full(field, qa.dim()), Subspace::zero(field, qa.dim())],
        };
        let (b, to_new) = change_basis(rng, &qa);
        let moved: Vec<SuperIdeal> = chain
            .iter()
            .map(|s| SuperIdeal::from_vectors(&b, s.basis().iter().map(|v| linalg::mat_vec(&to_new, v, field)).collect()).unwrap())
            .collect();
        // drop repeated trailing zero ideals
        let mut moved = moved;
        while moved.len() > 2 && moved[moved.len() - 2].is_zero() {
            moved.pop();
        }
        return FilteredSuperAlgebra::new(&b, moved).unwrap();
    }
}

/// All subspaces spanned by echelon rows with entries in {-1, 0, 1} over a
/// pivot subset, for `dim <= 4`.
pub fn echelon_subspaces(field: Field, dim: usize) -> Vec<Subspace> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << dim) {
        let pivots: Vec<usize> = (0..dim).filter(|i| mask >> i & 1 == 1).collect();
        // free positions: columns after a pivot that are not pivots
        let mut free = Vec::new();
        for (r, &p) in pivots.iter().enumerate() {
            for c in p + 1..dim {
                if !pivots.contains(&c) {
                    free.push((r, c));
                }
            }
        }
        let count = 3usize.pow(free.len() as u32);
        for code in 0..count {
            let mut rows: Vec<Vector> = pivots.iter().map(|&p| linalg::unit_vec(field, dim, p)).collect();
            let mut c = code;
            for &(r, col) in &free {
                rows[r][col] = field.int((c % 3) as i64 - 1);
                c /= 3;
            }
            out.push(Subspace::span(field, dim, rows));
        }
    }
    out
}

/// The largest subspace `W` among `candidates` with `[W,V] ⊆ Lie(R)`,
/// `[[W,V],V] ⊆ W` and `W` stable under the group, found by testing each.
pub fn brute_force_subordinated(p: &HarishChandraPair, lie_r: &Subspace, candidates: &[Subspace]) -> Subspace {
    let f = p.field();
    let t = p.dim_v();
    let e = |i: usize| linalg::unit_vec(f, t, i);
    let mut best = Subspace::zero(f, t);
    for w in candidates {
        let ok = w.basis().iter().all(|x| {
            (0..t).all(|j| {
                let br = p.bracket(x, &e(j));
                lie_r.contains(&br) && (0..t).all(|l| w.contains(&p.act(&br, &e(l))))
            })
        }) && p.is_stable(w).is_ok();
        if ok && w.dim() > best.dim() {
            best = w.clone();
        }
    }
    best
}

/// All vectors of `F_3^n`.
pub fn all_vectors_f3(n: usize) -> Vec<Vector> {
    let f = Field::prime(3).unwrap();
    (0..3usize.pow(n as u32))
        .map(|mut c| {
            (0..n)
                .map(|_| {
                    let x = f.int((c % 3) as i64);
                    c /= 3;
                    x
                })
                .collect()
        })
        .collect()
}

/// `{a : τ(a) = a ⊗ 1}` by enumerating all of `A` over `F_3`.
pub fn equalizer_by_enumeration(c: &CoidealCoaction) -> Subspace {
    let a = &c.carrier;
    let f = a.field();
    let unit_d = c.coalgebra.algebra().unit_coords().to_vec();
    let hits = all_vectors_f3(a.dim())
        .into_iter()
        .filter(|v| c.tau_coords(v) == superkit::algebra::tensor_coords(v, &unit_d))
        .collect::<Vec<_>>();
    Subspace::span(f, a.dim(), hits)
}

/// A random odd element of `r`.
pub fn random_odd(rng: &mut impl Rng, r: &AlgebraRef) -> Element {
    random_element(rng, r, Some(Parity::Odd))
}

/// `αβ` for random odd `α, β`, so the result squares to zero.
pub fn square_zero_even(rng: &mut impl Rng, r: &AlgebraRef) -> Element {
    &random_odd(rng, r) * &random_odd(rng, r)
}

fn random_coords(rng: &mut impl Rng, field: Field, n: usize) -> Vector {
    loop {
        let v: Vector = (0..n).map(|_| if rng.gen_bool(0.5) { small_scalar(rng, field) } else { field.zero() }).collect();
        if !linalg::is_zero_vec(&v) || n == 0 {
            return v;
        }
    }
}

/// `I + sum X_k c_k` with even nilpotent `c_k`, a group point congruent to
/// the identity.
pub fn unipotent_point(rng: &mut impl Rng, p: &HarishChandraPair, r: &AlgebraRef) -> Mat<Element> {
    let one = r.one();
    let mut m = Mat::identity(p.group.size, &one);
    for k in 0..p.group.lie_dim() {
        if rng.gen_bool(0.5) {
            let c = square_zero_even(rng, r);
            m = m.add(&p.group.lie_matrix(&linalg::unit_vec(p.field(), p.group.lie_dim(), k)).lift(&one).scale_by(&c));
        }
    }
    m
}

/// A generic generator of the group at random nonzero scalar parameters.
pub fn scalar_point(rng: &mut impl Rng, p: &HarishChandraPair, r: &AlgebraRef) -> Mat<Element> {
    let f = p.field();
    let g = &p.group.generators[rng.gen_range(0..p.group.generators.len())];
    loop {
        let values: Vec<Scalar> = g.params.iter().map(|_| f.int(rng.gen_range(1..=3))).collect();
        if let Some(m) = specialize(g, &values) {
            if m.inverse().is_some() {
                return m.lift(&r.one());
            }
        }
    }
}

/// A random letter; with `unipotent` the even letters stay congruent to
/// the identity so that the enveloping oracle applies.
pub fn random_letter(rng: &mut impl Rng, p: &HarishChandraPair, r: &AlgebraRef, unipotent: bool) -> Letter {
    let f = p.field();
    match rng.gen_range(0..6) {
        0..=2 if p.dim_v() > 0 => Letter::E { coef: random_odd(rng, r), v: random_coords(rng, f, p.dim_v()) },
        3 | 4 => Letter::F { coef: square_zero_even(rng, r), x: random_coords(rng, f, p.group.lie_dim()) },
        _ if unipotent => Letter::G(unipotent_point(rng, p, r)),
        _ => Letter::G(scalar_point(rng, p, r)),
    }
}

pub fn random_word(rng: &mut impl Rng, p: &HarishChandraPair, r: &AlgebraRef, max_len: usize, unipotent: bool) -> Vec<Letter> {
    let len = rng.gen_range(1..=max_len);
    (0..len).map(|_| random_letter(rng, p, r, unipotent)).collect()
}

/// The inverse word, letter by letter.
pub fn inverse_word(w: &[Letter]) -> Vec<Letter> {
    w.iter()
        .rev()
        .map(|l| match l {
            Letter::E { coef, v } => Letter::E { coef: -coef, v: v.clone() },
            Letter::F { coef, x } => Letter::F { coef: -coef, x: x.clone() },
            Letter::G(g) => Letter::G(g.inverse().expect("group points are invertible")),
        })
        .collect()
}

/// The word `u w u^{-1} w^{-1}`.
pub fn commutator_word(u: &[Letter], w: &[Letter]) -> Vec<Letter> {
    let mut out = u.to_vec();
    out.extend_from_slice(w);
    out.extend(inverse_word(u));
    out.extend(inverse_word(w));
    out
}

/// Checks relations (1) to (5) for every basis pair at one coefficient draw:
/// both sides agree in `Γ(R)` and the enveloping oracle sees the same
/// element. Returns the number of instances checked.
pub fn check_relations(rng: &mut impl Rng, gamma: &Gamma, oracle: &EnvelopingOracle) -> Result<usize, String> {
    let p = gamma.pair().clone();
    let r = gamma.ring().clone();
    let f = p.field();
    let (g0, t) = (p.group.lie_dim(), p.dim_v());
    let ev = |i: usize| linalg::unit_vec(f, t, i);
    let ex = |k: usize| linalg::unit_vec(f, g0, k);
    let e = |coef: Element, v: Vector| Letter::E { coef, v };
    let fl = |coef: Element, x: Vector| Letter::F { coef, x };
    let mut instances: Vec<(String, Vec<Letter>, Vec<Letter>)> = Vec::new();
    for i in 0..t {
        for j in 0..t {
            let (a, a2) = (random_odd(rng, &r), random_odd(rng, &r));
            let lhs = commutator_word(&[e(a.clone(), ev(i))], &[e(a2.clone(), ev(j))]);
            instances.push((format!("(1) {i},{j}"), lhs, vec![fl(-&(&a * &a2), p.bracket(&ev(i), &ev(j)))]));
        }
        let (a, a2) = (random_odd(rng, &r), random_odd(rng, &r));
        let half = f.int(2).inv().expect("odd characteristic");
        let rhs = vec![fl(-&(&a * &a2), linalg::scale(&half, &p.bracket(&ev(i), &ev(i)))), e(&a + &a2, ev(i))];
        instances.push((format!("(4) {i}"), vec![e(a, ev(i)), e(a2, ev(i))], rhs));
    }
    for k in 0..g0 {
        for j in 0..t {
            let (b, a) = (square_zero_even(rng, &r), random_odd(rng, &r));
            let lhs = commutator_word(&[fl(b.clone(), ex(k))], &[e(a.clone(), ev(j))]);
            instances.push((format!("(2) {k},{j}"), lhs, vec![e(&b * &a, p.act(&ex(k), &ev(j)))]));
        }
        for l in 0..g0 {
            let (b, b2) = (square_zero_even(rng, &r), square_zero_even(rng, &r));
            let lhs = commutator_word(&[fl(b.clone(), ex(k))], &[fl(b2.clone(), ex(l))]);
            let br = p.lie().basis_bracket(k, l)[..g0].to_vec();
            instances.push((format!("(3) {k},{l}"), lhs, vec![fl(&b * &b2, br)]));
        }
    }
    let g = unipotent_point(rng, &p, &r);
    let ginv = g.inverse().ok_or("unipotent point is not invertible")?;
    let rho = p.rho_at(&g).ok_or("representation undefined at the group point")?;
    for j in 0..t {
        let a = random_odd(rng, &r);
        let lhs = vec![Letter::G(g.clone()), e(a.clone(), ev(j)), Letter::G(ginv.clone())];
        let rhs = (0..t).map(|k| e(rho.get(k, j) * &a, ev(k))).collect();
        instances.push((format!("(5) e {j}"), lhs, rhs));
    }
    for k in 0..g0 {
        let b = square_zero_even(rng, &r);
        let x = p.group.lie_matrix(&ex(k)).lift(&r.one());
        let lhs = vec![Letter::G(g.clone()), fl(b.clone(), ex(k)), Letter::G(ginv.clone())];
        let conj = Mat::identity(p.group.size, &r.one()).add(&g.mul(&x).mul(&ginv).scale_by(&b));
        instances.push((format!("(5) f {k}"), lhs, vec![Letter::G(conj)]));
    }
    for (name, lhs, rhs) in &instances {
        let err = |e: superkit::Error| format!("{name}: {e}");
        let l = gamma.word(lhs).map_err(err)?;
        let rv = gamma.word(rhs).map_err(err)?;
        if l != rv {
            return Err(format!("{name}: {l} != {rv}"));
        }
        let image = oracle.of_element(&l).map_err(err)?;
        if image != oracle.of_word(rhs).map_err(err)? || image != oracle.of_word(lhs).map_err(err)? {
            return Err(format!("{name}: enveloping oracle disagrees"));
        }
    }
    Ok(instances.len())
}

/// Truncated hyperalgebra sources of dimension at most 12.
pub fn hyp_fixtures(f: Field) -> Vec<(String, TruncatedHopf)> {
    let mut out: Vec<(String, TruncatedHopf)> = Vec::new();
    for n in [1, 3, 6, 11] {
        out.push((format!("Ga/m^{}", n + 1), additive_truncation(f, n).unwrap()));
    }
    for n in [1, 2, 5] {
        out.push((format!("Gm/m^{}", n + 1), multiplicative_truncation(f, n).unwrap()));
    }
    for n in 1..=5 {
        out.push((format!("Ga(1|1)/m^{}", n + 1), additive_super_truncation(f, n).unwrap()));
    }
    let names = ["th1", "th2", "th3"];
    for k in 0..=3 {
        out.push((format!("Lambda{k}"), grassmann_truncation(f, &names[..k]).unwrap()));
    }
    let l1 = grassmann_truncation(f, &["e"]).unwrap();
    let l2 = grassmann_truncation(f, &["e1", "e2"]).unwrap();
    let ga2 = additive_truncation(f, 2).unwrap();
    let gs2 = additive_super_truncation(f, 2).unwrap();
    out.push(("Ga/m^3 x Lambda1".into(), tensor_truncation(&ga2, &l1).unwrap()));
    out.push(("Ga/m^3 x Lambda2".into(), tensor_truncation(&ga2, &l2).unwrap()));
    out.push(("Ga(1|1)/m^3 x Lambda1".into(), tensor_truncation(&gs2, &l1).unwrap()));
    out.push(("Gm/m^2 x Ga(1|1)/m^2".into(), tensor_truncation(&multiplicative_truncation(f, 1).unwrap(), &additive_super_truncation(f, 1).unwrap()).unwrap()));
    out
}

/// Small Hopf superalgebras, including tensor products.
pub fn hopf_fixtures(f: Field) -> Vec<(String, HopfSuperAlgebra)> {
    let mut out = vec![
        ("K".to_string(), trivial_hopf(f).unwrap()),
        ("Lambda1".into(), grassmann_hopf(f, &["x"]).unwrap()),
        ("Lambda2".into(), grassmann_hopf(f, &["x", "y"]).unwrap()),
        ("Lambda3".into(), grassmann_hopf(f, &["x", "y", "z"]).unwrap()),
        ("Fun(Z2)".into(), cyclic_functions(f, 2).unwrap()),
        ("Fun(Z4)".into(), cyclic_functions(f, 4).unwrap()),
        ("K[Z3]".into(), cyclic_group_algebra(f, 3).unwrap()),
    ];
    let l1 = grassmann_hopf(f, &["x"]).unwrap();
    out.push(("Lambda1 x K[Z2]".into(), tensor_hopf(&l1, &cyclic_group_algebra(f, 2).unwrap()).unwrap()));
    out.push(("Lambda1 x Fun(Z3)".into(), tensor_hopf(&l1, &cyclic_functions(f, 3).unwrap()).unwrap()));
    out.push(("Lambda2 x Lambda1".into(), tensor_hopf(&grassmann_hopf(f, &["x", "y"]).unwrap(), &l1).unwrap()));
    out
}
