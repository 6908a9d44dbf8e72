//! Hopf superalgebra structures on finite-dimensional supercommutative
//! superalgebras, coactions, coinvariants and pairings.

use crate::algebra::{grassmann_named, koszul_sign, tensor, tensor_coords, AlgebraHandle, AlgebraRef, Element, Parity, SuperAlgebra, SuperVectorSpace};
use crate::error::{Error, Result};
use crate::linalg::{self, Subspace, Vector};
use crate::report::Report;
use crate::scalar::{Field, Scalar};

/// `Δ`, `ε`, `S` stored as images of basis elements. `Δ` lands in the
/// coordinates of `A ⊗ A` (index `i * dim + j`).
#[derive(Clone, Debug)]
pub struct HopfSuperAlgebra {
    alg: AlgebraRef,
    square: AlgebraRef,
    delta: Vec<Vector>,
    counit: Vector,
    antipode: Vec<Vector>,
}

impl HopfSuperAlgebra {
    /// Shape checks only; the axioms are reported by [`check_hopf_axioms`].
    pub fn new(alg: &AlgebraRef, delta: Vec<Vector>, counit: Vector, antipode: Vec<Vector>) -> Result<HopfSuperAlgebra> {
        let n = alg.dim();
        if delta.len() != n || delta.iter().any(|v| v.len() != n * n) {
            return Err(Error::InvalidHopf("coproduct table has the wrong shape".into()));
        }
        if counit.len() != n || antipode.len() != n || antipode.iter().any(|v| v.len() != n) {
            return Err(Error::InvalidHopf("counit or antipode table has the wrong shape".into()));
        }
        let square = tensor(alg, alg)?;
        Ok(HopfSuperAlgebra { alg: alg.clone(), square, delta, counit, antipode })
    }

    /// Extends generator data multiplicatively along a basis whose elements
    /// are ordered products of generators. `words[i]` lists the generator
    /// indices whose product (left to right) is basis element `i`.
    pub fn from_generator_words(
        alg: &AlgebraRef,
        words: &[Vec<usize>],
        gen_delta: &[Vector],
        gen_counit: &[Scalar],
        gen_antipode: &[Vector],
    ) -> Result<HopfSuperAlgebra> {
        let f = alg.field();
        let square = tensor(alg, alg)?;
        if words.len() != alg.dim() {
            return Err(Error::InvalidHopf("one generator word per basis element is required".into()));
        }
        let mut delta = Vec::new();
        let mut counit = Vec::new();
        let mut antipode = Vec::new();
        for w in words {
            let mut d = tensor_coords(alg.unit_coords(), alg.unit_coords());
            let mut e = f.one();
            let mut s = alg.unit_coords().to_vec();
            for &g in w {
                d = square.mul_coords(&d, &gen_delta[g]);
                e = &e * &gen_counit[g];
                s = alg.mul_coords(&s, &gen_antipode[g]);
            }
            delta.push(d);
            counit.push(e);
            antipode.push(s);
        }
        Ok(HopfSuperAlgebra { alg: alg.clone(), square, delta, counit, antipode })
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.alg
    }

    /// `A ⊗ A`
    pub fn square(&self) -> &AlgebraRef {
        &self.square
    }

    pub fn field(&self) -> Field {
        self.alg.field()
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn delta_table(&self) -> &[Vector] {
        &self.delta
    }

    pub fn counit_table(&self) -> &[Scalar] {
        &self.counit
    }

    pub fn antipode_table(&self) -> &[Vector] {
        &self.antipode
    }

    pub fn coproduct_coords(&self, x: &[Scalar]) -> Vector {
        let mut out = linalg::zero_vec(self.field(), self.dim() * self.dim());
        for (c, img) in x.iter().zip(&self.delta) {
            linalg::axpy(&mut out, c, img);
        }
        out
    }

    pub fn coproduct(&self, x: &Element) -> Result<Element> {
        if x.algebra().uid() != self.alg.uid() {
            return Err(Error::AlgebraMismatch);
        }
        self.square.element(self.coproduct_coords(x.coords()))
    }

    pub fn counit(&self, x: &[Scalar]) -> Scalar {
        linalg::dot(&self.counit, x, self.field())
    }

    pub fn antipode_coords(&self, x: &[Scalar]) -> Vector {
        let mut out = linalg::zero_vec(self.field(), self.dim());
        for (c, img) in x.iter().zip(&self.antipode) {
            linalg::axpy(&mut out, c, img);
        }
        out
    }

    /// Replaces the antipode, for building deliberately broken structures.
    pub fn with_antipode(&self, antipode: Vec<Vector>) -> Result<HopfSuperAlgebra> {
        HopfSuperAlgebra::new(&self.alg, self.delta.clone(), self.counit.clone(), antipode)
    }
}

fn first_failure(n: usize, labels: &[String], mut ok: impl FnMut(usize) -> bool) -> std::result::Result<(), String> {
    match (0..n).find(|&i| !ok(i)) {
        None => Ok(()),
        Some(i) => Err(format!("fails at {}", labels[i])),
    }
}

/// Exhaustive basis-level verification of the Hopf axioms. The antipode is
/// checked as an algebra morphism, which is what an anti-morphism amounts
/// to for supercommutative algebras.
pub fn check_hopf_axioms(h: &HopfSuperAlgebra) -> Report {
    let a = &h.alg;
    let n = a.dim();
    let f = a.field();
    let labels = a.labels();
    let sq = &h.square;
    let mut r = Report::new();
    r.record(
        "parity",
        first_failure(n, labels, |i| {
            let p = a.parity(i);
            let d_ok = sq.parity_of_coords(&h.delta[i]).is_some_and(|q| q == p || linalg::is_zero_vec(&h.delta[i]));
            let s_ok = a.parity_of_coords(&h.antipode[i]).is_some_and(|q| q == p || linalg::is_zero_vec(&h.antipode[i]));
            let e_ok = p == Parity::Even || h.counit[i].is_zero();
            d_ok && s_ok && e_ok
        }),
    );
    let pair_check = |g: &dyn Fn(usize, usize) -> bool| -> std::result::Result<(), String> {
        for i in 0..n {
            for j in 0..n {
                if !g(i, j) {
                    return Err(format!("fails at ({}, {})", labels[i], labels[j]));
                }
            }
        }
        Ok(())
    };
    r.record(
        "coproduct multiplicative",
        pair_check(&|i, j| h.coproduct_coords(&a.basis_product(i, j)) == sq.mul_coords(&h.delta[i], &h.delta[j]))
            .and_then(|_| {
                if h.coproduct_coords(a.unit_coords()) == tensor_coords(a.unit_coords(), a.unit_coords()) {
                    Ok(())
                } else {
                    Err("coproduct of 1 is not 1⊗1".into())
                }
            }),
    );
    r.record(
        "counit multiplicative",
        pair_check(&|i, j| h.counit(&a.basis_product(i, j)) == &h.counit[i] * &h.counit[j]).and_then(|_| {
            if h.counit(a.unit_coords()).is_one() {
                Ok(())
            } else {
                Err("counit of 1 is not 1".into())
            }
        }),
    );
    r.record(
        "antipode multiplicative",
        pair_check(&|i, j| h.antipode_coords(&a.basis_product(i, j)) == a.mul_coords(&h.antipode[i], &h.antipode[j]))
            .and_then(|_| {
                if h.antipode_coords(a.unit_coords()) == a.unit_coords() {
                    Ok(())
                } else {
                    Err("antipode of 1 is not 1".into())
                }
            }),
    );
    r.record(
        "coassociativity",
        first_failure(n, labels, |b| {
            let mut left = linalg::zero_vec(f, n * n * n);
            let mut right = linalg::zero_vec(f, n * n * n);
            for (ij, c) in h.delta[b].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (i, j) = (ij / n, ij % n);
                for (kl, d) in h.delta[i].iter().enumerate() {
                    if !d.is_zero() {
                        left[kl * n + j] += &(c * d);
                    }
                }
                for (kl, d) in h.delta[j].iter().enumerate() {
                    if !d.is_zero() {
                        right[i * n * n + kl] += &(c * d);
                    }
                }
            }
            left == right
        }),
    );
    r.record(
        "counit law",
        first_failure(n, labels, |b| {
            let mut left = linalg::zero_vec(f, n);
            let mut right = linalg::zero_vec(f, n);
            for (ij, c) in h.delta[b].iter().enumerate() {
                let (i, j) = (ij / n, ij % n);
                left[j] += &(c * &h.counit[i]);
                right[i] += &(c * &h.counit[j]);
            }
            let e = linalg::unit_vec(f, n, b);
            left == e && right == e
        }),
    );
    r.record(
        "antipode law",
        first_failure(n, labels, |b| {
            let mut left = linalg::zero_vec(f, n);
            let mut right = linalg::zero_vec(f, n);
            for (ij, c) in h.delta[b].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (i, j) = (ij / n, ij % n);
                let l = a.mul_coords(&h.antipode[i], &linalg::unit_vec(f, n, j));
                let rr = a.mul_coords(&linalg::unit_vec(f, n, i), &h.antipode[j]);
                linalg::axpy(&mut left, c, &l);
                linalg::axpy(&mut right, c, &rr);
            }
            let expect = linalg::scale(&h.counit[b], a.unit_coords());
            left == expect && right == expect
        }),
    );
    r
}

/// Products of generators in increasing index order, read off a monomial
/// basis of a Grassmann algebra.
fn grassmann_words(alg: &AlgebraRef, names: &[&str]) -> Vec<Vec<usize>> {
    (0..alg.dim())
        .map(|i| {
            let label = alg.label(i);
            if label == "1" {
                return vec![];
            }
            label.split('*').map(|p| names.iter().position(|x| *x == p).expect("generator label")).collect()
        })
        .collect()
}

/// `Λ(V*)` with primitive generators: `Δv = v⊗1 + 1⊗v`, `ε(v) = 0`,
/// `S(v) = -v`.
pub fn grassmann_hopf(field: Field, names: &[&str]) -> Result<HopfSuperAlgebra> {
    let alg = grassmann_named(field, names)?;
    let words = grassmann_words(&alg, names);
    let n = alg.dim();
    let gens: Vec<usize> = names.iter().map(|x| alg.index_of(x).unwrap()).collect();
    let gen_delta: Vec<Vector> = gens
        .iter()
        .map(|&g| {
            let e = linalg::unit_vec(field, n, g);
            linalg::add(&tensor_coords(&e, alg.unit_coords()), &tensor_coords(alg.unit_coords(), &e))
        })
        .collect();
    let gen_counit = vec![field.zero(); gens.len()];
    let gen_antipode: Vec<Vector> = gens.iter().map(|&g| linalg::scale(&field.int(-1), &linalg::unit_vec(field, n, g))).collect();
    HopfSuperAlgebra::from_generator_words(&alg, &words, &gen_delta, &gen_counit, &gen_antipode)
}

/// The trivial Hopf algebra `K`.
pub fn trivial_hopf(field: Field) -> Result<HopfSuperAlgebra> {
    grassmann_hopf(field, &[])
}

/// Functions on `Z/n`: idempotent basis `δ_g`, `Δδ_g = sum_{h+k=g} δ_h⊗δ_k`.
pub fn cyclic_functions(field: Field, order: usize) -> Result<HopfSuperAlgebra> {
    let labels: Vec<String> = (0..order).map(|g| format!("d{g}")).collect();
    let space = SuperVectorSpace::new(labels, vec![Parity::Even; order])?;
    let unit = vec![field.one(); order];
    let alg = SuperAlgebra::new(field, space, unit, |i, j| {
        let mut v = linalg::zero_vec(field, order);
        if i == j {
            v[i] = field.one();
        }
        v
    })?;
    let delta = (0..order)
        .map(|g| {
            let mut v = linalg::zero_vec(field, order * order);
            for h in 0..order {
                v[h * order + (g + order - h) % order] = field.one();
            }
            v
        })
        .collect();
    let counit = (0..order).map(|g| if g == 0 { field.one() } else { field.zero() }).collect();
    let antipode = (0..order).map(|g| linalg::unit_vec(field, order, (order - g) % order)).collect();
    HopfSuperAlgebra::new(&alg, delta, counit, antipode)
}

/// The group algebra `K[Z/n]` with group-like basis `g^k`.
pub fn cyclic_group_algebra(field: Field, order: usize) -> Result<HopfSuperAlgebra> {
    let labels: Vec<String> = (0..order).map(|k| if k == 0 { "1".to_string() } else { format!("g^{k}") }).collect();
    let space = SuperVectorSpace::new(labels, vec![Parity::Even; order])?;
    let alg = SuperAlgebra::new(field, space, linalg::unit_vec(field, order, 0), |i, j| {
        linalg::unit_vec(field, order, (i + j) % order)
    })?;
    let delta = (0..order).map(|k| linalg::unit_vec(field, order * order, k * order + k)).collect();
    let counit = vec![field.one(); order];
    let antipode = (0..order).map(|k| linalg::unit_vec(field, order, (order - k) % order)).collect();
    HopfSuperAlgebra::new(&alg, delta, counit, antipode)
}

/// `H ⊗ K` with `Δ(h⊗k) = sum (-1)^{|h2||k1|} (h1⊗k1)⊗(h2⊗k2)`.
pub fn tensor_hopf(h: &HopfSuperAlgebra, k: &HopfSuperAlgebra) -> Result<HopfSuperAlgebra> {
    let alg = tensor(&h.alg, &k.alg)?;
    let f = alg.field();
    let (nh, nk) = (h.dim(), k.dim());
    let n = nh * nk;
    let mut delta = Vec::new();
    let mut counit = Vec::new();
    let mut antipode = Vec::new();
    for a in 0..nh {
        for b in 0..nk {
            let mut d = linalg::zero_vec(f, n * n);
            for (ij, c) in h.delta[a].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (h1, h2) = (ij / nh, ij % nh);
                for (kl, e) in k.delta[b].iter().enumerate() {
                    if e.is_zero() {
                        continue;
                    }
                    let (k1, k2) = (kl / nk, kl % nk);
                    let s = koszul_sign(f, h.alg.parity(h2), k.alg.parity(k1));
                    d[(h1 * nk + k1) * n + h2 * nk + k2] += &(&(c * e) * &s);
                }
            }
            delta.push(d);
            counit.push(&h.counit[a] * &k.counit[b]);
            antipode.push(tensor_coords(&h.antipode[a], &k.antipode[b]));
        }
    }
    HopfSuperAlgebra::new(&alg, delta, counit, antipode)
}

/// Elements of `H ⊗ R` as coefficient lists `x = sum_i h_i ⊗ x_i`.
pub fn coefficients_over(x: &Element, h: &HopfSuperAlgebra) -> Result<Vec<Element>> {
    let t = x.algebra();
    let (a, r) = t.factors().ok_or(Error::AlgebraMismatch)?;
    if a.uid() != h.alg.uid() {
        return Err(Error::AlgebraMismatch);
    }
    let nr = r.dim();
    (0..h.dim()).map(|i| r.element(x.coords()[i * nr..(i + 1) * nr].to_vec())).collect()
}

/// `Δx = x⊗x` and `ε(x) = 1` for `x ∈ H ⊗ R`, with `R` read off the tensor
/// factors of `x`'s algebra.
pub fn is_group_like(h: &HopfSuperAlgebra, x: &Element) -> Result<bool> {
    let coeffs = coefficients_over(x, h)?;
    let r = coeffs.first().map(|c| c.algebra().clone()).ok_or(Error::AlgebraMismatch)?;
    let n = h.dim();
    let mut eps = r.zero();
    for (i, c) in coeffs.iter().enumerate() {
        eps = &eps + &c.scale(&h.counit[i]);
    }
    if eps != r.one() {
        return Ok(false);
    }
    let mut lhs = vec![r.zero(); n * n];
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (kl, d) in h.delta[i].iter().enumerate() {
            if !d.is_zero() {
                lhs[kl] = &lhs[kl] + &c.scale(d);
            }
        }
    }
    for i in 0..n {
        // (h_i⊗1⊗x_i)(1⊗h_j⊗x_j) = (-1)^{|x_i||h_j|} h_i⊗h_j⊗x_i x_j
        for j in 0..n {
            let xi = &coeffs[i];
            let twisted = if h.alg.parity(j).is_odd() { &xi.even_part() - &xi.odd_part() } else { xi.clone() };
            let rhs = &twisted * &coeffs[j];
            if lhs[i * n + j] != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Primitive elements `Δx = x⊗1 + 1⊗x`, as an echelon subspace.
pub fn primitives(h: &HopfSuperAlgebra) -> Subspace {
    let n = h.dim();
    let f = h.field();
    let unit = h.alg.unit_coords();
    let cols: Vec<Vector> = (0..n)
        .map(|i| {
            let e = linalg::unit_vec(f, n, i);
            linalg::sub(&linalg::sub(&h.delta[i], &tensor_coords(&e, unit)), &tensor_coords(unit, &e))
        })
        .collect();
    let m = linalg::transpose(&cols, n * n);
    Subspace::span(f, n, linalg::nullspace(&m, n, f))
}

/// A right coaction `τ: A -> A ⊗ D` that is an algebra morphism.
#[derive(Clone, Debug)]
pub struct CoidealCoaction {
    pub coalgebra: HopfSuperAlgebra,
    pub carrier: AlgebraRef,
    pub target: AlgebraRef,
    tau: Vec<Vector>,
}

impl CoidealCoaction {
    pub fn new(coalgebra: &HopfSuperAlgebra, carrier: &AlgebraRef, tau: Vec<Vector>) -> Result<CoidealCoaction> {
        let target = tensor(carrier, &coalgebra.alg)?;
        if tau.len() != carrier.dim() || tau.iter().any(|v| v.len() != target.dim()) {
            return Err(Error::InvalidHopf("coaction table has the wrong shape".into()));
        }
        let c = CoidealCoaction { coalgebra: coalgebra.clone(), carrier: carrier.clone(), target, tau };
        let report = c.check();
        if let Some(bad) = report.failures().next() {
            return Err(Error::InvalidHopf(format!("{}: {}", bad.name, bad.witness.clone().unwrap_or_default())));
        }
        Ok(c)
    }

    /// `D` coacting on itself by `Δ`.
    pub fn regular(d: &HopfSuperAlgebra) -> Result<CoidealCoaction> {
        CoidealCoaction::new(d, &d.alg, d.delta.clone())
    }

    /// `τ(a) = a ⊗ 1`.
    pub fn trivial(carrier: &AlgebraRef, d: &HopfSuperAlgebra) -> Result<CoidealCoaction> {
        let n = carrier.dim();
        let tau = (0..n).map(|i| tensor_coords(&linalg::unit_vec(carrier.field(), n, i), d.alg.unit_coords())).collect();
        CoidealCoaction::new(d, carrier, tau)
    }

    /// `B ⊗ D` with `D` coacting regularly on the right factor.
    pub fn on_right_factor(b: &AlgebraRef, d: &HopfSuperAlgebra) -> Result<CoidealCoaction> {
        let carrier = tensor(b, &d.alg)?;
        let nd = d.dim();
        let f = b.field();
        let nt = carrier.dim() * nd;
        let tau = (0..carrier.dim())
            .map(|k| {
                let (i, j) = (k / nd, k % nd);
                let mut v = linalg::zero_vec(f, nt);
                for (ab, c) in d.delta[j].iter().enumerate() {
                    if !c.is_zero() {
                        v[(i * nd + ab / nd) * nd + ab % nd] = c.clone();
                    }
                }
                v
            })
            .collect();
        CoidealCoaction::new(d, &carrier, tau)
    }

    pub fn tau_coords(&self, x: &[Scalar]) -> Vector {
        let mut out = linalg::zero_vec(self.carrier.field(), self.target.dim());
        for (c, img) in x.iter().zip(&self.tau) {
            linalg::axpy(&mut out, c, img);
        }
        out
    }

    pub fn check(&self) -> Report {
        let a = &self.carrier;
        let d = &self.coalgebra;
        let (na, nd) = (a.dim(), d.dim());
        let f = a.field();
        let labels = a.labels();
        let mut r = Report::new();
        r.record(
            "coaction multiplicative",
            (|| {
                for i in 0..na {
                    for j in 0..na {
                        if self.tau_coords(&a.basis_product(i, j)) != self.target.mul_coords(&self.tau[i], &self.tau[j]) {
                            return Err(format!("fails at ({}, {})", labels[i], labels[j]));
                        }
                    }
                }
                if self.tau_coords(a.unit_coords()) != self.target.unit_coords() {
                    return Err("τ(1) is not 1⊗1".into());
                }
                Ok(())
            })(),
        );
        r.record(
            "coaction coassociative",
            first_failure(na, labels, |b| {
                let mut left = linalg::zero_vec(f, na * nd * nd);
                let mut right = linalg::zero_vec(f, na * nd * nd);
                for (ij, c) in self.tau[b].iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let (i, j) = (ij / nd, ij % nd);
                    for (kl, e) in self.tau[i].iter().enumerate() {
                        if !e.is_zero() {
                            left[kl * nd + j] += &(c * e);
                        }
                    }
                    for (kl, e) in d.delta[j].iter().enumerate() {
                        if !e.is_zero() {
                            right[i * nd * nd + kl] += &(c * e);
                        }
                    }
                }
                left == right
            }),
        );
        r.record(
            "coaction counit",
            first_failure(na, labels, |b| {
                let mut v = linalg::zero_vec(f, na);
                for (ij, c) in self.tau[b].iter().enumerate() {
                    v[ij / nd] += &(c * &d.counit[ij % nd]);
                }
                v == linalg::unit_vec(f, na, b)
            }),
        );
        r
    }
}

/// `A^{co D} = {a : τ(a) = a ⊗ 1}`, checked to be a unital subalgebra.
pub fn coinvariants(c: &CoidealCoaction) -> Result<Subspace> {
    let a = &c.carrier;
    let n = a.dim();
    let f = a.field();
    let unit_d = c.coalgebra.alg.unit_coords();
    let cols: Vec<Vector> = (0..n)
        .map(|i| linalg::sub(&c.tau[i], &tensor_coords(&linalg::unit_vec(f, n, i), unit_d)))
        .collect();
    let m = linalg::transpose(&cols, c.target.dim());
    let sub = Subspace::span(f, n, linalg::nullspace(&m, n, f));
    if !sub.contains(a.unit_coords()) {
        return Err(Error::InvalidHopf("1 is not coinvariant".into()));
    }
    for x in sub.basis() {
        for y in sub.basis() {
            if !sub.contains(&a.mul_coords(x, y)) {
                return Err(Error::InvalidHopf("coinvariants are not closed under products".into()));
            }
        }
    }
    Ok(sub)
}

/// Whether `α(a⊗a') = (a⊗1) τ(a')` maps `A⊗A` onto `A⊗D`.
pub fn check_alpha_surjective(c: &CoidealCoaction) -> bool {
    let a = &c.carrier;
    let n = a.dim();
    let f = a.field();
    let unit_d = c.coalgebra.alg.unit_coords();
    let mut images = Vec::with_capacity(n * n);
    for i in 0..n {
        let left = tensor_coords(&linalg::unit_vec(f, n, i), unit_d);
        for j in 0..n {
            images.push(c.target.mul_coords(&left, &c.tau[j]));
        }
    }
    linalg::rank(&images, c.target.dim()) == c.target.dim()
}

/// A bilinear form `⟨φ, a⟩` between two Hopf superalgebras, `form[φ][a]`.
#[derive(Clone, Debug)]
pub struct HopfPairing {
    pub left: HopfSuperAlgebra,
    pub right: HopfSuperAlgebra,
    pub form: Vec<Vector>,
}

impl HopfPairing {
    pub fn pair(&self, phi: &[Scalar], a: &[Scalar]) -> Scalar {
        let f = self.left.field();
        let mut acc = f.zero();
        for (i, x) in phi.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            acc += &(x * &linalg::dot(&self.form[i], a, f));
        }
        acc
    }

    /// `⟨φ⊗ψ, a⊗b⟩ = (-1)^{|ψ||a|} ⟨φ,a⟩⟨ψ,b⟩` on the coordinates of
    /// tensors.
    fn pair_tensor(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let (l, r) = (&self.left, &self.right);
        let (nl, nr) = (l.dim(), r.dim());
        let f = l.field();
        let mut acc = f.zero();
        for (ij, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (i, j) = (ij / nl, ij % nl);
            for (ab, d) in y.iter().enumerate() {
                if d.is_zero() {
                    continue;
                }
                let (a, b) = (ab / nr, ab % nr);
                let s = koszul_sign(f, l.alg.parity(j), r.alg.parity(a));
                acc += &(&(&(c * d) * &s) * &(&self.form[i][a] * &self.form[j][b]));
            }
        }
        acc
    }

    pub fn check(&self) -> Report {
        let (l, r) = (&self.left, &self.right);
        let (nl, nr) = (l.dim(), r.dim());
        let f = l.field();
        let mut rep = Report::new();
        let prod = (|| {
            for i in 0..nl {
                for j in 0..nl {
                    let phipsi = l.alg.basis_product(i, j);
                    for a in 0..nr {
                        let lhs = self.pair(&phipsi, &linalg::unit_vec(f, nr, a));
                        let rhs = self.pair_tensor(&tensor_coords(&linalg::unit_vec(f, nl, i), &linalg::unit_vec(f, nl, j)), &r.delta[a]);
                        if lhs != rhs {
                            return Err(format!("({}, {}) against {}", l.alg.label(i), l.alg.label(j), r.alg.label(a)));
                        }
                    }
                }
            }
            Ok(())
        })();
        rep.record("product dual to coproduct", prod);
        let coprod = (|| {
            for i in 0..nl {
                for a in 0..nr {
                    for b in 0..nr {
                        let lhs = self.pair_tensor(&l.delta[i], &tensor_coords(&linalg::unit_vec(f, nr, a), &linalg::unit_vec(f, nr, b)));
                        let rhs = self.pair(&linalg::unit_vec(f, nl, i), &r.alg.basis_product(a, b));
                        if lhs != rhs {
                            return Err(format!("{} against ({}, {})", l.alg.label(i), r.alg.label(a), r.alg.label(b)));
                        }
                    }
                }
            }
            Ok(())
        })();
        rep.record("coproduct dual to product", coprod);
        let units = (|| {
            for a in 0..nr {
                if self.pair(l.alg.unit_coords(), &linalg::unit_vec(f, nr, a)) != r.counit[a] {
                    return Err(format!("unit against {}", r.alg.label(a)));
                }
            }
            for i in 0..nl {
                if self.pair(&linalg::unit_vec(f, nl, i), r.alg.unit_coords()) != l.counit[i] {
                    return Err(format!("{} against unit", l.alg.label(i)));
                }
            }
            Ok(())
        })();
        rep.record("unit and counit", units);
        let anti = (|| {
            for i in 0..nl {
                for a in 0..nr {
                    let lhs = self.pair(&l.antipode[i], &linalg::unit_vec(f, nr, a));
                    let rhs = self.pair(&linalg::unit_vec(f, nl, i), &r.antipode[a]);
                    if lhs != rhs {
                        return Err(format!("{} against {}", l.alg.label(i), r.alg.label(a)));
                    }
                }
            }
            Ok(())
        })();
        rep.record("antipodes adjoint", anti);
        rep
    }
}
