//! Truncated hyperalgebras: duals of finite local superalgebras carrying a
//! coproduct that is exact up to a stated level, with the convolution
//! product, both standard filtrations and the canonical form over the odd
//! exterior factor.

use std::collections::BTreeMap;

use crate::algebra::{odd_ideal, tensor_coords, truncated_poly, AlgebraRef, MonomialBasis, Parity, SuperIdeal};
use crate::error::{Error, Result};
use crate::filtration::{graded_companion, FilteredSuperAlgebra, GradedSuperAlgebra};
use crate::hopf::{grassmann_hopf, tensor_hopf, trivial_hopf, HopfSuperAlgebra};
use crate::lie::LieSuperAlgebra;
use crate::linalg::{self, Subspace, Vector};
use crate::report::Report;
use crate::scalar::{Field, Scalar};

/// A superalgebra with its unique maximal super-ideal, `A/𝔪 = K`.
#[derive(Clone, Debug)]
pub struct LocalSuperAlgebra {
    pub algebra: AlgebraRef,
    pub maximal: SuperIdeal,
    /// least `n` with `𝔪^n = 0`
    pub nilpotency: usize,
}

impl LocalSuperAlgebra {
    pub fn new(alg: &AlgebraRef, maximal: SuperIdeal) -> Result<LocalSuperAlgebra> {
        if maximal.algebra().uid() != alg.uid() {
            return Err(Error::AlgebraMismatch);
        }
        if maximal.dim() + 1 != alg.dim() || maximal.subspace().contains(alg.unit_coords()) {
            return Err(Error::InvalidAlgebra("maximal ideal must have codimension one, complemented by the unit".into()));
        }
        let nilpotency = maximal.nilpotency_index().ok_or(Error::NotNilpotent(alg.dim()))?;
        Ok(LocalSuperAlgebra { algebra: alg.clone(), maximal, nilpotency })
    }
}

/// Each basis element `i` equals `e_α v_{i_1} ... v_{i_s}` with `e_α` the
/// basis element `factors[i].0` (an even element free of odd generators)
/// and the odd generators `odd_generators[k]` for the bits `k` of
/// `factors[i].1`, multiplied in increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalBasis {
    pub factors: Vec<(usize, u32)>,
    pub odd_generators: Vec<usize>,
}

impl CanonicalBasis {
    pub fn new(alg: &AlgebraRef, factors: Vec<(usize, u32)>, odd_generators: Vec<usize>) -> Result<CanonicalBasis> {
        let f = alg.field();
        let n = alg.dim();
        if factors.len() != n {
            return Err(Error::Dimension("one factorization per basis element".into()));
        }
        for (i, &(e, mask)) in factors.iter().enumerate() {
            if factors.get(e) != Some(&(e, 0)) || alg.parity(e).is_odd() {
                return Err(Error::Precondition(format!("{} is not an even factor", alg.label(e))));
            }
            let mut x = linalg::unit_vec(f, n, e);
            for (k, &g) in odd_generators.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    x = alg.mul_coords(&x, &linalg::unit_vec(f, n, g));
                }
            }
            if x != linalg::unit_vec(f, n, i) {
                return Err(Error::Precondition(format!("basis element {} is not in factored form", alg.label(i))));
            }
        }
        Ok(CanonicalBasis { factors, odd_generators })
    }

    pub fn from_monomials(alg: &AlgebraRef, m: &MonomialBasis) -> Result<CanonicalBasis> {
        let zero = vec![0; m.even_vars.len()];
        let factors = m
            .monomials
            .iter()
            .map(|(a, _)| m.index_of(a, 0).map(|e| (e, 0)))
            .zip(&m.monomials)
            .map(|(e, (_, s))| e.map(|(e, _)| (e, *s)))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Precondition("even part of a monomial is missing".into()))?;
        let odd = (0..m.odd_vars.len())
            .map(|k| m.index_of(&zero, 1 << k))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Precondition("odd generator is truncated away".into()))?;
        CanonicalBasis::new(alg, factors, odd)
    }

    /// The factored basis of `A ⊗ B`.
    pub fn tensor(target: &AlgebraRef, a: &CanonicalBasis, b: &CanonicalBasis) -> Result<CanonicalBasis> {
        let nb = b.factors.len();
        let shift = a.odd_generators.len();
        let mut factors = Vec::new();
        for &(ea, sa) in &a.factors {
            for &(eb, sb) in &b.factors {
                factors.push((ea * nb + eb, sa | sb << shift));
            }
        }
        let b_unit = b.factors.iter().position(|&(e, s)| s == 0 && target.unit_coords()[a.factors[0].0 * nb + e].is_one());
        let a_unit = a.factors.iter().position(|&(e, s)| s == 0 && target.unit_coords()[e * nb + b.factors[0].0].is_one());
        let (Some(bu), Some(au)) = (b_unit, a_unit) else {
            return Err(Error::Precondition("factors must list the unit".into()));
        };
        let mut odd: Vec<usize> = a.odd_generators.iter().map(|&g| g * nb + bu).collect();
        odd.extend(b.odd_generators.iter().map(|&g| au * nb + g));
        CanonicalBasis::new(target, factors, odd)
    }
}

/// A finite local superalgebra `O/J` carrying `Δ`, `ε`, `S` induced from a
/// Hopf superalgebra `O`. Convolution of functionals of levels `k` and `l`
/// is exact when `k + l <= limit`; `limit = None` means `J` is a Hopf ideal.
#[derive(Clone, Debug)]
pub struct TruncatedHopf {
    hopf: HopfSuperAlgebra,
    local: LocalSuperAlgebra,
    odd: SuperIdeal,
    limit: Option<usize>,
    canonical: Option<CanonicalBasis>,
    m_levels: Vec<Subspace>,
    i_levels: Vec<Subspace>,
}

impl TruncatedHopf {
    pub fn new(hopf: HopfSuperAlgebra, limit: Option<usize>, canonical: Option<CanonicalBasis>) -> Result<TruncatedHopf> {
        let alg = hopf.algebra().clone();
        let f = alg.field();
        let n = alg.dim();
        let counit_row = vec![hopf.counit_table().to_vec()];
        let kernel = linalg::nullspace(&counit_row, n, f);
        let maximal = SuperIdeal::from_vectors(&alg, kernel)
            .map_err(|_| Error::InvalidHopf("kernel of the counit is not a super-ideal".into()))?;
        let local = LocalSuperAlgebra::new(&alg, maximal)?;
        let m = local.maximal.subspace();
        let mut ideal_sq = Vec::new();
        for x in m.basis() {
            ideal_sq.push(tensor_coords(x, alg.unit_coords()));
            for i in 0..n {
                ideal_sq.push(tensor_coords(x, &linalg::unit_vec(f, n, i)));
                ideal_sq.push(tensor_coords(&linalg::unit_vec(f, n, i), x));
            }
        }
        let target = Subspace::span(f, n * n, ideal_sq);
        for x in m.basis() {
            if !target.contains(&hopf.coproduct_coords(x)) || !m.contains(&hopf.antipode_coords(x)) {
                return Err(Error::InvalidHopf("Hopf structure incompatible with the maximal ideal".into()));
            }
        }
        if let Some(c) = &canonical {
            if c.factors.len() != n {
                return Err(Error::Dimension("canonical basis has the wrong size".into()));
            }
        }
        let odd = odd_ideal(&alg)?;
        let levels = |ideal: &SuperIdeal| -> Vec<Subspace> {
            let mut out = Vec::new();
            let mut k = 1;
            loop {
                let p = ideal.power(k);
                out.push(p.subspace().annihilator());
                if p.is_zero() {
                    break;
                }
                k += 1;
            }
            out
        };
        let m_levels = levels(&local.maximal);
        let i_levels = levels(&odd);
        Ok(TruncatedHopf { hopf, local, odd, limit, canonical, m_levels, i_levels })
    }

    pub fn hopf(&self) -> &HopfSuperAlgebra {
        &self.hopf
    }

    pub fn algebra(&self) -> &AlgebraRef {
        self.hopf.algebra()
    }

    pub fn local(&self) -> &LocalSuperAlgebra {
        &self.local
    }

    pub fn odd_ideal(&self) -> &SuperIdeal {
        &self.odd
    }

    pub fn field(&self) -> Field {
        self.hopf.field()
    }

    pub fn dim(&self) -> usize {
        self.hopf.dim()
    }

    pub fn limit(&self) -> Option<usize> {
        self.limit
    }

    pub fn canonical(&self) -> Option<&CanonicalBasis> {
        self.canonical.as_ref()
    }

    /// Largest meaningful `𝔪`-level; `hyp_k` is everything from here on.
    pub fn top_level(&self) -> usize {
        self.m_levels.len() - 1
    }

    /// Largest meaningful odd level.
    pub fn top_odd_level(&self) -> usize {
        self.i_levels.len() - 1
    }

    /// `hyp_k = {φ : φ(𝔪^{k+1}) = 0}`
    pub fn level(&self, k: usize) -> &Subspace {
        &self.m_levels[k.min(self.top_level())]
    }

    /// `hyp^{(k)} = {φ : φ(I^{k+1}) = 0}` with `I` the odd ideal.
    pub fn odd_level(&self, k: usize) -> &Subspace {
        &self.i_levels[k.min(self.top_odd_level())]
    }

    pub fn level_of(&self, phi: &[Scalar]) -> usize {
        (0..=self.top_level()).find(|&k| self.level(k).contains(phi)).expect("top level is the whole dual")
    }

    pub fn parity_of(&self, phi: &[Scalar]) -> Option<Parity> {
        self.algebra().parity_of_coords(phi)
    }

    /// `ε*`, the unit of the hyperalgebra.
    pub fn unit(&self) -> Vector {
        self.hopf.counit_table().to_vec()
    }

    /// `(φψ)(a) = (-1)^{|ψ||a_(0)|} φ(a_(0)) ψ(a_(1))` computed on the basis
    /// of the truncation, without checking levels.
    pub fn convolve_truncated(&self, phi: &[Scalar], psi: &[Scalar]) -> Vector {
        let alg = self.algebra();
        let f = self.field();
        let n = self.dim();
        let psi_odd = alg.part_coords(psi, Parity::Odd);
        let psi_even = alg.part_coords(psi, Parity::Even);
        let mut out = linalg::zero_vec(f, n);
        for (m, d) in self.hopf.delta_table().iter().enumerate() {
            let mut acc = f.zero();
            for (ij, c) in d.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (i, j) = (ij / n, ij % n);
                if phi[i].is_zero() {
                    continue;
                }
                let psi_j = if alg.parity(i).is_odd() { &psi_even[j] - &psi_odd[j] } else { psi[j].clone() };
                acc += &(&(c * &phi[i]) * &psi_j);
            }
            out[m] = acc;
        }
        out
    }

    /// Convolution, refusing products whose level exceeds the truncation.
    pub fn convolve(&self, phi: &[Scalar], psi: &[Scalar]) -> Result<Vector> {
        let needed = self.level_of(phi) + self.level_of(psi);
        if let Some(available) = self.limit {
            if needed > available {
                return Err(Error::TruncationExceeded { needed, available });
            }
        }
        Ok(self.convolve_truncated(phi, psi))
    }

    /// `Δ*(φ)` in coordinates of `A* ⊗ A*`, from
    /// `φ(ab) = (-1)^{|φ_(1)||a|} φ_(0)(a) φ_(1)(b)`.
    pub fn dual_coproduct(&self, phi: &[Scalar]) -> Vector {
        let alg = self.algebra();
        let f = self.field();
        let n = self.dim();
        let mut out = linalg::zero_vec(f, n * n);
        for i in 0..n {
            for j in 0..n {
                let v = linalg::dot(phi, &alg.basis_product(i, j), f);
                if v.is_zero() {
                    continue;
                }
                out[i * n + j] = if alg.parity(i).koszul(alg.parity(j)) { -v } else { v };
            }
        }
        out
    }

    /// `(S*φ)(a) = φ(S(a))`
    pub fn dual_antipode(&self, phi: &[Scalar]) -> Vector {
        let f = self.field();
        self.hopf.antipode_table().iter().map(|s| linalg::dot(phi, s, f)).collect()
    }

    /// `[φ, ψ] = φψ - (-1)^{|φ||ψ|} ψφ` for homogeneous functionals.
    pub fn bracket(&self, phi: &[Scalar], psi: &[Scalar]) -> Result<Vector> {
        let (p, q) = (
            self.parity_of(phi).ok_or_else(|| Error::Parity("bracket needs homogeneous functionals".into()))?,
            self.parity_of(psi).ok_or_else(|| Error::Parity("bracket needs homogeneous functionals".into()))?,
        );
        let a = self.convolve(phi, psi)?;
        let b = self.convolve(psi, phi)?;
        Ok(if p.koszul(q) { linalg::add(&a, &b) } else { linalg::sub(&a, &b) })
    }

    /// `hyp_1^+ = {φ ∈ hyp_1 : φ(1) = 0}` with the commutator bracket.
    pub fn primitive_lie(&self) -> Result<LieSuperAlgebra> {
        let f = self.field();
        let n = self.dim();
        let alg = self.algebra();
        let plus = self.level(1).intersection(&Subspace::span(f, n, vec![alg.unit_coords().to_vec()]).annihilator());
        // a homogeneous basis: split each basis vector by parity
        let mut basis = Vec::new();
        let mut parities = Vec::new();
        for p in [Parity::Even, Parity::Odd] {
            let part = Subspace::span(f, n, plus.basis().iter().map(|v| alg.part_coords(v, p)));
            for v in part.basis() {
                basis.push(v.clone());
                parities.push(p);
            }
        }
        let space = Subspace::span(f, n, basis.clone());
        let labels = (0..basis.len()).map(|i| format!("p{}", i + 1)).collect();
        let sv = crate::algebra::SuperVectorSpace::new(labels, parities)?;
        let solve = |v: &Vector| -> Option<Vector> {
            if !space.contains(v) {
                return None;
            }
            let rows = linalg::transpose(&basis, n);
            linalg::solve(&rows, v, basis.len(), f)
        };
        let mut table = vec![vec![Vec::new(); basis.len()]; basis.len()];
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                let br = self.bracket(&basis[i], &basis[j])?;
                table[i][j] = solve(&br).ok_or_else(|| Error::InvalidLie("bracket leaves hyp_1^+".into()))?;
            }
        }
        LieSuperAlgebra::new(f, sv, |i, j| table[i][j].clone())
    }
}

/// `hyp_k`, the dual of `O/𝔪^{k+1}`, inside a truncation.
#[derive(Clone, Debug)]
pub struct HypTruncation {
    pub level: usize,
    pub space: Subspace,
}

pub fn truncated_hyp(o: &TruncatedHopf, k: usize) -> Result<HypTruncation> {
    if let Some(limit) = o.limit {
        if k > limit && k < o.top_level() {
            return Err(Error::TruncationExceeded { needed: k, available: limit });
        }
    }
    Ok(HypTruncation { level: k, space: o.level(k).clone() })
}

fn tensor_span(f: Field, n: usize, pieces: &[(&Subspace, &Subspace)]) -> Subspace {
    let mut vecs = Vec::new();
    for (a, b) in pieces {
        for x in a.basis() {
            for y in b.basis() {
                vecs.push(tensor_coords(x, y));
            }
        }
    }
    Subspace::span(f, n * n, vecs)
}

fn check_filtration(h: &TruncatedHopf, name: &str, levels: &dyn Fn(usize) -> Subspace, top: usize, r: &mut Report) {
    let f = h.field();
    let n = h.dim();
    let products = (|| {
        for k in 0..=top {
            for l in 0..=top {
                let target = levels(k + l);
                for m in 0..=h.top_level() {
                    for m2 in 0..=h.top_level() {
                        if h.limit.is_some_and(|lim| m + m2 > lim) {
                            continue;
                        }
                        let a = levels(k).intersection(h.level(m));
                        let b = levels(l).intersection(h.level(m2));
                        for x in a.basis() {
                            for y in b.basis() {
                                let p = h.convolve(x, y).map_err(|e| e.to_string())?;
                                if !target.contains(&p) {
                                    return Err(format!("levels ({k}, {l})"));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    })();
    r.record(&format!("{name} products"), products);
    let coproducts = (|| {
        for k in 0..=top {
            let lk = levels(k);
            let parts: Vec<(Subspace, Subspace)> = (0..=k).map(|s| (levels(s), levels(k - s))).collect();
            let refs: Vec<(&Subspace, &Subspace)> = parts.iter().map(|(a, b)| (a, b)).collect();
            let target = tensor_span(f, n, &refs);
            for x in lk.basis() {
                if !target.contains(&h.dual_coproduct(x)) {
                    return Err(format!("level {k}"));
                }
            }
        }
        Ok(())
    })();
    r.record(&format!("{name} coproduct"), coproducts);
    let antipode = (|| {
        for k in 0..=top {
            let lk = levels(k);
            for x in lk.basis() {
                if !lk.contains(&h.dual_antipode(x)) {
                    return Err(format!("level {k}"));
                }
            }
        }
        Ok(())
    })();
    r.record(&format!("{name} antipode"), antipode);
}

/// Products, coproducts and antipode respect both `hyp_k` (by powers of
/// `𝔪`) and `hyp^{(k)}` (by powers of the odd ideal), on all basis pairs
/// within the truncation.
pub fn check_hyp_filtration(h: &TruncatedHopf) -> Report {
    let mut r = Report::new();
    r.record("unit in level 0", if h.level(0).contains(&h.unit()) { Ok(()) } else { Err("ε*".into()) });
    check_filtration(h, "hyp_k", &|k| h.level(k).clone(), h.top_level(), &mut r);
    check_filtration(h, "hyp^(k)", &|k| h.odd_level(k).clone(), h.top_odd_level(), &mut r);
    r
}

/// `γ_{i_1} ... γ_{i_s}` for the odd generators in `mask`, with `ψ`
/// multiplied on the left.
fn times_gammas(h: &TruncatedHopf, c: &CanonicalBasis, psi: Vector, mask: u32) -> Vector {
    let f = h.field();
    let n = h.dim();
    let mut acc = psi;
    for (k, &g) in c.odd_generators.iter().enumerate() {
        if mask >> k & 1 == 1 {
            acc = h.convolve_truncated(&acc, &linalg::unit_vec(f, n, g));
        }
    }
    acc
}

/// `φ = sum_S φ_S γ_S` with each `φ_S` in the even sub-hyperalgebra,
/// keyed by the bitmask `S` over the odd generators.
pub fn canonical_decompose(h: &TruncatedHopf, phi: &[Scalar]) -> Result<BTreeMap<u32, Vector>> {
    let c = h.canonical.as_ref().ok_or_else(|| Error::Precondition("source not in factored form".into()))?;
    let f = h.field();
    let n = h.dim();
    if phi.len() != n {
        return Err(Error::Dimension(format!("functional needs {n} coordinates")));
    }
    // columns: ψ_α γ_S for every basis element e_α v_S
    let cols: Vec<Vector> = c.factors.iter().map(|&(e, s)| times_gammas(h, c, linalg::unit_vec(f, n, e), s)).collect();
    let rows = linalg::transpose(&cols, n);
    let sol = linalg::solve(&rows, phi, n, f).ok_or_else(|| Error::Precondition("products ψγ do not span the dual".into()))?;
    if linalg::rank(&rows, n) != n {
        return Err(Error::Precondition("products ψγ are not a basis of the dual".into()));
    }
    let mut out: BTreeMap<u32, Vector> = BTreeMap::new();
    for (i, x) in sol.into_iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let (e, s) = c.factors[i];
        let entry = out.entry(s).or_insert_with(|| linalg::zero_vec(f, n));
        entry[e] += &x;
    }
    Ok(out)
}

pub fn canonical_recompose(h: &TruncatedHopf, table: &BTreeMap<u32, Vector>) -> Result<Vector> {
    let c = h.canonical.as_ref().ok_or_else(|| Error::Precondition("source not in factored form".into()))?;
    let even = h.odd_level(0);
    let mut out = linalg::zero_vec(h.field(), h.dim());
    for (&s, psi) in table {
        if !even.contains(psi) {
            return Err(Error::Precondition("coefficient is not in the even sub-hyperalgebra".into()));
        }
        out = linalg::add(&out, &times_gammas(h, c, psi.clone(), s));
    }
    Ok(out)
}

/// `gr` of the source for the odd-adic filtration, with the induced
/// Hopf structure, plus the adapted basis `r_i` of the source.
pub struct GradedSource {
    pub graded: GradedSuperAlgebra,
    pub hopf: TruncatedHopf,
    /// inverse of the matrix whose columns are the representatives
    pub dual_basis: Vec<Vector>,
}

pub fn graded_source(h: &TruncatedHopf) -> Result<GradedSource> {
    let alg = h.algebra();
    let f = h.field();
    let n = h.dim();
    let filtered = FilteredSuperAlgebra::adic(alg, &h.odd)?;
    let graded = graded_companion(&filtered)?;
    let reps: Vec<Vector> = (0..n).map(|i| graded.representative(i).clone()).collect();
    let p_rows = linalg::transpose(&reps, n);
    let dual_basis = linalg::inverse(&p_rows, f).ok_or_else(|| Error::InvalidFiltration("representatives are not a basis".into()))?;
    let deg = |i: usize| graded.degree(i);
    // x in A ⊗ A, re-expressed over representatives
    let adapted2 = |x: &[Scalar]| -> Vector {
        let mut out = linalg::zero_vec(f, n * n);
        for (ab, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (a, b) = (ab / n, ab % n);
            for j in 0..n {
                if dual_basis[j][a].is_zero() {
                    continue;
                }
                for k in 0..n {
                    if !dual_basis[k][b].is_zero() {
                        out[j * n + k] += &(&(c * &dual_basis[j][a]) * &dual_basis[k][b]);
                    }
                }
            }
        }
        out
    };
    let mut delta = Vec::new();
    let mut counit = Vec::new();
    let mut antipode = Vec::new();
    for i in 0..n {
        let d = adapted2(&h.hopf.coproduct_coords(&reps[i]));
        delta.push(d.into_iter().enumerate().map(|(jk, c)| if deg(jk / n) + deg(jk % n) == deg(i) { c } else { f.zero() }).collect());
        counit.push(if deg(i) == 0 { h.hopf.counit(&reps[i]) } else { f.zero() });
        let s = linalg::mat_vec(&dual_basis, &h.hopf.antipode_coords(&reps[i]), f);
        antipode.push(s.into_iter().enumerate().map(|(j, c)| if deg(j) == deg(i) { c } else { f.zero() }).collect());
    }
    let hopf = HopfSuperAlgebra::new(graded.algebra(), delta, counit, antipode)?;
    let gr_hopf = TruncatedHopf::new(hopf, h.limit, None)?;
    Ok(GradedSource { graded, hopf: gr_hopf, dual_basis })
}

/// Compares `gr(hyp)` with `hyp(gr)` under the map sending the class of the
/// adapted dual functional `ρ_i` to the dual basis functional of `gr`.
pub fn check_gr_hyp_duality(h: &TruncatedHopf) -> Result<Report> {
    let gs = graded_source(h)?;
    let g = &gs.hopf;
    let f = h.field();
    let n = h.dim();
    let deg = |i: usize| gs.graded.degree(i);
    let reps: Vec<Vector> = (0..n).map(|i| gs.graded.representative(i).clone()).collect();
    let rho = |i: usize| gs.dual_basis[i].clone();
    // coordinates of a functional over ρ
    let over_rho = |phi: &[Scalar]| -> Vector { reps.iter().map(|r| linalg::dot(phi, r, f)).collect() };
    let keep = |v: Vector, d: usize| -> Vector {
        v.into_iter().enumerate().map(|(j, c)| if deg(j) == d { c } else { f.zero() }).collect()
    };
    let mut r = Report::new();
    let top = h.top_odd_level();
    let dims_hyp: Vec<usize> = (0..=top)
        .map(|k| h.odd_level(k).dim() - if k == 0 { 0 } else { h.odd_level(k - 1).dim() })
        .collect();
    let mut dims_gr = gs.graded.component_dims();
    dims_gr.resize(dims_hyp.len(), 0);
    r.record(
        "dimension table",
        if dims_hyp == dims_gr { Ok(()) } else { Err(format!("gr(hyp) {dims_hyp:?} vs hyp(gr) {dims_gr:?}")) },
    );
    r.record(
        "unit",
        if keep(over_rho(&h.unit()), 0) == g.unit() { Ok(()) } else { Err("ε*".into()) },
    );
    let products = (|| {
        for i in 0..n {
            for j in 0..n {
                let (Ok(lhs), Ok(rhs)) = (h.convolve(&rho(i), &rho(j)), g.convolve(&linalg::unit_vec(f, n, i), &linalg::unit_vec(f, n, j))) else {
                    continue;
                };
                if keep(over_rho(&lhs), deg(i) + deg(j)) != rhs {
                    return Err(format!("({}, {})", gs.graded.algebra().label(i), gs.graded.algebra().label(j)));
                }
            }
        }
        Ok(())
    })();
    r.record("products", products);
    let coproducts = (|| {
        for i in 0..n {
            let c = h.dual_coproduct(&rho(i));
            let mut d = linalg::zero_vec(f, n * n);
            for (ab, x) in c.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let (a, b) = (ab / n, ab % n);
                for j in 0..n {
                    for k in 0..n {
                        if deg(j) + deg(k) == deg(i) && !reps[j][a].is_zero() && !reps[k][b].is_zero() {
                            d[j * n + k] += &(&(x * &reps[j][a]) * &reps[k][b]);
                        }
                    }
                }
            }
            if d != g.dual_coproduct(&linalg::unit_vec(f, n, i)) {
                return Err(gs.graded.algebra().label(i).to_string());
            }
        }
        Ok(())
    })();
    r.record("coproducts", coproducts);
    let antipodes = (|| {
        for i in 0..n {
            if keep(over_rho(&h.dual_antipode(&rho(i))), deg(i)) != g.dual_antipode(&linalg::unit_vec(f, n, i)) {
                return Err(gs.graded.algebra().label(i).to_string());
            }
        }
        Ok(())
    })();
    r.record("antipodes", antipodes);
    Ok(r)
}

fn monomial_words(m: &MonomialBasis) -> Vec<Vec<usize>> {
    let ne = m.even_vars.len();
    m.monomials
        .iter()
        .map(|(a, s)| {
            let mut w = Vec::new();
            for (i, &e) in a.iter().enumerate() {
                w.extend(std::iter::repeat_n(i, e as usize));
            }
            for k in 0..m.odd_vars.len() {
                if s >> k & 1 == 1 {
                    w.push(ne + k);
                }
            }
            w
        })
        .collect()
}

/// `K[t, θ...]/𝔪^{n+1}` with generator coproducts given as lists of
/// `(coefficient, left generator or None for 1, right generator or None)`.
#[allow(clippy::type_complexity)]
fn truncated_group(
    field: Field,
    even: &[&str],
    odd: &[&str],
    n: usize,
    delta: &[Vec<(i64, Option<usize>, Option<usize>)>],
    antipode: &[Vec<(i64, Vec<usize>)>],
) -> Result<TruncatedHopf> {
    let (alg, m) = truncated_poly(field, even, odd, n)?;
    let dim = alg.dim();
    let zero_even = vec![0; even.len()];
    let gen_index = |g: usize| -> Option<usize> {
        if g < even.len() {
            let mut a = zero_even.clone();
            a[g] = 1;
            m.index_of(&a, 0)
        } else {
            m.index_of(&zero_even, 1 << (g - even.len()))
        }
    };
    let vec_of = |g: Option<usize>| -> Vector {
        match g.and_then(gen_index) {
            Some(i) => linalg::unit_vec(field, dim, i),
            None if g.is_none() => alg.unit_coords().to_vec(),
            None => linalg::zero_vec(field, dim),
        }
    };
    let gen_delta: Vec<Vector> = delta
        .iter()
        .map(|terms| {
            let mut acc = linalg::zero_vec(field, dim * dim);
            for (c, l, r) in terms {
                linalg::axpy(&mut acc, &field.int(*c), &tensor_coords(&vec_of(*l), &vec_of(*r)));
            }
            acc
        })
        .collect();
    let gen_antipode: Vec<Vector> = antipode
        .iter()
        .map(|terms| {
            let mut acc = linalg::zero_vec(field, dim);
            for (c, word) in terms {
                let mut x = alg.unit_coords().to_vec();
                for &g in word {
                    x = alg.mul_coords(&x, &vec_of(Some(g)));
                }
                linalg::axpy(&mut acc, &field.int(*c), &x);
            }
            acc
        })
        .collect();
    let gen_counit = vec![field.zero(); even.len() + odd.len()];
    let hopf = HopfSuperAlgebra::from_generator_words(&alg, &monomial_words(&m), &gen_delta, &gen_counit, &gen_antipode)?;
    let canonical = CanonicalBasis::from_monomials(&alg, &m)?;
    TruncatedHopf::new(hopf, Some(n), Some(canonical))
}

/// Functions on the additive group truncated at `𝔪^{n+1}`: `K[t]/t^{n+1}`
/// with `t` primitive.
pub fn additive_truncation(field: Field, n: usize) -> Result<TruncatedHopf> {
    truncated_group(field, &["t"], &[], n, &[vec![(1, Some(0), None), (1, None, Some(0))]], &[vec![(-1, vec![0])]])
}

/// Functions on the multiplicative group near 1 in `t = x - 1`:
/// `Δt = t⊗1 + 1⊗t + t⊗t`, `S(t) = -t + t^2 - ...`.
pub fn multiplicative_truncation(field: Field, n: usize) -> Result<TruncatedHopf> {
    let s: Vec<(i64, Vec<usize>)> = (1..=n).map(|k| (if k % 2 == 1 { -1 } else { 1 }, vec![0; k])).collect();
    truncated_group(field, &["t"], &[], n, &[vec![(1, Some(0), None), (1, None, Some(0)), (1, Some(0), Some(0))]], &[s])
}

/// The supergroup `G_a^{1|1}` with `Δt = t⊗1 + 1⊗t + θ⊗θ` and `θ`
/// primitive, truncated at `𝔪^{n+1}`.
pub fn additive_super_truncation(field: Field, n: usize) -> Result<TruncatedHopf> {
    truncated_group(
        field,
        &["t"],
        &["th"],
        n,
        &[vec![(1, Some(0), None), (1, None, Some(0)), (1, Some(1), Some(1))], vec![(1, Some(1), None), (1, None, Some(1))]],
        &[vec![(-1, vec![0])], vec![(-1, vec![1])]],
    )
}

/// `Λ(θ_1..θ_t)` with primitive generators; an exact Hopf superalgebra.
pub fn grassmann_truncation(field: Field, names: &[&str]) -> Result<TruncatedHopf> {
    let hopf = if names.is_empty() { trivial_hopf(field)? } else { grassmann_hopf(field, names)? };
    let (_, m) = truncated_poly(field, &[], names, names.len())?;
    let canonical = CanonicalBasis::from_monomials(hopf.algebra(), &m)?;
    TruncatedHopf::new(hopf, None, Some(canonical))
}

pub fn tensor_truncation(a: &TruncatedHopf, b: &TruncatedHopf) -> Result<TruncatedHopf> {
    let hopf = tensor_hopf(&a.hopf, &b.hopf)?;
    let limit = match (a.limit, b.limit) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    };
    let canonical = match (&a.canonical, &b.canonical) {
        (Some(x), Some(y)) => Some(CanonicalBasis::tensor(hopf.algebra(), x, y)?),
        _ => None,
    };
    TruncatedHopf::new(hopf, limit, canonical)
}
