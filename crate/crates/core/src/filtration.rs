//! Descending ideal filtrations, graded companions and the comparison map
//! `gr(A) ⊗ gr(B) -> gr(A ⊗ B)` for the tensor filtration.

use std::collections::HashSet;
use std::sync::Arc;

use crate::algebra::{tensor, tensor_coords, AlgebraMap, AlgebraRef, SuperAlgebra, SuperIdeal, SuperVectorSpace};
use crate::error::{Error, Result};
use crate::linalg::{self, Subspace, Vector};

/// `A = I_0 ⊇ I_1 ⊇ ... ⊇ I_N = 0` with `I_k I_l ⊆ I_{k+l}`.
#[derive(Clone, Debug)]
pub struct FilteredSuperAlgebra {
    alg: AlgebraRef,
    chain: Vec<SuperIdeal>,
}

impl FilteredSuperAlgebra {
    pub fn new(alg: &AlgebraRef, chain: Vec<SuperIdeal>) -> Result<FilteredSuperAlgebra> {
        let bad = |m: String| Err(Error::InvalidFiltration(m));
        if chain.len() < 2 && alg.dim() > 0 {
            return bad("chain needs at least I_0 and a final zero ideal".into());
        }
        if chain.iter().any(|i| i.algebra().uid() != alg.uid()) {
            return Err(Error::AlgebraMismatch);
        }
        if chain[0].dim() != alg.dim() {
            return bad("I_0 must be the whole algebra".into());
        }
        if !chain.last().unwrap().is_zero() {
            return bad("the last ideal must be zero".into());
        }
        for k in 0..chain.len() - 1 {
            if !chain[k + 1].is_subideal_of(&chain[k]) {
                return bad(format!("I_{} is not contained in I_{}", k + 1, k));
            }
        }
        let f = FilteredSuperAlgebra { alg: alg.clone(), chain };
        for k in 1..f.len() {
            for l in k..f.len() {
                let target = f.level(k + l);
                for x in f.chain[k].subspace().basis() {
                    for y in f.chain[l].subspace().basis() {
                        if !target.subspace().contains(&alg.mul_coords(x, y)) {
                            return bad(format!("I_{k} I_{l} is not contained in I_{}", k + l));
                        }
                    }
                }
            }
        }
        Ok(f)
    }

    /// Powers of a nilpotent ideal.
    pub fn adic(alg: &AlgebraRef, ideal: &SuperIdeal) -> Result<FilteredSuperAlgebra> {
        if ideal.algebra().uid() != alg.uid() {
            return Err(Error::AlgebraMismatch);
        }
        let mut chain = vec![SuperIdeal::whole(alg)];
        while !chain.last().unwrap().is_zero() {
            if chain.len() > alg.dim() + 1 {
                return Err(Error::NotNilpotent(alg.dim()));
            }
            let next = chain.last().unwrap().product(ideal)?;
            if next == *chain.last().unwrap() {
                return Err(Error::NotNilpotent(chain.len()));
            }
            chain.push(next);
        }
        Ok(FilteredSuperAlgebra { alg: alg.clone(), chain })
    }

    /// `A ⊇ 0`
    pub fn trivial(alg: &AlgebraRef) -> FilteredSuperAlgebra {
        FilteredSuperAlgebra { alg: alg.clone(), chain: vec![SuperIdeal::whole(alg), SuperIdeal::zero(alg)] }
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.alg
    }

    pub fn chain(&self) -> &[SuperIdeal] {
        &self.chain
    }

    /// Number of ideals in the chain, including the final zero.
    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    /// `I_k`, which is zero beyond the stored chain.
    pub fn level(&self, k: usize) -> SuperIdeal {
        self.chain.get(k).cloned().unwrap_or_else(|| SuperIdeal::zero(&self.alg))
    }

    pub fn dims(&self) -> Vec<usize> {
        self.chain.iter().map(SuperIdeal::dim).collect()
    }
}

/// `T_k = sum_{i+j=k} I_i ⊗ J_j` on `A ⊗ B`.
pub fn tensor_filtration(f: &FilteredSuperAlgebra, g: &FilteredSuperAlgebra) -> Result<FilteredSuperAlgebra> {
    let t = tensor(f.algebra(), g.algebra())?;
    let mut chain = Vec::new();
    for k in 0.. {
        let mut vecs = Vec::new();
        for i in 0..=k {
            let (a, b) = (f.level(i), g.level(k - i));
            for x in a.subspace().basis() {
                for y in b.subspace().basis() {
                    vecs.push(tensor_coords(x, y));
                }
            }
        }
        let ideal = SuperIdeal::from_vectors(&t, vecs)?;
        let done = ideal.is_zero();
        chain.push(ideal);
        if done {
            break;
        }
    }
    FilteredSuperAlgebra::new(&t, chain)
}

/// `gr(A) = ⊕ I_k / I_{k+1}` realized as a superalgebra whose basis is
/// graded by degree. Each basis element remembers a representative in `A`.
#[derive(Clone, Debug)]
pub struct GradedSuperAlgebra {
    filtered: FilteredSuperAlgebra,
    algebra: AlgebraRef,
    degrees: Vec<usize>,
    reps: Vec<Vector>,
    offsets: Vec<usize>,
    components: Vec<Subspace>,
}

impl GradedSuperAlgebra {
    pub fn algebra(&self) -> &AlgebraRef {
        &self.algebra
    }

    pub fn filtered(&self) -> &FilteredSuperAlgebra {
        &self.filtered
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Representative in the filtered algebra of gr basis element `i`.
    pub fn representative(&self, i: usize) -> &Vector {
        &self.reps[i]
    }

    pub fn component_dims(&self) -> Vec<usize> {
        self.components.iter().map(Subspace::dim).collect()
    }

    pub fn components(&self) -> Vec<SuperVectorSpace> {
        (0..self.components.len())
            .map(|k| {
                let idx: Vec<usize> = (0..self.degrees.len()).filter(|&i| self.degrees[i] == k).collect();
                SuperVectorSpace::new(
                    idx.iter().map(|&i| self.algebra.label(i).to_string()).collect(),
                    idx.iter().map(|&i| self.algebra.parity(i)).collect(),
                )
                .expect("labels are distinct")
            })
            .collect()
    }

    /// Coordinates in gr (full basis) of the class of `v ∈ I_k` in
    /// `I_k / I_{k+1}`; `None` if `v ∉ I_k`.
    pub fn class(&self, k: usize, v: &[crate::scalar::Scalar]) -> Option<Vector> {
        class_in(&self.filtered, &self.components, &self.offsets, self.reps.len(), k, v)
    }
}

fn class_in(
    f: &FilteredSuperAlgebra,
    components: &[Subspace],
    offsets: &[usize],
    n: usize,
    k: usize,
    v: &[crate::scalar::Scalar],
) -> Option<Vector> {
    let mut out = linalg::zero_vec(f.alg.field(), n);
    if k >= components.len() {
        return if linalg::is_zero_vec(v) { Some(out) } else { None };
    }
    if !f.level(k).subspace().contains(v) {
        return None;
    }
    let r = f.level(k + 1).subspace().reduce(v);
    let c = components[k].coords(&r)?;
    for (j, x) in c.into_iter().enumerate() {
        out[offsets[k] + j] = x;
    }
    Some(out)
}

pub fn graded_companion(f: &FilteredSuperAlgebra) -> Result<GradedSuperAlgebra> {
    let alg = f.algebra();
    let field = alg.field();
    let mut reps = Vec::new();
    let mut degrees = Vec::new();
    let mut offsets = Vec::new();
    let mut components = Vec::new();
    for k in 0..f.len() - 1 {
        let lower = f.level(k + 1);
        let comp = f.level(k).subspace().complement_of(lower.subspace());
        offsets.push(reps.len());
        components.push(Subspace::span(field, alg.dim(), comp.clone()));
        for v in comp {
            reps.push(v);
            degrees.push(k);
        }
    }
    let mut parities = Vec::new();
    for r in &reps {
        parities.push(
            alg.parity_of_coords(r)
                .ok_or_else(|| Error::InvalidFiltration("inhomogeneous class representative".into()))?,
        );
    }
    let mut labels: Vec<String> = reps
        .iter()
        .map(|r| {
            let nz: Vec<usize> = (0..r.len()).filter(|&i| !r[i].is_zero()).collect();
            if nz.len() == 1 && r[nz[0]].is_one() {
                alg.label(nz[0]).to_string()
            } else {
                String::new()
            }
        })
        .collect();
    let distinct: HashSet<&String> = labels.iter().collect();
    if distinct.len() != labels.len() || labels.iter().any(String::is_empty) {
        labels = (0..reps.len()).map(|i| format!("g{}_{}", degrees[i], i - offsets[degrees[i]])).collect();
    }
    let space = SuperVectorSpace::new(labels, parities)?;
    let n = reps.len();
    let class = |k: usize, v: &[crate::scalar::Scalar]| class_in(f, &components, &offsets, n, k, v);
    let mut table = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let d = degrees[i] + degrees[j];
            let prod = alg.mul_coords(&reps[i], &reps[j]);
            let c = class(d, &prod)
                .ok_or_else(|| Error::InvalidFiltration("product leaves the expected filtration level".into()))?;
            table[i][j] = c.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
        }
    }
    let unit = class(0, alg.unit_coords()).expect("unit lies in I_0");
    let algebra = Arc::new(SuperAlgebra::from_sparse(field, space, unit, table));
    Ok(GradedSuperAlgebra { filtered: f.clone(), algebra, degrees, reps, offsets, components })
}

/// `gr(φ)` for a map with `φ(I_k) ⊆ J_k`.
pub fn gr_map(phi: &AlgebraMap, src: &GradedSuperAlgebra, dst: &GradedSuperAlgebra) -> Result<AlgebraMap> {
    if phi.source().uid() != src.filtered.alg.uid() || phi.target().uid() != dst.filtered.alg.uid() {
        return Err(Error::AlgebraMismatch);
    }
    let images = (0..src.algebra.dim())
        .map(|i| {
            let k = src.degrees[i];
            dst.class(k, &phi.apply_coords(&src.reps[i]))
                .ok_or_else(|| Error::InvalidFiltration(format!("map does not respect level {k}")))
        })
        .collect::<Result<Vec<_>>>()?;
    AlgebraMap::new(src.algebra.clone(), dst.algebra.clone(), images)
}

/// The comparison isomorphism `gr(A) ⊗ gr(B) -> gr_T(A ⊗ B)`.
#[derive(Clone, Debug)]
pub struct GrTensorIso {
    pub left: GradedSuperAlgebra,
    pub right: GradedSuperAlgebra,
    pub total: GradedSuperAlgebra,
    /// `gr(A) ⊗ gr(B)` as an algebra.
    pub source: AlgebraRef,
    pub map: AlgebraMap,
    pub degree_dims: Vec<usize>,
}

impl GrTensorIso {
    pub fn source_degree(&self, i: usize) -> usize {
        let nb = self.right.algebra.dim();
        self.left.degree(i / nb) + self.right.degree(i % nb)
    }

    /// Inverse of the witness map.
    pub fn inverse(&self) -> Result<AlgebraMap> {
        let f = self.source.field();
        let m = linalg::transpose(self.map.images(), self.total.algebra.dim());
        let inv = linalg::inverse(&m, f).ok_or_else(|| Error::Precondition("comparison map is singular".into()))?;
        let images = linalg::transpose(&inv, self.source.dim());
        AlgebraMap::new(self.total.algebra.clone(), self.source.clone(), images)
    }
}

pub fn check_gr_tensor_iso(f: &FilteredSuperAlgebra, g: &FilteredSuperAlgebra) -> std::result::Result<GrTensorIso, String> {
    let run = || -> Result<std::result::Result<GrTensorIso, String>> {
        let left = graded_companion(f)?;
        let right = graded_companion(g)?;
        let t = tensor_filtration(f, g)?;
        let total = graded_companion(&t)?;
        let source = tensor(&left.algebra, &right.algebra)?;
        let nb = right.algebra.dim();
        let mut images = Vec::new();
        for i in 0..source.dim() {
            let (x, y) = (i / nb, i % nb);
            let d = left.degree(x) + right.degree(y);
            let rep = tensor_coords(left.representative(x), right.representative(y));
            match total.class(d, &rep) {
                Some(c) => images.push(c),
                None => return Ok(Err(format!("{} lands outside T_{d}", source.label(i)))),
            }
        }
        let map = AlgebraMap::new(source.clone(), total.algebra.clone(), images)?;
        let degree_dims = total.component_dims();
        for (d, &dim) in degree_dims.iter().enumerate() {
            let cols: Vec<Vector> = (0..source.dim())
                .filter(|&i| left.degree(i / nb) + right.degree(i % nb) == d)
                .map(|i| map.images()[i].clone())
                .collect();
            if cols.len() != dim || linalg::rank(&cols, total.algebra.dim()) != dim {
                return Ok(Err(format!("degree {d}: source dim {} target dim {dim}, not bijective", cols.len())));
            }
        }
        if source.dim() != total.algebra.dim() {
            return Ok(Err("total dimensions differ".into()));
        }
        if let Err((a, b)) = map.is_multiplicative() {
            return Ok(Err(format!("not multiplicative at ({a}, {b})")));
        }
        if !map.is_unital() || !map.preserves_parity() {
            return Ok(Err("map is not unital or not even".into()));
        }
        Ok(Ok(GrTensorIso { left, right, total, source, map, degree_dims }))
    };
    run().unwrap_or_else(|e| Err(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{dual_super_numbers, grassmann_named, odd_ideal, truncated_poly, AlgebraHandle};
    use crate::scalar::Field;

    fn odd_adic(a: &AlgebraRef) -> FilteredSuperAlgebra {
        FilteredSuperAlgebra::adic(a, &odd_ideal(a).unwrap()).unwrap()
    }

    #[test]
    fn adic_chains_and_components() {
        let q = Field::Rational;
        let l = grassmann_named(q, &["t1", "t2"]).unwrap();
        let f = odd_adic(&l);
        assert_eq!(f.dims(), vec![4, 3, 1, 0]);
        let gr = graded_companion(&f).unwrap();
        assert_eq!(gr.component_dims(), vec![1, 2, 1]);
        gr.algebra().validate().unwrap();

        let (p, _) = truncated_poly(q, &["t"], &[], 1).unwrap();
        let t = SuperIdeal::generated_by(&p, &[p.basis_by_label("t").unwrap()]).unwrap();
        assert_eq!(FilteredSuperAlgebra::adic(&p, &t).unwrap().dims(), vec![2, 1, 0]);

        let k = grassmann_named(q, &[]).unwrap();
        assert_eq!(odd_adic(&k).dims(), vec![1, 0]);

        let d = dual_super_numbers(&k, "e0", "e1").unwrap();
        let gd = graded_companion(&odd_adic(&d.algebra)).unwrap();
        assert_eq!(gd.component_dims(), vec![2, 1]);
        assert_eq!(gd.algebra().label(2), "e1");
    }

    #[test]
    fn non_nilpotent_ideal_is_rejected() {
        let q = Field::Rational;
        let l = grassmann_named(q, &["t"]).unwrap();
        assert!(matches!(FilteredSuperAlgebra::adic(&l, &SuperIdeal::whole(&l)), Err(Error::NotNilpotent(_))));
    }

    #[test]
    fn tensor_filtration_levels() {
        let q = Field::Rational;
        let a = grassmann_named(q, &["th"]).unwrap();
        let b = grassmann_named(q, &["eta"]).unwrap();
        let t = tensor_filtration(&odd_adic(&a), &odd_adic(&b)).unwrap();
        assert_eq!(t.dims(), vec![4, 3, 1, 0]);
        let t1 = t.level(1);
        for l in ["th", "eta", "th*eta"] {
            assert!(t1.contains(&t.algebra().basis_by_label(l).unwrap()));
        }
    }

    #[test]
    fn comparison_iso_on_grassmann() {
        let q = Field::Rational;
        let a = grassmann_named(q, &["x", "y"]).unwrap();
        let f = odd_adic(&a);
        let iso = check_gr_tensor_iso(&f, &f).unwrap();
        assert_eq!(iso.degree_dims, vec![1, 4, 6, 4, 1]);
        let inv = iso.inverse().unwrap();
        assert!(inv.is_multiplicative().is_ok());
    }
}
