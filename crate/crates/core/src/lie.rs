//! Lie superalgebras given by bracket structure constants.

use crate::algebra::{koszul_sign, AlgebraHandle, AlgebraRef, Element, Parity, SparseVec, SuperVectorSpace};
use crate::error::{Error, Result};
use crate::linalg::{self, Vector};
use crate::poly::{Mat, Poly};
use crate::report::Report;
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug)]
pub struct LieSuperAlgebra {
    field: Field,
    space: SuperVectorSpace,
    table: Vec<Vec<SparseVec>>,
}

impl LieSuperAlgebra {
    /// Stores the bracket table after checking shapes and parity additivity.
    /// The axioms are verified separately by [`check_axioms`].
    pub fn new(field: Field, space: SuperVectorSpace, bracket: impl Fn(usize, usize) -> Vector) -> Result<LieSuperAlgebra> {
        let n = space.dim();
        let mut table = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let v = bracket(i, j);
                if v.len() != n {
                    return Err(Error::Dimension("bracket value has wrong length".into()));
                }
                for (k, c) in v.into_iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if space.parity(k) != space.parity(i) + space.parity(j) {
                        return Err(Error::InvalidLie(format!(
                            "[{}, {}] has a component on {} of the wrong parity",
                            space.labels()[i],
                            space.labels()[j],
                            space.labels()[k]
                        )));
                    }
                    table[i][j].push((k, c));
                }
            }
        }
        Ok(LieSuperAlgebra { field, space, table })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn space(&self) -> &SuperVectorSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.space.labels()[i]
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.space.parity(i)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.space.index_of(label)
    }

    pub fn structure_constants(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i][j]
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> Vector {
        let mut v = linalg::zero_vec(self.field, self.dim());
        for (k, c) in &self.table[i][j] {
            v[*k] = c.clone();
        }
        v
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = linalg::zero_vec(self.field, self.dim());
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in &self.table[i][j] {
                    out[*k] += &(&ab * c);
                }
            }
        }
        out
    }

    /// Bracket on `g ⊗ R` with `[X⊗r, Y⊗r'] = (-1)^{|r||Y|} [X,Y] ⊗ rr'`.
    /// Elements are coefficient lists `x = sum_i e_i ⊗ x_i`.
    pub fn bracket_over(&self, x: &[Element], y: &[Element], r: &AlgebraRef) -> Vec<Element> {
        let mut out = vec![r.zero(); self.dim()];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() || self.table[i][j].is_empty() {
                    continue;
                }
                let a_odd = a.odd_part();
                let a_even = a.even_part();
                let twisted = if self.parity(j).is_odd() { &a_even - &a_odd } else { a.clone() };
                let prod = &twisted * b;
                for (k, c) in &self.table[i][j] {
                    out[*k] = &out[*k] + &prod.scale(c);
                }
            }
        }
        out
    }

    /// Matrix of `ad(e_i)` by rows.
    pub fn ad(&self, i: usize) -> Vec<Vector> {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.basis_bracket(i, j)).collect();
        linalg::transpose(&cols, n)
    }

    pub fn odd_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.parity(i).is_odd()).collect()
    }

    pub fn even_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.parity(i).is_odd()).collect()
    }

    /// `[x,[y,z]] - [[x,y],z] - (-1)^{|x||y|}[y,[x,z]]` on basis elements.
    pub fn jacobi_defect(&self, i: usize, j: usize, k: usize) -> Vector {
        let f = self.field;
        let lhs = self.bracket(&linalg::unit_vec(f, self.dim(), i), &self.basis_bracket(j, k));
        let r1 = self.bracket(&self.basis_bracket(i, j), &linalg::unit_vec(f, self.dim(), k));
        let r2 = self.bracket(&linalg::unit_vec(f, self.dim(), j), &self.basis_bracket(i, k));
        let s = koszul_sign(f, self.parity(i), self.parity(j));
        linalg::sub(&linalg::sub(&lhs, &r1), &linalg::scale(&s, &r2))
    }

    /// Coefficients of the cubic `[[x,x],x]` for a generic odd
    /// `x = sum c_i e_i`, as polynomials in the formal `c_i`.
    pub fn cubic_odd_form(&self) -> Vec<Poly> {
        let odd = self.odd_indices();
        let nv = odd.len();
        let f = self.field;
        let var = |a: usize| Poly::var(f, nv, a);
        let mut xx = vec![Poly::zero(f, nv); self.dim()];
        for (a, &i) in odd.iter().enumerate() {
            for (b, &j) in odd.iter().enumerate() {
                let cc = var(a).mul(&var(b));
                for (k, c) in &self.table[i][j] {
                    xx[*k] = xx[*k].add(&cc.scale(c));
                }
            }
        }
        let mut out = vec![Poly::zero(f, nv); self.dim()];
        for (k, p) in xx.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (b, &j) in odd.iter().enumerate() {
                let pc = p.mul(&var(b));
                for (l, c) in &self.table[k][j] {
                    out[*l] = out[*l].add(&pc.scale(c));
                }
            }
        }
        out
    }

    pub fn format_vector(&self, v: &[Scalar]) -> String {
        crate::algebra::format_coords(self.space.labels(), v)
    }
}

/// Verifies super skew-symmetry (B3), the super Jacobi identity (B4) and
/// `[[x,x],x] = 0` for odd `x` (B2). The last one is always expanded
/// directly: in characteristic 3 it does not follow from (B4).
pub fn check_axioms(g: &LieSuperAlgebra) -> Report {
    let n = g.dim();
    let f = g.field;
    let mut report = Report::new();
    let b3 = (|| {
        for i in 0..n {
            for j in 0..n {
                let s = koszul_sign(f, g.parity(i), g.parity(j));
                let lhs = g.basis_bracket(i, j);
                let rhs = linalg::scale(&-s, &g.basis_bracket(j, i));
                if lhs != rhs {
                    return Err(format!("[{}, {}]", g.label(i), g.label(j)));
                }
            }
        }
        Ok(())
    })();
    report.record("B3 skew-symmetry", b3);
    let b4 = (|| {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let d = g.jacobi_defect(i, j, k);
                    if !linalg::is_zero_vec(&d) {
                        return Err(format!(
                            "({}, {}, {}) defect {}",
                            g.label(i),
                            g.label(j),
                            g.label(k),
                            g.format_vector(&d)
                        ));
                    }
                }
            }
        }
        Ok(())
    })();
    report.record("B4 super Jacobi", b4);
    let b2 = {
        let cubic = g.cubic_odd_form();
        match cubic.iter().position(|p| !p.is_zero()) {
            None => Ok(()),
            Some(k) => {
                let names: Vec<String> = g.odd_indices().iter().map(|&i| format!("c_{}", g.label(i))).collect();
                Err(format!("component {} of [[x,x],x] is {}", g.label(k), cubic[k].display(&names)))
            }
        }
    };
    report.record("B2 odd cube", b2);
    report
}

/// `gl(m|n)` with its defining matrices.
#[derive(Clone, Debug)]
pub struct MatrixLieSuper {
    pub m: usize,
    pub n: usize,
    pub lie: LieSuperAlgebra,
    pub matrices: Vec<Mat<Scalar>>,
}

impl MatrixLieSuper {
    pub fn size(&self) -> usize {
        self.m + self.n
    }

    pub fn index_parity(&self, i: usize) -> Parity {
        if i < self.m {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Supercommutator `XY - (-1)^{|X||Y|} YX` of homogeneous matrices.
    pub fn supercommutator(x: &Mat<Scalar>, px: Parity, y: &Mat<Scalar>, py: Parity) -> Mat<Scalar> {
        let s = koszul_sign(x.get(0, 0).field(), px, py);
        x.mul(y).sub(&y.mul(x).scale(&s))
    }

    /// Coordinates of a matrix in the elementary basis.
    pub fn coords_of(&self, x: &Mat<Scalar>) -> Vector {
        x.entries().to_vec()
    }
}

pub fn elementary_label(i: usize, j: usize, size: usize) -> String {
    if size < 10 {
        format!("E{}{}", i + 1, j + 1)
    } else {
        format!("E{}_{}", i + 1, j + 1)
    }
}

pub fn gl_super(field: Field, m: usize, n: usize) -> Result<MatrixLieSuper> {
    let size = m + n;
    if size == 0 {
        return Err(Error::Dimension("gl(0|0) is empty".into()));
    }
    let par = |i: usize| if i < m { Parity::Even } else { Parity::Odd };
    let labels = (0..size * size).map(|k| elementary_label(k / size, k % size, size)).collect();
    let parities: Vec<Parity> = (0..size * size).map(|k| par(k / size) + par(k % size)).collect();
    let space = SuperVectorSpace::new(labels, parities.clone())?;
    let zero = field.zero();
    let matrices: Vec<Mat<Scalar>> = (0..size * size)
        .map(|k| Mat::from_fn(size, size, |i, j| if i * size + j == k { field.one() } else { zero.clone() }))
        .collect();
    let lie = LieSuperAlgebra::new(field, space, |a, b| {
        MatrixLieSuper::supercommutator(&matrices[a], parities[a], &matrices[b], parities[b]).entries().to_vec()
    })?;
    Ok(MatrixLieSuper { m, n, lie, matrices })
}
