//! Exact dense linear algebra over a [`Field`]: echelon forms, kernels,
//! subspaces and the echelon complements used for deterministic quotients.

use crate::scalar::{Field, Scalar};

pub type Vector = Vec<Scalar>;

pub fn zero_vec(field: Field, n: usize) -> Vector {
    vec![field.zero(); n]
}

pub fn unit_vec(field: Field, n: usize, i: usize) -> Vector {
    let mut v = zero_vec(field, n);
    v[i] = field.one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// `y += c * x`
pub fn axpy(y: &mut [Scalar], c: &Scalar, x: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += &(c * xi);
        }
    }
}

pub fn scale(c: &Scalar, x: &[Scalar]) -> Vector {
    x.iter().map(|xi| c * xi).collect()
}

pub fn add(x: &[Scalar], y: &[Scalar]) -> Vector {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn sub(x: &[Scalar], y: &[Scalar]) -> Vector {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn dot(x: &[Scalar], y: &[Scalar], field: Field) -> Scalar {
    let mut acc = field.zero();
    for (a, b) in x.iter().zip(y) {
        if !a.is_zero() && !b.is_zero() {
            acc += &(a * b);
        }
    }
    acc
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(mut rows: Vec<Vector>, ncols: usize) -> (Vec<Vector>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        let pivot_row: Vector = rows[r].iter().map(|x| x * &inv).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = -&row[c];
                axpy(row, &f, &pivot_row);
            }
        }
        rows[r] = pivot_row;
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(rows: &[Vector], ncols: usize) -> usize {
    rref(rows.to_vec(), ncols).1.len()
}

/// Right kernel `{x : M x = 0}` of an `m x ncols` matrix given by rows.
pub fn nullspace(rows: &[Vector], ncols: usize, field: Field) -> Vec<Vector> {
    let (red, pivots) = rref(rows.to_vec(), ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut x = zero_vec(field, ncols);
        x[free] = field.one();
        for (row, &pc) in red.iter().zip(&pivots) {
            x[pc] = -&row[free];
        }
        basis.push(x);
    }
    basis
}

/// Solves `A x = b` for `A` given by rows; returns one solution if any.
pub fn solve(a: &[Vector], b: &[Scalar], ncols: usize, field: Field) -> Option<Vector> {
    let aug: Vec<Vector> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (red, pivots) = rref(aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = zero_vec(field, ncols);
    for (row, &pc) in red.iter().zip(&pivots) {
        x[pc] = row[ncols].clone();
    }
    Some(x)
}

/// Inverse of a square matrix, if it exists.
pub fn inverse(a: &[Vector], field: Field) -> Option<Vec<Vector>> {
    let n = a.len();
    let aug: Vec<Vector> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend(unit_vec(field, n, i));
            r
        })
        .collect();
    let (red, pivots) = rref(aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn transpose(a: &[Vector], ncols: usize) -> Vec<Vector> {
    (0..ncols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Matrix-vector product for `A` given by rows.
pub fn mat_vec(a: &[Vector], x: &[Scalar], field: Field) -> Vector {
    a.iter().map(|row| dot(row, x, field)).collect()
}

/// A subspace of `K^n`, stored as a reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(field: Field, ambient: usize, vectors: impl IntoIterator<Item = Vector>) -> Subspace {
        let (rows, pivots) = rref(vectors.into_iter().collect(), ambient);
        Subspace { field, ambient, rows, pivots }
    }

    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace { field, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace::span(field, ambient, (0..ambient).map(|i| unit_vec(field, ambient, i)))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after clearing the pivot columns.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut out = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if !out[pc].is_zero() {
                let c = -&out[pc];
                axpy(&mut out, &c, row);
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the span.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(self.field, self.ambient, self.rows.iter().chain(&other.rows).cloned())
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // x = sum a_i r_i lies in other iff the reduction of x by other vanishes
        let red: Vec<Vector> = self.rows.iter().map(|r| other.reduce(r)).collect();
        let m = transpose(&red, self.ambient);
        let kernel = nullspace(&m, self.rows.len(), self.field);
        let vecs = kernel.into_iter().map(|coeffs| {
            let mut x = zero_vec(self.field, self.ambient);
            for (c, r) in coeffs.iter().zip(&self.rows) {
                axpy(&mut x, c, r);
            }
            x
        });
        Subspace::span(self.field, self.ambient, vecs)
    }

    /// Vectors of `self` completing a basis of `sub` (which must lie inside
    /// `self`), chosen by echelon elimination so the choice is reproducible.
    pub fn complement_of(&self, sub: &Subspace) -> Vec<Vector> {
        let reduced: Vec<Vector> = self.rows.iter().map(|r| sub.reduce(r)).collect();
        rref(reduced, self.ambient).0
    }

    /// Standard basis vectors at the non-pivot columns.
    pub fn standard_complement(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// The annihilator in the dual space, as a subspace of `K^n`.
    pub fn annihilator(&self) -> Subspace {
        Subspace::span(self.field, self.ambient, nullspace(&self.rows, self.ambient, self.field))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(f: Field, xs: &[i64]) -> Vector {
        xs.iter().map(|&x| f.int(x)).collect()
    }

    #[test]
    fn kernel_and_solve() {
        let q = Field::Rational;
        let a = vec![v(q, &[1, 2, 3]), v(q, &[2, 4, 6])];
        let k = nullspace(&a, 3, q);
        assert_eq!(k.len(), 2);
        for x in &k {
            assert!(is_zero_vec(&mat_vec(&a, x, q)));
        }
        let x = solve(&a, &v(q, &[6, 12]), 3, q).unwrap();
        assert_eq!(mat_vec(&a, &x, q), v(q, &[6, 12]));
        assert!(solve(&a, &v(q, &[1, 0]), 3, q).is_none());
    }

    #[test]
    fn subspace_lattice() {
        let q = Field::Rational;
        let a = Subspace::span(q, 3, vec![v(q, &[1, 0, 0]), v(q, &[0, 1, 0])]);
        let b = Subspace::span(q, 3, vec![v(q, &[0, 1, 1]), v(q, &[0, 0, 1])]);
        assert_eq!(a.intersection(&b).dim(), 1);
        assert_eq!(a.sum(&b).dim(), 3);
        assert!(a.intersection(&b).contains(&v(q, &[0, 1, 0])));
        let line = Subspace::span(q, 3, vec![v(q, &[1, 1, 0])]);
        let comp = a.complement_of(&line);
        assert_eq!(comp.len(), 1);
        assert_eq!(a.annihilator().dim(), 1);
    }

    #[test]
    fn inverse_roundtrip() {
        let f = Field::prime(7).unwrap();
        let a = vec![v(f, &[2, 1]), v(f, &[1, 1])];
        let inv = inverse(&a, f).unwrap();
        let prod: Vec<Vector> = (0..2)
            .map(|i| (0..2).map(|j| dot(&a[i], &[inv[0][j].clone(), inv[1][j].clone()], f)).collect())
            .collect();
        assert_eq!(prod, vec![v(f, &[1, 0]), v(f, &[0, 1])]);
        assert!(inverse(&[v(f, &[1, 2]), v(f, &[2, 4])], f).is_none());
    }
}
