use super::{AlgebraHandle, AlgebraRef, Element};
use crate::error::{Error, Result};
use crate::linalg::{self, Subspace, Vector};

/// A linear map between algebras, given by the image of each source basis
/// element.
#[derive(Clone, Debug)]
pub struct AlgebraMap {
    source: AlgebraRef,
    target: AlgebraRef,
    images: Vec<Vector>,
}

impl AlgebraMap {
    pub fn new(source: AlgebraRef, target: AlgebraRef, images: Vec<Vector>) -> Result<AlgebraMap> {
        if images.len() != source.dim() || images.iter().any(|v| v.len() != target.dim()) {
            return Err(Error::Dimension("map images do not match source/target dimensions".into()));
        }
        if source.field() != target.field() {
            return Err(Error::Field("map between algebras over different fields".into()));
        }
        Ok(AlgebraMap { source, target, images })
    }

    pub fn identity(a: &AlgebraRef) -> AlgebraMap {
        let n = a.dim();
        AlgebraMap { source: a.clone(), target: a.clone(), images: (0..n).map(|i| linalg::unit_vec(a.field(), n, i)).collect() }
    }

    pub fn source(&self) -> &AlgebraRef {
        &self.source
    }

    pub fn target(&self) -> &AlgebraRef {
        &self.target
    }

    pub fn images(&self) -> &[Vector] {
        &self.images
    }

    pub fn apply_coords(&self, x: &[crate::scalar::Scalar]) -> Vector {
        let mut out = linalg::zero_vec(self.target.field(), self.target.dim());
        for (c, img) in x.iter().zip(&self.images) {
            linalg::axpy(&mut out, c, img);
        }
        out
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        if x.algebra().uid() != self.source.uid() {
            return Err(Error::AlgebraMismatch);
        }
        self.target.element(self.apply_coords(x.coords()))
    }

    pub fn compose(&self, after: &AlgebraMap) -> Result<AlgebraMap> {
        if after.source.uid() != self.target.uid() {
            return Err(Error::AlgebraMismatch);
        }
        let images = self.images.iter().map(|v| after.apply_coords(v)).collect();
        AlgebraMap::new(self.source.clone(), after.target.clone(), images)
    }

    pub fn preserves_parity(&self) -> bool {
        (0..self.source.dim()).all(|i| {
            let p = self.source.parity(i);
            self.target.parity_of_coords(&self.images[i]).is_some_and(|q| q == p || linalg::is_zero_vec(&self.images[i]))
        })
    }

    pub fn is_unital(&self) -> bool {
        self.apply_coords(self.source.unit_coords()) == self.target.unit_coords()
    }

    /// `Ok` when `f(b_i b_j) = f(b_i) f(b_j)` on every basis pair; otherwise
    /// the first failing pair of labels.
    pub fn is_multiplicative(&self) -> std::result::Result<(), (String, String)> {
        let n = self.source.dim();
        for i in 0..n {
            for j in 0..n {
                let lhs = self.apply_coords(&self.source.basis_product(i, j));
                let rhs = self.target.mul_coords(&self.images[i], &self.images[j]);
                if lhs != rhs {
                    return Err((self.source.label(i).to_string(), self.source.label(j).to_string()));
                }
            }
        }
        Ok(())
    }

    pub fn kernel(&self) -> Subspace {
        let m = linalg::transpose(&self.images, self.target.dim());
        Subspace::span(self.source.field(), self.source.dim(), linalg::nullspace(&m, self.source.dim(), self.source.field()))
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.images, self.target.dim())
    }
}
