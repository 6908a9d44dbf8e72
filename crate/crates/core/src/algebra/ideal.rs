use super::{AlgebraHandle, AlgebraRef, Element, Parity};
use crate::error::{Error, Result};
use crate::linalg::{self, Subspace, Vector};

/// A graded two-sided ideal, stored as an echelon subspace of the algebra.
#[derive(Clone, Debug)]
pub struct SuperIdeal {
    alg: AlgebraRef,
    space: Subspace,
}

impl PartialEq for SuperIdeal {
    fn eq(&self, other: &SuperIdeal) -> bool {
        self.alg.uid() == other.alg.uid() && self.space == other.space
    }
}

impl SuperIdeal {
    /// Wraps a spanning set, verifying that its span is graded and closed
    /// under multiplication by every basis element.
    pub fn new(alg: &AlgebraRef, spanning: &[Element]) -> Result<SuperIdeal> {
        let vecs = spanning
            .iter()
            .map(|e| if e.algebra().uid() == alg.uid() { Ok(e.coords().to_vec()) } else { Err(Error::AlgebraMismatch) })
            .collect::<Result<Vec<_>>>()?;
        Self::from_vectors(alg, vecs)
    }

    pub fn from_vectors(alg: &AlgebraRef, vecs: Vec<Vector>) -> Result<SuperIdeal> {
        let space = Subspace::span(alg.field(), alg.dim(), vecs);
        for row in space.basis() {
            for p in [Parity::Even, Parity::Odd] {
                if !space.contains(&alg.part_coords(row, p)) {
                    return Err(Error::NotAnIdeal("span is not graded".into()));
                }
            }
            for i in 0..alg.dim() {
                let prod = alg.mul_coords(&linalg::unit_vec(alg.field(), alg.dim(), i), row);
                if !space.contains(&prod) {
                    return Err(Error::NotAnIdeal(format!(
                        "{} times a spanning vector leaves the span",
                        alg.label(i)
                    )));
                }
            }
        }
        Ok(SuperIdeal { alg: alg.clone(), space })
    }

    /// Smallest super-ideal containing the given elements.
    pub fn generated_by(alg: &AlgebraRef, gens: &[Element]) -> Result<SuperIdeal> {
        let mut vecs = Vec::new();
        for g in gens {
            if g.algebra().uid() != alg.uid() {
                return Err(Error::AlgebraMismatch);
            }
            for p in [Parity::Even, Parity::Odd] {
                let part = alg.part_coords(g.coords(), p);
                for i in 0..alg.dim() {
                    vecs.push(alg.mul_coords(&linalg::unit_vec(alg.field(), alg.dim(), i), &part));
                }
            }
        }
        Ok(SuperIdeal { alg: alg.clone(), space: Subspace::span(alg.field(), alg.dim(), vecs) })
    }

    pub fn zero(alg: &AlgebraRef) -> SuperIdeal {
        SuperIdeal { alg: alg.clone(), space: Subspace::zero(alg.field(), alg.dim()) }
    }

    pub fn whole(alg: &AlgebraRef) -> SuperIdeal {
        SuperIdeal { alg: alg.clone(), space: Subspace::full(alg.field(), alg.dim()) }
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.alg
    }

    pub fn subspace(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.space.is_zero()
    }

    pub fn contains(&self, e: &Element) -> bool {
        e.algebra().uid() == self.alg.uid() && self.space.contains(e.coords())
    }

    pub fn basis(&self) -> Vec<Element> {
        self.space.basis().iter().map(|r| self.alg.element(r.clone()).expect("ideal vector length")).collect()
    }

    /// Span of all products `x y`, `x ∈ self`, `y ∈ other`.
    pub fn product(&self, other: &SuperIdeal) -> Result<SuperIdeal> {
        if self.alg.uid() != other.alg.uid() {
            return Err(Error::AlgebraMismatch);
        }
        let mut vecs = Vec::new();
        for x in self.space.basis() {
            for y in other.space.basis() {
                vecs.push(self.alg.mul_coords(x, y));
            }
        }
        Ok(SuperIdeal { alg: self.alg.clone(), space: Subspace::span(self.alg.field(), self.alg.dim(), vecs) })
    }

    /// `I^k`, with `I^0` the whole algebra.
    pub fn power(&self, k: usize) -> SuperIdeal {
        let mut acc = SuperIdeal::whole(&self.alg);
        for _ in 0..k {
            acc = acc.product(self).expect("same algebra");
        }
        acc
    }

    pub fn sum(&self, other: &SuperIdeal) -> Result<SuperIdeal> {
        if self.alg.uid() != other.alg.uid() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(SuperIdeal { alg: self.alg.clone(), space: self.space.sum(&other.space) })
    }

    pub fn is_subideal_of(&self, other: &SuperIdeal) -> bool {
        self.alg.uid() == other.alg.uid() && self.space.is_subspace_of(&other.space)
    }

    /// Smallest `n` with `I^n = 0`, searching up to `dim A + 1`.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let mut acc = SuperIdeal::whole(&self.alg);
        for n in 0..=self.alg.dim() + 1 {
            if acc.is_zero() {
                return Some(n);
            }
            acc = acc.product(self).expect("same algebra");
        }
        None
    }
}

/// `I_A = A A_1`, the ideal generated by the odd part.
pub fn odd_ideal(alg: &AlgebraRef) -> Result<SuperIdeal> {
    let gens: Vec<Element> = alg.basis_indices(Parity::Odd).into_iter().map(|i| alg.basis(i)).collect();
    SuperIdeal::generated_by(alg, &gens)
}
