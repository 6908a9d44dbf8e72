//! Finite-dimensional supercommutative superalgebras given by a graded basis
//! and structure constants, together with their elements.

mod constructors;
mod ideal;
mod map;
mod parse;

pub use constructors::{dual_super_numbers, grassmann, grassmann_named, quotient_by_ideal, tensor, tensor_coords, truncated_poly, DualNumbers, MonomialBasis, Quotient};
pub use ideal::{odd_ideal, SuperIdeal};
pub use map::AlgebraMap;
pub use parse::parse_element;

use std::collections::HashSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{self, Vector};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: u8) -> Parity {
        if b.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// True when moving an element of parity `self` past one of parity
    /// `other` costs a sign.
    pub fn koszul(self, other: Parity) -> bool {
        self.is_odd() && other.is_odd()
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() + rhs.bit())
    }
}

/// Koszul sign `(-1)^{|a||b|}` as a scalar.
pub fn koszul_sign(field: Field, a: Parity, b: Parity) -> Scalar {
    if a.koszul(b) {
        field.int(-1)
    } else {
        field.one()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperVectorSpace {
    labels: Vec<String>,
    parities: Vec<Parity>,
}

impl SuperVectorSpace {
    pub fn new(labels: Vec<String>, parities: Vec<Parity>) -> Result<SuperVectorSpace> {
        if labels.len() != parities.len() {
            return Err(Error::Dimension("labels and parities differ in length".into()));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::InvalidAlgebra(format!("duplicate basis label '{l}'")));
            }
        }
        Ok(SuperVectorSpace { labels, parities })
    }

    pub fn purely_odd(labels: &[&str]) -> Result<SuperVectorSpace> {
        SuperVectorSpace::new(labels.iter().map(|s| s.to_string()).collect(), vec![Parity::Odd; labels.len()])
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// `(d0 | d1)`
    pub fn dims(&self) -> (usize, usize) {
        let odd = self.parities.iter().filter(|p| p.is_odd()).count();
        (self.dim() - odd, odd)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parities[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

pub type SparseVec = Vec<(usize, Scalar)>;

static NEXT_UID: AtomicU64 = AtomicU64::new(1);

/// A supercommutative superalgebra with structure constants
/// `b_i * b_j = sum_k c[i][j][k] b_k`.
pub struct SuperAlgebra {
    uid: u64,
    field: Field,
    space: SuperVectorSpace,
    unit: Vector,
    table: Vec<Vec<SparseVec>>,
    factors: Option<(AlgebraRef, AlgebraRef)>,
}

pub type AlgebraRef = Arc<SuperAlgebra>;

impl fmt::Debug for SuperAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SuperAlgebra")
            .field("field", &self.field)
            .field("labels", &self.space.labels)
            .finish()
    }
}

impl SuperAlgebra {
    /// Builds and fully validates an algebra from a dense product callback.
    pub fn new(
        field: Field,
        space: SuperVectorSpace,
        unit: Vector,
        product: impl Fn(usize, usize) -> Vector,
    ) -> Result<AlgebraRef> {
        let alg = Self::from_product(field, space, unit, product);
        alg.validate()?;
        Ok(Arc::new(alg))
    }

    pub(crate) fn from_product(
        field: Field,
        space: SuperVectorSpace,
        unit: Vector,
        product: impl Fn(usize, usize) -> Vector,
    ) -> SuperAlgebra {
        let n = space.dim();
        let table = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        product(i, j)
                            .into_iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        SuperAlgebra::from_sparse(field, space, unit, table)
    }

    pub(crate) fn from_sparse(field: Field, space: SuperVectorSpace, unit: Vector, table: Vec<Vec<SparseVec>>) -> SuperAlgebra {
        SuperAlgebra { uid: NEXT_UID.fetch_add(1, Ordering::Relaxed), field, space, unit, table, factors: None }
    }

    pub(crate) fn with_factors(mut self, a: AlgebraRef, b: AlgebraRef) -> SuperAlgebra {
        self.factors = Some((a, b));
        self
    }

    /// Checks parity additivity, supercommutativity, associativity on all
    /// basis triples and the unit law.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        let f = self.field;
        if self.unit.len() != n {
            return Err(Error::InvalidAlgebra("unit has wrong length".into()));
        }
        for c in self.unit.iter() {
            if c.field() != f {
                return Err(Error::InvalidAlgebra("unit coefficient from another field".into()));
            }
        }
        for i in 0..n {
            for j in 0..n {
                for (k, c) in &self.table[i][j] {
                    if c.field() != f {
                        return Err(Error::InvalidAlgebra("structure constant from another field".into()));
                    }
                    if self.parity(*k) != self.parity(i) + self.parity(j) {
                        return Err(Error::InvalidAlgebra(format!(
                            "product {}*{} has a component on {} of the wrong parity",
                            self.label(i),
                            self.label(j),
                            self.label(*k)
                        )));
                    }
                }
                let ij = self.basis_product(i, j);
                let ji = self.basis_product(j, i);
                let sign = koszul_sign(f, self.parity(i), self.parity(j));
                if ij != linalg::scale(&sign, &ji) {
                    return Err(Error::InvalidAlgebra(format!(
                        "not supercommutative at ({}, {})",
                        self.label(i),
                        self.label(j)
                    )));
                }
            }
        }
        if !self.unit.iter().enumerate().all(|(k, c)| c.is_zero() || self.parity(k) == Parity::Even) {
            return Err(Error::InvalidAlgebra("unit is not even".into()));
        }
        for i in 0..n {
            let e = linalg::unit_vec(f, n, i);
            if self.mul_coords(&self.unit, &e) != e {
                return Err(Error::InvalidAlgebra(format!("unit law fails on {}", self.label(i))));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.basis_product(i, j);
                for k in 0..n {
                    let left = self.mul_coords(&ij, &linalg::unit_vec(f, n, k));
                    let jk = self.basis_product(j, k);
                    let right = self.mul_coords(&linalg::unit_vec(f, n, i), &jk);
                    if left != right {
                        return Err(Error::InvalidAlgebra(format!(
                            "not associative at ({}, {}, {})",
                            self.label(i),
                            self.label(j),
                            self.label(k)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn uid(&self) -> u64 {
        self.uid
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

    pub fn dims(&self) -> (usize, usize) {
        self.space.dims()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.space.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.space.labels
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.space.parities[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.space.index_of(label)
    }

    pub fn unit_coords(&self) -> &[Scalar] {
        &self.unit
    }

    /// The tensor factors, when the algebra was built by [`tensor`].
    pub fn factors(&self) -> Option<&(AlgebraRef, AlgebraRef)> {
        self.factors.as_ref()
    }

    pub fn structure_constants(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i][j]
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vector {
        let mut out = linalg::zero_vec(self.field, self.dim());
        for (k, c) in &self.table[i][j] {
            out[*k] = c.clone();
        }
        out
    }

    pub fn mul_coords(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        let mut out = linalg::zero_vec(self.field, self.dim());
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let ab = ai * bj;
                for (k, c) in &self.table[i][j] {
                    out[*k] += &(&ab * c);
                }
            }
        }
        out
    }

    /// Matrix (by rows) of `x -> a x`.
    pub fn left_mul_matrix(&self, a: &[Scalar]) -> Vec<Vector> {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.mul_coords(a, &linalg::unit_vec(self.field, n, j))).collect();
        linalg::transpose(&cols, n)
    }

    pub fn parity_of_coords(&self, a: &[Scalar]) -> Option<Parity> {
        let mut found = None;
        for (i, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match found {
                None => found = Some(self.parity(i)),
                Some(p) if p != self.parity(i) => return None,
                _ => {}
            }
        }
        Some(found.unwrap_or(Parity::Even))
    }

    pub fn part_coords(&self, a: &[Scalar], parity: Parity) -> Vector {
        a.iter()
            .enumerate()
            .map(|(i, c)| if self.parity(i) == parity { c.clone() } else { self.field.zero() })
            .collect()
    }

    pub fn basis_indices(&self, parity: Parity) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.parity(i) == parity).collect()
    }

    pub fn is_purely_even(&self) -> bool {
        self.space.parities.iter().all(|p| *p == Parity::Even)
    }
}

/// Constructors that hand out [`Element`]s need the shared handle.
pub trait AlgebraHandle {
    fn element(&self, coords: Vector) -> Result<Element>;
    fn basis(&self, i: usize) -> Element;
    fn basis_by_label(&self, label: &str) -> Result<Element>;
    fn zero(&self) -> Element;
    fn one(&self) -> Element;
    fn scalar(&self, s: &Scalar) -> Element;
    fn int(&self, n: i64) -> Element;
}

impl AlgebraHandle for AlgebraRef {
    fn element(&self, coords: Vector) -> Result<Element> {
        if coords.len() != self.dim() {
            return Err(Error::Dimension(format!("expected {} coordinates, got {}", self.dim(), coords.len())));
        }
        Ok(Element { alg: self.clone(), coords })
    }

    fn basis(&self, i: usize) -> Element {
        Element { alg: self.clone(), coords: linalg::unit_vec(self.field, self.dim(), i) }
    }

    fn basis_by_label(&self, label: &str) -> Result<Element> {
        let i = self
            .index_of(label)
            .ok_or_else(|| Error::Parse(format!("unknown basis label '{label}'")))?;
        Ok(self.basis(i))
    }

    fn zero(&self) -> Element {
        Element { alg: self.clone(), coords: linalg::zero_vec(self.field, self.dim()) }
    }

    fn one(&self) -> Element {
        Element { alg: self.clone(), coords: self.unit.clone() }
    }

    fn scalar(&self, s: &Scalar) -> Element {
        Element { alg: self.clone(), coords: linalg::scale(s, &self.unit) }
    }

    fn int(&self, n: i64) -> Element {
        self.scalar(&self.field.int(n))
    }
}

/// An element of a specific algebra. Arithmetic between elements of
/// different algebras is an error ([`Element::try_mul`]) or a panic through
/// the operator impls.
#[derive(Clone)]
pub struct Element {
    alg: AlgebraRef,
    coords: Vector,
}

impl PartialEq for Element {
    fn eq(&self, other: &Element) -> bool {
        self.alg.uid == other.alg.uid && self.coords == other.coords
    }
}

impl Eq for Element {}

impl Element {
    pub fn algebra(&self) -> &AlgebraRef {
        &self.alg
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vector {
        self.coords
    }

    pub fn coord(&self, i: usize) -> &Scalar {
        &self.coords[i]
    }

    pub fn same_algebra(&self, other: &Element) -> bool {
        self.alg.uid == other.alg.uid
    }

    fn check(&self, other: &Element) -> Result<()> {
        if self.same_algebra(other) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn try_mul(&self, other: &Element) -> Result<Element> {
        self.check(other)?;
        Ok(Element { alg: self.alg.clone(), coords: self.alg.mul_coords(&self.coords, &other.coords) })
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        self.check(other)?;
        Ok(Element { alg: self.alg.clone(), coords: linalg::add(&self.coords, &other.coords) })
    }

    pub fn try_sub(&self, other: &Element) -> Result<Element> {
        self.check(other)?;
        Ok(Element { alg: self.alg.clone(), coords: linalg::sub(&self.coords, &other.coords) })
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        Element { alg: self.alg.clone(), coords: linalg::scale(c, &self.coords) }
    }

    pub fn is_zero(&self) -> bool {
        linalg::is_zero_vec(&self.coords)
    }

    /// Parity of a homogeneous element; zero counts as even. `None` for
    /// inhomogeneous elements.
    pub fn parity(&self) -> Option<Parity> {
        self.alg.parity_of_coords(&self.coords)
    }

    pub fn is_even(&self) -> bool {
        self.parity() == Some(Parity::Even)
    }

    pub fn is_odd(&self) -> bool {
        self.is_zero() || self.parity() == Some(Parity::Odd)
    }

    pub fn part(&self, p: Parity) -> Element {
        Element { alg: self.alg.clone(), coords: self.alg.part_coords(&self.coords, p) }
    }

    pub fn even_part(&self) -> Element {
        self.part(Parity::Even)
    }

    pub fn odd_part(&self) -> Element {
        self.part(Parity::Odd)
    }

    pub fn pow(&self, n: u32) -> Element {
        let mut acc = self.alg.one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse, found by a linear solve `a x = 1`.
    pub fn inverse(&self) -> Option<Element> {
        if self.is_zero() {
            return None;
        }
        if let Some(y) = self.unipotent_inverse() {
            return Some(y);
        }
        let m = self.alg.left_mul_matrix(&self.coords);
        let x = linalg::solve(&m, &self.alg.unit, self.alg.dim(), self.alg.field)?;
        Some(Element { alg: self.alg.clone(), coords: x })
    }

    /// `c^{-1} sum_k t^k` with `t = 1 - x/c` when `x - c` is nilpotent, where
    /// `c` is the trace of left multiplication divided by the dimension.
    fn unipotent_inverse(&self) -> Option<Element> {
        let alg = &self.alg;
        let f = alg.field;
        let n = alg.dim();
        let mut trace = f.zero();
        for (i, xi) in self.coords.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for k in 0..n {
                for (m, c) in &alg.table[i][k] {
                    if *m == k {
                        trace += &(xi * c);
                    }
                }
            }
        }
        let c = &trace * &f.int(n as i64).inv()?;
        let cinv = c.inv()?;
        let one = Element { alg: alg.clone(), coords: alg.unit.clone() };
        let t = &one - &self.scale(&cinv);
        let mut sum = one;
        let mut power = t.clone();
        for _ in 0..=n {
            if power.is_zero() {
                return Some(sum.scale(&cinv));
            }
            sum = &sum + &power;
            power = &power * &t;
        }
        None
    }

    /// The component along basis element `i`, as a scalar.
    pub fn coefficient(&self, label: &str) -> Option<&Scalar> {
        self.alg.index_of(label).map(|i| &self.coords[i])
    }

    /// Scalar `c` with `self = c * 1` when the element is a scalar multiple
    /// of the unit.
    pub fn as_scalar(&self) -> Option<Scalar> {
        let f = self.alg.field;
        let (piv, u) = self.alg.unit.iter().enumerate().find(|(_, c)| !c.is_zero())?;
        let c = &self.coords[piv] * &u.inv()?;
        if linalg::scale(&c, &self.alg.unit) == self.coords {
            Some(c)
        } else if self.is_zero() {
            Some(f.zero())
        } else {
            None
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_coords(self.alg.labels(), &self.coords))
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Renders `sum c_i label_i` deterministically in basis order, e.g.
/// `1 - a1*a2`.
pub fn format_coords(labels: &[String], coords: &[Scalar]) -> String {
    let mut out = String::new();
    for (label, c) in labels.iter().zip(coords) {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = if neg { -c } else { c.clone() };
        let body = if label == "1" {
            mag.to_string()
        } else if mag.is_one() {
            label.clone()
        } else {
            format!("{mag}*{label}")
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl<'a> Add<&'a Element> for &'a Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.try_add(rhs).expect("adding elements of different algebras")
    }
}

impl<'a> Sub<&'a Element> for &'a Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.try_sub(rhs).expect("subtracting elements of different algebras")
    }
}

impl<'a> Mul<&'a Element> for &'a Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.try_mul(rhs).expect("multiplying elements of different algebras")
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&-self.alg.field.one())
    }
}
