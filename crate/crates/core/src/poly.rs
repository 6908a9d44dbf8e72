//! Multivariate Laurent polynomials over a [`Field`], a small commutative
//! ring abstraction, and dense matrices over such rings.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{AlgebraHandle, Element};
use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// What the symbolic checks need from a commutative coefficient ring.
pub trait CommRing: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    fn scaled(&self, c: &Scalar) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn try_inverse(&self) -> Option<Self>;
}

impl CommRing for Scalar {
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn one_like(&self) -> Self {
        self.field().one()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn scaled(&self, c: &Scalar) -> Self {
        self * c
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn try_inverse(&self) -> Option<Self> {
        self.inv()
    }
}

/// Only meaningful on the even part of a supercommutative algebra, where
/// the product is commutative.
impl CommRing for Element {
    fn zero_like(&self) -> Self {
        self.algebra().zero()
    }
    fn one_like(&self) -> Self {
        self.algebra().one()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn scaled(&self, c: &Scalar) -> Self {
        self.scale(c)
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn try_inverse(&self) -> Option<Self> {
        self.inverse()
    }
}

/// A Laurent polynomial in `nvars` variables; exponents may be negative.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Vec<i32>, Scalar>,
}

impl Poly {
    pub fn zero(field: Field, nvars: usize) -> Poly {
        Poly { field, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(c: Scalar, nvars: usize) -> Poly {
        let mut p = Poly::zero(c.field(), nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(field: Field, nvars: usize) -> Poly {
        Poly::constant(field.one(), nvars)
    }

    pub fn var(field: Field, nvars: usize, i: usize) -> Poly {
        Poly::monomial(field.one(), {
            let mut e = vec![0; nvars];
            e[i] = 1;
            e
        })
    }

    pub fn monomial(c: Scalar, exps: Vec<i32>) -> Poly {
        let mut p = Poly::zero(c.field(), exps.len());
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms.get(&vec![0; self.nvars]).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn coefficient(&self, exps: &[i32]) -> Scalar {
        self.terms.get(exps).cloned().unwrap_or_else(|| self.field.zero())
    }

    fn add_term(&mut self, e: Vec<i32>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(x) => {
                *x += &c;
                if x.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly { field: self.field, nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        let mut p = Poly::zero(self.field, self.nvars);
        for (e, c) in &self.terms {
            p.add_term(e.clone(), c * s);
        }
        p
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut p = Poly::zero(self.field, self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, c1 * c2);
            }
        }
        p
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one(self.field, self.nvars);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Units of the Laurent ring: nonzero monomials.
    pub fn inverse(&self) -> Option<Poly> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        Some(Poly::monomial(c.inv()?, e.iter().map(|x| -x).collect()))
    }

    /// Substitutes ring values for the variables. Negative exponents need
    /// invertible values.
    pub fn eval<T: CommRing>(&self, vals: &[T], one: &T) -> Option<T> {
        let mut acc = one.zero_like();
        let mut inverses: Vec<Option<T>> = vec![None; vals.len()];
        for (e, c) in &self.terms {
            let mut term = one.scaled(c);
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let base = if k > 0 {
                    vals[i].clone()
                } else {
                    if inverses[i].is_none() {
                        inverses[i] = Some(vals[i].try_inverse()?);
                    }
                    inverses[i].clone().unwrap()
                };
                for _ in 0..k.unsigned_abs() {
                    term = term.times(&base);
                }
            }
            acc = acc.plus(&term);
        }
        Some(acc)
    }

    /// Renders with the given variable names, highest terms first.
    pub fn display(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (e, c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("{}^{}", names[i], k)),
                }
            }
            let neg = c.is_negative();
            let mag = if neg { -c } else { c.clone() };
            let body = if factors.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                factors.join("*")
            } else {
                format!("{mag}*{}", factors.join("*"))
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
        out
    }

    /// Parses `+ - * ^` expressions over named variables; exponents may be
    /// negative, e.g. `t1^-1`.
    pub fn parse(text: &str, names: &[String], field: Field) -> Result<Poly> {
        let mut p = PolyParser { chars: text.chars().collect(), pos: 0, names, field };
        let out = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(out)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.display(&names))
    }
}

impl CommRing for Poly {
    fn zero_like(&self) -> Self {
        Poly::zero(self.field, self.nvars)
    }
    fn one_like(&self) -> Self {
        Poly::one(self.field, self.nvars)
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
    fn scaled(&self, c: &Scalar) -> Self {
        self.scale(c)
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn try_inverse(&self) -> Option<Self> {
        self.inverse()
    }
}

struct PolyParser<'a> {
    chars: Vec<char>,
    pos: usize,
    names: &'a [String],
    field: Field,
}

impl PolyParser<'_> {
    fn peek(&mut self) -> Option<char> {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
        self.chars.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in polynomial '{}'", self.pos, self.chars.iter().collect::<String>()))
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero(self.field, self.names.len());
        let mut first = true;
        loop {
            let neg = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    false
                }
                Some('-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => return Ok(acc),
            };
            first = false;
            let t = self.term()?;
            acc = if neg { acc.sub(&t) } else { acc.add(&t) };
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = acc.mul(&self.power()?);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let n: u32 = self.chars[start..self.pos]
            .iter()
            .collect::<String>()
            .parse()
            .map_err(|_| self.err("expected exponent"))?;
        let base = if neg { base.inverse().ok_or_else(|| self.err("negative power of a non-monomial"))? } else { base };
        Ok(base.pow(n))
    }

    fn atom(&mut self) -> Result<Poly> {
        let n = self.names.len();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.chars.len() && (self.chars[self.pos].is_ascii_digit() || self.chars[self.pos] == '/') {
                    self.pos += 1;
                }
                let text: String = self.chars[start..self.pos].iter().collect();
                Ok(Poly::constant(self.field.parse_scalar(&text)?, n))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len() && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                let i = self
                    .names
                    .iter()
                    .position(|x| *x == name)
                    .ok_or_else(|| self.err(&format!("unknown variable '{name}'")))?;
                Ok(Poly::var(self.field, n, i))
            }
            _ => Err(self.err("expected a number, variable or '('")),
        }
    }
}

/// A dense `rows x cols` matrix over a commutative ring.
#[derive(Clone, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[T]> = self.data.chunks(self.cols.max(1)).collect();
        write!(f, "{rows:?}")
    }
}

impl<T: CommRing> Mat<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Mat<T>> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        Ok(Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Mat<T> {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Mat { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, x: &T) -> Mat<T> {
        Mat { rows, cols, data: vec![x.clone(); rows * cols] }
    }

    pub fn identity(n: usize, one: &T) -> Mat<T> {
        let zero = one.zero_like();
        Mat::from_fn(n, n, |i, j| if i == j { one.clone() } else { zero.clone() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: T) {
        self.data[i * self.cols + j] = x;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<U: CommRing>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<U: CommRing>(&self, f: impl Fn(&T) -> Option<U>) -> Option<Mat<U>> {
        Some(Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect::<Option<Vec<_>>>()? })
    }

    pub fn mul(&self, o: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, o.rows, "matrix shapes do not compose");
        let zero = self.data.first().or(o.data.first()).map(T::zero_like);
        Mat::from_fn(self.rows, o.cols, |i, j| {
            let mut acc = zero.clone().expect("nonempty matrix");
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero_elem() {
                    continue;
                }
                let b = o.get(k, j);
                if !b.is_zero_elem() {
                    acc = acc.plus(&a.times(b));
                }
            }
            acc
        })
    }

    pub fn add(&self, o: &Mat<T>) -> Mat<T> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.plus(b)).collect() }
    }

    pub fn sub(&self, o: &Mat<T>) -> Mat<T> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.minus(b)).collect() }
    }

    pub fn scale_by(&self, r: &T) -> Mat<T> {
        self.map(|x| x.times(r))
    }

    pub fn scale(&self, c: &Scalar) -> Mat<T> {
        self.map(|x| x.scaled(c))
    }

    pub fn transpose(&self) -> Mat<T> {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero_elem)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.minus(&x.one_like()).is_zero_elem()
                    } else {
                        x.is_zero_elem()
                    }
                })
            })
    }

    /// Gauss-Jordan elimination choosing unit pivots; returns the inverse
    /// and the determinant, or `None` if no unit pivot is available.
    pub fn inverse_and_det(&self) -> Option<(Mat<T>, T)> {
        let n = self.rows;
        if n != self.cols {
            return None;
        }
        if n == 0 {
            return None;
        }
        let one = self.data[0].one_like();
        let mut a = self.clone();
        let mut inv = Mat::identity(n, &one);
        let mut det = one.clone();
        for c in 0..n {
            let (p, pinv) = (c..n).find_map(|r| a.get(r, c).try_inverse().map(|i| (r, i)))?;
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                    inv.data.swap(p * n + j, c * n + j);
                }
                det = det.negate();
            }
            det = det.times(a.get(c, c));
            for j in 0..n {
                let x = a.get(c, j).times(&pinv);
                a.set(c, j, x);
                let y = inv.get(c, j).times(&pinv);
                inv.set(c, j, y);
            }
            for r in 0..n {
                if r == c {
                    continue;
                }
                let factor = a.get(r, c).clone();
                if factor.is_zero_elem() {
                    continue;
                }
                for j in 0..n {
                    let x = a.get(r, j).minus(&factor.times(a.get(c, j)));
                    a.set(r, j, x);
                    let y = inv.get(r, j).minus(&factor.times(inv.get(c, j)));
                    inv.set(r, j, y);
                }
            }
        }
        Some((inv, det))
    }

    pub fn inverse(&self) -> Option<Mat<T>> {
        self.inverse_and_det().map(|x| x.0)
    }

    pub fn commutator(&self, o: &Mat<T>) -> Mat<T> {
        self.mul(o).sub(&o.mul(self))
    }
}

impl Mat<Scalar> {
    pub fn lift<T: CommRing>(&self, one: &T) -> Mat<T> {
        self.map(|c| one.scaled(c))
    }
}

/// Expresses ring-valued vectors in a fixed basis of scalar vectors
/// `b_1..b_k ⊆ K^N`, by reading pivot coordinates of an echelon form.
#[derive(Clone, Debug)]
pub struct BasisSolver {
    basis: Vec<crate::linalg::Vector>,
    pivots: Vec<usize>,
    /// echelon row `r` equals `sum_k change[r][k] b_k`
    change: Vec<crate::linalg::Vector>,
}

impl BasisSolver {
    pub fn new(field: Field, ambient: usize, basis: Vec<crate::linalg::Vector>) -> Result<BasisSolver> {
        let k = basis.len();
        let aug: Vec<crate::linalg::Vector> = basis
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let mut r = b.clone();
                r.extend(crate::linalg::unit_vec(field, k, i));
                r
            })
            .collect();
        let (rows, pivots) = crate::linalg::rref(aug, ambient + k);
        if pivots.len() < k || pivots.iter().any(|&p| p >= ambient) {
            return Err(Error::Dimension("basis vectors are linearly dependent".into()));
        }
        let change = rows.iter().map(|r| r[ambient..].to_vec()).collect();
        Ok(BasisSolver { basis, pivots, change })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coefficients of `x` in the basis, or `None` when `x` is not in the
    /// span over the coefficient ring.
    pub fn coords<T: CommRing>(&self, x: &[T]) -> Option<Vec<T>> {
        let zero = x.first()?.zero_like();
        let mut c = vec![zero.clone(); self.basis.len()];
        for (r, &p) in self.pivots.iter().enumerate() {
            if x[p].is_zero_elem() {
                continue;
            }
            for (k, m) in self.change[r].iter().enumerate() {
                if !m.is_zero() {
                    c[k] = c[k].plus(&x[p].scaled(m));
                }
            }
        }
        let mut residual: Vec<T> = x.to_vec();
        for (ck, b) in c.iter().zip(&self.basis) {
            if ck.is_zero_elem() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    residual[j] = residual[j].minus(&ck.scaled(bj));
                }
            }
        }
        if residual.iter().all(T::is_zero_elem) {
            Some(c)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn laurent_arithmetic_and_parsing() {
        let q = Field::Rational;
        let n = names(&["t", "s"]);
        let p = Poly::parse("(t + s)^2 - t^2", &n, q).unwrap();
        assert_eq!(p.display(&n), "2*t*s + s^2");
        let u = Poly::parse("2*t^-1*s", &n, q).unwrap();
        let w = u.inverse().unwrap();
        assert_eq!(u.mul(&w), Poly::one(q, 2));
        assert!(p.inverse().is_none());
        assert!(Poly::parse("x", &n, q).is_err());
        let v = p.eval(&[q.int(1), q.int(3)], &q.one()).unwrap();
        assert_eq!(v, q.int(15));
    }

    #[test]
    fn matrix_inverse_over_laurent_ring() {
        let q = Field::Rational;
        let n = names(&["t", "s"]);
        let p = |s: &str| Poly::parse(s, &n, q).unwrap();
        let m = Mat::from_rows(vec![vec![p("t"), p("s")], vec![p("0"), p("1")]]).unwrap();
        let (inv, det) = m.inverse_and_det().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert_eq!(det, p("t"));
        let singular = Mat::from_rows(vec![vec![p("t + 1"), p("0")], vec![p("0"), p("1")]]).unwrap();
        assert!(singular.inverse().is_none());
    }
}
