//! Exact scalars: big rationals or residues modulo an odd prime.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The ground field. Characteristic 2 is rejected everywhere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    pub fn prime(p: u32) -> Result<Field> {
        if p == 2 {
            return Err(Error::Field("characteristic 2 is not supported".into()));
        }
        if p < 2 || !is_prime(p) {
            return Err(Error::Field(format!("{p} is not an odd prime")));
        }
        if p > 46_341 {
            return Err(Error::Field(format!("prime {p} too large for u32 residues")));
        }
        Ok(Field::Prime(p))
    }

    /// Parses `q`, `Q`, `p=5` or a bare prime.
    pub fn parse(s: &str) -> Result<Field> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") || s.eq_ignore_ascii_case("rational") {
            return Ok(Field::Rational);
        }
        let digits = s.strip_prefix("p=").or_else(|| s.strip_prefix("F")).unwrap_or(s);
        let p: u32 = digits
            .parse()
            .map_err(|_| Error::Field(format!("unknown field descriptor '{s}'")))?;
        Field::prime(p)
    }

    pub fn characteristic(self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        self.int(0)
    }

    pub fn one(self) -> Scalar {
        self.int(1)
    }

    pub fn int(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::P(n.rem_euclid(p as i64) as u32, p),
        }
    }

    pub fn ratio(self, num: i64, den: i64) -> Result<Scalar> {
        let d = self.int(den);
        let inv = d
            .inv()
            .ok_or_else(|| Error::Field(format!("denominator {den} vanishes in {self}")))?;
        Ok(self.int(num) * inv)
    }

    /// Parses an exact scalar such as `-3`, `1/2`.
    pub fn parse_scalar(self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad scalar '{s}'"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                self.big_ratio(n, d).ok_or_else(bad)
            }
            None => {
                let n: BigInt = s.parse().map_err(|_| bad())?;
                self.big_ratio(n, BigInt::one()).ok_or_else(bad)
            }
        }
    }

    fn big_ratio(self, n: BigInt, d: BigInt) -> Option<Scalar> {
        match self {
            Field::Rational => Some(Scalar::Q(BigRational::new(n, d))),
            Field::Prime(p) => {
                let pb = BigInt::from(p);
                let reduce = |x: BigInt| -> u32 {
                    let r = ((x % &pb) + &pb) % &pb;
                    r.to_string().parse().unwrap()
                };
                let num = Scalar::P(reduce(n), p);
                let den = Scalar::P(reduce(d), p);
                den.inv().map(|i| num * i)
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of a [`Field`]. Mixing fields in one operation is a logic
/// error and panics; algebras check field agreement at construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    P(u32, u32),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::P(_, p) => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::P(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::P(v, _) => *v == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Q(q) => Scalar::Q(q.recip()),
            Scalar::P(v, p) => Scalar::P(pow_mod(*v as u64, (*p - 2) as u64, *p as u64) as u32, *p),
        })
    }

    /// Negative rationals and nothing else; residues are never negative.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_negative(),
            Scalar::P(..) => false,
        }
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn mismatch() -> ! {
    panic!("scalar field mismatch")
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::P(a, p), Scalar::P(b, q)) if p == q => Scalar::P(((*a as u64 + *b as u64) % *p as u64) as u32, *p),
            _ => mismatch(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a - b),
            (Scalar::P(a, p), Scalar::P(b, q)) if p == q => {
                Scalar::P(((*a as u64 + *p as u64 - *b as u64) % *p as u64) as u32, *p)
            }
            _ => mismatch(),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::P(a, p), Scalar::P(b, q)) if p == q => Scalar::P(((*a as u64 * *b as u64) % *p as u64) as u32, *p),
            _ => mismatch(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::P(a, p) => Scalar::P((*p - *a) % *p, *p),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::P(v, _) => write!(f, "{v}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_characteristic_two() {
        assert!(Field::prime(2).is_err());
        assert!(Field::parse("p=2").is_err());
        assert!(Field::parse("p=9").is_err());
        assert_eq!(Field::parse("p=5").unwrap(), Field::Prime(5));
        assert_eq!(Field::parse("q").unwrap(), Field::Rational);
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(5).unwrap();
        let half = f.ratio(1, 2).unwrap();
        assert_eq!(&half * &f.int(2), f.one());
        assert_eq!(f.int(-1), f.int(4));
        assert_eq!(f.int(3).inv().unwrap(), f.int(2));
        assert!(f.ratio(1, 5).is_err());
    }

    #[test]
    fn rational_parsing_and_display() {
        let q = Field::Rational;
        let x = q.parse_scalar("-6/4").unwrap();
        assert_eq!(x.to_string(), "-3/2");
        assert_eq!(q.parse_scalar("7").unwrap().to_string(), "7");
        assert!(q.parse_scalar("1/0").is_err());
        let f3 = Field::prime(3).unwrap();
        assert_eq!(f3.parse_scalar("1/2").unwrap(), f3.int(2));
    }
}
