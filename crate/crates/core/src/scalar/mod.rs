//! Exact scalars: the rationals, prime fields and the rational function
//! field `Q(t)`.
//!
//! Every value carries its field tag. The checked methods (`try_add`, ...)
//! report [`Error::FieldMismatch`]; the operator impls on references panic on
//! mismatch, since mixing fields inside one structure is a construction bug.

mod parse;
pub mod poly;
pub mod ratfun;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub use poly::Poly;
pub use ratfun::RatFun;

use crate::error::{Error, Result};

/// The base field all structure constants of an object live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    /// `GF(p)` for a prime `p < 2^32`.
    Prime(u64),
    /// `Q(t)`.
    RatFun,
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if is_prime(p) && p < (1 << 32) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Prime(p) => p,
            _ => 0,
        }
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::zero()),
            Field::Prime(p) => Scalar::Prime { value: 0, modulus: p },
            Field::RatFun => Scalar::RatFun(RatFun::zero()),
        }
    }

    pub fn one(self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(self, n: &BigInt) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n.mod_floor_u64(p);
                Scalar::Prime { value: r, modulus: p }
            }
            Field::RatFun => Scalar::RatFun(RatFun::constant(BigRational::from_integer(n.clone()))),
        }
    }

    /// `num / den` mapped into the field.
    pub fn from_ratio(self, num: i64, den: i64) -> Result<Scalar> {
        self.from_int(num).try_div(&self.from_int(den))
    }

    pub fn from_rational(self, q: &BigRational) -> Result<Scalar> {
        self.from_bigint(q.numer()).try_div(&self.from_bigint(q.denom()))
    }

    /// The indeterminate `t`; only defined for `Q(t)`.
    pub fn var(self) -> Result<Scalar> {
        match self {
            Field::RatFun => Ok(Scalar::RatFun(RatFun::var())),
            other => Err(Error::Unsupported(format!("no indeterminate in {other}"))),
        }
    }

    /// Parses a whitespace-free literal such as `-3/2`, `t/2` or `(t^2-1)/(t+1)`.
    pub fn parse(self, text: &str) -> Result<Scalar> {
        parse::parse_scalar(self, text)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rationals"),
            Field::Prime(p) => write!(f, "gf {p}"),
            Field::RatFun => write!(f, "ratfun"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

trait ModFloor {
    fn mod_floor_u64(&self, p: u64) -> u64;
}

impl ModFloor for BigInt {
    fn mod_floor_u64(&self, p: u64) -> u64 {
        let m = BigInt::from(p);
        let r = ((self % &m) + &m) % &m;
        r.to_u64().expect("residue fits in u64")
    }
}

/// An exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { value: u64, modulus: u64 },
    RatFun(RatFun),
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Prime { modulus, .. } => Field::Prime(*modulus),
            Scalar::RatFun(_) => Field::RatFun,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
            Scalar::RatFun(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Prime { value, .. } => *value == 1,
            Scalar::RatFun(r) => r.is_one(),
        }
    }

    fn mismatch(&self, other: &Scalar) -> Error {
        Error::FieldMismatch(self.field(), other.field())
    }

    pub fn try_add(&self, rhs: &Scalar) -> Result<Scalar> {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a + b)),
            (Scalar::Prime { value: a, modulus: p }, Scalar::Prime { value: b, modulus: q }) if p == q => {
                Ok(Scalar::Prime {
                    value: ((*a as u128 + *b as u128) % *p as u128) as u64,
                    modulus: *p,
                })
            }
            (Scalar::RatFun(a), Scalar::RatFun(b)) => Ok(Scalar::RatFun(a.add(b))),
            _ => Err(self.mismatch(rhs)),
        }
    }

    pub fn try_sub(&self, rhs: &Scalar) -> Result<Scalar> {
        self.try_add(&rhs.neg_ref())
    }

    pub fn try_mul(&self, rhs: &Scalar) -> Result<Scalar> {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a * b)),
            (Scalar::Prime { value: a, modulus: p }, Scalar::Prime { value: b, modulus: q }) if p == q => {
                Ok(Scalar::Prime {
                    value: ((*a as u128 * *b as u128) % *p as u128) as u64,
                    modulus: *p,
                })
            }
            (Scalar::RatFun(a), Scalar::RatFun(b)) => Ok(Scalar::RatFun(a.mul(b))),
            _ => Err(self.mismatch(rhs)),
        }
    }

    pub fn try_div(&self, rhs: &Scalar) -> Result<Scalar> {
        if self.field() != rhs.field() {
            return Err(self.mismatch(rhs));
        }
        self.try_mul(&rhs.inv()?)
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Prime { value, modulus } => Scalar::Prime {
                value: mod_pow(*value, *modulus - 2, *modulus),
                modulus: *modulus,
            },
            Scalar::RatFun(r) => Scalar::RatFun(r.inv()?),
        })
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Prime { value, modulus } => Scalar::Prime {
                value: (*modulus - *value) % *modulus,
                modulus: *modulus,
            },
            Scalar::RatFun(r) => Scalar::RatFun(r.neg()),
        }
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        let mut acc = self.field().one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Specialises `t := x` in an element of `Q(t)`; identity on `Q`.
    ///
    /// Returns `None` if a denominator vanishes at `x` or the scalar lives in
    /// a prime field.
    pub fn eval_at(&self, x: &BigRational) -> Option<Scalar> {
        match self {
            Scalar::Rational(_) => Some(self.clone()),
            Scalar::Prime { .. } => None,
            Scalar::RatFun(r) => r.eval(x).map(Scalar::Rational),
        }
    }

    /// Coerces a rational constant into `field` (used when a value computed
    /// over `Q` is compared against one computed elsewhere).
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Rational(q) => Some(q.clone()),
            Scalar::RatFun(r) => r.as_constant(),
            Scalar::Prime { .. } => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Prime { value, .. } => write!(f, "{value}"),
            Scalar::RatFun(r) => write!(f, "{r}"),
        }
    }
}

fn expect_same<T>(op: &str, r: Result<T>) -> T {
    match r {
        Ok(v) => v,
        Err(e) => panic!("scalar {op}: {e}"),
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        expect_same("add", self.try_add(rhs))
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        expect_same("sub", self.try_sub(rhs))
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        expect_same("mul", self.try_mul(rhs))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if rhs.is_zero() {
            return;
        }
        // in-place for the common rational case
        match (&mut *self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => *a += b,
            _ => *self = &*self + rhs,
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        if rhs.is_zero() {
            return;
        }
        match (&mut *self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => *a -= b,
            _ => *self = &*self - rhs,
        }
    }
}

/// Converts a rational to `f64`-free text; handy for JSON output.
pub fn rational_to_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_sum() {
        let f = Field::Rational;
        let a = f.from_ratio(1, 2).unwrap();
        let b = f.from_ratio(1, 3).unwrap();
        assert_eq!(&a + &b, f.from_ratio(5, 6).unwrap());
    }

    #[test]
    fn prime_inverse() {
        let f = Field::prime(5).unwrap();
        assert_eq!(f.from_int(2).inv().unwrap(), f.from_int(3));
        assert_eq!(f.from_int(-1), f.from_int(4));
    }

    #[test]
    fn ratfun_reduces() {
        let f = Field::RatFun;
        let t = f.var().unwrap();
        let one = f.one();
        let num = &(&t * &t) - &one;
        let den = &t - &one;
        assert_eq!(num.try_div(&den).unwrap(), &t + &one);
    }

    #[test]
    fn errors() {
        let q = Field::Rational.one();
        let p = Field::prime(7).unwrap().one();
        assert!(matches!(q.try_add(&p), Err(Error::FieldMismatch(..))));
        assert_eq!(Field::Rational.zero().inv(), Err(Error::DivisionByZero));
        assert_eq!(Field::prime(9), Err(Error::NotPrime(9)));
    }

    #[test]
    fn display_round_trips_through_parse() {
        let f = Field::RatFun;
        for s in ["t/2", "(t^2-1)/(t+3)", "-3/4", "2*t-1", "1/(t)"] {
            let v = f.parse(s).unwrap();
            assert_eq!(f.parse(&v.to_string()).unwrap(), v, "{s}");
        }
    }

    #[test]
    fn evaluation_specialises_t() {
        let f = Field::RatFun;
        let v = f.parse("(t^2+1)/(t-2)").unwrap();
        let x = BigRational::new(3.into(), 1.into());
        assert_eq!(v.eval_at(&x), Some(Field::Rational.from_int(10)));
        assert_eq!(v.eval_at(&BigRational::from_integer(2.into())), None);
    }
}
