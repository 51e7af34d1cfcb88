//! Exact integer and rational arithmetic.
//!
//! Integers are [`num_bigint::BigInt`]. [`Rational`] is kept in lowest terms
//! with a positive denominator at all times, so equality is structural.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("square root of negative integer {0}")]
    NegativeSqrt(BigInt),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse {0:?} as a rational number")]
    Parse(String),
}

/// Floor square root of a nonnegative integer and whether it is exact.
pub fn integer_sqrt(n: &BigInt) -> Result<(BigInt, bool), ExactError> {
    if n.is_negative() {
        return Err(ExactError::NegativeSqrt(n.clone()));
    }
    let root = n.sqrt();
    let exact = &root * &root == *n;
    Ok((root, exact))
}

/// Nonnegative square root of `n` if `n` is a perfect square (0 included).
pub fn is_perfect_square(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    // Squares are 0, 1, 4 or 9 mod 16.
    let low = n.iter_u32_digits().next().unwrap_or(0) & 15;
    if !matches!(low, 0 | 1 | 4 | 9) {
        return None;
    }
    match integer_sqrt(n) {
        Ok((root, true)) => Some(root),
        _ => None,
    }
}

/// Greatest common divisor of a list of integers (always nonnegative).
pub fn gcd_all<'a, I>(values: I) -> BigInt
where
    I: IntoIterator<Item = &'a BigInt>,
{
    values.into_iter().fold(BigInt::zero(), |acc, v| acc.gcd(v))
}

/// A reduced fraction `num/den` with `den > 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational {
    num: BigInt,
    den: BigInt,
}

impl Rational {
    pub fn new(num: BigInt, den: BigInt) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        Ok(Self::reduced(num, den))
    }

    /// Caller guarantees `den != 0`.
    fn reduced(num: BigInt, den: BigInt) -> Self {
        debug_assert!(!den.is_zero());
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num / &g, den / &g)
        };
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        Rational { num, den }
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational {
            num: n.into(),
            den: BigInt::one(),
        }
    }

    /// Shorthand for small literals in code and tests. Panics if `den == 0`.
    pub fn from_i64s(num: i64, den: i64) -> Self {
        Self::new(num.into(), den.into()).expect("nonzero denominator")
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn into_parts(self) -> (BigInt, BigInt) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.num.clone())
    }

    pub fn abs(&self) -> Self {
        Rational {
            num: self.num.abs(),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Self, ExactError> {
        Ok(self * &rhs.recip()?)
    }

    pub fn pow(&self, exp: u32) -> Self {
        // Powers of a reduced fraction stay reduced.
        Rational {
            num: num_traits::pow(self.num.clone(), exp as usize),
            den: num_traits::pow(self.den.clone(), exp as usize),
        }
    }

    pub fn square(&self) -> Self {
        self.pow(2)
    }

    /// Nonnegative rational square root, present iff numerator and
    /// denominator are both perfect squares.
    pub fn sqrt(&self) -> Option<Self> {
        let num = is_perfect_square(&self.num)?;
        let den = is_perfect_square(&self.den)?;
        Some(Rational { num, den })
    }

    /// Lossy conversion for display and plotting only.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        match (self.num.to_f64(), self.den.to_f64()) {
            (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
            _ => {
                // Scale both parts down to keep the quotient finite.
                let shift = self.num.bits().max(self.den.bits()).saturating_sub(1000);
                let n = (&self.num >> shift).to_f64().unwrap_or(f64::NAN);
                let d = (&self.den >> shift).to_f64().unwrap_or(f64::NAN);
                n / d
            }
        }
    }
}

/// Nonnegative square root of a rational, if it is the square of a rational.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    x.sqrt()
}

impl Default for Rational {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Self::from_integer(n)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |part: &str| {
            BigInt::from_str(part.trim()).map_err(|_| ExactError::Parse(s.to_string()))
        };
        match s.split_once('/') {
            Some((n, d)) => Rational::new(parse(n)?, parse(d)?),
            None => Ok(Rational::from_integer(parse(s)?)),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Add<&Rational> for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        if self.den == rhs.den {
            return Rational::reduced(&self.num + &rhs.num, self.den.clone());
        }
        Rational::reduced(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl Sub<&Rational> for &Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        if self.den == rhs.den {
            return Rational::reduced(&self.num - &rhs.num, self.den.clone());
        }
        Rational::reduced(
            &self.num * &rhs.den - &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl Mul<&Rational> for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        Rational::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Panics on division by zero; use [`Rational::checked_div`] otherwise.
impl Div<&Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        self.checked_div(rhs).expect("rational division by zero")
    }
}

macro_rules! forward_binop {
    ($($imp:ident $method:ident),*) => {$(
        impl $imp<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }
        impl $imp<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                (&self).$method(rhs)
            }
        }
        impl $imp<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_binop!(Add add, Sub sub, Mul mul, Div div);

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl std::iter::Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

/// Decimal-string serde for `BigInt` fields.
pub mod bigint_string {
    use super::*;

    pub fn serialize<S: Serializer>(n: &BigInt, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(n)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(deserializer)?;
        BigInt::from_str(&s).map_err(serde::de::Error::custom)
    }
}

/// Sign of a big integer as -1, 0 or 1.
pub fn signum(n: &BigInt) -> i8 {
    match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn integer_sqrt_examples() {
        assert_eq!(integer_sqrt(&big(0)).unwrap(), (big(0), true));
        assert_eq!(integer_sqrt(&big(231361)).unwrap(), (big(481), true));
        assert_eq!(integer_sqrt(&big(2)).unwrap(), (big(1), false));
        assert!(matches!(
            integer_sqrt(&big(-1)),
            Err(ExactError::NegativeSqrt(_))
        ));
    }

    #[test]
    fn perfect_square_examples() {
        assert_eq!(is_perfect_square(&big(4)), Some(big(2)));
        assert_eq!(is_perfect_square(&big(-4)), None);
        assert_eq!(is_perfect_square(&big(10816)), Some(big(104)));
        assert_eq!(is_perfect_square(&big(0)), Some(big(0)));
        assert_eq!(is_perfect_square(&big(10817)), None);
    }

    #[test]
    fn rational_sqrt_examples() {
        let x = Rational::new(big(10816), big(26873856)).unwrap();
        assert_eq!(x, q("169/419904"));
        assert_eq!(rational_sqrt(&x), Some(q("13/648")));
        assert_eq!(rational_sqrt(&Rational::one()), Some(Rational::one()));
        assert_eq!(rational_sqrt(&q("2/9")), None);
        assert_eq!(rational_sqrt(&q("-4/9")), None);
    }

    #[test]
    fn construction_normalizes() {
        let x = Rational::new(big(6), big(-4)).unwrap();
        assert_eq!(x.numer(), &big(-3));
        assert_eq!(x.denom(), &big(2));
        assert_eq!(Rational::new(big(0), big(-7)).unwrap(), Rational::zero());
        assert_eq!(
            Rational::new(big(1), big(0)),
            Err(ExactError::ZeroDenominator)
        );
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(q("-58/55").to_string(), "-58/55");
        assert_eq!(q("10/-4").to_string(), "-5/2");
        assert_eq!(q("12").to_string(), "12");
        assert_eq!(q("4/2").to_string(), "2");
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
        assert!("1/2/3".parse::<Rational>().is_err());
    }

    #[test]
    fn arithmetic() {
        assert_eq!(q("1/2") + q("1/3"), q("5/6"));
        assert_eq!(q("1/2") - q("1/2"), Rational::zero());
        assert_eq!(q("-2/3") * q("9/4"), q("-3/2"));
        assert_eq!(q("1/2") / q("-1/4"), q("-2"));
        assert!(q("1").checked_div(&Rational::zero()).is_err());
        assert!(q("-1/2") < q("-1/3"));
        assert_eq!(q("-2/3").pow(3), q("-8/27"));
    }

    #[test]
    fn serde_as_string() {
        let v = serde_json::to_string(&q("-13/12")).unwrap();
        assert_eq!(v, "\"-13/12\"");
        let back: Rational = serde_json::from_str(&v).unwrap();
        assert_eq!(back, q("-13/12"));
    }

    #[test]
    fn to_f64_handles_huge_parts() {
        let n = num_traits::pow(big(10), 400);
        let x = Rational::new(n.clone() * 3, n * 2).unwrap();
        assert_eq!(x.to_f64(), 1.5);
        let y = Rational::new(
            num_traits::pow(big(7), 600),
            num_traits::pow(big(7), 599) * 2,
        )
        .unwrap();
        assert!((y.to_f64() - 3.5).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn sqrt_floor_contract(n in 1u64..u64::MAX / 4) {
            let n = BigInt::from(n);
            let sq = &n * &n;
            prop_assert_eq!(integer_sqrt(&sq).unwrap(), (n.clone(), true));
            prop_assert_eq!(integer_sqrt(&(sq + 1)).unwrap(), (n, false));
        }

        #[test]
        fn sqrt_floor_random(n in any::<u128>()) {
            let n = BigInt::from(n);
            let (root, exact) = integer_sqrt(&n).unwrap();
            prop_assert!(&root * &root <= n);
            prop_assert!((&root + 1) * (&root + 1) > n);
            prop_assert_eq!(exact, &root * &root == n);
        }

        #[test]
        fn constructors_reduce(num in any::<i64>(), den in any::<i64>().prop_filter("nonzero", |d| *d != 0)) {
            let x = Rational::new(num.into(), den.into()).unwrap();
            prop_assert!(x.denom().is_positive());
            prop_assert!(x.numer().gcd(x.denom()).is_one());
            prop_assert_eq!(x.numer() * BigInt::from(den), BigInt::from(num) * x.denom());
        }

        #[test]
        fn rational_sqrt_of_square(num in any::<i64>(), den in 1i64..i64::MAX) {
            let x = Rational::new(num.into(), den.into()).unwrap();
            let root = rational_sqrt(&(&x * &x)).expect("square of a rational");
            prop_assert_eq!(&root, &x.abs());
            if let Some(y) = rational_sqrt(&x) {
                prop_assert_eq!(&y * &y, x);
            }
        }

        #[test]
        fn decimal_round_trip(n in any::<i128>()) {
            let n = BigInt::from(n);
            prop_assert_eq!(BigInt::from_str(&n.to_string()).unwrap(), n.clone());
            let r = Rational::from_integer(n);
            prop_assert_eq!(r.to_string().parse::<Rational>().unwrap(), r);
        }
    }
}
