//! Exact rational scalars.
//!
//! Every number in this crate is an [`ExactRational`]: an arbitrary-precision
//! fraction kept in canonical form. There is no floating point anywhere, so
//! every equality test in the library and its test suite is exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use serde::{Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use thiserror::Error;

/// Arithmetic failure distinct from parse failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithmeticError {
    #[error("division by zero")]
    DivisionByZero,
}

/// Failure to parse the textual `p/q` encoding.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid numerator {0:?}")]
    InvalidNumerator(String),
    #[error("invalid denominator {0:?}")]
    InvalidDenominator(String),
    #[error("denominator must be a positive integer")]
    NonPositiveDenominator,
}

/// An arbitrary-precision rational in canonical form.
///
/// Invariants, re-established after every operation:
/// - the denominator is positive,
/// - numerator and denominator are coprime,
/// - zero is represented uniquely as `0/1`.
///
/// Values are immutable once constructed and safe to share across threads.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRational(BigRational);

impl ExactRational {
    /// Builds `numerator/denominator`, canonicalizing eagerly.
    pub fn new(numerator: i64, denominator: i64) -> Result<Self, ArithmeticError> {
        Self::from_bigints(BigInt::from(numerator), BigInt::from(denominator))
    }

    /// Builds a rational from big integer parts.
    pub fn from_bigints(numerator: BigInt, denominator: BigInt) -> Result<Self, ArithmeticError> {
        if denominator.is_zero() {
            return Err(ArithmeticError::DivisionByZero);
        }
        Ok(Self(BigRational::new(numerator, denominator)))
    }

    pub fn from_integer(value: i64) -> Self {
        Self(BigRational::from_integer(BigInt::from(value)))
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Self(self.0.abs())
    }

    /// Exact quotient; division by zero is reported, never a panic.
    pub fn checked_div(&self, divisor: &Self) -> Result<Self, ArithmeticError> {
        if divisor.is_zero() {
            return Err(ArithmeticError::DivisionByZero);
        }
        Ok(Self(&self.0 / &divisor.0))
    }

    /// Exact reciprocal of a nonzero value.
    pub fn recip(&self) -> Result<Self, ArithmeticError> {
        Self::one().checked_div(self)
    }

    /// Exact non-negative integer power; `pow(a, 0) = 1` for every `a`.
    pub fn pow(&self, exponent: u32) -> Self {
        // Numerator and denominator stay coprime under powers, so the result
        // is already canonical.
        Self(BigRational::new_raw(
            Pow::pow(self.numer(), exponent),
            Pow::pow(self.denom(), exponent),
        ))
    }

    /// Exact total order by cross-multiplication.
    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl fmt::Display for ExactRational {
    /// Canonical text form: `p/q` with `/q` omitted when `q = 1`, sign on the
    /// numerator only. This rendering is used verbatim in CLI and JSON output.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for ExactRational {
    type Err = ParseRationalError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        if text.is_empty() {
            return Err(ParseRationalError::Empty);
        }
        let (numer_text, denom_text) = match text.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (text, None),
        };
        let numerator = BigInt::from_str(numer_text)
            .map_err(|_| ParseRationalError::InvalidNumerator(numer_text.to_owned()))?;
        let denominator = match denom_text {
            None => BigInt::one(),
            Some(d) => {
                // The denominator carries no sign in the canonical encoding.
                if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(ParseRationalError::InvalidDenominator(d.to_owned()));
                }
                let parsed = BigInt::from_str(d)
                    .map_err(|_| ParseRationalError::InvalidDenominator(d.to_owned()))?;
                if parsed.is_zero() {
                    return Err(ParseRationalError::NonPositiveDenominator);
                }
                parsed
            }
        };
        Ok(Self(BigRational::new(numerator, denominator)))
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl From<i64> for ExactRational {
    fn from(value: i64) -> Self {
        Self::from_integer(value)
    }
}

macro_rules! binop_impls {
    ($trait:ident, $method:ident) => {
        impl $trait for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational((self.0).$method(rhs.0))
            }
        }
        impl $trait<&ExactRational> for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &ExactRational) -> ExactRational {
                ExactRational((self.0).$method(&rhs.0))
            }
        }
        impl $trait<ExactRational> for &ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational((&self.0).$method(rhs.0))
            }
        }
        impl $trait<&ExactRational> for &ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &ExactRational) -> ExactRational {
                ExactRational((&self.0).$method(&rhs.0))
            }
        }
    };
}

binop_impls!(Add, add);
binop_impls!(Sub, sub);
binop_impls!(Mul, mul);

impl Div for ExactRational {
    type Output = ExactRational;
    fn div(self, rhs: ExactRational) -> ExactRational {
        (&self).div(&rhs)
    }
}

impl Div<&ExactRational> for ExactRational {
    type Output = ExactRational;
    fn div(self, rhs: &ExactRational) -> ExactRational {
        (&self).div(rhs)
    }
}

impl Div<ExactRational> for &ExactRational {
    type Output = ExactRational;
    fn div(self, rhs: ExactRational) -> ExactRational {
        self.div(&rhs)
    }
}

impl Div<&ExactRational> for &ExactRational {
    type Output = ExactRational;
    fn div(self, rhs: &ExactRational) -> ExactRational {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-self.0)
    }
}

impl Neg for &ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-&self.0)
    }
}

impl AddAssign<&ExactRational> for ExactRational {
    fn add_assign(&mut self, rhs: &ExactRational) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for ExactRational {
    fn add_assign(&mut self, rhs: ExactRational) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&ExactRational> for ExactRational {
    fn sub_assign(&mut self, rhs: &ExactRational) {
        self.0 -= &rhs.0;
    }
}

impl SubAssign for ExactRational {
    fn sub_assign(&mut self, rhs: ExactRational) {
        self.0 -= rhs.0;
    }
}

impl MulAssign<&ExactRational> for ExactRational {
    fn mul_assign(&mut self, rhs: &ExactRational) {
        self.0 *= &rhs.0;
    }
}

impl MulAssign for ExactRational {
    fn mul_assign(&mut self, rhs: ExactRational) {
        self.0 *= rhs.0;
    }
}

impl Sum for ExactRational {
    fn sum<I: Iterator<Item = ExactRational>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, v| acc + v)
    }
}

impl Product for ExactRational {
    fn product<I: Iterator<Item = ExactRational>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, v| acc * v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n, d).unwrap()
    }

    #[test]
    fn addition_is_exact() {
        assert_eq!(rat(1, 2) + rat(1, 3), rat(5, 6));
    }

    #[test]
    fn inverse_pair_multiplies_to_one() {
        assert_eq!(rat(2, 3) * rat(3, 2), ExactRational::one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let err = rat(1, 7).checked_div(&ExactRational::zero()).unwrap_err();
        assert_eq!(err, ArithmeticError::DivisionByZero);
        assert_eq!(
            ExactRational::new(1, 0).unwrap_err(),
            ArithmeticError::DivisionByZero
        );
    }

    #[test]
    fn powers() {
        assert_eq!(rat(3, 2).pow(2), rat(9, 4));
        assert_eq!(rat(5, 1).pow(0), ExactRational::one());
        assert_eq!(ExactRational::zero().pow(0), ExactRational::one());
        assert_eq!(rat(-5, 1).pow(3), rat(-125, 1));
    }

    #[test]
    fn exact_ordering() {
        assert_eq!(rat(2, 3).cmp_exact(&rat(3, 4)), Ordering::Less);
        assert_eq!(rat(7, 7).cmp_exact(&ExactRational::one()), Ordering::Equal);
        assert_eq!(rat(16, 15).cmp_exact(&ExactRational::one()), Ordering::Greater);
    }

    #[test]
    fn canonical_form() {
        let v = rat(-4, -6);
        assert_eq!(v, rat(2, 3));
        assert_eq!(v.to_string(), "2/3");
        let z = rat(0, 17);
        assert!(z.is_zero());
        assert_eq!(z.to_string(), "0");
        assert_eq!(rat(9, -12).to_string(), "-3/4");
    }

    #[test]
    fn rendering_omits_unit_denominator() {
        assert_eq!(rat(-25, 252).to_string(), "-25/252");
        assert_eq!(rat(14, 7).to_string(), "2");
    }

    #[test]
    fn parsing_accepts_canonical_forms_only() {
        assert_eq!("5/6".parse::<ExactRational>().unwrap(), rat(5, 6));
        assert_eq!("-3".parse::<ExactRational>().unwrap(), rat(-3, 1));
        assert!("".parse::<ExactRational>().is_err());
        assert!("1/0".parse::<ExactRational>().is_err());
        assert!("1/-2".parse::<ExactRational>().is_err());
        assert!("a/2".parse::<ExactRational>().is_err());
        assert!("1/2/3".parse::<ExactRational>().is_err());
    }

    #[test]
    fn serializes_as_canonical_string() {
        assert_eq!(serde_json::to_string(&rat(-25, 252)).unwrap(), "\"-25/252\"");
        assert_eq!(serde_json::to_string(&rat(2, 1)).unwrap(), "\"2\"");
    }

    fn arb_rational() -> impl Strategy<Value = ExactRational> {
        (-200i64..=200, 1i64..=200).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn addition_commutes(a in arb_rational(), b in arb_rational()) {
            prop_assert_eq!(&a + &b, &b + &a);
        }

        #[test]
        fn multiplication_commutes_and_associates(
            a in arb_rational(),
            b in arb_rational(),
            c in arb_rational(),
        ) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        }

        #[test]
        fn results_stay_canonical(a in arb_rational(), b in arb_rational()) {
            use num_integer::Integer as _;
            for v in [&a + &b, &a - &b, &a * &b] {
                prop_assert!(v.denom().is_positive());
                prop_assert!(v.numer().gcd(v.denom()).is_one());
                if v.is_zero() {
                    prop_assert!(v.denom().is_one());
                }
            }
        }

        #[test]
        fn parse_render_round_trip(a in arb_rational()) {
            let parsed: ExactRational = a.to_string().parse().unwrap();
            prop_assert_eq!(parsed, a);
        }
    }
}
