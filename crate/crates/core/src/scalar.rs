//! Numeric traits the algebra is generic over.
//!
//! Lamp coefficients only need an ordered ring of integers, and the maps of
//! the line only need an ordered field of rationals. Both are kept abstract so
//! that hot loops can run on machine integers while the default aliases use
//! arbitrary precision. Floating point types are deliberately not admitted:
//! every comparison in this crate has to be exact.

use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};

/// Integer coefficient ring for Laurent polynomials.
pub trait Coeff:
    Clone + Ord + Hash + Debug + Display + FromStr + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    fn to_bigint(&self) -> BigInt;
    fn from_bigint(v: &BigInt) -> Option<Self>;
}

impl Coeff for i64 {
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn from_bigint(v: &BigInt) -> Option<Self> {
        v.to_i64()
    }
}

impl Coeff for i128 {
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn from_bigint(v: &BigInt) -> Option<Self> {
        v.to_i128()
    }
}

impl Coeff for BigInt {
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
    fn from_bigint(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
}

/// Exact ordered field used for coordinates on the line.
pub trait Scalar: Clone + Ord + Hash + Debug + Display + Num + Signed + FromPrimitive + Send + Sync + 'static {
    fn to_big(&self) -> BigRational;
    fn from_big(v: &BigRational) -> Option<Self>;

    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("every scalar type embeds i64")
    }

    fn from_frac(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    fn two() -> Self {
        Self::one() + Self::one()
    }

    fn floor(&self) -> Self;

    /// Agrees with `Ord::cmp`; types may take a cheaper route.
    fn order(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }

    fn midpoint(a: &Self, b: &Self) -> Self {
        (a.clone() + b.clone()) / Self::two()
    }

    /// Integer power, negative exponents allowed for nonzero bases.
    fn powi(&self, exp: i64) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp.unsigned_abs() {
            acc = acc * self.clone();
        }
        if exp < 0 {
            Self::one() / acc
        } else {
            acc
        }
    }
}

impl Scalar for Ratio<i64> {
    fn floor(&self) -> Self {
        Ratio::floor(self)
    }
    fn to_big(&self) -> BigRational {
        BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
    fn from_big(v: &BigRational) -> Option<Self> {
        Some(Ratio::new(v.numer().to_i64()?, v.denom().to_i64()?))
    }
}

impl Scalar for Ratio<i128> {
    fn floor(&self) -> Self {
        Ratio::floor(self)
    }
    fn to_big(&self) -> BigRational {
        BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
    fn from_big(v: &BigRational) -> Option<Self> {
        Some(Ratio::new(v.numer().to_i128()?, v.denom().to_i128()?))
    }
}

impl Scalar for BigRational {
    fn floor(&self) -> Self {
        Ratio::floor(self)
    }
    // `Ratio::cmp` goes through repeated floor division; with positive
    // denominators cross-multiplication is much cheaper
    fn order(&self, other: &Self) -> Ordering {
        if self.denom() == other.denom() {
            return self.numer().cmp(other.numer());
        }
        (self.numer() * other.denom()).cmp(&(other.numer() * self.denom()))
    }
    fn midpoint(a: &Self, b: &Self) -> Self {
        let den = a.denom() * b.denom() * 2;
        Ratio::new(a.numer() * b.denom() + b.numer() * a.denom(), den)
    }
    fn to_big(&self) -> BigRational {
        self.clone()
    }
    fn from_big(v: &BigRational) -> Option<Self> {
        Some(v.clone())
    }
}

/// Parses `p`, `-p`, `p/q` into any scalar.
pub fn parse_scalar<Q: Scalar>(s: &str) -> Option<Q> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Q::from_big(&BigRational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_scalar::<Ratio<i64>>("3/6"), Some(Ratio::new(1, 2)));
        assert_eq!(
            parse_scalar::<BigRational>("-4"),
            Some(BigRational::from_integer((-4).into()))
        );
        assert_eq!(parse_scalar::<Ratio<i64>>("1/0"), None);
        assert_eq!(parse_scalar::<Ratio<i64>>("x"), None);
    }

    #[test]
    fn powers() {
        let half = Ratio::<i64>::new(1, 2);
        assert_eq!(half.powi(3), Ratio::new(1, 8));
        assert_eq!(half.powi(-2), Ratio::from_integer(4));
        assert_eq!(half.powi(0), Ratio::one());
    }

    proptest::proptest! {
        #[test]
        fn big_order_and_midpoint_agree(a in -10_000i64..10_000, b in 1i64..500, c in -10_000i64..10_000, d in 1i64..500) {
            let x = BigRational::new(a.into(), b.into());
            let y = BigRational::new(c.into(), d.into());
            proptest::prop_assert_eq!(x.order(&y), x.cmp(&y));
            proptest::prop_assert_eq!(BigRational::midpoint(&x, &y), (&x + &y) / BigRational::from_integer(2.into()));
        }
    }
}
