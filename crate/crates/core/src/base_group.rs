//! The affine group `B = <x ↦ 2x, x ↦ x + 1>` and its left order `<_B`.
//!
//! Elements are maps `x ↦ 2^m x + d` with `d` dyadic. `b1 <_B b2` compares the
//! images of the base point `ξ0 = √2 - 1`. A nonidentity element of `B` fixes
//! only the rational point `d / (1 - 2^m)`, so the orbit of an irrational
//! point is free and `<_B` is a total left order. (Rational base points do
//! not work: `x ↦ 4x - 1` fixes `1/3`.)

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// `x ↦ 2^m x + d_num / 2^d_den_pow2`, with the offset in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawBElement", into = "RawBElement")]
pub struct BElement {
    pub m: i64,
    d_num: BigInt,
    d_den_pow2: u32,
}

#[derive(Serialize, Deserialize)]
struct RawBElement {
    m: i64,
    #[serde(with = "crate::json::bigint")]
    d_num: BigInt,
    d_den_pow2: u32,
}

impl TryFrom<RawBElement> for BElement {
    type Error = String;
    fn try_from(r: RawBElement) -> Result<Self, String> {
        if r.d_den_pow2 > 4096 {
            return Err(format!("d_den_pow2 = {} is out of range", r.d_den_pow2));
        }
        Ok(BElement::new(r.m, r.d_num, r.d_den_pow2))
    }
}

impl From<BElement> for RawBElement {
    fn from(b: BElement) -> Self {
        RawBElement {
            m: b.m,
            d_num: b.d_num,
            d_den_pow2: b.d_den_pow2,
        }
    }
}

impl BElement {
    pub fn new(m: i64, d_num: impl Into<BigInt>, d_den_pow2: u32) -> Self {
        let mut d_num = d_num.into();
        let mut e = d_den_pow2;
        if d_num.is_zero() {
            e = 0;
        }
        while e > 0 && d_num.is_even() {
            d_num >>= 1;
            e -= 1;
        }
        BElement {
            m,
            d_num,
            d_den_pow2: e,
        }
    }

    pub fn identity() -> Self {
        BElement::new(0, 0, 0)
    }

    /// `x ↦ 2^m x`
    pub fn scaling(m: i64) -> Self {
        BElement::new(m, 0, 0)
    }

    /// `x ↦ x + n`
    pub fn translation(n: i64) -> Self {
        BElement::new(0, n, 0)
    }

    /// The fixed twisting element `t: x ↦ x + 1`.
    pub fn t() -> Self {
        BElement::translation(1)
    }

    pub fn d_num(&self) -> &BigInt {
        &self.d_num
    }

    pub fn d_den_pow2(&self) -> u32 {
        self.d_den_pow2
    }

    pub fn offset(&self) -> BigRational {
        BigRational::new(self.d_num.clone(), BigInt::one() << self.d_den_pow2)
    }

    pub fn slope(&self) -> BigRational {
        pow2(self.m)
    }

    pub fn is_identity(&self) -> bool {
        self.m == 0 && self.d_num.is_zero()
    }

    pub fn apply(&self, x: &BigRational) -> BigRational {
        self.slope() * x + self.offset()
    }

    /// `b(ξ0) = 2^m (√2 - 1) + d`.
    pub fn xi0_value(&self) -> Surd {
        let s = self.slope();
        Surd::new(self.offset() - &s, s)
    }

    /// Composition `self ∘ other`, the group law of `B`.
    pub fn compose(&self, other: &BElement) -> BElement {
        // 2^m1 (2^m2 x + d2) + d1
        let (num, e) = dyadic_add(
            &dyadic_scale(&other.d_num, other.d_den_pow2, self.m),
            (&self.d_num, self.d_den_pow2),
        );
        BElement::new(self.m + other.m, num, e)
    }

    pub fn inverse(&self) -> BElement {
        // x ↦ 2^-m x - 2^-m d
        let (num, e) = dyadic_scale(&self.d_num, self.d_den_pow2, -self.m);
        BElement::new(-self.m, -num, e)
    }

    pub fn pow(&self, n: i64) -> BElement {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = BElement::identity();
        for _ in 0..n.unsigned_abs() {
            acc = acc.compose(&base);
        }
        acc
    }
}

/// Exact comparison of `b1(ξ0)` and `b2(ξ0)`.
pub fn compare_b(b1: &BElement, b2: &BElement) -> Ordering {
    b1.xi0_value().cmp(&b2.xi0_value())
}

impl Ord for BElement {
    /// The left order `<_B`; total because the orbit of `ξ0` is free.
    fn cmp(&self, other: &Self) -> Ordering {
        compare_b(self, other)
    }
}

impl PartialOrd for BElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A number `rat + sqrt2 · √2` with rational parts, totally ordered exactly.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Surd {
    pub rat: BigRational,
    pub sqrt2: BigRational,
}

impl Surd {
    pub fn new(rat: BigRational, sqrt2: BigRational) -> Self {
        Surd { rat, sqrt2 }
    }

    pub fn from_rational(rat: BigRational) -> Self {
        Surd::new(rat, BigRational::zero())
    }

    /// Sign of `rat + sqrt2 · √2`.
    pub fn signum(&self) -> Ordering {
        let a = self.rat.cmp(&BigRational::zero());
        let b = self.sqrt2.cmp(&BigRational::zero());
        if a == b || b == Ordering::Equal {
            return a;
        }
        if a == Ordering::Equal {
            return b;
        }
        // opposite signs: compare rat² with 2 · sqrt2²
        let r2 = &self.rat * &self.rat;
        let s2 = &self.sqrt2 * &self.sqrt2 * BigRational::from_integer(2.into());
        match r2.cmp(&s2) {
            Ordering::Greater => a,
            Ordering::Less => b,
            Ordering::Equal => unreachable!("√2 is irrational"),
        }
    }
}

impl std::ops::Sub for &Surd {
    type Output = Surd;
    fn sub(self, o: &Surd) -> Surd {
        Surd::new(&self.rat - &o.rat, &self.sqrt2 - &o.sqrt2)
    }
}

impl Ord for Surd {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rat.is_zero(), self.sqrt2.is_zero()) {
            (_, true) => write!(f, "{}", self.rat),
            (true, false) => write!(f, "{}√2", self.sqrt2),
            (false, false) => {
                write!(f, "{}√2", self.sqrt2)?;
                if self.rat.is_negative() {
                    write!(f, "{}", self.rat)
                } else {
                    write!(f, "+{}", self.rat)
                }
            }
        }
    }
}

fn pow2(m: i64) -> BigRational {
    let p = BigInt::one() << m.unsigned_abs() as usize;
    if m >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

/// `2^m · num / 2^e` as `(num', e')`.
fn dyadic_scale(num: &BigInt, e: u32, m: i64) -> (BigInt, u32) {
    let e = e as i64 - m;
    if e >= 0 {
        (num.clone(), e as u32)
    } else {
        (num << (-e) as usize, 0)
    }
}

fn dyadic_add(a: &(BigInt, u32), b: (&BigInt, u32)) -> (BigInt, u32) {
    let e = a.1.max(b.1);
    let x = &a.0 << (e - a.1) as usize;
    let y = b.0 << (e - b.1) as usize;
    (x + y, e)
}

impl fmt::Display for BElement {
    /// Affine notation, e.g. `2x+1/2`, `x-3`, `1/4x`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let slope = self.slope();
        if slope.is_one() {
            write!(f, "x")?;
        } else {
            write!(f, "{slope}x")?;
        }
        let d = self.offset();
        if d.is_positive() {
            write!(f, "+{d}")?;
        } else if d.is_negative() {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_b() -> impl Strategy<Value = BElement> {
        (-3i64..4, -40i64..40, 0u32..4).prop_map(|(m, n, e)| BElement::new(m, n, e))
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// Rational bounds `lo < √2 - 1 < hi` with gap `2^-200`.
    fn xi0_bounds() -> (BigRational, BigRational) {
        let scale = BigInt::one() << 200usize;
        let s = (&scale * &scale * BigInt::from(2)).sqrt();
        let lo = BigRational::new(s.clone(), scale.clone()) - BigRational::one();
        let hi = BigRational::new(s + 1, scale) - BigRational::one();
        (lo, hi)
    }

    #[test]
    fn examples() {
        let two_x = BElement::scaling(1);
        let x_plus_1 = BElement::translation(1);
        assert_eq!(compare_b(&two_x, &x_plus_1), Ordering::Less);
        assert_eq!(
            compare_b(&BElement::translation(-3), &BElement::scaling(2)),
            Ordering::Less
        );
        assert_eq!(compare_b(&two_x, &two_x), Ordering::Equal);
        assert_eq!(x_plus_1.xi0_value().to_string(), "1√2");
    }

    /// The rational candidate `1/3` is fixed by `x ↦ 4x - 1`.
    #[test]
    fn one_third_is_not_free() {
        let b = BElement::new(2, -1, 0);
        assert_eq!(b.apply(&rat(1, 3)), rat(1, 3));
        assert_ne!(b.xi0_value(), BElement::identity().xi0_value());
    }

    #[test]
    fn canonical_offsets() {
        assert_eq!(BElement::new(0, 4, 2), BElement::translation(1));
        assert_eq!(BElement::new(1, 0, 7), BElement::scaling(1));
        assert_eq!(BElement::new(0, 3, 1).to_string(), "x+3/2");
        assert_eq!(BElement::new(-2, -1, 0).to_string(), "1/4x-1");
    }

    #[test]
    fn json_round_trip() {
        let b = BElement::new(-1, -3, 2);
        let js = serde_json::to_string(&b).unwrap();
        assert_eq!(js, r#"{"m":-1,"d_num":-3,"d_den_pow2":2}"#);
        assert_eq!(serde_json::from_str::<BElement>(&js).unwrap(), b);
        let b: BElement = serde_json::from_str(r#"{"m":0,"d_num":2,"d_den_pow2":1}"#).unwrap();
        assert_eq!(b, BElement::t());
    }

    proptest! {
        #[test]
        fn compose_matches_evaluation(a in arb_b(), b in arb_b(), x in -50i64..50) {
            let x = rat(x, 7);
            prop_assert_eq!(a.compose(&b).apply(&x), a.apply(&b.apply(&x)));
            prop_assert!(a.compose(&a.inverse()).is_identity());
            prop_assert!(a.inverse().compose(&a).is_identity());
        }

        /// Interval evaluation at tight rational bounds of the base point.
        #[test]
        fn order_matches_interval_evaluation(a in arb_b(), b in arb_b()) {
            let (lo, hi) = xi0_bounds();
            let ord = compare_b(&a, &b);
            // both maps are increasing, so images of [lo, hi] bracket b(ξ0)
            if a.apply(&hi) < b.apply(&lo) {
                prop_assert_eq!(ord, Ordering::Less);
            } else if b.apply(&hi) < a.apply(&lo) {
                prop_assert_eq!(ord, Ordering::Greater);
            } else {
                prop_assert_eq!(ord, Ordering::Equal);
                prop_assert_eq!(a, b);
            }
        }

        #[test]
        fn left_invariant(a in arb_b(), b in arb_b(), c in arb_b()) {
            prop_assert_eq!(compare_b(&c.compose(&a), &c.compose(&b)), compare_b(&a, &b));
        }

        #[test]
        fn free_orbit(a in arb_b()) {
            let id = BElement::identity();
            prop_assert_eq!(a.xi0_value() == id.xi0_value(), a.is_identity());
            prop_assert_eq!(compare_b(&a, &id) == Ordering::Equal, a.is_identity());
        }

        #[test]
        fn surd_sign(r in -50i64..50, s in -50i64..50) {
            let (lo, _) = xi0_bounds();
            let sqrt2 = lo + BigRational::one();
            let v = Surd::new(rat(r, 3), rat(s, 5));
            let approx = rat(r, 3) + rat(s, 5) * sqrt2;
            prop_assert_eq!(v.signum(), approx.cmp(&BigRational::zero()));
        }
    }
}
