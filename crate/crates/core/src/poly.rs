//! Sparse Laurent polynomials over an integer coefficient ring.
//!
//! A polynomial is a finite map from degree to a nonzero coefficient. The map
//! never stores zero coefficients, so structural equality is polynomial
//! equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseError;
use crate::scalar::Coeff;

/// The derived `Ord` is structural (usable as a map key); the group-invariant
/// orders live in [`crate::orders`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly<C> {
    coeffs: BTreeMap<i64, C>,
}

impl<C: Coeff> Default for LaurentPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> LaurentPoly<C> {
    pub fn zero() -> Self {
        LaurentPoly {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn monomial(degree: i64, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(degree, c);
        p
    }

    /// `X^n`
    pub fn x_pow(degree: i64) -> Self {
        Self::monomial(degree, C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(0, c)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, C)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (d, c) in terms {
            p.add_term(d, c);
        }
        p
    }

    /// Builds from small integer coefficients, `coeffs[i]` at degree `low + i`.
    pub fn from_i64_slice(low: i64, coeffs: &[i64]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (low + i as i64, C::from_i64(c).expect("coefficient fits"))),
        )
    }

    pub fn add_term(&mut self, degree: i64, c: C) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(degree) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Terms in ascending degree.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &C)> + '_ {
        self.coeffs.iter().map(|(d, c)| (*d, c))
    }

    pub fn coeff(&self, degree: i64) -> C {
        self.coeffs.get(&degree).cloned().unwrap_or_else(C::zero)
    }

    /// Highest-degree term.
    pub fn top(&self) -> Option<(i64, &C)> {
        self.coeffs.iter().next_back().map(|(d, c)| (*d, c))
    }

    /// Lowest-degree term.
    pub fn bottom(&self) -> Option<(i64, &C)> {
        self.coeffs.iter().next().map(|(d, c)| (*d, c))
    }

    pub fn degree(&self) -> Option<i64> {
        self.top().map(|(d, _)| d)
    }

    pub fn low_degree(&self) -> Option<i64> {
        self.bottom().map(|(d, _)| d)
    }

    pub fn max_abs_coeff(&self) -> C {
        self.coeffs.values().map(|c| c.abs()).max().unwrap_or_else(C::zero)
    }

    /// Multiplication by `X^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(d, c)| (d + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, factor: &C) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(d, c)| (*d, c.clone() * factor.clone()))
                .collect(),
        }
    }

    /// The part supported strictly above degree `n`.
    pub fn above(&self, n: i64) -> Self {
        LaurentPoly {
            coeffs: self
                .coeffs
                .range(n.saturating_add(1)..)
                .map(|(d, c)| (*d, c.clone()))
                .collect(),
        }
    }

    /// The part supported at or below degree `n`.
    pub fn at_most(&self, n: i64) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.range(..=n).map(|(d, c)| (*d, c.clone())).collect(),
        }
    }

    /// The part supported strictly below degree `n`.
    pub fn below(&self, n: i64) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.range(..n).map(|(d, c)| (*d, c.clone())).collect(),
        }
    }

    /// `P(X) ↦ P(X⁻¹)`.
    pub fn reflect(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(d, c)| (-d, c.clone())).collect(),
        }
    }

    /// Whether the support lies strictly above degree `n`.
    pub fn supported_above(&self, n: i64) -> bool {
        self.low_degree().is_none_or(|d| d > n)
    }

    pub fn convert<D: Coeff>(&self) -> Option<LaurentPoly<D>> {
        let mut out = LaurentPoly::zero();
        for (d, c) in self.terms() {
            out.add_term(d, D::from_bigint(&c.to_bigint())?);
        }
        Some(out)
    }

    fn add_assign_ref(&mut self, other: &Self) {
        for (d, c) in other.terms() {
            self.add_term(d, c.clone());
        }
    }

    fn sub_assign_ref(&mut self, other: &Self) {
        for (d, c) in other.terms() {
            self.add_term(d, -c.clone());
        }
    }
}

impl<C: Coeff> Add for LaurentPoly<C> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self.add_assign_ref(&rhs);
        self
    }
}

impl<C: Coeff> Add<&LaurentPoly<C>> for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl<C: Coeff> Sub for LaurentPoly<C> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self.sub_assign_ref(&rhs);
        self
    }
}

impl<C: Coeff> Sub<&LaurentPoly<C>> for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = self.clone();
        out.sub_assign_ref(rhs);
        out
    }
}

impl<C: Coeff> Neg for LaurentPoly<C> {
    type Output = Self;
    fn neg(self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.into_iter().map(|(d, c)| (d, -c)).collect(),
        }
    }
}

impl<C: Coeff> Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        -self.clone()
    }
}

impl<C: Coeff> Mul for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = LaurentPoly::zero();
        for (d1, c1) in self.terms() {
            for (d2, c2) in rhs.terms() {
                out.add_term(d1 + d2, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<C: Coeff> fmt::Display for LaurentPoly<C> {
    /// Descending degree, e.g. `X^3 - 7X + 2 - X^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (d, c)) in self.terms().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let unit = mag.is_one();
            match d {
                0 => write!(f, "{mag}")?,
                1 if unit => f.write_str("X")?,
                1 => write!(f, "{mag}X")?,
                _ if unit => write!(f, "X^{d}")?,
                _ => write!(f, "{mag}X^{d}")?,
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl<C: Coeff> FromStr for LaurentPoly<C> {
    type Err = ParseError;

    /// Accepts sums of terms `c`, `cX`, `c*X^d`, `X^(-d)`; `x` and `X` are
    /// interchangeable and whitespace is ignored.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        PolyParser { src: s, pos: 0 }.parse()
    }
}

struct PolyParser<'a> {
    src: &'a str,
    pos: usize,
}

impl PolyParser<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn digits(&mut self) -> Option<&str> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }

    fn err(&self, msg: &str) -> ParseError {
        ParseError::new(self.pos, msg)
    }

    fn parse<C: Coeff>(mut self) -> Result<LaurentPoly<C>, ParseError> {
        let mut out = LaurentPoly::zero();
        self.skip_ws();
        if self.peek().is_none() {
            return Err(self.err("empty polynomial"));
        }
        let mut first = true;
        loop {
            self.skip_ws();
            let mut negative = false;
            match self.peek() {
                None if !first => break,
                Some(b'+') => self.pos += 1,
                Some(b'-') => {
                    negative = true;
                    self.pos += 1
                }
                _ if first => {}
                _ => return Err(self.err("expected '+' or '-'")),
            }
            first = false;
            self.skip_ws();
            let coeff_start = self.pos;
            let coeff: Option<C> = match self.digits() {
                Some(ds) => Some(
                    ds.parse::<C>()
                        .map_err(|_| ParseError::new(coeff_start, "coefficient out of range"))?,
                ),
                None => None,
            };
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                self.skip_ws();
            }
            let degree = if matches!(self.peek(), Some(b'x' | b'X')) {
                self.pos += 1;
                self.skip_ws();
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.skip_ws();
                    let paren = self.peek() == Some(b'(');
                    if paren {
                        self.pos += 1;
                    }
                    let at = self.pos;
                    let neg = self.peek() == Some(b'-');
                    if neg || self.peek() == Some(b'+') {
                        self.pos += 1;
                    }
                    let ds = self.digits().ok_or_else(|| ParseError::new(at, "expected exponent"))?;
                    let d: i64 = ds.parse().map_err(|_| ParseError::new(at, "exponent out of range"))?;
                    if paren {
                        if self.peek() != Some(b')') {
                            return Err(self.err("expected ')'"));
                        }
                        self.pos += 1;
                    }
                    if neg {
                        -d
                    } else {
                        d
                    }
                } else {
                    1
                }
            } else if coeff.is_none() {
                return Err(self.err("expected a term"));
            } else {
                0
            };
            let c = coeff.unwrap_or_else(C::one);
            out.add_term(degree, if negative { -c } else { c });
        }
        Ok(out)
    }
}

impl<C: Coeff> Serialize for LaurentPoly<C> {
    /// `{"<degree>": <coeff>, ...}` in ascending degree.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.len()))?;
        for (d, c) in self.terms() {
            map.serialize_entry(&d.to_string(), &crate::json::IntRepr::from_coeff(c))?;
        }
        map.end()
    }
}

impl<'de, C: Coeff> Deserialize<'de> for LaurentPoly<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V<C>(std::marker::PhantomData<C>);
        impl<'de, C: Coeff> Visitor<'de> for V<C> {
            type Value = LaurentPoly<C>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from degree to integer coefficient")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut m: A) -> Result<Self::Value, A::Error> {
                let mut out = LaurentPoly::zero();
                while let Some((k, v)) = m.next_entry::<String, crate::json::IntRepr>()? {
                    let d: i64 = k
                        .trim()
                        .parse()
                        .map_err(|_| de::Error::custom(format!("bad degree key {k:?}")))?;
                    let c: C = v.to_coeff().map_err(de::Error::custom)?;
                    out.add_term(d, c);
                }
                Ok(out)
            }
        }
        d.deserialize_map(V(std::marker::PhantomData))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = LaurentPoly<i64>;

    #[test]
    fn zero_coefficients_are_never_stored() {
        let mut p = P::from_terms([(2, 3), (2, -3), (0, 0)]);
        assert!(p.is_zero());
        p.add_term(-4, 1);
        assert_eq!(p.len(), 1);
        assert_eq!(p.coeff(5), 0);
    }

    #[test]
    fn display_and_parse() {
        let p = P::from_terms([(3, 1), (1, -7), (0, 2), (-1, -1)]);
        assert_eq!(p.to_string(), "X^3 - 7X + 2 - X^-1");
        assert_eq!(p.to_string().parse::<P>().unwrap(), p);
        assert_eq!("-x^(-2) + 5*X".parse::<P>().unwrap(), P::from_terms([(-2, -1), (1, 5)]));
        assert_eq!("0".parse::<P>().unwrap(), P::zero());
        assert_eq!("3 - 3".parse::<P>().unwrap(), P::zero());
    }

    #[test]
    fn parse_errors_carry_offsets() {
        let e = "X^ + 1".parse::<P>().unwrap_err();
        assert_eq!(e.offset, 3);
        let e = "2X 3".parse::<P>().unwrap_err();
        assert_eq!(e.offset, 3);
        assert!("".parse::<P>().is_err());
    }

    #[test]
    fn truncations_partition() {
        let p = P::from_terms([(-2, 1), (0, 4), (1, -1), (5, 2)]);
        assert_eq!(p.above(0), P::from_terms([(1, -1), (5, 2)]));
        assert_eq!(&p.above(0) + &p.at_most(0), p);
        assert_eq!(p.below(0), P::x_pow(-2));
        assert!(p.above(0).supported_above(0));
    }

    #[test]
    fn json_round_trip_with_big_coefficients() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let p = LaurentPoly::<BigInt>::from_terms([(-3, big.clone()), (2, BigInt::from(-5))]);
        let js = serde_json::to_string(&p).unwrap();
        assert_eq!(js, r#"{"-3":"123456789012345678901234567890","2":-5}"#);
        let back: LaurentPoly<BigInt> = serde_json::from_str(&js).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn json_is_ascending_by_degree() {
        let p = P::from_terms([(10, 1), (-10, 2), (2, 3)]);
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"-10":2,"2":3,"10":1}"#);
    }
}
