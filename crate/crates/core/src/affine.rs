//! Orientation-preserving affine maps `x ↦ a x + b` with `a > 0`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, ParseError, Result};
use crate::scalar::{parse_scalar, Scalar};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AffineMap<Q> {
    slope: Q,
    offset: Q,
}

impl<Q: Scalar> AffineMap<Q> {
    pub fn new(slope: Q, offset: Q) -> Result<Self> {
        if !slope.is_positive() {
            return Err(Error::Precondition(format!(
                "affine map needs a positive slope, got {slope}"
            )));
        }
        Ok(AffineMap { slope, offset })
    }

    pub fn identity() -> Self {
        AffineMap {
            slope: Q::one(),
            offset: Q::zero(),
        }
    }

    pub fn translation(offset: Q) -> Self {
        AffineMap {
            slope: Q::one(),
            offset,
        }
    }

    /// `x ↦ λ x`
    pub fn homothety(lambda: Q) -> Result<Self> {
        Self::new(lambda, Q::zero())
    }

    pub fn slope(&self) -> &Q {
        &self.slope
    }

    pub fn offset(&self) -> &Q {
        &self.offset
    }

    pub fn is_translation(&self) -> bool {
        self.slope.is_one()
    }

    pub fn is_identity(&self) -> bool {
        self.slope.is_one() && self.offset.is_zero()
    }

    pub fn apply(&self, x: &Q) -> Q {
        self.slope.clone() * x.clone() + self.offset.clone()
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Self) -> Self {
        AffineMap {
            slope: self.slope.clone() * other.slope.clone(),
            offset: self.apply(&other.offset),
        }
    }

    pub fn inverse(&self) -> Self {
        let s = Q::one() / self.slope.clone();
        AffineMap {
            offset: -(self.offset.clone() * s.clone()),
            slope: s,
        }
    }

    /// `w ∘ self ∘ w⁻¹`
    pub fn conjugate_by(&self, w: &Self) -> Self {
        w.compose(self).compose(&w.inverse())
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = Self::identity();
        for _ in 0..n.unsigned_abs() {
            acc = acc.compose(&base);
        }
        acc
    }

    /// The unique fixed point of a non-translation.
    pub fn fixed_point(&self) -> Option<Q> {
        if self.is_translation() {
            None
        } else {
            Some(self.offset.clone() / (Q::one() - self.slope.clone()))
        }
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.compose(other) == other.compose(self)
    }

    /// Writes a map with slope `1/a` as `(x+c)/a`, the natural shape of a
    /// normalizing conjugacy.
    pub fn display_as_quotient(&self) -> String {
        let a = Q::one() / self.slope.clone();
        if a.is_one() {
            return self.to_string();
        }
        let c = self.offset.clone() * a.clone();
        let inner = AffineMap::translation(c).to_string();
        format!("({inner})/{a}")
    }
}

impl<Q: Scalar> fmt::Display for AffineMap<Q> {
    /// `3x+1`, `x-1/2`, `1/2x`, `x`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.slope.is_one() {
            write!(f, "x")?;
        } else {
            write!(f, "{}x", self.slope)?;
        }
        if self.offset.is_positive() {
            write!(f, "+{}", self.offset)
        } else if self.offset.is_negative() {
            write!(f, "{}", self.offset)
        } else {
            Ok(())
        }
    }
}

impl<Q: Scalar> FromStr for AffineMap<Q> {
    type Err = ParseError;

    /// Grammar `<rat>x+<rat>`; the slope may be omitted when it is 1 and the
    /// offset when it is 0, e.g. `3x+1`, `x-1/2`, `1/2x`.
    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let offset_of = |i: usize| {
            // map a position in `compact` back to the original string
            s.char_indices()
                .filter(|(_, c)| !c.is_whitespace())
                .nth(i)
                .map_or(s.len(), |(j, _)| j)
        };
        let Some(xpos) = compact.find(['x', 'X']) else {
            return Err(ParseError::new(offset_of(0), "expected 'x'"));
        };
        let slope_txt = compact[..xpos].trim_end_matches('*');
        let slope = match slope_txt {
            "" | "+" => Q::one(),
            "-" => return Err(ParseError::new(offset_of(0), "slope must be positive")),
            t => parse_scalar(t).ok_or_else(|| ParseError::new(offset_of(0), format!("invalid slope {t:?}")))?,
        };
        let rest = &compact[xpos + 1..];
        let offset = if rest.is_empty() {
            Q::zero()
        } else {
            let body = rest.strip_prefix('+').unwrap_or(rest);
            if !rest.starts_with(['+', '-']) {
                return Err(ParseError::new(offset_of(xpos + 1), "expected '+' or '-'"));
            }
            parse_scalar(body)
                .ok_or_else(|| ParseError::new(offset_of(xpos + 1), format!("invalid offset {rest:?}")))?
        };
        if !slope.is_positive() {
            return Err(ParseError::new(offset_of(0), "slope must be positive"));
        }
        Ok(AffineMap { slope, offset })
    }
}

impl<Q: Scalar> Serialize for AffineMap<Q> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de, Q: Scalar> Deserialize<'de> for AffineMap<Q> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
