//! The four invariant lexicographic orders on `Z[X, X^-1]`.
//!
//! `P ≻ 0` is decided by the coefficient of the highest (`Max*`) or lowest
//! (`Min*`) power of `X`: positive for the `*Plus` orders, negative for the
//! `*Minus` orders. All four are invariant under the affine action of the
//! lamplighter group.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{precondition, ParseError, Result};
use crate::poly::LaurentPoly;
use crate::scalar::Coeff;
use crate::wreath::WreathElement;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrderTag {
    #[serde(rename = "max+")]
    MaxPlus,
    #[serde(rename = "max-")]
    MaxMinus,
    #[serde(rename = "min+")]
    MinPlus,
    #[serde(rename = "min-")]
    MinMinus,
}

impl OrderTag {
    pub const ALL: [OrderTag; 4] = [
        OrderTag::MaxPlus,
        OrderTag::MaxMinus,
        OrderTag::MinPlus,
        OrderTag::MinMinus,
    ];

    /// Whether the highest-degree term decides.
    pub fn reads_top(self) -> bool {
        matches!(self, OrderTag::MaxPlus | OrderTag::MaxMinus)
    }

    pub fn is_plus(self) -> bool {
        matches!(self, OrderTag::MaxPlus | OrderTag::MinPlus)
    }

    /// The `Max*` tag with the same sign convention.
    pub fn max_counterpart(self) -> OrderTag {
        if self.is_plus() {
            OrderTag::MaxPlus
        } else {
            OrderTag::MaxMinus
        }
    }

    /// The coefficient of the extremal term that makes a monomial positive.
    pub fn positive_unit<C: Coeff>(self) -> C {
        if self.is_plus() {
            C::one()
        } else {
            -C::one()
        }
    }

    /// Direction in which `g` pushes configurations outwards: `+1` when `g`
    /// expands (the `Max*` orders), `-1` when `g⁻¹` does.
    pub fn expanding_shift(self) -> i64 {
        if self.reads_top() {
            1
        } else {
            -1
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            OrderTag::MaxPlus => "max+",
            OrderTag::MaxMinus => "max-",
            OrderTag::MinPlus => "min+",
            OrderTag::MinMinus => "min-",
        }
    }
}

impl fmt::Display for OrderTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for OrderTag {
    type Err = ParseError;
    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        Ok(match s.trim() {
            "max+" | "MaxPlus" => OrderTag::MaxPlus,
            "max-" | "MaxMinus" => OrderTag::MaxMinus,
            "min+" | "MinPlus" => OrderTag::MinPlus,
            "min-" | "MinMinus" => OrderTag::MinMinus,
            other => {
                return Err(ParseError::new(
                    0,
                    format!("unknown order {other:?}; expected max+, max-, min+ or min-"),
                ))
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

/// The extremal term read by `tag`.
pub fn extremal_term<C: Coeff>(p: &LaurentPoly<C>, tag: OrderTag) -> Option<(i64, &C)> {
    if tag.reads_top() {
        p.top()
    } else {
        p.bottom()
    }
}

pub fn sign<C: Coeff>(p: &LaurentPoly<C>, tag: OrderTag) -> Sign {
    match extremal_term(p, tag) {
        None => Sign::Zero,
        Some((_, c)) => {
            if c.is_positive() == tag.is_plus() {
                Sign::Pos
            } else {
                Sign::Neg
            }
        }
    }
}

/// Total order `P ≺ Q ⇔ Q - P ≻ 0`.
pub fn compare<C: Coeff>(p: &LaurentPoly<C>, q: &LaurentPoly<C>, tag: OrderTag) -> Ordering {
    // walk both term lists from the dominant end instead of forming Q - P
    let diff_positive = if tag.reads_top() {
        first_difference(p.terms().rev(), q.terms().rev(), |a, b| a > b)
    } else {
        first_difference(p.terms(), q.terms(), |a, b| a < b)
    };
    match diff_positive {
        None => Ordering::Equal,
        Some(pos) if pos == tag.is_plus() => Ordering::Less,
        Some(_) => Ordering::Greater,
    }
}

/// Sign of the extremal coefficient of `Q - P`, `None` when `P = Q`.
fn first_difference<'a, C: Coeff + 'a>(
    p: impl Iterator<Item = (i64, &'a C)>,
    q: impl Iterator<Item = (i64, &'a C)>,
    more_extreme: impl Fn(i64, i64) -> bool,
) -> Option<bool> {
    let mut p = p.peekable();
    let mut q = q.peekable();
    loop {
        match (p.peek(), q.peek()) {
            (None, None) => return None,
            (Some((_, a)), None) => return Some(a.is_negative()),
            (None, Some((_, b))) => return Some(b.is_positive()),
            (Some(&(da, a)), Some(&(db, b))) => {
                if da == db {
                    if a != b {
                        return Some(b > a);
                    }
                    p.next();
                    q.next();
                } else if more_extreme(da, db) {
                    return Some(a.is_negative());
                } else {
                    return Some(b.is_positive());
                }
            }
        }
    }
}

/// A configuration strictly between `q1 ≺ q2`.
///
/// With `R = q2 - q1` and extremal term `c X^D`, returns `q2 - σ X^{D∓1}`
/// where `σ` is the positive unit of `tag` and the degree steps away from the
/// dominant side (down for `Max*`, up for `Min*`).
pub fn between<C: Coeff>(q1: &LaurentPoly<C>, q2: &LaurentPoly<C>, tag: OrderTag) -> Result<LaurentPoly<C>> {
    if compare(q1, q2, tag) != Ordering::Less {
        return precondition(format!("between needs {q1} ≺ {q2} under {tag}"));
    }
    let r = q2 - q1;
    let (d, _) = extremal_term(&r, tag).expect("nonzero difference");
    let step = if tag.reads_top() { d - 1 } else { d + 1 };
    Ok(q2 - &LaurentPoly::monomial(step, tag.positive_unit()))
}

/// A configuration strictly above every argument, `q + σ X^{D±1}` with `D`
/// just past the extremal degree of `q` on the dominant side.
pub fn above<C: Coeff>(q: &LaurentPoly<C>, tag: OrderTag) -> LaurentPoly<C> {
    q + &LaurentPoly::monomial(beyond_degree(q, tag), tag.positive_unit())
}

/// A configuration strictly below `q`.
pub fn below<C: Coeff>(q: &LaurentPoly<C>, tag: OrderTag) -> LaurentPoly<C> {
    q - &LaurentPoly::monomial(beyond_degree(q, tag), tag.positive_unit())
}

fn beyond_degree<C: Coeff>(q: &LaurentPoly<C>, tag: OrderTag) -> i64 {
    if tag.reads_top() {
        q.degree().unwrap_or(0).max(0) + 1
    } else {
        q.low_degree().unwrap_or(0).min(0) - 1
    }
}

/// The reflection carrying `(Z[X^±1], ≺_tag)` onto `(Z[X^±1], ≺_max+)`:
/// `P(X) ↦ P(X⁻¹)` for the `Min*` tags followed by negation for the
/// `*Minus` tags. It is an order isomorphism and an involution.
pub fn to_max_plus_frame<C: Coeff>(p: &LaurentPoly<C>, tag: OrderTag) -> LaurentPoly<C> {
    let p = if tag.reads_top() { p.clone() } else { p.reflect() };
    if tag.is_plus() {
        p
    } else {
        -p
    }
}

/// The group automorphism intertwining [`to_max_plus_frame`]:
/// `frame(e · P) = frame_element(e) · frame(P)`.
pub fn element_to_max_plus_frame<C: Coeff>(e: &WreathElement<C>, tag: OrderTag) -> WreathElement<C> {
    let shift = if tag.reads_top() { e.shift } else { -e.shift };
    WreathElement::new(to_max_plus_frame(&e.lamp, tag), shift)
}
