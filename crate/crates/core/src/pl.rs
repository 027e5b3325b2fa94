//! Exact piecewise-linear homeomorphisms of the line.
//!
//! A map is given by finitely many breakpoints `x_0 < … < x_k` with values
//! `y_0 < … < y_k`, linear in between, and affine beyond the outermost
//! breakpoints with the given end slopes. Maps are kept canonical: no
//! breakpoint has equal slopes on both sides, and an affine map has the single
//! breakpoint `0`, so structural equality is equality of maps.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::affine::AffineMap;
use crate::error::{Error, Result};
use crate::scalar::{parse_scalar, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PLMap<Q> {
    xs: Vec<Q>,
    ys: Vec<Q>,
    left_slope: Q,
    right_slope: Q,
}

/// A connected piece of a fixed-point set; `None` ends are infinite.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FixedPart<Q> {
    Point(Q),
    Interval { lo: Option<Q>, hi: Option<Q> },
}

impl<Q: Scalar> FixedPart<Q> {
    pub fn contains(&self, x: &Q) -> bool {
        match self {
            FixedPart::Point(p) => p == x,
            FixedPart::Interval { lo, hi } => lo.as_ref().is_none_or(|l| l <= x) && hi.as_ref().is_none_or(|h| x <= h),
        }
    }

    fn lo(&self) -> Option<&Q> {
        match self {
            FixedPart::Point(p) => Some(p),
            FixedPart::Interval { lo, .. } => lo.as_ref(),
        }
    }

    fn hi(&self) -> Option<&Q> {
        match self {
            FixedPart::Point(p) => Some(p),
            FixedPart::Interval { hi, .. } => hi.as_ref(),
        }
    }

    /// Some point of the part.
    pub fn sample(&self) -> Q {
        match (self.lo(), self.hi()) {
            (Some(a), Some(b)) => Q::midpoint(a, b),
            (Some(a), None) => a.clone(),
            (None, Some(b)) => b.clone(),
            (None, None) => Q::zero(),
        }
    }
}

/// The fixed-point set of a map, as sorted disjoint parts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FixedSet<Q> {
    pub parts: Vec<FixedPart<Q>>,
}

impl<Q: Scalar> FixedSet<Q> {
    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_whole_line(&self) -> bool {
        matches!(self.parts.as_slice(), [FixedPart::Interval { lo: None, hi: None }])
    }

    pub fn contains(&self, x: &Q) -> bool {
        self.parts.iter().any(|p| p.contains(x))
    }

    /// The single fixed point, when the set is one point.
    pub fn single_point(&self) -> Option<&Q> {
        match self.parts.as_slice() {
            [FixedPart::Point(p)] => Some(p),
            _ => None,
        }
    }

    /// Whether `self ∩ other` is nonempty.
    pub fn meets(&self, other: &FixedSet<Q>) -> bool {
        self.parts.iter().any(|a| {
            other.parts.iter().any(|b| {
                let lo_ok = match (a.lo(), b.hi()) {
                    (Some(l), Some(h)) => l <= h,
                    _ => true,
                };
                let hi_ok = match (b.lo(), a.hi()) {
                    (Some(l), Some(h)) => l <= h,
                    _ => true,
                };
                lo_ok && hi_ok
            })
        })
    }

    /// The leftmost and rightmost finite ends of unbounded parts, if the set
    /// contains neighbourhoods of both infinities.
    pub fn unbounded_ends(&self) -> Option<(Q, Q)> {
        let first = self.parts.first()?;
        let last = self.parts.last()?;
        match (first, last) {
            (FixedPart::Interval { lo: None, hi: Some(a) }, FixedPart::Interval { lo: Some(b), hi: None }) => {
                Some((a.clone(), b.clone()))
            }
            _ => None,
        }
    }
}

impl<Q: Scalar> fmt::Display for FixedSet<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        let mut first = true;
        for p in &self.parts {
            if !first {
                write!(f, " ∪ ")?;
            }
            first = false;
            match p {
                FixedPart::Point(x) => write!(f, "{{{x}}}")?,
                FixedPart::Interval { lo, hi } => {
                    let l = lo.as_ref().map_or("-∞".to_string(), |v| v.to_string());
                    let h = hi.as_ref().map_or("+∞".to_string(), |v| v.to_string());
                    write!(f, "[{l}, {h}]")?;
                }
            }
        }
        Ok(())
    }
}

impl<Q: Scalar> PLMap<Q> {
    pub fn new(xs: Vec<Q>, ys: Vec<Q>, left_slope: Q, right_slope: Q) -> Result<Self> {
        if xs.is_empty() || xs.len() != ys.len() {
            return Err(Error::InvalidPl(
                "need at least one breakpoint and one value per breakpoint".into(),
            ));
        }
        if !left_slope.is_positive() || !right_slope.is_positive() {
            return Err(Error::InvalidPl("end slopes must be positive".into()));
        }
        for i in 1..xs.len() {
            if xs[i - 1] >= xs[i] {
                return Err(Error::InvalidPl(format!(
                    "breakpoints must increase strictly ({} then {})",
                    xs[i - 1],
                    xs[i]
                )));
            }
            if ys[i - 1] >= ys[i] {
                return Err(Error::InvalidPl(format!(
                    "map is not increasing between {} and {}",
                    xs[i - 1],
                    xs[i]
                )));
            }
        }
        Ok(PLMap {
            xs,
            ys,
            left_slope,
            right_slope,
        }
        .canonical())
    }

    pub fn identity() -> Self {
        Self::from_affine(&AffineMap::identity())
    }

    pub fn from_affine(a: &AffineMap<Q>) -> Self {
        PLMap {
            xs: vec![Q::zero()],
            ys: vec![a.offset().clone()],
            left_slope: a.slope().clone(),
            right_slope: a.slope().clone(),
        }
    }

    /// Interpolates through increasing nodes, extended beyond the outermost
    /// nodes with the given slopes.
    pub fn interpolate(nodes: &[(Q, Q)], left_slope: Q, right_slope: Q) -> Result<Self> {
        let (xs, ys) = nodes.iter().cloned().unzip();
        Self::new(xs, ys, left_slope, right_slope)
    }

    pub fn breakpoints(&self) -> &[Q] {
        &self.xs
    }

    pub fn values(&self) -> &[Q] {
        &self.ys
    }

    pub fn left_slope(&self) -> &Q {
        &self.left_slope
    }

    pub fn right_slope(&self) -> &Q {
        &self.right_slope
    }

    /// Slopes of the pieces from left to right (`len + 1` entries).
    pub fn slopes(&self) -> Vec<Q> {
        let mut out = Vec::with_capacity(self.xs.len() + 1);
        out.push(self.left_slope.clone());
        for i in 1..self.xs.len() {
            out.push((self.ys[i].clone() - self.ys[i - 1].clone()) / (self.xs[i].clone() - self.xs[i - 1].clone()));
        }
        out.push(self.right_slope.clone());
        out
    }

    fn canonical(self) -> Self {
        let slopes = self.slopes();
        let keep: Vec<usize> = (0..self.xs.len()).filter(|&i| slopes[i] != slopes[i + 1]).collect();
        if keep.is_empty() {
            let y0 = self.eval(&Q::zero());
            return PLMap {
                xs: vec![Q::zero()],
                ys: vec![y0],
                left_slope: self.left_slope,
                right_slope: self.right_slope,
            };
        }
        if keep.len() == self.xs.len() {
            return self;
        }
        PLMap {
            xs: keep.iter().map(|&i| self.xs[i].clone()).collect(),
            ys: keep.iter().map(|&i| self.ys[i].clone()).collect(),
            left_slope: self.left_slope,
            right_slope: self.right_slope,
        }
    }

    pub fn as_affine(&self) -> Option<AffineMap<Q>> {
        if self.xs.len() == 1 && self.left_slope == self.right_slope {
            let s = self.left_slope.clone();
            let b = self.ys[0].clone() - s.clone() * self.xs[0].clone();
            AffineMap::new(s, b).ok()
        } else {
            None
        }
    }

    pub fn is_affine(&self) -> bool {
        self.as_affine().is_some()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn eval(&self, x: &Q) -> Q {
        let n = self.xs.len();
        if *x <= self.xs[0] {
            return self.ys[0].clone() + self.left_slope.clone() * (x.clone() - self.xs[0].clone());
        }
        if *x >= self.xs[n - 1] {
            return self.ys[n - 1].clone() + self.right_slope.clone() * (x.clone() - self.xs[n - 1].clone());
        }
        // xs[i] <= x < xs[i + 1]
        let i = self.xs.partition_point(|b| b <= x) - 1;
        let t = (x.clone() - self.xs[i].clone()) / (self.xs[i + 1].clone() - self.xs[i].clone());
        self.ys[i].clone() + t * (self.ys[i + 1].clone() - self.ys[i].clone())
    }

    pub fn inverse(&self) -> Self {
        PLMap {
            xs: self.ys.clone(),
            ys: self.xs.clone(),
            left_slope: Q::one() / self.left_slope.clone(),
            right_slope: Q::one() / self.right_slope.clone(),
        }
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Self) -> Self {
        let back = other.inverse();
        let mut xs: Vec<Q> = other.xs.clone();
        xs.extend(self.xs.iter().map(|y| back.eval(y)));
        xs.sort();
        xs.dedup();
        let ys = xs.iter().map(|x| self.eval(&other.eval(x))).collect();
        PLMap {
            xs,
            ys,
            left_slope: self.left_slope.clone() * other.left_slope.clone(),
            right_slope: self.right_slope.clone() * other.right_slope.clone(),
        }
        .canonical()
    }

    /// `w ∘ self ∘ w⁻¹`
    pub fn conjugate_by(&self, w: &Self) -> Self {
        w.compose(self).compose(&w.inverse())
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = Self::identity();
        let mut sq = base;
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&sq);
            }
            k >>= 1;
            if k > 0 {
                sq = sq.compose(&sq);
            }
        }
        acc
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.compose(other) == other.compose(self)
    }

    /// Sign of `f(x) - x`.
    pub fn displacement(&self, x: &Q) -> Ordering {
        self.eval(x).cmp(x)
    }

    /// The exact fixed-point set, from the linear equation on each piece.
    pub fn fixed_points(&self) -> FixedSet<Q> {
        let n = self.xs.len();
        let slopes = self.slopes();
        debug_assert_eq!(slopes.len(), n + 1);
        let mut parts: Vec<FixedPart<Q>> = Vec::new();
        for (piece, s) in slopes.into_iter().enumerate() {
            let lo = (piece > 0).then(|| self.xs[piece - 1].clone());
            let hi = (piece < n).then(|| self.xs[piece].clone());
            let (ax, ay) = if piece == 0 {
                (self.xs[0].clone(), self.ys[0].clone())
            } else {
                (self.xs[piece - 1].clone(), self.ys[piece - 1].clone())
            };
            // f(x) - x = (s - 1)(x - ax) + (ay - ax)
            let gap = ay - ax.clone();
            let part = if s.is_one() {
                gap.is_zero().then_some(FixedPart::Interval {
                    lo: lo.clone(),
                    hi: hi.clone(),
                })
            } else {
                let x = ax - gap / (s - Q::one());
                let inside = lo.as_ref().is_none_or(|l| *l <= x) && hi.as_ref().is_none_or(|h| x <= *h);
                inside.then_some(FixedPart::Point(x))
            };
            if let Some(p) = part {
                push_merged(&mut parts, p);
            }
        }
        FixedSet { parts }
    }
}

fn push_merged<Q: Scalar>(parts: &mut Vec<FixedPart<Q>>, next: FixedPart<Q>) {
    if let Some(last) = parts.last_mut() {
        let touches = match (last.hi(), next.lo()) {
            (Some(h), Some(l)) => h >= l,
            _ => false,
        };
        if touches {
            let lo = last.lo().cloned();
            let hi = match (last.hi(), next.hi()) {
                (Some(a), Some(b)) => Some(a.clone().max(b.clone())),
                _ => None,
            };
            let merged = match (&lo, &hi) {
                (Some(a), Some(b)) if a == b => FixedPart::Point(a.clone()),
                _ => FixedPart::Interval { lo, hi },
            };
            *last = merged;
            return;
        }
    }
    parts.push(next);
}

pub fn pl_fixed_points<Q: Scalar>(m: &PLMap<Q>) -> FixedSet<Q> {
    m.fixed_points()
}

impl<Q: Scalar> fmt::Display for PLMap<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PL[slope {} | ", self.left_slope)?;
        for (i, (x, y)) in self.xs.iter().zip(&self.ys).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}↦{y}")?;
        }
        write!(f, " | slope {}]", self.right_slope)
    }
}

impl<Q: Scalar> fmt::Debug for PLMap<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct RawPl {
    breakpoints: Vec<String>,
    values: Vec<String>,
    left_slope: String,
    right_slope: String,
}

impl<Q: Scalar> Serialize for PLMap<Q> {
    /// `{"breakpoints": ["p/q", …], "values": […], "left_slope": "…", "right_slope": "…"}`
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawPl {
            breakpoints: self.xs.iter().map(|v| v.to_string()).collect(),
            values: self.ys.iter().map(|v| v.to_string()).collect(),
            left_slope: self.left_slope.to_string(),
            right_slope: self.right_slope.to_string(),
        }
        .serialize(s)
    }
}

impl<'de, Q: Scalar> Deserialize<'de> for PLMap<Q> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RawPl::deserialize(d)?;
        let num = |t: &String| parse_scalar::<Q>(t).ok_or_else(|| D::Error::custom(format!("invalid rational {t:?}")));
        let xs = raw.breakpoints.iter().map(num).collect::<std::result::Result<_, _>>()?;
        let ys = raw.values.iter().map(num).collect::<std::result::Result<_, _>>()?;
        PLMap::new(xs, ys, num(&raw.left_slope)?, num(&raw.right_slope)?).map_err(D::Error::custom)
    }
}
