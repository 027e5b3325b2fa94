//! The lamplighter group over `B`: `G = Z wr B = (⊕_B Z) ⋊ B`, its twisted
//! Plante-like orders, and the stabilization of base-point orderings to `<_B`.
//!
//! Everything is computed on the ordered configuration set. Points of the line
//! that are suprema of configuration intervals are represented by [`BCut`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::base_group::{compare_b, BElement};
use crate::error::{precondition, Error, Result};

/// A finitely supported map `B → Z`, keyed in `<_B` order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BConfig {
    coeffs: BTreeMap<BElement, BigInt>,
}

impl BConfig {
    pub fn zero() -> Self {
        BConfig::default()
    }

    /// `δ_b`
    pub fn delta(b: BElement) -> Self {
        BConfig::from_terms([(b, BigInt::from(1))])
    }

    pub fn from_terms<I: IntoIterator<Item = (BElement, BigInt)>>(terms: I) -> Self {
        let mut f = BConfig::zero();
        for (b, c) in terms {
            f.add_term(b, c);
        }
        f
    }

    pub fn add_term(&mut self, b: BElement, c: BigInt) {
        let entry = self.coeffs.entry(b).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coeffs.retain(|_, v| !v.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, b: &BElement) -> BigInt {
        self.coeffs.get(b).cloned().unwrap_or_default()
    }

    /// Terms in increasing `<_B` order of keys.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&BElement, &BigInt)> + '_ {
        self.coeffs.iter()
    }

    pub fn support(&self) -> impl DoubleEndedIterator<Item = &BElement> + '_ {
        self.coeffs.keys()
    }

    /// `max_{<_B} supp(f)`
    pub fn max_support(&self) -> Option<&BElement> {
        self.coeffs.keys().next_back()
    }

    pub fn add(&self, other: &BConfig) -> BConfig {
        let mut out = self.clone();
        for (b, c) in other.terms() {
            out.add_term(b.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> BConfig {
        BConfig {
            coeffs: self.coeffs.iter().map(|(b, c)| (b.clone(), -c)).collect(),
        }
    }

    /// `λ_b(f)(k) = f(b⁻¹k)`, so `δ_c ↦ δ_{bc}`.
    pub fn left_translate(&self, b: &BElement) -> BConfig {
        BConfig {
            coeffs: self.coeffs.iter().map(|(k, c)| (b.compose(k), c.clone())).collect(),
        }
    }

    /// `ρ_s(f)(k) = f(ks)`, so `δ_c ↦ δ_{cs⁻¹}`.
    pub fn right_twist(&self, s: &BElement) -> BConfig {
        let sinv = s.inverse();
        BConfig {
            coeffs: self.coeffs.iter().map(|(k, c)| (k.compose(&sinv), c.clone())).collect(),
        }
    }

    /// The restriction to keys strictly above `b`.
    pub fn above(&self, b: &BElement) -> BConfig {
        use std::ops::Bound;
        BConfig {
            coeffs: self
                .coeffs
                .range((Bound::Excluded(b), Bound::Unbounded))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for BConfig {
    /// `3·δ[2x+1] - δ[x]`, or `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (b, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if abs == BigInt::from(1) {
                write!(f, "δ[{b}]")?;
            } else {
                write!(f, "{abs}·δ[{b}]")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BConfig({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct RawTerm {
    b: BElement,
    #[serde(with = "crate::json::bigint")]
    c: BigInt,
}

impl Serialize for BConfig {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<RawTerm> = self
            .terms()
            .map(|(b, c)| RawTerm {
                b: b.clone(),
                c: c.clone(),
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BConfig {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<RawTerm>::deserialize(d)?;
        Ok(BConfig::from_terms(terms.into_iter().map(|t| (t.b, t.c))))
    }
}

/// Orders configurations by the value at the `<_B`-largest key where they
/// differ.
pub fn compare_bconfig(f1: &BConfig, f2: &BConfig) -> Ordering {
    let mut a = f1.coeffs.iter().rev().peekable();
    let mut b = f2.coeffs.iter().rev().peekable();
    let zero = BigInt::zero();
    loop {
        let (ka, kb) = match (a.peek(), b.peek()) {
            (None, None) => return Ordering::Equal,
            (Some((k, _)), None) => (Some(*k), None),
            (None, Some((k, _))) => (None, Some(*k)),
            (Some((ka, _)), Some((kb, _))) => (Some(*ka), Some(*kb)),
        };
        // the larger key decides unless both maps carry the same coefficient there
        let (va, vb) = match (ka, kb) {
            (Some(x), Some(y)) if x == y => {
                let va = a.next().expect("peeked").1;
                let vb = b.next().expect("peeked").1;
                (va, vb)
            }
            (Some(x), Some(y)) if x > y => (a.next().expect("peeked").1, &zero),
            (Some(_), None) => (a.next().expect("peeked").1, &zero),
            _ => (&zero, b.next().expect("peeked").1),
        };
        match va.cmp(vb) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
}

/// `(f, b) ∈ (⊕_B Z) ⋊ B`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct GBElement {
    pub config: BConfig,
    pub base: BElement,
}

impl GBElement {
    pub fn new(config: BConfig, base: BElement) -> Self {
        GBElement { config, base }
    }

    pub fn identity() -> Self {
        GBElement::new(BConfig::zero(), BElement::identity())
    }

    /// `(f₁, b₁)(f₂, b₂) = (f₁ + λ_{b₁} f₂, b₁ b₂)`
    pub fn mul(&self, other: &GBElement) -> GBElement {
        GBElement {
            config: self.config.add(&other.config.left_translate(&self.base)),
            base: self.base.compose(&other.base),
        }
    }

    pub fn inv(&self) -> GBElement {
        let binv = self.base.inverse();
        GBElement {
            config: self.config.left_translate(&binv).neg(),
            base: binv,
        }
    }
}

impl fmt::Display for GBElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.config, self.base)
    }
}

pub fn mul_gb(a: &GBElement, b: &GBElement) -> GBElement {
    a.mul(b)
}

pub fn inv_gb(a: &GBElement) -> GBElement {
    a.inv()
}

/// `(r, b) · f = r + λ_b(f)`
pub fn act_bconfig(e: &GBElement, f: &BConfig) -> BConfig {
    e.config.add(&f.left_translate(&e.base))
}

/// `τⁿ(f, b) = (ρ_{tⁿ}(f), b)` with `t: x ↦ x + 1`.
pub fn tau_n(e: &GBElement, n: i64) -> GBElement {
    GBElement {
        config: e.config.right_twist(&BElement::t().pow(n)),
        base: e.base.clone(),
    }
}

/// `max_{<_B} {s t⁻ⁿ : s ∈ supp(f)}`.
pub fn maxsupp_after_twist(f: &BConfig, n: i64) -> Result<BElement> {
    let tinv = BElement::t().pow(-n);
    // right multiplication does not preserve <_B, so scan the whole support
    f.support()
        .map(|s| s.compose(&tinv))
        .max()
        .ok_or_else(|| Error::Precondition("maxsupp of the zero configuration".into()))
}

/// The supremum of `{f : f agrees with tail strictly above base}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct BCut {
    tail: BConfig,
    base: BElement,
}

impl BCut {
    /// Canonical cut through `f` at `b`; `f` is truncated to keys above `b`.
    pub fn new(f: &BConfig, b: BElement) -> Self {
        BCut {
            tail: f.above(&b),
            base: b,
        }
    }

    /// `p_b`, the cut of the zero configuration at `b`.
    pub fn at(b: BElement) -> Self {
        BCut::new(&BConfig::zero(), b)
    }

    pub fn tail(&self) -> &BConfig {
        &self.tail
    }

    pub fn base(&self) -> &BElement {
        &self.base
    }

    /// `e · cut(f, b) = cut(e·f, π(e) b)`
    pub fn act(&self, e: &GBElement) -> BCut {
        BCut::new(&act_bconfig(e, &self.tail), e.base.compose(&self.base))
    }
}

impl fmt::Display for BCut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sup[{} | {}]", self.tail, self.base)
    }
}

/// Compares two cuts: tails above the larger base decide, and on a tie the
/// cut at the lower base is the smaller one.
pub fn compare_bcut(c1: &BCut, c2: &BCut) -> Ordering {
    match compare_b(&c1.base, &c2.base) {
        Ordering::Equal => compare_bconfig(&c1.tail, &c2.tail),
        Ordering::Less => match compare_bconfig(&c1.tail.above(&c2.base), &c2.tail) {
            Ordering::Equal => Ordering::Less,
            other => other,
        },
        Ordering::Greater => match compare_bconfig(&c1.tail, &c2.tail.above(&c1.base)) {
            Ordering::Equal => Ordering::Greater,
            other => other,
        },
    }
}

/// Order of `ψ(τⁿ g₁)(p₀)` and `ψ(τⁿ g₂)(p₀)`.
pub fn base_orbit_compare(g1: &GBElement, g2: &GBElement, n: i64) -> Ordering {
    let point = |g: &GBElement| BCut::at(BElement::identity()).act(&tau_n(g, n));
    compare_bcut(&point(g1), &point(g2))
}

/// One row of a stabilization scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizationRow {
    pub n: i64,
    pub ordering: Ordering,
    /// `maxsupp_after_twist(fᵢ, n) <_B bᵢ` for both elements.
    pub analytic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizationReport {
    /// Least `N` with agreement on all of `[N, cap]`.
    pub stabilized_at: i64,
    pub expected: Ordering,
    /// Least `n` at which the analytic condition holds; it then holds for
    /// all larger `n` and forces agreement, so `stabilized_at ≤ analytic_n`.
    pub analytic_n: Option<i64>,
    pub rows: Vec<StabilizationRow>,
}

impl StabilizationReport {
    /// Agreement is proved for every `n ≥ analytic_n`, not just up to the cap.
    pub fn certified(&self) -> bool {
        self.analytic_n
            .is_some_and(|a| self.stabilized_at <= a && self.rows.iter().any(|r| r.n == a))
    }
}

fn analytic_holds(g: &GBElement, n: i64) -> bool {
    match maxsupp_after_twist(&g.config, n) {
        Ok(m) => m < g.base,
        Err(_) => true,
    }
}

/// The least `N ≤ cap` from which the twisted base-point order agrees with
/// `<_B` on the bases, scanning `n ∈ [0, cap]`.
pub fn stabilization_n(g1: &GBElement, g2: &GBElement, cap: u64) -> Result<StabilizationReport> {
    if g1.base == g2.base {
        return precondition(format!("bases must differ, both are {}", g1.base));
    }
    let expected = compare_b(&g1.base, &g2.base);
    let cap = cap as i64;
    let rows: Vec<StabilizationRow> = (0..=cap)
        .into_par_iter()
        .map(|n| StabilizationRow {
            n,
            ordering: base_orbit_compare(g1, g2, n),
            analytic: analytic_holds(g1, n) && analytic_holds(g2, n),
        })
        .collect();
    let mut stabilized_at = None;
    for row in rows.iter().rev() {
        if row.ordering != expected {
            break;
        }
        stabilized_at = Some(row.n);
    }
    let stabilized_at = stabilized_at.ok_or(Error::NotStabilizedBy { cap: cap as u64 })?;
    let analytic_n = rows.iter().find(|r| r.analytic).map(|r| r.n);
    if let Some(a) = analytic_n {
        if a < stabilized_at {
            return Err(Error::Certificate(format!(
                "analytic bound holds at n = {a} but agreement only from {stabilized_at}"
            )));
        }
    }
    Ok(StabilizationReport {
        stabilized_at,
        expected,
        analytic_n,
        rows,
    })
}

/// A random element of `B`: `x ↦ 2^m x + d` with `m ∈ [-1, 2]` and `d` a
/// half-integer in `[-4, 4]`.
pub fn random_b<R: Rng + ?Sized>(rng: &mut R) -> BElement {
    BElement::new(rng.gen_range(-1..=2), rng.gen_range(-8..=8), 1)
}

/// A random element of `G` with at most `size` support points and
/// coefficients in `[-size, size]`.
pub fn random_gb<R: Rng + ?Sized>(rng: &mut R, size: u32) -> GBElement {
    let k = rng.gen_range(0..=size);
    let terms: Vec<(BElement, BigInt)> = (0..k)
        .map(|_| {
            let mut c = 0i64;
            while c == 0 {
                c = rng.gen_range(-(size as i64)..=size as i64);
            }
            (random_b(rng), BigInt::from(c))
        })
        .collect();
    GBElement::new(BConfig::from_terms(terms), random_b(rng))
}
