//! Semi-conjugacy classification of lamplighter actions given by the images
//! of `g` and `h₀`, typing of single elements, and the two computable pieces
//! of the C¹ obstruction.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::affine::AffineMap;
use crate::error::{precondition, Error, Result};
use crate::lamination::{act_leaf_tagged, relate, Leaf, Relation};
use crate::orders::{compare, OrderTag};
use crate::pl::{FixedPart, PLMap};
use crate::poly::LaurentPoly;
use crate::scalar::{Coeff, Scalar};
use crate::wreath::WreathElement;

/// Semi-conjugacy class of an action of `Z wr Z` on the line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassLabel {
    Cyclic,
    /// `h₀ ↦ x+α`, `g ↦ x+β` with `α:β` reduced to coprime integers.
    Translations {
        alpha: BigInt,
        beta: BigInt,
    },
    /// `g ↦ λx`, `h₀ ↦ x ± 1`; `lamp_sign` is `±1`.
    NonAbelianAffine {
        lambda: BigRational,
        lamp_sign: i8,
    },
    PlanteLike(OrderTag),
    Reducible,
    InconclusiveAtDepth(usize),
}

impl ClassLabel {
    pub fn is_affine(&self) -> bool {
        matches!(
            self,
            ClassLabel::Cyclic | ClassLabel::Translations { .. } | ClassLabel::NonAbelianAffine { .. }
        )
    }

    pub fn is_definite(&self) -> bool {
        !matches!(self, ClassLabel::InconclusiveAtDepth(_))
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::Cyclic => write!(f, "Cyclic"),
            ClassLabel::Translations { alpha, beta } => write!(f, "Translations {alpha}:{beta}"),
            ClassLabel::NonAbelianAffine { lambda, lamp_sign } => {
                let s = if *lamp_sign > 0 { '+' } else { '-' };
                write!(f, "NonAbelianAffine {lambda} {s}")
            }
            ClassLabel::PlanteLike(tag) => write!(f, "PlanteLike {tag}"),
            ClassLabel::Reducible => write!(f, "Reducible"),
            ClassLabel::InconclusiveAtDepth(d) => write!(f, "InconclusiveAtDepth {d}"),
        }
    }
}

/// Label plus, for affine classes, a map `W` conjugating the input to the
/// normal form: `W ∘ g ∘ W⁻¹` and `W ∘ h₀ ∘ W⁻¹` are the normal-form maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineClassification<Q> {
    pub label: ClassLabel,
    pub witness: Option<AffineMap<Q>>,
}

/// Coprime integers with ratio `a:b`; signs are kept.
fn reduced_ratio(a: &BigRational, b: &BigRational) -> (BigInt, BigInt) {
    let l = a.denom().lcm(b.denom());
    let x = a.numer() * (&l / a.denom());
    let y = b.numer() * (&l / b.denom());
    let g = x.gcd(&y);
    (x / &g, y / g)
}

fn sign_i8<Q: Scalar>(q: &Q) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

/// Classifies the affine action `h₀ ↦ h0`, `g ↦ g`.
///
/// A non-translation `h0` commutes with its `g`-conjugate only when `g` fixes
/// its fixed point, which is then global; otherwise the pair does not define
/// an action and `Error::NotAnAction` is returned.
pub fn classify_affine<Q: Scalar>(h0: &AffineMap<Q>, g: &AffineMap<Q>) -> Result<AffineClassification<Q>> {
    let out = |label, witness| Ok(AffineClassification { label, witness });
    if !h0.is_translation() {
        let q = h0.fixed_point().expect("non-translation");
        return if g.apply(&q) == q {
            out(ClassLabel::Reducible, None)
        } else {
            Err(Error::NotAnAction(format!(
                "{h0} and its conjugate by {g} do not commute"
            )))
        };
    }
    let alpha = h0.offset().clone();
    if g.is_translation() {
        let beta = g.offset().clone();
        return match (alpha.is_zero(), beta.is_zero()) {
            (true, true) => out(ClassLabel::Reducible, None),
            (true, false) | (false, true) => {
                let t = if alpha.is_zero() { beta } else { alpha };
                let w = AffineMap::homothety(Q::one() / t.abs())?;
                out(ClassLabel::Cyclic, Some(verified(w, h0, g, None)?))
            }
            (false, false) => {
                let (a, b) = reduced_ratio(&alpha.to_big(), &beta.to_big());
                let a_q = Q::from_big(&BigRational::from_integer(a.clone()))
                    .ok_or_else(|| Error::Precondition("ratio overflows the scalar type".into()))?;
                let w = AffineMap::homothety(a_q / alpha)?;
                let label = ClassLabel::Translations { alpha: a, beta: b };
                out(label, Some(verified(w, h0, g, None)?))
            }
        };
    }
    if alpha.is_zero() {
        // h0 trivial, g a homothety: its fixed point is global
        return out(ClassLabel::Reducible, None);
    }
    let lambda = g.slope().clone();
    let p = g.fixed_point().expect("non-translation");
    let w = AffineMap::new(Q::one() / alpha.abs(), -(p / alpha.abs()))?;
    let label = ClassLabel::NonAbelianAffine {
        lambda: lambda.to_big(),
        lamp_sign: sign_i8(&alpha),
    };
    out(label, Some(verified(w, h0, g, Some(lambda))?))
}

/// Checks that `w` carries the pair onto a normal form: translations stay
/// translations by integers (or `±1` for the cyclic case), a homothety
/// becomes `x ↦ λx` and `h₀` becomes `x ↦ x ± 1`.
fn verified<Q: Scalar>(
    w: AffineMap<Q>,
    h0: &AffineMap<Q>,
    g: &AffineMap<Q>,
    lambda: Option<Q>,
) -> Result<AffineMap<Q>> {
    let gc = g.conjugate_by(&w);
    let hc = h0.conjugate_by(&w);
    let integral = |m: &AffineMap<Q>| m.is_translation() && m.offset().floor() == *m.offset();
    let ok = match lambda {
        Some(l) => gc == AffineMap::homothety(l)? && hc.is_translation() && hc.offset().abs().is_one(),
        None => integral(&gc) && integral(&hc),
    };
    if ok {
        Ok(w)
    } else {
        Err(Error::Certificate(format!("witness {w} gives g ↦ {gc}, h0 ↦ {hc}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ElementType {
    Identity,
    ExpandingHomothety,
    ContractingHomothety,
    TotallyBounded,
}

impl fmt::Display for ElementType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ElementType::Identity => "Identity",
            ElementType::ExpandingHomothety => "ExpandingHomothety",
            ElementType::ContractingHomothety => "ContractingHomothety",
            ElementType::TotallyBounded => "TotallyBounded",
        };
        f.write_str(s)
    }
}

/// Dynamical type of `e` in the Plante-like action for `tag`.
pub fn element_type<C: Coeff>(e: &WreathElement<C>, tag: OrderTag) -> ElementType {
    if e.is_identity() {
        ElementType::Identity
    } else if e.shift == 0 {
        ElementType::TotallyBounded
    } else if e.shift.signum() == tag.expanding_shift() {
        ElementType::ExpandingHomothety
    } else {
        ElementType::ContractingHomothety
    }
}

/// Classifies the action `g ↦ g`, `h₀ ↦ h0` by PL homeomorphisms, checking
/// relations among `h_n = gⁿ h₀ g⁻ⁿ` for `|n| ≤ depth`.
///
/// When every `h_n` commutes with every other exactly the input is a genuine
/// action and the structural tests apply. Otherwise the maps are read as a
/// sample of an action (for instance a finite window of a realization) and
/// only a Plante-like pattern can be recognized: at the fixed point `p` of `g`
/// every word `h_i^a h_j^b` with `i < j` must move `p` to the side dictated by
/// the dominant letter, `h_j^b` when `g` expands and `h_i^a` when it contracts.
pub fn classify_pl<Q: Scalar>(g: &PLMap<Q>, h0: &PLMap<Q>, depth: usize) -> Result<ClassLabel> {
    if let (Some(ga), Some(ha)) = (g.as_affine(), h0.as_affine()) {
        return Ok(classify_affine(&ha, &ga)?.label);
    }
    let fix_g = g.fixed_points();
    let fix_h = h0.fixed_points();
    if fix_g.meets(&fix_h) {
        return Ok(ClassLabel::Reducible);
    }
    let d = depth as i64;
    let ginv = g.inverse();
    let conj = Conjugates::new(g, &ginv, h0);
    let exact = conj.relations_hold(d);
    let hs: Vec<PLMap<Q>> = if exact {
        (-d..=d).map(|n| g.pow(n).compose(h0).compose(&ginv.pow(n))).collect()
    } else {
        Vec::new()
    };
    let h = |n: i64| &hs[(n + d) as usize];
    let inconclusive = Ok(ClassLabel::InconclusiveAtDepth(depth));

    if fix_g.is_empty() {
        if !exact {
            return inconclusive;
        }
        if h0.is_identity() {
            return Ok(ClassLabel::Cyclic);
        }
        // a point of Fix(h0) whose g-orbit stays in Fix(h0) is fixed by every h_n
        let candidates = fix_h.parts.iter().map(FixedPart::sample);
        for x in candidates {
            let mut orbit_ok = true;
            let (mut up, mut down) = (x.clone(), x.clone());
            for _ in 0..d {
                up = g.eval(&up);
                down = ginv.eval(&down);
                if !fix_h.contains(&up) || !fix_h.contains(&down) {
                    orbit_ok = false;
                    break;
                }
            }
            if orbit_ok {
                return Ok(ClassLabel::Cyclic);
            }
        }
        if fix_h.is_empty() {
            // h0^a = g^b means the translation numbers are in ratio b:a
            let mut ha = PLMap::identity();
            for a in 1..=d.max(1) {
                ha = ha.compose(h0);
                for b in (-d..=d).filter(|b| *b != 0) {
                    if ha == g.pow(b) {
                        let (x, y) = reduced_ratio(
                            &BigRational::from_integer(b.into()),
                            &BigRational::from_integer(a.into()),
                        );
                        return Ok(ClassLabel::Translations { alpha: x, beta: y });
                    }
                }
            }
        }
        return inconclusive;
    }

    let Some(p) = fix_g.single_point().cloned() else {
        return inconclusive;
    };
    let side = h0.displacement(&p);
    let moved = |n: i64| conj.eval(n, 1, &p).cmp(&p);
    if side == Ordering::Equal || (-d..=d).any(|n| moved(n) != side) {
        return inconclusive;
    }
    let probe = if p.is_zero() { Q::one() } else { p.clone() + p.abs() };
    let expanding = g.displacement(&probe) == Ordering::Greater;
    let tag = match (expanding, side == Ordering::Greater) {
        (true, true) => OrderTag::MaxPlus,
        (true, false) => OrderTag::MaxMinus,
        (false, true) => OrderTag::MinPlus,
        (false, false) => OrderTag::MinMinus,
    };

    if exact {
        // nested compact components of supp(h_n) around p, growing towards
        // the expanding side, are the Plante pattern
        let comps: Option<Vec<(Q, Q)>> = (-d..=d).map(|n| support_component(h(n), &p)).collect();
        if let Some(comps) = comps {
            let grows = |a: &(Q, Q), b: &(Q, Q)| b.0 < a.0 && a.1 < b.1;
            let nested = comps.windows(2).all(|w| {
                if expanding {
                    grows(&w[0], &w[1])
                } else {
                    grows(&w[1], &w[0])
                }
            });
            return if nested {
                Ok(ClassLabel::PlanteLike(tag))
            } else {
                inconclusive
            };
        }
        // h_1^q = h_0^r: affine with λ = r/q
        if d >= 1 {
            let h1 = h(1);
            let mut h1q = PLMap::identity();
            for q in 1..=d {
                h1q = h1q.compose(h1);
                for r in 1..=d * d {
                    if h1q == h0.pow(r) {
                        return Ok(ClassLabel::NonAbelianAffine {
                            lambda: BigRational::new(r.into(), q.into()),
                            lamp_sign: if side == Ordering::Greater { 1 } else { -1 },
                        });
                    }
                }
            }
        }
        return inconclusive;
    }

    let expect = |a: i64, b: i64| {
        let dominant = if expanding { b } else { a };
        match (dominant > 0, side) {
            (true, s) => s,
            (false, s) => s.reverse(),
        }
    };
    for i in -d..=d {
        for j in i + 1..=d {
            for b in [-1, 1] {
                let y = conj.eval(j, b, &p);
                for a in [-2, -1, 1, 2] {
                    if conj.eval(i, a, &y).cmp(&p) != expect(a, b) {
                        return inconclusive;
                    }
                }
            }
        }
    }
    Ok(ClassLabel::PlanteLike(tag))
}

/// Pointwise evaluation of `h_n^k = gⁿ h₀^k g⁻ⁿ` without composing maps.
struct Conjugates<'a, Q> {
    g: &'a PLMap<Q>,
    ginv: &'a PLMap<Q>,
    h0: &'a PLMap<Q>,
    h0inv: PLMap<Q>,
}

impl<'a, Q: Scalar> Conjugates<'a, Q> {
    fn new(g: &'a PLMap<Q>, ginv: &'a PLMap<Q>, h0: &'a PLMap<Q>) -> Self {
        Conjugates {
            g,
            ginv,
            h0,
            h0inv: h0.inverse(),
        }
    }

    fn eval(&self, n: i64, k: i64, x: &Q) -> Q {
        let (fwd, back) = if n >= 0 {
            (self.g, self.ginv)
        } else {
            (self.ginv, self.g)
        };
        let mut y = x.clone();
        for _ in 0..n.unsigned_abs() {
            y = back.eval(&y);
        }
        let h = if k >= 0 { self.h0 } else { &self.h0inv };
        for _ in 0..k.unsigned_abs() {
            y = h.eval(&y);
        }
        for _ in 0..n.unsigned_abs() {
            y = fwd.eval(&y);
        }
        y
    }

    /// Whether `h_i` and `h_j` commute for `|i|, |j| ≤ d`. Breakpoints of `g`
    /// and `h₀` are tried first, which refutes sampled data cheaply; only
    /// then are the maps composed and compared exactly.
    fn relations_hold(&self, d: i64) -> bool {
        let probes: Vec<Q> = self
            .g
            .breakpoints()
            .iter()
            .chain(self.h0.breakpoints())
            .cloned()
            .collect();
        for i in -d..=d {
            for j in i + 1..=d {
                for x in &probes {
                    if self.eval(i, 1, &self.eval(j, 1, x)) != self.eval(j, 1, &self.eval(i, 1, x)) {
                        return false;
                    }
                }
            }
        }
        let hs: Vec<PLMap<Q>> = (-d..=d)
            .map(|n| self.g.pow(n).compose(self.h0).compose(&self.ginv.pow(n)))
            .collect();
        (0..hs.len()).all(|i| (i + 1..hs.len()).all(|j| hs[i].commutes_with(&hs[j])))
    }
}

/// The component of `{x : m(x) ≠ x}` containing `p`, if it is bounded.
fn support_component<Q: Scalar>(m: &PLMap<Q>, p: &Q) -> Option<(Q, Q)> {
    let fix = m.fixed_points();
    let mut lo = None;
    let mut hi = None;
    for part in &fix.parts {
        let (a, b) = match part {
            FixedPart::Point(x) => (Some(x.clone()), Some(x.clone())),
            FixedPart::Interval { lo, hi } => (lo.clone(), hi.clone()),
        };
        if let Some(b) = b.filter(|b| b < p) {
            lo = Some(b);
        }
        if hi.is_none() {
            if let Some(a) = a.filter(|a| a > p) {
                hi = Some(a);
            }
        }
    }
    Some((lo?, hi?))
}

/// Outcome of [`disjointness_check`].
#[derive(Clone, Debug, Serialize)]
pub struct DisjointnessReport {
    pub n_letters: u64,
    pub n: u32,
    pub tag: OrderTag,
    pub leaves: Vec<Leaf<i64>>,
    /// Pairs compared by `relate`.
    pub pairs_checked: u64,
    pub disjoint: bool,
    /// Indices (into `leaves`) of a non-disjoint pair.
    pub witness: Option<(usize, usize)>,
}

/// Above this many leaves only neighbours in the order are compared, which
/// suffices for a family without crossings.
const FULL_PAIRWISE_LIMIT: usize = 200;

/// The leaves `f_i · Leaf(−n−1, 0)` for `f_i = h_{−n+1}^{i_{n−1}} ⋯ h_0^{i_0}`,
/// `i ∈ {1..N}ⁿ`, and whether they are pairwise disjoint.
pub fn disjointness_check(big_n: u64, n: u32, tag: OrderTag) -> Result<DisjointnessReport> {
    if big_n == 0 || n == 0 {
        return precondition("disjointness check needs N ≥ 1 and n ≥ 1");
    }
    let count = big_n
        .checked_pow(n)
        .filter(|c| *c <= 10_000_000)
        .ok_or_else(|| Error::Precondition(format!("{big_n}^{n} leaves is too many")))?;
    let base = Leaf::of_tagged(-(n as i64) - 1, &LaurentPoly::<i64>::zero(), tag);
    let leaves: Vec<Leaf<i64>> = (0..count)
        .into_par_iter()
        .map(|idx| {
            let mut rest = idx;
            let terms = (0..n as i64).map(|j| {
                let digit = (rest % big_n) as i64 + 1;
                rest /= big_n;
                (-j, digit)
            });
            let f = WreathElement::lamp(LaurentPoly::from_terms(terms.collect::<Vec<_>>()));
            act_leaf_tagged(&f, &base, tag)
        })
        .collect();

    let frame = tag.max_counterpart();
    let mut order: Vec<usize> = (0..leaves.len()).collect();
    order.par_sort_by(|&a, &b| compare(&leaves[a].tail, &leaves[b].tail, frame));
    let neighbours: Vec<(usize, usize)> = order.windows(2).map(|w| (w[0], w[1])).collect();
    let mut pairs_checked = neighbours.len() as u64;
    let mut witness = neighbours
        .par_iter()
        .find_first(|(a, b)| relate(&leaves[*a], &leaves[*b], tag) != Relation::DisjointLeft)
        .copied();
    if witness.is_none() && leaves.len() <= FULL_PAIRWISE_LIMIT {
        'outer: for a in 0..leaves.len() {
            for b in a + 1..leaves.len() {
                pairs_checked += 1;
                if !relate(&leaves[a], &leaves[b], tag).is_disjoint() {
                    witness = Some((a, b));
                    break 'outer;
                }
            }
        }
    }
    Ok(DisjointnessReport {
        n_letters: big_n,
        n,
        tag,
        leaves,
        pairs_checked,
        disjoint: witness.is_none(),
        witness,
    })
}

/// `((1−ε)^{2N+2} · N · λ)^n`.
pub fn c1_growth_predicate<Q: Scalar>(lambda: &Q, big_n: u32, eps: &Q, n: u32) -> Result<Q> {
    if !lambda.is_positive() {
        return precondition(format!("λ must be positive, got {lambda}"));
    }
    if eps.is_negative() || *eps >= Q::one() {
        return precondition(format!("ε must lie in [0, 1), got {eps}"));
    }
    let base = (Q::one() - eps.clone()).powi(2 * big_n as i64 + 2) * Q::from_int(big_n as i64) * lambda.clone();
    Ok(base.powi(n as i64))
}
