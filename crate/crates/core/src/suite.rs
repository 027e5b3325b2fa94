//! The property runner behind `solvline verify`.
//!
//! Each property draws its samples from a generator seeded by the run seed
//! and the property name, so reports are reproducible and independent of
//! which properties run. The first violated property stops the run.

use std::cmp::Ordering;
use std::fmt;
use std::time::Instant;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::affine::AffineMap;
use crate::base_group::compare_b;
use crate::classify::{classify_affine, disjointness_check};
use crate::counterexample::{act_bconfig, compare_bconfig, random_b, random_gb, stabilization_n};
use crate::lamination::{act_leaf, is_below, join, relate, Leaf, Relation};
use crate::orders::{self, OrderTag};
use crate::poly::LaurentPoly;
use crate::realization::{minimality_probe, Realization};
use crate::sample;
use crate::wreath::{check_presentation, WreathElement};

type P = LaurentPoly<i64>;
type E = WreathElement<i64>;

/// Deliberate defects used to check that the suite notices them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Reverses `compare` whenever both arguments are monomials.
    FlipMonomialCompare,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SuiteRow {
    pub property: &'static str,
    pub samples: u64,
    pub verdict: Verdict,
    pub millis: u128,
    /// Counterexample description for a failed property.
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub rows: Vec<SuiteRow>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.verdict == Verdict::Pass)
    }

    pub fn failed_property(&self) -> Option<&'static str> {
        self.rows
            .iter()
            .find(|r| r.verdict == Verdict::Fail)
            .map(|r| r.property)
    }

    /// Everything but the timings, which are the only nondeterministic column.
    pub fn outcomes(&self) -> Vec<(&'static str, u64, Verdict)> {
        self.rows.iter().map(|r| (r.property, r.samples, r.verdict)).collect()
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("property\tsamples\tverdict\tmillis\n");
        for r in &self.rows {
            out.push_str(&format!("{}\t{}\t{}\t{}\n", r.property, r.samples, r.verdict, r.millis));
        }
        out
    }
}

struct Ctx {
    mutation: Option<Mutation>,
}

impl Ctx {
    fn compare(&self, p: &P, q: &P, tag: OrderTag) -> Ordering {
        let c = orders::compare(p, q, tag);
        match self.mutation {
            Some(Mutation::FlipMonomialCompare) if p.len() == 1 && q.len() == 1 => c.reverse(),
            _ => c,
        }
    }
}

type Check = fn(&Ctx, &mut ChaCha8Rng) -> Result<u64, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

const PROPERTIES: &[(&str, Check)] = &[
    ("wreath.presentation", presentation),
    ("wreath.associativity", associativity),
    ("orders.sign_of_difference", sign_of_difference),
    ("orders.invariance", invariance),
    ("orders.between", between_separates),
    ("lamination.sandwich", sandwich),
    ("lamination.noncrossing", noncrossing),
    ("lamination.join", join_axioms),
    ("realization.equivariance", equivariance),
    ("realization.minimality", minimality),
    ("classify.affine_conjugacy", affine_conjugacy),
    ("classify.disjointness", disjointness),
    ("base_group.left_invariance", b_invariance),
    ("counterexample.invariance", gb_invariance),
    ("counterexample.stabilization", stabilization),
];

/// Runs every property with `seed`.
pub fn verify_all(seed: u64) -> SuiteReport {
    verify_all_with(seed, None)
}

/// [`verify_all`] with an optional injected defect.
pub fn verify_all_with(seed: u64, mutation: Option<Mutation>) -> SuiteReport {
    let ctx = Ctx { mutation };
    let mut report = SuiteReport::default();
    for (name, check) in PROPERTIES {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fnv(name));
        let start = Instant::now();
        let outcome = check(&ctx, &mut rng);
        let millis = start.elapsed().as_millis();
        let (samples, verdict, detail) = match outcome {
            Ok(n) => (n, Verdict::Pass, None),
            Err(msg) => (0, Verdict::Fail, Some(msg)),
        };
        report.rows.push(SuiteRow {
            property: name,
            samples,
            verdict,
            millis,
            detail,
        });
        if verdict == Verdict::Fail {
            break;
        }
    }
    report
}

/// Names of all properties, in run order.
pub fn property_names() -> Vec<&'static str> {
    PROPERTIES.iter().map(|(n, _)| *n).collect()
}

fn fnv(s: &str) -> u64 {
    s.bytes()
        .fold(0xcbf29ce484222325, |h, b| (h ^ b as u64).wrapping_mul(0x100000001b3))
}

fn presentation(_: &Ctx, _: &mut ChaCha8Rng) -> Result<u64, String> {
    check_presentation::<i64>(8).map(|n| n as u64)
}

fn associativity(_: &Ctx, rng: &mut ChaCha8Rng) -> Result<u64, String> {
    let n = 500;
    for _ in 0..n {
        let (a, b, c): (E, E, E) = (
            sample::element(rng, 5, 3, 4),
            sample::element(rng, 5, 3, 4),
            sample::element(rng, 5, 3, 4),
        );
        ensure(a.mul(&b).mul(&c) == a.mul(&b.mul(&c)), || format!("({a})({b})({c})"))?;
        ensure(a.mul(&a.inv()).is_identity(), || format!("{a} · {a}⁻¹"))?;
    }
    Ok(n)
}

fn sign_of_difference(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<u64, String> {
    let mut n = 0;
    for tag in OrderTag::ALL {
        for i in 0..500 {
            let (p, q): (P, P) = if i % 2 == 0 {
                (sample::monomial(rng, 4, 3), sample::monomial(rng, 4, 3))
            } else {
                (sample::poly(rng, 4, 3, 4), sample::poly(rng, 4, 3, 4))
            };
            let want = match orders::sign(&(&q - &p), tag) {
                orders::Sign::Pos => Ordering::Less,
                orders::Sign::Zero => Ordering::Equal,
                orders::Sign::Neg => Ordering::Greater,
            };
            ensure(ctx.compare(&p, &q, tag) == want, || format!("{p} vs {q} under {tag}"))?;
            n += 1;
        }
    }
    Ok(n)
}

fn invariance(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<u64, String> {
    let mut n = 0;
    for tag in OrderTag::ALL {
        for _ in 0..500 {
            let (p, q) = sample::ordered_pair::<i64, _>(rng, tag, 5, 3);
            let e: E = sample::element(rng, 5, 3, 4);
            let (ep, eq) = (e.act(&p), e.act(&q));
            ensure(ctx.compare(&p, &q, tag) == ctx.compare(&ep, &eq, tag), || {
                format!("{e} does not preserve {p} ≺ {q} under {tag}")
            })?;
            n += 1;
        }
    }
    Ok(n)
}

fn between_separates(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<u64, String> {
    let mut n = 0;
    for tag in OrderTag::ALL {
        for _ in 0..200 {
            let (p, q) = sample::ordered_pair::<i64, _>(rng, tag, 5, 3);
            let m = orders::between(&p, &q, tag).map_err(|e| e.to_string())?;
            ensure(
                ctx.compare(&p, &m, tag) == Ordering::Less && ctx.compare(&m, &q, tag) == Ordering::Less,
                || format!("between({p}, {q}) = {m} under {tag}"),
            )?;
            n += 1;
        }
    }
    Ok(n)
}

fn sandwich(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<u64, String> {
    let tag = OrderTag::MaxPlus;
    let mut n_samples = 0;
    for n in -5..=5 {
        let (lo, hi) = (E::h(n + 1).inv(), E::h(n + 1));
        for k in -20..=20 {
            let hk = E::h(n).pow(k);
            for _ in 0..5 {
                let p: P = sample::poly(rng, 8, 5, 5);
                let (a, b, c) = (lo.act(&p), hk.act(&p), hi.act(&p));
                ensure(
                    ctx.compare(&a, &b, tag) == Ordering::Less && ctx.compare(&b, &c, tag) == Ordering::Less,
                    || format!("sandwich fails at n={n}, k={k}, P={p}"),
                )?;
                n_samples += 1;
            }
        }
    }
    Ok(n_samples)
}

fn noncrossing(_: &Ctx, rng: &mut ChaCha8Rng) -> Result<u64, String> {
    let n = 1000;
    for _ in 0..n {
        let l1: Leaf<i64> = sample::leaf(rng, 3, 4);
        let l2: Leaf<i64> = sample::leaf(rng, 3, 4);
        let e: E = sample::element(rng, 4, 2, 3);
        let r = relate(&l1, &l2, OrderTag::MaxPlus);
        let moved = relate(&act_leaf(&e, &l1), &act_leaf(&e, &l2), OrderTag::MaxPlus);
        ensure(r == moved, || format!("{e} changes the relation of {l1} and {l2}"))?;
        ensure(relate(&l2, &l1, OrderTag::MaxPlus) == r.reverse(), || {
            format!("{l1} vs {l2} not antisymmetric")
        })?;
        ensure(act_leaf(&E::g(), &l1).hor() == l1.hor() + 1, || {
            format!("g shifts {l1} wrongly")
        })?;
    }
    Ok(n)
}

fn join_axioms(_: &Ctx, rng: &mut ChaCha8Rng) -> Result<u64, String> {
    let n = 500;
    for _ in 0..n {
        let v: Leaf<i64> = sample::leaf(rng, 3, 4);
        let w: Leaf<i64> = sample::leaf(rng, 3, 4);
        let j = join(&v, &w);
        ensure(is_below(&v, &j) && is_below(&w, &j), || {
            format!("join({v}, {w}) = {j} is not above both")
        })?;
        if j.level > v.level.max(w.level) {
            // nothing strictly below j contains both
            let child_v = v.ancestor(j.level - 1);
            ensure(
                relate(&child_v, &w.ancestor(j.level - 1), OrderTag::MaxPlus) != Relation::Equal,
                || format!("join({v}, {w}) = {j} is not least"),
            )?;
        }
    }
    Ok(n)
}

fn equivariance(_: &Ctx, rng: &mut ChaCha8Rng) -> Result<u64, String> {
    let mut r = Realization::<i64, BigRational>::build(100, OrderTag::MaxPlus);
    let points: Vec<(BigRational, P)> = r.assignments().map(|(q, p)| (q.clone(), p.clone())).collect();
    let mut n = 0;
    for _ in 0..50 {
        let e: E = sample::element(rng, 3, 2, 2);
        for (q, p) in &points {
            let got = r.act_point(&e, q).map_err(|e| e.to_string())?;
            let want = r.coord(&e.act(p));
            ensure(got == want, || format!("{e} at {q}"))?;
            n += 1;
        }
    }
    ensure(r.is_order_preserving(), || "realization lost monotonicity".into())?;
    Ok(n)
}

fn minimality(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<u64, String> {
    let mut n = 0;
    for tag in OrderTag::ALL {
        for _ in 0..25 {
            let (q1, q2) = sample::ordered_pair::<i64, _>(rng, tag, 5, 3);
            let x: P = sample::poly(rng, 6, 4, 4);
            let w = minimality_probe(&q1, &q2, &x, tag).map_err(|e| e.to_string())?;
            let y = w.act(&x);
            ensure(
                ctx.compare(&q1, &y, tag) == Ordering::Less && ctx.compare(&y, &q2, tag) == Ordering::Less,
                || format!("probe({q1}, {q2}, {x}) under {tag}"),
            )?;
            n += 1;
        }
    }
    Ok(n)
}

fn rational<R: Rng>(rng: &mut R, num: i64, den: i64) -> BigRational {
    BigRational::new(rng.gen_range(-num..=num).into(), rng.gen_range(1..=den).into())
}

fn positive<R: Rng>(rng: &mut R, num: i64, den: i64) -> BigRational {
    BigRational::new(rng.gen_range(1..=num).into(), rng.gen_range(1..=den).into())
}

fn affine_conjugacy(_: &Ctx, rng: &mut ChaCha8Rng) -> Result<u64, String> {
    let n = 200;
    for _ in 0..n {
        let g = AffineMap::new(positive(rng, 9, 4), rational(rng, 9, 4)).map_err(|e| e.to_string())?;
        let h0 = AffineMap::translation(rational(rng, 9, 4));
        let u = AffineMap::new(positive(rng, 9, 4), rational(rng, 9, 4)).map_err(|e| e.to_string())?;
        let c = classify_affine(&h0, &g).map_err(|e| e.to_string())?;
        let c2 = classify_affine(&h0.conjugate_by(&u), &g.conjugate_by(&u)).map_err(|e| e.to_string())?;
        ensure(c.label == c2.label, || {
            format!("label of ({h0}, {g}) changes under {u}")
        })?;
    }
    Ok(n)
}

fn disjointness(_: &Ctx, _: &mut ChaCha8Rng) -> Result<u64, String> {
    let mut n = 0;
    for tag in OrderTag::ALL {
        for (big_n, k) in [(2, 4), (3, 3), (5, 2)] {
            let rep = disjointness_check(big_n, k, tag).map_err(|e| e.to_string())?;
            ensure(rep.disjoint, || format!("N={big_n}, n={k}, {tag}: {:?}", rep.witness))?;
            n += rep.pairs_checked;
        }
    }
    Ok(n)
}

fn b_invariance(_: &Ctx, rng: &mut ChaCha8Rng) -> Result<u64, String> {
    let n = 500;
    for _ in 0..n {
        let (x, y, z) = (random_b(rng), random_b(rng), random_b(rng));
        ensure(compare_b(&z.compose(&x), &z.compose(&y)) == compare_b(&x, &y), || {
            format!("<_B not invariant: {z} on {x}, {y}")
        })?;
    }
    Ok(n)
}

fn gb_invariance(_: &Ctx, rng: &mut ChaCha8Rng) -> Result<u64, String> {
    let n = 500;
    for _ in 0..n {
        let e = random_gb(rng, 4);
        let f1 = random_gb(rng, 4).config;
        let f2 = random_gb(rng, 4).config;
        ensure(
            compare_bconfig(&act_bconfig(&e, &f1), &act_bconfig(&e, &f2)) == compare_bconfig(&f1, &f2),
            || format!("{e} on {f1}, {f2}"),
        )?;
    }
    Ok(n)
}

fn stabilization(_: &Ctx, rng: &mut ChaCha8Rng) -> Result<u64, String> {
    let mut n = 0;
    while n < 10 {
        let (g1, g2) = (random_gb(rng, 4), random_gb(rng, 4));
        if g1.base == g2.base {
            continue;
        }
        let rep = stabilization_n(&g1, &g2, 50).map_err(|e| e.to_string())?;
        ensure(rep.certified(), || format!("{g1} vs {g2} not certified"))?;
        n += 1;
    }
    Ok(n)
}
