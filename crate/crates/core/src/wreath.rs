//! The lamplighter group `Z wr Z = L ⋊ Z` in normal form.
//!
//! An element is a pair `(lamp, shift)` where the lamp configuration is a
//! Laurent polynomial and the shift generator acts on lamps by multiplication
//! by `X`. The generators are `g = (0, 1)` and `h0 = (1, 0)`, and
//! `h_n = g^n h0 g^-n = (X^n, 0)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::ParseError;
use crate::poly::LaurentPoly;
use crate::scalar::Coeff;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(bound = "C: Coeff")]
pub struct WreathElement<C> {
    pub lamp: LaurentPoly<C>,
    pub shift: i64,
}

impl<C: Coeff> WreathElement<C> {
    pub fn new(lamp: LaurentPoly<C>, shift: i64) -> Self {
        WreathElement { lamp, shift }
    }

    pub fn identity() -> Self {
        Self::new(LaurentPoly::zero(), 0)
    }

    /// The shift generator `g`.
    pub fn g() -> Self {
        Self::new(LaurentPoly::zero(), 1)
    }

    /// `h0`, the lamp at position 0.
    pub fn h0() -> Self {
        Self::new(LaurentPoly::constant(C::one()), 0)
    }

    /// `h_n = g^n h0 g^-n`.
    pub fn h(n: i64) -> Self {
        Self::new(LaurentPoly::x_pow(n), 0)
    }

    /// `g^k`
    pub fn g_pow(k: i64) -> Self {
        Self::new(LaurentPoly::zero(), k)
    }

    /// Pure lamp element.
    pub fn lamp(p: LaurentPoly<C>) -> Self {
        Self::new(p, 0)
    }

    pub fn is_identity(&self) -> bool {
        self.shift == 0 && self.lamp.is_zero()
    }

    /// Membership in `L`, which is the Fitting subgroup.
    pub fn is_in_fitting(&self) -> bool {
        self.shift == 0
    }

    /// `(f1, k1)(f2, k2) = (f1 + X^k1 f2, k1 + k2)`
    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.lamp + &other.lamp.shift(self.shift), self.shift + other.shift)
    }

    /// `(f, k)^-1 = (-X^-k f, -k)`
    pub fn inv(&self) -> Self {
        Self::new(-self.lamp.shift(-self.shift), -self.shift)
    }

    /// `self · b · self^-1`
    pub fn conj(&self, b: &Self) -> Self {
        self.mul(b).mul(&self.inv())
    }

    /// `[a, b] = a b a^-1 b^-1`
    pub fn commutator(&self, b: &Self) -> Self {
        self.mul(b).mul(&self.inv()).mul(&b.inv())
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inv() } else { self.clone() };
        let mut acc = Self::identity();
        let mut sq = base;
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            e >>= 1;
        }
        acc
    }

    /// The affine action on configurations: `(f, k) · P = f + X^k P`.
    pub fn act(&self, p: &LaurentPoly<C>) -> LaurentPoly<C> {
        &self.lamp + &p.shift(self.shift)
    }

    pub fn convert<D: Coeff>(&self) -> Option<WreathElement<D>> {
        Some(WreathElement::new(self.lamp.convert()?, self.shift))
    }
}

pub fn mul<C: Coeff>(a: &WreathElement<C>, b: &WreathElement<C>) -> WreathElement<C> {
    a.mul(b)
}

pub fn inv<C: Coeff>(a: &WreathElement<C>) -> WreathElement<C> {
    a.inv()
}

pub fn conj<C: Coeff>(a: &WreathElement<C>, b: &WreathElement<C>) -> WreathElement<C> {
    a.conj(b)
}

pub fn act_config<C: Coeff>(e: &WreathElement<C>, p: &LaurentPoly<C>) -> LaurentPoly<C> {
    e.act(p)
}

pub fn is_in_fitting<C: Coeff>(e: &WreathElement<C>) -> bool {
    e.is_in_fitting()
}

pub fn eval_word<C: Coeff>(w: &Word) -> WreathElement<C> {
    w.eval()
}

impl<C: Coeff> fmt::Display for WreathElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lamp, self.shift)
    }
}

impl<C: Coeff> fmt::Debug for WreathElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WreathElement{self}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    G,
    GInv,
    H0,
    H0Inv,
}

impl Generator {
    pub fn symbol(self) -> char {
        match self {
            Generator::G => 'g',
            Generator::GInv => 'G',
            Generator::H0 => 'h',
            Generator::H0Inv => 'H',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        Some(match c {
            'g' => Generator::G,
            'G' => Generator::GInv,
            'h' => Generator::H0,
            'H' => Generator::H0Inv,
            _ => return None,
        })
    }

    pub fn element<C: Coeff>(self) -> WreathElement<C> {
        match self {
            Generator::G => WreathElement::g(),
            Generator::GInv => WreathElement::g_pow(-1),
            Generator::H0 => WreathElement::h0(),
            Generator::H0Inv => WreathElement::lamp(LaurentPoly::constant(-C::one())),
        }
    }
}

/// A word over `{g, g⁻¹, h0, h0⁻¹}`, written with the tokens `g G h H`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Generator>);

impl Word {
    pub fn new(tokens: Vec<Generator>) -> Self {
        Word(tokens)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Left-to-right product of the generator images.
    pub fn eval<C: Coeff>(&self) -> WreathElement<C> {
        self.0
            .iter()
            .fold(WreathElement::identity(), |acc, t| acc.mul(&t.element()))
    }

    /// A word evaluating to `e`: `g^a h0^{c_1} g^{d_1} ...` built from the
    /// lamp terms. Only available when coefficients fit in `i64`.
    pub fn spell<C: Coeff>(e: &WreathElement<C>) -> Option<Word> {
        let mut out = Vec::new();
        let mut pos = 0i64;
        let push_g = |out: &mut Vec<Generator>, delta: i64| {
            let t = if delta >= 0 { Generator::G } else { Generator::GInv };
            out.extend(std::iter::repeat_n(t, delta.unsigned_abs() as usize));
        };
        for (d, c) in e.lamp.terms() {
            push_g(&mut out, d - pos);
            pos = d;
            let c = c.to_i64()?;
            let t = if c >= 0 { Generator::H0 } else { Generator::H0Inv };
            out.extend(std::iter::repeat_n(t, c.unsigned_abs() as usize));
        }
        push_g(&mut out, e.shift - pos);
        Some(Word(out))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", t.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = ParseError;

    /// Space-separated tokens; runs like `ghG` are also accepted.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut out = Vec::new();
        for (offset, ch) in s.char_indices() {
            if ch.is_whitespace() {
                continue;
            }
            match Generator::from_symbol(ch) {
                Some(t) => out.push(t),
                None => {
                    return Err(ParseError::new(
                        offset,
                        format!("unknown generator {ch:?}; expected one of g G h H"),
                    ))
                }
            }
        }
        Ok(Word(out))
    }
}

/// Checks the defining relations `h_n = g^n h0 g^-n` and `[h_n, h_m] = 1` for
/// all `n, m` in `-range..=range`.
pub fn check_presentation<C: Coeff>(range: i64) -> Result<usize, String> {
    let mut checked = 0;
    let h0 = WreathElement::<C>::h0();
    for n in -range..=range {
        let lhs = WreathElement::<C>::g_pow(n).conj(&h0);
        if lhs != WreathElement::h(n) {
            return Err(format!("g^{n} h0 g^-{n} = {lhs} differs from h_{n}"));
        }
        for m in -range..=range {
            let c = WreathElement::<C>::h(n).commutator(&WreathElement::h(m));
            if !c.is_identity() {
                return Err(format!("[h_{n}, h_{m}] = {c}"));
            }
            checked += 1;
        }
    }
    Ok(checked)
}
