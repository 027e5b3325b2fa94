//! Seeded random generators for property runs.

use std::cmp::Ordering;

use rand::Rng;

use crate::lamination::Leaf;
use crate::orders::{compare, OrderTag};
use crate::poly::LaurentPoly;
use crate::scalar::Coeff;
use crate::wreath::WreathElement;

/// Up to `terms` terms with degrees in `[-deg, deg]` and nonzero
/// coefficients in `[-coeff, coeff]`.
pub fn poly<C: Coeff, R: Rng + ?Sized>(rng: &mut R, deg: i64, coeff: i64, terms: usize) -> LaurentPoly<C> {
    let k = rng.gen_range(0..=terms);
    LaurentPoly::from_terms((0..k).map(|_| {
        let d = rng.gen_range(-deg..=deg);
        let mut c = 0;
        while c == 0 {
            c = rng.gen_range(-coeff..=coeff);
        }
        (d, C::from_i64(c).expect("small coefficient"))
    }))
}

/// A signed monomial `±c X^d`.
pub fn monomial<C: Coeff, R: Rng + ?Sized>(rng: &mut R, deg: i64, coeff: i64) -> LaurentPoly<C> {
    let c = rng.gen_range(1..=coeff) * if rng.gen_bool(0.5) { 1 } else { -1 };
    LaurentPoly::monomial(rng.gen_range(-deg..=deg), C::from_i64(c).expect("small coefficient"))
}

pub fn element<C: Coeff, R: Rng + ?Sized>(rng: &mut R, deg: i64, coeff: i64, shift: i64) -> WreathElement<C> {
    WreathElement::new(poly(rng, deg, coeff, 4), rng.gen_range(-shift..=shift))
}

pub fn leaf<C: Coeff, R: Rng + ?Sized>(rng: &mut R, level: i64, deg: i64) -> Leaf<C> {
    Leaf::new(rng.gen_range(-level..=level), poly(rng, deg, 2, 4))
}

/// Two distinct configurations in increasing order for `tag`.
pub fn ordered_pair<C: Coeff, R: Rng + ?Sized>(
    rng: &mut R,
    tag: OrderTag,
    deg: i64,
    coeff: i64,
) -> (LaurentPoly<C>, LaurentPoly<C>) {
    loop {
        let p = poly(rng, deg, coeff, 4);
        let q = poly(rng, deg, coeff, 4);
        match compare(&p, &q, tag) {
            Ordering::Less => return (p, q),
            Ordering::Greater => return (q, p),
            Ordering::Equal => continue,
        }
    }
}
