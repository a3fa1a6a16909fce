//! `X_p` as a multilinear polynomial in uniform ±1 variables.
//!
//! Each variable's colour is written as two ±1 digits `(ε₁, ε₂)`, the high
//! and low bit of the colour with −1 standing for bit 0. A constraint
//! `(i,{j,k})` then depends on six digits, ordered
//! `ε^i₁, ε^i₂, ε^j₁, ε^j₂, ε^k₁, ε^k₂`, and
//!
//! ```text
//! X_p = (1/64) Σ_{q=0}^{63} (−1)^{s_q} w_q Π_t (ε_t + c_t^q)
//! ```
//!
//! where `c^q` are the digits of `q` (most significant first), `s_q` counts
//! its −1 digits and `w_q` is the weight of the colour triple `q` encodes.
//! Each product vanishes unless `ε = c^q`, where it equals `64·(−1)^{s_q}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{xp_weight_sixths, Assignment4};
use crate::instance::{Constraint, Instance, VarId};
use crate::rational::Rational;

/// The six ±1 digits of a colour triple `(middle, lo, hi)`.
pub fn encode_triple(mid: u8, lo: u8, hi: u8) -> [i8; 6] {
    let digits = |c: u8| {
        [
            if c & 2 != 0 { 1 } else { -1 },
            if c & 1 != 0 { 1 } else { -1 },
        ]
    };
    let [a, b] = digits(mid);
    let [c, d] = digits(lo);
    let [e, f] = digits(hi);
    [a, b, c, d, e, f]
}

/// Inverse of [`encode_triple`].
pub fn decode_triple(eps: [i8; 6]) -> (u8, u8, u8) {
    let colour = |hi: i8, lo: i8| (u8::from(hi > 0) << 1) | u8::from(lo > 0);
    (
        colour(eps[0], eps[1]),
        colour(eps[2], eps[3]),
        colour(eps[4], eps[5]),
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XpPolynomial {
    pub constraint: Constraint,
    /// `coeffs[T]` multiplies `Π_{t ∈ T} ε_t`, bit `t` of `T` set for digit `t`.
    pub coeffs: Vec<Rational>,
}

pub fn xp_polynomial(c: &Constraint) -> XpPolynomial {
    let mut numer = [0i64; 64];
    for q in 0u32..64 {
        let digit = |t: u32| if (q >> (5 - t)) & 1 == 1 { 1i64 } else { -1 };
        let minus_ones = (0..6).filter(|&t| digit(t) < 0).count();
        let sign = if minus_ones % 2 == 0 { 1 } else { -1 };
        let weight = xp_weight_sixths((q >> 4) as u8, ((q >> 2) & 3) as u8, (q & 3) as u8);
        // Π_t (ε_t + c_t): monomial T collects Π_{t∉T} c_t
        for (mask, slot) in numer.iter_mut().enumerate() {
            let rest: i64 = (0..6u32)
                .filter(|&t| mask >> t & 1 == 0)
                .map(digit)
                .product();
            *slot += sign * weight * rest;
        }
    }
    // 1/64 from the expansion, 1/6 from the weight units
    let denom = BigInt::from(64 * 6);
    XpPolynomial {
        constraint: *c,
        coeffs: numer
            .iter()
            .map(|&x| Rational::new(BigInt::from(x), denom.clone()))
            .collect(),
    }
}

impl XpPolynomial {
    pub fn evaluate(&self, eps: [i8; 6]) -> Rational {
        let mut total = Rational::zero();
        for (mask, coeff) in self.coeffs.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let sign: i8 = (0..6)
                .filter(|t| mask >> t & 1 == 1)
                .map(|t| eps[t])
                .product();
            if sign > 0 {
                total += coeff;
            } else {
                total -= coeff;
            }
        }
        total
    }

    pub fn degree(&self) -> u32 {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(mask, _)| mask.count_ones())
            .max()
            .unwrap_or(0)
    }

    pub fn constant_term(&self) -> &Rational {
        &self.coeffs[0]
    }
}

/// A product of distinct digits `ε^v_d`, sorted.
pub type Monomial = Vec<(VarId, u8)>;

/// `X` over all constraints, as a sum of monomials in the `2n` digits.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultilinearPolynomial {
    pub terms: BTreeMap<Monomial, Rational>,
}

impl MultilinearPolynomial {
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Vec::new())
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn evaluate(&self, phi: &Assignment4) -> Rational {
        let digit = |v: VarId, d: u8| {
            let c = phi.get(v);
            let bit = if d == 1 { c & 2 } else { c & 1 };
            bit != 0
        };
        let mut total = Rational::zero();
        for (mono, coeff) in &self.terms {
            let negative = mono.iter().filter(|&&(v, d)| !digit(v, d)).count() % 2 == 1;
            if negative {
                total -= coeff;
            } else {
                total += coeff;
            }
        }
        total
    }

    /// `E[P²] = Σ coeff²`, since distinct monomials are orthonormal under
    /// uniform ±1 inputs.
    pub fn sum_of_squares(&self) -> Rational {
        self.terms
            .values()
            .map(|c| c * c)
            .fold(Rational::zero(), |a, b| a + b)
    }
}

pub fn instance_polynomial(inst: &Instance) -> MultilinearPolynomial {
    let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
    for c in inst.constraints() {
        let poly = xp_polynomial(c);
        let slots = [
            (c.middle, 1u8),
            (c.middle, 2),
            (c.outer_lo, 1),
            (c.outer_lo, 2),
            (c.outer_hi, 1),
            (c.outer_hi, 2),
        ];
        for (mask, coeff) in poly.coeffs.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let mut mono: Monomial = (0..6)
                .filter(|t| mask >> t & 1 == 1)
                .map(|t| slots[t])
                .collect();
            mono.sort_unstable();
            *terms.entry(mono).or_insert_with(Rational::zero) += coeff;
        }
    }
    terms.retain(|_, c| !c.is_zero());
    MultilinearPolynomial { terms }
}
