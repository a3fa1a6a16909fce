//! Moments of `X` by enumeration.

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::Serialize;

use super::weights::constraint_sixths;
use super::{x_weight_sixths, xp_weight_sixths, Assignment4};
use crate::error::{Error, Result};
use crate::generate::seeded;
use crate::instance::{Constraint, Instance, VarId};
use crate::rational::{self, Rational};

/// Largest `n` for which the full `4ⁿ` colouring space is enumerated.
pub const ENUMERATION_MAX_N: usize = 8;

/// `E[X]` by linearity: each constraint averaged over its 64 colour triples.
pub fn first_moment(inst: &Instance) -> Rational {
    let per_constraint: i64 = (0..64u8)
        .map(|code| xp_weight_sixths(code >> 4, (code >> 2) & 3, code & 3))
        .sum();
    rational::ratio(per_constraint * inst.m() as i64, 6 * 64)
}

type Pattern = ([u8; 3], [u8; 3]);

/// Relabels the union of two constraints' variables as `0..k` in order of
/// first appearance, so that pairs with the same overlap shape share a key.
fn pattern(c1: &Constraint, c2: &Constraint) -> (Pattern, usize) {
    let mut seen: Vec<VarId> = Vec::with_capacity(6);
    let mut label = |v: VarId| -> u8 {
        match seen.iter().position(|&s| s == v) {
            Some(i) => i as u8,
            None => {
                seen.push(v);
                (seen.len() - 1) as u8
            }
        }
    };
    let p1 = c1.vars().map(&mut label);
    let p2 = c2.vars().map(&mut label);
    ((p1, p2), seen.len())
}

/// `Σ (6X₁)(6X₂)` over all `4ᵏ` colourings of the pattern's variables.
fn pattern_product_sum((p1, p2): Pattern, k: usize) -> i64 {
    let mut total = 0i64;
    for code in 0u32..(1 << (2 * k)) {
        let colour = |slot: u8| ((code >> (2 * slot)) & 3) as u8;
        let x1 = xp_weight_sixths(colour(p1[0]), colour(p1[1]), colour(p1[2]));
        let x2 = xp_weight_sixths(colour(p2[0]), colour(p2[1]), colour(p2[2]));
        total += x1 * x2;
    }
    total
}

/// `E[X_{c1}·X_{c2}]` over independent uniform colours of their variables.
pub fn pair_expectation(c1: &Constraint, c2: &Constraint) -> Rational {
    let (pat, k) = pattern(c1, c2);
    Rational::new(
        BigInt::from(pattern_product_sum(pat, k)),
        BigInt::from(36i64 << (2 * k)),
    )
}

/// Accumulates `Σ E[X_l X_l']` over the requested ordered pairs in units of
/// `1/(36·4⁶)`, enumerating each distinct overlap pattern once.
struct PairAccumulator {
    memo: HashMap<Pattern, i64>,
    total: i128,
}

impl PairAccumulator {
    fn new() -> Self {
        PairAccumulator {
            memo: HashMap::new(),
            total: 0,
        }
    }

    fn add(&mut self, c1: &Constraint, c2: &Constraint, multiplicity: i128) {
        let (pat, k) = pattern(c1, c2);
        let scaled = *self
            .memo
            .entry(pat)
            .or_insert_with(|| pattern_product_sum(pat, k) << (2 * (6 - k)));
        self.total += scaled as i128 * multiplicity;
    }

    fn finish(self) -> Rational {
        Rational::new(BigInt::from(self.total), BigInt::from(36i64 << 12))
    }
}

fn sum_pairs(inst: &Instance, include_diagonal: bool) -> Rational {
    let cs = inst.constraints();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); inst.n()];
    for (idx, c) in cs.iter().enumerate() {
        for v in c.vars() {
            incident[v.index()].push(idx);
        }
    }

    let mut acc = PairAccumulator::new();
    let mut overlapping: u64 = 0;
    let mut partners = Vec::new();
    for (l, c) in cs.iter().enumerate() {
        partners.clear();
        for v in c.vars() {
            partners.extend_from_slice(&incident[v.index()]);
        }
        partners.sort_unstable();
        partners.dedup();
        for &l2 in &partners {
            if l2 == l && !include_diagonal {
                continue;
            }
            acc.add(c, &cs[l2], 1);
            overlapping += 1;
        }
    }

    // Pairs on disjoint variable sets all share one pattern; enumerate it
    // once and weight it by how many such ordered pairs exist.
    let m = cs.len() as u64;
    let all_pairs = if include_diagonal {
        m * m
    } else {
        m * m.saturating_sub(1)
    };
    let disjoint = all_pairs - overlapping;
    if disjoint > 0 {
        let a = Constraint::from_ids(1, 2, 3).expect("distinct");
        let b = Constraint::from_ids(4, 5, 6).expect("distinct");
        acc.add(&a, &b, disjoint as i128);
    }
    acc.finish()
}

/// `E[X²] = Σ_{l,l'} E[X_l X_l']` over all ordered pairs, diagonal included.
pub fn second_moment_enumerated(inst: &Instance) -> Rational {
    sum_pairs(inst, true)
}

/// `Σ_{l≠l'} E[X_l X_l']`.
pub fn cross_term_enumerated(inst: &Instance) -> Rational {
    sum_pairs(inst, false)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumeratedMoments {
    #[serde(serialize_with = "rational::serialize")]
    pub first: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub second: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub fourth: Rational,
}

/// `E[X]`, `E[X²]`, `E[X⁴]` by walking all `4ⁿ` colourings.
pub fn enumerate_moments(inst: &Instance) -> Result<EnumeratedMoments> {
    let n = inst.n();
    if n > ENUMERATION_MAX_N {
        return Err(Error::TooLarge {
            what: "colouring enumeration (variables)",
            size: n as u128,
            limit: ENUMERATION_MAX_N as u128,
        });
    }
    let (mut s1, mut s2, mut s4) = (0i128, 0i128, 0i128);
    for code in 0u64..(1 << (2 * n)) {
        let phi = Assignment4::from_code(n, code);
        let x = inst
            .constraints()
            .iter()
            .map(|c| constraint_sixths(c, &phi))
            .sum::<i64>() as i128;
        let x2 = x * x;
        s1 += x;
        s2 += x2;
        s4 += x2 * x2;
    }
    let points = BigInt::from(1u64 << (2 * n));
    let moment = |sum: i128, power: u32| {
        Rational::new(
            BigInt::from(sum),
            points.clone() * BigInt::from(6).pow(power),
        )
    };
    Ok(EnumeratedMoments {
        first: moment(s1, 1),
        second: moment(s2, 2),
        fourth: moment(s4, 4),
    })
}

pub fn fourth_moment_enumerated(inst: &Instance) -> Result<Rational> {
    Ok(enumerate_moments(inst)?.fourth)
}

/// Empirical mean and mean square of `X` over `samples` uniform colourings.
pub fn monte_carlo_moments(
    inst: &Instance,
    samples: u64,
    seed: u64,
) -> Result<(Rational, Rational)> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let mut rng = seeded(seed);
    let (mut s1, mut s2) = (0i128, 0i128);
    for _ in 0..samples {
        let phi = Assignment4::random(inst.n(), &mut rng);
        let x = x_weight_sixths(inst, &phi) as i128;
        s1 += x;
        s2 += x * x;
    }
    let samples = BigInt::from(samples);
    Ok((
        Rational::new(BigInt::from(s1), samples.clone() * 6),
        Rational::new(BigInt::from(s2), samples * 36),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{gen_complete, gen_random};
    use crate::rational::{int, ratio};
    use num_traits::Zero;

    fn c(m: u32, a: u32, b: u32) -> Constraint {
        Constraint::from_ids(m, a, b).unwrap()
    }

    #[test]
    fn first_moment_vanishes() {
        assert_eq!(first_moment(&Instance::empty(0)), int(0));
        assert_eq!(first_moment(&gen_random(9, 40, 1).unwrap()), int(0));
    }

    #[test]
    fn pair_expectation_examples() {
        assert_eq!(pair_expectation(&c(2, 1, 3), &c(2, 1, 3)), ratio(11, 96));
        assert_eq!(pair_expectation(&c(1, 2, 3), &c(4, 5, 6)), int(0));
        assert_eq!(pair_expectation(&c(1, 2, 3), &c(2, 1, 3)), ratio(-44, 768));
        assert_eq!(pair_expectation(&c(1, 2, 3), &c(2, 1, 3)), ratio(-11, 192));
    }

    #[test]
    fn pair_expectation_is_label_invariant() {
        assert_eq!(
            pair_expectation(&c(7, 9, 2), &c(2, 5, 8)),
            pair_expectation(&c(1, 2, 3), &c(3, 4, 5))
        );
    }

    #[test]
    fn second_moment_small_cases() {
        let single = Instance::new(3, vec![c(2, 1, 3)]).unwrap();
        assert_eq!(second_moment_enumerated(&single), ratio(11, 96));
        let disjoint = Instance::new(6, vec![c(1, 2, 3), c(4, 5, 6)]).unwrap();
        assert_eq!(second_moment_enumerated(&disjoint), ratio(11, 48));
        let s8 = Instance::new(3, vec![c(1, 2, 3), c(2, 1, 3)]).unwrap();
        assert_eq!(second_moment_enumerated(&s8), ratio(11, 96));
        assert_eq!(cross_term_enumerated(&s8), ratio(-88, 768));
        assert_eq!(second_moment_enumerated(&gen_complete(3).unwrap()), int(0));
        assert!(second_moment_enumerated(&Instance::empty(4)).is_zero());
    }

    #[test]
    fn enumeration_agrees_with_pair_sum() {
        for seed in 0..10 {
            let inst = gen_random(6, 15, seed).unwrap();
            let e = enumerate_moments(&inst).unwrap();
            assert!(e.first.is_zero());
            assert_eq!(e.second, second_moment_enumerated(&inst));
        }
    }

    #[test]
    fn fourth_moment_of_single_constraint() {
        // (3/16)(1/81) + (6/16)(1/1296) + (2/16)(16/81) + (4/16)(1/81)
        let expected = ratio(3, 16) * ratio(1, 81)
            + ratio(6, 16) * ratio(1, 1296)
            + ratio(2, 16) * ratio(16, 81)
            + ratio(4, 16) * ratio(1, 81);
        let single = Instance::new(3, vec![c(2, 1, 3)]).unwrap();
        assert_eq!(fourth_moment_enumerated(&single).unwrap(), expected);
        assert_eq!(expected, ratio(35, 1152));
        assert_eq!(
            fourth_moment_enumerated(&Instance::empty(0)).unwrap(),
            int(0)
        );
        assert_eq!(
            fourth_moment_enumerated(&gen_complete(3).unwrap()).unwrap(),
            int(0)
        );
        assert!(fourth_moment_enumerated(&Instance::empty(9)).is_err());
    }

    #[test]
    fn monte_carlo_is_seeded() {
        let inst = gen_random(10, 30, 2).unwrap();
        assert_eq!(
            monte_carlo_moments(&inst, 500, 9).unwrap(),
            monte_carlo_moments(&inst, 500, 9).unwrap()
        );
        let (mean, sq) = monte_carlo_moments(&gen_complete(5).unwrap(), 200, 1).unwrap();
        assert!(mean.is_zero() && sq.is_zero());
        assert!(monte_carlo_moments(&inst, 0, 0).is_err());
    }
}
