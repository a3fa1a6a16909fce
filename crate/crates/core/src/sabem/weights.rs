use serde::Serialize;

use super::Assignment4;
use crate::instance::{Constraint, Instance};
use crate::rational::{self, Rational};

/// The five colour patterns a constraint `(i,{j,k})` can see.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Table1Case {
    /// `φ(i) = φ(j) = φ(k)`
    AllEqual,
    /// `φ(i) ≠ φ(j) = φ(k)`
    MiddleAlone,
    /// `φ(i)` equals exactly one of two distinct outer colours
    MiddleMatchesOne,
    /// three distinct colours, middle's strictly between
    MiddleBetween,
    /// three distinct colours, middle's outside
    MiddleOutside,
}

impl Table1Case {
    pub const ALL: [Table1Case; 5] = [
        Table1Case::AllEqual,
        Table1Case::MiddleAlone,
        Table1Case::MiddleMatchesOne,
        Table1Case::MiddleBetween,
        Table1Case::MiddleOutside,
    ];

    pub fn classify(mid: u8, a: u8, b: u8) -> Self {
        if mid == a && a == b {
            Table1Case::AllEqual
        } else if a == b {
            Table1Case::MiddleAlone
        } else if mid == a || mid == b {
            Table1Case::MiddleMatchesOne
        } else if a.min(b) < mid && mid < a.max(b) {
            Table1Case::MiddleBetween
        } else {
            Table1Case::MiddleOutside
        }
    }

    /// `6·X_p` for this pattern.
    ///
    /// Equal colours share a block that is shuffled uniformly, so e.g. a
    /// middle tied with one outer lands between with probability 1/2.
    pub fn weight_sixths(self) -> i64 {
        match self {
            Table1Case::AllEqual => 0,
            Table1Case::MiddleAlone => -2,
            Table1Case::MiddleMatchesOne => 1,
            Table1Case::MiddleBetween => 4,
            Table1Case::MiddleOutside => -2,
        }
    }
}

pub(crate) fn xp_weight_sixths(mid: u8, a: u8, b: u8) -> i64 {
    Table1Case::classify(mid, a, b).weight_sixths()
}

/// `X_p` for a constraint whose middle and outers carry the given colours.
pub fn xp_weight(mid: u8, lo: u8, hi: u8) -> Rational {
    rational::ratio(xp_weight_sixths(mid, lo, hi), 6)
}

pub(crate) fn x_weight_sixths(inst: &Instance, phi: &Assignment4) -> i64 {
    inst.constraints()
        .iter()
        .map(|c| constraint_sixths(c, phi))
        .sum()
}

#[inline]
pub(crate) fn constraint_sixths(c: &Constraint, phi: &Assignment4) -> i64 {
    xp_weight_sixths(phi.get(c.middle), phi.get(c.outer_lo), phi.get(c.outer_hi))
}

/// `w(C, φ) = Σ_p X_p`.
pub fn x_weight(inst: &Instance, phi: &Assignment4) -> Rational {
    rational::ratio(x_weight_sixths(inst, phi), 6)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table1Row {
    pub case: Table1Case,
    #[serde(serialize_with = "rational::serialize")]
    pub value: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub probability: Rational,
}

/// Tallies the five patterns over all 64 colour triples.
pub fn table1_distribution() -> Vec<Table1Row> {
    let mut counts = [0i64; 5];
    for code in 0..64u8 {
        let case = Table1Case::classify(code >> 4, (code >> 2) & 3, code & 3);
        counts[case as usize] += 1;
    }
    Table1Case::ALL
        .iter()
        .map(|&case| Table1Row {
            case,
            value: rational::ratio(case.weight_sixths(), 6),
            probability: rational::ratio(counts[case as usize], 64),
        })
        .collect()
}
