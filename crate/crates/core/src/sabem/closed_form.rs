//! Second moment from occurrence counts.
//!
//! Ordered pairs of distinct constraints are sorted into the overlap classes
//! `S₁ … S₈`. A pair's expectation depends only on its highest class, and
//! [`CASE_WEIGHTS`] holds `768·E[X_l X_l']` per class. Because a pair in a
//! high class also belongs to several lower ones, the per-class sums use the
//! adjusted weights [`W_PRIME`], chosen so that each pair's memberships add
//! back up to its case weight.

use num_bigint::BigInt;
use serde::Serialize;

use super::moments::pair_expectation;
use super::profile::{profile_counts, ProfileCounts};
use crate::error::{Error, Result};
use crate::instance::{Constraint, Instance, VarId};
use crate::kernel::is_irreducible;
use crate::rational::{self, Rational};

/// `768·E[X_l X_l']` for a pair whose highest class is `S_{i+1}`.
pub const CASE_WEIGHTS: [i64; 8] = [12, 3, -6, 24, 36, -18, -6, -44];

/// Per-membership weights (times 768) used by the class-size sum.
pub const W_PRIME: [i64; 8] = [12, 3, -6, 9, 30, -15, 6, -11];

/// `768·E[X_l²]`.
pub const DIAGONAL_WEIGHT: i64 = 88;

/// Highest overlap class of an ordered pair of distinct constraints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PairClass {
    /// one shared variable, middle in both
    S1,
    /// one shared variable, outer in both
    S2,
    /// one shared variable, middle in one and outer in the other
    S3,
    /// two shared, the same one is middle in both
    S4,
    /// two shared, both outer in both
    S5,
    /// two shared, a middle on one side only
    S6,
    /// two shared, each is the middle of one constraint
    S7,
    /// same 3-set
    S8,
}

impl PairClass {
    pub const ALL: [PairClass; 8] = [
        PairClass::S1,
        PairClass::S2,
        PairClass::S3,
        PairClass::S4,
        PairClass::S5,
        PairClass::S6,
        PairClass::S7,
        PairClass::S8,
    ];

    pub fn number(self) -> usize {
        self as usize + 1
    }

    pub fn case_weight(self) -> i64 {
        CASE_WEIGHTS[self as usize]
    }
}

/// `None` for disjoint or identical constraints.
pub fn classify_pair(c1: &Constraint, c2: &Constraint) -> Option<PairClass> {
    if c1 == c2 {
        return None;
    }
    let shared: Vec<VarId> = c1.vars().into_iter().filter(|&v| c2.involves(v)).collect();
    let mid_among = |c: &Constraint| shared.iter().copied().find(|&v| c.middle == v);
    match shared.len() {
        0 => None,
        1 => Some(match (mid_among(c1).is_some(), mid_among(c2).is_some()) {
            (true, true) => PairClass::S1,
            (false, false) => PairClass::S2,
            _ => PairClass::S3,
        }),
        2 => Some(match (mid_among(c1), mid_among(c2)) {
            (Some(x), Some(y)) if x == y => PairClass::S4,
            (Some(_), Some(_)) => PairClass::S7,
            (None, None) => PairClass::S5,
            _ => PairClass::S6,
        }),
        _ => Some(PairClass::S8),
    }
}

/// Recovers the per-membership weights from the case weights by peeling off
/// the lower classes each case also belongs to.
pub fn derive_w_prime(w: [i64; 8]) -> [i64; 8] {
    let (w1, w2, w3) = (w[0], w[1], w[2]);
    // S₄ ⊂ S₁(u) ∩ S₂(v); S₅ ⊂ S₂(u) ∩ S₂(v); S₆ ⊂ S₃(u) ∩ S₂(v); S₇ ⊂ S₃(u) ∩ S₃(v)
    let w4 = w[3] - w1 - w2;
    let w5 = w[4] - 2 * w2;
    let w6 = w[5] - w3 - w2;
    let w7 = w[6] - 2 * w3;
    // S₈ ⊂ S₃(u) ∩ S₃(v) ∩ S₂(w) ∩ S₇(u,v) ∩ S₆(u,w) ∩ S₆(v,w)
    let w8 = w[7] - 2 * w3 - w2 - w7 - 2 * w6;
    [w1, w2, w3, w4, w5, w6, w7, w8]
}

/// The five bookkeeping identities tying [`W_PRIME`] to [`CASE_WEIGHTS`],
/// as `(description, left side, right side)`.
pub fn w_prime_relations() -> Vec<(&'static str, i64, i64)> {
    let p = W_PRIME;
    let w = CASE_WEIGHTS;
    vec![
        ("w1'+w2'+w4' = w4", p[0] + p[1] + p[3], w[3]),
        ("w2'+w2'+w5' = w5", 2 * p[1] + p[4], w[4]),
        ("w3'+w2'+w6' = w6", p[2] + p[1] + p[5], w[5]),
        ("w3'+w3'+w7' = w7", 2 * p[2] + p[6], w[6]),
        (
            "2w3'+w2'+w7'+2w6'+w8' = w8",
            2 * p[2] + p[1] + p[6] + 2 * p[5] + p[7],
            w[7],
        ),
    ]
}

fn over_768(numer: i128) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(768))
}

/// `768 · Σ |S₈(u,v,w)|·w₈'`, shared by both closed forms.
fn s8_sum(p: &ProfileCounts) -> i128 {
    p.per_set.keys().map(|s| p.s8(s) as i128).sum::<i128>() * W_PRIME[7] as i128
}

/// `Σ_{l≠l'} E[X_l X_l']` from class sizes and [`W_PRIME`].
pub fn cross_term_closed_form(inst: &Instance) -> Rational {
    let p = profile_counts(inst);
    let wp = W_PRIME.map(|x| x as i128);
    let mut total: i128 = 0;
    for u in inst.vars() {
        total += p.s1(u) as i128 * wp[0] + p.s2(u) as i128 * wp[1] + p.s3(u) as i128 * wp[2];
    }
    for (u, v) in p.active_pairs() {
        total += p.s4(u, v) as i128 * wp[3]
            + p.s5(u, v) as i128 * wp[4]
            + p.s6(u, v) as i128 * wp[5]
            + p.s7(u, v) as i128 * wp[6];
    }
    over_768(total + s8_sum(&p))
}

/// Same quantity via the completed-square rewrite of the per-variable and
/// per-pair sums.
pub fn cross_term_quadratic_form(inst: &Instance) -> Rational {
    let p = profile_counts(inst);
    // twice the per-variable and per-pair parts, in units of 1/768
    let mut twice: i128 = 0;
    for u in inst.vars() {
        let (b, e) = (p.b(u) as i128, p.e(u) as i128);
        twice += 6 * (2 * b - e).pow(2) - 24 * b - 6 * e;
    }
    for (u, v) in p.active_pairs() {
        let (x, y, c) = (
            p.c_mid(u, v) as i128,
            p.c_mid(v, u) as i128,
            p.c_out(u, v) as i128,
        );
        // 12·((x−y)/2)² = 3·(x−y)²
        twice += 15 * (x + y - 2 * c).pow(2) + 3 * (x - y).pow(2) - 18 * (x + y) - 60 * c;
    }
    debug_assert!(twice % 2 == 0);
    over_768(twice / 2 + s8_sum(&p))
}

/// `E[X²] = (88/768)·m + Σ_{l≠l'} E[X_l X_l']`.
pub fn second_moment_closed_form(inst: &Instance) -> Rational {
    over_768(DIAGONAL_WEIGHT as i128 * inst.m() as i128) + cross_term_closed_form(inst)
}

/// Whether the cross term meets `−(77/768)·m`, which with the diagonal gives
/// `E[X²] ≥ (11/768)·m`.
pub fn cross_term_lower_bound_check(inst: &Instance) -> Result<bool> {
    if !is_irreducible(inst) {
        return Err(Error::NotIrreducible);
    }
    Ok(cross_term_closed_form(inst) >= over_768(-77 * inst.m() as i128))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseWeight {
    pub class: PairClass,
    pub representative: [Constraint; 2],
    /// `768·E[X_l X_l']` by enumeration.
    #[serde(serialize_with = "rational::serialize")]
    pub computed: Rational,
    pub expected: i64,
    pub w_prime: i64,
    /// Whether the representative's highest class is this row's class.
    pub class_confirmed: bool,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseWeightReport {
    pub cases: Vec<CaseWeight>,
    pub all_match: bool,
}

/// One pair per class; the letters stand for distinct variables.
fn representatives() -> [[Constraint; 2]; 8] {
    let (u, v, w, a, b, c, d) = (1, 2, 3, 4, 5, 6, 7);
    let k = |m, x, y| Constraint::from_ids(m, x, y).expect("distinct");
    [
        [k(u, a, b), k(u, c, d)],
        [k(a, u, b), k(c, u, d)],
        [k(u, a, b), k(c, u, d)],
        [k(u, v, a), k(u, v, b)],
        [k(a, u, v), k(b, u, v)],
        [k(u, v, a), k(b, u, v)],
        [k(u, v, a), k(v, u, b)],
        [k(u, v, w), k(v, u, w)],
    ]
}

/// Recomputes every class weight by enumeration.
pub fn table2_report() -> CaseWeightReport {
    let scale = Rational::from_integer(BigInt::from(768));
    let cases: Vec<CaseWeight> = PairClass::ALL
        .iter()
        .zip(representatives())
        .map(|(&class, rep)| {
            let computed = pair_expectation(&rep[0], &rep[1]) * &scale;
            let expected = class.case_weight();
            let class_confirmed = classify_pair(&rep[0], &rep[1]) == Some(class);
            let matches =
                class_confirmed && computed == Rational::from_integer(BigInt::from(expected));
            CaseWeight {
                class,
                representative: rep,
                computed,
                expected,
                w_prime: W_PRIME[class as usize],
                class_confirmed,
                matches,
            }
        })
        .collect();
    let all_match = cases.iter().all(|c| c.matches);
    CaseWeightReport { cases, all_match }
}

/// [`table2_report`], failing if any class disagrees with [`CASE_WEIGHTS`].
pub fn verify_table2() -> Result<CaseWeightReport> {
    let report = table2_report();
    if report.all_match {
        return Ok(report);
    }
    let bad: Vec<String> = report
        .cases
        .iter()
        .filter(|c| !c.matches)
        .map(|c| {
            format!(
                "{:?}: computed {} expected {}",
                c.class,
                rational::to_ratio_string(&c.computed),
                c.expected
            )
        })
        .collect();
    Err(Error::Mismatch(bad.join("; ")))
}
