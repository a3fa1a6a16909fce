//! Exact and heuristic solvers, plus the end-to-end decision driver.

mod brute;
mod decide;
mod dp;
mod heuristic;

pub use brute::{solve_brute, BRUTE_MAX_N};
pub use decide::{decide_batlb, meets_target, Budget, Decision, DecisionReport};
pub use dp::{dp_credit, solve_exact_dp, DEFAULT_DP_MAX_N};
pub use heuristic::{
    local_search, randomized_round, sample_compatible_arrangement,
    sample_compatible_arrangement_with,
};

use serde::Serialize;

use crate::instance::{Arrangement, Instance};
use crate::rational::{self, Rational};

/// Number of constraints whose middle sits strictly between its outers.
pub fn satisfied_count(inst: &Instance, arr: &Arrangement) -> usize {
    debug_assert_eq!(inst.n(), arr.n());
    let pos = arr.positions();
    inst.constraints()
        .iter()
        .filter(|c| c.satisfied_by(pos))
        .count()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Brute,
    ExactDp,
    RandomizedRound,
    LocalSearch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub best_count: usize,
    pub arrangement: Arrangement,
    pub method: Method,
    /// True only when no arrangement can beat `best_count`.
    pub optimal: bool,
}

impl SolveResult {
    pub fn report(&self, inst: &Instance) -> SolveReport {
        let bound = rational::ratio(inst.m() as i64, 3);
        SolveReport {
            method: self.method,
            best_count: self.best_count,
            m: inst.m(),
            above_bound: Rational::from_integer(self.best_count.into()) - &bound,
            lower_bound_m_over_3: bound,
            arrangement: self.arrangement.positions().to_vec(),
            optimal: self.optimal,
        }
    }
}

/// JSON shape of a [`SolveResult`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveReport {
    pub method: Method,
    pub best_count: usize,
    pub m: usize,
    #[serde(serialize_with = "rational::serialize")]
    pub lower_bound_m_over_3: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub above_bound: Rational,
    pub arrangement: Vec<u32>,
    pub optimal: bool,
}
