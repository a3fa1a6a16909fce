//! Betweenness above the `m/3` bound.
//!
//! A betweenness constraint `(v, {a, b})` asks that `v` be placed strictly
//! between `a` and `b` in a linear arrangement. A uniformly random
//! arrangement satisfies a third of the constraints on average, and complete
//! instances show no arrangement can do better in general. This crate asks
//! whether `m/3 + κ` constraints can be satisfied:
//!
//! * [`instance`] and [`generate`]: the data model, text format, generators;
//! * [`kernel`]: complete-triple reduction and the quadratic kernel decision;
//! * [`sabem`]: exact moments of the excess variable behind the kernel bound;
//! * [`solve`]: exact and heuristic solvers and the decision driver.

pub mod error;
pub mod generate;
pub mod instance;
pub mod kernel;
pub mod rational;
pub mod sabem;
pub mod solve;

pub use error::{Error, Result};
pub use generate::{gen_complete, gen_planted, gen_random};
pub use instance::{
    parse_instance, parse_str, Arrangement, Constraint, Instance, ParseOptions, VarId,
};
pub use kernel::{
    find_complete_triples, is_irreducible, kernelize, lift_arrangement, reduce, yes_threshold,
    KernelDecision, KernelMode, ReductionResult, Verdict,
};
pub use rational::Rational;
pub use sabem::Assignment4;
pub use solve::{
    decide_batlb, local_search, randomized_round, satisfied_count, solve_brute, solve_exact_dp,
    Decision, SolveResult,
};
