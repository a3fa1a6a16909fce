//! "Can at least `m/3 + κ` constraints be satisfied?"
//!
//! The kernel threshold yields a YES that is existential: the moment
//! argument proves a good arrangement exists without constructing one. We
//! still try to find a certificate heuristically; if none turns up the
//! verdict stays YES and is flagged existential. Below the threshold the
//! kernel is solved exactly when it fits the DP budget, otherwise the answer
//! is UNDECIDED.

use serde::Serialize;

use super::{local_search, randomized_round, satisfied_count, solve_exact_dp, DEFAULT_DP_MAX_N};
use crate::error::Result;
use crate::instance::{Arrangement, Instance};
use crate::kernel::{kernelize, lift_arrangement, KernelMode, KernelReport, Verdict};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub dp_max_n: usize,
    pub phi_trials: usize,
    pub arr_trials: usize,
    pub local_rounds: usize,
    pub seed: u64,
    pub mode: KernelMode,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            dp_max_n: DEFAULT_DP_MAX_N,
            phi_trials: 64,
            arr_trials: 64,
            local_rounds: 100,
            seed: 0,
            mode: KernelMode::Bound,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Yes {
        /// A verified arrangement reaching the target, when one was found.
        certificate: Option<Arrangement>,
    },
    No {
        /// The exact optimum of the original instance.
        optimum: usize,
    },
    Undecided {
        kernel: Instance,
    },
}

/// `satisfied ≥ m/3 + κ`, compared as `3·satisfied ≥ m + 3κ`.
pub fn meets_target(satisfied: usize, m: usize, kappa: u64) -> bool {
    3 * satisfied as u128 >= m as u128 + 3 * kappa as u128
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecisionReport {
    pub verdict: &'static str,
    /// YES without a certificate.
    pub existential: bool,
    pub kappa: u64,
    pub m: usize,
    #[serde(serialize_with = "rational::serialize")]
    pub target: Rational,
    pub best_found: Option<usize>,
    pub arrangement: Option<Vec<u32>>,
    pub kernel: KernelReport,
}

pub fn decide_batlb(
    inst: &Instance,
    kappa: i64,
    budget: &Budget,
) -> Result<(Decision, DecisionReport)> {
    let decision = kernelize(inst, kappa, budget.mode)?;
    let kappa = decision.kappa;
    let m = inst.m();

    let (outcome, best_found) = match decision.verdict {
        Verdict::Yes => {
            let rounded =
                randomized_round(inst, budget.phi_trials, budget.arr_trials, budget.seed)?;
            let polished = local_search(inst, &rounded.arrangement, budget.local_rounds);
            let certificate =
                meets_target(polished.best_count, m, kappa).then_some(polished.arrangement);
            (Decision::Yes { certificate }, Some(polished.best_count))
        }
        Verdict::Kernel => {
            let res = &decision.reduction;
            if res.reduced.n() > budget.dp_max_n {
                (
                    Decision::Undecided {
                        kernel: res.reduced.clone(),
                    },
                    None,
                )
            } else {
                let solved = solve_exact_dp(&res.reduced, budget.dp_max_n)?;
                let lifted = lift_arrangement(&solved.arrangement, res)?;
                let count = satisfied_count(inst, &lifted);
                debug_assert_eq!(count, solved.best_count + res.triples_removed);
                if meets_target(count, m, kappa) {
                    (
                        Decision::Yes {
                            certificate: Some(lifted),
                        },
                        Some(count),
                    )
                } else {
                    (Decision::No { optimum: count }, Some(count))
                }
            }
        }
    };

    let (verdict, existential, arrangement) = match &outcome {
        Decision::Yes { certificate } => (
            "YES",
            certificate.is_none(),
            certificate.as_ref().map(|a| a.positions().to_vec()),
        ),
        Decision::No { .. } => ("NO", false, None),
        Decision::Undecided { .. } => ("UNDECIDED", false, None),
    };
    let report = DecisionReport {
        verdict,
        existential,
        kappa,
        m,
        target: rational::ratio(m as i64, 3) + Rational::from_integer(kappa.into()),
        best_found,
        arrangement,
        kernel: decision.report(),
    };
    Ok((outcome, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::generate::{gen_complete, gen_random};
    use crate::instance::Constraint;

    fn single() -> Instance {
        Instance::new(3, vec![Constraint::from_ids(2, 1, 3).unwrap()]).unwrap()
    }

    #[test]
    fn target_comparison_is_exact() {
        assert!(meets_target(1, 1, 0));
        assert!(!meets_target(1, 1, 1));
        assert!(meets_target(4, 10, 0));
        assert!(!meets_target(3, 10, 0));
        assert!(meets_target(5, 10, 1));
    }

    #[test]
    fn single_constraint() {
        let inst = single();
        let (d, r) = decide_batlb(&inst, 0, &Budget::default()).unwrap();
        let Decision::Yes {
            certificate: Some(arr),
        } = d
        else {
            panic!("expected certified YES, got {d:?}");
        };
        assert_eq!(satisfied_count(&inst, &arr), 1);
        assert_eq!(r.verdict, "YES");
        assert!(!r.existential);

        let (d, r) = decide_batlb(&inst, 1, &Budget::default()).unwrap();
        assert_eq!(d, Decision::No { optimum: 1 });
        assert_eq!(r.target, rational::ratio(4, 3));
    }

    #[test]
    fn complete_instance_is_no_above_zero() {
        let (d, _) = decide_batlb(&gen_complete(5).unwrap(), 1, &Budget::default()).unwrap();
        assert_eq!(d, Decision::No { optimum: 10 });
    }

    #[test]
    fn undecided_when_kernel_too_big() {
        let inst = gen_random(12, 40, 1).unwrap();
        let budget = Budget {
            dp_max_n: 4,
            ..Budget::default()
        };
        let (d, r) = decide_batlb(&inst, 3, &budget).unwrap();
        assert!(matches!(d, Decision::Undecided { .. }));
        assert_eq!(r.verdict, "UNDECIDED");
    }

    #[test]
    fn negative_kappa_rejected() {
        assert_eq!(
            decide_batlb(&single(), -2, &Budget::default()).unwrap_err(),
            Error::NegativeParameter(-2)
        );
    }
}
