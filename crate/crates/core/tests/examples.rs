//! Worked examples spanning several modules.

use btw_core::generate::{gen_planted, gen_random};
use btw_core::instance::{Arrangement, Constraint, Instance};
use btw_core::kernel::{kernelize, lift_arrangement, reduce, KernelMode, Verdict};
use btw_core::rational::{ratio, Rational};
use btw_core::sabem::{monte_carlo_moments, second_moment_closed_form, x_weight, Assignment4};
use btw_core::solve::{
    decide_batlb, local_search, randomized_round, sample_compatible_arrangement, satisfied_count,
    solve_brute, solve_exact_dp, Budget, Decision, DEFAULT_DP_MAX_N,
};
use num_traits::{Signed, ToPrimitive};

#[test]
fn planted_instance_solves_to_m() {
    let (inst, hidden) = gen_planted(8, 30, 0.0, 7).unwrap();
    assert_eq!(satisfied_count(&inst, &hidden), 30);
    assert_eq!(
        solve_exact_dp(&inst, DEFAULT_DP_MAX_N).unwrap().best_count,
        30
    );

    let (inst, _) = gen_planted(7, 20, 0.0, 1).unwrap();
    assert_eq!(solve_brute(&inst).unwrap().best_count, 20);
}

#[test]
fn kernel_of_sparse_random_instance() {
    let inst = gen_random(10, 50, 3).unwrap();
    let d = kernelize(&inst, 1, KernelMode::Bound).unwrap();
    assert_eq!(d.verdict, Verdict::Kernel);
    let kernel = d.kernel().unwrap();
    assert!(kernel.m() <= 50);

    // the excess over m/3 survives reduction
    let opt = solve_exact_dp(&inst, DEFAULT_DP_MAX_N).unwrap().best_count;
    let kopt = solve_exact_dp(kernel, DEFAULT_DP_MAX_N).unwrap().best_count;
    assert_eq!(
        ratio(3 * opt as i64 - inst.m() as i64, 3),
        ratio(3 * kopt as i64 - kernel.m() as i64, 3)
    );
}

#[test]
fn sharp_mode_matches_exact_sigma() {
    let inst = gen_random(10, 80, 5).unwrap();
    let d = kernelize(&inst, 1, KernelMode::Sharp).unwrap();
    // σ² is a few units at this size, far below 2⁴⁰
    assert_eq!(d.verdict, Verdict::Kernel);
    let sigma_sq = second_moment_closed_form(&d.reduction.reduced);
    assert!(sigma_sq < Rational::from_integer((1i64 << 40).into()));
}

#[test]
fn lifted_arrangement_recovers_offset_with_two_triples() {
    let c = |m, a, b| Constraint::from_ids(m, a, b).unwrap();
    let inst = Instance::new(
        7,
        vec![
            c(1, 2, 3),
            c(2, 1, 3),
            c(3, 1, 2),
            c(4, 5, 6),
            c(5, 4, 6),
            c(6, 4, 5),
            c(7, 1, 4),
            c(1, 6, 7),
        ],
    )
    .unwrap();
    let res = reduce(&inst);
    assert_eq!(res.triples_removed, 2);
    let brute = solve_brute(&res.reduced).unwrap();
    let lifted = lift_arrangement(&brute.arrangement, &res).unwrap();
    assert_eq!(satisfied_count(&inst, &lifted), brute.best_count + 2);
    assert_eq!(solve_brute(&inst).unwrap().best_count, brute.best_count + 2);
}

#[test]
fn decide_examples() {
    let budget = Budget::default();
    for seed in 0..10 {
        let inst = gen_random(9, 25, seed).unwrap();
        let (d, r) = decide_batlb(&inst, 0, &budget).unwrap();
        assert!(matches!(d, Decision::Yes { .. }), "{r:?}");
        if let Decision::Yes {
            certificate: Some(arr),
        } = d
        {
            assert!(3 * satisfied_count(&inst, &arr) >= inst.m());
        }
    }

    // kernel YES must agree with the true optimum when it can be computed
    for seed in 0..10 {
        let inst = gen_random(8, 30, seed).unwrap();
        let opt = solve_exact_dp(&inst, DEFAULT_DP_MAX_N).unwrap().best_count;
        for kappa in 0..4 {
            let (d, _) = decide_batlb(&inst, kappa, &budget).unwrap();
            let truth = 3 * opt >= inst.m() + 3 * kappa as usize;
            match d {
                Decision::Yes { .. } => assert!(truth),
                Decision::No { optimum } => {
                    assert!(!truth);
                    assert_eq!(optimum, opt);
                }
                Decision::Undecided { .. } => panic!("n=8 fits the DP budget"),
            }
        }
    }
}

#[test]
fn compatible_sampling_averages_to_weight() {
    let inst = gen_random(9, 40, 2).unwrap();
    let phi = Assignment4::new(vec![0, 1, 1, 2, 3, 0, 2, 1, 3]).unwrap();
    let exact = ratio(inst.m() as i64, 3) + x_weight(&inst, &phi);
    let samples = 4000u64;
    let total: usize = (0..samples)
        .map(|seed| satisfied_count(&inst, &sample_compatible_arrangement(&inst, &phi, seed)))
        .sum();
    let mean = ratio(total as i64, samples as i64);
    // satisfied counts lie in [0, m], so the sample mean has sd ≤ m/(2√samples)
    let diff = (mean - &exact).abs().to_f64().unwrap();
    let sd_bound = inst.m() as f64 / (2.0 * (samples as f64).sqrt());
    assert!(diff <= 4.0 * sd_bound, "mean off by {diff}");
}

#[test]
fn monte_carlo_mean_is_near_zero() {
    let inst = reduce(&gen_random(30, 300, 8).unwrap()).reduced;
    let samples = 20_000;
    let (mean, mean_sq) = monte_carlo_moments(&inst, samples, 1).unwrap();
    let sigma_sq = second_moment_closed_form(&inst);
    // X has variance E[X²] under a uniform colouring
    let tol = 5.0 * (sigma_sq.to_f64().unwrap() / samples as f64).sqrt();
    let mean = mean.to_f64().unwrap();
    assert!(mean.abs() <= tol, "mean {mean} outside ±{tol}");
    // mean square is a consistent estimator of E[X²]; loose relative check
    let rel = ((mean_sq - &sigma_sq) / &sigma_sq).abs().to_f64().unwrap();
    assert!(rel < 0.1, "relative error {rel}");
}

#[test]
fn local_search_regression_on_planted() {
    let (inst, _) = gen_planted(12, 40, 0.2, 5).unwrap();
    let rr = randomized_round(&inst, 16, 16, 5).unwrap();
    let ls = local_search(&inst, &rr.arrangement, 100);
    assert!(ls.best_count >= rr.best_count);
    let opt = solve_exact_dp(&inst, DEFAULT_DP_MAX_N).unwrap().best_count;
    assert!(ls.best_count <= opt);
    assert_eq!(ls, local_search(&inst, &rr.arrangement, 100));
    assert_eq!((rr.best_count, ls.best_count, opt), RECORDED_PLANTED_RUN);
}

/// `(randomized_round, local_search, exact)` on `gen_planted(12, 40, 0.2, 5)`.
const RECORDED_PLANTED_RUN: (usize, usize, usize) = (25, 37, 37);

#[test]
fn identity_is_a_valid_start() {
    let inst = gen_random(6, 10, 0).unwrap();
    let res = local_search(&inst, &Arrangement::identity(6), 0);
    assert_eq!(res.arrangement, Arrangement::identity(6));
}
