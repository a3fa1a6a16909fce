use std::fmt::Write as _;

use btw_core::kernel::{kernelize as kernelize_instance, KernelReport, Verdict};
use btw_core::rational::to_ratio_string;
use btw_core::sabem::{
    monte_carlo_moments, profile_counts, second_moment_closed_form, second_moment_enumerated,
};
use btw_core::solve::{
    decide_batlb, local_search, randomized_round, solve_brute, solve_exact_dp, Budget, Decision,
    SolveReport,
};
use btw_core::{gen_complete, gen_planted, gen_random, Error, Instance, VarId};
use serde::Serialize;
use serde_json::json;

use crate::{
    read_instance, DecideArgs, Failure, Family, Format, GenArgs, KernelArgs, SolveArgs,
    SolveMethod, StatsArgs,
};

const LOCAL_ROUNDS: usize = 100;

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn instance_json(inst: &Instance) -> serde_json::Value {
    let constraints: Vec<[u32; 3]> = inst
        .constraints()
        .iter()
        .map(|c| [c.middle.get(), c.outer_lo.get(), c.outer_hi.get()])
        .collect();
    json!({ "n": inst.n(), "m": inst.m(), "constraints": constraints })
}

pub fn gen(a: &GenArgs) -> Result<String, Failure> {
    let need_m = || {
        a.m.ok_or_else(|| {
            Failure::from(Error::InvalidArgument(
                "--m is required for this family".into(),
            ))
        })
    };
    let (inst, planted) = match a.family {
        Family::Complete => (gen_complete(a.n)?, None),
        Family::Random => (gen_random(a.n, need_m()?, a.seed)?, None),
        Family::Planted => {
            let (inst, arr) = gen_planted(a.n, need_m()?, a.noise, a.seed)?;
            (inst, Some(arr))
        }
    };
    Ok(match a.out.format {
        Format::Text => {
            let mut s = String::new();
            if let Some(arr) = &planted {
                writeln!(s, "c planted {}", join(arr.positions())).unwrap();
            }
            s + &inst.to_text()
        }
        Format::Json => {
            let mut v = instance_json(&inst);
            v["planted"] = json!(planted.map(|arr| arr.positions().to_vec()));
            to_json(&v)
        }
    })
}

pub fn solve(a: &SolveArgs) -> Result<String, Failure> {
    let inst = read_instance(&a.input.input, a.input.dedupe)?;
    let heuristic = || -> Result<_, Failure> {
        let rounded = randomized_round(&inst, a.trials, a.trials, a.seed)?;
        Ok(local_search(&inst, &rounded.arrangement, LOCAL_ROUNDS))
    };
    let result = match a.method {
        SolveMethod::Auto if inst.n() <= a.dp_max => solve_exact_dp(&inst, a.dp_max)?,
        SolveMethod::Auto | SolveMethod::Heuristic => heuristic()?,
        SolveMethod::Dp => solve_exact_dp(&inst, a.dp_max)?,
        SolveMethod::Brute => solve_brute(&inst)?,
    };
    let report = result.report(&inst);
    Ok(match a.out.format {
        Format::Json => to_json(&report),
        Format::Text => solve_text(&report),
    })
}

fn solve_text(r: &SolveReport) -> String {
    let method = serde_json::to_value(r.method).unwrap();
    let mut s = String::new();
    writeln!(s, "method {}", method.as_str().unwrap()).unwrap();
    writeln!(s, "optimal {}", r.optimal).unwrap();
    writeln!(s, "best_count {}", r.best_count).unwrap();
    writeln!(s, "m {}", r.m).unwrap();
    writeln!(s, "m_over_3 {}", to_ratio_string(&r.lower_bound_m_over_3)).unwrap();
    writeln!(s, "above_bound {}", to_ratio_string(&r.above_bound)).unwrap();
    writeln!(s, "arrangement {}", join(&r.arrangement)).unwrap();
    s
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Yes => "YES",
        Verdict::Kernel => "KERNEL",
    }
}

fn kernel_lines(r: &KernelReport, prefix: &str) -> String {
    let mode = serde_json::to_value(r.mode).unwrap();
    let mut s = String::new();
    writeln!(s, "{prefix}verdict {}", verdict_str(r.verdict)).unwrap();
    writeln!(s, "{prefix}kappa {}", r.kappa).unwrap();
    writeln!(s, "{prefix}mode {}", mode.as_str().unwrap()).unwrap();
    writeln!(s, "{prefix}m_original {}", r.m_original).unwrap();
    writeln!(s, "{prefix}m_reduced {}", r.m_reduced).unwrap();
    writeln!(s, "{prefix}triples_removed {}", r.triples_removed).unwrap();
    writeln!(s, "{prefix}threshold {}", r.threshold).unwrap();
    s
}

pub fn kernelize(a: &KernelArgs) -> Result<String, Failure> {
    let inst = read_instance(&a.input.input, a.input.dedupe)?;
    let decision = kernelize_instance(&inst, a.kappa, a.mode.into())?;
    let report = decision.report();
    Ok(match a.out.format {
        Format::Text => {
            let mut s = kernel_lines(&report, "c ");
            if let Some(k) = decision.kernel() {
                s.push_str(&k.to_text());
            }
            s
        }
        Format::Json => {
            let mut v = serde_json::to_value(&report).unwrap();
            if let Some(k) = decision.kernel() {
                v["kernel"] = json!(k.to_text());
            }
            to_json(&v)
        }
    })
}

pub fn decide(a: &DecideArgs) -> Result<String, Failure> {
    let inst = read_instance(&a.input.input, a.input.dedupe)?;
    let budget = Budget {
        dp_max_n: a.dp_max,
        phi_trials: a.trials,
        arr_trials: a.trials,
        local_rounds: LOCAL_ROUNDS,
        seed: a.seed,
        mode: a.mode.into(),
    };
    let (decision, report) = decide_batlb(&inst, a.kappa, &budget)?;
    let kernel = match &decision {
        Decision::Undecided { kernel } => Some(kernel),
        _ => None,
    };
    Ok(match a.out.format {
        Format::Json => {
            let mut v = serde_json::to_value(&report).unwrap();
            if let Some(k) = kernel {
                v["kernel_instance"] = json!(k.to_text());
            }
            to_json(&v)
        }
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "verdict {}", report.verdict).unwrap();
            writeln!(s, "existential {}", report.existential).unwrap();
            writeln!(s, "kappa {}", report.kappa).unwrap();
            writeln!(s, "m {}", report.m).unwrap();
            writeln!(s, "target {}", to_ratio_string(&report.target)).unwrap();
            if let Some(best) = report.best_found {
                writeln!(s, "best_found {best}").unwrap();
            }
            if let Some(arr) = &report.arrangement {
                writeln!(s, "arrangement {}", join(arr)).unwrap();
            }
            s.push_str(&kernel_lines(&report.kernel, "kernel_"));
            if let Some(k) = kernel {
                s.push_str(&k.to_text());
            }
            s
        }
    })
}

pub fn stats(a: &StatsArgs) -> Result<String, Failure> {
    let inst = read_instance(&a.input.input, a.input.dedupe)?;
    let p = profile_counts(&inst);
    let vars: Vec<VarId> = inst.vars().collect();
    let pairs = p.active_pairs();
    let mut sets = [0u64; 8];
    for &u in &vars {
        sets[0] += p.s1(u);
        sets[1] += p.s2(u);
        sets[2] += p.s3(u);
    }
    for &(u, v) in &pairs {
        sets[3] += p.s4(u, v);
        sets[4] += p.s5(u, v);
        sets[5] += p.s6(u, v);
        sets[6] += p.s7(u, v);
    }
    sets[7] = p.per_set.keys().map(|s| p.s8(s)).sum();

    let closed = second_moment_closed_form(&inst);
    let enumerated = second_moment_enumerated(&inst);
    let (mean, mean_sq) = monte_carlo_moments(&inst, a.trials, a.seed)?;

    Ok(match a.out.format {
        Format::Json => {
            let triples = |m: &std::collections::BTreeMap<(VarId, VarId), u64>| {
                m.iter()
                    .map(|(&(u, v), &k)| [u.get() as u64, v.get() as u64, k])
                    .collect::<Vec<_>>()
            };
            to_json(&json!({
                "n": inst.n(),
                "m": inst.m(),
                "profile": {
                    "b": p.b,
                    "e": p.e,
                    "c_mid": triples(&p.c_mid),
                    "c_out": triples(&p.c_out),
                    "active_pairs": pairs.len(),
                    "set_sizes": sets,
                },
                "second_moment": {
                    "closed_form": to_ratio_string(&closed),
                    "enumerated": to_ratio_string(&enumerated),
                },
                "monte_carlo": {
                    "samples": a.trials,
                    "seed": a.seed,
                    "mean": to_ratio_string(&mean),
                    "mean_square": to_ratio_string(&mean_sq),
                },
            }))
        }
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "n {}", inst.n()).unwrap();
            writeln!(s, "m {}", inst.m()).unwrap();
            writeln!(s, "b {}", join(&p.b)).unwrap();
            writeln!(s, "e {}", join(&p.e)).unwrap();
            writeln!(s, "active_pairs {}", pairs.len()).unwrap();
            for (i, size) in sets.iter().enumerate() {
                writeln!(s, "s{} {size}", i + 1).unwrap();
            }
            writeln!(s, "second_moment_closed_form {}", to_ratio_string(&closed)).unwrap();
            writeln!(
                s,
                "second_moment_enumerated {}",
                to_ratio_string(&enumerated)
            )
            .unwrap();
            writeln!(s, "mc_samples {}", a.trials).unwrap();
            writeln!(s, "mc_mean {}", to_ratio_string(&mean)).unwrap();
            writeln!(s, "mc_mean_square {}", to_ratio_string(&mean_sq)).unwrap();
            s
        }
    })
}
