//! Complete-triple reduction and the above-`m/3` kernel decision.
//!
//! A complete triple is the three constraints `(a,{b,c})`, `(b,{a,c})`,
//! `(c,{a,b})` on one 3-set. Every arrangement satisfies exactly one of
//! them, so deleting the triple lowers both the optimum and `m/3` by one and
//! leaves the excess over `m/3` unchanged.
//!
//! After reduction the instance is irreducible and its excess variable `X`
//! has `E[X²] ≥ (11/768)·m'`. Combined with the fourth-moment bound for
//! degree-6 polynomials (`b = 2³⁶`) this gives `P(X > σ/2²⁰) > 0`, so
//! `σ/2²⁰ ≥ κ` is enough to answer YES. Squaring,
//! `(11/768)·m' ≥ 2⁴⁰·κ²`, i.e. `11·m' ≥ 768·2⁴⁰·κ²`, which is checked in
//! integers.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::{Arrangement, Constraint, Instance, VarId};
use crate::rational::Rational;
use crate::sabem;

/// Three constraints sharing one 3-set, one per choice of middle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompleteTriple {
    pub vars: [VarId; 3],
    pub constraints: [Constraint; 3],
}

pub fn find_complete_triples(inst: &Instance) -> Vec<CompleteTriple> {
    let mut by_set: BTreeMap<[VarId; 3], Vec<Constraint>> = BTreeMap::new();
    for c in inst.constraints() {
        by_set.entry(c.var_set()).or_default().push(*c);
    }
    by_set
        .into_iter()
        .filter(|(_, cs)| cs.len() == 3)
        .map(|(vars, cs)| CompleteTriple {
            vars,
            constraints: [cs[0], cs[1], cs[2]],
        })
        .collect()
}

pub fn is_irreducible(inst: &Instance) -> bool {
    let mut by_set: BTreeMap<[VarId; 3], u8> = BTreeMap::new();
    for c in inst.constraints() {
        let k = by_set.entry(c.var_set()).or_default();
        *k += 1;
        if *k == 3 {
            return false;
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionResult {
    pub original_n: usize,
    pub reduced: Instance,
    pub triples_removed: usize,
    /// `var_map[i]` is the original id of reduced variable `i + 1`.
    pub var_map: Vec<VarId>,
    /// Original variables that occurred only inside removed triples.
    pub deleted: Vec<VarId>,
    pub removed_triples: Vec<CompleteTriple>,
}

/// Removes every complete triple and compacts the surviving variables.
///
/// Complete triples on distinct 3-sets are disjoint as constraint sets and
/// removing one never creates another, so a single pass reaches the fixed
/// point.
pub fn reduce(inst: &Instance) -> ReductionResult {
    let removed_triples = find_complete_triples(inst);
    let removed: std::collections::HashSet<Constraint> =
        removed_triples.iter().flat_map(|t| t.constraints).collect();
    let kept: Vec<Constraint> = inst
        .constraints()
        .iter()
        .filter(|c| !removed.contains(c))
        .copied()
        .collect();

    let mut in_kept = vec![false; inst.n()];
    for c in &kept {
        for v in c.vars() {
            in_kept[v.index()] = true;
        }
    }
    let mut in_removed = vec![false; inst.n()];
    for t in &removed_triples {
        for v in t.vars {
            in_removed[v.index()] = true;
        }
    }

    let mut var_map = Vec::new();
    let mut deleted = Vec::new();
    let mut renumber = vec![None; inst.n()];
    for v in inst.vars() {
        if in_removed[v.index()] && !in_kept[v.index()] {
            deleted.push(v);
        } else {
            var_map.push(v);
            renumber[v.index()] = Some(VarId::from_index(var_map.len() - 1));
        }
    }

    let remap = |v: VarId| renumber[v.index()].expect("kept constraint uses a kept variable");
    let constraints = kept
        .iter()
        .map(|c| Constraint::new(remap(c.middle), remap(c.outer_lo), remap(c.outer_hi)))
        .collect::<Result<Vec<_>>>()
        .expect("renumbering is injective");
    let reduced = Instance::new(var_map.len(), constraints).expect("reduced instance is valid");

    ReductionResult {
        original_n: inst.n(),
        reduced,
        triples_removed: removed_triples.len(),
        var_map,
        deleted,
        removed_triples,
    }
}

/// `768·2⁴⁰`, the numerator of the kernel constant.
fn threshold_numerator() -> BigUint {
    BigUint::from(768u32) << 40
}

fn check_kappa(kappa: i64) -> Result<u64> {
    u64::try_from(kappa).map_err(|_| Error::NegativeParameter(kappa))
}

/// Smallest `m*` with `11·m* ≥ 768·2⁴⁰·κ²`.
pub fn yes_threshold(kappa: i64) -> Result<BigUint> {
    let kappa = BigUint::from(check_kappa(kappa)?);
    let target = threshold_numerator() * &kappa * &kappa;
    Ok(Integer::div_ceil(&target, &BigUint::from(11u32)))
}

/// The integer form of the YES condition, free of the ceiling.
pub fn bound_says_yes(m_reduced: &BigUint, kappa: u64) -> bool {
    let kappa = BigUint::from(kappa);
    BigUint::from(11u32) * m_reduced >= threshold_numerator() * &kappa * &kappa
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelMode {
    /// Uses the guaranteed `E[X²] ≥ (11/768)·m'`.
    #[default]
    Bound,
    /// Uses the instance's exact `E[X²]`.
    Sharp,
}

impl std::str::FromStr for KernelMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bound" => Ok(KernelMode::Bound),
            "sharp" => Ok(KernelMode::Sharp),
            _ => Err(Error::InvalidArgument(format!("unknown mode `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Yes,
    Kernel,
}

#[derive(Debug, Clone)]
pub struct KernelDecision {
    pub verdict: Verdict,
    pub kappa: u64,
    pub mode: KernelMode,
    pub m_original: usize,
    /// `yes_threshold(kappa)`; decisive in bound mode, informational in sharp mode.
    pub threshold: BigUint,
    pub reduction: ReductionResult,
}

impl KernelDecision {
    /// The reduced instance, present only when the verdict is `Kernel`.
    pub fn kernel(&self) -> Option<&Instance> {
        (self.verdict == Verdict::Kernel).then_some(&self.reduction.reduced)
    }

    pub fn report(&self) -> KernelReport {
        KernelReport {
            verdict: self.verdict,
            kappa: self.kappa,
            m_original: self.m_original,
            m_reduced: self.reduction.reduced.m(),
            triples_removed: self.reduction.triples_removed,
            threshold: self.threshold.to_string(),
            mode: self.mode,
        }
    }
}

/// JSON shape of a kernel decision. `threshold` is a decimal string since it
/// outgrows 64 bits for `κ ≳ 490`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelReport {
    pub verdict: Verdict,
    pub kappa: u64,
    pub m_original: usize,
    pub m_reduced: usize,
    pub triples_removed: usize,
    pub threshold: String,
    pub mode: KernelMode,
}

/// Reduces `inst` and either certifies YES or hands back the kernel.
///
/// `P(X > σ/2²⁰) > 0` is strict, so `σ/2²⁰ ≥ κ` already yields an outcome
/// with `X > κ`; the non-strict comparison below is sound.
pub fn kernelize(inst: &Instance, kappa: i64, mode: KernelMode) -> Result<KernelDecision> {
    let kappa = check_kappa(kappa)?;
    let reduction = reduce(inst);
    let m_reduced = reduction.reduced.m();
    let yes = match mode {
        KernelMode::Bound => bound_says_yes(&BigUint::from(m_reduced), kappa),
        KernelMode::Sharp => {
            let sigma_sq = sabem::second_moment_closed_form(&reduction.reduced);
            let needed = Rational::from_integer(BigInt::from(kappa).pow(2) << 40);
            sigma_sq >= needed
        }
    };
    Ok(KernelDecision {
        verdict: if yes { Verdict::Yes } else { Verdict::Kernel },
        kappa,
        mode,
        m_original: inst.m(),
        threshold: yes_threshold(kappa as i64)?,
        reduction,
    })
}

/// Pulls an arrangement of the reduced instance back to the original
/// variables. Deleted variables go after all kept ones, ascending by id.
pub fn lift_arrangement(reduced_arr: &Arrangement, res: &ReductionResult) -> Result<Arrangement> {
    if reduced_arr.n() != res.reduced.n() {
        return Err(Error::NotBijection(res.reduced.n()));
    }
    let mut order: Vec<VarId> = reduced_arr
        .order()
        .into_iter()
        .map(|v| res.var_map[v.index()])
        .collect();
    order.extend(res.deleted.iter().copied());
    Arrangement::from_order(&order)
}
