//! Subset dynamic program over placed prefixes.
//!
//! Build the arrangement left to right. When `v` is appended after the set
//! `S`, a constraint with middle `v` is decided right there: it is satisfied
//! iff exactly one of its outers is already in `S`, the other necessarily
//! coming later. Every constraint is credited exactly once, when its middle
//! is placed, so
//!
//! ```text
//! best(S) = max_{v ∉ S} credit(S, v) + best(S ∪ {v}),   best(V) = 0
//! ```
//!
//! is the optimum over completions of prefix `S`.

use super::{satisfied_count, Method, SolveResult};
use crate::error::{Error, Result};
use crate::instance::{Arrangement, Instance, VarId};

pub const DEFAULT_DP_MAX_N: usize = 22;

/// Hard ceiling imposed by the `u32` subset masks.
const MASK_BITS: usize = 31;

/// Outer-pair masks of the constraints with each middle.
fn outer_masks(inst: &Instance) -> Vec<Vec<(u32, u32)>> {
    let mut by_middle = vec![Vec::new(); inst.n()];
    for c in inst.constraints() {
        by_middle[c.middle.index()].push((1u32 << c.outer_lo.index(), 1u32 << c.outer_hi.index()));
    }
    by_middle
}

#[inline]
fn credit(masks: &[(u32, u32)], placed: u32) -> u32 {
    masks
        .iter()
        .filter(|&&(a, b)| (placed & a == 0) != (placed & b == 0))
        .count() as u32
}

/// Constraints settled by appending `v` after the variables in `placed`.
pub fn dp_credit(inst: &Instance, placed: &[VarId], v: VarId) -> usize {
    let placed_mask = placed.iter().fold(0u32, |m, p| m | 1 << p.index());
    credit(&outer_masks(inst)[v.index()], placed_mask) as usize
}

/// Optimal arrangement for instances with at most `max_n` variables.
///
/// Among optimal arrangements the one with the lexicographically smallest
/// left-to-right variable order is returned.
pub fn solve_exact_dp(inst: &Instance, max_n: usize) -> Result<SolveResult> {
    let n = inst.n();
    let limit = max_n.min(MASK_BITS);
    if n > limit {
        return Err(Error::TooLarge {
            what: "subset DP (variables)",
            size: n as u128,
            limit: limit as u128,
        });
    }
    let masks = outer_masks(inst);
    let full: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };

    let mut best = vec![0u32; full as usize + 1];
    for placed in (0..full).rev() {
        let mut free = full & !placed;
        let mut value = 0;
        while free != 0 {
            let v = free.trailing_zeros() as usize;
            free &= free - 1;
            let bit = 1u32 << v;
            value = value.max(credit(&masks[v], placed) + best[(placed | bit) as usize]);
        }
        best[placed as usize] = value;
    }

    let mut order = Vec::with_capacity(n);
    let mut placed = 0u32;
    while placed != full {
        let target = best[placed as usize];
        let v = (0..n)
            .find(|&v| {
                let bit = 1u32 << v;
                placed & bit == 0
                    && credit(&masks[v], placed) + best[(placed | bit) as usize] == target
            })
            .expect("some move attains the optimum");
        order.push(VarId::from_index(v));
        placed |= 1 << v;
    }

    let arrangement = Arrangement::from_order(&order)?;
    let best_count = best[0] as usize;
    debug_assert_eq!(satisfied_count(inst, &arrangement), best_count);
    Ok(SolveResult {
        best_count,
        arrangement,
        method: Method::ExactDp,
        optimal: true,
    })
}
