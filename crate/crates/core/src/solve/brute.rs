use super::{satisfied_count, Method, SolveResult};
use crate::error::{Error, Result};
use crate::instance::{Arrangement, Instance};

pub const BRUTE_MAX_N: usize = 10;

/// Tries all `n!` position vectors in lexicographic order, keeping the first
/// one that reaches the maximum.
pub fn solve_brute(inst: &Instance) -> Result<SolveResult> {
    let n = inst.n();
    if n > BRUTE_MAX_N {
        return Err(Error::TooLarge {
            what: "brute force (variables)",
            size: n as u128,
            limit: BRUTE_MAX_N as u128,
        });
    }
    let mut positions: Vec<u32> = (1..=n as u32).collect();
    let mut best = positions.clone();
    let mut best_count = count(inst, &positions);
    while next_permutation(&mut positions) {
        let k = count(inst, &positions);
        if k > best_count {
            best_count = k;
            best.copy_from_slice(&positions);
        }
    }
    let arrangement = Arrangement::from_positions(best)?;
    debug_assert_eq!(satisfied_count(inst, &arrangement), best_count);
    Ok(SolveResult {
        best_count,
        arrangement,
        method: Method::Brute,
        optimal: true,
    })
}

fn count(inst: &Instance, positions: &[u32]) -> usize {
    inst.constraints()
        .iter()
        .filter(|c| c.satisfied_by(positions))
        .count()
}

/// Advances to the next permutation in lexicographic order; false after the last.
fn next_permutation(xs: &mut [u32]) -> bool {
    let Some(i) = xs.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = xs
        .iter()
        .rposition(|&x| x > xs[i])
        .expect("a larger suffix element exists");
    xs.swap(i, j);
    xs[i + 1..].reverse();
    true
}
