use rand::seq::SliceRandom;
use rand::Rng;

use super::{satisfied_count, Method, SolveResult};
use crate::error::{Error, Result};
use crate::generate::seeded;
use crate::instance::{Arrangement, Instance, VarId};
use crate::sabem::{x_weight_sixths, Assignment4};

/// Colour classes as consecutive blocks in ascending colour order, each
/// block shuffled uniformly.
pub fn sample_compatible_arrangement_with<R: Rng + ?Sized>(
    phi: &Assignment4,
    rng: &mut R,
) -> Arrangement {
    let mut blocks: [Vec<VarId>; 4] = Default::default();
    for (i, &c) in phi.classes().iter().enumerate() {
        blocks[c as usize].push(VarId::from_index(i));
    }
    let mut order = Vec::with_capacity(phi.n());
    for block in blocks.iter_mut() {
        block.shuffle(rng);
        order.extend_from_slice(block);
    }
    Arrangement::from_order(&order).expect("blocks partition the variables")
}

pub fn sample_compatible_arrangement(inst: &Instance, phi: &Assignment4, seed: u64) -> Arrangement {
    assert_eq!(inst.n(), phi.n(), "colouring must cover the instance");
    sample_compatible_arrangement_with(phi, &mut seeded(seed))
}

/// Keeps the best of `phi_trials` uniform colourings by exact weight, then
/// the best of `arr_trials` arrangements compatible with it.
pub fn randomized_round(
    inst: &Instance,
    phi_trials: usize,
    arr_trials: usize,
    seed: u64,
) -> Result<SolveResult> {
    if phi_trials == 0 || arr_trials == 0 {
        return Err(Error::InvalidArgument(
            "trial counts must be at least 1".into(),
        ));
    }
    let mut rng = seeded(seed);
    let mut best_phi = Assignment4::random(inst.n(), &mut rng);
    let mut best_weight = x_weight_sixths(inst, &best_phi);
    for _ in 1..phi_trials {
        let phi = Assignment4::random(inst.n(), &mut rng);
        let w = x_weight_sixths(inst, &phi);
        if w > best_weight {
            best_weight = w;
            best_phi = phi;
        }
    }

    let mut arrangement = sample_compatible_arrangement_with(&best_phi, &mut rng);
    let mut best_count = satisfied_count(inst, &arrangement);
    for _ in 1..arr_trials {
        let arr = sample_compatible_arrangement_with(&best_phi, &mut rng);
        let k = satisfied_count(inst, &arr);
        if k > best_count {
            best_count = k;
            arrangement = arr;
        }
    }
    Ok(SolveResult {
        best_count,
        arrangement,
        method: Method::RandomizedRound,
        optimal: false,
    })
}

/// Hill climbing over single-variable reinsertions.
///
/// A round visits every variable once, moving it to its best slot when that
/// strictly improves the count (ties go to the leftmost slot). Stops after a
/// round without improvement or after `max_rounds` rounds.
pub fn local_search(inst: &Instance, start: &Arrangement, max_rounds: usize) -> SolveResult {
    let n = inst.n();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (idx, c) in inst.constraints().iter().enumerate() {
        for v in c.vars() {
            incident[v.index()].push(idx);
        }
    }

    let mut order = start.order();
    let mut rest_index = vec![0usize; n];
    let mut gain = vec![0i64; n + 1];
    for _ in 0..max_rounds {
        let mut improved = false;
        for v in (0..n).map(VarId::from_index) {
            let current = order.iter().position(|&x| x == v).expect("v is placed");
            order.remove(current);
            for (k, &x) in order.iter().enumerate() {
                rest_index[x.index()] = k;
            }

            // gain[s] counts satisfied constraints touching v when v is
            // inserted before order[s]; built as a difference array.
            gain.iter_mut().for_each(|g| *g = 0);
            let mut bump = |from: usize, to: usize| {
                if from < to {
                    gain[from] += 1;
                    gain[to] -= 1;
                }
            };
            for &ci in &incident[v.index()] {
                let c = inst.constraints()[ci];
                if c.middle == v {
                    let (a, b) = (
                        rest_index[c.outer_lo.index()],
                        rest_index[c.outer_hi.index()],
                    );
                    bump(a.min(b) + 1, a.max(b) + 1);
                } else {
                    let other = if c.outer_lo == v {
                        c.outer_hi
                    } else {
                        c.outer_lo
                    };
                    let (mid, out) = (rest_index[c.middle.index()], rest_index[other.index()]);
                    if out > mid {
                        bump(0, mid + 1);
                    } else {
                        bump(mid + 1, n);
                    }
                }
            }
            let mut running = 0;
            let mut best_slot = current;
            let mut current_gain = 0;
            let mut best_gain = i64::MIN;
            for (slot, delta) in gain.iter().take(n).enumerate() {
                running += delta;
                if slot == current {
                    current_gain = running;
                }
                if running > best_gain {
                    best_gain = running;
                    best_slot = slot;
                }
            }
            if best_gain > current_gain {
                order.insert(best_slot, v);
                improved = true;
            } else {
                order.insert(current, v);
            }
        }
        if !improved {
            break;
        }
    }

    let arrangement = Arrangement::from_order(&order).expect("reinsertion keeps a permutation");
    SolveResult {
        best_count: satisfied_count(inst, &arrangement),
        arrangement,
        method: Method::LocalSearch,
        optimal: false,
    }
}
