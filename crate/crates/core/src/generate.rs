//! Seeded instance generators.

use std::collections::HashSet;

use rand::seq::{index, SliceRandom};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::{Arrangement, Constraint, Instance, VarId};

pub(crate) fn seeded(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of distinct canonical constraints over `n` variables: `3·C(n,3)`.
pub fn distinct_constraint_count(n: usize) -> u128 {
    3 * binomial(n as u128, 3)
}

/// Every 3-subset with all three choices of middle.
pub fn gen_complete(n: usize) -> Result<Instance> {
    if n < 3 {
        return Err(Error::TooSmall { n, min: 3 });
    }
    let mut constraints = Vec::with_capacity(distinct_constraint_count(n) as usize);
    for a in 1..=n as u32 {
        for b in a + 1..=n as u32 {
            for c in b + 1..=n as u32 {
                let (a, b, c) = (VarId::new(a), VarId::new(b), VarId::new(c));
                constraints.push(Constraint::new(a, b, c)?);
                constraints.push(Constraint::new(b, a, c)?);
                constraints.push(Constraint::new(c, a, b)?);
            }
        }
    }
    Instance::new(n, constraints)
}

/// Maps `rank` in `[0, 3·C(n,3))` to a constraint: `rank / 3` picks the
/// 3-subset in colexicographic order, `rank % 3` picks its middle.
fn unrank_constraint(n: usize, rank: u128) -> Constraint {
    let mut r = rank / 3;
    let choice = (rank % 3) as usize;
    let mut elems = [0u32; 3];
    let mut top = n as u128;
    for (slot, k) in [(2usize, 3u128), (1, 2), (0, 1)] {
        // largest c < top with C(c, k) <= r
        let mut c = top - 1;
        while binomial(c, k) > r {
            c -= 1;
        }
        r -= binomial(c, k);
        elems[slot] = c as u32 + 1;
        top = c;
    }
    let vars = elems.map(VarId::new);
    let (mid, rest) = match choice {
        0 => (vars[0], [vars[1], vars[2]]),
        1 => (vars[1], [vars[0], vars[2]]),
        _ => (vars[2], [vars[0], vars[1]]),
    };
    Constraint::new(mid, rest[0], rest[1]).expect("unranked variables are distinct")
}

/// `m` distinct constraints drawn uniformly without replacement.
pub fn gen_random(n: usize, m: usize, seed: u64) -> Result<Instance> {
    let available = distinct_constraint_count(n);
    if m as u128 > available {
        return Err(Error::TooMany {
            requested: m as u128,
            available,
        });
    }
    let mut rng = seeded(seed);
    let total = usize::try_from(available).map_err(|_| Error::TooLarge {
        what: "constraint universe",
        size: available,
        limit: usize::MAX as u128,
    })?;
    let constraints = index::sample(&mut rng, total, m)
        .into_iter()
        .map(|r| unrank_constraint(n, r as u128))
        .collect();
    Instance::new(n, constraints)
}

/// Draws a hidden arrangement, then `m` distinct constraints of which each
/// is, with probability `1 - noise`, the constraint that arrangement
/// satisfies on a random 3-set, and otherwise a uniform random constraint.
pub fn gen_planted(n: usize, m: usize, noise: f64, seed: u64) -> Result<(Instance, Arrangement)> {
    if !(0.0..=1.0).contains(&noise) {
        return Err(Error::InvalidArgument(format!(
            "noise must lie in [0, 1], got {noise}"
        )));
    }
    let available = distinct_constraint_count(n);
    if m as u128 > available {
        return Err(Error::TooMany {
            requested: m as u128,
            available,
        });
    }
    // With no noise only one constraint per 3-set can ever be drawn.
    if noise == 0.0 && m as u128 > available / 3 {
        return Err(Error::TooMany {
            requested: m as u128,
            available: available / 3,
        });
    }

    let mut rng = seeded(seed);
    let mut positions: Vec<u32> = (1..=n as u32).collect();
    positions.shuffle(&mut rng);
    let hidden = Arrangement::from_positions(positions)?;

    let mut chosen = HashSet::with_capacity(m);
    let mut constraints = Vec::with_capacity(m);
    while constraints.len() < m {
        let candidate = if rng.gen_bool(1.0 - noise) {
            let mut triple: Vec<VarId> = index::sample(&mut rng, n, 3)
                .into_iter()
                .map(VarId::from_index)
                .collect();
            triple.sort_by_key(|&v| hidden.position(v));
            Constraint::new(triple[1], triple[0], triple[2])?
        } else {
            let r = rng.gen_range(0..available);
            unrank_constraint(n, r)
        };
        if chosen.insert(candidate) {
            constraints.push(candidate);
        }
    }
    Ok((Instance::new(n, constraints)?, hidden))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solve::satisfied_count;

    #[test]
    fn complete_sizes() {
        let three = gen_complete(3).unwrap();
        assert_eq!(
            three.constraints(),
            &[
                Constraint::from_ids(1, 2, 3).unwrap(),
                Constraint::from_ids(2, 1, 3).unwrap(),
                Constraint::from_ids(3, 1, 2).unwrap(),
            ]
        );
        assert_eq!(gen_complete(4).unwrap().m(), 12);
        assert_eq!(gen_complete(7).unwrap().m(), 105);
        for n in 3..12 {
            assert_eq!(gen_complete(n).unwrap().m(), n * (n - 1) * (n - 2) / 2);
        }
        assert_eq!(gen_complete(2), Err(Error::TooSmall { n: 2, min: 3 }));
    }

    #[test]
    fn unrank_is_a_bijection() {
        for n in 3..9 {
            let total = distinct_constraint_count(n);
            let all: HashSet<_> = (0..total).map(|r| unrank_constraint(n, r)).collect();
            assert_eq!(all.len() as u128, total);
            let complete: HashSet<_> = gen_complete(n)
                .unwrap()
                .constraints()
                .iter()
                .copied()
                .collect();
            assert_eq!(all, complete);
        }
    }

    #[test]
    fn random_is_forced_when_universe_exhausted() {
        for seed in 0..5 {
            assert_eq!(gen_random(3, 3, seed).unwrap(), gen_complete(3).unwrap());
        }
        assert_eq!(
            gen_random(4, 13, 0),
            Err(Error::TooMany {
                requested: 13,
                available: 12
            })
        );
    }

    #[test]
    fn random_is_deterministic() {
        let a = gen_random(10, 50, 1).unwrap();
        let b = gen_random(10, 50, 1).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.m(), 50);
        assert_ne!(a, gen_random(10, 50, 2).unwrap());
    }

    #[test]
    fn planted_without_noise_is_fully_satisfied() {
        for seed in 0..20 {
            let (inst, hidden) = gen_planted(8, 30, 0.0, seed).unwrap();
            assert_eq!(inst.m(), 30);
            assert_eq!(satisfied_count(&inst, &hidden), 30);
        }
        assert!(matches!(
            gen_planted(5, 11, 0.0, 0),
            Err(Error::TooMany { available: 10, .. })
        ));
        assert!(gen_planted(5, 3, 1.5, 0).is_err());
    }

    #[test]
    fn planted_is_deterministic() {
        assert_eq!(
            gen_planted(12, 40, 0.2, 5).unwrap(),
            gen_planted(12, 40, 0.2, 5).unwrap()
        );
        let (inst, _) = gen_planted(6, 60, 1.0, 3).unwrap();
        assert_eq!(inst.m(), 60);
    }
}
