use num_bigint::BigInt;

use super::Assignment4;
use crate::error::{Error, Result};
use crate::instance::{Arrangement, Instance, VarId};
use crate::rational::Rational;

/// Largest number of compatible arrangements we are willing to enumerate.
pub const EXHAUSTIVE_ARRANGEMENT_LIMIT: u128 = 1_000_000;

/// Exact mean satisfied count over every `φ`-compatible arrangement.
///
/// Blocks appear in colour order and only the orderings inside each block
/// vary, so the enumeration has `Π |block|!` members.
pub fn expected_satisfied_exhaustive(inst: &Instance, phi: &Assignment4) -> Result<Rational> {
    assert_eq!(phi.n(), inst.n(), "colouring must cover the instance");
    let mut blocks: [Vec<VarId>; 4] = Default::default();
    for v in inst.vars() {
        blocks[phi.get(v) as usize].push(v);
    }
    let total: u128 = blocks
        .iter()
        .map(|b| (1..=b.len() as u128).product::<u128>())
        .product();
    if total > EXHAUSTIVE_ARRANGEMENT_LIMIT {
        return Err(Error::TooLarge {
            what: "compatible arrangements",
            size: total,
            limit: EXHAUSTIVE_ARRANGEMENT_LIMIT,
        });
    }

    let per_block: Vec<Vec<Vec<VarId>>> = blocks.iter().map(|b| permutations(b)).collect();
    let mut satisfied_total: u64 = 0;
    let mut count: u64 = 0;
    let mut order = Vec::with_capacity(inst.n());
    walk(&per_block, 0, &mut order, &mut |order| {
        let arr = Arrangement::from_order(order).expect("blocks partition the variables");
        satisfied_total += crate::solve::satisfied_count(inst, &arr) as u64;
        count += 1;
    });
    debug_assert_eq!(count as u128, total);
    Ok(Rational::new(
        BigInt::from(satisfied_total),
        BigInt::from(count),
    ))
}

fn walk(
    per_block: &[Vec<Vec<VarId>>],
    block: usize,
    order: &mut Vec<VarId>,
    visit: &mut dyn FnMut(&[VarId]),
) {
    if block == per_block.len() {
        visit(order);
        return;
    }
    for perm in &per_block[block] {
        let len = order.len();
        order.extend_from_slice(perm);
        walk(per_block, block + 1, order, visit);
        order.truncate(len);
    }
}

fn permutations(items: &[VarId]) -> Vec<Vec<VarId>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}
