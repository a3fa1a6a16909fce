use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::instance::{Instance, VarId};

/// Occurrence statistics driving the closed-form second moment.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ProfileCounts {
    /// `b(u)`: constraints with middle `u`, indexed by `u - 1`.
    pub b: Vec<u64>,
    /// `e(u)`: outer occurrences of `u`.
    pub e: Vec<u64>,
    /// `c^u_v`: constraints `(u,{v,·})`, keyed `(u, v)`.
    pub c_mid: BTreeMap<(VarId, VarId), u64>,
    /// `c_uv`: constraints `(·,{u,v})`, keyed with `u < v`.
    pub c_out: BTreeMap<(VarId, VarId), u64>,
    /// Constraints per 3-set.
    pub per_set: BTreeMap<[VarId; 3], u64>,
}

pub fn profile_counts(inst: &Instance) -> ProfileCounts {
    let mut p = ProfileCounts {
        b: vec![0; inst.n()],
        e: vec![0; inst.n()],
        ..Default::default()
    };
    for c in inst.constraints() {
        p.b[c.middle.index()] += 1;
        p.e[c.outer_lo.index()] += 1;
        p.e[c.outer_hi.index()] += 1;
        *p.c_mid.entry((c.middle, c.outer_lo)).or_default() += 1;
        *p.c_mid.entry((c.middle, c.outer_hi)).or_default() += 1;
        *p.c_out.entry((c.outer_lo, c.outer_hi)).or_default() += 1;
        *p.per_set.entry(c.var_set()).or_default() += 1;
    }
    p
}

impl ProfileCounts {
    pub fn b(&self, u: VarId) -> u64 {
        self.b[u.index()]
    }

    pub fn e(&self, u: VarId) -> u64 {
        self.e[u.index()]
    }

    pub fn c_mid(&self, u: VarId, v: VarId) -> u64 {
        self.c_mid.get(&(u, v)).copied().unwrap_or(0)
    }

    pub fn c_out(&self, u: VarId, v: VarId) -> u64 {
        self.c_out.get(&(u.min(v), u.max(v))).copied().unwrap_or(0)
    }

    /// Unordered pairs `u < v` with any nonzero pair statistic.
    pub fn active_pairs(&self) -> BTreeSet<(VarId, VarId)> {
        self.c_mid
            .keys()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .chain(self.c_out.keys().copied())
            .collect()
    }

    pub fn s1(&self, u: VarId) -> u64 {
        let b = self.b(u);
        b * b.saturating_sub(1)
    }

    pub fn s2(&self, u: VarId) -> u64 {
        let e = self.e(u);
        e * e.saturating_sub(1)
    }

    pub fn s3(&self, u: VarId) -> u64 {
        2 * self.b(u) * self.e(u)
    }

    pub fn s4(&self, u: VarId, v: VarId) -> u64 {
        let (x, y) = (self.c_mid(u, v), self.c_mid(v, u));
        x * x.saturating_sub(1) + y * y.saturating_sub(1)
    }

    pub fn s5(&self, u: VarId, v: VarId) -> u64 {
        let c = self.c_out(u, v);
        c * c.saturating_sub(1)
    }

    pub fn s6(&self, u: VarId, v: VarId) -> u64 {
        2 * (self.c_mid(u, v) + self.c_mid(v, u)) * self.c_out(u, v)
    }

    pub fn s7(&self, u: VarId, v: VarId) -> u64 {
        2 * self.c_mid(u, v) * self.c_mid(v, u)
    }

    /// Ordered pairs of distinct constraints on the 3-set.
    pub fn s8(&self, set: &[VarId; 3]) -> u64 {
        let k = self.per_set.get(set).copied().unwrap_or(0);
        k * k.saturating_sub(1)
    }
}
