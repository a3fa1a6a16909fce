//! Betweenness instances, arrangements and the `p btw` text format.
//!
//! ```text
//! c optional comments
//! p btw <n> <m>
//! b <middle> <outer> <outer>
//! ```
//!
//! Variables are 1-indexed everywhere outside this module's internals.
//! Constraints are kept canonical (`outer_lo < outer_hi`) and sorted by
//! `(middle, outer_lo, outer_hi)`, which is also the serialization order.

use std::fmt;
use std::io::{BufRead, Write};

use serde::Serialize;

use crate::error::{Error, Result};

/// A 1-based variable identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct VarId(u32);

impl VarId {
    /// Panics on 0; use [`VarId::try_new`] for untrusted input.
    pub fn new(id: u32) -> Self {
        assert!(id >= 1, "variable ids are 1-based");
        VarId(id)
    }

    pub fn try_new(id: u32) -> Option<Self> {
        (id >= 1).then_some(VarId(id))
    }

    /// From a 0-based index.
    pub fn from_index(index: usize) -> Self {
        VarId(index as u32 + 1)
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// 0-based index, for addressing dense per-variable tables.
    pub fn index(self) -> usize {
        self.0 as usize - 1
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// "`middle` lies strictly between `outer_lo` and `outer_hi`".
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Constraint {
    pub middle: VarId,
    pub outer_lo: VarId,
    pub outer_hi: VarId,
}

impl Constraint {
    /// Canonicalizes the unordered outer pair.
    pub fn new(middle: VarId, a: VarId, b: VarId) -> Result<Self> {
        if middle == a || middle == b || a == b {
            return Err(Error::DuplicateVariable(middle.0, a.0, b.0));
        }
        Ok(Constraint {
            middle,
            outer_lo: a.min(b),
            outer_hi: a.max(b),
        })
    }

    /// Shorthand over raw ids, used heavily in tests and examples.
    pub fn from_ids(middle: u32, a: u32, b: u32) -> Result<Self> {
        let var = |id| VarId::try_new(id).ok_or(Error::Range { var: id, n: 0 });
        Constraint::new(var(middle)?, var(a)?, var(b)?)
    }

    /// `[middle, outer_lo, outer_hi]`.
    pub fn vars(&self) -> [VarId; 3] {
        [self.middle, self.outer_lo, self.outer_hi]
    }

    /// The underlying 3-set, sorted ascending.
    pub fn var_set(&self) -> [VarId; 3] {
        let mut s = self.vars();
        s.sort_unstable();
        s
    }

    pub fn involves(&self, v: VarId) -> bool {
        self.middle == v || self.outer_lo == v || self.outer_hi == v
    }

    /// Satisfaction test against 1-based positions indexed by 0-based variable.
    pub fn satisfied_by(&self, positions: &[u32]) -> bool {
        let p = positions[self.middle.index()];
        let a = positions[self.outer_lo.index()];
        let b = positions[self.outer_hi.index()];
        (a < p && p < b) || (b < p && p < a)
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{{{},{}}})",
            self.middle, self.outer_lo, self.outer_hi
        )
    }
}

/// A variable count and a duplicate-free, canonically sorted constraint set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Instance {
    n: usize,
    constraints: Vec<Constraint>,
}

impl Instance {
    /// Rejects out-of-range variables and repeated constraints.
    pub fn new(n: usize, constraints: Vec<Constraint>) -> Result<Self> {
        Self::build(n, constraints, false)
    }

    /// Like [`Instance::new`] but silently merges repeated constraints.
    pub fn new_dedup(n: usize, constraints: Vec<Constraint>) -> Result<Self> {
        Self::build(n, constraints, true)
    }

    pub fn empty(n: usize) -> Self {
        Instance {
            n,
            constraints: Vec::new(),
        }
    }

    fn build(n: usize, mut constraints: Vec<Constraint>, dedupe: bool) -> Result<Self> {
        for c in &constraints {
            for v in c.vars() {
                if v.index() >= n {
                    return Err(Error::Range { var: v.get(), n });
                }
            }
        }
        constraints.sort_unstable();
        let before = constraints.len();
        if dedupe {
            constraints.dedup();
        } else if let Some(w) = constraints.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateConstraint(w[0].to_string()));
        }
        debug_assert!(dedupe || constraints.len() == before);
        Ok(Instance { n, constraints })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.constraints.len()
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> {
        (0..self.n).map(VarId::from_index)
    }

    /// Writes the canonical text form.
    pub fn write_to<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "p btw {} {}", self.n, self.m())?;
        for c in &self.constraints {
            writeln!(out, "b {} {} {}", c.middle, c.outer_lo, c.outer_hi)?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("format is ASCII")
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    /// Merge repeated constraints instead of rejecting them.
    pub dedupe: bool,
}

pub fn parse_instance<R: BufRead>(reader: R, opts: ParseOptions) -> Result<Instance> {
    let mut header: Option<(usize, usize)> = None;
    let mut constraints = Vec::new();

    for (lineno, line) in reader.lines().enumerate() {
        let lineno = lineno + 1;
        let line = line.map_err(|e| Error::Syntax {
            line: lineno,
            message: e.to_string(),
        })?;
        let syntax = |message: &str| Error::Syntax {
            line: lineno,
            message: message.to_string(),
        };
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            None => continue,
            Some("c") => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(syntax("second header line"));
                }
                if tokens.next() != Some("btw") {
                    return Err(syntax("expected `p btw <n> <m>`"));
                }
                let n = parse_count(tokens.next(), lineno)?;
                let m = parse_count(tokens.next(), lineno)?;
                if tokens.next().is_some() {
                    return Err(syntax("trailing tokens after header"));
                }
                header = Some((n, m));
            }
            Some("b") => {
                let Some((n, _)) = header else {
                    return Err(syntax("constraint before header"));
                };
                let mut ids = [0u32; 3];
                for id in ids.iter_mut() {
                    let tok = tokens
                        .next()
                        .ok_or_else(|| syntax("expected `b <middle> <outer> <outer>`"))?;
                    *id = tok
                        .parse()
                        .map_err(|_| syntax(&format!("bad variable `{tok}`")))?;
                    if *id == 0 || *id as usize > n {
                        return Err(Error::Range { var: *id, n });
                    }
                }
                if tokens.next().is_some() {
                    return Err(syntax("trailing tokens after constraint"));
                }
                constraints.push(Constraint::new(
                    VarId(ids[0]),
                    VarId(ids[1]),
                    VarId(ids[2]),
                )?);
            }
            Some(other) => return Err(syntax(&format!("unknown line type `{other}`"))),
        }
    }

    let (n, m) = header.ok_or(Error::Syntax {
        line: 0,
        message: "missing `p btw` header".into(),
    })?;
    if constraints.len() != m {
        return Err(Error::CountMismatch {
            declared: m,
            read: constraints.len(),
        });
    }
    if opts.dedupe {
        Instance::new_dedup(n, constraints)
    } else {
        Instance::new(n, constraints)
    }
}

fn parse_count(tok: Option<&str>, line: usize) -> Result<usize> {
    tok.and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Syntax {
            line,
            message: "expected `p btw <n> <m>`".into(),
        })
}

/// Parses from a string with default options.
pub fn parse_str(text: &str) -> Result<Instance> {
    parse_instance(text.as_bytes(), ParseOptions::default())
}

/// A bijection from variables to positions `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Arrangement {
    /// `positions[i]` is the position of variable `i + 1`.
    positions: Vec<u32>,
}

impl Arrangement {
    pub fn from_positions(positions: Vec<u32>) -> Result<Self> {
        let n = positions.len();
        let mut seen = vec![false; n];
        for &p in &positions {
            if p == 0 || p as usize > n || std::mem::replace(&mut seen[p as usize - 1], true) {
                return Err(Error::NotBijection(n));
            }
        }
        Ok(Arrangement { positions })
    }

    /// `order[k]` is the variable placed at position `k + 1`.
    pub fn from_order(order: &[VarId]) -> Result<Self> {
        let n = order.len();
        let mut positions = vec![0u32; n];
        for (k, v) in order.iter().enumerate() {
            if v.index() >= n || positions[v.index()] != 0 {
                return Err(Error::NotBijection(n));
            }
            positions[v.index()] = k as u32 + 1;
        }
        Ok(Arrangement { positions })
    }

    pub fn identity(n: usize) -> Self {
        Arrangement {
            positions: (1..=n as u32).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.positions.len()
    }

    pub fn position(&self, v: VarId) -> u32 {
        self.positions[v.index()]
    }

    pub fn positions(&self) -> &[u32] {
        &self.positions
    }

    pub fn order(&self) -> Vec<VarId> {
        let mut order = vec![VarId(1); self.positions.len()];
        for (i, &p) in self.positions.iter().enumerate() {
            order[p as usize - 1] = VarId::from_index(i);
        }
        order
    }
}
