//! Brute-force enumeration of small labelled (multi)digraphs.
//!
//! Every `n x n` matrix with zero diagonal and off-diagonal entries in
//! `0..=k` is visited exactly once, in row-major odometer order (the last
//! off-diagonal entry turns fastest). An entry `j` stands for `j` parallel
//! arcs. The odometer is split on its leading digits (by default the first
//! matrix row) so that partitions can be counted independently and merged.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exec::Execution;

/// Default number of candidate matrices an enumeration may visit.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// Largest order the enumerators support.
pub const MAX_ORDER: usize = 16;

/// One in this many acyclic digraphs is checked for having a source.
const SOURCE_SAMPLE: u64 = 97;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("enumeration needs {required} candidates but the budget is {budget}")]
    BudgetExceeded { required: String, budget: u128 },
    #[error("arc multiplicity k must be at least 1")]
    ZeroMultiplicity,
    #[error("order {0} exceeds the enumerator limit of {MAX_ORDER}")]
    OrderTooLarge(usize),
    #[error("invalid adjacency matrix: {0}")]
    InvalidMatrix(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

/// Labelled digraph with at most `k` parallel arcs per ordered pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiDigraph {
    n: usize,
    k: u32,
    adj: Vec<u32>,
}

impl MultiDigraph {
    /// The arcless digraph.
    pub fn empty(n: usize, k: u32) -> Self {
        MultiDigraph {
            n,
            k,
            adj: vec![0; n * n],
        }
    }

    pub fn from_rows(rows: &[Vec<u32>], k: u32) -> Result<Self, OracleError> {
        let n = rows.len();
        let mut g = MultiDigraph::empty(n, k);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(OracleError::InvalidMatrix(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                g.set(i, j, v)?;
            }
        }
        Ok(g)
    }

    /// The linear order `0 -> 1 -> ... -> n-1` with every forward pair joined.
    pub fn transitive_tournament(n: usize) -> Self {
        let mut g = MultiDigraph::empty(n, 1);
        for i in 0..n {
            for j in i + 1..n {
                g.adj[i * n + j] = 1;
            }
        }
        g
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn multiplicity(&self) -> u32 {
        self.k
    }

    pub fn get(&self, from: usize, to: usize) -> u32 {
        self.adj[from * self.n + to]
    }

    pub fn set(&mut self, from: usize, to: usize, arcs: u32) -> Result<(), OracleError> {
        if from >= self.n || to >= self.n {
            return Err(OracleError::InvalidMatrix(format!(
                "({from}, {to}) is outside order {}",
                self.n
            )));
        }
        if from == to && arcs != 0 {
            return Err(OracleError::InvalidMatrix(format!("loop at vertex {from}")));
        }
        if arcs > self.k {
            return Err(OracleError::InvalidMatrix(format!(
                "{arcs} arcs exceed multiplicity {}",
                self.k
            )));
        }
        self.adj[from * self.n + to] = arcs;
        Ok(())
    }

    /// Total arcs, parallel arcs counted individually.
    pub fn arc_count(&self) -> u64 {
        self.adj.iter().map(|&a| u64::from(a)).sum()
    }

    /// Number of distinct out-neighbours.
    pub fn out_degree(&self, v: usize) -> usize {
        self.adj[v * self.n..(v + 1) * self.n]
            .iter()
            .filter(|&&a| a > 0)
            .count()
    }

    /// Number of distinct in-neighbours.
    pub fn in_degree(&self, v: usize) -> usize {
        (0..self.n).filter(|&u| self.get(u, v) > 0).count()
    }

    pub fn sources(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.in_degree(v) == 0).collect()
    }

    /// Kahn's algorithm: repeatedly delete sources.
    pub fn is_acyclic(&self) -> bool {
        let n = self.n;
        let mut indeg = [0u32; MAX_ORDER];
        let mut indeg_vec;
        let indeg: &mut [u32] = if n <= MAX_ORDER {
            &mut indeg[..n]
        } else {
            indeg_vec = vec![0u32; n];
            &mut indeg_vec
        };
        for row in self.adj.chunks(n.max(1)) {
            for (d, &a) in indeg.iter_mut().zip(row) {
                if a > 0 {
                    *d += 1;
                }
            }
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut removed = 0;
        while let Some(u) = stack.pop() {
            removed += 1;
            for (v, &a) in self.adj[u * n..(u + 1) * n].iter().enumerate() {
                if a > 0 {
                    indeg[v] -= 1;
                    if indeg[v] == 0 {
                        stack.push(v);
                    }
                }
            }
        }
        removed == n
    }

    /// Depth-first search for a back arc.
    pub fn is_acyclic_dfs(&self) -> bool {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Active,
            Done,
        }
        let n = self.n;
        let mut mark = vec![Mark::New; n];
        for root in 0..n {
            if mark[root] != Mark::New {
                continue;
            }
            // (vertex, next neighbour to try)
            let mut stack = vec![(root, 0usize)];
            mark[root] = Mark::Active;
            while let Some(&mut (u, ref mut next)) = stack.last_mut() {
                if let Some(v) = (*next..n).find(|&v| self.adj[u * n + v] > 0) {
                    *next = v + 1;
                    match mark[v] {
                        Mark::Active => return false,
                        Mark::New => {
                            mark[v] = Mark::Active;
                            stack.push((v, 0));
                        }
                        Mark::Done => {}
                    }
                } else {
                    mark[u] = Mark::Done;
                    stack.pop();
                }
            }
        }
        true
    }
}

/// Counts of acyclic matrices by total arc number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcTally {
    pub n: usize,
    pub k: u32,
    pub by_arcs: Vec<u64>,
}

impl ArcTally {
    pub fn total(&self) -> u64 {
        self.by_arcs.iter().sum()
    }
}

/// Enumeration settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    /// Maximum number of candidate matrices (or matrix-coloring pairs).
    pub budget: u128,
    pub exec: Execution,
    /// Leading odometer digits to split on; `None` splits on the first row.
    pub split_digits: Option<usize>,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            budget: DEFAULT_BUDGET,
            exec: Execution::default(),
            split_digits: None,
        }
    }
}

impl Oracle {
    pub fn with_budget(budget: u128) -> Self {
        Oracle {
            budget,
            ..Oracle::default()
        }
    }

    pub fn with_exec(self, exec: Execution) -> Self {
        Oracle { exec, ..self }
    }

    fn check(&self, n: usize, k: u32, extra_factor: u128) -> Result<Odometer, OracleError> {
        if k == 0 {
            return Err(OracleError::ZeroMultiplicity);
        }
        if n > MAX_ORDER {
            return Err(OracleError::OrderTooLarge(n));
        }
        let digits = n * n.saturating_sub(1);
        let required = u32::try_from(digits)
            .ok()
            .and_then(|d| (u128::from(k) + 1).checked_pow(d))
            .and_then(|m| m.checked_mul(extra_factor));
        match required {
            Some(r) if r <= self.budget => {}
            Some(r) => {
                return Err(OracleError::BudgetExceeded {
                    required: r.to_string(),
                    budget: self.budget,
                })
            }
            None => {
                return Err(OracleError::BudgetExceeded {
                    required: format!("{}^{digits} * {extra_factor}", u64::from(k) + 1),
                    budget: self.budget,
                })
            }
        }
        let split = self.split_digits.unwrap_or(n.saturating_sub(1)).min(digits);
        Ok(Odometer::new(n, k, split))
    }

    /// Acyclic `k`-multidigraphs on `n` labelled vertices, tallied by arc count.
    pub fn brute_count(&self, n: usize, k: u32) -> Result<ArcTally, OracleError> {
        let odo = self.check(n, k, 1)?;
        let width = k as usize * n * n.saturating_sub(1) + 1;
        let (by_arcs, violations) = self.exec.map_reduce(
            odo.partitions(),
            |part| {
                let mut tally = vec![0u64; width];
                let mut seen = 0u64;
                let mut violations = 0u64;
                odo.visit(part, |g| {
                    if g.is_acyclic() {
                        tally[g.arc_count() as usize] += 1;
                        seen += 1;
                        if seen.is_multiple_of(SOURCE_SAMPLE) && g.sources().is_empty() {
                            violations += 1;
                        }
                    }
                });
                (tally, violations)
            },
            || (vec![0u64; width], 0),
            |(mut a, va), (b, vb)| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                (a, va + vb)
            },
        );
        if violations > 0 {
            return Err(OracleError::InvariantViolation(format!(
                "{violations} sampled acyclic digraphs without a source"
            )));
        }
        let max_arcs = k as usize * n * n.saturating_sub(1) / 2;
        if by_arcs[max_arcs + 1..].iter().any(|&c| c > 0) {
            return Err(OracleError::InvariantViolation(format!(
                "acyclic digraph with more than {max_arcs} arcs"
            )));
        }
        let mut by_arcs = by_arcs;
        by_arcs.truncate(max_arcs + 1);
        Ok(ArcTally { n, k, by_arcs })
    }

    /// Sum over simple acyclic digraphs of `prod_v weight^outdeg(v)`.
    pub fn brute_count_weighted(&self, n: usize, weight: u64) -> Result<BigUint, OracleError> {
        if weight == 0 {
            return Err(OracleError::ZeroMultiplicity);
        }
        let odo = self.check(n, 1, 1)?;
        let powers: Vec<BigUint> = (0..n.max(1) as u32)
            .map(|d| BigUint::from(weight).pow(d))
            .collect();
        Ok(self.exec.map_reduce(
            odo.partitions(),
            |part| {
                let mut sum = BigUint::zero();
                odo.visit(part, |g| {
                    if g.is_acyclic() {
                        sum += (0..n).fold(BigUint::one(), |acc, v| acc * &powers[g.out_degree(v)]);
                    }
                });
                sum
            },
            BigUint::zero,
            |a, b| a + b,
        ))
    }

    /// (Coloring, simple digraph) pairs with an acyclic digraph in which every
    /// red vertex is a source.
    pub fn brute_count_bicolored(&self, n: usize) -> Result<BigUint, OracleError> {
        let colorings = 1u128
            .checked_shl(n as u32)
            .ok_or(OracleError::OrderTooLarge(n))?;
        let odo = self.check(n, 1, colorings)?;
        let total = self.exec.map_reduce(
            odo.partitions(),
            |part| {
                let mut count = 0u64;
                odo.visit(part, |g| {
                    let acyclic = g.is_acyclic();
                    let in_degrees: Vec<usize> = (0..n).map(|v| g.in_degree(v)).collect();
                    for red in 0..1u32 << n {
                        let reds_are_sources =
                            (0..n).all(|v| red >> v & 1 == 0 || in_degrees[v] == 0);
                        if acyclic && reds_are_sources {
                            count += 1;
                        }
                    }
                });
                count
            },
            || 0,
            |a, b| a + b,
        );
        Ok(BigUint::from(total))
    }

    /// Runs both acyclicity tests on every matrix; returns how many were compared.
    pub fn cross_check_acyclicity(&self, n: usize, k: u32) -> Result<u64, OracleError> {
        let odo = self.check(n, k, 1)?;
        let (checked, disagreement) = self.exec.map_reduce(
            odo.partitions(),
            |part| {
                let mut checked = 0u64;
                let mut bad: Option<MultiDigraph> = None;
                odo.visit(part, |g| {
                    checked += 1;
                    if bad.is_none() && g.is_acyclic() != g.is_acyclic_dfs() {
                        bad = Some(g.clone());
                    }
                });
                (checked, bad)
            },
            || (0, None),
            |(ca, ba), (cb, bb)| (ca + cb, ba.or(bb)),
        );
        match disagreement {
            Some(g) => Err(OracleError::InvariantViolation(format!(
                "acyclicity tests disagree on {:?}",
                g.adj
            ))),
            None => Ok(checked),
        }
    }
}

/// Row-major mixed-radix counter over the off-diagonal entries.
#[derive(Debug, Clone)]
struct Odometer {
    n: usize,
    k: u32,
    positions: Vec<usize>,
    split: usize,
}

impl Odometer {
    fn new(n: usize, k: u32, split: usize) -> Self {
        let positions = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| i * n + j))
            .collect();
        Odometer {
            n,
            k,
            positions,
            split,
        }
    }

    fn partitions(&self) -> usize {
        (self.k as usize + 1).pow(self.split as u32)
    }

    /// Calls `f` on every matrix whose leading `split` digits spell `part`.
    fn visit(&self, part: usize, mut f: impl FnMut(&MultiDigraph)) {
        let radix = self.k as usize + 1;
        let mut g = MultiDigraph::empty(self.n, self.k);
        let mut rest = part;
        for i in (0..self.split).rev() {
            g.adj[self.positions[i]] = (rest % radix) as u32;
            rest /= radix;
        }
        loop {
            f(&g);
            let mut i = self.positions.len();
            loop {
                if i == self.split {
                    return;
                }
                i -= 1;
                let cell = &mut g.adj[self.positions[i]];
                if *cell < self.k {
                    *cell += 1;
                    break;
                }
                *cell = 0;
            }
        }
    }
}

pub fn brute_count(n: usize, k: u32) -> Result<ArcTally, OracleError> {
    Oracle::default().brute_count(n, k)
}

pub fn brute_count_weighted(n: usize, weight: u64) -> Result<BigUint, OracleError> {
    Oracle::default().brute_count_weighted(n, weight)
}

pub fn brute_count_bicolored(n: usize) -> Result<BigUint, OracleError> {
    Oracle::default().brute_count_bicolored(n)
}
