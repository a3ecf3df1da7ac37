//! Exhaustive search for the smallest modulus admitting a linear representation.
//!
//! Works straight from the definition: find `m`, `a` and an injective
//! `j: {0, .., n-1} -> [0, m)` with `j[f(i)] = a j[i] (mod m)`. Moduli and
//! multipliers are tried in ascending order, and assignments in
//! lexicographic order. Fixing `j[i]` forces `j` along the whole forward
//! orbit of `i`, so each free choice prunes every conflicting branch at once.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::funcgraph::FiniteFunction;
use crate::linrep::LinearRepresentation;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_m: u64,
    /// Cap on the number of values tried for free indices, over the whole search.
    pub max_assignments: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            max_m: 64,
            max_assignments: 10_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found {
        rep: LinearRepresentation,
        nodes: u64,
    },
    NotFound {
        /// Largest modulus whose search space was fully explored, if any.
        searched_through: Option<u64>,
        budget_exhausted: bool,
        nodes: u64,
    },
}

impl SearchOutcome {
    pub fn representation(&self) -> Option<&LinearRepresentation> {
        match self {
            SearchOutcome::Found { rep, .. } => Some(rep),
            SearchOutcome::NotFound { .. } => None,
        }
    }

    pub fn nodes(&self) -> u64 {
        match self {
            SearchOutcome::Found { nodes, .. } | SearchOutcome::NotFound { nodes, .. } => *nodes,
        }
    }
}

struct OutOfBudget;

struct Search<'a> {
    images: &'a [usize],
    m: u64,
    a: u64,
    j: Vec<Option<u64>>,
    used: Vec<bool>,
    nodes: u64,
    max_nodes: u64,
}

impl Search<'_> {
    /// Sets `j[start] = value` and propagates along the orbit. On conflict,
    /// undoes its own writes and returns `None`; otherwise returns the trail.
    fn assign(&mut self, start: usize, value: u64) -> Option<Vec<usize>> {
        let mut trail = Vec::new();
        let mut idx = start;
        let mut val = value;
        loop {
            match self.j[idx] {
                Some(existing) if existing == val => return Some(trail),
                Some(_) => break,
                None if self.used[val as usize] => break,
                None => {
                    self.j[idx] = Some(val);
                    self.used[val as usize] = true;
                    trail.push(idx);
                    idx = self.images[idx];
                    val = ((self.a as u128 * val as u128) % self.m as u128) as u64;
                }
            }
        }
        self.undo(&trail);
        None
    }

    fn undo(&mut self, trail: &[usize]) {
        for &idx in trail {
            if let Some(v) = self.j[idx].take() {
                self.used[v as usize] = false;
            }
        }
    }

    fn dfs(&mut self, from: usize) -> std::result::Result<bool, OutOfBudget> {
        let Some(i) = (from..self.j.len()).find(|&i| self.j[i].is_none()) else {
            return Ok(true);
        };
        for value in 0..self.m {
            if self.used[value as usize] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                return Err(OutOfBudget);
            }
            if let Some(trail) = self.assign(i, value) {
                if self.dfs(i + 1)? {
                    return Ok(true);
                }
                self.undo(&trail);
            }
        }
        Ok(false)
    }
}

/// Finds the representation with smallest `m`, then smallest `a`, then
/// lexicographically smallest `j`.
pub fn search_minimal(f: &FiniteFunction, budget: SearchBudget) -> Result<SearchOutcome> {
    let n = f.n();
    if n == 0 {
        return Err(Error::Degenerate("minimal search needs n >= 1".into()));
    }
    if budget.max_m < 1 {
        return Err(Error::InvalidArgument("max_m must be at least 1".into()));
    }
    let mut nodes = 0u64;
    let mut searched_through = None;
    for m in (n as u64)..=budget.max_m {
        for a in 0..m {
            let mut search = Search {
                images: f.images(),
                m,
                a,
                j: vec![None; n],
                used: vec![false; m as usize],
                nodes,
                max_nodes: budget.max_assignments,
            };
            let result = search.dfs(0);
            nodes = search.nodes;
            match result {
                Ok(true) => {
                    let j = search
                        .j
                        .iter()
                        .map(|v| BigInt::from(v.expect("complete assignment")))
                        .collect();
                    let rep = LinearRepresentation::user_supplied(BigInt::from(m), BigInt::from(a), j);
                    return Ok(SearchOutcome::Found { rep, nodes });
                }
                Ok(false) => {}
                Err(OutOfBudget) => {
                    return Ok(SearchOutcome::NotFound {
                        searched_through,
                        budget_exhausted: true,
                        nodes,
                    });
                }
            }
        }
        searched_through = Some(m);
    }
    Ok(SearchOutcome::NotFound {
        searched_through: Some(budget.max_m),
        budget_exhausted: false,
        nodes,
    })
}
