//! Certificate-read branching: evaluates a verifier on one view against
//! every certificate assignment within bounds, by enumerating the reachable
//! answer paths of its certificate reads instead of the raw product space.
//!
//! The verifier runs against an oracle. Each *new* length read of a ball
//! node opens a branch over the lengths that remain realizable (at least
//! one more than the largest bit index already answered true); each new bit
//! read inside the current length (or inside the node's bound, when no
//! length was read yet) opens a branch over {0, 1}. Out-of-range bit reads
//! are forced to false and are not branch points. Repeated reads replay the
//! recorded answer, so a deterministic verifier follows the same path.
//!
//! Every leaf is realized by a concrete certificate assignment, and every
//! concrete assignment follows exactly one path, so "all leaves accept" is
//! equivalent to "all assignments within bounds accept" — the leaf count is
//! just much smaller for verifiers that read little (a length-only reader
//! branches linearly in its bound instead of exponentially).

use std::cell::RefCell;
use std::collections::HashMap;

use crate::engine::{run_with_certs, CertOracle, CertSource, EngineError, Verdict, Verifier};
use crate::view::View;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Query {
    /// Certificate length of a source node.
    Len(usize),
    /// Certificate bit (source node, bit index).
    Bit(usize, u64),
}

#[derive(Debug, Clone, Copy)]
struct Entry {
    query: Query,
    answer: u64,
}

/// DFS over the answer paths of one verifier on one view. Yields one
/// verdict per leaf.
pub struct BranchLeaves<'a> {
    verifier: &'a Verifier,
    view: &'a View,
    /// Per-source-node certificate length bounds.
    bounds: &'a [u64],
    n: Option<u64>,
    stack: Vec<Entry>,
    exhausted: bool,
    started: bool,
}

struct RunOracle<'s> {
    bounds: &'s [u64],
    log: RefCell<Vec<Entry>>,
    map: RefCell<HashMap<Query, u64>>,
}

impl RunOracle<'_> {
    /// Smallest realizable length for `src` given the bits answered true so
    /// far.
    fn min_len(&self, src: usize) -> u64 {
        self.log
            .borrow()
            .iter()
            .filter_map(|e| match e.query {
                Query::Bit(s, j) if s == src && e.answer == 1 => Some(j + 1),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    fn fixed_len(&self, src: usize) -> Option<u64> {
        self.map.borrow().get(&Query::Len(src)).copied()
    }

    fn record(&self, query: Query, answer: u64) {
        self.log.borrow_mut().push(Entry { query, answer });
        self.map.borrow_mut().insert(query, answer);
    }
}

impl CertOracle for RunOracle<'_> {
    fn cert_len(&self, src: usize) -> u64 {
        let q = Query::Len(src);
        if let Some(&a) = self.map.borrow().get(&q) {
            return a;
        }
        let a = self.min_len(src);
        self.record(q, a);
        a
    }

    fn cert_bit(&self, src: usize, bit: u64) -> bool {
        let q = Query::Bit(src, bit);
        if let Some(&a) = self.map.borrow().get(&q) {
            return a == 1;
        }
        // Forced-false reads are not recorded: no certificate within the
        // constraints has that bit.
        let in_range = match self.fixed_len(src) {
            Some(len) => bit < len,
            None => bit < self.bounds[src],
        };
        if !in_range {
            return false;
        }
        self.record(q, 0);
        false
    }
}

impl<'a> BranchLeaves<'a> {
    pub fn new(verifier: &'a Verifier, view: &'a View, bounds: &'a [u64], n: Option<u64>) -> Self {
        BranchLeaves {
            verifier,
            view,
            bounds,
            n,
            stack: Vec::new(),
            exhausted: false,
            started: false,
        }
    }

    /// Evaluates the next leaf; `None` when the tree is exhausted.
    pub fn next_leaf(&mut self) -> Result<Option<Verdict>, EngineError> {
        if self.exhausted {
            return Ok(None);
        }
        if self.started && !self.advance() {
            self.exhausted = true;
            return Ok(None);
        }
        self.started = true;
        let oracle = RunOracle {
            bounds: self.bounds,
            log: RefCell::new(Vec::with_capacity(self.stack.len() + 4)),
            map: RefCell::new(HashMap::with_capacity(self.stack.len() + 4)),
        };
        // Replay the chosen prefix.
        for e in &self.stack {
            oracle.record(e.query, e.answer);
        }
        let (verdict, _steps) =
            run_with_certs(self.verifier, self.view, CertSource::Oracle(&oracle), self.n)?;
        self.stack = oracle.log.into_inner();
        Ok(Some(verdict))
    }

    /// Backtracks to the deepest incrementable answer.
    fn advance(&mut self) -> bool {
        while let Some(entry) = self.stack.pop() {
            if let Some(next) = self.increment(entry) {
                self.stack.push(next);
                return true;
            }
        }
        false
    }

    /// Next answer for `entry` given the remaining prefix, if any.
    fn increment(&self, entry: Entry) -> Option<Entry> {
        match entry.query {
            Query::Len(src) => {
                if entry.answer < self.bounds[src] {
                    Some(Entry {
                        query: entry.query,
                        answer: entry.answer + 1,
                    })
                } else {
                    None
                }
            }
            Query::Bit(src, bit) => {
                if entry.answer == 1 {
                    return None;
                }
                // Branchable to 1 under the same condition it was recorded
                // under: inside the fixed length if one precedes it in the
                // prefix, inside the bound otherwise.
                let fixed = self.stack.iter().find_map(|e| match e.query {
                    Query::Len(s) if s == src => Some(e.answer),
                    _ => None,
                });
                let in_range = match fixed {
                    Some(len) => bit < len,
                    None => bit < self.bounds[src],
                };
                in_range.then_some(Entry {
                    query: entry.query,
                    answer: 1,
                })
            }
        }
    }
}
