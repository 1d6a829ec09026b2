//! Labeled graph configurations and identifier assignments.
//!
//! A [`Configuration`] is a simple undirected graph with one [`Label`] per
//! node. Labels are tuples of bounded nonnegative integers plus an optional
//! binary word (machine encodings and input words live in the word part).
//! Identifiers are layered on top as a separate [`IdAssignment`], since the
//! decision classes quantify over them.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::{bit_len, BitString};

/// Words and certificates are length-prefixed with 16 bits in the canonical
/// view encoding, so they must stay below this many bits.
pub const MAX_WORD_BITS: usize = u16::MAX as usize;

/// Maximum number of integer fields in a label (8-bit arity prefix).
pub const MAX_LABEL_ARITY: usize = u8::MAX as usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("label list must be nonempty")]
    EmptyLabels,
    #[error("bad edge ({0}, {1}): {2}")]
    BadEdge(usize, usize, &'static str),
    #[error("node {0} out of range (n = {1})")]
    NodeOutOfRange(usize, usize),
    #[error("label on node {node} too wide: {detail}")]
    LabelTooWide { node: usize, detail: String },
    #[error("duplicate id {id}{}", duplicate_scope(*ball_center, *radius))]
    DuplicateId {
        id: u64,
        ball_center: Option<usize>,
        radius: usize,
    },
    #[error("id {id} on node {node} outside [1, {bound}]")]
    IdOutOfRange { node: usize, id: u64, bound: u64 },
    #[error("wrong number of ids: got {got}, graph has {expected} nodes")]
    IdCountMismatch { got: usize, expected: usize },
    #[error("id universe too large: {count} assignments exceed cap {cap}")]
    UniverseTooLarge { count: BigUint, cap: u64 },
}

fn duplicate_scope(ball_center: Option<usize>, radius: usize) -> String {
    match ball_center {
        Some(c) => format!(" within the distance-{radius} ball of node {c}"),
        None => String::new(),
    }
}

/// Per-node input: a tuple of nonnegative integers plus an optional word.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Label {
    pub fields: Vec<u64>,
    pub word: Option<BitString>,
}

impl Label {
    pub fn empty() -> Self {
        Label::default()
    }

    pub fn of(fields: &[u64]) -> Self {
        Label {
            fields: fields.to_vec(),
            word: None,
        }
    }

    pub fn with_word(fields: &[u64], word: BitString) -> Self {
        Label {
            fields: fields.to_vec(),
            word: Some(word),
        }
    }

    /// First integer field, if any. Most languages store their one value
    /// here.
    pub fn field0(&self) -> Option<u64> {
        self.fields.first().copied()
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.fields.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        if let Some(w) = &self.word {
            if !self.fields.is_empty() {
                write!(f, ",")?;
            }
            write!(f, "\"{w}\"")?;
        }
        write!(f, ")")
    }
}

/// Default bound on the bit width of a single integer label field:
/// `64 * (ceil(log2(n + 2)) + 1)`. With 64-bit fields this always holds; the
/// check matters when a caller installs a tighter bound.
pub fn default_label_bit_bound(n: usize) -> u64 {
    let m = (n as u64) + 2;
    let ceil_log2 = bit_len(m - 1) as u64; // ceil(log2(m)) for m >= 2
    64 * (ceil_log2 + 1)
}

/// A labeled simple graph: the object the languages are defined over.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Configuration {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    labels: Vec<Label>,
    #[serde(skip)]
    adj: Vec<Vec<usize>>,
}

impl Configuration {
    /// Builds a configuration from an edge list. Endpoints must be in range
    /// and edges must be simple (no loops, no duplicates).
    pub fn build(
        n: usize,
        edges: &[(usize, usize)],
        labels: Vec<Label>,
    ) -> Result<Self, GraphError> {
        if labels.is_empty() {
            return Err(GraphError::EmptyLabels);
        }
        if labels.len() != n {
            return Err(GraphError::NodeOutOfRange(labels.len(), n));
        }
        let mut set = BTreeSet::new();
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::BadEdge(u, v, "self-loop"));
            }
            if u >= n || v >= n {
                return Err(GraphError::BadEdge(u, v, "endpoint out of range"));
            }
            let e = (u.min(v), u.max(v));
            if !set.insert(e) {
                return Err(GraphError::BadEdge(u, v, "duplicate edge"));
            }
        }
        let bound = default_label_bit_bound(n);
        for (i, label) in labels.iter().enumerate() {
            if label.fields.len() > MAX_LABEL_ARITY {
                return Err(GraphError::LabelTooWide {
                    node: i,
                    detail: format!("{} integer fields (max {MAX_LABEL_ARITY})", label.fields.len()),
                });
            }
            for &f in &label.fields {
                if u64::from(bit_len(f)) > bound {
                    return Err(GraphError::LabelTooWide {
                        node: i,
                        detail: format!("field {f} needs more than {bound} bits"),
                    });
                }
            }
            if let Some(w) = &label.word {
                if w.len() > MAX_WORD_BITS {
                    return Err(GraphError::LabelTooWide {
                        node: i,
                        detail: format!("word of {} bits (max {MAX_WORD_BITS})", w.len()),
                    });
                }
            }
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &set {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(Configuration {
            n,
            edges: set,
            labels,
            adj,
        })
    }

    /// Path on `labels.len()` nodes, node `i` adjacent to `i + 1`.
    pub fn path(labels: Vec<Label>) -> Result<Self, GraphError> {
        if labels.is_empty() {
            return Err(GraphError::EmptyLabels);
        }
        let n = labels.len();
        let edges: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        Configuration::build(n, &edges, labels)
    }

    /// Path whose node `i` carries the single integer label `values[i]`.
    pub fn labeled_path(values: &[u64]) -> Result<Self, GraphError> {
        Configuration::path(values.iter().map(|&v| Label::of(&[v])).collect())
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn label(&self, v: usize) -> &Label {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Returns a copy with node `v` relabeled.
    pub fn with_label(&self, v: usize, label: Label) -> Result<Self, GraphError> {
        let mut labels = self.labels.clone();
        if v >= self.n {
            return Err(GraphError::NodeOutOfRange(v, self.n));
        }
        labels[v] = label;
        let edges: Vec<_> = self.edges().collect();
        Configuration::build(self.n, &edges, labels)
    }

    /// Nodes of the distance-`t` ball around `v`, paired with distances,
    /// in BFS (distance, then index) order.
    pub fn ball(&self, v: usize, t: usize) -> Result<Vec<(usize, usize)>, GraphError> {
        if v >= self.n {
            return Err(GraphError::NodeOutOfRange(v, self.n));
        }
        let mut dist = vec![usize::MAX; self.n];
        dist[v] = 0;
        let mut queue = std::collections::VecDeque::from([v]);
        let mut out = vec![(v, 0)];
        while let Some(u) = queue.pop_front() {
            if dist[u] == t {
                continue;
            }
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    out.push((w, dist[w]));
                    queue.push_back(w);
                }
            }
        }
        Ok(out)
    }

    /// If the graph is a path, the node sequence from one endpoint to the
    /// other (single node for n = 1). Endpoint with the smaller index comes
    /// first.
    pub fn path_order(&self) -> Option<Vec<usize>> {
        if self.n == 1 {
            return Some(vec![0]);
        }
        let mut endpoints = Vec::new();
        for v in 0..self.n {
            match self.degree(v) {
                1 => endpoints.push(v),
                2 => {}
                _ => return None,
            }
        }
        if endpoints.len() != 2 {
            return None;
        }
        let start = endpoints[0].min(endpoints[1]);
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while order.len() < self.n {
            let next = self.adj[cur].iter().copied().find(|&w| w != prev)?;
            order.push(next);
            prev = cur;
            cur = next;
        }
        // A disconnected 2-regular leftover would have terminated early or
        // revisited; length n with two endpoints means a single path.
        if self.degree(cur) == 1 {
            Some(order)
        } else {
            None
        }
    }

    /// Serializes into the workbench's graph JSON format.
    pub fn to_json(&self) -> serde_json::Value {
        let dto = GraphDto::from(self);
        serde_json::to_value(dto).expect("graph serialization cannot fail")
    }

    /// Loads the graph JSON format.
    pub fn from_json(value: &serde_json::Value) -> Result<Self, String> {
        let dto: GraphDto =
            serde_json::from_value(value.clone()).map_err(|e| format!("bad graph json: {e}"))?;
        dto.try_into()
    }
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Configuration(n={}, labels=", self.n)?;
        f.debug_list().entries(self.labels.iter()).finish()?;
        write!(f, ")")
    }
}

/// Wire format: `{"n": 3, "edges": [[0,1],[1,2]], "labels": [[4],[5],[5]],
/// "words": {"2": "0110"}}`.
#[derive(Serialize, Deserialize)]
struct GraphDto {
    n: usize,
    edges: Vec<[usize; 2]>,
    labels: Vec<Vec<u64>>,
    #[serde(default, skip_serializing_if = "std::collections::BTreeMap::is_empty")]
    words: std::collections::BTreeMap<String, String>,
}

impl From<&Configuration> for GraphDto {
    fn from(cfg: &Configuration) -> Self {
        GraphDto {
            n: cfg.n,
            edges: cfg.edges().map(|(u, v)| [u, v]).collect(),
            labels: cfg.labels.iter().map(|l| l.fields.clone()).collect(),
            words: cfg
                .labels
                .iter()
                .enumerate()
                .filter_map(|(i, l)| l.word.as_ref().map(|w| (i.to_string(), w.to_string())))
                .collect(),
        }
    }
}

impl TryFrom<GraphDto> for Configuration {
    type Error = String;

    fn try_from(dto: GraphDto) -> Result<Self, String> {
        let mut labels: Vec<Label> = dto.labels.into_iter().map(|f| Label { fields: f, word: None }).collect();
        for (key, word) in dto.words {
            let idx: usize = key.parse().map_err(|_| format!("bad word key {key:?}"))?;
            let bits = BitString::parse(&word).ok_or_else(|| format!("bad word {word:?}"))?;
            let label = labels.get_mut(idx).ok_or_else(|| format!("word key {idx} out of range"))?;
            label.word = Some(bits);
        }
        let edges: Vec<(usize, usize)> = dto.edges.iter().map(|e| (e[0], e[1])).collect();
        Configuration::build(dto.n, &edges, labels).map_err(|e| e.to_string())
    }
}

/// Per-node certificate strings, with optional per-node length bounds.
///
/// The assignment is total: nodes without an interesting certificate carry
/// the empty string.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CertificateAssignment {
    certs: Vec<BitString>,
    bounds: Option<Vec<u64>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertError {
    #[error("certificate on node {node} has {len} bits, bound is {bound}")]
    BoundViolated { node: usize, len: usize, bound: u64 },
    #[error("certificate on node {node} has {len} bits (max {MAX_WORD_BITS})")]
    TooLong { node: usize, len: usize },
    #[error("wrong number of certificates: got {got}, expected {expected}")]
    CountMismatch { got: usize, expected: usize },
}

impl CertificateAssignment {
    /// All-empty assignment over `n` nodes.
    pub fn empty(n: usize) -> Self {
        CertificateAssignment {
            certs: vec![BitString::new(); n],
            bounds: None,
        }
    }

    pub fn new(certs: Vec<BitString>) -> Result<Self, CertError> {
        Self::with_bounds(certs, None)
    }

    pub fn with_bounds(
        certs: Vec<BitString>,
        bounds: Option<Vec<u64>>,
    ) -> Result<Self, CertError> {
        if let Some(b) = &bounds {
            if b.len() != certs.len() {
                return Err(CertError::CountMismatch {
                    got: b.len(),
                    expected: certs.len(),
                });
            }
        }
        for (node, c) in certs.iter().enumerate() {
            if c.len() > MAX_WORD_BITS {
                return Err(CertError::TooLong { node, len: c.len() });
            }
            if let Some(b) = &bounds {
                if c.len() as u64 > b[node] {
                    return Err(CertError::BoundViolated {
                        node,
                        len: c.len(),
                        bound: b[node],
                    });
                }
            }
        }
        Ok(CertificateAssignment { certs, bounds })
    }

    pub fn node_count(&self) -> usize {
        self.certs.len()
    }

    pub fn cert(&self, v: usize) -> &BitString {
        &self.certs[v]
    }

    pub fn certs(&self) -> &[BitString] {
        &self.certs
    }

    pub fn bounds(&self) -> Option<&[u64]> {
        self.bounds.as_deref()
    }

    /// Replaces node `v`'s certificate, keeping bounds validated.
    pub fn set(&mut self, v: usize, cert: BitString) -> Result<(), CertError> {
        if cert.len() > MAX_WORD_BITS {
            return Err(CertError::TooLong { node: v, len: cert.len() });
        }
        if let Some(b) = &self.bounds {
            if cert.len() as u64 > b[v] {
                return Err(CertError::BoundViolated {
                    node: v,
                    len: cert.len(),
                    bound: b[v],
                });
            }
        }
        self.certs[v] = cert;
        Ok(())
    }
}

/// How identifier uniqueness is scoped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IdMode {
    /// Injective over all nodes.
    GlobalUnique,
    /// Injective within every distance-`t` ball.
    LocalUnique(usize),
}

/// A validated identifier assignment over a configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdAssignment {
    ids: Vec<u64>,
    mode: IdMode,
    universe_bound: u64,
}

impl IdAssignment {
    pub fn id(&self, v: usize) -> u64 {
        self.ids[v]
    }

    pub fn ids(&self) -> &[u64] {
        &self.ids
    }

    pub fn mode(&self) -> IdMode {
        self.mode
    }

    pub fn universe_bound(&self) -> u64 {
        self.universe_bound
    }

    /// Consecutive ids `1..=n` in node order: the fixed convention the
    /// indistinguishability triples use.
    pub fn consecutive(cfg: &Configuration) -> IdAssignment {
        let n = cfg.node_count() as u64;
        IdAssignment {
            ids: (1..=n).collect(),
            mode: IdMode::GlobalUnique,
            universe_bound: n,
        }
    }
}

/// Validates `ids` over `cfg` under the given uniqueness mode.
pub fn assign_ids(
    cfg: &Configuration,
    ids: &[u64],
    mode: IdMode,
    universe_bound: u64,
) -> Result<IdAssignment, GraphError> {
    let n = cfg.node_count();
    if ids.len() != n {
        return Err(GraphError::IdCountMismatch {
            got: ids.len(),
            expected: n,
        });
    }
    for (v, &id) in ids.iter().enumerate() {
        if id < 1 || id > universe_bound {
            return Err(GraphError::IdOutOfRange {
                node: v,
                id,
                bound: universe_bound,
            });
        }
    }
    match mode {
        IdMode::GlobalUnique => {
            let mut seen = std::collections::HashMap::new();
            for &id in ids {
                if seen.insert(id, ()).is_some() {
                    return Err(GraphError::DuplicateId {
                        id,
                        ball_center: None,
                        radius: 0,
                    });
                }
            }
        }
        IdMode::LocalUnique(t) => {
            // Any two nodes within distance t of each other must differ:
            // each center's id is unique in its own distance-t ball.
            for v in 0..n {
                let ball = cfg.ball(v, t)?;
                for &(u, _) in &ball {
                    if u != v && ids[u] == ids[v] {
                        return Err(GraphError::DuplicateId {
                            id: ids[u],
                            ball_center: Some(v),
                            radius: t,
                        });
                    }
                }
            }
        }
    }
    Ok(IdAssignment {
        ids: ids.to_vec(),
        mode,
        universe_bound,
    })
}

/// Number of injective maps from `n` nodes into `{1, ..., n + slack}`:
/// `(n + slack)! / slack!`.
pub fn id_universe_count(n: usize, slack: usize) -> BigUint {
    let mut count = BigUint::one();
    for i in 0..n {
        count *= BigUint::from(n + slack - i);
    }
    count
}

/// Enumerates all injective maps `V -> {1, ..., n + slack}` in lexicographic
/// order of the id tuple `(id(0), ..., id(n-1))`. The stream is restartable:
/// clone it or call this again.
pub fn id_universe(n: usize, slack: usize) -> IdUniverse {
    IdUniverse {
        n,
        universe: (n + slack) as u64,
        current: None,
        done: false,
    }
}

/// Checked variant: errors if the universe size exceeds `cap`.
pub fn id_universe_checked(
    cfg: &Configuration,
    slack: usize,
    cap: u64,
) -> Result<IdUniverse, GraphError> {
    let n = cfg.node_count();
    let count = id_universe_count(n, slack);
    if count > BigUint::from(cap) {
        return Err(GraphError::UniverseTooLarge { count, cap });
    }
    Ok(id_universe(n, slack))
}

/// Iterator over injective id tuples; see [`id_universe`].
#[derive(Debug, Clone)]
pub struct IdUniverse {
    n: usize,
    universe: u64,
    current: Option<Vec<u64>>,
    done: bool,
}

impl IdUniverse {
    /// Wraps a tuple as a validated global-unique assignment.
    pub fn assignment(&self, ids: Vec<u64>) -> IdAssignment {
        IdAssignment {
            ids,
            mode: IdMode::GlobalUnique,
            universe_bound: self.universe,
        }
    }

    fn first(&self) -> Option<Vec<u64>> {
        if (self.n as u64) > self.universe {
            return None;
        }
        Some((1..=self.n as u64).collect())
    }

    /// Advances `ids` to the lexicographically next injective tuple.
    fn advance(&self, ids: &mut Vec<u64>) -> bool {
        // Standard lexicographic successor over injective tuples: bump the
        // rightmost position that has a larger unused value; refill the
        // suffix with the smallest unused values.
        let n = self.n;
        let mut used: Vec<bool> = vec![false; self.universe as usize + 1];
        for &id in ids.iter() {
            used[id as usize] = true;
        }
        for pos in (0..n).rev() {
            used[ids[pos] as usize] = false;
            let mut next = ids[pos] + 1;
            while next <= self.universe && used[next as usize] {
                next += 1;
            }
            if next <= self.universe {
                ids[pos] = next;
                used[next as usize] = true;
                let mut fill = 1;
                for slot in ids.iter_mut().skip(pos + 1) {
                    while used[fill as usize] {
                        fill += 1;
                    }
                    *slot = fill;
                    used[fill as usize] = true;
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for IdUniverse {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.done {
            return None;
        }
        match self.current.take() {
            None => {
                let first = self.first();
                if first.is_none() {
                    self.done = true;
                }
                self.current = first.clone();
                first
            }
            Some(ids) => {
                let mut next = ids;
                if self.advance(&mut next) {
                    self.current = Some(next.clone());
                    Some(next)
                } else {
                    self.done = true;
                    None
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_path_basic() {
        let cfg = Configuration::labeled_path(&[4, 5, 5]).unwrap();
        assert_eq!(cfg.node_count(), 3);
        assert!(cfg.has_edge(0, 1) && cfg.has_edge(1, 2) && !cfg.has_edge(0, 2));
        assert_eq!(cfg.label(0).field0(), Some(4));
    }

    #[test]
    fn single_node_path() {
        let cfg = Configuration::labeled_path(&[7]).unwrap();
        assert_eq!(cfg.node_count(), 1);
        assert_eq!(cfg.edges().count(), 0);
    }

    #[test]
    fn empty_labels_rejected() {
        assert_eq!(Configuration::path(vec![]), Err(GraphError::EmptyLabels));
    }

    #[test]
    fn bad_edges_rejected() {
        let labels = vec![Label::of(&[1]), Label::of(&[2])];
        assert!(matches!(
            Configuration::build(2, &[(0, 0)], labels.clone()),
            Err(GraphError::BadEdge(0, 0, "self-loop"))
        ));
        assert!(matches!(
            Configuration::build(2, &[(0, 1), (1, 0)], labels.clone()),
            Err(GraphError::BadEdge(1, 0, "duplicate edge"))
        ));
        assert!(matches!(
            Configuration::build(2, &[(0, 2)], labels),
            Err(GraphError::BadEdge(0, 2, "endpoint out of range"))
        ));
    }

    #[test]
    fn assign_ids_global_mode() {
        let cfg = Configuration::labeled_path(&[1, 2, 3]).unwrap();
        assert!(assign_ids(&cfg, &[1, 2, 3], IdMode::GlobalUnique, 3).is_ok());
        let err = assign_ids(&cfg, &[1, 1, 2], IdMode::GlobalUnique, 3).unwrap_err();
        assert!(matches!(err, GraphError::DuplicateId { id: 1, ball_center: None, .. }));
        let err = assign_ids(&cfg, &[1, 2, 4], IdMode::GlobalUnique, 3).unwrap_err();
        assert!(matches!(err, GraphError::IdOutOfRange { node: 2, id: 4, bound: 3 }));
    }

    #[test]
    fn assign_ids_local_mode_allows_reuse_beyond_distance_t() {
        let cfg = Configuration::labeled_path(&[0, 0, 0, 0, 0]).unwrap();
        // Equal ids sit at distance 2 > 1; every node's id is unique among
        // the nodes within distance 1 of it.
        assert!(assign_ids(&cfg, &[1, 2, 1, 2, 1], IdMode::LocalUnique(1), 2).is_ok());
        // At t = 2 the repeated ids are within range of each other.
        let err = assign_ids(&cfg, &[1, 2, 1, 2, 1], IdMode::LocalUnique(2), 2).unwrap_err();
        assert!(matches!(err, GraphError::DuplicateId { ball_center: Some(_), radius: 2, .. }));
        // Adjacent duplicates fail even at t = 1.
        let err = assign_ids(&cfg, &[1, 1, 2, 1, 2], IdMode::LocalUnique(1), 2).unwrap_err();
        assert!(matches!(err, GraphError::DuplicateId { id: 1, .. }));
    }

    #[test]
    fn id_universe_small_counts_and_order() {
        let ids: Vec<_> = id_universe(2, 0).collect();
        assert_eq!(ids, vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(id_universe(2, 1).count(), 6);
        assert_eq!(id_universe_count(2, 1), BigUint::from(6u32));
        assert_eq!(id_universe_count(3, 0), BigUint::from(6u32));
        // Lexicographic order.
        let ids: Vec<_> = id_universe(2, 1).collect();
        assert_eq!(
            ids,
            vec![
                vec![1, 2],
                vec![1, 3],
                vec![2, 1],
                vec![2, 3],
                vec![3, 1],
                vec![3, 2]
            ]
        );
    }

    #[test]
    fn id_universe_cap() {
        let cfg = Configuration::labeled_path(&[1, 2, 3]).unwrap();
        let err = id_universe_checked(&cfg, 0, 5).unwrap_err();
        assert!(matches!(err, GraphError::UniverseTooLarge { .. }));
        assert!(id_universe_checked(&cfg, 0, 6).is_ok());
    }

    #[test]
    fn path_order_detects_paths() {
        let cfg = Configuration::labeled_path(&[1, 2, 3, 4]).unwrap();
        assert_eq!(cfg.path_order(), Some(vec![0, 1, 2, 3]));
        let tri = Configuration::build(
            3,
            &[(0, 1), (1, 2), (0, 2)],
            vec![Label::of(&[1]), Label::of(&[2]), Label::of(&[3])],
        )
        .unwrap();
        assert_eq!(tri.path_order(), None);
        let single = Configuration::labeled_path(&[9]).unwrap();
        assert_eq!(single.path_order(), Some(vec![0]));
        // Disconnected: path + isolated node is not a path.
        let disc = Configuration::build(
            3,
            &[(0, 1)],
            vec![Label::of(&[1]), Label::of(&[2]), Label::of(&[3])],
        )
        .unwrap();
        assert_eq!(disc.path_order(), None);
    }

    #[test]
    fn graph_json_round_trip() {
        let mut labels = vec![Label::of(&[4]), Label::of(&[5]), Label::of(&[5])];
        labels[2].word = Some(BitString::parse("0110").unwrap());
        let cfg = Configuration::path(labels).unwrap();
        let json = cfg.to_json();
        let back = Configuration::from_json(&json).unwrap();
        assert_eq!(cfg, back);
    }

    #[test]
    fn default_label_bound_formula() {
        // n = 1: ceil(log2(3)) = 2 -> 192; n = 2: ceil(log2(4)) = 2 -> 192;
        // n = 3: ceil(log2(5)) = 3 -> 256.
        assert_eq!(default_label_bit_bound(1), 192);
        assert_eq!(default_label_bit_bound(2), 192);
        assert_eq!(default_label_bit_bound(3), 256);
    }
}
