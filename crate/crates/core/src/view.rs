//! Radius-`t` views and their bit-exact canonical encoding.
//!
//! A [`View`] is the induced subgraph on the distance-`t` ball of a node,
//! together with per-node distances, labels, identifiers, and optional
//! certificates. The canonical encoding below fixes what "the number of bits
//! in a view" means, so the size-bounded classes have an exact measure.
//!
//! Canonical encoding: ball nodes are sorted by (distance from root, id);
//! per node we emit the id in minimal binary with a 16-bit length prefix,
//! then an 8-bit label arity followed by each integer field in minimal
//! binary with a 16-bit length prefix, then the optional label word and the
//! optional certificate, each as a 1-bit presence flag followed (when
//! present) by a 16-bit length prefix and the payload. The ball's adjacency
//! closes the encoding as a strict lower-triangular bit matrix in the sorted
//! order. Identifier uniqueness inside the ball (guaranteed by both id
//! conventions at extraction radius) makes the sort order, and hence the
//! encoding, canonical.

use serde::Serialize;

use crate::bits::{bit_len, BitString};
use crate::graph::{CertificateAssignment, Configuration, GraphError, IdAssignment, Label};

/// One node of a view's ball.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ViewNode {
    pub distance: usize,
    pub id: u64,
    pub label: Label,
    pub cert: Option<BitString>,
}

/// The radius-`t` ball around a node, canonically ordered. Index 0 is the
/// root.
#[derive(Debug, Clone, Serialize)]
pub struct View {
    radius: usize,
    nodes: Vec<ViewNode>,
    /// Strict lower triangle, row-major: entry (i, j) with j < i at index
    /// `i * (i - 1) / 2 + j`.
    adj: Vec<bool>,
    /// Original configuration index of each ball node. Metadata for
    /// splicing certificate assignments into a template; excluded from the
    /// encoding and from identity.
    source_nodes: Vec<usize>,
}

impl PartialEq for View {
    fn eq(&self, other: &Self) -> bool {
        self.radius == other.radius && self.nodes == other.nodes && self.adj == other.adj
    }
}
impl Eq for View {}

impl View {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node(&self, i: usize) -> &ViewNode {
        &self.nodes[i]
    }

    pub fn nodes(&self) -> &[ViewNode] {
        &self.nodes
    }

    /// Original configuration index of view node `i`.
    pub fn source_node(&self, i: usize) -> usize {
        self.source_nodes[i]
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        if i == j {
            return false;
        }
        let (hi, lo) = if i > j { (i, j) } else { (j, i) };
        self.adj[hi * (hi - 1) / 2 + lo]
    }

    /// Neighbors of view node `i` inside the ball.
    pub fn neighbors_in_ball(&self, i: usize) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&j| self.adjacent(i, j))
            .collect()
    }

    /// Total length of the canonical encoding, in bits.
    pub fn bits(&self) -> u64 {
        let k = self.nodes.len() as u64;
        let mut total = k * (k - 1) / 2;
        for node in &self.nodes {
            total += 16 + u64::from(bit_len(node.id));
            total += 8;
            for &f in &node.label.fields {
                total += 16 + u64::from(bit_len(f));
            }
            total += 1 + node.label.word.as_ref().map_or(0, |w| 16 + w.len() as u64);
            total += 1 + node.cert.as_ref().map_or(0, |c| 16 + c.len() as u64);
        }
        total
    }

    /// Total payload bits of identifiers and labels in the ball (prefixes,
    /// flags, certificates, and the adjacency matrix are excluded).
    pub fn label_bits(&self) -> u64 {
        let mut total = 0;
        for node in &self.nodes {
            total += u64::from(bit_len(node.id));
            for &f in &node.label.fields {
                total += u64::from(bit_len(f));
            }
            total += node.label.word.as_ref().map_or(0, |w| w.len() as u64);
        }
        total
    }

    /// Materializes the canonical encoding.
    pub fn encode(&self) -> BitString {
        let mut out = BitString::new();
        for node in &self.nodes {
            let id_bits = BitString::from_value(node.id);
            out.push_value(id_bits.len() as u64, 16);
            out.extend(&id_bits);
            out.push_value(node.label.fields.len() as u64, 8);
            for &f in &node.label.fields {
                let fb = BitString::from_value(f);
                out.push_value(fb.len() as u64, 16);
                out.extend(&fb);
            }
            match &node.label.word {
                Some(w) => {
                    out.push(true);
                    out.push_value(w.len() as u64, 16);
                    out.extend(w);
                }
                None => out.push(false),
            }
            match &node.cert {
                Some(c) => {
                    out.push(true);
                    out.push_value(c.len() as u64, 16);
                    out.extend(c);
                }
                None => out.push(false),
            }
        }
        for i in 1..self.nodes.len() {
            for j in 0..i {
                out.push(self.adj[i * (i - 1) / 2 + j]);
            }
        }
        out
    }

    /// Re-extracts the radius-`r` view of ball node `i`, using only the
    /// ball's own structure. Exact whenever `distance(i) + r <= 2 * radius`
    /// and the ball was extracted at radius >= distance(i) + r, which holds
    /// for the doubling transforms: any shortest path between two nodes of
    /// the inner ball stays inside the outer ball.
    pub fn sub_view(&self, i: usize, r: usize) -> View {
        let k = self.nodes.len();
        let mut dist = vec![usize::MAX; k];
        dist[i] = 0;
        let mut queue = std::collections::VecDeque::from([i]);
        let mut members = vec![i];
        while let Some(u) = queue.pop_front() {
            if dist[u] == r {
                continue;
            }
            for w in 0..k {
                if self.adjacent(u, w) && dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    members.push(w);
                    queue.push_back(w);
                }
            }
        }
        members.sort_by_key(|&m| (dist[m], self.nodes[m].id));
        let nodes: Vec<ViewNode> = members
            .iter()
            .map(|&m| ViewNode {
                distance: dist[m],
                ..self.nodes[m].clone()
            })
            .collect();
        let source_nodes: Vec<usize> = members.iter().map(|&m| self.source_nodes[m]).collect();
        let mut adj = Vec::with_capacity(members.len() * (members.len().saturating_sub(1)) / 2);
        for a in 1..members.len() {
            for b in 0..a {
                adj.push(self.adjacent(members[a], members[b]));
            }
        }
        View {
            radius: r,
            nodes,
            adj,
            source_nodes,
        }
    }

    /// Copy of this view with certificates taken from `certs` (indexed by
    /// source node), or stripped when `None`.
    pub fn with_certs(&self, certs: Option<&CertificateAssignment>) -> View {
        let mut out = self.clone();
        for (i, node) in out.nodes.iter_mut().enumerate() {
            node.cert = certs.map(|c| c.cert(self.source_nodes[i]).clone());
        }
        out
    }
}

/// Extracts the canonical radius-`t` view of `v`.
pub fn extract_view(
    cfg: &Configuration,
    ids: &IdAssignment,
    certs: Option<&CertificateAssignment>,
    v: usize,
    t: usize,
) -> Result<View, GraphError> {
    let ball = cfg.ball(v, t)?;
    let mut order: Vec<(usize, usize)> = ball;
    order.sort_by_key(|&(node, dist)| (dist, ids.id(node)));
    let nodes: Vec<ViewNode> = order
        .iter()
        .map(|&(node, dist)| ViewNode {
            distance: dist,
            id: ids.id(node),
            label: cfg.label(node).clone(),
            cert: certs.map(|c| c.cert(node).clone()),
        })
        .collect();
    let source_nodes: Vec<usize> = order.iter().map(|&(node, _)| node).collect();
    let k = order.len();
    let mut adj = Vec::with_capacity(k * k.saturating_sub(1) / 2);
    for i in 1..k {
        for j in 0..i {
            adj.push(cfg.has_edge(source_nodes[i], source_nodes[j]));
        }
    }
    Ok(View {
        radius: t,
        nodes,
        adj,
        source_nodes,
    })
}

/// Canonical encoding length of a view, in bits.
pub fn view_bits(view: &View) -> u64 {
    view.bits()
}

/// True iff a root-preserving isomorphism matches distances, labels,
/// identifiers, and certificates bit for bit. Views of different radii are
/// never identical.
pub fn views_identical(a: &View, b: &View) -> bool {
    a.radius == b.radius && a.nodes == b.nodes && a.adj == b.adj
}
