//! Strict episodes as labelled DAGs in canonical node order.
//!
//! Nodes are ordered by label, and nodes sharing a label are ordered along the
//! path that connects them. Two strict, transitively closed episodes describe
//! the same pattern exactly when their label lists and edge sets coincide, so
//! the derived `Eq`/`Hash` is pattern equivalence for such values.
//!
//! Edge sets are stored as one `u64` successor row per node, which caps an
//! episode at [`MAX_NODES`] nodes.

use std::cmp::Ordering;

use thiserror::Error;

use crate::label::Label;

pub type NodeId = usize;

/// Row width of the adjacency bitsets.
pub const MAX_NODES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EpisodeError {
    #[error("edge relation contains a cycle")]
    Cycle,
    #[error("nodes {0} and {1} share a label but no path orders them")]
    NotStrict(NodeId, NodeId),
    #[error("{0} nodes requested; at most {MAX_NODES} are supported")]
    TooManyNodes(usize),
    #[error("edge ({0}, {1}) refers to a node that does not exist")]
    DanglingEdge(NodeId, NodeId),
    #[error("self-loop on node {0}")]
    SelfLoop(NodeId),
    #[error("edge ({0}, {1}) is not in the episode")]
    MissingEdge(NodeId, NodeId),
    #[error("node {0} is not in the episode")]
    MissingNode(NodeId),
}

/// A directed edge between two node positions. Edges order lexicographically
/// on `(source, target)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub source: NodeId,
    pub target: NodeId,
}

impl Edge {
    pub const fn new(source: NodeId, target: NodeId) -> Self {
        Edge { source, target }
    }

    pub const fn reversed(self) -> Self {
        Edge::new(self.target, self.source)
    }
}

impl From<(NodeId, NodeId)> for Edge {
    fn from((source, target): (NodeId, NodeId)) -> Self {
        Edge { source, target }
    }
}

/// Structural edit applied by [`Episode::edit`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EditOp {
    AddEdge(Edge),
    RemoveEdge(Edge),
    AddNode(Label),
    RemoveNode(NodeId),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Episode {
    labels: Vec<Label>,
    succ: Vec<u64>,
}

#[inline]
fn bit(i: usize) -> u64 {
    1u64 << i
}

fn iter_bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// Warshall's algorithm over bitset rows.
fn reachability(succ: &[u64]) -> Vec<u64> {
    let mut reach = succ.to_vec();
    for k in 0..reach.len() {
        let row_k = reach[k];
        for row in reach.iter_mut() {
            if *row & bit(k) != 0 {
                *row |= row_k;
            }
        }
    }
    reach
}

impl Episode {
    /// The episode with no nodes.
    pub fn empty() -> Self {
        Episode::default()
    }

    /// Builds an episode in canonical node order from labels and edges over
    /// provisional node ids (indices into `labels`). Edges are kept as given
    /// (relabelled); no transitive closure is taken.
    pub fn canonicalize<E>(labels: &[Label], edges: E) -> Result<Episode, EpisodeError>
    where
        E: IntoIterator,
        E::Item: Into<Edge>,
    {
        let n = labels.len();
        if n > MAX_NODES {
            return Err(EpisodeError::TooManyNodes(n));
        }
        let mut succ = vec![0u64; n];
        for e in edges {
            let e: Edge = e.into();
            if e.source >= n || e.target >= n {
                return Err(EpisodeError::DanglingEdge(e.source, e.target));
            }
            if e.source == e.target {
                return Err(EpisodeError::SelfLoop(e.source));
            }
            succ[e.source] |= bit(e.target);
        }
        Self::canonicalize_rows(labels, &succ)
    }

    fn canonicalize_rows(labels: &[Label], succ: &[u64]) -> Result<Episode, EpisodeError> {
        let n = labels.len();
        let reach = reachability(succ);
        if (0..n).any(|i| reach[i] & bit(i) != 0) {
            return Err(EpisodeError::Cycle);
        }
        // Number of same-label ancestors fixes a node's place in its chain.
        let mut depth = vec![0u32; n];
        for i in 0..n {
            for j in (i + 1)..n {
                if labels[i] != labels[j] {
                    continue;
                }
                if reach[i] & bit(j) != 0 {
                    depth[j] += 1;
                } else if reach[j] & bit(i) != 0 {
                    depth[i] += 1;
                } else {
                    return Err(EpisodeError::NotStrict(i, j));
                }
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (labels[i], depth[i]));
        let mut position = vec![0usize; n];
        for (new, &old) in order.iter().enumerate() {
            position[old] = new;
        }
        let mut new_succ = vec![0u64; n];
        for (old, &row) in succ.iter().enumerate() {
            new_succ[position[old]] = iter_bits(row).fold(0, |acc, t| acc | bit(position[t]));
        }
        Ok(Episode {
            labels: order.iter().map(|&i| labels[i]).collect(),
            succ: new_succ,
        })
    }

    /// Edgeless episode over `labels`, with equal labels chained so that the
    /// result is strict and transitively closed.
    pub fn parallel(labels: &[Label]) -> Episode {
        let mut sorted = labels.to_vec();
        sorted.sort();
        let n = sorted.len();
        assert!(n <= MAX_NODES, "too many nodes");
        let succ = (0..n)
            .map(|i| {
                ((i + 1)..n)
                    .filter(|&j| sorted[j] == sorted[i])
                    .fold(0, |acc, j| acc | bit(j))
            })
            .collect();
        Episode {
            labels: sorted,
            succ,
        }
    }

    /// Totally ordered episode visiting `labels` in the given order.
    pub fn serial(labels: &[Label]) -> Episode {
        let n = labels.len();
        let edges = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j)));
        Episode::canonicalize(labels, edges).expect("a total order is acyclic and strict")
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, v: NodeId) -> Label {
        self.labels[v]
    }

    /// Bitset of all node positions.
    pub fn all_nodes(&self) -> u64 {
        if self.labels.len() == MAX_NODES {
            u64::MAX
        } else {
            bit(self.labels.len()) - 1
        }
    }

    pub fn successors(&self, v: NodeId) -> u64 {
        self.succ[v]
    }

    pub fn predecessors(&self, v: NodeId) -> u64 {
        self.succ
            .iter()
            .enumerate()
            .filter(|(_, r)| *r & bit(v) != 0)
            .fold(0, |acc, (u, _)| acc | bit(u))
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        e.source < self.succ.len() && self.succ[e.source] & bit(e.target) != 0
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(s, &row)| iter_bits(row).map(move |t| Edge::new(s, t)))
    }

    pub(crate) fn rows(&self) -> &[u64] {
        &self.succ
    }

    /// Nodes with no incident edges.
    pub fn is_solitary(&self, v: NodeId) -> bool {
        self.succ[v] == 0 && self.predecessors(v) == 0
    }

    pub fn transitive_closure(&self) -> Episode {
        Episode {
            labels: self.labels.clone(),
            succ: reachability(&self.succ),
        }
    }

    pub fn is_transitively_closed(&self) -> bool {
        reachability(&self.succ) == self.succ
    }

    pub fn is_acyclic(&self) -> bool {
        let reach = reachability(&self.succ);
        (0..reach.len()).all(|i| reach[i] & bit(i) == 0)
    }

    /// Every pair of equal-label nodes is connected by a path, earlier
    /// position first.
    pub fn is_strict(&self) -> bool {
        let reach = reachability(&self.succ);
        let n = self.labels.len();
        (0..n).all(|i| {
            ((i + 1)..n)
                .filter(|&j| self.labels[j] == self.labels[i])
                .all(|j| reach[i] & bit(j) != 0)
        })
    }

    /// True when all edges join nodes with equal labels.
    pub fn is_parallel(&self) -> bool {
        self.edges()
            .all(|e| self.labels[e.source] == self.labels[e.target])
    }

    /// Edges `(v, w)` with no intermediate node `u` on a path `v, u, w`.
    pub fn skeleton_edges(&self) -> Vec<Edge> {
        let preds: Vec<u64> = (0..self.node_count())
            .map(|w| self.predecessors(w))
            .collect();
        self.edges()
            .filter(|e| self.succ[e.source] & preds[e.target] == 0)
            .collect()
    }

    /// Skeleton edges whose endpoints carry different labels.
    pub fn proper_skeleton_edges(&self) -> Vec<Edge> {
        self.skeleton_edges()
            .into_iter()
            .filter(|e| self.labels[e.source] != self.labels[e.target])
            .collect()
    }

    /// The greatest proper skeleton edge, if any.
    pub fn last_proper_skeleton_edge(&self) -> Option<Edge> {
        self.proper_skeleton_edges().into_iter().max()
    }

    /// Pattern containment between strict, transitively closed episodes.
    ///
    /// With identical nodes this is edge-set inclusion. With fewer nodes, some
    /// label-preserving injection into `other` must carry every edge onto an
    /// edge; equal-label nodes are only mapped in chain order.
    pub fn is_subepisode_of(&self, other: &Episode) -> bool {
        let n = self.node_count();
        if n > other.node_count() {
            return false;
        }
        if self.labels == other.labels {
            return self.succ.iter().zip(&other.succ).all(|(g, h)| g & !h == 0);
        }
        let mut image = vec![usize::MAX; n];
        self.extend_injection(other, 0, &mut image)
    }

    fn extend_injection(&self, other: &Episode, v: usize, image: &mut [usize]) -> bool {
        if v == self.node_count() {
            return true;
        }
        let label = self.labels[v];
        // Chain order: start after the image of the previous same-label node.
        let first = if v > 0 && self.labels[v - 1] == label {
            image[v - 1] + 1
        } else {
            other.labels.partition_point(|&l| l < label)
        };
        let mut w = first;
        while w < other.node_count() && other.labels[w] == label {
            let consistent = (0..v).all(|u| {
                let iu = image[u];
                (!self.has_edge(Edge::new(u, v)) || other.has_edge(Edge::new(iu, w)))
                    && (!self.has_edge(Edge::new(v, u)) || other.has_edge(Edge::new(w, iu)))
            });
            if consistent {
                image[v] = w;
                if self.extend_injection(other, v + 1, image) {
                    return true;
                }
            }
            w += 1;
        }
        false
    }

    /// Same pattern, for canonical transitively closed episodes.
    pub fn equivalent(&self, other: &Episode) -> bool {
        self == other
    }

    /// Applies a structural edit and re-canonicalizes. The result is not
    /// transitively closed automatically.
    pub fn edit(&self, op: EditOp) -> Result<Episode, EpisodeError> {
        match op {
            EditOp::AddEdge(e) => {
                let n = self.node_count();
                if e.source >= n || e.target >= n {
                    return Err(EpisodeError::DanglingEdge(e.source, e.target));
                }
                if e.source == e.target {
                    return Err(EpisodeError::SelfLoop(e.source));
                }
                let mut succ = self.succ.clone();
                succ[e.source] |= bit(e.target);
                Self::canonicalize_rows(&self.labels, &succ)
            }
            EditOp::RemoveEdge(e) => {
                if !self.has_edge(e) {
                    return Err(EpisodeError::MissingEdge(e.source, e.target));
                }
                let mut succ = self.succ.clone();
                succ[e.source] &= !bit(e.target);
                Self::canonicalize_rows(&self.labels, &succ)
            }
            EditOp::AddNode(label) => {
                if self.node_count() == MAX_NODES {
                    return Err(EpisodeError::TooManyNodes(MAX_NODES + 1));
                }
                let mut labels = self.labels.clone();
                labels.push(label);
                let mut succ = self.succ.clone();
                succ.push(0);
                Self::canonicalize_rows(&labels, &succ)
            }
            EditOp::RemoveNode(v) => {
                if v >= self.node_count() {
                    return Err(EpisodeError::MissingNode(v));
                }
                let keep = self.all_nodes() & !bit(v);
                let (labels, succ) = self.induced_parts(keep);
                Self::canonicalize_rows(&labels, &succ)
            }
        }
    }

    pub fn with_edge(&self, e: Edge) -> Result<Episode, EpisodeError> {
        self.edit(EditOp::AddEdge(e))
    }

    pub fn without_edge(&self, e: Edge) -> Result<Episode, EpisodeError> {
        self.edit(EditOp::RemoveEdge(e))
    }

    pub fn with_node(&self, label: Label) -> Result<Episode, EpisodeError> {
        self.edit(EditOp::AddNode(label))
    }

    pub fn without_node(&self, v: NodeId) -> Result<Episode, EpisodeError> {
        self.edit(EditOp::RemoveNode(v))
    }

    /// Adds a set of edges at once, without re-closing.
    pub fn with_edges<I: IntoIterator<Item = Edge>>(
        &self,
        edges: I,
    ) -> Result<Episode, EpisodeError> {
        let mut succ = self.succ.clone();
        for e in edges {
            if e.source >= succ.len() || e.target >= succ.len() {
                return Err(EpisodeError::DanglingEdge(e.source, e.target));
            }
            succ[e.source] |= bit(e.target);
        }
        Self::canonicalize_rows(&self.labels, &succ)
    }

    fn induced_parts(&self, keep: u64) -> (Vec<Label>, Vec<u64>) {
        let kept: Vec<usize> = iter_bits(keep).filter(|&v| v < self.node_count()).collect();
        let labels = kept.iter().map(|&v| self.labels[v]).collect();
        let succ = kept
            .iter()
            .map(|&v| {
                kept.iter()
                    .enumerate()
                    .filter(|(_, &w)| self.succ[v] & bit(w) != 0)
                    .fold(0, |acc, (j, _)| acc | bit(j))
            })
            .collect();
        (labels, succ)
    }

    /// Subgraph induced by the nodes in `keep`. Canonical order survives for
    /// transitively closed inputs.
    pub fn induced(&self, keep: u64) -> Episode {
        let (labels, succ) = self.induced_parts(keep);
        Episode { labels, succ }
    }

    /// Maps every node to the node of `sup` with the same label and the same
    /// rank within its label. This is the node correspondence between an
    /// episode and anything obtained from it by adding nodes with new labels.
    /// Node map witnessing `self ⪯ sup`. Equal-label nodes keep their chain
    /// order, so when `sup` is a closure of `self` this is the identity on
    /// labels and ranks.
    pub fn embedding_into(&self, sup: &Episode) -> Option<Vec<NodeId>> {
        if self.node_count() > sup.node_count() {
            return None;
        }
        let mut image = vec![0; self.node_count()];
        self.extend_injection(sup, 0, &mut image).then_some(image)
    }
}

impl PartialOrd for Episode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by node count, then edge count, then labels, then edge list.
impl Ord for Episode {
    fn cmp(&self, other: &Self) -> Ordering {
        self.node_count()
            .cmp(&other.node_count())
            .then_with(|| self.edge_count().cmp(&other.edge_count()))
            .then_with(|| self.labels.cmp(&other.labels))
            .then_with(|| self.edges().cmp(other.edges()))
    }
}
