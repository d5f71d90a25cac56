//! Simple undirected graphs with stable vertex ids.
//!
//! Vertex ids are never reused: deleting a vertex leaves a hole and every
//! contraction allocates a fresh id. This lets certificates found on a reduced
//! graph be mapped back onto the original vertex ids.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

pub type Vertex = usize;
pub type VertexSet = BTreeSet<Vertex>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop on edge ({0}, {0})")]
    SelfLoop(Vertex),
    #[error("vertex {0} out of range for a graph with {1} vertices")]
    OutOfRange(Vertex, usize),
    #[error("vertex {0} is not in the graph")]
    MissingVertex(Vertex),
    #[error("cannot contract {a}-{v}-{b}: {reason}")]
    Contraction {
        a: Vertex,
        v: Vertex,
        b: Vertex,
        reason: &'static str,
    },
}

/// Undirected simple graph. Neighbor lists are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<Option<Vec<Vertex>>>,
    live: usize,
    edges: usize,
}

/// Result of merging a set of vertices into a single fresh vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contraction {
    pub merged: Vertex,
    pub sources: Vec<Vertex>,
}

impl Graph {
    /// `n` isolated vertices with ids `0..n`.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Some(Vec::new()); n],
            live: n,
            edges: 0,
        }
    }

    /// Builds a graph on `0..n`. Duplicate pairs are merged; loops are rejected.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::OutOfRange(w, n));
                }
            }
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.live
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn is_empty(&self) -> bool {
        self.live == 0
    }

    /// One past the largest id ever allocated.
    pub fn id_bound(&self) -> usize {
        self.adj.len()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        matches!(self.adj.get(v), Some(Some(_)))
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.iter().enumerate().filter_map(|(v, a)| a.as_ref().map(|_| v))
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Sorted neighbor list. Panics if `v` is not live.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        self.adj[v].as_deref().expect("vertex is not live")
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.contains(u) && self.contains(v) && self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn add_vertex(&mut self) -> Vertex {
        self.adj.push(Some(Vec::new()));
        self.live += 1;
        self.adj.len() - 1
    }

    /// Inserts `uv`; returns `false` if it was already present.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<bool, GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        for w in [u, v] {
            if !self.contains(w) {
                return Err(GraphError::MissingVertex(w));
            }
        }
        let inserted = insert_sorted(self.adj[u].as_mut().unwrap(), v);
        if inserted {
            insert_sorted(self.adj[v].as_mut().unwrap(), u);
            self.edges += 1;
        }
        self.debug_check_local(u);
        Ok(inserted)
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        if !self.has_edge(u, v) {
            return false;
        }
        remove_sorted(self.adj[u].as_mut().unwrap(), v);
        remove_sorted(self.adj[v].as_mut().unwrap(), u);
        self.edges -= 1;
        true
    }

    /// Deletes `v` and its incident edges. Returns the former neighbors.
    pub fn remove_vertex(&mut self, v: Vertex) -> Result<Vec<Vertex>, GraphError> {
        let nbrs = self
            .adj
            .get_mut(v)
            .and_then(Option::take)
            .ok_or(GraphError::MissingVertex(v))?;
        for &w in &nbrs {
            remove_sorted(self.adj[w].as_mut().unwrap(), v);
        }
        self.edges -= nbrs.len();
        self.live -= 1;
        Ok(nbrs)
    }

    /// Replaces `set` by one fresh vertex adjacent to `N(set) \ set`.
    pub fn merge_vertices(&mut self, set: &[Vertex]) -> Result<Contraction, GraphError> {
        let mut outside = VertexSet::new();
        for &v in set {
            if !self.contains(v) {
                return Err(GraphError::MissingVertex(v));
            }
            outside.extend(self.neighbors(v).iter().copied());
        }
        for v in set {
            outside.remove(v);
        }
        for &v in set {
            self.remove_vertex(v)?;
        }
        let merged = self.add_vertex();
        for w in outside {
            self.add_edge(merged, w)?;
        }
        Ok(Contraction {
            merged,
            sources: set.to_vec(),
        })
    }

    /// Contracts the path `a-v-b` into a fresh vertex. Requires `N(v) = {a, b}`
    /// and `a`, `b` non-adjacent.
    pub fn contract_path(&mut self, a: Vertex, v: Vertex, b: Vertex) -> Result<Contraction, GraphError> {
        let err = |reason| GraphError::Contraction { a, v, b, reason };
        for w in [a, v, b] {
            if !self.contains(w) {
                return Err(GraphError::MissingVertex(w));
            }
        }
        if a == b {
            return Err(err("endpoints coincide"));
        }
        let mut expected = [a, b];
        expected.sort_unstable();
        if self.neighbors(v) != expected {
            return Err(err("middle vertex must have exactly the two endpoints as neighbors"));
        }
        if self.has_edge(a, b) {
            return Err(err("endpoints are adjacent"));
        }
        self.merge_vertices(&[a, v, b])
    }

    /// Subgraph induced by `keep`, relabelled to `0..k` in ascending id order.
    /// The returned vector maps new ids back to ids of `self`.
    pub fn induced(&self, keep: &VertexSet) -> (Graph, Vec<Vertex>) {
        let ids: Vec<Vertex> = keep.iter().copied().filter(|&v| self.contains(v)).collect();
        let mut local = vec![usize::MAX; self.id_bound()];
        for (i, &v) in ids.iter().enumerate() {
            local[v] = i;
        }
        let mut g = Graph::new(ids.len());
        for (i, &v) in ids.iter().enumerate() {
            let list: Vec<Vertex> = self
                .neighbors(v)
                .iter()
                .filter_map(|&w| (local[w] != usize::MAX).then_some(local[w]))
                .collect();
            g.edges += list.len();
            g.adj[i] = Some(list);
        }
        g.edges /= 2;
        (g, ids)
    }

    /// All live vertices relabelled to `0..n`.
    pub fn compact(&self) -> (Graph, Vec<Vertex>) {
        self.induced(&self.vertices().collect())
    }

    /// Checks symmetry, simplicity and liveness. Linear time.
    pub fn check_invariants(&self) -> Result<(), String> {
        let mut live = 0;
        let mut half_edges = 0;
        for v in self.vertices() {
            live += 1;
            let nbrs = self.neighbors(v);
            if nbrs.windows(2).any(|w| w[0] >= w[1]) {
                return Err(format!("neighbors of {v} are not strictly sorted"));
            }
            for &w in nbrs {
                if w == v {
                    return Err(format!("self-loop at {v}"));
                }
                if !self.contains(w) {
                    return Err(format!("{v} points at dead vertex {w}"));
                }
                if self.neighbors(w).binary_search(&v).is_err() {
                    return Err(format!("edge {v}-{w} is not symmetric"));
                }
            }
            half_edges += nbrs.len();
        }
        if live != self.live || half_edges != 2 * self.edges {
            return Err("cached counts are stale".into());
        }
        Ok(())
    }

    #[inline]
    fn debug_check_local(&self, v: Vertex) {
        if cfg!(debug_assertions) {
            for &w in self.neighbors(v) {
                debug_assert!(w != v && self.has_edge(w, v), "asymmetric edge {v}-{w}");
            }
        }
    }
}

fn insert_sorted(list: &mut Vec<Vertex>, v: Vertex) -> bool {
    match list.binary_search(&v) {
        Ok(_) => false,
        Err(pos) => {
            list.insert(pos, v);
            true
        }
    }
}

fn remove_sorted(list: &mut Vec<Vertex>, v: Vertex) {
    if let Ok(pos) = list.binary_search(&v) {
        list.remove(pos);
    }
}

/// Connected components, each sorted, ordered by smallest member.
pub fn connected_components(g: &Graph) -> Vec<Vec<Vertex>> {
    let mut seen = vec![false; g.id_bound()];
    let mut out = Vec::new();
    for s in g.vertices() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let u = comp[i];
            i += 1;
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Number of connected components of `g - removed`.
pub fn component_count_without(g: &Graph, removed: &VertexSet) -> usize {
    let mut seen = vec![false; g.id_bound()];
    for &v in removed {
        if v < seen.len() {
            seen[v] = true;
        }
    }
    let mut count = 0;
    let mut queue = VecDeque::new();
    for s in g.vertices() {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    count
}

/// Whether `g[set]` is connected. The empty set counts as connected.
pub fn induces_connected(g: &Graph, set: &VertexSet) -> bool {
    let Some(&start) = set.iter().next() else {
        return true;
    };
    let mut seen = VertexSet::new();
    seen.insert(start);
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if set.contains(&w) && seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == set.len()
}

pub fn is_connected(g: &Graph) -> bool {
    component_count_without(g, &VertexSet::new()) <= 1
}

pub fn is_independent(g: &Graph, set: &VertexSet) -> bool {
    set.iter().all(|&v| g.neighbors(v).iter().all(|w| !set.contains(w)))
}

/// `set` is independent and `g - set` is connected. An empty remainder counts
/// as connected, which an independent `set` can only produce on an edgeless
/// graph.
pub fn is_nonseparating_independent(g: &Graph, set: &VertexSet) -> bool {
    if set.iter().any(|&v| !g.contains(v)) || !is_independent(g, set) {
        return false;
    }
    let rest: VertexSet = g.vertices().filter(|v| !set.contains(v)).collect();
    induces_connected(g, &rest)
}

/// Bridges, blocks and cutvertices; see [`bridges_and_blocks`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StructureReport {
    pub components: Vec<Vec<Vertex>>,
    pub bridges: BTreeSet<(Vertex, Vertex)>,
    /// Biconnected components. Isolated vertices form singleton blocks.
    pub blocks: Vec<Vec<Vertex>>,
    pub cutvertices: VertexSet,
    pub degeneracy_order: Vec<Vertex>,
    pub degeneracy: usize,
}

/// Blocks, bridges and cutvertices of the components containing `roots`.
///
/// Iterative Hopcroft-Tarjan with an edge stack. Blocks come out sorted
/// internally and ordered by smallest member.
pub fn blocks_from(
    g: &Graph,
    roots: impl IntoIterator<Item = Vertex>,
) -> (Vec<Vec<Vertex>>, VertexSet, BTreeSet<(Vertex, Vertex)>) {
    const UNSEEN: usize = usize::MAX;
    let bound = g.id_bound();
    let mut disc = vec![UNSEEN; bound];
    let mut low = vec![0usize; bound];
    let mut blocks = Vec::new();
    let mut cuts = VertexSet::new();
    let mut bridges = BTreeSet::new();
    let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();
    let mut time = 0;

    for root in roots {
        if disc[root] != UNSEEN {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        if g.degree(root) == 0 {
            blocks.push(vec![root]);
            continue;
        }
        let mut root_children = 0;
        // (vertex, parent, next neighbor index)
        let mut stack: Vec<(Vertex, Vertex, usize)> = vec![(root, UNSEEN, 0)];
        while let Some(top) = stack.last_mut() {
            let (u, parent) = (top.0, top.1);
            let nbrs = g.neighbors(u);
            if top.2 < nbrs.len() {
                let w = nbrs[top.2];
                top.2 += 1;
                if w == parent {
                    continue;
                }
                if disc[w] == UNSEEN {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    edge_stack.push((u, w));
                    if u == root {
                        root_children += 1;
                    }
                    stack.push((w, u, 0));
                } else if disc[w] < disc[u] {
                    low[u] = low[u].min(disc[w]);
                    edge_stack.push((u, w));
                }
                continue;
            }
            stack.pop();
            if parent == UNSEEN {
                continue;
            }
            low[parent] = low[parent].min(low[u]);
            if low[u] > disc[parent] {
                bridges.insert((parent.min(u), parent.max(u)));
            }
            if low[u] >= disc[parent] {
                if parent != root {
                    cuts.insert(parent);
                }
                let mut block = VertexSet::new();
                while let Some((x, y)) = edge_stack.pop() {
                    block.insert(x);
                    block.insert(y);
                    if (x, y) == (parent, u) {
                        break;
                    }
                }
                blocks.push(block.into_iter().collect());
            }
        }
        if root_children >= 2 {
            cuts.insert(root);
        }
    }
    blocks.sort();
    (blocks, cuts, bridges)
}

/// Components, bridges, blocks and cutvertices plus a degeneracy ordering.
pub fn bridges_and_blocks(g: &Graph) -> StructureReport {
    let (blocks, cutvertices, bridges) = blocks_from(g, g.vertices());
    let (degeneracy_order, degeneracy) = degeneracy_order(g);
    StructureReport {
        components: connected_components(g),
        bridges,
        blocks,
        cutvertices,
        degeneracy_order,
        degeneracy,
    }
}

/// Repeatedly removes a minimum-degree vertex (lowest id on ties).
/// Returns the removal sequence and the largest degree seen at removal.
pub fn degeneracy_order(g: &Graph) -> (Vec<Vertex>, usize) {
    let bound = g.id_bound();
    let mut deg = vec![0usize; bound];
    let mut buckets: Vec<BTreeSet<Vertex>> = Vec::new();
    for v in g.vertices() {
        deg[v] = g.degree(v);
        if buckets.len() <= deg[v] {
            buckets.resize_with(deg[v] + 1, BTreeSet::new);
        }
        buckets[deg[v]].insert(v);
    }
    let mut removed = vec![false; bound];
    let mut order = Vec::with_capacity(g.vertex_count());
    let mut degeneracy = 0;
    let mut d = 0;
    while order.len() < g.vertex_count() {
        while buckets[d].is_empty() {
            d += 1;
        }
        let v = buckets[d].pop_first().unwrap();
        removed[v] = true;
        degeneracy = degeneracy.max(d);
        order.push(v);
        for &w in g.neighbors(v) {
            if !removed[w] {
                buckets[deg[w]].remove(&w);
                deg[w] -= 1;
                buckets[deg[w]].insert(w);
            }
        }
        d = d.saturating_sub(1);
    }
    (order, degeneracy)
}
