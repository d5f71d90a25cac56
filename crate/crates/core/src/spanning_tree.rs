//! Spanning trees grown by leaf expansions.
//!
//! A tree starts at a root and grows by expanding leaves: all neighbors of
//! the leaf outside the tree become its children. Operations:
//!
//! * O1: the leaf has at least two outside neighbors.
//! * O2: the leaf has exactly one outside neighbor `x`, and `x` has no
//!   outside neighbor or at least two tree neighbors.
//! * O3: the leaf has exactly one outside neighbor `x`, and `x` has at least
//!   two outside neighbors; the leaf and then `x` are expanded.
//! * O4: any leaf that is not dead (max leaf strategy only, last resort).
//!
//! [`TreeRecord`] keeps the whole history so the counting identities behind
//! the leaf bounds can be checked on every tree.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::bigis::CycleCollection;
use crate::graph::{self, Graph, Vertex, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// O1 before O2/O3, most recently inserted leaf first.
    Generic,
    /// O1 with the most outside neighbors, then most recently inserted.
    Branching,
    /// Generic order on the unfiltered graph, with O4 as fallback.
    MaxLeaf,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Generic => "generic",
            Strategy::Branching => "branching",
            Strategy::MaxLeaf => "maxleaf",
        })
    }
}

impl FromStr for Strategy {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "generic" => Ok(Strategy::Generic),
            "branching" => Ok(Strategy::Branching),
            "maxleaf" => Ok(Strategy::MaxLeaf),
            _ => Err(TreeError::Parse(format!("unknown strategy `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    O1,
    O2,
    O3,
    O4,
}

impl Op {
    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O{}", self.index() + 1)
    }
}

impl FromStr for Op {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "O1" => Ok(Op::O1),
            "O2" => Ok(Op::O2),
            "O3" => Ok(Op::O3),
            "O4" => Ok(Op::O4),
            _ => Err(TreeError::Parse(format!("unknown operation `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("graph is empty")]
    Empty,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("root {0} is not a vertex of the graph")]
    BadRoot(Vertex),
    #[error("no operation applies; 2-vertex separator witness {witness:?}")]
    Stalled { witness: VertexSet },
    #[error("tree record is inconsistent: {0}")]
    Integrity(String),
    #[error("invalid cycle collection: {0}")]
    InvalidCycles(String),
    #[error("cannot parse tree record: {0}")]
    Parse(String),
}

/// One expansion: `vertex` gains the children `added`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion {
    pub op: Op,
    pub vertex: Vertex,
    pub added: Vec<Vertex>,
}

/// Maximal segment of consecutive expansions that each add at least two
/// children, listed in expansion order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Run {
    pub vertices: Vec<Vertex>,
}

/// A spanning tree with its construction history.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeRecord {
    pub strategy: Strategy,
    pub root: Vertex,
    /// Indexed by vertex id; `None` for the root and ids outside the graph.
    pub parent: Vec<Option<Vertex>>,
    pub insertion: Vec<Option<usize>>,
    /// Vertices in insertion order.
    pub order: Vec<Vertex>,
    pub expansions: Vec<Expansion>,
    /// Childless vertices.
    pub leaves: VertexSet,
    /// Number of completed expansions when the leaf became dead.
    pub dead_at: Vec<Option<usize>>,
    /// O2-expanded vertex → the dead leaf assigned to it.
    pub assignment: BTreeMap<Vertex, Vertex>,
    pub unassigned: VertexSet,
    pub children: Vec<usize>,
    pub runs: Vec<Run>,
}

/// Plain spanning tree given by its edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(Vertex, Vertex)>,
}

impl SpanningTree {
    pub fn new(mut vertices: Vec<Vertex>, edges: Vec<(Vertex, Vertex)>) -> Self {
        vertices.sort_unstable();
        let mut edges: Vec<_> = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        edges.sort_unstable();
        SpanningTree { vertices, edges }
    }

    fn degrees(&self) -> BTreeMap<Vertex, usize> {
        let mut deg: BTreeMap<Vertex, usize> = self.vertices.iter().map(|&v| (v, 0)).collect();
        for &(u, v) in &self.edges {
            *deg.entry(u).or_default() += 1;
            *deg.entry(v).or_default() += 1;
        }
        deg
    }

    /// Vertices of tree degree at most 1; a lone vertex is a leaf.
    pub fn leaves(&self) -> VertexSet {
        self.degrees()
            .into_iter()
            .filter(|&(_, d)| d <= 1)
            .map(|(v, _)| v)
            .collect()
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves().len()
    }

    /// Whether the edges form a spanning tree of `g` using only edges of `g`.
    pub fn is_spanning_tree_of(&self, g: &Graph) -> bool {
        let vs: Vec<Vertex> = g.vertices().collect();
        if vs != self.vertices || vs.is_empty() || self.edges.len() != vs.len() - 1 {
            return false;
        }
        let mut h = Graph::new(g.id_bound());
        for &(u, v) in &self.edges {
            if !g.has_edge(u, v) || !matches!(h.add_edge(u, v), Ok(true)) {
                return false;
            }
        }
        let set: VertexSet = vs.into_iter().collect();
        graph::induces_connected(&h, &set)
    }
}

struct Growth<'a> {
    g: &'a Graph,
    branching: bool,
    in_tree: Vec<bool>,
    expanded: Vec<bool>,
    out: Vec<usize>,
    inn: Vec<usize>,
    parent: Vec<Option<Vertex>>,
    insertion: Vec<Option<usize>>,
    order: Vec<Vertex>,
    dead_at: Vec<Option<usize>>,
    expansions: Vec<Expansion>,
    assignment: BTreeMap<Vertex, Vertex>,
    sole_out: Vec<Option<Vertex>>,
    o1: BTreeSet<(usize, usize, Vertex)>,
    o1_key: Vec<Option<(usize, usize)>>,
    ready: BTreeSet<(usize, Vertex)>,
    alive: BTreeSet<(usize, Vertex)>,
    dirty: Vec<Vertex>,
    newly_dead: Vec<Vertex>,
}

impl<'a> Growth<'a> {
    fn new(g: &'a Graph, branching: bool, root: Vertex) -> Self {
        let bound = g.id_bound();
        let mut out = vec![0; bound];
        for v in g.vertices() {
            out[v] = g.degree(v);
        }
        let mut s = Growth {
            g,
            branching,
            in_tree: vec![false; bound],
            expanded: vec![false; bound],
            out,
            inn: vec![0; bound],
            parent: vec![None; bound],
            insertion: vec![None; bound],
            order: Vec::new(),
            dead_at: vec![None; bound],
            expansions: Vec::new(),
            assignment: BTreeMap::new(),
            sole_out: vec![None; bound],
            o1: BTreeSet::new(),
            o1_key: vec![None; bound],
            ready: BTreeSet::new(),
            alive: BTreeSet::new(),
            dirty: Vec::new(),
            newly_dead: Vec::new(),
        };
        s.insert(root, None);
        s.flush();
        s
    }

    fn spans(&self) -> bool {
        self.order.len() == self.g.vertex_count()
    }

    fn blocked(&self, x: Vertex) -> bool {
        self.inn[x] == 1 && self.out[x] == 1
    }

    fn insert(&mut self, y: Vertex, parent: Option<Vertex>) {
        self.in_tree[y] = true;
        self.parent[y] = parent;
        self.insertion[y] = Some(self.order.len());
        self.order.push(y);
        for &w in self.g.neighbors(y) {
            self.out[w] -= 1;
            self.inn[w] += 1;
            if self.in_tree[w] {
                if !self.expanded[w] {
                    self.dirty.push(w);
                    if self.out[w] == 0 {
                        self.newly_dead.push(w);
                    }
                }
            } else if self.inn[w] == 2 {
                if let Some(&earlier) = self.g.neighbors(w).iter().find(|&&z| z != y && self.in_tree[z]) {
                    self.dirty.push(earlier);
                }
            }
        }
        self.dirty.push(y);
        if self.out[y] == 0 {
            self.newly_dead.push(y);
        }
    }

    fn unlist(&mut self, v: Vertex) {
        if let Some((a, b)) = self.o1_key[v].take() {
            self.o1.remove(&(a, b, v));
        }
        if let Some(i) = self.insertion[v] {
            self.ready.remove(&(i, v));
            self.alive.remove(&(i, v));
        }
    }

    fn refresh(&mut self, v: Vertex) {
        self.unlist(v);
        if !self.in_tree[v] || self.expanded[v] {
            return;
        }
        let i = self.insertion[v].unwrap();
        let out = self.out[v];
        if out >= 2 {
            let key = (if self.branching { out } else { 0 }, i);
            self.o1.insert((key.0, key.1, v));
            self.o1_key[v] = Some(key);
        }
        if out >= 1 {
            self.alive.insert((i, v));
        }
        if out == 1 {
            let x = match self.sole_out[v] {
                Some(x) => x,
                None => {
                    let x = *self
                        .g
                        .neighbors(v)
                        .iter()
                        .find(|&&w| !self.in_tree[w])
                        .expect("out count is stale");
                    self.sole_out[v] = Some(x);
                    x
                }
            };
            if !self.blocked(x) {
                self.ready.insert((i, v));
            }
        }
    }

    fn flush(&mut self) {
        let step = self.expansions.len();
        for v in std::mem::take(&mut self.newly_dead) {
            if !self.expanded[v] {
                self.dead_at[v] = Some(step);
            }
        }
        while let Some(v) = self.dirty.pop() {
            self.refresh(v);
        }
    }

    /// Expands the leaf `v`; returns the leaves that died during it.
    fn expand(&mut self, v: Vertex, op: Op) -> Vec<Vertex> {
        self.expanded[v] = true;
        self.unlist(v);
        let added: Vec<Vertex> = self
            .g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| !self.in_tree[w])
            .collect();
        for &y in &added {
            self.insert(y, Some(v));
        }
        self.expansions.push(Expansion { op, vertex: v, added });
        let died: Vec<Vertex> = self.newly_dead.iter().copied().filter(|&w| !self.expanded[w]).collect();
        self.flush();
        died
    }

    fn expand_o2(&mut self, v: Vertex) -> Result<(), TreeError> {
        let died = self.expand(v, Op::O2);
        let x = *self
            .expansions
            .last()
            .unwrap()
            .added
            .first()
            .ok_or_else(|| TreeError::Integrity(format!("O2 at {v} added nothing")))?;
        let assigned = if died.contains(&x) {
            x
        } else {
            *died
                .iter()
                .min_by_key(|&&w| self.insertion[w])
                .ok_or_else(|| TreeError::Integrity(format!("O2 at {v} killed no leaf")))?
        };
        self.assignment.insert(v, assigned);
        Ok(())
    }

    fn finish(self, strategy: Strategy, root: Vertex) -> TreeRecord {
        let bound = self.g.id_bound();
        let mut children = vec![0; bound];
        for e in &self.expansions {
            children[e.vertex] = e.added.len();
        }
        let leaves: VertexSet = self.order.iter().copied().filter(|&v| !self.expanded[v]).collect();
        let assigned: VertexSet = self.assignment.values().copied().collect();
        let unassigned = leaves.difference(&assigned).copied().collect();
        let mut runs = Vec::new();
        let mut current: Vec<Vertex> = Vec::new();
        for e in &self.expansions {
            if e.added.len() >= 2 {
                current.push(e.vertex);
            } else if !current.is_empty() {
                runs.push(Run {
                    vertices: std::mem::take(&mut current),
                });
            }
        }
        if !current.is_empty() {
            runs.push(Run { vertices: current });
        }
        TreeRecord {
            strategy,
            root,
            parent: self.parent,
            insertion: self.insertion,
            order: self.order,
            expansions: self.expansions,
            leaves,
            dead_at: self.dead_at,
            assignment: self.assignment,
            unassigned,
            children,
            runs,
        }
    }
}

/// `g` without edges joining two 2-vertices. A cycle is left intact, since
/// filtering would disconnect it.
fn filter_twos(g: &Graph) -> Graph {
    let mut h = g.clone();
    if g.vertices().all(|v| g.degree(v) == 2) {
        return h;
    }
    for (u, v) in g.edges() {
        if g.degree(u) == 2 && g.degree(v) == 2 {
            h.remove_edge(u, v);
        }
    }
    h
}

fn working_graph(g: &Graph, strategy: Strategy) -> Graph {
    match strategy {
        Strategy::Generic | Strategy::Branching => filter_twos(g),
        Strategy::MaxLeaf => g.clone(),
    }
}

/// Builds a spanning tree rooted at the lowest vertex id.
pub fn build_spanning_tree(g: &Graph, strategy: Strategy) -> Result<TreeRecord, TreeError> {
    let root = g.vertices().next().ok_or(TreeError::Empty)?;
    build_spanning_tree_from(g, strategy, root)
}

pub fn build_spanning_tree_from(g: &Graph, strategy: Strategy, root: Vertex) -> Result<TreeRecord, TreeError> {
    if !g.contains(root) {
        return Err(TreeError::BadRoot(root));
    }
    if !graph::is_connected(g) {
        return Err(TreeError::Disconnected);
    }
    let work = working_graph(g, strategy);
    let mut s = Growth::new(&work, strategy == Strategy::Branching, root);
    while !s.spans() {
        if let Some(&(_, _, v)) = s.o1.last() {
            s.expand(v, Op::O1);
        } else if let Some(&(_, v)) = s.ready.last() {
            let x = s.sole_out[v].unwrap();
            if s.out[x] == 0 || s.inn[x] >= 2 {
                s.expand_o2(v)?;
            } else {
                s.expand(v, Op::O3);
                s.expand(x, Op::O3);
            }
        } else if strategy == Strategy::MaxLeaf && !s.alive.is_empty() {
            let &(_, v) = s.alive.last().unwrap();
            s.expand(v, Op::O4);
        } else {
            let witness: VertexSet = s
                .order
                .iter()
                .flat_map(|&v| g.neighbors(v).iter().copied())
                .filter(|&w| !s.in_tree[w])
                .collect();
            return Err(TreeError::Stalled { witness });
        }
    }
    Ok(s.finish(strategy, root))
}

/// Counts read off a [`TreeRecord`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeStats {
    pub n: usize,
    pub leaves: usize,
    /// `|X1|..|X4|`.
    pub x: [usize; 4],
    /// `d → |P_d|` for `d ≥ 1`.
    pub p: BTreeMap<usize, usize>,
    pub x3_p1: usize,
    pub x3_p2: usize,
    pub unassigned: usize,
    pub runs: Vec<RunStats>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunStats {
    pub len: usize,
    pub p3: usize,
    pub x3: usize,
    pub ch: usize,
}

impl TreeStats {
    /// `Σ_{d≥2} d·|P_d|`.
    pub fn branching_children(&self) -> usize {
        self.p.iter().filter(|(&d, _)| d >= 2).map(|(&d, &c)| d * c).sum()
    }

    /// `|L_u| + Σ_{d≥2} (2d-3)|P_d| - |X3 ∩ P≥2|`, the budget for cycles.
    pub fn surplus(&self) -> i64 {
        let weighted: i64 = self
            .p
            .iter()
            .filter(|(&d, _)| d >= 2)
            .map(|(&d, &c)| (2 * d as i64 - 3) * c as i64)
            .sum();
        self.unassigned as i64 + weighted - self.x3_p2 as i64
    }

    /// `|X2| ≤ |L|`, `|X3 ∩ P≥2| ≤ |L| - 1` and `|X4| ≤ |X3 ∩ P1|`.
    pub fn check_bounds(&self) -> Result<(), TreeError> {
        let fail = |what: String| Err(TreeError::Integrity(what));
        if self.x[1] > self.leaves {
            return fail(format!("|X2| = {} > |L| = {}", self.x[1], self.leaves));
        }
        if self.x3_p2 + 1 > self.leaves {
            return fail(format!("|X3∩P≥2| = {} ≥ |L| = {}", self.x3_p2, self.leaves));
        }
        if self.x[3] > self.x3_p1 {
            return fail(format!("|X4| = {} > |X3∩P1| = {}", self.x[3], self.x3_p1));
        }
        Ok(())
    }
}

/// Recomputes all counts and checks the counting identities.
pub fn tree_stats(t: &TreeRecord) -> Result<TreeStats, TreeError> {
    let fail = |what: String| Err(TreeError::Integrity(what));
    let n = t.order.len();
    let mut x = [0usize; 4];
    let mut p: BTreeMap<usize, usize> = BTreeMap::new();
    let (mut x3_p1, mut x3_p2) = (0, 0);
    let mut seen = VertexSet::new();
    for e in &t.expansions {
        if !seen.insert(e.vertex) {
            return fail(format!("{} expanded twice", e.vertex));
        }
        if e.added.is_empty() {
            return fail(format!("expansion of {} added nothing", e.vertex));
        }
        if t.children[e.vertex] != e.added.len() {
            return fail(format!("child count of {} is stale", e.vertex));
        }
        x[e.op.index()] += 1;
        *p.entry(e.added.len()).or_default() += 1;
        if e.op == Op::O3 {
            if e.added.len() == 1 {
                x3_p1 += 1;
            } else {
                x3_p2 += 1;
            }
        }
        let one_child = matches!(e.op, Op::O2 | Op::O4);
        if one_child && e.added.len() != 1 || e.op == Op::O1 && e.added.len() < 2 {
            return fail(format!("{} at {} has {} children", e.op, e.vertex, e.added.len()));
        }
    }
    let inner = seen.len();
    if inner + t.leaves.len() != n || t.leaves.iter().any(|v| seen.contains(v)) {
        return fail("inner vertices and leaves do not partition the tree".into());
    }
    let p1 = p.get(&1).copied().unwrap_or(0);
    if p1 != x[1] + x3_p1 + x[3] {
        return fail("vertices with one child are not X2 ∪ (X3∩P1) ∪ X4".into());
    }
    let stats = TreeStats {
        n,
        leaves: t.leaves.len(),
        x,
        p,
        x3_p1,
        x3_p2,
        unassigned: t.unassigned.len(),
        runs: run_stats(t),
    };
    let d_sum = stats.branching_children();
    if n > 0 && x[1] + x3_p1 + x[3] + d_sum != n - 1 {
        return fail("|X2| + |X3∩P1| + |X4| + Σ d|P_d| ≠ n - 1".into());
    }
    if x[3] == 0 {
        if x3_p1 != x3_p2 {
            return fail("|X3∩P1| ≠ |X3∩P≥2|".into());
        }
        if n > 0 && x[1] + x3_p2 + d_sum != n - 1 {
            return fail("|X2| + |X3∩P≥2| + Σ d|P_d| ≠ n - 1".into());
        }
        let lhs = 4 * stats.leaves as i64;
        let rhs = n as i64 + 2 + stats.surplus();
        if n > 1 && lhs != rhs {
            return fail(format!("4|L| = {lhs} but n + 2 + surplus = {rhs}"));
        }
    }
    if x[1] + stats.unassigned != stats.leaves {
        return fail("|X2| ≠ |L| - |L_u|".into());
    }
    let assigned: VertexSet = t.assignment.values().copied().collect();
    if assigned.len() != t.assignment.len() || !assigned.is_subset(&t.leaves) {
        return fail("assigned leaves are not distinct leaves".into());
    }
    Ok(stats)
}

fn run_stats(t: &TreeRecord) -> Vec<RunStats> {
    let op_of: BTreeMap<Vertex, Op> = t.expansions.iter().map(|e| (e.vertex, e.op)).collect();
    t.runs
        .iter()
        .map(|r| {
            let members: VertexSet = r.vertices.iter().copied().collect();
            RunStats {
                len: r.vertices.len(),
                p3: r.vertices.iter().filter(|&&v| t.children[v] >= 3).count(),
                x3: r.vertices.iter().filter(|v| op_of[v] == Op::O3).count(),
                ch: r.vertices.iter().map(|&v| t.children[v]).sum::<usize>() - (members.len() - 1),
            }
        })
        .collect()
}

/// Result of a leaf-count lower bound check: `holds ⇔ lhs ≥ rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LeafBound {
    pub holds: bool,
    pub lhs: i64,
    pub rhs: i64,
}

impl LeafBound {
    pub fn margin(&self) -> i64 {
        self.lhs - self.rhs
    }
}

/// `4|L| ≥ n + 3|C|` (branching), `4|L| ≥ n` (generic) or `5|L| ≥ n`
/// (max leaf). `cycles` must be vertex-disjoint cycles of `g[L(T)]`.
pub fn leaf_bound_check(g: &Graph, t: &TreeRecord, cycles: &CycleCollection) -> Result<LeafBound, TreeError> {
    cycles
        .validate(g)
        .map_err(|e| TreeError::InvalidCycles(e.to_string()))?;
    if let Some(v) = cycles.vertices().find(|v| !t.leaves.contains(v)) {
        return Err(TreeError::InvalidCycles(format!("{v} is not a leaf")));
    }
    let n = t.order.len() as i64;
    let l = t.leaves.len() as i64;
    let (lhs, rhs) = match t.strategy {
        Strategy::Branching => (4 * l, n + 3 * cycles.len() as i64),
        Strategy::Generic => (4 * l, n),
        Strategy::MaxLeaf => (5 * l, n),
    };
    Ok(LeafBound {
        holds: lhs >= rhs,
        lhs,
        rhs,
    })
}

impl TreeRecord {
    pub fn vertex_count(&self) -> usize {
        self.order.len()
    }

    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        self.order
            .iter()
            .filter_map(|&v| self.parent[v].map(|p| (p.min(v), p.max(v))))
            .collect()
    }

    pub fn to_spanning_tree(&self) -> SpanningTree {
        SpanningTree::new(self.order.clone(), self.edges())
    }

    /// Checks that parent links form a spanning tree of `g`.
    pub fn check_spans(&self, g: &Graph) -> Result<(), TreeError> {
        if self.to_spanning_tree().is_spanning_tree_of(g) {
            Ok(())
        } else {
            Err(TreeError::Integrity("parent links are not a spanning tree".into()))
        }
    }

    /// Every vertex of a run except the first has its parent in the run.
    pub fn check_runs(&self) -> Result<(), TreeError> {
        for (i, r) in self.runs.iter().enumerate() {
            let members: VertexSet = r.vertices.iter().copied().collect();
            for &v in &r.vertices[1..] {
                if !self.parent[v].is_some_and(|p| members.contains(&p)) {
                    return Err(TreeError::Integrity(format!(
                        "run {i} is not a subtree: parent of {v} lies outside"
                    )));
                }
            }
        }
        Ok(())
    }

    fn run_of(&self) -> BTreeMap<Vertex, usize> {
        self.runs
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.vertices.iter().map(move |&v| (v, i)))
            .collect()
    }

    /// The run whose subtree has the earliest inserted vertex of `cycle`
    /// among its children.
    pub fn opening_run(&self, cycle: &[Vertex]) -> Option<usize> {
        let first = *cycle.iter().min_by_key(|&&v| self.insertion[v])?;
        let run_of = self.run_of();
        let p = self.parent[first]?;
        run_of
            .get(&p)
            .copied()
            .filter(|&i| !self.runs[i].vertices.contains(&first))
    }

    /// Per run `R`: `|L_u ∩ V(C_R)| + Σ(2d-3)|R∩P_d| - |R∩X3| - 3|C_R|`,
    /// where `C_R` are the cycles opened by `R`. `None` if a cycle is not
    /// opened by any run.
    pub fn run_slack(&self, cycles: &CycleCollection) -> Option<Vec<i64>> {
        let op_of: BTreeMap<Vertex, Op> = self.expansions.iter().map(|e| (e.vertex, e.op)).collect();
        let mut slack: Vec<i64> = self
            .runs
            .iter()
            .map(|r| {
                r.vertices
                    .iter()
                    .map(|&v| {
                        let d = self.children[v] as i64;
                        2 * d - 3 - i64::from(op_of[&v] == Op::O3)
                    })
                    .sum()
            })
            .collect();
        for c in cycles.cycles() {
            let r = self.opening_run(c)?;
            let free = c.iter().filter(|v| self.unassigned.contains(v)).count() as i64;
            slack[r] += free - 3;
        }
        Some(slack)
    }

    /// Parent array plus expansion log, one item per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("strategy {}\nroot {}\n", self.strategy, self.root);
        for &v in &self.order {
            if let Some(p) = self.parent[v] {
                s.push_str(&format!("p {v} {p}\n"));
            }
        }
        for e in &self.expansions {
            s.push_str(&format!("x {} {}", e.op, e.vertex));
            for a in &e.added {
                s.push_str(&format!(" {a}"));
            }
            s.push('\n');
        }
        s
    }

    /// Parses [`TreeRecord::to_text`] output and rebuilds the record by
    /// replaying the expansion log on `g`.
    pub fn from_text(g: &Graph, text: &str) -> Result<TreeRecord, TreeError> {
        let bad = |line: &str| TreeError::Parse(line.to_string());
        let mut strategy = None;
        let mut root = None;
        let mut parents = BTreeMap::new();
        let mut log = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let words: Vec<&str> = line.split_whitespace().collect();
            let num = |w: &str| w.parse::<Vertex>().map_err(|_| bad(line));
            match words[0] {
                "strategy" if words.len() == 2 => strategy = Some(words[1].parse()?),
                "root" if words.len() == 2 => root = Some(num(words[1])?),
                "p" if words.len() == 3 => {
                    parents.insert(num(words[1])?, num(words[2])?);
                }
                "x" if words.len() >= 3 => log.push(Expansion {
                    op: words[1].parse()?,
                    vertex: num(words[2])?,
                    added: words[3..].iter().map(|w| num(w)).collect::<Result<_, _>>()?,
                }),
                _ => return Err(bad(line)),
            }
        }
        let strategy = strategy.ok_or_else(|| bad("missing strategy"))?;
        let root = root.ok_or_else(|| bad("missing root"))?;
        let t = replay(g, strategy, root, &log)?;
        let rebuilt: BTreeMap<Vertex, Vertex> = t.order.iter().filter_map(|&v| t.parent[v].map(|p| (v, p))).collect();
        if rebuilt != parents {
            return Err(TreeError::Integrity("parent array disagrees with the log".into()));
        }
        Ok(t)
    }
}

/// Rebuilds a record from an expansion log, checking that each logged
/// expansion is legal for its operation type.
pub fn replay(g: &Graph, strategy: Strategy, root: Vertex, log: &[Expansion]) -> Result<TreeRecord, TreeError> {
    if !g.contains(root) {
        return Err(TreeError::BadRoot(root));
    }
    let work = working_graph(g, strategy);
    let mut s = Growth::new(&work, strategy == Strategy::Branching, root);
    let fail = |i: usize, what: &str| Err(TreeError::Integrity(format!("log entry {i}: {what}")));
    let mut i = 0;
    while i < log.len() {
        let e = &log[i];
        let v = e.vertex;
        if !work.contains(v) || !s.in_tree[v] || s.expanded[v] {
            return fail(i, "expanded vertex is not a leaf");
        }
        let outside: Vec<Vertex> = work.neighbors(v).iter().copied().filter(|&w| !s.in_tree[w]).collect();
        if outside != e.added {
            return fail(i, "added vertices differ from the outside neighbors");
        }
        match e.op {
            Op::O1 if outside.len() >= 2 => {
                s.expand(v, Op::O1);
            }
            Op::O2 if outside.len() == 1 && (s.out[outside[0]] == 0 || s.inn[outside[0]] >= 2) => {
                s.expand_o2(v)?;
            }
            Op::O3 if outside.len() == 1 && s.out[outside[0]] >= 2 => {
                let x = outside[0];
                if log.get(i + 1).is_none_or(|n| n.op != Op::O3 || n.vertex != x) {
                    return fail(i, "O3 must be followed by the expansion of x");
                }
                s.expand(v, Op::O3);
                let next = &log[i + 1];
                s.expand(x, Op::O3);
                if s.expansions.last().unwrap().added != next.added {
                    return fail(i + 1, "added vertices differ from the outside neighbors");
                }
                i += 1;
            }
            Op::O4 if strategy == Strategy::MaxLeaf && !outside.is_empty() => {
                s.expand(v, Op::O4);
            }
            _ => return fail(i, "operation preconditions do not hold"),
        }
        i += 1;
    }
    if !s.spans() {
        return Err(TreeError::Integrity("log does not span the graph".into()));
    }
    Ok(s.finish(strategy, root))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    fn hub3(k: usize) -> Graph {
        let n = 3 * k;
        let mut edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        for i in 0..k {
            for j in 0..3 {
                edges.push((n + i, 3 * i + j));
            }
        }
        graph(4 * k, &edges)
    }

    fn hub4(k: usize) -> Graph {
        let n = 4 * k;
        let mut edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        for i in 0..k {
            for j in 1..4 {
                edges.push((n + i, 4 * i + j));
            }
        }
        graph(5 * k, &edges)
    }

    fn star(leaves: usize) -> Graph {
        graph(leaves + 1, &(1..=leaves).map(|i| (0, i)).collect::<Vec<_>>())
    }

    #[test]
    fn k3_branching() {
        let g = graph(3, &[(0, 1), (1, 2), (2, 0)]);
        let t = build_spanning_tree(&g, Strategy::Branching).unwrap();
        assert_eq!(
            t.expansions,
            vec![Expansion {
                op: Op::O1,
                vertex: 0,
                added: vec![1, 2]
            }]
        );
        assert_eq!(t.leaves, VertexSet::from([1, 2]));
        let s = tree_stats(&t).unwrap();
        assert_eq!(s.x, [1, 0, 0, 0]);
        assert_eq!(s.p, BTreeMap::from([(2, 1)]));
        let b = leaf_bound_check(&g, &t, &CycleCollection::default()).unwrap();
        assert!(b.holds);
        assert_eq!((b.lhs, b.rhs), (8, 3));
    }

    #[test]
    fn star_is_one_expansion() {
        let t = build_spanning_tree(&star(5), Strategy::Branching).unwrap();
        let s = tree_stats(&t).unwrap();
        assert_eq!(s.leaves, 5);
        assert_eq!(s.branching_children(), 5);
        assert_eq!(t.expansions.len(), 1);
    }

    #[test]
    fn single_vertex_is_a_leaf() {
        let t = build_spanning_tree(&Graph::new(1), Strategy::Generic).unwrap();
        assert_eq!(t.leaves, VertexSet::from([0]));
        assert_eq!(t.dead_at[0], Some(0));
        tree_stats(&t).unwrap();
    }

    #[test]
    fn hub3_branching_meets_quarter_bound() {
        let g = hub3(2);
        let t = build_spanning_tree(&g, Strategy::Branching).unwrap();
        t.check_spans(&g).unwrap();
        assert!(4 * t.leaves.len() >= 8);
        let best = oracle::max_leaf_bruteforce(&g).unwrap().optimum;
        assert!(t.to_spanning_tree().leaf_count() <= best);
        tree_stats(&t).unwrap().check_bounds().unwrap();
        t.check_runs().unwrap();
    }

    #[test]
    fn hub4_maxleaf_strategy() {
        let g = hub4(1);
        let t = build_spanning_tree(&g, Strategy::MaxLeaf).unwrap();
        t.check_spans(&g).unwrap();
        assert!(t.leaves.len() >= 2);
        assert!(5 * t.leaves.len() > g.vertex_count());
        let s = tree_stats(&t).unwrap();
        s.check_bounds().unwrap();
    }

    #[test]
    fn o4_is_used_on_long_cycles_with_hubs() {
        let g = hub4(3);
        let t = build_spanning_tree(&g, Strategy::MaxLeaf).unwrap();
        t.check_spans(&g).unwrap();
        let s = tree_stats(&t).unwrap();
        s.check_bounds().unwrap();
        assert!(5 * s.leaves >= s.n);
    }

    #[test]
    fn stall_reports_separator() {
        // two triangles joined by a path of 2-vertices: the filter cuts it
        let g = graph(
            8,
            &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (6, 0), (6, 7), (7, 3)],
        );
        match build_spanning_tree(&g, Strategy::Generic) {
            Err(TreeError::Stalled { witness }) => assert_eq!(witness, VertexSet::from([7])),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn text_roundtrip_replays() {
        for g in [hub3(2), hub4(2), star(4)] {
            for strategy in [Strategy::Generic, Strategy::Branching, Strategy::MaxLeaf] {
                let t = build_spanning_tree(&g, strategy).unwrap();
                let back = TreeRecord::from_text(&g, &t.to_text()).unwrap();
                assert_eq!(back, t);
            }
        }
    }

    #[test]
    fn invalid_cycles_rejected() {
        let g = graph(3, &[(0, 1), (1, 2), (2, 0)]);
        let t = build_spanning_tree(&g, Strategy::Branching).unwrap();
        let c = CycleCollection::new(vec![vec![0, 1, 2]]);
        assert!(matches!(leaf_bound_check(&g, &t, &c), Err(TreeError::InvalidCycles(_))));
    }
}
