//! Reduction rules: the separator rule in vertex-cover and independent-set
//! form, its exhaustive application, NSIS preprocessing and the max leaf rules.
//!
//! Every rule application is recorded as a [`Step`]. A [`ReductionTrace`] can
//! be replayed on the input instance and used to lift solutions of the reduced
//! instance back to the input.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{self, Graph, GraphError, Vertex, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Problem {
    Nsis,
    Cvc,
    MaxLeaf,
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Problem::Nsis => "nsis",
            Problem::Cvc => "cvc",
            Problem::MaxLeaf => "maxleaf",
        })
    }
}

impl FromStr for Problem {
    type Err = ReductionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "nsis" => Ok(Problem::Nsis),
            "cvc" => Ok(Problem::Cvc),
            "maxleaf" => Ok(Problem::MaxLeaf),
            other => Err(ReductionError::UnknownProblem(other.to_string())),
        }
    }
}

/// A graph, a problem and its parameter (`ℓ` for NSIS, `k` otherwise).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub problem: Problem,
    pub parameter: i64,
}

impl Instance {
    pub fn new(graph: Graph, problem: Problem, parameter: i64) -> Self {
        Instance {
            graph,
            problem,
            parameter,
        }
    }

    /// The same question asked of the dual problem: NSIS `ℓ` ⇔ CVC `n - ℓ`.
    pub fn dual(&self) -> Option<Instance> {
        let n = self.graph.vertex_count() as i64;
        let problem = match self.problem {
            Problem::Nsis => Problem::Cvc,
            Problem::Cvc => Problem::Nsis,
            Problem::MaxLeaf => return None,
        };
        Some(Instance::new(self.graph.clone(), problem, n - self.parameter))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("expected a {expected} instance, got {found}")]
    WrongProblem { expected: Problem, found: Problem },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("invalid separator: {0}")]
    InvalidSeparator(String),
    #[error("unknown problem `{0}`")]
    UnknownProblem(String),
    #[error("cannot parse trace step `{0}`")]
    ParseStep(String),
    #[error("replay of step {index} (`{step}`) failed: {reason}")]
    Replay { index: usize, step: String, reason: String },
    #[error("reduction stalled with a degree-2 separator still present")]
    Stalled,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// One rule application.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    /// An isolated vertex is dropped and moved into the independent set.
    DropIsolated { vertex: Vertex },
    /// Separator rule with a 1-vertex endpoint: `removed` hangs off the
    /// separator vertex `via`, whose other neighbor is `other`.
    /// `k_decrease` is 0 when `other` is also a 1-vertex, 1 otherwise.
    SeparatorRemove {
        removed: Vertex,
        via: Vertex,
        other: Vertex,
        k_decrease: u8,
    },
    /// Separator rule contracting `a-v-b` into `merged`.
    SeparatorContract {
        a: Vertex,
        v: Vertex,
        b: Vertex,
        merged: Vertex,
    },
    /// A 1-vertex `leaf` adjacent to the 2-vertex `via` is removed.
    PendantRemove { leaf: Vertex, via: Vertex },
    /// Bridge `uv` between 2-vertices contracted into `merged`.
    BridgeContract {
        u: Vertex,
        v: Vertex,
        u_other: Vertex,
        v_other: Vertex,
        merged: Vertex,
    },
    /// Non-bridge edge `uv` between 2-vertices removed.
    EdgeRemove { u: Vertex, v: Vertex },
}

impl Step {
    pub fn rule(&self) -> &'static str {
        match self {
            Step::DropIsolated { .. } => "drop-isolated",
            Step::SeparatorRemove { .. } => "separator-remove",
            Step::SeparatorContract { .. } => "separator-contract",
            Step::PendantRemove { .. } => "pendant-remove",
            Step::BridgeContract { .. } => "bridge-contract",
            Step::EdgeRemove { .. } => "edge-remove",
        }
    }

    /// Change in the number of vertices.
    pub fn vertex_delta(&self) -> i64 {
        match self {
            Step::DropIsolated { .. } | Step::SeparatorRemove { .. } => -1,
            Step::SeparatorContract { .. } => -2,
            Step::PendantRemove { .. } | Step::BridgeContract { .. } => -1,
            Step::EdgeRemove { .. } => 0,
        }
    }

    /// Change of the connected vertex cover parameter `k`.
    pub fn cvc_delta(&self) -> i64 {
        match self {
            Step::SeparatorRemove { k_decrease, .. } => -i64::from(*k_decrease),
            Step::SeparatorContract { .. } => -2,
            _ => 0,
        }
    }

    /// Change of the NSIS parameter, `ℓ = n - k`.
    pub fn nsis_delta(&self) -> i64 {
        self.vertex_delta() - self.cvc_delta()
    }

    fn parameter_delta(&self, problem: Problem) -> i64 {
        match problem {
            Problem::Nsis => self.nsis_delta(),
            Problem::Cvc => self.cvc_delta(),
            Problem::MaxLeaf => 0,
        }
    }

    /// Performs the step on `g`, checking that it applies.
    pub fn apply(&self, g: &mut Graph) -> Result<(), String> {
        let need = |ok: bool, what: &str| if ok { Ok(()) } else { Err(what.to_string()) };
        let live = |g: &Graph, vs: &[Vertex]| vs.iter().all(|&v| g.contains(v));
        match *self {
            Step::DropIsolated { vertex } => {
                need(live(g, &[vertex]) && g.degree(vertex) == 0, "vertex is not isolated")?;
                g.remove_vertex(vertex).map_err(|e| e.to_string())?;
            }
            Step::SeparatorRemove {
                removed,
                via,
                other,
                k_decrease,
            } => {
                need(live(g, &[removed, via, other]), "vertex missing")?;
                need(g.degree(removed) == 1, "removed vertex is not a 1-vertex")?;
                need(sorted_pair(removed, other) == g.neighbors(via), "bad separator vertex")?;
                let expected = u8::from(g.degree(other) >= 2);
                need(k_decrease == expected, "parameter change does not match degrees")?;
                g.remove_vertex(removed).map_err(|e| e.to_string())?;
            }
            Step::SeparatorContract { a, v, b, merged } => {
                need(merged == g.id_bound(), "fresh id mismatch")?;
                need(
                    live(g, &[a, b]) && g.degree(a) >= 2 && g.degree(b) >= 2,
                    "endpoint degree",
                )?;
                g.contract_path(a, v, b).map_err(|e| e.to_string())?;
            }
            Step::PendantRemove { leaf, via } => {
                need(live(g, &[leaf, via]), "vertex missing")?;
                need(g.neighbors(leaf) == [via] && g.degree(via) == 2, "not a (1,2) pair")?;
                g.remove_vertex(leaf).map_err(|e| e.to_string())?;
            }
            Step::BridgeContract {
                u,
                v,
                u_other,
                v_other,
                merged,
            } => {
                need(merged == g.id_bound(), "fresh id mismatch")?;
                need(live(g, &[u, v]), "vertex missing")?;
                need(g.neighbors(u) == sorted_pair(v, u_other), "bad neighbors of u")?;
                need(g.neighbors(v) == sorted_pair(u, v_other), "bad neighbors of v")?;
                need(is_bridge_between_twos(g, u, v), "edge is not a bridge")?;
                g.merge_vertices(&[u, v]).map_err(|e| e.to_string())?;
            }
            Step::EdgeRemove { u, v } => {
                need(
                    live(g, &[u, v]) && g.degree(u) == 2 && g.degree(v) == 2,
                    "not 2-vertices",
                )?;
                need(g.has_edge(u, v), "edge missing")?;
                need(!is_bridge_between_twos(g, u, v), "edge is a bridge")?;
                g.remove_edge(u, v);
            }
        }
        Ok(())
    }
}

fn sorted_pair(a: Vertex, b: Vertex) -> [Vertex; 2] {
    [a.min(b), a.max(b)]
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rule())?;
        match *self {
            Step::DropIsolated { vertex } => write!(f, " v={vertex}"),
            Step::SeparatorRemove {
                removed, via, other, ..
            } => write!(f, " a={removed} v={via} b={other} dk={}", self.cvc_delta()),
            Step::SeparatorContract { a, v, b, merged } => {
                write!(f, " a={a} v={v} b={b} into={merged} dk=-2")
            }
            Step::PendantRemove { leaf, via } => write!(f, " u={leaf} v={via}"),
            Step::BridgeContract {
                u,
                v,
                u_other,
                v_other,
                merged,
            } => write!(f, " u={u} v={v} x={u_other} y={v_other} into={merged}"),
            Step::EdgeRemove { u, v } => write!(f, " u={u} v={v}"),
        }
    }
}

impl FromStr for Step {
    type Err = ReductionError;

    fn from_str(line: &str) -> Result<Self, Self::Err> {
        let bad = || ReductionError::ParseStep(line.to_string());
        let mut words = line.split_whitespace();
        let rule = words.next().ok_or_else(bad)?;
        let mut fields = std::collections::BTreeMap::new();
        for w in words {
            let (key, value) = w.split_once('=').ok_or_else(bad)?;
            let value: i64 = value.parse().map_err(|_| bad())?;
            fields.insert(key, value);
        }
        let get = |key: &str| -> Result<Vertex, ReductionError> {
            fields.get(key).and_then(|&x| usize::try_from(x).ok()).ok_or_else(bad)
        };
        let step = match rule {
            "drop-isolated" => Step::DropIsolated { vertex: get("v")? },
            "separator-remove" => {
                let dk = *fields.get("dk").ok_or_else(bad)?;
                if !(dk == 0 || dk == -1) {
                    return Err(bad());
                }
                Step::SeparatorRemove {
                    removed: get("a")?,
                    via: get("v")?,
                    other: get("b")?,
                    k_decrease: (-dk) as u8,
                }
            }
            "separator-contract" => Step::SeparatorContract {
                a: get("a")?,
                v: get("v")?,
                b: get("b")?,
                merged: get("into")?,
            },
            "pendant-remove" => Step::PendantRemove {
                leaf: get("u")?,
                via: get("v")?,
            },
            "bridge-contract" => Step::BridgeContract {
                u: get("u")?,
                v: get("v")?,
                u_other: get("x")?,
                v_other: get("y")?,
                merged: get("into")?,
            },
            "edge-remove" => Step::EdgeRemove {
                u: get("u")?,
                v: get("v")?,
            },
            _ => return Err(bad()),
        };
        Ok(step)
    }
}

/// Ordered log of rule applications.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<Step>,
}

impl ReductionTrace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn extend(&mut self, other: ReductionTrace) {
        self.steps.extend(other.steps);
    }

    /// Re-applies every step to `inst`, updating the parameter.
    pub fn replay(&self, inst: &Instance) -> Result<Instance, ReductionError> {
        let mut out = inst.clone();
        for (index, step) in self.steps.iter().enumerate() {
            step.apply(&mut out.graph).map_err(|reason| ReductionError::Replay {
                index,
                step: step.to_string(),
                reason,
            })?;
            out.parameter += step.parameter_delta(inst.problem);
        }
        Ok(out)
    }

    /// Maps a connected vertex cover of the reduced graph to one of the
    /// input graph. Its size grows by exactly `k - k'`.
    pub fn lift_cover(&self, cover: &VertexSet) -> VertexSet {
        let mut c = cover.clone();
        for step in self.steps.iter().rev() {
            match *step {
                Step::SeparatorRemove {
                    via, other, k_decrease, ..
                } => {
                    if k_decrease == 1 {
                        c.insert(via);
                    } else if !c.contains(&via) {
                        c.remove(&other);
                        c.insert(via);
                    }
                }
                Step::SeparatorContract { a, v, b, merged } => {
                    if c.remove(&merged) {
                        c.insert(v);
                    }
                    c.insert(a);
                    c.insert(b);
                }
                _ => {}
            }
        }
        c
    }

    /// Maps a nonseparating independent set of `reduced` to one of
    /// `original`, via the complementary connected vertex cover.
    pub fn lift_nsis(&self, original: &Graph, reduced: &Graph, set: &VertexSet) -> VertexSet {
        let cover: VertexSet = reduced.vertices().filter(|v| !set.contains(v)).collect();
        let cover = self.lift_cover(&cover);
        original.vertices().filter(|v| !cover.contains(v)).collect()
    }

    /// Maps spanning tree edges of the reduced graph to a spanning tree of
    /// the input graph with the same number of leaves.
    pub fn lift_tree(&self, edges: &[(Vertex, Vertex)]) -> Vec<(Vertex, Vertex)> {
        let mut t: BTreeSet<(Vertex, Vertex)> = edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        for step in self.steps.iter().rev() {
            match *step {
                Step::PendantRemove { leaf, via } => {
                    t.insert((leaf.min(via), leaf.max(via)));
                }
                Step::BridgeContract {
                    u,
                    v,
                    u_other,
                    v_other,
                    merged,
                } => {
                    t.remove(&(u_other.min(merged), u_other.max(merged)));
                    t.remove(&(v_other.min(merged), v_other.max(merged)));
                    t.insert((u.min(u_other), u.max(u_other)));
                    t.insert((v.min(v_other), v.max(v_other)));
                    t.insert((u.min(v), u.max(v)));
                }
                _ => {}
            }
        }
        t.into_iter().collect()
    }
}

impl fmt::Display for ReductionTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for step in &self.steps {
            writeln!(f, "{step}")?;
        }
        Ok(())
    }
}

impl FromStr for ReductionTrace {
    type Err = ReductionError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let steps = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(str::parse)
            .collect::<Result<_, _>>()?;
        Ok(ReductionTrace { steps })
    }
}

/// Result of a reducer that may settle the instance outright.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionOutcome {
    /// `graph` is the reduced graph at the moment of decision; YES
    /// certificates are built on it and lifted through `trace`.
    Decided {
        yes: bool,
        graph: Graph,
        trace: ReductionTrace,
    },
    Reduced {
        instance: Instance,
        trace: ReductionTrace,
    },
}

fn expect_problem(inst: &Instance, expected: Problem) -> Result<(), ReductionError> {
    if inst.problem == expected {
        Ok(())
    } else {
        Err(ReductionError::WrongProblem {
            expected,
            found: inst.problem,
        })
    }
}

/// Rejects two nontrivial components, keeps the nontrivial one (or the
/// lowest vertex of an edgeless graph) and moves isolated vertices into
/// the solution.
pub fn nsis_preprocess(inst: &Instance) -> Result<ReductionOutcome, ReductionError> {
    expect_problem(inst, Problem::Nsis)?;
    let mut g = inst.graph.clone();
    let mut trace = ReductionTrace::new();
    let decided = |yes, g, trace| Ok(ReductionOutcome::Decided { yes, graph: g, trace });
    let comps = graph::connected_components(&g);
    if comps.iter().filter(|c| c.len() >= 2).count() >= 2 {
        return decided(false, g, trace);
    }
    if g.is_empty() {
        return decided(inst.parameter <= 0, g, trace);
    }
    let keep = comps.iter().find(|c| c.len() >= 2).map_or(comps[0][0], |c| c[0]);
    let mut ell = inst.parameter;
    for c in &comps {
        if c.len() == 1 && c[0] != keep {
            let step = Step::DropIsolated { vertex: c[0] };
            g.remove_vertex(c[0])?;
            ell += step.nsis_delta();
            trace.steps.push(step);
        }
    }
    if ell <= 0 {
        return decided(true, g, trace);
    }
    Ok(ReductionOutcome::Reduced {
        instance: Instance::new(g, Problem::Nsis, ell),
        trace,
    })
}

fn other_neighbor(g: &Graph, v: Vertex, not: Vertex) -> Vertex {
    let n = g.neighbors(v);
    if n[0] == not {
        n[1]
    } else {
        n[0]
    }
}

/// Applies the separator rule at the separator vertex `v` with neighbors
/// `a`, `b` in distinct components, choosing the case by current degrees.
fn apply_rule(g: &mut Graph, a: Vertex, v: Vertex, b: Vertex) -> Result<Step, ReductionError> {
    let (da, db) = (g.degree(a), g.degree(b));
    let step = if da == 1 || db == 1 {
        let (removed, other) = if da == 1 { (a, b) } else { (b, a) };
        let step = Step::SeparatorRemove {
            removed,
            via: v,
            other,
            k_decrease: u8::from(g.degree(other) >= 2),
        };
        g.remove_vertex(removed)?;
        step
    } else {
        let c = g.contract_path(a, v, b)?;
        Step::SeparatorContract {
            a,
            v,
            b,
            merged: c.merged,
        }
    };
    Ok(step)
}

/// One application of the separator rule to a connected vertex cover
/// instance, with the separator `s` supplied by the caller.
pub fn separator_rule_cvc_once(inst: &Instance, s: &VertexSet) -> Result<(Instance, Step), ReductionError> {
    expect_problem(inst, Problem::Cvc)?;
    let g = &inst.graph;
    let invalid = |msg: String| Err(ReductionError::InvalidSeparator(msg));
    if let Some(&v) = s.iter().find(|&&v| !g.contains(v) || g.degree(v) != 2) {
        return invalid(format!("vertex {v} is not a 2-vertex"));
    }
    if graph::component_count_without(g, s) < 2 {
        return invalid("removal leaves fewer than two components".into());
    }
    let mut s = s.clone();
    while let Some(&v) = s.iter().find(|&&v| g.neighbors(v).iter().any(|w| s.contains(w))) {
        s.remove(&v);
    }
    let label = component_labels(g, &s);
    let Some(&v) = s.iter().find(|&&v| {
        let n = g.neighbors(v);
        label[n[0]] != label[n[1]]
    }) else {
        return invalid("no separator vertex joins two components".into());
    };
    let (a, b) = (g.neighbors(v)[0], g.neighbors(v)[1]);
    let mut out = inst.clone();
    let step = apply_rule(&mut out.graph, a, v, b)?;
    out.parameter += step.cvc_delta();
    Ok((out, step))
}

/// Component index of every vertex of `g - removed` (`usize::MAX` for
/// removed or dead ids).
fn component_labels(g: &Graph, removed: &VertexSet) -> Vec<usize> {
    let mut label = vec![usize::MAX; g.id_bound()];
    let mut next = 0;
    for s in g.vertices() {
        if removed.contains(&s) || label[s] != usize::MAX {
            continue;
        }
        label[s] = next;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if !removed.contains(&w) && label[w] == usize::MAX {
                    label[w] = next;
                    stack.push(w);
                }
            }
        }
        next += 1;
    }
    label
}

/// Whether a connected graph has a separator made of 2-vertices only.
///
/// Linear time. With `D` the set of 2-vertices, a graph other than a cycle
/// is free of such separators exactly when `G - D` is connected and no
/// 2-vertex has two 2-vertex neighbors. Among cycles only the triangle is
/// free.
pub fn has_deg2_separator(g: &Graph) -> bool {
    let twos: VertexSet = g.vertices().filter(|&v| g.degree(v) == 2).collect();
    if twos.is_empty() {
        return false;
    }
    if twos.len() == g.vertex_count() {
        return g.vertex_count() >= 4;
    }
    if graph::component_count_without(g, &twos) >= 2 {
        return true;
    }
    twos.iter().any(|&v| g.neighbors(v).iter().all(|w| twos.contains(w)))
}

/// Removes 1-vertices adjacent to 2-vertices, cascading along paths.
fn strip_pendants(g: &mut Graph, trace: &mut ReductionTrace) -> Result<bool, ReductionError> {
    let mut work: BTreeSet<Vertex> = g.vertices().filter(|&v| g.degree(v) == 1).collect();
    let mut changed = false;
    while let Some(a) = work.pop_first() {
        if !g.contains(a) || g.degree(a) != 1 {
            continue;
        }
        let v = g.neighbors(a)[0];
        if g.degree(v) != 2 {
            continue;
        }
        let b = other_neighbor(g, v, a);
        trace.steps.push(apply_rule(g, a, v, b)?);
        work.insert(v);
        changed = true;
    }
    Ok(changed)
}

enum Thread {
    Cycle(Vec<Vertex>),
    Path(Vec<Vertex>),
}

/// The maximal run of 2-vertices through the 2-vertex `s`.
fn walk_thread(g: &Graph, s: Vertex) -> Thread {
    let mut sides = [Vec::new(), Vec::new()];
    for (i, side) in sides.iter_mut().enumerate() {
        let (mut prev, mut cur) = (s, g.neighbors(s)[i]);
        while cur != s && g.degree(cur) == 2 {
            side.push(cur);
            let next = other_neighbor(g, cur, prev);
            prev = cur;
            cur = next;
        }
        if cur == s {
            let mut cycle = vec![s];
            cycle.extend(side.iter().copied());
            return Thread::Cycle(cycle);
        }
    }
    let [left, right] = sides;
    let mut path: Vec<Vertex> = left.into_iter().rev().collect();
    path.push(s);
    path.extend(right);
    Thread::Path(path)
}

/// Shrinks runs of three or more 2-vertices.
fn compress_threads(g: &mut Graph, trace: &mut ReductionTrace) -> Result<bool, ReductionError> {
    let seeds: Vec<Vertex> = g.vertices().filter(|&v| g.degree(v) == 2).collect();
    let mut changed = false;
    for mut s in seeds {
        while g.contains(s) && g.degree(s) == 2 {
            let step = match walk_thread(g, s) {
                Thread::Cycle(c) if c.len() >= 4 => {
                    let v = *c.iter().min().unwrap();
                    let (a, b) = (g.neighbors(v)[0], g.neighbors(v)[1]);
                    apply_rule(g, a, v, b)?
                }
                Thread::Path(p) if p.len() >= 4 => apply_rule(g, p[0], p[1], p[2])?,
                Thread::Path(p) if p.len() == 3 => {
                    let end = other_neighbor(g, p[0], p[1]);
                    s = p[2];
                    apply_rule(g, end, p[0], p[1])?
                }
                _ => break,
            };
            if let Step::SeparatorContract { merged, v, .. } = step {
                if s == v || !g.contains(s) {
                    s = merged;
                }
            }
            trace.steps.push(step);
            changed = true;
        }
    }
    Ok(changed)
}

/// Joins the components of `G - S0`, `S0` a maximal independent set of
/// 2-vertices, by applying the rule at each `S0` vertex that still links
/// two different groups.
fn merge_components(g: &mut Graph, trace: &mut ReductionTrace) -> Result<bool, ReductionError> {
    let mut in_s0 = vec![false; g.id_bound()];
    let mut s0 = Vec::new();
    for v in g.vertices() {
        if g.degree(v) == 2 && !g.neighbors(v).iter().any(|&w| in_s0[w]) {
            in_s0[v] = true;
            s0.push(v);
        }
    }
    let mut groups = UnionFind::new(g.id_bound());
    for (u, w) in g.edges() {
        if !in_s0[u] && !in_s0[w] {
            groups.union(u, w);
        }
    }
    let mut changed = false;
    for v in s0 {
        if !g.contains(v) || g.degree(v) != 2 {
            continue;
        }
        let (a, b) = (g.neighbors(v)[0], g.neighbors(v)[1]);
        if groups.find(a) == groups.find(b) {
            continue;
        }
        let step = apply_rule(g, a, v, b)?;
        match step {
            Step::SeparatorContract { merged, .. } => {
                groups.grow(merged + 1);
                groups.union(a, b);
                groups.union(merged, a);
            }
            Step::SeparatorRemove { via, other, .. } => groups.union(via, other),
            _ => unreachable!("separator rule produced {step}"),
        }
        trace.steps.push(step);
        changed = true;
    }
    Ok(changed)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn grow(&mut self, n: usize) {
        while self.parent.len() < n {
            self.parent.push(self.parent.len());
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Applies the dual separator rule until no separator of 2-vertices is left.
pub fn reduce_dual_separator_exhaustive(inst: &Instance) -> Result<(Instance, ReductionTrace), ReductionError> {
    expect_problem(inst, Problem::Nsis)?;
    if !graph::is_connected(&inst.graph) {
        return Err(ReductionError::Disconnected);
    }
    let mut g = inst.graph.clone();
    let mut trace = ReductionTrace::new();
    while has_deg2_separator(&g) {
        let stripped = strip_pendants(&mut g, &mut trace)?;
        let compressed = compress_threads(&mut g, &mut trace)?;
        let merged = merge_components(&mut g, &mut trace)?;
        if !(stripped || compressed || merged) {
            return Err(ReductionError::Stalled);
        }
    }
    let ell = inst.parameter + trace.steps.iter().map(Step::nsis_delta).sum::<i64>();
    Ok((Instance::new(g, Problem::Nsis, ell), trace))
}

/// Whether the edge `uv` between two 2-vertices is a bridge. The whole run
/// of 2-vertices through `uv` is either all bridges or lies on a cycle.
fn is_bridge_between_twos(g: &Graph, u: Vertex, v: Vertex) -> bool {
    let path = match walk_thread(g, u) {
        Thread::Cycle(_) => return false,
        Thread::Path(p) => p,
    };
    let p = other_neighbor(g, path[0], *path.get(1).unwrap_or(&v));
    let last = path.len() - 1;
    let q = other_neighbor(g, path[last], if last > 0 { path[last - 1] } else { v });
    if p == q {
        return false;
    }
    let inner: VertexSet = path.iter().copied().collect();
    let mut seen = VertexSet::from([p]);
    let mut stack = vec![p];
    while let Some(x) = stack.pop() {
        for &w in g.neighbors(x) {
            if w == q {
                return false;
            }
            if !inner.contains(&w) && seen.insert(w) {
                stack.push(w);
            }
        }
    }
    true
}

/// Applies the (1,2)-rule and the adjacent 2-vertices rule to fixpoint,
/// then the trivial rule.
pub fn reduce_maxleaf(inst: &Instance) -> Result<ReductionOutcome, ReductionError> {
    expect_problem(inst, Problem::MaxLeaf)?;
    if inst.graph.is_empty() || !graph::is_connected(&inst.graph) {
        return Err(ReductionError::Disconnected);
    }
    let mut g = inst.graph.clone();
    let mut trace = ReductionTrace::new();
    let mut pendants: BTreeSet<Vertex> = g.vertices().filter(|&v| g.degree(v) == 1).collect();
    let mut pairs: BTreeSet<(Vertex, Vertex)> = g
        .edges()
        .filter(|&(u, v)| g.degree(u) == 2 && g.degree(v) == 2)
        .collect();

    fn touch(g: &Graph, x: Vertex, pendants: &mut BTreeSet<Vertex>, pairs: &mut BTreeSet<(Vertex, Vertex)>) {
        if !g.contains(x) {
            return;
        }
        match g.degree(x) {
            1 => {
                pendants.insert(x);
            }
            2 => {
                for &w in g.neighbors(x) {
                    match g.degree(w) {
                        1 => {
                            pendants.insert(w);
                        }
                        2 => {
                            pairs.insert((x.min(w), x.max(w)));
                        }
                        _ => {}
                    }
                }
            }
            _ => {}
        }
    }

    loop {
        let pendant = std::iter::from_fn(|| pendants.pop_first())
            .find(|&u| g.contains(u) && g.degree(u) == 1 && g.degree(g.neighbors(u)[0]) == 2);
        if let Some(leaf) = pendant {
            let via = g.neighbors(leaf)[0];
            g.remove_vertex(leaf)?;
            trace.steps.push(Step::PendantRemove { leaf, via });
            touch(&g, via, &mut pendants, &mut pairs);
            continue;
        }
        let pair = std::iter::from_fn(|| pairs.pop_first())
            .find(|&(u, v)| g.contains(u) && g.contains(v) && g.degree(u) == 2 && g.degree(v) == 2 && g.has_edge(u, v));
        let Some((u, v)) = pair else { break };
        if is_bridge_between_twos(&g, u, v) {
            let (x, y) = (other_neighbor(&g, u, v), other_neighbor(&g, v, u));
            let c = g.merge_vertices(&[u, v])?;
            trace.steps.push(Step::BridgeContract {
                u,
                v,
                u_other: x,
                v_other: y,
                merged: c.merged,
            });
            for t in [c.merged, x, y] {
                touch(&g, t, &mut pendants, &mut pairs);
            }
        } else {
            g.remove_edge(u, v);
            trace.steps.push(Step::EdgeRemove { u, v });
            for t in [u, v] {
                touch(&g, t, &mut pendants, &mut pairs);
            }
        }
    }

    let k = inst.parameter;
    let trivial = match (g.vertex_count(), g.edge_count()) {
        (1, 0) => Some(k <= 1),
        (2, 1) => Some(k <= 2),
        _ => None,
    };
    Ok(match trivial {
        Some(yes) => ReductionOutcome::Decided { yes, graph: g, trace },
        None => ReductionOutcome::Reduced {
            instance: Instance::new(g, Problem::MaxLeaf, k),
            trace,
        },
    })
}
