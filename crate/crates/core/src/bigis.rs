//! Independent sets with cycle collections in outerplanar graphs.
//!
//! [`independent_set_with_cycles`] returns an independent set `I` and
//! vertex-disjoint cycles `C` with `9|I| ≥ 4n − 3|C|`, by repeatedly
//! removing a small configuration from a leaf block and re-embedding.
//! Configurations are tried in the order [`Case::One`] … [`Case::FiveB`].

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::graph::{self, Graph, Vertex, VertexSet};
use crate::outerplanar::{self, BlockEmbedding, OuterplanarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleError {
    #[error("cycle {0} has fewer than 3 vertices")]
    TooShort(usize),
    #[error("cycle {index} uses missing vertex {vertex}")]
    Missing { index: usize, vertex: Vertex },
    #[error("cycle {index} has non-edge ({u}, {v})")]
    NotAdjacent { index: usize, u: Vertex, v: Vertex },
    #[error("vertex {0} appears more than once")]
    Repeated(Vertex),
}

/// Vertex-disjoint cycles, each a cyclic vertex sequence.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CycleCollection {
    cycles: Vec<Vec<Vertex>>,
}

impl CycleCollection {
    pub fn new(cycles: Vec<Vec<Vertex>>) -> Self {
        CycleCollection { cycles }
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn cycles(&self) -> &[Vec<Vertex>] {
        &self.cycles
    }

    pub fn push(&mut self, cycle: Vec<Vertex>) {
        self.cycles.push(cycle);
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.cycles.iter().flatten().copied()
    }

    /// Relabels every vertex through `map`.
    pub fn map(&self, map: &[Vertex]) -> CycleCollection {
        CycleCollection::new(
            self.cycles
                .iter()
                .map(|c| c.iter().map(|&v| map[v]).collect())
                .collect(),
        )
    }

    /// Checks that every sequence is a cycle of `g` and that cycles are
    /// pairwise disjoint.
    pub fn validate(&self, g: &Graph) -> Result<(), CycleError> {
        let mut seen = VertexSet::new();
        for (index, c) in self.cycles.iter().enumerate() {
            if c.len() < 3 {
                return Err(CycleError::TooShort(index));
            }
            for (i, &v) in c.iter().enumerate() {
                if !g.contains(v) {
                    return Err(CycleError::Missing { index, vertex: v });
                }
                if !seen.insert(v) {
                    return Err(CycleError::Repeated(v));
                }
                let u = c[(i + 1) % c.len()];
                if !g.has_edge(v, u) {
                    return Err(CycleError::NotAdjacent { index, u: v, v: u });
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    One,
    Two,
    Three,
    Four,
    FiveA,
    FiveB,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::One => "1",
            Case::Two => "2",
            Case::Three => "3",
            Case::Four => "4",
            Case::FiveA => "5a",
            Case::FiveB => "5b",
        })
    }
}

/// One removal: `removed` leaves the graph, `added` joins `I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigisStep {
    pub case: Case,
    pub removed: Vec<Vertex>,
    pub added: Vec<Vertex>,
    pub cycle: Option<Vec<Vertex>>,
}

impl BigisStep {
    /// `9i − 4r + 3c`, non-negative for every valid step.
    pub fn slack(&self) -> i64 {
        9 * self.added.len() as i64 - 4 * self.removed.len() as i64 + 3 * i64::from(self.cycle.is_some())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigisOutcome {
    pub independent: VertexSet,
    pub cycles: CycleCollection,
    pub steps: Vec<BigisStep>,
}

impl BigisOutcome {
    /// `9|I| − 4n + 3|C|`.
    pub fn slack(&self, n: usize) -> i64 {
        9 * self.independent.len() as i64 - 4 * n as i64 + 3 * self.cycles.len() as i64
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BigisError {
    #[error(transparent)]
    NotOuterplanar(#[from] OuterplanarError),
    #[error("no case applies to leaf block {block}")]
    Exhausted { block: String },
    #[error("leaf block with two faces of different parity: {block}")]
    MixedParity { block: String },
    #[error("leaf block with {faces} faces reached the final case: {block}")]
    TooManyFaces { faces: usize, block: String },
    #[error("case {case} step violates 9i >= 4r - 3c: {step:?}")]
    LocalInequality { case: Case, step: BigisStep },
    #[error("result is not independent at edge ({0}, {1})")]
    NotIndependent(Vertex, Vertex),
}

/// `(I, C)` with `9|I| ≥ 4n − 3|C|` for an outerplanar `h`.
pub fn independent_set_with_cycles(h: &Graph) -> Result<(VertexSet, CycleCollection), BigisError> {
    let out = independent_set_with_cycles_traced(h)?;
    Ok((out.independent, out.cycles))
}

/// As [`independent_set_with_cycles`], also returning the per-step log.
pub fn independent_set_with_cycles_traced(h: &Graph) -> Result<BigisOutcome, BigisError> {
    outerplanar::recognize_and_embed(h)?;
    let mut work = h.clone();
    let mut low: BTreeSet<Vertex> = work.vertices().filter(|&v| work.degree(v) <= 1).collect();
    let mut pool = BlockPool::new(&work);
    let mut out = BigisOutcome {
        independent: VertexSet::new(),
        cycles: CycleCollection::default(),
        steps: Vec::new(),
    };
    while !work.is_empty() {
        let step = match low.pop_first() {
            Some(v) => {
                let mut removed = vec![v];
                removed.extend_from_slice(work.neighbors(v));
                BigisStep {
                    case: Case::One,
                    removed,
                    added: vec![v],
                    cycle: None,
                }
            }
            None => {
                let Some((block, cuts)) = pool.next_leaf(&work) else {
                    return Err(BigisError::Exhausted {
                        block: format!("no leaf block among {} live vertices", work.vertex_count()),
                    });
                };
                structural_step(&work, &block, &cuts)?
            }
        };
        if step.slack() < 0 {
            return Err(BigisError::LocalInequality { case: step.case, step });
        }
        for &v in &step.removed {
            low.remove(&v);
            let nbrs = work.remove_vertex(v).expect("removed vertices are live");
            pool.remove(v, &nbrs);
            for w in nbrs {
                if work.degree(w) <= 1 {
                    low.insert(w);
                }
            }
        }
        out.independent.extend(step.added.iter().copied());
        if let Some(c) = &step.cycle {
            out.cycles.push(c.clone());
        }
        out.steps.push(step);
    }
    for (u, v) in h.edges() {
        if out.independent.contains(&u) && out.independent.contains(&v) {
            return Err(BigisError::NotIndependent(u, v));
        }
    }
    Ok(out)
}

/// Leaf face as a path `v1 … vℓ` closed by the edge `vℓ v1`.
struct LeafFace {
    seq: Vec<usize>,
    /// Whether `v1 vℓ` is a chord (false for a block that is a single cycle).
    chorded: bool,
}

/// Blocks with at least three vertices, maintained under vertex deletion.
///
/// Deleting vertices only splits blocks, so a block that lost vertices is
/// replaced by the blocks of its remnant. Leaf status changes only when a
/// block vertex loses a neighbour, so such blocks are queued for a recheck.
struct BlockPool {
    blocks: Vec<Option<Vec<Vertex>>>,
    member: Vec<Vec<usize>>,
    dirty: BTreeSet<usize>,
    queue: BTreeSet<(Vertex, usize)>,
}

impl BlockPool {
    fn new(g: &Graph) -> Self {
        let mut pool = BlockPool {
            blocks: Vec::new(),
            member: vec![Vec::new(); g.id_bound()],
            dirty: BTreeSet::new(),
            queue: BTreeSet::new(),
        };
        let (blocks, _, _) = graph::blocks_from(g, g.vertices());
        for block in blocks {
            pool.add(block);
        }
        pool
    }

    fn add(&mut self, block: Vec<Vertex>) {
        if block.len() < 3 {
            return;
        }
        let id = self.blocks.len();
        for &v in &block {
            self.member[v].push(id);
        }
        self.queue.insert((block[0], id));
        self.blocks.push(Some(block));
    }

    fn touch(&mut self, v: Vertex) {
        for &b in &self.member[v] {
            if let Some(block) = &self.blocks[b] {
                self.queue.insert((block[0], b));
            }
        }
    }

    /// Records the deletion of `v`, whose former neighbours are `nbrs`.
    fn remove(&mut self, v: Vertex, nbrs: &[Vertex]) {
        self.dirty.extend(self.member[v].iter().copied());
        for &w in nbrs {
            self.touch(w);
        }
    }

    fn flush(&mut self, work: &Graph) {
        for b in std::mem::take(&mut self.dirty) {
            let Some(block) = self.blocks[b].take() else {
                continue;
            };
            for &v in &block {
                self.member[v].retain(|&c| c != b);
            }
            let remnant: Vec<Vertex> = block.into_iter().filter(|&v| work.contains(v)).collect();
            if remnant.len() < 3 {
                continue;
            }
            let (local, ids) = relabel(work, &remnant);
            let (parts, _, _) = graph::blocks_from(&local, 0..ids.len());
            for part in parts {
                self.add(part.into_iter().map(|v| ids[v]).collect());
            }
        }
    }

    /// The leaf block with the smallest lowest vertex, with its cutvertices.
    fn next_leaf(&mut self, work: &Graph) -> Option<(Vec<Vertex>, VertexSet)> {
        self.flush(work);
        while let Some((_, b)) = self.queue.pop_first() {
            let Some(block) = &self.blocks[b] else {
                continue;
            };
            let inside: VertexSet = block.iter().copied().collect();
            let cuts: VertexSet = block
                .iter()
                .copied()
                .filter(|&v| work.neighbors(v).iter().any(|w| !inside.contains(w)))
                .collect();
            if cuts.len() <= 1 {
                return Some((block.clone(), cuts));
            }
        }
        None
    }
}

/// `G[vertices]` relabelled to `0..len` in the given order.
fn relabel(g: &Graph, vertices: &[Vertex]) -> (Graph, Vec<Vertex>) {
    let local: HashMap<Vertex, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let edges: Vec<(usize, usize)> = vertices
        .iter()
        .flat_map(|&v| {
            let local = &local;
            g.neighbors(v)
                .iter()
                .filter_map(move |w| local.get(w).filter(|&&j| local[&v] < j).map(|&j| (local[&v], j)))
        })
        .collect();
    (
        Graph::from_edges(vertices.len(), &edges).expect("induced edges are simple"),
        vertices.to_vec(),
    )
}

/// Cases 2–5 on a leaf block of `work`, whose vertices all have degree at
/// least 2.
fn structural_step(work: &Graph, block: &[Vertex], cuts: &VertexSet) -> Result<BigisStep, BigisError> {
    let describe = || describe_block(work, block);
    let emb = outerplanar::embed_block(work, block, cuts).ok_or_else(|| OuterplanarError::NotOuterplanar {
        block: 0,
        vertices: block.to_vec(),
    })?;
    if emb.faces.is_empty() {
        return Err(BigisError::Exhausted { block: describe() });
    }
    let in_block: VertexSet = block.iter().copied().collect();
    let deg_h = |v: usize| work.degree(v);
    let deg_q = |v: usize| work.neighbors(v).iter().filter(|w| in_block.contains(w)).count();
    let cut = emb.cutvertices.first().copied();

    let faces: Vec<LeafFace> = face_order(&emb)
        .into_iter()
        .filter(|&f| emb.is_leaf_face(f))
        .map(|f| leaf_face(&emb, f, cut))
        .collect();
    let interior_free = |lf: &LeafFace| lf.seq[1..lf.seq.len() - 1].iter().all(|&v| deg_h(v) == 2);
    let odd = |seq: &[usize], upto: usize| -> Vec<usize> { (1..upto).step_by(2).map(|i| seq[i]).collect() };

    for lf in &faces {
        let l = lf.seq.len();
        if l % 2 == 1 && interior_free(lf) {
            return Ok(BigisStep {
                case: Case::Two,
                removed: lf.seq.clone(),
                added: odd(&lf.seq, l - 1),
                cycle: Some(lf.seq.clone()),
            });
        }
    }

    let even: Vec<&LeafFace> = faces
        .iter()
        .filter(|lf| lf.chorded && lf.seq.len() % 2 == 0 && interior_free(lf))
        .collect();
    for lf in &even {
        for seq in oriented(&lf.seq) {
            let last = *seq.last().unwrap();
            if deg_h(last) == 3 && deg_q(last) == 3 {
                let on_face: BTreeSet<usize> = seq.iter().copied().collect();
                let w = *work
                    .neighbors(last)
                    .iter()
                    .find(|w| !on_face.contains(w))
                    .expect("third neighbor off the face");
                let mut removed = seq.clone();
                removed.push(w);
                return Ok(BigisStep {
                    case: Case::Three,
                    removed,
                    added: odd(&seq, seq.len()),
                    cycle: Some(seq),
                });
            }
        }
    }

    for (i, f1) in even.iter().enumerate() {
        for f2 in &even[i + 1..] {
            for s1 in oriented(&f1.seq) {
                let x = *s1.last().unwrap();
                if deg_h(x) != 4 || deg_q(x) != 4 {
                    continue;
                }
                let Some(s2) = oriented(&f2.seq).into_iter().find(|s| *s.last().unwrap() == x) else {
                    continue;
                };
                let mut removed = s1.clone();
                removed.extend_from_slice(&s2[..s2.len() - 1]);
                let mut added = odd(&s1, s1.len());
                added.extend(odd(&s2, s2.len() - 1));
                return Ok(BigisStep {
                    case: Case::Four,
                    removed,
                    added,
                    cycle: Some(s1),
                });
            }
        }
    }

    match emb.faces.len() {
        1 => {
            let seq = &faces[0].seq;
            Ok(BigisStep {
                case: Case::FiveA,
                removed: seq.clone(),
                added: odd(seq, seq.len()),
                cycle: None,
            })
        }
        2 => {
            if emb.faces[0].len() % 2 != emb.faces[1].len() % 2 {
                return Err(BigisError::MixedParity { block: describe() });
            }
            if emb.faces[0].len() % 2 == 1 {
                return Err(BigisError::Exhausted { block: describe() });
            }
            let outer = &emb.outer_cycle;
            let parity = match cut.and_then(|c| outer.iter().position(|&v| v == c)) {
                Some(p) => (p + 1) % 2,
                None => 1,
            };
            Ok(BigisStep {
                case: Case::FiveB,
                removed: outer.clone(),
                added: (parity..outer.len()).step_by(2).map(|i| outer[i]).collect(),
                cycle: None,
            })
        }
        faces => Err(BigisError::TooManyFaces {
            faces,
            block: describe(),
        }),
    }
}

/// Faces in breadth-first order of the dual tree, from the leaf face with
/// the lowest vertex.
fn face_order(emb: &BlockEmbedding) -> Vec<usize> {
    let start = emb
        .leaf_faces()
        .min_by_key(|&f| emb.faces[f][0])
        .expect("a tree has a leaf");
    let mut order = vec![start];
    let mut seen = vec![false; emb.faces.len()];
    seen[start] = true;
    let mut i = 0;
    while i < order.len() {
        let mut next: Vec<usize> = emb.dual[order[i]].iter().copied().filter(|&g| !seen[g]).collect();
        next.sort_by_key(|&g| emb.faces[g][0]);
        for g in next {
            seen[g] = true;
            order.push(g);
        }
        i += 1;
    }
    order
}

fn leaf_face(emb: &BlockEmbedding, f: usize, cut: Option<usize>) -> LeafFace {
    let face = &emb.faces[f];
    let l = face.len();
    match emb.leaf_chord(f) {
        Some((a, b)) => {
            let i = face.iter().position(|&v| v == a).unwrap();
            let seq: Vec<usize> = if face[(i + 1) % l] == b {
                (0..l).map(|j| face[(i + l - j) % l]).collect()
            } else {
                (0..l).map(|j| face[(i + j) % l]).collect()
            };
            LeafFace { seq, chorded: true }
        }
        None => {
            let outer = &emb.outer_cycle;
            let first = cut.unwrap_or(outer[0]);
            let i = outer.iter().position(|&v| v == first).unwrap();
            let seq = (0..l).map(|j| outer[(i + j) % l]).collect();
            LeafFace { seq, chorded: false }
        }
    }
}

/// Both directions of a leaf face, the one ending at the lower id first.
fn oriented(seq: &[usize]) -> Vec<Vec<usize>> {
    let mut rev = seq.to_vec();
    rev.reverse();
    if seq.last() <= rev.last() {
        vec![seq.to_vec(), rev]
    } else {
        vec![rev, seq.to_vec()]
    }
}

fn describe_block(work: &Graph, block: &[Vertex]) -> String {
    let set: VertexSet = block.iter().copied().collect();
    let set = &set;
    let edges: Vec<(Vertex, Vertex)> = block
        .iter()
        .flat_map(|&u| {
            work.neighbors(u)
                .iter()
                .filter(move |&&v| u < v && set.contains(&v))
                .map(move |&v| (u, v))
        })
        .collect();
    format!("vertices={block:?} edges={edges:?}")
}
