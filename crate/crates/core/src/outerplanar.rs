//! Outerplanar recognition with explicit embeddings, 3-colouring, and the
//! leaf-induced subgraph of a spanning tree.
//!
//! Each block with at least three vertices is embedded by eliminating
//! degree-2 vertices down to a triangle and reinserting them, which yields the
//! unique Hamiltonian outer cycle. All remaining edges must be non-crossing
//! chords of that cycle.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::graph::{self, Graph, Vertex, VertexSet};
use crate::spanning_tree::TreeRecord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OuterplanarError {
    #[error("block {block} is not outerplanar: {vertices:?}")]
    NotOuterplanar { block: usize, vertices: Vec<Vertex> },
    #[error("graph has degeneracy {0}, expected at most 2")]
    Degeneracy(usize),
}

/// Embedding of one block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockEmbedding {
    pub vertices: Vec<Vertex>,
    /// Cyclic order of the outer face; the endpoints for a single edge.
    pub outer_cycle: Vec<Vertex>,
    /// Bounded faces, each a cyclic vertex sequence starting at its lowest id.
    pub faces: Vec<Vec<Vertex>>,
    pub chords: Vec<(Vertex, Vertex)>,
    /// Face adjacency across chords.
    pub dual: Vec<Vec<usize>>,
    /// For each chord, the two faces on its sides.
    pub chord_faces: Vec<(usize, usize)>,
    /// Cutvertices of the host graph lying in this block.
    pub cutvertices: Vec<Vertex>,
}

impl BlockEmbedding {
    pub fn is_leaf_block(&self) -> bool {
        self.cutvertices.len() <= 1
    }

    pub fn is_leaf_face(&self, f: usize) -> bool {
        self.dual[f].len() <= 1
    }

    pub fn leaf_faces(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.faces.len()).filter(|&f| self.is_leaf_face(f))
    }

    /// The chord separating the leaf face `f` from its dual neighbor.
    pub fn leaf_chord(&self, f: usize) -> Option<(Vertex, Vertex)> {
        self.chord_faces
            .iter()
            .position(|&(x, y)| x == f || y == f)
            .map(|i| self.chords[i])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OuterplanarEmbedding {
    pub blocks: Vec<BlockEmbedding>,
    pub cutvertices: VertexSet,
}

/// Embeds every block of `g`; fails on the first non-outerplanar block.
pub fn recognize_and_embed(g: &Graph) -> Result<OuterplanarEmbedding, OuterplanarError> {
    let (blocks, cutvertices, _) = graph::blocks_from(g, g.vertices());
    let embedded = blocks
        .iter()
        .enumerate()
        .map(|(i, b)| {
            embed_block(g, b, &cutvertices).ok_or_else(|| OuterplanarError::NotOuterplanar {
                block: i,
                vertices: b.clone(),
            })
        })
        .collect::<Result<_, _>>()?;
    Ok(OuterplanarEmbedding {
        blocks: embedded,
        cutvertices,
    })
}

/// Embeds the block with vertex set `block` (edges are those of `g`
/// between block vertices). `None` if the block is not outerplanar.
pub fn embed_block(g: &Graph, block: &[Vertex], cuts: &VertexSet) -> Option<BlockEmbedding> {
    let cutvertices: Vec<Vertex> = block.iter().copied().filter(|v| cuts.contains(v)).collect();
    let mut vertices = block.to_vec();
    vertices.sort_unstable();
    if vertices.len() <= 2 {
        return Some(BlockEmbedding {
            outer_cycle: vertices.clone(),
            vertices,
            faces: Vec::new(),
            chords: Vec::new(),
            dual: Vec::new(),
            chord_faces: Vec::new(),
            cutvertices,
        });
    }
    let local: HashMap<Vertex, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let adj: Vec<Vec<usize>> = vertices
        .iter()
        .map(|&v| g.neighbors(v).iter().filter_map(|w| local.get(w).copied()).collect())
        .collect();
    let order = hamiltonian_cycle(&adj)?;
    let k = order.len();
    let mut pos = vec![0; k];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }

    // chords as position intervals must be laminar
    let mut chords_pos: Vec<(usize, usize)> = Vec::new();
    for (u, nbrs) in adj.iter().enumerate() {
        for &w in nbrs {
            if u < w {
                let (i, j) = (pos[u].min(pos[w]), pos[u].max(pos[w]));
                if j - i != 1 && !(i == 0 && j == k - 1) {
                    chords_pos.push((i, j));
                }
            }
        }
    }
    chords_pos.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
    let mut open: Vec<usize> = Vec::new();
    for &(i, j) in &chords_pos {
        while open.last().is_some_and(|&top| top <= i) {
            open.pop();
        }
        if open.last().is_some_and(|&top| j > top) {
            return None;
        }
        open.push(j);
    }

    let faces_local = trace_faces(&adj, &pos, &order);
    let outer_cycle = orient(&order.iter().map(|&i| vertices[i]).collect::<Vec<_>>());
    let mut face_of_dart: HashMap<(usize, usize), usize> = HashMap::new();
    for (f, face) in faces_local.iter().enumerate() {
        for i in 0..face.len() {
            face_of_dart.insert((face[i], face[(i + 1) % face.len()]), f);
        }
    }
    let mut dual = vec![Vec::new(); faces_local.len()];
    let mut chords = Vec::new();
    let mut chord_faces = Vec::new();
    for &(i, j) in &chords_pos {
        let (u, w) = (order[i], order[j]);
        let (fa, fb) = (face_of_dart[&(u, w)], face_of_dart[&(w, u)]);
        dual[fa].push(fb);
        dual[fb].push(fa);
        let (a, b) = (vertices[u], vertices[w]);
        chords.push((a.min(b), a.max(b)));
        chord_faces.push((fa, fb));
    }
    let faces = faces_local
        .iter()
        .map(|f| rotate_to_min(&f.iter().map(|&i| vertices[i]).collect::<Vec<_>>()))
        .collect();
    Some(BlockEmbedding {
        vertices,
        outer_cycle,
        faces,
        chords,
        dual,
        chord_faces,
        cutvertices,
    })
}

/// Hamiltonian cycle of a 2-connected outerplanar graph (local ids), by
/// eliminating 2-vertices and reinserting them in reverse order.
fn hamiltonian_cycle(adj: &[Vec<usize>]) -> Option<Vec<usize>> {
    let k = adj.len();
    let mut cur: Vec<std::collections::BTreeSet<usize>> = adj.iter().map(|a| a.iter().copied().collect()).collect();
    let mut alive = vec![true; k];
    let mut queue: Vec<usize> = (0..k).filter(|&v| cur[v].len() == 2).collect();
    let mut eliminated: Vec<(usize, usize, usize)> = Vec::new();
    let mut remaining = k;
    while remaining > 3 {
        let v = loop {
            let v = queue.pop()?;
            if alive[v] && cur[v].len() == 2 {
                break v;
            }
        };
        let mut it = cur[v].iter();
        let (a, b) = (*it.next().unwrap(), *it.next().unwrap());
        alive[v] = false;
        remaining -= 1;
        cur[a].remove(&v);
        cur[b].remove(&v);
        cur[a].insert(b);
        cur[b].insert(a);
        for x in [a, b] {
            if cur[x].len() == 2 {
                queue.push(x);
            }
        }
        eliminated.push((v, a, b));
    }
    let rest: Vec<usize> = (0..k).filter(|&v| alive[v]).collect();
    if rest.len() != 3 || rest.iter().any(|&v| cur[v].len() != 2) {
        return None;
    }
    let mut next = vec![usize::MAX; k];
    let mut prev = vec![usize::MAX; k];
    for i in 0..3 {
        next[rest[i]] = rest[(i + 1) % 3];
        prev[rest[(i + 1) % 3]] = rest[i];
    }
    for &(v, a, b) in eliminated.iter().rev() {
        let (x, y) = if next[a] == b {
            (a, b)
        } else if next[b] == a {
            (b, a)
        } else {
            return None;
        };
        next[x] = v;
        prev[v] = x;
        next[v] = y;
        prev[y] = v;
    }
    let mut order = vec![0];
    while order.len() < k {
        let n = next[*order.last().unwrap()];
        if n == 0 {
            return None;
        }
        order.push(n);
    }
    Some(order)
}

/// Bounded faces, walking each dart with the face on its left.
fn trace_faces(adj: &[Vec<usize>], pos: &[usize], order: &[usize]) -> Vec<Vec<usize>> {
    let k = order.len();
    let offset = |from: usize, to: usize| (pos[to] + k - pos[from]) % k;
    let by_offset: Vec<Vec<(usize, usize)>> = (0..k)
        .map(|v| {
            let mut list: Vec<(usize, usize)> = adj[v].iter().map(|&w| (offset(v, w), w)).collect();
            list.sort_unstable();
            list
        })
        .collect();
    let mut darts: Vec<(usize, usize)> = (0..k).map(|i| (order[i], order[(i + 1) % k])).collect();
    for (v, list) in by_offset.iter().enumerate() {
        for &(off, w) in list {
            if off != 1 && off != k - 1 {
                darts.push((v, w));
            }
        }
    }
    let mut used: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();
    let mut faces = Vec::new();
    for start in darts {
        if used.contains(&start) {
            continue;
        }
        let mut face = Vec::new();
        let (mut u, mut w) = start;
        loop {
            used.insert((u, w));
            face.push(u);
            let incoming = offset(w, u);
            let list = &by_offset[w];
            let idx = list.partition_point(|&(off, _)| off < incoming);
            let z = list[idx - 1].1;
            u = w;
            w = z;
            if (u, w) == start {
                break;
            }
        }
        faces.push(face);
    }
    faces
}

fn rotate_to_min(cycle: &[Vertex]) -> Vec<Vertex> {
    let i = (0..cycle.len()).min_by_key(|&i| cycle[i]).unwrap_or(0);
    cycle[i..].iter().chain(&cycle[..i]).copied().collect()
}

/// Starts at the lowest id and heads toward its lower-id cycle neighbor.
fn orient(cycle: &[Vertex]) -> Vec<Vertex> {
    let c = rotate_to_min(cycle);
    if c.len() >= 3 && c[c.len() - 1] < c[1] {
        let mut r = vec![c[0]];
        r.extend(c[1..].iter().rev());
        r
    } else {
        c
    }
}

/// Proper colouring with colours `0..3` by greedy colouring in reverse
/// degeneracy order.
pub fn three_color_outerplanar(g: &Graph) -> Result<BTreeMap<Vertex, u8>, OuterplanarError> {
    let (order, degeneracy) = graph::degeneracy_order(g);
    if degeneracy > 2 {
        return Err(OuterplanarError::Degeneracy(degeneracy));
    }
    let mut colour: BTreeMap<Vertex, u8> = BTreeMap::new();
    for &v in order.iter().rev() {
        let used: Vec<u8> = g.neighbors(v).iter().filter_map(|w| colour.get(w).copied()).collect();
        let c = (0..3)
            .find(|c| !used.contains(c))
            .expect("at most two coloured neighbors");
        colour.insert(v, c);
    }
    Ok(colour)
}

/// The largest colour class, lowest colour on ties.
pub fn largest_color_class(colouring: &BTreeMap<Vertex, u8>) -> VertexSet {
    let mut classes: [VertexSet; 3] = Default::default();
    for (&v, &c) in colouring {
        classes[c as usize].insert(v);
    }
    let best = (0..3)
        .max_by_key(|&c| (classes[c].len(), std::cmp::Reverse(c)))
        .unwrap();
    std::mem::take(&mut classes[best])
}

/// `g[L(T)]` relabelled to `0..|L|`, with the map back to ids of `g`.
pub fn induced_leaf_subgraph(g: &Graph, t: &TreeRecord) -> (Graph, Vec<Vertex>) {
    g.induced(&t.leaves)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spanning_tree::{build_spanning_tree, Strategy};

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    /// Every outer edge on one bounded face, every chord on two, and
    /// `#faces = m - n + 1` per block.
    fn check_faces(g: &Graph, e: &OuterplanarEmbedding) {
        for b in &e.blocks {
            let n = b.vertices.len();
            if n <= 2 {
                assert!(b.faces.is_empty());
                continue;
            }
            let set: VertexSet = b.vertices.iter().copied().collect();
            let (h, _) = g.induced(&set);
            assert_eq!(b.faces.len(), h.edge_count() + 1 - n);
            let mut count: BTreeMap<(Vertex, Vertex), usize> = BTreeMap::new();
            for f in &b.faces {
                for i in 0..f.len() {
                    let (u, w) = (f[i], f[(i + 1) % f.len()]);
                    assert!(g.has_edge(u, w));
                    *count.entry((u.min(w), u.max(w))).or_default() += 1;
                }
            }
            for (edge, c) in count {
                let expected = if b.chords.contains(&edge) { 2 } else { 1 };
                assert_eq!(c, expected, "{edge:?}");
            }
        }
    }

    #[test]
    fn c4_single_face() {
        let g = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let e = recognize_and_embed(&g).unwrap();
        assert_eq!(e.blocks.len(), 1);
        assert_eq!(e.blocks[0].outer_cycle, vec![0, 1, 2, 3]);
        assert_eq!(e.blocks[0].faces.len(), 1);
        assert_eq!(e.blocks[0].dual, vec![Vec::<usize>::new()]);
        check_faces(&g, &e);
    }

    #[test]
    fn c4_with_chord() {
        let g = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]);
        let e = recognize_and_embed(&g).unwrap();
        let b = &e.blocks[0];
        let mut faces = b.faces.clone();
        faces.sort();
        assert_eq!(faces, vec![vec![0, 1, 2], vec![0, 2, 3]]);
        assert_eq!(b.dual, vec![vec![1], vec![0]]);
        assert!(b.is_leaf_face(0) && b.is_leaf_face(1));
        check_faces(&g, &e);
    }

    #[test]
    fn k4_rejected() {
        let g = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert!(matches!(
            recognize_and_embed(&g),
            Err(OuterplanarError::NotOuterplanar { .. })
        ));
        // K2,3 has 2-vertices but is not outerplanar either
        let k23 = graph(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]);
        assert!(recognize_and_embed(&k23).is_err());
    }

    #[test]
    fn fan_and_inner_triangle() {
        // hexagon with chords forming an inner triangle 0-2-4
        let g = graph(
            6,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 2), (2, 4), (4, 0)],
        );
        let e = recognize_and_embed(&g).unwrap();
        let b = &e.blocks[0];
        assert_eq!(b.faces.len(), 4);
        assert!(b.faces.contains(&vec![0, 2, 4]));
        assert_eq!(b.leaf_faces().count(), 3);
        check_faces(&g, &e);
    }

    #[test]
    fn blocks_and_cutvertices() {
        let bowtie = graph(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]);
        let e = recognize_and_embed(&bowtie).unwrap();
        assert_eq!(e.blocks.len(), 2);
        assert!(e.blocks.iter().all(|b| b.is_leaf_block() && b.cutvertices == vec![2]));
        check_faces(&bowtie, &e);
    }

    #[test]
    fn colouring_examples() {
        let k3 = graph(3, &[(0, 1), (1, 2), (2, 0)]);
        let c = three_color_outerplanar(&k3).unwrap();
        let used: VertexSet = c.values().map(|&x| x as usize).collect();
        assert_eq!(used.len(), 3);
        let p5 = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        let c = three_color_outerplanar(&p5).unwrap();
        assert!(largest_color_class(&c).len() >= 2);
        let k4 = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(three_color_outerplanar(&k4), Err(OuterplanarError::Degeneracy(3)));
    }

    #[test]
    fn leaf_subgraph_examples() {
        let k3 = graph(3, &[(0, 1), (1, 2), (2, 0)]);
        let t = build_spanning_tree(&k3, Strategy::Branching).unwrap();
        let (h, ids) = induced_leaf_subgraph(&k3, &t);
        assert_eq!(ids, vec![1, 2]);
        assert_eq!(h.edge_count(), 1);
        let star = graph(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]);
        let t = build_spanning_tree(&star, Strategy::Branching).unwrap();
        let (h, _) = induced_leaf_subgraph(&star, &t);
        assert_eq!((h.vertex_count(), h.edge_count()), (5, 0));
    }
}
