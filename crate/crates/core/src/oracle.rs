//! Exponential-time exact solvers used as ground truth in tests.
//!
//! Every oracle refuses inputs above a hard size guard instead of running for
//! hours. Subset searches use bitmasks over a compact relabelling of the graph.

use thiserror::Error;

use crate::bigis::CycleCollection;
use crate::graph::{self, Graph, Vertex, VertexSet};
use crate::spanning_tree::SpanningTree;

pub const SUBSET_GUARD: usize = 20;
pub const TREE_GUARD: usize = 10;
pub const CYCLE_GUARD: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("oracle guard exceeded: {what} is {size}, limit {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("graph is disconnected; no spanning tree exists")]
    Disconnected,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult<W> {
    pub optimum: usize,
    pub witness: W,
}

fn guard(what: &'static str, size: usize, limit: usize) -> Result<(), OracleError> {
    if size > limit {
        Err(OracleError::TooLarge { what, size, limit })
    } else {
        Ok(())
    }
}

/// Compact bitmask view of a small graph.
struct Masks {
    ids: Vec<Vertex>,
    adj: Vec<u32>,
}

impl Masks {
    fn new(g: &Graph) -> Self {
        let (h, ids) = g.compact();
        let adj = h
            .vertices()
            .map(|v| h.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
            .collect();
        Masks { ids, adj }
    }

    fn n(&self) -> usize {
        self.ids.len()
    }

    fn full(&self) -> u32 {
        if self.n() == 32 {
            u32::MAX
        } else {
            (1u32 << self.n()) - 1
        }
    }

    /// `g[set]` connected; empty set counts as connected.
    fn connected(&self, set: u32) -> bool {
        if set == 0 {
            return true;
        }
        let mut reach = set & set.wrapping_neg();
        loop {
            let mut next = reach;
            let mut bits = reach;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                next |= self.adj[v] & set;
            }
            if next == reach {
                return reach == set;
            }
            reach = next;
        }
    }

    fn to_set(&self, mask: u32) -> VertexSet {
        (0..self.n())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| self.ids[i])
            .collect()
    }
}

/// Subsets in reflected Gray-code order with an incrementally maintained
/// count of edges inside the subset.
fn gray_subsets(m: &Masks, mut visit: impl FnMut(u32, usize)) {
    let n = m.n();
    let mut set = 0u32;
    let mut inside = 0usize;
    visit(set, inside);
    for i in 1u64..(1u64 << n) {
        let v = i.trailing_zeros() as usize;
        let bit = 1u32 << v;
        let touching = (m.adj[v] & set).count_ones() as usize;
        if set & bit == 0 {
            set |= bit;
            inside += touching;
        } else {
            set &= !bit;
            inside -= touching;
        }
        visit(set, inside);
    }
}

/// Largest independent `S` with `g - S` connected, or `None` if no such set
/// exists (two or more components with edges).
pub fn max_nsis_bruteforce(g: &Graph) -> Result<Option<OracleResult<VertexSet>>, OracleError> {
    guard("vertex count", g.vertex_count(), SUBSET_GUARD)?;
    let m = Masks::new(g);
    let full = m.full();
    let mut best: Option<u32> = None;
    gray_subsets(&m, |set, inside| {
        if inside == 0 && best.is_none_or(|b| set.count_ones() > b.count_ones()) && m.connected(full & !set) {
            best = Some(set);
        }
    });
    Ok(best.map(|b| OracleResult {
        optimum: b.count_ones() as usize,
        witness: m.to_set(b),
    }))
}

/// Smallest vertex cover inducing a connected subgraph, or `None` if the
/// edges span two or more components.
pub fn min_cvc_bruteforce(g: &Graph) -> Result<Option<OracleResult<VertexSet>>, OracleError> {
    guard("vertex count", g.vertex_count(), SUBSET_GUARD)?;
    let m = Masks::new(g);
    let mut best: Option<u32> = None;
    gray_subsets(&m, |set, _| {
        if best.is_some_and(|b| set.count_ones() >= b.count_ones()) {
            return;
        }
        // a cover leaves no edge with both ends outside the set
        let outside = m.full() & !set;
        let uncovered = (0..m.n())
            .filter(|&v| outside >> v & 1 == 1)
            .any(|v| m.adj[v] & outside != 0);
        if !uncovered && m.connected(set) {
            best = Some(set);
        }
    });
    Ok(best.map(|b| OracleResult {
        optimum: b.count_ones() as usize,
        witness: m.to_set(b),
    }))
}

/// Maximum number of leaves over all spanning trees, by exhaustive search
/// over acyclic edge subsets of size `n - 1`.
pub fn max_leaf_bruteforce(g: &Graph) -> Result<OracleResult<SpanningTree>, OracleError> {
    guard("vertex count", g.vertex_count(), TREE_GUARD)?;
    if g.is_empty() || !graph::is_connected(g) {
        return Err(OracleError::Disconnected);
    }
    let m = Masks::new(g);
    let n = m.n();
    if n == 1 {
        return Ok(OracleResult {
            optimum: 1,
            witness: SpanningTree::new(vec![m.ids[0]], Vec::new()),
        });
    }
    let adj = &m.adj;
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).filter(move |&v| adj[u] >> v & 1 == 1).map(move |v| (u, v)))
        .collect();

    struct Search<'a> {
        n: usize,
        edges: &'a [(usize, usize)],
        parent: Vec<usize>,
        size: Vec<usize>,
        degree: Vec<usize>,
        chosen: Vec<usize>,
        best: usize,
        best_edges: Vec<usize>,
    }

    impl Search<'_> {
        fn find(&self, mut v: usize) -> usize {
            while self.parent[v] != v {
                v = self.parent[v];
            }
            v
        }

        fn run(&mut self, idx: usize) {
            let need = self.n - 1 - self.chosen.len();
            if need == 0 {
                let leaves = self.degree.iter().filter(|&&d| d == 1).count();
                if leaves > self.best {
                    self.best = leaves;
                    self.best_edges = self.chosen.clone();
                }
                return;
            }
            if self.edges.len() - idx < need {
                return;
            }
            let (u, v) = self.edges[idx];
            let (ru, rv) = (self.find(u), self.find(v));
            if ru != rv {
                let (big, small) = if self.size[ru] >= self.size[rv] {
                    (ru, rv)
                } else {
                    (rv, ru)
                };
                self.parent[small] = big;
                self.size[big] += self.size[small];
                self.degree[u] += 1;
                self.degree[v] += 1;
                self.chosen.push(idx);
                self.run(idx + 1);
                self.chosen.pop();
                self.degree[u] -= 1;
                self.degree[v] -= 1;
                self.size[big] -= self.size[small];
                self.parent[small] = small;
            }
            self.run(idx + 1);
        }
    }

    let mut search = Search {
        n,
        edges: &edges,
        parent: (0..n).collect(),
        size: vec![1; n],
        degree: vec![0; n],
        chosen: Vec::new(),
        best: 0,
        best_edges: Vec::new(),
    };
    search.run(0);
    let tree_edges = search
        .best_edges
        .iter()
        .map(|&i| (m.ids[edges[i].0], m.ids[edges[i].1]))
        .collect();
    Ok(OracleResult {
        optimum: search.best,
        witness: SpanningTree::new(m.ids.clone(), tree_edges),
    })
}

/// Some set of degree-2 vertices whose removal leaves at least two
/// components, or `None`. Subsets are tried in increasing bitmask order.
pub fn deg2_separator_witness(g: &Graph) -> Result<Option<VertexSet>, OracleError> {
    let twos: Vec<Vertex> = g.vertices().filter(|&v| g.degree(v) == 2).collect();
    guard("degree-2 vertex count", twos.len(), SUBSET_GUARD)?;
    for mask in 1u32..(1u32 << twos.len()) {
        let set: VertexSet = (0..twos.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| twos[i])
            .collect();
        if graph::component_count_without(g, &set) >= 2 {
            return Ok(Some(set));
        }
    }
    Ok(None)
}

/// A maximum-cardinality collection of vertex-disjoint cycles.
pub fn best_cycle_collection_bruteforce(g: &Graph) -> Result<CycleCollection, OracleError> {
    guard("vertex count", g.vertex_count(), CYCLE_GUARD)?;
    let m = Masks::new(g);
    let n = m.n();
    // one representative cycle per vertex set
    let mut cycles: Vec<Option<Vec<usize>>> = vec![None; 1 << n];
    fn extend(m: &Masks, start: usize, path: &mut Vec<usize>, used: u32, out: &mut [Option<Vec<usize>>]) {
        let last = *path.last().unwrap();
        if path.len() >= 3 && m.adj[last] >> start & 1 == 1 && path[1] < last {
            out[used as usize].get_or_insert_with(|| path.clone());
        }
        let mut cand = m.adj[last] & !used & !((1u32 << (start + 1)) - 1);
        while cand != 0 {
            let w = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            path.push(w);
            extend(m, start, path, used | 1 << w, out);
            path.pop();
        }
    }
    for s in 0..n {
        extend(&m, s, &mut vec![s], 1 << s, &mut cycles);
    }

    // best[mask] = most disjoint cycles inside `mask`
    let size = 1usize << n;
    let mut best = vec![0usize; size];
    let mut choice = vec![0usize; size];
    for mask in 1..size {
        let low = mask & mask.wrapping_neg();
        best[mask] = best[mask & !low];
        choice[mask] = 0;
        // cycles containing the lowest vertex of `mask`
        let rest = mask & !low;
        let mut sub = rest;
        loop {
            let c = sub | low;
            if cycles[c].is_some() && 1 + best[mask & !c] > best[mask] {
                best[mask] = 1 + best[mask & !c];
                choice[mask] = c;
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    let mut out = Vec::new();
    let mut mask = size - 1;
    while mask != 0 {
        let c = choice[mask];
        if c == 0 {
            mask &= mask - 1;
        } else {
            let seq = cycles[c].as_ref().unwrap();
            out.push(seq.iter().map(|&i| m.ids[i]).collect());
            mask &= !c;
        }
    }
    Ok(CycleCollection::new(out))
}
