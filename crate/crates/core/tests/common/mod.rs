#![allow(dead_code)]

use leafkernel::graph::{self, Graph};
use leafkernel::io;
use leafkernel::oracle;

const CONNECTED_LE8: &str = include_str!("../data/connected_le8.g6");

/// Every connected graph on at most 8 vertices up to isomorphism, with its
/// planarity flag.
pub fn connected_le8() -> Vec<(Graph, bool)> {
    CONNECTED_LE8
        .lines()
        .map(|l| {
            let (code, planar) = l.split_once(' ').expect("`<graph6> <0|1>`");
            (io::parse_graph6(code).unwrap(), planar == "1")
        })
        .collect()
}

pub fn planar_le8() -> Vec<Graph> {
    connected_le8()
        .into_iter()
        .filter_map(|(g, planar)| planar.then_some(g))
        .collect()
}

/// Connected planar graphs on 9..=14 vertices from the random families.
pub fn planar_9_to_14(per_size: u64) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 9..=14 {
        for seed in 0..per_size {
            out.push(io::planar_random(n, seed));
            out.push(io::outerplanar_random(n, seed));
            out.push(connected_outerplanar(n, seed));
        }
    }
    out.extend([
        io::hub3(2),
        io::hub3(3),
        io::hub4(2),
        io::grid(3, 3),
        io::grid(3, 4),
        io::grid(2, 7),
    ]);
    out
}

/// Larger connected planar graphs from every connected family.
pub fn planar_large() -> Vec<Graph> {
    let mut out = Vec::new();
    for n in [20, 35, 60, 100, 200] {
        for seed in 0..12 {
            out.push(io::planar_random(n, seed));
            out.push(connected_outerplanar(n, seed));
        }
    }
    for k in [1, 2, 5, 10, 25] {
        out.push(io::hub3(k));
        out.push(io::hub4(k));
    }
    for s in [2, 5, 9, 16] {
        out.push(io::grid(s, s));
    }
    out
}

/// A random outerplanar graph with cutvertices: a random outerplanar graph
/// with each edge outside a spanning path deleted with probability 1/3.
pub fn connected_outerplanar(n: usize, seed: u64) -> Graph {
    let g = io::outerplanar_random(n, seed);
    let mut h = g.clone();
    let mut state = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1;
    for (u, v) in g.edges() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        if v != u + 1 && state.is_multiple_of(3) {
            h.remove_edge(u, v);
        }
    }
    h
}

/// A random outerplanar graph that may be disconnected.
pub fn sparse_outerplanar(n: usize, seed: u64) -> Graph {
    let g = io::outerplanar_random(n, seed);
    let mut h = g.clone();
    let mut state = seed.wrapping_add(17).wrapping_mul(0x2545_F491_4F6C_DD1D) | 1;
    for (u, v) in g.edges() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        if state.is_multiple_of(4) {
            h.remove_edge(u, v);
        }
    }
    h
}

pub fn max_nsis(g: &Graph) -> Option<i64> {
    oracle::max_nsis_bruteforce(g).unwrap().map(|r| r.optimum as i64)
}

pub fn min_cvc(g: &Graph) -> Option<i64> {
    oracle::min_cvc_bruteforce(g).unwrap().map(|r| r.optimum as i64)
}

pub fn max_leaf(g: &Graph) -> i64 {
    oracle::max_leaf_bruteforce(g).unwrap().optimum as i64
}

pub fn is_connected(g: &Graph) -> bool {
    graph::is_connected(g)
}
