//! Instance files, outcome documents, graph6 and seeded generators.
//!
//! Instance files follow the DIMACS edge-list layout:
//!
//! ```text
//! c comment
//! p nsis 3 3 1
//! e 0 1
//! e 1 2
//! e 2 0
//! ```
//!
//! Graphs whose ids are not `0..n` (reduced instances) are written compacted
//! with a `c ids bound=B v0 v1 …` line that restores the original ids.
//!
//! Random families draw from ChaCha8 seeded with `seed_from_u64(seed)`.

use std::collections::VecDeque;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, Vertex, VertexSet};
use crate::kernel::{Certificate, KernelOutcome};
use crate::reduction::{Instance, Problem, ReductionTrace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: loop at vertex {vertex}")]
    Loop { line: usize, vertex: Vertex },
    #[error("line {line}: duplicate edge ({u}, {v})")]
    DuplicateEdge { line: usize, u: Vertex, v: Vertex },
    #[error("line {line}: vertex {vertex} out of range for n = {n}")]
    OutOfRange { line: usize, vertex: Vertex, n: usize },
    #[error("missing `p` header")]
    MissingHeader,
    #[error("header declares {declared} edges, found {found}")]
    EdgeCount { declared: usize, found: usize },
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("size must be at least 1")]
    BadSize,
    #[error("corpus entry `{entry}`: {message}")]
    Corpus { entry: String, message: String },
    #[error("invalid graph6 string: {0}")]
    Graph6(String),
}

fn syntax(line: usize, message: impl Into<String>) -> IoError {
    IoError::Syntax {
        line,
        message: message.into(),
    }
}

fn number<T: FromStr>(line: usize, token: Option<&str>, what: &str) -> Result<T, IoError> {
    let token = token.ok_or_else(|| syntax(line, format!("missing {what}")))?;
    token
        .parse()
        .map_err(|_| syntax(line, format!("invalid {what} `{token}`")))
}

/// Parses an instance file. Errors carry 1-based line numbers.
pub fn parse_instance(text: &str) -> Result<Instance, IoError> {
    let mut header: Option<(Problem, usize, usize, i64)> = None;
    let mut ids: Option<(usize, Vec<Vertex>)> = None;
    let mut graph = Graph::new(0);
    let mut edges = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut tokens = raw.split_whitespace();
        match tokens.next() {
            None => {}
            Some("c") => {
                if tokens.next() == Some("ids") {
                    let bound = tokens
                        .next()
                        .and_then(|t| t.strip_prefix("bound="))
                        .ok_or_else(|| syntax(line, "expected `bound=` in id map"))?;
                    let bound = number(line, Some(bound), "id bound")?;
                    let list = tokens
                        .map(|t| number(line, Some(t), "id"))
                        .collect::<Result<Vec<Vertex>, _>>()?;
                    ids = Some((bound, list));
                }
            }
            Some("p") => {
                if header.is_some() {
                    return Err(syntax(line, "second `p` line"));
                }
                let problem = tokens
                    .next()
                    .ok_or_else(|| syntax(line, "missing problem"))?
                    .parse::<Problem>()
                    .map_err(|e| syntax(line, e.to_string()))?;
                let n = number(line, tokens.next(), "vertex count")?;
                let m = number(line, tokens.next(), "edge count")?;
                let parameter = number(line, tokens.next(), "parameter")?;
                if tokens.next().is_some() {
                    return Err(syntax(line, "trailing tokens"));
                }
                graph = Graph::new(n);
                header = Some((problem, n, m, parameter));
            }
            Some("e") => {
                let (_, n, _, _) = header.ok_or_else(|| syntax(line, "edge before `p` line"))?;
                let u: Vertex = number(line, tokens.next(), "endpoint")?;
                let v: Vertex = number(line, tokens.next(), "endpoint")?;
                if tokens.next().is_some() {
                    return Err(syntax(line, "trailing tokens"));
                }
                if u == v {
                    return Err(IoError::Loop { line, vertex: u });
                }
                if let Some(&vertex) = [u, v].iter().find(|&&w| w >= n) {
                    return Err(IoError::OutOfRange { line, vertex, n });
                }
                if !graph.add_edge(u, v).expect("endpoints checked") {
                    return Err(IoError::DuplicateEdge { line, u, v });
                }
                edges += 1;
            }
            Some(other) => return Err(syntax(line, format!("unknown line type `{other}`"))),
        }
    }
    let (problem, n, m, parameter) = header.ok_or(IoError::MissingHeader)?;
    if m != edges {
        return Err(IoError::EdgeCount {
            declared: m,
            found: edges,
        });
    }
    if let Some((bound, list)) = ids {
        if list.len() != n || list.iter().any(|&v| v >= bound) || list.windows(2).any(|w| w[0] >= w[1]) {
            return Err(syntax(0, "id map does not match the header"));
        }
        let mut g = Graph::new(bound);
        let keep: VertexSet = list.iter().copied().collect();
        for v in 0..bound {
            if !keep.contains(&v) {
                g.remove_vertex(v).expect("fresh vertex");
            }
        }
        for (u, v) in graph.edges() {
            g.add_edge(list[u], list[v]).expect("mapped edge");
        }
        graph = g;
    }
    Ok(Instance::new(graph, problem, parameter))
}

/// Writes an instance file; `parse_instance` inverts it exactly.
pub fn serialize_instance(inst: &Instance) -> String {
    let (g, ids) = inst.graph.compact();
    let mut out = String::new();
    let identity = inst.graph.id_bound() == ids.len();
    if !identity {
        write!(out, "c ids bound={}", inst.graph.id_bound()).unwrap();
        for v in &ids {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    writeln!(
        out,
        "p {} {} {} {}",
        inst.problem,
        g.vertex_count(),
        g.edge_count(),
        inst.parameter
    )
    .unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {u} {v}").unwrap();
    }
    out
}

/// Writes a kernel outcome as a keyed text document.
pub fn serialize_outcome(outcome: &KernelOutcome) -> String {
    let mut out = String::new();
    match outcome {
        KernelOutcome::Decided { yes, certificate } => {
            writeln!(out, "outcome decided").unwrap();
            writeln!(out, "answer {}", if *yes { "yes" } else { "no" }).unwrap();
            writeln!(out, "certificate {}", certificate.kind()).unwrap();
            match certificate {
                Certificate::NsisSet(set) => {
                    out.push_str("set");
                    for v in set {
                        write!(out, " {v}").unwrap();
                    }
                    out.push('\n');
                }
                Certificate::MaxLeafTree(edges) => {
                    for (u, v) in edges {
                        writeln!(out, "edge {u} {v}").unwrap();
                    }
                }
                Certificate::Empty => {}
            }
        }
        KernelOutcome::Reduced {
            instance,
            bound,
            trace,
            cvc_parameter,
        } => {
            writeln!(out, "outcome reduced").unwrap();
            writeln!(out, "bound {bound}").unwrap();
            writeln!(out, "parameter {}", instance.parameter).unwrap();
            if let Some(k) = cvc_parameter {
                writeln!(out, "cvc-parameter {k}").unwrap();
            }
            writeln!(out, "trace {}", trace.len()).unwrap();
            write!(out, "{trace}").unwrap();
            writeln!(out, "instance").unwrap();
            out.push_str(&serialize_instance(instance));
        }
    }
    out
}

/// Parses a document written by [`serialize_outcome`].
pub fn parse_outcome(text: &str) -> Result<KernelOutcome, IoError> {
    let lines: Vec<&str> = text.lines().collect();
    let mut i = 0;
    let mut next = |want: &str| -> Result<(usize, Vec<&str>), IoError> {
        while i < lines.len() && lines[i].trim().is_empty() {
            i += 1;
        }
        let line = i + 1;
        let tokens: Vec<&str> = lines.get(i).map(|l| l.split_whitespace().collect()).unwrap_or_default();
        if tokens.first() != Some(&want) {
            return Err(syntax(line, format!("expected `{want}`")));
        }
        i += 1;
        Ok((line, tokens[1..].to_vec()))
    };
    let (line, kind) = next("outcome")?;
    match kind.as_slice() {
        ["decided"] => {
            let (line, answer) = next("answer")?;
            let yes = match answer.as_slice() {
                ["yes"] => true,
                ["no"] => false,
                _ => return Err(syntax(line, "answer must be yes or no")),
            };
            let (line, cert) = next("certificate")?;
            let certificate = match cert.as_slice() {
                ["nsis-set"] => {
                    let (line, items) = next("set")?;
                    Certificate::NsisSet(
                        items
                            .iter()
                            .map(|t| number(line, Some(t), "vertex"))
                            .collect::<Result<_, _>>()?,
                    )
                }
                ["maxleaf-tree"] => {
                    let mut edges = Vec::new();
                    while let Ok((line, e)) = next("edge") {
                        if e.len() != 2 {
                            return Err(syntax(line, "edge needs two endpoints"));
                        }
                        edges.push((number(line, Some(e[0]), "vertex")?, number(line, Some(e[1]), "vertex")?));
                    }
                    Certificate::MaxLeafTree(edges)
                }
                ["empty"] => Certificate::Empty,
                _ => return Err(syntax(line, "unknown certificate kind")),
            };
            Ok(KernelOutcome::Decided { yes, certificate })
        }
        ["reduced"] => {
            let (line, b) = next("bound")?;
            let bound = number(line, b.first().copied(), "bound")?;
            let (line, p) = next("parameter")?;
            let _: i64 = number(line, p.first().copied(), "parameter")?;
            let cvc_parameter = match next("cvc-parameter") {
                Ok((line, k)) => Some(number(line, k.first().copied(), "cvc parameter")?),
                Err(_) => None,
            };
            let (line, t) = next("trace")?;
            let count: usize = number(line, t.first().copied(), "trace length")?;
            let start = lines
                .iter()
                .position(|l| l.split_whitespace().next() == Some("trace"))
                .expect("trace line seen")
                + 1;
            let end = start + count;
            if lines.len() <= end || lines[end].trim() != "instance" {
                return Err(syntax(end + 1, "expected `instance`"));
            }
            let trace: ReductionTrace = lines[start..end]
                .join("\n")
                .parse()
                .map_err(|e: crate::reduction::ReductionError| syntax(start + 1, e.to_string()))?;
            let instance = parse_instance(&lines[end + 1..].join("\n"))?;
            Ok(KernelOutcome::Reduced {
                instance,
                bound,
                trace,
                cvc_parameter,
            })
        }
        _ => Err(syntax(line, "outcome must be decided or reduced")),
    }
}

/// Decodes a graph6 string (no `>>graph6<<` header).
pub fn parse_graph6(s: &str) -> Result<Graph, IoError> {
    let bytes = s.trim().as_bytes();
    let bad = |m: &str| IoError::Graph6(format!("{m}: `{s}`"));
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(bad("byte outside 63..=126"));
    }
    let (n, rest) = match bytes {
        [126, 126, ..] => return Err(bad("graphs above 258047 vertices are not supported")),
        [126, a, b, c, rest @ ..] => (
            ((*a as usize - 63) << 12) | ((*b as usize - 63) << 6) | (*c as usize - 63),
            rest,
        ),
        [a, rest @ ..] => (*a as usize - 63, rest),
        [] => return Err(bad("empty")),
    };
    let pairs = n * n.saturating_sub(1) / 2;
    if rest.len() != pairs.div_ceil(6) {
        return Err(bad("wrong length"));
    }
    let bit = |k: usize| (rest[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, &edges).map_err(|e| bad(&e.to_string()))
}

/// Generator families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `size × size` grid.
    Grid,
    /// Cubic: a `3·size`-cycle with a hub on every consecutive triple.
    Hub3,
    /// A `4·size`-cycle with a hub on three of every four vertices.
    Hub4,
    /// `size` disjoint triangles.
    Triangles,
    /// A `size`-cycle with random non-crossing chords.
    OuterplanarRandom,
    /// Random triangulation growth with random non-tree edge deletions.
    PlanarRandom,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Grid,
        Family::Hub3,
        Family::Hub4,
        Family::Triangles,
        Family::OuterplanarRandom,
        Family::PlanarRandom,
    ];

    pub fn is_random(self) -> bool {
        matches!(self, Family::OuterplanarRandom | Family::PlanarRandom)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Grid => "grid",
            Family::Hub3 => "hub3",
            Family::Hub4 => "hub4",
            Family::Triangles => "triangles",
            Family::OuterplanarRandom => "outerplanar-random",
            Family::PlanarRandom => "planar-random",
        })
    }
}

impl FromStr for Family {
    type Err = IoError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.to_string() == s)
            .ok_or_else(|| IoError::UnknownFamily(s.to_string()))
    }
}

/// Generates a member of `family`; `seed` only affects random families.
pub fn generate(family: Family, size: usize, seed: u64) -> Result<Graph, IoError> {
    if size == 0 {
        return Err(IoError::BadSize);
    }
    Ok(match family {
        Family::Grid => grid(size, size),
        Family::Hub3 => hub3(size),
        Family::Hub4 => hub4(size),
        Family::Triangles => triangles(size),
        Family::OuterplanarRandom => outerplanar_random(size, seed),
        Family::PlanarRandom => planar_random(size, seed),
    })
}

/// Generated graph wrapped as an instance with the default parameter:
/// `⌈n/4⌉` for NSIS, `⌈n/4⌉` leaves for max leaf and `n - ⌈n/4⌉` for CVC.
pub fn generate_instance(family: Family, size: usize, seed: u64, problem: Problem) -> Result<Instance, IoError> {
    let g = generate(family, size, seed)?;
    let n = g.vertex_count() as i64;
    let quarter = (n + 3) / 4;
    let parameter = match problem {
        Problem::Cvc => n - quarter,
        _ => quarter,
    };
    Ok(Instance::new(g, problem, parameter))
}

pub fn grid(w: usize, h: usize) -> Graph {
    let mut edges = Vec::with_capacity(2 * w * h);
    for r in 0..h {
        for c in 0..w {
            let v = r * w + c;
            if c + 1 < w {
                edges.push((v, v + 1));
            }
            if r + 1 < h {
                edges.push((v, v + w));
            }
        }
    }
    Graph::from_edges(w * h, &edges).expect("grid edges are simple")
}

fn cycle_edges(n: usize) -> Vec<(Vertex, Vertex)> {
    match n {
        0 | 1 => Vec::new(),
        2 => vec![(0, 1)],
        _ => (0..n).map(|i| (i, (i + 1) % n)).collect(),
    }
}

pub fn hub3(k: usize) -> Graph {
    let mut edges = cycle_edges(3 * k);
    for i in 0..k {
        for j in 0..3 {
            edges.push((3 * i + j, 3 * k + i));
        }
    }
    Graph::from_edges(4 * k, &edges).expect("hub3 edges are simple")
}

pub fn hub4(k: usize) -> Graph {
    let mut edges = cycle_edges(4 * k);
    for i in 0..k {
        for j in 1..4 {
            edges.push((4 * i + j, 4 * k + i));
        }
    }
    Graph::from_edges(5 * k, &edges).expect("hub4 edges are simple")
}

pub fn triangles(t: usize) -> Graph {
    let edges: Vec<_> = (0..t)
        .flat_map(|i| [(3 * i, 3 * i + 1), (3 * i + 1, 3 * i + 2), (3 * i + 2, 3 * i)])
        .collect();
    Graph::from_edges(3 * t, &edges).expect("triangle edges are simple")
}

/// The cycle `0..n` plus each chord of a random triangulation with
/// probability 1/2.
pub fn outerplanar_random(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = cycle_edges(n);
    let mut stack = if n >= 3 { vec![(0, n - 1)] } else { Vec::new() };
    while let Some((i, j)) = stack.pop() {
        if j - i < 2 {
            continue;
        }
        let k = rng.gen_range(i + 1..j);
        for (a, b) in [(i, k), (k, j)] {
            if b - a >= 2 {
                if rng.gen_bool(0.5) {
                    edges.push((a, b));
                }
                stack.push((a, b));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("chords are distinct")
}

/// Starts from a triangle, inserts each further vertex into a uniformly
/// random triangular face, then deletes each edge outside a breadth-first
/// spanning tree with probability 3/10.
pub fn planar_random(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if n < 3 {
        return Graph::from_edges(n, &cycle_edges(n)).expect("path edges are simple");
    }
    let mut g = Graph::from_edges(n, &[(0, 1), (1, 2), (2, 0)]).expect("triangle");
    let mut faces: Vec<[Vertex; 3]> = vec![[0, 1, 2], [0, 1, 2]];
    for v in 3..n {
        let f = rng.gen_range(0..faces.len());
        let [a, b, c] = faces[f];
        for w in [a, b, c] {
            g.add_edge(v, w).expect("new vertex");
        }
        faces[f] = [a, b, v];
        faces.push([b, c, v]);
        faces.push([a, c, v]);
    }
    let mut tree = std::collections::BTreeSet::new();
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                tree.insert((u.min(w), u.max(w)));
                queue.push_back(w);
            }
        }
    }
    let edges: Vec<_> = g.edges().collect();
    for (u, v) in edges {
        if !tree.contains(&(u, v)) && rng.gen_bool(0.3) {
            g.remove_edge(u, v);
        }
    }
    g
}

/// One generated instance of a corpus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusItem {
    pub id: String,
    pub family: Family,
    pub size: usize,
    pub seed: u64,
}

/// Parses a corpus spec: entries `FAMILY:SIZES[@SEEDS]` separated by `;` or
/// newlines, where `SIZES` and `SEEDS` are comma lists of numbers or
/// half-open ranges `a..b`. `#` starts a comment. Seeds default to `0`.
pub fn parse_corpus(spec: &str) -> Result<Vec<CorpusItem>, IoError> {
    let mut items = Vec::new();
    for entry in spec
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(|l| l.split(';'))
        .map(str::trim)
        .filter(|e| !e.is_empty())
    {
        let err = |message: &str| IoError::Corpus {
            entry: entry.to_string(),
            message: message.to_string(),
        };
        let (family, rest) = entry.split_once(':').ok_or_else(|| err("expected FAMILY:SIZES"))?;
        let family: Family = family.trim().parse()?;
        let (sizes, seeds) = match rest.split_once('@') {
            Some((s, t)) => (s, Some(t)),
            None => (rest, None),
        };
        let sizes = number_list(sizes).ok_or_else(|| err("bad size list"))?;
        let seeds = match seeds {
            Some(t) => number_list(t).ok_or_else(|| err("bad seed list"))?,
            None => vec![0],
        };
        if sizes.contains(&0) {
            return Err(err("sizes must be positive"));
        }
        for &size in &sizes {
            for &seed in &seeds {
                items.push(CorpusItem {
                    id: format!("{family}-{size}-s{seed}"),
                    family,
                    size: size as usize,
                    seed,
                });
            }
        }
    }
    Ok(items)
}

fn number_list(s: &str) -> Option<Vec<u64>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim) {
        match part.split_once("..") {
            Some((a, b)) => out.extend(a.trim().parse::<u64>().ok()?..b.trim().parse::<u64>().ok()?),
            None => out.push(part.parse().ok()?),
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph;
    use crate::outerplanar;

    #[test]
    fn parse_k3() {
        let inst = parse_instance("c triangle\np nsis 3 3 1\ne 0 1\ne 1 2\ne 2 0\n").unwrap();
        assert_eq!(inst.problem, Problem::Nsis);
        assert_eq!(inst.parameter, 1);
        assert_eq!((inst.graph.vertex_count(), inst.graph.edge_count()), (3, 3));
    }

    #[test]
    fn parse_errors_carry_lines() {
        assert_eq!(
            parse_instance("p nsis 2 1 1\ne 0 0\n"),
            Err(IoError::Loop { line: 2, vertex: 0 })
        );
        assert_eq!(
            parse_instance("p cvc 2 2 1\ne 0 1\ne 1 0\n"),
            Err(IoError::DuplicateEdge { line: 3, u: 1, v: 0 })
        );
        assert!(matches!(
            parse_instance("p nsis 2 1 1\ne 0 5\n"),
            Err(IoError::OutOfRange { line: 2, .. })
        ));
        assert!(matches!(
            parse_instance("p foo 2 0 1\n"),
            Err(IoError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_instance("e 0 1\n"),
            Err(IoError::Syntax { line: 1, .. })
        ));
        assert_eq!(parse_instance("c nothing\n"), Err(IoError::MissingHeader));
        assert!(matches!(
            parse_instance("p nsis 2 2 1\ne 0 1\n"),
            Err(IoError::EdgeCount { .. })
        ));
    }

    #[test]
    fn round_trip_sparse_ids() {
        let mut g = grid(3, 3);
        g.remove_vertex(4).unwrap();
        g.remove_vertex(8).unwrap();
        let inst = Instance::new(g, Problem::Cvc, 4);
        let text = serialize_instance(&inst);
        assert!(text.starts_with("c ids bound=9 "));
        assert_eq!(parse_instance(&text).unwrap(), inst);
    }

    #[test]
    fn generator_examples() {
        let g = hub4(1);
        assert_eq!((g.vertex_count(), g.edge_count()), (5, 7));
        assert!(g.edges().all(|(u, v)| g.degree(u) >= 3 || g.degree(v) >= 3));
        let g = hub3(2);
        assert_eq!(g.vertex_count(), 8);
        assert!(g.vertices().all(|v| g.degree(v) == 3));
        let g = triangles(3);
        let comps = graph::connected_components(&g);
        assert_eq!(comps.len(), 3);
        assert!(comps.iter().all(|c| c.len() == 3));
        assert_eq!(grid(4, 3).edge_count(), 3 * 3 + 4 * 2);
    }

    #[test]
    fn random_families_are_deterministic() {
        for family in [Family::OuterplanarRandom, Family::PlanarRandom] {
            let a = serialize_instance(&generate_instance(family, 40, 7, Problem::Nsis).unwrap());
            let b = serialize_instance(&generate_instance(family, 40, 7, Problem::Nsis).unwrap());
            assert_eq!(a, b);
        }
        for seed in 0..20 {
            let g = outerplanar_random(30, seed);
            assert!(outerplanar::recognize_and_embed(&g).is_ok());
            let p = planar_random(30, seed);
            assert!(graph::is_connected(&p));
            assert!(p.edge_count() <= 3 * 30 - 6);
        }
    }

    #[test]
    fn graph6_small() {
        let g = parse_graph6("Bw").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 3));
        let g = parse_graph6("@").unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert!(parse_graph6("B").is_err());
    }

    #[test]
    fn corpus_specs() {
        let items = parse_corpus("grid:2,3; planar-random:10@0..3 # comment\n").unwrap();
        let ids: Vec<&str> = items.iter().map(|i| i.id.as_str()).collect();
        assert_eq!(
            ids,
            [
                "grid-2-s0",
                "grid-3-s0",
                "planar-random-10-s0",
                "planar-random-10-s1",
                "planar-random-10-s2"
            ]
        );
        assert!(parse_corpus("").unwrap().is_empty());
        assert!(parse_corpus("blob:3").is_err());
        assert!(parse_corpus("grid:x").is_err());
    }

    #[test]
    fn outcome_round_trip() {
        let docs = [
            KernelOutcome::Decided {
                yes: true,
                certificate: Certificate::NsisSet(VertexSet::from([1, 4])),
            },
            KernelOutcome::Decided {
                yes: true,
                certificate: Certificate::MaxLeafTree(vec![(0, 1), (1, 2)]),
            },
            KernelOutcome::Decided {
                yes: false,
                certificate: Certificate::Empty,
            },
            KernelOutcome::Reduced {
                instance: Instance::new(grid(2, 2), Problem::Nsis, 1),
                bound: 9,
                trace: "drop-isolated v=7\n".parse().unwrap(),
                cvc_parameter: Some(3),
            },
        ];
        for d in docs {
            assert_eq!(parse_outcome(&serialize_outcome(&d)).unwrap(), d);
        }
    }
}
