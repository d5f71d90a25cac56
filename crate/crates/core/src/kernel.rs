//! End-to-end kernelization with certificates.
//!
//! NSIS: preprocess, eliminate separators of 2-vertices, grow a branching
//! spanning tree and look for a large independent set among its leaves. A
//! leaf set of size `ℓ'` answers YES; otherwise the reduced instance has
//! fewer than `9ℓ'` (or `12ℓ'`) vertices.
//!
//! Max leaf: apply the reduction rules, grow a max leaf tree, and answer YES
//! if it has `k'` leaves; otherwise fewer than `5k'` vertices remain.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::bigis::{self, BigisError};
use crate::graph::{self, Graph, Vertex, VertexSet};
use crate::io;
use crate::outerplanar::{self, OuterplanarError};
use crate::reduction::{self, Instance, Problem, ReductionError, ReductionOutcome, ReductionTrace};
use crate::spanning_tree::{self, SpanningTree, Strategy, TreeError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NsisVariant {
    /// Independent set with cycles on the leaf graph.
    Nine,
    /// Largest colour class of a 3-colouring of the leaf graph.
    Twelve,
}

impl NsisVariant {
    pub fn bound(self) -> i64 {
        match self {
            NsisVariant::Nine => 9,
            NsisVariant::Twelve => 12,
        }
    }
}

impl fmt::Display for NsisVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}k", self.bound())
    }
}

impl FromStr for NsisVariant {
    type Err = KernelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "9k" | "9" => Ok(NsisVariant::Nine),
            "12k" | "12" => Ok(NsisVariant::Twelve),
            _ => Err(KernelError::UnknownPipeline(s.to_string())),
        }
    }
}

/// The kernelization pipelines exposed to tools.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pipeline {
    Nsis(NsisVariant),
    MaxLeaf,
}

impl Pipeline {
    pub fn problem(self) -> Problem {
        match self {
            Pipeline::Nsis(_) => Problem::Nsis,
            Pipeline::MaxLeaf => Problem::MaxLeaf,
        }
    }

    pub fn run(self, inst: &Instance) -> Result<KernelOutcome, KernelError> {
        match self {
            Pipeline::Nsis(v) => kernelize_nsis(inst, v),
            Pipeline::MaxLeaf => kernelize_maxleaf(inst),
        }
    }
}

impl fmt::Display for Pipeline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pipeline::Nsis(v) => write!(f, "nsis-{v}"),
            Pipeline::MaxLeaf => f.write_str("maxleaf-5k"),
        }
    }
}

impl FromStr for Pipeline {
    type Err = KernelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "nsis-9k" => Ok(Pipeline::Nsis(NsisVariant::Nine)),
            "nsis-12k" => Ok(Pipeline::Nsis(NsisVariant::Twelve)),
            "maxleaf-5k" => Ok(Pipeline::MaxLeaf),
            _ => Err(KernelError::UnknownPipeline(s.to_string())),
        }
    }
}

/// Evidence for a YES answer, in ids of the original graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    NsisSet(VertexSet),
    MaxLeafTree(Vec<(Vertex, Vertex)>),
    Empty,
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::NsisSet(_) => "nsis-set",
            Certificate::MaxLeafTree(_) => "maxleaf-tree",
            Certificate::Empty => "empty",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KernelOutcome {
    Decided {
        yes: bool,
        certificate: Certificate,
    },
    /// An equivalent instance with fewer than `bound · parameter` vertices.
    Reduced {
        instance: Instance,
        bound: i64,
        trace: ReductionTrace,
        /// Parameter of the equivalent connected vertex cover question.
        cvc_parameter: Option<i64>,
    },
}

impl KernelOutcome {
    pub fn kind(&self) -> &'static str {
        match self {
            KernelOutcome::Decided { .. } => "decided",
            KernelOutcome::Reduced { .. } => "reduced",
        }
    }

    /// Vertex count of the reduced instance, `0` when decided.
    pub fn kernel_size(&self) -> usize {
        match self {
            KernelOutcome::Decided { .. } => 0,
            KernelOutcome::Reduced { instance, .. } => instance.graph.vertex_count(),
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            KernelOutcome::Decided { certificate, .. } => Some(certificate),
            KernelOutcome::Reduced { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("expected a {expected} instance, found {found}")]
    WrongProblem { expected: Problem, found: Problem },
    #[error("unknown pipeline `{0}`")]
    UnknownPipeline(String),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    /// A guarantee of the construction failed; `repro` is the instance file.
    #[error("internal invariant violated: {reason}\n{repro}")]
    Invariant { reason: String, repro: String },
}

fn invariant(inst: &Instance, reason: impl fmt::Display) -> KernelError {
    KernelError::Invariant {
        reason: reason.to_string(),
        repro: io::serialize_instance(inst),
    }
}

fn expect(inst: &Instance, expected: Problem) -> Result<(), KernelError> {
    if inst.problem == expected {
        Ok(())
    } else {
        Err(KernelError::WrongProblem {
            expected,
            found: inst.problem,
        })
    }
}

/// Kernelizes an NSIS instance (any graph, any `ℓ`).
pub fn kernelize_nsis(inst: &Instance, variant: NsisVariant) -> Result<KernelOutcome, KernelError> {
    expect(inst, Problem::Nsis)?;
    let original = &inst.graph;
    let yes = |reduced: &Graph, trace: &ReductionTrace, set: &VertexSet| KernelOutcome::Decided {
        yes: true,
        certificate: Certificate::NsisSet(trace.lift_nsis(original, reduced, set)),
    };
    let (pre, mut trace) = match reduction::nsis_preprocess(inst)? {
        ReductionOutcome::Decided {
            yes: true,
            graph,
            trace,
        } => return Ok(yes(&graph, &trace, &VertexSet::new())),
        ReductionOutcome::Decided { yes: false, .. } => {
            return Ok(KernelOutcome::Decided {
                yes: false,
                certificate: Certificate::Empty,
            })
        }
        ReductionOutcome::Reduced { instance, trace } => (instance, trace),
    };
    let (reduced, rest) = reduction::reduce_dual_separator_exhaustive(&pre)?;
    trace.extend(rest);
    let g = &reduced.graph;
    let ell = reduced.parameter;
    if ell <= 0 {
        return Ok(yes(g, &trace, &VertexSet::new()));
    }
    let set = independent_leaves(g, variant).map_err(|e| invariant(inst, e))?;
    if set.len() as i64 >= ell {
        return Ok(yes(g, &trace, &set));
    }
    let n = g.vertex_count() as i64;
    let bound = variant.bound();
    if n >= bound * ell {
        return Err(invariant(
            inst,
            format!("{n} vertices remain with parameter {ell}, above the {variant} bound"),
        ));
    }
    Ok(KernelOutcome::Reduced {
        cvc_parameter: Some(n - ell),
        instance: reduced,
        bound,
        trace,
    })
}

/// An independent set of leaves of the branching tree of `g`.
fn independent_leaves(g: &Graph, variant: NsisVariant) -> Result<VertexSet, String> {
    let t = spanning_tree::build_spanning_tree(g, Strategy::Branching).map_err(|e: TreeError| e.to_string())?;
    let (h, ids) = outerplanar::induced_leaf_subgraph(g, &t);
    let local = match variant {
        NsisVariant::Twelve => {
            let colouring = outerplanar::three_color_outerplanar(&h).map_err(|e: OuterplanarError| e.to_string())?;
            outerplanar::largest_color_class(&colouring)
        }
        NsisVariant::Nine => {
            bigis::independent_set_with_cycles(&h)
                .map_err(|e: BigisError| e.to_string())?
                .0
        }
    };
    Ok(local.into_iter().map(|v| ids[v]).collect())
}

/// Kernelizes a max leaf instance. Graphs without a spanning tree are NO.
pub fn kernelize_maxleaf(inst: &Instance) -> Result<KernelOutcome, KernelError> {
    expect(inst, Problem::MaxLeaf)?;
    let no = KernelOutcome::Decided {
        yes: false,
        certificate: Certificate::Empty,
    };
    if inst.graph.is_empty() || !graph::is_connected(&inst.graph) {
        return Ok(no);
    }
    let tree_yes = |trace: &ReductionTrace, edges: &[(Vertex, Vertex)]| KernelOutcome::Decided {
        yes: true,
        certificate: Certificate::MaxLeafTree(trace.lift_tree(edges)),
    };
    let (reduced, trace) = match reduction::reduce_maxleaf(inst)? {
        ReductionOutcome::Decided {
            yes: true,
            graph,
            trace,
        } => {
            let edges: Vec<_> = graph.edges().collect();
            return Ok(tree_yes(&trace, &edges));
        }
        ReductionOutcome::Decided { yes: false, .. } => return Ok(no),
        ReductionOutcome::Reduced { instance, trace } => (instance, trace),
    };
    let t = spanning_tree::build_spanning_tree(&reduced.graph, Strategy::MaxLeaf).map_err(|e| invariant(inst, e))?;
    let k = reduced.parameter;
    let edges = t.edges();
    let leaves = SpanningTree::new(reduced.graph.vertices().collect(), edges.clone()).leaf_count() as i64;
    if leaves >= k {
        return Ok(tree_yes(&trace, &edges));
    }
    let n = reduced.graph.vertex_count() as i64;
    if n >= 5 * k {
        return Err(invariant(
            inst,
            format!("{n} vertices remain with parameter {k}, above the 5k bound"),
        ));
    }
    Ok(KernelOutcome::Reduced {
        instance: reduced,
        bound: 5,
        trace,
        cvc_parameter: None,
    })
}

/// Checks a certificate against the original graph. [`Certificate::Empty`]
/// only certifies a non-positive parameter.
pub fn verify_certificate(g: &Graph, c: &Certificate, parameter: i64) -> bool {
    match c {
        Certificate::NsisSet(set) => set.len() as i64 >= parameter && graph::is_nonseparating_independent(g, set),
        Certificate::MaxLeafTree(edges) => {
            let t = SpanningTree::new(g.vertices().collect(), edges.clone());
            t.is_spanning_tree_of(g) && t.leaf_count() as i64 >= parameter
        }
        Certificate::Empty => parameter <= 0,
    }
}
