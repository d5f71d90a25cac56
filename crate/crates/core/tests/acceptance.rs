//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use leafkernel::bigis::{self, CycleCollection};
use leafkernel::graph::{Graph, VertexSet};
use leafkernel::kernel::{self, KernelOutcome, NsisVariant};
use leafkernel::oracle;
use leafkernel::outerplanar;
use leafkernel::reduction::{self, Instance, Problem, ReductionOutcome, Step};
use leafkernel::spanning_tree::{self, Strategy, TreeRecord};
use leafkernel::{io, Certificate};

type Verdict = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Verdict + 'a>);

/// Reduced NSIS graphs of every corpus graph, with the original.
fn reduced_corpus() -> Vec<(Graph, Graph)> {
    let mut all = common::planar_le8();
    all.extend(common::planar_9_to_14(15));
    all.extend(common::planar_large());
    all.into_iter()
        .map(|g| {
            let (r, _) = reduction::reduce_dual_separator_exhaustive(&Instance::new(g.clone(), Problem::Nsis, 0))
                .expect("connected input");
            (g, r.graph)
        })
        .collect()
}

fn maxleaf_reduced(g: &Graph) -> Option<Graph> {
    match reduction::reduce_maxleaf(&Instance::new(g.clone(), Problem::MaxLeaf, 1)).unwrap() {
        ReductionOutcome::Reduced { instance, .. } => Some(instance.graph),
        ReductionOutcome::Decided { .. } => None,
    }
}

fn rule_equivalence() -> Verdict {
    let mut checked = 0usize;
    let mut mismatches = Vec::new();
    for g in common::planar_le8() {
        let n = g.vertex_count() as i64;
        let (r, trace) = reduction::reduce_dual_separator_exhaustive(&Instance::new(g.clone(), Problem::Nsis, 0))
            .map_err(|e| e.to_string())?;
        let nsis_delta: i64 = trace.steps.iter().map(Step::nsis_delta).sum();
        let cvc_delta: i64 = trace.steps.iter().map(Step::cvc_delta).sum();
        let (before, after) = (common::max_nsis(&g).unwrap(), common::max_nsis(&r.graph).unwrap());
        let (cvc_before, cvc_after) = (common::min_cvc(&g).unwrap(), common::min_cvc(&r.graph).unwrap());
        for p in 0..=n + 1 {
            checked += 2;
            if (before >= p) != (after >= p + nsis_delta) {
                mismatches.push(format!("nsis {:?} ℓ={p}", g.edges().collect::<Vec<_>>()));
            }
            if (cvc_before <= p) != (cvc_after <= p + cvc_delta) {
                mismatches.push(format!("cvc {:?} k={p}", g.edges().collect::<Vec<_>>()));
            }
        }
        let best = common::max_leaf(&g);
        for k in 0..=n + 1 {
            checked += 1;
            let answer = match reduction::reduce_maxleaf(&Instance::new(g.clone(), Problem::MaxLeaf, k))
                .map_err(|e| e.to_string())?
            {
                ReductionOutcome::Decided { yes, .. } => yes,
                ReductionOutcome::Reduced { instance, .. } => common::max_leaf(&instance.graph) >= instance.parameter,
            };
            if answer != (best >= k) {
                mismatches.push(format!("maxleaf {:?} k={k}", g.edges().collect::<Vec<_>>()));
            }
        }
    }
    if mismatches.is_empty() {
        Ok(format!("{checked} (graph, rule, parameter) answers agree"))
    } else {
        Err(format!("{} mismatches, first: {}", mismatches.len(), mismatches[0]))
    }
}

fn separator_elimination() -> Verdict {
    let mut graphs = common::planar_le8();
    graphs.extend(common::planar_9_to_14(60));
    let mut checked = 0;
    for g in graphs {
        let (r, _) = reduction::reduce_dual_separator_exhaustive(&Instance::new(g.clone(), Problem::Nsis, 0))
            .map_err(|e| e.to_string())?;
        checked += 1;
        if let Some(w) = oracle::deg2_separator_witness(&r.graph).map_err(|e| e.to_string())? {
            return Err(format!(
                "separator {w:?} survives in {:?}",
                r.graph.edges().collect::<Vec<_>>()
            ));
        }
    }
    Ok(format!("no 2-vertex separator in {checked} reduced graphs"))
}

/// Built trees for criteria 3 and 4.
struct Trees {
    generic: TreeRecord,
    branching: TreeRecord,
    maxleaf: Option<(Graph, TreeRecord)>,
}

fn build_all(original: &Graph, reduced: &Graph) -> Result<Trees, String> {
    let generic = spanning_tree::build_spanning_tree(reduced, Strategy::Generic).map_err(|e| e.to_string())?;
    let branching = spanning_tree::build_spanning_tree(reduced, Strategy::Branching).map_err(|e| e.to_string())?;
    let maxleaf = match maxleaf_reduced(original) {
        Some(h) => {
            let t = spanning_tree::build_spanning_tree(&h, Strategy::MaxLeaf).map_err(|e| e.to_string())?;
            Some((h, t))
        }
        None => None,
    };
    Ok(Trees {
        generic,
        branching,
        maxleaf,
    })
}

fn leaf_bounds(corpus: &[(Graph, Graph)]) -> Verdict {
    let (mut adversarial, mut bigis_checks) = (0, 0);
    for (g, r) in corpus {
        let trees = build_all(g, r)?;
        let none = CycleCollection::default();
        let check = |h: &Graph, t: &TreeRecord, c: &CycleCollection| -> Result<(), String> {
            let b = spanning_tree::leaf_bound_check(h, t, c).map_err(|e| e.to_string())?;
            if b.holds {
                Ok(())
            } else {
                Err(format!(
                    "{} tree: {} < {} on {:?}",
                    t.strategy,
                    b.lhs,
                    b.rhs,
                    h.edges().collect::<Vec<_>>()
                ))
            }
        };
        check(r, &trees.generic, &none)?;
        if let Some((h, t)) = &trees.maxleaf {
            check(h, t, &none)?;
        }
        let (leaf_graph, ids) = outerplanar::induced_leaf_subgraph(r, &trees.branching);
        if leaf_graph.vertex_count() <= oracle::CYCLE_GUARD {
            let c = oracle::best_cycle_collection_bruteforce(&leaf_graph).map_err(|e| e.to_string())?;
            check(r, &trees.branching, &c.map(&ids))?;
            adversarial += 1;
        }
        let (_, c) = bigis::independent_set_with_cycles(&leaf_graph).map_err(|e| e.to_string())?;
        check(r, &trees.branching, &c.map(&ids))?;
        bigis_checks += 1;
    }
    Ok(format!(
        "{} graphs: generic 4|L|≥n, maxleaf 5|L|≥n, branching 4|L|≥n+3|C| ({adversarial} adversarial, {bigis_checks} bigis collections)",
        corpus.len()
    ))
}

fn counting_identities(corpus: &[(Graph, Graph)]) -> Verdict {
    let mut trees_checked = 0;
    for (g, r) in corpus {
        let trees = build_all(g, r)?;
        let mut all = vec![trees.generic, trees.branching];
        all.extend(trees.maxleaf.map(|(_, t)| t));
        for t in &all {
            let stats = spanning_tree::tree_stats(t).map_err(|e| format!("{} tree: {e}", t.strategy))?;
            stats.check_bounds().map_err(|e| format!("{} tree: {e}", t.strategy))?;
            trees_checked += 1;
        }
    }
    Ok(format!(
        "identities and |X2|, |X3∩P≥2|, |X4| bounds exact on {trees_checked} trees"
    ))
}

fn leaf_graphs_outerplanar(corpus: &[(Graph, Graph)]) -> Verdict {
    let mut checked = 0;
    for (g, r) in corpus {
        let trees = build_all(g, r)?;
        let mut pairs = vec![(r, &trees.generic), (r, &trees.branching)];
        if let Some((h, t)) = &trees.maxleaf {
            pairs.push((h, t));
        }
        for (h, t) in pairs {
            let (leaf_graph, _) = outerplanar::induced_leaf_subgraph(h, t);
            outerplanar::recognize_and_embed(&leaf_graph)
                .map_err(|e| format!("{e} in leaf graph of {:?}", h.edges().collect::<Vec<_>>()))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} leaf graphs recognized as outerplanar"))
}

fn bigis_inequality() -> Verdict {
    let mut count = 0;
    let mut min_slack = i64::MAX;
    for seed in 0..1200u64 {
        let n = 1 + (seed as usize * 7919) % 200;
        let h = match seed % 3 {
            0 => io::outerplanar_random(n, seed),
            1 => common::connected_outerplanar(n, seed),
            _ => common::sparse_outerplanar(n, seed),
        };
        let out = bigis::independent_set_with_cycles_traced(&h).map_err(|e| e.to_string())?;
        let slack = out.slack(h.vertex_count());
        if slack < 0 || !leafkernel::graph::is_independent(&h, &out.independent) {
            return Err(format!("slack {slack} on {:?}", h.edges().collect::<Vec<_>>()));
        }
        out.cycles.validate(&h).map_err(|e| e.to_string())?;
        min_slack = min_slack.min(slack);
        count += 1;
    }
    for t in 1..=20 {
        let h = io::triangles(t);
        let out = bigis::independent_set_with_cycles_traced(&h).map_err(|e| e.to_string())?;
        if out.slack(h.vertex_count()) != 0 {
            return Err(format!("triangles({t}) has slack {}", out.slack(h.vertex_count())));
        }
    }
    Ok(format!(
        "9|I| ≥ 4n − 3|C| on {count} outerplanar graphs (min slack {min_slack}); equality on triangles(1..=20)"
    ))
}

/// Runs every pipeline over the corpus; returns (reduced, decided-yes) counts.
fn kernel_runs(
    mut visit: impl FnMut(&Instance, &KernelOutcome, i64) -> Result<(), String>,
) -> Result<(usize, usize), String> {
    let mut graphs = common::planar_le8();
    graphs.extend(common::planar_9_to_14(8));
    graphs.extend(common::planar_large());
    graphs.push(io::triangles(3));
    graphs.push(Graph::new(0));
    let (mut reduced, mut yes) = (0, 0);
    for g in graphs {
        let n = g.vertex_count() as i64;
        let params: Vec<i64> = if n <= 8 {
            (0..=n + 1).collect()
        } else {
            let mut p = vec![1, n / 12, n / 9, n / 8, n / 6, n / 5, n / 4, n / 3, n / 2];
            p.dedup();
            p
        };
        for &p in &params {
            for (inst, bound) in [
                (Instance::new(g.clone(), Problem::Nsis, p), 9),
                (Instance::new(g.clone(), Problem::Nsis, p), 12),
                (Instance::new(g.clone(), Problem::MaxLeaf, p), 5),
            ] {
                let out = match (inst.problem, bound) {
                    (Problem::Nsis, 9) => kernel::kernelize_nsis(&inst, NsisVariant::Nine),
                    (Problem::Nsis, _) => kernel::kernelize_nsis(&inst, NsisVariant::Twelve),
                    _ => kernel::kernelize_maxleaf(&inst),
                }
                .map_err(|e| e.to_string())?;
                match &out {
                    KernelOutcome::Reduced { .. } => reduced += 1,
                    KernelOutcome::Decided { yes: true, .. } => yes += 1,
                    _ => {}
                }
                visit(&inst, &out, bound)?;
            }
        }
    }
    Ok((reduced, yes))
}

fn kernel_bounds() -> Verdict {
    let (reduced, _) = kernel_runs(|inst, out, bound| {
        if let KernelOutcome::Reduced { instance, bound: b, .. } = out {
            let n = instance.graph.vertex_count() as i64;
            if *b != bound || n >= bound * instance.parameter {
                return Err(format!(
                    "n' = {n}, parameter' = {} with bound {bound} from {}",
                    instance.parameter,
                    io::serialize_instance(inst)
                ));
            }
        }
        Ok(())
    })?;
    Ok(format!("{reduced} reduced outcomes within n' < 9ℓ' / 12ℓ' / 5k'"))
}

fn certificates() -> Verdict {
    let (_, yes) = kernel_runs(|inst, out, _| {
        if let KernelOutcome::Decided { yes: true, certificate } = out {
            let kind_ok = matches!(
                (inst.problem, certificate),
                (Problem::Nsis, Certificate::NsisSet(_)) | (Problem::MaxLeaf, Certificate::MaxLeafTree(_))
            );
            if !kind_ok || !kernel::verify_certificate(&inst.graph, certificate, inst.parameter) {
                return Err(format!("{certificate:?} rejected for {}", io::serialize_instance(inst)));
            }
        }
        Ok(())
    })?;
    Ok(format!("{yes} YES certificates verified against original inputs"))
}

fn duality() -> Verdict {
    let mut checked = 0;
    for (g, _) in common::connected_le8() {
        if g.edge_count() == 0 {
            continue;
        }
        let (nsis, cvc) = (common::max_nsis(&g).unwrap(), common::min_cvc(&g).unwrap());
        if nsis + cvc != g.vertex_count() as i64 {
            return Err(format!("{nsis} + {cvc} ≠ n on {:?}", g.edges().collect::<Vec<_>>()));
        }
        let witness = oracle::max_nsis_bruteforce(&g).unwrap().unwrap().witness;
        let cover: VertexSet = g.vertices().filter(|v| !witness.contains(v)).collect();
        if !leafkernel::graph::induces_connected(&g, &cover) {
            return Err("complement of an NSIS is not connected".into());
        }
        checked += 1;
    }
    Ok(format!(
        "min CVC + max NSIS = n on all {checked} connected graphs with an edge, n ≤ 8"
    ))
}

fn near_linearity() -> Verdict {
    let sizes = [(250, 100), (250, 200), (500, 200), (500, 400)];
    let mut times = Vec::new();
    for (w, h) in sizes {
        let g = io::grid(w, h);
        let n = g.vertex_count() as i64;
        let inst = Instance::new(g, Problem::Nsis, (n + 3) / 4);
        let mut best = Duration::MAX;
        for _ in 0..3 {
            let start = Instant::now();
            kernel::kernelize_nsis(&inst, NsisVariant::Nine).map_err(|e| e.to_string())?;
            best = best.min(start.elapsed());
        }
        times.push((n, best));
    }
    let total: Duration = times.iter().map(|t| t.1).sum();
    let ratios: Vec<f64> = times
        .windows(2)
        .map(|w| w[1].1.as_secs_f64() / w[0].1.as_secs_f64())
        .collect();
    let detail = format!(
        "{}; doubling ratios {:?}; total {:.2}s",
        times
            .iter()
            .map(|(n, t)| format!("n={n}: {:.3}s", t.as_secs_f64()))
            .collect::<Vec<_>>()
            .join(", "),
        ratios.iter().map(|r| format!("{r:.2}")).collect::<Vec<_>>(),
        total.as_secs_f64()
    );
    if ratios.iter().all(|&r| r <= 3.0) && total < Duration::from_secs(60) {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn main() -> ExitCode {
    let corpus = reduced_corpus();
    let criteria: Vec<Criterion> = vec![
        ("rule equivalence", Box::new(rule_equivalence)),
        ("separator elimination", Box::new(separator_elimination)),
        ("leaf bounds", Box::new(|| leaf_bounds(&corpus))),
        ("counting identities", Box::new(|| counting_identities(&corpus))),
        ("leaf graphs outerplanar", Box::new(|| leaf_graphs_outerplanar(&corpus))),
        ("independent set with cycles", Box::new(bigis_inequality)),
        ("kernel size bounds", Box::new(kernel_bounds)),
        ("certificates", Box::new(certificates)),
        ("duality identity", Box::new(duality)),
        ("near-linearity", Box::new(near_linearity)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = run();
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("PASS [{:>2}] {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{:>2}] {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
