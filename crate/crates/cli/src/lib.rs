//! File handling, oracle solving and the benchmark harness behind the
//! `leafkernel` binary.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use leafkernel::io::{self, CorpusItem, IoError};
use leafkernel::kernel::{KernelError, Pipeline};
use leafkernel::oracle::{self, OracleError};
use leafkernel::{Certificate, Instance, KernelOutcome, Problem};
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Format { path: PathBuf, source: IoError },
    #[error(transparent)]
    Io(#[from] IoError),
    #[error("{id}: {source}")]
    Kernel { id: String, source: KernelError },
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("cannot write CSV to {path}: {source}")]
    Csv { path: PathBuf, source: csv::Error },
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_instance(path: &Path) -> Result<Instance, CliError> {
    io::parse_instance(&read_text(path)?).map_err(|source| CliError::Format {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_outcome(path: &Path) -> Result<KernelOutcome, CliError> {
    io::parse_outcome(&read_text(path)?).map_err(|source| CliError::Format {
        path: path.to_path_buf(),
        source,
    })
}

/// Exact answer to an instance by exhaustive search, as a decided outcome
/// whose certificate is an optimal solution when the answer is YES.
pub fn solve_exact(inst: &Instance) -> Result<KernelOutcome, CliError> {
    let g = &inst.graph;
    let k = inst.parameter;
    let decided = |yes: bool, certificate: Certificate| KernelOutcome::Decided {
        yes,
        certificate: if yes { certificate } else { Certificate::Empty },
    };
    Ok(match inst.problem {
        Problem::Nsis => match oracle::max_nsis_bruteforce(g)? {
            Some(best) => decided(best.optimum as i64 >= k, Certificate::NsisSet(best.witness)),
            None => decided(k <= 0, Certificate::Empty),
        },
        Problem::Cvc => match oracle::min_cvc_bruteforce(g)? {
            Some(best) => {
                let yes = best.optimum as i64 <= k;
                let rest = g.vertices().filter(|v| !best.witness.contains(v)).collect();
                let n = g.vertex_count() as i64;
                let certificate = if n - k <= 0 {
                    Certificate::Empty
                } else {
                    Certificate::NsisSet(rest)
                };
                decided(yes, certificate)
            }
            None => decided(false, Certificate::Empty),
        },
        Problem::MaxLeaf => {
            if k <= 0 {
                decided(true, Certificate::Empty)
            } else if g.is_empty() || !leafkernel::graph::is_connected(g) {
                decided(false, Certificate::Empty)
            } else {
                let best = oracle::max_leaf_bruteforce(g)?;
                decided(best.optimum as i64 >= k, Certificate::MaxLeafTree(best.witness.edges))
            }
        }
    })
}

/// Checks the certificate of a decided outcome against `inst`. A CVC
/// instance is certified by the complement of its cover, an NSIS set of
/// size `n − k`.
pub fn certificate_holds(inst: &Instance, outcome: &KernelOutcome) -> bool {
    let Some(certificate) = outcome.certificate() else {
        return false;
    };
    if !matches!(outcome, KernelOutcome::Decided { yes: true, .. }) {
        return false;
    }
    let parameter = match inst.problem {
        Problem::Cvc => inst.graph.vertex_count() as i64 - inst.parameter,
        Problem::Nsis | Problem::MaxLeaf => inst.parameter,
    };
    leafkernel::kernel::verify_certificate(&inst.graph, certificate, parameter)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub id: String,
    pub n: usize,
    pub m: usize,
    pub parameter: i64,
    /// `yes`, `no` or `reduced`.
    pub outcome: &'static str,
    pub kernel_size: usize,
    pub seconds: f64,
}

pub const BENCH_HEADER: [&str; 7] = ["id", "n", "m", "parameter", "outcome", "kernel_size", "seconds"];

fn bench_one(item: &CorpusItem, pipeline: Pipeline) -> Result<BenchRow, CliError> {
    let inst = io::generate_instance(item.family, item.size, item.seed, pipeline.problem())?;
    let start = Instant::now();
    let out = pipeline.run(&inst).map_err(|source| CliError::Kernel {
        id: item.id.clone(),
        source,
    })?;
    let seconds = start.elapsed().as_secs_f64();
    Ok(BenchRow {
        id: item.id.clone(),
        n: inst.graph.vertex_count(),
        m: inst.graph.edge_count(),
        parameter: inst.parameter,
        outcome: match out {
            KernelOutcome::Decided { yes: true, .. } => "yes",
            KernelOutcome::Decided { yes: false, .. } => "no",
            KernelOutcome::Reduced { .. } => "reduced",
        },
        kernel_size: out.kernel_size(),
        seconds,
    })
}

/// Runs `pipeline` on every corpus item in parallel; rows keep corpus order.
pub fn bench_rows(items: &[CorpusItem], pipeline: Pipeline) -> Result<Vec<BenchRow>, CliError> {
    items.par_iter().map(|item| bench_one(item, pipeline)).collect()
}

pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(BENCH_HEADER)?;
    for r in rows {
        w.write_record([
            r.id.clone(),
            r.n.to_string(),
            r.m.to_string(),
            r.parameter.to_string(),
            r.outcome.to_string(),
            r.kernel_size.to_string(),
            format!("{:.6}", r.seconds),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Generates the corpus described by `spec`, kernelizes it and writes the
/// CSV to `path`.
pub fn run_bench(spec: &str, pipeline: Pipeline, path: &Path) -> Result<Vec<BenchRow>, CliError> {
    let items = io::parse_corpus(spec)?;
    let rows = bench_rows(&items, pipeline)?;
    let file = fs::File::create(path).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })?;
    write_csv(&rows, file).map_err(|source| CliError::Csv {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use leafkernel::NsisVariant;

    #[test]
    fn empty_corpus_is_header_only() {
        let mut buf = Vec::new();
        write_csv(&[], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "id,n,m,parameter,outcome,kernel_size,seconds\n"
        );
    }

    #[test]
    fn rows_follow_corpus_order() {
        let items = io::parse_corpus("grid:2..6@0,1;hub3:1..4").unwrap();
        let rows = bench_rows(&items, Pipeline::Nsis(NsisVariant::Nine)).unwrap();
        let ids: Vec<_> = rows.iter().map(|r| r.id.clone()).collect();
        let expected: Vec<_> = items.iter().map(|i| i.id.clone()).collect();
        assert_eq!(ids, expected);
    }

    #[test]
    fn exact_solver_certifies_itself() {
        for problem in [Problem::Nsis, Problem::Cvc, Problem::MaxLeaf] {
            let inst = io::generate_instance(io::Family::Grid, 3, 0, problem).unwrap();
            let out = solve_exact(&inst).unwrap();
            if let KernelOutcome::Decided { yes: true, .. } = out {
                assert!(certificate_holds(&inst, &out), "{problem}");
            }
        }
    }
}
