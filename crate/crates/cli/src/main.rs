//! `effdom`: construct, verify and search for efficient dominating functions.
//!
//! Every command writes one JSON document to standard output and
//! diagnostics to standard error. Exit codes: 0 success, 1 verification
//! failure, 2 usage error.

mod io;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use effdom_core::cover::{
    lee_translates, lift, push, verify_cover, verify_kcover, CoverCertificate,
};
use effdom_core::domination::verify_efficient;
use effdom_core::field::FieldSpec;
use effdom_core::graph::{
    complete, complete_bipartite, cycle, folded_cube, hamming_graph, hypercube, CayleyPresentation,
    Graph, DEFAULT_SIZE_CAP,
};
use effdom_core::hamming::{
    build_plan, construct_function, feasibility, verify_plan, HammingError, VerifyMode,
};
use effdom_core::partition::{
    characteristic_matrix, charpoly_divides_graph, dominatable_eigen_check, is_dominatable,
    PartitionError, DEFAULT_CHARPOLY_CAP,
};
use effdom_core::search::{
    count_efficient, enumerate_efficient, k_spectrum, SearchConfig, DEFAULT_NODE_LIMIT,
};
use effdom_core::spectral::{
    function_from_eigenvector, minus_one_multiplicity, DEFAULT_SPECTRAL_CAP,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::io::{
    read_function, read_graph, read_partition, FunctionDoc, GraphDoc, PartitionDoc, SCHEMA_VERSION,
};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
}

/// Efficient (j,k)-dominating functions on regular graphs.
#[derive(Parser, Debug)]
#[command(name = "effdom", version, about)]
struct Cli {
    /// Worker threads for parallel checks (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest graph to materialize; overrides EFFDOM_SIZE_CAP.
    #[arg(long, global = true)]
    size_cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

/// A finite field GF(q). Without --b, --q must be prime. With --b, --q is
/// either the characteristic p (giving GF(p^b)) or the order p^b itself.
#[derive(Args, Debug, Clone)]
struct FieldArgs {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    b: Option<u32>,
}

impl FieldArgs {
    fn field(&self) -> Result<FieldSpec, CliError> {
        let usage = |e: effdom_core::field::FieldError| CliError::Usage(e.to_string());
        match self.b {
            None => FieldSpec::prime(self.q)
                .map_err(|e| CliError::Usage(format!("{e}; pass --b for prime-power fields"))),
            Some(b) => match FieldSpec::prime(self.q) {
                Ok(_) => FieldSpec::new(self.q, b).map_err(usage),
                Err(_) => {
                    let f = FieldSpec::of_order(self.q).map_err(usage)?;
                    if f.degree() != b {
                        return Err(CliError::Usage(format!(
                            "--q {} is not a prime or a {b}-th prime power",
                            self.q
                        )));
                    }
                    Ok(f)
                }
            },
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum Family {
    Hamming,
    Hypercube,
    Folded,
    Complete,
    Cycle,
    Bipartite,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a graph as Graph JSON.
    Gen {
        family: Family,
        /// Vertex count (complete, cycle) or first side (bipartite).
        #[arg(long)]
        n: Option<usize>,
        /// Second side of a complete bipartite graph.
        #[arg(long)]
        m: Option<usize>,
        /// Dimension (hamming, hypercube, folded).
        #[arg(long)]
        d: Option<usize>,
        /// Field for a Hamming graph.
        #[arg(long, conflicts_with = "alphabet")]
        q: Option<u32>,
        #[arg(long, requires = "q")]
        b: Option<u32>,
        /// Alphabet size for a Hamming graph without field structure.
        #[arg(long)]
        alphabet: Option<usize>,
    },
    /// Check that a function is efficient on a graph.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        function: PathBuf,
    },
    /// Build an efficient (1,k)-dominating function on H(q,d).
    Construct {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: u64,
    },
    /// Which k admit efficient (1,k)-dominating functions on H(q,d).
    Feasible {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        d: usize,
    },
    /// Certify the m-cover of H(q,d), fully or at sampled vertices.
    VerifyPlan {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        d: usize,
        /// Check this many pseudo-random vertices instead of the whole graph.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 42, requires = "sample")]
        seed: u64,
    },
    /// Multiplicity of the eigenvalue -1 and a witness eigenvector.
    Spectrum {
        #[arg(long)]
        graph: PathBuf,
        /// Also emit the dominating function built from the witness.
        #[arg(long)]
        function: bool,
        #[arg(long, default_value_t = DEFAULT_SPECTRAL_CAP)]
        cap: usize,
    },
    /// Exhaustive search for efficient (j,k)-dominating functions.
    Search {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        j: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        count_only: bool,
        /// Backtracking node budget.
        #[arg(long, default_value_t = DEFAULT_NODE_LIMIT)]
        limit: u64,
    },
    /// Solution counts for every k at a fixed j.
    SpectrumK {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        j: u64,
        #[arg(long, default_value_t = DEFAULT_NODE_LIMIT)]
        limit: u64,
    },
    /// Equitability, dominatability and the characteristic polynomial test.
    Partition {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        partition: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CHARPOLY_CAP)]
        cap: usize,
    },
    /// Check that a partition (cell i over base vertex i) is a k-cover.
    Cover {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        partition: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Lift a base function along a cover, or push a fibre-constant one down.
    Lift {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        partition: PathBuf,
        #[arg(long)]
        function: PathBuf,
        #[arg(long)]
        push: bool,
    },
    /// The translates of a perfect code of H(q,d), a cover of K_{(q-1)d+1}.
    Translate {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        d: usize,
        /// Function JSON whose support is the code (default: the constructed one).
        #[arg(long)]
        code: Option<PathBuf>,
    },
}

/// A document to print and whether the command succeeded.
struct Report {
    doc: Value,
    ok: bool,
}

impl Report {
    fn ok(doc: Value) -> Self {
        Report { doc, ok: true }
    }

    fn failed(doc: Value) -> Self {
        Report { doc, ok: false }
    }
}

/// `{"v": 1, ...fields of value}`.
fn versioned<T: Serialize>(value: &T) -> Value {
    let mut doc = serde_json::Map::new();
    doc.insert("v".into(), json!(SCHEMA_VERSION));
    match serde_json::to_value(value).expect("serializable") {
        Value::Object(fields) => doc.extend(fields),
        other => {
            doc.insert("value".into(), other);
        }
    }
    Value::Object(doc)
}

fn with_fields(mut doc: Value, extra: Value) -> Value {
    if let (Value::Object(d), Value::Object(e)) = (&mut doc, extra) {
        d.extend(e);
    }
    doc
}

fn size_cap(flag: Option<usize>) -> Result<usize, CliError> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var("EFFDOM_SIZE_CAP") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("EFFDOM_SIZE_CAP={s} is not an integer"))),
        Err(_) => Ok(DEFAULT_SIZE_CAP),
    }
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

fn required<T>(value: Option<T>, flag: &str, family: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("{family} needs --{flag}")))
}

fn error_doc(message: impl std::fmt::Display, extra: Value) -> Value {
    with_fields(
        json!({"v": SCHEMA_VERSION, "error": message.to_string()}),
        extra,
    )
}

/// Hamming errors that mean "not verified / not constructible" rather than
/// bad input.
fn hamming_failure(e: HammingError) -> Result<Report, CliError> {
    match e {
        HammingError::InfeasibleK { k, reason } => Ok(Report::failed(error_doc(
            &e,
            json!({"k": k, "reason": reason}),
        ))),
        HammingError::CertificateViolation { vertex } => Ok(Report::failed(error_doc(
            &e,
            json!({"verified": false, "vertex": vertex}),
        ))),
        HammingError::TrivialCase { .. } | HammingError::AuditFailure(_) => {
            Ok(Report::failed(error_doc(&e, json!({}))))
        }
        other => Err(usage(other)),
    }
}

fn cover_summary(cert: &CoverCertificate) -> Value {
    json!({
        "base_size": cert.base_size,
        "fold": cert.fold,
        "kind": cert.kind,
        "k": cert.degree(),
    })
}

fn load_cover(
    graph: &Path,
    base: &Path,
    partition: &Path,
    k: usize,
) -> Result<(Graph, Graph, Option<CoverCertificate>), CliError> {
    let x = read_graph(graph)?;
    let y = read_graph(base)?;
    let pi = read_partition(partition, x.n())?;
    let cert = if k == 1 {
        verify_cover(&x, &pi, &y)
    } else {
        verify_kcover(&x, &pi, &y, k)
    }
    .map_err(usage)?;
    Ok((x, y, cert))
}

fn run(cli: Cli) -> Result<Report, CliError> {
    let cap = size_cap(cli.size_cap)?;
    match cli.command {
        Command::Gen {
            family,
            n,
            m,
            d,
            q,
            b,
            alphabet,
        } => {
            let x = match family {
                Family::Hamming => {
                    let d = required(d, "d", "hamming")?;
                    let size = match (alphabet, q) {
                        (Some(a), _) => a,
                        (None, Some(q)) => FieldArgs { q, b }.field()?.order() as usize,
                        (None, None) => {
                            return Err(CliError::Usage("hamming needs --q or --alphabet".into()))
                        }
                    };
                    hamming_graph(size, d, cap)
                }
                Family::Hypercube => hypercube(required(d, "d", "hypercube")?, cap),
                Family::Folded => folded_cube(required(d, "d", "folded")?, cap),
                Family::Complete => complete(required(n, "n", "complete")?),
                Family::Cycle => cycle(required(n, "n", "cycle")?),
                Family::Bipartite => complete_bipartite(
                    required(n, "n", "bipartite")?,
                    required(m, "m", "bipartite")?,
                ),
            }
            .map_err(usage)?;
            Ok(Report::ok(
                serde_json::to_value(GraphDoc::from_graph(&x)).expect("serializable"),
            ))
        }

        Command::Verify { graph, function } => {
            let x = read_graph(&graph)?;
            let f = read_function(&function)?;
            let report = verify_efficient(&x, &f).map_err(usage)?;
            let doc = json!({
                "v": SCHEMA_VERSION,
                "efficient": report.efficient,
                "k": report.observed_k,
                "declared_k": f.k(),
                "j": f.j(),
                "tight": report.tight,
                "violations": report.violations,
            });
            Ok(if report.efficient {
                Report::ok(doc)
            } else {
                Report::failed(doc)
            })
        }

        Command::Construct { field, d, k } => {
            let field = field.field()?;
            match construct_function(&field, d, k, cap) {
                Ok((f, provenance)) => {
                    let efficient = hamming_graph(field.order() as usize, d, cap)
                        .ok()
                        .and_then(|x| verify_efficient(&x, &f).ok())
                        .map(|r| r.efficient);
                    if efficient == Some(false) {
                        eprintln!("constructed function failed verification");
                    }
                    let doc = with_fields(
                        serde_json::to_value(FunctionDoc::from_function(&f)).expect("serializable"),
                        json!({"provenance": provenance}),
                    );
                    Ok(if efficient == Some(false) {
                        Report::failed(doc)
                    } else {
                        Report::ok(doc)
                    })
                }
                Err(e) => hamming_failure(e),
            }
        }

        Command::Feasible { field, d } => {
            let profile = feasibility(&field.field()?, d).map_err(usage)?;
            eprintln!("evaluating {} = {}", profile.expression, profile.r + 1);
            Ok(Report::ok(versioned(&profile)))
        }

        Command::VerifyPlan {
            field,
            d,
            sample,
            seed,
        } => {
            let plan = match build_plan(&field.field()?, d) {
                Ok(plan) => plan,
                Err(e) => return hamming_failure(e),
            };
            let mode = match sample {
                Some(count) => VerifyMode::Sampled { count, seed },
                None => VerifyMode::Full,
            };
            match verify_plan(&plan, mode, cap) {
                Ok(v) => Ok(Report::ok(with_fields(
                    versioned(&v),
                    json!({"verified": true, "partition": plan.profile().partition}),
                ))),
                Err(e) => hamming_failure(e),
            }
        }

        Command::Spectrum {
            graph,
            function,
            cap: spectral_cap,
        } => {
            let x = read_graph(&graph)?;
            let report = minus_one_multiplicity(&x, spectral_cap).map_err(usage)?;
            let mut doc = versioned(&report);
            if function {
                let f = match &report.witness {
                    Some(w) => Some(FunctionDoc::from_function(
                        &function_from_eigenvector(&x, w).map_err(usage)?,
                    )),
                    None => None,
                };
                doc = with_fields(doc, json!({ "function": f }));
            }
            Ok(Report::ok(doc))
        }

        Command::Search {
            graph,
            j,
            k,
            count_only,
            limit,
        } => {
            let x = read_graph(&graph)?;
            let cfg = SearchConfig::new(j, k).with_node_limit(limit);
            let doc;
            let exhausted;
            if count_only {
                let (count, done) = count_efficient(&x, &cfg).map_err(usage)?;
                exhausted = done;
                doc =
                    json!({"v": SCHEMA_VERSION, "j": j, "k": k, "count": count, "exhausted": done});
            } else {
                let out = enumerate_efficient(&x, &cfg).map_err(usage)?;
                exhausted = out.exhausted;
                let functions: Vec<&[u64]> = out.functions.iter().map(|f| f.values()).collect();
                doc = json!({
                    "v": SCHEMA_VERSION,
                    "j": j,
                    "k": k,
                    "count": out.count(),
                    "exhausted": out.exhausted,
                    "nodes": out.nodes,
                    "functions": functions,
                });
            }
            if !exhausted {
                eprintln!("node limit {limit} exceeded; results are partial");
                return Ok(Report::failed(doc));
            }
            Ok(Report::ok(doc))
        }

        Command::SpectrumK { graph, j, limit } => {
            let x = read_graph(&graph)?;
            let counts = k_spectrum(&x, j, limit).map_err(usage)?;
            Ok(Report::ok(json!({
                "v": SCHEMA_VERSION,
                "j": j,
                "r": x.regular_degree(),
                "counts": counts,
            })))
        }

        Command::Partition {
            graph,
            partition,
            cap: poly_cap,
        } => {
            let x = read_graph(&graph)?;
            let pi = read_partition(&partition, x.n())?;
            let matrix = characteristic_matrix(&x, &pi).map_err(usage)?;
            let mut doc = json!({
                "v": SCHEMA_VERSION,
                "cells": PartitionDoc::from_partition(&pi).cells,
                "equitable": matrix.is_some(),
            });
            if let Some(m) = matrix {
                let values = is_dominatable(&x, &pi).map_err(usage)?;
                let eigen = match dominatable_eigen_check(&m) {
                    Ok(b) => Some(b),
                    Err(PartitionError::NonConstantRowSums) => Some(false),
                    Err(e) => return Err(usage(e)),
                };
                let divides = match charpoly_divides_graph(&x, &pi, poly_cap) {
                    Ok(b) => Some(b),
                    Err(PartitionError::SizeCap { .. }) => None,
                    Err(e) => return Err(usage(e)),
                };
                doc = with_fields(
                    doc,
                    json!({
                        "matrix": m.rows(),
                        "dominatable": values.is_some(),
                        "values": values,
                        "eigen_check": eigen,
                        "charpoly_divides": divides,
                    }),
                );
            }
            Ok(Report::ok(doc))
        }

        Command::Cover {
            graph,
            base,
            partition,
            k,
        } => {
            let (_, _, cert) = load_cover(&graph, &base, &partition, k)?;
            Ok(match cert {
                Some(cert) => Report::ok(with_fields(
                    json!({"v": SCHEMA_VERSION, "cover": true}),
                    cover_summary(&cert),
                )),
                None => Report::failed(json!({"v": SCHEMA_VERSION, "cover": false, "k": k})),
            })
        }

        Command::Lift {
            graph,
            base,
            partition,
            function,
            push: down,
        } => {
            let (x, y, cert) = load_cover(&graph, &base, &partition, 1)?;
            let Some(cert) = cert else {
                return Ok(Report::failed(error_doc(
                    "partition is not a cover",
                    json!({}),
                )));
            };
            let f = read_function(&function)?;
            let (source, target) = if down { (&x, &y) } else { (&y, &x) };
            let g = if down {
                push(&f, &cert)
            } else {
                lift(&f, &cert)
            }
            .map_err(usage)?;
            let before = verify_efficient(source, &f).map_err(usage)?.efficient;
            let after = verify_efficient(target, &g).map_err(usage)?.efficient;
            let doc = with_fields(
                serde_json::to_value(FunctionDoc::from_function(&g)).expect("serializable"),
                json!({"source_efficient": before, "result_efficient": after}),
            );
            Ok(if before == after {
                Report::ok(doc)
            } else {
                Report::failed(doc)
            })
        }

        Command::Translate { field, d, code } => {
            let field = field.field()?;
            let support = match code {
                Some(path) => read_function(&path)?.support(),
                None => match construct_function(&field, d, 1, cap) {
                    Ok((f, _)) => f.support(),
                    Err(e) => return hamming_failure(e),
                },
            };
            let pres = CayleyPresentation::hamming(&field, d);
            match lee_translates(&pres, &support, cap) {
                Ok((pi, cert)) => Ok(Report::ok(with_fields(
                    json!({"v": SCHEMA_VERSION, "cover": true, "cells": pi.cells()}),
                    cover_summary(&cert),
                ))),
                Err(PartitionError::NotPerfectCode) => Ok(Report::failed(error_doc(
                    PartitionError::NotPerfectCode,
                    json!({"cover": false}),
                ))),
                Err(e) => Err(usage(e)),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: cannot configure {threads} threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(report) => {
            let text = serde_json::to_string_pretty(&report.doc).expect("serializable");
            // a closed pipe downstream is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
