//! `xplain`: feature necessity, relevancy and AXp queries from the command line.
//!
//! Every query prints one JSON record on stdout. Exit codes: 0 yes, 1 no,
//! 2 error, 3 unknown (a SAT or prediction resource limit was hit).

mod corpus;
mod gen;
mod load;
mod query;

use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;
use xplain_core::circuit::DeterminismCheck;
use xplain_core::frp::ddnnf::encode_problem;
use xplain_core::frp::verify_witness;
use xplain_core::monotone::{audit_monotonicity, ModelError, DEFAULT_AUDIT_PAIRS};
use xplain_core::sat::{read_dimacs, Solver, SolverConfig, SatError, SatOutcome};
use xplain_core::testgen::CnfMonotoneModel;
use xplain_core::{Answer, QueryKind, QueryRecord};

use crate::load::{parse_features, parse_values, Classifier, Problem};
use crate::query::QueryOptions;

const EXIT_YES: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_ERROR: u8 = 2;
const EXIT_UNKNOWN: u8 = 3;

#[derive(Parser)]
#[command(name = "xplain", version, about = "Feature necessity and relevancy for abductive explanations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Target {
    /// Classifier file: `.nnf`, `.fbdd` or a `monotone` spec.
    model: PathBuf,
    /// Feature values `v1,v2,...,vm`.
    #[arg(long, allow_hyphen_values = true)]
    instance: String,
    /// Predicted class (0-based); computed when omitted, checked otherwise.
    #[arg(long)]
    class: Option<usize>,
    /// Circuit computing the negation, for class-1 d-DNNF instances.
    #[arg(long)]
    negation: Option<PathBuf>,
}

#[derive(Args)]
struct SolverArgs {
    /// `builtin` or a shell command for a DIMACS solver (`{}` is replaced by a file path).
    #[arg(long, default_value = "builtin")]
    solver: String,
    /// Shrink refinement clauses in the monotone procedure.
    #[arg(long)]
    shrink: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Is the feature in every AXp?
    Necessity {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        feature: usize,
    },
    /// Is the feature in some AXp?
    Relevancy {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        feature: usize,
        #[command(flatten)]
        solver: SolverArgs,
        /// Re-check the witness and print it on stderr.
        #[arg(long)]
        witness: bool,
        /// Write the relevancy encoding (circuits only) as DIMACS.
        #[arg(long)]
        dump_cnf: Option<PathBuf>,
    },
    /// Extract one AXp by deletion.
    Axp {
        #[command(flatten)]
        target: Target,
        /// Starting weak AXp, e.g. `1,2,3`; defaults to all features.
        #[arg(long)]
        seed_set: Option<String>,
    },
    /// List every AXp (at most 20 features).
    Enumerate {
        /// Classifier file; omit when using --manifest.
        model: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        instance: Option<String>,
        #[arg(long)]
        class: Option<usize>,
        #[arg(long)]
        negation: Option<PathBuf>,
        /// Enumerate every manifest entry instead.
        #[arg(long, conflicts_with = "model")]
        manifest: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Generate classifiers and a manifest.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// Run relevancy queries over a manifest; one record per line, then a summary.
    Bench {
        manifest: PathBuf,
        /// Features queried per entry: the entry's target, then random others.
        #[arg(long, default_value_t = 1)]
        features_per_entry: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Solve a DIMACS file with the built-in solver (`-` reads stdin).
    Sat { file: PathBuf },
    /// Check structural properties of a classifier file.
    Validate {
        model: PathBuf,
        /// Pairs sampled when auditing a monotone model.
        #[arg(long, default_value_t = DEFAULT_AUDIT_PAIRS)]
        pairs: usize,
    },
    /// Line-protocol oracle for generated monotone reduction models.
    #[command(hide = true)]
    ReductionOracle { cnf: PathBuf },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Reduction artifacts (monotone and FBDD) from CNF formulas.
    Reduction {
        /// DIMACS files.
        cnf: Vec<PathBuf>,
        /// Also generate this many random CNFs.
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long, default_value_t = 6)]
        vars: usize,
        #[arg(long, default_value_t = 20)]
        clauses: usize,
        #[arg(long, default_value_t = 3)]
        width: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Random classifiers, each with an instance and a target feature.
    Random {
        #[arg(long, value_enum)]
        kind: gen::RandomKind,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 8)]
        features: usize,
        /// Decision depth for circuits.
        #[arg(long, default_value_t = 4)]
        depth: usize,
        /// Number of classes for monotone models.
        #[arg(long, default_value_t = 2)]
        classes: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn exit_for(answer: Answer) -> u8 {
    match answer {
        Answer::Yes => EXIT_YES,
        Answer::No => EXIT_NO,
        Answer::Unknown => EXIT_UNKNOWN,
    }
}

fn emit(rec: &QueryRecord) -> u8 {
    println!("{}", rec.to_json());
    exit_for(rec.answer)
}

/// Resource limits surface as errors in some paths; they still answer "unknown".
fn is_resource_limit(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        matches!(c.downcast_ref::<ModelError>(), Some(ModelError::Timeout(_)))
            || matches!(
                c.downcast_ref::<xplain_core::Error>(),
                Some(xplain_core::Error::Model(ModelError::Timeout(_)))
                    | Some(xplain_core::Error::Sat(SatError::Timeout | SatError::BudgetExceeded))
            )
            || matches!(c.downcast_ref::<SatError>(), Some(SatError::Timeout | SatError::BudgetExceeded))
    })
}

fn emit_or_unknown(
    kind: QueryKind,
    target: &Target,
    feature: Option<usize>,
    result: Result<QueryRecord>,
) -> Result<u8> {
    match result {
        Ok(rec) => Ok(emit(&rec)),
        Err(e) if is_resource_limit(&e) => {
            eprintln!("warning: {e:#}");
            let values = parse_values(&target.instance)?;
            let mut rec = QueryRecord::new(kind, target.model.to_string_lossy(), values, target.class.unwrap_or(0));
            rec.feature = feature;
            Ok(emit(&rec))
        }
        Err(e) => Err(e),
    }
}

fn single(kind: QueryKind, target: &Target, feature: Option<usize>, opts: &QueryOptions) -> Result<u8> {
    let result = (|| {
        let classifier = Classifier::load(&target.model, target.negation.as_deref())?;
        let values = parse_values(&target.instance)?;
        let problem = classifier.problem(&values, target.class)?;
        query::run(kind, &target.model.to_string_lossy(), &values, &problem, feature, opts)
    })();
    emit_or_unknown(kind, target, feature, result)
}

fn relevancy(target: &Target, t: usize, solver: &SolverArgs, witness: bool, dump_cnf: Option<&Path>) -> Result<u8> {
    let result = (|| {
        let classifier = Classifier::load(&target.model, target.negation.as_deref())?;
        let values = parse_values(&target.instance)?;
        let problem = classifier.problem(&values, target.class)?;
        if let Some(path) = dump_cnf {
            let Problem::Circuit(p) = &problem else { bail!("--dump-cnf only applies to circuits") };
            if !(1..=values.len()).contains(&t) {
                bail!("feature {t} out of range 1..={}", values.len());
            }
            let enc = encode_problem(p, t)?;
            std::fs::write(path, enc.to_dimacs()).with_context(|| format!("writing {}", path.display()))?;
        }
        let opts = QueryOptions {
            solver: Some(solver.solver.clone()),
            shrink: solver.shrink,
            seed_set: None,
        };
        let rec = query::run(QueryKind::Relevancy, &target.model.to_string_lossy(), &values, &problem, Some(t), &opts)?;
        if witness {
            if let (Some(axp), Some(weak)) = (&rec.witness, &rec.weak_set) {
                let w = xplain_core::FrpWitness {
                    weak_set: weak.clone(),
                    axp: axp.clone(),
                };
                let ok = match &problem {
                    Problem::Circuit(p) => verify_witness(p, &w, t)?,
                    Problem::Monotone(p) => verify_witness(p, &w, t)?,
                };
                if !ok {
                    bail!("witness {axp} failed verification");
                }
                eprintln!("AXp {axp} contains feature {t} (weak set {weak}, verified)");
            }
        }
        Ok(rec)
    })();
    emit_or_unknown(QueryKind::Relevancy, target, Some(t), result)
}

fn sat(file: &Path) -> Result<u8> {
    let text = if file == Path::new("-") {
        std::io::read_to_string(std::io::stdin())?
    } else {
        std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?
    };
    let f = read_dimacs(&text)?;
    let mut solver = Solver::from_formula(&f, SolverConfig::from_env());
    match solver.solve(&[]) {
        Ok(SatOutcome::Sat(m)) => {
            println!("s SATISFIABLE");
            let lits: Vec<String> = (1..=f.num_vars as i32)
                .map(|v| if m.value(v) { v.to_string() } else { (-v).to_string() })
                .collect();
            println!("v {} 0", lits.join(" "));
            Ok(EXIT_YES)
        }
        Ok(SatOutcome::Unsat) => {
            println!("s UNSATISFIABLE");
            Ok(EXIT_NO)
        }
        Err(SatError::BudgetExceeded | SatError::Timeout) => {
            println!("s UNKNOWN");
            Ok(EXIT_UNKNOWN)
        }
        Err(e) => Err(e.into()),
    }
}

fn validate(path: &Path, pairs: usize) -> Result<u8> {
    let report = match Classifier::load(path, None)? {
        Classifier::Circuit { circuit, .. } => {
            let r = circuit.validate();
            let determinism = match &r.determinism {
                DeterminismCheck::Verified => json!("verified"),
                DeterminismCheck::Assumed => json!("assumed"),
                DeterminismCheck::Violations(v) => json!({ "violations": v }),
            };
            json!({
                "kind": format!("{:?}", circuit.kind()).to_lowercase(),
                "nodes": circuit.num_nodes(),
                "edges": circuit.num_edges(),
                "features": circuit.num_features(),
                "decomposability_violations": r.decomposability_violations,
                "read_once_violations": r.read_once_violations,
                "determinism": determinism,
                "unreachable": r.unreachable,
                "duplicates": r.duplicates,
                "valid": r.is_clean(),
            })
        }
        Classifier::Monotone(m) => match audit_monotonicity(&m, pairs, 0) {
            Ok(()) => json!({ "kind": "monotone", "pairs": pairs, "valid": true }),
            Err(ModelError::NotMonotone { low, high, low_class, high_class }) => json!({
                "kind": "monotone",
                "pairs": pairs,
                "valid": false,
                "violation": { "low": low, "high": high, "low_class": low_class, "high_class": high_class },
            }),
            Err(e) => return Err(e.into()),
        },
    };
    println!("{report}");
    Ok(if report["valid"] == json!(true) { EXIT_YES } else { EXIT_NO })
}

fn reduction_oracle(cnf: &Path) -> Result<u8> {
    let text = std::fs::read_to_string(cnf).with_context(|| format!("reading {}", cnf.display()))?;
    let model = CnfMonotoneModel::new(read_dimacs(&text)?);
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for line in std::io::stdin().lock().lines() {
        let line = line?;
        let x = line
            .split_whitespace()
            .map(|t| t.parse::<f64>().map(|v| v >= 0.5))
            .collect::<Result<Vec<bool>, _>>()
            .with_context(|| format!("bad query line `{line}`"))?;
        if x.len() != 2 * model.cnf().num_vars + 1 {
            bail!("expected {} values, got {}", 2 * model.cnf().num_vars + 1, x.len());
        }
        writeln!(out, "{}", model.classify(&x) as u8)?;
        out.flush()?;
    }
    Ok(EXIT_YES)
}

fn corpus(manifest: &Path, opts: corpus::CorpusOptions) -> Result<u8> {
    let report = corpus::run(manifest, &opts)?;
    for r in &report.records {
        println!("{}", r.to_json());
    }
    println!("{}", report.summary);
    Ok(if report.errors > 0 {
        EXIT_ERROR
    } else if report.mismatches > 0 || report.budget_violations > 0 {
        EXIT_NO
    } else {
        EXIT_YES
    })
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Necessity { target, feature } => {
            Ok(single(QueryKind::Necessity, &target, Some(feature), &QueryOptions::default())?)
        }
        Command::Relevancy {
            target,
            feature,
            solver,
            witness,
            dump_cnf,
        } => relevancy(&target, feature, &solver, witness, dump_cnf.as_deref()),
        Command::Axp { target, seed_set } => {
            let opts = QueryOptions {
                seed_set: seed_set.as_deref().map(parse_features).transpose()?,
                ..QueryOptions::default()
            };
            Ok(single(QueryKind::Axp, &target, None, &opts)?)
        }
        Command::Enumerate {
            model,
            instance,
            class,
            negation,
            manifest,
            jobs,
        } => {
            if let Some(manifest) = manifest {
                return corpus(
                    &manifest,
                    corpus::CorpusOptions {
                        kind: QueryKind::Enumerate,
                        features_per_entry: 0,
                        seed: 0,
                        jobs,
                        query: QueryOptions::default(),
                    },
                );
            }
            let (Some(model), Some(instance)) = (model, instance) else {
                bail!("enumerate needs a model and --instance, or --manifest");
            };
            let target = Target {
                model,
                instance,
                class,
                negation,
            };
            Ok(single(QueryKind::Enumerate, &target, None, &QueryOptions::default())?)
        }
        Command::Gen { what } => {
            let path = match what {
                GenCommand::Reduction {
                    cnf,
                    random,
                    vars,
                    clauses,
                    width,
                    seed,
                    out,
                } => {
                    let mut formulas = gen::read_cnf_files(&cnf)?;
                    formulas.extend(gen::random_cnfs(random, vars, clauses, width, seed));
                    if formulas.is_empty() {
                        bail!("no formulas: pass DIMACS files or --random N");
                    }
                    gen::reductions(formulas, (random > 0).then_some(seed), &out)?
                }
                GenCommand::Random {
                    kind,
                    count,
                    features,
                    depth,
                    classes,
                    seed,
                    out,
                } => gen::random(
                    &gen::RandomParams {
                        kind,
                        count,
                        features,
                        depth,
                        classes,
                        seed,
                    },
                    &out,
                )?,
            };
            println!("{}", json!({ "manifest": path }));
            Ok(EXIT_YES)
        }
        Command::Bench {
            manifest,
            features_per_entry,
            seed,
            jobs,
            solver,
        } => corpus(
            &manifest,
            corpus::CorpusOptions {
                kind: QueryKind::Relevancy,
                features_per_entry: features_per_entry.max(1),
                seed,
                jobs,
                query: QueryOptions {
                    solver: Some(solver.solver),
                    shrink: solver.shrink,
                    seed_set: None,
                },
            },
        ),
        Command::Sat { file } => sat(&file),
        Command::Validate { model, pairs } => validate(&model, pairs),
        Command::ReductionOracle { cnf } => reduction_oracle(&cnf),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
