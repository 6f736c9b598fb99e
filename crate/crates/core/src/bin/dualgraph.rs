use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use dualgraph::arith::{divisors, is_admissible};
use dualgraph::blowup::base_change;
use dualgraph::constructions::{
    cayley_graph, check_realizability, coathanger_chain, construct, cycle_model, mobius_ladder,
    GeneratingSet, RealizabilityMode, ResidueField,
};
use dualgraph::invariants::{
    case_classification, expected_case, index, main_theorem_prediction, snc_index, splits,
    splitting_report, ExtensionSpec,
};
use dualgraph::model::{CurveModel, ModelDocument};
use dualgraph::verify::{verify_all, verify_document, VerifyConfig};

/// Dual graphs of degenerate curves with cyclic Galois actions.
#[derive(Parser)]
#[command(name = "dualgraph", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    /// The model realizing (genus, index).
    Dispatch,
    Cycle,
    Mobius,
    Coathanger,
    Cayley,
}

#[derive(Subcommand)]
enum Command {
    /// Build a model and write it as JSON.
    Construct {
        #[arg(long)]
        genus: Option<usize>,
        #[arg(long)]
        index: Option<usize>,
        #[arg(long, value_enum, default_value = "dispatch")]
        family: Family,
        /// Generating set for the Cayley family, e.g. `1,7,4`.
        #[arg(long, value_delimiter = ',')]
        generators: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Print the index of a model.
    Index {
        model: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print the splitting table of a model.
    Splitting {
        model: PathBuf,
        /// Also compute the m-invariant, assuming a finite residue field.
        #[arg(long)]
        finite_residue: bool,
        #[arg(long)]
        json: bool,
    },
    /// Predicted splitting pattern for (genus, index); with a model file,
    /// also compare it against the model's own splitting table.
    Mtheorem {
        model: Option<PathBuf>,
        /// Defaults to the model's claimed genus, then its arithmetic genus.
        #[arg(long)]
        genus: Option<usize>,
        /// Defaults to the model's claimed index, then its group order.
        #[arg(long)]
        index: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Resolve a ramified base change and report whether it splits.
    Oracle {
        model: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        e: usize,
        #[arg(long)]
        emit_dot: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Check degree bounds and the rational-point hypothesis.
    Check {
        model: PathBuf,
        #[arg(long, default_value = "inf")]
        residue_q: ResidueField,
        #[arg(long, value_enum, default_value = "full")]
        mode: RealizabilityMode,
        #[arg(long)]
        json: bool,
    },
    /// Verify every construction up to a genus bound, or one model file.
    Verify {
        #[arg(long, default_value_t = 12)]
        genus_max: usize,
        #[arg(long, default_value_t = 6)]
        e_max: usize,
        #[arg(long = "residue-q", default_value = "inf")]
        residue_q: Vec<ResidueField>,
        /// Largest index tried in genus 1 (default 2·genus_max + 2).
        #[arg(long)]
        index_cap: Option<usize>,
        /// Verify this model against its claimed genus and index instead.
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    /// Mathematical disagreement or failed check.
    Disagreement,
    Input(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(err: E) -> Self {
        Failure::Input(err.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Disagreement) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn require(value: Option<usize>, flag: &str) -> Result<usize, Failure> {
    value.ok_or_else(|| Failure::Input(format!("--{flag} is required for this family")))
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Construct {
            genus,
            index,
            family,
            generators,
            out,
            dot,
        } => {
            let model = match family {
                Family::Dispatch => construct(require(genus, "genus")?, require(index, "index")?)?,
                Family::Cycle => {
                    let (g, a) = cycle_model(require(index, "index")?)?;
                    CurveModel::with_unit_components(g, a, None)?
                }
                Family::Mobius => {
                    let (g, a) = mobius_ladder(require(genus, "genus")?)?;
                    CurveModel::with_unit_components(g, a, None)?
                }
                Family::Coathanger => {
                    let (g, a) = coathanger_chain(require(genus, "genus")?);
                    CurveModel::with_unit_components(g, a, None)?
                }
                Family::Cayley => {
                    let gs = GeneratingSet::new(require(index, "index")?, generators)?;
                    let (g, a) = cayley_graph(&gs);
                    CurveModel::with_unit_components(g, a, None)?
                }
            };
            if let Some(path) = dot {
                let colors = model.orbit_colors();
                write_or_print(Some(&path), &model.graph().to_dot(Some(&colors)))?;
            }
            write_or_print(out.as_deref(), &(model.to_json() + "\n"))
        }
        Command::Index { model, json } => {
            let m = CurveModel::load(&model)?;
            if json {
                let value = serde_json::json!({"index": index(&m), "snc_index": snc_index(&m)});
                print!("{}", to_json(&value));
            } else {
                println!("{}", index(&m));
            }
            Ok(())
        }
        Command::Splitting {
            model,
            finite_residue,
            json,
        } => {
            let m = CurveModel::load(&model)?;
            let report = splitting_report(&m, finite_residue);
            if json {
                print!("{}", to_json(&report));
            } else {
                print!("{}", report.to_text());
            }
            Ok(())
        }
        Command::Mtheorem {
            model,
            genus,
            index,
            json,
        } => mtheorem(model.as_deref(), genus, index, json),
        Command::Oracle {
            model,
            d,
            e,
            emit_dot,
            json,
        } => {
            let m = CurveModel::load(&model)?;
            let blown = base_change(&m, ExtensionSpec::new(d, e))?;
            let fixed = blown.fixed_vertices();
            if let Some(path) = emit_dot {
                write_or_print(Some(&path), &blown.graph.to_dot(None))?;
            }
            if json {
                let value = serde_json::json!({
                    "d": d,
                    "e": e,
                    "vertices": blown.graph.vertex_count(),
                    "edges": blown.graph.edge_count(),
                    "euler_characteristic": blown.graph.euler_characteristic(),
                    "acting_order": blown.action.order,
                    "fixed_vertices": fixed,
                    "splits": !fixed.is_empty(),
                });
                print!("{}", to_json(&value));
            } else {
                println!(
                    "blown-up fiber: {} vertices, {} edges, chi {}; subgroup of order {}",
                    blown.graph.vertex_count(),
                    blown.graph.edge_count(),
                    blown.graph.euler_characteristic(),
                    blown.action.order
                );
                let names: Vec<_> = fixed.iter().map(|v| v.0.as_str()).collect();
                println!("fixed components: [{}]", names.join(", "));
                println!("splits: {}", if fixed.is_empty() { "no" } else { "yes" });
            }
            Ok(())
        }
        Command::Check {
            model,
            residue_q,
            mode,
            json,
        } => {
            let m = CurveModel::load(&model)?;
            let report = check_realizability(&m, residue_q, mode);
            if json {
                print!("{}", to_json(&report));
            } else {
                println!(
                    "connected: {}  max degree: {} (<= 3: {})  hypothesis A over q={}: {}",
                    report.connected,
                    report.max_degree,
                    report.degree_bound,
                    report.residue,
                    report.hypothesis_a
                );
                if !report.failing_vertices.is_empty() {
                    let names: Vec<_> = report
                        .failing_vertices
                        .iter()
                        .map(|v| v.0.as_str())
                        .collect();
                    println!("too many nodes at: {}", names.join(", "));
                }
                println!("{}", if report.passed() { "pass" } else { "fail" });
            }
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Disagreement)
            }
        }
        Command::Verify {
            genus_max,
            e_max,
            residue_q,
            index_cap,
            model,
            json,
        } => {
            let cfg = VerifyConfig {
                genus_max,
                e_max,
                residues: residue_q,
                genus_one_cap: index_cap,
            };
            if let Some(path) = model {
                let doc = ModelDocument::load(&path)?;
                let claimed = doc.claimed.ok_or_else(|| {
                    Failure::Input(format!(
                        "{}: model has no claimed genus/index",
                        path.display()
                    ))
                })?;
                let cell = verify_document(doc, claimed.genus, claimed.index, &cfg);
                if json {
                    print!("{}", to_json(&cell));
                } else {
                    println!("{}", cell.to_line());
                }
                return if cell.passed() {
                    Ok(())
                } else {
                    Err(Failure::Disagreement)
                };
            }
            let report = verify_all(&cfg);
            if json {
                print!("{}", to_json(&report));
            } else {
                print!("{}", report.to_text());
            }
            if report.passed {
                Ok(())
            } else {
                Err(Failure::Disagreement)
            }
        }
    }
}

#[derive(serde::Serialize)]
struct TheoremRow {
    d: usize,
    e: usize,
    predicted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    classifier: Option<bool>,
}

fn mtheorem(
    model: Option<&Path>,
    genus: Option<usize>,
    claimed_index: Option<usize>,
    json: bool,
) -> Result<(), Failure> {
    let m = model.map(CurveModel::load).transpose()?;
    let claimed = m.as_ref().and_then(|m| m.claimed());
    let genus = genus
        .or(claimed.map(|c| c.genus))
        .or_else(|| m.as_ref().and_then(|m| m.graph().arithmetic_genus().ok()));
    let order = claimed_index
        .or(claimed.map(|c| c.index))
        .or(m.as_ref().map(|m| m.order()));
    let (genus, order) = (require(genus, "genus")?, require(order, "index")?);
    if !is_admissible(genus, order) {
        return Err(Failure::Input(format!(
            "index {order} does not divide 2g-2 for genus {genus}"
        )));
    }
    if let Some(m) = &m {
        if m.order() != order {
            return Err(Failure::Input(format!(
                "model has group order {}, expected {order}",
                m.order()
            )));
        }
    }

    let case = expected_case(genus, order);
    let mut rows = Vec::new();
    for d in divisors(order) {
        for e in [1, 2] {
            let x = ExtensionSpec::new(d, e);
            rows.push(TheoremRow {
                d,
                e,
                predicted: main_theorem_prediction(genus, order, x, case)?,
                classifier: m.as_ref().map(|m| splits(m, x)).transpose()?,
            });
        }
    }
    let agrees = rows
        .iter()
        .all(|r| r.classifier.is_none_or(|c| c == r.predicted));
    let model_case = m.as_ref().map(case_classification);

    if json {
        let value = serde_json::json!({
            "genus": genus,
            "index": order,
            "expected_case": case,
            "model_case": model_case,
            "table": rows,
            "agrees": agrees,
        });
        print!("{}", to_json(&value));
    } else {
        println!("genus {genus}, index {order}: {case}");
        if let Some(c) = model_case {
            println!("model: {c}");
        }
        let yn = |b: bool| if b { "yes" } else { "no" };
        println!("{:>4} {:>2}  {:>9}  {:>5}", "d", "e", "predicted", "model");
        for r in &rows {
            let got = r.classifier.map_or("-", yn);
            println!("{:>4} {:>2}  {:>9}  {:>5}", r.d, r.e, yn(r.predicted), got);
        }
        if m.is_some() {
            println!("{}", if agrees { "agrees" } else { "DISAGREES" });
        }
    }
    if agrees {
        Ok(())
    } else {
        Err(Failure::Disagreement)
    }
}
