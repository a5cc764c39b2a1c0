//! Deterministic command-line front end: every subcommand reads JSON
//! inputs, prints one report, and exits 0 when the computation completed
//! (whatever the mathematical verdict), 1 on input errors, 2 on resource
//! caps. `--expect` turns a verdict into the exit status for CI use.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::extend::{extend_elementary, extend_rank_one_f2, oracle_extension_with, OracleOptions};
use crate::fixtures;
use crate::isometry::SearchLimits;
use crate::json::{
    AssignmentJson, CodeJson, ErrorJson, MapJson, MatrixJson, PairJson, RefutationJson,
    SubspaceJson, WitnessJson,
};
use crate::matfq::Matrix;
use crate::paths::{self, Position, Support};

const EXIT_OK: i32 = 0;
const EXIT_INPUT: i32 = 1;
const EXIT_RESOURCE: i32 = 2;

#[derive(Parser)]
#[command(
    name = "rankext",
    about = "Rank-metric code isometries: paths, extensions, and brute-force oracles",
    version
)]
struct Cli {
    /// Emit machine-readable JSON instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,
    /// Exit 0 only if the JSON report matches this object (subset match
    /// on top-level keys).
    #[arg(long, global = true, value_name = "JSON")]
    expect: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rank of a matrix.
    Rank {
        #[arg(long, value_name = "FILE")]
        matrix: PathBuf,
    },
    /// Minimum rank distance of a code.
    Mindist {
        #[arg(long, value_name = "FILE")]
        code: PathBuf,
    },
    /// Row and column spaces of a matrix or of a whole code.
    Linespaces {
        #[arg(long, value_name = "FILE", conflicts_with = "code")]
        matrix: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        code: Option<PathBuf>,
    },
    /// Check whether a code map preserves the rank of every codeword.
    CheckIsometry {
        #[arg(long, value_name = "FILE")]
        map: PathBuf,
    },
    /// Exhaustive Property-1 witness search, or a cheap refutation.
    PropertyP {
        #[arg(long, value_name = "FILE")]
        map: PathBuf,
        /// Skip the witness search and only look for a refutation.
        #[arg(long)]
        refute_only: bool,
    },
    /// Support-path operations.
    #[command(subcommand)]
    Path(PathCommand),
    /// Extend a scalar assignment on elementary matrices.
    ExtendElementary {
        #[arg(long, value_name = "FILE")]
        assignment: PathBuf,
    },
    /// Extend a GF(2) isometry of a rank-one generated code.
    ExtendRankoneF2 {
        #[arg(long, value_name = "FILE")]
        map: PathBuf,
        /// Property-1 pair {"A": ..., "B": ...}; searched if omitted.
        #[arg(long, value_name = "FILE")]
        witness: Option<PathBuf>,
    },
    /// Brute-force ambient-extension oracle.
    Oracle {
        #[arg(long, value_name = "FILE")]
        map: PathBuf,
        /// Also search the transpose branch (square ambient only).
        #[arg(long)]
        allow_transpose: bool,
    },
    /// Catalogued reproductions of the worked examples.
    #[command(subcommand)]
    Example(ExampleCommand),
}

#[derive(Subcommand)]
enum PathCommand {
    /// Find a closed simple path, if one exists.
    Find {
        #[arg(long, value_name = "FILE")]
        matrix: PathBuf,
    },
    /// Classify a position sequence.
    Validate {
        #[arg(long, value_name = "FILE")]
        matrix: PathBuf,
        /// JSON file with [[i,j],...] or {"path": [[i,j],...]}.
        #[arg(long, value_name = "FILE")]
        path: PathBuf,
    },
    /// Greedy path-reduction chain; --all enumerates every chain.
    Chain {
        #[arg(long, value_name = "FILE")]
        matrix: PathBuf,
        #[arg(long)]
        all: bool,
    },
}

#[derive(Subcommand)]
enum ExampleCommand {
    /// List the fixture catalogue.
    List,
    /// Run one fixture and compare against its expected verdicts.
    Run {
        name: String,
        /// Repeatable key=value overrides, e.g. --param q=3.
        #[arg(long = "param", value_name = "K=V")]
        params: Vec<String>,
    },
}

/// Parse argv, dispatch, print a report, and return the exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version as "errors" with exit 0.
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let json_mode = cli.json;
    match dispatch(&cli) {
        Ok((report, human)) => {
            if json_mode {
                println!(
                    "{}",
                    serde_json::to_string(&report).expect("report serializes")
                );
            } else {
                println!("{}", human.trim_end());
            }
            match &cli.expect {
                None => EXIT_OK,
                Some(raw) => match check_expectation(raw, &report) {
                    Ok(true) => EXIT_OK,
                    Ok(false) => EXIT_INPUT,
                    Err(e) => emit_error(&e, json_mode),
                },
            }
        }
        Err(e) => emit_error(&e, json_mode),
    }
}

fn emit_error(e: &Error, json_mode: bool) -> i32 {
    if json_mode {
        println!(
            "{}",
            serde_json::to_string(&ErrorJson::from_error(e)).expect("error serializes")
        );
    } else {
        eprintln!("error: {e}");
    }
    if e.is_resource_cap() {
        EXIT_RESOURCE
    } else {
        EXIT_INPUT
    }
}

/// Subset match: every key of the expected object must equal the report.
fn check_expectation(raw: &str, report: &Value) -> Result<bool> {
    let expected: Value = serde_json::from_str(raw)
        .map_err(|e| Error::InvalidInput(format!("--expect is not valid JSON: {e}")))?;
    match (&expected, report) {
        (Value::Object(want), Value::Object(have)) => {
            Ok(want.iter().all(|(k, v)| have.get(k) == Some(v)))
        }
        _ => Ok(&expected == report),
    }
}

fn search_limits() -> SearchLimits {
    let mut limits = SearchLimits::default();
    if let Ok(raw) = std::env::var("RANKEXT_MAX_SEARCH") {
        if let Ok(cap) = raw.parse::<u128>() {
            limits.max_pairs = cap;
        }
    }
    limits
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::InvalidInput(format!("{} does not parse: {e}", path.display())))
}

fn read_matrix(path: &Path) -> Result<Matrix> {
    read_json::<MatrixJson>(path)?.to_matrix()
}

#[derive(serde::Deserialize)]
#[serde(untagged)]
enum PathInput {
    Wrapped { path: Vec<Position> },
    Bare(Vec<Position>),
}

impl PathInput {
    fn into_positions(self) -> Vec<Position> {
        match self {
            PathInput::Wrapped { path } => path,
            PathInput::Bare(positions) => positions,
        }
    }
}

fn positions_json(positions: &[Position]) -> Value {
    json!(positions)
}

fn support_json(support: &Support) -> Value {
    positions_json(&support.to_vec())
}

fn dispatch(cli: &Cli) -> Result<(Value, String)> {
    match &cli.command {
        Command::Rank { matrix } => {
            let m = read_matrix(matrix)?;
            let rank = m.rank();
            Ok((json!({"rank": rank}), format!("rank: {rank}")))
        }
        Command::Mindist { code } => {
            let c = read_json::<CodeJson>(code)?.to_code()?;
            let d = c.min_distance()?;
            Ok((json!({"min_distance": d}), format!("minimum distance: {d}")))
        }
        Command::Linespaces { matrix, code } => {
            let (row, col) = match (matrix, code) {
                (Some(path), None) => {
                    let m = read_matrix(path)?;
                    (m.row_space(), m.col_space())
                }
                (None, Some(path)) => read_json::<CodeJson>(path)?.to_code()?.line_spaces(),
                _ => {
                    return Err(Error::InvalidInput(
                        "pass exactly one of --matrix or --code".into(),
                    ))
                }
            };
            let report = json!({
                "row_space": SubspaceJson::from_basis(&row),
                "col_space": SubspaceJson::from_basis(&col),
            });
            let human = format!(
                "row space: dim {} in F^{}\ncolumn space: dim {} in F^{}",
                row.dim(),
                row.ambient(),
                col.dim(),
                col.ambient()
            );
            Ok((report, human))
        }
        Command::CheckIsometry { map } => {
            let m = read_json::<MapJson>(map)?.to_map()?;
            let verdict = m.is_isometry()?;
            Ok((json!({"isometry": verdict}), format!("isometry: {verdict}")))
        }
        Command::PropertyP { map, refute_only } => {
            let m = read_json::<MapJson>(map)?.to_map()?;
            if *refute_only {
                let refutation = m.refute_property_p()?;
                let report = json!({
                    "verdict": if refutation.is_some() { "refuted" } else { "not-refuted" },
                    "witness": Value::Null,
                    "refutation": refutation.as_ref().map(RefutationJson::from_refutation),
                });
                let human = match &refutation {
                    Some(r) => format!("Property 1 refuted ({})", r.kind()),
                    None => "no refutation found (this does not prove Property 1)".into(),
                };
                Ok((report, human))
            } else {
                let witness = m.property_p_witness(&search_limits())?;
                let report = json!({
                    "verdict": if witness.is_some() { "witness-found" } else { "no-witness" },
                    "witness": witness.as_ref().map(PairJson::from_pair),
                    "refutation": Value::Null,
                });
                let human = match &witness {
                    Some(_) => "Property 1 witness found".into(),
                    None => "exhaustive search: no Property 1 pair exists".into(),
                };
                Ok((report, human))
            }
        }
        Command::Path(path_cmd) => dispatch_path(path_cmd),
        Command::ExtendElementary { assignment } => {
            let parsed = read_json::<AssignmentJson>(assignment)?;
            let (field, assignment, m, n) = parsed.parts()?;
            match extend_elementary(&field, &assignment, m, n) {
                Ok(witness) => {
                    let report = json!({
                        "verdict": "extended",
                        "witness": WitnessJson::from_witness(&witness),
                    });
                    Ok((report, "extended: ambient witness found".into()))
                }
                Err(Error::NotAnIsometry {
                    position,
                    expected,
                    actual,
                }) => {
                    let report = json!({
                        "verdict": "not-an-isometry",
                        "witness": Value::Null,
                        "violation": {
                            "position": position,
                            "expected": expected,
                            "actual": actual,
                        },
                    });
                    let human = format!(
                        "not an isometry: position {position} needs scalar {expected}, \
                         the forced diagonal pair gives {actual}"
                    );
                    Ok((report, human))
                }
                Err(other) => Err(other),
            }
        }
        Command::ExtendRankoneF2 { map, witness } => {
            let m = read_json::<MapJson>(map)?.to_map()?;
            let pair = match witness {
                Some(path) => read_json::<PairJson>(path)?.to_pair()?,
                None => m
                    .property_p_witness(&search_limits())?
                    .ok_or_else(|| Error::WitnessInvalid("no Property 1 pair exists".into()))?,
            };
            let extension = extend_rank_one_f2(&m, &pair)?;
            let report = json!({
                "verdict": "extended",
                "witness": WitnessJson::from_witness(&extension),
            });
            Ok((report, "extended: Property 1 pair realizes the map".into()))
        }
        Command::Oracle {
            map,
            allow_transpose,
        } => {
            let m = read_json::<MapJson>(map)?.to_map()?;
            let opts = OracleOptions {
                allow_transpose: *allow_transpose,
                use_pruning: true,
                limits: search_limits(),
            };
            let witness = oracle_extension_with(&m, &opts)?;
            let report = json!({
                "extendable": witness.is_some(),
                "witness": witness.as_ref().map(WitnessJson::from_witness),
            });
            let human = match &witness {
                Some(w) => format!("extendable: witness found (transposed = {})", w.transposed),
                None => "not extendable: exhaustive search found no ambient isometry".into(),
            };
            Ok((report, human))
        }
        Command::Example(example) => dispatch_example(example),
    }
}

fn dispatch_path(cmd: &PathCommand) -> Result<(Value, String)> {
    match cmd {
        PathCommand::Find { matrix } => {
            let m = read_matrix(matrix)?;
            match paths::find_closed_simple_path(&m) {
                Some(path) => {
                    let report = json!({
                        "found": true,
                        "path": positions_json(path.positions()),
                        "closed": true,
                        "simple": true,
                    });
                    let human =
                        format!("closed simple path: {}", format_positions(path.positions()));
                    Ok((report, human))
                }
                None => Ok((
                    json!({"found": false, "path": Value::Null}),
                    "irreducible: no closed simple path".into(),
                )),
            }
        }
        PathCommand::Validate { matrix, path } => {
            let m = read_matrix(matrix)?;
            let positions = read_json::<PathInput>(path)?.into_positions();
            let verdict = paths::validate_path(&m, &positions);
            let report = json!({
                "path": positions_json(&positions),
                "class": verdict.class.as_str(),
                "closed": verdict.is_closed(),
                "simple": verdict.is_simple(),
                "reason": verdict.reason,
            });
            let human = format!("classification: {}", verdict.class.as_str());
            Ok((report, human))
        }
        PathCommand::Chain { matrix, all } => {
            let m = read_matrix(matrix)?;
            let chain = paths::reduction_chain(&m);
            let mut report = json!({
                "length": chain.len(),
                "deleted": positions_json(chain.deleted()),
                "supports": chain.supports().iter().map(support_json).collect::<Vec<_>>(),
            });
            let mut human = format!(
                "greedy chain length {} (deleted: {})",
                chain.len(),
                format_positions(chain.deleted())
            );
            if *all {
                let census = paths::enumerate_all_chains(&m)?;
                let obj = report.as_object_mut().expect("report is an object");
                obj.insert("all_lengths".into(), json!(census.distinct_lengths()));
                obj.insert("total_chains".into(), json!(census.total_chains()));
                write!(
                    human,
                    "\nexhaustive: {} chains, lengths {:?}",
                    census.total_chains(),
                    census.distinct_lengths()
                )
                .expect("writing to string");
            }
            Ok((report, human))
        }
    }
}

fn dispatch_example(cmd: &ExampleCommand) -> Result<(Value, String)> {
    match cmd {
        ExampleCommand::List => {
            let examples = fixtures::list_examples();
            let mut human = String::new();
            for info in &examples {
                let defaults: Vec<String> = info
                    .defaults
                    .iter()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect();
                writeln!(
                    human,
                    "{:28} {} {}",
                    info.name,
                    info.summary,
                    if defaults.is_empty() {
                        String::new()
                    } else {
                        format!("[defaults: {}]", defaults.join(", "))
                    }
                )
                .expect("writing to string");
            }
            Ok((json!({"examples": examples}), human))
        }
        ExampleCommand::Run { name, params } => {
            let mut map = BTreeMap::new();
            for raw in params {
                let (k, v) = raw.split_once('=').ok_or_else(|| {
                    Error::InvalidInput(format!("--param needs key=value, got '{raw}'"))
                })?;
                map.insert(k.to_string(), v.to_string());
            }
            let report = fixtures::run_example(name, &map)?;
            let value = serde_json::to_value(&report).expect("report serializes");
            let mut human = format!(
                "{}: {}",
                report.name,
                if report.pass { "PASS" } else { "FAIL" }
            );
            for (key, expected) in &report.expected {
                let computed = report.computed.get(key);
                write!(
                    human,
                    "\n  {key}: computed {} (expected {expected})",
                    computed.map_or("<missing>".to_string(), |v| v.to_string()),
                )
                .expect("writing to string");
            }
            Ok((value, human))
        }
    }
}

fn format_positions(positions: &[Position]) -> String {
    positions
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}
