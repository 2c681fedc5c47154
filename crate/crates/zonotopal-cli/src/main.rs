//! The `zonotopal` binary: exact power ideals, kernel spaces, and matroid
//! invariants for rational vector configurations, with JSON output.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use zonotopal_cli::commands::{
    cmd_basis, cmd_cox, cmd_exact, cmd_flats, cmd_graph_poly, cmd_hilb, cmd_ideal, cmd_kernel,
    cmd_pspace, cmd_tutte, CoxSpec,
};
use zonotopal_cli::input::{parse_graph, parse_matrix, parse_upperset, read_text};
use zonotopal_cli::render::{to_text, write_atomic};
use zonotopal_cli::verify::verify_paths;
use zonotopal_cli::envelope;

use zonotopal_core::matroid::NormalSelector;
use zonotopal_core::{Error, Result, UpperSet, VectorConfig};

#[derive(Parser)]
#[command(
    name = "zonotopal",
    version,
    about = "Exact power ideals, kernel spaces, and matroid invariants of rational vector configurations"
)]
struct Cli {
    /// Write the JSON output to this file (atomic rename) instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Include wall-clock timings in the output (breaks byte determinism).
    #[arg(long, global = true)]
    timings: bool,

    #[command(subcommand)]
    command: Command,
}

/// Arguments shared by the subcommands that take a configuration, a level,
/// and an upper set.
#[derive(Args)]
struct SpaceArgs {
    /// Matrix file: rows of whitespace-separated rationals, columns are the
    /// configuration vectors.
    #[arg(long)]
    matrix: PathBuf,

    /// Level shift k >= -1 of the exponents e(C) = m(C) + k + chi(C).
    #[arg(long, allow_hyphen_values = true)]
    k: i64,

    /// Upper set of flats: central, full, above:I, gens:I;J, mask:B, or @file.
    #[arg(long, default_value = "central")]
    upperset: String,
}

#[derive(Subcommand)]
enum Command {
    /// List the flats, hyperplanes, loops, and coloops of a configuration.
    Flats {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Tutte polynomial with counting evaluations (matrix or graph input).
    Tutte {
        #[arg(long, conflicts_with = "graph")]
        matrix: Option<PathBuf>,
        /// Graph file: vertex count line, then one `tail head` edge per line.
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Hilbert series of the kernel space, by one method or all of them.
    Hilb {
        #[command(flatten)]
        space: SpaceArgs,
        /// kernel, recursive, activity, subset, or all.
        #[arg(long, default_value = "all")]
        method: String,
    },
    /// The spanning polynomial set and the graded space it spans.
    Pspace {
        #[command(flatten)]
        space: SpaceArgs,
    },
    /// Activity basis elements (k >= 0) or the semi-internal basis (k = -1).
    Basis {
        #[command(flatten)]
        space: SpaceArgs,
    },
    /// Graded kernel of the power ideal with its basis polynomials.
    Kernel {
        #[command(flatten)]
        space: SpaceArgs,
        /// Degree cap for the kernel scan (default grows with the input).
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Generators of the flat ideal and of its hyperplane-power variant.
    Ideal {
        #[command(flatten)]
        space: SpaceArgs,
        /// Normal selector: auto, or seeded:N for seeded random normals.
        #[arg(long, default_value = "auto")]
        selector: String,
    },
    /// Deletion/contraction sequence checks at one column.
    Exact {
        #[command(flatten)]
        space: SpaceArgs,
        /// Column to delete and contract (0-based, neither loop nor coloop).
        #[arg(long)]
        x: usize,
    },
    /// Hilbert series under column multiplicities, by formula and by lifting.
    CoxHilb {
        #[arg(long)]
        matrix: PathBuf,
        /// Column multiplicities, e.g. 1,2,1.
        #[arg(long)]
        mult: String,
        /// 0/1 marks over the hyperplane list, e.g. 1,0,1 (semi-external).
        #[arg(long, conflicts_with = "c0")]
        hypmask: Option<String>,
        /// Flat as column indices, e.g. 0,2 (semi-internal).
        #[arg(long)]
        c0: Option<String>,
    },
    /// Flow, chromatic, and Tutte polynomials of a connected graph.
    GraphPoly {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Replay fixture files of frozen expected values.
    Verify {
        /// A single fixture file.
        #[arg(long, conflicts_with = "dir")]
        fixture: Option<PathBuf>,
        /// A directory of fixture .json files (default: fixtures/).
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

fn load_config(path: &PathBuf) -> Result<VectorConfig> {
    parse_matrix(&read_text(path)?)
}

fn load_space(args: &SpaceArgs) -> Result<(VectorConfig, UpperSet)> {
    let cfg = load_config(&args.matrix)?;
    let j = parse_upperset(&args.upperset, &cfg)?;
    Ok((cfg, j))
}

fn parse_selector(s: &str) -> Result<NormalSelector> {
    if s == "auto" {
        return Ok(NormalSelector::Auto);
    }
    if let Some(seed) = s.strip_prefix("seeded:") {
        let seed: u64 = seed
            .parse()
            .map_err(|_| Error::BadArgument(format!("bad selector seed {seed:?}")))?;
        return Ok(NormalSelector::Seeded(seed));
    }
    Err(Error::BadArgument(format!(
        "unknown selector {s:?}; use auto or seeded:N"
    )))
}

fn parse_mults(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::BadArgument(format!("bad multiplicity {t:?}")))
        })
        .collect()
}

fn parse_marks(s: &str) -> Result<Vec<bool>> {
    let toks: Vec<&str> = if s.contains(',') {
        s.split(',').map(str::trim).collect()
    } else {
        // compact form like 101
        return s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::BadArgument(format!("marks must be 0 or 1, found {other:?}"))),
            })
            .collect();
    };
    toks.iter()
        .map(|t| match *t {
            "0" => Ok(false),
            "1" => Ok(true),
            other => Err(Error::BadArgument(format!("marks must be 0 or 1, found {other:?}"))),
        })
        .collect()
}

fn parse_c0(s: &str, n: usize) -> Result<u32> {
    let mut mask = 0u32;
    for tok in s.split(',') {
        let tok = tok.trim();
        if tok.is_empty() {
            continue;
        }
        let i: usize = tok
            .parse()
            .map_err(|_| Error::BadArgument(format!("bad column index {tok:?}")))?;
        if i >= n {
            return Err(Error::BadArgument(format!(
                "column index {i} out of range for {n} columns"
            )));
        }
        mask |= 1 << i;
    }
    Ok(mask)
}

/// Runs the subcommand, producing (command name, input echo, result payload)
/// plus a nonzero exit code for verification mismatches.
fn dispatch(cmd: &Command) -> Result<(&'static str, Value, Value, u8)> {
    match cmd {
        Command::Flats { matrix } => {
            let cfg = load_config(matrix)?;
            let input = json!({ "matrix": matrix.display().to_string() });
            Ok(("flats", input, cmd_flats(&cfg), 0))
        }
        Command::Tutte { matrix, graph } => {
            let (input, cfg) = match (matrix, graph) {
                (Some(m), None) => (
                    json!({ "matrix": m.display().to_string() }),
                    load_config(m)?,
                ),
                (None, Some(g)) => {
                    let gi = parse_graph(&read_text(g)?)?;
                    (
                        json!({ "graph": g.display().to_string() }),
                        zonotopal_core::matroid::graph_to_config(&gi)?,
                    )
                }
                _ => {
                    return Err(Error::BadArgument(
                        "tutte needs exactly one of --matrix or --graph".into(),
                    ))
                }
            };
            Ok(("tutte", input, cmd_tutte(&cfg), 0))
        }
        Command::Hilb { space, method } => {
            let (cfg, j) = load_space(space)?;
            let input = json!({
                "matrix": space.matrix.display().to_string(),
                "k": space.k,
                "upperset": space.upperset,
                "method": method,
            });
            Ok(("hilb", input, cmd_hilb(&cfg, space.k, &j, method)?, 0))
        }
        Command::Pspace { space } => {
            let (cfg, j) = load_space(space)?;
            let input = json!({
                "matrix": space.matrix.display().to_string(),
                "k": space.k,
                "upperset": space.upperset,
            });
            Ok(("pspace", input, cmd_pspace(&cfg, space.k, &j)?, 0))
        }
        Command::Basis { space } => {
            let (cfg, j) = load_space(space)?;
            let input = json!({
                "matrix": space.matrix.display().to_string(),
                "k": space.k,
                "upperset": space.upperset,
            });
            Ok(("basis", input, cmd_basis(&cfg, space.k, &j)?, 0))
        }
        Command::Kernel { space, cap } => {
            let (cfg, j) = load_space(space)?;
            let input = json!({
                "matrix": space.matrix.display().to_string(),
                "k": space.k,
                "upperset": space.upperset,
                "cap": cap,
            });
            Ok(("kernel", input, cmd_kernel(&cfg, space.k, &j, *cap)?, 0))
        }
        Command::Ideal { space, selector } => {
            let (cfg, j) = load_space(space)?;
            let sel = parse_selector(selector)?;
            let input = json!({
                "matrix": space.matrix.display().to_string(),
                "k": space.k,
                "upperset": space.upperset,
                "selector": selector,
            });
            Ok(("ideal", input, cmd_ideal(&cfg, space.k, &j, sel)?, 0))
        }
        Command::Exact { space, x } => {
            let (cfg, j) = load_space(space)?;
            let input = json!({
                "matrix": space.matrix.display().to_string(),
                "k": space.k,
                "upperset": space.upperset,
                "x": x,
            });
            Ok(("exact", input, cmd_exact(&cfg, space.k, &j, *x)?, 0))
        }
        Command::CoxHilb { matrix, mult, hypmask, c0 } => {
            let cfg = load_config(matrix)?;
            let a = parse_mults(mult)?;
            let spec = match (hypmask, c0) {
                (Some(b), None) => CoxSpec::External(parse_marks(b)?),
                (None, Some(c)) => CoxSpec::Internal(parse_c0(c, cfg.n())?),
                _ => {
                    return Err(Error::BadArgument(
                        "cox-hilb needs exactly one of --hypmask or --c0".into(),
                    ))
                }
            };
            let input = json!({
                "matrix": matrix.display().to_string(),
                "mult": mult,
                "hypmask": hypmask,
                "c0": c0,
            });
            Ok(("cox-hilb", input, cmd_cox(&cfg, &a, &spec)?, 0))
        }
        Command::GraphPoly { graph } => {
            let gi = parse_graph(&read_text(graph)?)?;
            let input = json!({ "graph": graph.display().to_string() });
            Ok(("graph-poly", input, cmd_graph_poly(&gi)?, 0))
        }
        Command::Verify { fixture, dir } => {
            let paths: Vec<PathBuf> = match (fixture, dir) {
                (Some(f), None) => vec![f.clone()],
                (None, Some(d)) => vec![d.clone()],
                (None, None) => vec![PathBuf::from("fixtures")],
                _ => unreachable!("clap conflicts_with forbids both"),
            };
            let input = json!({
                "paths": paths.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
            });
            let (result, ok) = verify_paths(&paths)?;
            Ok(("verify", input, result, if ok { 0 } else { 1 }))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    match dispatch(&cli.command) {
        Ok((name, input, result, code)) => {
            let elapsed = cli
                .timings
                .then(|| started.elapsed().as_secs_f64() * 1000.0);
            let text = to_text(&envelope(name, input, result, elapsed));
            match &cli.out {
                Some(path) => {
                    if let Err(e) = write_atomic(path, &text) {
                        eprintln!("{}", to_text(&error_json(&e)).trim_end());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("{}", to_text(&error_json(&e)).trim_end());
            ExitCode::from(2)
        }
    }
}

fn error_json(e: &Error) -> Value {
    json!({ "error": { "code": e.code(), "message": e.to_string() } })
}
