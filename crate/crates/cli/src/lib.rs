//! Command-line front end for the Feynman-integral engine.
//!
//! [`RunConfig`] is the parsed command line; [`run`] executes it and
//! returns the payload and exit code without touching the process.

pub mod bench;
pub mod input;
pub mod render;

use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use feynman_gw_core::quasimodular::QSeries;
use feynman_gw_core::{
    assemble_generating_series_with, catalog, collapse_to_univariate, descendant_integral_branchtype,
    descendant_integral_degree_with, feynman_integral_branchtype, feynman_integral_degree_with, fit_quasimodular,
    naive_integral, with_automorphisms, BranchType, DegreeSeries, DegreeSeriesJson, Error, FeynmanGraph,
    GenusFunction, PsiData, Rational, TruncationSpec,
};

pub use bench::Algo;
pub use input::parse_graph;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

/// Failure with a stable code, reported as a JSON object on stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: String,
    pub message: String,
    pub exit: i32,
}

impl CliError {
    pub fn input(code: &str, message: impl Into<String>) -> Self {
        Self {
            code: code.to_string(),
            message: message.into(),
            exit: EXIT_INPUT,
        }
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Body<'a> {
            code: &'a str,
            message: &'a str,
        }
        #[derive(Serialize)]
        struct Wrapper<'a> {
            error: Body<'a>,
        }
        render::to_json_line(&Wrapper {
            error: Body {
                code: &self.code,
                message: &self.message,
            },
        })
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let exit = if e.is_limit() {
            EXIT_LIMIT
        } else if e.is_internal() {
            EXIT_INTERNAL
        } else {
            EXIT_INPUT
        };
        Self {
            code: e.code().to_string(),
            message: e.to_string(),
            exit,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "feynman-gw", version, about = "Hurwitz numbers and descendant invariants of elliptic curves via Feynman integrals")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Write the payload here instead of stdout.
    #[arg(long, short, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct GraphSource {
    /// Named catalog graph.
    #[arg(long)]
    pub catalog: Option<String>,
    /// Graph file, JSON or `u v` lines; `-` reads stdin.
    #[arg(long, value_name = "PATH")]
    pub graph: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Parallelism {
    /// Worker threads for the branch-type sweep.
    #[arg(long, env = "FEYNMAN_GW_THREADS")]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SeriesOutput {
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Sum over branch types of equal total degree.
    #[arg(long)]
    pub collapse: bool,
    /// Print internal branch degrees instead of rendered q-exponents.
    #[arg(long)]
    pub raw: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hurwitz coefficient for one branch type.
    Integral {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, value_name = "A1,A2,...")]
        branch_type: String,
        #[arg(long, value_enum, default_value = "flip")]
        algo: Algo,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Hurwitz coefficients for every branch type up to a total degree.
    Series {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        degree: u32,
        #[arg(long, value_enum, default_value = "flip")]
        algo: Algo,
        #[command(flatten)]
        output: SeriesOutput,
        #[command(flatten)]
        parallel: Parallelism,
    },
    /// Descendant invariants for a graph with a genus function.
    Descendant {
        #[command(flatten)]
        source: GraphSource,
        /// Genus per vertex.
        #[arg(long, value_name = "G1,G2,...")]
        genus: String,
        #[arg(long, value_name = "A1,A2,...", conflicts_with = "degree", required_unless_present = "degree")]
        branch_type: Option<String>,
        #[arg(long)]
        degree: Option<u32>,
        /// Skip the nonnegative psi-power check.
        #[arg(long)]
        no_psi_check: bool,
        #[command(flatten)]
        output: SeriesOutput,
        #[command(flatten)]
        parallel: Parallelism,
    },
    /// Generating series sum of I_Gamma / |Aut Gamma| over catalog graphs.
    Assemble {
        #[command(flatten)]
        graphs: GraphList,
        #[arg(long)]
        degree: u32,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        raw: bool,
        #[command(flatten)]
        parallel: Parallelism,
    },
    /// Fit a generating series against quasimodular forms of one weight.
    Fit {
        #[command(flatten)]
        graphs: GraphList,
        /// DegreeSeries JSON; its collapsed part is fitted.
        #[arg(long, value_name = "PATH", conflicts_with_all = ["catalog", "graph", "aut"])]
        series: Option<PathBuf>,
        /// Highest degree used, in the series variable Q = q^2.
        #[arg(long)]
        degree: u32,
        /// Defaults to 6g-6 for the assembled genus.
        #[arg(long)]
        weight: Option<u32>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[command(flatten)]
        parallel: Parallelism,
    },
    /// Timing table, CSV.
    Bench {
        #[command(flatten)]
        source: GraphSource,
        /// `a..b` or a comma list.
        #[arg(long, default_value = "1..5")]
        degrees: String,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "flip,naive")]
        algos: Vec<Algo>,
        #[arg(long, default_value_t = 1)]
        reps: usize,
        /// Seconds per cell before it is reported as `--`.
        #[arg(long, default_value_t = 60.0)]
        budget: f64,
        #[command(flatten)]
        parallel: Parallelism,
    },
    /// List the named graphs.
    Catalog {
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Debug, Args)]
pub struct GraphList {
    /// Catalog names.
    #[arg(long, value_delimiter = ',')]
    pub catalog: Vec<String>,
    /// Graph files.
    #[arg(long, value_name = "PATH")]
    pub graph: Vec<PathBuf>,
    /// Automorphism orders, one per graph (catalog first); brute-forced if absent.
    #[arg(long, value_delimiter = ',')]
    pub aut: Vec<u64>,
}

/// Result of [`run`]: payload for stdout (or `--output`) and the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            exit: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    pub fn error(e: &CliError) -> Self {
        Self {
            exit: e.exit,
            stdout: String::new(),
            stderr: e.to_json(),
        }
    }
}

fn read_path(p: &PathBuf) -> Result<String, CliError> {
    let io = |e: std::io::Error| CliError::input("io", format!("{}: {e}", p.display()));
    if p.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(io)
    } else {
        std::fs::read_to_string(p).map_err(io)
    }
}

fn load_graph(source: &GraphSource) -> Result<FeynmanGraph, CliError> {
    match (&source.catalog, &source.graph) {
        (Some(name), _) => Ok(catalog::get(name)?),
        (None, Some(path)) => parse_graph(&read_path(path)?).map_err(|mut e| {
            e.message = format!("{}: {}", path.display(), e.message);
            e
        }),
        (None, None) => Err(CliError::input("usage", "one of --catalog or --graph is required")),
    }
}

fn load_list(list: &GraphList) -> Result<Vec<(FeynmanGraph, u64)>, CliError> {
    let mut graphs = Vec::new();
    for name in &list.catalog {
        graphs.push(catalog::get(name)?);
    }
    for path in &list.graph {
        graphs.push(load_graph(&GraphSource {
            catalog: None,
            graph: Some(path.clone()),
        })?);
    }
    if graphs.is_empty() {
        return Err(CliError::input("usage", "no graphs given (use --catalog or --graph)"));
    }
    if list.aut.is_empty() {
        return Ok(with_automorphisms(graphs)?);
    }
    if list.aut.len() != graphs.len() {
        return Err(CliError::input(
            "usage",
            format!("--aut has {} entries for {} graphs", list.aut.len(), graphs.len()),
        ));
    }
    Ok(graphs.into_iter().zip(list.aut.iter().copied()).collect())
}

fn check_threads(p: &Parallelism) -> Result<Option<usize>, CliError> {
    match p.threads {
        Some(0) => Err(CliError::input("usage", "--threads must be positive")),
        t => Ok(t),
    }
}

fn check_degree(d: u32) -> Result<u32, CliError> {
    if d == 0 {
        return Err(CliError::input("usage", "--degree must be at least 1"));
    }
    Ok(d)
}

fn fit_weight(weight: Option<u32>, genus: Option<usize>) -> Result<u32, CliError> {
    match (weight, genus) {
        (Some(w), _) => Ok(w),
        (None, Some(g)) if g >= 2 => Ok(6 * g as u32 - 6),
        (None, Some(g)) => Err(CliError::input("usage", format!("no default weight for genus {g}; pass --weight"))),
        (None, None) => Err(CliError::input("usage", "--weight is required with --series")),
    }
}

/// Executes one command. Never panics on bad input; every failure maps to
/// an error object and a nonzero exit code.
pub fn run(config: &RunConfig) -> Outcome {
    match execute(&config.command) {
        Ok(s) => Outcome::ok(s),
        Err(e) => Outcome::error(&e),
    }
}

fn execute(command: &Command) -> Result<String, CliError> {
    match command {
        Command::Integral {
            source,
            branch_type,
            algo,
            format,
        } => {
            let g = load_graph(source)?;
            let a = input::parse_list("branch-type", branch_type)?;
            if a.len() != g.edge_count() {
                return Err(Error::LengthMismatch {
                    what: "branch type",
                    expected: g.edge_count(),
                    got: a.len(),
                }
                .into());
            }
            let coeff = match algo {
                Algo::Flip => feynman_integral_branchtype(&g, &BranchType::new(a.clone()))?,
                Algo::Naive => {
                    let total: u32 = a.iter().sum();
                    naive_integral(&g, &TruncationSpec::sufficient(total))?.coefficient(&a)
                }
            };
            Ok(match format {
                Format::Text => format!("{coeff}\n"),
                Format::Json => render::to_json_line(&serde_json::json!({
                    "branch_type": a,
                    "coeff": coeff.to_string(),
                })),
            })
        }
        Command::Series {
            source,
            degree,
            algo,
            output,
            parallel,
        } => {
            let g = load_graph(source)?;
            let d = check_degree(*degree)?;
            let s = match algo {
                Algo::Flip => feynman_integral_degree_with(&g, d, check_threads(parallel)?)?,
                Algo::Naive => naive_integral(&g, &TruncationSpec::sufficient(d))?,
            };
            let s = if output.collapse { collapse_to_univariate(&s) } else { s };
            Ok(render::series(&s, output.format, output.collapse, output.raw))
        }
        Command::Descendant {
            source,
            genus,
            branch_type,
            degree,
            no_psi_check,
            output,
            parallel,
        } => {
            let g = load_graph(source)?;
            let gf = GenusFunction(input::parse_list("genus", genus)?);
            if *no_psi_check {
                gf.check_len(&g)?;
            } else {
                PsiData::derive(&g, &gf)?;
            }
            let s = match (branch_type, degree) {
                (Some(a), _) => {
                    let a = input::parse_list("branch-type", a)?;
                    let c = descendant_integral_branchtype(&g, &gf, &BranchType::new(a.clone()))?;
                    let mut s = DegreeSeries::new(feynman_gw_core::Mode::Descendant);
                    s.insert(a, c);
                    s
                }
                (None, Some(d)) => descendant_integral_degree_with(&g, &gf, check_degree(*d)?, check_threads(parallel)?)?,
                (None, None) => return Err(CliError::input("usage", "one of --branch-type or --degree is required")),
            };
            let s = if output.collapse { collapse_to_univariate(&s) } else { s };
            Ok(render::series(&s, output.format, output.collapse, output.raw))
        }
        Command::Assemble {
            graphs,
            degree,
            format,
            raw,
            parallel,
        } => {
            let list = load_list(graphs)?;
            let s = assemble_generating_series_with(&list, check_degree(*degree)?, check_threads(parallel)?)?;
            Ok(render::series(&s, *format, true, *raw))
        }
        Command::Fit {
            graphs,
            series,
            degree,
            weight,
            format,
            parallel,
        } => {
            let d = check_degree(*degree)?;
            let (s, genus) = match series {
                Some(path) => {
                    let text = read_path(path)?;
                    let j: DegreeSeriesJson = serde_json::from_str(&text).map_err(|e| {
                        CliError::input(
                            "series_json",
                            format!("{}: line {}, column {}: {e}", path.display(), e.line(), e.column()),
                        )
                    })?;
                    let s = DegreeSeries::<Rational>::from_json(&j)?;
                    let s = if s.collapsed.is_empty() { collapse_to_univariate(&s) } else { s };
                    (s, None)
                }
                None => {
                    let list = load_list(graphs)?;
                    let s = assemble_generating_series_with(&list, d, check_threads(parallel)?)?;
                    (s, Some(list[0].0.first_betti()))
                }
            };
            let w = fit_weight(*weight, genus)?;
            let q = QSeries::from_degree_series(&s, d as usize, Clone::clone);
            Ok(render::fit(&fit_quasimodular(&q, w)?, *format))
        }
        Command::Bench {
            source,
            degrees,
            algos,
            reps,
            budget,
            parallel,
        } => {
            let g = load_graph(source)?;
            if !(budget.is_finite() && *budget >= 0.0) {
                return Err(CliError::input("usage", "--budget must be a nonnegative number of seconds"));
            }
            let plan = bench::BenchPlan {
                degrees: input::parse_degrees(degrees)?,
                algos: algos.clone(),
                reps: *reps,
                budget: Duration::from_secs_f64(*budget),
                threads: check_threads(parallel)?,
            };
            bench::run(&g, &plan)
        }
        Command::Catalog { format } => Ok(catalog_listing(*format)),
    }
}

#[derive(Serialize)]
struct CatalogRow {
    name: String,
    description: String,
    genus: usize,
    automorphisms: u64,
    graph: feynman_gw_core::GraphJson,
}

fn catalog_listing(format: Format) -> String {
    let rows: Vec<CatalogRow> = catalog::all()
        .into_iter()
        .map(|e| CatalogRow {
            genus: e.graph.first_betti(),
            graph: e.graph.to_json(),
            name: e.name,
            description: e.description,
            automorphisms: e.automorphisms,
        })
        .collect();
    match format {
        Format::Json => render::to_json_line(&serde_json::json!({
            "version": catalog::version(),
            "graphs": rows,
        })),
        Format::Text => rows
            .iter()
            .map(|r| {
                let edges: Vec<String> = r.graph.edges.iter().map(|[u, v]| format!("{u}-{v}")).collect();
                format!(
                    "{}\tgenus {}\t|Aut| {}\t{}\t{}\n",
                    r.name,
                    r.genus,
                    r.automorphisms,
                    edges.join(" "),
                    r.description
                )
            })
            .collect(),
    }
}
