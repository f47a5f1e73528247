use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use gordan_core::census::{
    realize, CensusReport, ConfigOutcome, RealizationReport, RealizeError, RealizeOptions, SCHEMA,
};
use gordan_core::export::{emit_obj, emit_off, DEFAULT_DIGITS};
use gordan_core::labels::{parse_type, type_label, GORDAN_RELATIVES};
use gordan_core::presentation::{PresentationError, DEFAULT_MAX_COSETS};
use gordan_core::realization::{SearchDiagnostics, SearchError};
use gordan_core::{build_map, hexad, ConfigKind, FieldScalar, MapInvariants};

const EXIT_USAGE: u8 = 1;
const EXIT_ENUMERATION: u8 = 2;
const EXIT_VALIDATION: u8 = 3;
const EXIT_NONE_FOUND: u8 = 4;

/// Petrie relatives of Gordan's map and their icosahedral realizations.
#[derive(Parser)]
#[command(name = "gordan", version)]
struct Cli {
    /// Worker threads for the search (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Coset bound for building maps from presentations.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_COSETS)]
    max_cosets: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build {p,q}_r by coset enumeration and print its invariants.
    Build { p: usize, q: usize, r: usize },
    /// Close {p,q}_r under duality and Petrie duality.
    Hexad { p: usize, q: usize, r: usize },
    /// Search for icosahedral realizations.
    Realize {
        /// two-icosahedra, dodecahedron, icosidodecahedron, or all.
        config: String,
        /// Target map such as {4,5}_6; every relative of Gordan's map if omitted.
        target: Option<String>,
        /// Ratio of the two icosahedra, e.g. "(1+rt5)/2".
        #[arg(long, default_value = "2")]
        lambda: String,
        /// Significant digits of mesh coordinates.
        #[arg(long, default_value_t = DEFAULT_DIGITS)]
        digits: usize,
        /// Directory for the JSON reports and OFF/OBJ meshes.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl ToString) -> Self {
        Self { code, message: message.to_string() }
    }
}

fn presentation_failure(e: PresentationError) -> Failure {
    let code = match e {
        PresentationError::BadParameters(..) | PresentationError::ZeroBound => EXIT_USAGE,
        _ => EXIT_ENUMERATION,
    };
    Failure::new(code, e)
}

fn realize_failure(e: RealizeError) -> Failure {
    match e {
        RealizeError::Presentation(e) => presentation_failure(e),
        RealizeError::Symmetry(e) => Failure::new(EXIT_USAGE, e),
        RealizeError::Search(e @ SearchError::TooManyCycles { .. }) => Failure::new(EXIT_ENUMERATION, e),
        e => Failure::new(EXIT_VALIDATION, e),
    }
}

#[derive(Serialize)]
struct Versioned<T> {
    schema: &'static str,
    #[serde(flatten)]
    body: T,
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::new(EXIT_USAGE, format!("cannot write {}: {e}", path.display())))
}

#[derive(Serialize)]
struct HexadRow<'a> {
    /// Dual (`d`) and Petrie (`p`) steps from the seed.
    word: &'a str,
    invariants: &'a MapInvariants,
}

#[derive(Serialize)]
struct HexadReport<'a> {
    schema: &'static str,
    seed: String,
    members: Vec<HexadRow<'a>>,
}

#[derive(Serialize)]
struct RunReport<'a> {
    schema: &'static str,
    census: &'a CensusReport,
    polyhedra: Vec<&'a RealizationReport>,
    searches: Vec<SearchSummary>,
}

#[derive(Serialize)]
struct SearchSummary {
    configuration: ConfigKind,
    target: String,
    found: usize,
    diagnostics: SearchDiagnostics,
}

fn run_realize(
    config: &str,
    target: Option<&str>,
    lambda: &str,
    digits: usize,
    out: Option<&Path>,
    max_cosets: usize,
) -> Result<(), Failure> {
    let kinds: Vec<ConfigKind> = if config == "all" {
        ConfigKind::ALL.to_vec()
    } else {
        vec![config.parse().map_err(|e| Failure::new(EXIT_USAGE, e))?]
    };
    let targets = match target {
        Some(t) => vec![parse_type(t).ok_or_else(|| Failure::new(EXIT_USAGE, format!("cannot parse map type {t:?}")))?],
        None => GORDAN_RELATIVES.to_vec(),
    };
    let lambda: FieldScalar = lambda.parse().map_err(|e| Failure::new(EXIT_USAGE, format!("--lambda: {e}")))?;
    if digits == 0 {
        return Err(Failure::new(EXIT_USAGE, "--digits must be at least 1"));
    }
    let options = RealizeOptions { lambda, max_cosets, ..Default::default() };

    let mut outcomes: Vec<ConfigOutcome> = Vec::new();
    for &kind in &kinds {
        for &t in &targets {
            outcomes.push(realize(kind, t, &options).map_err(realize_failure)?);
        }
    }
    let census = CensusReport::from_outcomes(&outcomes);
    let report = RunReport {
        schema: SCHEMA,
        census: &census,
        polyhedra: outcomes.iter().flat_map(|o| &o.realizations).map(|r| &r.report).collect(),
        searches: outcomes
            .iter()
            .map(|o| SearchSummary {
                configuration: o.config.kind,
                target: type_label(o.target.0, o.target.1, o.target.2),
                found: o.realizations.len(),
                diagnostics: o.diagnostics.clone(),
            })
            .collect(),
    };

    if let Some(dir) = out {
        fs::create_dir_all(dir)
            .map_err(|e| Failure::new(EXIT_USAGE, format!("cannot create {}: {e}", dir.display())))?;
        for o in &outcomes {
            let (p, q, r) = o.target;
            for (k, real) in o.realizations.iter().enumerate() {
                let stem = format!("{}-{p}-{q}-{r}-{k}", o.config.kind);
                write_file(&dir.join(format!("{stem}.off")), &emit_off(&real.found.polyhedron, digits))?;
                write_file(&dir.join(format!("{stem}.obj")), &emit_obj(&real.found.polyhedron, digits))?;
            }
        }
        let text = serde_json::to_string_pretty(&report).expect("reports serialize");
        write_file(&dir.join("report.json"), &(text + "\n"))?;
        let text = serde_json::to_string_pretty(&census).expect("reports serialize");
        write_file(&dir.join("census.json"), &(text + "\n"))?;
    }
    print_json(&report);

    if census.rows.is_empty() {
        return Err(Failure::new(EXIT_NONE_FOUND, "no realization found"));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(Failure::new(EXIT_USAGE, "--jobs must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| Failure::new(EXIT_USAGE, e))?;
    }
    match cli.command {
        Command::Build { p, q, r } => {
            let map = build_map(p, q, r, cli.max_cosets).map_err(presentation_failure)?;
            print_json(&Versioned { schema: SCHEMA, body: map.invariants() });
        }
        Command::Hexad { p, q, r } => {
            let map = build_map(p, q, r, cli.max_cosets).map_err(presentation_failure)?;
            let members = hexad(&map).map_err(|e| Failure::new(EXIT_VALIDATION, e))?;
            let members = members.iter().map(|m| HexadRow { word: &m.word, invariants: &m.invariants }).collect();
            print_json(&HexadReport { schema: SCHEMA, seed: type_label(p, q, r), members });
        }
        Command::Realize { config, target, lambda, digits, out } => {
            run_realize(&config, target.as_deref(), &lambda, digits, out.as_deref(), cli.max_cosets)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
