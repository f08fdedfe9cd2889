//! `ctindex`: index pairs, mapping tori and group fingerprints from the
//! command line.

pub mod commands;
pub mod fixtures;
pub mod input;
pub mod report;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use torus_index::cubical::CubicalError;
use torus_index::dynamics::{DynamicsError, MultivaluedMap};
use torus_index::fpgroup::{FpGroupError, Presentation, DEFAULT_COSET_CAP, DEFAULT_NODE_CAP};
use torus_index::interval::IntervalError;
use torus_index::shifteq::ShiftEqError;

use commands::{PairRejected, Settings, System, TorusMode};
use input::{parse_graded_matrices, parse_images, InputError};
use report::Report;

pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;
pub const EXIT_ISOLATION: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "ctindex", version, about = "Mapping-torus Conley index toolkit")]
pub struct Cli {
    /// Print machine-readable JSON reports.
    #[arg(long, global = true)]
    pub json: bool,
    /// Add per-stage timings to reports.
    #[arg(long, global = true)]
    pub timing: bool,
    /// Depth of the low-index subgroup search.
    #[arg(long, global = true, default_value_t = 3)]
    pub max_index: usize,
    /// Live-coset limit for coset enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_COSET_CAP)]
    pub coset_cap: usize,
    /// Search-node limit for the low-index search.
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_CAP)]
    pub node_cap: usize,
    /// Grid `lo hi n; lo hi n; ...`, overriding an example's grid.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub grid: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct SystemArgs {
    /// Named example (see `example list`).
    #[arg(long)]
    pub example: Option<String>,
    /// Map expression, e.g. `(mul 2 (var 0))`.
    #[arg(long, allow_hyphen_values = true)]
    pub expr: Option<String>,
    #[arg(long)]
    pub expr_file: Option<PathBuf>,
    /// Enclosure file written by `enclose`.
    #[arg(long)]
    pub enclosure: Option<PathBuf>,
    /// Seed region: `all`, `cells: 3..9`, or `box: lo hi | lo hi`.
    #[arg(long, allow_hyphen_values = true)]
    pub seed: Option<String>,
    /// Generator images: a file, or inline `a -> a b; b -> b^-1`.
    #[arg(long)]
    pub images: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Mode {
    SelfMap,
    Pq,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Kind {
    Index,
    Torus,
    Pi1,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enclose the graph of a map on a grid.
    Enclose {
        #[command(flatten)]
        system: SystemArgs,
        /// Write the enclosure here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build and verify an index pair and its relative homology.
    Index {
        #[command(flatten)]
        system: SystemArgs,
    },
    /// Homology of the mapping torus.
    Torus {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, value_enum, default_value = "self-map")]
        mode: Mode,
    },
    /// Fundamental group of the mapping torus and its low-index subgroups.
    Pi1 {
        #[command(flatten)]
        system: SystemArgs,
        /// Presentation file (`gens: a, b` then `rel: u = v` lines) instead of a system.
        #[arg(long, conflicts_with_all = ["example", "expr", "expr_file", "enclosure", "images", "reduced"])]
        presentation: Option<PathBuf>,
        /// Use the reduced torus (base circle collapsed).
        #[arg(long)]
        reduced: bool,
        /// Also enumerate the cosets of the trivial subgroup.
        #[arg(long)]
        order: bool,
    },
    /// Shift equivalence over Q of two (graded) matrices.
    ShiftEq {
        /// JSON matrix or list of matrices, inline or as a file.
        left: String,
        right: String,
    },
    /// Compare two reports (JSON files) or examples (`example:NAME`).
    Compare {
        left: String,
        right: String,
        /// Report kind built for `example:` arguments.
        #[arg(long, value_enum, default_value = "index")]
        kind: Kind,
    },
    /// Bundled examples.
    Example {
        #[command(subcommand)]
        action: ExampleAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum ExampleAction {
    List,
}

/// Exit status for an error: input problems 2, enumeration limits 3,
/// isolation failures 4, anything else 1.
pub fn exit_code(e: &anyhow::Error) -> i32 {
    for cause in e.chain() {
        if let Some(d) = cause.downcast_ref::<DynamicsError>() {
            match d {
                DynamicsError::IsolationFailure { .. } => return EXIT_ISOLATION,
                DynamicsError::Parse { .. } | DynamicsError::Interval(_) => return EXIT_PARSE,
                _ => {}
            }
        }
        if cause.is::<PairRejected>() {
            return EXIT_ISOLATION;
        }
        if let Some(f) = cause.downcast_ref::<FpGroupError>() {
            return match f {
                FpGroupError::CosetLimit { .. } | FpGroupError::NodeLimit { .. } => EXIT_INCONCLUSIVE,
                FpGroupError::TableNotClosed => 1,
                _ => EXIT_PARSE,
            };
        }
        if let Some(CubicalError::Parse { .. }) = cause.downcast_ref::<CubicalError>() {
            return EXIT_PARSE;
        }
        if cause.is::<InputError>()
            || cause.is::<IntervalError>()
            || cause.is::<ShiftEqError>()
            || cause.is::<serde_json::Error>()
            || cause.is::<std::io::Error>()
        {
            return EXIT_PARSE;
        }
    }
    1
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn images_text(arg: &str) -> Result<String> {
    if arg.contains("->") {
        Ok(arg.to_string())
    } else {
        read(&PathBuf::from(arg))
    }
}

fn resolve(args: &SystemArgs, cli: &Cli, words: bool) -> Result<System> {
    let given = [
        args.example.is_some(),
        args.expr.is_some(),
        args.expr_file.is_some(),
        args.enclosure.is_some(),
        args.images.is_some(),
    ];
    match given.iter().filter(|&&g| g).count() {
        0 => bail!(InputError(
            "give one of --example, --expr, --expr-file, --enclosure or --images".into()
        )),
        1 => {}
        _ => bail!(InputError(
            "--example, --expr, --expr-file, --enclosure and --images are exclusive".into()
        )),
    }
    let seed = args.seed.as_deref();
    if let Some(name) = &args.example {
        return commands::example_system(name, words, cli.grid.as_deref(), seed);
    }
    if let Some(images) = &args.images {
        let (names, words) = parse_images(&images_text(images)?)?;
        return Ok(commands::wedge_system("images", names, words));
    }
    if let Some(path) = &args.enclosure {
        if cli.grid.is_some() {
            bail!(InputError("--grid does not apply to an enclosure file".into()));
        }
        let map = MultivaluedMap::parse(&read(path)?)?;
        let mut sys = commands::dynamics_system("enclosure", map, seed.unwrap_or("all"))?;
        sys.input.insert("enclosure".into(), path.display().to_string());
        return Ok(sys);
    }
    let expr = match (&args.expr, &args.expr_file) {
        (Some(e), _) => e.clone(),
        (None, Some(p)) => read(p)?,
        (None, None) => unreachable!("one source is given"),
    };
    let grid = cli
        .grid
        .as_deref()
        .ok_or_else(|| InputError("--expr needs --grid".into()))?;
    let map = commands::enclose_expr(&expr, grid)?;
    let mut sys = commands::dynamics_system("expr", map, seed.unwrap_or("all"))?;
    sys.input.insert("expr".into(), expr.trim().to_string());
    Ok(sys)
}

fn settings(cli: &Cli) -> Settings {
    Settings {
        max_index: cli.max_index,
        coset_cap: cli.coset_cap,
        node_cap: cli.node_cap,
        timing: cli.timing,
    }
}

/// Report of the given kind for `example:NAME`, or a saved JSON report.
fn load_report(arg: &str, kind: Kind, cli: &Cli) -> Result<Report> {
    if let Some(name) = arg.strip_prefix("example:") {
        let s = settings(cli);
        return match kind {
            Kind::Index => commands::index_report(&commands::example_system(name, false, None, None)?, &s),
            Kind::Torus => commands::torus_report(
                &commands::example_system(name, false, None, None)?,
                TorusMode::SelfMap,
                &s,
            ),
            Kind::Pi1 => commands::pi1_report(&commands::example_system(name, true, None, None)?, false, false, &s),
        };
    }
    let text = read(&PathBuf::from(arg))?;
    Ok(serde_json::from_str(&text).map_err(|e| InputError(format!("{arg}: not a report: {e}")))?)
}

fn matrices_arg(arg: &str) -> Result<Vec<torus_index::shifteq::LinearEndo>> {
    let text = if arg.trim_start().starts_with('[') {
        arg.to_string()
    } else {
        read(&PathBuf::from(arg))?
    };
    Ok(parse_graded_matrices(&text)?)
}

fn emit(out: &mut dyn Write, cli: &Cli, r: &Report) -> Result<()> {
    if cli.json {
        writeln!(out, "{}", r.to_json())?;
    } else {
        writeln!(out, "{r}")?;
    }
    Ok(())
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let s = settings(cli);
    match &cli.command {
        Command::Enclose { system, output } => {
            let sys = resolve(system, cli, false)?;
            let commands::Source::Dynamics { map, .. } = &sys.source else {
                bail!(InputError("enclose needs an interval map".into()));
            };
            let mut input = sys.input.clone();
            input.remove("seed");
            let path = output.as_ref().map(|p| p.display().to_string());
            let r = commands::enclose_report(map, input, path);
            match output {
                Some(p) => {
                    std::fs::write(p, map.to_text())
                        .with_context(|| format!("cannot write {}", p.display()))?;
                    emit(out, cli, &r)?;
                }
                None if cli.json => emit(out, cli, &r)?,
                None => {
                    write!(out, "{}", map.to_text())?;
                    writeln!(err, "{r}")?;
                }
            }
        }
        Command::Index { system } => {
            let sys = resolve(system, cli, false)?;
            emit(out, cli, &commands::index_report(&sys, &s)?)?;
        }
        Command::Torus { system, mode } => {
            let sys = resolve(system, cli, false)?;
            let mode = match mode {
                Mode::SelfMap => TorusMode::SelfMap,
                Mode::Pq => TorusMode::Pq,
            };
            let r = commands::torus_report(&sys, mode, &s)?;
            for w in &r.warnings {
                writeln!(err, "warning: {w}")?;
            }
            emit(out, cli, &r)?;
        }
        Command::Pi1 {
            presentation: Some(path),
            order,
            ..
        } => {
            let p = Presentation::parse(&read(path)?)?;
            let mut input = BTreeMap::new();
            input.insert("presentation".into(), path.display().to_string());
            emit(out, cli, &commands::presentation_report(&p, input, *order, &s)?)?;
        }
        Command::Pi1 {
            system,
            presentation: None,
            reduced,
            order,
        } => {
            let sys = resolve(system, cli, true)?;
            emit(out, cli, &commands::pi1_report(&sys, *reduced, *order, &s)?)?;
        }
        Command::ShiftEq { left, right } => {
            let (a, b) = (matrices_arg(left)?, matrices_arg(right)?);
            let mut input = BTreeMap::new();
            input.insert("left".into(), left.clone());
            input.insert("right".into(), right.clone());
            emit(out, cli, &commands::shift_eq_report(&a, &b, input))?;
        }
        Command::Compare { left, right, kind } => {
            let a = load_report(left, *kind, cli)?;
            let b = load_report(right, *kind, cli)?;
            let c = commands::compare(&a, &b, left, right)?;
            if cli.json {
                writeln!(out, "{}", c.to_json())?;
            } else {
                writeln!(out, "{c}")?;
            }
        }
        Command::Example {
            action: ExampleAction::List,
        } => {
            if cli.json {
                let list: Vec<BTreeMap<&str, String>> = fixtures::FIXTURES
                    .iter()
                    .map(|f| {
                        let mut m = BTreeMap::new();
                        m.insert("name", f.name.to_string());
                        m.insert("description", f.description.to_string());
                        m
                    })
                    .collect();
                writeln!(out, "{}", serde_json::to_string_pretty(&list)?)?;
            } else {
                for f in fixtures::FIXTURES {
                    writeln!(out, "{:<12} {}", f.name, f.description)?;
                }
            }
        }
    }
    Ok(())
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            exit_code(&e)
        }
    }
}
