//! The `ahilb` command line. Exit codes: 0 when every check passes, 1 for
//! usage or parse errors, 2 when a check fails.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{GroupSpec, DEFAULT_MAX_ORDER};
use crate::io::json::Document;
use crate::io::{parse_group, svg};
use crate::pipeline::{CheckSet, Perturbation, Pipeline};

pub const MAX_ORDER_ENV: &str = "AHILB_MAX_ORDER";

#[derive(Parser, Debug)]
#[command(name = "ahilb", version, about = "Reid's recipe and the McKay correspondence for A-Hilb C^3")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the full pipeline and write the requested artifacts.
    Compute(Opts),
    /// Run the checks and print the report as JSON.
    Check(Opts),
    /// Write the SVG pictures.
    Render(Opts),
}

#[derive(Args, Debug)]
struct Opts {
    /// Group such as `1/11(1,2,8)` or `1/2(1,1,0);1/2(0,1,1)`.
    spec: Option<String>,
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    svg: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    quiver_svg: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Checks::All)]
    check: Checks,
    /// Largest group order to accept; defaults to AHILB_MAX_ORDER or 10^6.
    #[arg(long, value_name = "N")]
    max_order: Option<u64>,
    /// Draw a random cyclic group from this seed when no spec is given.
    #[arg(long, value_name = "N")]
    seed: Option<u64>,
    #[arg(long)]
    quiet: bool,
    /// Inject a fault (`relation` or `duality`) to exercise the failure path.
    #[arg(long, hide = true, default_value = "none")]
    perturb: Perturbation,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Checks {
    All,
    Fan,
    Recipe,
    Relations,
    Cohomology,
}

impl From<Checks> for CheckSet {
    fn from(c: Checks) -> Self {
        match c {
            Checks::All => CheckSet::All,
            Checks::Fan => CheckSet::Fan,
            Checks::Recipe => CheckSet::Recipe,
            Checks::Relations => CheckSet::Relations,
            Checks::Cohomology => CheckSet::Cohomology,
        }
    }
}

/// A random cyclic subgroup of SL(3) of order between 2 and 200.
pub fn random_cyclic(seed: u64) -> GroupSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = rng.gen_range(2..=200u64);
    let a = rng.gen_range(0..r);
    let b = rng.gen_range(0..r);
    GroupSpec::cyclic(r, [a, b, (2 * r - a - b) % r])
}

fn max_order(flag: Option<u64>) -> Result<u64> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var(MAX_ORDER_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Input(format!("{MAX_ORDER_ENV}={v} is not a positive integer"))),
        Err(_) => Ok(DEFAULT_MAX_ORDER),
    }
}

fn write(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))
}

fn execute(command: Command) -> Result<bool> {
    let (kind, opts) = match command {
        Command::Compute(o) => ("compute", o),
        Command::Check(o) => ("check", o),
        Command::Render(o) => ("render", o),
    };
    let spec = match (&opts.spec, opts.seed) {
        (Some(s), _) => parse_group(s)?,
        (None, Some(seed)) => random_cyclic(seed),
        (None, None) => return Err(Error::Input("a group spec or --seed is required".into())),
    };
    if kind == "render" && opts.svg.is_none() && opts.quiver_svg.is_none() {
        return Err(Error::Input("render needs --svg or --quiver-svg".into()));
    }
    let p = Pipeline::run_perturbed(&spec, max_order(opts.max_order)?, opts.check.into(), opts.perturb)?;
    let doc = Document::from_pipeline(&p);
    if let Some(path) = &opts.json {
        write(path, &doc.to_json())?;
    }
    if let (Some(path), Some(tri)) = (&opts.svg, &p.triangulation) {
        write(path, &svg::triangulation_svg(&p.group, tri, p.decoration.as_ref()))?;
    }
    if let (Some(path), Some(q)) = (&opts.quiver_svg, &p.quiver) {
        write(path, &svg::quiver_svg(&p.group, q))?;
    }
    let report = serde_json::to_string_pretty(&p.report).expect("reports serialize");
    if !p.report.passed() || (kind == "check" && !opts.quiet) {
        println!("{report}");
    } else if !opts.quiet {
        let c = p.report.counts;
        println!(
            "{}: |A| = {}, {} triangles, b2 = {}, b4 = {}: all selected checks pass",
            p.report.group, c.order, c.triangles, c.b2, c.b4
        );
        for (stage, t) in &p.timings {
            eprintln!("  {stage:<13}{:>10.3} ms", t.as_secs_f64() * 1e3);
        }
    }
    Ok(p.report.passed())
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(true) => 0,
        Ok(false) => 2,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_usage() {
                1
            } else {
                2
            }
        }
    }
}
