//! Command-line front end: loads a problem file, runs one analysis, and prints
//! a JSON report.
//!
//! Exit codes: 0 on success, 2 for invalid input, 3 when the answer is
//! `Unknown` (membership) or `NotCertified` (whitney).

pub mod problem;
pub mod report;
pub mod svg;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use toric_closure::closure::{c_closure_report, icirc_min_generators, is_nondegenerate, monomial_membership_with, MembershipResult};
use toric_closure::semigroup::{support, toric_ideal, GermPoly};
use toric_closure::whitney::{verdier_check, Verdict};

pub use problem::{InputError, Problem};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "toric-closure", version, about = "Newton polyhedra, non-degeneracy and integral closure over affine toric varieties")]
pub struct Cli {
    /// Emit JSON (the default and only format)
    #[arg(long, global = true)]
    pub json: bool,
    /// Indent the JSON output
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Everything: toric ideal, supports, polyhedron, faces, non-degeneracy, closure, I°
    Analyze { file: PathBuf },
    /// Supports, vertices, facets and compact faces with face polynomials
    Newton { file: PathBuf },
    /// Non-degeneracy check over the compact faces
    Nondeg { file: PathBuf },
    /// Decide whether a monomial lies in the integral closure
    Member {
        file: PathBuf,
        #[arg(long)]
        monomial: String,
    },
    /// Minimal monomial generators of I° inside a search box
    Icirc {
        file: PathBuf,
        /// Use the box [0, N]^n instead of the default one
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Generators of the toric ideal of the semigroup
    ToricIdeal { file: PathBuf },
    /// Certify the condition-W hypothesis for the file's family
    Whitney { file: PathBuf },
    /// Draw the Newton polyhedron of a planar problem as SVG
    Plot {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Viewport side in lattice units (default: largest coordinate + 2)
        #[arg(long)]
        extent: Option<u64>,
    },
}

/// What a command produced: exit code and the text for each stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn input_error(e: &InputError) -> Outcome {
        Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: format!("error: {e}\n") }
    }
}

/// A JSON report and the exit code it calls for.
pub struct Report {
    pub value: Value,
    pub code: i32,
}

impl Report {
    fn ok(value: Value) -> Report {
        Report { value, code: EXIT_OK }
    }
}

pub fn cmd_toric_ideal(p: &Problem) -> Report {
    let gens = toric_ideal(&p.semigroup);
    Report::ok(report::toric_ideal(&p.semigroup, &p.variables, &gens))
}

pub fn cmd_newton(p: &Problem) -> Result<Report, InputError> {
    let (_, ideal) = p.require_ideal()?;
    Ok(Report::ok(report::newton(ideal)))
}

pub fn cmd_nondeg(p: &Problem) -> Result<Report, InputError> {
    let (_, ideal) = p.require_ideal()?;
    Ok(Report::ok(report::nondeg(&is_nondegenerate(ideal))))
}

pub fn cmd_icirc(p: &Problem, bound: Option<u64>) -> Result<Report, InputError> {
    let (_, ideal) = p.require_ideal()?;
    Ok(Report::ok(report::icirc(&icirc_min_generators(ideal, bound), &p.variables)))
}

pub fn cmd_analyze(p: &Problem) -> Result<Report, InputError> {
    let (source, ideal) = p.require_ideal()?;
    let nondeg = is_nondegenerate(ideal);
    let toric = toric_ideal(&p.semigroup);
    let value = json!({
        "ideal_source": source.as_str(),
        "toric_ideal": report::toric_ideal(&p.semigroup, &p.variables, &toric),
        "newton": report::newton(ideal),
        "nondeg": report::nondeg(&nondeg),
        "closure": report::closure(ideal, &p.variables, &c_closure_report(ideal)),
        "icirc": report::icirc(&icirc_min_generators(ideal, None), &p.variables),
    });
    Ok(Report::ok(value))
}

pub fn cmd_member(p: &Problem, monomial: &str) -> Result<Report, InputError> {
    let (_, ideal) = p.require_ideal()?;
    let exponent = p.parse_monomial(monomial)?;
    let nondeg = is_nondegenerate(ideal);
    let result = monomial_membership_with(&exponent, ideal, &nondeg)
        .map_err(|e| InputError(format!("invalid monomial: {e}")))?;
    let germ = GermPoly::new(
        p.variables.clone(),
        toric_closure::poly::Poly::monomial(exponent.clone(), num_traits::One::one()),
    )
    .expect("declared variables");
    let verified = match &result {
        MembershipResult::Out(w) => {
            let sg = support(&germ, &p.semigroup).expect("declared variables");
            w.verify(ideal, &sg)
        }
        _ => false,
    };
    let code = match result {
        MembershipResult::Unknown { .. } => EXIT_INCONCLUSIVE,
        _ => EXIT_OK,
    };
    Ok(Report { value: report::membership(ideal, &p.variables, &germ, &exponent, &result, verified), code })
}

pub fn cmd_whitney(p: &Problem) -> Result<Report, InputError> {
    let spec = p.require_family()?;
    let r = verdier_check(spec);
    let code = if r.verdict == Verdict::Certified { EXIT_OK } else { EXIT_INCONCLUSIVE };
    Ok(Report { value: report::whitney(&r), code })
}

/// The SVG document and a short JSON summary of what was drawn.
pub fn cmd_plot(p: &Problem, extent: Option<u64>) -> Result<(String, Report), InputError> {
    if p.semigroup.dim() != 2 {
        return Err(InputError("plot supports n=2 only".into()));
    }
    let (_, ideal) = p.require_ideal()?;
    let svg = svg::render(ideal, &svg::PlotOptions { extent });
    let compact: Vec<Value> = ideal.compact_faces().iter().map(|f| report::ivecs(&f.vertex_set)).collect();
    let summary = json!({
        "vertices": report::ivecs(ideal.newton().vertices()),
        "compact_faces": compact,
        "supp": report::ivecs(ideal.supp()),
    });
    Ok((svg, Report::ok(summary)))
}

pub fn render(value: &Value, pretty: bool) -> String {
    let mut s = if pretty {
        serde_json::to_string_pretty(value).expect("serialisable")
    } else {
        serde_json::to_string(value).expect("serialisable")
    };
    s.push('\n');
    s
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(&cli) {
        Ok(report) => {
            Outcome { code: report.code, stdout: render(&report.value, cli.pretty), stderr: String::new() }
        }
        Err(e) => Outcome::input_error(&e),
    }
}

fn execute(cli: &Cli) -> Result<Report, InputError> {
    let load = |f: &PathBuf| Problem::load(f);
    let report = match &cli.command {
        Command::Analyze { file } => cmd_analyze(&load(file)?)?,
        Command::Newton { file } => cmd_newton(&load(file)?)?,
        Command::Nondeg { file } => cmd_nondeg(&load(file)?)?,
        Command::Member { file, monomial } => cmd_member(&load(file)?, monomial)?,
        Command::Icirc { file, bound } => cmd_icirc(&load(file)?, *bound)?,
        Command::ToricIdeal { file } => cmd_toric_ideal(&load(file)?),
        Command::Whitney { file } => cmd_whitney(&load(file)?)?,
        Command::Plot { file, out, extent } => {
            let (svg, mut report) = cmd_plot(&load(file)?, *extent)?;
            std::fs::write(out, &svg)
                .map_err(|e| InputError(format!("cannot write {}: {e}", out.display())))?;
            report.value["out"] = Value::String(out.display().to_string());
            report
        }
    };
    Ok(report)
}
