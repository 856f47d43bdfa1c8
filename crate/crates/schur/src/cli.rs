//! Command-line front end.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::curve_model::{eta_polyline, eta_word, render_svg, triangle_walk, word_to_z, z_to_word, CurveSpec, Polyline};
use crate::error::{Error, Result};
use crate::laurent_oracle::{oracle_last_dvector, Budget, OracleConfig, OracleMethod, DEFAULT_TERM_BUDGET};
use crate::psi_engine::{resolve_orientation, segment_word, ModeTrial, OracleStatus, OrientationMode, PsiContext};
use crate::quiver::{CaseLabel, ExchangeMatrix};
use crate::root_lattice::{RootVector, Word};
use crate::suites::{verify_a2_affine, verify_e8, verify_rank2, verify_type_a, verify_type_d, SuiteReport};
use crate::sweep::{ordered_map, Execution};

/// Smallest oracle term budget accepted on the command line.
pub const MIN_BUDGET: usize = 10_000;

#[derive(Parser, Debug)]
#[command(name = "schur", version, about = "Denominator vectors, curve words and root-system suites for rank-3 cluster algebras")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Base V-triples; resolved by the short-word oracle gate when omitted.
    #[arg(long, global = true, env = "SCHUR_ORIENTATION")]
    pub orientation: Option<OrientationMode>,
    /// Term budget of each oracle polynomial.
    #[arg(long, global = true, env = "SCHUR_BUDGET", default_value_t = DEFAULT_TERM_BUDGET)]
    pub budget: usize,
    /// Oracle expansion: `full` or `projected`.
    #[arg(long, global = true, env = "SCHUR_ORACLE", default_value = "full")]
    pub oracle: OracleMethod,
    /// Worker threads for sweeps; 0 uses every core.
    #[arg(long, global = true, env = "SCHUR_WORKERS", default_value_t = 0)]
    pub workers: usize,
    #[arg(long, global = true, env = "SCHUR_FORMAT", value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Output file instead of standard output.
    #[arg(long, global = true, env = "SCHUR_OUT")]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    Psi,
    Tropical,
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteName {
    A,
    D,
    E8,
    Rank2,
    A2affine,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Root of the last mutated variable and its reflection word.
    Psi { word: Word },
    /// Denominator vector of the last mutated variable by one engine.
    Dvec {
        word: Word,
        #[arg(long, value_enum, default_value_t = Engine::Psi)]
        engine: Engine,
    },
    /// Crossing word of the segment from the origin to (B, C).
    WordOfSegment {
        #[arg(allow_negative_numbers = true)]
        b: i64,
        #[arg(allow_negative_numbers = true)]
        c: i64,
    },
    /// Converts between words and curve parameters z = (a, b, c).
    Curve {
        #[command(flatten)]
        target: CurveTarget,
        /// Also draw the curve.
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, default_value_t = 24)]
        segments: usize,
    },
    /// Draws a word (triangle walk) or a curve (spiral polyline) as SVG to --out.
    Svg {
        #[command(flatten)]
        target: CurveTarget,
        #[arg(long, default_value_t = 24)]
        segments: usize,
    },
    /// Sweeps every word up to a length through the engines, the monitor and the round trip.
    Verify {
        #[arg(long, env = "SCHUR_MAX_LEN", default_value_t = 6)]
        max_len: usize,
        #[arg(long, env = "SCHUR_ORACLE_MAX_LEN", default_value_t = 4)]
        oracle_max_len: usize,
        #[arg(long, env = "SCHUR_ENGINES", value_enum, value_delimiter = ',', default_value = "oracle,tropical,psi")]
        engines: Vec<Engine>,
    },
    /// Root-system suites.
    Suite {
        #[arg(value_enum)]
        which: SuiteName,
        /// Rank or family bound.
        #[arg(long)]
        n: Option<usize>,
        /// Arrow multiplicity of the rank-2 quiver.
        #[arg(long, default_value_t = 2)]
        c: u32,
    },
    /// Splits a word at its longest acyclic prefix.
    Decompose { word: Word },
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct CurveTarget {
    #[arg(long, num_args = 3, value_names = ["A", "B", "C"], allow_negative_numbers = true)]
    pub z: Option<Vec<i64>>,
    #[arg(long)]
    pub word: Option<Word>,
}

/// Everything a verification sweep needs.
#[derive(Clone, Debug, Serialize)]
pub struct VerifierConfig {
    pub orientation: Option<OrientationMode>,
    pub budget: usize,
    pub oracle: OracleMethod,
    pub max_len: usize,
    pub oracle_max_len: usize,
    pub workers: usize,
    pub engines: Vec<Engine>,
}

impl VerifierConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_len < 1 {
            return Err(Error::Config("max length must be at least 1".into()));
        }
        if self.budget < MIN_BUDGET {
            return Err(Error::Config(format!("budget must be at least {MIN_BUDGET}")));
        }
        if self.engines.is_empty() {
            return Err(Error::Config("no engines selected".into()));
        }
        Ok(())
    }

    pub fn oracle_config(&self) -> OracleConfig {
        OracleConfig { method: self.oracle, budget: Budget::new(self.budget) }
    }
}

/// One line of `verify` output.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyLine {
    pub word: Word,
    pub case_label: CaseLabel,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub psi: Option<RootVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tropical: Option<RootVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<RootVector>,
    pub oracle_status: OracleStatus,
    pub monitor_checks: usize,
    pub monitor_violations: usize,
    pub z: Option<CurveSpec>,
    pub round_trip: bool,
    pub agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl VerifyLine {
    pub fn passed(&self) -> bool {
        self.agree && self.round_trip && self.monitor_violations == 0 && self.error.is_none()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifySummary {
    pub orientation: OrientationMode,
    pub gate: Vec<ModeTrial>,
    pub words: usize,
    pub oracle_complete: usize,
    pub oracle_exhausted: usize,
    pub disagreements: usize,
    pub monitor_checks: usize,
    pub monitor_violations: usize,
    pub round_trip_failures: usize,
    pub errors: usize,
}

impl VerifySummary {
    pub fn passed(&self) -> bool {
        self.disagreements == 0 && self.monitor_violations == 0 && self.round_trip_failures == 0 && self.errors == 0
    }
}

/// The engine context, with the orientation forced or settled by the gate.
pub fn context(orientation: Option<OrientationMode>, budget: usize) -> Result<(PsiContext, Vec<ModeTrial>)> {
    let b0 = ExchangeMatrix::two_complete();
    let (mode, gate) = match orientation {
        Some(m) => (m, Vec::new()),
        None => resolve_orientation(&b0, 2, Budget::new(budget))?,
    };
    Ok((PsiContext::new(b0, mode)?, gate))
}

fn verify_word(ctx: &PsiContext, config: &VerifierConfig, w: &Word) -> VerifyLine {
    let run = || -> Result<VerifyLine> {
        let d = ctx.decompose(w)?;
        let wants = |e: Engine| config.engines.contains(&e);
        let psi = wants(Engine::Psi).then(|| ctx.psi(w)).transpose()?;
        let tropical = wants(Engine::Tropical).then(|| ctx.tropical_last(w)).transpose()?;
        let (oracle, oracle_status) = if wants(Engine::Oracle) && w.len() <= config.oracle_max_len {
            match oracle_last_dvector(ctx.seed_matrix(), w, config.oracle_config()) {
                Ok(v) => (Some(v), OracleStatus::Complete),
                Err(Error::Budget { completed, .. }) => (None, OracleStatus::BudgetExhausted { completed }),
                Err(e) => return Err(e),
            }
        } else {
            (None, OracleStatus::Skipped)
        };
        let values: Vec<&RootVector> = [&psi, &tropical, &oracle].into_iter().flatten().collect();
        let agree = values.windows(2).all(|p| p[0] == p[1]);
        let monitor = ctx.inequality_monitor(w)?;
        let z = word_to_z(ctx, w).ok();
        let round_trip = z.as_ref().is_some_and(|z| z_to_word(ctx, z).ok().as_ref() == Some(w));
        Ok(VerifyLine {
            word: w.clone(),
            case_label: d.case_label,
            psi,
            tropical,
            oracle,
            oracle_status,
            monitor_checks: monitor.checks.len(),
            monitor_violations: monitor.violations().count(),
            z,
            round_trip,
            agree,
            error: None,
        })
    };
    run().unwrap_or_else(|e| VerifyLine {
        word: w.clone(),
        case_label: CaseLabel(0),
        psi: None,
        tropical: None,
        oracle: None,
        oracle_status: OracleStatus::Skipped,
        monitor_checks: 0,
        monitor_violations: 0,
        z: None,
        round_trip: false,
        agree: false,
        error: Some(e.to_string()),
    })
}

/// Runs the sweep; lines come back in word order.
pub fn run_verify(config: &VerifierConfig) -> Result<(VerifySummary, Vec<VerifyLine>)> {
    config.validate()?;
    let (ctx, gate) = context(config.orientation, config.budget)?;
    let words: Vec<Word> = Word::all_up_to(3, config.max_len).into_iter().filter(|w| !w.is_empty()).collect();
    let lines = ordered_map(&words, Execution::with_workers(config.workers), |w| verify_word(&ctx, config, w))?;
    let summary = VerifySummary {
        orientation: ctx.mode(),
        gate,
        words: lines.len(),
        oracle_complete: lines.iter().filter(|l| l.oracle_status == OracleStatus::Complete).count(),
        oracle_exhausted: lines.iter().filter(|l| matches!(l.oracle_status, OracleStatus::BudgetExhausted { .. })).count(),
        disagreements: lines.iter().filter(|l| !l.agree).count(),
        monitor_checks: lines.iter().map(|l| l.monitor_checks).sum(),
        monitor_violations: lines.iter().map(|l| l.monitor_violations).sum(),
        round_trip_failures: lines.iter().filter(|l| !l.round_trip).count(),
        errors: lines.iter().filter(|l| l.error.is_some()).count(),
    };
    Ok((summary, lines))
}

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass = 0,
    Disagreement = 1,
    Usage = 2,
}

fn status_of(e: &Error) -> Status {
    match e {
        Error::Invariant(_) | Error::RoundTrip(_) | Error::InexactDivision(_) | Error::DecompositionMismatch { .. } => Status::Disagreement,
        _ => Status::Usage,
    }
}

fn show_root(r: &RootVector) -> String {
    r.to_string()
}

fn tsv_cell<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

struct Output {
    sink: Box<dyn Write>,
    format: Format,
}

impl Output {
    fn open(global: &GlobalArgs) -> Result<Self> {
        let sink: Box<dyn Write> = match &global.out {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(BufWriter::new(io::stdout())),
        };
        Ok(Output { sink, format: global.format })
    }

    fn json<T: Serialize>(&mut self, v: &T) -> Result<()> {
        let line = serde_json::to_string(v).map_err(|e| Error::Io(e.to_string()))?;
        writeln!(self.sink, "{line}")?;
        Ok(())
    }

    /// Text and TSV share the tab-separated layout; JSON gets the object.
    fn record<T: Serialize>(&mut self, fields: &[String], v: &T) -> Result<()> {
        match self.format {
            Format::Json => self.json(v),
            Format::Text | Format::Tsv => {
                writeln!(self.sink, "{}", fields.join("\t"))?;
                Ok(())
            }
        }
    }

    fn finish(mut self) -> Result<()> {
        self.sink.flush()?;
        Ok(())
    }
}

fn curve_spec(target: &CurveTarget, ctx: &PsiContext) -> Result<(CurveSpec, Word)> {
    match (&target.z, &target.word) {
        (Some(z), _) => {
            let z = CurveSpec::new(z[0], z[1], z[2])?;
            Ok((z, z_to_word(ctx, &z)?))
        }
        (None, Some(w)) => Ok((word_to_z(ctx, w)?, w.clone())),
        (None, None) => Err(Error::Config("give --z A B C or --word W".into())),
    }
}

#[derive(Serialize)]
struct CurveRecord {
    z: CurveSpec,
    word: Word,
    eta_word: Word,
    root: RootVector,
    #[serde(skip_serializing_if = "Option::is_none")]
    svg: Option<String>,
}

fn draw(target: &CurveTarget, ctx: &PsiContext, segments: usize) -> Result<(Polyline, String)> {
    match (&target.z, &target.word) {
        (None, Some(w)) => Ok((triangle_walk(w)?, format!("word {w}"))),
        _ => {
            let (z, _) = curve_spec(target, ctx)?;
            Ok((eta_polyline(ctx, &z, segments)?, format!("curve z = ({}, {}, {})", z.a, z.b, z.c)))
        }
    }
}

fn run_suite(which: SuiteName, n: Option<usize>, c: u32) -> Result<SuiteReport> {
    match which {
        SuiteName::A => verify_type_a(n.unwrap_or(8)),
        SuiteName::D => verify_type_d(n.unwrap_or(8)),
        SuiteName::E8 => verify_e8(),
        SuiteName::Rank2 => verify_rank2(c, n.unwrap_or(20)),
        SuiteName::A2affine => verify_a2_affine(n.unwrap_or(10)),
    }
}

fn execute(cli: Cli) -> Result<Status> {
    let g = cli.global.clone();
    if g.budget < MIN_BUDGET {
        return Err(Error::Config(format!("budget must be at least {MIN_BUDGET}")));
    }
    let oracle = OracleConfig { method: g.oracle, budget: Budget::new(g.budget) };
    match cli.command {
        Command::Psi { word } => {
            let (ctx, _) = context(g.orientation, g.budget)?;
            let root = ctx.psi(&word)?;
            let refl = ctx.psi_reflection_word(&word)?;
            let mut out = Output::open(&g)?;
            #[derive(Serialize)]
            struct R<'a> {
                word: &'a Word,
                root: &'a RootVector,
                reflection_word: &'a Word,
            }
            out.record(&[show_root(&root), refl.to_string()], &R { word: &word, root: &root, reflection_word: &refl })?;
            out.finish()?;
        }
        Command::Dvec { word, engine } => {
            let (ctx, _) = context(g.orientation, g.budget)?;
            let root = match engine {
                Engine::Psi => ctx.psi(&word)?,
                Engine::Tropical => ctx.tropical_last(&word)?,
                Engine::Oracle => oracle_last_dvector(ctx.seed_matrix(), &word, oracle)?,
            };
            let mut out = Output::open(&g)?;
            #[derive(Serialize)]
            struct R<'a> {
                word: &'a Word,
                engine: Engine,
                dvector: &'a RootVector,
            }
            out.record(&[show_root(&root)], &R { word: &word, engine, dvector: &root })?;
            out.finish()?;
        }
        Command::WordOfSegment { b, c } => {
            let w = segment_word(b, c)?;
            let mut out = Output::open(&g)?;
            #[derive(Serialize)]
            struct R<'a> {
                b: i64,
                c: i64,
                word: &'a Word,
            }
            out.record(&[w.to_string()], &R { b, c, word: &w })?;
            out.finish()?;
        }
        Command::Curve { target, svg, segments } => {
            let (ctx, _) = context(g.orientation, g.budget)?;
            let (z, word) = curve_spec(&target, &ctx)?;
            let eta = eta_word(&ctx, &z)?;
            let root = ctx.psi(&word)?;
            let svg_path = match &svg {
                Some(path) => {
                    let poly = eta_polyline(&ctx, &z, segments)?;
                    render_svg(&poly, &format!("curve z = ({}, {}, {})", z.a, z.b, z.c), path)?;
                    Some(path.display().to_string())
                }
                None => None,
            };
            let mut out = Output::open(&g)?;
            out.record(
                &[z.to_string(), word.to_string(), eta.to_string(), show_root(&root)],
                &CurveRecord { z, word, eta_word: eta, root, svg: svg_path },
            )?;
            out.finish()?;
        }
        Command::Svg { target, segments } => {
            let path = g.out.clone().ok_or_else(|| Error::Config("svg needs --out PATH".into()))?;
            let (ctx, _) = context(g.orientation, g.budget)?;
            let (poly, title) = draw(&target, &ctx, segments)?;
            render_svg(&poly, &title, &path)?;
            eprintln!("wrote {}", path.display());
        }
        Command::Verify { max_len, oracle_max_len, engines } => {
            let config = VerifierConfig {
                orientation: g.orientation,
                budget: g.budget,
                oracle: g.oracle,
                max_len,
                oracle_max_len,
                workers: g.workers,
                engines,
            };
            let (summary, lines) = run_verify(&config)?;
            let mut out = Output::open(&g)?;
            if out.format != Format::Json {
                writeln!(out.sink, "word\tcase\tpsi\ttropical\toracle\toracle_status\tmonitor_violations\tz\tround_trip\tagree")?;
            }
            for l in &lines {
                let status = match &l.oracle_status {
                    OracleStatus::Skipped => "skipped".to_string(),
                    OracleStatus::Complete => "complete".to_string(),
                    OracleStatus::BudgetExhausted { completed } => format!("budget@{completed}"),
                };
                out.record(
                    &[
                        l.word.to_string(),
                        l.case_label.0.to_string(),
                        tsv_cell(l.psi.as_ref()),
                        tsv_cell(l.tropical.as_ref()),
                        tsv_cell(l.oracle.as_ref()),
                        status,
                        l.monitor_violations.to_string(),
                        tsv_cell(l.z.as_ref()),
                        l.round_trip.to_string(),
                        l.agree.to_string(),
                    ],
                    l,
                )?;
            }
            out.finish()?;
            eprintln!("{}", serde_json::to_string(&summary).map_err(|e| Error::Io(e.to_string()))?);
            return Ok(if summary.passed() { Status::Pass } else { Status::Disagreement });
        }
        Command::Suite { which, n, c } => {
            let report = run_suite(which, n, c)?;
            let mut out = Output::open(&g)?;
            match out.format {
                Format::Json => out.json(&report)?,
                Format::Text | Format::Tsv => {
                    writeln!(out.sink, "label\tword\texpected\tactual\tpass")?;
                    for ch in &report.checks {
                        writeln!(
                            out.sink,
                            "{}\t{}\t{}\t{}\t{}",
                            ch.label,
                            ch.word,
                            tsv_cell(ch.expected.as_ref()),
                            tsv_cell(ch.actual.as_ref()),
                            ch.pass
                        )?;
                    }
                }
            }
            out.finish()?;
            eprintln!(
                "{}: {} ({} checks, {} distinct roots)",
                report.suite,
                if report.passed { "pass" } else { "FAIL" },
                report.checks.len(),
                report.distinct_roots
            );
            return Ok(if report.passed { Status::Pass } else { Status::Disagreement });
        }
        Command::Decompose { word } => {
            let (ctx, _) = context(g.orientation, g.budget)?;
            let d = ctx.decompose(&word)?;
            let mut out = Output::open(&g)?;
            out.record(
                &[d.prefix.to_string(), d.tail.to_string(), d.rho.to_string(), d.delta.to_string(), d.case_label.0.to_string()],
                &d,
            )?;
            out.finish()?;
        }
    }
    Ok(Status::Pass)
}

/// Parses arguments and runs; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { Status::Usage as i32 } else { Status::Pass as i32 };
        }
    };
    match execute(cli) {
        Ok(s) => s as i32,
        Err(e) => {
            eprintln!("error: {e}");
            status_of(&e) as i32
        }
    }
}
