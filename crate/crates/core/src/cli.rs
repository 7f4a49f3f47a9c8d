//! Command-line front end.
//!
//! ```text
//! kirwan compute   (--example NAME | --rep EXPR --blocks n1,n2 | --input PATH) [--format text|structured] [--cap N] [--scales s1,s2]
//! kirwan classify  SOURCE --point "label=p/q,..."
//! kirwan nu        SOURCE --point "label=p/q,..." --lambda "c1,c2,..."
//! kirwan check     [SOURCE] [--seed N] [--instances N] [--supports N] [--lambdas N]
//! kirwan list-examples
//! ```
//!
//! Exit status is 0 on success, 1 on bad input, 2 when an internal invariant
//! fails (including a failed `check`).

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::builtin;
use crate::geometry::{parse_rational, GeometryError, Rational};
use crate::instability::{beta_of_point, is_k_stable_torus, moment, mu, nu_squared, InstabilityError, OnePS, PointClass, RationalPoint};
use crate::rep::{load_weight_system, parse_rep, weights_of, BlockStructure, RepError, WeightDocument, WeightSystem};
use crate::selfcheck;
use crate::strata::{stratify_with_cap, StrataError, StratificationResult, Stratum, DEFAULT_CAP};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "kirwan", version, about = "Instability stratifications of representations of products of GL(n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the stratification table.
    Compute {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        options: JobOptions,
    },
    /// Print β_x for a point, or "semistable".
    Classify {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        options: JobOptions,
        #[arg(long)]
        point: String,
    },
    /// Print the signed ν² of a point along a one-parameter subgroup.
    Nu {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        options: JobOptions,
        #[arg(long)]
        point: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Run the randomized oracle-equivalence and duality suites.
    Check {
        #[command(flatten)]
        source: OptionalSourceArgs,
        #[command(flatten)]
        blocks: BlocksArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        instances: usize,
        #[arg(long, default_value_t = 100)]
        supports: usize,
        #[arg(long, default_value_t = 10)]
        lambdas: usize,
    },
    /// List built-in weight systems.
    ListExamples,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct SourceArgs {
    #[arg(long)]
    example: Option<String>,
    #[arg(long, requires = "blocks")]
    rep: Option<String>,
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = false, multiple = false)]
struct OptionalSourceArgs {
    #[arg(long)]
    example: Option<String>,
    #[arg(long, requires = "blocks")]
    rep: Option<String>,
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BlocksArg {
    #[arg(long)]
    blocks: Option<String>,
}

#[derive(Debug, Args)]
struct JobOptions {
    /// Comma-separated GL block sizes for `--rep`.
    #[arg(long)]
    blocks: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    cap: Option<usize>,
    /// Per-block metric multipliers, GL blocks then torus coordinates.
    #[arg(long)]
    scales: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Example(String),
    Rep { expr: String, blocks: Vec<usize> },
    Input(PathBuf),
}

/// One fully resolved job: exactly one source plus overrides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobConfig {
    pub source: Source,
    pub scales: Option<Vec<Rational>>,
    pub cap: Option<usize>,
    pub format: Format,
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Internal(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl From<RepError> for CliError {
    fn from(e: RepError) -> Self {
        match e {
            RepError::Geometry(g) => g.into(),
            e => CliError::Input(e.to_string()),
        }
    }
}

impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> Self {
        match e {
            GeometryError::Internal(_) => CliError::Internal(e.to_string()),
            e => CliError::Input(e.to_string()),
        }
    }
}

impl From<StrataError> for CliError {
    fn from(e: StrataError) -> Self {
        match e {
            StrataError::Rep(r) => r.into(),
            StrataError::Geometry(g) => g.into(),
            StrataError::CapExceeded { .. } => CliError::Input(e.to_string()),
            e => CliError::Internal(e.to_string()),
        }
    }
}

impl From<InstabilityError> for CliError {
    fn from(e: InstabilityError) -> Self {
        match e {
            InstabilityError::Rep(r) => r.into(),
            InstabilityError::Geometry(g) => g.into(),
            e => CliError::Input(e.to_string()),
        }
    }
}

fn parse_list<T>(flag: &str, text: &str, item: impl Fn(&str) -> Option<T>) -> Result<Vec<T>, CliError> {
    text.split(',')
        .enumerate()
        .map(|(k, s)| {
            item(s.trim()).ok_or_else(|| CliError::Input(format!("--{flag}: entry {} ({:?}) is malformed", k + 1, s.trim())))
        })
        .collect()
}

impl JobConfig {
    fn from_args(
        example: Option<String>,
        rep: Option<String>,
        input: Option<PathBuf>,
        options: &JobOptions,
    ) -> Result<Self, CliError> {
        let source = match (example, rep, input) {
            (Some(name), None, None) => Source::Example(name),
            (None, Some(expr), None) => {
                let text = options.blocks.as_deref().unwrap_or_default();
                let blocks = parse_list("blocks", text, |s| s.parse().ok())?;
                Source::Rep { expr, blocks }
            }
            (None, None, Some(path)) => Source::Input(path),
            _ => return Err(CliError::Input("exactly one of --example, --rep, --input is required".into())),
        };
        if options.blocks.is_some() && !matches!(source, Source::Rep { .. }) {
            return Err(CliError::Input("--blocks only applies to --rep".into()));
        }
        let scales = options
            .scales
            .as_deref()
            .map(|s| parse_list("scales", s, |t| parse_rational(t).ok()))
            .transpose()?;
        Ok(JobConfig {
            source,
            scales,
            cap: options.cap,
            format: options.format,
        })
    }

    pub fn load(&self) -> Result<WeightSystem, CliError> {
        let ws = match &self.source {
            Source::Example(name) => builtin::load(name)?,
            Source::Rep { expr, blocks } => weights_of(&parse_rep(expr)?, &BlockStructure::gl(blocks)?)?,
            Source::Input(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                load_document_text(&text).map_err(|e| match e {
                    CliError::Input(m) => CliError::Input(format!("{}: {m}", path.display())),
                    e => e,
                })?
            }
        };
        match &self.scales {
            Some(s) => Ok(ws.with_block_scales(s)?),
            None => Ok(ws),
        }
    }

    pub fn cap(&self) -> usize {
        self.cap.unwrap_or(DEFAULT_CAP)
    }
}

/// Accepts a weight document, or a structured report whose `system` field
/// is one.
pub fn load_document_text(text: &str) -> Result<WeightSystem, CliError> {
    let value: Value = serde_json::from_str(text).map_err(|e| CliError::Input(e.to_string()))?;
    let doc_value = match value.get("system") {
        Some(system) => system.clone(),
        None => value,
    };
    let doc: WeightDocument = serde_json::from_value(doc_value).map_err(|e| CliError::Input(e.to_string()))?;
    Ok(load_weight_system(&doc)?)
}

/// Runs `argv` (including the program name), writing to stdout/stderr.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    execute(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Same as [`run`] with explicit sinks.
pub fn execute<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let (kind, msg) = match &e {
                CliError::Input(m) => ("error", m),
                CliError::Internal(m) => ("internal error", m),
            };
            let _ = writeln!(err, "{kind}: {msg}");
            e.code()
        }
    }
}

fn io(e: std::io::Error) -> CliError {
    CliError::Internal(format!("write failed: {e}"))
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Compute { source, options } => {
            let job = JobConfig::from_args(source.example, source.rep, source.input, &options)?;
            let ws = job.load()?;
            let result = stratify_with_cap(&ws, job.cap())?;
            match job.format {
                Format::Text => out.write_all(render_table(&result).as_bytes()).map_err(io)?,
                Format::Structured => {
                    let text = serde_json::to_string_pretty(&report(&result)).expect("serializable");
                    writeln!(out, "{text}").map_err(io)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Classify { source, options, point } => {
            let job = JobConfig::from_args(source.example, source.rep, source.input, &options)?;
            let ws = job.load()?;
            let x = RationalPoint::parse(&point)?;
            let class = beta_of_point(&x, &ws)?;
            let stable = is_k_stable_torus(&x, &ws)?;
            let m = moment(&x, &ws)?;
            match job.format {
                Format::Text => match &class {
                    PointClass::Semistable => {
                        writeln!(out, "semistable").map_err(io)?;
                        writeln!(out, "torus-stable: {}", yes_no(stable)).map_err(io)?;
                    }
                    PointClass::Unstable(d) => {
                        writeln!(out, "beta = {}", blocked(&ws, d.beta.coords())).map_err(io)?;
                        writeln!(out, "norm_squared = {}", d.norm_squared).map_err(io)?;
                        writeln!(out, "torus beta = {}", blocked(&ws, d.torus_beta.coords())).map_err(io)?;
                        writeln!(out, "lambda = {}", ints(d.lambda.direction())).map_err(io)?;
                    }
                },
                Format::Structured => {
                    let v = match &class {
                        PointClass::Semistable => json!({
                            "semistable": true,
                            "torus_stable": stable,
                            "moment": strings(m.coords()),
                        }),
                        PointClass::Unstable(d) => json!({
                            "semistable": false,
                            "beta": strings(d.beta.coords()),
                            "norm_squared": d.norm_squared.to_string(),
                            "torus_beta": strings(d.torus_beta.coords()),
                            "lambda": d.lambda.direction().iter().map(ToString::to_string).collect::<Vec<_>>(),
                            "moment": strings(m.coords()),
                        }),
                    };
                    writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("serializable")).map_err(io)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Nu {
            source,
            options,
            point,
            lambda,
        } => {
            let job = JobConfig::from_args(source.example, source.rep, source.input, &options)?;
            let ws = job.load()?;
            let x = RationalPoint::parse(&point)?;
            let l = OnePS::parse(&lambda, &ws)?;
            let m = mu(&x, &l, &ws)?;
            let n = nu_squared(&x, &l, &ws)?;
            match job.format {
                Format::Text => {
                    writeln!(out, "mu = {m}").map_err(io)?;
                    writeln!(out, "nu_squared = {n}").map_err(io)?;
                }
                Format::Structured => {
                    let v = json!({"mu": m.to_string(), "nu_squared": n.to_string()});
                    writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("serializable")).map_err(io)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Check {
            source,
            blocks,
            seed,
            instances,
            supports,
            lambdas,
        } => {
            let ws = match (source.example, source.rep, source.input) {
                (None, None, None) => builtin::load("sym2k3-x-k2")?,
                (e, r, i) => JobConfig::from_args(
                    e,
                    r,
                    i,
                    &JobOptions {
                        blocks: blocks.blocks,
                        format: Format::Text,
                        cap: None,
                        scales: None,
                    },
                )?
                .load()?,
            };
            let reports = [
                selfcheck::oracle_equivalence(seed, instances),
                selfcheck::kempf_duality(&ws, seed, supports, lambdas),
            ];
            let mut failed = false;
            for r in &reports {
                writeln!(
                    out,
                    "{}: {} passed, {} failed",
                    r.name,
                    r.checks - r.failures.len(),
                    r.failures.len()
                )
                .map_err(io)?;
                for f in r.failures.iter().take(10) {
                    writeln!(out, "  {f}").map_err(io)?;
                }
                failed |= !r.passed();
            }
            Ok(if failed { EXIT_INTERNAL } else { EXIT_OK })
        }
        Command::ListExamples => {
            for name in builtin::NAMES {
                writeln!(out, "{name}").map_err(io)?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn ints(v: &[BigInt]) -> String {
    format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

/// `(a,b,c;d,e)` with `;` between blocks; extra torus coordinates form one
/// final block.
fn blocked(ws: &WeightSystem, v: &[Rational]) -> String {
    let mut parts: Vec<String> = ws
        .blocks()
        .block_ranges()
        .into_iter()
        .map(|r| strings(&v[r]).join(","))
        .collect();
    let gl = ws.blocks().gl_dim();
    if v.len() > gl {
        parts.push(strings(&v[gl..]).join(","));
    }
    format!("({})", parts.join(";"))
}

fn labels(ws: &WeightSystem, idx: &std::collections::BTreeSet<usize>) -> Vec<String> {
    idx.iter().map(|&i| ws.label(i).to_string()).collect()
}

fn levels_text(s: &Stratum) -> String {
    let d = &s.decomposition;
    let body: Vec<String> = d
        .levels
        .iter()
        .zip(&d.multiplicities)
        .enumerate()
        .map(|(k, (l, m))| {
            let mark = if k + 1 == d.critical_index { "*" } else { "" };
            format!("{l}{mark}^{m}")
        })
        .collect();
    format!("[{}]/{}", body.join(" "), d.m0)
}

fn levi_text(s: &Stratum) -> String {
    s.levi_partition
        .iter()
        .map(|p| p.iter().map(ToString::to_string).collect::<Vec<_>>().join("+"))
        .collect::<Vec<_>>()
        .join(";")
}

fn row(ws: &WeightSystem, s: &Stratum) -> Vec<String> {
    let flag = match s.nonempty {
        Some(true) => "yes",
        Some(false) => "EMPTY",
        None => "?",
    };
    let or_dash = |v: Vec<String>| if v.is_empty() { "-".to_string() } else { v.join(" ") };
    vec![
        blocked(ws, s.beta.coords()),
        s.norm_squared.to_string(),
        levels_text(s),
        or_dash(labels(ws, &s.z_indices)),
        or_dash(labels(ws, &s.w_indices)),
        levi_text(s),
        flag.to_string(),
    ]
}

fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (k, (c, w)) in cells.iter().zip(&widths).enumerate() {
            if k > 0 {
                s.push_str("  ");
            }
            s.push_str(c);
            if k + 1 < cells.len() {
                s.extend(std::iter::repeat_n(' ', w - c.chars().count()));
            }
        }
        s.push('\n');
        s
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

const HEADER: [&str; 7] = ["beta", "|beta|^2", "levels", "Z", "W", "levi", "nonempty"];

/// Plain-text report: nonempty strata, then empty candidates.
pub fn render_table(result: &StratificationResult) -> String {
    let ws = &result.system;
    let mut out = format!("unstable strata: {}\n", result.strata.len());
    let rows: Vec<Vec<String>> = result.strata.iter().map(|s| row(ws, s)).collect();
    out.push_str(&table(&HEADER, &rows));
    if !result.empty_candidates.is_empty() {
        out.push_str(&format!("\nempty candidates: {}\n", result.empty_candidates.len()));
        let rows: Vec<Vec<String>> = result.empty_candidates.iter().map(|s| row(ws, s)).collect();
        out.push_str(&table(&HEADER, &rows));
    }
    out.push_str(&format!("\nsemistable locus nonempty: {}\n", yes_no(result.semistable_nonempty)));
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelsRecord {
    pub m0: String,
    pub levels: Vec<String>,
    pub multiplicities: Vec<usize>,
    pub critical_index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumRecord {
    pub beta: Vec<String>,
    pub norm_squared: String,
    pub levels: LevelsRecord,
    pub z: Vec<String>,
    pub w: Vec<String>,
    pub y: Vec<String>,
    pub lambda_beta: Vec<String>,
    pub levi_partition: Vec<Vec<usize>>,
    pub dim_unipotent: usize,
    pub dim_stratum_projective: Option<usize>,
    pub nonempty: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub system: WeightDocument,
    pub strata: Vec<StratumRecord>,
    pub empty_candidates: Vec<StratumRecord>,
    pub semistable_nonempty: bool,
}

pub fn stratum_record(ws: &WeightSystem, s: &Stratum) -> StratumRecord {
    let d = &s.decomposition;
    StratumRecord {
        beta: strings(s.beta.coords()),
        norm_squared: s.norm_squared.to_string(),
        levels: LevelsRecord {
            m0: d.m0.to_string(),
            levels: d.levels.iter().map(ToString::to_string).collect(),
            multiplicities: d.multiplicities.clone(),
            critical_index: d.critical_index,
        },
        z: labels(ws, &s.z_indices),
        w: labels(ws, &s.w_indices),
        y: labels(ws, &s.y_indices),
        lambda_beta: s.lambda_beta.iter().map(ToString::to_string).collect(),
        levi_partition: s.levi_partition.clone(),
        dim_unipotent: s.dim_unipotent,
        dim_stratum_projective: s.dim_stratum_projective,
        nonempty: s.nonempty,
    }
}

pub fn report(result: &StratificationResult) -> Report {
    let ws = &result.system;
    Report {
        system: ws.to_document(),
        strata: result.strata.iter().map(|s| stratum_record(ws, s)).collect(),
        empty_candidates: result.empty_candidates.iter().map(|s| stratum_record(ws, s)).collect(),
        semistable_nonempty: result.semistable_nonempty,
    }
}
