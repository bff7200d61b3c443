//! The `pcm` command-line front end.
//!
//! Exit codes: 0 success (or an efficient vector), 1 a negative answer
//! (inefficient vector, failed self-check, matrix not column perturbed),
//! 2 parse or usage errors, 3 enumeration cap exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::cycle::HamiltonianCycle;
use crate::decompose::{convexity_report, decompose, enumerate_cycles, membership, ConvexityReport, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::generate::{generate, random_reciprocal, random_vector, rng, GeneratorKind};
use crate::graph::{build_digraph, is_efficient, EfficiencyCertificate};
use crate::io::{
    decomposition_to_json, matrix_to_json, matrix_to_text, parse_matrix, parse_vector, vector_to_json,
    CertificateJson, MatrixJson, TransformJson,
};
use crate::matrix::{ReciprocalMatrix, WeightVector};
use crate::oracle::{dominance_search, exhaustive_hamiltonian};
use crate::perturbed::{classify_perturbation, detect_column_perturbed, efficient_set_union};
use crate::rank::rank_all;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::reversals::{count_reversals, count_reversals_along, min_reversal_vector};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub enumeration_cap: usize,
    pub spectral_tolerance: Rational,
    pub sample_budget: usize,
    pub output: OutputFormat,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            enumeration_cap: DEFAULT_CAP,
            spectral_tolerance: Rational::new(1.into(), num_bigint::BigInt::from(10u32).pow(12)),
            sample_budget: 1000,
            output: OutputFormat::Text,
            seed: 0,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.enumeration_cap < 3 {
            return Err(Error::Domain("the enumeration cap must be at least 3".into()));
        }
        if self.spectral_tolerance <= Rational::from_integer(0.into()) {
            return Err(Error::Domain("the tolerance must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Parser, Debug)]
#[command(name = "pcm", version, about = "Efficiency analysis of reciprocal pairwise-comparison matrices")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest dimension for which cycles are enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Seed for generators and randomized searches.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Tolerance for spectral vectors, as a rational literal.
    #[arg(long, global = true, value_parser = parse_tolerance)]
    tolerance: Option<Rational>,
    /// Sample budget for convexity witnesses and the self-check.
    #[arg(long, global = true, default_value_t = 1000)]
    samples: usize,
}

fn parse_tolerance(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a vector is efficient and print the certificate.
    Check { matrix: PathBuf, vector: PathBuf },
    /// Decompose the efficient set into cones.
    Decompose {
        matrix: PathBuf,
        /// Print counts only.
        #[arg(long)]
        summary: bool,
    },
    /// List order reversals of a vector.
    Reversals {
        matrix: PathBuf,
        /// Required unless --construct is given.
        vector: Option<PathBuf>,
        /// Restrict the sub-count to the pairs of this cycle, e.g. 1,4,3,2.
        #[arg(long, value_delimiter = ',')]
        cycle: Option<Vec<usize>>,
        /// Build the vector with fewest reversals along --cycle instead of reading one.
        #[arg(long, requires = "cycle")]
        construct: bool,
    },
    /// Column perturbed consistent matrices.
    Perturbed {
        #[command(subcommand)]
        action: PerturbedAction,
    },
    /// Candidate ranking vectors with efficiency certificates.
    Rank { matrix: PathBuf },
    /// Write a random matrix of the given kind.
    Generate {
        /// consistent, simple, double, column or random.
        kind: String,
        /// Dimension.
        n: usize,
        /// Write to this file instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Reproduce the reference examples and cross-check against brute force.
    SelfCheck,
}

#[derive(Subcommand, Debug)]
enum PerturbedAction {
    /// Report consistent, simple, double-in-column, column or not-column-perturbed.
    Classify { matrix: PathBuf },
    /// Print the canonical matrix and the transform that produces it.
    Canonicalize { matrix: PathBuf },
    /// Print the inequality systems whose union is the efficient set.
    EffSet { matrix: PathBuf },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let defaults = RunConfig::default();
    let config = RunConfig {
        enumeration_cap: cli.global.cap,
        spectral_tolerance: cli.global.tolerance.unwrap_or(defaults.spectral_tolerance),
        sample_budget: cli.global.samples,
        output: if cli.global.json { OutputFormat::Json } else { OutputFormat::Text },
        seed: cli.global.seed,
    };
    let result = config.validate().and_then(|_| dispatch(&cli.command, &config, out));
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::CapExceeded { .. } => EXIT_CAP,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())))
}

fn load_matrix(path: &Path) -> Result<ReciprocalMatrix> {
    parse_matrix(&read(path)?).map_err(|e| in_file(path, e))
}

fn load_vector(path: &Path) -> Result<WeightVector> {
    parse_vector(&read(path)?).map_err(|e| in_file(path, e))
}

fn in_file(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse { line, message } => Error::Parse {
            line,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    }
}

fn emit(out: &mut dyn Write, text: impl AsRef<str>) -> Result<()> {
    writeln!(out, "{}", text.as_ref()).map_err(|e| Error::Domain(format!("write failed: {e}")))
}

fn emit_json(out: &mut dyn Write, v: &Value) -> Result<()> {
    emit(out, serde_json::to_string_pretty(v).expect("serializable"))
}

fn dispatch(cmd: &Command, cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Check { matrix, vector } => cmd_check(&load_matrix(matrix)?, &load_vector(vector)?, cfg, out),
        Command::Decompose { matrix, summary } => cmd_decompose(&load_matrix(matrix)?, *summary, cfg, out),
        Command::Reversals {
            matrix,
            vector,
            cycle,
            construct,
        } => {
            let a = load_matrix(matrix)?;
            let cycle = cycle.as_deref().map(HamiltonianCycle::from_one_based).transpose()?;
            if *construct {
                return cmd_min_reversal(&a, cycle.as_ref().expect("required by clap"), cfg, out);
            }
            let path = vector
                .as_ref()
                .ok_or_else(|| Error::Domain("a vector file is required without --construct".into()))?;
            cmd_reversals(&a, &load_vector(path)?, cycle.as_ref(), cfg, out)
        }
        Command::Perturbed { action } => match action {
            PerturbedAction::Classify { matrix } => cmd_classify(&load_matrix(matrix)?, cfg, out),
            PerturbedAction::Canonicalize { matrix } => cmd_canonicalize(&load_matrix(matrix)?, cfg, out),
            PerturbedAction::EffSet { matrix } => cmd_eff_set(&load_matrix(matrix)?, cfg, out),
        },
        Command::Rank { matrix } => cmd_rank(&load_matrix(matrix)?, cfg, out),
        Command::Generate { kind, n, output } => cmd_generate(kind.parse()?, *n, output.as_deref(), cfg, out),
        Command::SelfCheck => cmd_self_check(cfg, out),
    }
}

fn certificate_text(c: &EfficiencyCertificate) -> String {
    match c {
        EfficiencyCertificate::Efficient { cycle } => format!("efficient\ncycle: {cycle}"),
        EfficiencyCertificate::Inefficient { cut } => {
            let cut: Vec<String> = cut.iter().map(|v| (v + 1).to_string()).collect();
            format!("inefficient\ncut: {{{}}} (no edge enters it from outside)", cut.join(", "))
        }
    }
}

pub fn cmd_check(a: &ReciprocalMatrix, w: &WeightVector, cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let cert = is_efficient(a, w)?;
    match cfg.output {
        OutputFormat::Json => emit_json(out, &serde_json::to_value(CertificateJson::from(&cert)).expect("serializable"))?,
        OutputFormat::Text => emit(out, certificate_text(&cert))?,
    }
    Ok(if cert.is_efficient() { EXIT_OK } else { EXIT_NEGATIVE })
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

pub fn cmd_decompose(a: &ReciprocalMatrix, summary: bool, cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let d = decompose(a, cfg.enumeration_cap)?;
    let n = a.dim();
    if summary {
        let pi_one = if d.is_consistent() {
            factorial(n - 1)
        } else {
            (d.cones.len() + d.unit_cycles.len()) as u128
        };
        let report = convexity_report(&d, cfg.sample_budget);
        let extremes: Vec<usize> = d.cones.iter().map(|c| c.extremes.len()).collect();
        match cfg.output {
            OutputFormat::Json => emit_json(
                out,
                &json!({
                    "n": n,
                    "consistent": d.is_consistent(),
                    "pi_1": pi_one,
                    "pi_below_1": d.cones.len(),
                    "extremes_per_cone": extremes,
                    "convexity": format!("{:?}", report.verdict()).to_lowercase(),
                    "convexity_reason": report.reason(),
                }),
            )?,
            OutputFormat::Text => {
                emit(out, format!("n = {n}"))?;
                emit(out, format!("cycles with product <= 1: {pi_one}"))?;
                emit(out, format!("cycles with product < 1: {}", d.cones.len()))?;
                if !extremes.is_empty() {
                    let e: Vec<String> = extremes.iter().map(|x| x.to_string()).collect();
                    emit(out, format!("extremes per cone: {}", e.join(" ")))?;
                }
                emit(
                    out,
                    format!("convexity: {:?} ({})", report.verdict(), report.reason()).to_lowercase(),
                )?;
            }
        }
        return Ok(EXIT_OK);
    }
    match cfg.output {
        OutputFormat::Json => emit(out, decomposition_to_json(&d))?,
        OutputFormat::Text => {
            if let Some(ray) = &d.ray {
                emit(out, format!("consistent: efficient set is the ray through {ray}"))?;
            }
            for c in &d.cones {
                emit(out, format!("cone {} product {}", c.cycle, format_rational(&c.product)))?;
                for e in &c.extremes {
                    emit(out, format!("  {e}"))?;
                }
            }
            if !d.unit_cycles.is_empty() {
                emit(out, format!("{} cycles with product 1", d.unit_cycles.len()))?;
            }
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_reversals(
    a: &ReciprocalMatrix,
    w: &WeightVector,
    cycle: Option<&HamiltonianCycle>,
    cfg: &RunConfig,
    out: &mut dyn Write,
) -> Result<i32> {
    let report = match cycle {
        Some(c) => count_reversals_along(a, w, c)?,
        None => count_reversals(a, w)?,
    };
    match cfg.output {
        OutputFormat::Json => {
            let pairs: Vec<Value> = report
                .pairs
                .iter()
                .map(|p| json!({"i": p.i + 1, "j": p.j + 1, "kind": p.kind.as_str()}))
                .collect();
            emit_json(
                out,
                &json!({"pairs": pairs, "count": report.count, "along_cycle": report.along_cycle}),
            )?;
        }
        OutputFormat::Text => {
            for p in &report.pairs {
                emit(out, format!("({}, {}) {}", p.i + 1, p.j + 1, p.kind.as_str()))?;
            }
            emit(out, format!("count: {}", report.count))?;
            if let Some(along) = report.along_cycle {
                emit(out, format!("along cycle: {along}"))?;
            }
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_min_reversal(a: &ReciprocalMatrix, c: &HamiltonianCycle, cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let (w, along) = min_reversal_vector(a, c)?;
    match cfg.output {
        OutputFormat::Json => emit_json(
            out,
            &json!({"cycle": c.one_based(), "vector": vector_to_json(&w), "along_cycle": along}),
        )?,
        OutputFormat::Text => {
            emit(out, format!("vector: {w}"))?;
            emit(out, format!("along cycle: {along}"))?;
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_classify(a: &ReciprocalMatrix, cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let class = classify_perturbation(a);
    let deletions: Vec<usize> = detect_column_perturbed(a)
        .map(|f| f.deletion_indices().iter().map(|p| p + 1).collect())
        .unwrap_or_default();
    match cfg.output {
        OutputFormat::Json => emit_json(out, &json!({"class": class.as_str(), "deletion_indices": deletions}))?,
        OutputFormat::Text => emit(out, class.as_str())?,
    }
    Ok(EXIT_OK)
}

fn not_perturbed(out: &mut dyn Write) -> Result<i32> {
    emit(out, "not column perturbed")?;
    Ok(EXIT_NEGATIVE)
}

pub fn cmd_canonicalize(a: &ReciprocalMatrix, cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let Some(f) = detect_column_perturbed(a) else {
        return not_perturbed(out);
    };
    match cfg.output {
        OutputFormat::Json => {
            let pairs: Vec<[usize; 2]> = f.index_set().iter().map(|&(i, j)| [i + 1, j + 1]).collect();
            emit_json(
                out,
                &json!({
                    "canonical": MatrixJson::from(f.canonical()),
                    "transform": TransformJson::from(f.transform()),
                    "index_set": pairs,
                    "deletion_indices": f.deletion_indices().iter().map(|p| p + 1).collect::<Vec<_>>(),
                }),
            )?;
        }
        OutputFormat::Text => {
            emit(out, matrix_to_text(f.canonical()).trim_end())?;
            let scale: Vec<String> = f.transform().scale().iter().map(format_rational).collect();
            let perm: Vec<String> = f.transform().perm().iter().map(|p| (p + 1).to_string()).collect();
            emit(out, format!("scale: {}", scale.join(" ")))?;
            emit(out, format!("perm: {}", perm.join(" ")))?;
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_eff_set(a: &ReciprocalMatrix, cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let Some(f) = detect_column_perturbed(a) else {
        return not_perturbed(out);
    };
    let sets = efficient_set_union(&f);
    match cfg.output {
        OutputFormat::Json => {
            let items: Vec<Value> = sets
                .iter()
                .map(|e| {
                    json!({
                        "i": e.i + 1,
                        "j": e.j + 1,
                        "upper": format_rational(&e.upper),
                        "lower": format_rational(&e.lower),
                        "constraints": e.describe(),
                    })
                })
                .collect();
            emit_json(out, &json!({"sets": items}))?;
        }
        OutputFormat::Text => {
            emit(out, "in canonical coordinates:")?;
            for e in &sets {
                emit(out, format!("eps_{}{}: {}", e.i + 1, e.j + 1, e.describe()))?;
            }
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_rank(a: &ReciprocalMatrix, cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let rows = rank_all(a, &cfg.spectral_tolerance);
    let mut json_rows = Vec::new();
    if cfg.output == OutputFormat::Text {
        emit(out, "method\tvector\tstatus\tcycle\tresidual")?;
    }
    for (method, result) in rows {
        match result {
            Ok(c) => {
                let status = if c.certificate.is_efficient() { "efficient" } else { "inefficient" };
                let residual = c.quality.map(|q| q.residual);
                match cfg.output {
                    OutputFormat::Json => json_rows.push(json!({
                        "method": method.to_string(),
                        "vector": vector_to_json(&c.vector),
                        "exact": c.exact,
                        "certificate": CertificateJson::from(&c.certificate),
                        "residual": residual,
                    })),
                    OutputFormat::Text => emit(
                        out,
                        format!(
                            "{method}\t{}\t{status}\t{}\t{}",
                            c.vector,
                            c.certificate.cycle().map(|c| c.to_string()).unwrap_or_else(|| "-".into()),
                            residual.map(|r| format!("{r:.3e}")).unwrap_or_else(|| "-".into()),
                        ),
                    )?,
                }
            }
            Err(e) => match cfg.output {
                OutputFormat::Json => json_rows.push(json!({"method": method.to_string(), "error": e.to_string()})),
                OutputFormat::Text => emit(out, format!("{method}\t-\terror: {e}\t-\t-"))?,
            },
        }
    }
    if cfg.output == OutputFormat::Json {
        emit_json(out, &Value::Array(json_rows))?;
    }
    Ok(EXIT_OK)
}

pub fn cmd_generate(
    kind: GeneratorKind,
    n: usize,
    output: Option<&Path>,
    cfg: &RunConfig,
    out: &mut dyn Write,
) -> Result<i32> {
    let a = generate(kind, n, cfg.seed)?;
    let text = match cfg.output {
        OutputFormat::Json => matrix_to_json(&a) + "\n",
        OutputFormat::Text => matrix_to_text(&a),
    };
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Domain(format!("cannot write {}: {e}", path.display())))?,
        None => write!(out, "{text}").map_err(|e| Error::Domain(format!("write failed: {e}")))?,
    }
    Ok(EXIT_OK)
}

struct Tally<'a> {
    out: &'a mut dyn Write,
    failures: usize,
}

impl Tally<'_> {
    fn check(&mut self, name: &str, ok: bool) -> Result<()> {
        if !ok {
            self.failures += 1;
        }
        emit(self.out, format!("{} {name}", if ok { "ok  " } else { "FAIL" }))
    }
}

pub fn cmd_self_check(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let mut t = Tally { out, failures: 0 };
    let cap = cfg.enumeration_cap;

    let single = fixtures::single_cone_4x4();
    let d = decompose(&single, cap)?;
    t.check(
        "4x4 single cone: one cycle below 1, product 1/16",
        d.cones.len() == 1 && d.cones[0].product == Rational::new(1.into(), 16.into()),
    )?;

    let five = fixtures::column_perturbed_5x5();
    let classes = enumerate_cycles(&five, cap)?;
    let union = detect_column_perturbed(&five).map(|f| efficient_set_union(&f).len());
    t.check(
        "5x5 column perturbed: 12 cycles below 1, 6 closed-form sets",
        classes.below_one.len() == 12 && classes.unit().count() == 0 && union == Some(6),
    )?;

    let double = fixtures::double_perturbed_4x4();
    let w = |v: &[i64]| WeightVector::new(v.iter().map(|&x| Rational::from_integer(x.into())).collect());
    let (u, v, s) = (w(&[1, 3, 3, 3])?, w(&[1, 1, 2, 1])?, w(&[2, 4, 5, 4])?);
    let dd = decompose(&double, cap)?;
    t.check(
        "4x4 double perturbed: u, v efficient, u + v not, non-convex",
        is_efficient(&double, &u)?.is_efficient()
            && is_efficient(&double, &v)?.is_efficient()
            && !is_efficient(&double, &s)?.is_efficient()
            && matches!(convexity_report(&dd, cfg.sample_budget), ConvexityReport::NonConvex { .. }),
    )?;

    let mut r = rng(cfg.seed);
    let (mut disagreements, mut false_dominators, mut efficient) = (0, 0, 0);
    for k in 0..cfg.sample_budget {
        let n = 3 + k % 4;
        let a = random_reciprocal(&mut r, n)?;
        let x = random_vector(&mut r, n, 9);
        let cert = is_efficient(&a, &x)?;
        let brute = exhaustive_hamiltonian(&build_digraph(&a, &x)?)?.is_some();
        let member = membership(&decompose(&a, cap)?, &x).is_some();
        if cert.is_efficient() != brute || brute != member {
            disagreements += 1;
        }
        if cert.is_efficient() {
            efficient += 1;
            if dominance_search(&a, &x, 4).is_some() {
                false_dominators += 1;
            }
        }
    }
    t.check(
        &format!(
            "{} random vectors: digraph, brute-force cycle search and cones agree",
            cfg.sample_budget
        ),
        disagreements == 0,
    )?;
    t.check(
        &format!("{efficient} efficient vectors: no dominator found"),
        false_dominators == 0,
    )?;

    let failures = t.failures;
    emit(t.out, format!("{failures} failure(s)"))?;
    Ok(if failures == 0 { EXIT_OK } else { EXIT_NEGATIVE })
}
