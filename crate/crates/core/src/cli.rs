//! Command-line front end. [`run`] is the whole program minus process exit,
//! so it can be driven from tests.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::Error;
use crate::klbgg::{kl_polynomial, KlCache};
use crate::kostant::{
    simple_character_bgg, takiff_verma_character, verma_character, weyl_character_formula,
    Character,
};
use crate::rootdata::{parse_weight, CartanType, RootSystem, RootVector, Weight};
use crate::selftest;
use crate::takiffmult::{levi_json, series_json, Engine};
use crate::weyl::{minimal_levi_reduction, parse_word, LeviDatum, WeylElement};

pub const DEFAULT_HEIGHT: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Human,
    Json,
}

/// Settings shared by all subcommands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub default_truncation_height: u32,
    pub cache_path: Option<PathBuf>,
    pub output_format: OutputFormat,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            default_truncation_height: DEFAULT_HEIGHT,
            cache_path: None,
            output_format: OutputFormat::Human,
        }
    }
}

/// What a run produced: exit code and the two output streams.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "takiff",
    version,
    about = "Composition multiplicities for Takiff Verma modules"
)]
struct Cli {
    /// Emit a single JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Persistent Kazhdan-Lusztig cache file.
    #[arg(long, global = true, env = "TAKIFF_CACHE")]
    cache: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Multiplicity [M(lambda, mu) : L(lambda2, mu2)].
    Mult(MultArgs),
    /// All nonzero multiplicities in M(lambda, mu) down to a height.
    Series(SeriesArgs),
    /// A truncated formal character.
    Char(CharArgs),
    /// A Kazhdan-Lusztig polynomial P_{x,w}.
    Kl(KlArgs),
    /// Kostant's partition function at a root-lattice point.
    Partition(PartitionArgs),
    /// Minimal Weyl element making the centraliser of mu standard.
    Reduce(ReduceArgs),
    /// Run the built-in acceptance checks.
    Selftest(SelftestArgs),
    /// Inspect or remove the KL cache file.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Args, Debug)]
struct TypeArg {
    /// Cartan type such as `A2`, `B2xA1` or `A1+T1`.
    #[arg(long = "type", short = 't')]
    cartan_type: String,
}

#[derive(Args, Debug)]
struct MultArgs {
    #[command(flatten)]
    ty: TypeArg,
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    #[arg(long, allow_hyphen_values = true)]
    mu: String,
    #[arg(long, allow_hyphen_values = true)]
    lambda2: String,
    #[arg(long, allow_hyphen_values = true)]
    mu2: String,
    /// Show the Weyl element, the Levi and the individual terms.
    #[arg(long)]
    explain: bool,
}

#[derive(Args, Debug)]
struct SeriesArgs {
    #[command(flatten)]
    ty: TypeArg,
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    #[arg(long, allow_hyphen_values = true)]
    mu: String,
    /// Maximal height of lambda - lambda2.
    #[arg(long, env = "TAKIFF_HEIGHT", default_value_t = DEFAULT_HEIGHT)]
    height: u32,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum CharKind {
    Verma,
    Takiff,
    Simple,
    Weyl,
}

#[derive(Args, Debug)]
struct CharArgs {
    #[command(flatten)]
    ty: TypeArg,
    #[arg(long, value_enum)]
    kind: CharKind,
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    #[arg(long, env = "TAKIFF_HEIGHT", default_value_t = DEFAULT_HEIGHT)]
    height: u32,
}

#[derive(Args, Debug)]
struct KlArgs {
    #[command(flatten)]
    ty: TypeArg,
    /// Word such as `21` or `e` (1-based letters).
    #[arg(long)]
    x: String,
    #[arg(long)]
    w: String,
}

#[derive(Args, Debug)]
struct PartitionArgs {
    #[command(flatten)]
    ty: TypeArg,
    /// Simple-root coordinates, e.g. `-1,-1`.
    #[arg(long, allow_hyphen_values = true)]
    chi: String,
    /// Use the two-coloured partition function instead.
    #[arg(long)]
    squared: bool,
}

#[derive(Args, Debug)]
struct ReduceArgs {
    #[command(flatten)]
    ty: TypeArg,
    #[arg(long, allow_hyphen_values = true)]
    mu: String,
}

#[derive(Args, Debug)]
struct SelftestArgs {
    /// Run only this criterion.
    #[arg(long)]
    only: Option<u8>,
}

#[derive(Subcommand, Debug)]
enum CacheAction {
    Stats,
    Clear,
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::UnknownFamily(_)
            | Error::RankOutOfBounds(_)
            | Error::Dimension(_)
            | Error::InvalidWord(_)
            | Error::NotARoot(_) => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

/// Result of a subcommand: the text form and the JSON form.
struct Rendered {
    text: String,
    json: Value,
    code: i32,
}

impl Rendered {
    fn ok(text: String, json: Value) -> Self {
        Self {
            text,
            json,
            code: 0,
        }
    }
}

/// Runs the program on `argv` (including the program name).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let config = Config {
        default_truncation_height: DEFAULT_HEIGHT,
        cache_path: cli.cache.clone(),
        output_format: if cli.json {
            OutputFormat::Json
        } else {
            OutputFormat::Human
        },
    };
    match execute(cli.command, &config) {
        Ok(r) => {
            let stdout = match config.output_format {
                OutputFormat::Json => format!("{}\n", r.json),
                OutputFormat::Human => r.text,
            };
            Outcome {
                code: r.code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(Failure::Usage(m)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {m}\n"),
        },
        Err(Failure::Compute(m)) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {m}\n"),
        },
    }
}

fn open_cache(config: &Config) -> Result<Arc<KlCache>, Failure> {
    Ok(Arc::new(match &config.cache_path {
        Some(p) => KlCache::open(p)?,
        None => KlCache::new(),
    }))
}

fn parse_type(ty: &TypeArg) -> Result<CartanType, Failure> {
    Ok(ty.cartan_type.parse::<CartanType>()?)
}

fn parse_w(rs: &RootSystem, text: &str, name: &str) -> Result<Weight, Failure> {
    parse_weight(text, rs.rank(), rs.torus_rank())
        .map_err(|e| Failure::Usage(format!("--{name}: {e}")))
}

fn parse_root_vector(text: &str, rank: usize) -> Result<RootVector, Failure> {
    let coords = text
        .split(',')
        .enumerate()
        .map(|(k, tok)| {
            tok.trim().parse::<i64>().map_err(|_| {
                Failure::Usage(format!(
                    "--chi: invalid integer `{}` at position {}",
                    tok.trim(),
                    k + 1
                ))
            })
        })
        .collect::<Result<Vec<i64>, Failure>>()?;
    if coords.len() != rank {
        return Err(Failure::Usage(format!(
            "--chi: expected {rank} coordinates, found {}",
            coords.len()
        )));
    }
    Ok(RootVector(coords))
}

fn execute(command: Command, config: &Config) -> Result<Rendered, Failure> {
    let (rendered, cache) = match command {
        Command::Mult(a) => {
            let cache = open_cache(config)?;
            (mult(a, cache.clone())?, Some(cache))
        }
        Command::Series(a) => {
            let cache = open_cache(config)?;
            (series(a, cache.clone())?, Some(cache))
        }
        Command::Char(a) => {
            let cache = open_cache(config)?;
            (character(a, cache.clone())?, Some(cache))
        }
        Command::Kl(a) => {
            let cache = open_cache(config)?;
            (kl(a, &cache)?, Some(cache))
        }
        Command::Partition(a) => (partition(a)?, None),
        Command::Reduce(a) => (reduce(a)?, None),
        Command::Selftest(a) => (run_selftest(a)?, None),
        Command::Cache { action } => (cache_command(action, config)?, None),
    };
    if let Some(cache) = cache {
        cache.flush()?;
    }
    Ok(rendered)
}

fn mult(a: MultArgs, cache: Arc<KlCache>) -> Result<Rendered, Failure> {
    let engine = Engine::new(&parse_type(&a.ty)?, cache);
    let rs = engine.root_system();
    let lambda = parse_w(rs, &a.lambda, "lambda")?;
    let mu = parse_w(rs, &a.mu, "mu")?;
    let lambda2 = parse_w(rs, &a.lambda2, "lambda2")?;
    let mu2 = parse_w(rs, &a.mu2, "mu2")?;
    let report = engine.mult(&lambda, &mu, &lambda2, &mu2)?;
    let mut text = format!("{}\n", report.value);
    if a.explain {
        let levi = levi_json(&report.levi, rs);
        let _ = writeln!(text, "w = {}", report.w_used);
        let _ = writeln!(
            text,
            "levi = {} with simple roots {}",
            levi["type"].as_str().unwrap_or(""),
            simple_roots(&report.levi)
        );
        let _ = writeln!(text, "terms (chi, p, levi multiplicity):");
        for t in &report.terms {
            let _ = writeln!(text, "  {}\t{}\t{}", t.chi, t.p, t.levi_mult);
        }
    }
    Ok(Rendered::ok(text, report.to_json(rs)))
}

fn simple_roots(levi: &LeviDatum) -> String {
    let roots: Vec<String> = levi.simple_system().iter().map(|r| r.to_string()).collect();
    format!("{{{}}}", roots.join(", "))
}

fn series(a: SeriesArgs, cache: Arc<KlCache>) -> Result<Rendered, Failure> {
    let engine = Engine::new(&parse_type(&a.ty)?, cache);
    let rs = engine.root_system();
    let lambda = parse_w(rs, &a.lambda, "lambda")?;
    let mu = parse_w(rs, &a.mu, "mu")?;
    let entries = engine.series(&lambda, &mu, a.height)?;
    let mut text = String::new();
    for e in &entries {
        let _ = writeln!(text, "{}\t{}", e.lambda2, e.value);
    }
    Ok(Rendered::ok(
        text,
        series_json(&lambda, &mu, a.height, &entries),
    ))
}

fn character(a: CharArgs, cache: Arc<KlCache>) -> Result<Rendered, Failure> {
    let engine = Engine::new(&parse_type(&a.ty)?, cache);
    let rs = engine.root_system();
    let lambda = parse_w(rs, &a.lambda, "lambda")?;
    let partitions = engine.ambient_partitions();
    let ch: Character = match a.kind {
        CharKind::Verma => verma_character(&lambda, a.height, &partitions),
        CharKind::Takiff => takiff_verma_character(&lambda, a.height, &partitions),
        CharKind::Simple => simple_character_bgg(
            &lambda,
            a.height,
            &LeviDatum::full(rs),
            rs,
            &partitions,
            engine.kl(),
        )?,
        CharKind::Weyl => weyl_character_formula(&lambda, a.height, rs, &partitions)?,
    };
    let mut text = String::new();
    for (offset, dim) in ch.entries() {
        let _ = writeln!(text, "{offset}\t{dim}");
    }
    Ok(Rendered::ok(text, ch.to_json()))
}

fn kl(a: KlArgs, cache: &KlCache) -> Result<Rendered, Failure> {
    let rs = RootSystem::new(&parse_type(&a.ty)?);
    let cartan = rs.cartan_matrix();
    let element = |text: &str| -> Result<WeylElement, Failure> {
        let word = parse_word(text, rs.rank())?;
        Ok(WeylElement::from_word(cartan, &word)?)
    };
    let x = element(&a.x)?;
    let w = element(&a.w)?;
    let p = kl_polynomial(cartan, &x, &w, cache)?;
    let json = json!({ "x": x.to_string(), "w": w.to_string(), "coeffs": p.coeffs(), "polynomial": p.to_string() });
    Ok(Rendered::ok(format!("{p}\n"), json))
}

fn partition(a: PartitionArgs) -> Result<Rendered, Failure> {
    let engine = Engine::in_memory(&parse_type(&a.ty)?);
    let chi = parse_root_vector(&a.chi, engine.root_system().rank())?;
    let cache = engine.ambient_partitions();
    let value = if a.squared {
        cache.p2(&chi)
    } else {
        cache.p(&chi)
    };
    Ok(Rendered::ok(
        format!("{value}\n"),
        json!({ "chi": chi, "value": value, "squared": a.squared }),
    ))
}

fn reduce(a: ReduceArgs) -> Result<Rendered, Failure> {
    let rs = RootSystem::new(&parse_type(&a.ty)?);
    let mu = parse_w(&rs, &a.mu, "mu")?;
    let red = minimal_levi_reduction(&mu, &rs);
    let levi = levi_json(&red.levi, &rs);
    let text = format!(
        "w = {}\nmu' = {}\nlevi = {} with simple roots {}\n",
        red.w,
        red.mu_prime,
        levi["type"].as_str().unwrap_or(""),
        simple_roots(&red.levi)
    );
    Ok(Rendered::ok(
        text,
        json!({ "w": red.w.to_string(), "mu_prime": red.mu_prime, "levi": levi }),
    ))
}

fn run_selftest(a: SelftestArgs) -> Result<Rendered, Failure> {
    let reports = match a.only {
        Some(id) => vec![selftest::run_criterion(id)
            .ok_or_else(|| Failure::Usage(format!("unknown criterion {id}; expected 1..=8")))?],
        None => selftest::run_all(),
    };
    let mut text = String::new();
    let mut items = Vec::new();
    for r in &reports {
        let _ = writeln!(text, "{r}");
        items.push(json!({
            "id": r.id,
            "name": r.name,
            "passed": r.passed,
            "seconds": format!("{:.3}", r.elapsed.as_secs_f64()),
            "limit_seconds": r.limit.as_secs(),
            "detail": r.detail,
        }));
    }
    let passed = reports.iter().all(|r| r.passed);
    Ok(Rendered {
        text,
        json: json!({ "passed": passed, "criteria": items }),
        code: if passed { 0 } else { 1 },
    })
}

fn cache_command(action: CacheAction, config: &Config) -> Result<Rendered, Failure> {
    let path = config.cache_path.clone().ok_or_else(|| {
        Failure::Usage("no cache configured; pass --cache or set TAKIFF_CACHE".into())
    })?;
    match action {
        CacheAction::Stats => {
            let exists = path.exists();
            let cache = KlCache::open(&path)?;
            let bytes = fs::metadata(&path).map(|m| m.len()).unwrap_or(0);
            let fps = cache.fingerprints();
            let text = format!(
                "path = {}\nexists = {exists}\nrecords = {}\ngroups = {}\nbytes = {bytes}\n",
                path.display(),
                cache.len(),
                fps.len()
            );
            let json = json!({
                "path": path.display().to_string(),
                "exists": exists,
                "records": cache.len(),
                "groups": fps,
                "bytes": bytes,
            });
            Ok(Rendered::ok(text, json))
        }
        CacheAction::Clear => {
            let existed = path.exists();
            if existed {
                fs::remove_file(&path)
                    .map_err(|e| Failure::Compute(format!("{}: {e}", path.display())))?;
            }
            let text = format!(
                "{} {}\n",
                if existed {
                    "removed"
                } else {
                    "nothing to remove at"
                },
                path.display()
            );
            Ok(Rendered::ok(
                text,
                json!({ "path": path.display().to_string(), "removed": existed }),
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("takiff").chain(args.iter().copied()))
    }

    #[test]
    fn partition_example() {
        let out = run_args(&["partition", "--type", "A2", "--chi", "-1,-1"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert_eq!(out.stdout, "2\n");
    }

    #[test]
    fn usage_errors_exit_two() {
        let out = run_args(&[
            "mult",
            "--type",
            "A2",
            "--lambda",
            "1,x",
            "--mu",
            "0,0",
            "--lambda2",
            "0,0",
            "--mu2",
            "0,0",
        ]);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("position 2"), "{}", out.stderr);
        let out = run_args(&["partition", "--type", "A2", "--chi", "1"]);
        assert_eq!(out.code, 2);
        let out = run_args(&["partition", "--type", "Q2", "--chi", "1"]);
        assert_eq!(out.code, 2);
        assert_eq!(run_args(&["frobnicate"]).code, 2);
        assert_eq!(run_args(&["cache", "stats"]).code, 2);
    }

    #[test]
    fn computation_errors_exit_one() {
        let out = run_args(&[
            "char", "--type", "A1", "--kind", "weyl", "--lambda", "-1", "--height", "3",
        ]);
        assert_eq!(out.code, 1, "{}", out.stderr);
    }

    #[test]
    fn reduce_example() {
        let out = run_args(&["--json", "reduce", "--type", "A2", "--mu", "1,-1"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["w"], "1");
        assert!(v["levi"]["type"].as_str().unwrap().starts_with("A1"));
    }
}
