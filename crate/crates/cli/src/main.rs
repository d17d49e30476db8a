//! `sigraph` command-line front end.
//!
//! Exit status: 0 on success, 1 when the library rejects the parameters,
//! 2 on malformed flags, config files or input files.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use sigraph::connectivity::{is_k_connected, report};
use sigraph::experiment::{sandwich_check, sweep, to_csv, ExperimentConfig, SweepMode};
use sigraph::format::round_sig;
use sigraph::probability::EdgeProbability;
use sigraph::sampler::{read_edge_list, write_edge_list, Sampler};
use sigraph::scaling::{solve_k, solve_t, Rounding};
use sigraph::seed::Seed;
use sigraph::{BinomialParams, Error, ModelKind, PropertyTarget, UniformParams};

#[derive(Parser)]
#[command(name = "sigraph", version, about = "Uniform and binomial random s-intersection graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample one graph and print it.
    Sample(Opts),
    /// Exact and asymptotic edge probability.
    Edgeprob(Opts),
    /// Connectivity report for an edge-list file (stdin if omitted or "-").
    Check {
        input: Option<PathBuf>,
        #[command(flatten)]
        opts: Opts,
    },
    /// Solve the scaling law for K or t.
    Solve(Opts),
    /// Monte Carlo sweep over a deviation grid.
    Experiment(Opts),
    /// Binomial model against the uniform models at the coupling bounds.
    Sandwich(Opts),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
    Edgelist,
}

/// Every flag is optional here; a `--config` JSON file fills the gaps.
#[derive(Args, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Opts {
    /// JSON file with any of the flags below; flags given on the command line win.
    #[arg(long)]
    #[serde(skip)]
    config: Option<PathBuf>,
    #[arg(long, value_parser = parse_model)]
    model: Option<ModelKind>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long = "K")]
    #[serde(rename = "K")]
    items: Option<u64>,
    #[arg(long)]
    t: Option<f64>,
    #[arg(long = "P")]
    #[serde(rename = "P")]
    pool: Option<u64>,
    #[arg(long)]
    s: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    /// Deviation grid `start:stop:step`, both ends included.
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    #[arg(long)]
    trials: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    confidence: Option<f64>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long, value_parser = parse_rounding)]
    rounding: Option<Rounding>,
    /// Share one draw per trial across the grid.
    #[arg(long)]
    #[serde(default)]
    coupled: bool,
}

fn parse_model(s: &str) -> Result<ModelKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_rounding(s: &str) -> Result<Rounding, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_domain() {
            Failure::Domain(e)
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

type Outcome<T> = Result<T, Failure>;

fn usage<T>(msg: impl Into<String>) -> Outcome<T> {
    Err(Failure::Usage(msg.into()))
}

macro_rules! merge {
    ($flags:ident, $file:ident; $($field:ident),*) => {
        $( if $flags.$field.is_none() { $flags.$field = $file.$field; } )*
    };
}

impl Opts {
    fn resolve(mut self) -> Outcome<Self> {
        let Some(path) = self.config.clone() else { return Ok(self) };
        let text = fs::read_to_string(&path).or_else(|e| usage(format!("{}: {e}", path.display())))?;
        let file: Opts =
            serde_json::from_str(&text).or_else(|e| usage(format!("{}: {e}", path.display())))?;
        merge!(self, file; model, n, items, t, pool, s, k, alpha, beta, grid, trials, seed, threads, confidence, format, rounding);
        self.coupled |= file.coupled;
        Ok(self)
    }

    fn model(&self) -> Outcome<ModelKind> {
        need(self.model, "--model")
    }

    fn deviation(&self, model: ModelKind) -> Outcome<f64> {
        match (model, self.alpha, self.beta) {
            (ModelKind::Uniform, Some(a), None) => Ok(a),
            (ModelKind::Binomial, None, Some(b)) => Ok(b),
            (ModelKind::Uniform, _, _) => usage("the uniform model takes --alpha (and not --beta)"),
            (ModelKind::Binomial, _, _) => usage("the binomial model takes --beta (and not --alpha)"),
        }
    }

    fn format(&self, allowed: &[Format], default: Format) -> Outcome<Format> {
        let f = self.format.unwrap_or(default);
        if allowed.contains(&f) {
            Ok(f)
        } else {
            usage(format!("--format {f:?} is not available for this subcommand").to_lowercase())
        }
    }
}

fn need<T>(value: Option<T>, flag: &str) -> Outcome<T> {
    match value {
        Some(v) => Ok(v),
        None => usage(format!("missing required {flag}")),
    }
}

fn parse_grid(text: &str) -> Outcome<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    let nums: Result<Vec<f64>, _> = parts.iter().map(|p| p.trim().parse::<f64>()).collect();
    let Ok(nums) = nums else { return usage(format!("--grid {text}: expected start:stop:step")) };
    let [start, stop, step] = nums[..] else { return usage(format!("--grid {text}: expected start:stop:step")) };
    if !(start.is_finite() && stop.is_finite() && step.is_finite() && step > 0.0 && start <= stop) {
        return usage(format!("--grid {text}: need finite start <= stop and step > 0"));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    if count > 1_000_000 {
        return usage(format!("--grid {text}: too many points"));
    }
    Ok((0..count).map(|i| round_sig(start + i as f64 * step)).collect())
}

/// Rounds every float in a JSON tree to 12 significant digits.
fn round_floats(v: &mut Value) {
    match v {
        Value::Number(num) if num.is_f64() => {
            if let Some(x) = num.as_f64() {
                *v = serde_json::Number::from_f64(round_sig(x)).map_or(Value::Null, Value::Number);
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut v = serde_json::to_value(value).expect("serializable output");
    round_floats(&mut v);
    let mut out = serde_json::to_string_pretty(&v).expect("json");
    out.push('\n');
    out
}

fn sample(opts: Opts) -> Outcome<String> {
    let model = opts.model()?;
    let format = opts.format(&[Format::Edgelist, Format::Json], Format::Edgelist)?;
    let (n, pool, s) = (need(opts.n, "--n")?, need(opts.pool, "--P")?, need(opts.s, "--s")?);
    let seed = Seed::new(opts.seed.unwrap_or(0), 0);
    let sampler = Sampler::default();
    let g = match model {
        ModelKind::Uniform => sampler.uniform(&UniformParams::new(n, need(opts.items, "--K")?, pool, s)?, seed)?,
        ModelKind::Binomial => sampler.binomial(&BinomialParams::new(n, need(opts.t, "--t")?, pool, s)?, seed)?,
    };
    Ok(match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Dump<'a> {
                n: usize,
                m: usize,
                s: u32,
                model: ModelKind,
                edges: Vec<(usize, usize)>,
                items: &'a [Vec<u64>],
            }
            to_json(&Dump {
                n: g.n(),
                m: g.graph().m(),
                s: g.s(),
                model: g.model(),
                edges: g.graph().edges().collect(),
                items: g.item_sets(),
            })
        }
        _ => write_edge_list(&g),
    })
}

fn edgeprob(opts: Opts) -> Outcome<String> {
    let model = opts.model()?;
    opts.format(&[Format::Json], Format::Json)?;
    let (pool, s) = (need(opts.pool, "--P")?, need(opts.s, "--s")?);
    // n does not enter the edge probability
    let n = opts.n.unwrap_or(2);
    #[derive(Serialize)]
    struct Out {
        model: ModelKind,
        #[serde(rename = "K", skip_serializing_if = "Option::is_none")]
        items: Option<u64>,
        #[serde(skip_serializing_if = "Option::is_none")]
        t: Option<f64>,
        #[serde(rename = "P")]
        pool: u64,
        s: u32,
        exact: f64,
        asymptotic: f64,
        gap: f64,
    }
    let (items, t, e) = match model {
        ModelKind::Uniform => {
            let items = need(opts.items, "--K")?;
            (Some(items), None, EdgeProbability::uniform(&UniformParams::new(n, items, pool, s)?))
        }
        ModelKind::Binomial => {
            let t = need(opts.t, "--t")?;
            (None, Some(t), EdgeProbability::binomial(&BinomialParams::new(n, t, pool, s)?))
        }
    };
    Ok(to_json(&Out { model, items, t, pool, s, exact: e.exact, asymptotic: e.asymptotic, gap: e.abs_gap }))
}

fn check(input: Option<PathBuf>, opts: Opts) -> Outcome<String> {
    opts.format(&[Format::Json], Format::Json)?;
    let text = match input.as_deref() {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).or_else(|e| usage(format!("{}: {e}", p.display())))?
        }
        _ => {
            let mut buf = String::new();
            io::stdin().read_to_string(&mut buf).or_else(|e| usage(format!("stdin: {e}")))?;
            buf
        }
    };
    let file = read_edge_list(&text).map_err(|e| Failure::Usage(e.to_string()))?;
    let r = report(&file.graph)?;
    #[derive(Serialize)]
    struct Out {
        n: usize,
        m: usize,
        kappa_v: usize,
        kappa_e: usize,
        delta: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        k: Option<u32>,
        #[serde(skip_serializing_if = "Option::is_none")]
        vconn: Option<bool>,
        #[serde(skip_serializing_if = "Option::is_none")]
        econn: Option<bool>,
        #[serde(skip_serializing_if = "Option::is_none")]
        mindeg: Option<bool>,
    }
    let levels = match opts.k {
        Some(k) => Some(is_k_connected(&file.graph, PropertyTarget::new(k)?)),
        None => None,
    };
    Ok(to_json(&Out {
        n: file.graph.n(),
        m: file.graph.m(),
        kappa_v: r.kappa_v,
        kappa_e: r.kappa_e,
        delta: r.delta,
        k: opts.k,
        vconn: levels.map(|l| l.vconn),
        econn: levels.map(|l| l.econn),
        mindeg: levels.map(|l| l.mindeg),
    }))
}

fn solve(opts: Opts) -> Outcome<String> {
    let model = opts.model()?;
    opts.format(&[Format::Json], Format::Json)?;
    let (n, pool, s, k) = (need(opts.n, "--n")?, need(opts.pool, "--P")?, need(opts.s, "--s")?, need(opts.k, "--k")?);
    PropertyTarget::new(k)?;
    let dev = opts.deviation(model)?;
    let point = match model {
        ModelKind::Uniform => solve_k(n, pool, s, k, dev, opts.rounding.unwrap_or_default())?,
        ModelKind::Binomial => solve_t(n, pool, s, k, dev)?,
    };
    Ok(to_json(&point))
}

fn experiment(opts: Opts) -> Outcome<String> {
    let model = opts.model()?;
    let format = opts.format(&[Format::Csv, Format::Json], Format::Csv)?;
    let grid = match (&opts.grid, opts.alpha.or(opts.beta)) {
        (Some(g), None) => parse_grid(g)?,
        (None, Some(_)) => vec![opts.deviation(model)?],
        _ => return usage("give exactly one of --grid or a single --alpha/--beta"),
    };
    let mut config = ExperimentConfig::new(
        model,
        need(opts.n, "--n")?,
        need(opts.pool, "--P")?,
        need(opts.s, "--s")?,
        need(opts.k, "--k")?,
        grid,
        need(opts.trials, "--trials")?,
        opts.seed.unwrap_or(0),
    );
    config.threads = opts.threads;
    config.rounding = opts.rounding.unwrap_or_default();
    if let Some(c) = opts.confidence {
        config.confidence = c;
    }
    if opts.coupled {
        config.mode = SweepMode::Coupled;
    }
    let rows = sweep(&config)?;
    Ok(match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                config: &'a ExperimentConfig,
                rows: &'a [sigraph::experiment::SweepRow],
            }
            to_json(&Out { config: &config, rows: &rows })
        }
        _ => to_csv(&config, &rows),
    })
}

fn sandwich(opts: Opts) -> Outcome<String> {
    opts.format(&[Format::Json], Format::Json)?;
    let (n, pool, s, k) = (need(opts.n, "--n")?, need(opts.pool, "--P")?, need(opts.s, "--s")?, opts.k.unwrap_or(1));
    let t = match (opts.t, opts.beta) {
        (Some(t), None) => t,
        (None, Some(beta)) => solve_t(n, pool, s, k, beta)?.param,
        _ => return usage("give exactly one of --t or --beta"),
    };
    let trials = need(opts.trials, "--trials")?;
    let report = sandwich_check(n, t, pool, s, k, trials, opts.seed.unwrap_or(0), opts.confidence.unwrap_or(0.95))?;
    Ok(to_json(&report))
}

fn run(cli: Cli) -> Outcome<String> {
    match cli.command {
        Command::Sample(o) => sample(o.resolve()?),
        Command::Edgeprob(o) => edgeprob(o.resolve()?),
        Command::Check { input, opts } => check(input, opts.resolve()?),
        Command::Solve(o) => solve(o.resolve()?),
        Command::Experiment(o) => experiment(o.resolve()?),
        Command::Sandwich(o) => sandwich(o.resolve()?),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
