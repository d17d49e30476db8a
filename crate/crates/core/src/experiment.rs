//! Monte Carlo estimation of the three level-`k` property probabilities.
//!
//! Trial `i` at grid point `j` is seeded with `Seed::for_trial(master, j, i)`
//! in independent mode and with `Seed::new(master, i)` in coupled mode, where
//! one draw per trial is reused for every grid point. Counts are summed in
//! trial order, so results do not depend on the thread count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::connectivity::{is_k_connected, KConnectivity};
use crate::error::{Error, Result};
use crate::format::fmt_sig;
use crate::model::{BinomialParams, ModelKind, PropertyTarget, UniformParams};
use crate::sampler::{BinomialSource, Sampler, UniformSource, DEFAULT_PAIR_WORK_CAP};
use crate::scaling::{coupling_k_bounds, limit_probability, solve_k, solve_t, Rounding, ScalingPoint};
use crate::seed::Seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepMode {
    /// Fresh randomness at every grid point.
    #[default]
    Independent,
    /// One draw per trial shared by all grid points; graphs are nested along the grid.
    Coupled,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub model: ModelKind,
    pub n: u64,
    #[serde(rename = "P")]
    pub pool: u64,
    pub s: u32,
    pub k: u32,
    pub grid: Vec<f64>,
    pub trials: u32,
    pub seed: u64,
    #[serde(default = "default_confidence")]
    pub confidence: f64,
    #[serde(default)]
    pub threads: Option<usize>,
    #[serde(default)]
    pub rounding: Rounding,
    #[serde(default)]
    pub mode: SweepMode,
    #[serde(default = "default_pair_work_cap")]
    pub pair_work_cap: u64,
}

fn default_confidence() -> f64 {
    0.95
}

fn default_pair_work_cap() -> u64 {
    DEFAULT_PAIR_WORK_CAP
}

impl ExperimentConfig {
    #[allow(clippy::too_many_arguments)]
    pub fn new(model: ModelKind, n: u64, pool: u64, s: u32, k: u32, grid: Vec<f64>, trials: u32, seed: u64) -> Self {
        Self {
            model,
            n,
            pool,
            s,
            k,
            grid,
            trials,
            seed,
            confidence: default_confidence(),
            threads: None,
            rounding: Rounding::default(),
            mode: SweepMode::default(),
            pair_work_cap: DEFAULT_PAIR_WORK_CAP,
        }
    }

    pub fn coupled(mut self) -> Self {
        self.mode = SweepMode::Coupled;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials < 1 {
            return Err(Error::ConstraintViolated("trials >= 1".into()));
        }
        if self.grid.is_empty() {
            return Err(Error::ConstraintViolated("deviation grid must be non-empty".into()));
        }
        if self.grid.iter().any(|d| d.is_nan()) || self.grid.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::ConstraintViolated("deviation grid must be sorted ascending".into()));
        }
        if !(self.confidence > 0.0 && self.confidence < 1.0) {
            return Err(Error::ConstraintViolated("confidence must lie in (0, 1)".into()));
        }
        if self.threads == Some(0) {
            return Err(Error::ConstraintViolated("threads >= 1".into()));
        }
        PropertyTarget::new(self.k)?;
        if self.s < 1 || u64::from(self.s) > self.pool {
            return Err(Error::ConstraintViolated("1 <= s <= P".into()));
        }
        if self.n < 3 {
            return Err(Error::ConstraintViolated("n >= 3".into()));
        }
        Ok(())
    }

    fn target(&self) -> PropertyTarget {
        PropertyTarget::new(self.k).expect("validated")
    }

    fn sampler(&self) -> Sampler {
        Sampler { pair_work_cap: self.pair_work_cap }
    }

    /// Solves the scaling law for one deviation.
    pub fn solve(&self, deviation: f64) -> Result<ScalingPoint> {
        match self.model {
            ModelKind::Uniform => solve_k(self.n, self.pool, self.s, self.k, deviation, self.rounding),
            ModelKind::Binomial => solve_t(self.n, self.pool, self.s, self.k, deviation),
        }
    }

    fn install<R: Send>(&self, job: impl FnOnce() -> R + Send) -> Result<R> {
        match self.threads {
            None => Ok(job()),
            Some(threads) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build()
                    .map_err(|e| Error::DomainError(format!("thread pool: {e}")))?;
                Ok(pool.install(job))
            }
        }
    }
}

/// Success count and Wilson interval for one property.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PropertyEstimate {
    pub successes: u32,
    pub estimate: f64,
    pub lo: f64,
    pub hi: f64,
}

impl PropertyEstimate {
    pub fn new(successes: u32, trials: u32, confidence: f64) -> Self {
        let (lo, hi) = wilson_interval(successes, trials, confidence);
        Self { successes, estimate: f64::from(successes) / f64::from(trials), lo, hi }
    }

    pub fn overlaps(&self, other: &PropertyEstimate) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialTally {
    pub point: ScalingPoint,
    pub trials: u32,
    pub vconn: PropertyEstimate,
    pub econn: PropertyEstimate,
    pub mindeg: PropertyEstimate,
    /// Limit at the requested deviation.
    pub limit_prob: f64,
    /// Limit at the deviation implied by the exact edge probability of the
    /// parameters actually sampled (K is rounded to an integer).
    pub effective_limit_prob: f64,
}

impl TrialTally {
    fn from_counts(point: ScalingPoint, counts: [u32; 3], trials: u32, confidence: f64) -> Self {
        let effective_limit_prob = limit_probability(point.effective_deviation, point.k);
        Self {
            limit_prob: point.limit_prob,
            effective_limit_prob,
            trials,
            vconn: PropertyEstimate::new(counts[0], trials, confidence),
            econn: PropertyEstimate::new(counts[1], trials, confidence),
            mindeg: PropertyEstimate::new(counts[2], trials, confidence),
            point,
        }
    }

    pub fn estimates(&self) -> [&PropertyEstimate; 3] {
        [&self.vconn, &self.econn, &self.mindeg]
    }

    pub fn counts(&self) -> [u32; 3] {
        [self.vconn.successes, self.econn.successes, self.mindeg.successes]
    }
}

/// One sweep row: a tally, or the reason the grid point could not be run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub deviation: f64,
    pub tally: Option<TrialTally>,
    pub error: Option<String>,
}

fn accumulate(outcomes: Vec<Result<KConnectivity>>) -> Result<[u32; 3]> {
    let mut counts = [0u32; 3];
    for outcome in outcomes {
        let r = outcome?;
        // vconn implies econn implies mindeg, trial by trial
        if (r.vconn && !r.econn) || (r.econn && !r.mindeg) {
            return Err(Error::InternalOrderViolation {
                kappa_v: r.vconn as usize,
                kappa_e: r.econn as usize,
                delta: r.mindeg as usize,
            });
        }
        counts[0] += r.vconn as u32;
        counts[1] += r.econn as u32;
        counts[2] += r.mindeg as u32;
    }
    Ok(counts)
}

fn run_solved_point(config: &ExperimentConfig, point_index: u32, point: ScalingPoint) -> Result<TrialTally> {
    let target = config.target();
    let sampler = config.sampler();
    let outcomes: Vec<Result<KConnectivity>> = config.install(|| {
        (0..config.trials)
            .into_par_iter()
            .map(|trial| {
                let seed = Seed::for_trial(config.seed, point_index, trial);
                let graph = match config.model {
                    ModelKind::Uniform => sampler.uniform(&point.uniform_params()?, seed)?,
                    ModelKind::Binomial => sampler.binomial(&point.binomial_params()?, seed)?,
                };
                Ok(is_k_connected(graph.graph(), target))
            })
            .collect()
    })?;
    let counts = accumulate(outcomes)?;
    Ok(TrialTally::from_counts(point, counts, config.trials, config.confidence))
}

/// Estimates the three property probabilities at one deviation with
/// independently seeded trials. The point index used for seeding is the
/// deviation's position in `config.grid` (0 if absent).
pub fn run_point(config: &ExperimentConfig, deviation: f64) -> Result<TrialTally> {
    config.validate()?;
    let index = config.grid.iter().position(|&d| d == deviation).unwrap_or(0) as u32;
    let point = config.solve(deviation)?;
    run_solved_point(config, index, point)
}

/// One row per grid point. Points that cannot be solved or sampled carry
/// an error instead of a tally; only configuration errors abort.
pub fn sweep(config: &ExperimentConfig) -> Result<Vec<SweepRow>> {
    config.validate()?;
    match config.mode {
        SweepMode::Independent => Ok(config
            .grid
            .iter()
            .enumerate()
            .map(|(i, &deviation)| {
                let outcome = config.solve(deviation).and_then(|p| run_solved_point(config, i as u32, p));
                row(deviation, outcome)
            })
            .collect()),
        SweepMode::Coupled => coupled_sweep(config),
    }
}

fn row(deviation: f64, outcome: Result<TrialTally>) -> SweepRow {
    match outcome {
        Ok(tally) => SweepRow { deviation, tally: Some(tally), error: None },
        Err(e) => SweepRow { deviation, tally: None, error: Some(e.to_string()) },
    }
}

fn coupled_sweep(config: &ExperimentConfig) -> Result<Vec<SweepRow>> {
    let solved: Vec<Result<ScalingPoint>> = config.grid.iter().map(|&d| config.solve(d)).collect();
    let feasible: Vec<(usize, &ScalingPoint)> =
        solved.iter().enumerate().filter_map(|(i, r)| r.as_ref().ok().map(|p| (i, p))).collect();
    let top = feasible.iter().map(|(_, p)| p.param).fold(0.0, f64::max);
    let target = config.target();
    let sampler = config.sampler();

    // per trial: one outcome per feasible point
    let per_trial: Vec<Vec<Result<KConnectivity>>> = config.install(|| {
        (0..config.trials)
            .into_par_iter()
            .map(|trial| {
                let seed = Seed::new(config.seed, u64::from(trial));
                match config.model {
                    ModelKind::Uniform => {
                        let source = UniformSource::draw(config.n, config.pool, top as u64, seed);
                        feasible
                            .iter()
                            .map(|(_, p)| {
                                let g = source.graph(&p.uniform_params()?, sampler.pair_work_cap)?;
                                Ok(is_k_connected(g.graph(), target))
                            })
                            .collect()
                    }
                    ModelKind::Binomial => {
                        let source = BinomialSource::draw(config.n, config.pool, top, seed);
                        feasible
                            .iter()
                            .map(|(_, p)| {
                                let g = source.graph(&p.binomial_params()?, sampler.pair_work_cap)?;
                                Ok(is_k_connected(g.graph(), target))
                            })
                            .collect()
                    }
                }
            })
            .collect()
    })?;

    let mut rows: Vec<SweepRow> = solved
        .iter()
        .zip(&config.grid)
        .map(|(r, &deviation)| match r {
            Ok(_) => SweepRow { deviation, tally: None, error: None },
            Err(e) => SweepRow { deviation, tally: None, error: Some(e.to_string()) },
        })
        .collect();
    for (slot, (grid_index, point)) in feasible.iter().enumerate() {
        let outcomes = per_trial.iter().map(|t| t[slot].clone()).collect();
        let outcome = accumulate(outcomes)
            .map(|c| TrialTally::from_counts((*point).clone(), c, config.trials, config.confidence));
        rows[*grid_index] = row(config.grid[*grid_index], outcome);
    }
    Ok(rows)
}

/// Wilson score interval for `successes` out of `trials` at the given two-sided confidence.
pub fn wilson_interval(successes: u32, trials: u32, confidence: f64) -> (f64, f64) {
    assert!(trials >= 1 && successes <= trials, "need 0 <= successes <= trials, trials >= 1");
    assert!(confidence > 0.0 && confidence < 1.0, "confidence must lie in (0, 1)");
    let z = Normal::standard().inverse_cdf(1.0 - (1.0 - confidence) / 2.0);
    let n = f64::from(trials);
    let p = f64::from(successes) / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let lo = if successes == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if successes == trials { 1.0 } else { (center + half).min(1.0) };
    (lo, hi)
}

/// Frequencies of the uniform model at `floor(K-)`, the binomial model at
/// `t`, and the uniform model at `ceil(K+)`, for one property.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SandwichTriple {
    pub lower: PropertyEstimate,
    pub binomial: PropertyEstimate,
    pub upper: PropertyEstimate,
    /// `lower <= binomial <= upper`, each comparison allowed to hold by interval overlap.
    pub ordered: bool,
}

impl SandwichTriple {
    fn new(lower: PropertyEstimate, binomial: PropertyEstimate, upper: PropertyEstimate) -> Self {
        let le = |a: &PropertyEstimate, b: &PropertyEstimate| a.estimate <= b.estimate || a.overlaps(b);
        let ordered = le(&lower, &binomial) && le(&binomial, &upper);
        Self { lower, binomial, upper, ordered }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SandwichReport {
    pub n: u64,
    pub t: f64,
    #[serde(rename = "P")]
    pub pool: u64,
    pub s: u32,
    pub k: u32,
    pub trials: u32,
    pub k_minus: f64,
    pub k_plus: f64,
    pub items_lower: u64,
    pub items_upper: u64,
    pub vconn: SandwichTriple,
    pub econn: SandwichTriple,
    pub mindeg: SandwichTriple,
    pub warnings: Vec<String>,
}

impl SandwichReport {
    pub fn ordered(&self) -> bool {
        self.vconn.ordered && self.econn.ordered && self.mindeg.ordered
    }
}

/// Compares the binomial model at `t` with the uniform models at the
/// rounded coupling bounds. Point indices 0, 1, 2 seed the three families.
#[allow(clippy::too_many_arguments)]
pub fn sandwich_check(
    n: u64,
    t: f64,
    pool: u64,
    s: u32,
    k: u32,
    trials: u32,
    seed: u64,
    confidence: f64,
) -> Result<SandwichReport> {
    let target = PropertyTarget::new(k)?;
    if trials < 1 {
        return Err(Error::ConstraintViolated("trials >= 1".into()));
    }
    let bounds = coupling_k_bounds(t, pool, n)?;
    let mut warnings = bounds.warnings.clone();
    let items_lower = bounds.k_minus.floor() as u64;
    if items_lower < u64::from(s) {
        return Err(Error::Infeasible(format!("floor(K-) = {items_lower} is below s = {s}")));
    }
    let mut items_upper = bounds.k_plus.ceil() as u64;
    if items_upper > pool {
        warnings.push(format!("ceil(K+) = {items_upper} exceeds P; using K = P"));
        items_upper = pool;
    }
    let lower = UniformParams::new(n, items_lower, pool, s)?;
    let upper = UniformParams::new(n, items_upper, pool, s)?;
    let middle = BinomialParams::new(n, t, pool, s)?;
    let sampler = Sampler::default();

    let estimate = |point: u32| -> Result<[PropertyEstimate; 3]> {
        let outcomes: Vec<Result<KConnectivity>> = (0..trials)
            .into_par_iter()
            .map(|trial| {
                let seed = Seed::for_trial(seed, point, trial);
                let g = match point {
                    0 => sampler.uniform(&lower, seed)?,
                    1 => sampler.binomial(&middle, seed)?,
                    _ => sampler.uniform(&upper, seed)?,
                };
                Ok(is_k_connected(g.graph(), target))
            })
            .collect();
        let c = accumulate(outcomes)?;
        Ok(c.map(|x| PropertyEstimate::new(x, trials, confidence)))
    };
    let lo = estimate(0)?;
    let mid = estimate(1)?;
    let hi = estimate(2)?;
    Ok(SandwichReport {
        n,
        t,
        pool,
        s,
        k,
        trials,
        k_minus: bounds.k_minus,
        k_plus: bounds.k_plus,
        items_lower,
        items_upper,
        vconn: SandwichTriple::new(lo[0], mid[0], hi[0]),
        econn: SandwichTriple::new(lo[1], mid[1], hi[1]),
        mindeg: SandwichTriple::new(lo[2], mid[2], hi[2]),
        warnings,
    })
}

pub const CSV_HEADER: &str = "model,n,P,s,k,deviation,param,edge_prob_exact,limit_prob,trials,\
vconn_hat,vconn_lo,vconn_hi,econn_hat,econn_lo,econn_hi,mindeg_hat,mindeg_lo,mindeg_hi,seed";

/// CSV rendering of a sweep. Failed points keep their deviation and carry
/// `error:<message>` in the `param` column with the numeric columns empty.
pub fn to_csv(config: &ExperimentConfig, rows: &[SweepRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let prefix = format!(
            "{},{},{},{},{},{}",
            config.model,
            config.n,
            config.pool,
            config.s,
            config.k,
            fmt_sig(r.deviation)
        );
        match (&r.tally, &r.error) {
            (Some(t), _) => {
                let mut fields = vec![
                    fmt_sig(t.point.param),
                    fmt_sig(t.point.edge_prob_exact),
                    fmt_sig(t.limit_prob),
                    t.trials.to_string(),
                ];
                for e in t.estimates() {
                    fields.extend([fmt_sig(e.estimate), fmt_sig(e.lo), fmt_sig(e.hi)]);
                }
                out.push_str(&format!("{prefix},{},{}\n", fields.join(","), config.seed));
            }
            (None, error) => {
                let msg = error.as_deref().unwrap_or("unknown").replace([',', '\n'], ";");
                out.push_str(&format!("{prefix},error:{msg},,,{},,,,,,,,,,{}\n", config.trials, config.seed));
            }
        }
    }
    out
}
