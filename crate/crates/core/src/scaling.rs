//! Threshold scaling: solving the edge-probability scaling law for the
//! model parameter, recovering the deviation from parameters, the limiting
//! property probability, deviation confinement, and the `K±` bounds that
//! couple the binomial model to the uniform one.
//!
//! With `l_n = ln n + (k - 1) ln ln n + dev`, the uniform law reads
//! `(1/s!) K^{2s} / P^s = l_n / n` and the binomial law
//! `(1/s!) t^{2s} P^s = l_n / n`. Everything involving `ln ln n` requires
//! `n >= 3`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{BinomialParams, ModelKind, UniformParams};
use crate::probability::{
    binomial_edge_prob_asymptotic, factorial, uniform_edge_prob_asymptotic, EdgeProbability,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rounding {
    Floor,
    Ceil,
    #[default]
    Nearest,
}

impl Rounding {
    pub fn apply(self, x: f64) -> f64 {
        match self {
            Rounding::Floor => x.floor(),
            Rounding::Ceil => x.ceil(),
            Rounding::Nearest => x.round(),
        }
    }
}

impl FromStr for Rounding {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "floor" => Ok(Rounding::Floor),
            "ceil" => Ok(Rounding::Ceil),
            "nearest" => Ok(Rounding::Nearest),
            other => Err(Error::Parse(format!("unknown rounding '{other}'"))),
        }
    }
}

impl fmt::Display for Rounding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rounding::Floor => "floor",
            Rounding::Ceil => "ceil",
            Rounding::Nearest => "nearest",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Raise the deviation to at least `-ln ln n`.
    Lower,
    /// Cap the deviation at `ln ln n`.
    Upper,
}

/// A solved point on the threshold curve.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingPoint {
    pub model: ModelKind,
    pub n: u64,
    #[serde(rename = "P")]
    pub pool: u64,
    pub s: u32,
    pub k: u32,
    /// The requested deviation (alpha or beta).
    pub deviation: f64,
    /// Unrounded solution `K*` or `t*`.
    pub solved: f64,
    /// Parameter actually used: rounded `K` for the uniform model, `t*` itself for the binomial one.
    pub param: f64,
    /// Deviation recovered from `param` through the asymptotic law.
    pub realized_deviation: f64,
    /// Deviation implied by the exact edge probability at `param`:
    /// `n q - ln n - (k - 1) ln ln n`.
    pub effective_deviation: f64,
    pub limit_prob: f64,
    pub edge_prob_exact: f64,
    pub edge_prob_asymptotic: f64,
    pub warnings: Vec<String>,
}

impl ScalingPoint {
    /// Validated uniform parameters at the rounded `K`.
    pub fn uniform_params(&self) -> Result<UniformParams> {
        UniformParams::new(self.n, self.param as u64, self.pool, self.s)
    }

    pub fn binomial_params(&self) -> Result<BinomialParams> {
        BinomialParams::new(self.n, self.param, self.pool, self.s)
    }
}

/// `exp(-exp(-dev) / (k - 1)!)`; `-inf` gives 0 and `+inf` gives 1.
pub fn limit_probability(deviation: f64, k: u32) -> f64 {
    assert!(k >= 1, "k must be positive");
    (-(-deviation).exp() / factorial(k - 1)).exp()
}

fn check_n(n: u64) -> Result<()> {
    if n < 3 {
        return Err(Error::DomainError(format!("n = {n}: ln ln n needs n >= 3")));
    }
    Ok(())
}

/// `ln n + (k - 1) ln ln n`.
fn threshold_base(n: u64, k: u32) -> f64 {
    let ln_n = (n as f64).ln();
    ln_n + f64::from(k - 1) * ln_n.ln()
}

/// `l_n = ln n + (k - 1) ln ln n + dev`, required positive and finite.
pub fn threshold_level(n: u64, k: u32, deviation: f64) -> Result<f64> {
    check_n(n)?;
    if !deviation.is_finite() {
        return Err(Error::DomainError("deviation must be finite".into()));
    }
    let level = threshold_base(n, k) + deviation;
    if level <= 0.0 {
        return Err(Error::DomainError(format!(
            "ln n + (k-1) ln ln n + deviation = {level} is not positive"
        )));
    }
    Ok(level)
}

fn regime_warnings(model: ModelKind, n: u64, pool: u64, s: u32) -> Vec<String> {
    let mut out = Vec::new();
    match (model, s) {
        (ModelKind::Binomial, 1) => {
            if (pool as f64) < (n as f64).powf(1.1) {
                out.push(format!("P = {pool} < n^1.1: pool may be too small relative to n for s = 1"));
            }
        }
        _ => {
            if pool < n {
                out.push(format!("P = {pool} < n = {n}: pool smaller than the vertex count"));
            }
        }
    }
    out
}

/// Solves the uniform law for `K` and rounds it.
pub fn solve_k(n: u64, pool: u64, s: u32, k: u32, alpha: f64, rounding: Rounding) -> Result<ScalingPoint> {
    let level = threshold_level(n, k, alpha)?;
    let s_f = f64::from(s);
    let ln_k = (factorial(s).ln() + s_f * (pool as f64).ln() + level.ln() - (n as f64).ln()) / (2.0 * s_f);
    let solved = ln_k.exp();
    let rounded = rounding.apply(solved);
    if rounded < s_f || rounded > pool as f64 {
        return Err(Error::Infeasible(format!(
            "K* = {solved} rounds to {rounded}, outside [s, P] = [{s}, {pool}]"
        )));
    }
    let params = UniformParams::new(n, rounded as u64, pool, s)?;
    let edge = EdgeProbability::uniform(&params);
    Ok(ScalingPoint {
        model: ModelKind::Uniform,
        n,
        pool,
        s,
        k,
        deviation: alpha,
        solved,
        param: rounded,
        realized_deviation: alpha_from_uniform(n, rounded, pool, s, k),
        effective_deviation: deviation_from_edge_prob(n, k, edge.exact),
        limit_prob: limit_probability(alpha, k),
        edge_prob_exact: edge.exact,
        edge_prob_asymptotic: edge.asymptotic,
        warnings: regime_warnings(ModelKind::Uniform, n, pool, s),
    })
}

/// Solves the binomial law for `t`.
pub fn solve_t(n: u64, pool: u64, s: u32, k: u32, beta: f64) -> Result<ScalingPoint> {
    let level = threshold_level(n, k, beta)?;
    let s_f = f64::from(s);
    let ln_t = (factorial(s).ln() + level.ln() - (n as f64).ln() - s_f * (pool as f64).ln()) / (2.0 * s_f);
    let solved = ln_t.exp();
    if solved > 1.0 {
        return Err(Error::Infeasible(format!("t* = {solved} > 1 (supercritical parameters)")));
    }
    let params = BinomialParams::new(n, solved, pool, s)?;
    let edge = EdgeProbability::binomial(&params);
    Ok(ScalingPoint {
        model: ModelKind::Binomial,
        n,
        pool,
        s,
        k,
        deviation: beta,
        solved,
        param: solved,
        realized_deviation: beta_from_binomial(n, solved, pool, s, k),
        effective_deviation: deviation_from_edge_prob(n, k, edge.exact),
        limit_prob: limit_probability(beta, k),
        edge_prob_exact: edge.exact,
        edge_prob_asymptotic: edge.asymptotic,
        warnings: regime_warnings(ModelKind::Binomial, n, pool, s),
    })
}

/// `alpha = n (1/s!) K^{2s} / P^s - ln n - (k - 1) ln ln n`. `items` may be
/// fractional. Needs `n >= 3`.
pub fn alpha_from_uniform(n: u64, items: f64, pool: u64, s: u32, k: u32) -> f64 {
    assert!(n >= 3, "ln ln n needs n >= 3");
    n as f64 * uniform_edge_prob_asymptotic(items, pool, s) - threshold_base(n, k)
}

/// `beta = n (1/s!) t^{2s} P^s - ln n - (k - 1) ln ln n`. Needs `n >= 3`.
pub fn beta_from_binomial(n: u64, t: f64, pool: u64, s: u32, k: u32) -> f64 {
    assert!(n >= 3, "ln ln n needs n >= 3");
    n as f64 * binomial_edge_prob_asymptotic(t, pool, s) - threshold_base(n, k)
}

/// Deviation of an edge probability from the threshold `(ln n + (k-1) ln ln n) / n`.
pub fn deviation_from_edge_prob(n: u64, k: u32, edge_prob: f64) -> f64 {
    assert!(n >= 3, "ln ln n needs n >= 3");
    n as f64 * edge_prob - threshold_base(n, k)
}

/// Clamps a deviation into `[-ln ln n, inf)` (lower) or `(-inf, ln ln n]` (upper).
pub fn confine_deviation(deviation: f64, n: u64, direction: Direction) -> Result<f64> {
    check_n(n)?;
    let bound = (n as f64).ln().ln();
    Ok(match direction {
        Direction::Lower => deviation.max(-bound),
        Direction::Upper => deviation.min(bound),
    })
}

/// `K± = tP ± sqrt(3 ln n (ln n + tP))`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CouplingBounds {
    pub k_minus: f64,
    pub k_plus: f64,
    pub t: f64,
    #[serde(rename = "P")]
    pub pool: u64,
    pub n: u64,
    pub warnings: Vec<String>,
}

impl CouplingBounds {
    pub fn half_width(&self) -> f64 {
        (self.k_plus - self.k_minus) / 2.0
    }
}

pub fn coupling_k_bounds(t: f64, pool: u64, n: u64) -> Result<CouplingBounds> {
    check_n(n)?;
    if !(t > 0.0 && t <= 1.0) {
        return Err(Error::DomainError(format!("t = {t} must lie in (0, 1]")));
    }
    let ln_n = (n as f64).ln();
    let mean = t * pool as f64;
    let radius = (3.0 * ln_n * (ln_n + mean)).sqrt();
    let (k_minus, k_plus) = (mean - radius, mean + radius);
    if k_minus <= 0.0 {
        return Err(Error::NegativeLowerBound { k_minus });
    }
    let mut warnings = Vec::new();
    if mean <= 3.0 * ln_n {
        warnings.push(format!("tP = {mean} <= 3 ln n = {}: far from the tP >> ln n regime", 3.0 * ln_n));
    }
    Ok(CouplingBounds { k_minus, k_plus, t, pool, n, warnings })
}
