//! Edge-probability kernels.
//!
//! In the uniform model the number of items two vertices share is
//! hypergeometric; in the binomial model it is `Binomial(P, t^2)`. An edge
//! exists when that count reaches `s`, so both exact kernels are upper tails.
//! The asymptotic forms are the scaling quantities the threshold equations
//! are written in.
//!
//! Pools of at most [`SMALL_POOL`] items are evaluated with exact integer
//! binomials. Larger pools work in log space: the first tail term is built
//! from `ln_1p` products (no large-argument cancellation) and the remaining
//! terms follow from the pmf ratio recurrence, summed with compensation.

use serde::Serialize;

use crate::model::{BinomialParams, UniformParams};

/// Largest pool handled by exact integer arithmetic.
pub const SMALL_POOL: u64 = 60;

/// Tail terms below this fraction of the running sum stop the summation.
const TAIL_CUTOFF: f64 = 1e-18;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EdgeProbability {
    pub exact: f64,
    pub asymptotic: f64,
    pub abs_gap: f64,
}

impl EdgeProbability {
    pub fn uniform(params: &UniformParams) -> Self {
        Self::from_pair(
            uniform_edge_prob_exact(params.items(), params.pool(), params.s()),
            uniform_edge_prob_asymptotic(params.items() as f64, params.pool(), params.s()),
        )
    }

    pub fn binomial(params: &BinomialParams) -> Self {
        Self::from_pair(
            binomial_edge_prob_exact(params.t(), params.pool(), params.s()),
            binomial_edge_prob_asymptotic(params.t(), params.pool(), params.s()),
        )
    }

    fn from_pair(exact: f64, asymptotic: f64) -> Self {
        Self { exact, asymptotic, abs_gap: (exact - asymptotic).abs() }
    }
}

/// Neumaier-compensated running sum.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// `s!` as a float. Exact for `s <= 18`.
pub fn factorial(s: u32) -> f64 {
    (2..=s).fold(1.0, |acc, i| acc * f64::from(i))
}

fn binomial_u128(n: u64, r: u64) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        // exact: acc * (n - i) is divisible by (i + 1)
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc
}

/// `ln C(n, r)` for small `r`.
fn ln_choose_small_r(n: u64, r: u64) -> f64 {
    (0..r).map(|i| ((n - i) as f64 / (i + 1) as f64).ln()).sum()
}

/// Probability that two uniformly random `items`-subsets of a `pool`-item
/// pool share at least `s` items.
///
/// Panics unless `1 <= s <= items <= pool`.
pub fn uniform_edge_prob_exact(items: u64, pool: u64, s: u32) -> f64 {
    let s64 = u64::from(s);
    assert!(
        1 <= s64 && s64 <= items && items <= pool,
        "uniform edge probability needs 1 <= s <= K <= P (got s={s}, K={items}, P={pool})"
    );
    // overlap is at least 2K - P, so P < 2K - s forces an edge
    if pool + s64 < 2 * items {
        return 1.0;
    }
    if pool <= SMALL_POOL {
        let numerator: u128 = (s64..=items)
            .map(|r| binomial_u128(items, r) * binomial_u128(pool - items, items - r))
            .sum();
        return numerator as f64 / binomial_u128(pool, items) as f64;
    }

    let k = items as f64;
    let p = pool as f64;
    // hypergeometric pmf at overlap r, from the product form
    let ln_pmf = |r: u64| -> f64 {
        let mut acc = ln_choose_small_r(items, r);
        acc += (0..r).map(|i| ((items - i) as f64).ln()).sum::<f64>();
        acc -= (items - r..items).map(|i| ((pool - i) as f64).ln()).sum::<f64>();
        let mut tail = CompensatedSum::default();
        for j in 0..items - r {
            tail.add((-k / (pool - j) as f64).ln_1p());
        }
        acc + tail.value()
    };
    // pmf(r + 1) / pmf(r)
    let ratio = |r: u64| -> f64 {
        let a = (items - r) as f64;
        a * a / ((r + 1) as f64 * (p - 2.0 * k + (r + 1) as f64))
    };

    let mean = k * k / p;
    if (s as f64) > mean {
        let mode = ((k + 1.0) * (k + 1.0) / (p + 2.0)).floor() as u64;
        let mut term = ln_pmf(s64).exp();
        let mut sum = CompensatedSum::default();
        let mut r = s64;
        loop {
            sum.add(term);
            if r >= items || (r > mode && term < TAIL_CUTOFF * sum.value()) || term == 0.0 {
                break;
            }
            term *= ratio(r);
            r += 1;
        }
        sum.value().min(1.0)
    } else {
        // the degenerate branch guarantees 2K - P <= s, so the support may start at 0
        let lo = (2 * items).saturating_sub(pool);
        let mut lower = CompensatedSum::default();
        if lo < s64 {
            let mut term = ln_pmf(lo).exp();
            for r in lo..s64 {
                lower.add(term);
                term *= ratio(r);
            }
        }
        (1.0 - lower.value()).clamp(0.0, 1.0)
    }
}

/// `P[Binomial(pool, t^2) >= s]`: the chance two vertices of the binomial
/// model share at least `s` items.
///
/// Panics unless `0 <= t <= 1` and `1 <= s <= pool`.
pub fn binomial_edge_prob_exact(t: f64, pool: u64, s: u32) -> f64 {
    let s64 = u64::from(s);
    assert!((0.0..=1.0).contains(&t), "t must lie in [0, 1] (got {t})");
    assert!(1 <= s64 && s64 <= pool, "binomial edge probability needs 1 <= s <= P");
    let q = t * t;
    if q == 0.0 {
        return 0.0;
    }
    if q == 1.0 {
        return 1.0;
    }
    if pool <= SMALL_POOL {
        let mut sum = CompensatedSum::default();
        for r in s64..=pool {
            let c = binomial_u128(pool, r) as f64;
            sum.add(c * q.powi(r as i32) * (1.0 - q).powi((pool - r) as i32));
        }
        return sum.value().min(1.0);
    }

    let n = pool as f64;
    let log_q = q.ln();
    let log_1mq = (-q).ln_1p();
    let ln_pmf = |r: u64| ln_choose_small_r(pool, r) + r as f64 * log_q + (pool - r) as f64 * log_1mq;
    let odds = q / (1.0 - q);
    let ratio = |r: u64| (pool - r) as f64 / (r + 1) as f64 * odds;

    if (s as f64) > n * q {
        let mode = ((n + 1.0) * q).floor() as u64;
        let mut term = ln_pmf(s64).exp();
        let mut sum = CompensatedSum::default();
        let mut r = s64;
        loop {
            sum.add(term);
            if r >= pool || (r > mode && term < TAIL_CUTOFF * sum.value()) || term == 0.0 {
                break;
            }
            term *= ratio(r);
            r += 1;
        }
        sum.value().min(1.0)
    } else {
        let mut lower = CompensatedSum::default();
        for r in 0..s64 {
            lower.add(ln_pmf(r).exp());
        }
        (1.0 - lower.value()).clamp(0.0, 1.0)
    }
}

/// `(1/s!) K^{2s} / P^s`. Takes a real `K` so solver output can be plugged in
/// before rounding. Not a probability: may exceed 1.
pub fn uniform_edge_prob_asymptotic(items: f64, pool: u64, s: u32) -> f64 {
    (items * items / pool as f64).powi(s as i32) / factorial(s)
}

/// `(1/s!) t^{2s} P^s`.
pub fn binomial_edge_prob_asymptotic(t: f64, pool: u64, s: u32) -> f64 {
    (t * t * pool as f64).powi(s as i32) / factorial(s)
}
