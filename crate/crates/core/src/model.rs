//! Validated parameter containers for the uniform and binomial models.
//!
//! Validation never clamps: a tuple either satisfies every invariant or is
//! rejected with the first inequality it breaks.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper bound applied to `s` and `k` unless a caller picks another one.
pub const DEFAULT_MAX_THRESHOLD: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Uniform,
    Binomial,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Uniform => "uniform",
            ModelKind::Binomial => "binomial",
        })
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(ModelKind::Uniform),
            "binomial" => Ok(ModelKind::Binomial),
            other => Err(Error::Parse(format!("unknown model '{other}'"))),
        }
    }
}

/// Parameters `(n, K, P, s)` of the uniform model: every vertex holds a
/// uniformly random `K`-subset of a pool of `P` items.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct UniformParams {
    n: u64,
    items: u64,
    pool: u64,
    s: u32,
}

impl UniformParams {
    pub fn new(n: u64, items: u64, pool: u64, s: u32) -> Result<Self> {
        Self::with_cap(n, items, pool, s, DEFAULT_MAX_THRESHOLD)
    }

    pub fn with_cap(n: u64, items: u64, pool: u64, s: u32, max_s: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::ConstraintViolated("n >= 1".into()));
        }
        if s < 1 {
            return Err(Error::ConstraintViolated("1 <= s".into()));
        }
        if s > max_s {
            return Err(Error::ConstraintViolated(format!("s <= {max_s} (threshold cap)")));
        }
        if u64::from(s) > items {
            return Err(Error::ConstraintViolated("s <= K".into()));
        }
        if items > pool {
            return Err(Error::ConstraintViolated("K <= P".into()));
        }
        Ok(Self { n, items, pool, s })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// `K`, the number of items held by each vertex.
    pub fn items(&self) -> u64 {
        self.items
    }

    /// `P`, the pool size.
    pub fn pool(&self) -> u64 {
        self.pool
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// Same parameters with a different `K`.
    pub fn with_items(&self, items: u64) -> Result<Self> {
        Self::new(self.n, items, self.pool, self.s)
    }
}

/// Parameters `(n, t, P, s)` of the binomial model: each of `P` items is
/// given to each vertex independently with probability `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BinomialParams {
    n: u64,
    t: f64,
    pool: u64,
    s: u32,
}

impl BinomialParams {
    pub fn new(n: u64, t: f64, pool: u64, s: u32) -> Result<Self> {
        Self::with_cap(n, t, pool, s, DEFAULT_MAX_THRESHOLD)
    }

    pub fn with_cap(n: u64, t: f64, pool: u64, s: u32, max_s: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::ConstraintViolated("n >= 1".into()));
        }
        if t.is_nan() || t < 0.0 {
            return Err(Error::ConstraintViolated("0 <= t".into()));
        }
        if t > 1.0 {
            return Err(Error::ConstraintViolated("t <= 1".into()));
        }
        if s < 1 {
            return Err(Error::ConstraintViolated("1 <= s".into()));
        }
        if s > max_s {
            return Err(Error::ConstraintViolated(format!("s <= {max_s} (threshold cap)")));
        }
        if u64::from(s) > pool {
            return Err(Error::ConstraintViolated("s <= P".into()));
        }
        Ok(Self { n, t, pool, s })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn pool(&self) -> u64 {
        self.pool
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn with_t(&self, t: f64) -> Result<Self> {
        Self::new(self.n, t, self.pool, self.s)
    }
}

/// The connectivity / degree level `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PropertyTarget(u32);

impl PropertyTarget {
    pub fn new(k: u32) -> Result<Self> {
        Self::with_cap(k, DEFAULT_MAX_THRESHOLD)
    }

    pub fn with_cap(k: u32, max_k: u32) -> Result<Self> {
        if k < 1 {
            return Err(Error::ConstraintViolated("k >= 1".into()));
        }
        if k > max_k {
            return Err(Error::ConstraintViolated(format!("k <= {max_k} (level cap)")));
        }
        Ok(Self(k))
    }

    pub fn get(&self) -> u32 {
        self.0
    }
}

pub fn validate_uniform(n: u64, items: u64, pool: u64, s: u32) -> Result<UniformParams> {
    UniformParams::new(n, items, pool, s)
}

pub fn validate_binomial(n: u64, t: f64, pool: u64, s: u32) -> Result<BinomialParams> {
    BinomialParams::new(n, t, pool, s)
}
