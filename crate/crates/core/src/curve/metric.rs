use std::fmt;

use crate::error::{Error, Result};

/// Catalog of semi-metrics on Rⁿ. All of them vanish on the diagonal and are
/// continuous; `SquaredEuclidean` breaks the triangle inequality and
/// `AsymmetricScaled` breaks symmetry.
#[derive(Debug, Clone, PartialEq)]
pub enum MetricKind {
    Euclidean,
    L1,
    Linf,
    SquaredEuclidean,
    /// `sqrt(Σ w_k (x_k − y_k)²)` with every `w_k > 0`.
    WeightedEuclidean(Vec<f64>),
    /// `base(x,y) · (1 + (forward − 1)·ρ)` where
    /// `ρ = max(0, y₁ − x₁) / ‖y − x‖∞ ∈ [0,1]` measures how much the step from
    /// `x` to `y` moves forward along the first axis. A pure forward step is
    /// scaled by `forward`, a backward step is not scaled at all.
    AsymmetricScaled {
        base: Box<MetricKind>,
        forward: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SemiMetric {
    kind: MetricKind,
    scale: f64,
}

impl From<MetricKind> for SemiMetric {
    fn from(kind: MetricKind) -> Self {
        SemiMetric { kind, scale: 1.0 }
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricKind::Euclidean => f.write_str("euclidean"),
            MetricKind::L1 => f.write_str("l1"),
            MetricKind::Linf => f.write_str("linf"),
            MetricKind::SquaredEuclidean => f.write_str("squared_euclidean"),
            MetricKind::WeightedEuclidean(w) => {
                let w: Vec<String> = w.iter().map(|x| x.to_string()).collect();
                write!(f, "weighted_euclidean:{}", w.join(","))
            }
            MetricKind::AsymmetricScaled { base, forward } => {
                write!(f, "asymmetric_scaled:{base},{forward}")
            }
        }
    }
}

pub const METRIC_CATALOG: &str = "euclidean, l1, linf, squared_euclidean, \
weighted_euclidean:w1,…,wn, asymmetric_scaled:<base>,<forward factor>";

impl SemiMetric {
    pub fn new(kind: MetricKind) -> Result<Self> {
        validate(&kind)?;
        Ok(kind.into())
    }

    pub fn euclidean() -> Self {
        MetricKind::Euclidean.into()
    }

    /// Parses `name[:params]`, e.g. `weighted_euclidean:1,4` or
    /// `asymmetric_scaled:l1,2.5`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, params) = match s.split_once(':') {
            Some((n, p)) => (n.trim(), Some(p.trim())),
            None => (s, None),
        };
        let numbers = |p: &str| -> Result<Vec<f64>> {
            p.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::parse(x.trim(), "invalid metric parameter"))
                })
                .collect()
        };
        let simple = |name: &str| match name {
            "euclidean" => Some(MetricKind::Euclidean),
            "l1" => Some(MetricKind::L1),
            "linf" => Some(MetricKind::Linf),
            "squared_euclidean" => Some(MetricKind::SquaredEuclidean),
            _ => None,
        };
        let kind = match (name, params) {
            (n, None) if simple(n).is_some() => simple(n).unwrap(),
            ("weighted_euclidean", Some(p)) => MetricKind::WeightedEuclidean(numbers(p)?),
            ("asymmetric_scaled", Some(p)) => {
                let (base, forward) = p
                    .rsplit_once(',')
                    .ok_or_else(|| Error::parse(p, "expected `<base>,<forward factor>`"))?;
                let base = SemiMetric::parse(base)?.kind;
                let forward = forward
                    .trim()
                    .parse::<f64>()
                    .map_err(|_| Error::parse(forward.trim(), "invalid forward factor"))?;
                MetricKind::AsymmetricScaled {
                    base: Box::new(base),
                    forward,
                }
            }
            _ => {
                return Err(Error::parse(
                    s,
                    format!("unknown metric; the catalog is: {METRIC_CATALOG}"),
                ))
            }
        };
        SemiMetric::new(kind)
    }

    pub fn kind(&self) -> &MetricKind {
        &self.kind
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// `λ·d` for `λ > 0`.
    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::domain("metric scale must be positive and finite"));
        }
        Ok(SemiMetric {
            kind: self.kind.clone(),
            scale: self.scale * lambda,
        })
    }

    pub fn is_symmetric(&self) -> bool {
        !matches!(self.kind, MetricKind::AsymmetricScaled { .. })
    }

    /// Ambient dimension required by the metric, if it fixes one.
    pub fn required_dim(&self) -> Option<usize> {
        fn go(k: &MetricKind) -> Option<usize> {
            match k {
                MetricKind::WeightedEuclidean(w) => Some(w.len()),
                MetricKind::AsymmetricScaled { base, .. } => go(base),
                _ => None,
            }
        }
        go(&self.kind)
    }

    pub fn distance(&self, x: &[f64], y: &[f64]) -> f64 {
        let d = raw_distance(&self.kind, x, y);
        if self.scale == 1.0 {
            d
        } else {
            self.scale * d
        }
    }

    /// Constant `K` with `|d(x', y) − d(x, y)| ≤ K·‖x' − x‖₂` (and likewise in
    /// the second argument) for points within `diameter` of each other.
    /// `SquaredEuclidean` only has the local bound `2·diameter`.
    pub fn lipschitz_factor(&self, dim: usize, diameter: f64) -> f64 {
        self.scale * lipschitz(&self.kind, dim, diameter)
    }
}

fn validate(kind: &MetricKind) -> Result<()> {
    match kind {
        MetricKind::WeightedEuclidean(w) => {
            if w.is_empty() || w.iter().any(|x| !(*x > 0.0 && x.is_finite())) {
                return Err(Error::parse(
                    kind.to_string(),
                    "axis weights must be positive and finite",
                ));
            }
        }
        MetricKind::AsymmetricScaled { base, forward } => {
            if !(*forward > 0.0 && forward.is_finite()) {
                return Err(Error::parse(
                    forward.to_string(),
                    "forward factor must be positive",
                ));
            }
            if matches!(**base, MetricKind::AsymmetricScaled { .. }) {
                return Err(Error::parse(
                    kind.to_string(),
                    "base metric must be symmetric",
                ));
            }
            validate(base)?;
        }
        _ => {}
    }
    Ok(())
}

fn raw_distance(kind: &MetricKind, x: &[f64], y: &[f64]) -> f64 {
    let diffs = x.iter().zip(y).map(|(a, b)| a - b);
    match kind {
        MetricKind::Euclidean => diffs.map(|d| d * d).sum::<f64>().sqrt(),
        MetricKind::L1 => diffs.map(f64::abs).sum(),
        MetricKind::Linf => diffs.map(f64::abs).fold(0.0, f64::max),
        MetricKind::SquaredEuclidean => diffs.map(|d| d * d).sum(),
        MetricKind::WeightedEuclidean(w) => {
            diffs.zip(w).map(|(d, w)| w * d * d).sum::<f64>().sqrt()
        }
        MetricKind::AsymmetricScaled { base, forward } => {
            let b = raw_distance(base, x, y);
            if b == 0.0 {
                return 0.0;
            }
            let sup = x
                .iter()
                .zip(y)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            let rho = ((y[0] - x[0]).max(0.0) / sup).min(1.0);
            b * (1.0 + (forward - 1.0) * rho)
        }
    }
}

fn lipschitz(kind: &MetricKind, dim: usize, diameter: f64) -> f64 {
    let n = dim as f64;
    match kind {
        MetricKind::Euclidean | MetricKind::Linf => 1.0,
        MetricKind::L1 => n.sqrt(),
        MetricKind::SquaredEuclidean => 2.0 * diameter,
        MetricKind::WeightedEuclidean(w) => w.iter().cloned().fold(0.0, f64::max).sqrt(),
        MetricKind::AsymmetricScaled { base, forward } => {
            // ∇[b·(1 + (β−1)ρ)] = (1 + (β−1)ρ)∇b + (β−1)·b·∇ρ, |∇ρ| ≤ √2/‖v‖∞
            let sup_ratio = match &**base {
                MetricKind::Euclidean => n.sqrt(),
                MetricKind::L1 => n,
                MetricKind::Linf => 1.0,
                MetricKind::SquaredEuclidean => n * diameter,
                MetricKind::WeightedEuclidean(w) => w.iter().sum::<f64>().sqrt(),
                MetricKind::AsymmetricScaled { .. } => unreachable!("rejected by validate"),
            };
            lipschitz(base, dim, diameter) * forward.max(1.0)
                + (forward - 1.0).abs() * 2f64.sqrt() * sup_ratio
        }
    }
}
