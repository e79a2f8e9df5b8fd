//! Curves in Rⁿ, semi-metrics on Rⁿ, and the chord function `D(s, t)`.

mod builtin;
mod chord;
mod io;
mod metric;

pub use builtin::{make_builtin_curve, Family};
pub use chord::ChordEvaluator;
pub use io::{parse_polyline_csv, parse_polyline_json, read_polyline, PolylineFile};
pub use metric::{MetricKind, SemiMetric};

use crate::error::{Error, Result};

/// A point of Rⁿ with finite coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::domain("a point needs at least one coordinate"));
        }
        if let Some(i) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::domain(format!("coordinate {i} is not finite")));
        }
        Ok(Point { coords })
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

/// Piecewise-linear curve through samples `(u_j, p_j)` with `u_0 = 0`,
/// `u_last = 1` and strictly increasing parameters. Interpolation is linear in
/// the stored parameter, not in arc length.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    params: Vec<f64>,
    points: Vec<Point>,
}

impl Polyline {
    /// Builds a polyline. Without `params` the samples are spread uniformly.
    pub fn new(points: Vec<Point>, params: Option<Vec<f64>>) -> Result<Self> {
        let m = points.len();
        if m < 2 {
            return Err(Error::domain("a polyline needs at least 2 samples"));
        }
        let dim = points[0].dim();
        if let Some(j) = points.iter().position(|p| p.dim() != dim) {
            return Err(Error::domain(format!(
                "sample {j} has {} coordinates, expected {dim}",
                points[j].dim()
            )));
        }
        let params = match params {
            Some(u) => {
                if u.len() != m {
                    return Err(Error::domain(format!(
                        "{} parameters for {m} samples",
                        u.len()
                    )));
                }
                if u[0] != 0.0 || u[m - 1] != 1.0 {
                    return Err(Error::domain("parameters must start at 0 and end at 1"));
                }
                if let Some(j) = u.windows(2).position(|w| !(w[0] < w[1])) {
                    return Err(Error::domain(format!(
                        "parameters must be strictly increasing (index {})",
                        j + 1
                    )));
                }
                u
            }
            None => uniform_params(m),
        };
        Ok(Polyline { params, points })
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    fn eval_into(&self, t: f64, out: &mut [f64]) {
        let last = self.params.len() - 1;
        // index of the last knot <= t
        let j = self
            .params
            .partition_point(|&u| u <= t)
            .saturating_sub(1)
            .min(last);
        let u0 = self.params[j];
        let a = self.points[j].coords();
        if t == u0 || j == last {
            out.copy_from_slice(a);
            return;
        }
        let b = self.points[j + 1].coords();
        let w = (t - u0) / (self.params[j + 1] - u0);
        for ((o, &x), &y) in out.iter_mut().zip(a).zip(b) {
            *o = x + w * (y - x);
        }
    }

    /// The same point set traversed as `Γ(1 − t)`.
    pub fn reversed(&self) -> Polyline {
        let params = self.params.iter().rev().map(|u| 1.0 - u).collect();
        let points = self.points.iter().rev().cloned().collect();
        Polyline { params, points }
    }

    fn speed_bound(&self) -> f64 {
        self.params
            .windows(2)
            .zip(self.points.windows(2))
            .map(|(u, p)| euclid(p[0].coords(), p[1].coords()) / (u[1] - u[0]))
            .fold(0.0, f64::max)
    }

    fn diameter_bound(&self) -> f64 {
        let dim = self.dim();
        let (mut lo, mut hi) = (vec![f64::INFINITY; dim], vec![f64::NEG_INFINITY; dim]);
        for p in &self.points {
            for (k, &c) in p.coords().iter().enumerate() {
                lo[k] = lo[k].min(c);
                hi[k] = hi[k].max(c);
            }
        }
        euclid(&lo, &hi)
    }
}

pub(crate) fn uniform_params(m: usize) -> Vec<f64> {
    let last = (m - 1) as f64;
    (0..m).map(|j| j as f64 / last).collect()
}

pub(crate) fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

#[derive(Debug, Clone, PartialEq)]
pub enum CurveForm {
    Polyline(Polyline),
    Builtin(builtin::Builtin),
}

/// A continuous map `[0,1] → Rⁿ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    dim: usize,
    form: CurveForm,
}

impl From<Polyline> for Curve {
    fn from(p: Polyline) -> Self {
        Curve {
            dim: p.dim(),
            form: CurveForm::Polyline(p),
        }
    }
}

impl Curve {
    pub fn polyline(points: Vec<Point>, params: Option<Vec<f64>>) -> Result<Self> {
        Polyline::new(points, params).map(Curve::from)
    }

    pub fn builtin(family: Family) -> Result<Self> {
        family.validate()?;
        Ok(Curve {
            dim: family.dim(),
            form: CurveForm::Builtin(builtin::Builtin::new(family)),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn form(&self) -> &CurveForm {
        &self.form
    }

    pub fn eval(&self, t: f64) -> Result<Point> {
        check_unit(t)?;
        let mut out = vec![0.0; self.dim];
        self.eval_into(t, &mut out);
        Ok(Point { coords: out })
    }

    /// Evaluation without the domain check; `out.len()` must equal `dim`.
    pub(crate) fn eval_into(&self, t: f64, out: &mut [f64]) {
        match &self.form {
            CurveForm::Polyline(p) => p.eval_into(t, out),
            CurveForm::Builtin(b) => b.eval_into(t, out),
        }
    }

    pub fn reversed(&self) -> Curve {
        let form = match &self.form {
            CurveForm::Polyline(p) => CurveForm::Polyline(p.reversed()),
            CurveForm::Builtin(b) => CurveForm::Builtin(b.reversed()),
        };
        Curve {
            dim: self.dim,
            form,
        }
    }

    /// Samples the curve at `m` uniform parameters and returns the polyline
    /// through those samples.
    pub fn sample(&self, m: usize) -> Result<Curve> {
        if m < 2 {
            return Err(Error::domain("sampling needs at least 2 points"));
        }
        let points = uniform_params(m)
            .into_iter()
            .map(|u| self.eval(u))
            .collect::<Result<Vec<_>>>()?;
        Curve::polyline(points, None)
    }

    /// Upper bound on `‖Γ'(t)‖₂` (largest slope for polylines).
    pub fn speed_bound(&self) -> f64 {
        match &self.form {
            CurveForm::Polyline(p) => p.speed_bound(),
            CurveForm::Builtin(b) => b.family().speed_bound(),
        }
    }

    /// Upper bound on `‖Γ(s) − Γ(t)‖₂`.
    pub fn diameter_bound(&self) -> f64 {
        match &self.form {
            CurveForm::Polyline(p) => p.diameter_bound(),
            CurveForm::Builtin(b) => b.family().diameter_bound(),
        }
    }
}

pub(crate) fn check_unit(t: f64) -> Result<()> {
    if (0.0..=1.0).contains(&t) {
        Ok(())
    } else {
        Err(Error::domain(format!("parameter {t} outside [0, 1]")))
    }
}
