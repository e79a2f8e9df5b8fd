use super::{check_unit, Curve, SemiMetric};
use crate::error::{Error, Result};

/// The chord function `D(s, t) = d(Γ(s), Γ(t))` of a curve under a
/// semi-metric. Immutable and `Sync`; shared freely across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct ChordEvaluator {
    curve: Curve,
    metric: SemiMetric,
}

impl ChordEvaluator {
    pub fn new(curve: Curve, metric: SemiMetric) -> Result<Self> {
        if let Some(d) = metric.required_dim() {
            if d != curve.dim() {
                return Err(Error::domain(format!(
                    "metric expects dimension {d}, curve has dimension {}",
                    curve.dim()
                )));
            }
        }
        Ok(ChordEvaluator { curve, metric })
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn metric(&self) -> &SemiMetric {
        &self.metric
    }

    pub fn chord(&self, s: f64, t: f64) -> Result<f64> {
        check_unit(s)?;
        check_unit(t)?;
        Ok(self.chord_unchecked(s, t))
    }

    /// [`chord`](Self::chord) without the domain check, for callers that
    /// generate parameters in `[0,1]` themselves.
    pub fn chord_unchecked(&self, s: f64, t: f64) -> f64 {
        if s == t {
            return 0.0;
        }
        let dim = self.curve.dim();
        let mut buf = [0.0f64; 8];
        if dim <= 4 {
            let (a, b) = buf.split_at_mut(4);
            let (a, b) = (&mut a[..dim], &mut b[..dim]);
            self.curve.eval_into(s, a);
            self.curve.eval_into(t, b);
            self.metric.distance(a, b)
        } else {
            let mut a = vec![0.0; dim];
            let mut b = vec![0.0; dim];
            self.curve.eval_into(s, &mut a);
            self.curve.eval_into(t, &mut b);
            self.metric.distance(&a, &b)
        }
    }

    /// Bound `L` with `|D(s', t) − D(s, t)| ≤ L·|s' − s|`: curve speed bound
    /// times the metric's Lipschitz factor over the curve's diameter.
    pub fn lipschitz_bound(&self) -> f64 {
        self.curve.speed_bound()
            * self
                .metric
                .lipschitz_factor(self.curve.dim(), self.curve.diameter_bound())
    }

    /// The same problem on the reversed curve `Γ(1 − t)`.
    pub fn reversed(&self) -> ChordEvaluator {
        ChordEvaluator {
            curve: self.curve.reversed(),
            metric: self.metric.clone(),
        }
    }

    pub fn with_metric(&self, metric: SemiMetric) -> Result<ChordEvaluator> {
        ChordEvaluator::new(self.curve.clone(), metric)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::make_builtin_curve;

    fn ev(curve: &str, metric: &str) -> ChordEvaluator {
        ChordEvaluator::new(
            make_builtin_curve(curve).unwrap(),
            SemiMetric::parse(metric).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn chord_examples() {
        let e = ev("segment((0,0),(1,0))", "euclidean");
        assert_eq!(e.chord(0.3, 0.3).unwrap(), 0.0);
        assert_eq!(e.chord(0.0, 1.0).unwrap(), 1.0);
        let sq = ev("segment((0,0),(1,0))", "squared_euclidean");
        assert_eq!(sq.chord(0.0, 0.5).unwrap(), 0.25);
        assert!(matches!(e.chord(0.0, 1.1), Err(Error::Domain(_))));
    }

    #[test]
    fn metric_dimension_must_match() {
        let c = make_builtin_curve("segment((0,0),(1,0))").unwrap();
        assert!(
            ChordEvaluator::new(c, SemiMetric::parse("weighted_euclidean:1,2,3").unwrap()).is_err()
        );
    }

    #[test]
    fn high_dimensional_curves_use_heap_buffers() {
        let e = ev("segment((0,0,0,0,0),(1,1,1,1,1))", "l1");
        assert!((e.chord(0.0, 1.0).unwrap() - 5.0).abs() < 1e-15);
    }
}
