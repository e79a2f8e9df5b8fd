//! Self-maps of the standard simplex that send every face into itself,
//! used as fixtures for [`lemma_a_probe`](super::lemma_a_probe).
//!
//! Each map only shrinks supports: `support(φ(x)) ⊆ support(x)`.

use super::{chord_vector, radial_project, Barycentric, OrderedTuple};
use crate::curve::{make_builtin_curve, ChordEvaluator, SemiMetric};
use crate::fixtures::random_open_polyline;

pub type FaceMap = Box<dyn Fn(&Barycentric) -> Barycentric + Send + Sync>;

pub fn identity() -> FaceMap {
    Box::new(|x| x.clone())
}

/// `x ↦ G(x₁^p, …, x_N^p)` for `p > 0`.
pub fn power(p: f64) -> FaceMap {
    assert!(p > 0.0);
    Box::new(move |x| {
        let y: Vec<f64> = x.coords().iter().map(|a| a.powf(p)).collect();
        radial_project(&y).expect("support is nonempty")
    })
}

/// Convex combination `(1 − s)·x + s·c(x)` where `c(x)` is the barycentre of
/// the minimal face containing `x`.
pub fn pull_to_face_center(s: f64) -> FaceMap {
    assert!((0.0..=1.0).contains(&s));
    Box::new(move |x| {
        let support = x.support();
        let w = 1.0 / support.len() as f64;
        let mut y: Vec<f64> = x.coords().iter().map(|a| (1.0 - s) * a).collect();
        for i in support {
            y[i] += s * w;
        }
        radial_project(&y).expect("support is nonempty")
    })
}

/// `y ↦ G(F(t(y)))`: read `y` as breakpoint gaps, build the ordered tuple and
/// project its chord vector. A zero gap forces a zero chord, so faces are
/// respected. Falls back to the identity where the chord vector vanishes.
pub fn chord_map(ev: ChordEvaluator) -> FaceMap {
    Box::new(move |y| {
        let t = OrderedTuple::from_gaps(y.coords()).expect("barycentric gaps");
        radial_project(&chord_vector(&ev, &t)).unwrap_or_else(|_| y.clone())
    })
}

/// The fixture family used by tests and the CLI `lemma-demo` command.
pub fn fixture_family() -> Vec<(&'static str, FaceMap)> {
    let polyline = ChordEvaluator::new(random_open_polyline(0, 8, 2), SemiMetric::euclidean())
        .expect("euclidean accepts any dimension");
    let arc = ChordEvaluator::new(
        make_builtin_curve("circle(1,0.75)").expect("valid spec"),
        SemiMetric::parse("squared_euclidean").expect("catalog metric"),
    )
    .expect("euclidean accepts any dimension");
    vec![
        ("identity", identity()),
        ("power(2)", power(2.0)),
        ("power(0.5)", power(0.5)),
        ("pull_to_face_center(0.5)", pull_to_face_center(0.5)),
        ("chord_map(random polyline, euclidean)", chord_map(polyline)),
        (
            "chord_map(circle(1,0.75), squared_euclidean)",
            chord_map(arc),
        ),
    ]
}
