//! Seeded problem generators.
//!
//! `random_open_polyline(seed, segments, dim)` draws `segments + 1` vertices
//! uniformly from `[0,1]^dim` with a ChaCha8 stream seeded by `seed`, places
//! them at uniform parameters, and redraws the last vertex until it is at
//! least `0.05` away from the first, so the curve is open.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curve::{euclid, Curve, Point};
use crate::solver::Weights;

const MIN_END_GAP: f64 = 0.05;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_open_polyline(seed: u64, segments: usize, dim: usize) -> Curve {
    assert!(segments >= 1 && dim >= 1);
    let mut rng = rng(seed);
    let draw =
        |rng: &mut ChaCha8Rng| -> Vec<f64> { (0..dim).map(|_| rng.random::<f64>()).collect() };
    let mut coords: Vec<Vec<f64>> = (0..=segments).map(|_| draw(&mut rng)).collect();
    while euclid(&coords[0], &coords[segments]) < MIN_END_GAP {
        coords[segments] = draw(&mut rng);
    }
    let points = coords
        .into_iter()
        .map(|c| Point::new(c).expect("finite"))
        .collect();
    Curve::polyline(points, None).expect("valid polyline")
}

/// Positive weights with ratios in `[1, 4)`, normalised.
pub fn random_weights(rng: &mut impl Rng, n: usize) -> Weights {
    let raw: Vec<f64> = (0..n).map(|_| rng.random_range(1.0..4.0)).collect();
    Weights::normalized(&raw).expect("positive weights")
}

/// Two loops through the origin: `Γ(0) = Γ(1/2) = Γ(1) = (0,0)`, with no
/// other self-intersection.
pub fn figure_eight() -> Curve {
    let verts = [
        [0.0, 0.0],
        [1.0, 1.0],
        [2.0, 0.0],
        [1.0, -1.0],
        [0.0, 0.0],
        [-1.0, 1.0],
        [-2.0, 0.0],
        [-1.0, -1.0],
        [0.0, 0.0],
    ];
    let points = verts
        .iter()
        .map(|v| Point::new(v.to_vec()).unwrap())
        .collect();
    Curve::polyline(points, None).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_polylines_are_open_and_reproducible() {
        for seed in 0..50 {
            let c = random_open_polyline(seed, 16, 2);
            let a = c.eval(0.0).unwrap();
            let b = c.eval(1.0).unwrap();
            assert!(euclid(a.coords(), b.coords()) >= MIN_END_GAP);
            assert_eq!(c, random_open_polyline(seed, 16, 2));
        }
    }

    #[test]
    fn figure_eight_coincidences() {
        let c = figure_eight();
        let o = [0.0, 0.0];
        for t in [0.0, 0.5, 1.0] {
            assert_eq!(c.eval(t).unwrap().coords(), &o);
        }
    }
}
