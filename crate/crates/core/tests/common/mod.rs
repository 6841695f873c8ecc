#![allow(dead_code)]

use proptest::prelude::*;

/// Distance from `x` to the affine hull of `points`, by modified Gram–Schmidt on the
/// differences to the first point. Written independently of the library solvers.
pub fn hull_distance(x: &[f64], points: &[Vec<f64>]) -> f64 {
    let base = &points[0];
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for p in &points[1..] {
        let mut v: Vec<f64> = p.iter().zip(base).map(|(a, b)| a - b).collect();
        let scale = v.iter().map(|t| t * t).sum::<f64>().sqrt();
        for _ in 0..2 {
            for u in &basis {
                let c: f64 = v.iter().zip(u).map(|(a, b)| a * b).sum();
                v.iter_mut().zip(u).for_each(|(a, b)| *a -= c * b);
            }
        }
        let n = v.iter().map(|t| t * t).sum::<f64>().sqrt();
        if n > 1e-10 * scale.max(1.0) {
            basis.push(v.into_iter().map(|t| t / n).collect());
        }
    }
    let mut r: Vec<f64> = x.iter().zip(base).map(|(a, b)| a - b).collect();
    for _ in 0..2 {
        for u in &basis {
            let c: f64 = r.iter().zip(u).map(|(a, b)| a * b).sum();
            r.iter_mut().zip(u).for_each(|(a, b)| *a -= c * b);
        }
    }
    r.iter().map(|t| t * t).sum::<f64>().sqrt()
}

pub fn norm(x: &[f64]) -> f64 {
    x.iter().map(|t| t * t).sum::<f64>().sqrt()
}

/// `(points, query)` with `points` holding `n` vectors of dimension `q`.
pub fn instance(
    q: std::ops::RangeInclusive<usize>,
    n: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = (Vec<Vec<f64>>, Vec<f64>)> {
    (q, n).prop_flat_map(|(q, n)| {
        (
            prop::collection::vec(prop::collection::vec(-10.0..10.0f64, q), n),
            prop::collection::vec(-10.0..10.0f64, q),
        )
    })
}
