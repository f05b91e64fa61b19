use super::{RngStream, SearchSpace};
use crate::error::{Error, Result};

pub fn euclidean_distance(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::contract(format!("distance between vectors of length {} and {}", a.len(), b.len())));
    }
    Ok(dist(a, b))
}

#[inline]
pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// The `k` members closest to `points[subject]`, nearest first.
///
/// The subject itself is excluded and `k` is clamped to `len - 1`. Equal
/// distances are ordered by ascending index.
pub fn k_nearest<P: AsRef<[f64]>>(points: &[P], subject: usize, k: usize) -> Result<Vec<(usize, f64)>> {
    if points.len() < 2 {
        return Err(Error::EmptyNeighbourhood(points.len()));
    }
    if subject >= points.len() {
        return Err(Error::contract(format!(
            "subject index {subject} out of range for population of {}",
            points.len()
        )));
    }
    let origin = points[subject].as_ref();
    let mut out: Vec<(usize, f64)> =
        points.iter().enumerate().filter(|&(i, _)| i != subject).map(|(i, p)| (i, dist(origin, p.as_ref()))).collect();
    out.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
    out.truncate(k.min(points.len() - 1));
    Ok(out)
}

/// Resamples every out-of-bounds coordinate uniformly from `[lb, ub]`;
/// in-bounds coordinates are left untouched. Returns how many were resampled.
///
/// One uniform draw is consumed per violating coordinate, in index order.
pub fn repair_in_place(position: &mut [f64], space: &SearchSpace, rng: &mut RngStream) -> usize {
    let mut repaired = 0;
    for x in position.iter_mut() {
        if !space.contains_coord(*x) {
            *x = rng.uniform(space.lb(), space.ub());
            repaired += 1;
        }
    }
    repaired
}

pub fn repair_bounds(position: &[f64], space: &SearchSpace, rng: &mut RngStream) -> Result<Vec<f64>> {
    if position.len() != space.dim() {
        return Err(Error::contract(format!(
            "position has {} coordinates, search space has {}",
            position.len(),
            space.dim()
        )));
    }
    let mut out = position.to_vec();
    repair_in_place(&mut out, space, rng);
    Ok(out)
}
