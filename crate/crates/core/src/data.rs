//! Feature vectors, datasets and the mapping between the integer gamut
//! `0..=l_max` and the unit interval.

use std::ops::Deref;

use crate::error::{check_dim, Error, Result};

/// A point in condition space: one pixel across all bands.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector(Vec<f64>);

impl FeatureVector {
    pub fn new(coords: Vec<f64>) -> Self {
        FeatureVector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        FeatureVector(vec![0.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for FeatureVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl From<Vec<f64>> for FeatureVector {
    fn from(v: Vec<f64>) -> Self {
        FeatureVector(v)
    }
}

impl<const N: usize> From<[f64; N]> for FeatureVector {
    fn from(v: [f64; N]) -> Self {
        FeatureVector(v.to_vec())
    }
}

/// Training data: normalized feature vectors that share one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    points: Vec<FeatureVector>,
    dim: usize,
    l_max: u32,
}

impl Dataset {
    pub fn new(points: Vec<FeatureVector>, dim: usize, l_max: u32) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dim", "must be positive"));
        }
        if l_max == 0 {
            return Err(Error::invalid("l_max", "must be positive"));
        }
        for p in &points {
            check_dim(dim, p.dim())?;
        }
        Ok(Dataset { points, dim, l_max })
    }

    /// Builds a dataset from raw integer samples, normalizing each one.
    pub fn from_raw<'a, I>(raw: I, dim: usize, l_max: u32) -> Result<Self>
    where
        I: IntoIterator<Item = &'a [u16]>,
    {
        let points = raw
            .into_iter()
            .map(|r| normalize(r, l_max))
            .collect::<Result<Vec<_>>>()?;
        Dataset::new(points, dim, l_max)
    }

    pub fn points(&self) -> &[FeatureVector] {
        &self.points
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn l_max(&self) -> u32 {
        self.l_max
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn get(&self, i: usize) -> &FeatureVector {
        &self.points[i]
    }

    /// Componentwise mean of all points.
    pub fn mean(&self) -> Result<FeatureVector> {
        if self.is_empty() {
            return Err(Error::EmptyDataset);
        }
        let mut acc = vec![0.0; self.dim];
        for p in &self.points {
            for (a, v) in acc.iter_mut().zip(p.iter()) {
                *a += v;
            }
        }
        let n = self.len() as f64;
        acc.iter_mut().for_each(|a| *a /= n);
        Ok(FeatureVector(acc))
    }

    pub(crate) fn require_non_empty(&self) -> Result<()> {
        if self.is_empty() {
            Err(Error::EmptyDataset)
        } else {
            Ok(())
        }
    }
}

/// Euclidean distance between two equally sized vectors.
pub fn euclidean_distance(a: &[f64], b: &[f64]) -> Result<f64> {
    check_dim(a.len(), b.len())?;
    Ok(squared_distance(a, b).sqrt())
}

/// Squared Euclidean distance. Callers guarantee equal lengths.
pub(crate) fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Maps raw gamut values `0..=l_max` onto `[0, 1]`.
pub fn normalize(raw: &[u16], l_max: u32) -> Result<FeatureVector> {
    if l_max == 0 {
        return Err(Error::invalid("l_max", "must be positive"));
    }
    let scale = l_max as f64;
    raw.iter()
        .map(|&v| {
            if v as u32 > l_max {
                Err(Error::OutOfRange {
                    value: v as u32,
                    l_max,
                })
            } else {
                Ok(v as f64 / scale)
            }
        })
        .collect::<Result<Vec<_>>>()
        .map(FeatureVector)
}

/// Maps a unit-interval coordinate back to the gamut, rounding half away from
/// zero and saturating at the gamut ends.
pub fn denormalize_value(x: f64, l_max: u32) -> u16 {
    let v = (x * l_max as f64).round();
    v.clamp(0.0, l_max as f64) as u16
}

pub fn denormalize(v: &[f64], l_max: u32) -> Vec<u16> {
    v.iter().map(|&x| denormalize_value(x, l_max)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn distance_identity_and_pythagoras() {
        assert_eq!(euclidean_distance(&[0.0; 3], &[0.0; 3]).unwrap(), 0.0);
        let d = euclidean_distance(&[0.0, 0.0], &[3.0 / 255.0, 4.0 / 255.0]).unwrap();
        assert!((d - 5.0 / 255.0).abs() < 1e-15);
        assert!((d - 0.019608).abs() < 1e-6);
    }

    #[test]
    fn distance_matches_coordinate_sum() {
        // (0.1)^2 + (-0.2)^2 + (0.4)^2 = 0.21
        let d = euclidean_distance(&[0.2, 0.5, 0.9], &[0.1, 0.7, 0.5]).unwrap();
        let mut acc = 0.0f64;
        for (a, b) in [(0.2f64, 0.1f64), (0.5, 0.7), (0.9, 0.5)] {
            acc += (a - b).powi(2);
        }
        assert_eq!(d, acc.sqrt());
        assert!((d - 0.21f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn distance_rejects_mismatch() {
        assert!(matches!(
            euclidean_distance(&[0.0], &[0.0, 1.0]),
            Err(Error::DimensionMismatch { expected: 1, found: 2 })
        ));
    }

    #[test]
    fn normalize_endpoints_and_fifth() {
        assert_eq!(normalize(&[0, 255, 255], 255).unwrap().as_slice(), &[0.0, 1.0, 1.0]);
        assert_eq!(normalize(&[51], 255).unwrap().as_slice(), &[0.2]);
        assert!(matches!(normalize(&[256], 255), Err(Error::OutOfRange { .. })));
        assert!(normalize(&[0], 0).is_err());
    }

    #[test]
    fn normalize_round_trips_every_byte() {
        for v in 0..=255u16 {
            let n = normalize(&[v], 255).unwrap();
            assert_eq!(denormalize(&n, 255), vec![v]);
        }
    }

    #[test]
    fn dataset_checks_dimension() {
        let pts = vec![FeatureVector::from([0.0, 0.0]), FeatureVector::from([1.0])];
        assert!(Dataset::new(pts, 2, 255).is_err());
    }

    fn point3() -> impl Strategy<Value = Vec<f64>> {
        proptest::collection::vec(-2.0f64..2.0, 3)
    }

    proptest! {
        #[test]
        fn distance_axioms(a in point3(), b in point3(), c in point3()) {
            let ab = euclidean_distance(&a, &b).unwrap();
            let ba = euclidean_distance(&b, &a).unwrap();
            let ac = euclidean_distance(&a, &c).unwrap();
            let cb = euclidean_distance(&c, &b).unwrap();
            prop_assert!(ab >= 0.0);
            prop_assert_eq!(ab, ba);
            prop_assert!(ab <= ac + cb + 1e-12);
        }

        #[test]
        fn normalize_is_monotone(a in 0u16..=255, b in 0u16..=255) {
            let (lo, hi) = (a.min(b), a.max(b));
            let nl = normalize(&[lo], 255).unwrap();
            let nh = normalize(&[hi], 255).unwrap();
            prop_assert!(nl[0] <= nh[0]);
        }
    }
}
