//! The objective dialectical method and its classifier restriction.
//!
//! A [`DialecticalSystem`] holds a set of poles (cluster prototypes). Training
//! alternates historical phases of pole struggle, where the pole with the
//! greatest Gibbs membership for the presented vector moves toward it, with
//! revolutionary crises that eliminate weak poles, fuse near-identical ones,
//! optionally synthesize new poles from the most contradictory pair, and
//! perturb the survivors with Gaussian noise.
//!
//! With pole generation disabled the system is the objective dialectical
//! classifier (ODC): the pole count can only shrink.

mod crisis;
mod params;
mod train;

pub use crisis::{crossover, CrisisRecord};
pub use params::{CrisisNoise, EtaSchedule, NoiseBoundary, OdcParams};
pub use train::{train, PhaseRecord, TrainingReport};

use rand_chacha::ChaCha8Rng;

use crate::data::{squared_distance, FeatureVector};
use crate::error::{check_dim, Error, Result};
use crate::sampling::{stream_rng, Stream};

/// A cluster prototype competing inside a dialectical system.
#[derive(Debug, Clone, PartialEq)]
pub struct Pole {
    pub weights: FeatureVector,
    /// Wins accumulated during the current historical phase.
    pub force: u64,
    pub marked: bool,
}

impl Pole {
    pub fn new(weights: FeatureVector) -> Self {
        Pole {
            weights,
            force: 0,
            marked: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DialecticalSystem {
    poles: Vec<Pole>,
    dim: usize,
    params: OdcParams,
    /// Factor applied to Euclidean distances on normalized vectors before
    /// they enter the membership exponent. Equal to `l_max` by default, which
    /// makes memberships identical to those computed on raw gamut values.
    distance_scale: f64,
    crisis_rng: ChaCha8Rng,
}

impl DialecticalSystem {
    /// Creates a system whose poles start at the given weight vectors.
    pub fn from_weights(
        weights: Vec<FeatureVector>,
        params: OdcParams,
        distance_scale: f64,
    ) -> Result<Self> {
        params.validate()?;
        if !(distance_scale.is_finite() && distance_scale > 0.0) {
            return Err(Error::invalid("distance_scale", "must be positive and finite"));
        }
        let first = weights.first().ok_or(Error::EmptyPoleSet)?;
        let dim = first.dim();
        for w in &weights {
            check_dim(dim, w.dim())?;
        }
        Ok(DialecticalSystem {
            poles: weights.into_iter().map(Pole::new).collect(),
            dim,
            crisis_rng: stream_rng(params.seed, Stream::Crisis),
            params,
            distance_scale,
        })
    }

    /// Rebuilds a system from stored poles (forces included).
    pub fn from_poles(poles: Vec<Pole>, params: OdcParams, distance_scale: f64) -> Result<Self> {
        let forces: Vec<u64> = poles.iter().map(|p| p.force).collect();
        let mut sys =
            Self::from_weights(poles.into_iter().map(|p| p.weights).collect(), params, distance_scale)?;
        for (p, f) in sys.poles.iter_mut().zip(forces) {
            p.force = f;
        }
        Ok(sys)
    }

    pub fn poles(&self) -> &[Pole] {
        &self.poles
    }

    pub fn pole_count(&self) -> usize {
        self.poles.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn params(&self) -> &OdcParams {
        &self.params
    }

    pub fn distance_scale(&self) -> f64 {
        self.distance_scale
    }

    pub fn weights(&self) -> Vec<FeatureVector> {
        self.poles.iter().map(|p| p.weights.clone()).collect()
    }

    /// Gibbs memberships `g_k(x)` of `x` to every pole.
    ///
    /// `g_k = exp(-d_k / n_C) / sum_l exp(-d_l / n_C)` with `d_k` the scaled
    /// Euclidean distance between `x` and pole `k`.
    pub fn memberships(&self, x: &[f64]) -> Result<Vec<f64>> {
        if self.poles.is_empty() {
            return Err(Error::EmptyPoleSet);
        }
        check_dim(self.dim, x.len())?;
        Ok(gibbs(
            self.poles.iter().map(|p| p.weights.as_slice()),
            x,
            self.distance_scale,
        ))
    }

    /// Index of the pole with the greatest membership; ties go to the lowest index.
    pub fn winner(&self, x: &[f64]) -> Result<usize> {
        Ok(argmax(&self.memberships(x)?))
    }

    /// Classification rule of a trained system. Identical to [`winner`](Self::winner).
    pub fn classify(&self, x: &[f64]) -> Result<usize> {
        self.winner(x)
    }

    /// One pole-struggle iteration: the winner moves toward `x` by
    /// `eta * g_k(x)^2 * (x - w_k)` and gains one unit of force.
    /// Returns the winner index.
    pub fn evolution_step(&mut self, x: &[f64], eta: f64) -> Result<usize> {
        let g = self.memberships(x)?;
        let k = argmax(&g);
        let step = eta * g[k] * g[k];
        let pole = &mut self.poles[k];
        for (w, xi) in pole.weights.as_mut_slice().iter_mut().zip(x) {
            *w += step * (xi - *w);
        }
        pole.force += 1;
        Ok(k)
    }

    /// Contradiction between poles `i` and `j`: one minus their mutual
    /// similarity, symmetrized as `1 - (g_i(w_j) + g_j(w_i)) / 2`.
    pub fn contradiction(&self, i: usize, j: usize) -> Result<f64> {
        let n = self.poles.len();
        for index in [i, j] {
            if index >= n {
                return Err(Error::PoleIndex { index, count: n });
            }
        }
        if i == j {
            return Err(Error::SelfContradiction(i));
        }
        let gi = self.memberships(&self.poles[j].weights)?[i];
        let gj = self.memberships(&self.poles[i].weights)?[j];
        Ok(1.0 - 0.5 * (gi + gj))
    }

    /// Full contradiction matrix; the diagonal is zero.
    pub fn contradiction_matrix(&self) -> Vec<Vec<f64>> {
        let n = self.poles.len();
        let g: Vec<Vec<f64>> = self
            .poles
            .iter()
            .map(|p| {
                gibbs(
                    self.poles.iter().map(|q| q.weights.as_slice()),
                    &p.weights,
                    self.distance_scale,
                )
            })
            .collect();
        let mut m = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                // g[j][i] is the membership of w_j to pole i.
                let d = 1.0 - 0.5 * (g[j][i] + g[i][j]);
                m[i][j] = d;
                m[j][i] = d;
            }
        }
        m
    }

    pub(crate) fn poles_mut(&mut self) -> &mut Vec<Pole> {
        &mut self.poles
    }

    pub(crate) fn crisis_rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.crisis_rng
    }
}

/// Softmax of `-scale * ||x - w|| / n` over the prototypes, shifted by the
/// nearest distance for numerical stability.
pub(crate) fn gibbs<'a, I>(prototypes: I, x: &[f64], scale: f64) -> Vec<f64>
where
    I: ExactSizeIterator<Item = &'a [f64]>,
{
    let n = prototypes.len() as f64;
    let d: Vec<f64> = prototypes
        .map(|w| scale * squared_distance(x, w).sqrt())
        .collect();
    let d_min = d.iter().copied().fold(f64::INFINITY, f64::min);
    let mut e: Vec<f64> = d.iter().map(|dk| (-(dk - d_min) / n).exp()).collect();
    let total: f64 = e.iter().sum();
    e.iter_mut().for_each(|v| *v /= total);
    e
}

pub(crate) fn argmax(v: &[f64]) -> usize {
    let mut best = 0;
    for (i, &x) in v.iter().enumerate().skip(1) {
        if x > v[best] {
            best = i;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn system(weights: Vec<Vec<f64>>, scale: f64) -> DialecticalSystem {
        DialecticalSystem::from_weights(
            weights.into_iter().map(FeatureVector::new).collect(),
            OdcParams::default(),
            scale,
        )
        .unwrap()
    }

    /// Direct evaluation of the Gibbs membership, without the stability shift.
    fn oracle_memberships(ws: &[Vec<f64>], x: &[f64], scale: f64) -> Vec<f64> {
        let n = ws.len() as f64;
        let e: Vec<f64> = ws
            .iter()
            .map(|w| {
                let mut s = 0.0;
                for j in 0..x.len() {
                    s += (x[j] - w[j]) * (x[j] - w[j]);
                }
                (-scale * s.sqrt() / n).exp()
            })
            .collect();
        let t: f64 = e.iter().sum();
        e.iter().map(|v| v / t).collect()
    }

    #[test]
    fn single_pole_has_full_membership() {
        let s = system(vec![vec![0.3, 0.1]], 255.0);
        assert_eq!(s.memberships(&[0.9, 0.9]).unwrap(), vec![1.0]);
    }

    #[test]
    fn equidistant_poles_split_evenly() {
        let s = system(vec![vec![0.0], vec![1.0]], 255.0);
        let g = s.memberships(&[0.5]).unwrap();
        assert_eq!(g, vec![0.5, 0.5]);
    }

    #[test]
    fn two_pole_hand_value() {
        // n_C = 2, d_1 = 0, d_2 = 2  =>  g_1 = 1 / (1 + e^-1)
        let s = system(vec![vec![0.0], vec![2.0 / 255.0]], 255.0);
        let g = s.memberships(&[0.0]).unwrap();
        let expected = 1.0 / (1.0 + (-1.0f64).exp());
        assert!((g[0] - expected).abs() < 1e-12);
        assert!((g[0] - 0.731059).abs() < 1e-6);
    }

    #[test]
    fn memberships_reject_bad_input() {
        let s = system(vec![vec![0.0, 0.0]], 1.0);
        assert!(matches!(s.memberships(&[0.0]), Err(Error::DimensionMismatch { .. })));
        assert!(DialecticalSystem::from_weights(vec![], OdcParams::default(), 1.0).is_err());
    }

    #[test]
    fn winner_exact_match_and_ties() {
        let s = system(vec![vec![0.1, 0.1], vec![0.5, 0.9], vec![0.7, 0.2], vec![0.9, 0.9]], 255.0);
        assert_eq!(s.winner(&[0.7, 0.2]).unwrap(), 2);
        let t = system(vec![vec![0.4], vec![0.4], vec![0.9]], 255.0);
        assert_eq!(t.winner(&[0.4]).unwrap(), 0);
    }

    #[test]
    fn winner_matches_brute_force() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let ws: Vec<Vec<f64>> = (0..5).map(|_| (0..3).map(|_| rng.random()).collect()).collect();
        let s = system(ws.clone(), 255.0);
        for _ in 0..100 {
            let x: Vec<f64> = (0..3).map(|_| rng.random()).collect();
            let g = oracle_memberships(&ws, &x, 255.0);
            let mut best = 0;
            for k in 1..g.len() {
                if g[k] > g[best] {
                    best = k;
                }
            }
            assert_eq!(s.winner(&x).unwrap(), best);
            assert_eq!(s.classify(&x).unwrap(), best);
        }
    }

    #[test]
    fn evolution_zero_residual() {
        let mut s = system(vec![vec![0.2, 0.4], vec![0.8, 0.8]], 255.0);
        let k = s.evolution_step(&[0.2, 0.4], 0.1).unwrap();
        assert_eq!(k, 0);
        assert_eq!(s.poles()[0].weights.as_slice(), &[0.2, 0.4]);
        assert_eq!(s.poles()[0].force, 1);
        assert_eq!(s.poles()[1].force, 0);
    }

    #[test]
    fn evolution_single_pole() {
        let mut s = system(vec![vec![0.0]], 1.0);
        s.evolution_step(&[1.0], 0.1).unwrap();
        assert!((s.poles()[0].weights[0] - 0.1).abs() < 1e-15);
    }

    #[test]
    fn evolution_two_pole_hand_computation() {
        // scale 1, n_C = 2, x = 0.5; d_1 = 0.3, d_2 = 0.4.
        let mut s = system(vec![vec![0.2], vec![0.9]], 1.0);
        s.evolution_step(&[0.5], 0.1).unwrap();
        let e1 = (-0.3f64 / 2.0).exp();
        let e2 = (-0.4f64 / 2.0).exp();
        let g1 = e1 / (e1 + e2);
        let w1 = 0.2 + 0.1 * g1 * g1 * (0.5 - 0.2);
        assert!((s.poles()[0].weights[0] - w1).abs() < 1e-15);
        assert_eq!(s.poles()[1].weights[0], 0.9);
        assert_eq!(s.poles()[0].force, 1);
    }

    #[test]
    fn contradiction_cases() {
        let s = system(vec![vec![0.4, 0.4], vec![0.4, 0.4]], 255.0);
        assert!((s.contradiction(0, 1).unwrap() - 0.5).abs() < 1e-15);
        assert!(matches!(s.contradiction(1, 1), Err(Error::SelfContradiction(1))));
        assert!(s.contradiction(0, 5).is_err());

        let h = 3f64.sqrt() / 2.0;
        let tri = system(vec![vec![0.0, 0.0], vec![0.5, 0.0], vec![0.25, 0.5 * h]], 255.0);
        let d01 = tri.contradiction(0, 1).unwrap();
        let d02 = tri.contradiction(0, 2).unwrap();
        let d12 = tri.contradiction(1, 2).unwrap();
        assert!((d01 - d02).abs() < 1e-12 && (d01 - d12).abs() < 1e-12);
    }

    #[test]
    fn contradiction_matches_brute_force() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let ws: Vec<Vec<f64>> = (0..4).map(|_| (0..3).map(|_| rng.random()).collect()).collect();
        let s = system(ws.clone(), 10.0);
        let m = s.contradiction_matrix();
        for i in 0..4 {
            for j in 0..4 {
                if i == j {
                    continue;
                }
                let gi = oracle_memberships(&ws, &ws[j], 10.0)[i];
                let gj = oracle_memberships(&ws, &ws[i], 10.0)[j];
                let expected = 1.0 - 0.5 * (gi + gj);
                assert!((s.contradiction(i, j).unwrap() - expected).abs() < 1e-12);
                assert!((m[i][j] - expected).abs() < 1e-12);
            }
        }
    }

    fn weights_strategy() -> impl Strategy<Value = (Vec<Vec<f64>>, Vec<f64>)> {
        (1usize..=20, 1usize..=5).prop_flat_map(|(k, n)| {
            (
                proptest::collection::vec(proptest::collection::vec(0.0f64..=1.0, n), k),
                proptest::collection::vec(0.0f64..=1.0, n),
            )
        })
    }

    proptest! {
        #[test]
        fn memberships_form_a_distribution((ws, x) in weights_strategy(), scale in prop_oneof![Just(1.0), Just(255.0)]) {
            let s = system(ws, scale);
            let g = s.memberships(&x).unwrap();
            let total: f64 = g.iter().sum();
            prop_assert!((total - 1.0).abs() <= 1e-12);
            prop_assert!(g.iter().all(|&v| v > 0.0 && v <= 1.0));
        }

        #[test]
        fn evolution_moves_winner_toward_x((ws, x) in weights_strategy(), eta in 0.01f64..0.99) {
            let mut s = system(ws, 255.0);
            let before = s.clone();
            let k = s.evolution_step(&x, eta).unwrap();
            let d_before = squared_distance(&before.poles()[k].weights, &x);
            let d_after = squared_distance(&s.poles()[k].weights, &x);
            prop_assert!(d_after <= d_before);
            for (i, (a, b)) in s.poles().iter().zip(before.poles()).enumerate() {
                if i != k {
                    prop_assert_eq!(a, b);
                }
            }
        }

        #[test]
        fn contradiction_is_symmetric((ws, _x) in weights_strategy()) {
            let s = system(ws, 255.0);
            let m = s.contradiction_matrix();
            for i in 0..s.pole_count() {
                for j in 0..s.pole_count() {
                    if i != j {
                        let a = s.contradiction(i, j).unwrap();
                        let b = s.contradiction(j, i).unwrap();
                        prop_assert!((a - b).abs() <= 1e-12);
                        prop_assert!((0.0..=1.0).contains(&a));
                        prop_assert!((m[i][j] - a).abs() <= 1e-12);
                    }
                }
            }
        }
    }
}
