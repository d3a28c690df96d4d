use super::{BaselineConfig, Codebook, MethodTag};
use crate::data::{squared_distance, Dataset, FeatureVector};
use crate::error::{check_dim, Error, Result};
use crate::sampling::{initial_prototypes, presentation_order};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FcmVariant {
    /// Alternating membership/centroid updates with fuzzifier `m`.
    Classical,
    /// Gibbs memberships with sequential winner updates.
    MaxEntropy,
}

const SHIFT_TOL: f64 = 1e-6;

pub fn fcm_train(data: &Dataset, cfg: &BaselineConfig, variant: FcmVariant) -> Result<Codebook> {
    cfg.check_data(data)?;
    let init = initial_prototypes(data, cfg.n_outputs, cfg.seed);
    let centroids = match variant {
        FcmVariant::Classical => classical(data, cfg, init),
        FcmVariant::MaxEntropy => max_entropy(data, cfg, init),
    };
    Codebook::new(centroids, MethodTag::Cm)
}

/// Classical fuzzy memberships `u_k ∝ d_k^(-2/(m-1))`. A point that sits on
/// one or more centroids belongs to them in equal parts.
pub fn fcm_memberships(x: &[f64], centroids: &[FeatureVector], m: f64) -> Result<Vec<f64>> {
    if centroids.is_empty() {
        return Err(Error::EmptyPoleSet);
    }
    for c in centroids {
        check_dim(c.dim(), x.len())?;
    }
    let d2: Vec<f64> = centroids.iter().map(|c| squared_distance(x, c)).collect();
    let zeros = d2.iter().filter(|&&d| d == 0.0).count();
    if zeros > 0 {
        let share = 1.0 / zeros as f64;
        return Ok(d2.iter().map(|&d| if d == 0.0 { share } else { 0.0 }).collect());
    }
    let exponent = -1.0 / (m - 1.0);
    // Relative to the nearest centroid to keep the powers in range.
    let d_min = d2.iter().copied().fold(f64::INFINITY, f64::min);
    let w: Vec<f64> = d2.iter().map(|&d| (d / d_min).powf(exponent)).collect();
    let total: f64 = w.iter().sum();
    Ok(w.into_iter().map(|v| v / total).collect())
}

fn classical(data: &Dataset, cfg: &BaselineConfig, mut centroids: Vec<FeatureVector>) -> Vec<FeatureVector> {
    let m = cfg.fcm_fuzzifier;
    let dim = data.dim();
    for _ in 0..cfg.max_iters {
        let k = centroids.len();
        let mut num = vec![vec![0.0; dim]; k];
        let mut den = vec![0.0; k];
        for p in data.points() {
            let u = fcm_memberships(p, &centroids, m).expect("validated dimensions");
            for j in 0..k {
                let um = u[j].powf(m);
                den[j] += um;
                for (n, v) in num[j].iter_mut().zip(p.iter()) {
                    *n += um * v;
                }
            }
        }
        let next: Vec<FeatureVector> = num
            .into_iter()
            .zip(&den)
            .zip(&centroids)
            .map(|((n, &d), prev)| {
                if d > 0.0 {
                    n.into_iter().map(|v| v / d).collect::<Vec<_>>().into()
                } else {
                    prev.clone()
                }
            })
            .collect();
        let shift = max_shift(&centroids, &next);
        centroids = next;
        if shift < SHIFT_TOL {
            break;
        }
    }
    centroids
}

/// One sequential maximum-entropy update: the centroid with the largest
/// Gibbs membership `exp(-scale*d/c) / sum` moves toward `x` by
/// `eta * g^2 * (x - w)`. Returns the winner.
pub fn max_entropy_step(centroids: &mut [FeatureVector], x: &[f64], eta: f64, scale: f64) -> usize {
    let c = centroids.len() as f64;
    let logits: Vec<f64> = centroids
        .iter()
        .map(|w| -scale * squared_distance(x, w).sqrt() / c)
        .collect();
    let top = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let expd: Vec<f64> = logits.iter().map(|l| (l - top).exp()).collect();
    let z: f64 = expd.iter().sum();
    let g_all: Vec<f64> = expd.iter().map(|e| e / z).collect();
    let mut winner = 0;
    for (i, &g) in g_all.iter().enumerate() {
        if g > g_all[winner] {
            winner = i;
        }
    }
    let g = g_all[winner];
    let w = centroids[winner].as_mut_slice();
    for (wj, xj) in w.iter_mut().zip(x) {
        *wj += eta * g * g * (xj - *wj);
    }
    winner
}

fn max_entropy(data: &Dataset, cfg: &BaselineConfig, mut centroids: Vec<FeatureVector>) -> Vec<FeatureVector> {
    let scale = cfg.distance_scale.unwrap_or(data.l_max() as f64);
    let order = presentation_order(data.len(), cfg.seed);
    let total = cfg.max_iters * order.len();
    let mut t = 0;
    for _ in 0..cfg.max_iters {
        let before = centroids.clone();
        for (tau, &i) in order.iter().enumerate() {
            let eta = cfg.eta_schedule.eta(cfg.eta0, t, total, tau, order.len());
            max_entropy_step(&mut centroids, data.get(i), eta, scale);
            t += 1;
        }
        if max_shift(&before, &centroids) < SHIFT_TOL {
            break;
        }
    }
    centroids
}

fn max_shift(a: &[FeatureVector], b: &[FeatureVector]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| squared_distance(x, y).sqrt())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dialectics::{DialecticalSystem, OdcParams};
    use crate::synth::gaussian_blobs;
    use proptest::prelude::*;

    fn cfg(k: usize) -> BaselineConfig {
        BaselineConfig { n_outputs: k, ..BaselineConfig::default() }
    }

    #[test]
    fn symmetric_pair_midpoint() {
        let data = Dataset::new(vec![[0.2, 0.5].into(), [0.8, 0.5].into()], 2, 255).unwrap();
        let cb = fcm_train(&data, &cfg(2), FcmVariant::Classical).unwrap();
        let u = fcm_memberships(&[0.5, 0.5], cb.centroids(), 2.0).unwrap();
        assert!((u[0] - 0.5).abs() < 1e-12 && (u[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn one_centroid_is_the_mean() {
        let (data, _) = gaussian_blobs(&[vec![0.4, 0.4, 0.6]], 300, 0.05, 8);
        let mean = data.mean().unwrap();
        let cb = fcm_train(&data, &cfg(1), FcmVariant::Classical).unwrap();
        for (a, b) in cb.centroids()[0].iter().zip(mean.iter()) {
            assert!((a - b).abs() < 1e-12);
        }
        // The online variant tracks the mean up to its step-size jitter.
        let me = fcm_train(&data, &BaselineConfig { max_iters: 20, ..cfg(1) }, FcmVariant::MaxEntropy).unwrap();
        for (a, b) in me.centroids()[0].iter().zip(mean.iter()) {
            assert!((a - b).abs() < 0.01);
        }
    }

    #[test]
    fn memberships_on_a_centroid() {
        let cs: Vec<FeatureVector> = vec![[0.0].into(), [1.0].into(), [0.0].into()];
        assert_eq!(fcm_memberships(&[0.0], &cs, 2.0).unwrap(), vec![0.5, 0.0, 0.5]);
    }

    #[test]
    fn max_entropy_step_matches_dialectical_evolution() {
        let (data, _) = gaussian_blobs(&[vec![0.2, 0.3, 0.4], vec![0.7, 0.6, 0.2]], 200, 0.1, 4);
        let init = initial_prototypes(&data, 6, 4);
        let mut sys = DialecticalSystem::from_weights(init.clone(), OdcParams::default(), 255.0).unwrap();
        let mut cents = init;
        for p in data.points().iter().take(50) {
            let a = sys.evolution_step(p, 0.1).unwrap();
            let b = max_entropy_step(&mut cents, p, 0.1, 255.0);
            assert_eq!(a, b);
        }
        for (w, c) in sys.weights().iter().zip(&cents) {
            for (a, b) in w.iter().zip(c.iter()) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn max_entropy_separates_blobs() {
        let means = vec![vec![0.2, 0.2], vec![0.8, 0.7]];
        let (data, _) = gaussian_blobs(&means, 400, 0.03, 6);
        let cb = fcm_train(&data, &BaselineConfig { max_iters: 30, ..cfg(2) }, FcmVariant::MaxEntropy).unwrap();
        for m in &means {
            let d = cb.centroids().iter().map(|c| squared_distance(c, m).sqrt()).fold(f64::INFINITY, f64::min);
            assert!(d < 0.05);
        }
    }

    proptest! {
        #[test]
        fn classical_rows_sum_to_one(
            x in proptest::collection::vec(0.0f64..1.0, 3),
            cs in proptest::collection::vec(proptest::collection::vec(0.0f64..1.0, 3), 1..15),
            m in 1.1f64..4.0,
        ) {
            let cs: Vec<FeatureVector> = cs.into_iter().map(FeatureVector::new).collect();
            let u = fcm_memberships(&x, &cs, m).unwrap();
            let s: f64 = u.iter().sum();
            prop_assert!((s - 1.0).abs() <= 1e-12);
            prop_assert!(u.iter().all(|&v| (0.0..=1.0).contains(&v)));
        }
    }
}
