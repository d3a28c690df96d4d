use super::{nearest, BaselineConfig, Codebook, MethodTag};
use crate::data::{squared_distance, Dataset, FeatureVector};
use crate::dialectics::EtaSchedule;
use crate::error::Result;
use crate::sampling::{initial_prototypes, presentation_order};

/// Kohonen map on a 1-D ring of `n_outputs` units.
///
/// Each presentation moves every unit by `eta(t) * h * (x - w)` where `h` is
/// a Gaussian of the ring distance to the winner with width
/// `sigma(t) = sigma0 * (1 - t/T)`. `T` covers `max_iters` sweeps of the data.
pub fn som_train(data: &Dataset, cfg: &BaselineConfig) -> Result<Codebook> {
    som_train_traced(data, cfg).map(|(cb, _)| cb)
}

/// Like [`som_train`], also returning the mean winner distance over the data
/// after every sweep.
pub fn som_train_traced(data: &Dataset, cfg: &BaselineConfig) -> Result<(Codebook, Vec<f64>)> {
    cfg.check_data(data)?;
    let mut units = initial_prototypes(data, cfg.n_outputs, cfg.seed);
    let order = presentation_order(data.len(), cfg.seed);
    let total = cfg.max_iters * order.len();
    let mut trace = Vec::with_capacity(cfg.max_iters);
    let mut t = 0;
    for _ in 0..cfg.max_iters {
        for (tau, &i) in order.iter().enumerate() {
            let eta = cfg.eta_schedule.eta(cfg.eta0, t, total, tau, order.len());
            let sigma = match cfg.eta_schedule {
                EtaSchedule::Constant => cfg.som_sigma0,
                _ => cfg.som_sigma0 * (1.0 - t as f64 / total as f64),
            };
            som_step(&mut units, data.get(i), eta, sigma);
            t += 1;
        }
        trace.push(mean_winner_distance(data, &units));
    }
    Ok((Codebook::new(units, MethodTag::Ko)?, trace))
}

/// One map update. With `sigma == 0` only the winner moves.
pub fn som_step(units: &mut [FeatureVector], x: &[f64], eta: f64, sigma: f64) -> usize {
    let n = units.len();
    let k = nearest(units, x);
    for (i, w) in units.iter_mut().enumerate() {
        let gap = i.abs_diff(k);
        let r = gap.min(n - gap) as f64;
        let h = if sigma > 0.0 {
            (-r * r / (2.0 * sigma * sigma)).exp()
        } else if i == k {
            1.0
        } else {
            0.0
        };
        if h == 0.0 {
            continue;
        }
        for (wj, xj) in w.as_mut_slice().iter_mut().zip(x) {
            *wj += eta * h * (xj - *wj);
        }
    }
    k
}

fn mean_winner_distance(data: &Dataset, units: &[FeatureVector]) -> f64 {
    let total: f64 = data
        .points()
        .iter()
        .map(|p| squared_distance(p, &units[nearest(units, p)]).sqrt())
        .sum();
    total / data.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::gaussian_blobs;

    #[test]
    fn collapsed_neighbourhood_is_online_kmeans() {
        let mut units: Vec<FeatureVector> = vec![[0.1, 0.1].into(), [0.9, 0.9].into(), [0.5, 0.1].into()];
        let before = units.clone();
        let k = som_step(&mut units, &[0.2, 0.0], 0.25, 0.0);
        assert_eq!(k, 0);
        assert!((units[0][0] - (0.1 + 0.25 * 0.1)).abs() < 1e-15);
        assert!((units[0][1] - (0.1 - 0.25 * 0.1)).abs() < 1e-15);
        assert_eq!(units[1], before[1]);
        assert_eq!(units[2], before[2]);
    }

    #[test]
    fn ring_neighbours_move_too() {
        let mut units: Vec<FeatureVector> = (0..5).map(|i| FeatureVector::from([i as f64 / 5.0])).collect();
        som_step(&mut units, &[0.0], 0.5, 1.0);
        // Unit 4 is a ring neighbour of unit 0.
        assert!(units[4][0] < 0.8);
        assert!(units[1][0] < 0.2);
    }

    #[test]
    fn thirteen_units_cover_three_blobs() {
        let means = vec![vec![0.2, 0.2, 0.3], vec![0.8, 0.4, 0.5], vec![0.4, 0.8, 0.9]];
        let (data, _) = gaussian_blobs(&means, 600, 0.03, 12);
        let cfg = BaselineConfig { max_iters: 20, ..BaselineConfig::default() };
        let cb = som_train(&data, &cfg).unwrap();
        assert_eq!(cb.len(), 13);
        for m in &means {
            let d = cb.centroids().iter().map(|c| squared_distance(c, m).sqrt()).fold(f64::INFINITY, f64::min);
            assert!(d < 0.05, "{d}");
        }
        assert_eq!(cb, som_train(&data, &cfg).unwrap());
    }

    #[test]
    fn quantization_error_trends_down_at_fixed_rates() {
        for seed in 0..5 {
            let (data, _) = gaussian_blobs(
                &[vec![0.2, 0.2], vec![0.8, 0.3], vec![0.5, 0.9]],
                300,
                0.05,
                seed,
            );
            let cfg = BaselineConfig {
                n_outputs: 6,
                max_iters: 8,
                eta_schedule: EtaSchedule::Constant,
                eta0: 0.05,
                som_sigma0: 0.5,
                seed,
                ..BaselineConfig::default()
            };
            let (_, trace) = som_train_traced(&data, &cfg).unwrap();
            assert!(*trace.last().unwrap() <= trace[0] * 1.02, "{trace:?}");
            let rises = trace.windows(2).filter(|w| w[1] > w[0] * 1.05).count();
            assert!(rises <= 1, "{trace:?}");
        }
    }
}
