use super::{nearest, BaselineConfig, Codebook, MethodTag};
use crate::data::{squared_distance, Dataset, FeatureVector};
use crate::error::Result;
use crate::sampling::initial_prototypes;

/// Batch Lloyd iterations until the assignment stops changing or
/// `max_iters` is reached. Empty clusters are re-seeded from the point
/// farthest from its centroid.
pub fn kmeans_train(data: &Dataset, cfg: &BaselineConfig) -> Result<Codebook> {
    kmeans_train_traced(data, cfg).map(|(cb, _)| cb)
}

/// Like [`kmeans_train`], also returning the within-cluster sum of squares
/// after every centroid update.
pub fn kmeans_train_traced(data: &Dataset, cfg: &BaselineConfig) -> Result<(Codebook, Vec<f64>)> {
    cfg.check_data(data)?;
    let k = cfg.n_outputs;
    let mut centroids = initial_prototypes(data, k, cfg.seed);
    let mut assign = assign_all(data, &centroids);
    let mut trace = Vec::new();

    for _ in 0..cfg.max_iters {
        centroids = update(data, &assign, &centroids, data.dim());
        trace.push(sse(data, &assign, &centroids));
        let next = assign_all(data, &centroids);
        if next == assign {
            break;
        }
        assign = next;
    }
    Ok((Codebook::new(centroids, MethodTag::Km)?, trace))
}

fn assign_all(data: &Dataset, centroids: &[FeatureVector]) -> Vec<usize> {
    data.points().iter().map(|p| nearest(centroids, p)).collect()
}

fn update(data: &Dataset, assign: &[usize], old: &[FeatureVector], dim: usize) -> Vec<FeatureVector> {
    let k = old.len();
    let mut sums = vec![vec![0.0; dim]; k];
    let mut counts = vec![0usize; k];
    for (p, &a) in data.points().iter().zip(assign) {
        counts[a] += 1;
        for (s, v) in sums[a].iter_mut().zip(p.iter()) {
            *s += v;
        }
    }
    let mut out: Vec<FeatureVector> = sums
        .into_iter()
        .zip(&counts)
        .zip(old)
        .map(|((s, &c), prev)| {
            if c == 0 {
                prev.clone()
            } else {
                s.into_iter().map(|v| v / c as f64).collect::<Vec<_>>().into()
            }
        })
        .collect();

    let mut taken = vec![false; data.len()];
    for j in (0..k).filter(|&j| counts[j] == 0) {
        let far = data
            .points()
            .iter()
            .enumerate()
            .filter(|(i, _)| !taken[*i])
            .map(|(i, p)| (i, squared_distance(p, &out[assign[i]])))
            .fold(None, |best: Option<(usize, f64)>, (i, d)| match best {
                Some((_, bd)) if bd >= d => best,
                _ => Some((i, d)),
            });
        if let Some((i, _)) = far {
            taken[i] = true;
            out[j] = data.get(i).clone();
        }
    }
    out
}

fn sse(data: &Dataset, assign: &[usize], centroids: &[FeatureVector]) -> f64 {
    data.points()
        .iter()
        .zip(assign)
        .map(|(p, &a)| squared_distance(p, &centroids[a]))
        .sum()
}
