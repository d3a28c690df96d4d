//! Seeded random streams shared by every trainer.
//!
//! One user seed fans out into independent ChaCha streams, so that e.g. the
//! crisis noise of the dialectical trainer never perturbs the presentation
//! order it shares with the maximum-entropy fuzzy c-means baseline.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::data::{Dataset, FeatureVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stream {
    Init = 1,
    Order = 2,
    Crisis = 3,
    Subsample = 4,
    Synthetic = 5,
}

pub fn stream_rng(seed: u64, stream: Stream) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream as u64);
    rng
}

/// Picks `k` prototypes from the dataset, preferring points with distinct
/// coordinates. Falls back to repeated points only when the dataset holds
/// fewer than `k` distinct values.
pub fn initial_prototypes(data: &Dataset, k: usize, seed: u64) -> Vec<FeatureVector> {
    let mut rng = stream_rng(seed, Stream::Init);
    let mut idx: Vec<usize> = (0..data.len()).collect();
    idx.shuffle(&mut rng);

    let mut chosen: Vec<FeatureVector> = Vec::with_capacity(k);
    let mut repeats = Vec::new();
    for &i in &idx {
        if chosen.len() == k {
            break;
        }
        let p = data.get(i);
        if chosen.iter().any(|c| c == p) {
            if repeats.len() < k {
                repeats.push(i);
            }
        } else {
            chosen.push(p.clone());
        }
    }
    let mut r = repeats.into_iter();
    while chosen.len() < k {
        match r.next() {
            Some(i) => chosen.push(data.get(i).clone()),
            None => break,
        }
    }
    chosen
}

/// Seeded permutation of `0..n`, swept cyclically by the online trainers.
pub fn presentation_order(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = stream_rng(seed, Stream::Order);
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(&mut rng);
    idx
}

/// At most `max` points drawn without replacement, kept in dataset order.
/// `max == 0` or a dataset that already fits returns a copy.
pub fn subsample(data: &Dataset, max: usize, seed: u64) -> Dataset {
    if max == 0 || data.len() <= max {
        return data.clone();
    }
    let mut rng = stream_rng(seed, Stream::Subsample);
    let mut picked = rand::seq::index::sample(&mut rng, data.len(), max).into_vec();
    picked.sort_unstable();
    let points = picked.into_iter().map(|i| data.get(i).clone()).collect();
    Dataset::new(points, data.dim(), data.l_max()).expect("points come from a valid dataset")
}
