//! Synthetic data: Gaussian blobs in the unit cube and a layered
//! three-band phantom volume standing in for PD/T1/T2 MR slices.

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::data::{squared_distance, Dataset, FeatureVector};
use crate::imageio::MultispectralImage;
use crate::sampling::{stream_rng, Stream};

/// `n` points drawn evenly at random from isotropic Gaussians around
/// `means`, clipped to the unit cube. Returns the dataset (with `l_max` 255)
/// and each point's blob index.
pub fn gaussian_blobs(means: &[Vec<f64>], n: usize, sigma: f64, seed: u64) -> (Dataset, Vec<usize>) {
    let dim = means[0].len();
    let mut rng = stream_rng(seed, Stream::Synthetic);
    let noise = Normal::new(0.0, sigma).expect("finite sigma");
    let mut points = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for _ in 0..n {
        let b = rng.random_range(0..means.len());
        let p: Vec<f64> = means[b]
            .iter()
            .map(|&m| (m + noise.sample(&mut rng)).clamp(0.0, 1.0))
            .collect();
        points.push(FeatureVector::new(p));
        labels.push(b);
    }
    (Dataset::new(points, dim, 255).expect("consistent dimensions"), labels)
}

/// `k` random means in `[lo, 1 - lo]^dim` with pairwise distance at least
/// `min_sep`, by rejection.
pub fn separated_means(k: usize, dim: usize, min_sep: f64, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = stream_rng(seed ^ 0x5eed_b10b, Stream::Synthetic);
    let lo = 0.15;
    loop {
        let means: Vec<Vec<f64>> = (0..k)
            .map(|_| (0..dim).map(|_| rng.random_range(lo..1.0 - lo)).collect())
            .collect();
        let ok = (0..k).all(|i| (i + 1..k).all(|j| squared_distance(&means[i], &means[j]).sqrt() >= min_sep));
        if ok {
            return means;
        }
    }
}

/// Packs a dataset into a `width x height` image (row-major, `l_max` 255).
/// Extra pixels repeat the last point.
pub fn dataset_image(data: &Dataset, width: usize, height: usize) -> MultispectralImage {
    let bands = data.dim();
    let mut pixels = Vec::with_capacity(width * height * bands);
    for i in 0..width * height {
        let p = data.get(i.min(data.len() - 1));
        pixels.extend(p.iter().map(|&v| crate::data::denormalize_value(v, 255)));
    }
    MultispectralImage::new(width, height, bands, 255, pixels).expect("consistent shape")
}

/// Tissue intensities of the phantom: (PD, T1, T2) per class.
pub const PHANTOM_TISSUES: [[u16; 3]; 5] = [
    [0, 0, 0],
    [170, 120, 90],
    [210, 90, 190],
    [120, 200, 70],
    [230, 60, 240],
];

/// A stack of three-band slices made of nested ellipses whose extent varies
/// across the stack, with additive Gaussian noise of `noise` gray levels.
pub fn phantom_volume(
    width: usize,
    height: usize,
    slices: usize,
    noise: f64,
    seed: u64,
) -> Vec<MultispectralImage> {
    let mut rng = stream_rng(seed, Stream::Synthetic);
    let jitter = Normal::new(0.0, noise.max(f64::MIN_POSITIVE)).expect("finite noise");
    (0..slices)
        .map(|s| {
            let phase = if slices > 1 { s as f64 / (slices - 1) as f64 } else { 0.5 };
            let extent = 0.55 + 0.4 * (std::f64::consts::PI * phase).sin();
            let (cx, cy) = (width as f64 / 2.0, height as f64 / 2.0);
            let mut pixels = Vec::with_capacity(width * height * 3);
            for y in 0..height {
                for x in 0..width {
                    let dx = (x as f64 + 0.5 - cx) / (cx * extent);
                    let dy = (y as f64 + 0.5 - cy) / (cy * extent);
                    let r = (dx * dx + dy * dy).sqrt();
                    let class = match r {
                        r if r > 1.0 => 0,
                        r if r > 0.85 => 1,
                        r if r > 0.55 => 2,
                        r if r > 0.25 => 3,
                        _ => 4,
                    };
                    for &v in &PHANTOM_TISSUES[class] {
                        let n = if noise > 0.0 && class != 0 { jitter.sample(&mut rng) } else { 0.0 };
                        pixels.push((v as f64 + n).round().clamp(0.0, 255.0) as u16);
                    }
                }
            }
            MultispectralImage::new(width, height, 3, 255, pixels).expect("consistent shape")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blobs_are_deterministic_and_bounded() {
        let means = separated_means(3, 3, 0.3, 1);
        let (a, la) = gaussian_blobs(&means, 500, 0.03, 2);
        let (b, lb) = gaussian_blobs(&means, 500, 0.03, 2);
        assert_eq!(a, b);
        assert_eq!(la, lb);
        assert!(a.points().iter().all(|p| p.iter().all(|v| (0.0..=1.0).contains(v))));
    }

    #[test]
    fn means_respect_separation() {
        for seed in 0..20 {
            let m = separated_means(3, 3, 0.3, seed);
            for i in 0..3 {
                for j in i + 1..3 {
                    assert!(squared_distance(&m[i], &m[j]).sqrt() >= 0.3);
                }
            }
        }
    }

    #[test]
    fn noiseless_phantom_uses_tissue_palette() {
        let vol = phantom_volume(24, 20, 3, 0.0, 0);
        assert_eq!(vol.len(), 3);
        for img in &vol {
            for px in img.pixel_iter() {
                assert!(PHANTOM_TISSUES.iter().any(|t| t[..] == *px));
            }
        }
    }
}
