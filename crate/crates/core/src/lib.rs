//! Objective dialectical clustering and vector quantization of multispectral
//! images, with k-means, fuzzy c-means and self-organizing map baselines,
//! pixel fidelity indexes and statistical comparison of quantizers.
//!
//! ```
//! use odc::dialectics::{train, OdcParams};
//! use odc::synth::gaussian_blobs;
//!
//! let means = vec![vec![0.2, 0.2, 0.2], vec![0.8, 0.5, 0.3]];
//! let (data, _) = gaussian_blobs(&means, 500, 0.03, 1);
//! let params = OdcParams { initial_poles: 6, seed: 1, ..OdcParams::default() };
//! let (system, report) = train(&data, &params).unwrap();
//! assert!(system.pole_count() <= 6);
//! assert_eq!(report.final_pole_count, system.pole_count());
//! ```

pub mod baselines;
pub mod cli;
pub mod config;
pub mod data;
pub mod dialectics;
pub mod error;
pub mod fidelity;
pub mod imageio;
pub mod model;
pub mod sampling;
pub mod stats;
pub mod synth;

pub use data::{Dataset, FeatureVector};
pub use error::{Error, Result};
pub use model::{Classifier, Method, TrainedModel};
