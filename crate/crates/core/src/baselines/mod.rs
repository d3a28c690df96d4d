//! Reference vector quantizers: k-means (KM), fuzzy c-means in classical and
//! maximum-entropy forms (CM), and a Kohonen ring map (KO).

mod fcm;
mod kmeans;
mod som;

use std::fmt;
use std::str::FromStr;

pub use fcm::{fcm_memberships, fcm_train, max_entropy_step, FcmVariant};
pub use kmeans::{kmeans_train, kmeans_train_traced};
pub use som::{som_step, som_train, som_train_traced};

use crate::config::{format_optional_f64, parse_field, parse_optional_f64};
use crate::data::{squared_distance, Dataset, FeatureVector};
use crate::dialectics::EtaSchedule;
use crate::error::{check_dim, Error, Result};

/// Which family produced a set of prototypes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MethodTag {
    Km,
    Cm,
    Ko,
    Odc,
}

impl fmt::Display for MethodTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MethodTag::Km => "KM",
            MethodTag::Cm => "CM",
            MethodTag::Ko => "KO",
            MethodTag::Odc => "ODC",
        })
    }
}

impl FromStr for MethodTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "KM" => Ok(MethodTag::Km),
            "CM" => Ok(MethodTag::Cm),
            "KO" => Ok(MethodTag::Ko),
            "ODC" => Ok(MethodTag::Odc),
            other => Err(Error::Malformed(format!("unknown method tag `{other}`"))),
        }
    }
}

/// Prototypes of a trained quantizer, classified by nearest centroid.
#[derive(Debug, Clone, PartialEq)]
pub struct Codebook {
    centroids: Vec<FeatureVector>,
    method: MethodTag,
}

impl Codebook {
    pub fn new(centroids: Vec<FeatureVector>, method: MethodTag) -> Result<Self> {
        let first = centroids.first().ok_or(Error::EmptyPoleSet)?;
        let dim = first.dim();
        for c in &centroids {
            check_dim(dim, c.dim())?;
        }
        Ok(Codebook { centroids, method })
    }

    pub fn centroids(&self) -> &[FeatureVector] {
        &self.centroids
    }

    pub fn method(&self) -> MethodTag {
        self.method
    }

    pub fn len(&self) -> usize {
        self.centroids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centroids.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.centroids[0].dim()
    }

    /// Nearest centroid, lowest index on ties.
    pub fn classify(&self, x: &[f64]) -> Result<usize> {
        check_dim(self.dim(), x.len())?;
        Ok(nearest(&self.centroids, x))
    }
}

pub fn classify_codebook(x: &[f64], cb: &Codebook) -> Result<usize> {
    cb.classify(x)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BaselineConfig {
    pub n_outputs: usize,
    /// Lloyd / FCM iterations, or full sweeps over the data for the online
    /// trainers.
    pub max_iters: usize,
    pub eta0: f64,
    /// Step law of the online trainers (maximum-entropy CM and KO).
    pub eta_schedule: EtaSchedule,
    pub seed: u64,
    pub som_sigma0: f64,
    pub fcm_fuzzifier: f64,
    /// Membership distance multiplier for maximum-entropy CM; `None` uses the
    /// dataset's `l_max`.
    pub distance_scale: Option<f64>,
}

impl Default for BaselineConfig {
    fn default() -> Self {
        BaselineConfig {
            n_outputs: 13,
            max_iters: 200,
            eta0: 0.1,
            eta_schedule: EtaSchedule::LinearDecay,
            seed: 0,
            som_sigma0: 2.0,
            fcm_fuzzifier: 2.0,
            distance_scale: None,
        }
    }
}

impl BaselineConfig {
    pub const KEYS: [&'static str; 8] = [
        "n_outputs",
        "max_iters",
        "eta0",
        "eta_schedule",
        "seed",
        "som_sigma0",
        "fcm_fuzzifier",
        "distance_scale",
    ];

    /// Sets one field from its text form. Returns `Ok(false)` for an unknown key.
    pub fn set(&mut self, key: &str, value: &str) -> Result<bool> {
        match key {
            "n_outputs" => self.n_outputs = parse_field("n_outputs", value)?,
            "max_iters" => self.max_iters = parse_field("max_iters", value)?,
            "eta0" => self.eta0 = parse_field("eta0", value)?,
            "eta_schedule" => self.eta_schedule = value.trim().parse()?,
            "seed" => self.seed = parse_field("seed", value)?,
            "som_sigma0" => self.som_sigma0 = parse_field("som_sigma0", value)?,
            "fcm_fuzzifier" => self.fcm_fuzzifier = parse_field("fcm_fuzzifier", value)?,
            "distance_scale" => self.distance_scale = parse_optional_f64("distance_scale", value)?,
            _ => return Ok(false),
        }
        Ok(true)
    }

    pub fn pairs(&self) -> Vec<(&'static str, String)> {
        let values = [
            self.n_outputs.to_string(),
            self.max_iters.to_string(),
            format!("{:?}", self.eta0),
            self.eta_schedule.to_string(),
            self.seed.to_string(),
            format!("{:?}", self.som_sigma0),
            format!("{:?}", self.fcm_fuzzifier),
            format_optional_f64(self.distance_scale),
        ];
        Self::KEYS.into_iter().zip(values).collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_outputs == 0 {
            return Err(Error::invalid("n_outputs", "must be at least 1"));
        }
        if self.max_iters == 0 {
            return Err(Error::invalid("max_iters", "must be at least 1"));
        }
        if !(self.eta0 > 0.0 && self.eta0 < 1.0) {
            return Err(Error::invalid("eta0", format!("{} is outside (0, 1)", self.eta0)));
        }
        if !(self.som_sigma0 > 0.0 && self.som_sigma0.is_finite()) {
            return Err(Error::invalid("som_sigma0", "must be positive"));
        }
        if !(self.fcm_fuzzifier > 1.0 && self.fcm_fuzzifier.is_finite()) {
            return Err(Error::invalid("fcm_fuzzifier", "must be greater than 1"));
        }
        if let Some(s) = self.distance_scale {
            if !(s > 0.0 && s.is_finite()) {
                return Err(Error::invalid("distance_scale", "must be positive and finite"));
            }
        }
        Ok(())
    }

    pub(crate) fn check_data(&self, data: &Dataset) -> Result<()> {
        self.validate()?;
        data.require_non_empty()?;
        if self.n_outputs > data.len() {
            return Err(Error::TooFewPoints {
                requested: self.n_outputs,
                available: data.len(),
            });
        }
        Ok(())
    }
}

pub(crate) fn nearest(centroids: &[FeatureVector], x: &[f64]) -> usize {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (i, c) in centroids.iter().enumerate() {
        let d = squared_distance(c, x);
        if d < best_d {
            best = i;
            best_d = d;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn classify_exact_and_tie() {
        let cb = Codebook::new(
            vec![[0.0, 0.0].into(), [1.0, 1.0].into(), [0.3, 0.7].into()],
            MethodTag::Km,
        )
        .unwrap();
        assert_eq!(cb.classify(&[0.3, 0.7]).unwrap(), 2);
        assert_eq!(cb.classify(&[0.3, 0.71]).unwrap(), 2);
        let pair = Codebook::new(vec![[0.0, 0.0].into(), [1.0, 1.0].into()], MethodTag::Km).unwrap();
        assert_eq!(pair.classify(&[0.5, 0.5]).unwrap(), 0);
        assert!(classify_codebook(&[0.5], &cb).is_err());
    }

    #[test]
    fn classify_matches_brute_force() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let cs: Vec<FeatureVector> =
            (0..7).map(|_| FeatureVector::new((0..3).map(|_| rng.random()).collect())).collect();
        let cb = Codebook::new(cs.clone(), MethodTag::Ko).unwrap();
        for _ in 0..1000 {
            let x: Vec<f64> = (0..3).map(|_| rng.random()).collect();
            let mut best = (0, f64::INFINITY);
            for (i, c) in cs.iter().enumerate() {
                let d: f64 = c.iter().zip(&x).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
                if d < best.1 {
                    best = (i, d);
                }
            }
            assert_eq!(cb.classify(&x).unwrap(), best.0);
        }
    }

    #[test]
    fn tags_round_trip() {
        for t in [MethodTag::Km, MethodTag::Cm, MethodTag::Ko, MethodTag::Odc] {
            assert_eq!(t.to_string().parse::<MethodTag>().unwrap(), t);
        }
    }

    #[test]
    fn config_validation() {
        BaselineConfig::default().validate().unwrap();
        assert!(BaselineConfig { fcm_fuzzifier: 1.0, ..Default::default() }.validate().is_err());
        assert!(BaselineConfig { n_outputs: 0, ..Default::default() }.validate().is_err());
    }
}
