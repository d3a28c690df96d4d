use std::fmt;
use std::str::FromStr;

use crate::config::{format_optional_f64, parse_field, parse_optional_f64};
use crate::error::{Error, Result};

/// Step-size law for pole struggle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EtaSchedule {
    /// `eta0` at every iteration.
    #[default]
    Constant,
    /// `eta0 * (1 - t / T)` over the whole run of `T` iterations.
    LinearDecay,
    /// `eta0 * (1 - tau / n_H)`, restarting at every historical phase.
    PhaseDecay,
}

impl EtaSchedule {
    pub fn eta(self, eta0: f64, t: usize, total: usize, tau: usize, phase_len: usize) -> f64 {
        match self {
            EtaSchedule::Constant => eta0,
            EtaSchedule::LinearDecay => eta0 * (1.0 - t as f64 / total as f64),
            EtaSchedule::PhaseDecay => eta0 * (1.0 - tau as f64 / phase_len as f64),
        }
    }
}

/// Granularity of the Gaussian crisis noise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CrisisNoise {
    /// Independent draw for every coordinate of every pole.
    #[default]
    PerCoordinate,
    /// One draw per crisis, added to every coordinate of every pole.
    Scalar,
}

/// How perturbed weights are brought back into the unit interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NoiseBoundary {
    /// Mirror at 0 and 1.
    #[default]
    Reflect,
    Clamp,
}

macro_rules! keyword_enum {
    ($ty:ty, $field:literal, $($name:literal => $variant:expr),+ $(,)?) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                $(if *self == $variant { return f.write_str($name); })+
                unreachable!()
            }
        }

        impl FromStr for $ty {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($name => Ok($variant),)+
                    other => Err(Error::invalid($field, format!("unknown value `{other}`"))),
                }
            }
        }
    };
}

keyword_enum!(EtaSchedule, "eta_schedule",
    "constant" => EtaSchedule::Constant,
    "linear" => EtaSchedule::LinearDecay,
    "phase" => EtaSchedule::PhaseDecay,
);
keyword_enum!(CrisisNoise, "crisis_noise",
    "per-coordinate" => CrisisNoise::PerCoordinate,
    "scalar" => CrisisNoise::Scalar,
);
keyword_enum!(NoiseBoundary, "noise_boundary",
    "reflect" => NoiseBoundary::Reflect,
    "clamp" => NoiseBoundary::Clamp,
);

/// Parameters of a dialectical system. Defaults are the classifier settings
/// used for 3-band MR quantization: 14 initial poles, 2 historical phases of
/// 150 iterations, step 0.1, minimum force 5%, minimum contradiction 1%,
/// maximum contradiction 98%, maximum crisis 35%.
#[derive(Debug, Clone, PartialEq)]
pub struct OdcParams {
    pub initial_poles: usize,
    pub n_phases: usize,
    pub phase_len: usize,
    pub eta0: f64,
    pub eta_schedule: EtaSchedule,
    pub f_min: f64,
    pub delta_min: f64,
    pub delta_max: f64,
    pub chi_max: f64,
    /// Number of principal contradictions used for synthesis.
    pub n_main: usize,
    /// Pole synthesis at crises. Off for the classifier.
    pub generation_enabled: bool,
    pub crisis_noise: CrisisNoise,
    pub noise_boundary: NoiseBoundary,
    /// Distance multiplier inside the membership exponent. `None` uses the
    /// training set's `l_max`.
    pub distance_scale: Option<f64>,
    pub seed: u64,
}

impl Default for OdcParams {
    fn default() -> Self {
        OdcParams {
            initial_poles: 14,
            n_phases: 2,
            phase_len: 150,
            eta0: 0.1,
            eta_schedule: EtaSchedule::Constant,
            f_min: 0.05,
            delta_min: 0.01,
            delta_max: 0.98,
            chi_max: 0.35,
            n_main: 1,
            generation_enabled: false,
            crisis_noise: CrisisNoise::PerCoordinate,
            noise_boundary: NoiseBoundary::Reflect,
            distance_scale: None,
            seed: 0,
        }
    }
}

impl OdcParams {
    pub fn validate(&self) -> Result<()> {
        let unit = |name: &'static str, v: f64| {
            if (0.0..=1.0).contains(&v) {
                Ok(())
            } else {
                Err(Error::invalid(name, format!("{v} is outside [0, 1]")))
            }
        };
        if self.initial_poles == 0 {
            return Err(Error::invalid("initial_poles", "must be at least 1"));
        }
        if self.n_phases == 0 {
            return Err(Error::invalid("n_phases", "must be at least 1"));
        }
        if self.phase_len == 0 {
            return Err(Error::invalid("phase_len", "must be at least 1"));
        }
        if !(self.eta0 > 0.0 && self.eta0 < 1.0) {
            return Err(Error::invalid("eta0", format!("{} is outside (0, 1)", self.eta0)));
        }
        unit("f_min", self.f_min)?;
        unit("delta_min", self.delta_min)?;
        unit("delta_max", self.delta_max)?;
        if self.delta_min >= self.delta_max {
            return Err(Error::invalid("delta_min", "must be smaller than delta_max"));
        }
        if !(self.chi_max >= 0.0 && self.chi_max.is_finite()) {
            return Err(Error::invalid("chi_max", "must be a non-negative number"));
        }
        if self.n_main == 0 {
            return Err(Error::invalid("n_main", "must be at least 1"));
        }
        if let Some(s) = self.distance_scale {
            if !(s > 0.0 && s.is_finite()) {
                return Err(Error::invalid("distance_scale", "must be positive and finite"));
            }
        }
        Ok(())
    }

    /// The settings of a single-phase, single-iteration run with every crisis
    /// operator neutralized.
    pub fn single_step(eta0: f64, seed: u64) -> Self {
        OdcParams {
            n_phases: 1,
            phase_len: 1,
            eta0,
            f_min: 0.0,
            delta_min: 0.0,
            chi_max: 0.0,
            seed,
            ..OdcParams::default()
        }
    }

    pub fn total_iterations(&self) -> usize {
        self.n_phases * self.phase_len
    }

    /// Field names accepted by [`OdcParams::set`].
    pub const KEYS: [&'static str; 15] = [
        "initial_poles",
        "n_phases",
        "phase_len",
        "eta0",
        "eta_schedule",
        "f_min",
        "delta_min",
        "delta_max",
        "chi_max",
        "n_main",
        "generation_enabled",
        "crisis_noise",
        "noise_boundary",
        "distance_scale",
        "seed",
    ];

    /// Sets one field from its text form. Returns `Ok(false)` for an unknown key.
    pub fn set(&mut self, key: &str, value: &str) -> Result<bool> {
        match key {
            "initial_poles" => self.initial_poles = parse_field("initial_poles", value)?,
            "n_phases" => self.n_phases = parse_field("n_phases", value)?,
            "phase_len" => self.phase_len = parse_field("phase_len", value)?,
            "eta0" => self.eta0 = parse_field("eta0", value)?,
            "eta_schedule" => self.eta_schedule = value.trim().parse()?,
            "f_min" => self.f_min = parse_field("f_min", value)?,
            "delta_min" => self.delta_min = parse_field("delta_min", value)?,
            "delta_max" => self.delta_max = parse_field("delta_max", value)?,
            "chi_max" => self.chi_max = parse_field("chi_max", value)?,
            "n_main" => self.n_main = parse_field("n_main", value)?,
            "generation_enabled" => self.generation_enabled = parse_field("generation_enabled", value)?,
            "crisis_noise" => self.crisis_noise = value.trim().parse()?,
            "noise_boundary" => self.noise_boundary = value.trim().parse()?,
            "distance_scale" => self.distance_scale = parse_optional_f64("distance_scale", value)?,
            "seed" => self.seed = parse_field("seed", value)?,
            _ => return Ok(false),
        }
        Ok(true)
    }

    /// Every field in text form, in [`OdcParams::KEYS`] order. Floats use
    /// their shortest round-trip representation.
    pub fn pairs(&self) -> Vec<(&'static str, String)> {
        let values = [
            self.initial_poles.to_string(),
            self.n_phases.to_string(),
            self.phase_len.to_string(),
            format!("{:?}", self.eta0),
            self.eta_schedule.to_string(),
            format!("{:?}", self.f_min),
            format!("{:?}", self.delta_min),
            format!("{:?}", self.delta_max),
            format!("{:?}", self.chi_max),
            self.n_main.to_string(),
            self.generation_enabled.to_string(),
            self.crisis_noise.to_string(),
            self.noise_boundary.to_string(),
            format_optional_f64(self.distance_scale),
            self.seed.to_string(),
        ];
        Self::KEYS.into_iter().zip(values).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        OdcParams::default().validate().unwrap();
    }

    #[test]
    fn text_round_trip() {
        let p = OdcParams {
            eta0: 0.1 + 0.2,
            eta_schedule: EtaSchedule::PhaseDecay,
            distance_scale: Some(1.0 / 3.0),
            generation_enabled: true,
            seed: u64::MAX,
            ..OdcParams::default()
        };
        let mut q = OdcParams::default();
        for (k, v) in p.pairs() {
            assert!(q.set(k, &v).unwrap());
        }
        assert_eq!(p, q);
        assert!(!q.set("bogus", "1").unwrap());
        assert!(q.set("eta0", "fast").is_err());
    }

    #[test]
    fn rejects_bad_ranges() {
        let bad = [
            OdcParams { eta0: 1.0, ..Default::default() },
            OdcParams { f_min: 1.5, ..Default::default() },
            OdcParams { delta_min: 0.99, ..Default::default() },
            OdcParams { n_phases: 0, ..Default::default() },
            OdcParams { chi_max: -0.1, ..Default::default() },
            OdcParams { distance_scale: Some(0.0), ..Default::default() },
        ];
        for p in bad {
            assert!(p.validate().unwrap_err().is_usage());
        }
    }

    #[test]
    fn schedules() {
        assert_eq!(EtaSchedule::Constant.eta(0.1, 50, 100, 5, 10), 0.1);
        assert!((EtaSchedule::LinearDecay.eta(0.1, 50, 100, 5, 10) - 0.05).abs() < 1e-15);
        assert!((EtaSchedule::PhaseDecay.eta(0.1, 50, 100, 5, 10) - 0.05).abs() < 1e-15);
        assert_eq!("phase".parse::<EtaSchedule>().unwrap(), EtaSchedule::PhaseDecay);
        assert_eq!(CrisisNoise::Scalar.to_string(), "scalar");
        assert!("x".parse::<NoiseBoundary>().is_err());
    }
}
