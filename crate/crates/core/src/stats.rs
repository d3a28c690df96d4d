//! Comparing per-slice fidelity samples of two methods: a variance-ratio F
//! test per index and a global chi-square adherence test.

use std::fmt;
use std::str::FromStr;

use statrs::distribution::{ChiSquared, ContinuousCDF, FisherSnedecor};

use crate::error::{Error, Result};

/// Spread statistic stored in a [`SampleSummary`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DeviationKind {
    /// Mean absolute deviation about the mean.
    #[default]
    MeanAbsolute,
    /// Sample standard deviation (`n - 1` denominator).
    StdDev,
}

impl fmt::Display for DeviationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DeviationKind::MeanAbsolute => "mean-abs",
            DeviationKind::StdDev => "std",
        })
    }
}

impl FromStr for DeviationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mean-abs" => Ok(DeviationKind::MeanAbsolute),
            "std" => Ok(DeviationKind::StdDev),
            other => Err(Error::invalid("deviation", format!("unknown value `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleSummary {
    pub mean: f64,
    pub mean_dev: f64,
    pub n: usize,
    pub kind: DeviationKind,
}

impl SampleSummary {
    pub fn from_samples(values: &[f64], kind: DeviationKind) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyDataset);
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Malformed("sample contains a non-finite value".into()));
        }
        let n = values.len();
        let mean = values.iter().sum::<f64>() / n as f64;
        let mean_dev = match kind {
            DeviationKind::MeanAbsolute => values.iter().map(|v| (v - mean).abs()).sum::<f64>() / n as f64,
            DeviationKind::StdDev if n < 2 => 0.0,
            DeviationKind::StdDev => {
                (values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1) as f64).sqrt()
            }
        };
        Ok(SampleSummary { mean, mean_dev, n, kind })
    }

    /// Variance estimate; a mean absolute deviation is converted assuming
    /// normality (`sigma = mad * sqrt(pi / 2)`).
    pub fn variance(&self) -> f64 {
        let sigma = match self.kind {
            DeviationKind::MeanAbsolute => self.mean_dev * std::f64::consts::FRAC_PI_2.sqrt(),
            DeviationKind::StdDev => self.mean_dev,
        };
        sigma * sigma
    }
}

/// Two-sided p-value of the variance-ratio test, used as the degree of
/// similarity between two samples. Symmetric in its arguments.
///
/// When both deviations are zero the samples are called identical (1.0) if
/// their means agree and dissimilar (0.0) otherwise; a zero deviation on one
/// side only gives 0.0.
pub fn f_test_similarity(a: &SampleSummary, b: &SampleSummary) -> Result<f64> {
    for s in [a, b] {
        if s.n < 2 {
            return Err(Error::invalid("n", format!("{} samples, at least 2 are needed", s.n)));
        }
        if !(s.mean_dev >= 0.0 && s.mean_dev.is_finite() && s.mean.is_finite()) {
            return Err(Error::invalid("mean_dev", "must be finite and non-negative"));
        }
    }
    if a.kind != b.kind {
        return Err(Error::invalid("deviation", "summaries use different deviation kinds"));
    }
    let (va, vb) = (a.variance(), b.variance());
    match (va == 0.0, vb == 0.0) {
        (true, true) => return Ok(if a.mean == b.mean { 1.0 } else { 0.0 }),
        (true, false) | (false, true) => return Ok(0.0),
        _ => {}
    }
    // Larger variance on top; ties ordered by sample size so that swapping
    // the arguments cannot change the result.
    let ((v_num, n_num), (v_den, n_den)) = if (va, a.n) >= (vb, b.n) {
        ((va, a.n), (vb, b.n))
    } else {
        ((vb, b.n), (va, a.n))
    };
    let f = v_num / v_den;
    if f == 1.0 && n_num == n_den {
        return Ok(1.0);
    }
    let dist = FisherSnedecor::new((n_num - 1) as f64, (n_den - 1) as f64)
        .map_err(|e| Error::invalid("n", e.to_string()))?;
    let tail = dist.cdf(f).min(dist.sf(f));
    Ok((2.0 * tail).clamp(0.0, 1.0))
}

/// The statistic `sum (o - e)^2 / e`.
pub fn chi2_statistic(observed: &[f64], expected: &[f64]) -> Result<f64> {
    if observed.len() != expected.len() {
        return Err(Error::DimensionMismatch { expected: expected.len(), found: observed.len() });
    }
    if observed.len() < 2 {
        return Err(Error::invalid("observed", "at least two entries are needed"));
    }
    if let Some(e) = expected.iter().find(|&&e| !(e > 0.0 && e.is_finite())) {
        return Err(Error::invalid("expected", format!("entry {e} is not positive")));
    }
    if observed.iter().any(|o| !o.is_finite()) {
        return Err(Error::invalid("observed", "entries must be finite"));
    }
    Ok(observed.iter().zip(expected).map(|(o, e)| (o - e) * (o - e) / e).sum())
}

/// Survival probability of [`chi2_statistic`] under `len - 1` degrees of
/// freedom. Exactly 1.0 only when the sequences coincide.
pub fn chi2_adherence(observed: &[f64], expected: &[f64]) -> Result<f64> {
    let x2 = chi2_statistic(observed, expected)?;
    if x2 == 0.0 {
        return Ok(1.0);
    }
    let dist = ChiSquared::new((observed.len() - 1) as f64).map_err(|e| Error::invalid("observed", e.to_string()))?;
    Ok(dist.sf(x2).clamp(0.0, 1.0 - f64::EPSILON / 2.0))
}

/// The eight-entry sequence compared by [`chi2_adherence`]: means of ME, MAE,
/// RMSE and PSNR followed by their deviations.
pub fn adherence_sequence(me: &SampleSummary, mae: &SampleSummary, rmse: &SampleSummary, psnr: &SampleSummary) -> [f64; 8] {
    [me.mean, mae.mean, rmse.mean, psnr.mean, me.mean_dev, mae.mean_dev, rmse.mean_dev, psnr.mean_dev]
}
