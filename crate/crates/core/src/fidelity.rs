//! Pixel-by-pixel distortion between two multispectral images.
//!
//! The error at a pixel is the Euclidean norm of the band-wise difference,
//! measured in gray levels. `psnr` uses `l_max` as the peak value and is
//! `+inf` for identical images.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::imageio::MultispectralImage;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelityReport {
    /// Largest pixel error.
    pub me: f64,
    pub mae: f64,
    pub mse: f64,
    pub rmse: f64,
    pub psnr: f64,
}

pub const INDEX_NAMES: [&str; 5] = ["me", "mae", "mse", "rmse", "psnr"];

impl FidelityReport {
    pub fn from_errors(errors: impl IntoIterator<Item = f64>, l_max: u32) -> Result<Self> {
        let mut me = 0.0f64;
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        let mut n = 0usize;
        for e in errors {
            me = me.max(e);
            sum += e;
            sum_sq += e * e;
            n += 1;
        }
        if n == 0 {
            return Err(Error::EmptyDataset);
        }
        let mae = sum / n as f64;
        let mse = sum_sq / n as f64;
        let rmse = mse.sqrt();
        Ok(FidelityReport { me, mae, mse, rmse, psnr: psnr(l_max, rmse) })
    }

    pub fn values(&self) -> [f64; 5] {
        [self.me, self.mae, self.mse, self.rmse, self.psnr]
    }

    pub fn is_perfect(&self) -> bool {
        self.mse == 0.0
    }
}

/// `20 log10(l_max / rmse)`, `+inf` at zero error.
pub fn psnr(l_max: u32, rmse: f64) -> f64 {
    if rmse == 0.0 {
        f64::INFINITY
    } else {
        20.0 * (l_max as f64 / rmse).log10()
    }
}

/// Compares `f` against the reference `f_ref`.
pub fn fidelity(f: &MultispectralImage, f_ref: &MultispectralImage) -> Result<FidelityReport> {
    if !f.same_shape(f_ref) {
        return Err(Error::ShapeMismatch(format!(
            "{}x{}x{} (l_max {}) vs {}x{}x{} (l_max {})",
            f.width(),
            f.height(),
            f.bands(),
            f.l_max(),
            f_ref.width(),
            f_ref.height(),
            f_ref.bands(),
            f_ref.l_max()
        )));
    }
    let errors = f.pixel_iter().zip(f_ref.pixel_iter()).map(|(a, b)| {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| {
                let d = x as f64 - y as f64;
                d * d
            })
            .sum::<f64>()
            .sqrt()
    });
    FidelityReport::from_errors(errors, f.l_max())
}

/// A number as written in fidelity CSVs: shortest round-trip form, `inf` for
/// infinity.
pub fn format_value(v: f64) -> String {
    if v == f64::INFINITY {
        "inf".to_string()
    } else {
        format!("{v:?}")
    }
}

pub fn parse_value(s: &str) -> Option<f64> {
    match s.trim() {
        "inf" => Some(f64::INFINITY),
        t => t.parse().ok().filter(|v: &f64| v.is_finite()),
    }
}

pub const CSV_HEADER: &str = "slice_id,method,me,mae,mse,rmse,psnr";

/// One row of a fidelity table.
#[derive(Debug, Clone, PartialEq)]
pub struct FidelityRow {
    pub slice_id: usize,
    pub method: String,
    pub report: FidelityReport,
}

impl FidelityRow {
    pub fn to_csv(&self) -> String {
        let mut s = format!("{},{}", self.slice_id, self.method);
        for v in self.report.values() {
            let _ = write!(s, ",{}", format_value(v));
        }
        s
    }

    pub fn parse(line: &str) -> Result<Self> {
        let bad = || Error::Malformed(format!("fidelity row `{line}`"));
        let cols: Vec<&str> = line.split(',').map(str::trim).collect();
        if cols.len() != 7 || cols[1].is_empty() {
            return Err(bad());
        }
        let slice_id = cols[0].parse().map_err(|_| bad())?;
        let mut v = [0.0; 5];
        for (dst, src) in v.iter_mut().zip(&cols[2..]) {
            *dst = parse_value(src).ok_or_else(bad)?;
        }
        let [me, mae, mse, rmse, psnr] = v;
        Ok(FidelityRow {
            slice_id,
            method: cols[1].to_string(),
            report: FidelityReport { me, mae, mse, rmse, psnr },
        })
    }
}

/// Serializes rows (header included) in the given order.
pub fn write_csv(rows: &[FidelityRow]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in rows {
        s.push_str(&r.to_csv());
        s.push('\n');
    }
    s
}

pub fn read_csv(text: &str) -> Result<Vec<FidelityRow>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    match lines.next() {
        Some(h) if h.trim() == CSV_HEADER => {}
        _ => return Err(Error::Malformed(format!("fidelity CSV must start with `{CSV_HEADER}`"))),
    }
    lines.map(FidelityRow::parse).collect()
}
