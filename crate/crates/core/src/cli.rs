//! The `odc` command-line tool.
//!
//! Exit codes: 0 on success, 1 for usage errors (bad flags, unknown or
//! out-of-range parameters), 2 for data errors (unreadable or inconsistent
//! inputs).

use std::collections::{BTreeMap, BTreeSet};
use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use crate::baselines::BaselineConfig;
use crate::config::parse_key_values;
use crate::data::normalize;
use crate::dialectics::OdcParams;
use crate::error::{Error, Result};
use crate::fidelity::{self, FidelityRow};
use crate::imageio::{self, MultispectralImage};
use crate::model::{train_model, Classifier, Method, ModelKind, TrainedModel};
use crate::sampling::subsample;
use crate::stats::{adherence_sequence, chi2_adherence, f_test_similarity, DeviationKind, SampleSummary};

#[derive(Debug, Parser)]
#[command(name = "odc", version, about = "Dialectical clustering and vector quantization of multispectral images")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Train a quantizer on a multispectral volume and write a model file.
    Train(TrainArgs),
    /// Quantize every slice with a trained model and record fidelity indexes.
    Quantize(QuantizeArgs),
    /// Summarize fidelity CSVs and compare methods statistically.
    Compare(CompareArgs),
    /// Classify a single pixel vector with a trained model.
    Classify(ClassifyArgs),
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Glob matching one band's slice files (8-bit PNG or PGM); repeat once per
    /// band, in band order. Matches are sorted by name.
    #[arg(long = "bands", value_name = "GLOB")]
    bands: Vec<String>,
    /// Raw single-band volume with a `<FILE>.hdr` sidecar; repeat once per band.
    #[arg(long = "volume", value_name = "FILE", conflicts_with = "bands")]
    volumes: Vec<PathBuf>,
}

#[derive(Debug, Args)]
struct TrainArgs {
    /// odc, km, cm-classical, cm-maxent or ko [default: odc]
    #[arg(long)]
    method: Option<String>,
    #[command(flatten)]
    input: InputArgs,
    /// Model file to write.
    #[arg(long, short)]
    out: PathBuf,
    /// Training report to write [default: <OUT>.report.txt]
    #[arg(long)]
    report: Option<PathBuf>,
    /// Flat `key = value` file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Train on this slice only instead of pooling all slices.
    #[arg(long)]
    slice: Option<String>,
    /// Cap on training vectors, drawn at random without replacement; 0 keeps all [default: 50000]
    #[arg(long)]
    max_samples: Option<String>,
    /// Seed for every random choice [default: 0]
    #[arg(long)]
    seed: Option<String>,

    /// ODC: initial number of poles [default: 14]
    #[arg(long)]
    initial_poles: Option<String>,
    /// ODC: number of historical phases [default: 2]
    #[arg(long)]
    n_phases: Option<String>,
    /// ODC: iterations per historical phase [default: 150]
    #[arg(long)]
    phase_len: Option<String>,
    /// Initial step size [default: 0.1]
    #[arg(long)]
    eta0: Option<String>,
    /// Step law: constant, linear or phase [default: constant for odc, linear otherwise]
    #[arg(long)]
    eta_schedule: Option<String>,
    /// ODC: minimum normalized force [default: 0.05]
    #[arg(long)]
    f_min: Option<String>,
    /// ODC: minimum contradiction [default: 0.01]
    #[arg(long)]
    delta_min: Option<String>,
    /// ODC: maximum contradiction [default: 0.98]
    #[arg(long)]
    delta_max: Option<String>,
    /// ODC: maximum crisis noise [default: 0.35]
    #[arg(long)]
    chi_max: Option<String>,
    /// ODC: principal contradictions used for synthesis [default: 1]
    #[arg(long)]
    n_main: Option<String>,
    /// ODC: synthesize new poles at crises (true or false) [default: false]
    #[arg(long)]
    generation_enabled: Option<String>,
    /// ODC: crisis noise draws, per-coordinate or scalar [default: per-coordinate]
    #[arg(long)]
    crisis_noise: Option<String>,
    /// ODC: bring noisy weights back into range by reflect or clamp [default: reflect]
    #[arg(long)]
    noise_boundary: Option<String>,
    /// Distance multiplier in Gibbs memberships, or auto for l_max [default: auto]
    #[arg(long)]
    distance_scale: Option<String>,
    /// KM, CM, KO: number of classes [default: 13]
    #[arg(long, alias = "outputs")]
    n_outputs: Option<String>,
    /// KM, CM: iteration cap; CM max-entropy, KO: sweeps over the data [default: 200]
    #[arg(long)]
    max_iters: Option<String>,
    /// KO: initial neighborhood radius on the ring [default: 2.0]
    #[arg(long)]
    som_sigma0: Option<String>,
    /// CM classical: fuzzifier m [default: 2.0]
    #[arg(long)]
    fcm_fuzzifier: Option<String>,
}

impl TrainArgs {
    fn overrides(&self) -> Vec<(&'static str, &Option<String>)> {
        vec![
            ("method", &self.method),
            ("slice", &self.slice),
            ("max_samples", &self.max_samples),
            ("seed", &self.seed),
            ("initial_poles", &self.initial_poles),
            ("n_phases", &self.n_phases),
            ("phase_len", &self.phase_len),
            ("eta0", &self.eta0),
            ("eta_schedule", &self.eta_schedule),
            ("f_min", &self.f_min),
            ("delta_min", &self.delta_min),
            ("delta_max", &self.delta_max),
            ("chi_max", &self.chi_max),
            ("n_main", &self.n_main),
            ("generation_enabled", &self.generation_enabled),
            ("crisis_noise", &self.crisis_noise),
            ("noise_boundary", &self.noise_boundary),
            ("distance_scale", &self.distance_scale),
            ("n_outputs", &self.n_outputs),
            ("max_iters", &self.max_iters),
            ("som_sigma0", &self.som_sigma0),
            ("fcm_fuzzifier", &self.fcm_fuzzifier),
        ]
    }
}

#[derive(Debug, Args)]
struct QuantizeArgs {
    /// Model file written by `train`.
    #[arg(long)]
    model: PathBuf,
    #[command(flatten)]
    input: InputArgs,
    /// Directory for quantized and label images.
    #[arg(long)]
    outdir: PathBuf,
    /// Fidelity CSV to create or merge into [default: <OUTDIR>/fidelity.csv]
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Method label in the CSV [default: ODC, KM, CM or KO from the model]
    #[arg(long)]
    label: Option<String>,
    /// Bands shown as red, green and blue in previews [default: 0,1,2]
    #[arg(long, value_delimiter = ',', num_args = 3)]
    rgb: Option<Vec<usize>>,
}

#[derive(Debug, Args)]
struct CompareArgs {
    /// Fidelity CSV, optionally `LABEL=PATH` to relabel all its rows; repeatable.
    #[arg(long, required = true)]
    csv: Vec<String>,
    /// Directory for summary.csv, comparison.csv and report.txt.
    #[arg(long)]
    outdir: PathBuf,
    /// Method compared against every other one [default: ODC]
    #[arg(long)]
    reference: Option<String>,
    /// Spread statistic: mean-abs or std [default: mean-abs]
    #[arg(long, default_value_t = DeviationKind::MeanAbsolute, hide_default_value = true)]
    deviation: DeviationKind,
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    /// Model file written by `train`.
    #[arg(long)]
    model: PathBuf,
    /// Gray levels of the pixel, one per band, comma separated.
    #[arg(value_delimiter = ',', required = true)]
    values: Vec<u16>,
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let outcome = match cli.command {
        Command::Train(a) => cmd_train(&a),
        Command::Quantize(a) => cmd_quantize(&a),
        Command::Compare(a) => cmd_compare(&a),
        Command::Classify(a) => cmd_classify(&a),
    };
    match outcome {
        Ok(out) => {
            print!("{out}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_usage() {
                1
            } else {
                2
            }
        }
    }
}

fn load_input(input: &InputArgs) -> Result<Vec<MultispectralImage>> {
    if !input.volumes.is_empty() {
        return imageio::load_raw_bands(&input.volumes);
    }
    if input.bands.is_empty() {
        return Err(Error::invalid("bands", "one of --bands or --volume is required"));
    }
    let mut per_band = Vec::with_capacity(input.bands.len());
    for pattern in &input.bands {
        let paths = glob::glob(pattern)
            .map_err(|e| Error::invalid("bands", format!("bad glob `{pattern}`: {e}")))?
            .collect::<Result<Vec<PathBuf>, _>>()
            .map_err(|e| Error::io(e.path(), std::io::Error::other(e.to_string())))?;
        if paths.is_empty() {
            return Err(Error::Malformed(format!("`{pattern}` matches no files")));
        }
        per_band.push(paths);
    }
    let slices = per_band[0].len();
    if per_band.iter().any(|p| p.len() != slices) {
        return Err(Error::ShapeMismatch("band globs match different numbers of slices".into()));
    }
    (0..slices)
        .into_par_iter()
        .map(|s| {
            let files: Vec<&PathBuf> = per_band.iter().map(|p| &p[s]).collect();
            imageio::load_bands(&files)
        })
        .collect()
}

fn cmd_train(args: &TrainArgs) -> Result<String> {
    let mut settings = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            parse_key_values(&text).map_err(|m| Error::invalid("config", format!("{}: {m}", path.display())))?
        }
        None => BTreeMap::new(),
    };
    for (key, value) in args.overrides() {
        if let Some(v) = value {
            settings.insert(key.to_string(), v.clone());
        }
    }
    let method: Method = settings.remove("method").as_deref().unwrap_or("odc").parse()?;
    let slice: Option<usize> = settings
        .remove("slice")
        .map(|v| v.parse().map_err(|_| Error::invalid("slice", format!("cannot parse `{v}`"))))
        .transpose()?;
    let max_samples: usize = match settings.remove("max_samples") {
        Some(v) => v.parse().map_err(|_| Error::invalid("max_samples", format!("cannot parse `{v}`")))?,
        None => 50_000,
    };
    let mut odc = OdcParams::default();
    let mut base = BaselineConfig::default();
    for (key, value) in &settings {
        let known_odc = odc.set(key, value)?;
        let known_base = base.set(key, value)?;
        if !known_odc && !known_base {
            return Err(Error::invalid("config", format!("unknown key `{key}`")));
        }
    }
    if method == Method::Odc {
        odc.validate()?;
    } else {
        base.validate()?;
    }

    let images = load_input(&args.input)?;
    let data = match slice {
        Some(s) => images
            .get(s)
            .ok_or_else(|| Error::invalid("slice", format!("{s} is out of range for {} slices", images.len())))?
            .to_dataset()?,
        None => imageio::pooled_dataset(&images)?,
    };
    let seed = if method == Method::Odc { odc.seed } else { base.seed };
    let sample = subsample(&data, max_samples, seed);
    let (model, report) = train_model(method, &sample, &odc, &base)?;
    model.save(&args.out)?;
    let report_path = args.report.clone().unwrap_or_else(|| {
        let mut p = args.out.clone().into_os_string();
        p.push(".report.txt");
        PathBuf::from(p)
    });
    let report = format!("training_vectors {}\n{report}", sample.len());
    fs::write(&report_path, &report).map_err(|e| Error::io(&report_path, e))?;
    Ok(format!(
        "{method}: {} classes from {} vectors -> {}\n",
        model.class_count(),
        sample.len(),
        args.out.display()
    ))
}

fn cmd_quantize(args: &QuantizeArgs) -> Result<String> {
    let model = TrainedModel::load(&args.model)?;
    let images = load_input(&args.input)?;
    let label = args.label.clone().unwrap_or_else(|| model.method.tag().to_string());
    if label.is_empty() || label.contains([',', '\n']) {
        return Err(Error::invalid("label", "must be non-empty and free of commas"));
    }
    let rgb = match args.rgb.as_deref() {
        Some(&[r, g, b]) => Some([r, g, b]),
        Some(_) => return Err(Error::invalid("rgb", "expects three band indices")),
        None => None,
    };
    for img in &images {
        if img.l_max() != model.l_max {
            return Err(Error::ShapeMismatch(format!(
                "model was trained at l_max {}, input has l_max {}",
                model.l_max,
                img.l_max()
            )));
        }
    }
    let results = images
        .par_iter()
        .map(|img| {
            let (q, labels) = imageio::quantize(img, &model)?;
            let report = fidelity::fidelity(&q, img)?;
            Ok((q, labels, report))
        })
        .collect::<Result<Vec<_>>>()?;

    fs::create_dir_all(&args.outdir).map_err(|e| Error::io(&args.outdir, e))?;
    let mut rows = Vec::with_capacity(results.len());
    for (slice_id, (q, labels, report)) in results.into_iter().enumerate() {
        let stem = args.outdir.join(format!("{}_slice{slice_id:03}", label.to_lowercase()));
        save_preview(&q, &stem, rgb)?;
        imageio::save_png(&imageio::render_labels(&labels)?, &suffixed(&stem, "_labels.png"))?;
        rows.push(FidelityRow { slice_id, method: label.clone(), report });
    }

    let csv = args.csv.clone().unwrap_or_else(|| args.outdir.join("fidelity.csv"));
    let mut all = if csv.exists() {
        let text = fs::read_to_string(&csv).map_err(|e| Error::io(&csv, e))?;
        fidelity::read_csv(&text).map_err(|e| Error::format(&csv, e.to_string()))?
    } else {
        Vec::new()
    };
    all.retain(|r| r.method != label);
    let n = rows.len();
    all.extend(rows);
    all.sort_by(|a, b| (a.slice_id, &a.method).cmp(&(b.slice_id, &b.method)));
    fs::write(&csv, fidelity::write_csv(&all)).map_err(|e| Error::io(&csv, e))?;
    Ok(format!("{label}: {n} slices quantized, fidelity rows in {}\n", csv.display()))
}

fn suffixed(stem: &Path, suffix: &str) -> PathBuf {
    let mut s = stem.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

/// An RGB composition for images with at least three bands, otherwise one
/// grayscale file per band.
fn save_preview(img: &MultispectralImage, stem: &Path, rgb: Option<[usize; 3]>) -> Result<()> {
    if img.bands() >= 3 {
        let composed = imageio::compose_rgb(img, rgb.unwrap_or([0, 1, 2]))?;
        return imageio::save_png(&composed, &suffixed(stem, "_quantized.png"));
    }
    if rgb.is_some() {
        return Err(Error::invalid("rgb", format!("needs at least 3 bands, input has {}", img.bands())));
    }
    for b in 0..img.bands() {
        let band = MultispectralImage::new(img.width(), img.height(), 1, img.l_max(), img.band(b))?;
        imageio::save_png(&band, &suffixed(stem, &format!("_quantized_b{b}.png")))?;
    }
    Ok(())
}

const TABLE_INDEXES: [(&str, usize); 4] = [("me", 0), ("mae", 1), ("rmse", 3), ("psnr", 4)];

/// Summary of one index over the slices; `None` when no value is finite
/// (a run of perfect reconstructions has PSNR `inf` everywhere).
type IndexSummary = Option<SampleSummary>;

fn summarize(rows: &[&FidelityRow], index: usize, kind: DeviationKind) -> Result<IndexSummary> {
    let values: Vec<f64> = rows.iter().map(|r| r.report.values()[index]).filter(|v| v.is_finite()).collect();
    if values.is_empty() {
        return Ok(None);
    }
    SampleSummary::from_samples(&values, kind).map(Some)
}

fn similarity(a: &IndexSummary, b: &IndexSummary) -> Result<f64> {
    match (a, b) {
        (Some(a), Some(b)) => f_test_similarity(a, b),
        (None, None) => Ok(1.0),
        _ => Ok(0.0),
    }
}

fn fmt_num(v: f64) -> String {
    fidelity::format_value(v)
}

fn cmd_compare(args: &CompareArgs) -> Result<String> {
    let mut rows: Vec<FidelityRow> = Vec::new();
    for arg in &args.csv {
        let (label, path) = match arg.split_once('=') {
            Some((l, p)) if !l.is_empty() => (Some(l.to_string()), PathBuf::from(p)),
            _ => (None, PathBuf::from(arg)),
        };
        let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        let mut file_rows = fidelity::read_csv(&text).map_err(|e| Error::format(&path, e.to_string()))?;
        if let Some(l) = &label {
            for r in &mut file_rows {
                r.method = l.clone();
            }
        }
        rows.extend(file_rows);
    }

    let mut by_method: BTreeMap<String, Vec<&FidelityRow>> = BTreeMap::new();
    for r in &rows {
        by_method.entry(r.method.clone()).or_default().push(r);
    }
    if by_method.len() < 2 {
        return Err(Error::invalid("csv", format!("need at least two methods, found {}", by_method.len())));
    }
    let mut slice_set: Option<(String, BTreeSet<usize>)> = None;
    for (m, rs) in &by_method {
        let ids: BTreeSet<usize> = rs.iter().map(|r| r.slice_id).collect();
        if ids.len() != rs.len() {
            return Err(Error::Malformed(format!("method {m} lists a slice more than once")));
        }
        match &slice_set {
            None => slice_set = Some((m.clone(), ids)),
            Some((first, s)) if *s != ids => {
                return Err(Error::Malformed(format!("methods {first} and {m} cover different slices")));
            }
            _ => {}
        }
    }
    let reference = args.reference.clone().unwrap_or_else(|| "ODC".to_string());
    if !by_method.contains_key(&reference) {
        return Err(Error::invalid(
            "reference",
            format!("method `{reference}` is not in the inputs ({})", by_method.keys().cloned().collect::<Vec<_>>().join(", ")),
        ));
    }

    let kind = args.deviation;
    let mut summaries: BTreeMap<&str, Vec<IndexSummary>> = BTreeMap::new();
    for (m, rs) in &by_method {
        let s = (0..5).map(|i| summarize(rs, i, kind)).collect::<Result<Vec<_>>>()?;
        summaries.insert(m.as_str(), s);
    }

    let mut summary_csv = String::from("method,index_name,mean,mean_dev,n\n");
    for (m, s) in &summaries {
        for (name, v) in fidelity::INDEX_NAMES.iter().zip(s) {
            match v {
                Some(v) => {
                    let _ = writeln!(summary_csv, "{m},{name},{},{},{}", fmt_num(v.mean), fmt_num(v.mean_dev), v.n);
                }
                None => {
                    let _ = writeln!(summary_csv, "{m},{name},inf,0.0,0");
                }
            }
        }
    }

    let others: Vec<&str> = summaries.keys().copied().filter(|m| *m != reference).collect();
    let reference_summary = &summaries[reference.as_str()];
    let mut comparison_csv = String::from("method_pair,index_name,degree_of_similarity\n");
    let mut f_table: Vec<(String, Vec<f64>, Option<f64>)> = Vec::new();
    for other in &others {
        let pair = format!("{reference}-{other}");
        let other_summary = &summaries[other];
        let mut degrees = Vec::new();
        for (name, i) in TABLE_INDEXES {
            let d = similarity(&reference_summary[i], &other_summary[i])?;
            let _ = writeln!(comparison_csv, "{pair},{name},{}", fmt_num(d));
            degrees.push(d);
        }
        let sequence = |s: &[IndexSummary]| -> Option<[f64; 8]> {
            Some(adherence_sequence(s[0].as_ref()?, s[1].as_ref()?, s[3].as_ref()?, s[4].as_ref()?))
        };
        let chi2 = match (sequence(reference_summary), sequence(other_summary)) {
            (Some(o), Some(e)) if o == e => Some(1.0),
            (Some(o), Some(e)) => chi2_adherence(&o, &e).ok(),
            _ => None,
        };
        let _ = writeln!(
            comparison_csv,
            "{pair},global_chi2,{}",
            chi2.map_or_else(|| "undefined".to_string(), fmt_num)
        );
        f_table.push((pair, degrees, chi2));
    }

    let report = render_report(&summaries, &f_table, kind);
    fs::create_dir_all(&args.outdir).map_err(|e| Error::io(&args.outdir, e))?;
    for (name, text) in [("summary.csv", &summary_csv), ("comparison.csv", &comparison_csv), ("report.txt", &report)] {
        let path = args.outdir.join(name);
        fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
    }
    Ok(report)
}

fn render_report(
    summaries: &BTreeMap<&str, Vec<IndexSummary>>,
    pairs: &[(String, Vec<f64>, Option<f64>)],
    kind: DeviationKind,
) -> String {
    let mut s = String::new();
    let cell = |v: &IndexSummary| match v {
        Some(v) => format!("{:.2} ± {:.2}", v.mean, v.mean_dev),
        None => "inf".to_string(),
    };
    let _ = writeln!(s, "Fidelity indexes, mean ± {kind} deviation over slices");
    let _ = write!(s, "{:<10}", "method");
    for name in fidelity::INDEX_NAMES {
        let _ = write!(s, "{:>22}", name.to_uppercase());
    }
    s.push('\n');
    for (m, v) in summaries {
        let _ = write!(s, "{m:<10}");
        for x in v {
            let _ = write!(s, "{:>22}", cell(x));
        }
        s.push('\n');
    }

    let _ = writeln!(s, "\nDegree of similarity (two-sided F-test p-value)");
    let _ = write!(s, "{:<10}", "index");
    for (pair, _, _) in pairs {
        let _ = write!(s, "{pair:>14}");
    }
    s.push('\n');
    for (row, (name, _)) in TABLE_INDEXES.iter().enumerate() {
        let _ = write!(s, "{:<10}", name.to_uppercase());
        for (_, degrees, _) in pairs {
            let _ = write!(s, "{:>14.2}", degrees[row]);
        }
        s.push('\n');
    }

    let _ = writeln!(s, "\nGlobal adherence (chi-square p-value)");
    let _ = write!(s, "{:<10}", "");
    for (pair, _, _) in pairs {
        let _ = write!(s, "{pair:>14}");
    }
    s.push('\n');
    let _ = write!(s, "{:<10}", "chi2");
    for (_, _, chi2) in pairs {
        match chi2 {
            Some(v) => {
                let _ = write!(s, "{v:>14.2}");
            }
            None => {
                let _ = write!(s, "{:>14}", "undefined");
            }
        }
    }
    s.push('\n');
    if kind == DeviationKind::MeanAbsolute {
        s.push_str("\nVariances for the F-test assume normality: sigma = mean deviation * sqrt(pi/2).\n");
    }
    s
}

fn cmd_classify(args: &ClassifyArgs) -> Result<String> {
    let model = TrainedModel::load(&args.model)?;
    let x = normalize(&args.values, model.l_max)?;
    let k = model.classify(&x)?;
    let proto = crate::data::denormalize(&model.prototypes()[k], model.l_max);
    let mut out = format!("class {k}\nprototype");
    for v in proto {
        let _ = write!(out, " {v}");
    }
    out.push('\n');
    if let ModelKind::Odc(sys) = &model.kind {
        out.push_str("memberships");
        for g in sys.memberships(&x)? {
            let _ = write!(out, " {g:.6}");
        }
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn help_and_usage_exit_codes() {
        assert_eq!(run(["odc", "--help"]), 0);
        assert_eq!(run(["odc", "train", "--help"]), 0);
        assert_eq!(run(["odc", "frobnicate"]), 1);
        assert_eq!(run(["odc", "train"]), 1);
    }

    #[test]
    fn help_lists_defaults() {
        let help = Cli::try_parse_from(["odc", "train", "--help"]).unwrap_err().to_string();
        for needle in ["[default: 14]", "[default: 150]", "[default: 0.05]", "[default: 0.98]", "[default: 0.35]", "[default: 13]"] {
            assert!(help.contains(needle), "{needle} missing");
        }
    }
}
