//! Trained quantizers and their text model files.
//!
//! A model file is line oriented:
//!
//! ```text
//! odc-model 1
//! method odc
//! dim 3
//! classes 5
//! l_max 255
//! distance_scale 2.55e2
//! param initial_poles 14
//! ...
//! pole 0 4.1176470588235292e-1 ...
//! ```
//!
//! ODC models carry `distance_scale` and one `pole <force> <weights...>` line
//! per pole; the other methods carry `centroid <weights...>` lines. Weights
//! are written with 17 significant digits, so loading restores them bit for
//! bit.

use std::fmt::{self, Write as _};
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::baselines::{fcm_train, kmeans_train_traced, som_train_traced, BaselineConfig, Codebook, FcmVariant, MethodTag};
use crate::data::{Dataset, FeatureVector};
use crate::dialectics::{self, DialecticalSystem, OdcParams, Pole};
use crate::error::{Error, Result};

const MAGIC: &str = "odc-model 1";

/// Anything that assigns a class index to a normalized feature vector and
/// exposes one prototype per class.
pub trait Classifier: Sync {
    fn dim(&self) -> usize;
    fn prototypes(&self) -> Vec<FeatureVector>;
    fn classify(&self, x: &[f64]) -> Result<usize>;

    fn class_count(&self) -> usize {
        self.prototypes().len()
    }
}

impl Classifier for DialecticalSystem {
    fn dim(&self) -> usize {
        DialecticalSystem::dim(self)
    }

    fn prototypes(&self) -> Vec<FeatureVector> {
        self.weights()
    }

    fn classify(&self, x: &[f64]) -> Result<usize> {
        DialecticalSystem::classify(self, x)
    }

    fn class_count(&self) -> usize {
        self.pole_count()
    }
}

impl Classifier for Codebook {
    fn dim(&self) -> usize {
        Codebook::dim(self)
    }

    fn prototypes(&self) -> Vec<FeatureVector> {
        self.centroids().to_vec()
    }

    fn classify(&self, x: &[f64]) -> Result<usize> {
        Codebook::classify(self, x)
    }

    fn class_count(&self) -> usize {
        self.len()
    }
}

/// Training method selectable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Odc,
    Km,
    CmClassical,
    CmMaxEnt,
    Ko,
}

impl Method {
    pub const ALL: [Method; 5] = [Method::Odc, Method::Km, Method::CmClassical, Method::CmMaxEnt, Method::Ko];

    pub fn tag(self) -> MethodTag {
        match self {
            Method::Odc => MethodTag::Odc,
            Method::Km => MethodTag::Km,
            Method::CmClassical | Method::CmMaxEnt => MethodTag::Cm,
            Method::Ko => MethodTag::Ko,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Method::Odc => "odc",
            Method::Km => "km",
            Method::CmClassical => "cm-classical",
            Method::CmMaxEnt => "cm-maxent",
            Method::Ko => "ko",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::invalid("method", format!("unknown method `{s}`")))
    }
}

#[derive(Debug, Clone)]
pub enum ModelKind {
    Odc(DialecticalSystem),
    Codebook(Codebook),
}

/// A trained classifier together with what is needed to apply it to images.
#[derive(Debug, Clone)]
pub struct TrainedModel {
    pub method: Method,
    pub l_max: u32,
    /// Parameter echo, `(key, value)` in text form.
    pub params: Vec<(String, String)>,
    pub kind: ModelKind,
}

impl Classifier for TrainedModel {
    fn dim(&self) -> usize {
        self.classifier().dim()
    }

    fn prototypes(&self) -> Vec<FeatureVector> {
        self.classifier().prototypes()
    }

    fn classify(&self, x: &[f64]) -> Result<usize> {
        self.classifier().classify(x)
    }

    fn class_count(&self) -> usize {
        self.classifier().class_count()
    }
}

/// Trains `method` on `data`. ODC reads `odc`, every other method reads
/// `baseline`. The returned text is a human-readable training report.
pub fn train_model(
    method: Method,
    data: &Dataset,
    odc: &OdcParams,
    baseline: &BaselineConfig,
) -> Result<(TrainedModel, String)> {
    let (kind, report, params) = match method {
        Method::Odc => {
            let (sys, report) = dialectics::train(data, odc)?;
            (ModelKind::Odc(sys), report.to_string(), odc.pairs())
        }
        Method::Km => {
            let (cb, trace) = kmeans_train_traced(data, baseline)?;
            (ModelKind::Codebook(cb), trace_report("iteration sse", &trace), baseline.pairs())
        }
        Method::CmClassical | Method::CmMaxEnt => {
            let variant = if method == Method::CmClassical { FcmVariant::Classical } else { FcmVariant::MaxEntropy };
            let cb = fcm_train(data, baseline, variant)?;
            (ModelKind::Codebook(cb), String::new(), baseline.pairs())
        }
        Method::Ko => {
            let (cb, trace) = som_train_traced(data, baseline)?;
            (ModelKind::Codebook(cb), trace_report("sweep mean_winner_distance", &trace), baseline.pairs())
        }
    };
    let model = TrainedModel {
        method,
        l_max: data.l_max(),
        params: params.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        kind,
    };
    let mut text = format!("method {method}\nclasses {}\n", model.class_count());
    text.push_str(&report);
    Ok((model, text))
}

fn trace_report(header: &str, trace: &[f64]) -> String {
    let mut s = format!("{header}\n");
    for (i, v) in trace.iter().enumerate() {
        let _ = writeln!(s, "{} {v:?}", i + 1);
    }
    s
}

impl TrainedModel {
    pub fn classifier(&self) -> &dyn Classifier {
        match &self.kind {
            ModelKind::Odc(s) => s,
            ModelKind::Codebook(c) => c,
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{MAGIC}\nmethod {}\ndim {}\nclasses {}\nl_max {}\n",
            self.method,
            self.dim(),
            self.class_count(),
            self.l_max
        );
        if let ModelKind::Odc(sys) = &self.kind {
            let _ = writeln!(s, "distance_scale {:.16e}", sys.distance_scale());
        }
        for (k, v) in &self.params {
            let _ = writeln!(s, "param {k} {v}");
        }
        match &self.kind {
            ModelKind::Odc(sys) => {
                for p in sys.poles() {
                    let _ = write!(s, "pole {}", p.force);
                    write_weights(&mut s, &p.weights);
                }
            }
            ModelKind::Codebook(cb) => {
                for c in cb.centroids() {
                    s.push_str("centroid");
                    write_weights(&mut s, c);
                }
            }
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let bad = |m: String| Error::Malformed(format!("model file: {m}"));
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        if lines.next().map(str::trim) != Some(MAGIC) {
            return Err(bad(format!("missing `{MAGIC}` header")));
        }
        let mut method = None;
        let mut dim = None;
        let mut classes = None;
        let mut l_max = None;
        let mut scale = None;
        let mut params = Vec::new();
        let mut poles = Vec::new();
        let mut centroids = Vec::new();
        for line in lines {
            let mut words = line.split_whitespace();
            let key = words.next().unwrap_or_default();
            let rest: Vec<&str> = words.collect();
            let single = || match rest.as_slice() {
                [v] => Ok(*v),
                _ => Err(bad(format!("`{key}` takes one value"))),
            };
            let int = |v: &str| v.parse::<usize>().map_err(|_| bad(format!("`{key}`: bad integer `{v}`")));
            match key {
                "method" => method = Some(single()?.parse::<Method>()?),
                "dim" => dim = Some(int(single()?)?),
                "classes" => classes = Some(int(single()?)?),
                "l_max" => {
                    l_max = Some(single()?.parse::<u32>().map_err(|_| bad("bad l_max".into()))?)
                }
                "distance_scale" => {
                    scale = Some(single()?.parse::<f64>().map_err(|_| bad("bad distance_scale".into()))?)
                }
                "param" => match rest.as_slice() {
                    [k, v @ ..] if !v.is_empty() => params.push((k.to_string(), v.join(" "))),
                    _ => return Err(bad("`param` needs a key and a value".into())),
                },
                "pole" => {
                    let (force, w) = rest.split_first().ok_or_else(|| bad("empty pole line".into()))?;
                    let force = force.parse::<u64>().map_err(|_| bad(format!("bad force `{force}`")))?;
                    poles.push(Pole { weights: parse_weights(w).map_err(bad)?, force, marked: false });
                }
                "centroid" => centroids.push(parse_weights(&rest).map_err(bad)?),
                other => return Err(bad(format!("unknown key `{other}`"))),
            }
        }
        let method = method.ok_or_else(|| bad("missing `method`".into()))?;
        let dim = dim.ok_or_else(|| bad("missing `dim`".into()))?;
        let classes = classes.ok_or_else(|| bad("missing `classes`".into()))?;
        let l_max = l_max.filter(|&l| l > 0).ok_or_else(|| bad("missing or zero `l_max`".into()))?;
        let kind = if method == Method::Odc {
            if !centroids.is_empty() {
                return Err(bad("centroid lines in an odc model".into()));
            }
            let mut odc = OdcParams::default();
            for (k, v) in &params {
                if !odc.set(k, v)? {
                    return Err(bad(format!("unknown odc parameter `{k}`")));
                }
            }
            let scale = scale.ok_or_else(|| bad("missing `distance_scale`".into()))?;
            ModelKind::Odc(DialecticalSystem::from_poles(poles, odc, scale)?)
        } else {
            if !poles.is_empty() || scale.is_some() {
                return Err(bad(format!("odc-only lines in a {method} model")));
            }
            ModelKind::Codebook(Codebook::new(centroids, method.tag())?)
        };
        let model = TrainedModel { method, l_max, params, kind };
        if model.dim() != dim || model.class_count() != classes {
            return Err(bad(format!(
                "header says {dim} dims and {classes} classes, body has {} and {}",
                model.dim(),
                model.class_count()
            )));
        }
        Ok(model)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_text()).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text).map_err(|e| Error::format(path, e.to_string()))
    }
}

fn write_weights(s: &mut String, w: &[f64]) {
    for v in w {
        let _ = write!(s, " {v:.16e}");
    }
    s.push('\n');
}

fn parse_weights(words: &[&str]) -> Result<FeatureVector, String> {
    if words.is_empty() {
        return Err("prototype without weights".into());
    }
    words
        .iter()
        .map(|w| w.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| format!("bad weight `{w}`")))
        .collect::<Result<Vec<_>, _>>()
        .map(FeatureVector::new)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::gaussian_blobs;
    use proptest::prelude::*;

    fn blobs() -> Dataset {
        gaussian_blobs(&[vec![0.2, 0.3, 0.4], vec![0.7, 0.6, 0.2], vec![0.5, 0.9, 0.8]], 100, 0.03, 2).0
    }

    fn same(a: &TrainedModel, b: &TrainedModel) {
        assert_eq!(a.method, b.method);
        assert_eq!(a.l_max, b.l_max);
        assert_eq!(a.params, b.params);
        match (&a.kind, &b.kind) {
            (ModelKind::Odc(x), ModelKind::Odc(y)) => {
                assert_eq!(x.poles(), y.poles());
                assert_eq!(x.params(), y.params());
                assert_eq!(x.distance_scale().to_bits(), y.distance_scale().to_bits());
            }
            (ModelKind::Codebook(x), ModelKind::Codebook(y)) => assert_eq!(x, y),
            _ => panic!("kinds differ"),
        }
    }

    #[test]
    fn every_method_round_trips() {
        let data = blobs();
        let odc = OdcParams { initial_poles: 6, ..OdcParams::default() };
        let base = BaselineConfig { n_outputs: 4, max_iters: 10, ..BaselineConfig::default() };
        for m in Method::ALL {
            let (model, report) = train_model(m, &data, &odc, &base).unwrap();
            assert!(report.starts_with(&format!("method {m}\n")));
            let text = model.to_text();
            let back = TrainedModel::parse(&text).unwrap();
            same(&model, &back);
            assert_eq!(back.to_text(), text);
        }
    }

    #[test]
    fn parse_errors() {
        assert!(TrainedModel::parse("").is_err());
        let good = "odc-model 1\nmethod km\ndim 2\nclasses 1\nl_max 255\ncentroid 0.5 0.25\n";
        assert!(TrainedModel::parse(good).is_ok());
        assert!(TrainedModel::parse(&good.replace("classes 1", "classes 2")).is_err());
        assert!(TrainedModel::parse(&good.replace("0.25", "x")).is_err());
        assert!(TrainedModel::parse(&good.replace("method km", "method gmm")).is_err());
        assert!(TrainedModel::parse(&format!("{good}centroid 1 2 3\n")).is_err());
        assert!(TrainedModel::parse(&good.replace("l_max 255\n", "")).is_err());
    }

    #[test]
    fn method_names() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert_eq!(Method::CmMaxEnt.tag(), MethodTag::Cm);
    }

    proptest! {
        #[test]
        fn weights_round_trip_bit_exactly(w in proptest::collection::vec(any::<f64>().prop_filter("finite", |v| v.is_finite()), 1..6)) {
            let cb = Codebook::new(vec![FeatureVector::new(w.clone())], MethodTag::Km).unwrap();
            let model = TrainedModel { method: Method::Km, l_max: 255, params: vec![], kind: ModelKind::Codebook(cb) };
            let back = TrainedModel::parse(&model.to_text()).unwrap();
            let got = back.prototypes();
            for (a, b) in got[0].iter().zip(&w) {
                prop_assert_eq!(a.to_bits(), b.to_bits());
            }
        }
    }
}
