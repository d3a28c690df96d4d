//! Saves a trained model, loads it back, and classifies with the copy.

use odc::baselines::BaselineConfig;
use odc::dialectics::OdcParams;
use odc::model::{train_model, Classifier, Method, TrainedModel};
use odc::synth::{gaussian_blobs, separated_means};

fn main() -> odc::Result<()> {
    let means = separated_means(3, 3, 0.3, 5);
    let (data, _) = gaussian_blobs(&means, 500, 0.04, 5);
    let (model, report) = train_model(Method::Odc, &data, &OdcParams { seed: 5, ..OdcParams::default() }, &BaselineConfig::default())?;
    print!("{report}");

    let path = std::env::temp_dir().join("odc_example.model");
    model.save(&path)?;
    let loaded = TrainedModel::load(&path)?;
    println!("--- {} ---\n{}", path.display(), loaded.to_text());

    for p in data.points().iter().take(5) {
        assert_eq!(model.classify(p)?, loaded.classify(p)?);
        println!("{:.3?} -> class {}", p.as_slice(), loaded.classify(p)?);
    }
    Ok(())
}
