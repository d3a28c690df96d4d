//! Trains every method on a noisy phantom and prints the fidelity indexes of
//! each quantized slice.

use odc::baselines::BaselineConfig;
use odc::dialectics::OdcParams;
use odc::fidelity::{fidelity, INDEX_NAMES};
use odc::imageio::{pooled_dataset, quantize};
use odc::model::{train_model, Classifier, Method};
use odc::synth::phantom_volume;

fn main() -> odc::Result<()> {
    let slices = phantom_volume(48, 40, 3, 6.0, 11);
    let data = pooled_dataset(&slices)?;
    let odc_params = OdcParams { seed: 11, ..OdcParams::default() };
    let baseline = BaselineConfig { n_outputs: 5, max_iters: 30, seed: 11, ..BaselineConfig::default() };

    println!("{:<13} {:>5} {:>7}  {}", "method", "slice", "classes", INDEX_NAMES.join("  "));
    for method in Method::ALL {
        let (model, _) = train_model(method, &data, &odc_params, &baseline)?;
        for (s, img) in slices.iter().enumerate() {
            let (q, _) = quantize(img, &model)?;
            let r = fidelity(&q, img)?;
            println!(
                "{:<13} {:>5} {:>7}  {:.3} {:.3} {:.3} {:.3} {:.2}",
                method.name(),
                s,
                model.class_count(),
                r.me,
                r.mae,
                r.mse,
                r.rmse,
                r.psnr
            );
        }
    }
    Ok(())
}
