//! Trains the dialectical classifier on three Gaussian blobs and shows how
//! many of the 14 initial poles survive the crises.

use odc::data::euclidean_distance;
use odc::dialectics::{train, OdcParams};
use odc::synth::{gaussian_blobs, separated_means};

fn main() -> odc::Result<()> {
    let means = separated_means(3, 3, 0.3, 7);
    let (data, _) = gaussian_blobs(&means, 600, 0.04, 7);
    let params = OdcParams { seed: 7, ..OdcParams::default() };
    let (system, report) = train(&data, &params)?;

    print!("{report}");
    for (i, pole) in system.poles().iter().enumerate() {
        let w: Vec<String> = pole.weights.iter().map(|v| format!("{v:.3}")).collect();
        println!("pole {i}: [{}]", w.join(", "));
    }
    for (b, m) in means.iter().enumerate() {
        let nearest = system
            .weights()
            .iter()
            .map(|w| euclidean_distance(w, m))
            .collect::<odc::Result<Vec<f64>>>()?
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        println!("blob {b}: nearest pole at distance {nearest:.4}");
    }
    Ok(())
}
