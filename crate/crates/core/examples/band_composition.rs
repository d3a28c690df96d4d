//! Writes the bands of a phantom slice as gray images, reloads them, and
//! saves an RGB composition plus a rendered label map.

use odc::baselines::{kmeans_train, BaselineConfig};
use odc::imageio::{compose_rgb, load_bands, quantize, render_labels, save_bands, save_png};
use odc::synth::phantom_volume;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join("odc_band_composition");
    std::fs::create_dir_all(&dir)?;
    let slice = phantom_volume(64, 48, 1, 5.0, 2).remove(0);

    let paths: Vec<_> = ["pd.pgm", "t1.pgm", "t2.pgm"].iter().map(|n| dir.join(n)).collect();
    save_bands(&slice, &paths)?;
    let reloaded = load_bands(&paths)?;
    assert_eq!(reloaded, slice);

    // T2, T1, PD as red, green, blue.
    save_png(&compose_rgb(&reloaded, [2, 1, 0])?, &dir.join("composition.png"))?;

    let codebook = kmeans_train(&reloaded.to_dataset()?, &BaselineConfig { n_outputs: 5, ..BaselineConfig::default() })?;
    let (quantized, labels) = quantize(&reloaded, &codebook)?;
    save_png(&compose_rgb(&quantized, [2, 1, 0])?, &dir.join("quantized.png"))?;
    save_png(&render_labels(&labels)?, &dir.join("labels.png"))?;
    println!("wrote images to {}", dir.display());
    Ok(())
}
