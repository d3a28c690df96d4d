//! Fidelity indexes of a hand-made quantization, and the CSV row they
//! serialize to.

use odc::fidelity::{fidelity, FidelityRow};
use odc::imageio::MultispectralImage;

fn main() -> odc::Result<()> {
    let original = MultispectralImage::new(2, 2, 2, 255, vec![10, 20, 30, 40, 50, 60, 70, 80])?;
    let quantized = MultispectralImage::new(2, 2, 2, 255, vec![12, 20, 30, 40, 50, 60, 70, 77])?;

    let report = fidelity(&quantized, &original)?;
    println!("{report:#?}");

    let lossless = fidelity(&original, &original)?;
    println!("identical images: perfect = {}, psnr = {}", lossless.is_perfect(), lossless.psnr);

    let row = FidelityRow { slice_id: 0, method: "DEMO".into(), report };
    println!("{}", row.to_csv());
    Ok(())
}
