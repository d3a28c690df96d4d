//! Compares two methods' per-slice fidelity with the F-test and the global
//! chi-square adherence.

use odc::stats::{adherence_sequence, chi2_adherence, f_test_similarity, DeviationKind, SampleSummary};

fn summaries(rows: &[[f64; 4]]) -> odc::Result<Vec<SampleSummary>> {
    (0..4)
        .map(|i| {
            let col: Vec<f64> = rows.iter().map(|r| r[i]).collect();
            SampleSummary::from_samples(&col, DeviationKind::MeanAbsolute)
        })
        .collect()
}

fn main() -> odc::Result<()> {
    // me, mae, rmse, psnr per slice
    let odc_rows = [
        [14.1, 4.2, 6.0, 32.5],
        [14.4, 4.4, 6.3, 32.1],
        [13.8, 4.0, 5.8, 32.8],
        [14.9, 4.6, 6.6, 31.7],
    ];
    let km_rows = [
        [13.2, 3.9, 5.7, 33.0],
        [13.9, 4.1, 5.9, 32.7],
        [12.8, 3.7, 5.4, 33.4],
        [14.0, 4.3, 6.1, 32.4],
    ];
    let a = summaries(&odc_rows)?;
    let b = summaries(&km_rows)?;
    for (name, (x, y)) in ["me", "mae", "rmse", "psnr"].iter().zip(a.iter().zip(&b)) {
        println!(
            "{name:<5} ODC {:.3} ± {:.3}  KM {:.3} ± {:.3}  similarity {:.4}",
            x.mean,
            x.mean_dev,
            y.mean,
            y.mean_dev,
            f_test_similarity(x, y)?
        );
    }
    let observed = adherence_sequence(&a[0], &a[1], &a[2], &a[3]);
    let expected = adherence_sequence(&b[0], &b[1], &b[2], &b[3]);
    println!("global chi-square adherence {:.4}", chi2_adherence(&observed, &expected)?);
    Ok(())
}
