//! Steps through one historical phase by hand: evolution updates, the
//! contradiction matrix, then a crisis.

use odc::dialectics::{DialecticalSystem, OdcParams};
use odc::sampling::{initial_prototypes, presentation_order};
use odc::synth::gaussian_blobs;

fn main() -> odc::Result<()> {
    let means = vec![vec![0.2, 0.3], vec![0.75, 0.7]];
    let (data, _) = gaussian_blobs(&means, 300, 0.05, 3);
    let params = OdcParams { initial_poles: 5, ..OdcParams::default() };
    let init = initial_prototypes(&data, params.initial_poles, 3);
    let mut sys = DialecticalSystem::from_weights(init, params.clone(), 255.0)?;

    let x = data.get(0);
    let g = sys.memberships(x)?;
    println!("memberships of the first point: {g:.4?} (sum {:.12})", g.iter().sum::<f64>());

    for &i in presentation_order(data.len(), 3).iter().take(params.phase_len) {
        sys.evolution_step(data.get(i), params.eta0)?;
    }
    let forces: Vec<u64> = sys.poles().iter().map(|p| p.force).collect();
    println!("forces after one phase: {forces:?}");

    println!("contradictions:");
    for row in sys.contradiction_matrix() {
        let cells: Vec<String> = row.iter().map(|d| format!("{d:.3}")).collect();
        println!("  {}", cells.join(" "));
    }

    let record = sys.crisis();
    println!(
        "crisis: {} -> {} poles ({} weak, {} fused, {} synthesized)",
        record.poles_before, record.poles_after, record.eliminated_by_force, record.fused, record.synthesized
    );
    Ok(())
}
