use std::fmt;

use super::{CrisisRecord, DialecticalSystem, OdcParams};
use crate::data::Dataset;
use crate::error::{check_dim, Error, Result};
use crate::sampling::{initial_prototypes, presentation_order};

/// Outcome of one historical phase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseRecord {
    pub phase: usize,
    pub crisis: CrisisRecord,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrainingReport {
    pub initial_pole_count: usize,
    pub final_pole_count: usize,
    pub iterations_run: usize,
    pub phase_log: Vec<PhaseRecord>,
}

impl fmt::Display for TrainingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "initial_poles {}", self.initial_pole_count)?;
        writeln!(f, "final_poles {}", self.final_pole_count)?;
        writeln!(f, "iterations {}", self.iterations_run)?;
        writeln!(f, "phase poles_before eliminated fused synthesized poles_after")?;
        for r in &self.phase_log {
            let c = &r.crisis;
            writeln!(
                f,
                "{} {} {} {} {} {}",
                r.phase, c.poles_before, c.eliminated_by_force, c.fused, c.synthesized, c.poles_after
            )?;
        }
        Ok(())
    }
}

/// Initializes a system from the data and trains it.
///
/// The initial poles are distinct points drawn from the dataset with the
/// seeded init stream; memberships use `params.distance_scale` or, when
/// unset, the dataset's `l_max`.
pub fn train(data: &Dataset, params: &OdcParams) -> Result<(DialecticalSystem, TrainingReport)> {
    params.validate()?;
    data.require_non_empty()?;
    if params.initial_poles > data.len() {
        return Err(Error::TooFewPoints {
            requested: params.initial_poles,
            available: data.len(),
        });
    }
    let init = initial_prototypes(data, params.initial_poles, params.seed);
    let scale = params.distance_scale.unwrap_or(data.l_max() as f64);
    let mut system = DialecticalSystem::from_weights(init, params.clone(), scale)?;
    let report = system.train(data)?;
    Ok((system, report))
}

impl DialecticalSystem {
    /// Runs every historical phase on the current poles.
    ///
    /// Each phase presents `phase_len` vectors from a seeded cyclic sweep over
    /// the data and ends in a crisis; the last crisis adds no noise.
    pub fn train(&mut self, data: &Dataset) -> Result<TrainingReport> {
        data.require_non_empty()?;
        check_dim(self.dim(), data.dim())?;
        let p = self.params().clone();
        let order = presentation_order(data.len(), p.seed);
        let total = p.total_iterations();
        let initial_pole_count = self.pole_count();

        let mut t = 0;
        let mut phase_log = Vec::with_capacity(p.n_phases);
        for phase in 0..p.n_phases {
            for tau in 0..p.phase_len {
                let x = data.get(order[t % order.len()]);
                let eta = p.eta_schedule.eta(p.eta0, t, total, tau, p.phase_len);
                self.evolution_step(x, eta)?;
                t += 1;
            }
            let crisis = if phase + 1 < p.n_phases {
                self.crisis()
            } else {
                self.final_crisis()
            };
            phase_log.push(PhaseRecord {
                phase: phase + 1,
                crisis,
            });
        }

        Ok(TrainingReport {
            initial_pole_count,
            final_pole_count: self.pole_count(),
            iterations_run: t,
            phase_log,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::FeatureVector;

    fn grid() -> Dataset {
        let mut pts = Vec::new();
        for i in 0..10 {
            for j in 0..10 {
                pts.push(FeatureVector::from([i as f64 / 9.0, j as f64 / 9.0]));
            }
        }
        Dataset::new(pts, 2, 255).unwrap()
    }

    #[test]
    fn report_shape() {
        let params = OdcParams { initial_poles: 6, n_phases: 3, phase_len: 40, ..OdcParams::default() };
        let (sys, rep) = train(&grid(), &params).unwrap();
        assert_eq!(rep.phase_log.len(), 3);
        assert_eq!(rep.iterations_run, 120);
        assert_eq!(rep.final_pole_count, sys.pole_count());
        assert!(sys.poles().iter().all(|p| !p.marked && p.force == 0));
        assert!(rep.to_string().starts_with("initial_poles 6\n"));
    }

    #[test]
    fn deterministic_under_seed() {
        let params = OdcParams { initial_poles: 8, seed: 9, ..OdcParams::default() };
        let a = train(&grid(), &params).unwrap();
        let b = train(&grid(), &params).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_mismatch_and_small_data() {
        let params = OdcParams { initial_poles: 3, ..OdcParams::default() };
        let (mut sys, _) = train(&grid(), &params).unwrap();
        let other = Dataset::new(vec![FeatureVector::from([0.5])], 1, 255).unwrap();
        assert!(matches!(sys.train(&other), Err(Error::DimensionMismatch { .. })));
        let tiny = Dataset::new(vec![FeatureVector::from([0.5, 0.5])], 2, 255).unwrap();
        assert!(matches!(train(&tiny, &params), Err(Error::TooFewPoints { .. })));
    }

    #[test]
    fn single_step_is_one_evolution() {
        let data = grid();
        let params = OdcParams { initial_poles: 5, ..OdcParams::single_step(0.1, 4) };
        let (trained, rep) = train(&data, &params).unwrap();
        assert_eq!(rep.iterations_run, 1);
        assert_eq!(rep.final_pole_count, 5);

        let init = initial_prototypes(&data, 5, 4);
        let mut manual = DialecticalSystem::from_weights(init, params.clone(), 255.0).unwrap();
        let first = presentation_order(data.len(), 4)[0];
        manual.evolution_step(data.get(first), 0.1).unwrap();
        assert_eq!(trained.weights(), manual.weights());
    }
}
