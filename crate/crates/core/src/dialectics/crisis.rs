use rand::Rng;
use rand_distr::StandardNormal;

use super::{CrisisNoise, DialecticalSystem, NoiseBoundary, Pole};
use crate::data::FeatureVector;

/// What one revolutionary crisis did to the pole set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CrisisRecord {
    pub poles_before: usize,
    pub eliminated_by_force: usize,
    pub fused: usize,
    pub synthesized: usize,
    pub poles_after: usize,
}

/// Synthesis of a new weight vector: odd (1-based) coordinates come from
/// `wp`, even ones from `wq`.
pub fn crossover(wp: &[f64], wq: &[f64]) -> FeatureVector {
    wp.iter()
        .zip(wq)
        .enumerate()
        .map(|(r, (&a, &b))| if r % 2 == 0 { a } else { b })
        .collect::<Vec<_>>()
        .into()
}

impl DialecticalSystem {
    /// Revolutionary crisis closing a historical phase that is followed by
    /// another one. Runs, in order: force normalization and weak-pole
    /// marking, fusion of near-identical poles, synthesis from principal
    /// contradictions (only with generation enabled), removal of marked poles,
    /// crisis noise, and force reset.
    pub fn crisis(&mut self) -> CrisisRecord {
        self.revolution(true)
    }

    /// Crisis closing the last historical phase. Identical to
    /// [`crisis`](Self::crisis) except that no noise is added, since no
    /// further phase follows.
    pub fn final_crisis(&mut self) -> CrisisRecord {
        self.revolution(false)
    }

    fn revolution(&mut self, with_noise: bool) -> CrisisRecord {
        let p = self.params().clone();
        let n = self.pole_count();
        let mut record = CrisisRecord {
            poles_before: n,
            ..CrisisRecord::default()
        };

        self.poles_mut().iter_mut().for_each(|pole| pole.marked = false);

        // Weak poles.
        let max_force = self.poles().iter().map(|q| q.force).max().unwrap_or(0);
        if max_force > 0 {
            for pole in self.poles_mut().iter_mut() {
                let normalized = pole.force as f64 / max_force as f64;
                if normalized < p.f_min {
                    pole.marked = true;
                    record.eliminated_by_force += 1;
                }
            }
        }

        // Fusion: of each near-identical unmarked pair keep the stronger pole,
        // the lower index on equal force.
        let delta = self.contradiction_matrix();
        for i in 0..n {
            for j in i + 1..n {
                let poles = self.poles();
                if poles[i].marked || poles[j].marked || delta[i][j] >= p.delta_min {
                    continue;
                }
                let loser = if poles[i].force < poles[j].force { i } else { j };
                self.poles_mut()[loser].marked = true;
                record.fused += 1;
            }
        }

        // Synthesis from the principal contradictions.
        let mut newborn = Vec::new();
        if p.generation_enabled {
            let poles = self.poles();
            let mut candidates: Vec<(usize, usize, f64)> = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if !poles[i].marked && !poles[j].marked && delta[i][j] > p.delta_max {
                        candidates.push((i, j, delta[i][j]));
                    }
                }
            }
            candidates.sort_by(|a, b| b.2.total_cmp(&a.2));
            for &(i, j, _) in candidates.iter().take(p.n_main) {
                newborn.push(Pole::new(crossover(&poles[i].weights, &poles[j].weights)));
            }
            record.synthesized = newborn.len();
        }

        self.poles_mut().retain(|q| !q.marked);
        self.poles_mut().extend(newborn);

        if with_noise && p.chi_max > 0.0 {
            self.perturb(p.chi_max, p.crisis_noise, p.noise_boundary);
        }

        self.poles_mut().iter_mut().for_each(|pole| pole.force = 0);
        record.poles_after = self.pole_count();
        record
    }

    fn perturb(&mut self, chi_max: f64, mode: CrisisNoise, boundary: NoiseBoundary) {
        let mut draws: Vec<f64> = Vec::new();
        let coords: usize = self.poles().iter().map(|q| q.weights.dim()).sum();
        let rng = self.crisis_rng();
        match mode {
            CrisisNoise::PerCoordinate => {
                draws.extend((0..coords).map(|_| rng.sample::<f64, _>(StandardNormal)));
            }
            CrisisNoise::Scalar => {
                let g: f64 = rng.sample(StandardNormal);
                draws.resize(coords, g);
            }
        }
        let mut it = draws.into_iter();
        for pole in self.poles_mut().iter_mut() {
            for w in pole.weights.as_mut_slice() {
                let v = *w + chi_max * it.next().expect("one draw per coordinate");
                *w = match boundary {
                    NoiseBoundary::Reflect => reflect_unit(v),
                    NoiseBoundary::Clamp => v.clamp(0.0, 1.0),
                };
            }
        }
    }
}

/// Folds a real number into `[0, 1]` by mirroring at both ends.
pub(crate) fn reflect_unit(v: f64) -> f64 {
    if (0.0..=1.0).contains(&v) {
        return v;
    }
    let m = v.rem_euclid(2.0);
    if m > 1.0 {
        2.0 - m
    } else {
        m
    }
}
