//! Fixed-step velocity Verlet for the three unit masses.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{forces, total_energy, PotentialVariant};
use crate::elliptic::EllipticContext;
use crate::error::DynamicsError;
use crate::orbit;
use crate::vec2::Vec2;

/// Positions and velocities of the three bodies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Configuration {
    pub positions: [Vec2; 3],
    pub velocities: [Vec2; 3],
}

impl Configuration {
    /// The analytic choreography at phase `t`.
    pub fn analytic(t: f64, ctx: &EllipticContext) -> Self {
        let s = orbit::triple(t, ctx);
        Self {
            positions: s.positions(),
            velocities: s.velocities(),
        }
    }

    /// Every body shifted by `offset`.
    pub fn translated(&self, offset: Vec2) -> Self {
        Self {
            positions: self.positions.map(|p| p + offset),
            velocities: self.velocities,
        }
    }

    pub fn center_of_mass(&self) -> Vec2 {
        self.positions.iter().copied().sum()
    }

    pub fn angular_momentum(&self) -> f64 {
        self.positions
            .iter()
            .zip(&self.velocities)
            .map(|(x, v)| x.cross(*v))
            .sum()
    }

    /// Largest body-wise distance between the positions of two configurations.
    pub fn max_position_distance(&self, other: &Configuration) -> f64 {
        self.positions
            .iter()
            .zip(&other.positions)
            .map(|(a, b)| (*a - *b).norm())
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub t: f64,
    pub state: Configuration,
    pub energy: f64,
}

/// Uniformly spaced samples of an integration run, starting at `t = 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub dt: f64,
    pub variant: PotentialVariant,
    pub samples: Vec<Sample>,
}

impl Trajectory {
    pub fn first(&self) -> Option<&Sample> {
        self.samples.first()
    }

    pub fn last(&self) -> Option<&Sample> {
        self.samples.last()
    }

    /// `max_t |E(t) − E(0)|`.
    pub fn max_energy_drift(&self) -> f64 {
        let Some(e0) = self.first().map(|s| s.energy) else {
            return 0.0;
        };
        self.samples
            .iter()
            .map(|s| (s.energy - e0).abs())
            .fold(0.0, f64::max)
    }

    /// `max_t |L(t) − L(0)|`.
    pub fn max_angular_momentum_drift(&self) -> f64 {
        let Some(l0) = self.first().map(|s| s.state.angular_momentum()) else {
            return 0.0;
        };
        self.samples
            .iter()
            .map(|s| (s.state.angular_momentum() - l0).abs())
            .fold(0.0, f64::max)
    }

    /// Largest position error against the analytic orbit started at phase `t0`.
    pub fn max_error_against_orbit(&self, t0: f64, ctx: &EllipticContext) -> f64 {
        self.samples
            .iter()
            .map(|s| {
                s.state
                    .max_position_distance(&Configuration::analytic(t0 + s.t, ctx))
            })
            .fold(0.0, f64::max)
    }
}

/// A run that stopped early, with everything computed up to `step`.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("integration aborted at step {step}: {source}")]
pub struct IntegrationFailure {
    pub step: usize,
    pub partial: Trajectory,
    #[source]
    pub source: DynamicsError,
}

/// Velocity-Verlet integration of `n_steps` steps of size `dt`.
pub fn integrate(
    init: &Configuration,
    variant: PotentialVariant,
    dt: f64,
    n_steps: usize,
) -> Result<Trajectory, Box<IntegrationFailure>> {
    let mut traj = Trajectory {
        dt,
        variant,
        samples: Vec::with_capacity(n_steps + 1),
    };
    let fail = |step, traj: Trajectory, source| {
        Box::new(IntegrationFailure {
            step,
            partial: traj,
            source,
        })
    };

    if !(dt > 0.0 && dt.is_finite()) {
        return Err(fail(0, traj, DynamicsError::InvalidStep(dt)));
    }

    let mut state = *init;
    let mut acc = match forces(&state.positions, variant) {
        Ok(a) => a,
        Err(e) => return Err(fail(0, traj, e)),
    };
    let energy = match total_energy(&state.positions, &state.velocities, variant) {
        Ok(e) => e,
        Err(e) => return Err(fail(0, traj, e)),
    };
    traj.samples.push(Sample {
        t: 0.0,
        state,
        energy,
    });

    for step in 1..=n_steps {
        for i in 0..3 {
            state.velocities[i] += acc[i] * (0.5 * dt);
            state.positions[i] += state.velocities[i] * dt;
        }
        acc = match forces(&state.positions, variant) {
            Ok(a) => a,
            Err(e) => return Err(fail(step, traj, e)),
        };
        for i in 0..3 {
            state.velocities[i] += acc[i] * (0.5 * dt);
        }
        let energy = match total_energy(&state.positions, &state.velocities, variant) {
            Ok(e) => e,
            Err(e) => return Err(fail(step, traj, e)),
        };
        traj.samples.push(Sample {
            t: step as f64 * dt,
            state,
            energy,
        });
    }
    Ok(traj)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> EllipticContext {
        EllipticContext::choreographic()
    }

    #[test]
    fn rejects_bad_step() {
        let init = Configuration::analytic(0.0, &ctx());
        for dt in [0.0, -1.0, f64::NAN] {
            let err = integrate(&init, PotentialVariant::UCentral, dt, 10).unwrap_err();
            assert_eq!(err.step, 0);
            assert!(matches!(err.source, DynamicsError::InvalidStep(_)));
        }
    }

    #[test]
    fn collision_returns_partial_trajectory() {
        let init = Configuration {
            positions: [
                Vec2::new(0.2, 0.0),
                Vec2::new(0.2, 0.0),
                Vec2::new(0.0, 5.0),
            ],
            velocities: [Vec2::new(1.0, 0.0), Vec2::new(-1.0, 0.0), Vec2::ZERO],
        };
        let err = integrate(&init, PotentialVariant::VPairwise, 0.01, 100).unwrap_err();
        assert_eq!(err.step, 0);
        assert!(err.partial.samples.is_empty());
        assert!(matches!(
            err.source,
            DynamicsError::Collision { i: 0, j: 1, .. }
        ));
    }

    #[test]
    fn collision_mid_run_keeps_samples() {
        // symmetric pair aimed to meet at the origin after exactly one step
        let (a, dt) = (0.5, 0.01);
        let positions = [Vec2::new(-a, 0.0), Vec2::new(a, 0.0), Vec2::new(0.0, 5.0)];
        let acc = forces(&positions, PotentialVariant::VPairwise).unwrap()[0].x;
        let w = a / dt - 0.5 * acc * dt;
        let init = Configuration {
            positions,
            velocities: [Vec2::new(w, 0.0), Vec2::new(-w, 0.0), Vec2::ZERO],
        };
        let err = integrate(&init, PotentialVariant::VPairwise, dt, 100).unwrap_err();
        assert_eq!(err.step, 1);
        assert_eq!(err.partial.samples.len(), 1);
        assert!(matches!(
            err.source,
            DynamicsError::Collision { i: 0, j: 1, .. }
        ));
    }

    #[test]
    fn samples_are_uniform() {
        let c = ctx();
        let t = integrate(
            &Configuration::analytic(0.0, &c),
            PotentialVariant::UCentral,
            0.01,
            50,
        )
        .unwrap();
        assert_eq!(t.samples.len(), 51);
        for w in t.samples.windows(2) {
            assert!((w[1].t - w[0].t - 0.01).abs() < 1e-15);
        }
    }

    #[test]
    fn short_run_tracks_orbit() {
        let c = ctx();
        let dt = c.period() / 4096.0;
        for v in PotentialVariant::ALL {
            let t = integrate(&Configuration::analytic(0.3, &c), v, dt, 512).unwrap();
            assert!(t.max_error_against_orbit(0.3, &c) < 1e-5);
            assert!(t.max_energy_drift() < 1e-6);
        }
    }
}
