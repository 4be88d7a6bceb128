//! Forces, potentials and the equation of motion.
//!
//! Bodies have unit mass. The pair interaction is the 2D Newtonian
//! potential `½ ln r_ij`, supplemented by one of two repulsions:
//!
//! ```text
//! U = Σ_{i<j} ½ ln r_ij − Σ_i (√3/8) xᵢ²          (central)
//! V = Σ_{i<j} [½ ln r_ij − (√3/24) r_ij²]          (pairwise)
//! ```
//!
//! Both give `ẍᵢ = F_Newton + F_repulsive`, and the two repulsive forces
//! coincide on configurations with zero center of mass.

mod one_body;
mod verlet;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::elliptic::EllipticContext;
use crate::error::DynamicsError;
use crate::orbit;
use crate::vec2::Vec2;

pub use one_body::{
    one_body_lemniscate, one_body_lemniscate_residual, OneBodyState, ONE_BODY_MARGIN,
};
pub use verlet::{integrate, Configuration, IntegrationFailure, Sample, Trajectory};

/// Pairwise distances below this are treated as collisions.
pub const COLLISION_DISTANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PotentialVariant {
    /// Repulsion `(√3/4) xᵢ` from a fixed center at the origin.
    #[serde(rename = "U")]
    UCentral,
    /// Mutual repulsion `−(√3/12) Σ_j (xⱼ − xᵢ)`.
    #[serde(rename = "V")]
    VPairwise,
}

impl PotentialVariant {
    pub const ALL: [PotentialVariant; 2] =
        [PotentialVariant::UCentral, PotentialVariant::VPairwise];
}

impl fmt::Display for PotentialVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PotentialVariant::UCentral => "U",
            PotentialVariant::VPairwise => "V",
        })
    }
}

impl FromStr for PotentialVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "U" | "u" => Ok(PotentialVariant::UCentral),
            "V" | "v" => Ok(PotentialVariant::VPairwise),
            other => Err(format!(
                "unknown potential variant {other:?} (expected U or V)"
            )),
        }
    }
}

fn check_index(i: usize) -> Result<(), DynamicsError> {
    if i < 3 {
        Ok(())
    } else {
        Err(DynamicsError::BodyIndex(i))
    }
}

fn check_pairs(positions: &[Vec2; 3]) -> Result<(), DynamicsError> {
    for (i, j) in [(0, 1), (1, 2), (2, 0)] {
        let d = (positions[j] - positions[i]).norm();
        if !(d >= COLLISION_DISTANCE) {
            return Err(DynamicsError::Collision { i, j, distance: d });
        }
    }
    Ok(())
}

/// `½ Σ_{j≠i} (xⱼ − xᵢ) / |xⱼ − xᵢ|²`.
pub fn force_newton(positions: &[Vec2; 3], i: usize) -> Result<Vec2, DynamicsError> {
    check_index(i)?;
    let mut f = Vec2::ZERO;
    for (j, &pj) in positions.iter().enumerate() {
        if j == i {
            continue;
        }
        let d = pj - positions[i];
        let r2 = d.norm_sq();
        if !(r2.sqrt() >= COLLISION_DISTANCE) {
            return Err(DynamicsError::Collision {
                i: i.min(j),
                j: i.max(j),
                distance: r2.sqrt(),
            });
        }
        f += d * (0.5 / r2);
    }
    Ok(f)
}

/// `(√3/4) x`.
pub fn force_repulsive1(x: Vec2) -> Vec2 {
    x * (3f64.sqrt() / 4.0)
}

/// `−(√3/12) Σ_{j≠i} (xⱼ − xᵢ)`.
pub fn force_repulsive2(positions: &[Vec2; 3], i: usize) -> Result<Vec2, DynamicsError> {
    check_index(i)?;
    let sum: Vec2 = positions
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != i)
        .map(|(_, &pj)| pj - positions[i])
        .sum();
    Ok(sum * (-3f64.sqrt() / 12.0))
}

/// Total force on body `i` under `variant`.
pub fn force(
    positions: &[Vec2; 3],
    i: usize,
    variant: PotentialVariant,
) -> Result<Vec2, DynamicsError> {
    let newton = force_newton(positions, i)?;
    let rep = match variant {
        PotentialVariant::UCentral => force_repulsive1(positions[i]),
        PotentialVariant::VPairwise => force_repulsive2(positions, i)?,
    };
    Ok(newton + rep)
}

pub fn forces(
    positions: &[Vec2; 3],
    variant: PotentialVariant,
) -> Result<[Vec2; 3], DynamicsError> {
    Ok([
        force(positions, 0, variant)?,
        force(positions, 1, variant)?,
        force(positions, 2, variant)?,
    ])
}

pub fn potential(positions: &[Vec2; 3], variant: PotentialVariant) -> Result<f64, DynamicsError> {
    check_pairs(positions)?;
    let r3 = 3f64.sqrt();
    let mut e = 0.0;
    for (i, j) in [(0, 1), (1, 2), (2, 0)] {
        let r2 = (positions[j] - positions[i]).norm_sq();
        // ½ ln r = ¼ ln r²
        e += 0.25 * r2.ln();
        if variant == PotentialVariant::VPairwise {
            e -= r3 / 24.0 * r2;
        }
    }
    if variant == PotentialVariant::UCentral {
        e -= r3 / 8.0 * positions.iter().map(|p| p.norm_sq()).sum::<f64>();
    }
    Ok(e)
}

/// `½ Σ vᵢ² + potential`.
pub fn total_energy(
    positions: &[Vec2; 3],
    velocities: &[Vec2; 3],
    variant: PotentialVariant,
) -> Result<f64, DynamicsError> {
    let kinetic: f64 = 0.5 * velocities.iter().map(|v| v.norm_sq()).sum::<f64>();
    Ok(kinetic + potential(positions, variant)?)
}

/// `aᵢ − F_Newton(i) − F_repulsive(i)` on the analytic orbit.
pub fn eom_residual_vector(
    t: f64,
    body: usize,
    variant: PotentialVariant,
    ctx: &EllipticContext,
) -> Result<Vec2, DynamicsError> {
    check_index(body)?;
    let s = orbit::triple(t, ctx);
    let positions = s.positions();
    Ok(s.bodies[body].acc - force(&positions, body, variant)?)
}

/// Largest equation-of-motion residual over the three bodies.
pub fn eom_residual(
    t: f64,
    variant: PotentialVariant,
    ctx: &EllipticContext,
) -> Result<f64, DynamicsError> {
    let s = orbit::triple(t, ctx);
    let positions = s.positions();
    let mut worst = 0.0f64;
    for (i, b) in s.bodies.iter().enumerate() {
        worst = worst.max((b.acc - force(&positions, i, variant)?).norm());
    }
    Ok(worst)
}

/// Largest difference between the U and V residual vectors at `t`.
pub fn variant_disagreement(t: f64, ctx: &EllipticContext) -> Result<f64, DynamicsError> {
    let mut worst = 0.0f64;
    for body in 0..3 {
        let u = eom_residual_vector(t, body, PotentialVariant::UCentral, ctx)?;
        let v = eom_residual_vector(t, body, PotentialVariant::VPairwise, ctx)?;
        worst = worst.max((u - v).norm());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::make_context;
    use proptest::prelude::*;

    fn ctx() -> EllipticContext {
        EllipticContext::choreographic()
    }

    fn equilateral(side: f64) -> [Vec2; 3] {
        let r = side / 3f64.sqrt();
        [0.0f64, 2.0, 4.0].map(|k| {
            let a = k * std::f64::consts::PI / 3.0 + 0.3;
            Vec2::new(r * a.cos(), r * a.sin())
        })
    }

    #[test]
    fn newton_force_on_equilateral_vertex_points_inward() {
        let p = equilateral(1.3);
        for i in 0..3 {
            let f = force_newton(&p, i).unwrap();
            assert!(f.cross(p[i]).abs() < 1e-14);
            assert!(f.dot(p[i]) < 0.0);
        }
    }

    #[test]
    fn newton_force_vanishes_between_antipodal_pair() {
        let s = orbit::triple(0.0, &ctx());
        let f = force_newton(&s.positions(), 0).unwrap();
        assert!(f.norm() < 1e-15);
        assert!(force_repulsive2(&s.positions(), 0).unwrap().norm() < 1e-15);
    }

    #[test]
    fn newton_force_matches_rearranged_equation_of_motion() {
        let c = ctx();
        let s = orbit::triple(0.0, &c);
        let f = force_newton(&s.positions(), 1).unwrap();
        let a = orbit::acceleration(4.0 * c.quarter_period() / 3.0, &c);
        assert!((f - (a - force_repulsive1(s.bodies[1].pos))).norm() < 1e-10);
    }

    #[test]
    fn repulsive1_is_linear() {
        assert_eq!(force_repulsive1(Vec2::ZERO), Vec2::ZERO);
        assert_eq!(
            force_repulsive1(Vec2::new(1.0, 0.0)),
            Vec2::new(3f64.sqrt() / 4.0, 0.0)
        );
        let x = Vec2::new(0.37, -1.2);
        assert_eq!(force_repulsive1(2.0 * x), 2.0 * force_repulsive1(x));
    }

    #[test]
    fn repulsive2_offset_by_center_of_mass() {
        let p = [
            Vec2::new(0.3, 0.1),
            Vec2::new(-0.7, 0.4),
            Vec2::new(0.2, -0.9),
        ];
        let com: Vec2 = p.iter().copied().sum();
        for i in 0..3 {
            let d = force_repulsive2(&p, i).unwrap() - force_repulsive1(p[i]);
            assert!((d + force_repulsive1(com) / 3.0).norm() < 1e-15);
        }
    }

    #[test]
    fn collision_is_reported() {
        let p = [
            Vec2::new(0.3, 0.1),
            Vec2::new(0.3, 0.1),
            Vec2::new(0.2, -0.9),
        ];
        assert!(matches!(
            force_newton(&p, 0),
            Err(DynamicsError::Collision { i: 0, j: 1, .. })
        ));
        assert!(potential(&p, PotentialVariant::VPairwise).is_err());
        assert!(matches!(
            force_newton(&p, 3),
            Err(DynamicsError::BodyIndex(3))
        ));
    }

    #[test]
    fn potential_at_origin_phase() {
        let s = orbit::triple(0.0, &ctx());
        let u = potential(&s.positions(), PotentialVariant::UCentral).unwrap();
        let expected = 0.25 * (1.5 * 3f64.sqrt()).ln() - 0.375;
        assert!((u - expected).abs() < 1e-14);
        let e = total_energy(&s.positions(), &s.velocities(), PotentialVariant::UCentral).unwrap();
        assert!((e - (0.375 + expected)).abs() < 1e-14);
    }

    #[test]
    fn unit_equilateral_has_no_log_energy() {
        let p = equilateral(1.0);
        let u = potential(&p, PotentialVariant::UCentral).unwrap();
        let central = 3f64.sqrt() / 8.0 * p.iter().map(|x| x.norm_sq()).sum::<f64>();
        assert!((u + central).abs() < 1e-15);
    }

    #[test]
    fn equation_of_motion_on_orbit() {
        let c = ctx();
        let k = c.quarter_period();
        for t in [k / 6.0, 2.0 * k / 3.0] {
            for v in PotentialVariant::ALL {
                assert!(eom_residual(t, v, &c).unwrap() < 1e-9);
            }
            assert!(variant_disagreement(t, &c).unwrap() < 1e-12);
        }
    }

    #[test]
    fn equation_of_motion_fails_at_wrong_modulus() {
        let c = make_context(0.5).unwrap();
        let t = c.quarter_period() / 6.0;
        assert!(eom_residual(t, PotentialVariant::UCentral, &c).unwrap() > 1e-2);
    }

    #[test]
    fn energy_constant_on_orbit() {
        let c = ctx();
        for v in PotentialVariant::ALL {
            let s0 = orbit::triple(0.0, &c);
            let e0 = total_energy(&s0.positions(), &s0.velocities(), v).unwrap();
            for i in 1..1000 {
                let s = orbit::triple(i as f64 * c.period() / 1000.0, &c);
                let e = total_energy(&s.positions(), &s.velocities(), v).unwrap();
                assert!((e - e0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn variant_parses() {
        assert_eq!(
            "U".parse::<PotentialVariant>().unwrap(),
            PotentialVariant::UCentral
        );
        assert_eq!(
            "v".parse::<PotentialVariant>().unwrap(),
            PotentialVariant::VPairwise
        );
        assert!("W".parse::<PotentialVariant>().is_err());
    }

    fn separated(p: &[Vec2; 3]) -> bool {
        (p[0] - p[1]).norm() > 0.1 && (p[1] - p[2]).norm() > 0.1 && (p[2] - p[0]).norm() > 0.1
    }

    proptest! {
        #[test]
        fn repulsions_agree_at_zero_center_of_mass(
            ax in -2.0f64..2.0, ay in -2.0f64..2.0, bx in -2.0f64..2.0, by in -2.0f64..2.0,
        ) {
            let a = Vec2::new(ax, ay);
            let b = Vec2::new(bx, by);
            let p = [a, b, -(a + b)];
            for i in 0..3 {
                let d = force_repulsive2(&p, i).unwrap() - force_repulsive1(p[i]);
                prop_assert!(d.norm() < 1e-13);
            }
        }

        #[test]
        fn force_is_negative_gradient(
            c in proptest::array::uniform6(-1.5f64..1.5),
            variant in prop_oneof![Just(PotentialVariant::UCentral), Just(PotentialVariant::VPairwise)],
        ) {
            let p = [Vec2::new(c[0], c[1]), Vec2::new(c[2], c[3]), Vec2::new(c[4], c[5])];
            prop_assume!(separated(&p));
            let h = 1e-6;
            for i in 0..3 {
                let f = force(&p, i, variant).unwrap();
                for (axis, comp) in [(Vec2::new(h, 0.0), f.x), (Vec2::new(0.0, h), f.y)] {
                    let mut plus = p;
                    let mut minus = p;
                    plus[i] += axis;
                    minus[i] -= axis;
                    let g = (potential(&plus, variant).unwrap() - potential(&minus, variant).unwrap()) / (2.0 * h);
                    prop_assert!((comp + g).abs() < 1e-7, "{} vs {}", comp, -g);
                }
            }
        }
    }
}
