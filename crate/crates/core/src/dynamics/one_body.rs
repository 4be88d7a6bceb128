//! One body on the lemniscate `r² = cos 2θ` under `U(r) = −l² / (2 r⁶)`.
//!
//! With `w = 2 l t` the motion is `θ = ½ asin w`, so `r² = √(1 − w²)` and
//! `r² θ̇ = l`. It starts and ends at the origin (`w = ∓1`).

use serde::Serialize;

use crate::error::DynamicsError;
use crate::vec2::Vec2;

/// Phases with `|2lt| ≥ 1 − ONE_BODY_MARGIN` are rejected as collisions.
pub const ONE_BODY_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OneBodyState {
    pub pos: Vec2,
    pub vel: Vec2,
    pub acc: Vec2,
    /// `r² dθ/dt`.
    pub angular_momentum: f64,
}

/// Analytic position and derivatives at time `t`.
pub fn one_body_lemniscate(l: f64, t: f64) -> Result<OneBodyState, DynamicsError> {
    let w = 2.0 * l * t;
    if !(w.abs() < 1.0 - ONE_BODY_MARGIN) {
        return Err(DynamicsError::OneBodyDomain(w));
    }
    let q = 1.0 - w * w;

    let theta = 0.5 * w.asin();
    let dtheta = l / q.sqrt();
    let ddtheta = 2.0 * l * l * w / q.powf(1.5);

    let r = q.powf(0.25);
    let dr = -l * w * q.powf(-0.75);
    let ddr = -l * l * (2.0 + w * w) * q.powf(-1.75);

    let (sin, cos) = theta.sin_cos();
    let radial = Vec2::new(cos, sin);
    let normal = Vec2::new(-sin, cos);

    let vel = radial * dr + normal * (r * dtheta);
    let acc = radial * (ddr - r * dtheta * dtheta) + normal * (r * ddtheta + 2.0 * dr * dtheta);

    Ok(OneBodyState {
        pos: radial * r,
        vel,
        acc,
        angular_momentum: r * r * dtheta,
    })
}

/// `|ẍ + ∇U|` with `−∇U = −(3 l² / r⁷) r̂`.
pub fn one_body_lemniscate_residual(l: f64, t: f64) -> Result<f64, DynamicsError> {
    let s = one_body_lemniscate(l, t)?;
    let r = s.pos.norm();
    let force = s.pos * (-3.0 * l * l / r.powi(8));
    Ok((s.acc - force).norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn apex_of_right_leaf() {
        let s = one_body_lemniscate(0.5, 0.0).unwrap();
        assert_eq!(s.pos, Vec2::new(1.0, 0.0));
        assert!(one_body_lemniscate_residual(0.5, 0.0).unwrap() < 1e-8);
        assert!(one_body_lemniscate_residual(0.5, 0.4).unwrap() < 1e-8);
    }

    #[test]
    fn stays_on_lemniscate_with_constant_angular_momentum() {
        for i in -9..=9 {
            let t = 0.1 * i as f64;
            let s = one_body_lemniscate(0.5, t).unwrap();
            let r2 = s.pos.norm_sq();
            assert!((r2 * r2 - (s.pos.x * s.pos.x - s.pos.y * s.pos.y)).abs() < 1e-14);
            assert!((s.angular_momentum - 0.5).abs() < 1e-14);
            assert!((s.pos.cross(s.vel) - 0.5).abs() < 1e-14);
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let h = 1e-6;
        for t in [-0.7, -0.2, 0.1, 0.55] {
            let s = one_body_lemniscate(0.5, t).unwrap();
            let p = one_body_lemniscate(0.5, t + h).unwrap();
            let m = one_body_lemniscate(0.5, t - h).unwrap();
            assert!(((p.pos - m.pos) / (2.0 * h) - s.vel).norm() < 1e-8);
            assert!(((p.vel - m.vel) / (2.0 * h) - s.acc).norm() < 1e-7);
        }
    }

    #[test]
    fn endpoints_are_rejected() {
        assert!(matches!(
            one_body_lemniscate(0.5, 1.0),
            Err(DynamicsError::OneBodyDomain(_))
        ));
        assert!(one_body_lemniscate(0.5, -1.0).is_err());
        assert!(one_body_lemniscate(0.5, 0.9999999).is_err());
        assert!(one_body_lemniscate(0.5, 0.999).is_ok());
    }
}
