//! The analytic orbit on the lemniscate and the three-body configuration.
//!
//! Writing `s, c, d` for `sn, cn, dn` and `D = 1 + c²`,
//!
//! ```text
//! x  = s / D                          y  = s c / D
//! x' = c (3 − c²) d / D²              y' = (3c² − 1) d / D²
//! ```
//!
//! and the second derivatives follow from `s' = c d`, `c' = −s d`,
//! `d' = −m s c`. The same closed forms serve real and complex arguments.

use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::Serialize;

use crate::elliptic::{Cplx, EllipticContext, Jacobi};
use crate::error::EllipticError;
use crate::vec2::Vec2;

/// Arithmetic shared by `f64` and `Cplx` for the closed-form orbit jet.
pub(crate) trait Scalar:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + From<f64>
{
}

impl<T> Scalar for T where
    T: Copy
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
        + Neg<Output = T>
        + From<f64>
{
}

/// Coordinates of the orbit and their first two derivatives.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Jet<T> {
    pub x: T,
    pub y: T,
    pub dx: T,
    pub dy: T,
    pub ddx: T,
    pub ddy: T,
}

pub(crate) fn jet<T: Scalar>(j: Jacobi<T>, m: f64) -> Jet<T> {
    let (s, c, d) = j.as_tuple();
    let one = T::from(1.0);
    let three = T::from(3.0);
    let m = T::from(m);
    let c2 = c * c;
    let den = one + c2;
    let den2 = den * den;
    let den3 = den2 * den;

    let f = c * (three - c2) / den2;
    let g = (three * c2 - one) / den2;
    let df = (three - T::from(12.0) * c2 + c2 * c2) / den3;
    let dg = (T::from(10.0) * c - T::from(6.0) * c2 * c) / den3;

    Jet {
        x: s / den,
        y: s * c / den,
        dx: f * d,
        dy: g * d,
        ddx: -(df * s * d * d) - f * m * s * c,
        ddy: -(dg * s * d * d) - g * m * s * c,
    }
}

/// Position, velocity and acceleration of one body.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BodyState {
    pub t: f64,
    pub pos: Vec2,
    pub vel: Vec2,
    pub acc: Vec2,
}

/// The three choreographic bodies at phases `(t, t + 4K/3, t − 4K/3)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TripleState {
    pub t: f64,
    pub bodies: [BodyState; 3],
}

impl TripleState {
    pub fn positions(&self) -> [Vec2; 3] {
        self.bodies.map(|b| b.pos)
    }

    pub fn velocities(&self) -> [Vec2; 3] {
        self.bodies.map(|b| b.vel)
    }

    pub fn accelerations(&self) -> [Vec2; 3] {
        self.bodies.map(|b| b.acc)
    }
}

fn real_jet(t: f64, ctx: &EllipticContext) -> Jet<f64> {
    // sn_cn_dn reduces the phase modulo 4K itself
    jet(ctx.sn_cn_dn(t), ctx.m())
}

pub fn position(t: f64, ctx: &EllipticContext) -> Vec2 {
    let j = real_jet(t, ctx);
    Vec2::new(j.x, j.y)
}

pub fn velocity(t: f64, ctx: &EllipticContext) -> Vec2 {
    let j = real_jet(t, ctx);
    Vec2::new(j.dx, j.dy)
}

pub fn acceleration(t: f64, ctx: &EllipticContext) -> Vec2 {
    let j = real_jet(t, ctx);
    Vec2::new(j.ddx, j.ddy)
}

pub fn body_state(t: f64, ctx: &EllipticContext) -> BodyState {
    let j = real_jet(t, ctx);
    BodyState {
        t,
        pos: Vec2::new(j.x, j.y),
        vel: Vec2::new(j.dx, j.dy),
        acc: Vec2::new(j.ddx, j.ddy),
    }
}

/// Phase offset `4K/3` between consecutive bodies.
pub fn phase_offset(ctx: &EllipticContext) -> f64 {
    ctx.period() / 3.0
}

pub fn triple(t: f64, ctx: &EllipticContext) -> TripleState {
    let off = phase_offset(ctx);
    TripleState {
        t,
        bodies: [
            body_state(t, ctx),
            body_state(t + off, ctx),
            body_state(t - off, ctx),
        ],
    }
}

/// `x⁺(t) = x(t) + i y(t) = sn / (1 − i cn)` continued to complex `t`.
pub fn x_plus(t: Cplx, ctx: &EllipticContext) -> Result<Cplx, EllipticError> {
    let j = ctx.sn_cn_dn_complex(t)?;
    Ok(j.sn / (Cplx::new(1.0, 0.0) - Cplx::i() * j.cn))
}

/// `x⁻(t) = x(t) − i y(t) = sn / (1 + i cn)` continued to complex `t`.
pub fn x_minus(t: Cplx, ctx: &EllipticContext) -> Result<Cplx, EllipticError> {
    let j = ctx.sn_cn_dn_complex(t)?;
    Ok(j.sn / (Cplx::new(1.0, 0.0) + Cplx::i() * j.cn))
}

/// `d²x⁺/dt²` continued to complex `t`.
pub fn x_plus_second_derivative(t: Cplx, ctx: &EllipticContext) -> Result<Cplx, EllipticError> {
    let j = jet(ctx.sn_cn_dn_complex(t)?, ctx.m());
    Ok(j.ddx + Cplx::i() * j.ddy)
}

/// `d x⁺/dt` continued to complex `t`.
pub fn x_plus_derivative(t: Cplx, ctx: &EllipticContext) -> Result<Cplx, EllipticError> {
    let j = jet(ctx.sn_cn_dn_complex(t)?, ctx.m());
    Ok(j.dx + Cplx::i() * j.dy)
}

/// `x x̂ + k² y ŷ`, the affinely scaled orbit used only for export.
pub fn affine_scaled(p: Vec2, ctx: &EllipticContext) -> Vec2 {
    Vec2::new(p.x, ctx.m() * p.y)
}

/// Residual of `(x² + y²)² = x² − y²`.
pub fn lemniscate_residual(p: Vec2) -> f64 {
    let r2 = p.norm_sq();
    r2 * r2 - (p.x * p.x - p.y * p.y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::make_context;
    use proptest::prelude::*;

    fn ctx() -> EllipticContext {
        EllipticContext::choreographic()
    }

    // p = 3^{1/4}(√3+1)/4, q = 3^{1/4}(1−√3)/4
    fn pq() -> Vec2 {
        let q3 = 3f64.powf(0.25);
        let r3 = 3f64.sqrt();
        Vec2::new(q3 * (r3 + 1.0) / 4.0, q3 * (1.0 - r3) / 4.0)
    }

    #[test]
    fn landmark_positions() {
        let c = ctx();
        let k = c.quarter_period();
        assert_eq!(position(0.0, &c), Vec2::ZERO);
        let p = position(k, &c);
        assert!((p - Vec2::new(1.0, 0.0)).norm() < 1e-15);
        let p = position(4.0 * k / 3.0, &c);
        assert!((p - pq()).norm() < 1e-14);
    }

    #[test]
    fn velocity_landmarks() {
        let c = ctx();
        let v = velocity(0.0, &c);
        assert_eq!(v, Vec2::new(0.5, 0.5));
        let v = velocity(4.0 * c.quarter_period() / 3.0, &c);
        assert!((v.norm_sq() - 0.125).abs() < 1e-14);
    }

    #[test]
    fn acceleration_is_odd_and_finite_at_k() {
        let c = ctx();
        let k = c.quarter_period();
        for t in [0.3, 1.1, k, 2.9, 7.4] {
            let a = acceleration(t, &c);
            let b = acceleration(-t, &c);
            assert!((a + b).norm() < 1e-14, "t = {t}");
        }
        let h = 1e-4;
        let fd = (position(k + h, &c) - 2.0 * position(k, &c) + position(k - h, &c)) / (h * h);
        assert!((fd - acceleration(k, &c)).norm() < 1e-6);
    }

    #[test]
    fn derivatives_match_finite_differences_at_any_modulus() {
        for m in [0.2, 0.5, crate::elliptic::choreographic_m()] {
            let c = make_context(m).unwrap();
            for i in 0..50 {
                let t = -9.0 + 0.41 * i as f64;
                let h = 1e-6;
                let fd = (position(t + h, &c) - position(t - h, &c)) / (2.0 * h);
                assert!((fd - velocity(t, &c)).norm() < 1e-8);
                let h = 1e-4;
                let fd2 =
                    (position(t + h, &c) - 2.0 * position(t, &c) + position(t - h, &c)) / (h * h);
                assert!((fd2 - acceleration(t, &c)).norm() < 1e-6);
            }
        }
    }

    #[test]
    fn triple_at_zero() {
        let c = ctx();
        let s = triple(0.0, &c);
        let pq = pq();
        assert_eq!(s.bodies[0].pos, Vec2::ZERO);
        assert!((s.bodies[1].pos - pq).norm() < 1e-14);
        assert!((s.bodies[2].pos + pq).norm() < 1e-14);
        let com: Vec2 = s.positions().into_iter().sum();
        assert!(com.norm() < 1e-12);
    }

    #[test]
    fn triple_advances_by_figure_label() {
        // Labels j and j + 4 (mod 12) are simultaneous positions: the triple
        // at t = K/3 holds the points labelled 1, 5, 9.
        let c = ctx();
        let k = c.quarter_period();
        let s = triple(k / 3.0, &c);
        for (body, label) in s.bodies.iter().zip([1.0, 5.0, -3.0]) {
            let p = position(label * k / 3.0, &c);
            assert!((body.pos - p).norm() < 1e-13);
        }
    }

    #[test]
    fn complex_jet_matches_real_on_axis() {
        let c = ctx();
        for t in [0.2, 1.4, -3.3] {
            let z = Cplx::new(t, 0.0);
            let p = position(t, &c);
            let a = acceleration(t, &c);
            assert!((x_plus(z, &c).unwrap() - Cplx::new(p.x, p.y)).norm() < 1e-14);
            assert!((x_minus(z, &c).unwrap() - Cplx::new(p.x, -p.y)).norm() < 1e-14);
            assert!(
                (x_plus_second_derivative(z, &c).unwrap() - Cplx::new(a.x, a.y)).norm() < 1e-13
            );
        }
    }

    #[test]
    fn affine_scaling_touches_y_only() {
        let c = ctx();
        let p = Vec2::new(0.5, 0.25);
        assert_eq!(affine_scaled(p, &c), Vec2::new(0.5, 0.25 * c.m()));
    }

    proptest! {
        #[test]
        fn bodies_lie_on_the_lemniscate(t in -30.0f64..30.0) {
            let c = ctx();
            for b in triple(t, &c).bodies {
                prop_assert!(lemniscate_residual(b.pos).abs() < 1e-12);
            }
        }

        #[test]
        fn period_and_oddness(t in -30.0f64..30.0) {
            let c = ctx();
            let p = position(t, &c);
            prop_assert!((position(t + c.period(), &c) - p).norm() < 1e-12);
            prop_assert!((position(-t, &c) + p).norm() < 1e-13);
        }

        #[test]
        fn choreography_is_cyclic(t in -10.0f64..10.0) {
            let c = ctx();
            let a = triple(t, &c);
            let b = triple(t + phase_offset(&c), &c);
            for i in 0..3 {
                prop_assert!((b.bodies[i].pos - a.bodies[(i + 1) % 3].pos).norm() < 1e-12);
                prop_assert!((b.bodies[i].vel - a.bodies[(i + 1) % 3].vel).norm() < 1e-12);
            }
        }
    }
}
