//! The meromorphic functions under study and their known singularities.

use serde::Serialize;

use crate::elliptic::{Cplx, EllipticContext};
use crate::error::EllipticError;
use crate::orbit;

/// `α₁ = −K + iK′`, `α₂ = K/3 + iK′`, `α₃ = 5K/3 + iK′`.
pub fn alphas(ctx: &EllipticContext) -> [Cplx; 3] {
    let (k, kp) = (ctx.quarter_period(), ctx.complementary_quarter_period());
    [
        Cplx::new(-k, kp),
        Cplx::new(k / 3.0, kp),
        Cplx::new(5.0 * k / 3.0, kp),
    ]
}

pub fn alpha1(ctx: &EllipticContext) -> Cplx {
    alphas(ctx)[0]
}

pub fn alpha2(ctx: &EllipticContext) -> Cplx {
    alphas(ctx)[1]
}

pub fn alpha3(ctx: &EllipticContext) -> Cplx {
    alphas(ctx)[2]
}

/// `a = 2√2 / 3^{1/4}`.
pub fn principal_a() -> f64 {
    2.0 * 2f64.sqrt() / 3f64.powf(0.25)
}

/// `b = 3^{1/4} / √2`.
pub fn principal_b() -> f64 {
    3f64.powf(0.25) / 2f64.sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum AnalyticFn {
    /// `x⁺ = sn / (1 − i cn)`.
    XPlus,
    /// `x⁻ = sn / (1 + i cn)`.
    XMinus,
    /// `1 / (1 − i cn)`.
    OneOverOneMinusICn,
    /// `d²x⁺/dt²`.
    XPlusSecond,
    /// `Δx⁻(t) = x⁻(t + 4K/3) − x⁻(t)`.
    DeltaXMinus,
    /// `1 / Δx⁻(t)`.
    InvDeltaXMinus,
    /// `−1 / Δx⁻(t − 4K/3)`.
    NegInvDeltaXMinusShifted,
}

impl AnalyticFn {
    pub const ALL: [AnalyticFn; 7] = [
        AnalyticFn::XPlus,
        AnalyticFn::XMinus,
        AnalyticFn::OneOverOneMinusICn,
        AnalyticFn::XPlusSecond,
        AnalyticFn::DeltaXMinus,
        AnalyticFn::InvDeltaXMinus,
        AnalyticFn::NegInvDeltaXMinusShifted,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AnalyticFn::XPlus => "x_plus",
            AnalyticFn::XMinus => "x_minus",
            AnalyticFn::OneOverOneMinusICn => "one_over_one_minus_icn",
            AnalyticFn::XPlusSecond => "x_plus_second_derivative",
            AnalyticFn::DeltaXMinus => "delta_x_minus",
            AnalyticFn::InvDeltaXMinus => "inv_delta_x_minus",
            AnalyticFn::NegInvDeltaXMinusShifted => "neg_inv_delta_x_minus_shifted",
        }
    }

    pub fn eval(self, t: Cplx, ctx: &EllipticContext) -> Result<Cplx, EllipticError> {
        let one = Cplx::new(1.0, 0.0);
        let off = orbit::phase_offset(ctx);
        Ok(match self {
            AnalyticFn::XPlus => orbit::x_plus(t, ctx)?,
            AnalyticFn::XMinus => orbit::x_minus(t, ctx)?,
            AnalyticFn::OneOverOneMinusICn => one / (one - Cplx::i() * ctx.sn_cn_dn_complex(t)?.cn),
            AnalyticFn::XPlusSecond => orbit::x_plus_second_derivative(t, ctx)?,
            AnalyticFn::DeltaXMinus => delta_x_minus(t, ctx)?,
            AnalyticFn::InvDeltaXMinus => one / delta_x_minus(t, ctx)?,
            AnalyticFn::NegInvDeltaXMinusShifted => -one / delta_x_minus(t - off, ctx)?,
        })
    }

    /// Poles in the cell `−2K ≤ Re t < 2K`, `−2K′ ≤ Im t < 2K′`, with order.
    pub fn poles(self, ctx: &EllipticContext) -> Vec<(Cplx, u32)> {
        let [a1, a2, a3] = alphas(ctx);
        match self {
            AnalyticFn::XPlus | AnalyticFn::OneOverOneMinusICn => {
                vec![(a2, 1), (a3, 1), (-a2, 1), (-a3, 1)]
            }
            AnalyticFn::XPlusSecond => vec![(a2, 3), (a3, 3), (-a2, 3), (-a3, 3)],
            AnalyticFn::XMinus => vec![
                (a2.conj(), 1),
                (a3.conj(), 1),
                (-a2.conj(), 1),
                (-a3.conj(), 1),
            ],
            AnalyticFn::DeltaXMinus => [a1, a2, a3]
                .into_iter()
                .flat_map(|a| [(a.conj(), 1), (-a.conj(), 1)])
                .collect(),
            AnalyticFn::InvDeltaXMinus => vec![(a2, 3), (-a3, 3)],
            AnalyticFn::NegInvDeltaXMinusShifted => vec![(a3, 3), (-a2, 3)],
        }
    }

    /// Zeros in the same cell, with order, where they are part of the claim.
    pub fn zeros(self, ctx: &EllipticContext) -> Vec<(Cplx, u32)> {
        let (k, kp) = (ctx.quarter_period(), ctx.complementary_quarter_period());
        match self {
            AnalyticFn::XPlus | AnalyticFn::XMinus => [
                Cplx::new(-2.0 * k, -2.0 * kp),
                Cplx::new(0.0, -2.0 * kp),
                Cplx::new(-2.0 * k, 0.0),
                Cplx::new(0.0, 0.0),
            ]
            .into_iter()
            .map(|z| (z, 1))
            .collect(),
            AnalyticFn::DeltaXMinus => vec![(alpha2(ctx), 3), (-alpha3(ctx), 3)],
            _ => Vec::new(),
        }
    }
}

/// `x⁻(t + 4K/3) − x⁻(t)`.
pub fn delta_x_minus(t: Cplx, ctx: &EllipticContext) -> Result<Cplx, EllipticError> {
    Ok(orbit::x_minus(t + orbit::phase_offset(ctx), ctx)? - orbit::x_minus(t, ctx)?)
}

/// Every lattice translate (by `4K` and `4iK′`) of `p` within `radius` of `t`.
pub(crate) fn translates_near(p: Cplx, t: Cplx, radius: f64, ctx: &EllipticContext) -> Vec<Cplx> {
    let (wr, wi) = (ctx.period(), 4.0 * ctx.complementary_quarter_period());
    let base_r = ((t.re - p.re) / wr).round();
    let base_i = ((t.im - p.im) / wi).round();
    let mut out = Vec::new();
    for dr in -1..=1 {
        for di in -1..=1 {
            let q = p + Cplx::new((base_r + dr as f64) * wr, (base_i + di as f64) * wi);
            if (q - t).norm() < radius {
                out.push(q);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> EllipticContext {
        EllipticContext::choreographic()
    }

    #[test]
    fn alphas_lie_in_the_cell() {
        let c = ctx();
        let (k, kp) = (c.quarter_period(), c.complementary_quarter_period());
        for f in AnalyticFn::ALL {
            for (p, order) in f.poles(&c) {
                assert!(order >= 1);
                assert!(-2.0 * k <= p.re && p.re < 2.0 * k, "{f:?} {p}");
                assert!(-2.0 * kp <= p.im && p.im < 2.0 * kp, "{f:?} {p}");
            }
        }
    }

    #[test]
    fn functions_blow_up_at_listed_poles() {
        let c = ctx();
        for f in AnalyticFn::ALL {
            for (p, _) in f.poles(&c) {
                let v = f.eval(p + Cplx::new(1e-6, 1e-6), &c).unwrap();
                assert!(v.norm() > 1e4, "{f:?} at {p}: {v}");
            }
        }
    }

    #[test]
    fn listed_zeros_vanish() {
        let c = ctx();
        for f in AnalyticFn::ALL {
            for (z, _) in f.zeros(&c) {
                assert!(f.eval(z, &c).unwrap().norm() < 1e-12, "{f:?} at {z}");
            }
        }
    }

    #[test]
    fn pole_and_zero_pairing_of_delta() {
        // the triple zero of Δx⁻ at α₂ is the triple pole of its reciprocal
        let c = ctx();
        let a2 = alpha2(&c);
        let d = delta_x_minus(a2 + Cplx::new(1e-3, 0.0), &c).unwrap();
        assert!(d.norm() < 1e-8);
    }

    #[test]
    fn principal_constants() {
        assert!((principal_a() * principal_b() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn translates_cover_neighbouring_cells() {
        let c = ctx();
        let p = alpha2(&c);
        let near = translates_near(p, p + Cplx::new(c.period(), 0.0), 1e-3, &c);
        assert_eq!(near.len(), 1);
    }
}
