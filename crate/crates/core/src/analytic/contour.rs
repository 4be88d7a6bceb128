//! Contour quadrature: residues, Laurent coefficients and the
//! argument-principle census of zeros and poles.

use std::f64::consts::TAU;

use serde::Serialize;

use super::functions::{translates_near, AnalyticFn};
use crate::elliptic::{Cplx, EllipticContext};
use crate::error::AnalyticError;

/// Default circle radius around a singularity.
pub const CONTOUR_RADIUS: f64 = 1e-2;
/// Second radius used to estimate the quadrature error.
pub const SECOND_RADIUS: f64 = 5e-3;
/// Trapezoid nodes on a circle.
pub const CONTOUR_NODES: usize = 256;
/// Radius of the circle that refines a census location.
pub const REFINE_RADIUS: f64 = 0.1;
/// Step of the central difference for `f′` in the census.
pub const DERIVATIVE_STEP: f64 = 1e-5;
/// Boundary points per rectangle edge when tracking the argument.
pub const EDGE_POINTS: usize = 64;

/// Fails if a singularity of `f` other than one at `center` lies within
/// `2·radius` of `center`.
fn check_contour(
    f: AnalyticFn,
    center: Cplx,
    radius: f64,
    ctx: &EllipticContext,
) -> Result<(), AnalyticError> {
    let mut nearest = f64::INFINITY;
    for (p, _) in f.poles(ctx) {
        for q in translates_near(p, center, 2.0 * radius, ctx) {
            let d = (q - center).norm();
            if d > 0.5 * radius {
                nearest = nearest.min(d);
            }
        }
    }
    if nearest.is_finite() {
        return Err(AnalyticError::ContourCrossing {
            center_re: center.re,
            center_im: center.im,
            radius,
            distance: (nearest - radius).abs(),
        });
    }
    Ok(())
}

/// `(1/2πi) ∮ f(t) (t − a)^{−n−1} dt` on `|t − a| = radius` by the trapezoid
/// rule, i.e. the coefficient of `(t − a)^n`.
pub fn circle_coefficient(
    f: impl Fn(Cplx) -> Result<Cplx, AnalyticError>,
    center: Cplx,
    n: i32,
    radius: f64,
    nodes: usize,
) -> Result<Cplx, AnalyticError> {
    let mut sum = Cplx::new(0.0, 0.0);
    for j in 0..nodes {
        let theta = TAU * j as f64 / nodes as f64;
        let dz = Cplx::from_polar(radius, theta);
        sum += f(center + dz)? * dz.powi(-n);
    }
    Ok(sum / nodes as f64)
}

/// Laurent coefficient of `f` at `center`, with the change between the
/// two radii as an error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LaurentEstimate {
    pub value: Cplx,
    pub spread: f64,
}

pub fn laurent_coefficient(
    f: AnalyticFn,
    center: Cplx,
    n: i32,
    ctx: &EllipticContext,
) -> Result<LaurentEstimate, AnalyticError> {
    check_contour(f, center, CONTOUR_RADIUS, ctx)?;
    let eval = |t| f.eval(t, ctx).map_err(AnalyticError::from);
    let outer = circle_coefficient(eval, center, n, CONTOUR_RADIUS, CONTOUR_NODES)?;
    let inner = circle_coefficient(eval, center, n, SECOND_RADIUS, CONTOUR_NODES)?;
    Ok(LaurentEstimate {
        value: outer,
        spread: (outer - inner).norm(),
    })
}

/// Residue of a simple pole of `f` near `location`.
pub fn residue(
    f: AnalyticFn,
    location: Cplx,
    ctx: &EllipticContext,
) -> Result<Cplx, AnalyticError> {
    for (p, order) in f.poles(ctx) {
        if !translates_near(p, location, 0.5 * CONTOUR_RADIUS, ctx).is_empty() && order != 1 {
            return Err(AnalyticError::NotSimple(order));
        }
    }
    check_contour(f, location, CONTOUR_RADIUS, ctx)?;
    circle_coefficient(
        |t| f.eval(t, ctx).map_err(AnalyticError::from),
        location,
        -1,
        CONTOUR_RADIUS,
        CONTOUR_NODES,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SingularityKind {
    Zero,
    Pole,
}

/// A zero or pole found by the census.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CensusEntry {
    pub location: Cplx,
    pub kind: SingularityKind,
    pub order: u32,
}

fn log_derivative(f: AnalyticFn, t: Cplx, ctx: &EllipticContext) -> Result<Cplx, AnalyticError> {
    let h = Cplx::new(DERIVATIVE_STEP, 0.0);
    let df = (f.eval(t + h, ctx)? - f.eval(t - h, ctx)?) / (2.0 * h);
    Ok(df / f.eval(t, ctx)?)
}

/// Net argument change of `f` around the counter-clockwise rectangle,
/// in turns (zeros minus poles inside).
fn winding(f: AnalyticFn, lo: Cplx, hi: Cplx, ctx: &EllipticContext) -> Result<i64, AnalyticError> {
    let corners = [lo, Cplx::new(hi.re, lo.im), hi, Cplx::new(lo.re, hi.im), lo];
    let mut total = 0.0;
    let mut prev = f.eval(lo, ctx)?;
    for edge in corners.windows(2) {
        for k in 1..=EDGE_POINTS {
            let t = edge[0] + (edge[1] - edge[0]) * (k as f64 / EDGE_POINTS as f64);
            let v = f.eval(t, ctx)?;
            total += (v / prev).arg();
            prev = v;
        }
    }
    Ok((total / TAU).round() as i64)
}

/// Mean location of the zeros minus poles inside the circle, and their net count.
fn circle_moments(
    f: AnalyticFn,
    center: Cplx,
    radius: f64,
    ctx: &EllipticContext,
) -> Result<(Cplx, Cplx), AnalyticError> {
    let mut count = Cplx::new(0.0, 0.0);
    let mut first = Cplx::new(0.0, 0.0);
    for j in 0..CONTOUR_NODES {
        let dz = Cplx::from_polar(radius, TAU * j as f64 / CONTOUR_NODES as f64);
        let g = log_derivative(f, center + dz, ctx)? * dz;
        count += g;
        first += g * (center + dz);
    }
    Ok((count / CONTOUR_NODES as f64, first / CONTOUR_NODES as f64))
}

/// Zeros and poles of `f` in the cell `−2K ≤ Re t < 2K`, `−2K′ ≤ Im t < 2K′`.
///
/// The cell is tiled by rectangles whose edges sit at `K/6 + jK/3` and
/// `K′/4 + jK′/2`, the argument change around each is counted, and every
/// rectangle with a nonzero count is located by a circle centroid.
pub fn census(f: AnalyticFn, ctx: &EllipticContext) -> Result<Vec<CensusEntry>, AnalyticError> {
    let (k, kp) = (ctx.quarter_period(), ctx.complementary_quarter_period());
    let (dx, dy) = (k / 3.0, kp / 2.0);
    let (x0, y0) = (-2.0 * k + k / 6.0, -2.0 * kp + kp / 4.0);
    let mut out = Vec::new();
    for col in 0..12 {
        for row in 0..8 {
            let lo = Cplx::new(x0 + col as f64 * dx, y0 + row as f64 * dy);
            let hi = lo + Cplx::new(dx, dy);
            let n = winding(f, lo, hi, ctx)?;
            if n == 0 {
                continue;
            }
            // rough centroid from the rectangle center, then a tight circle
            let mid = 0.5 * (lo + hi);
            let (c0, m0) = circle_moments(f, mid, 0.45 * dx.min(dy), ctx)?;
            let guess = if c0.norm() > 0.5 { m0 / c0 } else { mid };
            let (c1, m1) = circle_moments(f, guess, REFINE_RADIUS, ctx)?;
            let location = wrap_into_cell(m1 / c1, ctx);
            out.push(CensusEntry {
                location,
                kind: if n > 0 {
                    SingularityKind::Zero
                } else {
                    SingularityKind::Pole
                },
                order: n.unsigned_abs() as u32,
            });
        }
    }
    Ok(out)
}

fn wrap_into_cell(t: Cplx, ctx: &EllipticContext) -> Cplx {
    let (wr, wi) = (ctx.period(), 4.0 * ctx.complementary_quarter_period());
    let re = (t.re + 0.5 * wr).rem_euclid(wr) - 0.5 * wr;
    let im = (t.im + 0.5 * wi).rem_euclid(wi) - 0.5 * wi;
    Cplx::new(re, im)
}

/// Distance between two points modulo the period lattice.
pub fn lattice_distance(a: Cplx, b: Cplx, ctx: &EllipticContext) -> f64 {
    wrap_into_cell(a - b, ctx).norm()
}

#[cfg(test)]
mod tests {
    use super::super::functions::{alpha2, alpha3, principal_b};
    use super::*;

    fn ctx() -> EllipticContext {
        EllipticContext::choreographic()
    }

    #[test]
    fn coefficients_of_a_known_laurent_series() {
        // 1/t³ + 2/t + 5 + t²
        let f = |t: Cplx| Ok(t.powi(-3) + 2.0 * t.inv() + 5.0 + t * t);
        let z = Cplx::new(0.0, 0.0);
        for (n, want) in [
            (-3, 1.0),
            (-2, 0.0),
            (-1, 2.0),
            (0, 5.0),
            (1, 0.0),
            (2, 1.0),
        ] {
            let got = circle_coefficient(f, z, n, 0.5, 64).unwrap();
            assert!((got - want).norm() < 1e-12, "n={n}: {got}");
        }
    }

    #[test]
    fn residue_of_x_plus_at_alpha2() {
        let c = ctx();
        let r = residue(AnalyticFn::XPlus, alpha2(&c), &c).unwrap();
        assert!((r - 1.0 / principal_b()).norm() < 1e-10);
    }

    #[test]
    fn residue_rejects_higher_order() {
        let c = ctx();
        assert!(matches!(
            residue(AnalyticFn::XPlusSecond, alpha2(&c), &c),
            Err(AnalyticError::NotSimple(3))
        ));
    }

    #[test]
    fn contour_too_close_to_a_pole() {
        let c = ctx();
        let near = alpha2(&c) + Cplx::new(0.015, 0.0);
        assert!(matches!(
            residue(AnalyticFn::XPlus, near, &c),
            Err(AnalyticError::ContourCrossing { .. })
        ));
        // far from every pole the residue vanishes
        let far = Cplx::new(0.3, 0.2);
        assert!(residue(AnalyticFn::XPlus, far, &c).unwrap().norm() < 1e-12);
    }

    #[test]
    fn census_of_x_plus() {
        let c = ctx();
        let found = census(AnalyticFn::XPlus, &c).unwrap();
        let poles: Vec<_> = found
            .iter()
            .filter(|e| e.kind == SingularityKind::Pole)
            .collect();
        assert_eq!(poles.len(), 4);
        for e in &poles {
            assert_eq!(e.order, 1);
            assert!([alpha2(&c), alpha3(&c), -alpha2(&c), -alpha3(&c)]
                .iter()
                .any(|&a| lattice_distance(a, e.location, &c) < 1e-6));
        }
        let zeros = found
            .iter()
            .filter(|e| e.kind == SingularityKind::Zero)
            .count();
        assert_eq!(zeros, 4);
    }

    #[test]
    fn cell_wrapping() {
        let c = ctx();
        let t = Cplx::new(2.0 * c.quarter_period() + 0.1, 0.0);
        assert!((wrap_into_cell(t, &c).re - (-2.0 * c.quarter_period() + 0.1)).abs() < 1e-12);
    }
}
