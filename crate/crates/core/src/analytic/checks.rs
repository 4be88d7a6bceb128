use super::contour::{census, lattice_distance, laurent_coefficient, residue, SingularityKind};
use super::functions::{alpha2, alpha3, delta_x_minus, principal_a, principal_b, AnalyticFn};
use super::{AnalyticReport, CheckRecord, PoleSpec};
use crate::dynamics::{eom_residual_vector, PotentialVariant};
use crate::elliptic::{Cplx, EllipticContext};
use crate::error::AnalyticError;
use crate::invariants;
use crate::orbit;
use crate::tolerance::Tolerances;

fn sqrt3() -> f64 {
    3f64.sqrt()
}

fn q3() -> f64 {
    3f64.powf(0.25)
}

fn c(re: f64, im: f64) -> Cplx {
    Cplx::new(re, im)
}

/// The twelve tabulated values of `sn`, `cn`, `dn` at `K/3, 2K/3, 4K/3, 5K/3`.
pub fn check_special_values(ctx: &EllipticContext, tol: &Tolerances) -> AnalyticReport {
    let (s3, q) = (sqrt3(), q3());
    let r2 = 2f64.sqrt();
    let table = [
        (1.0, "K/3", [s3 - 1.0, q * (s3 - 1.0) / r2, 1.0 / r2]),
        (2.0, "2K/3", [q * (s3 - 1.0), 2.0 - s3, (s3 - 1.0) / 2.0]),
        (4.0, "4K/3", [q * (s3 - 1.0), -2.0 + s3, (s3 - 1.0) / 2.0]),
        (5.0, "5K/3", [s3 - 1.0, -q * (s3 - 1.0) / r2, 1.0 / r2]),
    ];
    let mut report = AnalyticReport::default();
    for (j, label, want) in table {
        let got = ctx.sn_cn_dn(j * ctx.quarter_period() / 3.0).as_tuple();
        for (fname, w, g) in [
            ("sn", want[0], got.0),
            ("cn", want[1], got.1),
            ("dn", want[2], got.2),
        ] {
            report.push(CheckRecord::close(
                format!("special_value.{fname}({label})"),
                w,
                g,
                tol.special_value,
            ));
        }
    }
    report
}

/// `(1 − 2s) / (s⁴ − 2s³)`.
pub fn modulus_identity_rhs(s: f64) -> f64 {
    (1.0 - 2.0 * s) / (s.powi(4) - 2.0 * s.powi(3))
}

/// The modulus identity evaluated at `sn(K/3)` of `ctx`, compared with the
/// choreographic `k² = (2 + √3)/4`, plus the two closed forms of `sn(10K/3)`.
pub fn check_modulus_identity(ctx: &EllipticContext, tol: &Tolerances) -> AnalyticReport {
    let k2 = (2.0 + sqrt3()) / 4.0;
    let k = ctx.quarter_period();
    let (s, cn, dn) = ctx.sn_cn_dn(k / 3.0).as_tuple();
    let direct = ctx.sn_cn_dn(10.0 * k / 3.0).sn;
    let by_shift = -cn / dn;
    let by_duplication = -2.0 * s * cn * dn / (1.0 - ctx.m() * s.powi(4));

    let mut report = AnalyticReport::default();
    report.push(CheckRecord::close(
        "modulus_identity.exact_substitution",
        k2,
        modulus_identity_rhs(sqrt3() - 1.0),
        tol.special_value,
    ));
    report.push(CheckRecord::close(
        "modulus_identity.computed_sn",
        k2,
        modulus_identity_rhs(s),
        tol.special_value,
    ));
    report.push(CheckRecord::close(
        "modulus_identity.sn(10K/3).shift_vs_duplication",
        by_shift,
        by_duplication,
        tol.special_value,
    ));
    report.push(CheckRecord::close(
        "modulus_identity.sn(10K/3).direct_vs_shift",
        by_shift,
        direct,
        tol.special_value,
    ));
    report
}

/// The tabulated residues of `x⁺` and `1/(1 − i cn)` at `±α₂, ±α₃`.
pub fn claimed_residues(f: AnalyticFn, ctx: &EllipticContext) -> Vec<PoleSpec> {
    let (a2, a3) = (alpha2(ctx), alpha3(ctx));
    let r = match f {
        AnalyticFn::XPlus => 2f64.sqrt() / q3(),
        AnalyticFn::OneOverOneMinusICn => 1.0 / q3(),
        _ => return Vec::new(),
    };
    let signs = match f {
        AnalyticFn::XPlus => [1.0, -1.0, 1.0, -1.0],
        _ => [1.0, -1.0, -1.0, 1.0],
    };
    [a2, a3, -a2, -a3]
        .into_iter()
        .zip(signs)
        .map(|(location, s)| PoleSpec {
            location,
            order: 1,
            claimed_residue: Some(c(s * r, 0.0)),
            claimed_leading: None,
        })
        .collect()
}

/// Residue of `f` at a simple pole, by contour quadrature.
pub fn residue_at(
    pole: &PoleSpec,
    f: AnalyticFn,
    ctx: &EllipticContext,
) -> Result<Cplx, AnalyticError> {
    if pole.order != 1 {
        return Err(AnalyticError::NotSimple(pole.order));
    }
    residue(f, pole.location, ctx)
}

fn pole_label(location: Cplx, ctx: &EllipticContext) -> &'static str {
    let (a2, a3) = (alpha2(ctx), alpha3(ctx));
    [
        (a2, "alpha2"),
        (a3, "alpha3"),
        (-a2, "-alpha2"),
        (-a3, "-alpha3"),
    ]
    .into_iter()
    .find(|(a, _)| (*a - location).norm() < 1e-9)
    .map_or("t", |(_, l)| l)
}

/// All eight tabulated residues.
pub fn check_residues(ctx: &EllipticContext, tol: &Tolerances) -> AnalyticReport {
    let mut report = AnalyticReport::default();
    for f in [AnalyticFn::XPlus, AnalyticFn::OneOverOneMinusICn] {
        for pole in claimed_residues(f, ctx) {
            let name = format!("residue.{}.{}", f.name(), pole_label(pole.location, ctx));
            let claimed = pole.claimed_residue.expect("simple pole");
            report.push(match residue_at(&pole, f, ctx) {
                Ok(r) => CheckRecord::close(name, claimed, r, tol.residue),
                Err(_) => CheckRecord::error(name, claimed, tol.residue),
            });
        }
    }
    report
}

fn three_term(
    f: impl Fn(Cplx) -> Result<Cplx, AnalyticError>,
    t: Cplx,
    ctx: &EllipticContext,
) -> Result<Cplx, AnalyticError> {
    let off = orbit::phase_offset(ctx);
    Ok(f(t)? + f(t + off)? + f(t - off)?)
}

/// `Σ x⁺ = 0` and `Σ 1/(1 − i cn) = (3 + √3)/2` over the three phases at `t`.
pub fn check_sum_identities(t: Cplx, ctx: &EllipticContext, tol: &Tolerances) -> AnalyticReport {
    let tolerance = if t.im == 0.0 {
        tol.sum_identity
    } else {
        tol.sum_identity_complex
    };
    let label = format!("{}{:+}i", t.re, t.im);
    let mut report = AnalyticReport::default();
    let x = three_term(|s| Ok(AnalyticFn::XPlus.eval(s, ctx)?), t, ctx);
    let name = format!("sum_identity.x_plus({label})");
    report.push(match x {
        Ok(v) => CheckRecord::close(name, 0.0, v, tolerance),
        Err(_) => CheckRecord::error(name, 0.0, tolerance),
    });
    let constant = (3.0 + sqrt3()) / 2.0;
    let cn = three_term(|s| Ok(AnalyticFn::OneOverOneMinusICn.eval(s, ctx)?), t, ctx);
    let name = format!("sum_identity.one_over_one_minus_icn({label})");
    report.push(match cn {
        Ok(v) => CheckRecord::close(name, constant, v, tolerance),
        Err(_) => CheckRecord::error(name, constant, tolerance),
    });
    report
}

/// Spread (max − min) of the summed `1/(1 − i cn)` over `n` real samples.
pub fn check_sum_identity_constancy(
    n: usize,
    ctx: &EllipticContext,
    tol: &Tolerances,
) -> AnalyticReport {
    let values: Vec<Cplx> = (0..n)
        .map(|j| {
            let t = c(j as f64 * ctx.period() / n as f64, 0.0);
            three_term(|s| Ok(AnalyticFn::OneOverOneMinusICn.eval(s, ctx)?), t, ctx)
                .unwrap_or(c(f64::NAN, 0.0))
        })
        .collect();
    let mut spread = 0.0f64;
    for a in &values {
        for b in &values {
            spread = spread.max((a - b).norm());
        }
    }
    if values.iter().any(|v| v.re.is_nan()) {
        spread = f64::NAN;
    }
    let mut report = AnalyticReport::default();
    report.push(CheckRecord::close(
        "sum_identity.one_over_one_minus_icn.spread",
        0.0,
        spread,
        tol.sum_identity,
    ));
    report
}

/// `j⁺ = x⁻ dx⁺/dt` written from the real orbit.
fn j_from_orbit(t: f64, ctx: &EllipticContext) -> Cplx {
    let b = orbit::body_state(t, ctx);
    c(b.pos.dot(b.vel), b.pos.cross(b.vel))
}

/// `d/dt 1/(1 − i cn) = −i sn dn / (1 − i cn)²`.
fn j_from_cn(t: f64, ctx: &EllipticContext) -> Cplx {
    let (s, cn, d) = ctx.sn_cn_dn(t).as_tuple();
    let den = c(1.0, -cn);
    c(0.0, -s * d) / (den * den)
}

pub fn check_j_identity(t: f64, ctx: &EllipticContext, tol: &Tolerances) -> AnalyticReport {
    let off = orbit::phase_offset(ctx);
    let mut report = AnalyticReport::default();
    report.push(CheckRecord::close(
        format!("j_identity.representations({t})"),
        j_from_cn(t, ctx),
        j_from_orbit(t, ctx),
        tol.j_identity,
    ));
    let sum: Cplx = [t, t + off, t - off]
        .into_iter()
        .map(|s| j_from_cn(s, ctx))
        .sum();
    report.push(CheckRecord::close(
        format!("j_identity.sum({t})"),
        0.0,
        sum,
        tol.j_identity,
    ));

    let state = orbit::triple(t, ctx);
    let half_inertia_rate: f64 = state.bodies.iter().map(|b| b.pos.dot(b.vel)).sum();
    let orbit_sum: Cplx = [t, t + off, t - off]
        .into_iter()
        .map(|s| j_from_orbit(s, ctx))
        .sum();
    report.push(CheckRecord::close(
        format!("j_identity.real_part_is_half_inertia_rate({t})"),
        half_inertia_rate,
        orbit_sum.re,
        tol.invariant,
    ));
    report.push(CheckRecord::close(
        format!("j_identity.imag_part_is_angular_momentum({t})"),
        invariants::angular_momentum(&state),
        orbit_sum.im,
        tol.invariant,
    ));
    report
}

/// Least-squares slope of `ln|Δx⁻(t0 + h e^{iθ})|` against `ln h` for
/// `h ∈ [1e−4, 1e−2]`.
pub fn zero_order_slope(t0: Cplx, ctx: &EllipticContext) -> Result<f64, AnalyticError> {
    let theta = 0.7f64;
    let n = 9;
    let mut pts = Vec::with_capacity(n);
    for j in 0..n {
        let h = 10f64.powf(-4.0 + 2.0 * j as f64 / (n - 1) as f64);
        let v = delta_x_minus(t0 + Cplx::from_polar(h, theta), ctx)?;
        pts.push((h.ln(), v.norm().ln()));
    }
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n as f64;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n as f64;
    let num: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let den: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok(num / den)
}

/// Order, series coefficients and symmetry of the triple zero of `Δx⁻` at
/// `α₂` or `−α₃`, and the principal part of `1/Δx⁻` there.
pub fn check_triple_zero_and_pole(
    t0: Cplx,
    ctx: &EllipticContext,
    tol: &Tolerances,
) -> Result<AnalyticReport, AnalyticError> {
    let (a2, a3) = (alpha2(ctx), alpha3(ctx));
    let (sign, label) = if (t0 - a2).norm() < 1e-12 {
        (1.0, "alpha2")
    } else if (t0 + a3).norm() < 1e-12 {
        (-1.0, "-alpha3")
    } else {
        return Err(AnalyticError::ExpansionPoint);
    };
    let r2 = 2f64.sqrt();
    let mut report = AnalyticReport::default();

    report.push(CheckRecord::close(
        format!("triple_zero.order.{label}"),
        3.0,
        zero_order_slope(t0, ctx)?,
        tol.zero_order,
    ));
    let c3 = laurent_coefficient(AnalyticFn::DeltaXMinus, t0, 3, ctx)?;
    report.push(CheckRecord::close(
        format!("triple_zero.c3.{label}"),
        sign * q3() / (4.0 * r2),
        c3.value,
        tol.leading_coefficient,
    ));
    let c4 = laurent_coefficient(AnalyticFn::DeltaXMinus, t0, 4, ctx)?;
    report.push(CheckRecord::close(
        format!("triple_zero.c4.{label}"),
        0.0,
        c4.value,
        tol.next_coefficient,
    ));
    let c5 = laurent_coefficient(AnalyticFn::DeltaXMinus, t0, 5, ctx)?;
    report.push(CheckRecord::close(
        format!("triple_zero.c5.{label}"),
        sign * 3f64.powf(0.75) / (32.0 * r2),
        c5.value,
        tol.next_coefficient,
    ));

    let mut odd = 0.0f64;
    for h in [c(0.05, 0.0), c(0.03, 0.02), c(-0.01, 0.04)] {
        let d = if sign > 0.0 {
            delta_x_minus(a2 + h, ctx)? + delta_x_minus(a2 - h, ctx)?
        } else {
            delta_x_minus(-a3 + h, ctx)? - delta_x_minus(a2 - h, ctx)?
        };
        odd = odd.max(d.norm());
    }
    report.push(CheckRecord::close(
        format!("triple_zero.symmetry.{label}"),
        0.0,
        odd,
        tol.j_identity,
    ));

    let (a, b) = (principal_a(), principal_b());
    for (n, claimed) in [(-3, sign * 2.0 * a), (-2, 0.0), (-1, -sign * b)] {
        let got = laurent_coefficient(AnalyticFn::InvDeltaXMinus, t0, n, ctx)?;
        report.push(CheckRecord::close(
            format!("triple_zero.reciprocal.{label}.c{n}"),
            claimed,
            got.value,
            tol.leading_coefficient,
        ));
    }
    Ok(report)
}

/// Every principal-part coefficient listed for `1/Δx⁻(t)`, `−1/Δx⁻(t − 4K/3)`,
/// `d²x⁺/dt²` and `x⁺`.
pub fn check_principal_parts(ctx: &EllipticContext, tol: &Tolerances) -> AnalyticReport {
    let (a2, a3) = (alpha2(ctx), alpha3(ctx));
    let (a, b) = (principal_a(), principal_b());
    // (function, pole, [c₋₃, c₋₂, c₋₁])
    let rows: Vec<(AnalyticFn, Cplx, [f64; 3])> = vec![
        (AnalyticFn::InvDeltaXMinus, a2, [2.0 * a, 0.0, -b]),
        (AnalyticFn::InvDeltaXMinus, -a3, [-2.0 * a, 0.0, b]),
        (AnalyticFn::NegInvDeltaXMinusShifted, a3, [-2.0 * a, 0.0, b]),
        (
            AnalyticFn::NegInvDeltaXMinusShifted,
            -a2,
            [2.0 * a, 0.0, -b],
        ),
        (AnalyticFn::XPlusSecond, a2, [a, 0.0, 0.0]),
        (AnalyticFn::XPlusSecond, a3, [-a, 0.0, 0.0]),
        (AnalyticFn::XPlusSecond, -a2, [a, 0.0, 0.0]),
        (AnalyticFn::XPlusSecond, -a3, [-a, 0.0, 0.0]),
        (AnalyticFn::XPlus, a2, [0.0, 0.0, 1.0 / b]),
        (AnalyticFn::XPlus, a3, [0.0, 0.0, -1.0 / b]),
        (AnalyticFn::XPlus, -a2, [0.0, 0.0, 1.0 / b]),
        (AnalyticFn::XPlus, -a3, [0.0, 0.0, -1.0 / b]),
    ];
    let mut report = AnalyticReport::default();
    for (f, pole, coeffs) in rows {
        for (n, claimed) in [-3, -2, -1].into_iter().zip(coeffs) {
            let name = format!("principal_part.{}.{}.c{n}", f.name(), pole_label(pole, ctx));
            let tolerance = if n == -3 {
                tol.leading_coefficient
            } else {
                tol.next_coefficient
            };
            report.push(match laurent_coefficient(f, pole, n, ctx) {
                Ok(got) => CheckRecord::close(name, claimed, got.value, tolerance),
                Err(_) => CheckRecord::error(name, claimed, tolerance),
            });
        }
    }
    report
}

/// `x⁺″ − ½[1/Δx⁻(t) − 1/Δx⁻(t − 4K/3)] − (√3/4) x⁺`.
pub fn eom_complex_residual(t: Cplx, ctx: &EllipticContext) -> Result<Cplx, AnalyticError> {
    let lhs = orbit::x_plus_second_derivative(t, ctx)?;
    let gravity = 0.5
        * (AnalyticFn::InvDeltaXMinus.eval(t, ctx)?
            + AnalyticFn::NegInvDeltaXMinusShifted.eval(t, ctx)?);
    let repulsion = 0.25 * sqrt3() * orbit::x_plus(t, ctx)?;
    Ok(lhs - gravity - repulsion)
}

/// The complex equation of motion at the given points. Real points are
/// also compared with the planar residual of body 1.
pub fn check_eom_pole_cancellation(
    samples: &[Cplx],
    ctx: &EllipticContext,
    tol: &Tolerances,
) -> AnalyticReport {
    let mut report = AnalyticReport::default();
    let (a2, a3) = (alpha2(ctx), alpha3(ctx));
    for &t in samples {
        let label = format!("{}{:+}i", t.re, t.im);
        let near_pole = [a2, a3, -a2, -a3]
            .into_iter()
            .map(|a| lattice_distance(a, t, ctx))
            .fold(f64::INFINITY, f64::min);
        // cancellation of the cubic terms costs accuracy near a pole
        let tolerance = if near_pole < 0.1 {
            tol.eom_complex * 100.0
        } else {
            tol.eom_complex
        };
        let name = format!("eom_complex({label})");
        let Ok(r) = eom_complex_residual(t, ctx) else {
            report.push(CheckRecord::error(name, 0.0, tolerance));
            continue;
        };
        report.push(CheckRecord::close(name, 0.0, r, tolerance));
        if t.im == 0.0 {
            let planar = eom_residual_vector(t.re, 0, PotentialVariant::UCentral, ctx)
                .map(|v| c(v.x, v.y))
                .unwrap_or(c(f64::NAN, f64::NAN));
            report.push(CheckRecord::close(
                format!("eom_complex.matches_planar({label})"),
                planar,
                r,
                tol.eom,
            ));
        }
    }
    report
}

/// Argument-principle census of `x⁺` and `Δx⁻` in the fundamental cell.
pub fn check_census(
    ctx: &EllipticContext,
    tol: &Tolerances,
) -> Result<AnalyticReport, AnalyticError> {
    let mut report = AnalyticReport::default();
    for f in [AnalyticFn::XPlus, AnalyticFn::DeltaXMinus] {
        let found = census(f, ctx)?;
        let poles: Vec<_> = found
            .iter()
            .filter(|e| e.kind == SingularityKind::Pole)
            .collect();
        let zeros: Vec<_> = found
            .iter()
            .filter(|e| e.kind == SingularityKind::Zero)
            .collect();
        let expected_poles = f.poles(ctx);
        let expected_zeros = f.zeros(ctx);

        report.push(CheckRecord::close(
            format!("census.{}.pole_count", f.name()),
            expected_poles.len() as f64,
            poles.len() as f64,
            0.0,
        ));
        let degree: u32 = poles.iter().map(|e| e.order).sum();
        let zero_degree: u32 = zeros.iter().map(|e| e.order).sum();
        report.push(CheckRecord::close(
            format!("census.{}.zeros_equal_poles", f.name()),
            degree as f64,
            zero_degree as f64,
            0.0,
        ));
        for (kind, expected, got) in [
            ("pole", &expected_poles, &poles),
            ("zero", &expected_zeros, &zeros),
        ] {
            for (p, order) in expected.iter() {
                let name = format!("census.{}.{kind}({:.6}{:+.6}i)", f.name(), p.re, p.im);
                let hit = got.iter().min_by(|x, y| {
                    lattice_distance(x.location, *p, ctx)
                        .total_cmp(&lattice_distance(y.location, *p, ctx))
                });
                report.push(match hit {
                    Some(e) if e.order == *order => {
                        CheckRecord::close(name, *p, e.location, tol.pole_location)
                            .with_lattice_residual(lattice_distance(e.location, *p, ctx))
                    }
                    _ => CheckRecord::error(name, *p, tol.pole_location),
                });
            }
        }
    }
    Ok(report)
}

impl CheckRecord {
    fn with_lattice_residual(mut self, residual: f64) -> Self {
        self.residual = residual;
        self.pass = residual <= self.tolerance;
        self
    }
}

/// Every analytic check at default sample points.
pub fn full_report(ctx: &EllipticContext, tol: &Tolerances) -> AnalyticReport {
    let k = ctx.quarter_period();
    let mut report = AnalyticReport::default();
    report.extend(check_special_values(ctx, tol));
    report.extend(check_modulus_identity(ctx, tol));
    report.extend(check_residues(ctx, tol));
    for t in [c(0.0, 0.0), c(1.3, 0.0), c(0.2, 0.3)] {
        report.extend(check_sum_identities(t, ctx, tol));
    }
    report.extend(check_sum_identity_constancy(500, ctx, tol));
    for t in [k / 4.0, 0.9] {
        report.extend(check_j_identity(t, ctx, tol));
    }
    for t0 in [alpha2(ctx), -alpha3(ctx)] {
        match check_triple_zero_and_pole(t0, ctx, tol) {
            Ok(r) => report.extend(r),
            Err(_) => report.push(CheckRecord::error(format!("triple_zero({t0})"), 0.0, 0.0)),
        }
    }
    report.extend(check_principal_parts(ctx, tol));
    report.extend(check_eom_pole_cancellation(
        &[
            c(0.5, 0.4),
            c(k / 6.0, 0.0),
            c(1.1, -0.7),
            alpha2(ctx) + 0.05,
        ],
        ctx,
        tol,
    ));
    match check_census(ctx, tol) {
        Ok(r) => report.extend(r),
        Err(_) => report.push(CheckRecord::error("census", 0.0, 0.0)),
    }
    report
}
