//! Conserved quantities of the choreography and their residuals.
//!
//! On the orbit at the choreographic modulus:
//!
//! | quantity                     | value     |
//! |------------------------------|-----------|
//! | `Σ xᵢ`                       | 0         |
//! | `Σ xᵢ²`                      | √3        |
//! | `Σ xᵢ × vᵢ`                  | 0         |
//! | `Σ vᵢ²`                      | 3/4       |
//! | `Σ ρᵢ⁻²`                     | 9√3       |
//! | `Σ_{i<j} (xᵢ − xⱼ)²`         | 3√3       |
//! | `r₁₂² r₂₃² r₃₁²`             | 3√3/2     |
//!
//! plus the pointwise relations `ρ⁻² = 9 x²` and `v² + (k² − ½) x² = ½`,
//! the latter at any modulus.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::elliptic::{make_context, EllipticContext};
use crate::error::InvariantError;
use crate::orbit::{self, BodyState, TripleState};
use crate::tolerance::Tolerances;
use crate::vec2::Vec2;

/// Speeds below this make the curvature undefined.
pub const MIN_SPEED: f64 = 1e-12;

/// Closed-form values of the conserved quantities.
pub mod closed_form {
    pub fn moment_of_inertia() -> f64 {
        3f64.sqrt()
    }

    pub fn kinetic_energy() -> f64 {
        0.75
    }

    pub fn curvature_sq_sum() -> f64 {
        9.0 * 3f64.sqrt()
    }

    pub fn sum_sq_distances() -> f64 {
        3.0 * 3f64.sqrt()
    }

    pub fn product_sq_distances() -> f64 {
        1.5 * 3f64.sqrt()
    }
}

pub fn center_of_mass(s: &TripleState) -> Vec2 {
    s.positions().into_iter().sum()
}

pub fn moment_of_inertia(s: &TripleState) -> f64 {
    s.bodies.iter().map(|b| b.pos.norm_sq()).sum()
}

/// z-component of `Σ xᵢ × vᵢ`.
pub fn angular_momentum(s: &TripleState) -> f64 {
    s.bodies.iter().map(|b| b.pos.cross(b.vel)).sum()
}

/// `Σ vᵢ²`, without the ½.
pub fn kinetic_energy(s: &TripleState) -> f64 {
    s.bodies.iter().map(|b| b.vel.norm_sq()).sum()
}

/// `ρ⁻¹ = |v × a| / |v|³` for one body state.
pub fn curvature_of(b: &BodyState) -> Result<f64, InvariantError> {
    let speed = b.vel.norm();
    if speed < MIN_SPEED {
        return Err(InvariantError::DegenerateVelocity(speed));
    }
    Ok(b.vel.cross(b.acc).abs() / speed.powi(3))
}

pub fn curvature(t: f64, ctx: &EllipticContext) -> Result<f64, InvariantError> {
    curvature_of(&orbit::body_state(t, ctx))
}

pub fn curvature_sq_sum(s: &TripleState) -> Result<f64, InvariantError> {
    s.bodies
        .iter()
        .map(|b| curvature_of(b).map(|k| k * k))
        .sum()
}

/// `|v² + (m − ½) x² − ½|` at squared modulus `m`.
pub fn velocity_relation_residual(t: f64, m: f64) -> Result<f64, InvariantError> {
    let ctx = make_context(m)?;
    Ok(velocity_relation_residual_in(
        &orbit::body_state(t, &ctx),
        m,
    ))
}

fn velocity_relation_residual_in(b: &BodyState, m: f64) -> f64 {
    (b.vel.norm_sq() + (m - 0.5) * b.pos.norm_sq() - 0.5).abs()
}

fn pair_sq_distances(s: &TripleState) -> [f64; 3] {
    let p = s.positions();
    [
        (p[0] - p[1]).norm_sq(),
        (p[1] - p[2]).norm_sq(),
        (p[2] - p[0]).norm_sq(),
    ]
}

pub fn sum_sq_distances(s: &TripleState) -> f64 {
    pair_sq_distances(s).iter().sum()
}

pub fn product_sq_distances(s: &TripleState) -> f64 {
    pair_sq_distances(s).iter().product()
}

/// Every conserved quantity at one phase, with residuals against the
/// closed-form constants.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantReport {
    pub t: f64,
    pub center_of_mass: Vec2,
    pub moment_of_inertia: f64,
    pub angular_momentum: f64,
    pub kinetic_energy: f64,
    pub curvature_sq_sum: f64,
    pub sum_sq_distances: f64,
    pub product_sq_distances: f64,
    pub residuals: BTreeMap<&'static str, f64>,
}

pub const CENTER_OF_MASS: &str = "center_of_mass";
pub const MOMENT_OF_INERTIA: &str = "moment_of_inertia";
pub const ANGULAR_MOMENTUM: &str = "angular_momentum";
pub const KINETIC_ENERGY: &str = "kinetic_energy";
pub const CURVATURE_SQ_SUM: &str = "curvature_sq_sum";
pub const SUM_SQ_DISTANCES: &str = "sum_sq_distances";
pub const PRODUCT_SQ_DISTANCES: &str = "product_sq_distances";
pub const CURVATURE_RELATION: &str = "curvature_relation";
pub const VELOCITY_RELATION: &str = "velocity_relation";

impl InvariantReport {
    /// Threshold that applies to a residual key.
    pub fn tolerance_for(key: &str, tol: &Tolerances) -> f64 {
        match key {
            CURVATURE_SQ_SUM | CURVATURE_RELATION => tol.curvature,
            PRODUCT_SQ_DISTANCES => tol.product,
            _ => tol.invariant,
        }
    }

    /// Residual keys that exceed their threshold (NaN counts as failing).
    pub fn failures(&self, tol: &Tolerances) -> Vec<&'static str> {
        self.residuals
            .iter()
            .filter(|(k, v)| !(**v <= Self::tolerance_for(k, tol)))
            .map(|(k, _)| *k)
            .collect()
    }

    pub fn passes(&self, tol: &Tolerances) -> bool {
        self.failures(tol).is_empty()
    }
}

pub fn full_report(t: f64, ctx: &EllipticContext) -> InvariantReport {
    report_for(&orbit::triple(t, ctx), ctx.m())
}

/// Report for an arbitrary triple; `m` enters only the velocity relation.
pub fn report_for(s: &TripleState, m: f64) -> InvariantReport {
    let com = center_of_mass(s);
    let inertia = moment_of_inertia(s);
    let ang = angular_momentum(s);
    let kin = kinetic_energy(s);
    let curv = curvature_sq_sum(s).unwrap_or(f64::NAN);
    let sum_sq = sum_sq_distances(s);
    let prod_sq = product_sq_distances(s);

    let curvature_relation = s
        .bodies
        .iter()
        .map(|b| match curvature_of(b) {
            Ok(k) => (k * k - 9.0 * b.pos.norm_sq()).abs(),
            Err(_) => f64::NAN,
        })
        .fold(0.0, f64::max);
    let velocity_relation = s
        .bodies
        .iter()
        .map(|b| velocity_relation_residual_in(b, m))
        .fold(0.0, f64::max);

    let residuals = BTreeMap::from([
        (CENTER_OF_MASS, com.norm()),
        (
            MOMENT_OF_INERTIA,
            (inertia - closed_form::moment_of_inertia()).abs(),
        ),
        (ANGULAR_MOMENTUM, ang.abs()),
        (KINETIC_ENERGY, (kin - closed_form::kinetic_energy()).abs()),
        (
            CURVATURE_SQ_SUM,
            (curv - closed_form::curvature_sq_sum()).abs(),
        ),
        (
            SUM_SQ_DISTANCES,
            (sum_sq - closed_form::sum_sq_distances()).abs(),
        ),
        (
            PRODUCT_SQ_DISTANCES,
            (prod_sq - closed_form::product_sq_distances()).abs(),
        ),
        (CURVATURE_RELATION, curvature_relation),
        (VELOCITY_RELATION, velocity_relation),
    ]);

    InvariantReport {
        t: s.t,
        center_of_mass: com,
        moment_of_inertia: inertia,
        angular_momentum: ang,
        kinetic_energy: kin,
        curvature_sq_sum: curv,
        sum_sq_distances: sum_sq,
        product_sq_distances: prod_sq,
        residuals,
    }
}

/// Reports at `n` uniformly spaced phases covering `[0, 4K)`.
pub fn sweep(n: usize, ctx: &EllipticContext) -> Vec<InvariantReport> {
    let dt = ctx.period() / n as f64;
    (0..n).map(|i| full_report(i as f64 * dt, ctx)).collect()
}

/// Largest residual per key over a set of reports.
pub fn max_residuals(reports: &[InvariantReport]) -> BTreeMap<&'static str, f64> {
    let mut out = BTreeMap::new();
    for r in reports {
        for (k, v) in &r.residuals {
            let e = out.entry(*k).or_insert(0.0f64);
            // NaN propagates so that it is reported
            if v.is_nan() || *v > *e {
                *e = *v;
            }
        }
    }
    out
}
