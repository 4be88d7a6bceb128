//! Numerical certification of the complex-analytic structure behind the
//! orbit: special values, the modulus identity, residues, principal parts,
//! series orders, pole cancellation and a census of zeros and poles.
//!
//! Every check produces [`CheckRecord`]s carrying the claimed value, the
//! observed value, the residual and the pass flag.

mod checks;
pub mod contour;
pub mod functions;

use serde::Serialize;

use crate::elliptic::Cplx;

pub use checks::{
    check_census, check_eom_pole_cancellation, check_j_identity, check_modulus_identity,
    check_principal_parts, check_residues, check_special_values, check_sum_identities,
    check_sum_identity_constancy, check_triple_zero_and_pole, claimed_residues,
    eom_complex_residual, full_report, modulus_identity_rhs, residue_at, zero_order_slope,
};
pub use contour::{
    census, laurent_coefficient, residue, CensusEntry, LaurentEstimate, SingularityKind,
};
pub use functions::{
    alpha1, alpha2, alpha3, alphas, delta_x_minus, principal_a, principal_b, AnalyticFn,
};

/// A pole with the value the theory assigns to it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PoleSpec {
    pub location: Cplx,
    pub order: u32,
    /// Residue, for simple poles.
    pub claimed_residue: Option<Cplx>,
    /// Coefficient of `(t − location)^{−order}`, for higher orders.
    pub claimed_leading: Option<Cplx>,
}

/// A complex number serialized as `{"re": …, "im": …}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Value {
    pub re: f64,
    pub im: f64,
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value { re: x, im: 0.0 }
    }
}

impl From<Cplx> for Value {
    fn from(z: Cplx) -> Self {
        Value { re: z.re, im: z.im }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub claimed: Value,
    pub observed: Value,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckRecord {
    /// `|observed − claimed| ≤ tolerance`.
    pub fn close(
        name: impl Into<String>,
        claimed: impl Into<Cplx>,
        observed: impl Into<Cplx>,
        tolerance: f64,
    ) -> Self {
        let (c, o) = (claimed.into(), observed.into());
        let residual = (o - c).norm();
        Self {
            name: name.into(),
            claimed: c.into(),
            observed: o.into(),
            residual,
            tolerance,
            pass: residual <= tolerance,
        }
    }

    /// `observed > threshold`, for negative controls.
    pub fn exceeds(name: impl Into<String>, observed: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            claimed: threshold.into(),
            observed: observed.into(),
            residual: observed,
            tolerance: threshold,
            pass: observed > threshold,
        }
    }

    /// A failed evaluation, recorded instead of aborting the report.
    pub fn error(name: impl Into<String>, claimed: impl Into<Cplx>, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            claimed: claimed.into().into(),
            observed: f64::NAN.into(),
            residual: f64::NAN,
            tolerance,
            pass: false,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct AnalyticReport {
    pub records: Vec<CheckRecord>,
}

impl AnalyticReport {
    pub fn push(&mut self, r: CheckRecord) {
        self.records.push(r);
    }

    pub fn extend(&mut self, other: AnalyticReport) {
        self.records.extend(other.records);
    }

    pub fn passes(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> Vec<&CheckRecord> {
        self.records.iter().filter(|r| !r.pass).collect()
    }

    pub fn get(&self, name: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.name == name)
    }

    /// Records whose name starts with `prefix`.
    pub fn group<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a CheckRecord> + 'a {
        self.records
            .iter()
            .filter(move |r| r.name.starts_with(prefix))
    }
}
