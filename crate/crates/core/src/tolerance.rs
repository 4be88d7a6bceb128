//! Every pass/fail threshold in one place, scalable from the command line.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Conserved quantities built from positions and velocities.
    pub invariant: f64,
    /// Curvature sum (uses the acceleration).
    pub curvature: f64,
    /// Product of squared distances.
    pub product: f64,
    /// Equation-of-motion residual on the analytic orbit.
    pub eom: f64,
    /// Agreement of the two repulsive-force variants on the orbit.
    pub variant_agreement: f64,
    /// Total energy along the analytic orbit.
    pub energy: f64,
    /// Special values of sn, cn, dn and the modulus identity.
    pub special_value: f64,
    /// Residues by contour quadrature.
    pub residue: f64,
    /// Summed cn identity and x⁺ sum on the real axis.
    pub sum_identity: f64,
    /// Same identities at complex arguments.
    pub sum_identity_complex: f64,
    /// The j⁺ identities.
    pub j_identity: f64,
    /// Order of the zero of Δx⁻ (absolute, on the fitted slope).
    pub zero_order: f64,
    /// Leading series / principal-part coefficients.
    pub leading_coefficient: f64,
    /// Subleading series / principal-part coefficients.
    pub next_coefficient: f64,
    /// Complex form of the equation of motion away from poles.
    pub eom_complex: f64,
    /// Pole locations found by the argument-principle census.
    pub pole_location: f64,
    /// Distance from c to each tangent line.
    pub concurrency: f64,
    /// `cₓ² − c_y² − 1`.
    pub hyperbola: f64,
    /// Positions recovered by the geometric constructions.
    pub round_trip: f64,
    /// One-body lemniscate residual.
    pub one_body: f64,
    /// Return-to-start error of the integrator after one period.
    pub integration_return: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            invariant: 1e-11,
            curvature: 1e-9,
            product: 1e-10,
            eom: 1e-9,
            variant_agreement: 1e-12,
            energy: 1e-9,
            special_value: 1e-12,
            residue: 1e-6,
            sum_identity: 1e-11,
            sum_identity_complex: 1e-9,
            j_identity: 1e-10,
            zero_order: 0.01,
            leading_coefficient: 1e-5,
            next_coefficient: 1e-4,
            eom_complex: 1e-8,
            pole_location: 1e-6,
            concurrency: 1e-9,
            hyperbola: 1e-8,
            round_trip: 1e-7,
            one_body: 1e-8,
            integration_return: 1e-6,
        }
    }
}

impl Tolerances {
    /// All thresholds multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            invariant: self.invariant * factor,
            curvature: self.curvature * factor,
            product: self.product * factor,
            eom: self.eom * factor,
            variant_agreement: self.variant_agreement * factor,
            energy: self.energy * factor,
            special_value: self.special_value * factor,
            residue: self.residue * factor,
            sum_identity: self.sum_identity * factor,
            sum_identity_complex: self.sum_identity_complex * factor,
            j_identity: self.j_identity * factor,
            zero_order: self.zero_order * factor,
            leading_coefficient: self.leading_coefficient * factor,
            next_coefficient: self.next_coefficient * factor,
            eom_complex: self.eom_complex * factor,
            pole_location: self.pole_location * factor,
            concurrency: self.concurrency * factor,
            hyperbola: self.hyperbola * factor,
            round_trip: self.round_trip * factor,
            one_body: self.one_body * factor,
            integration_return: self.integration_return * factor,
        }
    }
}
