//! Error types for each subsystem.

use thiserror::Error;

use crate::elliptic::Cplx;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EllipticError {
    #[error("squared modulus m = {0} outside the open interval (0, 1)")]
    Domain(f64),

    #[error("argument {re}{im:+}i lies within {distance:.3e} of a pole at {pole_re}{pole_im:+}i")]
    PoleProximity {
        re: f64,
        im: f64,
        pole_re: f64,
        pole_im: f64,
        distance: f64,
    },
}

impl EllipticError {
    pub(crate) fn pole(t: Cplx, pole: Cplx) -> Self {
        EllipticError::PoleProximity {
            re: t.re,
            im: t.im,
            pole_re: pole.re,
            pole_im: pole.im,
            distance: (t - pole).norm(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DynamicsError {
    #[error("bodies {i} and {j} are {distance:.3e} apart (collision threshold)")]
    Collision { i: usize, j: usize, distance: f64 },

    #[error("time step must be positive and finite, got {0}")]
    InvalidStep(f64),

    #[error("one-body phase 2lt = {0} is in the collision neighbourhood of the origin")]
    OneBodyDomain(f64),

    #[error("body index {0} out of range")]
    BodyIndex(usize),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("point ({x}, {y}) is within the axis tolerance, quadrant rule undefined")]
    Ambiguous { x: f64, y: f64 },

    #[error("expected 4 tangency candidates, found {0}")]
    CandidateCount(usize),

    #[error("quadrant rule did not isolate a unique choice ({0} candidates share the excluded quadrant)")]
    QuadrantRule(usize),

    #[error("selection by motion direction disagrees with selection by quadrant")]
    Disagreement,

    #[error("tangent line misses the rectangular hyperbola (discriminant {0:.3e})")]
    NoIntersection(f64),

    #[error("the point lies on the lemniscate")]
    OnCurve,

    #[error(transparent)]
    Elliptic(#[from] EllipticError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalyticError {
    #[error("contour of radius {radius} around {center_re}{center_im:+}i passes within {distance:.3e} of another singularity")]
    ContourCrossing {
        center_re: f64,
        center_im: f64,
        radius: f64,
        distance: f64,
    },

    #[error("function has no simple pole at the requested point (order {0})")]
    NotSimple(u32),

    #[error("expansion point must be alpha_2 or -alpha_3")]
    ExpansionPoint,

    #[error(transparent)]
    Elliptic(#[from] EllipticError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InvariantError {
    #[error("speed {0:.3e} too small for a curvature")]
    DegenerateVelocity(f64),

    #[error(transparent)]
    Elliptic(#[from] EllipticError),
}
