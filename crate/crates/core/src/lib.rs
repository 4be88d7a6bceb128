//! Choreographic three bodies on the lemniscate.
//!
//! The lemniscate `(x² + y²)² = x² − y²` is traversed by
//!
//! ```text
//! x(t) = sn(t) / (1 + cn²(t)),   y(t) = sn(t) cn(t) / (1 + cn²(t))
//! ```
//!
//! with period `4K`. At the squared modulus `k² = (2 + √3)/4` three bodies at
//! phases `t, t + 4K/3, t − 4K/3` form a choreography that keeps its center of
//! mass and angular momentum at zero, conserves a family of kinematic
//! quantities, and solves an equation of motion under 2D Newtonian gravity
//! plus a linear repulsion.
//!
//! Modules:
//! - [`elliptic`]: `K`, `K'` and `sn`, `cn`, `dn` for real and complex arguments.
//! - [`orbit`]: the analytic orbit, its derivatives and the three-body state.
//! - [`invariants`]: every conserved quantity and its residual.
//! - [`dynamics`]: forces, potentials, energy, velocity-Verlet integration and
//!   the one-body lemniscate check.
//! - [`geometry`]: tangent-line concurrency, the rectangular hyperbola and the
//!   geometric constructions of the three positions.
//! - [`analytic`]: numerical certification of the complex-analytic facts
//!   (special values, residues, principal parts, pole cancellation).
//! - [`cli`]: the command-line front end used by the `lemnichor` binary.

pub mod analytic;
pub mod cli;
pub mod dynamics;
pub mod elliptic;
pub mod error;
pub mod export;
pub mod geometry;
pub mod invariants;
pub mod orbit;
pub mod tolerance;
pub mod vec2;

pub use elliptic::{choreographic_m, make_context, Cplx, EllipticContext, Jacobi};
pub use error::{AnalyticError, DynamicsError, EllipticError, GeometryError, InvariantError};
pub use orbit::{BodyState, TripleState};
pub use tolerance::Tolerances;
pub use vec2::Vec2;
