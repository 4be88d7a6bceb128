//! Tangent-line geometry of the choreography.
//!
//! Zero center of mass and zero angular momentum make the three tangent
//! lines `xᵢ + λ vᵢ` concurrent at a point `c`. On this orbit `c` runs along
//! the rectangular hyperbola `cₓ² − c_y² = 1`, which gives two ways to
//! rebuild the configuration geometrically:
//!
//! - from `c`: draw the (generically four) tangents from `c` to the
//!   lemniscate and keep the three contact points outside `c`'s quadrant,
//!   equivalently the three that move forward when `c` moves up;
//! - from one body `x₁`: intersect its tangent line with the hyperbola and
//!   keep the intersection outside `x₁`'s quadrant, equivalently the one that
//!   moves up when `x₁` moves forward, then continue as above.
//!
//! "Forward" is increasing `t`, which passes through the origin upward.

use serde::Serialize;

use crate::elliptic::EllipticContext;
use crate::error::GeometryError;
use crate::orbit::{self, TripleState};
use crate::vec2::Vec2;

/// Points closer than this to a coordinate axis have no quadrant.
pub const AXIS_EPS: f64 = 1e-8;
/// Velocity pairs with `|vᵢ × vⱼ|` below this are treated as parallel.
pub const PARALLEL_EPS: f64 = 1e-10;
/// Phases sampled when bracketing tangency roots.
pub const SCAN_POINTS: usize = 4096;
/// Bisection stops once the bracket is narrower than this.
pub const ROOT_TOL: f64 = 1e-13;
/// Roots closer than this (in phase) are merged.
pub const ROOT_MERGE: f64 = 1e-9;
/// Step used by the motion-direction selection rules.
pub const PERTURBATION: f64 = 1e-5;
/// Line–hyperbola discriminants within this of zero count as tangency.
pub const DISCRIMINANT_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Quadrant {
    First = 1,
    Second = 2,
    Third = 3,
    Fourth = 4,
}

impl Quadrant {
    /// Quadrant of `p`, or `None` within [`AXIS_EPS`] of an axis.
    pub fn of(p: Vec2) -> Option<Quadrant> {
        if !(p.x.abs() > AXIS_EPS && p.y.abs() > AXIS_EPS) {
            return None;
        }
        Some(match (p.x > 0.0, p.y > 0.0) {
            (true, true) => Quadrant::First,
            (false, true) => Quadrant::Second,
            (false, false) => Quadrant::Third,
            (true, false) => Quadrant::Fourth,
        })
    }

    pub fn number(self) -> u8 {
        self as u8
    }
}

fn quadrant_or_ambiguous(p: Vec2) -> Result<Quadrant, GeometryError> {
    Quadrant::of(p).ok_or(GeometryError::Ambiguous { x: p.x, y: p.y })
}

/// Common point of the three tangent lines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConcurrencyPoint {
    pub c: Vec2,
    /// `c = xᵢ + λᵢ vᵢ`.
    pub lambdas: [f64; 3],
    /// `false` when every pair of tangent lines is parallel.
    pub finite: bool,
}

const PAIRS: [(usize, usize); 3] = [(0, 1), (1, 2), (2, 0)];

/// `c` from the tangent lines of bodies `i` and `j`:
/// `c = −(lᵢ vⱼ − lⱼ vᵢ) / (vᵢ × vⱼ)` with `lᵢ = xᵢ × vᵢ`.
pub fn pair_point(x: &[Vec2; 3], v: &[Vec2; 3], i: usize, j: usize) -> Option<Vec2> {
    let det = v[i].cross(v[j]);
    if det.abs() < PARALLEL_EPS {
        return None;
    }
    let li = x[i].cross(v[i]);
    let lj = x[j].cross(v[j]);
    Some(-(v[j] * li - v[i] * lj) / det)
}

/// `c` computed from each of the pairs (1,2), (2,3), (3,1).
pub fn pair_points(s: &TripleState) -> [Option<Vec2>; 3] {
    let (x, v) = (s.positions(), s.velocities());
    PAIRS.map(|(i, j)| pair_point(&x, &v, i, j))
}

pub fn concurrency_point(s: &TripleState) -> ConcurrencyPoint {
    concurrency_from(&s.positions(), &s.velocities())
}

fn concurrency_from(x: &[Vec2; 3], v: &[Vec2; 3]) -> ConcurrencyPoint {
    let best = PAIRS
        .into_iter()
        .max_by(|a, b| {
            v[a.0]
                .cross(v[a.1])
                .abs()
                .total_cmp(&v[b.0].cross(v[b.1]).abs())
        })
        .expect("three pairs");
    let Some(c) = pair_point(x, v, best.0, best.1) else {
        return ConcurrencyPoint {
            c: Vec2::new(f64::INFINITY, f64::INFINITY),
            lambdas: [f64::INFINITY; 3],
            finite: false,
        };
    };
    let lambdas = std::array::from_fn(|i| {
        let j = (0..3)
            .filter(|&j| j != i)
            .max_by(|&a, &b| v[i].cross(v[a]).abs().total_cmp(&v[i].cross(v[b]).abs()))
            .expect("two partners");
        (x[j] - x[i]).cross(v[j]) / v[i].cross(v[j])
    });
    ConcurrencyPoint {
        c,
        lambdas,
        finite: true,
    }
}

/// Largest distance from `c` to the three tangent lines.
pub fn concurrency_residual(s: &TripleState, c: Vec2) -> f64 {
    s.bodies
        .iter()
        .map(|b| (c - b.pos).cross(b.vel).abs() / b.vel.norm())
        .fold(0.0, f64::max)
}

/// Largest spread between the pairwise constructions of `c`.
pub fn pair_disagreement(s: &TripleState) -> f64 {
    let pts: Vec<Vec2> = pair_points(s).into_iter().flatten().collect();
    let mut worst = 0.0f64;
    for (a, p) in pts.iter().enumerate() {
        for q in &pts[a + 1..] {
            worst = worst.max((*p - *q).norm());
        }
    }
    worst
}

/// `cₓ² − c_y² − 1`.
pub fn hyperbola_residual(c: Vec2) -> f64 {
    c.x * c.x - c.y * c.y - 1.0
}

/// A point of the lemniscate whose tangent line passes through a query point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TangencyCandidate {
    /// Orbit phase in `[0, 4K)`.
    pub s: f64,
    pub point: Vec2,
    pub quadrant: Option<Quadrant>,
}

impl TangencyCandidate {
    fn at(s: f64, ctx: &EllipticContext) -> Self {
        let point = orbit::position(s, ctx);
        Self {
            s,
            point,
            quadrant: Quadrant::of(point),
        }
    }
}

/// `(c − x(s)) × v(s)`; zero when the tangent at `s` passes through `c`.
pub fn tangency_function(c: Vec2, s: f64, ctx: &EllipticContext) -> f64 {
    let b = orbit::body_state(s, ctx);
    (c - b.pos).cross(b.vel)
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, mut f_lo: f64) -> f64 {
    while hi - lo > ROOT_TOL {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Signed phase difference `b − a` wrapped into `(−2K, 2K]`.
pub fn phase_difference(a: f64, b: f64, ctx: &EllipticContext) -> f64 {
    let p = ctx.period();
    let d = (b - a).rem_euclid(p);
    if d > 0.5 * p {
        d - p
    } else {
        d
    }
}

/// All contact points of tangent lines through `c`, by dense scan and
/// bisection. Generically there are four.
pub fn tangents_from_point(
    c: Vec2,
    ctx: &EllipticContext,
) -> Result<Vec<TangencyCandidate>, GeometryError> {
    if orbit::lemniscate_residual(c).abs() < 1e-12 {
        return Err(GeometryError::OnCurve);
    }
    let period = ctx.period();
    let h = period / SCAN_POINTS as f64;
    let g = |s: f64| tangency_function(c, s, ctx);
    let values: Vec<f64> = (0..SCAN_POINTS).map(|k| g(k as f64 * h)).collect();

    let mut roots: Vec<f64> = Vec::new();
    for k in 0..SCAN_POINTS {
        let (lo, hi) = (k as f64 * h, (k + 1) as f64 * h);
        let (g_lo, g_hi) = (values[k], values[(k + 1) % SCAN_POINTS]);
        if g_lo == 0.0 {
            roots.push(lo);
        } else if g_hi != 0.0 && (g_lo < 0.0) != (g_hi < 0.0) {
            roots.push(bisect(g, lo, hi, g_lo).rem_euclid(period));
        }
    }
    roots.sort_by(f64::total_cmp);
    let mut merged: Vec<f64> = Vec::with_capacity(roots.len());
    for r in roots {
        if merged
            .last()
            .is_none_or(|&p| phase_difference(p, r, ctx).abs() > ROOT_MERGE)
        {
            merged.push(r);
        }
    }
    if merged.len() > 1
        && phase_difference(merged[merged.len() - 1], merged[0], ctx).abs() <= ROOT_MERGE
    {
        merged.pop();
    }

    if merged.len() != 4 {
        log::warn!(
            "{} tangency candidates from ({}, {}); expected 4",
            merged.len(),
            c.x,
            c.y
        );
    }
    Ok(merged
        .into_iter()
        .map(|s| TangencyCandidate::at(s, ctx))
        .collect())
}

/// `c` moved up by `δ` along its level curve of `cₓ² − c_y²`.
fn nudge_up(c: Vec2, delta: f64) -> Vec2 {
    let y = c.y + delta;
    let x2 = c.x * c.x - c.y * c.y + y * y;
    if x2 > 0.0 {
        Vec2::new(c.x.signum() * x2.sqrt(), y)
    } else {
        Vec2::new(c.x, y)
    }
}

/// Rule (ii): indices of the three candidates outside `c`'s quadrant.
pub fn select_by_quadrant(
    c: Vec2,
    candidates: &[TangencyCandidate],
) -> Result<[usize; 3], GeometryError> {
    if candidates.len() != 4 {
        return Err(GeometryError::CandidateCount(candidates.len()));
    }
    let qc = quadrant_or_ambiguous(c)?;
    for cand in candidates {
        quadrant_or_ambiguous(cand.point)?;
    }
    let inside = candidates.iter().filter(|k| k.quadrant == Some(qc)).count();
    if inside != 1 {
        return Err(GeometryError::QuadrantRule(inside));
    }
    let picked: Vec<usize> = (0..4)
        .filter(|&i| candidates[i].quadrant != Some(qc))
        .collect();
    Ok([picked[0], picked[1], picked[2]])
}

/// Rule (i): indices of the candidates whose phase advances when `c` moves up.
pub fn select_by_motion(
    c: Vec2,
    candidates: &[TangencyCandidate],
    ctx: &EllipticContext,
) -> Result<[usize; 3], GeometryError> {
    if candidates.len() != 4 {
        return Err(GeometryError::CandidateCount(candidates.len()));
    }
    let moved = tangents_from_point(nudge_up(c, PERTURBATION), ctx)?;
    if moved.len() != 4 {
        return Err(GeometryError::CandidateCount(moved.len()));
    }
    let mut forward = Vec::with_capacity(3);
    for (i, cand) in candidates.iter().enumerate() {
        let shift = moved
            .iter()
            .map(|m| phase_difference(cand.s, m.s, ctx))
            .min_by(|a, b| a.abs().total_cmp(&b.abs()))
            .expect("four moved candidates");
        if shift > 0.0 {
            forward.push(i);
        }
    }
    if forward.len() != 3 {
        return Err(GeometryError::Disagreement);
    }
    Ok([forward[0], forward[1], forward[2]])
}

/// The three choreographic contact points among the tangents from `c`,
/// chosen by quadrant and confirmed by motion direction.
pub fn select_choreographic(
    c: Vec2,
    candidates: &[TangencyCandidate],
    ctx: &EllipticContext,
) -> Result<[TangencyCandidate; 3], GeometryError> {
    let by_quadrant = select_by_quadrant(c, candidates)?;
    let by_motion = select_by_motion(c, candidates, ctx)?;
    if by_quadrant != by_motion {
        return Err(GeometryError::Disagreement);
    }
    Ok(by_quadrant.map(|i| candidates[i]))
}

/// Tangents from `c` followed by [`select_choreographic`].
pub fn triple_from_concurrency_point(
    c: Vec2,
    ctx: &EllipticContext,
) -> Result<[TangencyCandidate; 3], GeometryError> {
    let candidates = tangents_from_point(c, ctx)?;
    select_choreographic(c, &candidates, ctx)
}

/// Intersections of the line `p + λ dir` with `cₓ² − c_y² = 1`.
pub fn hyperbola_intersections(p: Vec2, dir: Vec2) -> Result<Vec<Vec2>, GeometryError> {
    let a = dir.x * dir.x - dir.y * dir.y;
    let b = 2.0 * (p.x * dir.x - p.y * dir.y);
    let c = p.x * p.x - p.y * p.y - 1.0;
    let scale = dir.norm_sq();
    if a.abs() <= 1e-14 * scale {
        // line parallel to an asymptote
        if b.abs() <= 1e-14 * scale {
            return Err(GeometryError::NoIntersection(0.0));
        }
        return Ok(vec![p + dir * (-c / b)]);
    }
    let disc = b * b - 4.0 * a * c;
    if disc < -DISCRIMINANT_EPS {
        return Err(GeometryError::NoIntersection(disc));
    }
    if disc.abs() <= DISCRIMINANT_EPS {
        return Ok(vec![p + dir * (-b / (2.0 * a))]);
    }
    // numerically stable pair of roots
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    Ok(vec![p + dir * (q / a), p + dir * (c / q)])
}

/// Positions of the other two bodies rebuilt from the first one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CompletedTriple {
    /// Phases of bodies 2 and 3 (`s + 4K/3`, `s − 4K/3` modulo `4K`).
    pub phases: [f64; 2],
    pub positions: [Vec2; 2],
    pub concurrency: ConcurrencyPoint,
}

/// Rule (ii) on the tangent line at `x1`: the intersection outside `x1`'s quadrant.
fn pick_crossing(x1: Vec2, crossings: &[Vec2]) -> Result<usize, GeometryError> {
    let q1 = quadrant_or_ambiguous(x1)?;
    let mut pick = None;
    for (i, d) in crossings.iter().enumerate() {
        if quadrant_or_ambiguous(*d)? != q1 {
            if pick.is_some() {
                return Err(GeometryError::QuadrantRule(crossings.len()));
            }
            pick = Some(i);
        }
    }
    pick.ok_or(GeometryError::QuadrantRule(0))
}

/// Concurrency point for body 1 at phase `s`, chosen by quadrant and
/// confirmed by motion direction.
pub fn concurrency_from_point(s: f64, ctx: &EllipticContext) -> Result<Vec2, GeometryError> {
    let b = orbit::body_state(s, ctx);
    let crossings = hyperbola_intersections(b.pos, b.vel)?;
    let pick = pick_crossing(b.pos, &crossings)?;

    let moved_state = orbit::body_state(s + PERTURBATION, ctx);
    let moved = hyperbola_intersections(moved_state.pos, moved_state.vel)?;
    for (i, d) in crossings.iter().enumerate() {
        let next = moved
            .iter()
            .min_by(|p, q| (**p - *d).norm().total_cmp(&(**q - *d).norm()))
            .ok_or(GeometryError::Disagreement)?;
        let upward = next.y > d.y;
        if upward != (i == pick) {
            return Err(GeometryError::Disagreement);
        }
    }
    Ok(crossings[pick])
}

pub fn complete_triple_from_point(
    x1_phase: f64,
    ctx: &EllipticContext,
) -> Result<CompletedTriple, GeometryError> {
    let c = concurrency_from_point(x1_phase, ctx)?;
    let chosen = triple_from_concurrency_point(c, ctx)?;

    let period = ctx.period();
    let own = (0..3)
        .min_by(|&a, &b| {
            phase_difference(x1_phase, chosen[a].s, ctx)
                .abs()
                .total_cmp(&phase_difference(x1_phase, chosen[b].s, ctx).abs())
        })
        .expect("three choices");
    let mut others: Vec<TangencyCandidate> =
        (0..3).filter(|&i| i != own).map(|i| chosen[i]).collect();
    others.sort_by(|a, b| {
        (a.s - x1_phase)
            .rem_euclid(period)
            .total_cmp(&(b.s - x1_phase).rem_euclid(period))
    });

    let state = TripleState {
        t: x1_phase,
        bodies: [
            orbit::body_state(x1_phase, ctx),
            orbit::body_state(others[0].s, ctx),
            orbit::body_state(others[1].s, ctx),
        ],
    };
    Ok(CompletedTriple {
        phases: [others[0].s, others[1].s],
        positions: [others[0].point, others[1].point],
        concurrency: concurrency_point(&state),
    })
}

/// Geometry of the configuration at one phase.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeometrySample {
    pub t: f64,
    pub c: Vec2,
    pub lambdas: [f64; 3],
    pub finite: bool,
    pub quadrant_c: Option<Quadrant>,
    pub quadrants: [Option<Quadrant>; 3],
    pub hyperbola_residual: f64,
    pub concurrency_residual: f64,
}

impl GeometrySample {
    /// At infinity, or some point too close to an axis for the quadrant rule.
    pub fn is_degenerate(&self) -> bool {
        !self.finite || self.quadrant_c.is_none() || self.quadrants.iter().any(Option::is_none)
    }

    /// `c` and the three bodies occupy four different quadrants.
    pub fn quadrants_distinct(&self) -> bool {
        let mut all: Vec<Quadrant> = self
            .quadrants
            .iter()
            .chain([&self.quadrant_c])
            .flatten()
            .copied()
            .collect();
        all.sort_by_key(|q| q.number());
        all.dedup();
        all.len() == 4
    }
}

pub fn geometry_sample(t: f64, ctx: &EllipticContext) -> GeometrySample {
    let s = orbit::triple(t, ctx);
    let cp = concurrency_point(&s);
    GeometrySample {
        t,
        c: cp.c,
        lambdas: cp.lambdas,
        finite: cp.finite,
        quadrant_c: Quadrant::of(cp.c),
        quadrants: s.bodies.map(|b| Quadrant::of(b.pos)),
        hyperbola_residual: hyperbola_residual(cp.c),
        concurrency_residual: concurrency_residual(&s, cp.c),
    }
}

/// Samples at `t = t0 + k · 4K / n`, `k = 0..n`.
pub fn sweep(n: usize, t0: f64, ctx: &EllipticContext) -> Vec<GeometrySample> {
    let dt = ctx.period() / n as f64;
    (0..n)
        .map(|k| geometry_sample(t0 + k as f64 * dt, ctx))
        .collect()
}

/// `c` switching between the two branches of the hyperbola.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LeafJump {
    pub t_before: f64,
    pub t_after: f64,
    /// Body that passed through the origin in the same interval.
    pub body_at_origin: Option<usize>,
}

/// `samples` followed by its first entry shifted by one period, so event
/// detection also covers the interval that wraps around.
fn closed(samples: &[GeometrySample], ctx: &EllipticContext) -> Vec<GeometrySample> {
    let mut out = samples.to_vec();
    if let Some(first) = samples.first() {
        out.push(GeometrySample {
            t: first.t + ctx.period(),
            ..*first
        });
    }
    out
}

/// Branch switches over one period sampled by [`sweep`].
pub fn leaf_jumps(samples: &[GeometrySample], ctx: &EllipticContext) -> Vec<LeafJump> {
    let samples = closed(samples, ctx);
    let two_k = 2.0 * ctx.quarter_period();
    let offsets = [0.0, orbit::phase_offset(ctx), -orbit::phase_offset(ctx)];
    samples
        .windows(2)
        .filter(|w| w[0].finite && w[1].finite && (w[0].c.x > 0.0) != (w[1].c.x > 0.0))
        .map(|w| {
            let body_at_origin = (0..3).find(|&i| {
                let a = ((w[0].t + offsets[i]) / two_k).floor();
                let b = ((w[1].t + offsets[i]) / two_k).floor();
                a != b
            });
            LeafJump {
                t_before: w[0].t,
                t_after: w[1].t,
                body_at_origin,
            }
        })
        .collect()
}

/// Consecutive same-branch sample pairs along which `c_y` decreased.
pub fn downward_steps(samples: &[GeometrySample]) -> usize {
    samples
        .windows(2)
        .filter(|w| {
            w[0].finite
                && w[1].finite
                && (w[0].c.x > 0.0) == (w[1].c.x > 0.0)
                && w[1].c.y < w[0].c.y
        })
        .count()
}

/// `c` crossing the horizontal axis, paired with the body crossing it nearby.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AxisCrossing {
    pub t: f64,
    pub c: Vec2,
    /// Direction of `c` through the axis.
    pub c_upward: bool,
    pub body: usize,
    pub body_position: Vec2,
    pub body_velocity: Vec2,
}

impl AxisCrossing {
    /// Distance between `c` and the crossing body.
    pub fn separation(&self) -> f64 {
        (self.c - self.body_position).norm()
    }

    /// The body crosses in the direction opposite to `c`.
    pub fn opposite(&self) -> bool {
        (self.body_velocity.y < 0.0) == self.c_upward
    }
}

/// Axis crossings of `c` over one period sampled by [`sweep`].
pub fn axis_crossings(samples: &[GeometrySample], ctx: &EllipticContext) -> Vec<AxisCrossing> {
    let samples = closed(samples, ctx);
    let cy = |t: f64| concurrency_point(&orbit::triple(t, ctx)).c.y;
    samples
        .windows(2)
        .filter(|w| {
            w[0].finite
                && w[1].finite
                && (w[0].c.x > 0.0) == (w[1].c.x > 0.0)
                && (w[0].c.y < 0.0) != (w[1].c.y < 0.0)
        })
        .map(|w| {
            let t = bisect(cy, w[0].t, w[1].t, w[0].c.y);
            let s = orbit::triple(t, ctx);
            let body = (0..3)
                .min_by(|&a, &b| s.bodies[a].pos.y.abs().total_cmp(&s.bodies[b].pos.y.abs()))
                .expect("three bodies");
            AxisCrossing {
                t,
                c: concurrency_point(&s).c,
                c_upward: w[1].c.y > w[0].c.y,
                body,
                body_position: s.bodies[body].pos,
                body_velocity: s.bodies[body].vel,
            }
        })
        .collect()
}

/// Increasing `t` passes through the origin upward (at `t = 0` and `t = 2K`).
pub fn forward_is_upward(ctx: &EllipticContext) -> bool {
    [0.0, 2.0 * ctx.quarter_period()]
        .into_iter()
        .all(|t| orbit::position(t, ctx).norm() < 1e-15 && orbit::velocity(t, ctx).y > 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> EllipticContext {
        EllipticContext::choreographic()
    }

    #[test]
    fn quadrant_convention() {
        assert_eq!(Quadrant::of(Vec2::new(1.0, 1.0)), Some(Quadrant::First));
        assert_eq!(Quadrant::of(Vec2::new(-1.0, 1.0)), Some(Quadrant::Second));
        assert_eq!(Quadrant::of(Vec2::new(-1.0, -1.0)), Some(Quadrant::Third));
        assert_eq!(Quadrant::of(Vec2::new(1.0, -1.0)), Some(Quadrant::Fourth));
        assert_eq!(Quadrant::of(Vec2::new(1.0, 1e-9)), None);
        assert_eq!(Quadrant::Third.number(), 3);
    }

    #[test]
    fn hyperbola_residual_values() {
        assert_eq!(hyperbola_residual(Vec2::new(1.0, 0.0)), 0.0);
        assert!(hyperbola_residual(Vec2::new(2f64.sqrt(), 1.0)).abs() < 1e-15);
    }

    #[test]
    fn snapshot_before_origin_passage() {
        let c = ctx();
        let s = orbit::triple(-c.quarter_period() / 6.0, &c);
        let cp = concurrency_point(&s);
        assert!(cp.finite);
        assert!(hyperbola_residual(cp.c).abs() < 1e-8);
        let qc = Quadrant::of(cp.c).unwrap();
        for b in s.bodies {
            assert_ne!(Quadrant::of(b.pos).unwrap(), qc);
        }
        for (i, b) in s.bodies.iter().enumerate() {
            assert!((b.pos + b.vel * cp.lambdas[i] - cp.c).norm() < 1e-9);
        }
        assert!(pair_disagreement(&s) < 1e-9);
    }

    #[test]
    fn origin_passage_is_at_infinity() {
        // at t = 0 all three tangent lines are parallel
        let s = orbit::triple(0.0, &ctx());
        let cp = concurrency_point(&s);
        assert!(!cp.finite);
    }

    #[test]
    fn forward_matches_upward_passage() {
        assert!(forward_is_upward(&ctx()));
    }

    #[test]
    fn four_tangents_from_hyperbola_point() {
        let c = ctx();
        let cands = tangents_from_point(Vec2::new(2f64.sqrt(), 1.0), &c).unwrap();
        assert_eq!(cands.len(), 4);
        for k in &cands {
            assert!(tangency_function(Vec2::new(2f64.sqrt(), 1.0), k.s, &c).abs() < 1e-12);
        }
    }

    #[test]
    fn tangents_from_axis_point_are_mirror_symmetric() {
        let c = ctx();
        let cands = tangents_from_point(Vec2::new(1.7, 0.0), &c).unwrap();
        assert!(!cands.is_empty());
        for k in &cands {
            let mirrored = Vec2::new(k.point.x, -k.point.y);
            assert!(cands.iter().any(|o| (o.point - mirrored).norm() < 1e-10));
        }
    }

    #[test]
    fn point_on_curve_is_rejected() {
        let c = ctx();
        assert!(matches!(
            tangents_from_point(orbit::position(0.7, &c), &c),
            Err(GeometryError::OnCurve)
        ));
    }

    #[test]
    fn tangents_include_body_phases() {
        let c = ctx();
        let t = 0.4;
        let cp = concurrency_point(&orbit::triple(t, &c));
        let cands = tangents_from_point(cp.c, &c).unwrap();
        let off = orbit::phase_offset(&c);
        for phase in [t, t + off, t - off] {
            assert!(cands
                .iter()
                .any(|k| phase_difference(phase, k.s, &c).abs() < 1e-8));
        }
    }

    #[test]
    fn round_trip_from_concurrency_point() {
        let c = ctx();
        let t = c.quarter_period() / 7.0;
        let s = orbit::triple(t, &c);
        let cp = concurrency_point(&s);
        let chosen = triple_from_concurrency_point(cp.c, &c).unwrap();
        for b in s.bodies {
            assert!(chosen.iter().any(|k| (k.point - b.pos).norm() < 1e-7));
        }
        let rebuilt = TripleState {
            t,
            bodies: chosen.map(|k| orbit::body_state(k.s, &c)),
        };
        assert!(concurrency_residual(&rebuilt, cp.c) < 1e-8);
    }

    #[test]
    fn round_trip_from_first_body() {
        let c = ctx();
        let t = c.quarter_period() / 5.0;
        let done = complete_triple_from_point(t, &c).unwrap();
        let s = orbit::triple(t, &c);
        assert!((done.positions[0] - s.bodies[1].pos).norm() < 1e-7);
        assert!((done.positions[1] - s.bodies[2].pos).norm() < 1e-7);
        assert!((done.concurrency.c - concurrency_point(&s).c).norm() < 1e-7);
    }

    #[test]
    fn first_body_on_axis_is_ambiguous() {
        let c = ctx();
        assert!(matches!(
            complete_triple_from_point(c.quarter_period(), &c),
            Err(GeometryError::Ambiguous { .. })
        ));
    }

    #[test]
    fn chosen_crossing_moves_up() {
        let c = ctx();
        let t = c.quarter_period() / 5.0;
        let b = orbit::body_state(t, &c);
        let d = hyperbola_intersections(b.pos, b.vel).unwrap();
        assert_eq!(d.len(), 2);
        let chosen = concurrency_from_point(t, &c).unwrap();
        let moved = orbit::body_state(t + PERTURBATION, &c);
        let d2 = hyperbola_intersections(moved.pos, moved.vel).unwrap();
        for p in d {
            let next = d2
                .iter()
                .min_by(|a, b| (**a - p).norm().total_cmp(&(**b - p).norm()))
                .unwrap();
            assert_eq!(next.y > p.y, (p - chosen).norm() < 1e-12);
        }
    }

    #[test]
    fn line_missing_hyperbola() {
        // vertical line x = 0.5 never reaches |x| ≥ 1
        assert!(matches!(
            hyperbola_intersections(Vec2::new(0.5, 0.0), Vec2::new(0.0, 1.0)),
            Err(GeometryError::NoIntersection(_))
        ));
        let tangent = hyperbola_intersections(Vec2::new(1.0, -3.0), Vec2::new(0.0, 1.0)).unwrap();
        assert_eq!(tangent.len(), 1);
    }

    #[test]
    fn selection_needs_four_candidates() {
        let c = ctx();
        let cands = tangents_from_point(Vec2::new(2f64.sqrt(), 1.0), &c).unwrap();
        assert!(matches!(
            select_choreographic(Vec2::new(2f64.sqrt(), 1.0), &cands[..3], &c),
            Err(GeometryError::CandidateCount(3))
        ));
        assert!(matches!(
            select_by_quadrant(Vec2::new(1.0, 0.0), &cands),
            Err(GeometryError::Ambiguous { .. })
        ));
    }

    #[test]
    fn sweep_events() {
        let c = ctx();
        let samples = sweep(600, 1e-3, &c);
        assert_eq!(downward_steps(&samples), 0);
        let jumps = leaf_jumps(&samples, &c);
        // six origin passages per period
        assert_eq!(jumps.len(), 6);
        assert!(jumps.iter().all(|j| j.body_at_origin.is_some()));
        let crossings = axis_crossings(&samples, &c);
        assert!(!crossings.is_empty());
        for x in crossings {
            assert!(x.separation() < 1e-6, "{x:?}");
            assert!(x.opposite());
        }
    }
}
