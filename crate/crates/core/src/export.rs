//! CSV and JSON writers for orbit samples, trajectories and geometry sweeps.
//!
//! CSV uses `,` as delimiter, `.` as decimal point, LF line endings and 17
//! significant digits, so identical inputs give byte-identical files.

use std::io::{self, Write};

use serde::Serialize;

use crate::dynamics::Sample;
use crate::elliptic::EllipticContext;
use crate::geometry::GeometrySample;
use crate::orbit::{self, TripleState};

pub const SAMPLE_HEADER: [&str; 13] = [
    "t", "x1", "y1", "vx1", "vy1", "x2", "y2", "vx2", "vy2", "x3", "y3", "vx3", "vy3",
];

pub const TRAJECTORY_HEADER: [&str; 14] = [
    "t", "x1", "y1", "vx1", "vy1", "x2", "y2", "vx2", "vy2", "x3", "y3", "vx3", "vy3", "energy",
];

pub const GEOMETRY_HEADER: [&str; 12] = [
    "t",
    "cx",
    "cy",
    "lambda1",
    "lambda2",
    "lambda3",
    "quadrant_c",
    "quadrant_1",
    "quadrant_2",
    "quadrant_3",
    "hyperbola_residual",
    "concurrency_residual",
];

/// 17 significant digits in scientific notation.
pub fn format_value(x: f64) -> String {
    format!("{x:.16e}")
}

fn writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

/// Header plus one line per row of numbers.
pub fn write_rows<W: Write>(
    out: W,
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<f64>>,
) -> io::Result<()> {
    let mut w = writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row.iter().map(|&x| format_value(x)))?;
    }
    w.flush()
}

/// Header plus one line per row of already formatted fields.
pub fn write_records<W: Write>(
    out: W,
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> io::Result<()> {
    let mut w = writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush()
}

/// Pretty JSON followed by a newline.
pub fn write_json<W: Write, T: Serialize + ?Sized>(mut out: W, value: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    out.write_all(b"\n")?;
    out.flush()
}

/// `t` and each body's position and velocity; positions are mapped by
/// `x x̂ + k² y ŷ` when `affine` is given.
pub fn sample_row(s: &TripleState, affine: Option<&EllipticContext>) -> Vec<f64> {
    let mut row = vec![s.t];
    for b in &s.bodies {
        let p = affine.map_or(b.pos, |ctx| orbit::affine_scaled(b.pos, ctx));
        row.extend([p.x, p.y, b.vel.x, b.vel.y]);
    }
    row
}

/// Same layout as [`sample_row`] plus the energy.
pub fn trajectory_row(s: &Sample, affine: Option<&EllipticContext>) -> Vec<f64> {
    let mut row = vec![s.t];
    for (p, v) in s.state.positions.iter().zip(&s.state.velocities) {
        let p = affine.map_or(*p, |ctx| orbit::affine_scaled(*p, ctx));
        row.extend([p.x, p.y, v.x, v.y]);
    }
    row.push(s.energy);
    row
}

/// Quadrants are written as 1–4, or 0 when undefined.
pub fn geometry_row(g: &GeometrySample) -> Vec<f64> {
    let q = |q: Option<crate::geometry::Quadrant>| q.map_or(0.0, |q| f64::from(q.number()));
    vec![
        g.t,
        g.c.x,
        g.c.y,
        g.lambdas[0],
        g.lambdas[1],
        g.lambdas[2],
        q(g.quadrant_c),
        q(g.quadrants[0]),
        q(g.quadrants[1]),
        q(g.quadrants[2]),
        g.hyperbola_residual,
        g.concurrency_residual,
    ]
}
