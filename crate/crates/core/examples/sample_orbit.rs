//! Positions and velocities of the three bodies at twelve phases over one period.

use lemnichor::{orbit, EllipticContext};

fn main() {
    let ctx = EllipticContext::choreographic();
    println!(
        "k^2 = {:.15}  K = {:.15}  K' = {:.15}",
        ctx.m(),
        ctx.quarter_period(),
        ctx.complementary_quarter_period()
    );
    for j in 0..12 {
        let s = orbit::triple(j as f64 * ctx.period() / 12.0, &ctx);
        let p = s.positions();
        println!(
            "t = {:8.5}  ({:+.6}, {:+.6})  ({:+.6}, {:+.6})  ({:+.6}, {:+.6})",
            s.t, p[0].x, p[0].y, p[1].x, p[1].y, p[2].x, p[2].y
        );
    }
}
