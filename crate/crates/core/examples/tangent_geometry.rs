//! Tangent lines at the three bodies meet in one point, and that point
//! determines the triple.

use lemnichor::{geometry, orbit, EllipticContext};

fn main() {
    let ctx = EllipticContext::choreographic();
    let t = 0.7;
    let g = geometry::geometry_sample(t, &ctx);
    println!("c = ({:.12}, {:.12})", g.c.x, g.c.y);
    println!(
        "concurrency residual {:.2e}, hyperbola residual {:.2e}",
        g.concurrency_residual, g.hyperbola_residual
    );

    let chosen =
        geometry::triple_from_concurrency_point(g.c, &ctx).expect("c lies outside the lobes");
    let truth = orbit::triple(t, &ctx);
    for (k, b) in chosen.iter().zip(truth.bodies) {
        println!(
            "rebuilt ({:+.10}, {:+.10})  analytic ({:+.10}, {:+.10})",
            k.point.x, k.point.y, b.pos.x, b.pos.y
        );
    }

    let samples = geometry::sweep(200, 0.5 * ctx.period() / 200.0, &ctx);
    let distinct = samples.iter().filter(|g| g.quadrants_distinct()).count();
    println!(
        "{distinct} of {} samples have the bodies in distinct quadrants",
        samples.len()
    );
}
