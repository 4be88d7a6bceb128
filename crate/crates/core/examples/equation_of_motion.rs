//! The analytic orbit solves the equation of motion under both potentials.

use lemnichor::dynamics::{self, PotentialVariant};
use lemnichor::{orbit, EllipticContext};

fn main() {
    let ctx = EllipticContext::choreographic();
    let n = 1000;
    for v in PotentialVariant::ALL {
        let worst = (0..n)
            .map(|j| dynamics::eom_residual(j as f64 * ctx.period() / n as f64, v, &ctx).unwrap())
            .fold(0.0, f64::max);
        let s = orbit::triple(0.0, &ctx);
        let e = dynamics::total_energy(&s.positions(), &s.velocities(), v).unwrap();
        println!("{v}: max residual {worst:.2e}, energy {e:.15}");
    }
    println!(
        "1/4 ln(3 sqrt 3 / 2) = {:.15}",
        0.25 * (1.5 * 3f64.sqrt()).ln()
    );
}
