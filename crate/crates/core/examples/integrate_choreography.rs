//! Velocity-Verlet from the analytic initial state, one full period.

use lemnichor::dynamics::{self, Configuration, PotentialVariant};
use lemnichor::EllipticContext;

fn main() {
    let ctx = EllipticContext::choreographic();
    let init = Configuration::analytic(0.0, &ctx);
    println!(
        "{:>8} {:>12} {:>12} {:>12}",
        "steps", "return", "energy", "ang. mom."
    );
    for p in [10, 12, 14, 16] {
        let steps = 1usize << p;
        let traj = dynamics::integrate(
            &init,
            PotentialVariant::UCentral,
            ctx.period() / steps as f64,
            steps,
        )
        .expect("no close encounter");
        let end = &traj.last().expect("samples").state;
        println!(
            "{steps:>8} {:>12.3e} {:>12.3e} {:>12.3e}",
            init.max_position_distance(end),
            traj.max_energy_drift(),
            traj.max_angular_momentum_drift()
        );
    }
}
