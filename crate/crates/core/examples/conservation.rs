//! Every conserved quantity over a period, against its closed form.

use lemnichor::invariants::{self, closed_form};
use lemnichor::{make_context, orbit, EllipticContext};

fn main() {
    let ctx = EllipticContext::choreographic();
    println!("closed forms:");
    println!(
        "  moment of inertia     {:.15}",
        closed_form::moment_of_inertia()
    );
    println!(
        "  sum of v^2            {:.15}",
        closed_form::kinetic_energy()
    );
    println!(
        "  sum of curvature^2    {:.15}",
        closed_form::curvature_sq_sum()
    );
    println!(
        "  sum of r_ij^2         {:.15}",
        closed_form::sum_sq_distances()
    );
    println!(
        "  product of r_ij^2     {:.15}",
        closed_form::product_sq_distances()
    );

    println!("largest residual over 1000 samples:");
    for (key, r) in invariants::max_residuals(&invariants::sweep(1000, &ctx)) {
        println!("  {key:<22} {r:.2e}");
    }

    // away from the choreographic modulus the center of mass wanders
    let other = make_context(0.5).expect("valid modulus");
    let worst = (0..200)
        .map(|j| {
            invariants::center_of_mass(&orbit::triple(j as f64 * other.period() / 200.0, &other))
                .norm()
        })
        .fold(0.0, f64::max);
    println!("max |center of mass| at k^2 = 1/2: {worst:.4}");
}
