//! Residues, principal parts and the pole census, checked numerically.

use lemnichor::analytic;
use lemnichor::{EllipticContext, Tolerances};

fn main() {
    let ctx = EllipticContext::choreographic();
    let tol = Tolerances::default();
    let report = analytic::full_report(&ctx, &tol);
    for r in &report.records {
        println!(
            "{} {:<60} residual {:.1e}",
            if r.pass { "ok  " } else { "FAIL" },
            r.name,
            r.residual
        );
    }
    println!(
        "{} checks, {} failures",
        report.records.len(),
        report.failures().len()
    );
}
