//! A single body on the lemniscate under a central force.

use lemnichor::dynamics;

fn main() {
    let l = 0.5;
    for j in 0..9 {
        let t = -0.8 + 0.2 * j as f64;
        let s = dynamics::one_body_lemniscate(l, t).expect("inside the domain");
        let r = dynamics::one_body_lemniscate_residual(l, t).expect("inside the domain");
        println!(
            "t = {t:+.2}  pos ({:+.6}, {:+.6})  r^2 dtheta/dt = {:.6}  residual {r:.1e}",
            s.pos.x, s.pos.y, s.angular_momentum
        );
    }
}
