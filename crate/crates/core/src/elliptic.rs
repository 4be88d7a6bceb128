//! Complete elliptic integrals and Jacobi elliptic functions.
//!
//! Real arguments are reduced to `[0, K]` using the quarter-period symmetries
//! and evaluated with the descending Landen (AGM) phase recursion; the upper
//! half of the quarter period goes through the `K - u` shift so that `cn` keeps
//! full relative accuracy near `K`.
//!
//! Complex arguments `u + iv` combine a real evaluation at modulus `k` with a
//! real evaluation at the complementary modulus `k'` through the addition
//! theorem together with Jacobi's imaginary transformation:
//!
//! ```text
//! sn(u + iv) = (s d1 + i c d s1 c1) / (c1² + m s² s1²)
//! cn(u + iv) = (c c1 - i s d s1 d1) / (c1² + m s² s1²)
//! dn(u + iv) = (d c1 d1 - i m s c s1) / (c1² + m s² s1²)
//! ```
//!
//! where `s, c, d` are taken at `(u, m)` and `s1, c1, d1` at `(v, 1 - m)`.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::error::EllipticError;

pub type Cplx = Complex64;

/// Iteration cap for the AGM sequence.
const AGM_MAX_ITER: usize = 32;
/// The AGM stops once the arithmetic–geometric gap drops below this.
const AGM_GAP: f64 = 1e-16;

/// Complex arguments closer than this to a pole of sn, cn, dn are rejected.
pub const POLE_EXCLUSION: f64 = 1e-3;

/// The squared modulus `(2 + √3) / 4` that makes the three-body lemniscate
/// motion conserve its center of mass.
pub fn choreographic_m() -> f64 {
    (2.0 + 3f64.sqrt()) / 4.0
}

/// Values of the three Jacobi functions at one argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jacobi<T> {
    pub sn: T,
    pub cn: T,
    pub dn: T,
}

impl<T: Copy> Jacobi<T> {
    pub fn as_tuple(&self) -> (T, T, T) {
        (self.sn, self.cn, self.dn)
    }
}

/// Descending Landen sequence for one squared modulus.
#[derive(Debug, Clone)]
struct Landen {
    m: f64,
    /// Complementary modulus `sqrt(1 - m)`.
    kc: f64,
    quarter: f64,
    a: Vec<f64>,
    c: Vec<f64>,
}

impl Landen {
    fn new(m: f64) -> Self {
        let mut a = vec![1.0];
        let mut c = vec![m.sqrt()];
        let mut b = (1.0 - m).sqrt();
        for _ in 0..AGM_MAX_ITER {
            let an = a[a.len() - 1];
            if (an - b).abs() <= AGM_GAP.max(f64::EPSILON * an) {
                break;
            }
            a.push(0.5 * (an + b));
            c.push(0.5 * (an - b));
            b = (an * b).sqrt();
        }
        let quarter = FRAC_PI_2 / a[a.len() - 1];
        Self {
            m,
            kc: (1.0 - m).sqrt(),
            quarter,
            a,
            c,
        }
    }

    /// Amplitude `φ` with `sn = sin φ`, `cn = cos φ`.
    fn amplitude(&self, u: f64) -> f64 {
        let n = self.a.len() - 1;
        let mut phi = (1u64 << n) as f64 * self.a[n] * u;
        for i in (1..=n).rev() {
            phi = 0.5 * (phi + (self.c[i] / self.a[i] * phi.sin()).asin());
        }
        phi
    }

    /// Evaluation on `u ∈ [0, K]`.
    fn quarter_eval(&self, u: f64) -> (f64, f64, f64) {
        if u <= 0.5 * self.quarter {
            let phi = self.amplitude(u);
            let (s, c) = phi.sin_cos();
            (s, c, (1.0 - self.m * s * s).sqrt())
        } else {
            // sn(K - w) = cd(w), cn(K - w) = k' sd(w), dn(K - w) = k' nd(w)
            let w = (self.quarter - u).max(0.0);
            let phi = self.amplitude(w);
            let (s, c) = phi.sin_cos();
            let d = (1.0 - self.m * s * s).sqrt();
            (c / d, self.kc * s / d, self.kc / d)
        }
    }

    fn eval(&self, t: f64) -> (f64, f64, f64) {
        let k = self.quarter;
        let sign = if t < 0.0 { -1.0 } else { 1.0 };
        let r = t.abs().rem_euclid(4.0 * k);
        let q = ((r / k).floor() as u8).min(3);
        let u = (r - f64::from(q) * k).clamp(0.0, k);
        let (s, c, d) = match q {
            0 => self.quarter_eval(u),
            1 => {
                let (s, c, d) = self.quarter_eval(k - u);
                (s, -c, d)
            }
            2 => {
                let (s, c, d) = self.quarter_eval(u);
                (-s, -c, d)
            }
            _ => {
                let (s, c, d) = self.quarter_eval(k - u);
                (-s, c, d)
            }
        };
        (sign * s, c, d)
    }
}

/// Modulus, quarter periods and cached AGM state. Immutable once built.
#[derive(Debug, Clone)]
pub struct EllipticContext {
    main: Landen,
    comp: Landen,
}

/// Builds an [`EllipticContext`] for squared modulus `m`.
pub fn make_context(m: f64) -> Result<EllipticContext, EllipticError> {
    EllipticContext::new(m)
}

/// Complete elliptic integral of the first kind, `K(m)`.
pub fn complete_k(m: f64) -> Result<f64, EllipticError> {
    check_m(m)?;
    Ok(Landen::new(m).quarter)
}

fn check_m(m: f64) -> Result<(), EllipticError> {
    if m > 0.0 && m < 1.0 {
        Ok(())
    } else {
        Err(EllipticError::Domain(m))
    }
}

impl EllipticContext {
    pub fn new(m: f64) -> Result<Self, EllipticError> {
        check_m(m)?;
        Ok(Self {
            main: Landen::new(m),
            comp: Landen::new(1.0 - m),
        })
    }

    /// Context at the choreographic modulus `(2 + √3) / 4`.
    pub fn choreographic() -> Self {
        Self::new(choreographic_m()).expect("choreographic modulus is in (0, 1)")
    }

    /// Squared modulus `m = k²`.
    pub fn m(&self) -> f64 {
        self.main.m
    }

    pub fn k(&self) -> f64 {
        self.main.m.sqrt()
    }

    /// Complementary modulus `k' = sqrt(1 - m)`.
    pub fn kc(&self) -> f64 {
        self.main.kc
    }

    /// `K(m)`.
    pub fn quarter_period(&self) -> f64 {
        self.main.quarter
    }

    /// `K'(m) = K(1 - m)`.
    pub fn complementary_quarter_period(&self) -> f64 {
        self.comp.quarter
    }

    /// Real period `T = 4K` of sn, cn and of the orbit.
    pub fn period(&self) -> f64 {
        4.0 * self.main.quarter
    }

    pub fn sn_cn_dn(&self, t: f64) -> Jacobi<f64> {
        let (sn, cn, dn) = self.main.eval(t);
        Jacobi { sn, cn, dn }
    }

    /// Nearest pole of sn, cn, dn to `t`. Poles sit at `2jK + (2l + 1) iK'`.
    pub fn nearest_pole(&self, t: Cplx) -> Cplx {
        let k = self.quarter_period();
        let kp = self.complementary_quarter_period();
        let re = 2.0 * k * (t.re / (2.0 * k)).round();
        let im = kp * (2.0 * ((t.im - kp) / (2.0 * kp)).round() + 1.0);
        Cplx::new(re, im)
    }

    pub fn sn_cn_dn_complex(&self, t: Cplx) -> Result<Jacobi<Cplx>, EllipticError> {
        let pole = self.nearest_pole(t);
        if (t - pole).norm() < POLE_EXCLUSION {
            return Err(EllipticError::pole(t, pole));
        }
        let k = self.quarter_period();
        let kp = self.complementary_quarter_period();
        let u = (t.re + 2.0 * k).rem_euclid(4.0 * k) - 2.0 * k;
        let v = (t.im + 2.0 * kp).rem_euclid(4.0 * kp) - 2.0 * kp;

        let m = self.m();
        let (s, c, d) = self.main.eval(u);
        let (s1, c1, d1) = self.comp.eval(v);
        let den = c1 * c1 + m * s * s * s1 * s1;
        Ok(Jacobi {
            sn: Cplx::new(s * d1, c * d * s1 * c1) / den,
            cn: Cplx::new(c * c1, -s * d * s1 * d1) / den,
            dn: Cplx::new(d * c1 * d1, -m * s * c * s1) / den,
        })
    }
}
