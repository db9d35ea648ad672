//! Scalar root finding on a sign-changing bracket.
//!
//! Brent's method: bisection safeguarded inverse quadratic interpolation. Every
//! equation solved in this crate is scalar and continuous on a known bracket,
//! so this is the only root finder needed.

use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-12;
const MAX_ITER: usize = 200;

/// An interval `[lo, hi]` on which `f` changes sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl Bracket {
    /// Evaluates `f` at both ends and checks the sign change.
    pub fn new<F: FnMut(f64) -> f64>(f: &mut F, lo: f64, hi: f64) -> Result<Self> {
        let f_lo = f(lo);
        let f_hi = f(hi);
        Self::from_values(lo, hi, f_lo, f_hi)
    }

    pub fn from_values(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Self> {
        let signs_differ = (f_lo < 0.0 && f_hi > 0.0) || (f_lo > 0.0 && f_hi < 0.0);
        let has_zero = f_lo == 0.0 || f_hi == 0.0;
        if !(lo < hi) || !(signs_differ || has_zero) || f_lo.is_nan() || f_hi.is_nan() {
            return Err(Error::InvalidBracket { lo, hi, f_lo, f_hi });
        }
        Ok(Bracket { lo, hi, f_lo, f_hi })
    }

    /// Starting from `[lo, hi]`, multiplies the upper end by `factor` until the
    /// sign of `f` differs from its sign at `lo`.
    pub fn expand_up<F: FnMut(f64) -> f64>(
        f: &mut F,
        lo: f64,
        mut hi: f64,
        factor: f64,
        max_hi: f64,
    ) -> Result<Self> {
        let f_lo = f(lo);
        let mut f_hi = f(hi);
        while f_lo.signum() == f_hi.signum() && f_lo != 0.0 {
            if hi >= max_hi {
                return Err(Error::InvalidBracket { lo, hi, f_lo, f_hi });
            }
            hi = (hi * factor).min(max_hi);
            f_hi = f(hi);
        }
        Self::from_values(lo, hi, f_lo, f_hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Finds `x` in the bracket with `f(x) = 0`, to absolute interval width `tol`.
///
/// The returned point always lies inside the initial bracket.
pub fn find_root<F: FnMut(f64) -> f64>(mut f: F, bracket: Bracket, tol: f64) -> Result<f64> {
    let Bracket {
        lo: mut a,
        hi: mut b,
        f_lo: mut fa,
        f_hi: mut fb,
    } = bracket;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    let mut c = b;
    let mut fc = fb;
    let mut d = b - a;
    let mut e = d;

    for _ in 0..MAX_ITER {
        if (fb > 0.0 && fc > 0.0) || (fb < 0.0 && fc < 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // inverse quadratic (or secant) step
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        if d.abs() > tol1 {
            b += d;
        } else {
            b += tol1.copysign(xm);
        }
        fb = f(b);
        if fb.is_nan() {
            return Err(Error::domain(format!("root function returned NaN at {b}")));
        }
    }
    Err(Error::NoConvergence {
        what: "find_root",
        iterations: MAX_ITER,
        last_error: fb.abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_root() {
        let mut f = |x: f64| x - 2.0;
        let br = Bracket::new(&mut f, 0.0, 5.0).unwrap();
        let x = find_root(f, br, 1e-12).unwrap();
        assert!((x - 2.0).abs() < 1e-12);
    }

    #[test]
    fn sqrt_two() {
        let mut f = |x: f64| x * x - 2.0;
        let br = Bracket::new(&mut f, 1.0, 2.0).unwrap();
        let x = find_root(f, br, 1e-14).unwrap();
        assert!((x - std::f64::consts::SQRT_2).abs() < 1e-10);
    }

    #[test]
    fn same_sign_is_invalid() {
        let mut f = |x: f64| x * x + 1.0;
        assert!(matches!(
            Bracket::new(&mut f, -1.0, 1.0),
            Err(Error::InvalidBracket { .. })
        ));
    }

    #[test]
    fn reversed_interval_is_invalid() {
        let mut f = |x: f64| x;
        assert!(Bracket::new(&mut f, 1.0, -1.0).is_err());
    }

    #[test]
    fn expand_up_finds_far_root() {
        let mut f = |x: f64| x - 1000.0;
        let br = Bracket::expand_up(&mut f, 0.0, 1.0, 2.0, 1e6).unwrap();
        assert!(br.hi >= 1000.0);
        let x = find_root(f, br, 1e-12).unwrap();
        assert!((x - 1000.0).abs() < 1e-9);
    }

    #[test]
    fn steep_function_converges() {
        let f = |x: f64| (x - 0.3).powi(3) * 1e6;
        let mut g = f;
        let br = Bracket::new(&mut g, 0.0, 1.0).unwrap();
        let x = find_root(f, br, 1e-14).unwrap();
        assert!((x - 0.3).abs() < 1e-4);
    }
}
