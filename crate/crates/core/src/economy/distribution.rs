//! Idiosyncratic productivity distributions on `[0, ∞)`.
//!
//! Tail integrals `∫_{z̄}^∞ h(z) dΦ(z)` are mapped onto Gauss-Laguerre by the
//! change of variable `x = log S(z̄) − log S(z)`, where `S = 1 − Φ`. For the
//! exponential distribution this is `z = z̄ + x/γ`, so polynomial integrands
//! are integrated exactly; the exponential also ships closed forms.

use crate::error::{Error, Result};
use crate::numerics::QuadratureRule;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Productivity {
    /// `Φ(z) = 1 − e^{−γz}`.
    Exponential { gamma: f64 },
    /// `Φ(z) = 1 − exp(−(z/scale)^shape)`; no closed forms, everything goes
    /// through quadrature.
    Weibull { shape: f64, scale: f64 },
}

impl Productivity {
    pub fn exponential(gamma: f64) -> Self {
        Productivity::Exponential { gamma }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Productivity::Exponential { gamma } => {
                if !(gamma > 0.0 && gamma.is_finite()) {
                    return Err(Error::param(format!("dist.gamma must be > 0, got {gamma}")));
                }
            }
            Productivity::Weibull { shape, scale } => {
                if !(shape > 0.0 && scale > 0.0 && shape.is_finite() && scale.is_finite()) {
                    return Err(Error::param("Weibull shape and scale must be > 0"));
                }
            }
        }
        Ok(())
    }

    /// Every shipped distribution has unbounded support.
    pub fn has_unbounded_support(&self) -> bool {
        true
    }

    pub fn cdf(&self, z: f64) -> f64 {
        if z <= 0.0 {
            return 0.0;
        }
        -self.log_survival(z).exp_m1()
    }

    pub fn survival(&self, z: f64) -> f64 {
        if z <= 0.0 {
            return 1.0;
        }
        self.log_survival(z).exp()
    }

    pub fn log_survival(&self, z: f64) -> f64 {
        let z = z.max(0.0);
        match *self {
            Productivity::Exponential { gamma } => -gamma * z,
            Productivity::Weibull { shape, scale } => -(z / scale).powf(shape),
        }
    }

    /// Inverse of [`log_survival`](Self::log_survival): the `z` with
    /// `log S(z) = ls` for `ls ≤ 0`.
    pub fn point_at_log_survival(&self, ls: f64) -> f64 {
        let t = (-ls).max(0.0);
        match *self {
            Productivity::Exponential { gamma } => t / gamma,
            Productivity::Weibull { shape, scale } => scale * t.powf(1.0 / shape),
        }
    }

    pub fn pdf(&self, z: f64) -> f64 {
        if z < 0.0 {
            return 0.0;
        }
        match *self {
            Productivity::Exponential { gamma } => gamma * (-gamma * z).exp(),
            Productivity::Weibull { shape, scale } => {
                let u = z / scale;
                shape / scale * u.powf(shape - 1.0) * (-u.powf(shape)).exp()
            }
        }
    }

    /// `Φ^{-1}(p)` for `p ∈ [0, 1)`.
    pub fn quantile(&self, p: f64) -> f64 {
        if p <= 0.0 {
            return 0.0;
        }
        if p >= 1.0 {
            return f64::INFINITY;
        }
        self.point_at_log_survival((-p).ln_1p())
    }

    /// `∫_{z̄}^∞ h(z) dΦ(z)` by Gauss-Laguerre after mapping the tail to
    /// `(0, ∞)`.
    pub fn tail_expectation<H: Fn(f64) -> f64>(&self, zbar: f64, h: H, rule: &QuadratureRule) -> f64 {
        let z0 = zbar.max(0.0);
        let ls0 = self.log_survival(z0);
        let s0 = ls0.exp();
        if s0 == 0.0 {
            return 0.0;
        }
        s0 * rule.integrate(|x| h(self.point_at_log_survival(ls0 - x)))
    }

    pub fn mean(&self) -> f64 {
        match *self {
            Productivity::Exponential { gamma } => 1.0 / gamma,
            _ => self.tail_expectation(0.0, |z| z, crate::numerics::default_rule()),
        }
    }

    /// Partial expectation `∫_{z̄}^∞ z dΦ(z)`. Closed form `(z̄ + 1/γ)e^{−γz̄}`
    /// for the exponential; quadrature otherwise.
    pub fn partial_expectation(&self, zbar: f64) -> f64 {
        match *self {
            Productivity::Exponential { gamma } => {
                let z = zbar.max(0.0);
                (z + 1.0 / gamma) * (-gamma * z).exp()
            }
            _ => self.partial_expectation_quadrature(zbar, crate::numerics::default_rule()),
        }
    }

    pub fn partial_expectation_quadrature(&self, zbar: f64, rule: &QuadratureRule) -> f64 {
        self.tail_expectation(zbar, |z| z, rule)
    }

    /// Expected excess return `∫ max{0, mz − R} dΦ(z)`. Closed form
    /// `(m/γ)e^{−γR/m}` for the exponential.
    pub fn excess_return(&self, m: f64, rate: f64) -> f64 {
        match *self {
            Productivity::Exponential { gamma } => {
                if rate <= 0.0 {
                    // whole support invests: m·E[z] − R
                    return m / gamma - rate;
                }
                m / gamma * (-gamma * rate / m).exp()
            }
            _ => self.excess_return_quadrature(m, rate, crate::numerics::default_rule()),
        }
    }

    pub fn excess_return_quadrature(&self, m: f64, rate: f64, rule: &QuadratureRule) -> f64 {
        if rate <= 0.0 {
            return m * self.tail_expectation(0.0, |z| z, rule) - rate;
        }
        self.tail_expectation(rate / m, |z| m * z - rate, rule)
    }

    /// Draw by inversion from a uniform `u ∈ (0, 1]` (using `S(z) = u`).
    pub fn sample_from_uniform(&self, u: f64) -> f64 {
        self.point_at_log_survival(u.ln())
    }
}
