//! Production technologies. `F(K, X) = f(K, X) + (1 − δ)K` always carries
//! undepreciated capital, and everything is evaluated at land `X = 1`.

use crate::error::{Error, Result};

/// Log-space step for the elasticity finite difference.
const ELASTICITY_STEP: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Technology {
    /// `f = A (α K^{1−ρ} + (1−α) X^{1−ρ})^{1/(1−ρ)}`, Cobb-Douglas at `ρ = 1`.
    Ces {
        a: f64,
        alpha: f64,
        rho: f64,
        delta: f64,
    },
    /// `F = mK + DX`: an AK sector plus land paying a constant rent `D`.
    TwoSectorLinear { m: f64, d: f64 },
}

/// `F(K,1)` with its marginal products; `rent` is `F_X(K,1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Production {
    pub output: f64,
    pub mpk: f64,
    pub rent: f64,
}

impl Technology {
    pub fn cobb_douglas(a: f64, alpha: f64, delta: f64) -> Self {
        Technology::Ces {
            a,
            alpha,
            rho: 1.0,
            delta,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Technology::Ces {
                a,
                alpha,
                rho,
                delta,
            } => {
                if !(a > 0.0) {
                    return Err(Error::param(format!("tech.A must be > 0, got {a}")));
                }
                if !(alpha > 0.0 && alpha < 1.0) {
                    return Err(Error::param(format!("tech.alpha must be in (0,1), got {alpha}")));
                }
                if !(rho > 0.0 && rho.is_finite()) {
                    return Err(Error::param(format!("tech.rho must be > 0, got {rho}")));
                }
                if !(delta > 0.0 && delta < 1.0) {
                    return Err(Error::param(format!("tech.delta must be in (0,1), got {delta}")));
                }
            }
            Technology::TwoSectorLinear { m, d } => {
                if !(m > 0.0 && m.is_finite()) {
                    return Err(Error::param(format!("tech.m must be > 0, got {m}")));
                }
                if !(d > 0.0 && d.is_finite()) {
                    return Err(Error::param(format!("tech.D must be > 0, got {d}")));
                }
            }
        }
        Ok(())
    }

    /// `F(K,1)`, `F_K(K,1)` and `F_X(K,1)`.
    pub fn eval(&self, k: f64) -> Result<Production> {
        if !(k > 0.0) || !k.is_finite() {
            return Err(Error::domain(format!("capital must be positive and finite, got {k}")));
        }
        Ok(match *self {
            Technology::Ces {
                a,
                alpha,
                rho,
                delta,
            } => {
                let (f, f_k, f_x) = if is_cobb_douglas(rho) {
                    let f = a * k.powf(alpha);
                    (f, alpha * f / k, (1.0 - alpha) * f)
                } else {
                    let e = 1.0 - rho;
                    // f/K = A (α + (1−α) K^{ρ−1})^{1/(1−ρ)}
                    let inner_k = alpha + (1.0 - alpha) * k.powf(-e);
                    let f = a * k * inner_k.powf(1.0 / e);
                    let f_k = a * alpha * inner_k.powf(rho / e);
                    let inner_x = alpha * k.powf(e) + (1.0 - alpha);
                    let f_x = a * (1.0 - alpha) * inner_x.powf(rho / e);
                    (f, f_k, f_x)
                };
                Production {
                    output: f + (1.0 - delta) * k,
                    mpk: f_k + (1.0 - delta),
                    rent: f_x,
                }
            }
            Technology::TwoSectorLinear { m, d } => Production {
                output: m * k + d,
                mpk: m,
                rent: d,
            },
        })
    }

    /// `m = lim F(K,1)/K = lim F_K(K,1)` as `K → ∞`.
    pub fn asymptotic_mpk(&self) -> f64 {
        match *self {
            Technology::Ces {
                a,
                alpha,
                rho,
                delta,
            } => {
                if rho < 1.0 && !is_cobb_douglas(rho) {
                    a * alpha.powf(1.0 / (1.0 - rho)) + 1.0 - delta
                } else {
                    1.0 - delta
                }
            }
            Technology::TwoSectorLinear { m, .. } => m,
        }
    }

    /// Elasticity of substitution between capital and land in `F` at `(K,1)`,
    /// `σ = −∂log(K/X)/∂log(F_K/F_X)`, by central differences in `log K`.
    pub fn elasticity(&self, k: f64) -> Result<f64> {
        let log_ratio = |kk: f64| -> Result<f64> {
            let p = self.eval(kk)?;
            Ok((p.mpk / p.rent).ln())
        };
        let h = ELASTICITY_STEP;
        let up = log_ratio(k * h.exp())?;
        let down = log_ratio(k * (-h).exp())?;
        let slope = (up - down) / (2.0 * h);
        if slope >= 0.0 || slope.abs() < 1e-300 {
            return Ok(f64::INFINITY);
        }
        Ok(-1.0 / slope)
    }

    /// `lim_{K→∞} σ(K,1)`: `1/ρ` for `ρ<1`, `1/α` for Cobb-Douglas, `∞` for
    /// `ρ>1` and the linear technology.
    pub fn elasticity_limit(&self) -> f64 {
        match *self {
            Technology::Ces { alpha, rho, .. } => {
                if is_cobb_douglas(rho) {
                    1.0 / alpha
                } else if rho < 1.0 {
                    1.0 / rho
                } else {
                    f64::INFINITY
                }
            }
            Technology::TwoSectorLinear { .. } => f64::INFINITY,
        }
    }

    /// Solves `F(K,1)/K = target` for `K > 0`. `None` when the average
    /// product never reaches `target` (no finite positive solution).
    pub fn capital_for_average_product(&self, target: f64) -> Option<f64> {
        let k = match *self {
            Technology::Ces {
                a,
                alpha,
                rho,
                delta,
            } => {
                let y = (target - (1.0 - delta)) / a;
                if !(y > 0.0) {
                    return None;
                }
                if is_cobb_douglas(rho) {
                    y.powf(1.0 / (alpha - 1.0))
                } else {
                    let base = (y.powf(1.0 - rho) - alpha) / (1.0 - alpha);
                    if !(base > 0.0) {
                        return None;
                    }
                    base.powf(1.0 / (rho - 1.0))
                }
            }
            Technology::TwoSectorLinear { m, d } => {
                if !(target > m) {
                    return None;
                }
                d / (target - m)
            }
        };
        (k > 0.0 && k.is_finite()).then_some(k)
    }
}

fn is_cobb_douglas(rho: f64) -> bool {
    (rho - 1.0).abs() < 1e-9
}
