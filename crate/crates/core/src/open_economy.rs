//! Trend-stationary equilibria of a large open economy with an AK sector
//! (`F = mK + D`) and land paying constant rent `D`.
//!
//! The world rate `R` is pinned by the domestic savings condition. For
//! `λ < λ̄` the economy is stationary with `β(R + λπ(R)) = 1`; for `λ > λ̄` it
//! grows at `G = R` with `β(R + λπ(R)) = R`, and the land price carries a
//! bubble component growing at rate `R`.

use rayon::prelude::*;

use crate::economy::{check_assumptions, leverage_threshold, EconomyParams, Regime};
use crate::error::{Error, Result};
use crate::numerics::{find_root, Bracket};

/// `|λ − λ̄|` below which neither regime is reported.
pub const THRESHOLD_TOL: f64 = 1e-8;
const FUNDAMENTAL_EDGE: f64 = 1e-9;

/// Expected excess return `π(R) = ∫ max{0, mz − R} dΦ(z)`.
pub fn risk_premium(econ: &EconomyParams, r: f64) -> f64 {
    econ.dist.excess_return(econ.m(), r)
}

/// `ψ_f(R) = βπ(R)/(1 − βR)` on `[1, 1/β)` and `ψ_b(R) = βπ(R)/((1 − β)R)` on
/// `[1, ∞)`. Both equal `1/λ̄` at `R = 1`.
pub fn psi(econ: &EconomyParams, r: f64, regime: Regime) -> Result<f64> {
    let beta = econ.beta;
    match regime {
        Regime::Fundamental => {
            if !(r >= 1.0 && r < 1.0 / beta) {
                return Err(Error::domain(format!("psi_f needs R in [1, 1/beta), got {r}")));
            }
            Ok(beta * risk_premium(econ, r) / (1.0 - beta * r))
        }
        Regime::Bubbly => {
            if !(r >= 1.0) || !r.is_finite() {
                return Err(Error::domain(format!("psi_b needs R >= 1, got {r}")));
            }
            Ok(beta * risk_premium(econ, r) / ((1.0 - beta) * r))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrendStationaryEquilibrium {
    pub regime: Regime,
    /// Gross risk-free rate.
    pub r: f64,
    /// Gross growth rate: 1 or `R`.
    pub g: f64,
    /// Productivity cutoff `R/m`.
    pub zbar: f64,
    /// Savings share `β(λΦ(z̄) + 1 − λ)` held in land and foreign bonds.
    pub alpha_coef: f64,
    /// External savings `B` (constant).
    pub external_savings: f64,
    /// `P_t = bubble_coef · R^t + fundamental_level`.
    pub bubble_coef: f64,
    pub fundamental_level: f64,
    pub m: f64,
    pub k0: f64,
    pub d: f64,
    /// `β(R + λπ(R)) − 1` or `β(R + λπ(R)) − R`.
    pub residual: f64,
}

impl TrendStationaryEquilibrium {
    pub fn price_at(&self, t: u32) -> f64 {
        self.bubble_coef * self.r.powi(t as i32) + self.fundamental_level
    }

    pub fn price_path(&self, len: usize) -> Vec<f64> {
        (0..len).map(|t| self.price_at(t as u32)).collect()
    }

    /// Present value of rents, `D/(R − 1)`, at every date.
    pub fn fundamental_value(&self) -> f64 {
        self.d / (self.r - 1.0)
    }

    /// `W_0 = mK_0/(1 − α)` on the bubbly path.
    pub fn initial_wealth(&self) -> Option<f64> {
        (self.regime == Regime::Bubbly).then(|| self.m * self.k0 / (1.0 - self.alpha_coef))
    }
}

pub fn solve_trend_stationary(
    econ: &EconomyParams,
    k0: f64,
    d: f64,
) -> Result<TrendStationaryEquilibrium> {
    econ.validate()?;
    if !(k0 > 0.0 && d > 0.0) || !k0.is_finite() || !d.is_finite() {
        return Err(Error::param("K0 and D must be positive"));
    }
    let report = check_assumptions(econ);
    if !report.a3_ok {
        return Err(Error::AssumptionViolation(format!(
            "beta * E[mz | mz >= 1] = {} must exceed 1",
            report.a3_value
        )));
    }
    let lambda = econ.lambda;
    let lambda_bar = leverage_threshold(econ)?;
    if (lambda - lambda_bar).abs() < THRESHOLD_TOL {
        return Err(Error::AtThreshold { lambda, lambda_bar });
    }
    let target = 1.0 / lambda;
    let beta = econ.beta;
    let m = econ.m();

    let (regime, r) = if lambda < lambda_bar {
        let mut f = |r: f64| psi(econ, r, Regime::Fundamental).unwrap_or(f64::NAN) - target;
        let bracket = Bracket::new(&mut f, 1.0, 1.0 / beta - FUNDAMENTAL_EDGE)?;
        (Regime::Fundamental, find_root(&mut f, bracket, 1e-15)?)
    } else {
        let mut f = |r: f64| psi(econ, r, Regime::Bubbly).unwrap_or(f64::NAN) - target;
        let bracket = Bracket::expand_up(&mut f, 1.0, 2.0, 2.0, 1e8)?;
        (Regime::Bubbly, find_root(&mut f, bracket, 1e-15)?)
    };

    let pi = risk_premium(econ, r);
    let zbar = r / m;
    let alpha_coef = econ.bond_share(zbar);
    let fundamental_level = d / (r - 1.0);
    let eq = match regime {
        Regime::Fundamental => TrendStationaryEquilibrium {
            regime,
            r,
            g: 1.0,
            zbar,
            alpha_coef,
            external_savings: 0.0,
            bubble_coef: 0.0,
            fundamental_level,
            m,
            k0,
            d,
            residual: beta * (r + lambda * pi) - 1.0,
        },
        Regime::Bubbly => TrendStationaryEquilibrium {
            regime,
            r,
            g: r,
            zbar,
            alpha_coef,
            external_savings: -fundamental_level,
            bubble_coef: alpha_coef / (1.0 - alpha_coef) * m * k0,
            fundamental_level,
            m,
            k0,
            d,
            residual: beta * (r + lambda * pi) - r,
        },
    };
    if !(eq.r > 1.0) {
        return Err(Error::domain(format!("equilibrium rate {} is not above 1", eq.r)));
    }
    Ok(eq)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatePoint {
    pub lambda: f64,
    pub r: f64,
    pub g: f64,
    pub regime: Regime,
}

/// Equilibrium rate for every leverage in `lambdas`, in grid order.
pub fn rate_curve(
    template: &EconomyParams,
    lambdas: &[f64],
    k0: f64,
    d: f64,
) -> Result<Vec<RatePoint>> {
    lambdas
        .par_iter()
        .map(|&lambda| {
            let eq = solve_trend_stationary(&template.with_lambda(lambda), k0, d)?;
            Ok(RatePoint {
                lambda,
                r: eq.r,
                g: eq.g,
                regime: eq.regime,
            })
        })
        .collect()
}
