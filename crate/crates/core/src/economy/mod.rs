//! Model primitives: technology, productivity distribution, the parameter
//! bundle, assumption checks and the leverage threshold `λ̄`.

pub mod distribution;
pub mod technology;

pub use distribution::Productivity;
pub use technology::{Production, Technology};

use crate::error::{Error, Result};

/// Baseline parameter values.
pub const BASELINE_BETA: f64 = 0.95;
pub const BASELINE_DELTA: f64 = 0.08;
pub const BASELINE_ALPHA: f64 = 0.5;
pub const BASELINE_UPSILON: f64 = 0.975;

/// `γ = −ln 0.1`, so that `Pr(z > 1) = 0.1`.
pub fn baseline_gamma() -> f64 {
    -(0.1_f64).ln()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EconomyParams {
    /// Discount factor `β ∈ (0,1)`.
    pub beta: f64,
    /// Leverage limit `λ ≥ 1`.
    pub lambda: f64,
    pub tech: Technology,
    pub dist: Productivity,
    /// Survival probability `υ ∈ (0,1]`; only the wealth layer reads it.
    pub upsilon: Option<f64>,
}

impl EconomyParams {
    /// `β = 0.95`, `λ = 1`, Cobb-Douglas with `A = 1, α = 0.5, δ = 0.08`,
    /// exponential productivity with `γ = −ln 0.1`.
    pub fn baseline() -> Self {
        EconomyParams {
            beta: BASELINE_BETA,
            lambda: 1.0,
            tech: Technology::cobb_douglas(1.0, BASELINE_ALPHA, BASELINE_DELTA),
            dist: Productivity::exponential(baseline_gamma()),
            upsilon: None,
        }
    }

    /// Open-economy baseline: linear technology with `m = 1 − δ = 0.92`,
    /// `D = 1`, and `υ = 0.975`.
    pub fn baseline_open() -> Self {
        EconomyParams {
            tech: Technology::TwoSectorLinear {
                m: 1.0 - BASELINE_DELTA,
                d: 1.0,
            },
            upsilon: Some(BASELINE_UPSILON),
            ..Self::baseline()
        }
    }

    pub fn with_lambda(self, lambda: f64) -> Self {
        EconomyParams { lambda, ..self }
    }

    pub fn with_tech(self, tech: Technology) -> Self {
        EconomyParams { tech, ..self }
    }

    pub fn with_dist(self, dist: Productivity) -> Self {
        EconomyParams { dist, ..self }
    }

    pub fn with_upsilon(self, upsilon: f64) -> Self {
        EconomyParams {
            upsilon: Some(upsilon),
            ..self
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.beta > 0.0 && self.beta < 1.0) {
            return Err(Error::param(format!("beta must be in (0,1), got {}", self.beta)));
        }
        if !(self.lambda >= 1.0 && self.lambda.is_finite()) {
            return Err(Error::param(format!("lambda must be >= 1, got {}", self.lambda)));
        }
        if let Some(u) = self.upsilon {
            if !(u > 0.0 && u <= 1.0) {
                return Err(Error::param(format!("upsilon must be in (0,1], got {u}")));
            }
        }
        self.tech.validate()?;
        self.dist.validate()
    }

    /// `m`, the asymptotic marginal product of capital.
    pub fn m(&self) -> f64 {
        self.tech.asymptotic_mpk()
    }

    /// Savings share held in land/bonds, `b(z̄) = β(λΦ(z̄) + 1 − λ)`.
    pub fn bond_share(&self, zbar: f64) -> f64 {
        self.beta * (self.lambda * self.dist.cdf(zbar) + 1.0 - self.lambda)
    }

    /// Lowest admissible threshold `Φ^{-1}(1 − 1/λ)`; prices are positive
    /// strictly above it.
    pub fn min_threshold(&self) -> f64 {
        self.dist.quantile(1.0 - 1.0 / self.lambda)
    }
}

/// Long-run land-price regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    Fundamental,
    Bubbly,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Fundamental => "fundamental",
            Regime::Bubbly => "bubbly",
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of the assumption checks. `a3_value` is `βE[mZ | mZ ≥ 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AssumptionReport {
    pub a1_ok: bool,
    pub a2_ok: bool,
    pub a3_ok: bool,
    pub a4_ok: bool,
    pub a3_value: f64,
    pub sigma_limit: f64,
}

impl AssumptionReport {
    pub fn all_ok(&self) -> bool {
        self.a1_ok && self.a2_ok && self.a3_ok && self.a4_ok
    }
}

pub fn eval_production(tech: &Technology, k: f64) -> Result<Production> {
    tech.eval(k)
}

pub fn asymptotic_mpk(tech: &Technology) -> f64 {
    tech.asymptotic_mpk()
}

pub fn elasticity_sigma(tech: &Technology, k: f64) -> Result<f64> {
    tech.elasticity(k)
}

pub fn partial_expectation(dist: &Productivity, zbar: f64) -> f64 {
    dist.partial_expectation(zbar)
}

/// Leverage threshold `λ̄ = ((1−β)/β) / ∫_{1/m}^∞ (mz − 1) dΦ(z)`.
///
/// For exponential productivity this is `((1−β)/β)(γ/m)e^{γ/m}`.
pub fn leverage_threshold(econ: &EconomyParams) -> Result<f64> {
    let m = econ.m();
    let denom = econ.dist.excess_return(m, 1.0);
    if !(denom > 0.0) || !denom.is_finite() {
        return Err(Error::DegenerateDistribution(
            "no productivity mass above 1/m; threshold integral vanishes",
        ));
    }
    Ok((1.0 - econ.beta) / econ.beta / denom)
}

pub fn check_assumptions(econ: &EconomyParams) -> AssumptionReport {
    let m = econ.m();
    let z = 1.0 / m;
    let tail = econ.dist.survival(z);
    let a3_value = if tail > 0.0 {
        econ.beta * m * econ.dist.partial_expectation(z) / tail
    } else {
        f64::NAN
    };
    let sigma_limit = econ.tech.elasticity_limit();
    AssumptionReport {
        a1_ok: econ.dist.validate().is_ok() && econ.dist.has_unbounded_support(),
        a2_ok: econ.tech.validate().is_ok(),
        a3_ok: a3_value > 1.0,
        a4_ok: sigma_limit > 1.0,
        a3_value,
        sigma_limit,
    }
}
