//! Stationary wealth distribution in the open economy with perpetual youth.
//!
//! Relative wealth follows `s' = (1 + c·g(z)) s` with probability `υ` and
//! resets to 1 otherwise, where `g(z) = max{0, mz − R}/π(R) − 1` has mean zero
//! and `c = 1 − βR` on a stationary path or `1 − β` on a growing one. The
//! stationary distribution has a Pareto upper tail whose exponent `ζ > 1`
//! solves `ρ(ζ) = 1` with `ρ(ζ) = υ E[(1 + c·g(z))^ζ]`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::economy::{EconomyParams, Productivity, Regime, BASELINE_UPSILON};
use crate::error::{Error, Result};
use crate::numerics::{default_rule, find_root, hill_estimate, Bracket, HillEstimate, QuadratureRule};
use crate::open_economy::{risk_premium, solve_trend_stationary, TrendStationaryEquilibrium};

/// Upper tail share used by the Hill estimator on simulated panels.
pub const HILL_TOP_FRACTION: f64 = 0.01;
const MAX_ZETA: f64 = 1e4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WealthProcessSpec {
    pub regime: Regime,
    pub r: f64,
    pub m: f64,
    pub beta: f64,
    pub lambda: f64,
    /// Survival probability.
    pub upsilon: f64,
    /// `π(R)`.
    pub pi_r: f64,
    pub dist: Productivity,
}

impl WealthProcessSpec {
    /// The process faced by agents of `econ` when the rate is `r`; `υ` comes
    /// from `econ` or defaults to 0.975.
    pub fn new(econ: &EconomyParams, regime: Regime, r: f64) -> Self {
        WealthProcessSpec {
            regime,
            r,
            m: econ.m(),
            beta: econ.beta,
            lambda: econ.lambda,
            upsilon: econ.upsilon.unwrap_or(BASELINE_UPSILON),
            pi_r: risk_premium(econ, r),
            dist: econ.dist,
        }
    }

    pub fn from_equilibrium(econ: &EconomyParams, eq: &TrendStationaryEquilibrium) -> Self {
        Self::new(econ, eq.regime, eq.r)
    }

    /// Solves the trend-stationary equilibrium of `econ` first. The rate does
    /// not depend on `K_0` or `D`.
    pub fn from_economy(econ: &EconomyParams) -> Result<Self> {
        let eq = solve_trend_stationary(econ, 1.0, 1.0)?;
        Ok(Self::from_equilibrium(econ, &eq))
    }

    pub fn with_upsilon(self, upsilon: f64) -> Self {
        WealthProcessSpec { upsilon, ..self }
    }

    /// `c`: `1 − βR` when `G = 1`, `1 − β` when `G > 1`.
    pub fn reinvestment_rate(&self) -> f64 {
        match self.regime {
            Regime::Fundamental => 1.0 - self.beta * self.r,
            Regime::Bubbly => 1.0 - self.beta,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.upsilon > 0.0 && self.upsilon < 1.0) {
            return Err(Error::param(format!(
                "upsilon must be in (0,1), got {}",
                self.upsilon
            )));
        }
        if !(self.pi_r > 0.0) {
            return Err(Error::domain("risk premium is zero"));
        }
        let c = self.reinvestment_rate();
        if !(0.0..1.0).contains(&c) {
            return Err(Error::domain(format!("reinvestment rate {c} outside [0,1)")));
        }
        Ok(())
    }
}

/// `g(z) = max{0, mz − R}/π(R) − 1`.
pub fn growth_shock(spec: &WealthProcessSpec, z: f64) -> Result<f64> {
    if !(spec.pi_r > 0.0) {
        return Err(Error::domain("risk premium is zero"));
    }
    Ok((spec.m * z - spec.r).max(0.0) / spec.pi_r - 1.0)
}

/// `log ρ(ζ)`, evaluated as a log-sum-exp over the mass below `R/m` and the
/// quadrature nodes above it.
pub fn log_rho_of_zeta(spec: &WealthProcessSpec, zeta: f64) -> Result<f64> {
    log_rho_with_rule(spec, zeta, default_rule())
}

pub fn log_rho_with_rule(spec: &WealthProcessSpec, zeta: f64, rule: &QuadratureRule) -> Result<f64> {
    if !(zeta >= 0.0) || !zeta.is_finite() {
        return Err(Error::param(format!("zeta must be >= 0, got {zeta}")));
    }
    spec.validate()?;
    let c = spec.reinvestment_rate();
    let cut = spec.r / spec.m;
    let ls0 = spec.dist.log_survival(cut);
    let below = spec.dist.cdf(cut);

    let mut logs = Vec::with_capacity(rule.order + 1);
    if below > 0.0 {
        logs.push(below.ln() + zeta * (1.0 - c).ln());
    }
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let z = spec.dist.point_at_log_survival(ls0 - x);
        let mult = 1.0 - c + c * (spec.m * z - spec.r) / spec.pi_r;
        logs.push(ls0 + w.ln() + zeta * mult.ln());
    }
    let top = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = logs.iter().map(|l| (l - top).exp()).sum();
    Ok(spec.upsilon.ln() + top + sum.ln())
}

pub fn rho_of_zeta(spec: &WealthProcessSpec, zeta: f64) -> Result<f64> {
    Ok(log_rho_of_zeta(spec, zeta)?.exp())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParetoSolution {
    pub zeta: f64,
    /// `ρ(ζ) − 1`.
    pub residual: f64,
    pub regime: Regime,
    pub r: f64,
    pub mc_estimate: Option<f64>,
    pub mc_ci: Option<(f64, f64)>,
}

/// Root `ζ > 1` of `ρ(ζ) = 1`. `ρ(1) = υ < 1` and `ρ` is convex, so doubling
/// from 1 brackets the unique crossing.
pub fn solve_pareto_exponent(spec: &WealthProcessSpec) -> Result<ParetoSolution> {
    spec.validate()?;
    let mut f = |z: f64| log_rho_of_zeta(spec, z).unwrap_or(f64::NAN);
    let bracket = Bracket::expand_up(&mut f, 1.0, 2.0, 2.0, MAX_ZETA)
        .map_err(|_| Error::NoRoot("rho(zeta) stays below 1".into()))?;
    let zeta = find_root(&mut f, bracket, 1e-14)?;
    Ok(ParetoSolution {
        zeta,
        residual: rho_of_zeta(spec, zeta)? - 1.0,
        regime: spec.regime,
        r: spec.r,
        mc_estimate: None,
        mc_ci: None,
    })
}

/// Terminal cross-section of a simulated panel.
#[derive(Debug, Clone, PartialEq)]
pub struct WealthPanel {
    pub samples: Vec<f64>,
    /// `None` when the upper tail has no spread (e.g. a degenerate shock).
    pub hill: Option<HillEstimate>,
}

/// Simulates `n` independent chains for `t` periods from `s = 1`.
///
/// Chain `i` draws from its own ChaCha8 stream `(seed, i)`, so the result
/// does not depend on how chains are scheduled across threads.
pub fn simulate_wealth_panel(spec: &WealthProcessSpec, n: usize, t: usize, seed: u64) -> Result<WealthPanel> {
    spec.validate()?;
    if t == 0 {
        return Err(Error::param("horizon must be positive"));
    }
    let k = (HILL_TOP_FRACTION * n as f64).ceil() as usize;
    if k < crate::numerics::tail::MIN_TAIL_COUNT {
        return Err(Error::TooFewSamples {
            needed: crate::numerics::tail::MIN_TAIL_COUNT,
            got: k,
        });
    }
    let c = spec.reinvestment_rate();
    let scale = c / spec.pi_r;
    let (m, r, ups) = (spec.m, spec.r, spec.upsilon);
    let dist = spec.dist;

    let samples: Vec<f64> = (0..n as u64)
        .into_par_iter()
        .map(|chain| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chain);
            let mut s = 1.0_f64;
            for _ in 0..t {
                // 1 - U lies in (0, 1]
                let u: f64 = 1.0 - rng.random::<f64>();
                let alive = rng.random::<f64>() < ups;
                if alive {
                    let z = dist.sample_from_uniform(u);
                    s *= 1.0 - c + scale * (m * z - r).max(0.0);
                } else {
                    s = 1.0;
                }
            }
            s
        })
        .collect();

    let hill = match hill_estimate(&samples, HILL_TOP_FRACTION) {
        Ok(h) => Some(h),
        Err(Error::DegenerateSample(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(WealthPanel { samples, hill })
}
