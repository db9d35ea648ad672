//! Interior steady state of the `(K, z̄)` dynamics for `λ < λ̄`.
//!
//! Two steps: for a given `z̄`, capital solves `F(K,1)/K = 1/C(z̄)` with
//! `C = βλ∫_{z̄}^∞ z dΦ / (1 − b(z̄))`; then `z̄` solves
//! `z̄ = (1/F_K)(1 + ((1−b)/b) F_X/F)` along that curve.

use crate::economy::{leverage_threshold, EconomyParams};
use crate::error::{Error, Result};
use crate::numerics::{find_root, Bracket};

use super::maps::{implied_threshold, step_capital, wealth_price_maps, StateVars};

const SCAN_POINTS: usize = 800;

#[derive(Debug, Clone, PartialEq)]
pub struct SteadyState {
    pub k: f64,
    pub zbar: f64,
    pub w: f64,
    pub p: f64,
    /// Gross risk-free rate `z̄ F_K(K,1)`.
    pub r: f64,
    /// `(K'/K − 1, z̄_implied − z̄)` at the solution.
    pub residuals: (f64, f64),
    /// Midpoints of every sign change of the outer equation found by the
    /// scan; the solution uses the first.
    pub sign_changes: Vec<f64>,
}

impl SteadyState {
    pub fn state(&self) -> StateVars {
        StateVars::new(self.k, self.zbar)
    }

    pub fn rent(&self, econ: &EconomyParams) -> Result<f64> {
        Ok(econ.tech.eval(self.k)?.rent)
    }
}

/// `C(z̄)`, the ratio `K'/F(K,1)` at a constant cutoff.
fn savings_ratio(econ: &EconomyParams, zbar: f64) -> f64 {
    let b = econ.bond_share(zbar);
    econ.beta * econ.lambda * econ.dist.partial_expectation(zbar) / (1.0 - b)
}

/// Stationary capital at a fixed cutoff; `None` when it would be infinite.
pub fn capital_at_threshold(econ: &EconomyParams, zbar: f64) -> Option<f64> {
    let c = savings_ratio(econ, zbar);
    if !(c > 0.0) {
        return None;
    }
    econ.tech.capital_for_average_product(1.0 / c)
}

/// Residual of the outer equation at `z̄`; `None` off the domain.
fn outer_residual(econ: &EconomyParams, zbar: f64) -> Option<f64> {
    let k = capital_at_threshold(econ, zbar)?;
    let b = econ.bond_share(zbar);
    if !(b > 0.0 && b < 1.0) {
        return None;
    }
    let p = econ.tech.eval(k).ok()?;
    let rhs = (1.0 + (1.0 - b) / b * p.rent / p.output) / p.mpk;
    let h = zbar - rhs;
    h.is_finite().then_some(h)
}

pub fn solve_steady_state(econ: &EconomyParams) -> Result<SteadyState> {
    econ.validate()?;
    let lambda_bar = leverage_threshold(econ)?;
    if econ.lambda >= lambda_bar {
        return Err(Error::NoSteadyState(format!(
            "leverage {} is not below the threshold {lambda_bar}",
            econ.lambda
        )));
    }

    // Scan from just above the price boundary deep into the tail.
    let lo = econ.min_threshold();
    let hi = econ.dist.quantile(1.0 - 1e-10);
    let step = (hi - lo) / SCAN_POINTS as f64;
    let mut samples: Vec<(f64, f64)> = Vec::new();
    for i in 1..=SCAN_POINTS {
        let z = lo + step * i as f64;
        if let Some(h) = outer_residual(econ, z) {
            samples.push((z, h));
        }
    }
    let brackets: Vec<(f64, f64)> = samples
        .windows(2)
        .filter(|w| (w[0].1 < 0.0) != (w[1].1 < 0.0))
        .map(|w| (w[0].0, w[1].0))
        .collect();
    let Some(&(z_lo, z_hi)) = brackets.first() else {
        return Err(Error::NoSteadyState(
            "outer steady-state equation has no sign change".into(),
        ));
    };
    let sign_changes = brackets.iter().map(|(a, b)| 0.5 * (a + b)).collect();

    let mut f = |z: f64| outer_residual(econ, z).unwrap_or(f64::NAN);
    let bracket = Bracket::new(&mut f, z_lo, z_hi)?;
    let zbar = find_root(&mut f, bracket, 1e-15)?;
    let k = capital_at_threshold(econ, zbar)
        .ok_or_else(|| Error::NoSteadyState("capital diverges at the root".into()))?;

    let s = StateVars::new(k, zbar);
    let (w, p) = wealth_price_maps(econ, s)?;
    let mpk = econ.tech.eval(k)?.mpk;
    let k_res = step_capital(econ, s)? / k - 1.0;
    let z_res = implied_threshold(econ, s, s)? - zbar;
    Ok(SteadyState {
        k,
        zbar,
        w,
        p,
        r: zbar * mpk,
        residuals: (k_res, z_res),
        sign_changes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::economy::Technology;

    #[test]
    fn baseline_steady_state() {
        let ss = solve_steady_state(&EconomyParams::baseline()).unwrap();
        assert!(ss.residuals.0.abs() < 1e-9 && ss.residuals.1.abs() < 1e-9);
        assert!((ss.k - 46.698239).abs() < 1e-5, "{}", ss.k);
        assert!((ss.zbar - 1.0182286).abs() < 1e-6, "{}", ss.zbar);
        assert!(ss.r > 1.0);
        assert_eq!(ss.sign_changes.len(), 1);
    }

    /// Oracle: iterate the capital map with `z̄` held at its steady value.
    #[test]
    fn capital_map_converges_to_steady_capital() {
        let e = EconomyParams::baseline();
        let ss = solve_steady_state(&e).unwrap();
        let mut k = 1.01 * ss.k;
        for _ in 0..500 {
            k = step_capital(&e, StateVars::new(k, ss.zbar)).unwrap();
        }
        assert!((k - ss.k).abs() < 1e-6 * ss.k);
        let mut k = 0.5 * ss.k;
        for _ in 0..2000 {
            k = step_capital(&e, StateVars::new(k, ss.zbar)).unwrap();
        }
        assert!((k - ss.k).abs() < 1e-6 * ss.k);
    }

    #[test]
    fn rate_is_no_arbitrage_return() {
        let e = EconomyParams::baseline().with_lambda(1.3);
        let ss = solve_steady_state(&e).unwrap();
        let rent = ss.rent(&e).unwrap();
        assert!(((ss.p + rent) / ss.p - ss.r).abs() < 1e-9);
    }

    #[test]
    fn none_above_threshold() {
        let e = EconomyParams::baseline().with_lambda(1.9);
        assert!(matches!(solve_steady_state(&e), Err(Error::NoSteadyState(_))));
    }

    #[test]
    fn ces_steady_states() {
        for rho in [0.7, 2.0] {
            let e = EconomyParams::baseline().with_tech(Technology::Ces {
                a: 1.0,
                alpha: 0.5,
                rho,
                delta: 0.08,
            });
            let lb = leverage_threshold(&e).unwrap();
            assert!(lb > 1.0, "rho={rho}: {lb}");
            let e = e.with_lambda(1.0 + 0.5 * (lb - 1.0));
            let ss = solve_steady_state(&e).unwrap();
            assert!(ss.residuals.0.abs() < 1e-9 && ss.residuals.1.abs() < 1e-9);
        }
    }
}
