//! Aggregate wealth and land-price maps and the two-dimensional law of motion
//! in `(K, z̄)`.

use crate::economy::EconomyParams;
use crate::error::{Error, Result};
use crate::numerics::QuadratureRule;

/// Aggregate capital and the productivity cutoff above which agents invest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateVars {
    pub k: f64,
    pub zbar: f64,
}

impl StateVars {
    pub fn new(k: f64, zbar: f64) -> Self {
        StateVars { k, zbar }
    }

    /// Capital positive and `z̄` strictly above `Φ^{-1}(1 − 1/λ)`, where
    /// wealth and the land price are both positive.
    pub fn check(&self, econ: &EconomyParams) -> Result<()> {
        if !(self.k > 0.0) || !self.k.is_finite() {
            return Err(Error::domain(format!("capital must be positive, got {}", self.k)));
        }
        let zmin = econ.min_threshold();
        if !(self.zbar > zmin) || !self.zbar.is_finite() {
            return Err(Error::domain(format!(
                "threshold {} outside ({zmin}, inf)",
                self.zbar
            )));
        }
        Ok(())
    }
}

/// `(W, P)` with `W = F(K,1)/(1 − b)` and `P = b F(K,1)/(1 − b)`,
/// `b = β(λΦ(z̄) + 1 − λ)`.
pub fn wealth_price_maps(econ: &EconomyParams, s: StateVars) -> Result<(f64, f64)> {
    s.check(econ)?;
    let b = econ.bond_share(s.zbar);
    if !(b < 1.0) {
        return Err(Error::domain(format!("savings share {b} >= 1")));
    }
    let f = econ.tech.eval(s.k)?.output;
    let w = f / (1.0 - b);
    Ok((w, b * w))
}

/// `K' = βλ W(K, z̄) ∫_{z̄}^∞ z dΦ(z)`. Closed form for exponential
/// productivity.
///
/// Only needs `K > 0` and `b(z̄) < 1`, so cutoffs at or below the price
/// boundary (e.g. `z̄ = 0` with `λ = 1`) are accepted.
pub fn step_capital(econ: &EconomyParams, s: StateVars) -> Result<f64> {
    let pe = econ.dist.partial_expectation(s.zbar);
    step_with_partial_expectation(econ, s, pe)
}

/// [`step_capital`] with the partial expectation integrated by quadrature,
/// whatever the distribution.
pub fn step_capital_quadrature(
    econ: &EconomyParams,
    s: StateVars,
    rule: &QuadratureRule,
) -> Result<f64> {
    let pe = econ.dist.partial_expectation_quadrature(s.zbar, rule);
    step_with_partial_expectation(econ, s, pe)
}

fn step_with_partial_expectation(econ: &EconomyParams, s: StateVars, pe: f64) -> Result<f64> {
    if !s.zbar.is_finite() || s.zbar < 0.0 {
        return Err(Error::domain(format!("threshold {} must be >= 0", s.zbar)));
    }
    let b = econ.bond_share(s.zbar);
    if !(b < 1.0) {
        return Err(Error::domain(format!("savings share {b} >= 1")));
    }
    let f = econ.tech.eval(s.k)?.output;
    Ok(econ.beta * econ.lambda * pe / (1.0 - b) * f)
}

/// The cutoff `z̄_t` consistent with next-period prices:
/// `z̄_t = (P(K', z̄') + F_X(K',1)) / (F_K(K',1) P(K, z̄))`.
pub fn implied_threshold(econ: &EconomyParams, now: StateVars, next: StateVars) -> Result<f64> {
    let (_, p_now) = wealth_price_maps(econ, now)?;
    let (_, p_next) = wealth_price_maps(econ, next)?;
    if !(p_now > 0.0) {
        return Err(Error::domain("land price is zero"));
    }
    let prod = econ.tech.eval(next.k)?;
    Ok((p_next + prod.rent) / (prod.mpk * p_now))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::economy::{Productivity, Technology};
    use crate::numerics::default_rule;

    fn base() -> EconomyParams {
        EconomyParams::baseline()
    }

    #[test]
    fn price_share_is_bond_share() {
        let e = base().with_lambda(1.4);
        for z in [0.5, 1.0, 3.0] {
            let (w, p) = wealth_price_maps(&e, StateVars::new(2.0, z)).unwrap();
            assert!((p / w - e.bond_share(z)).abs() < 1e-14);
        }
        let (w, p) = wealth_price_maps(&base(), StateVars::new(1.0, 40.0)).unwrap();
        assert!((p / w - 0.95).abs() < 1e-12);
    }

    /// Oracle: `W = F + P` and `P = b W` solved as a linear system.
    #[test]
    fn baseline_unit_state() {
        let (w, p) = wealth_price_maps(&base(), StateVars::new(1.0, 1.0)).unwrap();
        let f = 1.92;
        let b = 0.95 * 0.9;
        // W = F + bW
        let w_oracle = f / (1.0 - b);
        assert!((w - w_oracle).abs() < 1e-12);
        assert!((w - (f + p)).abs() < 1e-12);
        assert!((w - 13.241379310344827).abs() < 1e-9);
    }

    #[test]
    fn boundary_of_price_domain() {
        let e = base().with_lambda(2.0);
        let zmin = 2f64.ln() / crate::economy::baseline_gamma();
        assert!(wealth_price_maps(&e, StateVars::new(1.0, zmin)).is_err());
        assert!(wealth_price_maps(&e, StateVars::new(1.0, zmin * 0.99)).is_err());
        let (_, p) = wealth_price_maps(&e, StateVars::new(1.0, zmin + 1e-9)).unwrap();
        assert!(p > 0.0 && p < 1e-7);
        assert!(wealth_price_maps(&e, StateVars::new(0.0, 1.0)).is_err());
    }

    #[test]
    fn closed_form_step_matches_quadrature() {
        for lambda in [1.0, 1.7, 2.5] {
            let e = base().with_lambda(lambda);
            for (k, z) in [(1.0, 1.0), (0.3, 0.6), (50.0, 1.2), (1e4, 2.5)] {
                let s = StateVars::new(k, z);
                let a = step_capital(&e, s).unwrap();
                let b = step_capital_quadrature(&e, s, default_rule()).unwrap();
                assert!((a - b).abs() <= 1e-10 * a, "{lambda} {k} {z}: {a} {b}");
            }
        }
    }

    /// Oracle: the exponential specialization written out directly.
    #[test]
    fn baseline_step_value() {
        let g = crate::economy::baseline_gamma();
        let z: f64 = 1.0;
        let direct = 0.95 * (z + 1.0 / g) * (-g * z).exp() / (1.0 - 0.95 + 0.95 * (-g * z).exp()) * 1.92;
        let k1 = step_capital(&base(), StateVars::new(1.0, z)).unwrap();
        assert!((k1 - direct).abs() < 1e-14);
        assert!((k1 - 1.804243541).abs() < 1e-8, "{k1}");
    }

    #[test]
    fn step_limits() {
        let e = base();
        assert!(step_capital(&e, StateVars::new(1.0, 400.0)).unwrap() < 1e-100);
        // everybody invests: K' = β E[z] F
        let k1 = step_capital(&e, StateVars::new(1.0, 0.0)).unwrap();
        assert!((k1 - 0.95 / crate::economy::baseline_gamma() * 1.92).abs() < 1e-12);
    }

    #[test]
    fn implied_threshold_fixed_point() {
        let e = base();
        let s = StateVars::new(46.698239, 1.0182286);
        let z = implied_threshold(&e, s, s).unwrap();
        assert!((z - s.zbar).abs() < 1e-6);
    }

    #[test]
    fn implied_threshold_on_asymptotic_bubbly_path() {
        let e = base().with_lambda(2.0);
        let v = 1.1549897;
        let g = 0.92 * v;
        let mut prev = f64::INFINITY;
        for k in [1e3, 1e5, 1e7, 1e9] {
            let z = implied_threshold(&e, StateVars::new(k, v), StateVars::new(g * k, v)).unwrap();
            let err = (z - v).abs();
            assert!(err < prev);
            prev = err;
        }
        assert!(prev < 1e-3);
    }

    #[test]
    fn linear_and_weibull_economies() {
        let e = base()
            .with_tech(Technology::TwoSectorLinear { m: 0.92, d: 1.0 })
            .with_dist(Productivity::Weibull {
                shape: 1.3,
                scale: 0.5,
            });
        let s = StateVars::new(3.0, 0.8);
        let (w, p) = wealth_price_maps(&e, s).unwrap();
        assert!((w - p - 3.76).abs() < 1e-12);
        assert!(step_capital(&e, s).unwrap() > 0.0);
    }
}
