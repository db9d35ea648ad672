//! Long-run growth rate `G(λ)` and the local saddle structure around the
//! asymptotic bubbly state.

use crate::economy::{check_assumptions, EconomyParams};
use crate::error::{Error, Result};
use crate::numerics::{find_root, Bracket};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthSolution {
    /// Gross growth rate `G = m v`.
    pub g: f64,
    /// Root of `Ψ(v, λ) = 0`; the asymptotic cutoff `z̄ = G/m`.
    pub v: f64,
    pub lambda: f64,
    pub residual: f64,
}

impl GrowthSolution {
    /// `G > 1`, which happens exactly when `λ > λ̄`.
    pub fn is_bubbly(&self) -> bool {
        self.g > 1.0
    }
}

/// `Ψ(v, λ) = v(1 − β(λΦ(v) + 1 − λ)) − βλ∫_v^∞ z dΦ(z)`.
pub fn psi_growth(econ: &EconomyParams, v: f64) -> f64 {
    v * (1.0 - econ.bond_share(v)) - econ.beta * econ.lambda * econ.dist.partial_expectation(v)
}

/// Unique `v > 0` with `Ψ(v, λ) = 0`, and `G = m v`.
///
/// `Ψ(0) < 0` and `Ψ` rises at least at rate `1 − β`, so doubling the upper
/// end always brackets the root.
pub fn solve_growth_rate(econ: &EconomyParams) -> Result<GrowthSolution> {
    econ.validate()?;
    let report = check_assumptions(econ);
    if !report.a3_ok {
        return Err(Error::AssumptionViolation(format!(
            "beta * E[mz | mz >= 1] = {} must exceed 1",
            report.a3_value
        )));
    }
    let mut f = |v: f64| psi_growth(econ, v);
    let hi0 = (2.0 * econ.dist.mean()).max(1.0);
    let bracket = Bracket::expand_up(&mut f, 0.0, hi0, 2.0, 1e12)?;
    let v = find_root(&mut f, bracket, 1e-15)?;
    let m = econ.m();
    Ok(GrowthSolution {
        g: m * v,
        v,
        lambda: econ.lambda,
        residual: f(v),
    })
}

/// Eigenvalues `(1/G, 1 + b(1−b)/(βλ z̄ φ(z̄)))` of the linearized dynamics at
/// the asymptotic bubbly state, `z̄ = G/m`. The first is stable, the second
/// unstable.
pub fn saddle_eigenvalues(econ: &EconomyParams, g: &GrowthSolution) -> Result<(f64, f64)> {
    if !(g.g > 1.0) {
        return Err(Error::domain(format!(
            "saddle structure needs G > 1, got {}",
            g.g
        )));
    }
    let zbar = g.g / econ.m();
    let b = econ.bond_share(zbar);
    if !(b > 0.0 && b < 1.0) {
        return Err(Error::domain(format!("savings share {b} outside (0,1)")));
    }
    let denom = econ.beta * econ.lambda * zbar * econ.dist.pdf(zbar);
    if !(denom > 0.0) {
        return Err(Error::domain("zero density at the asymptotic cutoff"));
    }
    Ok((1.0 / g.g, 1.0 + b * (1.0 - b) / denom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::economy::{leverage_threshold, Productivity};

    fn base() -> EconomyParams {
        EconomyParams::baseline()
    }

    /// Independent oracle: bisection on `Ψ` written from scratch.
    fn bisect_growth(econ: &EconomyParams) -> f64 {
        let (mut lo, mut hi) = (0.0_f64, 50.0_f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if psi_growth(econ, mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        econ.m() * 0.5 * (lo + hi)
    }

    #[test]
    fn unit_growth_at_threshold() {
        let lb = leverage_threshold(&base()).unwrap();
        let g = solve_growth_rate(&base().with_lambda(lb)).unwrap();
        assert!((g.g - 1.0).abs() < 1e-8, "{}", g.g);
    }

    #[test]
    fn regression_values() {
        let g2 = solve_growth_rate(&base().with_lambda(2.0)).unwrap();
        assert!((g2.g - bisect_growth(&base().with_lambda(2.0))).abs() < 1e-12);
        assert!((g2.g - 1.0625906).abs() < 1e-6, "{}", g2.g);
        assert!(g2.is_bubbly());
        let g1 = solve_growth_rate(&base()).unwrap();
        assert!((g1.g - bisect_growth(&base())).abs() < 1e-12);
        assert!((g1.g - 0.86695).abs() < 1e-5, "{}", g1.g);
        assert!(!g1.is_bubbly());
        assert!((g2.v * 0.92 - g2.g).abs() < 1e-15);
        assert!(g2.residual.abs() < 1e-12);
    }

    #[test]
    fn increasing_in_leverage() {
        let lb = leverage_threshold(&base()).unwrap();
        let mut prev = 0.0;
        for i in 0..=20 {
            let lambda = 1.0 + 0.1 * i as f64;
            let g = solve_growth_rate(&base().with_lambda(lambda)).unwrap();
            assert!(g.g > prev);
            assert_eq!(g.g > 1.0, lambda > lb);
            prev = g.g;
        }
    }

    #[test]
    fn assumption_three_violation() {
        let e = EconomyParams {
            beta: 0.5,
            dist: Productivity::exponential(10.0),
            ..base()
        };
        assert!(matches!(
            solve_growth_rate(&e),
            Err(Error::AssumptionViolation(_))
        ));
    }

    #[test]
    fn eigenvalues() {
        let g = solve_growth_rate(&base().with_lambda(2.0)).unwrap();
        let (l1, l2) = saddle_eigenvalues(&base().with_lambda(2.0), &g).unwrap();
        assert!((l1 - 1.0 / g.g).abs() < 1e-15);
        assert!(l1 > 0.0 && l1 < 1.0);
        assert!(l2 > 1.0);
        let g1 = solve_growth_rate(&base()).unwrap();
        assert!(saddle_eigenvalues(&base(), &g1).is_err());
    }

    #[test]
    fn unstable_root_tends_to_one_as_share_vanishes() {
        // b -> 0+ as the cutoff approaches the price boundary from above
        // high leverage pushes the boundary above 1/m, so G > 1 there
        let e = base().with_lambda(20.0);
        let zmin = e.min_threshold();
        let mut prev = f64::INFINITY;
        for eps in [1e-2, 1e-4, 1e-6] {
            let v = zmin + eps;
            let fake = GrowthSolution {
                g: 0.92 * v,
                v,
                lambda: 20.0,
                residual: 0.0,
            };
            let (_, l2) = saddle_eigenvalues(&e, &fake).unwrap();
            assert!(l2 > 1.0 && l2 - 1.0 < prev);
            prev = l2 - 1.0;
        }
        assert!(prev < 1e-4);
    }
}
