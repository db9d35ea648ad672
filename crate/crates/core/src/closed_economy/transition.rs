//! Perfect-foresight transition paths.
//!
//! Unknowns are the cutoffs `z̄_0, …, z̄_{T−1}`; `z̄_T` is pinned to the
//! segment's long-run value (the steady-state cutoff when `λ < λ̄`, `G/m`
//! otherwise). Given the cutoffs, capital is simulated forward and each
//! `z̄_t` is recomputed from next-period prices. The residual
//! `z̄_t^new − z̄_t` is driven to zero in two stages: a natural spline through
//! `J` knots fitted by Nelder-Mead, then a damped Newton iteration on all
//! `T` cutoffs.
//!
//! Parameter changes that agents did not foresee are handled segment by
//! segment: each segment is solved as if its parameters were permanent, and
//! the next one restarts from the capital stock realized at its start date.

use nalgebra::{DMatrix, DVector};

use crate::bubble::Classification;
use crate::economy::{leverage_threshold, EconomyParams};
use crate::error::{Error, Result};
use crate::numerics::{minimize, SplinePath};

use super::growth::solve_growth_rate;
use super::maps::{step_capital, wealth_price_maps, StateVars};
use super::path::EquilibriumPath;
use super::steady::solve_steady_state;

pub const DEFAULT_HORIZON: usize = 200;
pub const DEFAULT_KNOTS: usize = 10;
/// Bound on `Σ_t (z̄_t^new − z̄_t)²`.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Newton stops once the squared error is this small.
const NEWTON_TARGET: f64 = 1e-26;

/// Piecewise-constant parameters. Segment `i` is in force from its start date
/// until the next segment starts.
#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    segments: Vec<(usize, EconomyParams)>,
}

impl Schedule {
    pub fn constant(econ: EconomyParams) -> Self {
        Schedule {
            segments: vec![(0, econ)],
        }
    }

    /// Adds a surprise change to `econ` at date `start`.
    pub fn then_at(mut self, start: usize, econ: EconomyParams) -> Result<Self> {
        let last = self.segments.last().map(|s| s.0).unwrap_or(0);
        if start <= last {
            return Err(Error::param(format!(
                "segment start {start} must follow the previous start {last}"
            )));
        }
        self.segments.push((start, econ));
        Ok(self)
    }

    pub fn segments(&self) -> &[(usize, EconomyParams)] {
        &self.segments
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionOptions {
    /// Periods solved per segment.
    pub horizon: usize,
    /// Spline knots in the first stage.
    pub knots: usize,
    pub tol: f64,
    pub max_newton_iter: usize,
    pub max_simplex_iter: usize,
}

impl Default for TransitionOptions {
    fn default() -> Self {
        TransitionOptions {
            horizon: DEFAULT_HORIZON,
            knots: DEFAULT_KNOTS,
            tol: DEFAULT_TOL,
            max_newton_iter: 60,
            max_simplex_iter: 3000,
        }
    }
}

/// Long-run cutoff and regime of a constant-parameter economy.
pub fn terminal_threshold(econ: &EconomyParams) -> Result<(f64, Classification)> {
    let lambda_bar = leverage_threshold(econ)?;
    if econ.lambda < lambda_bar {
        Ok((solve_steady_state(econ)?.zbar, Classification::Fundamental))
    } else {
        Ok((solve_growth_rate(econ)?.v, Classification::Bubbly))
    }
}

/// Solves the path from `k0` with horizon `horizon` and `knots` spline knots.
pub fn solve_transition(
    schedule: &Schedule,
    k0: f64,
    horizon: usize,
    knots: usize,
) -> Result<EquilibriumPath> {
    let opts = TransitionOptions {
        horizon,
        knots,
        ..TransitionOptions::default()
    };
    solve_transition_with(schedule, k0, &opts)
}

pub fn solve_transition_with(
    schedule: &Schedule,
    k0: f64,
    opts: &TransitionOptions,
) -> Result<EquilibriumPath> {
    solve_transition_detailed(schedule, k0, opts).map(|s| s.path)
}

/// The realized path together with each segment's full belief path (the
/// path agents expected at the segment's start, over the whole horizon).
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionSolution {
    pub path: EquilibriumPath,
    pub beliefs: Vec<EquilibriumPath>,
}

pub fn solve_transition_detailed(
    schedule: &Schedule,
    k0: f64,
    opts: &TransitionOptions,
) -> Result<TransitionSolution> {
    if !(k0 > 0.0) || !k0.is_finite() {
        return Err(Error::param(format!("initial capital must be positive, got {k0}")));
    }
    if opts.horizon < 2 || opts.knots < 1 {
        return Err(Error::param("horizon must be >= 2 and knots >= 1"));
    }
    let segs = schedule.segments();
    for w in segs.windows(2) {
        if w[1].0 - w[0].0 > opts.horizon {
            return Err(Error::param(format!(
                "segment of length {} exceeds the horizon {}",
                w[1].0 - w[0].0,
                opts.horizon
            )));
        }
    }

    let mut path: Option<EquilibriumPath> = None;
    let mut beliefs = Vec::with_capacity(segs.len());
    let mut k_start = k0;
    let mut converged = true;
    for (i, &(start, ref econ)) in segs.iter().enumerate() {
        econ.validate()?;
        let seg = solve_segment(econ, k_start, opts)?;
        converged &= seg.error <= opts.tol;
        let mut piece = seg.into_path(econ, start as i64)?;
        if i > 0 {
            piece.surprise_dates.push(start as i64);
        }
        beliefs.push(piece.clone());
        if let Some(&(next, _)) = segs.get(i + 1) {
            let keep = next - start;
            k_start = piece.capital[keep];
            piece.truncate(keep);
        }
        match &mut path {
            None => path = Some(piece),
            Some(p) => p.append(piece),
        }
    }
    let path = path.expect("schedule has at least one segment");
    if !converged {
        return Err(Error::TransitionNoConvergence {
            error: path.equilibrium_error,
            best: Box::new(path),
        });
    }
    Ok(TransitionSolution { path, beliefs })
}

/// Cutoffs `z̄_0..=z̄_T` and capital `K_0..=K_{T+1}` of one segment.
struct SegmentSolution {
    zbar: Vec<f64>,
    capital: Vec<f64>,
    error: f64,
    regime: Classification,
}

impl SegmentSolution {
    fn into_path(self, econ: &EconomyParams, start: i64) -> Result<EquilibriumPath> {
        let n = self.zbar.len();
        let mut path = EquilibriumPath {
            times: (0..n as i64).map(|t| start + t).collect(),
            capital: self.capital[..n].to_vec(),
            zbar: self.zbar.clone(),
            wealth: Vec::with_capacity(n),
            price: Vec::with_capacity(n),
            rent: Vec::with_capacity(n),
            rate: Vec::with_capacity(n),
            price_rent: Vec::with_capacity(n),
            output: Vec::with_capacity(n),
            fundamental: None,
            regime: vec![self.regime; n],
            surprise_dates: Vec::new(),
            equilibrium_error: self.error,
        };
        for t in 0..n {
            let s = StateVars::new(self.capital[t], self.zbar[t]);
            let (w, p) = wealth_price_maps(econ, s)?;
            let prod = econ.tech.eval(s.k)?;
            let mpk_next = econ.tech.eval(self.capital[t + 1])?.mpk;
            path.wealth.push(w);
            path.price.push(p);
            path.rent.push(prod.rent);
            path.output.push(prod.output);
            path.price_rent.push(p / prod.rent);
            path.rate.push(self.zbar[t] * mpk_next);
        }
        Ok(path)
    }
}

/// Residual evaluation for a fixed economy, start and terminal cutoff.
struct System<'a> {
    econ: &'a EconomyParams,
    k0: f64,
    z_terminal: f64,
    horizon: usize,
}

impl System<'_> {
    /// Full cutoff path from the free values.
    fn full(&self, free: &[f64]) -> Vec<f64> {
        let mut z = free.to_vec();
        z.push(self.z_terminal);
        z
    }

    /// `K_0..=K_{T+1}`, or `None` if the path leaves the domain.
    fn simulate(&self, z: &[f64]) -> Option<Vec<f64>> {
        let mut k = Vec::with_capacity(z.len() + 1);
        k.push(self.k0);
        for &zt in z {
            let next = step_capital(self.econ, StateVars::new(*k.last()?, zt)).ok()?;
            if !(next > 0.0) || !next.is_finite() {
                return None;
            }
            k.push(next);
        }
        Some(k)
    }

    /// `z̄_t^new − z̄_t` for `t < T`.
    fn residuals(&self, free: &[f64]) -> Option<DVector<f64>> {
        let z = self.full(free);
        let k = self.simulate(&z)?;
        let t_max = self.horizon;
        let mut price = Vec::with_capacity(t_max + 1);
        for t in 0..=t_max {
            let (_, p) = wealth_price_maps(self.econ, StateVars::new(k[t], z[t])).ok()?;
            if !(p > 0.0) {
                return None;
            }
            price.push(p);
        }
        let mut r = DVector::zeros(t_max);
        for t in 0..t_max {
            let prod = self.econ.tech.eval(k[t + 1]).ok()?;
            let implied = (price[t + 1] + prod.rent) / (prod.mpk * price[t]);
            r[t] = implied - z[t];
        }
        r.iter().all(|v| v.is_finite()).then_some(r)
    }

    fn error(&self, free: &[f64]) -> f64 {
        self.residuals(free)
            .map(|r| r.norm_squared())
            .unwrap_or(f64::INFINITY)
    }
}

/// Knot dates: `0`, then geometrically spaced up to below `T`, then `T`.
fn knot_times(horizon: usize, knots: usize) -> Vec<usize> {
    let mut times: Vec<usize> = Vec::with_capacity(knots + 1);
    let ln_t = (horizon as f64).ln();
    for j in 0..knots {
        let raw = ((j as f64 * ln_t / knots as f64).exp().round() as usize).saturating_sub(1);
        let t = match times.last() {
            Some(&prev) => raw.max(prev + 1),
            None => 0,
        };
        if t >= horizon {
            break;
        }
        times.push(t);
    }
    times.push(horizon);
    times
}

fn solve_segment(econ: &EconomyParams, k0: f64, opts: &TransitionOptions) -> Result<SegmentSolution> {
    let (z_terminal, regime) = terminal_threshold(econ)?;
    let t_max = opts.horizon;
    let sys = System {
        econ,
        k0,
        z_terminal,
        horizon: t_max,
    };

    // Stage 1: spline through the knots.
    let times = knot_times(t_max, opts.knots);
    let n_free = times.len() - 1;
    let spline_error = |vals: &[f64]| {
        let mut all = vals.to_vec();
        all.push(z_terminal);
        match SplinePath::new(times.clone(), all) {
            Ok(sp) => sys.error(&sp.sample()[..t_max]),
            Err(_) => f64::INFINITY,
        }
    };
    let start = vec![z_terminal; n_free];
    let fitted = minimize(spline_error, &start, 1e-14, opts.max_simplex_iter);
    let mut knot_vals = fitted.x.clone();
    knot_vals.push(z_terminal);
    let mut z: Vec<f64> = SplinePath::new(times.clone(), knot_vals)?.sample()[..t_max].to_vec();
    let mut r = match sys.residuals(&z) {
        Some(r) => r,
        None => {
            z = vec![z_terminal; t_max];
            sys.residuals(&z).ok_or_else(|| {
                Error::domain("initial cutoff guess leaves the valid region")
            })?
        }
    };
    let mut err = r.norm_squared();

    // Stage 2: damped Newton with a forward-difference Jacobian.
    for _ in 0..opts.max_newton_iter {
        if err <= NEWTON_TARGET {
            break;
        }
        let Some(jac) = jacobian(&sys, &z, &r) else { break };
        let Some(dz) = jac.lu().solve(&(-&r)) else { break };
        let mut step = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let trial: Vec<f64> = z.iter().zip(dz.iter()).map(|(a, d)| a + step * d).collect();
            if let Some(rt) = sys.residuals(&trial) {
                let et = rt.norm_squared();
                if et < err {
                    z = trial;
                    r = rt;
                    err = et;
                    accepted = true;
                    break;
                }
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
    }

    let z_full = sys.full(&z);
    let capital = sys
        .simulate(&z_full)
        .ok_or_else(|| Error::domain("solved path leaves the valid region"))?;
    Ok(SegmentSolution {
        zbar: z_full,
        capital,
        error: err,
        regime,
    })
}

fn jacobian(sys: &System<'_>, z: &[f64], r: &DVector<f64>) -> Option<DMatrix<f64>> {
    let n = z.len();
    let mut jac = DMatrix::zeros(n, n);
    let mut work = z.to_vec();
    for j in 0..n {
        let h = 1e-7 * z[j].abs().max(1e-3);
        work[j] = z[j] + h;
        let (rj, hh) = match sys.residuals(&work) {
            Some(rj) => (rj, h),
            None => {
                work[j] = z[j] - h;
                (sys.residuals(&work)?, -h)
            }
        };
        work[j] = z[j];
        jac.set_column(j, &((rj - r) / hh));
    }
    Some(jac)
}
