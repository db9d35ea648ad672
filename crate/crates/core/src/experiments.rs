//! Ready-made experiments: the regime map over (elasticity, leverage) and
//! temporary leverage or productivity booms that start and end as surprises.

use rayon::prelude::*;

use crate::bubble::{attach_fundamental_values, montrucchio_test, BubbleVerdict, Classification, TailMode};
use crate::closed_economy::{
    solve_steady_state, solve_transition_detailed, EquilibriumPath, Schedule, SteadyState,
    TransitionOptions,
};
use crate::economy::{leverage_threshold, EconomyParams, Productivity, Regime, Technology};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseDiagram {
    /// `(1/ρ, λ̄)` rows.
    pub boundary: Vec<(f64, f64)>,
    /// `(1/ρ, λ, regime)` on the product grid.
    pub regimes: Vec<(f64, f64, Regime)>,
}

/// Leverage threshold across CES elasticities `1/ρ`, keeping the template's
/// `A`, `α` and `δ`, plus the regime on a leverage grid.
pub fn phase_diagram(
    template: &EconomyParams,
    inv_rho: &[f64],
    lambdas: &[f64],
) -> Result<PhaseDiagram> {
    let Technology::Ces { a, alpha, delta, .. } = template.tech else {
        return Err(Error::param("phase diagram needs a CES technology"));
    };
    check_grid("inv_rho", inv_rho)?;
    check_grid("lambda", lambdas)?;
    let boundary: Vec<(f64, f64)> = inv_rho
        .par_iter()
        .map(|&x| {
            if !(x > 0.0) {
                return Err(Error::param(format!("inv_rho must be positive, got {x}")));
            }
            let econ = template.with_tech(Technology::Ces {
                a,
                alpha,
                rho: 1.0 / x,
                delta,
            });
            Ok((x, leverage_threshold(&econ)?))
        })
        .collect::<Result<_>>()?;
    let regimes = boundary
        .iter()
        .flat_map(|&(x, lb)| {
            lambdas.iter().map(move |&l| {
                let r = if l < lb { Regime::Fundamental } else { Regime::Bubbly };
                (x, l, r)
            })
        })
        .collect();
    Ok(PhaseDiagram { boundary, regimes })
}

/// Grids must be nonempty and strictly increasing.
pub fn check_grid(name: &str, grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::param(format!("{name} grid is empty")));
    }
    if grid.iter().any(|v| !v.is_finite()) || grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::param(format!("{name} grid must be strictly increasing")));
    }
    Ok(())
}

/// The economy sits in the steady state of `base` for `t < 0`, switches to
/// `shocked` at `t = 0` and back to `base` at `t = duration`. Agents treat
/// each switch as a permanent surprise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShockExperiment {
    pub base: EconomyParams,
    pub shocked: EconomyParams,
    pub duration: usize,
    pub options: TransitionOptions,
    /// Pre-shock periods included in the output.
    pub pre_periods: usize,
}

impl ShockExperiment {
    /// Leverage rises from 1 to 2 for ten periods.
    pub fn leverage() -> Self {
        let base = EconomyParams::baseline();
        ShockExperiment {
            base,
            shocked: base.with_lambda(2.0),
            duration: 10,
            options: TransitionOptions::default(),
            pre_periods: 5,
        }
    }

    /// The chance of productivity above 1 rises from 10% to 15% for ten
    /// periods.
    pub fn productivity() -> Self {
        let base = EconomyParams::baseline();
        ShockExperiment {
            shocked: base.with_dist(Productivity::exponential(-(0.15_f64).ln())),
            ..Self::leverage()
        }
    }

    pub fn with_options(self, options: TransitionOptions) -> Self {
        ShockExperiment { options, ..self }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShockOutcome {
    /// Realized path including the pre-shock steady state at negative dates.
    pub path: EquilibriumPath,
    pub steady: SteadyState,
    /// Price, rent and price-rent ratio divided by their pre-shock values.
    pub price_index: Vec<f64>,
    pub rent_index: Vec<f64>,
    pub price_rent_index: Vec<f64>,
    /// Summability verdict on each belief path, keyed by its start date.
    pub verdicts: Vec<(i64, BubbleVerdict)>,
}

impl ShockOutcome {
    pub fn index_csv(&self) -> String {
        use crate::report::format_g;
        let mut out = String::from("t,price,rent,price_rent,regime\n");
        for i in 0..self.path.len() {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                self.path.times[i],
                format_g(self.price_index[i]),
                format_g(self.rent_index[i]),
                format_g(self.price_rent_index[i]),
                self.path.regime[i]
            ));
        }
        out
    }

    pub fn at(&self, t: i64) -> Option<(f64, f64, f64)> {
        let i = self.path.index_of(t)?;
        Some((self.price_index[i], self.rent_index[i], self.price_rent_index[i]))
    }
}

pub fn run_shock(exp: &ShockExperiment) -> Result<ShockOutcome> {
    let steady = solve_steady_state(&exp.base)?;
    let schedule = Schedule::constant(exp.shocked).then_at(exp.duration, exp.base)?;
    let solution = solve_transition_detailed(&schedule, steady.k, &exp.options)?;

    let mut verdicts = Vec::with_capacity(solution.beliefs.len());
    for b in &solution.beliefs {
        verdicts.push((b.times[0], montrucchio_test(&b.rent, &b.price)?));
    }

    let mut path = pre_shock_rows(&exp.base, &steady, exp.pre_periods)?;
    let mut realized = solution.path;
    // label every realized row by the verdict on the beliefs held at that date
    for i in 0..realized.len() {
        let t = realized.times[i];
        let label = verdicts
            .iter()
            .rev()
            .find(|(start, _)| *start <= t)
            .map(|(_, v)| v.classification)
            .unwrap_or(Classification::Inconclusive);
        realized.regime[i] = label;
    }
    realized.surprise_dates.insert(0, 0);
    path.append(realized);
    // present value of rents is a diagnostic; skip it if the tail explodes
    if attach_fundamental_values(&mut path, TailMode::GeometricExtrapolate).is_err() {
        path.fundamental = None;
    }

    let rent0 = steady.rent(&exp.base)?;
    let price_index: Vec<f64> = path.price.iter().map(|p| p / steady.p).collect();
    let rent_index: Vec<f64> = path.rent.iter().map(|r| r / rent0).collect();
    let price_rent_index = price_index
        .iter()
        .zip(&rent_index)
        .map(|(p, r)| p / r)
        .collect();
    Ok(ShockOutcome {
        path,
        steady,
        price_index,
        rent_index,
        price_rent_index,
        verdicts,
    })
}

fn pre_shock_rows(econ: &EconomyParams, ss: &SteadyState, n: usize) -> Result<EquilibriumPath> {
    let prod = econ.tech.eval(ss.k)?;
    let label = Classification::Fundamental;
    Ok(EquilibriumPath {
        times: (0..n as i64).map(|i| i - n as i64).collect(),
        capital: vec![ss.k; n],
        zbar: vec![ss.zbar; n],
        wealth: vec![ss.w; n],
        price: vec![ss.p; n],
        rent: vec![prod.rent; n],
        rate: vec![ss.r; n],
        price_rent: vec![ss.p / prod.rent; n],
        output: vec![prod.output; n],
        fundamental: None,
        regime: vec![label; n],
        surprise_dates: Vec::new(),
        equilibrium_error: 0.0,
    })
}

/// Both boom-bust experiments with default settings.
pub fn boom_bust_pair(options: TransitionOptions) -> Result<(ShockOutcome, ShockOutcome)> {
    let lev = run_shock(&ShockExperiment::leverage().with_options(options))?;
    let prod = run_shock(&ShockExperiment::productivity().with_options(options))?;
    Ok((lev, prod))
}
