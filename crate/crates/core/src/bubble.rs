//! Asset pricing for a rent-paying asset: Arrow-Debreu deflators, present
//! value of rents, and a finite-sample version of the summability criterion
//! (an asset has a bubble iff `Σ r_t/P_t < ∞`).

use std::fmt;

use crate::closed_economy::EquilibriumPath;
use crate::error::{Error, Result};

pub const DEFAULT_MARGIN: f64 = 0.02;
pub const MIN_SERIES_LEN: usize = 20;
/// Periods used to estimate terminal growth for the geometric tail.
pub const TAIL_WINDOW: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    Fundamental,
    Bubbly,
    Inconclusive,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::Fundamental => "fundamental",
            Classification::Bubbly => "bubbly",
            Classification::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Zero-coupon bond prices `q_t = 1/Π_{s<t} R_s`, `q_0 = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeflatorSeries {
    pub q: Vec<f64>,
}

pub fn deflators(rates: &[f64]) -> Result<DeflatorSeries> {
    let mut q = Vec::with_capacity(rates.len() + 1);
    q.push(1.0);
    for (t, &r) in rates.iter().enumerate() {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::domain(format!("gross rate at t={t} is {r}")));
        }
        q.push(q[t] / r);
    }
    Ok(DeflatorSeries { q })
}

/// How the infinite sum beyond the last observation is handled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailMode {
    /// Drop it; gives a lower bound.
    Truncate,
    /// Assume rents and rates keep their average growth over the last
    /// [`TAIL_WINDOW`] periods forever.
    GeometricExtrapolate,
}

/// `V_t = (1/q_t) Σ_{s≥1} q_{t+s} r_{t+s}` for every observed `t`.
///
/// `rates[t]` is the gross return from `t` to `t+1`; at least
/// `rents.len() − 1` rates are needed.
pub fn fundamental_values(rents: &[f64], rates: &[f64], mode: TailMode) -> Result<Vec<f64>> {
    let n = rents.len();
    if n == 0 {
        return Err(Error::SeriesTooShort { len: 0, min: 1 });
    }
    if rates.len() + 1 < n {
        return Err(Error::SeriesTooShort {
            len: rates.len(),
            min: n - 1,
        });
    }
    let last = n - 1;
    for (t, &r) in rates[..last].iter().enumerate() {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::domain(format!("gross rate at t={t} is {r}")));
        }
    }
    let mut v = vec![0.0; n];
    v[last] = match mode {
        TailMode::Truncate => 0.0,
        TailMode::GeometricExtrapolate => {
            if last < TAIL_WINDOW {
                return Err(Error::SeriesTooShort {
                    len: n,
                    min: TAIL_WINDOW + 1,
                });
            }
            let w = TAIL_WINDOW as f64;
            let growth = (rents[last] / rents[last - TAIL_WINDOW]).powf(1.0 / w);
            let window = &rates[last - TAIL_WINDOW..last];
            let rate = (window.iter().map(|r| r.ln()).sum::<f64>() / w).exp();
            if rents[last] == 0.0 {
                0.0
            } else {
                if !(growth < rate) {
                    return Err(Error::TailNotSummable { growth, rate });
                }
                let x = growth / rate;
                rents[last] * x / (1.0 - x)
            }
        }
    };
    for t in (0..last).rev() {
        v[t] = (rents[t + 1] + v[t + 1]) / rates[t];
    }
    Ok(v)
}

pub fn fundamental_value(rents: &[f64], rates: &[f64], t: usize, mode: TailMode) -> Result<f64> {
    if t >= rents.len() {
        return Err(Error::param(format!(
            "date {t} beyond a series of length {}",
            rents.len()
        )));
    }
    Ok(fundamental_values(rents, rates, mode)?[t])
}

/// Fills the `V` column of a path from its own rents and rates.
pub fn attach_fundamental_values(path: &mut EquilibriumPath, mode: TailMode) -> Result<()> {
    path.fundamental = Some(fundamental_values(&path.rent, &path.rate, mode)?);
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct BubbleVerdict {
    pub classification: Classification,
    /// `Σ_{s=1}^t r_s/P_s`.
    pub partial_sums: Vec<f64>,
    /// `exp` of the OLS slope of `log(r_t/P_t)` over the final half.
    pub fitted_ratio: f64,
    /// `Π_{t≥1} (1 + r_t/P_t)^{-1}`, which equals `q_T P_T / P_0` along a
    /// no-arbitrage path. Bounded away from zero iff there is a bubble.
    pub tvc_estimate: f64,
    /// All rents are zero: trivially summable.
    pub degenerate: bool,
}

pub fn montrucchio_test(rents: &[f64], prices: &[f64]) -> Result<BubbleVerdict> {
    montrucchio_test_with_margin(rents, prices, DEFAULT_MARGIN)
}

/// Bubbly if the fitted ratio of consecutive terms is below `1 − margin`;
/// Fundamental if it is within `margin` of 1, terms stay positive and the
/// partial sums show no saturation (the last quarter adds at least half as
/// much as the quarter before); Inconclusive otherwise.
pub fn montrucchio_test_with_margin(
    rents: &[f64],
    prices: &[f64],
    margin: f64,
) -> Result<BubbleVerdict> {
    let n = prices.len();
    if n < MIN_SERIES_LEN {
        return Err(Error::SeriesTooShort {
            len: n,
            min: MIN_SERIES_LEN,
        });
    }
    if rents.len() != n {
        return Err(Error::param("rent and price series differ in length"));
    }
    if !(margin > 0.0 && margin < 1.0) {
        return Err(Error::param(format!("margin must be in (0,1), got {margin}")));
    }
    for t in 0..n {
        if !(prices[t] > 0.0) || !prices[t].is_finite() {
            return Err(Error::domain(format!("price at t={t} is {}", prices[t])));
        }
        if !(rents[t] >= 0.0) || !rents[t].is_finite() {
            return Err(Error::domain(format!("rent at t={t} is {}", rents[t])));
        }
    }

    let terms: Vec<f64> = rents.iter().zip(prices).map(|(r, p)| r / p).collect();
    let mut partial_sums = Vec::with_capacity(n);
    let mut acc = 0.0;
    let mut log_tvc = 0.0;
    for (t, &d) in terms.iter().enumerate() {
        if t >= 1 {
            acc += d;
            log_tvc -= d.ln_1p();
        }
        partial_sums.push(acc);
    }
    let tvc_estimate = log_tvc.exp();

    if terms.iter().all(|&d| d == 0.0) {
        return Ok(BubbleVerdict {
            classification: Classification::Bubbly,
            partial_sums,
            fitted_ratio: 0.0,
            tvc_estimate,
            degenerate: true,
        });
    }

    let half = n / 2;
    let tail: Vec<(f64, f64)> = (half..n)
        .filter(|&t| terms[t] > 0.0)
        .map(|t| (t as f64, terms[t].ln()))
        .collect();
    let fitted_ratio = if tail.len() >= 2 {
        ols_slope(&tail).exp()
    } else {
        0.0
    };

    let q = n / 4;
    let inc_last = partial_sums[n - 1] - partial_sums[n - 1 - q];
    let inc_prev = partial_sums[n - 1 - q] - partial_sums[n - 1 - 2 * q];
    let bounded_below = terms[half..].iter().all(|&d| d > 0.0);
    let saturating = !(inc_last > 0.5 * inc_prev);

    let classification = if fitted_ratio < 1.0 - margin {
        Classification::Bubbly
    } else if (fitted_ratio - 1.0).abs() <= margin && bounded_below && !saturating {
        Classification::Fundamental
    } else {
        Classification::Inconclusive
    };
    Ok(BubbleVerdict {
        classification,
        partial_sums,
        fitted_ratio,
        tvc_estimate,
        degenerate: false,
    })
}

fn ols_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}
