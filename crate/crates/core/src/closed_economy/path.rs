//! Solved equilibrium paths and their CSV form.

use std::fmt::Write as _;

use crate::bubble::Classification;
use crate::error::{Error, Result};
use crate::report::format_g;

pub const CSV_HEADER: &str = "t,K,zbar,W,P,rent,R,price_rent,V,regime";

/// A time path of the closed economy. All columns have the same length.
///
/// `rate[t]` is the ex-ante gross return `z̄_t F_K(K_{t+1},1)` contracted at
/// `t`. At a surprise date `s`, `rate[s-1]` was set before the news and so
/// does not match the realized `(P_s + r_s)/P_{s-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumPath {
    pub times: Vec<i64>,
    pub capital: Vec<f64>,
    pub zbar: Vec<f64>,
    pub wealth: Vec<f64>,
    pub price: Vec<f64>,
    pub rent: Vec<f64>,
    pub rate: Vec<f64>,
    pub price_rent: Vec<f64>,
    /// `F(K_t, 1)`, kept for the wealth identity.
    pub output: Vec<f64>,
    pub fundamental: Option<Vec<f64>>,
    pub regime: Vec<Classification>,
    /// Dates at which parameters changed unexpectedly.
    pub surprise_dates: Vec<i64>,
    /// Largest per-segment `Σ_t (z̄_t^new − z̄_t)²`.
    pub equilibrium_error: f64,
}

impl EquilibriumPath {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn index_of(&self, t: i64) -> Option<usize> {
        self.times.iter().position(|&s| s == t)
    }

    /// Checks `W_t = F(K_t,1) + P_t` and, away from surprise dates,
    /// `R_t = (P_{t+1} + r_{t+1})/P_t`, both to relative tolerance `tol`.
    pub fn validate_identities(&self, tol: f64) -> Result<()> {
        let n = self.len();
        let cols = [
            self.capital.len(),
            self.zbar.len(),
            self.wealth.len(),
            self.price.len(),
            self.rent.len(),
            self.rate.len(),
            self.price_rent.len(),
            self.output.len(),
            self.regime.len(),
        ];
        if cols.iter().any(|&c| c != n)
            || self.fundamental.as_ref().is_some_and(|v| v.len() != n)
        {
            return Err(Error::domain("path columns have unequal lengths"));
        }
        for i in 0..n {
            let lhs = self.wealth[i];
            let rhs = self.output[i] + self.price[i];
            if (lhs - rhs).abs() > tol * lhs.abs() {
                return Err(Error::domain(format!(
                    "wealth identity fails at t={}: {lhs} vs {rhs}",
                    self.times[i]
                )));
            }
        }
        for i in 0..n.saturating_sub(1) {
            if self.surprise_dates.contains(&self.times[i + 1]) {
                continue;
            }
            let realized = (self.price[i + 1] + self.rent[i + 1]) / self.price[i];
            if (realized - self.rate[i]).abs() > tol * self.rate[i].abs() {
                return Err(Error::domain(format!(
                    "no-arbitrage fails at t={}: R={} vs {realized}",
                    self.times[i], self.rate[i]
                )));
            }
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.len() * 160);
        out.push_str(CSV_HEADER);
        out.push('\n');
        for i in 0..self.len() {
            let v = self
                .fundamental
                .as_ref()
                .map(|v| format_g(v[i]))
                .unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                self.times[i],
                format_g(self.capital[i]),
                format_g(self.zbar[i]),
                format_g(self.wealth[i]),
                format_g(self.price[i]),
                format_g(self.rent[i]),
                format_g(self.rate[i]),
                format_g(self.price_rent[i]),
                v,
                self.regime[i],
            );
        }
        out
    }

    /// Appends `other`, whose first date must follow the last date here.
    pub(crate) fn append(&mut self, other: EquilibriumPath) {
        self.times.extend(other.times);
        self.capital.extend(other.capital);
        self.zbar.extend(other.zbar);
        self.wealth.extend(other.wealth);
        self.price.extend(other.price);
        self.rent.extend(other.rent);
        self.rate.extend(other.rate);
        self.price_rent.extend(other.price_rent);
        self.output.extend(other.output);
        self.regime.extend(other.regime);
        match (&mut self.fundamental, other.fundamental) {
            (Some(a), Some(b)) => a.extend(b),
            _ => self.fundamental = None,
        }
        self.surprise_dates.extend(other.surprise_dates);
        self.equilibrium_error = self.equilibrium_error.max(other.equilibrium_error);
    }

    /// Keeps the first `n` periods.
    pub(crate) fn truncate(&mut self, n: usize) {
        self.times.truncate(n);
        self.capital.truncate(n);
        self.zbar.truncate(n);
        self.wealth.truncate(n);
        self.price.truncate(n);
        self.rent.truncate(n);
        self.rate.truncate(n);
        self.price_rent.truncate(n);
        self.output.truncate(n);
        self.regime.truncate(n);
        if let Some(v) = &mut self.fundamental {
            v.truncate(n);
        }
    }
}
