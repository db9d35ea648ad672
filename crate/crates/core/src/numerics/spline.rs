//! Natural cubic spline through integer-time knots, used to parameterize a
//! time path by a handful of values.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SplinePath {
    pub knot_times: Vec<usize>,
    pub knot_values: Vec<f64>,
    pub horizon: usize,
    second_derivs: Vec<f64>,
}

impl SplinePath {
    /// Knot times must be strictly increasing, start at 0 and end at `horizon`.
    pub fn new(knot_times: Vec<usize>, knot_values: Vec<f64>) -> Result<Self> {
        let n = knot_times.len();
        if n < 2 || n != knot_values.len() {
            return Err(Error::param(
                "spline needs at least two knots with matching values",
            ));
        }
        if knot_times[0] != 0 || knot_times.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::param(
                "knot times must start at 0 and be strictly increasing",
            ));
        }
        let horizon = knot_times[n - 1];
        let second_derivs = natural_second_derivatives(&knot_times, &knot_values);
        Ok(SplinePath {
            knot_times,
            knot_values,
            horizon,
            second_derivs,
        })
    }

    /// Spline value at (real) time `t`; linear extrapolation is not offered,
    /// `t` is clamped to `[0, horizon]`.
    pub fn eval(&self, t: f64) -> f64 {
        let t = t.clamp(0.0, self.horizon as f64);
        let xs = &self.knot_times;
        let seg = match xs.iter().position(|&x| (x as f64) >= t) {
            Some(0) => 0,
            Some(i) => i - 1,
            None => xs.len() - 2,
        };
        let (x0, x1) = (xs[seg] as f64, xs[seg + 1] as f64);
        let h = x1 - x0;
        let a = (x1 - t) / h;
        let b = (t - x0) / h;
        let (y0, y1) = (self.knot_values[seg], self.knot_values[seg + 1]);
        let (m0, m1) = (self.second_derivs[seg], self.second_derivs[seg + 1]);
        a * y0 + b * y1 + ((a * a * a - a) * m0 + (b * b * b - b) * m1) * h * h / 6.0
    }

    /// Values at `t = 0, 1, ..., horizon`. Knot times reproduce the knot
    /// values exactly.
    pub fn sample(&self) -> Vec<f64> {
        let mut out: Vec<f64> = (0..=self.horizon).map(|t| self.eval(t as f64)).collect();
        for (&t, &v) in self.knot_times.iter().zip(&self.knot_values) {
            out[t] = v;
        }
        out
    }
}

/// Second derivatives of the natural spline (zero at both ends), by the
/// tridiagonal (Thomas) solve.
fn natural_second_derivatives(xs: &[usize], ys: &[f64]) -> Vec<f64> {
    let n = xs.len();
    let mut m = vec![0.0; n];
    if n < 3 {
        return m;
    }
    let h: Vec<f64> = xs.windows(2).map(|w| (w[1] - w[0]) as f64).collect();
    // interior unknowns m[1..n-1]
    let k = n - 2;
    let mut diag = vec![0.0; k];
    let mut upper = vec![0.0; k];
    let mut lower = vec![0.0; k];
    let mut rhs = vec![0.0; k];
    for i in 0..k {
        let j = i + 1;
        lower[i] = h[j - 1];
        diag[i] = 2.0 * (h[j - 1] + h[j]);
        upper[i] = h[j];
        rhs[i] = 6.0 * ((ys[j + 1] - ys[j]) / h[j] - (ys[j] - ys[j - 1]) / h[j - 1]);
    }
    for i in 1..k {
        let w = lower[i] / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    let mut sol = vec![0.0; k];
    sol[k - 1] = rhs[k - 1] / diag[k - 1];
    for i in (0..k - 1).rev() {
        sol[i] = (rhs[i] - upper[i] * sol[i + 1]) / diag[i];
    }
    m[1..n - 1].copy_from_slice(&sol);
    m
}
