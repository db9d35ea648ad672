//! Gauss-Laguerre quadrature for integrals of the form `∫₀^∞ f(x) e^{-x} dx`.
//!
//! Nodes are the zeros of the Laguerre polynomial `L_n`, found by Newton
//! iteration from asymptotic initial guesses; weights follow from `L_n'` and
//! `L_{n-1}` at each node.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Order used by every model integral in the crate.
pub const DEFAULT_ORDER: usize = 15;
pub const MAX_ORDER: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub order: usize,
}

impl QuadratureRule {
    /// `Σ w_i f(x_i)`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// The shared 15-point rule, computed on first use.
pub fn default_rule() -> &'static QuadratureRule {
    static RULE: OnceLock<QuadratureRule> = OnceLock::new();
    RULE.get_or_init(|| gauss_laguerre(DEFAULT_ORDER).expect("15-point rule is supported"))
}

/// Builds the `order`-point rule for weight `e^{-x}` on `(0, ∞)`.
pub fn gauss_laguerre(order: usize) -> Result<QuadratureRule> {
    if order == 0 || order > MAX_ORDER {
        return Err(Error::UnsupportedOrder(order));
    }
    let n = order;
    let nf = n as f64;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let mut z = 0.0_f64;

    for i in 0..n {
        z = match i {
            0 => 3.0 / (1.0 + 2.4 * nf),
            1 => z + 15.0 / (1.0 + 2.5 * nf),
            _ => {
                let ai = (i - 1) as f64;
                z + (1.0 + 2.55 * ai) / (1.9 * ai) * (z - nodes[i - 2])
            }
        };
        let mut converged = false;
        let mut deriv = 0.0;
        let mut prev = 0.0;
        for _ in 0..100 {
            let (p1, p2) = laguerre_pair(n, z);
            deriv = nf * (p1 - p2) / z;
            prev = p2;
            let z1 = z;
            z = z1 - p1 / deriv;
            if (z - z1).abs() <= 1e-12 * z.abs() {
                // quadratic convergence: one more step reaches round-off
                let (p1, p2) = laguerre_pair(n, z);
                let d = nf * (p1 - p2) / z;
                if d.is_finite() && d != 0.0 {
                    z -= p1 / d;
                }
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NoConvergence {
                what: "gauss_laguerre node",
                iterations: 100,
                last_error: z,
            });
        }
        // refresh L_n', L_{n-1} at the converged node
        let (p1, p2) = laguerre_pair(n, z);
        if p1.is_finite() {
            deriv = nf * (p1 - p2) / z;
            prev = p2;
        }
        nodes[i] = z;
        weights[i] = -1.0 / (deriv * nf * prev);
    }
    Ok(QuadratureRule {
        nodes,
        weights,
        order,
    })
}

/// `(L_n(z), L_{n-1}(z))` by the three-term recurrence.
fn laguerre_pair(n: usize, z: f64) -> (f64, f64) {
    let mut p1 = 1.0;
    let mut p2 = 0.0;
    for j in 1..=n {
        let p3 = p2;
        p2 = p1;
        let jf = j as f64;
        p1 = ((2.0 * jf - 1.0 - z) * p2 - (jf - 1.0) * p3) / jf;
    }
    (p1, p2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(k: u32) -> f64 {
        (1..=k).map(f64::from).product()
    }

    #[test]
    fn normalization_and_first_moment() {
        let q = gauss_laguerre(15).unwrap();
        assert!((q.integrate(|_| 1.0) - 1.0).abs() < 1e-12);
        assert!((q.integrate(|x| x) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fourteenth_moment() {
        let q = gauss_laguerre(15).unwrap();
        let v = q.integrate(|x| x.powi(14));
        assert!((v / factorial(14) - 1.0).abs() < 1e-8);
    }

    #[test]
    fn nodes_sorted_positive_weights() {
        for n in [1, 2, 5, 15, 30, 60] {
            let q = gauss_laguerre(n).unwrap();
            assert!(q.nodes.windows(2).all(|w| w[0] < w[1]), "order {n}");
            assert!(q.nodes[0] > 0.0);
            assert!(q.weights.iter().all(|&w| w > 0.0), "order {n}");
        }
    }

    #[test]
    fn exact_up_to_degree_2n_minus_1() {
        for n in [1usize, 3, 8, 20] {
            let q = gauss_laguerre(n).unwrap();
            for k in 0..(2 * n as u32) {
                let v = q.integrate(|x| x.powi(k as i32));
                assert!((v / factorial(k) - 1.0).abs() < 1e-9, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn one_point_rule() {
        let q = gauss_laguerre(1).unwrap();
        assert_eq!(q.nodes.len(), 1);
        assert!((q.nodes[0] - 1.0).abs() < 1e-14);
        assert!((q.weights[0] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn unsupported_orders() {
        assert!(matches!(gauss_laguerre(0), Err(Error::UnsupportedOrder(0))));
        assert!(gauss_laguerre(MAX_ORDER + 1).is_err());
    }
}
