use proptest::prelude::*;

use landbubble::bubble::{fundamental_values, montrucchio_test, Classification, TailMode};
use landbubble::closed_economy::{solve_growth_rate, solve_transition, Schedule};
use landbubble::economy::{leverage_threshold, EconomyParams, Productivity, Regime, Technology};
use landbubble::numerics::{default_rule, find_root, hill_estimator, Bracket, SplinePath};
use landbubble::open_economy::{psi, solve_trend_stationary};
use landbubble::wealth::{growth_shock, rho_of_zeta, WealthProcessSpec};

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn ces(a: f64, alpha: f64, rho: f64, delta: f64) -> Technology {
    Technology::Ces { a, alpha, rho, delta }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn root_stays_in_bracket(c in -5.0f64..5.0, lo in -10.0f64..-5.0, hi in 5.0f64..10.0) {
        let mut f = |x: f64| x.powi(3) + x - c;
        let b = Bracket::new(&mut f, lo, hi).unwrap();
        let x = find_root(&mut f, b, 1e-14).unwrap();
        prop_assert!(x >= lo && x <= hi);
        prop_assert!(f(x).abs() < 1e-9);
    }

    #[test]
    fn spline_hits_knots(values in prop::collection::vec(0.1f64..5.0, 4..12)) {
        let n = values.len();
        let times: Vec<usize> = (0..n).map(|i| i * i + i).collect();
        let s = SplinePath::new(times.clone(), values.clone()).unwrap();
        for (t, v) in times.iter().zip(&values) {
            prop_assert!((s.eval(*t as f64) - v).abs() < 1e-12);
        }
        // continuity: no jumps between knots
        let end = *times.last().unwrap() as f64;
        let mut t = 0.0;
        while t + 1e-7 < end {
            prop_assert!((s.eval(t + 1e-7) - s.eval(t)).abs() < 1e-4);
            t += 0.37;
        }
    }

    #[test]
    fn hill_is_scale_invariant(scale in 1e-3f64..1e3, seed in 0u64..1000) {
        let mut x = seed as f64 + 0.5;
        let samples: Vec<f64> = (0..2000)
            .map(|_| {
                x = (x * 9301.0 + 49297.0) % 233280.0;
                (1.0 - x / 233280.0).powf(-0.5)
            })
            .collect();
        let scaled: Vec<f64> = samples.iter().map(|s| s * scale).collect();
        let a = hill_estimator(&samples, 0.05).unwrap();
        let b = hill_estimator(&scaled, 0.05).unwrap();
        prop_assert!(rel(b, a) < 1e-12);
    }

    #[test]
    fn euler_identity_and_concavity(
        a in 0.5f64..2.0,
        alpha in 0.1f64..0.9,
        rho in 0.2f64..3.0,
        delta in 0.0f64..0.5,
        k in 0.01f64..1e3,
    ) {
        let tech = ces(a, alpha, rho, delta);
        let p = tech.eval(k).unwrap();
        prop_assert!(rel(k * p.mpk + p.rent, p.output) < 1e-10);
        let q = tech.eval(1.5 * k).unwrap();
        prop_assert!(q.mpk <= p.mpk);
    }

    #[test]
    fn partial_expectation_decreasing(gamma in 0.3f64..6.0, z in 0.0f64..5.0, dz in 0.001f64..1.0) {
        let d = Productivity::exponential(gamma);
        prop_assert!(d.partial_expectation(z + dz) < d.partial_expectation(z));
        // midpoint rule on z φ(z), truncated far in the tail
        let (n, top) = (200_000, z + 60.0 / gamma);
        let h = (top - z) / n as f64;
        let direct: f64 = (0..n).map(|i| { let x = z + (i as f64 + 0.5) * h; x * d.pdf(x) * h }).sum();
        prop_assert!((direct - d.partial_expectation(z)).abs() < 1e-8);
    }

    #[test]
    fn threshold_comparative_statics(beta in 0.5f64..0.98, m in 0.3f64..2.0, gamma in 0.5f64..5.0) {
        let e = EconomyParams {
            beta,
            lambda: 1.0,
            tech: Technology::TwoSectorLinear { m, d: 1.0 },
            dist: Productivity::exponential(gamma),
            upsilon: None,
        };
        let lb = leverage_threshold(&e).unwrap();
        let more_patient = EconomyParams { beta: beta + 0.01, ..e };
        let more_productive = e.with_tech(Technology::TwoSectorLinear { m: m * 1.05, d: 1.0 });
        let better_draws = e.with_dist(Productivity::exponential(gamma * 0.95));
        prop_assert!(leverage_threshold(&more_patient).unwrap() <= lb);
        prop_assert!(leverage_threshold(&more_productive).unwrap() <= lb);
        prop_assert!(leverage_threshold(&better_draws).unwrap() <= lb);
    }

    #[test]
    fn psi_branches_monotone(m in 0.6f64..1.5, gamma in 1.0f64..4.0, r in 1.0f64..1.05) {
        let e = EconomyParams::baseline_open()
            .with_tech(Technology::TwoSectorLinear { m, d: 1.0 })
            .with_dist(Productivity::exponential(gamma));
        let r2 = r + 1e-3;
        prop_assert!(psi(&e, r2, Regime::Fundamental).unwrap() > psi(&e, r, Regime::Fundamental).unwrap());
        prop_assert!(psi(&e, r2, Regime::Bubbly).unwrap() < psi(&e, r, Regime::Bubbly).unwrap());
    }

    #[test]
    fn trend_stationary_identities(lambda in 1.0f64..3.0, k0 in 0.1f64..10.0, d in 0.1f64..10.0) {
        let e = EconomyParams::baseline_open().with_lambda(lambda);
        let lb = leverage_threshold(&e).unwrap();
        prop_assume!((lambda - lb).abs() > 1e-6);
        let eq = solve_trend_stationary(&e, k0, d).unwrap();
        prop_assert!(eq.residual.abs() <= 1e-10);
        prop_assert!(eq.r > 1.0);
        prop_assert_eq!(eq.regime == Regime::Bubbly, lambda > lb);
        if eq.regime == Regime::Bubbly {
            prop_assert!(rel(eq.initial_wealth().unwrap(), eq.m * k0 / (1.0 - eq.alpha_coef)) < 1e-14);
            let v = eq.fundamental_value();
            for t in 0..100u32 {
                let p = eq.price_at(t);
                let next = eq.price_at(t + 1);
                prop_assert!(rel((next + d) / eq.r, p) <= 1e-12);
                prop_assert!(rel((next - v) / (p - v), eq.r) <= 1e-10);
            }
        }
    }

    #[test]
    fn multipliers_positive_and_mean_one(lambda in 1.0f64..3.0, z in 0.0f64..20.0) {
        let e = EconomyParams::baseline_open().with_lambda(lambda);
        prop_assume!((lambda - leverage_threshold(&e).unwrap()).abs() > 1e-6);
        let spec = WealthProcessSpec::from_economy(&e).unwrap();
        let c = spec.reinvestment_rate();
        let g = growth_shock(&spec, z).unwrap();
        prop_assert!(g >= -1.0);
        prop_assert!(1.0 + c * g >= 1.0 - c - 1e-15);
        // E[g] = 0: the mass below the cutoff has g = -1, the rest is the tail integral
        let cut = spec.r / spec.m;
        let rule = default_rule();
        let tail = spec.dist.tail_expectation(cut, |z| growth_shock(&spec, z).unwrap() + 1.0, rule);
        prop_assert!((tail - 1.0).abs() < 1e-10);
    }

    #[test]
    fn rho_convex(lambda in 1.0f64..3.0, zeta in 0.0f64..6.0) {
        let e = EconomyParams::baseline_open().with_lambda(lambda);
        prop_assume!((lambda - leverage_threshold(&e).unwrap()).abs() > 1e-6);
        let spec = WealthProcessSpec::from_economy(&e).unwrap();
        let h = 0.05;
        let a = rho_of_zeta(&spec, zeta).unwrap();
        let b = rho_of_zeta(&spec, zeta + h).unwrap();
        let c = rho_of_zeta(&spec, zeta + 2.0 * h).unwrap();
        prop_assert!(a - 2.0 * b + c >= -1e-12);
    }

    #[test]
    fn constant_rent_rate_series(r in 1.03f64..1.2, bubble in prop_oneof![Just(0.0), 0.5f64..5.0]) {
        // P_t = D/(R-1) + b R^t is a no-arbitrage price for rent D = 1; rates
        // below 1.02 sit inside the classification margin
        let n: usize = 3000;
        let v0 = 1.0 / (r - 1.0);
        let prices: Vec<f64> = (0..n).map(|t| v0 + bubble * r.powi(t as i32)).collect();
        let rents = vec![1.0; n];
        let verdict = montrucchio_test(&rents, &prices).unwrap();
        let vs = fundamental_values(&rents, &vec![r; n], TailMode::GeometricExtrapolate).unwrap();
        prop_assert!(rel(vs[0], v0) < 1e-9);
        if bubble == 0.0 {
            prop_assert_eq!(verdict.classification, Classification::Fundamental);
            prop_assert!(verdict.tvc_estimate < 1e-6);
        } else {
            prop_assert_eq!(verdict.classification, Classification::Bubbly);
            // q_T P_T / P_0 tends to b / P_0
            prop_assert!(rel(verdict.tvc_estimate, bubble / prices[0]) < 1e-6);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 8, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn solved_paths_satisfy_identities(lambda in 1.0f64..1.5, k_scale in 0.5f64..1.5) {
        let e = EconomyParams::baseline().with_lambda(lambda);
        let ss = landbubble::closed_economy::solve_steady_state(&e).unwrap();
        let path = solve_transition(&Schedule::constant(e), k_scale * ss.k, 150, 10).unwrap();
        path.validate_identities(1e-8).unwrap();
        for t in 0..path.len() - 1 {
            let mpk = e.tech.eval(path.capital[t + 1]).unwrap().mpk;
            prop_assert!(rel(path.zbar[t] * mpk, path.rate[t]) < 1e-8);
        }
    }

    #[test]
    fn bubbly_paths_grow_at_g(lambda in 1.8f64..3.0) {
        let e = EconomyParams::baseline().with_lambda(lambda);
        let g = solve_growth_rate(&e).unwrap().g;
        let path = solve_transition(&Schedule::constant(e), 1.0, 400, 10).unwrap();
        let n = path.len();
        let gap = |t: usize| rel(path.capital[t + 1] / path.capital[t], g);
        prop_assert!(gap(n / 2) < gap(n / 4) && gap(n - 2) < gap(n / 2));
        prop_assert!(gap(n - 2) < 1e-3);
        prop_assert!(rel(path.zbar[n - 1], g / e.m()) < 1e-4);
    }

    #[test]
    fn rent_growth_bound_below_unit_elasticity(lambda in 2.0f64..3.0) {
        // CES with rho < 1: rent grows no faster than G^rho_bar for rho_bar in (rho, 1)
        let rho = 0.8;
        let e = EconomyParams::baseline().with_lambda(lambda).with_tech(ces(1.0, 0.5, rho, 0.08));
        let lb = leverage_threshold(&e).unwrap();
        prop_assume!(lambda > lb + 0.05);
        let g = solve_growth_rate(&e).unwrap().g;
        let path = solve_transition(&Schedule::constant(e), 1.0, 240, 10).unwrap();
        let n = path.len();
        let start = 2 * n / 3;
        let xs: Vec<f64> = (start..n).map(|t| t as f64).collect();
        let ys: Vec<f64> = path.rent[start..].iter().map(|r| r.ln()).collect();
        let (mx, my) = (xs.iter().sum::<f64>() / xs.len() as f64, ys.iter().sum::<f64>() / ys.len() as f64);
        let slope = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>()
            / xs.iter().map(|x| (x - mx).powi(2)).sum::<f64>();
        let rho_bar = 0.5 * (rho + 1.0);
        prop_assert!(slope <= rho_bar * g.ln(), "slope {slope} vs {}", rho_bar * g.ln());
    }
}

#[test]
fn rho_endpoints_and_growth() {
    for lambda in [1.0, 2.0] {
        let spec = WealthProcessSpec::from_economy(&EconomyParams::baseline_open().with_lambda(lambda)).unwrap();
        assert!((rho_of_zeta(&spec, 0.0).unwrap() - 0.975).abs() < 1e-12);
        assert!((rho_of_zeta(&spec, 1.0).unwrap() - 0.975).abs() < 1e-12);
        assert!(rho_of_zeta(&spec, 40.0).unwrap() > 1e3);
    }
}
