//! One function per subcommand. Each returns the files to write and a short
//! summary for the terminal; nothing touches the disk here.

use std::fmt::Write as _;
use std::path::Path;

use landbubble::bubble::{fundamental_values, montrucchio_test, TailMode};
use landbubble::closed_economy::{
    saddle_eigenvalues, solve_growth_rate, solve_steady_state, solve_transition_with,
    EquilibriumPath, Schedule, TransitionOptions,
};
use landbubble::economy::{leverage_threshold, Productivity, Regime};
use landbubble::experiments::{phase_diagram, run_shock, ShockExperiment, ShockOutcome};
use landbubble::open_economy::{rate_curve, solve_trend_stationary};
use landbubble::report::format_g;
use landbubble::wealth::{simulate_wealth_panel, solve_pareto_exponent, WealthProcessSpec};

use crate::config::RunConfig;
use crate::CliError;

/// Relative tolerance for the path identities checked before writing.
const IDENTITY_TOL: f64 = 1e-9;
const DEFAULT_LAMBDA_GRID: &str = "1:0.1:3";

pub struct Outcome {
    pub files: Vec<(String, String)>,
    pub summary: String,
}

fn row(values: &[f64]) -> String {
    values.iter().map(|&v| format_g(v)).collect::<Vec<_>>().join(",")
}

fn transition_options(cfg: &RunConfig) -> Result<TransitionOptions, CliError> {
    Ok(TransitionOptions {
        horizon: cfg.usize_or("horizon.T", TransitionOptions::default().horizon)?,
        knots: cfg.usize_or("knots.J", TransitionOptions::default().knots)?,
        ..TransitionOptions::default()
    })
}

fn checked_csv(path: &EquilibriumPath) -> Result<String, CliError> {
    path.validate_identities(IDENTITY_TOL)?;
    Ok(path.to_csv())
}

pub fn phase(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let econ = cfg.economy(false)?;
    let inv_rho = cfg.grid_or("grid.inv_rho", "0.25:0.25:4")?;
    let lambdas = cfg.grid_or("grid.lambda", DEFAULT_LAMBDA_GRID)?;
    let d = phase_diagram(&econ, &inv_rho, &lambdas)?;
    let mut boundary = String::from("inv_rho,lambda_bar\n");
    for &(x, lb) in &d.boundary {
        writeln!(boundary, "{}", row(&[x, lb])).unwrap();
    }
    let mut regimes = String::from("inv_rho,lambda,regime\n");
    for &(x, l, r) in &d.regimes {
        writeln!(regimes, "{},{r}", row(&[x, l])).unwrap();
    }
    Ok(Outcome {
        summary: format!("phase boundary at {} elasticities", d.boundary.len()),
        files: vec![("phase.csv".into(), boundary), ("phase_regimes.csv".into(), regimes)],
    })
}

pub fn steady(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let econ = cfg.economy(false)?;
    let ss = solve_steady_state(&econ)?;
    let rent = ss.rent(&econ)?;
    let csv = format!(
        "K,zbar,W,P,rent,R,residual_K,residual_zbar,lambda_bar\n{}\n",
        row(&[
            ss.k,
            ss.zbar,
            ss.w,
            ss.p,
            rent,
            ss.r,
            ss.residuals.0,
            ss.residuals.1,
            leverage_threshold(&econ)?,
        ])
    );
    Ok(Outcome {
        summary: format!("steady state K = {}, zbar = {}", format_g(ss.k), format_g(ss.zbar)),
        files: vec![("steady.csv".into(), csv)],
    })
}

pub fn growth(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let econ = cfg.economy(false)?;
    let lambdas = cfg.grid_or("grid.lambda", DEFAULT_LAMBDA_GRID)?;
    let mut csv = String::from("lambda,G,zbar,regime,eig_stable,eig_unstable\n");
    for &l in &lambdas {
        let e = econ.with_lambda(l);
        let g = solve_growth_rate(&e)?;
        let regime = if g.is_bubbly() { Regime::Bubbly } else { Regime::Fundamental };
        let eig = if g.is_bubbly() {
            let (a, b) = saddle_eigenvalues(&e, &g)?;
            row(&[a, b])
        } else {
            ",".into()
        };
        writeln!(csv, "{},{regime},{eig}", row(&[l, g.g, g.v])).unwrap();
    }
    Ok(Outcome {
        summary: format!("growth rates at {} leverage values", lambdas.len()),
        files: vec![("growth.csv".into(), csv)],
    })
}

pub fn transition(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let econ = cfg.economy(false)?;
    let opts = transition_options(cfg)?;
    let k0 = match cfg.f64("init.K")? {
        Some(k) => k,
        None if econ.lambda < leverage_threshold(&econ)? => 0.8 * solve_steady_state(&econ)?.k,
        None => 1.0,
    };
    let path = solve_transition_with(&Schedule::constant(econ), k0, &opts)?;
    let csv = checked_csv(&path)?;
    Ok(Outcome {
        summary: format!(
            "transition over {} periods, equilibrium error {:e}",
            path.len(),
            path.equilibrium_error
        ),
        files: vec![("transition.csv".into(), csv)],
    })
}

fn shock_files(name: &str, out: &ShockOutcome) -> Result<Vec<(String, String)>, CliError> {
    Ok(vec![
        (format!("fig2_{name}.csv"), out.index_csv()),
        (format!("fig2_{name}_levels.csv"), checked_csv(&out.path)?),
    ])
}

pub fn fig2(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let base = cfg.economy(false)?;
    let options = transition_options(cfg)?;
    let duration = cfg.usize_or("shock.duration", 10)?;
    let template = ShockExperiment {
        base,
        shocked: base,
        duration,
        options,
        pre_periods: 5,
    };
    let lev = ShockExperiment {
        shocked: base.with_lambda(cfg.f64_or("shock.lambda", 2.0)?),
        ..template
    };
    let gamma = cfg.f64_or("shock.gamma", -(0.15_f64).ln())?;
    let prod = ShockExperiment {
        shocked: base.with_dist(Productivity::exponential(gamma)),
        ..template
    };
    let lev = run_shock(&lev)?;
    let prod = run_shock(&prod)?;
    let mut files = shock_files("leverage", &lev)?;
    files.extend(shock_files("productivity", &prod)?);
    let dip = |o: &ShockOutcome| o.at(0).map(|v| v.0).unwrap_or(f64::NAN);
    Ok(Outcome {
        summary: format!(
            "price at the shock date relative to before: leverage {}, productivity {}",
            format_g(dip(&lev)),
            format_g(dip(&prod))
        ),
        files,
    })
}

pub fn trend(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let econ = cfg.economy(true)?;
    let k0 = cfg.f64_or("open.K0", 1.0)?;
    let d = match econ.tech {
        landbubble::economy::Technology::TwoSectorLinear { d, .. } => d,
        _ => return Err(CliError::Config("trend needs tech.kind = linear".into())),
    };
    let eq = solve_trend_stationary(&econ, k0, d)?;
    let mut summary_csv = String::from(
        "lambda,regime,R,G,zbar,alpha,B,bubble_coef,fundamental_level,residual\n",
    );
    writeln!(
        summary_csv,
        "{},{},{}",
        format_g(econ.lambda),
        eq.regime,
        row(&[
            eq.r,
            eq.g,
            eq.zbar,
            eq.alpha_coef,
            eq.external_savings,
            eq.bubble_coef,
            eq.fundamental_level,
            eq.residual,
        ])
    )
    .unwrap();
    let len = cfg.usize_or("horizon.T", 200)?;
    let mut path = String::from("t,P,V,bubble\n");
    let v = eq.fundamental_value();
    for t in 0..len {
        let p = eq.price_at(t as u32);
        writeln!(path, "{t},{}", row(&[p, v, p - v])).unwrap();
    }
    Ok(Outcome {
        summary: format!("{} equilibrium with R = {}", eq.regime, format_g(eq.r)),
        files: vec![("trend.csv".into(), summary_csv), ("trend_path.csv".into(), path)],
    })
}

pub fn rates(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let econ = cfg.economy(true)?;
    let lambdas = cfg.grid_or("grid.lambda", DEFAULT_LAMBDA_GRID)?;
    let pts = rate_curve(&econ, &lambdas, 1.0, 1.0)?;
    let mut csv = String::from("lambda,R,G,regime\n");
    for p in &pts {
        writeln!(csv, "{},{}", row(&[p.lambda, p.r, p.g]), p.regime).unwrap();
    }
    Ok(Outcome {
        summary: format!("lambda_bar = {}", format_g(leverage_threshold(&econ)?)),
        files: vec![("rates.csv".into(), csv)],
    })
}

pub fn pareto(cfg: &RunConfig, seed: u64) -> Result<Outcome, CliError> {
    let econ = cfg.economy(true)?;
    let lambdas = cfg.grid_or("grid.lambda", DEFAULT_LAMBDA_GRID)?;
    let mc = cfg.contains("mc.N");
    let n = cfg.usize_or("mc.N", 10_000)?;
    let t = cfg.usize_or("mc.T", 1000)?;
    let mut csv = String::from(if mc {
        "lambda,regime,R,zeta,hill,ci_lo,ci_hi\n"
    } else {
        "lambda,regime,R,zeta\n"
    });
    for &l in &lambdas {
        let e = econ.with_lambda(l);
        let spec = WealthProcessSpec::from_economy(&e)?;
        let sol = solve_pareto_exponent(&spec)?;
        write!(csv, "{},{},{}", format_g(l), sol.regime, row(&[sol.r, sol.zeta])).unwrap();
        if mc {
            let panel = simulate_wealth_panel(&spec, n, t, seed)?;
            match panel.hill {
                Some(h) => {
                    let (lo, hi) = h.confidence_interval(1.96);
                    write!(csv, ",{}", row(&[h.zeta, lo, hi])).unwrap();
                }
                None => csv.push_str(",,,"),
            }
        }
        csv.push('\n');
    }
    Ok(Outcome {
        summary: format!("Pareto exponents at {} leverage values", lambdas.len()),
        files: vec![("pareto.csv".into(), csv)],
    })
}

pub fn simulate(cfg: &RunConfig, seed: u64) -> Result<Outcome, CliError> {
    let econ = cfg.economy(true)?;
    let spec = WealthProcessSpec::from_economy(&econ)?;
    let n = cfg.usize_or("mc.N", 10_000)?;
    let t = cfg.usize_or("mc.T", 1000)?;
    let panel = simulate_wealth_panel(&spec, n, t, seed)?;
    let mut csv = String::with_capacity(16 * n + 8);
    csv.push_str("wealth\n");
    for s in &panel.samples {
        csv.push_str(&format_g(*s));
        csv.push('\n');
    }
    let zeta = solve_pareto_exponent(&spec)?.zeta;
    let summary = match panel.hill {
        Some(h) => format!(
            "{n} households after {t} periods: Hill {} (top {}), theory {}",
            format_g(h.zeta),
            h.k,
            format_g(zeta)
        ),
        None => format!("{n} households after {t} periods: no tail spread, theory {}", format_g(zeta)),
    };
    Ok(Outcome {
        summary,
        files: vec![("simulate.csv".into(), csv)],
    })
}

struct Series {
    rent: Vec<f64>,
    price: Vec<f64>,
    rate: Option<Vec<f64>>,
}

fn read_series(path: &Path) -> Result<Series, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let bad = |line: usize, why: &str| CliError::Config(format!("{}:{line}: {why}", path.display()));
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or_else(|| bad(1, "empty file"))?;
    let cols: Vec<&str> = header.split(',').map(str::trim).collect();
    let find = |name: &str| cols.iter().position(|c| *c == name);
    let (Some(_), Some(ir), Some(ip)) = (find("t"), find("rent"), find("price")) else {
        return Err(bad(1, "header needs columns t, rent, price"));
    };
    let irate = find("rate");
    let mut s = Series {
        rent: Vec::new(),
        price: Vec::new(),
        rate: irate.map(|_| Vec::new()),
    };
    for (i, line) in lines {
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != cols.len() {
            return Err(bad(i + 1, "wrong number of fields"));
        }
        let num = |j: usize| {
            fields[j]
                .parse::<f64>()
                .map_err(|_| bad(i + 1, &format!("'{}' is not a number", fields[j])))
        };
        s.rent.push(num(ir)?);
        s.price.push(num(ip)?);
        if let (Some(j), Some(r)) = (irate, s.rate.as_mut()) {
            r.push(num(j)?);
        }
    }
    Ok(s)
}

pub fn bubbletest(input: &Path) -> Result<Outcome, CliError> {
    let s = read_series(input)?;
    let v = montrucchio_test(&s.rent, &s.price)?;
    let n = s.price.len();
    let mut header = String::from("n,classification,fitted_ratio,tvc_estimate,partial_sum,degenerate");
    let mut line = format!(
        "{n},{},{},{}",
        v.classification,
        row(&[v.fitted_ratio, v.tvc_estimate, *v.partial_sums.last().unwrap_or(&0.0)]),
        v.degenerate
    );
    let mut summary = format!(
        "{}: terms r/P shrink by a factor {} per period; sum of the first {} terms is {}",
        v.classification,
        format_g(v.fitted_ratio),
        v.partial_sums.len(),
        format_g(*v.partial_sums.last().unwrap_or(&0.0))
    );
    if let Some(rates) = &s.rate {
        header.push_str(",V0,P0_minus_V0");
        // rate[t] is the return from t to t+1; the last one is not used
        match fundamental_values(&s.rent, rates, TailMode::GeometricExtrapolate) {
            Ok(vs) => {
                write!(line, ",{}", row(&[vs[0], s.price[0] - vs[0]])).unwrap();
                write!(summary, "; V_0 = {}, P_0 - V_0 = {}", format_g(vs[0]), format_g(s.price[0] - vs[0])).unwrap();
            }
            Err(landbubble::Error::TailNotSummable { .. }) => {
                line.push_str(",inf,-inf");
                summary.push_str("; present value of rents diverges");
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Outcome {
        summary,
        files: vec![("bubbletest.csv".into(), format!("{header}\n{line}\n"))],
    })
}
