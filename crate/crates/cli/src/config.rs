//! Flat `key = value` run configuration.
//!
//! One entry per line, `#` starts a comment. Grids are comma-separated lists
//! (`1.0, 1.5, 2.0`) or inclusive ranges `lo:step:hi`.

use std::collections::BTreeMap;
use std::path::Path;

use landbubble::economy::{
    baseline_gamma, EconomyParams, Productivity, Technology, BASELINE_ALPHA, BASELINE_DELTA,
};

use crate::CliError;

/// Every key the tool understands.
pub const KNOWN_KEYS: &[&str] = &[
    "beta",
    "lambda",
    "upsilon",
    "tech.kind",
    "tech.A",
    "tech.alpha",
    "tech.rho",
    "tech.delta",
    "tech.m",
    "tech.D",
    "dist.gamma",
    "grid.inv_rho",
    "grid.lambda",
    "horizon.T",
    "knots.J",
    "mc.N",
    "mc.T",
    "init.K",
    "open.K0",
    "shock.lambda",
    "shock.gamma",
    "shock.duration",
];

pub const HELP: &str = "\
Config keys (flat key = value, '#' comments):
  beta            discount factor                       [0.95]
  lambda          leverage limit                        [1]
  upsilon         survival probability (pareto, simulate) [0.975]
  tech.kind       ces | cobb_douglas | linear           [cobb_douglas; linear for trend, rates, pareto, simulate]
  tech.A          CES productivity                      [1]
  tech.alpha      CES capital weight                    [0.5]
  tech.rho        CES curvature, 1/elasticity           [1]
  tech.delta      depreciation                          [0.08]
  tech.m          linear technology slope               [1 - tech.delta]
  tech.D          linear technology land rent           [1]
  dist.gamma      exponential productivity rate         [-ln 0.1]
  grid.inv_rho    elasticities for phase                [0.25:0.25:4]
  grid.lambda     leverage grid for phase, growth, rates, pareto [1:0.1:3]
  horizon.T       transition horizon per segment        [200]
  knots.J         spline knots in the transition solver [10]
  mc.N            simulated households                  [10000; pareto skips Monte Carlo unless set]
  mc.T            simulated periods                     [1000]
  init.K          initial capital for transition        [0.8 x steady state, or 1 when bubbly]
  open.K0         initial capital in the open economy   [1]
  shock.lambda    leverage during the fig2 boom         [2]
  shock.gamma     productivity rate during the fig2 boom [-ln 0.15]
  shock.duration  length of the fig2 boom               [10]
Grids: comma-separated increasing values or lo:step:hi.";

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunConfig {
    entries: BTreeMap<String, String>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Config(format!("line {}: expected key = value", i + 1)));
            };
            let (key, value) = (key.trim(), value.trim());
            if !KNOWN_KEYS.contains(&key) {
                return Err(CliError::Config(format!("line {}: unknown key '{key}'", i + 1)));
            }
            if entries.insert(key.to_string(), value.to_string()).is_some() {
                return Err(CliError::Config(format!("line {}: duplicate key '{key}'", i + 1)));
            }
        }
        Ok(RunConfig { entries })
    }

    pub fn contains(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    pub fn f64(&self, key: &str) -> Result<Option<f64>, CliError> {
        self.entries
            .get(key)
            .map(|v| {
                v.parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| CliError::Config(format!("{key}: '{v}' is not a number")))
            })
            .transpose()
    }

    pub fn f64_or(&self, key: &str, default: f64) -> Result<f64, CliError> {
        Ok(self.f64(key)?.unwrap_or(default))
    }

    pub fn usize_or(&self, key: &str, default: usize) -> Result<usize, CliError> {
        match self.entries.get(key) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|_| CliError::Config(format!("{key}: '{v}' is not a nonnegative integer"))),
        }
    }

    pub fn grid_or(&self, key: &str, default: &str) -> Result<Vec<f64>, CliError> {
        let text = self.entries.get(key).map(String::as_str).unwrap_or(default);
        parse_grid(key, text)
    }

    /// Economy built from the closed-economy baseline (`linear = false`) or
    /// the open-economy baseline, with every given key overriding it.
    pub fn economy(&self, linear: bool) -> Result<EconomyParams, CliError> {
        let base = if linear {
            EconomyParams::baseline_open()
        } else {
            EconomyParams::baseline()
        };
        let kind = match self.entries.get("tech.kind") {
            Some(k) => k.as_str(),
            None if linear => "linear",
            None => "cobb_douglas",
        };
        let delta = self.f64_or("tech.delta", BASELINE_DELTA)?;
        let tech = match kind {
            "ces" | "cobb_douglas" => {
                let rho = self.f64_or("tech.rho", 1.0)?;
                if kind == "cobb_douglas" && rho != 1.0 {
                    return Err(CliError::Config("tech.rho must be 1 for cobb_douglas".into()));
                }
                Technology::Ces {
                    a: self.f64_or("tech.A", 1.0)?,
                    alpha: self.f64_or("tech.alpha", BASELINE_ALPHA)?,
                    rho,
                    delta,
                }
            }
            "linear" => Technology::TwoSectorLinear {
                m: self.f64_or("tech.m", 1.0 - delta)?,
                d: self.f64_or("tech.D", 1.0)?,
            },
            other => return Err(CliError::Config(format!("tech.kind: unknown kind '{other}'"))),
        };
        let econ = EconomyParams {
            beta: self.f64_or("beta", base.beta)?,
            lambda: self.f64_or("lambda", base.lambda)?,
            tech,
            dist: Productivity::exponential(self.f64_or("dist.gamma", baseline_gamma())?),
            upsilon: match self.f64("upsilon")? {
                Some(u) => Some(u),
                None => base.upsilon,
            },
        };
        econ.validate().map_err(|e| CliError::Config(e.to_string()))?;
        Ok(econ)
    }
}

pub fn parse_grid(key: &str, text: &str) -> Result<Vec<f64>, CliError> {
    let bad = |why: &str| CliError::Config(format!("{key}: {why} in '{text}'"));
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| bad("not a number"))
    };
    let grid: Vec<f64> = if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(bad("range must be lo:step:hi"));
        }
        let (lo, step, hi) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
        if !(step > 0.0) || hi < lo {
            return Err(bad("range needs step > 0 and hi >= lo"));
        }
        // the small slack keeps `hi` when it is a multiple of `step`
        let n = ((hi - lo) / step + 1e-9).floor() as usize;
        (0..=n).map(|i| lo + step * i as f64).collect()
    } else {
        text.split(',').map(num).collect::<Result<_, _>>()?
    };
    landbubble::experiments::check_grid(key, &grid).map_err(|e| CliError::Config(e.to_string()))?;
    Ok(grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_keys_and_comments() {
        let c = RunConfig::parse("# baseline\nbeta = 0.9\n\nlambda=2 # high\n").unwrap();
        let e = c.economy(false).unwrap();
        assert_eq!(e.beta, 0.9);
        assert_eq!(e.lambda, 2.0);
        assert_eq!(e.tech, Technology::cobb_douglas(1.0, 0.5, 0.08));
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(RunConfig::parse("beta 0.9").is_err());
        assert!(RunConfig::parse("betta = 0.9").is_err());
        assert!(RunConfig::parse("beta = 0.9\nbeta = 0.8").is_err());
        let c = RunConfig::parse("beta = x").unwrap();
        assert!(c.economy(false).is_err());
        let c = RunConfig::parse("beta = 1.5").unwrap();
        assert!(c.economy(false).is_err());
        let c = RunConfig::parse("tech.kind = cobb_douglas\ntech.rho = 0.5").unwrap();
        assert!(c.economy(false).is_err());
    }

    #[test]
    fn linear_defaults() {
        let e = RunConfig::default().economy(true).unwrap();
        assert_eq!(e.tech, Technology::TwoSectorLinear { m: 0.92, d: 1.0 });
        assert_eq!(e.upsilon, Some(0.975));
    }

    #[test]
    fn grids() {
        assert_eq!(parse_grid("g", "1, 2,3").unwrap(), vec![1.0, 2.0, 3.0]);
        let g = parse_grid("g", "1:0.1:3").unwrap();
        assert_eq!(g.len(), 21);
        assert!((g[20] - 3.0).abs() < 1e-12);
        assert!(parse_grid("g", "2,1").is_err());
        assert!(parse_grid("g", "1,1").is_err());
        assert!(parse_grid("g", "1:0:3").is_err());
        assert!(parse_grid("g", "1:2").is_err());
        assert!(parse_grid("g", "").is_err());
    }
}
