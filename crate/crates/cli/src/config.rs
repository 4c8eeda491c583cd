//! Run configuration: defaults, then a flat `key = value` file, then flags.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use sedspin::{Constants64, ExactConstants, Rational64};

#[derive(Debug, Clone, PartialEq)]
pub enum Units {
    Natural,
    Explicit { hbar: f64, c: f64, m: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub box_len: f64,
    pub n_max: u32,
    pub grid: usize,
    pub ensemble: u64,
    pub seed: u64,
    pub units: Units,
    pub tolerances: BTreeMap<String, f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            box_len: 1.0,
            n_max: 1,
            grid: 32,
            ensemble: 100_000,
            seed: 0,
            units: Units::Natural,
            tolerances: BTreeMap::new(),
        }
    }
}

/// Overrides collected from the command line.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub pairs: Vec<(String, String)>,
}

fn parse<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, String> {
    v.trim().parse().map_err(|_| format!("invalid value for {key}: {v:?}"))
}

impl RunConfig {
    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let value = value.trim();
        // explicit unit values are collected before the units are resolved
        let (mut hbar, mut c, mut m) = match self.units {
            Units::Explicit { hbar, c, m } => (hbar, c, m),
            Units::Natural => (1.0, 1.0, 1.0),
        };
        match key.trim() {
            "L" => self.box_len = parse(key, value)?,
            "n_max" => self.n_max = parse(key, value)?,
            "grid" => self.grid = parse(key, value)?,
            "ensemble" => self.ensemble = parse(key, value)?,
            "seed" => self.seed = parse(key, value)?,
            "units" => {
                self.units = match value {
                    "natural" => Units::Natural,
                    "explicit" => Units::Explicit { hbar, c, m },
                    other => return Err(format!("units must be natural or explicit, got {other:?}")),
                }
            }
            "hbar" | "c" | "m" => {
                let v: f64 = parse(key, value)?;
                match key.trim() {
                    "hbar" => hbar = v,
                    "c" => c = v,
                    _ => m = v,
                }
                self.units = Units::Explicit { hbar, c, m };
            }
            k if k.starts_with("tol.") => {
                let v: f64 = parse(key, value)?;
                if !(v >= 0.0) {
                    return Err(format!("tolerance {k} must be non-negative"));
                }
                self.tolerances.insert(k["tol.".len()..].to_string(), v);
            }
            other => return Err(format!("unknown config key {other:?}")),
        }
        Ok(())
    }

    pub fn load_file(&mut self, path: &Path) -> Result<(), String> {
        let text = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("{}:{}: expected key = value", path.display(), i + 1))?;
            self.set(k, v).map_err(|e| format!("{}:{}: {e}", path.display(), i + 1))?;
        }
        Ok(())
    }

    pub fn resolve(file: Option<&Path>, overrides: &Overrides) -> Result<Self, String> {
        let mut cfg = RunConfig::default();
        if let Some(p) = file {
            cfg.load_file(p)?;
        }
        for (k, v) in &overrides.pairs {
            cfg.set(k, v)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), String> {
        if !(self.box_len > 0.0) {
            return Err("L must be positive".into());
        }
        if self.ensemble < 1 {
            return Err("ensemble must be at least 1".into());
        }
        if let Units::Explicit { hbar, c, m } = self.units {
            if !(hbar > 0.0 && c > 0.0 && m > 0.0) {
                return Err("hbar, c and m must be positive".into());
            }
        }
        Ok(())
    }

    pub fn tol(&self, name: &str, default: f64) -> f64 {
        self.tolerances.get(name).copied().unwrap_or(default)
    }

    pub fn constants(&self) -> Constants64 {
        match self.units {
            Units::Natural => Constants64::natural(),
            Units::Explicit { hbar, c, m } => Constants64::explicit(hbar, c, m).expect("validated"),
        }
    }

    /// Exact constants; explicit units are converted from their decimal
    /// representation.
    pub fn exact_constants(&self) -> Result<ExactConstants, String> {
        match self.units {
            Units::Natural => Ok(ExactConstants::natural()),
            Units::Explicit { hbar, c, m } => {
                let r = |v: f64| Rational64::approximate_float(v).ok_or_else(|| format!("{v} has no rational form"));
                ExactConstants::explicit(r(hbar)?, r(c)?, r(m)?).map_err(|e| e.to_string())
            }
        }
    }

    pub fn to_json(&self) -> Value {
        let units = match self.units {
            Units::Natural => json!("natural"),
            Units::Explicit { hbar, c, m } => json!({ "explicit": { "hbar": hbar, "c": c, "m": m } }),
        };
        json!({
            "L": self.box_len,
            "n_max": self.n_max,
            "grid": self.grid,
            "ensemble": self.ensemble,
            "seed": self.seed,
            "units": units,
            "tolerances": self.tolerances,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn precedence() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "# comment\nseed = 7\ngrid = 16\ntol.sum_rule = 1e-6").unwrap();
        let o = Overrides { pairs: vec![("seed".into(), "9".into())] };
        let cfg = RunConfig::resolve(Some(f.path()), &o).unwrap();
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.grid, 16);
        assert_eq!(cfg.tol("sum_rule", 1.0), 1e-6);
        assert_eq!(cfg.ensemble, 100_000);
    }

    #[test]
    fn rejects_bad_values() {
        let mut cfg = RunConfig::default();
        assert!(cfg.set("bogus", "1").is_err());
        assert!(cfg.set("grid", "x").is_err());
        assert!(cfg.set("units", "cgs").is_err());
        cfg.set("ensemble", "0").unwrap();
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn explicit_units() {
        let mut cfg = RunConfig::default();
        cfg.set("hbar", "2").unwrap();
        cfg.set("m", "0.5").unwrap();
        assert_eq!(cfg.units, Units::Explicit { hbar: 2.0, c: 1.0, m: 0.5 });
        assert_eq!(cfg.constants().mu0, 2.0);
        cfg.set("units", "natural").unwrap();
        assert_eq!(cfg.units, Units::Natural);
    }
}
