//! `sedspin`: runs one verification experiment and writes a JSON report.
//!
//! Exit status: 0 when every check passes, 1 when any check fails, 2 on a
//! usage or configuration error.

mod commands;
mod config;
mod report;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::Outcome;
use config::{Overrides, RunConfig};
use report::Report;

#[derive(Parser, Debug)]
#[command(name = "sedspin", version, about = "Verification experiments for zero-point-field spin and exchange")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Flat `key = value` configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Write the command's data series as CSV.
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
    /// Box length L.
    #[arg(short = 'L', long = "box-len", global = true)]
    box_len: Option<String>,
    #[arg(long, global = true)]
    n_max: Option<String>,
    /// Per-axis quadrature resolution.
    #[arg(long, global = true)]
    grid: Option<String>,
    /// Realization count.
    #[arg(long, global = true)]
    ensemble: Option<String>,
    #[arg(long, global = true)]
    seed: Option<String>,
    /// natural or explicit.
    #[arg(long, global = true)]
    units: Option<String>,
    #[arg(long, global = true)]
    hbar: Option<String>,
    #[arg(long = "c", global = true)]
    c: Option<String>,
    #[arg(long = "m", global = true)]
    m: Option<String>,
    /// Tolerance override, `name=value`; repeatable.
    #[arg(long = "tol", global = true, value_name = "NAME=VALUE")]
    tol: Vec<String>,
}

impl Common {
    fn overrides(&self) -> Result<Overrides, String> {
        let mut pairs = Vec::new();
        let fields = [
            ("L", &self.box_len),
            ("n_max", &self.n_max),
            ("grid", &self.grid),
            ("ensemble", &self.ensemble),
            ("seed", &self.seed),
            ("units", &self.units),
            ("hbar", &self.hbar),
            ("c", &self.c),
            ("m", &self.m),
        ];
        for (k, v) in fields {
            if let Some(v) = v {
                pairs.push((k.to_string(), v.clone()));
            }
        }
        for t in &self.tol {
            let (k, v) = t.split_once('=').ok_or_else(|| format!("--tol expects NAME=VALUE, got {t:?}"))?;
            pairs.push((format!("tol.{}", k.trim()), v.to_string()));
        }
        Ok(Overrides { pairs })
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Volume integrals of one mode against ħω/2, ħωk̂/2c, γħk̂/2.
    ModeObservables {
        #[arg(long, allow_hyphen_values = true, default_value = "0,0,1")]
        n: String,
        #[arg(long, allow_hyphen_values = true, default_value = "+1")]
        gamma: String,
        #[arg(long, default_value_t = 0.0)]
        zeta: f64,
        #[arg(long, default_value_t = 0.0)]
        phi: f64,
    },
    /// Field of one realization along the box diagonal.
    FieldSample {
        #[arg(long, default_value_t = 16)]
        points: usize,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        t: f64,
    },
    /// Closed-form totals of one realization.
    Totals,
    /// Circular mean of phase differences over the ensemble.
    Phases {
        /// Mode index pairs `a:b,c:d`; ten random pairs when omitted.
        #[arg(long)]
        pairs: Option<String>,
    },
    /// Oscillator-strength sum rule for oscillator eigenstates.
    SumRule {
        #[arg(long, default_value_t = 3)]
        dims: usize,
        #[arg(long, default_value_t = 5)]
        n_cut: u32,
        #[arg(long, default_value_t = 1.0)]
        omega0: f64,
    },
    /// Polarized and direct ⟨L_z⟩ against m_l ħ.
    AngularMomentum {
        #[arg(long, default_value_t = 3)]
        dims: usize,
        #[arg(long, default_value_t = 7)]
        n_cut: u32,
        #[arg(long, default_value_t = 3)]
        m_max: i64,
        #[arg(long, default_value_t = 1.0)]
        omega0: f64,
    },
    /// M± = ⟨L_z⟩/2 ± ħ/2 in exact arithmetic.
    SpinSplit {
        /// ⟨L_z⟩ in units of ħ.
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        lz: String,
    },
    /// Zeeman levels μ₀B(m_l + 2m_s).
    Zeeman {
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        b: String,
        #[arg(long, default_value_t = 1)]
        l: i64,
        /// Upper end of the CSV sweep in B.
        #[arg(long, default_value = "1")]
        b_max: String,
        #[arg(long, default_value_t = 10)]
        b_steps: u32,
    },
    /// The two-valuedness of the polarization index.
    Dichotomy {
        /// Comma-separated candidate set to classify.
        #[arg(long, allow_hyphen_values = true)]
        values: Option<String>,
    },
    /// S_z = −iħ∂_φ, symbolic and by finite differences.
    Sz {
        #[arg(long, allow_hyphen_values = true, default_value = "1/2")]
        gamma: String,
        #[arg(long, default_value_t = 1024)]
        points: usize,
    },
    /// Derives λ_AB from invariance under particle exchange.
    ExchangeDerive {
        #[arg(long, default_value = "alpha")]
        alpha: String,
        #[arg(long, default_value = "alpha'")]
        alpha_prime: String,
        #[arg(long, allow_hyphen_values = true, default_value = "1/2")]
        sigma: String,
        #[arg(long, allow_hyphen_values = true, default_value = "-1/2")]
        sigma_prime: String,
    },
    /// Whether n particles can couple pairwise in antiphase.
    Antiphase {
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Antisymmetrized n-particle state.
    Slater {
        #[arg(long, default_value = "a,b,c")]
        labels: String,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::ModeObservables { .. } => "mode-observables",
            Command::FieldSample { .. } => "field-sample",
            Command::Totals => "totals",
            Command::Phases { .. } => "phases",
            Command::SumRule { .. } => "sum-rule",
            Command::AngularMomentum { .. } => "angular-momentum",
            Command::SpinSplit { .. } => "spin-split",
            Command::Zeeman { .. } => "zeeman",
            Command::Dichotomy { .. } => "dichotomy",
            Command::Sz { .. } => "sz",
            Command::ExchangeDerive { .. } => "exchange-derive",
            Command::Antiphase { .. } => "antiphase",
            Command::Slater { .. } => "slater",
        }
    }
}

fn run(cmd: &Command, cfg: &RunConfig, rep: &mut Report) -> Outcome {
    use commands::*;
    match cmd {
        Command::ModeObservables { n, gamma, zeta, phi } => {
            let g = gamma.trim().trim_start_matches('+').parse::<i64>().map_err(|_| format!("bad gamma {gamma:?}"))?;
            mode_observables_cmd(cfg, rep, parse_triple(n)?, g, *zeta, *phi)
        }
        Command::FieldSample { points, t } => field_sample_cmd(cfg, rep, *points, *t),
        Command::Totals => totals_cmd(cfg, rep),
        Command::Phases { pairs } => phases_cmd(cfg, rep, pairs.as_deref()),
        Command::SumRule { dims, n_cut, omega0 } => sum_rule_cmd(cfg, rep, *dims, *n_cut, *omega0),
        Command::AngularMomentum { dims, n_cut, m_max, omega0 } => {
            angular_momentum_cmd(cfg, rep, *dims, *n_cut, *m_max, *omega0)
        }
        Command::SpinSplit { lz } => spin_split_cmd(cfg, rep, parse_rational(lz)?),
        Command::Zeeman { b, l, b_max, b_steps } => {
            zeeman_cmd(cfg, rep, parse_rational(b)?, *l, parse_rational(b_max)?, *b_steps)
        }
        Command::Dichotomy { values } => {
            let v = values
                .as_deref()
                .map(|s| s.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>())
                .transpose()?;
            dichotomy_cmd(rep, v)
        }
        Command::Sz { gamma, points } => sz_cmd(cfg, rep, parse_rational(gamma)?, *points),
        Command::ExchangeDerive { alpha, alpha_prime, sigma, sigma_prime } => {
            exchange_cmd(rep, alpha, alpha_prime, parse_rational(sigma)?, parse_rational(sigma_prime)?)
        }
        Command::Antiphase { n } => antiphase_cmd(rep, *n),
        Command::Slater { labels } => slater_cmd(rep, labels.split(',').map(|s| s.trim().to_string()).collect()),
    }
}

fn write_csv(path: &PathBuf, rows: &[Vec<String>]) -> Result<(), String> {
    let mut w = csv::Writer::from_path(path).map_err(|e| e.to_string())?;
    for r in rows {
        w.write_record(r).map_err(|e| e.to_string())?;
    }
    w.flush().map_err(|e| e.to_string())
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let overrides = match cli.common.overrides() {
        Ok(o) => o,
        Err(e) => return usage_error(&e),
    };
    let cfg = match RunConfig::resolve(cli.common.config.as_deref(), &overrides) {
        Ok(c) => c,
        Err(e) => return usage_error(&e),
    };
    let mut rep = Report::new(cli.command.name(), &cfg);
    let series = match run(&cli.command, &cfg, &mut rep) {
        Ok(s) => s,
        Err(e) => return usage_error(&e),
    };
    let text = serde_json::to_string_pretty(&rep.to_json()).expect("report json");
    let written = match &cli.common.out {
        Some(p) => fs::write(p, text + "\n").map_err(|e| e.to_string()),
        None => writeln!(std::io::stdout(), "{text}").map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        return usage_error(&e);
    }
    if let (Some(path), Some(rows)) = (&cli.common.csv, series) {
        if let Err(e) = write_csv(path, &rows) {
            return usage_error(&e);
        }
    }
    if rep.all_pass() { ExitCode::SUCCESS } else { ExitCode::from(1) }
}
