//! One function per subcommand. Each fills a report and optionally a CSV
//! table of plottable series.

use std::collections::BTreeSet;

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use sedspin::exchange::{
    antiphase_feasible, antiphase_grid_search, antisymmetrize_n, derive_exchange, exchange_particles,
    AngleOrdering,
};
use sedspin::field_modes::{
    ensemble_phase_coherence, field_at, mode_index, mode_observables, realization_totals, sample_realization,
    Polarization,
};
use sedspin::lsed_algebra::{
    ho_matrix_elements, lz_expectation, spin_split, sum_rule, zeeman_energy, zeeman_operators, LzMethod,
};
use sedspin::spin_phi::{apply_sz, dichotomy_solve, find_feasible_triple, sz_eigenvalue, PhiState, SzMode};
use sedspin::{Error, FieldSample64, Mode64, Vec3};

use crate::config::RunConfig;
use crate::report::Report;

/// Rows of a CSV output: header then records.
pub type Table = Vec<Vec<String>>;

pub type Outcome = Result<Option<Table>, String>;

fn lib<T>(r: sedspin::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

pub fn parse_rational(s: &str) -> Result<Rational64, String> {
    let t = s.trim().trim_start_matches('+');
    t.parse::<Rational64>()
        .or_else(|_| t.parse::<i64>().map(Rational64::from_integer))
        .map_err(|_| format!("not a rational number: {s:?}"))
}

pub fn parse_triple(s: &str) -> Result<[i64; 3], String> {
    let parts: Vec<i64> = s
        .split(',')
        .map(|p| p.trim().trim_start_matches('+').parse::<i64>().map_err(|_| format!("bad integer in {s:?}")))
        .collect::<Result<_, _>>()?;
    parts.try_into().map_err(|_| format!("expected three comma-separated integers, got {s:?}"))
}

fn table(header: &[&str]) -> Table {
    vec![header.iter().map(|h| h.to_string()).collect()]
}

pub fn mode_observables_cmd(cfg: &RunConfig, rep: &mut Report, n: [i64; 3], gamma: i64, zeta: f64, phi: f64) -> Outcome {
    let k = cfg.constants();
    let g = lib(Polarization::from_sign(gamma))?;
    let m = lib(Mode64::new(n, g, zeta, phi, cfg.box_len, k.c))?;
    let q = lib(mode_observables(&m, cfg.box_len, cfg.grid, &k))?;
    let a = m.analytic_observables(&k);
    let tol = cfg.tol("mode", 1e-9);
    rep.close("H", a.energy, q.energy, tol);
    // components are compared against the magnitude of their vector
    let scale_p = a.momentum.norm();
    let scale_j = a.angular_momentum.norm();
    for (i, axis) in ["x", "y", "z"].iter().enumerate() {
        rep.within(format!("P_{axis}"), a.momentum[i], q.momentum[i], tol * scale_p);
        rep.within(format!("J_{axis}"), a.angular_momentum[i], q.angular_momentum[i], tol * scale_j);
    }
    rep.detail("omega", json!(m.omega));
    Ok(None)
}

pub fn field_sample_cmd(cfg: &RunConfig, rep: &mut Report, points: usize, t: f64) -> Outcome {
    if points == 0 {
        return Err("points must be at least 1".into());
    }
    let k = cfg.constants();
    let real = lib(sample_realization(cfg.box_len, cfg.n_max, cfg.seed, &k))?;
    let vol = real.volume();
    let dt = 1e-4 / (k.c * std::f64::consts::PI * 2.0 / cfg.box_len * cfg.n_max as f64);
    let mut tab = table(&["s", "x", "y", "z", "Ax", "Ay", "Az", "Ex", "Ey", "Ez", "Bx", "By", "Bz"]);
    let (mut sup_err, mut dadt_err, mut scale) = (0.0f64, 0.0f64, 0.0f64);
    for i in 0..points {
        let s = i as f64 / points as f64;
        let r = Vec3::new(s, s, s) * cfg.box_len;
        let f = lib(field_at(&real, &r, t, &k))?;
        let parts = real.modes().iter().fold(FieldSample64::zero(), |acc, m| acc + m.field(&r, t, vol, k.hbar));
        sup_err = sup_err.max((f.e - parts.e).norm()).max((f.b - parts.b).norm()).max((f.a - parts.a).norm());
        let fp = lib(field_at(&real, &r, t + dt, &k))?;
        let fm = lib(field_at(&real, &r, t - dt, &k))?;
        let e_fd = (fp.a - fm.a) * (-1.0 / (2.0 * dt));
        dadt_err = dadt_err.max((e_fd - f.e).norm());
        scale = scale.max(f.e.norm());
        let mut row = vec![s.to_string(), r[0].to_string(), r[1].to_string(), r[2].to_string()];
        for v in [f.a, f.e, f.b] {
            row.extend(v.0.iter().map(|x| x.to_string()));
        }
        tab.push(row);
    }
    rep.within("superposition", 0.0, sup_err, cfg.tol("superposition", 1e-12 * scale.max(1.0)));
    rep.within("E_equals_minus_dA_dt", 0.0, dadt_err / scale, cfg.tol("dadt", 1e-6));
    rep.detail("modes", json!(real.modes().len()));
    Ok(Some(tab))
}

pub fn totals_cmd(cfg: &RunConfig, rep: &mut Report) -> Outcome {
    let k = cfg.constants();
    let real = lib(sample_realization(cfg.box_len, cfg.n_max, cfg.seed, &k))?;
    let tot = realization_totals(&real, &k);
    let side = 2 * cfg.n_max as usize + 1;
    rep.exact("mode_count", 2 * (side * side * side - 1), real.modes().len());
    for (i, axis) in ["x", "y", "z"].iter().enumerate() {
        rep.within(format!("P_{axis}"), 0.0, tot.momentum[i], 0.0);
        rep.within(format!("J_{axis}"), 0.0, tot.angular_momentum[i], 0.0);
    }
    let expected: f64 = real.modes().iter().map(|m| k.hbar * m.omega / 2.0).sum();
    rep.close("H", expected, tot.energy, cfg.tol("energy", 1e-12));
    Ok(None)
}

pub fn phases_cmd(cfg: &RunConfig, rep: &mut Report, pairs: Option<&str>) -> Outcome {
    let modes = mode_index(cfg.n_max).len();
    let pairs: Vec<(usize, usize)> = match pairs {
        Some(text) => text
            .split(',')
            .map(|p| {
                let (a, b) = p.split_once(':').ok_or_else(|| format!("pair {p:?} is not a:b"))?;
                Ok((a.trim().parse().map_err(|_| format!("bad index {a:?}"))?, b.trim().parse().map_err(|_| format!("bad index {b:?}"))?))
            })
            .collect::<Result<_, String>>()?,
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed);
            let mut out = Vec::new();
            while out.len() < 10.min(modes * (modes - 1)) {
                let p = (rng.random_range(0..modes), rng.random_range(0..modes));
                if p.0 != p.1 && !out.contains(&p) {
                    out.push(p);
                }
            }
            out
        }
    };
    if pairs.iter().any(|(a, b)| a == b) {
        return Err("a mode pair must contain two different modes".into());
    }
    let coh = lib(ensemble_phase_coherence(cfg.n_max, cfg.seed, cfg.ensemble, &pairs))?;
    let bound = cfg.tol("coherence", 4.0 / (cfg.ensemble as f64).sqrt());
    let mut tab = table(&["m", "m_prime", "coherence"]);
    for (&(a, b), c) in pairs.iter().zip(&coh) {
        rep.push(format!("coherence[{a},{b}]"), json!(0.0), json!(c), bound, *c <= bound);
        tab.push(vec![a.to_string(), b.to_string(), c.to_string()]);
    }
    Ok(Some(tab))
}

pub fn sum_rule_cmd(cfg: &RunConfig, rep: &mut Report, dims: usize, n_cut: u32, omega0: f64) -> Outcome {
    let k = cfg.constants();
    let t = lib(ho_matrix_elements(dims, omega0, n_cut, &k))?;
    let tol = cfg.tol("sum_rule", 1e-12);
    let mut tab = table(&["state", "sum_rule_over_hbar"]);
    let mut open = 0;
    for a in 0..t.len() {
        let label = t.states()[a].label.to_string();
        match sum_rule(&t, a, &k) {
            Ok(v) => {
                rep.close(format!("sum_rule{label}"), k.hbar, v, tol);
                tab.push(vec![label, (v / k.hbar).to_string()]);
            }
            Err(Error::IncompleteBasis { .. }) => open += 1,
            Err(e) => return Err(e.to_string()),
        }
    }
    let top = (0..t.len()).filter(|&a| t.states()[a].label.0.iter().sum::<i64>() == n_cut as i64).count();
    rep.exact("incomplete_states_detected", top, open);
    Ok(Some(tab))
}

pub fn angular_momentum_cmd(cfg: &RunConfig, rep: &mut Report, dims: usize, n_cut: u32, m_max: i64, omega0: f64) -> Outcome {
    let k = cfg.constants();
    let t = lib(ho_matrix_elements(dims, omega0, n_cut, &k))?;
    let tol = cfg.tol("lz", 1e-12);
    let mut tab = table(&["state", "m_l", "polarized", "direct"]);
    for a in 0..t.len() {
        let lab = &t.states()[a].label;
        let m = lab.0[0] - lab.0[1];
        if t.is_open(a) || m.abs() > m_max {
            continue;
        }
        let p = lib(lz_expectation(&t, a, LzMethod::Polarized, &k))?;
        let d = lib(lz_expectation(&t, a, LzMethod::Direct, &k))?;
        rep.within(format!("polarized{lab}"), m as f64 * k.hbar, p, tol * k.hbar);
        rep.within(format!("direct{lab}"), m as f64 * k.hbar, d, tol * k.hbar);
        tab.push(vec![lab.to_string(), m.to_string(), p.to_string(), d.to_string()]);
    }
    Ok(Some(tab))
}

pub fn spin_split_cmd(cfg: &RunConfig, rep: &mut Report, lz_over_hbar: Rational64) -> Outcome {
    let k = cfg.exact_constants()?;
    let lz = lz_over_hbar * k.hbar;
    let s = spin_split(lz, k.hbar);
    let half = Rational64::new(1, 2);
    rep.exact("M_plus", lz / 2 + half * k.hbar, s.plus);
    rep.exact("M_minus", lz / 2 - half * k.hbar, s.minus);
    rep.exact("M_plus_plus_M_minus", lz, s.plus + s.minus);
    Ok(None)
}

pub fn zeeman_cmd(cfg: &RunConfig, rep: &mut Report, b: Rational64, l: i64, b_max: Rational64, steps: u32) -> Outcome {
    if l < 0 {
        return Err("l must be non-negative".into());
    }
    let k = cfg.exact_constants()?;
    let z = zeeman_operators(l, b, &k);
    for (i, &(ml, ms)) in z.basis.iter().enumerate() {
        let expect = k.mu0 * b * (Rational64::from_integer(ml) + Rational64::from_integer(2) * ms);
        rep.exact(format!("E[m_l={ml},m_s={ms}]"), expect, z.hamiltonian[i]);
    }
    rep.exact("moment_identity", true, z.moment_identity_holds(&k));
    let mut header = vec!["B".to_string()];
    header.extend(z.basis.iter().map(|(ml, ms)| format!("E[{ml},{ms}]")));
    let mut tab = vec![header];
    for s in 0..=steps {
        let bs = b_max * Rational64::new(s as i64, steps.max(1) as i64);
        let mut row = vec![bs.to_string()];
        for &(ml, ms) in &z.basis {
            row.push(lib(zeeman_energy(bs, ml, ms, &k))?.to_string());
        }
        tab.push(row);
    }
    Ok(Some(tab))
}

pub fn dichotomy_cmd(rep: &mut Report, values: Option<Vec<Rational64>>) -> Outcome {
    let grid: Vec<Rational64> = (-24..=24).map(|i| Rational64::new(i, 8)).collect();
    rep.exact("feasible_triple", "none", find_feasible_triple(&grid).map_or("none".to_string(), |t| format!("{t:?}")));
    let canon = lib(dichotomy_solve(&[Rational64::new(1, 2), Rational64::new(-1, 2)]))?;
    let shown = canon.canonical.map_or("none".to_string(), |[a, b]| format!("{a},{b}"));
    rep.exact("canonical_pair", "1/2,-1/2", shown);
    if let Some(v) = values {
        let d = lib(dichotomy_solve(&v))?;
        rep.detail(
            "candidates",
            json!({
                "values": v.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "pairwise_feasible": d.pairwise_feasible,
                "sign_opposed": d.sign_opposed,
            }),
        );
    }
    Ok(None)
}

pub fn sz_cmd(cfg: &RunConfig, rep: &mut Report, gamma: Rational64, points: usize) -> Outcome {
    let k = cfg.constants();
    let st = lib(PhiState::new(gamma, "alpha"))?;
    let exact = sz_eigenvalue(&st, k.hbar);
    let num = lib(apply_sz(&st, SzMode::Numeric { points }, k.hbar))?;
    let sym = lib(apply_sz(&st, SzMode::Symbolic, k.hbar))?;
    let tol = cfg.tol("sz", 1e-8);
    rep.within("symbolic", exact, sym, 0.0);
    rep.within("numeric", exact, num, tol * k.hbar);
    rep.exact("full_turn_factor", -1, st.rotation_factor(Rational64::from_integer(2)).as_sign().unwrap_or(0));
    Ok(None)
}

pub fn exchange_cmd(rep: &mut Report, alpha: &str, alpha_prime: &str, sigma: Rational64, sigma_prime: Rational64) -> Outcome {
    let two = Rational64::from_integer(2);
    let half_int = |s: Rational64| !s.is_integer() && (s * two).is_integer();
    let expected = match (half_int(sigma), half_int(sigma_prime)) {
        (true, true) => -1,
        (false, false) => 1,
        _ => return Err("sigma and sigma' must both be half-integers or both integers".into()),
    };
    let d = lib(derive_exchange(alpha, alpha_prime, sigma, sigma_prime))?;
    let sign = d.lambda.as_sign().unwrap_or(0);
    rep.exact("lambda_AB", expected, sign);
    rep.exact("state_exchange_factor", expected, d.state_exchange_factor.as_sign().unwrap_or(0));
    let a = lib(exchange_particles(&d.initial, AngleOrdering::Phi2Greater))?;
    let b = lib(exchange_particles(&d.initial, AngleOrdering::Phi1Greater))?;
    rep.exact("orderings_agree", true, a == b);
    if expected == -1 {
        rep.exact("antisymmetric_form", true, lib(d.matches_antisymmetrizer())?);
    }
    rep.detail("summary", json!(format!("lambda_AB = {sign}")));
    rep.detail("state", json!(d.solved.to_string()));
    rep.detail("derivation", d.to_json());
    Ok(None)
}

pub fn antiphase_cmd(rep: &mut Report, n: usize) -> Outcome {
    if n < 1 {
        return Err("n must be at least 1".into());
    }
    let r = antiphase_feasible(n);
    rep.exact("feasible", n <= 2, r.feasible);
    if n <= 4 {
        rep.exact("grid_search_agrees", true, antiphase_grid_search(n, 24).is_some() == r.feasible);
    }
    let witness = r.witness.map(|w| w.iter().map(|q| format!("{q}*pi")).collect::<Vec<_>>());
    rep.detail("witness", json!(witness));
    rep.detail("conflict", json!(r.conflict));
    Ok(None)
}

pub fn slater_cmd(rep: &mut Report, labels: Vec<String>) -> Outcome {
    let state = lib(antisymmetrize_n(&labels))?;
    let distinct = labels.iter().collect::<BTreeSet<_>>().len() == labels.len();
    rep.exact("zero_vector", !distinct, state.is_zero());
    let n = labels.len();
    let mut flips = true;
    for i in 0..n {
        for j in (i + 1)..n {
            let mut l = labels.clone();
            l.swap(i, j);
            flips &= lib(antisymmetrize_n(&l))? == state.neg();
        }
    }
    rep.exact("transpositions_flip_sign", true, flips);
    rep.detail("state", json!(state.to_string()));
    rep.detail("terms", json!(state.terms.len()));
    Ok(None)
}
