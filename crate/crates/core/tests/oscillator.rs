use std::collections::BTreeMap;

use sedspin::exchange::Symbol;
use sedspin::lsed_algebra::{
    chain_rule_amplitudes, circular_state_in_cartesian, expansion_product, ho_matrix_elements,
    ladder_position_element, lz_expectation, sum_rule, DynamicalExpansion, LzMethod, StateLabel,
};
use sedspin::{Complex, Constants64, Rational64};

/// Normalized Hermite functions (`ħ/mω = 1`) by the three-term recursion.
fn hermite_functions(nmax: usize, xs: &[f64]) -> Vec<Vec<f64>> {
    let mut out = vec![vec![0.0; xs.len()]; nmax + 1];
    for (i, &x) in xs.iter().enumerate() {
        let g = (-x * x / 2.0).exp() / std::f64::consts::PI.powf(0.25);
        out[0][i] = g;
        if nmax >= 1 {
            out[1][i] = 2f64.sqrt() * x * g;
        }
        for n in 2..=nmax {
            let nf = n as f64;
            out[n][i] = (2.0 / nf).sqrt() * x * out[n - 1][i] - ((nf - 1.0) / nf).sqrt() * out[n - 2][i];
        }
    }
    out
}

#[test]
fn ladder_elements_match_hermite_quadrature() {
    let h = 0.01;
    let xs: Vec<f64> = (-1500..=1500).map(|i| i as f64 * h).collect();
    let psi = hermite_functions(8, &xs);
    for n in 0..7 {
        for m in 0..8 {
            let q: f64 = xs.iter().enumerate().map(|(i, x)| psi[m][i] * x * psi[n][i]).sum::<f64>() * h;
            let v = ladder_position_element::<f64>(m as u32, n as u32, std::f64::consts::FRAC_1_SQRT_2);
            assert!((q - v).abs() < 1e-10, "<{m}|x|{n}>: {q} vs {v}");
        }
    }
    assert!((ladder_position_element::<f64>(3, 2, 2.0) - 2.0 * 3f64.sqrt()).abs() < 1e-15);
}

/// `L_z = iħ(a_y†a_x − a_x†a_y)` applied to a Cartesian expansion.
fn apply_lz_cartesian(state: &[(u32, u32, Complex<f64>)]) -> BTreeMap<(u32, u32), Complex<f64>> {
    let mut out: BTreeMap<(u32, u32), Complex<f64>> = BTreeMap::new();
    let i = Complex::new(0.0, 1.0);
    for &(nx, ny, c) in state {
        if nx > 0 {
            let f = ((nx as f64) * (ny as f64 + 1.0)).sqrt();
            *out.entry((nx - 1, ny + 1)).or_default() += i * c * f;
        }
        if ny > 0 {
            let f = ((ny as f64) * (nx as f64 + 1.0)).sqrt();
            *out.entry((nx + 1, ny - 1)).or_default() -= i * c * f;
        }
    }
    out
}

#[test]
fn circular_states_are_lz_eigenstates() {
    for p in 0..5u32 {
        for q in 0..5u32 {
            let st = circular_state_in_cartesian::<f64>(p, q);
            let norm: f64 = st.iter().map(|(_, _, c)| c.norm_sqr()).sum();
            assert!((norm - 1.0).abs() < 1e-12);
            let lz = apply_lz_cartesian(&st);
            let m = p as f64 - q as f64;
            let orig: BTreeMap<(u32, u32), Complex<f64>> = st.iter().map(|&(a, b, c)| ((a, b), c)).collect();
            for (key, v) in &lz {
                let target = orig.get(key).copied().unwrap_or_default() * m;
                assert!((v - target).norm() < 1e-12, "|{p},{q}> at {key:?}");
            }
        }
    }
}

#[test]
fn sum_rule_on_closed_states() {
    let k = Constants64::explicit(1.3, 1.0, 0.7).unwrap();
    for dims in [2, 3] {
        let t = ho_matrix_elements(dims, 2.1, 4, &k).unwrap();
        for a in 0..t.len() {
            match sum_rule(&t, a, &k) {
                Ok(v) => assert!((v - k.hbar).abs() / k.hbar < 1e-12),
                Err(_) => assert!(t.is_open(a)),
            }
        }
    }
}

#[test]
fn lz_routes_agree_with_m() {
    let k = Constants64::natural();
    let t = ho_matrix_elements(3, 1.0, 5, &k).unwrap();
    for a in 0..t.len() {
        if t.is_open(a) {
            continue;
        }
        let lab = &t.states()[a].label.0;
        let m = (lab[0] - lab[1]) as f64;
        let p = lz_expectation(&t, a, LzMethod::Polarized, &k).unwrap();
        let d = lz_expectation(&t, a, LzMethod::Direct, &k).unwrap();
        assert!((p - d).abs() < 1e-12);
        assert!((d - m).abs() < 1e-12);
    }
}

#[test]
fn canonical_commutator() {
    let k = Constants64::explicit(0.9, 1.0, 1.7).unwrap();
    let t = ho_matrix_elements(2, 1.4, 4, &k).unwrap();
    let labels: Vec<StateLabel> = t.states().iter().map(|s| s.label.clone()).collect();
    let gammas = vec![Rational64::new(1, 2); labels.len()];
    let amps = chain_rule_amplitudes(&labels, &gammas, &Symbol::Phi(1));
    let x = DynamicalExpansion::position_x(&t, amps.clone()).unwrap();
    let p = DynamicalExpansion::momentum_x(&t, amps, &k).unwrap();
    let xp = expansion_product(&x, &p).unwrap();
    let px = expansion_product(&p, &x).unwrap();
    let comm = xp.sub(&px).unwrap();
    for a in 0..t.len() {
        let shell: i64 = t.states()[a].label.0.iter().sum();
        if shell >= 4 {
            continue;
        }
        let row = comm.row(a);
        assert!((row.diag - Complex::new(0.0, k.hbar)).norm() < 1e-12, "{}", t.states()[a].label);
    }
}

#[test]
fn product_is_associative() {
    let k = Constants64::natural();
    let t = ho_matrix_elements(2, 1.0, 3, &k).unwrap();
    let labels: Vec<StateLabel> = t.states().iter().map(|s| s.label.clone()).collect();
    let gammas: Vec<Rational64> = (0..labels.len() as i64).map(|i| Rational64::new(i % 3, 2)).collect();
    let amps = chain_rule_amplitudes(&labels, &gammas, &Symbol::Phi(1));
    let x = DynamicalExpansion::position_x(&t, amps.clone()).unwrap();
    let p = DynamicalExpansion::momentum_x(&t, amps, &k).unwrap();
    let l = expansion_product(&expansion_product(&x, &p).unwrap(), &x).unwrap();
    let r = expansion_product(&x, &expansion_product(&p, &x).unwrap()).unwrap();
    assert_eq!(l.amplitudes(), r.amplitudes());
    let d = (l.coeffs() - r.coeffs()).iter().map(|c| c.norm()).fold(0.0, f64::max);
    assert!(d < 1e-12);
}

#[test]
fn time_average_is_diagonal() {
    let k = Constants64::natural();
    let t = ho_matrix_elements(2, 1.0, 2, &k).unwrap();
    let labels: Vec<StateLabel> = t.states().iter().map(|s| s.label.clone()).collect();
    let gammas = vec![Rational64::new(1, 2); labels.len()];
    let amps = chain_rule_amplitudes(&labels, &gammas, &Symbol::Phi(1));
    let x = DynamicalExpansion::position_x(&t, amps).unwrap();
    let mut bind: BTreeMap<Symbol, f64> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (Symbol::StateZeta(l.to_string()), 0.37 * i as f64))
        .collect();
    bind.insert(Symbol::Phi(1), 0.11);
    let period = 2.0 * std::f64::consts::PI;
    let times: Vec<f64> = (0..64).map(|i| period * i as f64 / 64.0).collect();
    let v = sedspin::lsed_algebra::evaluate_expansion(&x, 1, &bind, &times).unwrap();
    let mean = v.iter().sum::<Complex<f64>>() / 64.0;
    assert!((mean - x.row(1).diag).norm() < 1e-12);
}
