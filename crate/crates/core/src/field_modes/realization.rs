use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::vec3::Vec3;

use super::{FieldSample, Mode, Polarization};

/// One stochastic realization of the vacuum field: a set of modes in a box
/// of edge `box_len`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZpfRealization<T> {
    pub box_len: T,
    pub seed: u64,
    modes: Vec<Mode<T>>,
}

impl<T: Real> ZpfRealization<T> {
    pub fn new(box_len: T, modes: Vec<Mode<T>>, seed: u64) -> Result<Self> {
        if !(box_len > T::zero()) {
            return Err(Error::InvalidInput("box length must be positive".into()));
        }
        let mut seen = BTreeSet::new();
        for m in &modes {
            if !seen.insert((m.n, m.gamma)) {
                return Err(Error::InvalidInput(format!(
                    "duplicate mode n={:?} gamma={}",
                    m.n,
                    m.gamma.sign()
                )));
            }
        }
        Ok(Self { box_len, seed, modes })
    }

    pub fn modes(&self) -> &[Mode<T>] {
        &self.modes
    }

    pub fn volume(&self) -> T {
        self.box_len * self.box_len * self.box_len
    }
}

/// Superposed `(A, E, B)` of every mode of the realization at `(r, t)`.
pub fn field_at<T: Real>(
    real: &ZpfRealization<T>,
    r: &Vec3<T>,
    t: T,
    k: &PhysicalConstants<T>,
) -> Result<FieldSample<T>> {
    if r.0.iter().any(|&v| !(v >= T::zero() && v < real.box_len)) {
        return Err(Error::InvalidInput(format!("point {:?} outside the box", r.0)));
    }
    let vol = real.volume();
    Ok(real
        .modes
        .iter()
        .fold(FieldSample::zero(), |acc, m| acc + m.field(r, t, vol, k.hbar)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealizationTotals<T> {
    pub energy: T,
    pub momentum: Vec3<T>,
    pub angular_momentum: Vec3<T>,
}

/// Sum of the closed-form per-mode observables.
///
/// Contributions are grouped so that modes cancelling in pairs cancel
/// exactly: momenta are `ħk/2 = (ħπ/L) n` and are accumulated as integer
/// index sums, and spins are accumulated as integer γ-counts per direction
/// before multiplying by `k̂`.
pub fn realization_totals<T: Real>(
    real: &ZpfRealization<T>,
    k: &PhysicalConstants<T>,
) -> RealizationTotals<T> {
    let two = T::lit(2.0);
    let mut energy = T::zero();
    let mut n_sum = [0i64; 3];
    let mut gamma_count: BTreeMap<[i64; 3], i64> = BTreeMap::new();
    for m in &real.modes {
        energy = energy + k.hbar * m.omega / two;
        for (acc, v) in n_sum.iter_mut().zip(m.n) {
            *acc += v;
        }
        // canonical representative of ±n; k̂(−n) = −k̂(n)
        let (rep, s) = if m.n > m.n.map(|v| -v) { (m.n, 1) } else { (m.n.map(|v| -v), -1) };
        *gamma_count.entry(rep).or_default() += s * m.gamma.sign();
    }
    let p_unit = k.hbar * T::PI() / real.box_len;
    let mut spin = Vec3::zero();
    for (rep, count) in gamma_count {
        if count != 0 {
            spin += Vec3::<T>::from_ints(rep).normalize() * (T::from_int(count) * k.hbar / two);
        }
    }
    RealizationTotals {
        energy,
        momentum: Vec3::from_ints(n_sum) * p_unit,
        angular_momentum: spin,
    }
}

/// Enumeration order of the `(n, γ)` modes with `0 < |n|∞ ≤ n_max`:
/// lexicographic in `n`, then γ = +1 before γ = −1.
pub fn mode_index(n_max: u32) -> Vec<([i64; 3], Polarization)> {
    let r = n_max as i64;
    let mut out = Vec::new();
    for x in -r..=r {
        for y in -r..=r {
            for z in -r..=r {
                if (x, y, z) != (0, 0, 0) {
                    out.push(([x, y, z], Polarization::Plus));
                    out.push(([x, y, z], Polarization::Minus));
                }
            }
        }
    }
    out
}

/// Draws `(ζ, φ)` i.i.d. uniform on `[0, 2π)` for every mode in
/// [`mode_index`] order from a generator seeded with `seed`.
pub fn sample_phases<T: Real>(n_max: u32, seed: u64) -> Vec<(T, T)> {
    let count = mode_index(n_max).len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || {
        let v = T::lit(rng.random::<f64>() * std::f64::consts::TAU);
        if v >= T::TAU() { T::zero() } else { v }
    };
    (0..count).map(|_| (draw(), draw())).collect()
}

pub fn sample_realization<T: Real>(
    box_len: T,
    n_max: u32,
    seed: u64,
    k: &PhysicalConstants<T>,
) -> Result<ZpfRealization<T>> {
    if n_max < 1 {
        return Err(Error::InvalidInput("n_max must be at least 1".into()));
    }
    let phases = sample_phases::<T>(n_max, seed);
    let modes = mode_index(n_max)
        .into_iter()
        .zip(phases)
        .map(|((n, g), (zeta, phi))| Mode::new(n, g, zeta, phi, box_len, k.c))
        .collect::<Result<Vec<_>>>()?;
    ZpfRealization::new(box_len, modes, seed)
}

/// `|⟨e^{i(ζ_m − ζ_m')}⟩|` over `count` realizations seeded
/// `base_seed, base_seed + 1, ...`, for each index pair `(m, m')`.
pub fn ensemble_phase_coherence(
    n_max: u32,
    base_seed: u64,
    count: u64,
    pairs: &[(usize, usize)],
) -> Result<Vec<f64>> {
    let modes = mode_index(n_max).len();
    if count == 0 {
        return Err(Error::InvalidInput("ensemble must contain at least one realization".into()));
    }
    if let Some(&(a, b)) = pairs.iter().find(|(a, b)| *a >= modes || *b >= modes) {
        return Err(Error::InvalidInput(format!("mode pair ({a}, {b}) out of range")));
    }
    let mut sums = vec![Complex::new(0.0, 0.0); pairs.len()];
    for s in 0..count {
        let phases = sample_phases::<f64>(n_max, base_seed.wrapping_add(s));
        for (acc, &(a, b)) in sums.iter_mut().zip(pairs) {
            *acc += Complex::from_polar(1.0, phases[a].0 - phases[b].0);
        }
    }
    Ok(sums.into_iter().map(|z| z.norm() / count as f64).collect())
}
