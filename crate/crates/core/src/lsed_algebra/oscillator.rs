//! Isotropic harmonic oscillator in 2 or 3 dimensions.
//!
//! Position elements are built in the Cartesian number basis
//! `|n_x, n_y(, n_z)⟩` and transformed to the circular basis
//! `|n₊, n₋(, n_z)⟩`, the simultaneous eigenbasis of `H` and `L_z` with
//! `m_ℓ = n₊ − n₋`. Circular quanta are created by
//! `a₊† = (a_x† + i a_y†)/√2` and `a₋† = (a_x† − i a_y†)/√2`.

use std::collections::HashMap;

use ndarray::Array2;
use num_complex::Complex;

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::scalar::Real;

use super::{MatrixElementTable, StateLabel, StationaryState};

/// `⟨bra|x|ket⟩` for one Cartesian oscillator coordinate with length scale
/// `ℓ = √(ħ/2mω₀)`: `ℓ√(ket+1)` when `bra = ket+1`, `ℓ√ket` when `bra = ket−1`.
pub fn ladder_position_element<T: Real>(bra: u32, ket: u32, length: T) -> T {
    if bra == ket + 1 {
        length * T::from_int(bra as i64).sqrt()
    } else if bra + 1 == ket {
        length * T::from_int(ket as i64).sqrt()
    } else {
        T::zero()
    }
}

fn factorial(n: u32) -> u64 {
    (1..=n as u64).product()
}

fn binomial(n: u32, k: u32) -> u64 {
    factorial(n) / (factorial(k) * factorial(n - k))
}

fn i_pow<T: Real>(k: i64) -> Complex<T> {
    match k.rem_euclid(4) {
        0 => Complex::new(T::one(), T::zero()),
        1 => Complex::new(T::zero(), T::one()),
        2 => Complex::new(-T::one(), T::zero()),
        _ => Complex::new(T::zero(), -T::one()),
    }
}

/// Expansion of `(a₊†)^p (a₋†)^q |0⟩/√(p! q!)` over `|n_x, n_y⟩` with
/// `n_x + n_y = p + q`, as `(n_x, n_y, coefficient)`.
pub fn circular_state_in_cartesian<T: Real>(p: u32, q: u32) -> Vec<(u32, u32, Complex<T>)> {
    let shell = p + q;
    let norm = T::from_int(2).powi(shell as i32).sqrt() * T::from_int((factorial(p) * factorial(q)) as i64).sqrt();
    (0..=shell)
        .rev()
        .map(|nx| {
            let ny = shell - nx;
            let mut c = Complex::new(T::zero(), T::zero());
            // choose j powers of a_x† from the (a_x† + i a_y†)^p factor and
            // k = nx − j from the (a_x† − i a_y†)^q factor
            for j in 0..=p.min(nx) {
                let k = nx - j;
                if k > q {
                    continue;
                }
                let w = T::from_int((binomial(p, j) * binomial(q, k)) as i64);
                let phase = i_pow::<T>((p - j) as i64) * i_pow::<T>(-((q - k) as i64));
                c = c + phase * w;
            }
            let fac = T::from_int((factorial(nx) * factorial(ny)) as i64).sqrt();
            (nx, ny, c * (fac / norm))
        })
        .collect()
}

/// Matrix elements of the isotropic oscillator, shells `0..=n_cut`.
///
/// Position couples only adjacent shells, so states of the top shell are
/// marked open.
pub fn ho_matrix_elements<T: Real>(
    dims: usize,
    omega0: T,
    n_cut: u32,
    k: &PhysicalConstants<T>,
) -> Result<MatrixElementTable<T>> {
    if dims != 2 && dims != 3 {
        return Err(Error::InvalidInput(format!("dims must be 2 or 3, got {dims}")));
    }
    if n_cut < 1 {
        return Err(Error::InvalidInput("n_cut must be at least 1".into()));
    }
    if !(omega0 > T::zero()) {
        return Err(Error::InvalidInput("oscillator frequency must be positive".into()));
    }
    let nz_max = |shell: u32| if dims == 3 { shell } else { 0 };

    // circular (p, q, nz) and Cartesian (nx, ny, nz) bases, in matching order
    let mut circ = Vec::new();
    let mut cart = Vec::new();
    for shell in 0..=n_cut {
        for nz in 0..=nz_max(shell) {
            let t = shell - nz;
            for a in (0..=t).rev() {
                circ.push((a, t - a, nz));
                cart.push((a, t - a, nz));
            }
        }
    }
    let dim = circ.len();
    let cart_index: HashMap<(u32, u32, u32), usize> = cart.iter().enumerate().map(|(i, &s)| (s, i)).collect();

    let zero = Complex::new(T::zero(), T::zero());
    let mut u = Array2::from_elem((dim, dim), zero);
    for (col, &(p, q, nz)) in circ.iter().enumerate() {
        for (nx, ny, c) in circular_state_in_cartesian::<T>(p, q) {
            u[[cart_index[&(nx, ny, nz)], col]] = c;
        }
    }

    let length = (k.hbar / (T::lit(2.0) * k.m * omega0)).sqrt();
    let mut xc = Array2::from_elem((dim, dim), zero);
    let mut yc = xc.clone();
    let mut zc = xc.clone();
    for (a, &(ax, ay, az)) in cart.iter().enumerate() {
        for (b, &(bx, by, bz)) in cart.iter().enumerate() {
            let re = |v: T| Complex::new(v, T::zero());
            if ay == by && az == bz {
                xc[[a, b]] = re(ladder_position_element(ax, bx, length));
            }
            if ax == bx && az == bz {
                yc[[a, b]] = re(ladder_position_element(ay, by, length));
            }
            if ax == bx && ay == by {
                zc[[a, b]] = re(ladder_position_element(az, bz, length));
            }
        }
    }
    let udag = u.t().mapv(|c| c.conj());
    let to_circ = |m: &Array2<Complex<T>>| udag.dot(m).dot(&u);

    let half_dims = T::from_int(dims as i64) / T::lit(2.0);
    let states = circ
        .iter()
        .map(|&(p, q, nz)| {
            let shell = T::from_int((p + q + nz) as i64);
            let label = if dims == 3 {
                StateLabel(vec![p as i64, q as i64, nz as i64])
            } else {
                StateLabel(vec![p as i64, q as i64])
            };
            StationaryState::new(label, k.hbar * omega0 * (shell + half_dims), k.hbar)
        })
        .collect();
    let open = circ.iter().map(|&(p, q, nz)| p + q + nz == n_cut).collect();
    MatrixElementTable::new(states, to_circ(&xc), to_circ(&yc), to_circ(&zc), open)
}

/// Shell index and `m_ℓ` of an oscillator label.
#[cfg(test)]
pub(crate) fn shell_and_m(label: &StateLabel) -> (i64, i64) {
    let v = &label.0;
    (v.iter().sum(), v[0] - v[1])
}
