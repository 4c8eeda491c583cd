use num_rational::Rational64;
use num_traits::Signed;

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Polarized contributions `⟨M_z⟩±` to `⟨L_z⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinSplit<T> {
    pub plus: T,
    pub minus: T,
}

/// `⟨M_z⟩± = ⟨L_z⟩/2 ± ħ/2`.
pub fn spin_split<T: Scalar>(lz: T, hbar: T) -> SpinSplit<T> {
    let half_l = lz * T::half();
    let half_h = hbar * T::half();
    SpinSplit { plus: half_l.clone() + half_h.clone(), minus: half_l - half_h }
}

fn check_half(s: Rational64, what: &str) -> Result<()> {
    if s.abs() != Rational64::new(1, 2) {
        return Err(Error::InvalidInput(format!("{what} must be ±1/2, got {s}")));
    }
    Ok(())
}

/// `⟨α₀σ|M̂_z|α₀σ⟩ = ½⟨α₀|L̂_z|α₀⟩ + σħ`.
pub fn m_expectation<T: Scalar>(orbital_lz: T, sigma: Rational64, hbar: T) -> Result<T> {
    check_half(sigma, "sigma")?;
    Ok(orbital_lz * T::half() + hbar * T::from_ratio(sigma))
}

/// `μ₀B(m_l + 2m_s)`.
pub fn zeeman_energy<T: Scalar>(b: T, m_l: i64, m_s: Rational64, k: &PhysicalConstants<T>) -> Result<T> {
    check_half(m_s, "m_s")?;
    let g_s = Rational64::from_integer(2);
    Ok(k.mu0.clone() * b * T::from_ratio(Rational64::from_integer(m_l) + g_s * m_s))
}

/// Diagonal operators on the `(m_l, m_s)` product basis.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeemanBasis<T> {
    pub basis: Vec<(i64, Rational64)>,
    pub lz: Vec<T>,
    pub sz: Vec<T>,
    /// `M̂_z = L̂_z/2 + Ŝ_z`
    pub m: Vec<T>,
    /// `μ̂_z = −(μ₀/ħ)(L̂_z + 2Ŝ_z)`
    pub mu: Vec<T>,
    /// `Ĥ_LS = (μ₀/ħ)B(L̂_z + 2Ŝ_z)`
    pub hamiltonian: Vec<T>,
}

impl<T: Scalar> ZeemanBasis<T> {
    /// Checks `μ̂ = −(2μ₀/ħ)M̂` entry by entry.
    pub fn moment_identity_holds(&self, k: &PhysicalConstants<T>) -> bool {
        let two = T::one() + T::one();
        let factor = -(two * k.mu0.clone() / k.hbar.clone());
        self.mu.iter().zip(&self.m).all(|(mu, m)| *mu == factor.clone() * m.clone())
    }
}

/// Builds the operators for `m_l ∈ [−l, l]`, `m_s ∈ {+1/2, −1/2}`.
pub fn zeeman_operators<T: Scalar>(l: i64, b: T, k: &PhysicalConstants<T>) -> ZeemanBasis<T> {
    let basis: Vec<(i64, Rational64)> = (-l..=l)
        .flat_map(|ml| [(ml, Rational64::new(1, 2)), (ml, Rational64::new(-1, 2))])
        .collect();
    let hbar = k.hbar.clone();
    let lz: Vec<T> = basis.iter().map(|&(ml, _)| hbar.clone() * T::from_int(ml)).collect();
    let sz: Vec<T> = basis.iter().map(|&(_, ms)| hbar.clone() * T::from_ratio(ms)).collect();
    let two = T::one() + T::one();
    let m = lz.iter().zip(&sz).map(|(l, s)| l.clone() * T::half() + s.clone()).collect();
    let lp2s: Vec<T> = lz.iter().zip(&sz).map(|(l, s)| l.clone() + two.clone() * s.clone()).collect();
    let ratio = k.mu0.clone() / hbar;
    let mu = lp2s.iter().map(|v| -(ratio.clone() * v.clone())).collect();
    let hamiltonian = lp2s.iter().map(|v| ratio.clone() * b.clone() * v.clone()).collect();
    ZeemanBasis { basis, lz, sz, m, mu, hamiltonian }
}
