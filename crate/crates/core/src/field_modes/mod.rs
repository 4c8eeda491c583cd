//! Circularly polarized plane-wave modes of the vacuum field in a periodic box.
//!
//! Field conventions: `A` is the mode sum with amplitudes `e^{iζ}e^{iγφ}`,
//! `E = -∂A/∂t`, `B = ∇×A`, energy density `(|E|² + c²|B|²)/2`, momentum
//! density `E×B`, and intrinsic angular momentum density `E×A`. With these,
//! a single mode carries `ħω/2`, `ħω k̂/2c` and `γħ k̂/2`.

mod quadrature;
mod realization;
mod triad;

pub use quadrature::{min_grid, mode_observables};
pub use realization::{
    ensemble_phase_coherence, field_at, mode_index, realization_totals, sample_phases,
    sample_realization, RealizationTotals, ZpfRealization,
};
pub use triad::{build_triad, Triad};

use num_complex::Complex;

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::vec3::Vec3;

/// Circular polarization label γ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarization {
    /// γ = +1
    Plus,
    /// γ = −1
    Minus,
}

impl Polarization {
    pub fn sign(self) -> i64 {
        match self {
            Polarization::Plus => 1,
            Polarization::Minus => -1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Polarization::Plus => Polarization::Minus,
            Polarization::Minus => Polarization::Plus,
        }
    }

    pub fn from_sign(s: i64) -> Result<Self> {
        match s {
            1 => Ok(Polarization::Plus),
            -1 => Ok(Polarization::Minus),
            _ => Err(Error::InvalidInput(format!("polarization must be ±1, got {s}"))),
        }
    }
}

/// One plane-wave vacuum mode with wave vector `k = 2πn/L`.
#[derive(Debug, Clone, PartialEq)]
pub struct Mode<T> {
    pub n: [i64; 3],
    pub gamma: Polarization,
    pub zeta: T,
    pub phi: T,
    pub omega: T,
    k: Vec3<T>,
    triad: Triad<T>,
}

impl<T: Real> Mode<T> {
    pub fn new(n: [i64; 3], gamma: Polarization, zeta: T, phi: T, box_len: T, c: T) -> Result<Self> {
        if !(box_len > T::zero()) {
            return Err(Error::InvalidInput("box length must be positive".into()));
        }
        let triad = build_triad(n)?;
        let k = Vec3::from_ints(n) * (T::TAU() / box_len);
        let omega = c * k.norm();
        Ok(Self { n, gamma, zeta, phi, omega, k, triad })
    }

    pub fn wave_vector(&self) -> Vec3<T> {
        self.k
    }

    pub fn triad(&self) -> &Triad<T> {
        &self.triad
    }

    /// Mode amplitude `a = e^{iζ} e^{iγφ}`.
    pub fn amplitude(&self) -> Complex<T> {
        let g = T::from_int(self.gamma.sign());
        Complex::from_polar(T::one(), self.zeta + g * self.phi)
    }

    /// `ε̂⁺ = (ê₁ + iê₂)/√2`, `ε̂⁻ = i(ê₁ − iê₂)/√2`.
    pub fn polarization_vector(&self) -> [Complex<T>; 3] {
        polarization_vector(&self.triad, self.gamma)
    }

    /// Closed-form `(H, P, J)` of this mode.
    pub fn analytic_observables(&self, k: &PhysicalConstants<T>) -> ModeObservables<T> {
        let two = T::lit(2.0);
        let khat = self.triad.e3;
        let g = T::from_int(self.gamma.sign());
        ModeObservables {
            energy: k.hbar * self.omega / two,
            momentum: khat * (k.hbar * self.omega / (two * k.c)),
            angular_momentum: khat * (g * k.hbar / two),
        }
    }

    /// Single-mode contribution to `(A, E, B)` at `(r, t)` for box volume `volume`.
    pub fn field(&self, r: &Vec3<T>, t: T, volume: T, hbar: T) -> FieldSample<T> {
        // A = √(ħ/Vω) Re[u],  u = −i ε a e^{i(k·r − ωt)}
        let scale = (hbar / (volume * self.omega)).sqrt();
        let theta = self.k.dot(r) - self.omega * t;
        let carrier = self.amplitude() * Complex::from_polar(T::one(), theta);
        let minus_i = Complex::new(T::zero(), -T::one());
        let eps = self.polarization_vector();
        let u: [Complex<T>; 3] = eps.map(|e| minus_i * e * carrier);
        let re = |v: [Complex<T>; 3]| Vec3::new(v[0].re, v[1].re, v[2].re) * scale;
        let i_omega = Complex::new(T::zero(), self.omega);
        let e_field = u.map(|c| i_omega * c);
        // B = Re[i k × u]
        let k = self.k.0.map(|v| Complex::new(v, T::zero()));
        let kxu = [
            k[1] * u[2] - k[2] * u[1],
            k[2] * u[0] - k[0] * u[2],
            k[0] * u[1] - k[1] * u[0],
        ];
        let i = Complex::new(T::zero(), T::one());
        FieldSample {
            a: re(u),
            e: re(e_field),
            b: re(kxu.map(|c| i * c)),
        }
    }
}

pub(crate) fn polarization_vector<T: Real>(triad: &Triad<T>, gamma: Polarization) -> [Complex<T>; 3] {
    let inv = T::FRAC_1_SQRT_2();
    let mut out = [Complex::new(T::zero(), T::zero()); 3];
    for (j, slot) in out.iter_mut().enumerate() {
        let (a, b) = (triad.e1[j], triad.e2[j]);
        *slot = match gamma {
            Polarization::Plus => Complex::new(a, b) * inv,
            // i(a − ib) = b + ia
            Polarization::Minus => Complex::new(b, a) * inv,
        };
    }
    out
}

/// Potentials and fields at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSample<T> {
    pub a: Vec3<T>,
    pub e: Vec3<T>,
    pub b: Vec3<T>,
}

impl<T: Real> FieldSample<T> {
    pub fn zero() -> Self {
        Self { a: Vec3::zero(), e: Vec3::zero(), b: Vec3::zero() }
    }
}

impl<T: Real> std::ops::Add for FieldSample<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self { a: self.a + o.a, e: self.e + o.e, b: self.b + o.b }
    }
}

/// Energy, linear momentum and intrinsic angular momentum of one mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeObservables<T> {
    pub energy: T,
    pub momentum: Vec3<T>,
    pub angular_momentum: Vec3<T>,
}
