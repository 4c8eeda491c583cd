use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Physical constants in the active unit system.
///
/// `mu0` is the Bohr magneton `|e|ħ/(2mc)`; the charge enters only through it.
#[derive(Debug, Clone, PartialEq)]
pub struct PhysicalConstants<T> {
    pub hbar: T,
    pub c: T,
    pub m: T,
    pub mu0: T,
}

impl<T: Scalar> PhysicalConstants<T> {
    /// ħ = c = m = 1, with the magneton evaluated for unit charge (μ₀ = 1/2).
    pub fn natural() -> Self {
        Self {
            hbar: T::one(),
            c: T::one(),
            m: T::one(),
            mu0: T::half(),
        }
    }

    pub fn new(hbar: T, c: T, m: T, mu0: T) -> Result<Self> {
        for (name, v) in [("hbar", &hbar), ("c", &c), ("m", &m), ("mu0", &mu0)] {
            if *v <= T::zero() {
                return Err(Error::InvalidInput(format!("{name} must be strictly positive")));
            }
        }
        Ok(Self { hbar, c, m, mu0 })
    }

    /// Explicit ħ, c, m with the magneton computed for unit charge.
    pub fn explicit(hbar: T, c: T, m: T) -> Result<Self> {
        if m <= T::zero() || c <= T::zero() {
            return Err(Error::InvalidInput("m and c must be strictly positive".into()));
        }
        let mu0 = hbar.clone() / ((T::one() + T::one()) * m.clone() * c.clone());
        Self::new(hbar, c, m, mu0)
    }
}

impl<T: Scalar> Default for PhysicalConstants<T> {
    fn default() -> Self {
        Self::natural()
    }
}
