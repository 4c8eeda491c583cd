//! Spectral (stationary-state) description of a bound particle: matrix
//! element tables, the circular decomposition of the transverse position,
//! the commutator sum rule, the two routes to `⟨L_z⟩`, the `ħ/2` split of
//! the polarized contributions, and the Zeeman energies with `g_S = 2`.

mod expansion;
mod oscillator;
mod spin;

pub use expansion::{
    chain_rule_amplitudes, evaluate_expansion, expansion_product, DynamicalExpansion,
    ExpansionTerm, StateExpansion,
};
pub use oscillator::{circular_state_in_cartesian, ho_matrix_elements, ladder_position_element};
pub use spin::{m_expectation, spin_split, zeeman_energy, zeeman_operators, SpinSplit, ZeemanBasis};

use std::fmt;

use ndarray::Array2;
use num_complex::Complex;

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Opaque quantum-number tuple identifying a stationary state.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateLabel(pub Vec<i64>);

impl fmt::Display for StateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "|{}>", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StationaryState<T> {
    pub label: StateLabel,
    pub energy: T,
    pub omega: T,
}

impl<T: Real> StationaryState<T> {
    /// `ω_α = E_α/ħ`.
    pub fn new(label: StateLabel, energy: T, hbar: T) -> Self {
        Self { label, energy, omega: energy / hbar }
    }
}

/// Which polarized expression to use for `⟨L_z⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LzMethod {
    /// From `|x̃⁺|² − |x̃⁻|²`.
    Polarized,
    /// From `x̃_αβ ỹ_βα − ỹ_αβ x̃_βα`.
    Direct,
}

/// Position matrix elements between stationary states.
#[derive(Debug, Clone)]
pub struct MatrixElementTable<T> {
    states: Vec<StationaryState<T>>,
    x: Array2<Complex<T>>,
    y: Array2<Complex<T>>,
    z: Array2<Complex<T>>,
    xplus: Array2<Complex<T>>,
    xminus: Array2<Complex<T>>,
    open: Vec<bool>,
}

impl<T: Real> MatrixElementTable<T> {
    /// Builds a table; `open[α]` marks states whose coupled set reaches
    /// outside the table (selection-rule knowledge of the caller).
    pub fn new(
        states: Vec<StationaryState<T>>,
        x: Array2<Complex<T>>,
        y: Array2<Complex<T>>,
        z: Array2<Complex<T>>,
        open: Vec<bool>,
    ) -> Result<Self> {
        let n = states.len();
        if open.len() != n || [&x, &y, &z].iter().any(|m| m.dim() != (n, n)) {
            return Err(Error::InvalidInput("matrix dimensions do not match the state list".into()));
        }
        let tol = T::lit(1e-12);
        for (name, m) in [("x", &x), ("y", &y), ("z", &z)] {
            for a in 0..n {
                for b in 0..n {
                    if (m[[b, a]] - m[[a, b]].conj()).norm() > tol {
                        return Err(Error::InvalidInput(format!("{name} is not Hermitian at ({a},{b})")));
                    }
                }
            }
        }
        let (xplus, xminus) = circular_components(&x, &y);
        Ok(Self { states, x, y, z, xplus, xminus, open })
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[StationaryState<T>] {
        &self.states
    }

    pub fn index_of(&self, label: &StateLabel) -> Option<usize> {
        self.states.iter().position(|s| &s.label == label)
    }

    pub fn x(&self) -> &Array2<Complex<T>> {
        &self.x
    }

    pub fn y(&self) -> &Array2<Complex<T>> {
        &self.y
    }

    pub fn z(&self) -> &Array2<Complex<T>> {
        &self.z
    }

    pub fn xplus(&self) -> &Array2<Complex<T>> {
        &self.xplus
    }

    pub fn xminus(&self) -> &Array2<Complex<T>> {
        &self.xminus
    }

    pub fn is_open(&self, alpha: usize) -> bool {
        self.open[alpha]
    }

    /// `ω_αβ = ω_α − ω_β`.
    pub fn omega(&self, alpha: usize, beta: usize) -> T {
        self.states[alpha].omega - self.states[beta].omega
    }

    /// Returns a copy with `x` and `y` scaled by `s`.
    pub fn scaled_transverse(&self, s: T) -> Self {
        let f = Complex::new(s, T::zero());
        let x = self.x.mapv(|v| v * f);
        let y = self.y.mapv(|v| v * f);
        let (xplus, xminus) = circular_components(&x, &y);
        Self { x, y, xplus, xminus, ..self.clone() }
    }

    fn closed(&self, alpha: usize) -> Result<()> {
        if alpha >= self.len() {
            return Err(Error::InvalidInput(format!("state index {alpha} out of range")));
        }
        if self.open[alpha] {
            return Err(Error::IncompleteBasis { state: self.states[alpha].label.to_string() });
        }
        Ok(())
    }
}

/// `x̃⁺ = (x̃ + iỹ)/√2`, `x̃⁻ = (ix̃ + ỹ)/√2`, elementwise.
pub fn circular_components<T: Real>(
    x: &Array2<Complex<T>>,
    y: &Array2<Complex<T>>,
) -> (Array2<Complex<T>>, Array2<Complex<T>>) {
    let s = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
    let i = Complex::new(T::zero(), T::one());
    let plus = ndarray::Zip::from(x).and(y).map_collect(|&a, &b| (a + i * b) * s);
    let minus = ndarray::Zip::from(x).and(y).map_collect(|&a, &b| (i * a + b) * s);
    (plus, minus)
}

/// `m Σ_β ω_βα (|x̃⁺_αβ|² + |x̃⁻_αβ|²)`, which equals `ħ` for a closed state.
pub fn sum_rule<T: Real>(table: &MatrixElementTable<T>, alpha: usize, k: &PhysicalConstants<T>) -> Result<T> {
    table.closed(alpha)?;
    let mut acc = T::zero();
    for beta in 0..table.len() {
        let w = table.omega(beta, alpha);
        acc = acc + w * (table.xplus[[alpha, beta]].norm_sqr() + table.xminus[[alpha, beta]].norm_sqr());
    }
    Ok(k.m * acc)
}

/// `⟨L_z⟩_α` by either spectral route.
///
/// Direct: `i m Σ_β ω_βα (x̃_αβ ỹ_βα − ỹ_αβ x̃_βα)` with `x̃_αβ = ⟨α|x|β⟩`.
/// Polarized: `m Σ_β ω_αβ (|x̃⁺_αβ|² − |x̃⁻_αβ|²)`. The polarized bracket
/// expands to `i(x̃*ỹ − x̃ỹ*)`, the negative of the direct bracket, so the
/// frequency enters as `ω_αβ` for the two routes to coincide.
pub fn lz_expectation<T: Real>(
    table: &MatrixElementTable<T>,
    alpha: usize,
    method: LzMethod,
    k: &PhysicalConstants<T>,
) -> Result<T> {
    table.closed(alpha)?;
    let n = table.len();
    let acc = match method {
        LzMethod::Polarized => (0..n).fold(T::zero(), |acc, b| {
            acc + table.omega(alpha, b)
                * (table.xplus[[alpha, b]].norm_sqr() - table.xminus[[alpha, b]].norm_sqr())
        }),
        LzMethod::Direct => {
            let i = Complex::new(T::zero(), T::one());
            let sum = (0..n).fold(Complex::new(T::zero(), T::zero()), |acc, b| {
                let w = Complex::new(table.omega(b, alpha), T::zero());
                acc + w * (table.x[[alpha, b]] * table.y[[b, alpha]] - table.y[[alpha, b]] * table.x[[b, alpha]])
            });
            (i * sum).re
        }
    };
    Ok(k.m * acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn circular_norm_identity() {
        let x = array![[c(0.3, 0.1), c(-1.2, 0.4)], [c(0.5, -2.0), c(0.0, 0.7)]];
        let y = array![[c(1.1, -0.3), c(0.2, 0.2)], [c(-0.4, 0.9), c(2.0, 0.0)]];
        let (p, m) = circular_components(&x, &y);
        for (((a, b), pp), mm) in x.iter().zip(&y).zip(&p).zip(&m) {
            let lhs = pp.norm_sqr() + mm.norm_sqr();
            assert!((lhs - (a.norm_sqr() + b.norm_sqr())).abs() < 1e-13);
            // |x⁺|² − |x⁻|² = i(ỹx̃* − x̃ỹ*)
            let diff = c(0.0, 1.0) * (b * a.conj() - a * b.conj());
            assert!((pp.norm_sqr() - mm.norm_sqr() - diff.re).abs() < 1e-13);
        }
    }

    #[test]
    fn vanishing_y_gives_equal_moduli() {
        let x = array![[c(0.3, 0.1), c(-1.2, 0.4)], [c(0.5, -2.0), c(0.0, 0.7)]];
        let y = Array2::from_elem((2, 2), c(0.0, 0.0));
        let (p, m) = circular_components(&x, &y);
        for (a, b) in p.iter().zip(&m) {
            assert!((a.norm() - b.norm()).abs() < 1e-15);
        }
    }

    #[test]
    fn real_elements_have_no_polarization_imbalance() {
        let x = array![[c(0.3, 0.0), c(-1.2, 0.0)], [c(0.5, 0.0), c(0.9, 0.0)]];
        let y = array![[c(1.1, 0.0), c(0.2, 0.0)], [c(-0.4, 0.0), c(2.0, 0.0)]];
        let (p, m) = circular_components(&x, &y);
        for (a, b) in p.iter().zip(&m) {
            assert!((a.norm_sqr() - b.norm_sqr()).abs() < 1e-15);
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let s = |e| StationaryState::new(StateLabel(vec![e]), e as f64, 1.0);
        let x = array![[c(0.0, 0.0), c(1.0, 0.0)], [c(2.0, 0.0), c(0.0, 0.0)]];
        let z = Array2::from_elem((2, 2), c(0.0, 0.0));
        let r = MatrixElementTable::new(vec![s(0), s(1)], x, z.clone(), z, vec![false, false]);
        assert!(matches!(r, Err(Error::InvalidInput(_))));
    }
}
