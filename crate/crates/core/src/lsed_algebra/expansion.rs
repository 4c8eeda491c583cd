//! Linear spectral expansions `G_α(t) = G̃_αα + Σ_β G̃_αβ a_αβ e^{iω_αβ t}`.
//!
//! The amplitudes are exact [`PhaseExpression`]s. Under the chain rule they
//! are `a_αβ = e^{i(ζ_α − ζ_β)} e^{i(γ_α − γ_β)φ}`, and products of two
//! expansions are again expansions whose coefficients are matrix products.

use std::collections::BTreeMap;

use ndarray::Array2;
use num_complex::Complex;
use num_rational::Rational64;

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::exchange::{PhaseExpression, Symbol};
use crate::scalar::Real;

use super::{MatrixElementTable, StateLabel};

/// Chain-rule amplitudes for states with phase symbols `ζ_α = StateZeta(label)`,
/// polarization indices `γ_α`, and a common rotation angle `phi`.
pub fn chain_rule_amplitudes(labels: &[StateLabel], gammas: &[Rational64], phi: &Symbol) -> Array2<PhaseExpression> {
    let n = labels.len();
    Array2::from_shape_fn((n, n), |(a, b)| {
        if a == b {
            return PhaseExpression::one();
        }
        PhaseExpression::symbol(Symbol::StateZeta(labels[a].to_string()), Rational64::from_integer(1))
            .with_term(Symbol::StateZeta(labels[b].to_string()), Rational64::from_integer(-1))
            .with_term(phi.clone(), gammas[a] - gammas[b])
    })
}

/// A dynamical variable over a fixed set of stationary states.
#[derive(Debug, Clone, PartialEq)]
pub struct DynamicalExpansion<T> {
    labels: Vec<StateLabel>,
    omegas: Vec<T>,
    coeffs: Array2<Complex<T>>,
    amplitudes: Array2<PhaseExpression>,
}

/// One state's view of an expansion.
#[derive(Debug, Clone, PartialEq)]
pub struct StateExpansion<T> {
    pub diag: Complex<T>,
    pub terms: Vec<ExpansionTerm<T>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionTerm<T> {
    pub beta: usize,
    pub coeff: Complex<T>,
    pub omega: T,
    pub amplitude: PhaseExpression,
}

impl<T: Real> DynamicalExpansion<T> {
    pub fn new(
        labels: Vec<StateLabel>,
        omegas: Vec<T>,
        coeffs: Array2<Complex<T>>,
        amplitudes: Array2<PhaseExpression>,
    ) -> Result<Self> {
        let n = labels.len();
        if omegas.len() != n || coeffs.dim() != (n, n) || amplitudes.dim() != (n, n) {
            return Err(Error::InvalidInput("expansion dimensions do not match".into()));
        }
        Ok(Self { labels, omegas, coeffs, amplitudes })
    }

    /// `G̃ = δ`.
    pub fn identity(labels: Vec<StateLabel>, omegas: Vec<T>, amplitudes: Array2<PhaseExpression>) -> Result<Self> {
        let n = labels.len();
        let one = Complex::new(T::one(), T::zero());
        let zero = Complex::new(T::zero(), T::zero());
        let coeffs = Array2::from_shape_fn((n, n), |(a, b)| if a == b { one } else { zero });
        Self::new(labels, omegas, coeffs, amplitudes)
    }

    /// Position `x` of a tabulated system.
    pub fn position_x(table: &MatrixElementTable<T>, amplitudes: Array2<PhaseExpression>) -> Result<Self> {
        let (labels, omegas) = split_states(table);
        Self::new(labels, omegas, table.x().clone(), amplitudes)
    }

    /// `p_x = m ẋ`, with `p̃_αβ = i m ω_αβ x̃_αβ`.
    pub fn momentum_x(
        table: &MatrixElementTable<T>,
        amplitudes: Array2<PhaseExpression>,
        k: &PhysicalConstants<T>,
    ) -> Result<Self> {
        let (labels, omegas) = split_states(table);
        let coeffs = Array2::from_shape_fn(table.x().dim(), |(a, b)| {
            Complex::new(T::zero(), k.m * table.omega(a, b)) * table.x()[[a, b]]
        });
        Self::new(labels, omegas, coeffs, amplitudes)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn coeffs(&self) -> &Array2<Complex<T>> {
        &self.coeffs
    }

    pub fn amplitudes(&self) -> &Array2<PhaseExpression> {
        &self.amplitudes
    }

    pub fn omega(&self, a: usize, b: usize) -> T {
        self.omegas[a] - self.omegas[b]
    }

    pub fn row(&self, alpha: usize) -> StateExpansion<T> {
        let terms = (0..self.len())
            .filter(|&b| b != alpha && self.coeffs[[alpha, b]] != Complex::new(T::zero(), T::zero()))
            .map(|b| ExpansionTerm {
                beta: b,
                coeff: self.coeffs[[alpha, b]],
                omega: self.omega(alpha, b),
                amplitude: self.amplitudes[[alpha, b]].clone(),
            })
            .collect();
        StateExpansion { diag: self.coeffs[[alpha, alpha]], terms }
    }

    /// Coefficient-wise difference; both operands must share amplitudes.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self { coeffs: &self.coeffs - &other.coeffs, ..self.clone() })
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.labels != other.labels || self.omegas != other.omegas {
            return Err(Error::InvalidInput("expansions are over different state sets".into()));
        }
        if self.amplitudes != other.amplitudes {
            return Err(Error::Coherence("operands carry different amplitude assignments".into()));
        }
        Ok(())
    }
}

fn split_states<T: Real>(table: &MatrixElementTable<T>) -> (Vec<StateLabel>, Vec<T>) {
    table.states().iter().map(|s| (s.label.clone(), s.omega)).unzip()
}

/// `G_α(t)` at each time in `times`, with symbol values taken from `bindings`.
pub fn evaluate_expansion<T: Real>(
    exp: &DynamicalExpansion<T>,
    alpha: usize,
    bindings: &BTreeMap<Symbol, T>,
    times: &[T],
) -> Result<Vec<Complex<T>>> {
    let row = exp.row(alpha);
    let amps = row
        .terms
        .iter()
        .map(|t| t.amplitude.evaluate(bindings).map(|a| t.coeff * a))
        .collect::<Result<Vec<_>>>()?;
    Ok(times
        .iter()
        .map(|&t| {
            row.terms.iter().zip(&amps).fold(row.diag, |acc, (term, a)| {
                acc + *a * Complex::from_polar(T::one(), term.omega * t)
            })
        })
        .collect())
}

/// Product `GH` of two expansions over the same states.
///
/// Every contributing pair of amplitudes must close under the chain rule,
/// `a_αβ' a_β'β = a_αβ`, as an exact symbolic identity.
pub fn expansion_product<T: Real>(
    g: &DynamicalExpansion<T>,
    h: &DynamicalExpansion<T>,
) -> Result<DynamicalExpansion<T>> {
    g.check_compatible(h)?;
    let n = g.len();
    let zero = Complex::new(T::zero(), T::zero());
    let mut coeffs = Array2::from_elem((n, n), zero);
    for a in 0..n {
        for b in 0..n {
            let mut acc = zero;
            for mid in 0..n {
                let (l, r) = (g.coeffs[[a, mid]], h.coeffs[[mid, b]]);
                if l == zero || r == zero {
                    continue;
                }
                if &g.amplitudes[[a, mid]] * &h.amplitudes[[mid, b]] != g.amplitudes[[a, b]] {
                    return Err(Error::Coherence(format!(
                        "a[{},{}]·a[{},{}] != a[{},{}]",
                        g.labels[a], g.labels[mid], g.labels[mid], g.labels[b], g.labels[a], g.labels[b]
                    )));
                }
                acc = acc + l * r;
            }
            coeffs[[a, b]] = acc;
        }
    }
    Ok(DynamicalExpansion { coeffs, ..g.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<StateLabel> {
        (0..n as i64).map(|i| StateLabel(vec![i])).collect()
    }

    fn chain(n: usize) -> Array2<PhaseExpression> {
        let gam: Vec<Rational64> = (0..n as i64).map(Rational64::from_integer).collect();
        chain_rule_amplitudes(&labels(n), &gam, &Symbol::Phi(1))
    }

    #[test]
    fn single_term_at_origin() {
        let amps = chain(2);
        let c = ndarray::array![
            [Complex::new(0.5, 0.0), Complex::new(0.25, -1.0)],
            [Complex::new(0.25, 1.0), Complex::new(0.0, 0.0)]
        ];
        let e = DynamicalExpansion::new(labels(2), vec![0.0, 1.0], c, amps).unwrap();
        // a = 1 when every phase symbol is zero
        let bind: BTreeMap<Symbol, f64> = [
            (Symbol::StateZeta("|0>".into()), 0.0),
            (Symbol::StateZeta("|1>".into()), 0.0),
            (Symbol::Phi(1), 0.0),
        ]
        .into();
        let v = evaluate_expansion(&e, 0, &bind, &[0.0]).unwrap();
        assert!((v[0] - Complex::new(0.75, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn unbound_symbol() {
        let amps = chain(2);
        let c = Array2::from_elem((2, 2), Complex::new(1.0, 0.0));
        let e = DynamicalExpansion::new(labels(2), vec![0.0, 1.0], c, amps).unwrap();
        let r = evaluate_expansion(&e, 0, &BTreeMap::new(), &[0.0]);
        assert!(matches!(r, Err(Error::MissingBinding(_))));
    }

    #[test]
    fn chain_rule_closure() {
        let amps = chain(4);
        for a in 0..4 {
            for m in 0..4 {
                for b in 0..4 {
                    assert_eq!(&amps[[a, m]] * &amps[[m, b]], amps[[a, b]]);
                }
            }
        }
    }

    #[test]
    fn incoherent_amplitudes_rejected() {
        let n = 3;
        let amps = Array2::from_shape_fn((n, n), |(a, b)| {
            if a == b {
                PhaseExpression::one()
            } else {
                PhaseExpression::symbol(Symbol::Named(format!("a{a}{b}")), Rational64::from_integer(1))
            }
        });
        let c = Array2::from_elem((n, n), Complex::new(1.0, 0.0));
        let e = DynamicalExpansion::new(labels(n), vec![0.0, 1.0, 3.0], c, amps).unwrap();
        assert!(matches!(expansion_product(&e, &e), Err(Error::Coherence(_))));
    }
}
