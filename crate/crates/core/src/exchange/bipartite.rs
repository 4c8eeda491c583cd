//! Two-particle entangled states `(|A⟩ + λ_AB|B⟩)/√2` and their two
//! exchange operations.
//!
//! `|A⟩ = e^{−iσφ₁}|α₀σ⟩₁ e^{−iσ'φ₂}|α₀'σ'⟩₂` and `|B⟩` has the single-particle
//! states interchanged. The entanglement parameter is the product of field
//! amplitudes `λ_AB = (e^{iζ_αα'})₁ (e^{iζ_α'α})₂`, held as an exact phase in
//! the pair symbols `ζ_{αα'}` of each particle.

use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

use super::phase::{Angle, PhaseExpression, Symbol};
use super::surd::Surd;

/// Single-particle state `|α₀, σ⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub orbital: String,
    pub sigma: Rational64,
}

impl Slot {
    pub fn new(orbital: impl Into<String>, sigma: Rational64) -> Result<Self> {
        if !(sigma * Rational64::from_integer(2)).is_integer() {
            return Err(Error::InvalidInput(format!("spin projection {sigma} is not a multiple of 1/2")));
        }
        Ok(Self { orbital: orbital.into(), sigma })
    }

    /// Composite label used to name the coupling mode symbols.
    pub fn label(&self) -> String {
        let sign = if self.sigma >= Rational64::zero() { "+" } else { "" };
        format!("{}:{sign}{}", self.orbital, self.sigma)
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{}>", self.label())
    }
}

/// Product ket; slot `i` belongs to particle `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositeKet {
    pub slots: Vec<Slot>,
    /// `Π_i e^{−iσ_i φ_i}`
    pub prefactor: PhaseExpression,
}

impl CompositeKet {
    pub fn new(slots: Vec<Slot>) -> Self {
        let prefactor = slots.iter().enumerate().fold(PhaseExpression::one(), |acc, (i, s)| {
            acc.with_term(Symbol::Phi(i as u8 + 1), -s.sigma)
        });
        Self { slots, prefactor }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub amplitude: Surd,
    pub phase: PhaseExpression,
    pub ket: CompositeKet,
}

impl Term {
    /// Coefficient phase times ket prefactor.
    pub fn total_phase(&self) -> PhaseExpression {
        &self.phase * &self.ket.prefactor
    }
}

/// How the internal angles are carried into each other on particle exchange.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngleOrdering {
    /// `φ₂ > φ₁`: `φ₁ → φ₂`, `φ₂ → 2π + φ₁`.
    Phi2Greater,
    /// `φ₁ > φ₂`: `φ₂ → φ₁`, `φ₁ → 2π + φ₂`.
    Phi1Greater,
}

impl AngleOrdering {
    /// Ordering of two concrete angles; ties go to `Phi2Greater` and are
    /// reported through the second element.
    pub fn from_angles(phi1: f64, phi2: f64) -> (Self, bool) {
        if phi1 > phi2 {
            (AngleOrdering::Phi1Greater, false)
        } else {
            (AngleOrdering::Phi2Greater, phi1 == phi2)
        }
    }

    fn other(self) -> Self {
        match self {
            AngleOrdering::Phi2Greater => AngleOrdering::Phi1Greater,
            AngleOrdering::Phi1Greater => AngleOrdering::Phi2Greater,
        }
    }

    fn relabel(self, s: &Symbol) -> Angle {
        let two = Rational64::from_integer(2);
        match (self, s) {
            (AngleOrdering::Phi2Greater, Symbol::Phi(1)) => Angle::symbol(Symbol::Phi(2)),
            (AngleOrdering::Phi2Greater, Symbol::Phi(2)) => Angle::symbol(Symbol::Phi(1)).plus_pi(two),
            (AngleOrdering::Phi1Greater, Symbol::Phi(2)) => Angle::symbol(Symbol::Phi(1)),
            (AngleOrdering::Phi1Greater, Symbol::Phi(1)) => Angle::symbol(Symbol::Phi(2)).plus_pi(two),
            // remaining particle-indexed symbols swap particles
            (_, other) => Angle::symbol(other.with_particle_map(|p| 3 - p)),
        }
    }
}

/// `(|A⟩ + λ_AB|B⟩)/√2`, or any state derived from it by the exchange
/// operations.
///
/// Equality compares the vectors term by term, independent of term order
/// and of how the state was constructed.
#[derive(Debug, Clone)]
pub struct BipartiteState {
    first: Slot,
    second: Slot,
    terms: Vec<Term>,
    lambda: PhaseExpression,
    constraints: Vec<(Symbol, Angle)>,
}

/// `λ_AB = (e^{iζ_{αα'}})₁ (e^{iζ_{α'α}})₂`.
pub fn lambda_expression(first: &Slot, second: &Slot) -> PhaseExpression {
    let (a, b) = (first.label(), second.label());
    &PhaseExpression::pair_zeta(1, &a, &b) * &PhaseExpression::pair_zeta(2, &b, &a)
}

/// Builds `(|A⟩ + λ_AB|B⟩)/√2` for particle 1 in `(α, σ)` and particle 2 in
/// `(α', σ')` within `|A⟩`.
pub fn make_bipartite(
    alpha: &str,
    alpha_prime: &str,
    sigma: Rational64,
    sigma_prime: Rational64,
) -> Result<BipartiteState> {
    let first = Slot::new(alpha, sigma)?;
    let second = Slot::new(alpha_prime, sigma_prime)?;
    if first == second {
        return Err(Error::InvalidInput(format!("the two single-particle states coincide: {first}")));
    }
    Ok(BipartiteState::from_slots(first, second, &[]))
}

impl BipartiteState {
    fn from_slots(first: Slot, second: Slot, constraints: &[(Symbol, Angle)]) -> Self {
        let amp = Surd::inv_sqrt(2);
        let apply = |e: PhaseExpression| {
            constraints.iter().fold(e, |acc, (s, v)| acc.substitute(s, v))
        };
        let lambda = apply(lambda_expression(&first, &second));
        let a = CompositeKet::new(vec![first.clone(), second.clone()]);
        let b = CompositeKet::new(vec![second.clone(), first.clone()]);
        let terms = vec![
            Term { amplitude: amp, phase: PhaseExpression::one(), ket: a },
            Term { amplitude: amp, phase: lambda.clone(), ket: b },
        ];
        Self { first, second, terms, lambda, constraints: constraints.to_vec() }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Current value of `λ_AB`: symbolic until solved.
    pub fn lambda(&self) -> &PhaseExpression {
        &self.lambda
    }

    pub fn first(&self) -> &Slot {
        &self.first
    }

    pub fn second(&self) -> &Slot {
        &self.second
    }

    /// `E_A = E_α + E_α' = E_B` holds for every term because each composite
    /// ket contains the same two single-particle states.
    pub fn is_degenerate(&self) -> bool {
        let mut reference: Option<Vec<&Slot>> = None;
        self.terms.iter().all(|t| {
            let mut s: Vec<&Slot> = t.ket.slots.iter().collect();
            s.sort();
            match &reference {
                None => {
                    reference = Some(s);
                    true
                }
                Some(r) => *r == s,
            }
        })
    }

    /// Returns `F` with `self = F · other`, when the states are proportional
    /// by a pure phase.
    pub fn proportionality(&self, other: &BipartiteState) -> Option<PhaseExpression> {
        if self.terms.len() != other.terms.len() {
            return None;
        }
        let mut factor: Option<PhaseExpression> = None;
        for t in &other.terms {
            let mine = self.terms.iter().find(|s| s.ket.slots == t.ket.slots)?;
            if mine.amplitude != t.amplitude {
                return None;
            }
            let f = &mine.total_phase() * &t.total_phase().inverse();
            match &factor {
                None => factor = Some(f),
                Some(g) if *g == f => {}
                Some(_) => return None,
            }
        }
        factor
    }

    pub fn scaled(&self, f: &PhaseExpression) -> Self {
        let mut out = self.clone();
        for t in &mut out.terms {
            t.phase = &t.phase * f;
        }
        out
    }

    /// Imposes `symbol = value` on every coefficient and on `λ`.
    fn constrained(&self, symbol: Symbol, value: Angle) -> Self {
        let mut out = self.clone();
        for t in &mut out.terms {
            t.phase = t.phase.substitute(&symbol, &value);
        }
        out.lambda = out.lambda.substitute(&symbol, &value);
        out.constraints.push((symbol, value));
        out
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|t| {
                json!({
                    "amplitude": t.amplitude.to_string(),
                    "phase": t.phase,
                    "ket": t.ket.slots.iter().map(|s| s.label()).collect::<Vec<_>>(),
                    "prefactor": t.ket.prefactor,
                })
            })
            .collect();
        json!({ "lambda_AB": self.lambda, "terms": terms })
    }
}

impl PartialEq for BipartiteState {
    fn eq(&self, other: &Self) -> bool {
        self.proportionality(other).is_some_and(|f| f.is_one())
    }
}

impl Eq for BipartiteState {}

impl fmt::Display for BipartiteState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            let ket: String = t.ket.slots.iter().map(|s| s.to_string()).collect();
            let sign = match t.phase.as_sign() {
                Some(1) => "+".to_string(),
                Some(_) => "-".to_string(),
                None => format!("+ e^i({})", t.phase),
            };
            let sign = if i == 0 && sign == "+" { String::new() } else { format!(" {sign} ") };
            write!(f, "{sign}{}*{ket}", t.amplitude)?;
        }
        Ok(())
    }
}

/// Result of an exchange operation: the new state and `F` with
/// `new = F · old`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exchanged {
    pub state: BipartiteState,
    pub factor: PhaseExpression,
}

/// `(A, B) → (B, A)`: rebuilds the state with the single-particle states
/// interchanged, so that `λ_AB` becomes `λ_BA`.
pub fn exchange_states(psi: &BipartiteState) -> Result<Exchanged> {
    let state = BipartiteState::from_slots(psi.second.clone(), psi.first.clone(), &psi.constraints);
    let factor = state
        .proportionality(psi)
        .ok_or_else(|| Error::Contradiction("exchanged state is not proportional to the original".into()))?;
    Ok(Exchanged { state, factor })
}

fn exchange_branch(psi: &BipartiteState, ordering: AngleOrdering) -> BipartiteState {
    let mut out = psi.clone();
    for t in &mut out.terms {
        let prefactor = t.ket.prefactor.map_symbols(|s| ordering.relabel(s));
        let phase = t.phase.map_symbols(|s| ordering.relabel(s));
        let mut slots = t.ket.slots.clone();
        slots.reverse();
        // the relabeled prefactor is absorbed into the coefficient so that
        // the ket keeps its canonical e^{−iσφ} form
        let ket = CompositeKet::new(slots);
        t.phase = &(&phase * &prefactor) * &ket.prefactor.inverse();
        t.ket = ket;
    }
    out.lambda = out.lambda.map_symbols(|s| ordering.relabel(s));
    out
}

/// `(1, 2) → (2, 1)` including the internal angles.
///
/// Both angle orderings are evaluated and must produce the same state.
pub fn exchange_particles(psi: &BipartiteState, ordering: AngleOrdering) -> Result<Exchanged> {
    let state = exchange_branch(psi, ordering);
    let other = exchange_branch(psi, ordering.other());
    if state != other {
        return Err(Error::BranchMismatch(format!("{state} vs {other}")));
    }
    let factor = state
        .proportionality(psi)
        .ok_or_else(|| Error::Contradiction("particle-exchanged state is not proportional to the original".into()))?;
    Ok(Exchanged { state, factor })
}

/// Phase relation between the two particles' couplings to the mode `ω_αα'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coupling {
    InPhase,
    Antiphase,
    Other(Rational64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaSolution {
    /// Solved `λ_AB` (a constant phase).
    pub lambda: PhaseExpression,
    /// `F` in `ψ₂₁ = F ψ₁₂` before solving.
    pub exchange_factor: PhaseExpression,
    /// The state with `λ_AB` substituted.
    pub state: BipartiteState,
    /// `(ζ_αα')₁ − (ζ_αα')₂` after solving, in units of π.
    pub coupling: Coupling,
}

/// Imposes `ψ₂₁ = ψ₁₂` and solves for `λ_AB`.
pub fn solve_lambda(psi: &BipartiteState) -> Result<LambdaSolution> {
    let ex = exchange_particles(psi, AngleOrdering::Phi2Greater)?;
    let f = ex.factor.clone();
    let lam = psi.lambda.clone();

    let (solved, value) = if lam.is_constant() {
        if !f.is_one() {
            return Err(Error::Contradiction(format!("exchange factor {f} cannot equal 1")));
        }
        (psi.clone(), lam)
    } else {
        // F = e^{iq_F π} λ^c for a rational c; pick c from any symbol of λ
        let (pivot, pivot_coeff) = lam.symbols().next().map(|(s, c)| (s.clone(), *c)).expect("non-constant");
        let c = f.coefficient(&pivot) / pivot_coeff;
        let lam_sym = Angle::from_phase(&lam.symbolic_part()).scaled(c).exp_i();
        if f.symbolic_part() != lam_sym {
            return Err(Error::Contradiction(format!("exchange factor {f} is not a power of lambda {lam}")));
        }
        if c.is_zero() {
            let what = if f.is_one() { "does not determine" } else { "contradicts any" };
            return Err(Error::Contradiction(format!("exchange factor {f} {what} lambda")));
        }
        if c.abs_ne_one() {
            return Err(Error::Contradiction(format!("lambda^{c} = const has no unique solution")));
        }
        // e^{i(q_F π + c·Λ)} = 1 with Λ the exponent of λ  ⇒  Λ ≡ −q_F π / c
        let lam_pi = -f.pi_part() / c;
        // Λ = k·pivot + rest  ⇒  pivot = (lam_pi·π − rest)/k
        let rest = Angle::from_phase(&lam.symbolic_part()).plus_term(pivot.clone(), -pivot_coeff);
        let value_angle = (Angle::pi(lam_pi) + rest.scaled(-Rational64::one())).scaled(pivot_coeff.recip());
        let solved = psi.constrained(pivot, value_angle);
        let v = solved.lambda.clone();
        (solved, v)
    };

    let coupling = match value.as_sign() {
        Some(1) => Coupling::InPhase,
        Some(_) => Coupling::Antiphase,
        None => Coupling::Other(value.pi_part()),
    };
    Ok(LambdaSolution { lambda: value, exchange_factor: f, state: solved, coupling })
}

trait AbsNeOne {
    fn abs_ne_one(&self) -> bool;
}

impl AbsNeOne for Rational64 {
    fn abs_ne_one(&self) -> bool {
        *self != Rational64::one() && *self != -Rational64::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half() -> Rational64 {
        Rational64::new(1, 2)
    }

    fn generic() -> BipartiteState {
        make_bipartite("a", "b", half(), -half()).unwrap()
    }

    #[test]
    fn two_terms_with_lambda() {
        let psi = generic();
        assert_eq!(psi.terms().len(), 2);
        assert!(psi.terms().iter().all(|t| t.amplitude == Surd::inv_sqrt(2)));
        assert!(psi.terms()[0].phase.is_one());
        assert_eq!(psi.terms()[1].phase, *psi.lambda());
        assert!(psi.is_degenerate());
    }

    #[test]
    fn prefactor_of_first_ket() {
        let psi = generic();
        let p = &psi.terms()[0].ket.prefactor;
        assert_eq!(p.coefficient(&Symbol::Phi(1)), -half());
        assert_eq!(p.coefficient(&Symbol::Phi(2)), half());
    }

    #[test]
    fn lambda_ba_is_inverse() {
        let psi = generic();
        let ba = lambda_expression(psi.second(), psi.first());
        assert!((&ba * psi.lambda()).is_one());
        assert_eq!(ba, psi.lambda().conj());
    }

    #[test]
    fn identical_states_rejected() {
        assert!(make_bipartite("a", "a", half(), half()).is_err());
        assert!(make_bipartite("a", "a", half(), -half()).is_ok());
        assert!(make_bipartite("a", "b", Rational64::new(1, 3), half()).is_err());
    }

    #[test]
    fn state_exchange_factor() {
        let psi = generic();
        let ex = exchange_states(&psi).unwrap();
        assert_eq!(ex.factor, psi.lambda().inverse());
        let back = exchange_states(&ex.state).unwrap();
        assert_eq!(back.state, psi);
        assert!((&ex.factor * &back.factor).is_one());
    }

    #[test]
    fn particle_exchange_factor() {
        for (s, t) in [(half(), half()), (-half(), -half()), (half(), -half())] {
            let psi = make_bipartite("a", "b", s, t).unwrap();
            let lam_ba = psi.lambda().inverse();
            for ord in [AngleOrdering::Phi2Greater, AngleOrdering::Phi1Greater] {
                let ex = exchange_particles(&psi, ord).unwrap();
                assert_eq!(ex.factor, &PhaseExpression::minus_one() * &lam_ba);
            }
        }
    }

    #[test]
    fn integer_probe_factor() {
        let one = Rational64::one();
        let psi = make_bipartite("a", "b", one, one).unwrap();
        let ex = exchange_particles(&psi, AngleOrdering::Phi1Greater).unwrap();
        assert_eq!(ex.factor, psi.lambda().inverse());
    }

    #[test]
    fn mixed_branches_disagree() {
        let psi = make_bipartite("a", "b", half(), Rational64::one()).unwrap();
        assert!(matches!(exchange_particles(&psi, AngleOrdering::Phi2Greater), Err(Error::BranchMismatch(_))));
    }

    #[test]
    fn tie_goes_to_phi2_branch() {
        assert_eq!(AngleOrdering::from_angles(1.0, 1.0), (AngleOrdering::Phi2Greater, true));
        assert_eq!(AngleOrdering::from_angles(2.0, 1.0), (AngleOrdering::Phi1Greater, false));
        assert_eq!(AngleOrdering::from_angles(0.5, 1.0), (AngleOrdering::Phi2Greater, false));
    }

    #[test]
    fn solves_to_minus_one() {
        let sol = solve_lambda(&generic()).unwrap();
        assert_eq!(sol.lambda, PhaseExpression::minus_one());
        assert_eq!(sol.coupling, Coupling::Antiphase);
        let t = sol.state.terms();
        assert!(t[0].phase.is_one());
        assert_eq!(t[1].phase.as_sign(), Some(-1));
        assert_eq!(sol.state.to_string(), "1/2*sqrt(2)*|a:+1/2>|b:-1/2> - 1/2*sqrt(2)*|b:-1/2>|a:+1/2>");
        // re-solving the solved state is consistent
        assert_eq!(solve_lambda(&sol.state).unwrap().lambda, PhaseExpression::minus_one());
    }

    #[test]
    fn integer_probe_solves_to_plus_one() {
        let one = Rational64::one();
        let sol = solve_lambda(&make_bipartite("a", "b", one, -one).unwrap()).unwrap();
        assert_eq!(sol.lambda, PhaseExpression::one());
        assert_eq!(sol.coupling, Coupling::InPhase);
    }
}
