//! Mechanical derivation of `λ_AB` from the bipartite construction, with a
//! hash-linked JSON trace.

use num_rational::Rational64;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::Result;

use super::antisym::{antisymmetrize_n, MultiparticleState};
use super::bipartite::{
    exchange_particles, exchange_states, make_bipartite, solve_lambda, AngleOrdering, BipartiteState, Coupling,
};
use super::phase::PhaseExpression;

/// Hex prefix length of the state hashes.
pub const HASH_LEN: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivationStep {
    pub operation: String,
    pub input_hash: String,
    pub output_hash: String,
    /// Proportionality phase `output = phase · input`, when one exists.
    pub phase: Option<String>,
}

#[derive(Debug, Clone)]
pub struct Derivation {
    pub initial: BipartiteState,
    pub lambda: PhaseExpression,
    pub coupling: Coupling,
    pub solved: BipartiteState,
    /// `F` in `ψ^{BA} = F ψ^{AB}` for the solved state.
    pub state_exchange_factor: PhaseExpression,
    /// `F` in `ψ₂₁ = F ψ₁₂` for the solved state, per ordering.
    pub particle_exchange_factors: [PhaseExpression; 2],
    pub steps: Vec<DerivationStep>,
}

pub fn state_hash(state: &BipartiteState) -> String {
    let text = serde_json::to_string(&state.to_json()).expect("state json");
    let digest = Sha256::digest(text.as_bytes());
    hex::encode(digest)[..HASH_LEN].to_string()
}

fn step(op: &str, input: &BipartiteState, output: &BipartiteState, phase: Option<&PhaseExpression>) -> DerivationStep {
    DerivationStep {
        operation: op.to_string(),
        input_hash: state_hash(input),
        output_hash: state_hash(output),
        phase: phase.map(|p| p.canonical()),
    }
}

/// Builds the generic state, exchanges the particles under both angle
/// orderings, imposes invariance, and checks the solved state against the
/// state exchange.
pub fn derive_exchange(
    alpha: &str,
    alpha_prime: &str,
    sigma: Rational64,
    sigma_prime: Rational64,
) -> Result<Derivation> {
    let psi = make_bipartite(alpha, alpha_prime, sigma, sigma_prime)?;
    let mut steps = Vec::new();

    let st = exchange_states(&psi)?;
    steps.push(step("exchange_states", &psi, &st.state, Some(&st.factor)));
    for (name, ord) in [
        ("exchange_particles[phi2_greater]", AngleOrdering::Phi2Greater),
        ("exchange_particles[phi1_greater]", AngleOrdering::Phi1Greater),
    ] {
        let ex = exchange_particles(&psi, ord)?;
        steps.push(step(name, &psi, &ex.state, Some(&ex.factor)));
    }

    let sol = solve_lambda(&psi)?;
    steps.push(step("solve_lambda", &psi, &sol.state, None));

    let solved = sol.state.clone();
    let st = exchange_states(&solved)?;
    steps.push(step("exchange_states", &solved, &st.state, Some(&st.factor)));
    let p2 = exchange_particles(&solved, AngleOrdering::Phi2Greater)?;
    steps.push(step("exchange_particles[phi2_greater]", &solved, &p2.state, Some(&p2.factor)));
    let p1 = exchange_particles(&solved, AngleOrdering::Phi1Greater)?;
    steps.push(step("exchange_particles[phi1_greater]", &solved, &p1.state, Some(&p1.factor)));

    Ok(Derivation {
        initial: psi,
        lambda: sol.lambda,
        coupling: sol.coupling,
        solved,
        state_exchange_factor: st.factor,
        particle_exchange_factors: [p2.factor, p1.factor],
        steps,
    })
}

impl Derivation {
    /// The solved state equals the normalized antisymmetrizer output on the
    /// two composite labels.
    pub fn matches_antisymmetrizer(&self) -> Result<bool> {
        let labels = vec![self.initial.first().label(), self.initial.second().label()];
        let reference: MultiparticleState = antisymmetrize_n(&labels)?;
        let terms = self.solved.terms();
        let ok = terms.len() == reference.terms.len()
            && terms.iter().zip(&reference.terms).all(|(t, (sign, ket))| {
                let labels: Vec<String> = t.ket.slots.iter().map(|s| s.label()).collect();
                t.amplitude == reference.norm && t.phase.as_sign() == Some(*sign) && labels == *ket
            });
        Ok(ok)
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "initial": self.initial.to_json(),
            "lambda_AB": self.lambda.canonical(),
            "coupling": match &self.coupling {
                Coupling::InPhase => "in-phase".to_string(),
                Coupling::Antiphase => "antiphase".to_string(),
                Coupling::Other(q) => format!("{q}*pi"),
            },
            "solved": self.solved.to_json(),
            "solved_text": self.solved.to_string(),
            "state_exchange_factor": self.state_exchange_factor.canonical(),
            "particle_exchange_factors": self.particle_exchange_factors.iter().map(|f| f.canonical()).collect::<Vec<_>>(),
            "steps": self.steps,
        })
    }
}
