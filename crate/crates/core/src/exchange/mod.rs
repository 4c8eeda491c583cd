//! Exact phase bookkeeping for identical-particle exchange.

mod antiphase;
mod antisym;
mod bipartite;
mod phase;
mod surd;
mod trace;

pub use antiphase::{antiphase_feasible, antiphase_grid_search, AntiphaseResult};
pub use antisym::{antisymmetrize_n, permutation_sign, MultiparticleState, MAX_PARTICLES};
pub use bipartite::{
    exchange_particles, exchange_states, lambda_expression, make_bipartite, solve_lambda, AngleOrdering,
    BipartiteState, CompositeKet, Coupling, Exchanged, LambdaSolution, Slot, Term,
};
pub use phase::{Angle, PhaseExpression, Symbol};
pub use surd::Surd;
pub use trace::{derive_exchange, state_hash, Derivation, DerivationStep, HASH_LEN};
