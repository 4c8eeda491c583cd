//! Can `n` particles couple pairwise in antiphase to one mode?
//!
//! Phases `θ_1..θ_n` with `θ_i − θ_j ≡ π (mod 2π)` for every pair `i ≠ j`.

use num_rational::Rational64;
use num_traits::{One, Zero};

/// Reduces a multiple of π into `[0, 2)`.
fn reduce(q: Rational64) -> Rational64 {
    let two = Rational64::from_integer(2);
    let r = q - (q / two).floor() * two;
    if r < Rational64::zero() { r + two } else { r }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntiphaseResult {
    pub feasible: bool,
    /// Phases in units of π, when feasible.
    pub witness: Option<Vec<Rational64>>,
    /// First pair found in conflict, when infeasible.
    pub conflict: Option<(usize, usize)>,
}

/// Decides feasibility by propagation: fix `θ_1 = 0`, propagate along the
/// star spanning tree rooted at particle 1, then check every other edge.
pub fn antiphase_feasible(n: usize) -> AntiphaseResult {
    if n == 0 {
        return AntiphaseResult { feasible: true, witness: Some(Vec::new()), conflict: None };
    }
    let mut theta = vec![Rational64::zero(); n];
    for t in theta.iter_mut().skip(1) {
        *t = reduce(Rational64::one());
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if reduce(theta[i] - theta[j]) != Rational64::one() {
                return AntiphaseResult { feasible: false, witness: None, conflict: Some((i, j)) };
            }
        }
    }
    AntiphaseResult { feasible: true, witness: Some(theta), conflict: None }
}

/// Exhaustive search over the grid `θ_i ∈ {2πk/steps}` with `θ_1 = 0`.
///
/// `steps` must be even for the grid to contain π.
pub fn antiphase_grid_search(n: usize, steps: i64) -> Option<Vec<Rational64>> {
    if n == 0 {
        return Some(Vec::new());
    }
    let grid: Vec<Rational64> = (0..steps).map(|k| Rational64::new(2 * k, steps)).collect();
    let mut theta = vec![Rational64::zero(); n];
    fn rec(theta: &mut Vec<Rational64>, i: usize, grid: &[Rational64]) -> bool {
        if i == theta.len() {
            return true;
        }
        for g in grid {
            theta[i] = *g;
            if (0..i).all(|j| reduce(theta[i] - theta[j]) == Rational64::one()) && rec(theta, i + 1, grid) {
                return true;
            }
        }
        false
    }
    if rec(&mut theta, 1, &grid) { Some(theta) } else { None }
}
