//! Spin in the internal-rotation-angle representation.
//!
//! States carry the factor `e^{iγ_α φ}` and `Ŝ_z = −iħ∂_φ`. The admissible
//! values of `γ_α` follow from requiring every pair of them to differ by
//! exactly one unit, which leaves only two values, and from the sign
//! opposition of those two.

use num_complex::Complex;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exchange::PhaseExpression;
use crate::scalar::{Real, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiState {
    gamma: Rational64,
    base_label: String,
    sigma: Rational64,
}

impl PhiState {
    /// `|α(φ)⟩ = e^{iγφ}|α₀, σ⟩` with `σ = γ ∈ {+1/2, −1/2}`.
    pub fn new(gamma: Rational64, base_label: impl Into<String>) -> Result<Self> {
        if gamma.abs() != Rational64::new(1, 2) {
            return Err(Error::InvalidInput(format!("gamma must be ±1/2, got {gamma}")));
        }
        Ok(Self { gamma, base_label: base_label.into(), sigma: gamma })
    }

    pub fn gamma(&self) -> Rational64 {
        self.gamma
    }

    pub fn sigma(&self) -> Rational64 {
        self.sigma
    }

    pub fn base_label(&self) -> &str {
        &self.base_label
    }

    /// `e^{iγφ}` at angle `phi`.
    pub fn phase_at<T: Real>(&self, phi: T) -> Complex<T> {
        Complex::from_polar(T::one(), T::from_ratio(self.gamma) * phi)
    }

    /// Factor acquired under `e^{−iŜ_zθ/ħ}` for `θ = q·π`: `e^{−iγqπ}`.
    pub fn rotation_factor(&self, q: Rational64) -> PhaseExpression {
        PhaseExpression::pi_multiple(-self.gamma * q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SzMode {
    Symbolic,
    /// Finite differences on `points` samples over the double cover `[0, 4π)`.
    Numeric { points: usize },
}

pub const MIN_SZ_POINTS: usize = 16;

/// Exact eigenvalue `ħγ` of `−iħ∂_φ`.
pub fn sz_eigenvalue<T: Scalar>(state: &PhiState, hbar: T) -> T {
    hbar * T::from_ratio(state.gamma)
}

// eighth-order central first-derivative weights for offsets 1..=4
const STENCIL: [f64; 4] = [4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0];

/// Applies `Ŝ_z = −iħ∂_φ` to the state and returns the eigenvalue.
///
/// The numeric route samples `e^{iγφ}` on `[0, 4π)`, where half-integer
/// states are periodic, differentiates with a periodic eighth-order central
/// stencil, and averages `−iħ f'/f` over the grid.
pub fn apply_sz<T: Real>(state: &PhiState, mode: SzMode, hbar: T) -> Result<T> {
    match mode {
        SzMode::Symbolic => Ok(sz_eigenvalue(state, hbar)),
        SzMode::Numeric { points } => {
            if points < MIN_SZ_POINTS {
                return Err(Error::Resolution { got: points, min: MIN_SZ_POINTS });
            }
            let h = T::lit(4.0) * T::PI() / T::from_int(points as i64);
            let f: Vec<Complex<T>> = (0..points).map(|j| state.phase_at(h * T::from_int(j as i64))).collect();
            let minus_i_hbar = Complex::new(T::zero(), -hbar);
            let mut acc = T::zero();
            for j in 0..points {
                let mut d = Complex::new(T::zero(), T::zero());
                for (o, w) in STENCIL.iter().enumerate() {
                    let o = o + 1;
                    let fwd = f[(j + o) % points];
                    let back = f[(j + points - o) % points];
                    d = d + (fwd - back) * T::lit(*w);
                }
                d = d / h;
                acc = acc + (minus_i_hbar * d / f[j]).re;
            }
            Ok(acc / T::from_int(points as i64))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dichotomy {
    /// All values pairwise distinct and every pair differs by exactly 1.
    pub pairwise_feasible: bool,
    /// Exactly two values, opposite in sign.
    pub sign_opposed: bool,
    /// `[+1/2, −1/2]` when both conditions hold.
    pub canonical: Option<[Rational64; 2]>,
}

/// Tests a candidate value set for `γ_α` against the pairwise
/// unit-difference condition and the sign-opposition condition.
pub fn dichotomy_solve(candidates: &[Rational64]) -> Result<Dichotomy> {
    if candidates.is_empty() {
        return Err(Error::InvalidInput("empty candidate set".into()));
    }
    let one = Rational64::one();
    let mut pairwise_feasible = true;
    for (i, a) in candidates.iter().enumerate() {
        for b in &candidates[i + 1..] {
            if a == b || (a - b).abs() != one {
                pairwise_feasible = false;
            }
        }
    }
    let sign_opposed = candidates.len() == 2 && candidates[0] == -candidates[1] && !candidates[0].is_zero();
    let canonical = (pairwise_feasible && sign_opposed).then(|| [Rational64::new(1, 2), Rational64::new(-1, 2)]);
    Ok(Dichotomy { pairwise_feasible, sign_opposed, canonical })
}

/// Searches all 3-element subsets of `values` for one satisfying the
/// pairwise condition.
pub fn find_feasible_triple(values: &[Rational64]) -> Option<[Rational64; 3]> {
    let n = values.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let t = [values[i], values[j], values[k]];
                if dichotomy_solve(&t).map(|d| d.pairwise_feasible).unwrap_or(false) {
                    return Some(t);
                }
            }
        }
    }
    None
}

/// Enumerates `γ_a − γ_c = s₁`, `γ_b − γ_c = s₂` over `s₁, s₂ ∈ {±1}` and
/// returns the sign pairs for which `γ_a, γ_b` are also distinct with unit
/// difference. Empty means no third value can exist.
pub fn triple_sign_cases() -> Vec<(i64, i64)> {
    let mut ok = Vec::new();
    for s1 in [-1i64, 1] {
        for s2 in [-1i64, 1] {
            let diff = s1 - s2;
            if diff != 0 && diff.abs() == 1 {
                ok.push((s1, s2));
            }
        }
    }
    ok
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn canonical_pair() {
        let d = dichotomy_solve(&[r(1, 2), r(-1, 2)]).unwrap();
        assert!(d.pairwise_feasible && d.sign_opposed);
        assert_eq!(d.canonical, Some([r(1, 2), r(-1, 2)]));
        let d = dichotomy_solve(&[r(0, 1), r(1, 1)]).unwrap();
        assert!(d.pairwise_feasible && !d.sign_opposed && d.canonical.is_none());
    }

    #[test]
    fn rejects_triples_and_repeats() {
        assert!(!dichotomy_solve(&[r(0, 1), r(1, 1), r(-1, 1)]).unwrap().pairwise_feasible);
        assert!(!dichotomy_solve(&[r(1, 3), r(1, 3)]).unwrap().pairwise_feasible);
        assert!(dichotomy_solve(&[]).is_err());
        assert!(triple_sign_cases().is_empty());
    }

    #[test]
    fn symbolic_eigenvalues() {
        let up = PhiState::new(r(1, 2), "a").unwrap();
        assert_eq!(sz_eigenvalue(&up, r(1, 1)), r(1, 2));
        assert_eq!(apply_sz(&up, SzMode::Symbolic, 2.0), Ok(1.0));
        assert!(PhiState::new(r(1, 1), "a").is_err());
    }

    #[test]
    fn numeric_eigenvalue() {
        let down = PhiState::new(r(-1, 2), "a").unwrap();
        let v = apply_sz(&down, SzMode::Numeric { points: 1024 }, 1.0).unwrap();
        assert!((v + 0.5).abs() < 1e-8);
        assert_eq!(
            apply_sz(&down, SzMode::Numeric { points: 15 }, 1.0),
            Err(Error::Resolution { got: 15, min: 16 })
        );
    }

    #[test]
    fn half_integer_state_needs_double_cover() {
        let up = PhiState::new(r(1, 2), "a").unwrap();
        let tau = std::f64::consts::TAU;
        assert!((up.phase_at(tau) + 1.0).norm() < 1e-15);
        assert!((up.phase_at(2.0 * tau) - 1.0).norm() < 1e-14);
        assert_eq!(up.rotation_factor(r(2, 1)), PhaseExpression::minus_one());
        assert_eq!(up.rotation_factor(r(4, 1)), PhaseExpression::one());
    }

    fn small_rational() -> impl Strategy<Value = Rational64> {
        (-8i64..=8, 1i64..=4).prop_map(|(n, d)| Rational64::new(n, d))
    }

    proptest! {
        #[test]
        fn permutation_invariant(mut v in prop::collection::vec(small_rational(), 1..5), seed in any::<u64>()) {
            let before = dichotomy_solve(&v).unwrap().pairwise_feasible;
            let n = v.len();
            v.rotate_left((seed as usize) % n);
            v.reverse();
            prop_assert_eq!(before, dichotomy_solve(&v).unwrap().pairwise_feasible);
        }

        #[test]
        fn superset_of_infeasible_is_infeasible(v in prop::collection::vec(small_rational(), 1..4), extra in small_rational()) {
            if !dichotomy_solve(&v).unwrap().pairwise_feasible {
                let mut w = v.clone();
                w.push(extra);
                prop_assert!(!dichotomy_solve(&w).unwrap().pairwise_feasible);
            }
        }

        #[test]
        fn numeric_agrees_with_symbolic(points in 256usize..2048, up in any::<bool>()) {
            let g = if up { r(1, 2) } else { r(-1, 2) };
            let s = PhiState::new(g, "a").unwrap();
            let num = apply_sz(&s, SzMode::Numeric { points }, 1.0).unwrap();
            let sym = apply_sz(&s, SzMode::Symbolic, 1.0).unwrap();
            prop_assert!((num - sym).abs() < 1e-8);
        }
    }
}
