//! Exact phases `e^{i(qπ + Σ c_s s)}` with rational `q`, rational
//! coefficients `c_s` and formal angle symbols `s`.
//!
//! Multiplication of phases is addition of exponents, so the type is an
//! abelian group under [`Mul`]. `q` is kept reduced to `[0, 2)`; symbols with
//! zero coefficient are dropped, which makes structural equality the same as
//! equality of phases.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use num_complex::Complex;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// A formal angle generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    /// Chain-rule phase `ζ_α` of a single stationary state.
    StateZeta(String),
    /// Phase `ζ_{αα'}` of the mode coupling states `α, α'`, as felt by one
    /// particle. Stored with `lo < hi`; `ζ_{α'α} = −ζ_{αα'}`.
    PairZeta { particle: u8, lo: String, hi: String },
    /// Internal rotation angle `φ` of a particle.
    Phi(u8),
    /// Free generator, identified by name.
    Named(String),
}

impl Symbol {
    pub fn with_particle_map(&self, f: impl Fn(u8) -> u8) -> Symbol {
        match self {
            Symbol::PairZeta { particle, lo, hi } => Symbol::PairZeta {
                particle: f(*particle),
                lo: lo.clone(),
                hi: hi.clone(),
            },
            Symbol::Phi(p) => Symbol::Phi(f(*p)),
            other => other.clone(),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::StateZeta(s) => write!(f, "zeta[{s}]"),
            Symbol::PairZeta { particle, lo, hi } => write!(f, "zeta_{particle}[{lo},{hi}]"),
            Symbol::Phi(p) => write!(f, "phi_{p}"),
            Symbol::Named(s) => write!(f, "{s}"),
        }
    }
}

fn reduce_mod2(q: Rational64) -> Rational64 {
    let two = Rational64::from_integer(2);
    let r = q % two;
    if r.is_negative() { r + two } else { r }
}

/// Unreduced real linear form `qπ + Σ c_s s`, the exponent of a phase.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Angle {
    pi: Rational64,
    symbols: BTreeMap<Symbol, Rational64>,
}

impl Angle {
    pub fn pi(q: Rational64) -> Self {
        Self { pi: q, symbols: BTreeMap::new() }
    }

    pub fn symbol(s: Symbol) -> Self {
        Self::pi(Rational64::zero()).plus_term(s, Rational64::one())
    }

    pub fn plus_term(mut self, s: Symbol, c: Rational64) -> Self {
        let e = self.symbols.entry(s.clone()).or_insert_with(Rational64::zero);
        *e += c;
        if e.is_zero() {
            self.symbols.remove(&s);
        }
        self
    }

    pub fn plus_pi(mut self, q: Rational64) -> Self {
        self.pi += q;
        self
    }

    pub fn scaled(&self, r: Rational64) -> Self {
        let mut out = Self::pi(self.pi * r);
        for (s, c) in &self.symbols {
            out = out.plus_term(s.clone(), c * r);
        }
        out
    }

    /// Exponent of `p`, with the constant reduced to `[0, 2)`.
    pub fn from_phase(p: &PhaseExpression) -> Self {
        let mut out = Self::pi(p.pi_part());
        for (s, c) in p.symbols() {
            out = out.plus_term(s.clone(), *c);
        }
        out
    }

    /// `e^{i·self}`, reduced.
    pub fn exp_i(&self) -> PhaseExpression {
        let mut out = PhaseExpression::pi_multiple(self.pi);
        for (s, c) in &self.symbols {
            out = out.with_term(s.clone(), *c);
        }
        out
    }
}

impl std::ops::Add for Angle {
    type Output = Angle;
    fn add(mut self, o: Angle) -> Angle {
        self.pi += o.pi;
        for (s, c) in o.symbols {
            self = self.plus_term(s, c);
        }
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PhaseExpression {
    pi_part: Rational64,
    symbols: BTreeMap<Symbol, Rational64>,
}

impl PhaseExpression {
    /// The unit phase `e^{0}`.
    pub fn one() -> Self {
        Self::default()
    }

    /// `e^{iqπ}`.
    pub fn pi_multiple(q: Rational64) -> Self {
        Self { pi_part: reduce_mod2(q), symbols: BTreeMap::new() }
    }

    /// `e^{iπ} = −1`.
    pub fn minus_one() -> Self {
        Self::pi_multiple(Rational64::one())
    }

    /// `e^{i c s}`.
    pub fn symbol(s: Symbol, c: Rational64) -> Self {
        Self::one().with_term(s, c)
    }

    /// `e^{iζ_{ab}}` for particle `p`, canonicalized by label order.
    pub fn pair_zeta(particle: u8, a: &str, b: &str) -> Self {
        match a.cmp(b) {
            std::cmp::Ordering::Equal => Self::one(),
            std::cmp::Ordering::Less => Self::symbol(
                Symbol::PairZeta { particle, lo: a.into(), hi: b.into() },
                Rational64::one(),
            ),
            std::cmp::Ordering::Greater => Self::symbol(
                Symbol::PairZeta { particle, lo: b.into(), hi: a.into() },
                -Rational64::one(),
            ),
        }
    }

    pub fn with_term(mut self, s: Symbol, c: Rational64) -> Self {
        let e = self.symbols.entry(s.clone()).or_insert_with(Rational64::zero);
        *e += c;
        if e.is_zero() {
            self.symbols.remove(&s);
        }
        self
    }

    pub fn pi_part(&self) -> Rational64 {
        self.pi_part
    }

    pub fn coefficient(&self, s: &Symbol) -> Rational64 {
        self.symbols.get(s).copied().unwrap_or_else(Rational64::zero)
    }

    pub fn symbols(&self) -> impl Iterator<Item = (&Symbol, &Rational64)> {
        self.symbols.iter()
    }

    pub fn is_constant(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.pi_part.is_zero()
    }

    /// `Some(±1)` when the phase is a real sign.
    pub fn as_sign(&self) -> Option<i64> {
        if !self.is_constant() {
            None
        } else if self.pi_part.is_zero() {
            Some(1)
        } else if self.pi_part.is_one() {
            Some(-1)
        } else {
            None
        }
    }

    pub fn inverse(&self) -> Self {
        self.powi(-1)
    }

    /// Complex conjugate; equal to the inverse for a pure phase.
    pub fn conj(&self) -> Self {
        self.inverse()
    }

    /// Integer power `e^{inθ}`.
    pub fn powi(&self, n: i64) -> Self {
        let r = Rational64::from_integer(n);
        let mut out = Self::pi_multiple(self.pi_part * r);
        for (s, c) in &self.symbols {
            out = out.with_term(s.clone(), c * r);
        }
        out
    }

    /// The exponent without the constant part.
    pub fn symbolic_part(&self) -> Self {
        Self { pi_part: Rational64::zero(), symbols: self.symbols.clone() }
    }

    /// Replaces every generator `s` by the (unreduced) angle `f(s)`.
    ///
    /// The replacement is applied to the exponent before reduction, so a
    /// shift `φ → φ + 2π` under coefficient `c` contributes `e^{2πic}`.
    pub fn map_symbols(&self, f: impl Fn(&Symbol) -> Angle) -> Self {
        let mut angle = Angle::pi(self.pi_part);
        for (s, c) in &self.symbols {
            angle = angle + f(s).scaled(*c);
        }
        angle.exp_i()
    }

    pub fn substitute(&self, s: &Symbol, value: &Angle) -> Self {
        self.map_symbols(|t| if t == s { value.clone() } else { Angle::symbol(t.clone()) })
    }

    pub fn evaluate<T: Real>(&self, bindings: &BTreeMap<Symbol, T>) -> Result<Complex<T>> {
        let mut angle = T::PI() * T::from_ratio(self.pi_part);
        for (s, c) in &self.symbols {
            let v = bindings.get(s).ok_or_else(|| Error::MissingBinding(s.to_string()))?;
            angle = angle + T::from_ratio(*c) * *v;
        }
        Ok(Complex::from_polar(T::one(), angle))
    }

    /// Canonical text form `q*pi + c1*s1 + c2*s2 ...`.
    pub fn canonical(&self) -> String {
        self.to_string()
    }
}

impl Mul for &PhaseExpression {
    type Output = PhaseExpression;
    // exponents add
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, o: &PhaseExpression) -> PhaseExpression {
        let mut out = PhaseExpression::pi_multiple(self.pi_part + o.pi_part);
        out.symbols = self.symbols.clone();
        for (s, c) in &o.symbols {
            out = out.with_term(s.clone(), *c);
        }
        out
    }
}

impl Mul for PhaseExpression {
    type Output = PhaseExpression;
    fn mul(self, o: PhaseExpression) -> PhaseExpression {
        &self * &o
    }
}

impl fmt::Display for PhaseExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*pi", self.pi_part)?;
        for (s, c) in &self.symbols {
            write!(f, " + {c}*{s}")?;
        }
        Ok(())
    }
}

impl Serialize for PhaseExpression {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = ser.serialize_map(Some(3))?;
        m.serialize_entry("canonical", &self.canonical())?;
        m.serialize_entry("pi", &self.pi_part.to_string())?;
        let syms: BTreeMap<String, String> =
            self.symbols.iter().map(|(s, c)| (s.to_string(), c.to_string())).collect();
        m.serialize_entry("symbols", &syms)?;
        m.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn pi_part_reduced_mod_two() {
        assert_eq!(PhaseExpression::pi_multiple(r(5, 2)), PhaseExpression::pi_multiple(r(1, 2)));
        assert_eq!(PhaseExpression::pi_multiple(r(-1, 1)), PhaseExpression::minus_one());
        assert_eq!(PhaseExpression::pi_multiple(r(-4, 1)), PhaseExpression::one());
        assert_eq!(PhaseExpression::minus_one().as_sign(), Some(-1));
    }

    #[test]
    fn pair_zeta_antisymmetric() {
        let a = PhaseExpression::pair_zeta(1, "a", "b");
        let b = PhaseExpression::pair_zeta(1, "b", "a");
        assert!((&a * &b).is_one());
        assert_eq!(a.inverse(), b);
    }

    #[test]
    fn canonical_text() {
        let e = PhaseExpression::pi_multiple(r(1, 2))
            .with_term(Symbol::Phi(1), r(-1, 2))
            .with_term(Symbol::Named("s".into()), r(3, 1));
        assert_eq!(e.canonical(), "1/2*pi + -1/2*phi_1 + 3*s");
    }

    #[test]
    fn missing_binding() {
        let e = PhaseExpression::symbol(Symbol::Phi(2), r(1, 1));
        let b: BTreeMap<Symbol, f64> = BTreeMap::new();
        assert_eq!(e.evaluate(&b), Err(Error::MissingBinding("phi_2".into())));
    }

    #[test]
    fn substitution() {
        // ζ → ζ' + π turns e^{iζ} e^{-iζ'} into −1
        let z1 = Symbol::Named("z1".into());
        let z2 = Symbol::Named("z2".into());
        let e = PhaseExpression::symbol(z1.clone(), r(1, 1)).with_term(z2.clone(), r(-1, 1));
        let v = Angle::symbol(z2).plus_pi(r(1, 1));
        assert_eq!(e.substitute(&z1, &v), PhaseExpression::minus_one());
    }

    #[test]
    fn full_turn_shift_under_half_coefficient() {
        // e^{-iφ/2} with φ → φ + 2π picks up e^{-iπ} = −1
        let e = PhaseExpression::symbol(Symbol::Phi(1), r(-1, 2));
        let shifted = e.substitute(&Symbol::Phi(1), &Angle::symbol(Symbol::Phi(1)).plus_pi(r(2, 1)));
        assert_eq!(shifted, &e * &PhaseExpression::minus_one());
    }

    fn arb_expr() -> impl Strategy<Value = PhaseExpression> {
        let sym = prop_oneof![
            (0u8..3).prop_map(Symbol::Phi),
            "[a-c]".prop_map(Symbol::StateZeta),
            "[x-z]".prop_map(Symbol::Named),
        ];
        (
            (-12i64..12, 1i64..5),
            prop::collection::vec((sym, -6i64..6, 1i64..4), 0..5),
        )
            .prop_map(|((qn, qd), terms)| {
                terms.into_iter().fold(PhaseExpression::pi_multiple(r(qn, qd)), |e, (s, n, d)| {
                    e.with_term(s, r(n, d))
                })
            })
    }

    proptest! {
        #[test]
        fn abelian_group(a in arb_expr(), b in arb_expr(), c in arb_expr()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a * &a.inverse()).is_one());
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!(&PhaseExpression::one() * &a, a);
        }

        #[test]
        fn evaluation_is_homomorphic(a in arb_expr(), b in arb_expr(), vals in prop::array::uniform3(-3.0f64..3.0)) {
            let mut bind = BTreeMap::new();
            for (i, v) in vals.iter().enumerate() {
                bind.insert(Symbol::Phi(i as u8), *v);
            }
            for (name, v) in ["a", "b", "c"].iter().zip(vals) {
                bind.insert(Symbol::StateZeta(name.to_string()), v * 0.7);
            }
            for (name, v) in ["x", "y", "z"].iter().zip(vals) {
                bind.insert(Symbol::Named(name.to_string()), v * 1.3);
            }
            let lhs = (&a * &b).evaluate(&bind).unwrap();
            let rhs = a.evaluate(&bind).unwrap() * b.evaluate(&bind).unwrap();
            prop_assert!((lhs - rhs).norm() < 1e-12);
            prop_assert!((lhs.norm() - 1.0).abs() < 1e-12);
        }
    }
}
