use std::fmt;
use std::ops::{Mul, Neg};

use num_rational::Rational64;
use num_traits::{One, Zero};

/// Exact real `coeff · √radicand` with a square-free radicand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Surd {
    coeff: Rational64,
    radicand: u64,
}

impl Surd {
    pub fn new(coeff: Rational64, radicand: u64) -> Self {
        if coeff.is_zero() || radicand == 0 {
            return Self { coeff: Rational64::zero(), radicand: 1 };
        }
        let mut out = 1u64;
        let mut rest = radicand;
        let mut c = coeff;
        let mut f = 2u64;
        while f * f <= rest {
            while rest.is_multiple_of(f * f) {
                rest /= f * f;
                c *= Rational64::from_integer(f as i64);
            }
            f += 1;
        }
        out *= rest;
        Self { coeff: c, radicand: out }
    }

    pub fn rational(r: Rational64) -> Self {
        Self::new(r, 1)
    }

    /// `1/√n`.
    pub fn inv_sqrt(n: u64) -> Self {
        Self::new(Rational64::new(1, n as i64), n)
    }

    pub fn coeff(&self) -> Rational64 {
        self.coeff
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        (*self.coeff.numer() as f64 / *self.coeff.denom() as f64) * (self.radicand as f64).sqrt()
    }

    /// Square as an exact rational.
    pub fn squared(&self) -> Rational64 {
        self.coeff * self.coeff * Rational64::from_integer(self.radicand as i64)
    }
}

impl Mul for Surd {
    type Output = Surd;
    fn mul(self, o: Surd) -> Surd {
        Surd::new(self.coeff * o.coeff, self.radicand * o.radicand)
    }
}

impl Mul<Rational64> for Surd {
    type Output = Surd;
    fn mul(self, r: Rational64) -> Surd {
        Surd::new(self.coeff * r, self.radicand)
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd { coeff: -self.coeff, radicand: self.radicand }
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand == 1 {
            write!(f, "{}", self.coeff)
        } else if self.coeff.is_one() {
            write!(f, "sqrt({})", self.radicand)
        } else {
            write!(f, "{}*sqrt({})", self.coeff, self.radicand)
        }
    }
}
