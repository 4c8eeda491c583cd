//! Normalized antisymmetrizer over `n` single-particle labels.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};

use super::surd::Surd;

/// Largest `n` accepted by [`antisymmetrize_n`].
pub const MAX_PARTICLES: usize = 8;

/// `norm · Σ sign·|labels⟩`; slot `i` is particle `i + 1`.
#[derive(Debug, Clone)]
pub struct MultiparticleState {
    pub norm: Surd,
    pub terms: Vec<(i64, Vec<String>)>,
}

impl MultiparticleState {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn neg(&self) -> Self {
        Self {
            norm: self.norm,
            terms: self.terms.iter().map(|(s, k)| (-s, k.clone())).collect(),
        }
    }

    fn as_map(&self) -> BTreeMap<&[String], i64> {
        self.terms.iter().map(|(s, k)| (k.as_slice(), *s)).collect()
    }
}

impl PartialEq for MultiparticleState {
    fn eq(&self, other: &Self) -> bool {
        (self.is_zero() && other.is_zero()) || (self.norm == other.norm && self.as_map() == other.as_map())
    }
}

impl fmt::Display for MultiparticleState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "{} * (", self.norm)?;
        for (i, (s, k)) in self.terms.iter().enumerate() {
            let sign = if *s < 0 { "-" } else if i > 0 { "+" } else { "" };
            let sep = if i > 0 { " " } else { "" };
            write!(f, "{sep}{sign}{}|{}>", if s.abs() > 1 { s.abs().to_string() } else { String::new() }, k.join(","))?;
        }
        write!(f, ")")
    }
}

/// Number of inversions; parity of the permutation.
pub fn permutation_sign(perm: &[usize]) -> i64 {
    let inv = perm.iter().enumerate().flat_map(|(i, a)| perm[i + 1..].iter().filter(move |b| *b < a)).count();
    if inv % 2 == 0 { 1 } else { -1 }
}

/// `(1/√n!) Σ_P (−1)^p |labels_P⟩` with permutations in lexicographic order.
/// Coinciding labels cancel to the zero state.
pub fn antisymmetrize_n(labels: &[String]) -> Result<MultiparticleState> {
    let n = labels.len();
    if n < 2 {
        return Err(Error::InvalidInput(format!("need at least two particles, got {n}")));
    }
    if n > MAX_PARTICLES {
        return Err(Error::SizeGuard { n, max: MAX_PARTICLES });
    }
    let fact: u64 = (1..=n as u64).product();
    let mut order: Vec<Vec<String>> = Vec::new();
    let mut weight: BTreeMap<Vec<String>, i64> = BTreeMap::new();
    for perm in (0..n).permutations(n) {
        let ket: Vec<String> = perm.iter().map(|&i| labels[i].clone()).collect();
        let s = permutation_sign(&perm);
        let w = weight.entry(ket.clone()).or_insert_with(|| {
            order.push(ket.clone());
            0
        });
        *w += s;
    }
    let terms = order
        .into_iter()
        .filter_map(|k| {
            let w = weight[&k];
            (w != 0).then_some((w, k))
        })
        .collect();
    Ok(MultiparticleState { norm: Surd::inv_sqrt(fact), terms })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(s: &[&str]) -> Vec<String> {
        s.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn two_particles() {
        let st = antisymmetrize_n(&labels(&["A", "B"])).unwrap();
        assert_eq!(st.norm, Surd::inv_sqrt(2));
        assert_eq!(st.terms, vec![(1, labels(&["A", "B"])), (-1, labels(&["B", "A"]))]);
    }

    #[test]
    fn three_particle_signs() {
        let st = antisymmetrize_n(&labels(&["a", "b", "c"])).unwrap();
        let signs: Vec<i64> = st.terms.iter().map(|t| t.0).collect();
        assert_eq!(signs, vec![1, -1, -1, 1, 1, -1]);
        assert_eq!(st.norm, Surd::inv_sqrt(6));
    }

    #[test]
    fn repeated_label_vanishes() {
        assert!(antisymmetrize_n(&labels(&["a", "b", "a"])).unwrap().is_zero());
    }

    #[test]
    fn guards() {
        assert!(matches!(antisymmetrize_n(&labels(&["a"])), Err(Error::InvalidInput(_))));
        let nine: Vec<String> = (0..9).map(|i| i.to_string()).collect();
        assert!(matches!(antisymmetrize_n(&nine), Err(Error::SizeGuard { n: 9, max: 8 })));
    }

    #[test]
    fn transposition_flips() {
        let a = antisymmetrize_n(&labels(&["a", "b", "c"])).unwrap();
        let b = antisymmetrize_n(&labels(&["b", "a", "c"])).unwrap();
        assert_eq!(a, b.neg());
        let c = antisymmetrize_n(&labels(&["b", "c", "a"])).unwrap();
        assert_eq!(a, c);
    }

    #[test]
    fn parity() {
        assert_eq!(permutation_sign(&[0, 1, 2]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[2, 0, 1]), 1);
    }
}
