//! Monomials with arbitrary-precision (possibly negative) exponents.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A monomial `x₁^{n₁}…x_k^{n_k}`, optionally attached to a basis vector `e_i`.
///
/// Basis indices are 0-based internally; `e₁ ≻ e₂ ≻ …` means a smaller index
/// is the larger basis element.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Monomial {
    pub exps: Vec<BigInt>,
    pub basis: Option<usize>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![BigInt::zero(); nvars],
            basis: None,
        }
    }

    pub fn basis(nvars: usize, index: usize) -> Self {
        Monomial {
            exps: vec![BigInt::zero(); nvars],
            basis: Some(index),
        }
    }

    pub fn var(nvars: usize, var: usize, exp: impl Into<BigInt>) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[var] = exp.into();
        m
    }

    pub fn from_exps<I, E>(exps: I) -> Self
    where
        I: IntoIterator<Item = E>,
        E: Into<BigInt>,
    {
        Monomial {
            exps: exps.into_iter().map(Into::into).collect(),
            basis: None,
        }
    }

    pub fn with_basis(mut self, index: usize) -> Self {
        self.basis = Some(index);
        self
    }

    pub fn ring_part(&self) -> Monomial {
        Monomial {
            exps: self.exps.clone(),
            basis: None,
        }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    /// Sum of the absolute values of the exponents.
    pub fn degree(&self) -> BigInt {
        self.exps.iter().map(|e| e.abs()).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(Zero::is_zero)
    }

    pub fn is_polynomial(&self) -> bool {
        self.exps.iter().all(|e| !e.is_negative())
    }

    /// Product of a ring monomial `self` with `other`; the basis index of
    /// `other` is kept.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
            basis: other.basis.or(self.basis),
        }
    }

    pub fn inverse(&self) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|e| -e).collect(),
            basis: self.basis,
        }
    }

    /// Whether `self` divides `other` in the polynomial sense (same basis
    /// index when both carry one).
    pub fn divides(&self, other: &Monomial) -> bool {
        self.basis == other.basis && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// The ring monomial `other / self`; only meaningful when `self.divides(other)`.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
            basis: None,
        }
    }

    /// Ring-part least common multiple of two polynomial monomials.
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a.max(b).clone())
                .collect(),
            basis: self.basis,
        }
    }

    /// Compare with the three-layer order, checking dimensions.
    pub fn try_cmp(&self, other: &Monomial) -> Result<Ordering> {
        if self.exps.len() != other.exps.len() {
            return Err(Error::Dimension {
                expected: self.exps.len(),
                found: other.exps.len(),
            });
        }
        Ok(self.cmp(other))
    }

    fn cmp_ring(&self, other: &Monomial) -> Ordering {
        cmp_degree(&self.exps, &other.exps).then_with(|| {
            // Positive parts first, then the magnitudes of negative parts:
            // the order of the polynomial image with inverse variables
            // appended after all ordinary ones.
            for (a, b) in self.exps.iter().zip(&other.exps) {
                let o = match (a.is_positive(), b.is_positive()) {
                    (true, true) => a.cmp(b),
                    (true, false) => Ordering::Greater,
                    (false, true) => Ordering::Less,
                    (false, false) => Ordering::Equal,
                };
                if o != Ordering::Equal {
                    return o;
                }
            }
            for (a, b) in self.exps.iter().zip(&other.exps) {
                let o = match (a.is_negative(), b.is_negative()) {
                    (true, true) => b.cmp(a),
                    (true, false) => Ordering::Greater,
                    (false, true) => Ordering::Less,
                    (false, false) => Ordering::Equal,
                };
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
    }
}

fn cmp_degree(a: &[BigInt], b: &[BigInt]) -> Ordering {
    let small = |v: &[BigInt]| -> Option<i128> {
        v.iter()
            .map(|e| i64::try_from(e).ok().map(|x| (x as i128).abs()))
            .sum()
    };
    match (small(a), small(b)) {
        (Some(x), Some(y)) => x.cmp(&y),
        _ => {
            let da: BigInt = a.iter().map(|e| e.abs()).sum();
            let db: BigInt = b.iter().map(|e| e.abs()).sum();
            da.cmp(&db)
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_ring(other).then_with(|| match (self.basis, other.basis) {
            // e₁ ≻ e₂: the smaller index is the larger element.
            (Some(a), Some(b)) => b.cmp(&a),
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, e) in self.exps.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if *e != BigInt::from(1) {
                write!(f, "^{e}")?;
            }
        }
        if let Some(b) = self.basis {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "e{}", b + 1)?;
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[i64]) -> Monomial {
        Monomial::from_exps(e.iter().copied())
    }

    #[test]
    fn deglex_prefers_degree_then_first_variable() {
        assert!(m(&[1, 0]) > m(&[0, 1]));
        assert!(m(&[0, 2]) > m(&[1, 0]));
        assert!(m(&[2, 0, 0]) > m(&[1, 1, 0]));
    }

    #[test]
    fn laurent_order_matches_inverse_variable_image() {
        // t ≻ t⁻¹ ≻ 1 and t⁻² ≻ t
        assert!(m(&[1]) > m(&[-1]));
        assert!(m(&[-1]) > m(&[0]));
        assert!(m(&[-2]) > m(&[1]));
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = m(&[1, 2]);
        let b = m(&[2, 2]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(a.quotient(&b), m(&[1, 0]));
        assert_eq!(a.lcm(&m(&[0, 3])), m(&[1, 3]));
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        assert!(m(&[1]).try_cmp(&m(&[1, 0])).is_err());
    }
}
