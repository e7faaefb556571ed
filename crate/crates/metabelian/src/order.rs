//! The well-orders on integers, terms and module elements.
//!
//! Integers are ordered `0 ≺ 1 ≺ 2 ≺ … ≺ -1 ≺ -2 ≺ …`. Terms compare by
//! monomial (ring part, then basis vector) and then by coefficient; elements
//! compare their terms from the top down, with zero the least element.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::element::{ModuleElement, Term};
use crate::error::Result;
use crate::monomial::Monomial;

/// Wrapper giving `BigInt` the well-order used for coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntOrderKey(pub BigInt);

impl Ord for IntOrderKey {
    fn cmp(&self, other: &Self) -> Ordering {
        compare_integers(&self.0, &other.0)
    }
}

impl PartialOrd for IntOrderKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `0` is least; positives follow in the usual order; every negative number
/// exceeds every positive one, and negatives grow with their magnitude.
pub fn compare_integers(a: &BigInt, b: &BigInt) -> Ordering {
    let key = |v: &BigInt| v.is_negative();
    key(a)
        .cmp(&key(b))
        .then_with(|| a.magnitude().cmp(b.magnitude()))
}

/// Degree-lexicographic comparison of monomials, checking that both live
/// over the same variables.
pub fn compare_monomials(u: &Monomial, v: &Monomial) -> Result<Ordering> {
    u.try_cmp(v)
}

pub fn compare_terms(s: &Term, t: &Term) -> Ordering {
    s.mono
        .cmp(&t.mono)
        .then_with(|| compare_integers(&s.coeff, &t.coeff))
}

/// Recursive comparison on leading terms; a proper top segment of another
/// element is the smaller one.
pub fn compare_elements(g: &ModuleElement, h: &ModuleElement) -> Ordering {
    for (s, t) in g.terms().iter().zip(h.terms()) {
        let o = compare_terms(s, t);
        if o != Ordering::Equal {
            return o;
        }
    }
    g.terms().len().cmp(&h.terms().len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn i(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn integer_order_fixtures() {
        assert_eq!(compare_integers(&i(0), &i(5)), Ordering::Less);
        assert_eq!(compare_integers(&i(2), &i(-1)), Ordering::Less);
        assert_eq!(compare_integers(&i(-1), &i(-2)), Ordering::Less);
        assert_eq!(compare_integers(&i(-3), &i(-3)), Ordering::Equal);
    }

    #[test]
    fn zero_is_least() {
        for v in -20..=20 {
            if v != 0 {
                assert_eq!(compare_integers(&i(0), &i(v)), Ordering::Less);
            }
        }
    }
}
