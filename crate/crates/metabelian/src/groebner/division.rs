//! Division with explicit quotients and size bounds.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use super::{reduce_with, Budget, GroebnerBasis};
use crate::bound::Magnitude;
use crate::element::{ModuleElement, RingElement};
use crate::error::{Error, Result};
use crate::text::{format_element, format_ring, Names};

/// `G_k(n) = C(n+k, k)`, the number of monomials of degree at most `n` in
/// `k` variables.
pub fn growth_function(k: i64, n: i64) -> Result<BigUint> {
    if k < 0 || n < 0 {
        return Err(Error::Negative("growth_function"));
    }
    let (k, n) = (k as u64, n as u64);
    let small = k.min(n);
    let mut acc = BigUint::one();
    for i in 1..=small {
        acc = acc * BigUint::from(n + k - small + i) / BigUint::from(i);
    }
    Ok(acc)
}

/// `g = Σ αᵢ·fᵢ + residue` for the generators `fᵢ` of a Gröbner basis.
#[derive(Clone, Debug)]
pub struct DivisionCertificate {
    /// One quotient per basis generator.
    pub coefficients: Vec<RingElement>,
    pub residue: ModuleElement,
    /// Number of reduction steps `r`.
    pub steps: u64,
    /// `Σ |αᵢ|`.
    pub size: BigInt,
    /// `p·((1+C)^{m·G_k(n)} − 1)/C` with `p = |g|`, `n = deg g` and
    /// `C = max |fᵢ|`.
    pub bound: Magnitude,
    /// `m·G_k(n)`, the cap on the number of steps.
    pub step_bound: BigUint,
}

impl DivisionCertificate {
    pub(super) fn compute(
        g: &ModuleElement,
        basis: &GroebnerBasis,
        budget: &mut Budget,
    ) -> Result<DivisionCertificate> {
        g.check_ambient(&ModuleElement::zero(basis.nvars(), basis.rank()))?;
        let gens = basis.generators();
        let nvars = basis.nvars();
        let mut alphas = vec![ModuleElement::ring_zero(nvars); gens.len()];
        let mut steps = 0u64;
        let residue = reduce_with(g, gens, budget, |i, t| {
            steps += 1;
            alphas[i] = alphas[i].add(&ModuleElement::ring_monomial(t.coeff.clone(), t.mono.clone()))
                .expect("same ring");
        })?;
        let size = alphas.iter().map(ModuleElement::length).sum();
        let n = g.degree().to_i64().unwrap_or(i64::MAX);
        let m = basis.rank().max(1) as u64;
        let step_bound = growth_function(nvars as i64, n)? * m;
        let c = gens.iter().map(ModuleElement::length).max().unwrap_or_else(BigInt::zero);
        let p = Magnitude::from_bigint(&g.length());
        let bound = if c.is_zero() {
            Magnitude::zero()
        } else {
            let base = Magnitude::from_bigint(&(&c + 1u32));
            p.mul(&base.pow(&step_bound).minus_one())
                .div_u(c.magnitude())
        };
        Ok(DivisionCertificate {
            coefficients: alphas,
            residue,
            steps,
            size,
            bound,
            step_bound,
        })
    }

    /// Recomputes `Σ αᵢ·fᵢ + residue`.
    pub fn reconstruct(&self, gens: &[ModuleElement]) -> Result<ModuleElement> {
        let mut acc = self.residue.clone();
        for (a, f) in self.coefficients.iter().zip(gens) {
            acc = acc.add(&f.mul_ring(a)?)?;
        }
        Ok(acc)
    }

    pub fn is_member(&self) -> bool {
        self.residue.is_zero()
    }

    pub fn to_json(&self, names: &Names) -> Value {
        let ring = names.ring();
        json!({
            "alphas": self.coefficients.iter().map(|a| format_ring(a, &ring)).collect::<Vec<_>>(),
            "residue": format_element(&self.residue, names),
            "steps": self.steps,
            "size": self.size.abs().to_string(),
            "bound": self.bound.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn growth_values() {
        assert_eq!(growth_function(1, 5).unwrap(), BigUint::from(6u32));
        assert_eq!(growth_function(0, 7).unwrap(), BigUint::one());
        assert_eq!(growth_function(2, 3).unwrap(), BigUint::from(10u32));
        assert_eq!(growth_function(4, 10).unwrap(), BigUint::from(1001u32));
        assert!(growth_function(-1, 2).is_err());
    }
}
