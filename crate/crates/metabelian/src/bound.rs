//! Nonnegative magnitudes for closed-form bounds.
//!
//! Bounds such as `C^{n^{2k}}` quickly outgrow memory, so values past
//! [`EXACT_BITS`] bits are kept as a base-2 logarithm. Such values are only
//! ever compared against witnessed (small) quantities.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// Values above this many bits are stored approximately.
pub const EXACT_BITS: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq)]
pub enum Magnitude {
    Exact(BigUint),
    /// `2^log2`, rounded; only produced when the exact value is enormous.
    Approx { log2: f64 },
}

fn log2_of(v: &BigUint) -> f64 {
    if v.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = v.bits();
    if bits <= 64 {
        return v.to_u64().expect("fits").to_f64().expect("finite").log2();
    }
    let shift = bits - 64;
    let top = (v >> shift).to_u64().expect("fits") as f64;
    top.log2() + shift as f64
}

impl Magnitude {
    pub fn zero() -> Self {
        Magnitude::Exact(BigUint::zero())
    }

    pub fn one() -> Self {
        Magnitude::Exact(BigUint::one())
    }

    pub fn from_u64(v: u64) -> Self {
        Magnitude::Exact(BigUint::from(v))
    }

    /// The magnitude of `v`, which must be nonnegative.
    pub fn from_bigint(v: &BigInt) -> Self {
        Magnitude::Exact(v.magnitude().clone())
    }

    fn normalize(v: BigUint) -> Self {
        if v.bits() > EXACT_BITS {
            Magnitude::Approx { log2: log2_of(&v) }
        } else {
            Magnitude::Exact(v)
        }
    }

    pub fn log2(&self) -> f64 {
        match self {
            Magnitude::Exact(v) => log2_of(v),
            Magnitude::Approx { log2 } => *log2,
        }
    }

    pub fn exact(&self) -> Option<&BigUint> {
        match self {
            Magnitude::Exact(v) => Some(v),
            Magnitude::Approx { .. } => None,
        }
    }

    pub fn add(&self, other: &Magnitude) -> Magnitude {
        match (self, other) {
            (Magnitude::Exact(a), Magnitude::Exact(b)) => Self::normalize(a + b),
            _ => {
                let (hi, lo) = if self.log2() >= other.log2() {
                    (self.log2(), other.log2())
                } else {
                    (other.log2(), self.log2())
                };
                Magnitude::Approx {
                    log2: hi + (1.0 + (lo - hi).exp2()).log2(),
                }
            }
        }
    }

    pub fn mul(&self, other: &Magnitude) -> Magnitude {
        match (self, other) {
            (Magnitude::Exact(a), Magnitude::Exact(b)) => {
                if a.bits() + b.bits() > EXACT_BITS + 1 {
                    Magnitude::Approx {
                        log2: log2_of(a) + log2_of(b),
                    }
                } else {
                    Self::normalize(a * b)
                }
            }
            _ if self.is_zero() || other.is_zero() => Magnitude::zero(),
            _ => Magnitude::Approx {
                log2: self.log2() + other.log2(),
            },
        }
    }

    /// `self^e`.
    pub fn pow(&self, e: &BigUint) -> Magnitude {
        if e.is_zero() {
            return Magnitude::one();
        }
        if let Magnitude::Exact(b) = self {
            if b.is_zero() || b.is_one() {
                return self.clone();
            }
            let est = log2_of(b) * e.to_f64().unwrap_or(f64::INFINITY);
            if est <= EXACT_BITS as f64 {
                let e = e.to_u32().expect("small exponent");
                return Self::normalize(b.pow(e));
            }
        }
        Magnitude::Approx {
            log2: self.log2() * e.to_f64().unwrap_or(f64::INFINITY),
        }
    }

    pub fn pow_u64(&self, e: u64) -> Magnitude {
        self.pow(&BigUint::from(e))
    }

    /// `self - 1`, saturating at zero.
    pub fn minus_one(&self) -> Magnitude {
        match self {
            Magnitude::Exact(v) if v.is_zero() => Magnitude::zero(),
            Magnitude::Exact(v) => Magnitude::Exact(v - 1u32),
            approx => approx.clone(),
        }
    }

    /// Floor division by a positive integer.
    pub fn div_u(&self, d: &BigUint) -> Magnitude {
        match self {
            Magnitude::Exact(v) => Magnitude::Exact(v / d),
            Magnitude::Approx { log2 } => Magnitude::Approx {
                log2: log2 - log2_of(d),
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Magnitude::Exact(v) if v.is_zero())
    }

    /// Whether `v ≤ self`.
    pub fn dominates(&self, v: &BigUint) -> bool {
        match self {
            Magnitude::Exact(b) => v <= b,
            Magnitude::Approx { log2 } => log2_of(v) <= *log2,
        }
    }
}

impl PartialOrd for Magnitude {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Magnitude::Exact(a), Magnitude::Exact(b)) => Some(a.cmp(b)),
            _ => self.log2().partial_cmp(&other.log2()),
        }
    }
}

impl fmt::Display for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Magnitude::Exact(v) => write!(f, "{v}"),
            Magnitude::Approx { log2 } => write!(f, "2^{log2:.3}"),
        }
    }
}

impl Serialize for Magnitude {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl From<u64> for Magnitude {
    fn from(v: u64) -> Self {
        Magnitude::from_u64(v)
    }
}

impl From<BigUint> for Magnitude {
    fn from(v: BigUint) -> Self {
        Magnitude::normalize(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values_stay_exact() {
        let m = Magnitude::from_u64(8).pow_u64(5);
        assert_eq!(m, Magnitude::from_u64(32768));
        assert_eq!(m.to_string(), "32768");
    }

    #[test]
    fn huge_powers_become_logarithmic() {
        let m = Magnitude::from_u64(2).pow_u64(1 << 20);
        match m {
            Magnitude::Approx { log2 } => assert!((log2 - (1u64 << 20) as f64).abs() < 1e-6),
            _ => panic!("expected approximation"),
        }
        assert!(m.dominates(&BigUint::from(u64::MAX)));
        assert!(m > Magnitude::from_u64(1 << 40));
    }

    #[test]
    fn sums_of_approximations() {
        let a = Magnitude::Approx { log2: 100000.0 };
        let s = a.add(&a);
        assert!((s.log2() - 100001.0).abs() < 1e-9);
    }
}
