//! Passage between `ℤ[t₁^±,…,t_k^±, u₁,…]` (with torsion `u_i^{d_i} = 1`)
//! and the polynomial ring `ℤ[t₁,…,t_k, u₁,…, s₁,…,s_k]`.
//!
//! Inverse variables `sᵢ` are appended after all other variables, so
//! writing `t^{-e}` as `s^e` preserves the monomial order.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use super::{Budget, DivisionCertificate, GroebnerBasis, GroebnerOptions};
use crate::element::{ModuleElement, Term};
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::text::{format_element, Names};

/// The Laurent ring: `free` invertible variables followed by torsion
/// variables of the given orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentRing {
    pub free: usize,
    pub torsion: Vec<u64>,
}

impl LaurentRing {
    pub fn new(free: usize, torsion: Vec<u64>) -> Result<Self> {
        if let Some(&d) = torsion.iter().find(|&&d| d < 1) {
            return Err(Error::TorsionOrder(d as i64));
        }
        Ok(LaurentRing { free, torsion })
    }

    pub fn nvars(&self) -> usize {
        self.free + self.torsion.len()
    }

    pub fn embedded_nvars(&self) -> usize {
        2 * self.free + self.torsion.len()
    }

    /// Reduces torsion exponents into `[0, d)`.
    pub fn reduce_monomial(&self, m: &Monomial) -> Monomial {
        let mut out = m.clone();
        for (j, d) in self.torsion.iter().enumerate() {
            let e = &mut out.exps[self.free + j];
            *e = e.mod_floor(&BigInt::from(*d));
        }
        out
    }

    pub fn reduce(&self, g: &ModuleElement) -> ModuleElement {
        g.map_monomials(self.nvars(), |m| self.reduce_monomial(m))
    }

    fn embed_monomial(&self, m: &Monomial) -> Monomial {
        let m = self.reduce_monomial(m);
        let nt = self.torsion.len();
        let mut exps = vec![BigInt::zero(); self.embedded_nvars()];
        for i in 0..self.free {
            let e = &m.exps[i];
            if e.is_negative() {
                exps[self.free + nt + i] = -e;
            } else {
                exps[i] = e.clone();
            }
        }
        for j in 0..nt {
            exps[self.free + j] = m.exps[self.free + j].clone();
        }
        Monomial {
            exps,
            basis: m.basis,
        }
    }

    fn unembed_monomial(&self, m: &Monomial) -> Monomial {
        let nt = self.torsion.len();
        let mut exps = vec![BigInt::zero(); self.nvars()];
        for i in 0..self.free {
            exps[i] = &m.exps[i] - &m.exps[self.free + nt + i];
        }
        for j in 0..nt {
            exps[self.free + j] = m.exps[self.free + j].clone();
        }
        self.reduce_monomial(&Monomial {
            exps,
            basis: m.basis,
        })
    }

    /// Writes `t^{-e}` as `s^e`; no shift is applied.
    pub fn embed(&self, g: &ModuleElement) -> Result<ModuleElement> {
        if g.nvars() != self.nvars() {
            return Err(Error::Dimension {
                expected: self.nvars(),
                found: g.nvars(),
            });
        }
        Ok(g.map_monomials(self.embedded_nvars(), |m| self.embed_monomial(m)))
    }

    /// Maps `sᵢ ↦ tᵢ^{-1}` back into the Laurent ring.
    pub fn unembed(&self, p: &ModuleElement) -> ModuleElement {
        p.map_monomials(self.nvars(), |m| self.unembed_monomial(m))
    }

    /// Multiplies by the unit monomial that makes every free exponent
    /// nonnegative with minimum zero.
    pub fn shift(&self, g: &ModuleElement) -> ModuleElement {
        let g = self.reduce(g);
        let mut u = Monomial::one(self.nvars());
        for i in 0..self.free {
            if let Some(min) = g.terms().iter().map(|t| &t.mono.exps[i]).min() {
                if min.is_negative() {
                    u.exps[i] = -min;
                }
            }
        }
        g.scale_translate(&BigInt::from(1), &u)
    }

    /// Names of the embedded variables, with `sᵢ` rendered as `tᵢ_inv`.
    pub fn embedded_names(&self, names: &Names) -> Names {
        let mut vars = names.vars.clone();
        for i in 0..self.free {
            vars.push(format!("{}_inv", names.vars[i]));
        }
        Names::new(vars, names.basis.clone())
    }
}

/// Generators of the embedded submodule.
#[derive(Clone, Debug)]
pub struct EmbeddedSystem {
    pub ring: LaurentRing,
    pub rank: usize,
    /// The shifted user generators followed by the ring relations.
    pub generators: Vec<ModuleElement>,
    /// How many of `generators` come from the user.
    pub user: usize,
}

/// Shifts each generator to nonnegative exponents and appends `(tᵢsᵢ − 1)e_j`
/// and `(uᵢ^{dᵢ} − 1)e_j` for every basis vector.
pub fn laurent_embed(
    gens: &[ModuleElement],
    ring: &LaurentRing,
    rank: usize,
) -> Result<EmbeddedSystem> {
    let mut out = Vec::new();
    for g in gens {
        if g.rank() != rank {
            return Err(Error::Ambient(ring.nvars(), rank, g.nvars(), g.rank()));
        }
        let shifted = ring.shift(g);
        if !shifted.is_zero() {
            out.push(ring.embed(&shifted)?);
        }
    }
    let user = out.len();
    let nv = ring.embedded_nvars();
    let nt = ring.torsion.len();
    let slots: Vec<Option<usize>> = if rank == 0 {
        vec![None]
    } else {
        (0..rank).map(Some).collect()
    };
    let relation = |plus: Monomial, basis: Option<usize>| {
        let tag = |m: Monomial| match basis {
            Some(j) => m.with_basis(j),
            None => m,
        };
        ModuleElement::from_terms(
            nv,
            rank,
            [
                Term::new(1, tag(plus)),
                Term::new(-1, tag(Monomial::one(nv))),
            ],
        )
    };
    for &b in &slots {
        for i in 0..ring.free {
            let mut m = Monomial::var(nv, i, 1);
            m.exps[ring.free + nt + i] = BigInt::from(1);
            out.push(relation(m, b));
        }
        for (j, &d) in ring.torsion.iter().enumerate() {
            let rel = relation(Monomial::var(nv, ring.free + j, d), b);
            if !rel.is_zero() {
                out.push(rel);
            }
        }
    }
    Ok(EmbeddedSystem {
        ring: ring.clone(),
        rank,
        generators: out,
        user,
    })
}

/// A submodule of `(ℤT)^m` with its Gröbner basis in the embedded ring.
#[derive(Clone, Debug)]
pub struct SubmoduleBasis {
    pub ring: LaurentRing,
    pub rank: usize,
    pub original: Vec<ModuleElement>,
    pub embedded: EmbeddedSystem,
    pub basis: GroebnerBasis,
}

impl SubmoduleBasis {
    pub fn new(
        gens: &[ModuleElement],
        ring: LaurentRing,
        rank: usize,
        options: &GroebnerOptions,
    ) -> Result<Self> {
        let embedded = laurent_embed(gens, &ring, rank)?;
        let basis = GroebnerBasis::compute(
            &embedded.generators,
            ring.embedded_nvars(),
            rank,
            options,
        )?;
        Ok(SubmoduleBasis {
            ring,
            rank,
            original: gens.to_vec(),
            embedded,
            basis,
        })
    }

    /// The canonical representative of `g` modulo the submodule.
    pub fn normal_form(&self, g: &ModuleElement) -> Result<ModuleElement> {
        let e = self.ring.embed(g)?;
        Ok(self.ring.unembed(&self.basis.normal_form(&e)?))
    }

    pub fn contains(&self, g: &ModuleElement) -> Result<bool> {
        let e = self.ring.embed(g)?;
        Ok(self.basis.normal_form(&e)?.is_zero())
    }

    /// Division of the embedded image of `g` by the embedded basis.
    pub fn divide(&self, g: &ModuleElement) -> Result<DivisionCertificate> {
        self.divide_with(g, &mut Budget::default())
    }

    pub fn divide_with(&self, g: &ModuleElement, budget: &mut Budget) -> Result<DivisionCertificate> {
        let e = self.ring.embed(g)?;
        DivisionCertificate::compute(&e, &self.basis, budget)
    }

    pub fn to_json(&self, names: &Names) -> Value {
        let en = self.ring.embedded_names(names);
        json!({
            "variables": en.vars,
            "embedded_generators": self.embedded.generators.iter().map(|g| format_element(g, &en)).collect::<Vec<_>>(),
            "groebner_basis": self.basis.generators().iter().map(|g| format_element(g, &en)).collect::<Vec<_>>(),
            "steps": self.basis.steps(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_element;

    fn names() -> Names {
        Names::new(vec!["t".into()], vec!["a".into()])
    }

    #[test]
    fn embedding_adds_inverse_relation() {
        let ring = LaurentRing::new(1, vec![]).unwrap();
        let g = parse_element("(t - 2)*a", &names()).unwrap();
        let sys = laurent_embed(&[g], &ring, 1).unwrap();
        let en = ring.embedded_names(&names());
        let text: Vec<_> = sys.generators.iter().map(|g| format_element(g, &en)).collect();
        assert_eq!(text, vec!["(t - 2)*a", "(t*t_inv - 1)*a"]);
    }

    #[test]
    fn negative_exponents_are_shifted() {
        let ring = LaurentRing::new(1, vec![]).unwrap();
        let g = parse_element("(t^-1 - 1)*a", &names()).unwrap();
        let sys = laurent_embed(&[g], &ring, 1).unwrap();
        let en = ring.embedded_names(&names());
        assert_eq!(format_element(&sys.generators[0], &en), "(-t + 1)*a");
    }

    #[test]
    fn torsion_relation_is_added() {
        let ring = LaurentRing::new(0, vec![2]).unwrap();
        let n = Names::new(vec!["u".into()], vec!["a".into()]);
        let g = parse_element("(u - 1)*a", &n).unwrap();
        let sys = laurent_embed(&[g], &ring, 1).unwrap();
        assert_eq!(format_element(&sys.generators[1], &n), "(u^2 - 1)*a");
        assert!(LaurentRing::new(0, vec![0]).is_err());
    }

    #[test]
    fn membership_of_t_squared_minus_four() {
        let ring = LaurentRing::new(1, vec![]).unwrap();
        let f = parse_element("(t - 2)*a", &names()).unwrap();
        let sb = SubmoduleBasis::new(&[f], ring, 1, &GroebnerOptions::default()).unwrap();
        let g = parse_element("(t^2 - 4)*a", &names()).unwrap();
        let cert = sb.divide(&g).unwrap();
        assert!(cert.is_member());
        assert_eq!(cert.size, BigInt::from(3));
        assert!(!sb.contains(&parse_element("a", &names()).unwrap()).unwrap());
        // t⁻¹·(t − 2) = 1 − 2t⁻¹ lies in the submodule too.
        assert!(sb.contains(&parse_element("(1 - 2*t^-1)*a", &names()).unwrap()).unwrap());
    }
}
