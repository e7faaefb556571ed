//! Reduced elements of the free module `(ℤT)^m` and of the group ring `ℤT`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::Monomial;

/// A nonzero coefficient times a (module) monomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Term {
    pub coeff: BigInt,
    pub mono: Monomial,
}

impl Term {
    pub fn new(coeff: impl Into<BigInt>, mono: Monomial) -> Self {
        Term {
            coeff: coeff.into(),
            mono,
        }
    }
}

/// A reduced sum of terms, stored strictly descending by monomial.
///
/// `rank == 0` marks a ring element: its monomials carry no basis index.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct ModuleElement {
    terms: Vec<Term>,
    nvars: usize,
    rank: usize,
}

/// Elements of `ℤT`, represented as rank-0 module elements.
pub type RingElement = ModuleElement;

impl ModuleElement {
    pub fn zero(nvars: usize, rank: usize) -> Self {
        ModuleElement {
            terms: Vec::new(),
            nvars,
            rank,
        }
    }

    pub fn ring_zero(nvars: usize) -> Self {
        Self::zero(nvars, 0)
    }

    pub fn ring_one(nvars: usize) -> Self {
        Self::ring_monomial(BigInt::one(), Monomial::one(nvars))
    }

    pub fn ring_monomial(coeff: impl Into<BigInt>, mono: Monomial) -> Self {
        let nvars = mono.nvars();
        Self::from_terms(nvars, 0, [Term::new(coeff, mono)])
    }

    /// The element `e_index`.
    pub fn basis_vector(nvars: usize, rank: usize, index: usize) -> Self {
        Self::from_terms(
            nvars,
            rank,
            [Term::new(1, Monomial::basis(nvars, index))],
        )
    }

    /// Collects arbitrary terms: sorts, merges equal monomials and drops zeros.
    pub fn from_terms(nvars: usize, rank: usize, terms: impl IntoIterator<Item = Term>) -> Self {
        let mut v: Vec<Term> = terms.into_iter().collect();
        debug_assert!(v.iter().all(|t| t.mono.nvars() == nvars));
        v.sort_by(|a, b| b.mono.cmp(&a.mono));
        let mut out: Vec<Term> = Vec::with_capacity(v.len());
        for t in v {
            match out.last_mut() {
                Some(last) if last.mono == t.mono => last.coeff += t.coeff,
                _ => {
                    if out.last().is_some_and(|l| l.coeff.is_zero()) {
                        out.pop();
                    }
                    out.push(t);
                }
            }
        }
        if out.last().is_some_and(|l| l.coeff.is_zero()) {
            out.pop();
        }
        ModuleElement {
            terms: out,
            nvars,
            rank,
        }
    }

    /// Assembles `(λ₁, …, λ_m)` from ring components.
    pub fn from_components(nvars: usize, components: &[RingElement]) -> Self {
        let rank = components.len();
        let terms = components.iter().enumerate().flat_map(|(j, lam)| {
            lam.terms.iter().map(move |t| Term {
                coeff: t.coeff.clone(),
                mono: t.mono.clone().with_basis(j),
            })
        });
        Self::from_terms(nvars, rank, terms)
    }

    /// The ring coefficient `λ_j` of `e_j`.
    pub fn component(&self, j: usize) -> RingElement {
        let terms = self
            .terms
            .iter()
            .filter(|t| t.mono.basis == Some(j))
            .map(|t| Term::new(t.coeff.clone(), t.mono.ring_part()));
        Self::from_terms(self.nvars, 0, terms)
    }

    pub fn components(&self) -> Vec<RingElement> {
        (0..self.rank).map(|j| self.component(j)).collect()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_ring(&self) -> bool {
        self.rank == 0
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether all exponents are nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.iter().all(|t| t.mono.is_polynomial())
    }

    pub fn check_ambient(&self, other: &ModuleElement) -> Result<()> {
        if self.nvars != other.nvars || self.rank != other.rank {
            return Err(Error::Ambient(
                self.nvars,
                self.rank,
                other.nvars,
                other.rank,
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &ModuleElement) -> Result<ModuleElement> {
        self.check_ambient(other)?;
        Ok(self.merge(other, |c| c.clone()))
    }

    pub fn sub(&self, other: &ModuleElement) -> Result<ModuleElement> {
        self.check_ambient(other)?;
        Ok(self.merge(other, |c| -c))
    }

    pub fn neg(&self) -> ModuleElement {
        ModuleElement {
            terms: self
                .terms
                .iter()
                .map(|t| Term::new(-&t.coeff, t.mono.clone()))
                .collect(),
            nvars: self.nvars,
            rank: self.rank,
        }
    }

    /// `self + q·u·f`, merging in one pass. `u` is a ring monomial.
    pub fn add_scaled(&self, q: &BigInt, u: &Monomial, f: &ModuleElement) -> ModuleElement {
        if q.is_zero() {
            return self.clone();
        }
        let scaled = f.scale_translate(q, u);
        self.merge(&scaled, |c| c.clone())
    }

    fn merge(&self, other: &ModuleElement, map: impl Fn(&BigInt) -> BigInt) -> ModuleElement {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.mono.cmp(&y.mono),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term::new(map(&b[j].coeff), b[j].mono.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a[i].coeff + map(&b[j].coeff);
                    if !c.is_zero() {
                        out.push(Term::new(c, a[i].mono.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        ModuleElement {
            terms: out,
            nvars: self.nvars,
            rank: self.rank,
        }
    }

    /// `c·u·self`. Multiplication by a monomial keeps the term order among
    /// polynomials only; Laurent inputs are re-sorted.
    pub fn scale_translate(&self, c: &BigInt, u: &Monomial) -> ModuleElement {
        if c.is_zero() {
            return Self::zero(self.nvars, self.rank);
        }
        let mut terms: Vec<Term> = self
            .terms
            .iter()
            .map(|t| Term::new(c * &t.coeff, u.mul(&t.mono)))
            .collect();
        if !(u.is_polynomial() && self.is_polynomial()) {
            terms.sort_by(|a, b| b.mono.cmp(&a.mono));
        }
        ModuleElement {
            terms,
            nvars: self.nvars,
            rank: self.rank,
        }
    }

    /// `λ·self` for a ring element `λ`.
    pub fn mul_ring(&self, lambda: &RingElement) -> Result<ModuleElement> {
        if lambda.nvars != self.nvars {
            return Err(Error::Dimension {
                expected: self.nvars,
                found: lambda.nvars,
            });
        }
        let mut acc = Self::zero(self.nvars, self.rank);
        for t in &lambda.terms {
            acc = acc.add_scaled(&t.coeff, &t.mono, self);
        }
        Ok(acc)
    }

    /// `(LT, LM, LC)` of a nonzero element.
    pub fn leading_data(&self) -> Result<(Term, Monomial, BigInt)> {
        let t = self.terms.first().ok_or(Error::EmptyElement)?;
        Ok((t.clone(), t.mono.clone(), t.coeff.clone()))
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// `|g| = Σ |cᵢ|`.
    pub fn length(&self) -> BigInt {
        self.terms.iter().map(|t| t.coeff.abs()).sum()
    }

    /// Largest monomial degree in the support; `0` for the zero element.
    pub fn degree(&self) -> BigInt {
        self.terms
            .iter()
            .map(|t| t.mono.degree())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// `(length, degree, support size)`.
    pub fn measures(&self) -> (BigInt, BigInt, usize) {
        (self.length(), self.degree(), self.terms.len())
    }

    /// Largest absolute value of a coefficient.
    pub fn max_coeff(&self) -> BigInt {
        self.terms
            .iter()
            .map(|t| t.coeff.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Applies `f` to every monomial and re-collects.
    pub fn map_monomials(
        &self,
        nvars: usize,
        mut f: impl FnMut(&Monomial) -> Monomial,
    ) -> ModuleElement {
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|t| Term::new(t.coeff.clone(), f(&t.mono)))
            .collect();
        Self::from_terms(nvars, self.rank, terms)
    }

    pub fn with_rank(mut self, rank: usize) -> ModuleElement {
        self.rank = rank;
        self
    }
}

impl PartialOrd for ModuleElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ModuleElement {
    fn cmp(&self, other: &Self) -> Ordering {
        crate::order::compare_elements(self, other)
    }
}
