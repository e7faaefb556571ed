//! Polynomial reduction and strong Gröbner bases over `ℤ`.
//!
//! Reduction follows the integer well-order of [`crate::order`]: a term
//! `c·M` is reducible by `f` when `LM(f) | M` and `LC(f) ≼ c`, and the
//! coefficient is replaced by its Euclidean remainder in `[0, |LC(f)|)`.

mod division;
mod laurent;

pub use division::{growth_function, DivisionCertificate};
pub use laurent::{laurent_embed, EmbeddedSystem, LaurentRing, SubmoduleBasis};

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::element::{ModuleElement, RingElement, Term};
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::order::compare_integers;
use crate::text::{format_element, Names};

/// Default number of reduction steps allowed per computation.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// One reduction step: `g = q·u·F[index] + h`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReductionStep {
    pub result: ModuleElement,
    pub index: usize,
    pub quotient: Term,
}

/// Countdown of reduction steps shared across a computation.
#[derive(Clone, Debug)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    fn charge(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::BudgetExceeded(self.limit))
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}

/// Euclidean quotient with remainder in `[0, |l|)`.
fn euclid(c: &BigInt, l: &BigInt) -> BigInt {
    let (q, _) = c.div_mod_floor(&l.abs());
    if l.is_negative() {
        -q
    } else {
        q
    }
}

/// The preferred reducer of the term `c·M`: smallest leading coefficient in
/// the integer well-order, then lowest index.
fn reducer_for(c: &BigInt, m: &Monomial, gens: &[ModuleElement]) -> Option<usize> {
    let mut best: Option<(usize, &BigInt)> = None;
    for (i, f) in gens.iter().enumerate() {
        let Some(lt) = f.leading_term() else { continue };
        if !lt.mono.divides(m) || compare_integers(&lt.coeff, c) == Ordering::Greater {
            continue;
        }
        if best.is_none_or(|(_, b)| compare_integers(&lt.coeff, b) == Ordering::Less) {
            best = Some((i, &lt.coeff));
        }
    }
    best.map(|(i, _)| i)
}

/// Index of the largest reducible term of `g` strictly below `below`, with
/// its reducer.
fn find_reducible(
    g: &ModuleElement,
    gens: &[ModuleElement],
    below: Option<&Monomial>,
) -> Option<(usize, usize)> {
    g.terms().iter().enumerate().find_map(|(ti, t)| {
        if below.is_some_and(|b| t.mono >= *b) {
            return None;
        }
        reducer_for(&t.coeff, &t.mono, gens).map(|fi| (ti, fi))
    })
}

fn apply(g: &ModuleElement, term: usize, f: &ModuleElement, fi: usize) -> ReductionStep {
    let t = &g.terms()[term];
    let lt = f.leading_term().expect("reducer is nonzero");
    let q = euclid(&t.coeff, &lt.coeff);
    let u = lt.mono.quotient(&t.mono);
    let result = g.add_scaled(&-&q, &u, f);
    ReductionStep {
        result,
        index: fi,
        quotient: Term::new(q, u),
    }
}

/// A single reduction of the largest reducible term of `g` modulo `gens`,
/// or `None` when `g` is irreducible.
pub fn reduce_step(g: &ModuleElement, gens: &[ModuleElement]) -> Option<ReductionStep> {
    let (ti, fi) = find_reducible(g, gens, None)?;
    Some(apply(g, ti, &gens[fi], fi))
}

/// Fully reduces `g`, reporting every quotient `(index, q·u)` to `record`.
///
/// The reduced monomials strictly decrease, since the remainder left at a
/// monomial is smaller than every applicable leading coefficient.
pub(crate) fn reduce_with(
    g: &ModuleElement,
    gens: &[ModuleElement],
    budget: &mut Budget,
    mut record: impl FnMut(usize, &Term),
) -> Result<ModuleElement> {
    let mut h = g.clone();
    let mut below: Option<Monomial> = None;
    while let Some((ti, fi)) = find_reducible(&h, gens, below.as_ref()) {
        budget.charge()?;
        let m = h.terms()[ti].mono.clone();
        let step = apply(&h, ti, &gens[fi], fi);
        record(step.index, &step.quotient);
        h = step.result;
        below = Some(m);
    }
    Ok(h)
}

/// Options for [`GroebnerBasis::compute`].
#[derive(Clone, Debug)]
pub struct GroebnerOptions {
    pub budget: u64,
    /// Track, for each basis element, its expression over the input.
    pub certificates: bool,
}

impl Default for GroebnerOptions {
    fn default() -> Self {
        GroebnerOptions {
            budget: DEFAULT_BUDGET,
            certificates: false,
        }
    }
}

/// Combination `Σ cⱼ·originⱼ` with ring coefficients.
type Combo = Vec<RingElement>;

fn combo_unit(nvars: usize, len: usize, j: usize, sign: &BigInt) -> Combo {
    (0..len)
        .map(|i| {
            if i == j {
                ModuleElement::ring_monomial(sign.clone(), Monomial::one(nvars))
            } else {
                ModuleElement::ring_zero(nvars)
            }
        })
        .collect()
}

fn combo_add_scaled(a: &mut Combo, q: &BigInt, u: &Monomial, b: &Combo) {
    for (x, y) in a.iter_mut().zip(b) {
        *x = x.add_scaled(q, u, y);
    }
}

/// A strong Gröbner basis of a submodule of `ℤ[x₁,…,x_k]^m`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    generators: Vec<ModuleElement>,
    origin: Vec<ModuleElement>,
    certificates: Option<Vec<Combo>>,
    nvars: usize,
    rank: usize,
    steps: u64,
}

struct Builder {
    elems: Vec<ModuleElement>,
    combos: Option<Vec<Combo>>,
    nvars: usize,
    budget: Budget,
}

impl Builder {
    /// Reduces `h` and returns the result with its combination.
    fn reduce(&mut self, h: ModuleElement, combo: Option<Combo>) -> Result<(ModuleElement, Option<Combo>)> {
        let mut quotients: Vec<(usize, Term)> = Vec::new();
        let track = combo.is_some();
        let r = reduce_with(&h, &self.elems, &mut self.budget, |i, t| {
            if track {
                quotients.push((i, t.clone()));
            }
        })?;
        let combo = combo.map(|mut c| {
            let combos = self.combos.as_ref().expect("tracking");
            for (i, t) in &quotients {
                combo_add_scaled(&mut c, &-&t.coeff, &t.mono, &combos[*i]);
            }
            c
        });
        Ok((r, combo))
    }

    /// Appends `h` with positive leading coefficient; returns its index.
    fn push(&mut self, h: ModuleElement, combo: Option<Combo>) -> usize {
        let negative = h.leading_term().is_some_and(|t| t.coeff.is_negative());
        let (h, combo) = if negative {
            let minus = BigInt::from(-1);
            let one = Monomial::one(self.nvars);
            (
                h.neg(),
                combo.map(|c| c.iter().map(|x| x.scale_translate(&minus, &one)).collect()),
            )
        } else {
            (h, combo)
        };
        self.elems.push(h);
        if let (Some(cs), Some(c)) = (self.combos.as_mut(), combo) {
            cs.push(c);
        }
        self.elems.len() - 1
    }

    fn scaled(&self, i: usize, c: &BigInt, u: &Monomial) -> (ModuleElement, Option<Combo>) {
        let e = self.elems[i].scale_translate(c, u);
        let combo = self.combos.as_ref().map(|cs| {
            cs[i]
                .iter()
                .map(|x| x.scale_translate(c, u))
                .collect::<Combo>()
        });
        (e, combo)
    }

    fn combine(
        &self,
        (a, ca): (ModuleElement, Option<Combo>),
        (b, cb): (ModuleElement, Option<Combo>),
    ) -> (ModuleElement, Option<Combo>) {
        let e = a.add(&b).expect("same ambient");
        let combo = match (ca, cb) {
            (Some(x), Some(y)) => Some(
                x.iter()
                    .zip(&y)
                    .map(|(p, q)| p.add(q).expect("same ring"))
                    .collect(),
            ),
            _ => None,
        };
        (e, combo)
    }

    /// The S- and G-polynomials of a pair.
    fn pair_polys(&self, i: usize, j: usize) -> Vec<(ModuleElement, Option<Combo>)> {
        let (fi, fj) = (&self.elems[i], &self.elems[j]);
        let (ti, tj) = (fi.leading_term().unwrap(), fj.leading_term().unwrap());
        let m = ti.mono.lcm(&tj.mono);
        let (ui, uj) = (ti.mono.quotient(&m), tj.mono.quotient(&m));
        let (a, b) = (&ti.coeff, &tj.coeff);
        let l = a.lcm(b);
        let mut out = vec![self.combine(
            self.scaled(i, &(&l / a), &ui),
            self.scaled(j, &-(&l / b), &uj),
        )];
        let eg = a.extended_gcd(b);
        if &eg.gcd != a && &eg.gcd != b {
            out.push(self.combine(self.scaled(i, &eg.x, &ui), self.scaled(j, &eg.y, &uj)));
        }
        out
    }
}

fn pair_key(elems: &[ModuleElement], i: usize, j: usize) -> Option<Monomial> {
    let (a, b) = (elems[i].leading_term()?, elems[j].leading_term()?);
    if a.mono.basis != b.mono.basis {
        return None;
    }
    Some(a.mono.lcm(&b.mono))
}

impl GroebnerBasis {
    /// Strong Buchberger completion with S- and G-polynomials, normal pair
    /// selection and a final auto-reduction.
    pub fn compute(
        gens: &[ModuleElement],
        nvars: usize,
        rank: usize,
        options: &GroebnerOptions,
    ) -> Result<GroebnerBasis> {
        for g in gens {
            if g.nvars() != nvars || g.rank() != rank {
                return Err(Error::Ambient(nvars, rank, g.nvars(), g.rank()));
            }
            if !g.is_polynomial() {
                return Err(Error::Invalid(
                    "negative exponents must be embedded before completion".into(),
                ));
            }
        }
        let norigin = gens.len();
        let mut b = Builder {
            elems: Vec::new(),
            combos: options.certificates.then(Vec::new),
            nvars,
            budget: Budget::new(options.budget),
        };
        let mut heap: BinaryHeap<Reverse<(Monomial, usize, usize)>> = BinaryHeap::new();
        let add = |b: &mut Builder,
                       heap: &mut BinaryHeap<Reverse<(Monomial, usize, usize)>>,
                       h: ModuleElement,
                       combo: Option<Combo>|
         -> Result<()> {
            let (r, combo) = b.reduce(h, combo)?;
            if r.is_zero() {
                return Ok(());
            }
            let n = b.push(r, combo);
            for i in 0..n {
                if let Some(key) = pair_key(&b.elems, i, n) {
                    heap.push(Reverse((key, i, n)));
                }
            }
            Ok(())
        };
        for (j, g) in gens.iter().enumerate() {
            let combo = options
                .certificates
                .then(|| combo_unit(nvars, norigin, j, &BigInt::one()));
            add(&mut b, &mut heap, g.clone(), combo)?;
        }
        while let Some(Reverse((_, i, j))) = heap.pop() {
            for (h, combo) in b.pair_polys(i, j) {
                add(&mut b, &mut heap, h, combo)?;
            }
        }
        let steps = b.budget.used();
        let mut basis = GroebnerBasis {
            generators: b.elems,
            origin: gens.to_vec(),
            certificates: b.combos,
            nvars,
            rank,
            steps,
        };
        basis.auto_reduce(&mut b.budget)?;
        basis.steps = b.budget.used();
        Ok(basis)
    }

    /// Drops generators whose leading term is divisible by another one and
    /// tail-reduces the rest.
    fn auto_reduce(&mut self, budget: &mut Budget) -> Result<()> {
        let n = self.generators.len();
        let mut keep = vec![true; n];
        for i in 0..n {
            let ti = self.generators[i].leading_term().unwrap();
            for j in 0..n {
                if i == j || !keep[j] {
                    continue;
                }
                let tj = self.generators[j].leading_term().unwrap();
                let divides = tj.mono.divides(&ti.mono) && (&ti.coeff % &tj.coeff).is_zero();
                // Equal leading terms: keep the earlier element.
                if divides && (tj != ti || j < i) {
                    keep[i] = false;
                    break;
                }
            }
        }
        let mut gens = Vec::new();
        let mut certs = self.certificates.as_ref().map(|_| Vec::new());
        for i in 0..n {
            if keep[i] {
                gens.push(self.generators[i].clone());
                if let (Some(c), Some(all)) = (certs.as_mut(), self.certificates.as_ref()) {
                    c.push(all[i].clone());
                }
            }
        }
        sort_with(&mut gens, &mut certs);
        for i in 0..gens.len() {
            let (head, tail) = split_lead(&gens[i]);
            let others: Vec<ModuleElement> = gens
                .iter()
                .enumerate()
                .map(|(j, g)| {
                    if j == i {
                        ModuleElement::zero(self.nvars, self.rank)
                    } else {
                        g.clone()
                    }
                })
                .collect();
            let mut quotients = Vec::new();
            let r = reduce_with(&tail, &others, budget, |j, t| quotients.push((j, t.clone())))?;
            if let Some(cs) = certs.as_mut() {
                let mut c = cs[i].clone();
                for (j, t) in &quotients {
                    let cj = cs[*j].clone();
                    combo_add_scaled(&mut c, &-&t.coeff, &t.mono, &cj);
                }
                cs[i] = c;
            }
            gens[i] = head.add(&r)?;
        }
        self.generators = gens;
        self.certificates = certs;
        Ok(())
    }

    pub fn generators(&self) -> &[ModuleElement] {
        &self.generators
    }

    pub fn origin(&self) -> &[ModuleElement] {
        &self.origin
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Reduction steps spent during completion.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// For generator `i`, ring coefficients `cⱼ` with `Σ cⱼ·originⱼ = generators[i]`,
    /// when certificates were requested.
    pub fn certificate(&self, i: usize) -> Option<&[RingElement]> {
        self.certificates.as_ref().map(|c| c[i].as_slice())
    }

    pub fn normal_form(&self, g: &ModuleElement) -> Result<ModuleElement> {
        self.normal_form_with(g, &mut Budget::default())
    }

    pub fn normal_form_with(&self, g: &ModuleElement, budget: &mut Budget) -> Result<ModuleElement> {
        g.check_ambient(&ModuleElement::zero(self.nvars, self.rank))
            .map_err(|_| Error::Ambient(self.nvars, self.rank, g.nvars(), g.rank()))?;
        reduce_with(g, &self.generators, budget, |_, _| {})
    }

    pub fn contains(&self, g: &ModuleElement) -> Result<bool> {
        Ok(self.normal_form(g)?.is_zero())
    }

    /// Division with quotients aligned to [`Self::generators`].
    pub fn divide(&self, g: &ModuleElement) -> Result<DivisionCertificate> {
        DivisionCertificate::compute(g, self, &mut Budget::default())
    }

    /// Expresses a member `g` over the original generators, using the
    /// tracked certificates; `None` when `g` is not a member or certificates
    /// were not tracked.
    pub fn lift(&self, g: &ModuleElement) -> Result<Option<Vec<RingElement>>> {
        let Some(certs) = self.certificates.as_ref() else {
            return Ok(None);
        };
        let d = self.divide(g)?;
        if !d.residue.is_zero() {
            return Ok(None);
        }
        let mut out: Combo = vec![ModuleElement::ring_zero(self.nvars); self.origin.len()];
        for (alpha, cert) in d.coefficients.iter().zip(certs) {
            for t in alpha.terms() {
                combo_add_scaled(&mut out, &t.coeff, &t.mono, cert);
            }
        }
        Ok(Some(out))
    }

    pub fn to_json(&self, names: &Names) -> Value {
        json!({
            "generators": self.generators.iter().map(|g| format_element(g, names)).collect::<Vec<_>>(),
            "origin": self.origin.iter().map(|g| format_element(g, names)).collect::<Vec<_>>(),
            "steps": self.steps,
        })
    }
}

fn split_lead(g: &ModuleElement) -> (ModuleElement, ModuleElement) {
    let terms = g.terms();
    let head = ModuleElement::from_terms(g.nvars(), g.rank(), terms[..1].iter().cloned());
    let tail = ModuleElement::from_terms(g.nvars(), g.rank(), terms[1..].iter().cloned());
    (head, tail)
}

/// Orders generators by leading term, ascending, keeping certificates aligned.
fn sort_with(gens: &mut Vec<ModuleElement>, certs: &mut Option<Vec<Combo>>) {
    let mut idx: Vec<usize> = (0..gens.len()).collect();
    idx.sort_by(|&a, &b| {
        let (x, y) = (gens[a].leading_term().unwrap(), gens[b].leading_term().unwrap());
        crate::order::compare_terms(x, y)
    });
    *gens = idx.iter().map(|&i| gens[i].clone()).collect();
    if let Some(c) = certs.as_mut() {
        *c = idx.iter().map(|&i| c[i].clone()).collect();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn elem(nvars: usize, rank: usize, terms: &[(i64, &[i64], usize)]) -> ModuleElement {
        ModuleElement::from_terms(
            nvars,
            rank,
            terms.iter().map(|(c, e, b)| {
                Term::new(*c, Monomial::from_exps(e.iter().copied()).with_basis(*b))
            }),
        )
    }

    #[test]
    fn reduce_step_fixtures() {
        let f = vec![elem(1, 1, &[(2, &[0], 0)])];
        let s = reduce_step(&elem(1, 1, &[(5, &[0], 0)]), &f).unwrap();
        assert_eq!(s.result, elem(1, 1, &[(1, &[0], 0)]));
        assert_eq!(s.quotient.coeff, BigInt::from(2));
        let s = reduce_step(&elem(1, 1, &[(4, &[0], 0)]), &f).unwrap();
        assert!(s.result.is_zero());
        let g = vec![elem(1, 1, &[(5, &[0], 0)])];
        assert!(reduce_step(&elem(1, 1, &[(3, &[0], 0)]), &g).is_none());
    }

    #[test]
    fn negative_coefficients_reduce_into_range() {
        let f = vec![elem(1, 1, &[(2, &[0], 0)])];
        let s = reduce_step(&elem(1, 1, &[(-1, &[0], 0)]), &f).unwrap();
        assert_eq!(s.result, elem(1, 1, &[(1, &[0], 0)]));
    }

    #[test]
    fn closed_pair_stays_closed() {
        let gens = vec![elem(1, 1, &[(2, &[0], 0)]), elem(1, 1, &[(1, &[1], 0)])];
        let gb = GroebnerBasis::compute(&gens, 1, 1, &GroebnerOptions::default()).unwrap();
        let mut got: Vec<_> = gb.generators().to_vec();
        got.sort();
        let mut want = gens.clone();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn ideal_two_x_normal_form() {
        let gens = vec![
            ModuleElement::ring_monomial(2, Monomial::one(1)),
            ModuleElement::ring_monomial(1, Monomial::from_exps([1])),
        ];
        let gb = GroebnerBasis::compute(&gens, 1, 0, &GroebnerOptions::default()).unwrap();
        let g = ModuleElement::from_terms(
            1,
            0,
            [
                Term::new(1, Monomial::from_exps([1])),
                Term::new(1, Monomial::from_exps([0])),
            ],
        );
        assert_eq!(gb.normal_form(&g).unwrap(), ModuleElement::ring_one(1));
    }

    #[test]
    fn empty_input() {
        let gb = GroebnerBasis::compute(&[], 2, 1, &GroebnerOptions::default()).unwrap();
        let g = elem(2, 1, &[(3, &[1, 0], 0)]);
        assert_eq!(gb.normal_form(&g).unwrap(), g);
    }

    #[test]
    fn gcd_polynomial_is_found() {
        // ⟨3x, 2x⟩ contains x.
        let gens = vec![elem(1, 1, &[(3, &[1], 0)]), elem(1, 1, &[(2, &[1], 0)])];
        let opts = GroebnerOptions {
            certificates: true,
            ..Default::default()
        };
        let gb = GroebnerBasis::compute(&gens, 1, 1, &opts).unwrap();
        assert_eq!(gb.generators(), &[elem(1, 1, &[(1, &[1], 0)])]);
        let lift = gb.lift(&elem(1, 1, &[(1, &[1], 0)])).unwrap().unwrap();
        let mut acc = ModuleElement::zero(1, 1);
        for (c, g) in lift.iter().zip(&gens) {
            acc = acc.add(&g.mul_ring(c).unwrap()).unwrap();
        }
        assert_eq!(acc, elem(1, 1, &[(1, &[1], 0)]));
    }

    #[test]
    fn budget_is_enforced() {
        let gens = vec![elem(2, 1, &[(2, &[1, 0], 0), (1, &[0, 1], 0)]), elem(2, 1, &[(3, &[0, 1], 0), (1, &[0, 0], 0)])];
        let opts = GroebnerOptions {
            budget: 1,
            certificates: false,
        };
        assert!(matches!(
            GroebnerBasis::compute(&gens, 2, 1, &opts),
            Err(Error::BudgetExceeded(1))
        ));
    }
}
