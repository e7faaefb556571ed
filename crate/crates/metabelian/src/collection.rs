//! Collection of words in the normal closure of `𝒜` into ordered form
//! `a₁^{λ₁}…a_m^{λ_m}`, together with a ledger of the relations spent.
//!
//! The pipeline is `w → w₁ → w₂ → w₃ → w₄`: split into conjugates `b^v`
//! and a `T`-tail, collect the tail into commutator conjugates, normalize
//! every conjugator to its ordered monomial, then sort the conjugates.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bound::Magnitude;
use crate::element::{ModuleElement, Term};
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::presentation::{exponent_sums, Gen, GroupWord, Letter, Presentation};

/// A conjugate `b^{±v}` of a module generator by a word over `𝒯`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conjugate {
    pub gen: usize,
    pub sign: i64,
    pub conjugator: GroupWord,
}

impl Conjugate {
    /// The conjugate as a group word `v⁻¹ b^{±1} v`.
    pub fn word(&self) -> GroupWord {
        GroupWord::letter(Gen::Module(self.gen), self.sign).conjugate(&self.conjugator)
    }
}

/// Relation counts by class.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CostLedger {
    /// Uses of `[tᵢ,tⱼ] = a_ij`.
    pub r1_commutators: u64,
    /// Commutations of two conjugates of module generators.
    pub r2_commutations: u64,
    /// Commutations keyed by the norm of the relative conjugator.
    pub r2_norms: BTreeMap<u64, u64>,
    /// Relator and torsion power applications.
    pub module_relations: u64,
    /// Free cancellations, which cost nothing.
    pub free_steps: u64,
}

impl CostLedger {
    pub fn record_commutation(&mut self, norm: u64) {
        self.r2_commutations += 1;
        *self.r2_norms.entry(norm).or_default() += 1;
    }

    pub fn merge(&mut self, other: &CostLedger) {
        self.r1_commutators += other.r1_commutators;
        self.r2_commutations += other.r2_commutations;
        for (&l, &c) in &other.r2_norms {
            *self.r2_norms.entry(l).or_default() += c;
        }
        self.module_relations += other.module_relations;
        self.free_steps += other.free_steps;
    }

    /// Every relation application at unit price.
    pub fn absolute_total(&self) -> u64 {
        self.r1_commutators + self.r2_commutations + self.module_relations
    }

    /// Commutations priced at `K^ℓ`, the area bound for `[a, b^u]` with
    /// `‖θ(u)‖ = ℓ`.
    pub fn absolute_priced_total(&self, k: &Magnitude) -> Magnitude {
        let mut total = Magnitude::from_u64(self.r1_commutators + self.module_relations);
        for (&l, &c) in &self.r2_norms {
            total = total.add(&k.pow_u64(l).mul(&Magnitude::from_u64(c)));
        }
        total
    }

    /// Commutations priced at the relative rate `max(1, 4ℓ − 3)`.
    pub fn relative_total(&self) -> u64 {
        self.r1_commutators
            + self.module_relations
            + self
                .r2_norms
                .iter()
                .map(|(&l, &c)| c * relative_commutation_price(l))
                .sum::<u64>()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "r1_commutators": self.r1_commutators,
            "r2_commutations": self.r2_commutations,
            "r2_norms": self.r2_norms,
            "module_relations": self.module_relations,
            "free_steps": self.free_steps,
            "absolute_total": self.absolute_total(),
            "relative_total": self.relative_total(),
        })
    }
}

/// Relative area of `[a, b^u]` with `|u| = ℓ`.
pub fn relative_commutation_price(l: u64) -> u64 {
    (4 * l).saturating_sub(3).max(1)
}

/// `(λ₁, …, λ_m)` for a word of length `source_length`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrderedForm {
    pub vector: ModuleElement,
    pub source_length: u64,
}

/// `θ(w)` without torsion reduction.
pub fn raw_exponents(w: &GroupWord, nt: usize) -> Vec<i64> {
    let mut v = vec![0i64; nt];
    for l in w.letters() {
        if let Gen::T(i) = l.gen {
            v[i] += l.exp;
        }
    }
    v
}

/// Reduces torsion coordinates into `[0, d)`.
pub fn reduce_exponents(v: &mut [i64], p: &Presentation) {
    for (i, e) in v.iter_mut().enumerate() {
        if let Some(d) = p.torsion_order(i) {
            *e = e.rem_euclid(d as i64);
        }
    }
}

/// `‖θ‖`: the ℓ¹ norm on free coordinates plus the cyclic distance to zero
/// on torsion coordinates.
pub fn t_norm(v: &[i64], p: &Presentation) -> u64 {
    v.iter()
        .enumerate()
        .map(|(i, &e)| match p.torsion_order(i) {
            Some(d) => {
                let r = e.rem_euclid(d as i64) as u64;
                r.min(d - r)
            }
            None => e.unsigned_abs(),
        })
        .sum()
}

fn difference(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// The ordered word `t₁^{e₁}…t_k^{e_k}`.
pub fn ordered_t_word(v: &[i64]) -> GroupWord {
    GroupWord::from_letters(v.iter().enumerate().map(|(i, &e)| Letter {
        gen: Gen::T(i),
        exp: e,
    }))
}

fn t_letters(w: &GroupWord) -> Result<Vec<(usize, i64)>> {
    w.unit_letters()
        .map(|(g, e)| match g {
            Gen::T(i) => Ok((i, e)),
            Gen::Module(_) => Err(Error::Invalid("expected a word over the generators of T".into())),
        })
        .collect()
}

fn check_sums(w: &GroupWord, p: &Presentation) -> Result<()> {
    let sums = exponent_sums(w, p);
    let bad: Vec<String> = sums
        .iter()
        .enumerate()
        .filter(|(_, &s)| s != 0)
        .map(|(i, _)| p.t_name(i).to_string())
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Error::NotInNormalClosure(bad))
    }
}

/// `w = Π bᵢ^{vᵢ} · tail` in the free group, with `vᵢ` the inverse of the
/// `T`-prefix before the `i`-th module letter.
pub fn split_conjugates(w: &GroupWord) -> (Vec<Conjugate>, GroupWord) {
    let mut prefix = GroupWord::identity();
    let mut out = Vec::new();
    for l in w.letters() {
        match l.gen {
            Gen::T(_) => prefix = prefix.mul(&GroupWord::letter(l.gen, l.exp)),
            Gen::Module(b) => {
                let v = prefix.inverse();
                for _ in 0..l.exp.unsigned_abs() {
                    out.push(Conjugate {
                        gen: b,
                        sign: l.exp.signum(),
                        conjugator: v.clone(),
                    });
                }
            }
        }
    }
    (out, prefix)
}

/// Result of moving one letter into an ordered word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Push {
    pub word: Vec<i64>,
    /// Conjugates `C` with `prefix · x = word · C`, in product order.
    pub emissions: Vec<Conjugate>,
    /// Torsion power relations applied.
    pub power_relations: u64,
}

/// `[t_k^δ, t_s^ε]` for `s < k` as `(a_sk^{sign})^{c}`.
fn commutator_as_conjugate(s: usize, eps: i64, k: usize, delta: i64) -> (i64, GroupWord) {
    let inv = |i: usize| GroupWord::letter(Gen::T(i), -1);
    match (eps, delta) {
        (1, 1) => (-1, GroupWord::identity()),
        (-1, 1) => (1, inv(s)),
        (1, -1) => (1, inv(k)),
        _ => (-1, inv(s).mul(&inv(k))),
    }
}

/// Moves `t_s^{eps}` (with `eps = ±1`) to the left past every block
/// `t_k^{m_k}`, `k > s`, of the ordered word `prefix`.
pub fn push_letter(prefix: &[i64], s: usize, eps: i64, p: &Presentation) -> Result<Push> {
    let nt = p.t_count();
    if s >= nt || prefix.len() != nt || eps.abs() != 1 {
        return Err(Error::Invalid(format!("cannot push letter {s}^{eps}")));
    }
    let ys: Vec<(usize, i64)> = (s + 1..nt)
        .flat_map(|k| std::iter::repeat_n((k, prefix[k].signum()), prefix[k].unsigned_abs() as usize))
        .collect();
    let mut suffix = GroupWord::identity();
    let mut emissions = Vec::with_capacity(ys.len());
    for &(k, delta) in ys.iter().rev() {
        let gen = p
            .commutator_gen(s, k)
            .ok_or_else(|| Error::Invalid(format!("no commutator generator for ({s}, {k})")))?;
        let (sign, c) = commutator_as_conjugate(s, eps, k, delta);
        emissions.push(Conjugate {
            gen,
            sign,
            conjugator: c.mul(&suffix),
        });
        suffix = GroupWord::letter(Gen::T(k), delta).mul(&suffix);
    }
    emissions.reverse();
    let mut word = prefix.to_vec();
    word[s] += eps;
    let mut power_relations = 0;
    if let Some(d) = p.torsion_order(s) {
        let d = d as i64;
        if word[s] == d || word[s] == -1 {
            word[s] = word[s].rem_euclid(d);
            power_relations = 1;
        }
    }
    Ok(Push {
        word,
        emissions,
        power_relations,
    })
}

/// Writes a `T`-word with trivial image as a product of conjugates of
/// commutator generators.
pub fn commutator_collect(tail: &GroupWord, p: &Presentation) -> Result<(Vec<Conjugate>, CostLedger)> {
    check_sums(tail, p)?;
    let letters = t_letters(tail)?;
    let mut ledger = CostLedger::default();
    let mut prefix = vec![0i64; p.t_count()];
    let mut out = Vec::new();
    for (idx, &(s, eps)) in letters.iter().enumerate() {
        let push = push_letter(&prefix, s, eps, p)?;
        ledger.module_relations += push.power_relations;
        if !push.emissions.is_empty() {
            let suffix = GroupWord::from_letters(letters[idx + 1..].iter().map(|&(i, e)| Letter {
                gen: Gen::T(i),
                exp: e,
            }));
            for e in push.emissions {
                ledger.r1_commutators += 1;
                out.push(Conjugate {
                    conjugator: e.conjugator.mul(&suffix),
                    ..e
                });
            }
        }
        prefix = push.word;
    }
    debug_assert!(prefix.iter().all(|&e| e == 0));
    Ok((out, ledger))
}

/// How `b^v` is rewritten to `b^{v̄}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// Push the letters of `v` one at a time.
    Push,
    /// Collect `z = v̄⁻¹v` and commute `b^{v̄}` past it.
    Collect,
    /// Whichever of the two is cheaper at relative prices.
    Cheapest,
}

/// Whether the module generator is itself a relator, so its conjugates can
/// be deleted at the price of one relation each.
fn is_trivial_generator(gen: usize, p: &Presentation) -> bool {
    p.relators
        .iter()
        .any(|r| r.letters() == [Letter { gen: Gen::Module(gen), exp: 1 }])
}

/// Charges for cancelling `C⁻¹ b^{ū} C` against one emitted conjugate.
fn charge_emission(e: &Conjugate, target: &[i64], p: &Presentation, ledger: &mut CostLedger) {
    ledger.r1_commutators += 2;
    let mut pos = raw_exponents(&e.conjugator, p.t_count());
    reduce_exponents(&mut pos, p);
    let l = t_norm(&difference(&pos, target), p);
    if l >= 2 && is_trivial_generator(e.gen, p) {
        ledger.module_relations += 2;
    } else {
        ledger.record_commutation(l);
    }
}

fn normalize_push(v: &[(usize, i64)], p: &Presentation) -> Result<(Vec<i64>, CostLedger)> {
    let mut ledger = CostLedger::default();
    let mut bar = vec![0i64; p.t_count()];
    for &(s, eps) in v {
        let push = push_letter(&bar, s, eps, p)?;
        ledger.module_relations += push.power_relations;
        bar = push.word;
        for e in &push.emissions {
            charge_emission(e, &bar, p, &mut ledger);
        }
    }
    Ok((bar, ledger))
}

fn normalize_collect(v: &GroupWord, p: &Presentation) -> Result<(Vec<i64>, CostLedger)> {
    let mut bar = raw_exponents(v, p.t_count());
    reduce_exponents(&mut bar, p);
    let z = ordered_t_word(&bar).inverse().mul(v);
    let (ems, inner) = commutator_collect(&z, p)?;
    let mut ledger = CostLedger {
        module_relations: 2 * inner.module_relations,
        ..CostLedger::default()
    };
    for e in &ems {
        charge_emission(e, &bar, p, &mut ledger);
    }
    Ok((bar, ledger))
}

/// Rewrites `b^{±v}` to `±v̄·e_b`, returning the exponents of `v̄` and the
/// relations spent.
pub fn conjugate_normalize(
    c: &Conjugate,
    p: &Presentation,
    route: Route,
) -> Result<(Vec<i64>, CostLedger)> {
    if c.gen >= p.m() {
        return Err(Error::Invalid(format!("module generator {} out of range", c.gen)));
    }
    let letters = t_letters(&c.conjugator)?;
    match route {
        Route::Push => normalize_push(&letters, p),
        Route::Collect => normalize_collect(&c.conjugator, p),
        Route::Cheapest => {
            let a = normalize_push(&letters, p)?;
            let b = normalize_collect(&c.conjugator, p)?;
            Ok(if b.1.relative_total() < a.1.relative_total() { b } else { a })
        }
    }
}

struct Collected {
    gen: usize,
    sign: i64,
    exps: Vec<i64>,
    mono: Monomial,
}

fn sort_key(a: &Collected, b: &Collected) -> Ordering {
    a.gen
        .cmp(&b.gen)
        .then_with(|| b.mono.try_cmp(&a.mono).expect("same ring"))
}

/// The ordered form of `w`, which must have trivial image in `T`.
pub fn ordered_form(w: &GroupWord, p: &Presentation) -> Result<(OrderedForm, CostLedger)> {
    ordered_form_with(w, p, Route::Push)
}

/// [`ordered_form`] with conjugators normalized along `route`.
pub fn ordered_form_with(
    w: &GroupWord,
    p: &Presentation,
    route: Route,
) -> Result<(OrderedForm, CostLedger)> {
    check_sums(w, p)?;
    let (mut conjugates, tail) = split_conjugates(w);
    let (emitted, mut ledger) = commutator_collect(&tail, p)?;
    conjugates.extend(emitted);
    let nt = p.t_count();
    let mut items = Vec::with_capacity(conjugates.len());
    for c in &conjugates {
        let (exps, l) = conjugate_normalize(c, p, route)?;
        ledger.merge(&l);
        items.push(Collected {
            gen: c.gen,
            sign: c.sign,
            mono: Monomial::from_exps(exps.iter().copied()),
            exps,
        });
    }
    for i in 0..items.len() {
        for j in i + 1..items.len() {
            if sort_key(&items[i], &items[j]) == Ordering::Greater {
                ledger.record_commutation(t_norm(&difference(&items[i].exps, &items[j].exps), p));
            }
        }
    }
    items.sort_by(sort_key);
    let mut start = 0;
    while start < items.len() {
        let mut end = start;
        let (mut pos, mut neg) = (0u64, 0u64);
        while end < items.len() && sort_key(&items[start], &items[end]) == Ordering::Equal {
            if items[end].sign > 0 {
                pos += 1;
            } else {
                neg += 1;
            }
            end += 1;
        }
        ledger.free_steps += pos.min(neg);
        start = end;
    }
    let vector = ModuleElement::from_terms(
        nt,
        p.m(),
        items
            .into_iter()
            .map(|it| Term::new(it.sign, it.mono.with_basis(it.gen))),
    );
    Ok((
        OrderedForm {
            vector,
            source_length: w.length(),
        },
        ledger,
    ))
}

/// Renders a vector of `(ℤT)^m` as the word `Π (a_i^{c})^{ū}`, basis by
/// basis and with monomials in descending order.
pub fn render_ordered_form(f: &ModuleElement, p: &Presentation) -> Result<GroupWord> {
    if f.nvars() != p.t_count() || f.rank() != p.m() {
        return Err(Error::Ambient(p.t_count(), p.m(), f.nvars(), f.rank()));
    }
    let mut items: Vec<(usize, &Term)> = f
        .terms()
        .iter()
        .map(|t| {
            t.mono
                .basis
                .map(|b| (b, t))
                .ok_or_else(|| Error::Invalid("expected a module element".into()))
        })
        .collect::<Result<_>>()?;
    items.sort_by(|a, b| {
        a.0.cmp(&b.0)
            .then_with(|| b.1.mono.ring_part().try_cmp(&a.1.mono.ring_part()).expect("same ring"))
    });
    let mut w = GroupWord::identity();
    for (b, t) in items {
        let exps: Vec<i64> = t
            .mono
            .exps
            .iter()
            .map(|e| i64::try_from(e).map_err(|_| Error::Invalid("exponent out of range".into())))
            .collect::<Result<_>>()?;
        let c = i64::try_from(&t.coeff).map_err(|_| Error::Invalid("coefficient out of range".into()))?;
        let letter = GroupWord::letter(Gen::Module(b), c);
        w = w.mul(&letter.conjugate(&ordered_t_word(&exps)));
    }
    Ok(w)
}

/// Closed-form bounds from the collection lemmas.
#[derive(Clone, Debug, Serialize)]
pub struct CostBounds {
    /// `n²`.
    pub abelian: Magnitude,
    /// `K^n`.
    pub conjugate: Magnitude,
    /// `(2K)^n`.
    pub organizer: Magnitude,
    /// `m²P²K^{2Q}`.
    pub product: Magnitude,
    /// `(|c| − 1)m²P²K^{2Q}`.
    pub scalar: Magnitude,
    /// `mP(2K)^{k(Q + deg t)}`.
    pub translate: Magnitude,
}

/// Inputs of [`cost_bounds`]; `c_length` is `|c|` and `t_degree` is `deg t`.
#[derive(Clone, Debug)]
pub struct BoundInputs {
    pub n: u64,
    pub k_const: Magnitude,
    pub q: u64,
    pub p: u64,
    pub m: u64,
    pub k: u64,
    pub c_length: u64,
    pub t_degree: u64,
}

pub fn cost_bounds(x: &BoundInputs) -> CostBounds {
    let two_k = x.k_const.mul(&Magnitude::from_u64(2));
    let mp2 = Magnitude::from_u64(x.m * x.m).mul(&Magnitude::from_u64(x.p * x.p));
    let product = mp2.mul(&x.k_const.pow_u64(2 * x.q));
    CostBounds {
        abelian: Magnitude::from_u64(x.n).pow_u64(2),
        conjugate: x.k_const.pow_u64(x.n),
        organizer: two_k.pow_u64(x.n),
        scalar: Magnitude::from_u64(x.c_length.saturating_sub(1)).mul(&product),
        product,
        translate: Magnitude::from_u64(x.m * x.p).mul(&two_k.pow_u64(x.k * (x.q + x.t_degree))),
    }
}

/// `n² + (n²+n)(2K)ⁿ + (n²+n)²K^{2n}`, the cost of `w → w₄`.
pub fn pipeline_bound(n: u64, k: &Magnitude) -> Magnitude {
    let nn = Magnitude::from_u64(n * n + n);
    Magnitude::from_u64(n * n)
        .add(&nn.mul(&k.mul(&Magnitude::from_u64(2)).pow_u64(n)))
        .add(&nn.pow_u64(2).mul(&k.pow_u64(2 * n)))
}

/// Relative analogue of [`pipeline_bound`]:
/// `n² + (4n−3)(n²+n) + (4n−3)²(n²+n)²`.
pub fn relative_pipeline_bound(n: u64) -> Magnitude {
    let c = Magnitude::from_u64((4 * n).saturating_sub(3));
    let nn = Magnitude::from_u64(n * n + n);
    Magnitude::from_u64(n * n)
        .add(&c.mul(&nn))
        .add(&c.pow_u64(2).mul(&nn.pow_u64(2)))
}

/// Monomial `ū` of a `T`-exponent vector, as a ring element.
pub fn monomial_of(exps: &[i64]) -> Monomial {
    Monomial::from_exps(exps.iter().map(|&e| BigInt::from(e)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{format_word, parse_word};
    use crate::text::format_element;

    fn two_t() -> Presentation {
        Presentation::build(
            vec!["a".into(), "c".into()],
            vec!["t1".into(), "t2".into()],
            vec![],
            vec![(("t1".into(), "t2".into()), "c".into())],
            &[],
            None,
        )
        .unwrap()
    }

    fn bs2() -> Presentation {
        Presentation::build(vec!["a".into()], vec!["t".into()], vec![], vec![], &["a^t*a^-2".into()], None)
            .unwrap()
    }

    fn product(conjs: &[Conjugate]) -> GroupWord {
        conjs.iter().fold(GroupWord::identity(), |acc, c| acc.mul(&c.word()))
    }

    /// Replaces each emitted `c^{±α}` by `[t1,t2]^{±α}`.
    fn as_t_word(conjs: &[Conjugate]) -> GroupWord {
        let comm = GroupWord::commutator(
            &GroupWord::letter(Gen::T(0), 1),
            &GroupWord::letter(Gen::T(1), 1),
        );
        conjs.iter().fold(GroupWord::identity(), |acc, c| {
            acc.mul(&comm.pow(c.sign).conjugate(&c.conjugator))
        })
    }

    #[test]
    fn split_examples() {
        let p = bs2();
        let (c, tail) = split_conjugates(&parse_word("t*a*t^-1", &p).unwrap());
        assert_eq!(c.len(), 1);
        assert_eq!(format_word(&c[0].conjugator, &p), "t^-1");
        assert!(tail.is_identity());
        let (c, tail) = split_conjugates(&parse_word("t^2", &p).unwrap());
        assert!(c.is_empty());
        assert_eq!(format_word(&tail, &p), "t^2");
    }

    #[test]
    fn split_is_a_free_identity() {
        let p = two_t();
        let w = parse_word("t1*a*t2^-1*a^-2*t1^-1*c*t2", &p).unwrap();
        let (c, tail) = split_conjugates(&w);
        assert_eq!(product(&c).mul(&tail), w);
    }

    #[test]
    fn push_letter_examples() {
        let p = two_t();
        let r = push_letter(&[0, 2], 0, 1, &p).unwrap();
        assert_eq!(r.word, vec![1, 2]);
        let text: Vec<_> = r
            .emissions
            .iter()
            .map(|e| (e.sign, format_word(&e.conjugator, &p)))
            .collect();
        assert_eq!(text, vec![(-1, "t2".to_string()), (-1, "1".to_string())]);
        let r = push_letter(&[3, 0], 0, 1, &p).unwrap();
        assert_eq!((r.word, r.emissions.len()), (vec![4, 0], 0));
        let r = push_letter(&[0, -1], 0, -1, &p).unwrap();
        assert_eq!(r.word, vec![-1, -1]);
        assert_eq!(r.emissions.len(), 1);
    }

    #[test]
    fn push_letter_is_a_free_identity() {
        let p = two_t();
        for m1 in -2..=2i64 {
            for m2 in -3..=3i64 {
                for (s, eps) in [(0, 1), (0, -1), (1, 1), (1, -1)] {
                    let r = push_letter(&[m1, m2], s, eps, &p).unwrap();
                    let lhs = ordered_t_word(&[m1, m2]).mul(&GroupWord::letter(Gen::T(s), eps));
                    let rhs = ordered_t_word(&r.word).mul(&as_t_word(&r.emissions));
                    assert_eq!(lhs, rhs, "m = ({m1}, {m2}), letter {s}^{eps}");
                    let expect = if s == 0 { m2.unsigned_abs() } else { 0 };
                    assert_eq!(r.emissions.len() as u64, expect);
                }
            }
        }
    }

    #[test]
    fn collect_examples() {
        let p = two_t();
        let (c, l) = commutator_collect(&parse_word("t1^-1*t2^-1*t1*t2", &p).unwrap(), &p).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(l.r1_commutators, 1);
        assert_eq!(as_t_word(&c), parse_word("[t1, t2]", &p).unwrap());
        let tail = parse_word("t2*t1*t2^-1*t1^-1", &p).unwrap();
        let (c, _) = commutator_collect(&tail, &p).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].sign, -1);
        assert!(c[0].conjugator.length() <= 4);
        assert_eq!(as_t_word(&c), tail);
        assert!(commutator_collect(&GroupWord::identity(), &p).unwrap().0.is_empty());
        assert!(commutator_collect(&parse_word("t1", &p).unwrap(), &p).is_err());
    }

    #[test]
    fn ordered_form_examples() {
        let p = bs2();
        let names = p.names();
        let (f, _) = ordered_form(&parse_word("a^t * a^-2", &p).unwrap(), &p).unwrap();
        assert_eq!(format_element(&f.vector, &names), "(t - 2)*a");
        let (f, _) = ordered_form(&parse_word("[a, a^t]", &p).unwrap(), &p).unwrap();
        assert!(f.vector.is_zero());
        assert!(matches!(
            ordered_form(&parse_word("a*t", &p).unwrap(), &p),
            Err(Error::NotInNormalClosure(_))
        ));
    }

    #[test]
    fn normalize_examples() {
        let p = bs2();
        let c = Conjugate {
            gen: 0,
            sign: 1,
            conjugator: parse_word("t^-1", &p).unwrap(),
        };
        assert_eq!(conjugate_normalize(&c, &p, Route::Push).unwrap().0, vec![-1]);
        let p = two_t();
        let c = Conjugate {
            gen: 0,
            sign: 1,
            conjugator: parse_word("t2*t1", &p).unwrap(),
        };
        let (e, l) = conjugate_normalize(&c, &p, Route::Push).unwrap();
        assert_eq!(e, vec![1, 1]);
        assert_eq!((l.r1_commutators, l.r2_commutations), (2, 1));
    }

    #[test]
    fn rendering_is_idempotent() {
        let p = two_t();
        let w = parse_word("t2*t1*a*t1^-1*t2^-1*a^-3*c^t1*[t1,t2]", &p).unwrap();
        let (f, _) = ordered_form(&w, &p).unwrap();
        let r = render_ordered_form(&f.vector, &p).unwrap();
        let (g, l) = ordered_form(&r, &p).unwrap();
        assert_eq!(g.vector, f.vector);
        assert_eq!(l.r1_commutators + l.r2_commutations, 0);
    }

    #[test]
    fn bound_examples() {
        let b = cost_bounds(&BoundInputs {
            n: 3,
            k_const: Magnitude::from_u64(4),
            q: 1,
            p: 2,
            m: 1,
            k: 1,
            c_length: 3,
            t_degree: 1,
        });
        assert_eq!(b.abelian, Magnitude::from_u64(9));
        assert_eq!(b.product, Magnitude::from_u64(64));
        assert_eq!(b.scalar, Magnitude::from_u64(128));
        let b = cost_bounds(&BoundInputs {
            n: 5,
            k_const: Magnitude::from_u64(4),
            q: 1,
            p: 2,
            m: 1,
            k: 1,
            c_length: 1,
            t_degree: 1,
        });
        assert_eq!(b.organizer, Magnitude::from_u64(32768));
        assert_eq!(relative_commutation_price(5), 17);
    }
}
