//! Deciding `w =_G 1` and bounding the area of identity words.
//!
//! A word with trivial image in `T` is collected into its ordered form, a
//! vector of `(ℤT)^m`; it is the identity exactly when that vector lies in
//! the submodule spanned by the ordered forms of the relators. The division
//! certificate against a Gröbner basis of that submodule, together with the
//! collection ledger, witnesses an upper bound on the area.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::bound::Magnitude;
use crate::collection::{
    ordered_form_with, ordered_t_word, raw_exponents, relative_pipeline_bound,
    render_ordered_form, CostLedger, OrderedForm, Route,
};
use crate::constants::k_constant;
use crate::element::{ModuleElement, Term};
use crate::error::{Error, Result};
use crate::groebner::{DivisionCertificate, GroebnerOptions, SubmoduleBasis};
use crate::monomial::Monomial;
use crate::presentation::{exponent_sums, relator_module, Gen, GroupWord, Presentation};
use crate::presets::{slope, witness};
use crate::text::format_element;

/// A presentation with the Gröbner basis of its relator submodule.
#[derive(Clone, Debug)]
pub struct Solver {
    pub presentation: Presentation,
    /// Ordered forms of the relators.
    pub relators: Vec<ModuleElement>,
    pub basis: SubmoduleBasis,
    /// `K = max(K₁, K₂^{2k})`.
    pub k_const: Magnitude,
    /// `C = 4m²P²QK`.
    pub c_const: Magnitude,
}

/// Everything known about one word: its ordered form, the relations spent
/// collecting it, the membership certificate and the closed-form bounds.
#[derive(Clone, Debug)]
pub struct AreaCertificate {
    pub identity: bool,
    pub word_length: u64,
    /// `None` when the word has nontrivial image in `T`.
    pub ordered_form: Option<OrderedForm>,
    pub ledger: CostLedger,
    pub membership: Option<DivisionCertificate>,
    pub assembly_bound: Magnitude,
    pub relative_bound: Magnitude,
}

impl AreaCertificate {
    /// `Σ |αᵢ|`, zero without a membership test.
    pub fn size(&self) -> BigInt {
        self.membership
            .as_ref()
            .map(|m| m.size.abs())
            .unwrap_or_default()
    }

    /// Ledger priced at `K^ℓ` per commutation plus the certificate size.
    pub fn witnessed(&self, k: &Magnitude) -> Magnitude {
        self.ledger
            .absolute_priced_total(k)
            .add(&Magnitude::from_bigint(&self.size()))
    }

    pub fn to_json(&self, s: &Solver) -> Value {
        let names = s.presentation.names();
        json!({
            "identity": self.identity,
            "word_length": self.word_length,
            "ordered_form": self.ordered_form.as_ref().map(|f| format_element(&f.vector, &names)),
            "ledger": self.ledger.to_json(),
            "membership": self.membership.as_ref().map(|m| {
                let en = s.basis.ring.embedded_names(&names);
                m.to_json(&en)
            }),
            "witnessed": self.witnessed(&s.k_const).to_string(),
            "K": s.k_const.to_string(),
            "C": s.c_const.to_string(),
            "assembly_bound": self.assembly_bound.to_string(),
            "relative_bound": self.relative_bound.to_string(),
            "generating_set": s.basis.to_json(&names),
        })
    }
}

/// Witnessed relative cost of an identity word.
#[derive(Clone, Debug)]
pub struct RelativeCertificate {
    pub ledger: CostLedger,
    pub membership_size: BigInt,
    /// `relative_total + Σ|αᵢ|`.
    pub witnessed: BigInt,
    pub bound: Magnitude,
}

impl RelativeCertificate {
    pub fn to_json(&self) -> Value {
        json!({
            "ledger": self.ledger.to_json(),
            "membership_size": self.membership_size.to_string(),
            "witnessed": self.witnessed.to_string(),
            "relative_bound": self.bound.to_string(),
        })
    }
}

/// `C^{n^{2k}} + (n+n²)²C^{2n} + (n+n²)(2C)ⁿ + n²`.
pub fn assembly_bound(n: u64, k: usize, c: &Magnitude) -> Magnitude {
    let nn = Magnitude::from_u64(n + n * n);
    let top = BigInt::from(n).pow(2 * k as u32);
    c.pow(top.magnitude())
        .add(&nn.pow_u64(2).mul(&c.pow_u64(2 * n)))
        .add(&nn.mul(&c.mul(&Magnitude::from_u64(2)).pow_u64(n)))
        .add(&Magnitude::from_u64(n * n))
}

impl Solver {
    /// Computes the relator submodule and its Gröbner basis. `k1` is the
    /// user's `K₁`.
    pub fn new(p: &Presentation, k1: u64, options: &GroebnerOptions) -> Result<Solver> {
        let relators = relator_module(p)?;
        let basis = SubmoduleBasis::new(&relators, p.ring(), p.m(), options)?;
        let k_const = k_constant(p.tameness.as_ref(), p.k(), k1);
        let gens = basis.basis.generators();
        let big_p = gens
            .iter()
            .map(ModuleElement::length)
            .max()
            .unwrap_or_else(|| BigInt::from(1));
        let q = gens
            .iter()
            .flat_map(|g| g.terms().iter().map(|t| t.mono.degree()))
            .max()
            .unwrap_or_default()
            .max(BigInt::from(1));
        let m = p.m() as u64;
        let c_const = Magnitude::from_u64(4 * m * m)
            .mul(&Magnitude::from_bigint(&(&big_p * &big_p)))
            .mul(&Magnitude::from_bigint(&q))
            .mul(&k_const);
        Ok(Solver {
            presentation: p.clone(),
            relators,
            basis,
            k_const,
            c_const,
        })
    }

    fn certificate(&self, w: &GroupWord, route: Route) -> Result<AreaCertificate> {
        let p = &self.presentation;
        let n = w.length();
        let assembly_bound = assembly_bound(n, p.k(), &self.c_const);
        let relative_bound = relative_pipeline_bound(n);
        if exponent_sums(w, p).iter().any(|&e| e != 0) {
            return Ok(AreaCertificate {
                identity: false,
                word_length: n,
                ordered_form: None,
                ledger: CostLedger::default(),
                membership: None,
                assembly_bound,
                relative_bound,
            });
        }
        let (form, ledger) = ordered_form_with(w, p, route)?;
        let membership = self.basis.divide(&form.vector)?;
        Ok(AreaCertificate {
            identity: membership.is_member(),
            word_length: n,
            ordered_form: Some(form),
            ledger,
            membership: Some(membership),
            assembly_bound,
            relative_bound,
        })
    }

    /// Decides `w =_G 1`; the certificate is populated either way.
    pub fn is_identity(&self, w: &GroupWord) -> Result<(bool, AreaCertificate)> {
        let c = self.certificate(w, Route::Push)?;
        Ok((c.identity, c))
    }

    /// Area certificate of an identity word.
    pub fn area_certificate(&self, w: &GroupWord) -> Result<AreaCertificate> {
        let c = self.certificate(w, Route::Push)?;
        if !c.identity {
            return Err(Error::NotIdentity);
        }
        Ok(c)
    }

    /// The same pipeline with commutations priced at the relative rates and
    /// conjugators normalized along the cheaper route.
    pub fn relative_area_certificate(&self, w: &GroupWord) -> Result<RelativeCertificate> {
        let c = self.certificate(w, Route::Cheapest)?;
        if !c.identity {
            return Err(Error::NotIdentity);
        }
        let size = c.size();
        Ok(RelativeCertificate {
            witnessed: BigInt::from(c.ledger.relative_total()) + &size,
            membership_size: size,
            bound: c.relative_bound,
            ledger: c.ledger,
        })
    }

    /// `‖f‖ = Σ |μ(u)|·(2|u| + 1)`, the length of the rendered ordered word.
    pub fn module_norm(&self, f: &ModuleElement) -> BigInt {
        let f = self.basis.ring.reduce(f);
        f.terms()
            .iter()
            .map(|t| {
                let len: BigInt = t.mono.exps.iter().map(|e| e.abs()).sum();
                t.coeff.abs() * (2 * len + 1)
            })
            .sum()
    }
}

/// How [`module_dehn_upper`] chooses elements of the relator submodule.
#[derive(Clone, Copy, Debug)]
pub enum Sampler {
    /// Every `f` with `‖f‖ ≤ n`.
    Exhaustive,
    /// Random combinations of relator vectors.
    Random { samples: usize, seed: u64 },
}

/// Largest certificate among submodule elements of norm at most `norm`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleDehnRow {
    pub norm: u64,
    pub count: usize,
    pub max_size: BigInt,
}

/// Monomials with `2|u| + 1 ≤ n`, torsion exponents in `[0, d)`.
fn small_monomials(p: &Presentation, n: u64) -> Vec<Monomial> {
    let radius = (n.saturating_sub(1) / 2) as i64;
    let mut out = vec![vec![0i64; 0]];
    for i in 0..p.t_count() {
        let range: Vec<i64> = match p.torsion_order(i) {
            Some(d) => (0..d as i64).collect(),
            None => (-radius..=radius).collect(),
        };
        out = out
            .into_iter()
            .flat_map(|v| {
                range.iter().map(move |&e| {
                    let mut v = v.clone();
                    v.push(e);
                    v
                })
            })
            .filter(|v| v.iter().map(|e| e.abs()).sum::<i64>() <= radius)
            .collect();
    }
    out.into_iter()
        .map(|v| Monomial::from_exps(v.into_iter().map(BigInt::from)))
        .collect()
}

fn enumerate_elements(
    slots: &[(Monomial, u64)],
    budget: u64,
    nvars: usize,
    rank: usize,
) -> Vec<ModuleElement> {
    fn go(
        slots: &[(Monomial, u64)],
        i: usize,
        budget: u64,
        acc: &mut Vec<Term>,
        out: &mut Vec<ModuleElement>,
        nvars: usize,
        rank: usize,
    ) {
        if i == slots.len() {
            out.push(ModuleElement::from_terms(nvars, rank, acc.clone()));
            return;
        }
        go(slots, i + 1, budget, acc, out, nvars, rank);
        let (mono, cost) = &slots[i];
        let mut c = 1u64;
        while c * cost <= budget {
            for sign in [1i64, -1] {
                acc.push(Term::new(sign * c as i64, mono.clone()));
                go(slots, i + 1, budget - c * cost, acc, out, nvars, rank);
                acc.pop();
            }
            c += 1;
        }
    }
    let mut out = Vec::new();
    go(slots, 0, budget, &mut Vec::new(), &mut out, nvars, rank);
    out
}

fn random_member(s: &Solver, rng: &mut ChaCha8Rng) -> Option<ModuleElement> {
    let gens: Vec<&ModuleElement> = s.relators.iter().filter(|r| !r.is_zero()).collect();
    if gens.is_empty() {
        return None;
    }
    let p = &s.presentation;
    let mut f = ModuleElement::zero(p.t_count(), p.m());
    for _ in 0..rng.gen_range(1..=3) {
        let g = gens.choose(rng).expect("nonempty");
        let u = Monomial::from_exps((0..p.t_count()).map(|_| BigInt::from(rng.gen_range(-2i64..=2))));
        let c = BigInt::from(*[-2i64, -1, 1, 2].choose(rng).expect("nonempty"));
        f = f.add_scaled(&c, &u, g);
    }
    Some(s.basis.ring.reduce(&f))
}

/// Certificate sizes of submodule elements, as upper estimates of the module
/// area `area_A(f)` with respect to the Gröbner basis.
pub fn module_dehn_upper(s: &Solver, n: u64, sampler: Sampler) -> Result<Vec<ModuleDehnRow>> {
    if n == 0 {
        return Err(Error::Invalid("n must be at least 1".into()));
    }
    let p = &s.presentation;
    let candidates: Vec<ModuleElement> = match sampler {
        Sampler::Exhaustive => {
            let monos = small_monomials(p, n);
            let slots: Vec<(Monomial, u64)> = (0..p.m())
                .flat_map(|b| {
                    monos.iter().map(move |u| {
                        let cost = 2 * u.degree().to_u64().unwrap_or(u64::MAX) + 1;
                        (u.clone().with_basis(b), cost)
                    })
                })
                .collect();
            enumerate_elements(&slots, n, p.t_count(), p.m())
                .into_iter()
                .filter(|f| !f.is_zero())
                .filter_map(|f| match s.basis.contains(&f) {
                    Ok(true) => Some(Ok(f)),
                    Ok(false) => None,
                    Err(e) => Some(Err(e)),
                })
                .collect::<Result<_>>()?
        }
        Sampler::Random { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..samples)
                .filter_map(|_| random_member(s, &mut rng))
                .filter(|f| !f.is_zero())
                .collect()
        }
    };
    let mut sized = Vec::with_capacity(candidates.len());
    for f in &candidates {
        let norm = s.module_norm(f);
        if norm <= BigInt::from(n) {
            let size = s.basis.divide(f)?.size.abs();
            sized.push((norm.to_u64().expect("at most n"), size));
        }
    }
    Ok((1..=n)
        .map(|k| {
            let within: Vec<&BigInt> = sized.iter().filter(|(m, _)| *m <= k).map(|(_, z)| z).collect();
            ModuleDehnRow {
                norm: k,
                count: within.len(),
                max_size: within.into_iter().max().cloned().unwrap_or_default(),
            }
        })
        .collect())
}

/// Search limits for [`brute_force_min_certificate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    /// Largest `Σ|eⱼ|` of a multiplier monomial.
    pub max_degree: u32,
    /// Largest `|c|` of a multiplier coefficient.
    pub max_coeff: u32,
    /// Largest `Σ|αᵢ|`.
    pub max_size: u32,
    /// Allow negative exponents in multipliers.
    pub laurent: bool,
}

fn multiplier_monomials(nvars: usize, d: u32, laurent: bool) -> Vec<Monomial> {
    let lo = if laurent { -(d as i64) } else { 0 };
    let mut out = vec![Vec::<i64>::new()];
    for _ in 0..nvars {
        out = out
            .into_iter()
            .flat_map(|v| {
                (lo..=d as i64).map(move |e| {
                    let mut v = v.clone();
                    v.push(e);
                    v
                })
            })
            .filter(|v| v.iter().map(|e| e.abs()).sum::<i64>() <= d as i64)
            .collect();
    }
    out.into_iter()
        .map(|v| Monomial::from_exps(v.into_iter().map(BigInt::from)))
        .collect()
}

struct Search<'a> {
    items: &'a [Vec<(usize, i64)>],
    /// Union of the supports of `items[i..]`, as bitsets.
    coverage: Vec<Vec<u64>>,
    /// `max ‖items[j]‖₁` over `j ≥ i`.
    reach: Vec<i64>,
    max_coeff: i64,
}

impl Search<'_> {
    fn covered(&self, i: usize, pos: usize) -> bool {
        self.coverage[i][pos / 64] >> (pos % 64) & 1 == 1
    }

    fn dfs(&self, i: usize, residual: &mut [i64], left: i64) -> bool {
        let norm: i64 = residual.iter().map(|c| c.abs()).sum();
        if norm == 0 {
            return true;
        }
        if i == self.items.len() || left == 0 || norm > left * self.reach[i] {
            return false;
        }
        if residual
            .iter()
            .enumerate()
            .any(|(pos, &c)| c != 0 && !self.covered(i, pos))
        {
            return false;
        }
        if self.dfs(i + 1, residual, left) {
            return true;
        }
        for mag in 1..=self.max_coeff.min(left) {
            for c in [mag, -mag] {
                for &(pos, v) in &self.items[i] {
                    residual[pos] -= c * v;
                }
                let found = self.dfs(i + 1, residual, left - mag);
                for &(pos, v) in &self.items[i] {
                    residual[pos] += c * v;
                }
                if found {
                    return true;
                }
            }
        }
        false
    }
}

/// The least `Σ|αᵢ|` with `g = Σ αᵢ·gensᵢ` among multipliers within the
/// budget, or `None` when the search is exhausted (inconclusive, not a proof
/// of non-membership).
pub fn brute_force_min_certificate(
    g: &ModuleElement,
    gens: &[ModuleElement],
    budget: OracleBudget,
) -> Option<u64> {
    if g.is_zero() {
        return Some(0);
    }
    let monos = multiplier_monomials(g.nvars(), budget.max_degree, budget.laurent);
    let mut index: HashMap<Monomial, usize> = HashMap::new();
    let slot = |m: &Monomial, index: &mut HashMap<Monomial, usize>| {
        let n = index.len();
        *index.entry(m.clone()).or_insert(n)
    };
    let mut items = Vec::new();
    for f in gens.iter().filter(|f| !f.is_zero()) {
        for u in &monos {
            let prod = f.scale_translate(&BigInt::from(1), u);
            let mut v = Vec::with_capacity(prod.terms().len());
            for t in prod.terms() {
                v.push((slot(&t.mono, &mut index), t.coeff.to_i64()?));
            }
            items.push(v);
        }
    }
    let mut target = Vec::new();
    for t in g.terms() {
        target.push((slot(&t.mono, &mut index), t.coeff.to_i64()?));
    }
    let width = index.len();
    let words = width.div_ceil(64);
    let mut coverage = vec![vec![0u64; words]; items.len() + 1];
    let mut reach = vec![0i64; items.len() + 1];
    for i in (0..items.len()).rev() {
        coverage[i] = coverage[i + 1].clone();
        for &(pos, _) in &items[i] {
            coverage[i][pos / 64] |= 1 << (pos % 64);
        }
        let norm = items[i].iter().map(|(_, c)| c.abs()).sum::<i64>();
        reach[i] = reach[i + 1].max(norm);
    }
    let search = Search {
        items: &items,
        coverage,
        reach,
        max_coeff: budget.max_coeff as i64,
    };
    let mut residual = vec![0i64; width];
    for (pos, c) in target {
        residual[pos] += c;
    }
    (1..=budget.max_size as i64)
        .find(|&size| search.dfs(0, &mut residual.clone(), size))
        .map(|s| s as u64)
}

/// One row of [`dehn_profile`].
#[derive(Clone, Debug)]
pub struct ProfileRow {
    pub n: u64,
    /// Largest `K`-priced ledger plus certificate size.
    pub max_witnessed: Magnitude,
    pub max_cert_size: BigInt,
    /// Assembly bound at the longest word of the row.
    pub bound: Magnitude,
    pub words: usize,
}

fn random_word(p: &Presentation, len: u64, rng: &mut ChaCha8Rng) -> GroupWord {
    let gens: Vec<Gen> = (0..p.m())
        .map(Gen::Module)
        .chain((0..p.t_count()).map(Gen::T))
        .collect();
    let mut w = GroupWord::identity();
    while w.length() < len {
        let g = *gens.choose(rng).expect("generators");
        let e = if rng.gen_bool(0.5) { 1 } else { -1 };
        w = w.mul(&GroupWord::letter(g, e));
    }
    w
}

/// A random identity word of length at most `n`.
fn random_identity(p: &Presentation, n: u64, rng: &mut ChaCha8Rng, relators: bool) -> Result<Option<GroupWord>> {
    if relators {
        let mut w = GroupWord::identity();
        for _ in 0..8 {
            let r = p.relators.choose(rng).expect("relators").pow(if rng.gen_bool(0.5) { 1 } else { -1 });
            let g = random_word_over_t(p, rng.gen_range(0..=2), rng);
            let next = w.mul(&r.conjugate(&g));
            if next.length() <= n {
                w = next;
            }
        }
        return Ok((!w.is_identity()).then_some(w));
    }
    for len in (1..=n / 2).rev() {
        for _ in 0..4 {
            let v = random_word(p, len, rng);
            let c = ordered_t_word(&raw_exponents(&v, p.t_count()));
            let w = v.mul(&c.inverse());
            let (f, _) = ordered_form_with(&w, p, Route::Push)?;
            let w = w.mul(&render_ordered_form(&f.vector, p)?.inverse());
            if w.length() <= n && !w.is_identity() {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

fn random_word_over_t(p: &Presentation, len: u64, rng: &mut ChaCha8Rng) -> GroupWord {
    let mut w = GroupWord::identity();
    if p.t_count() == 0 {
        return w;
    }
    for _ in 0..len {
        let i = rng.gen_range(0..p.t_count());
        w = w.mul(&GroupWord::letter(Gen::T(i), if rng.gen_bool(0.5) { 1 } else { -1 }));
    }
    w
}

/// Samples identity words for each `n ≤ n_max` (random words of length at
/// most `n` plus the preset witness of index `n`) and tabulates the largest
/// witnessed cost and certificate size.
pub fn dehn_profile(s: &Solver, n_max: u64, samples: usize, seed: u64) -> Result<Vec<ProfileRow>> {
    if n_max < 2 {
        return Err(Error::Invalid("n_max must be at least 2".into()));
    }
    let p = &s.presentation;
    (1..=n_max)
        .map(|n| {
            let mut words: Vec<GroupWord> = (0..samples)
                .into_par_iter()
                .map(|i| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(n * samples as u64 + i as u64));
                    random_identity(p, n, &mut rng, i % 2 == 0 || p.relators.is_empty())
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .flatten()
                .collect();
            if let Some(w) = witness(p, n as u32)? {
                words.push(w);
            }
            let certs = words
                .par_iter()
                .map(|w| s.is_identity(w).map(|(_, c)| c))
                .collect::<Result<Vec<_>>>()?;
            let mut row = ProfileRow {
                n,
                max_witnessed: Magnitude::zero(),
                max_cert_size: BigInt::zero(),
                bound: Magnitude::zero(),
                words: 0,
            };
            let mut longest = 0;
            for c in certs.iter().filter(|c| c.identity) {
                let wit = c.witnessed(&s.k_const);
                if wit > row.max_witnessed {
                    row.max_witnessed = wit;
                }
                row.max_cert_size = row.max_cert_size.clone().max(c.size());
                longest = longest.max(c.word_length);
                row.words += 1;
            }
            row.bound = assembly_bound(longest, p.k(), &s.c_const);
            Ok(row)
        })
        .collect()
}

/// Renders profile rows as CSV text.
pub fn profile_csv(rows: &[ProfileRow]) -> String {
    let mut out = String::from("n,max_witnessed,max_cert_size,bound\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{}\n", r.n, r.max_witnessed, r.max_cert_size, r.bound));
    }
    out
}

/// Coefficient of determination of the least-squares polynomial of degree
/// `d` through the points.
fn r_squared(xs: &[f64], ys: &[f64], d: usize) -> f64 {
    let n = d + 1;
    // Normal equations on x scaled into [0, 1] for conditioning.
    let scale = xs.iter().fold(1.0_f64, |a, &x| a.max(x.abs()));
    let mut a = vec![vec![0.0; n + 1]; n];
    for (&x, &y) in xs.iter().zip(ys) {
        let x = x / scale;
        for (i, row) in a.iter_mut().enumerate() {
            for j in 0..n {
                row[j] += x.powi((i + j) as i32);
            }
            row[n] += y * x.powi(i as i32);
        }
    }
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .expect("rows");
        a.swap(col, pivot);
        if a[col][col].abs() < 1e-12 {
            continue;
        }
        for r in 0..n {
            if r != col {
                let f = a[r][col] / a[col][col];
                for c in col..=n {
                    a[r][c] -= f * a[col][c];
                }
            }
        }
    }
    let coef: Vec<f64> = (0..n)
        .map(|i| if a[i][i].abs() < 1e-12 { 0.0 } else { a[i][n] / a[i][i] })
        .collect();
    let mean = ys.iter().sum::<f64>() / ys.len() as f64;
    let (mut ss_res, mut ss_tot) = (0.0, 0.0);
    for (&x, &y) in xs.iter().zip(ys) {
        let x = x / scale;
        let fit: f64 = coef.iter().enumerate().map(|(i, c)| c * x.powi(i as i32)).sum();
        ss_res += (y - fit).powi(2);
        ss_tot += (y - mean).powi(2);
    }
    if ss_tot == 0.0 {
        1.0
    } else {
        1.0 - ss_res / ss_tot
    }
}

/// The least degree `d ≤ max_degree` whose least-squares polynomial fit has
/// `R² ≥ 0.99`.
pub fn polynomial_degree_fit(xs: &[f64], ys: &[f64], max_degree: usize) -> Option<usize> {
    (0..=max_degree).find(|&d| r_squared(xs, ys, d) >= 0.99)
}

/// Least-squares slope of `ln y` against `x`, over the points with `y > 0`.
pub fn log_linear_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let (x, y): (Vec<f64>, Vec<f64>) = xs
        .iter()
        .zip(ys)
        .filter(|(_, &y)| y > 0.0)
        .map(|(&x, &y)| (x, y.ln()))
        .unzip();
    slope(&x, &y)
}
