//! Relative derivations: products of conjugated commutation relators that
//! equal a given word modulo the second derived subgroup of the free group.
//!
//! Equality modulo `F''` is decided exactly with Fox derivatives: an element
//! `w` of `F'` lies in `F''` iff every abelianized Fox derivative of `w`
//! vanishes in `ℤ[F/F']`.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::collection::Conjugate;
use crate::element::{ModuleElement, Term};
use crate::monomial::Monomial;
use crate::presentation::{Gen, GroupWord, Presentation};

/// One use of a relator `[x, y]^{±1}`, conjugated by `conjugator`, where
/// `x` and `y` are conjugates of module generators whose conjugators differ
/// by at most one letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelatorUse {
    pub x: Conjugate,
    pub y: Conjugate,
    pub inverse: bool,
    pub conjugator: GroupWord,
}

impl RelatorUse {
    pub fn word(&self) -> GroupWord {
        let c = GroupWord::commutator(&self.x.word(), &self.y.word());
        let c = if self.inverse { c.inverse() } else { c };
        c.conjugate(&self.conjugator)
    }

    /// Whether `[x, y]` is a conjugate of a defining commutation relator.
    pub fn is_basic(&self) -> bool {
        relative_conjugator(&self.x, &self.y).length() <= 1
    }
}

/// A product of relator uses.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Derivation {
    pub uses: Vec<RelatorUse>,
}

impl Derivation {
    pub fn cost(&self) -> u64 {
        self.uses.len() as u64
    }

    pub fn inverse(&self) -> Derivation {
        Derivation {
            uses: self
                .uses
                .iter()
                .rev()
                .map(|u| RelatorUse {
                    inverse: !u.inverse,
                    ..u.clone()
                })
                .collect(),
        }
    }

    pub fn conjugate(&self, by: &GroupWord) -> Derivation {
        Derivation {
            uses: self
                .uses
                .iter()
                .map(|u| RelatorUse {
                    conjugator: u.conjugator.mul(by),
                    ..u.clone()
                })
                .collect(),
        }
    }

    fn extend(&mut self, other: Derivation) {
        self.uses.extend(other.uses);
    }

    pub fn product(&self) -> GroupWord {
        self.uses
            .iter()
            .fold(GroupWord::identity(), |acc, u| acc.mul(&u.word()))
    }
}

/// `h·g⁻¹` for `x = a^g`, `y = b^h`.
fn relative_conjugator(x: &Conjugate, y: &Conjugate) -> GroupWord {
    y.conjugator.mul(&x.conjugator.inverse())
}

fn block(gen: usize, sign: i64, conjugator: GroupWord) -> Conjugate {
    Conjugate {
        gen,
        sign,
        conjugator,
    }
}

fn inv(c: &Conjugate) -> Conjugate {
    Conjugate {
        sign: -c.sign,
        ..c.clone()
    }
}

/// A derivation of `[x, y]`, using `4|u| − 3` relators where `u` is the
/// relative conjugator (one relator when `|u| ≤ 1`).
pub fn derive_commutator(x: &Conjugate, y: &Conjugate) -> Derivation {
    let u = relative_conjugator(x, y);
    if u.length() <= 1 {
        return Derivation {
            uses: vec![RelatorUse {
                x: x.clone(),
                y: y.clone(),
                inverse: false,
                conjugator: GroupWord::identity(),
            }],
        };
    }
    let last = *u.letters().last().expect("nonempty");
    let t = GroupWord::letter(last.gen, last.exp.signum());
    let (a, b) = (x.gen, y.gen);
    let one = GroupWord::identity();
    // 1 = [a⁻¹a^t, b^{-t}b^u] in any metabelian group; commute its letters
    // until only [a⁻¹, b^u] is left.
    let mut word = vec![
        block(a, -1, t.clone()),
        block(a, 1, one.clone()),
        block(b, -1, u.clone()),
        block(b, 1, t.clone()),
        block(a, -1, one.clone()),
        block(a, 1, t.clone()),
        block(b, -1, t.clone()),
        block(b, 1, u.clone()),
    ];
    let mut core = Derivation::default();
    let swap = |word: &mut Vec<Conjugate>, i: usize, core: &mut Derivation| {
        let s = word[i + 2..]
            .iter()
            .fold(GroupWord::identity(), |acc, c| acc.mul(&c.word()));
        let d = derive_commutator(&word[i], &word[i + 1]).conjugate(&s);
        core.extend(d.inverse());
        word.swap(i, i + 1);
    };
    let cancel = |word: &mut Vec<Conjugate>, i: usize| {
        debug_assert_eq!(word[i], inv(&word[i + 1]));
        word.drain(i..i + 2);
    };
    swap(&mut word, 0, &mut core);
    swap(&mut word, 1, &mut core);
    swap(&mut word, 2, &mut core);
    swap(&mut word, 3, &mut core);
    cancel(&mut word, 4);
    swap(&mut word, 2, &mut core);
    cancel(&mut word, 3);
    debug_assert_eq!(
        word,
        vec![
            block(a, 1, one.clone()),
            block(b, -1, u.clone()),
            block(a, -1, one),
            block(b, 1, u.clone()),
        ]
    );
    // core ≡ [a⁻¹, b^u]; adjust signs, then conjugate by g.
    let mut d = core;
    if x.sign > 0 {
        d = d.inverse().conjugate(&GroupWord::letter(Gen::Module(a), 1));
    }
    if y.sign < 0 {
        d = d.inverse().conjugate(&block(b, 1, u).word().inverse());
    }
    d.conjugate(&x.conjugator)
}

fn gen_index(g: Gen, m: usize) -> usize {
    match g {
        Gen::Module(i) => i,
        Gen::T(j) => m + j,
    }
}

/// Adds `sign·(∂w/∂x)_x` to `acc`, keyed by `(x, prefix exponents)`.
fn fox_accumulate(w: &GroupWord, p: &Presentation, sign: i64, acc: &mut HashMap<(usize, Vec<i64>), i64>) {
    let m = p.m();
    let mut prefix = vec![0i64; m + p.t_count()];
    for (g, e) in w.unit_letters() {
        let x = gen_index(g, m);
        if e < 0 {
            prefix[x] -= 1;
        }
        *acc.entry((x, prefix.clone())).or_default() += sign * e;
        if e > 0 {
            prefix[x] += 1;
        }
    }
}

/// Abelianized Fox derivatives `(∂w/∂x)_x` as a vector over `ℤ[ℤ^N]`, where
/// the generators are numbered module generators first.
pub fn fox_image(w: &GroupWord, p: &Presentation) -> ModuleElement {
    let n = p.m() + p.t_count();
    let mut acc = HashMap::new();
    fox_accumulate(w, p, 1, &mut acc);
    ModuleElement::from_terms(
        n,
        n,
        acc.into_iter().map(|((x, exps), c)| {
            Term::new(c, Monomial::from_exps(exps.into_iter().map(BigInt::from)).with_basis(x))
        }),
    )
}

/// Whether `target` equals the product of `d` modulo `F''`.
pub fn verify(target: &GroupWord, d: &Derivation, p: &Presentation) -> bool {
    let mut sums = vec![0i64; p.m() + p.t_count()];
    for l in target.letters() {
        sums[gen_index(l.gen, p.m())] += l.exp;
    }
    if sums.iter().any(|&s| s != 0) || !d.uses.iter().all(RelatorUse::is_basic) {
        return false;
    }
    // fox(target) − Σ fox(uses) must vanish.
    let mut acc = HashMap::new();
    fox_accumulate(target, p, 1, &mut acc);
    for u in &d.uses {
        fox_accumulate(&u.word(), p, -1, &mut acc);
    }
    acc.values().all(|&c| c == 0)
}

/// Derivation of `[a, b^u]` for module generators `a`, `b`.
pub fn commutation_derivation(a: usize, b: usize, u: &GroupWord) -> Derivation {
    derive_commutator(
        &block(a, 1, GroupWord::identity()),
        &block(b, 1, u.clone()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_word;

    fn pres() -> Presentation {
        Presentation::build(
            vec!["a".into(), "b".into()],
            vec!["s".into(), "t".into()],
            vec![],
            vec![(("s".into(), "t".into()), "b".into())],
            &[],
            None,
        )
        .unwrap()
    }

    #[test]
    fn fox_detects_metabelian_identities() {
        let p = pres();
        let w = parse_word("[[a, s], [b, t]]", &p).unwrap();
        assert!(fox_image(&w, &p).is_zero());
        let w = parse_word("[a, b]", &p).unwrap();
        assert!(!fox_image(&w, &p).is_zero());
    }

    #[test]
    fn derivations_verify_and_cost_four_per_letter() {
        let p = pres();
        for text in ["s", "s*t", "t^-1*s^2", "s^-1*t^-1*s*t", "t^3*s^-2"] {
            let u = parse_word(text, &p).unwrap();
            for (a, b) in [(0, 0), (0, 1), (1, 0)] {
                let d = commutation_derivation(a, b, &u);
                let target = GroupWord::commutator(
                    &GroupWord::letter(Gen::Module(a), 1),
                    &block(b, 1, u.clone()).word(),
                );
                assert!(verify(&target, &d, &p), "u = {text}");
                assert_eq!(d.cost(), 4 * u.length() - 3);
            }
        }
    }

    #[test]
    fn wrong_derivations_are_rejected() {
        let p = pres();
        let u = parse_word("s*t", &p).unwrap();
        let mut d = commutation_derivation(0, 0, &u);
        d.uses.pop();
        let target = GroupWord::commutator(
            &GroupWord::letter(Gen::Module(0), 1),
            &block(0, 1, u).word(),
        );
        assert!(!verify(&target, &d, &p));
    }
}
