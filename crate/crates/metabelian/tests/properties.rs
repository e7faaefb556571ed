//! Property tests for the algebraic invariants of every layer.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use metabelian::collection::{ordered_form, ordered_t_word, raw_exponents, render_ordered_form};
use metabelian::constants::geometry_constants;
use metabelian::groebner::{reduce_step, GroebnerBasis, GroebnerOptions};
use metabelian::order::{compare_elements, compare_integers, compare_monomials};
use metabelian::presentation::{
    exponent_sums, format_word, parse_word, Gen, GroupWord, Presentation, TamenessDatum,
};
use metabelian::presets::{build, PresetSpec};
use metabelian::relative::{commutation_derivation, verify};
use metabelian::word_problem::Solver;
use metabelian::{ModuleElement, Monomial, Term};

fn monomial(nvars: usize, lo: i64, hi: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(lo..=hi, nvars)
}

fn mono_of(exps: &[i64], basis: Option<usize>) -> Monomial {
    let m = Monomial::from_exps(exps.iter().map(|&e| BigInt::from(e)));
    match basis {
        Some(b) => m.with_basis(b),
        None => m,
    }
}

/// Elements of `ℤ[x₁,x₂]^2` (or the Laurent ring when `lo < 0`).
fn element(lo: i64, hi: i64, max_terms: usize) -> impl Strategy<Value = ModuleElement> {
    prop::collection::vec((-3i64..=3, monomial(2, lo, hi), 0usize..2), 0..=max_terms).prop_map(
        |ts| {
            ModuleElement::from_terms(
                2,
                2,
                ts.into_iter().map(|(c, e, b)| Term::new(c, mono_of(&e, Some(b)))),
            )
        },
    )
}

fn is_reduced(g: &ModuleElement) -> bool {
    g.terms().iter().all(|t| !t.coeff.is_zero())
        && g.terms().windows(2).all(|w| w[0].mono > w[1].mono)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn comparators_are_total_orders(a in -50i64..50, b in -50i64..50, c in -50i64..50,
                                    u in monomial(3, -3, 3), v in monomial(3, -3, 3), w in monomial(3, -3, 3),
                                    bu in 0usize..3, bv in 0usize..3, bw in 0usize..3) {
        let (a, b, c) = (BigInt::from(a), BigInt::from(b), BigInt::from(c));
        prop_assert_eq!(compare_integers(&a, &b), compare_integers(&b, &a).reverse());
        prop_assert_eq!(compare_integers(&a, &b) == Ordering::Equal, a == b);
        if compare_integers(&a, &b) != Ordering::Greater && compare_integers(&b, &c) != Ordering::Greater {
            prop_assert_ne!(compare_integers(&a, &c), Ordering::Greater);
        }
        let (u, v, w) = (mono_of(&u, Some(bu)), mono_of(&v, Some(bv)), mono_of(&w, Some(bw)));
        let uv = compare_monomials(&u, &v).unwrap();
        prop_assert_eq!(uv, compare_monomials(&v, &u).unwrap().reverse());
        prop_assert_eq!(uv == Ordering::Equal, u == v);
        if uv != Ordering::Greater && compare_monomials(&v, &w).unwrap() != Ordering::Greater {
            prop_assert_ne!(compare_monomials(&u, &w).unwrap(), Ordering::Greater);
        }
    }

    #[test]
    fn order_is_multiplicative(u in monomial(3, 0, 4), v in monomial(3, 0, 4), mu in monomial(3, 0, 4),
                               bu in 0usize..2, bv in 0usize..2) {
        let (u, v) = (mono_of(&u, Some(bu)), mono_of(&v, Some(bv)));
        let mu = mono_of(&mu, None);
        prop_assert_eq!(u.cmp(&v), mu.mul(&u).cmp(&mu.mul(&v)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1_000))]

    #[test]
    fn addition_is_an_abelian_group(g in element(-2, 2, 5), h in element(-2, 2, 5), k in element(-2, 2, 5)) {
        let gh = g.add(&h).unwrap();
        prop_assert_eq!(&gh, &h.add(&g).unwrap());
        prop_assert_eq!(gh.add(&k).unwrap(), g.add(&h.add(&k).unwrap()).unwrap());
        prop_assert_eq!(g.add(&ModuleElement::zero(2, 2)).unwrap(), g.clone());
        prop_assert!(g.add(&g.neg()).unwrap().is_zero());
        prop_assert!(is_reduced(&gh));
    }

    #[test]
    fn scale_translate_is_additive(g in element(-2, 2, 4), h in element(-2, 2, 4),
                                   c in -4i64..=4, u in monomial(2, -2, 2)) {
        let (c, u) = (BigInt::from(c), mono_of(&u, None));
        let lhs = g.add(&h).unwrap().scale_translate(&c, &u);
        let rhs = g.scale_translate(&c, &u).add(&h.scale_translate(&c, &u)).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        prop_assert!(is_reduced(&lhs));
    }

    #[test]
    fn smaller_elements_have_smaller_degree(g in element(0, 3, 4), h in element(0, 3, 4)) {
        if compare_elements(&g, &h) == Ordering::Less {
            prop_assert!(g.degree() <= h.degree());
        }
    }
}

/// Reduces `g` choosing the term and reducer from `picks` instead of the
/// largest reducible term.
fn randomized_normal_form(g: &ModuleElement, gens: &[ModuleElement], picks: &[usize]) -> ModuleElement {
    let mut h = g.clone();
    for step in 0.. {
        let mut options = Vec::new();
        for (ti, t) in h.terms().iter().enumerate() {
            for (fi, f) in gens.iter().enumerate() {
                let lt = f.leading_term().unwrap();
                if lt.mono.divides(&t.mono) && compare_integers(&lt.coeff, &t.coeff) != Ordering::Greater {
                    options.push((ti, fi));
                }
            }
        }
        if options.is_empty() {
            return h;
        }
        let (ti, fi) = options[picks[step % picks.len()] % options.len()];
        let t = h.terms()[ti].clone();
        let lt = gens[fi].leading_term().unwrap();
        let (q, _) = t.coeff.div_mod_floor(&lt.coeff.abs());
        let q = if lt.coeff.is_negative() { -q } else { q };
        h = h.add_scaled(&-q, &lt.mono.quotient(&t.mono), &gens[fi]);
        assert!(step < 100_000, "reduction does not terminate");
    }
    unreachable!()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn division_certificates_are_sound(gens in prop::collection::vec(element(0, 2, 3), 1..=3),
                                       g in element(0, 3, 5)) {
        let b = GroebnerBasis::compute(&gens, 2, 2, &GroebnerOptions::default()).unwrap();
        let c = b.divide(&g).unwrap();
        prop_assert_eq!(c.reconstruct(b.generators()).unwrap(), g.clone());
        for (a, f) in c.coefficients.iter().zip(b.generators()) {
            if !a.is_zero() {
                prop_assert!(f.mul_ring(a).unwrap().degree() <= g.degree());
            }
        }
        prop_assert!(c.bound.dominates(c.size.magnitude()));
        prop_assert_eq!(c.residue.is_zero(), b.contains(&g).unwrap());
    }

    #[test]
    fn reduction_steps_descend_and_normal_forms_are_confluent(
        gens in prop::collection::vec(element(0, 2, 3), 1..=3),
        g in element(0, 3, 5),
        picks in prop::collection::vec(0usize..64, 1..16),
    ) {
        let b = GroebnerBasis::compute(&gens, 2, 2, &GroebnerOptions::default()).unwrap();
        if let Some(step) = reduce_step(&g, b.generators()) {
            prop_assert_eq!(compare_elements(&step.result, &g), Ordering::Less);
        }
        let nf = b.normal_form(&g).unwrap();
        prop_assert_eq!(randomized_normal_form(&g, b.generators(), &picks), nf);
    }

    #[test]
    fn basis_contains_its_input(gens in prop::collection::vec(element(0, 2, 3), 1..=3),
                                i in 0usize..3, u in monomial(2, 0, 2)) {
        let b = GroebnerBasis::compute(&gens, 2, 2, &GroebnerOptions::default()).unwrap();
        let g = gens[i % gens.len()].scale_translate(&BigInt::from(-2), &mono_of(&u, None));
        prop_assert!(b.normal_form(&g).unwrap().is_zero());
    }
}

fn presets() -> Vec<Presentation> {
    ["bs:2", "gamma", "lamplighter:3"]
        .iter()
        .map(|s| build(&s.parse::<PresetSpec>().unwrap()).unwrap())
        .collect()
}

fn all_gens(p: &Presentation) -> Vec<Gen> {
    (0..p.m()).map(Gen::Module).chain((0..p.t_count()).map(Gen::T)).collect()
}

fn word_from(p: &Presentation, picks: &[(usize, bool)]) -> GroupWord {
    let gens = all_gens(p);
    picks.iter().fold(GroupWord::identity(), |w, &(i, pos)| {
        w.mul(&GroupWord::letter(gens[i % gens.len()], if pos { 1 } else { -1 }))
    })
}

/// `v·c⁻¹` where `c` collects the `T`-letters of `v`: a word of `⟨⟨𝒜⟩⟩`.
fn closure_word(p: &Presentation, picks: &[(usize, bool)]) -> GroupWord {
    let v = word_from(p, picks);
    v.mul(&ordered_t_word(&raw_exponents(&v, p.t_count())).inverse())
}

fn picks() -> impl Strategy<Value = Vec<(usize, bool)>> {
    prop::collection::vec((0usize..16, any::<bool>()), 0..8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn ordered_form_is_a_homomorphism(which in 0usize..3, x in picks(), y in picks(), t in 0usize..2) {
        let p = &presets()[which];
        let (w1, w2) = (closure_word(p, &x), closure_word(p, &y));
        let f1 = ordered_form(&w1, p).unwrap().0.vector;
        let f2 = ordered_form(&w2, p).unwrap().0.vector;
        let f12 = ordered_form(&w1.mul(&w2), p).unwrap().0.vector;
        prop_assert_eq!(f12, f1.add(&f2).unwrap());
        let ti = t % p.t_count();
        let conj = w1.conjugate(&GroupWord::letter(Gen::T(ti), 1));
        let mut exps = vec![0i64; p.t_count()];
        exps[ti] = 1;
        let shifted = p.ring().reduce(&f1.scale_translate(&BigInt::from(1), &mono_of(&exps, None)));
        prop_assert_eq!(ordered_form(&conj, p).unwrap().0.vector, shifted);
    }

    #[test]
    fn rendering_then_collecting_is_free(which in 0usize..3, x in picks()) {
        let p = &presets()[which];
        let f = ordered_form(&closure_word(p, &x), p).unwrap().0.vector;
        let (g, ledger) = ordered_form(&render_ordered_form(&f, p).unwrap(), p).unwrap();
        prop_assert_eq!(g.vector, f);
        prop_assert_eq!(ledger.r1_commutators + ledger.r2_commutations, 0);
    }

    #[test]
    fn words_round_trip_through_text(which in 0usize..3, x in picks()) {
        let p = &presets()[which];
        let w = word_from(p, &x);
        prop_assert_eq!(parse_word(&format_word(&w, p), p).unwrap(), w);
    }

    #[test]
    fn exponent_sums_are_additive(which in 0usize..3, x in picks(), y in picks()) {
        let p = &presets()[which];
        let (a, b) = (word_from(p, &x), word_from(p, &y));
        let mut sum: Vec<i64> = exponent_sums(&a, p).iter().zip(exponent_sums(&b, p)).map(|(u, v)| u + v).collect();
        for (i, s) in sum.iter_mut().enumerate() {
            if let Some(d) = p.torsion_order(i) {
                *s = s.rem_euclid(d as i64);
            }
        }
        prop_assert_eq!(exponent_sums(&a.mul(&b), p), sum);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn relative_derivations_verify(u in prop::collection::vec((0usize..2, any::<bool>()), 0..7), a in 0usize..2, b in 0usize..2) {
        let p = build(&PresetSpec::Gamma).unwrap();
        let u = u.into_iter().fold(GroupWord::identity(), |w, (i, pos)| {
            w.mul(&GroupWord::letter(Gen::T(i), if pos { 1 } else { -1 }))
        });
        let d = commutation_derivation(a, b, &u);
        let target = GroupWord::commutator(
            &GroupWord::letter(Gen::Module(a), 1),
            &GroupWord::letter(Gen::Module(b), 1).conjugate(&u),
        );
        prop_assert!(verify(&target, &d, &p));
        prop_assert!(d.cost() <= (4 * u.length()).saturating_sub(3).max(1));
    }

    #[test]
    fn relative_cost_never_exceeds_absolute(which in 0usize..3, x in picks(), r in 0usize..3, c in picks()) {
        let p = &presets()[which];
        let s = Solver::new(p, 1, &GroebnerOptions::default()).unwrap();
        let conj = word_from(p, &c);
        let w = p.relators[r % p.relators.len()].conjugate(&conj).mul(&closure_word(p, &x));
        let w = w.mul(&render_ordered_form(&ordered_form(&closure_word(p, &x), p).unwrap().0.vector, p).unwrap().inverse());
        let (id, abs) = s.is_identity(&w).unwrap();
        prop_assert!(id);
        let rel = s.relative_area_certificate(&w).unwrap();
        prop_assert!(abs.witnessed(&s.k_const).dominates(rel.witnessed.magnitude()));
    }

    #[test]
    fn dilating_supports_doubles_constants(pos in prop::collection::vec(1i64..5, 1..3),
                                           neg in prop::collection::vec(1i64..5, 1..3)) {
        let lam = |scale: i64| TamenessDatum {
            centralizer: pos.iter().map(|&e| ModuleElement::ring_monomial(2, mono_of(&[scale * e], None))).collect(),
            co_centralizer: neg.iter().map(|&e| ModuleElement::ring_monomial(3, mono_of(&[-scale * e], None))).collect(),
        };
        let g1 = geometry_constants(&lam(1), 1).unwrap();
        let g2 = geometry_constants(&lam(2), 1).unwrap();
        prop_assert_eq!(g2.c, 2.0 * g1.c);
        prop_assert_eq!(g2.d, 2.0 * g1.d);
        prop_assert!(g1.epsilon(g1.r0 + 0.01) > 0.0);
    }
}

#[test]
fn presets_round_trip_through_json() {
    for spec in ["bs:3", "lamplighter:2", "zwrz", "gamma", "free_abelian:3", "wf:1:1:1+t", "wf:2:2:1+t;1-t+t^2:3"] {
        let p = build(&spec.parse::<PresetSpec>().unwrap()).unwrap();
        assert_eq!(Presentation::parse(&p.to_json()).unwrap(), p, "{spec}");
    }
}
