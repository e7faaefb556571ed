//! Presentations of metabelian groups as extensions of a module by an
//! abelian group, and the word language used to write relators.
//!
//! Word syntax: `word := factor ('*' factor)*`,
//! `factor := atom ('^' exponent)?`,
//! `exponent := '-'? integer | '-'? name | '(' word ')'`,
//! `atom := name | '1' | '[' word ',' word ']' | '(' word ')'`.
//! Conjugation is `x^y = y⁻¹xy`, commutators are `[x,y] = x⁻¹y⁻¹xy`, and
//! `x^-y` stands for `(x^y)⁻¹`.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::element::RingElement;
use crate::error::{Error, Result};
use crate::groebner::LaurentRing;
use crate::text::{format_ring, parse_ring, Names};

/// A generator: a module generator `a_i` or a generator `t_i` of `T`
/// (free generators first, then torsion generators).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Gen {
    Module(usize),
    T(usize),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Letter {
    pub gen: Gen,
    pub exp: i64,
}

/// A freely condensed word: adjacent letters have distinct generators and
/// no exponent is zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct GroupWord {
    letters: Vec<Letter>,
}

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord::default()
    }

    pub fn letter(gen: Gen, exp: i64) -> Self {
        GroupWord::from_letters([Letter { gen, exp }])
    }

    /// Condenses arbitrary letters.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if l.exp == 0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.gen == l.gen => {
                    last.exp += l.exp;
                    if last.exp == 0 {
                        out.pop();
                    }
                }
                _ => out.push(l),
            }
        }
        GroupWord { letters: out }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// `|w| = Σ |exponents|`.
    pub fn length(&self) -> u64 {
        self.letters.iter().map(|l| l.exp.unsigned_abs()).sum()
    }

    pub fn mul(&self, other: &GroupWord) -> GroupWord {
        GroupWord::from_letters(self.letters.iter().chain(&other.letters).copied())
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter {
                    gen: l.gen,
                    exp: -l.exp,
                })
                .collect(),
        }
    }

    pub fn pow(&self, n: i64) -> GroupWord {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = GroupWord::identity();
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// `self^by = by⁻¹·self·by`.
    pub fn conjugate(&self, by: &GroupWord) -> GroupWord {
        by.inverse().mul(self).mul(by)
    }

    /// `[x, y] = x⁻¹y⁻¹xy`.
    pub fn commutator(x: &GroupWord, y: &GroupWord) -> GroupWord {
        x.inverse().mul(&y.inverse()).mul(x).mul(y)
    }

    /// The letters as a sequence of unit letters `x^{±1}`.
    pub fn unit_letters(&self) -> impl Iterator<Item = (Gen, i64)> + '_ {
        self.letters
            .iter()
            .flat_map(|l| std::iter::repeat_n((l.gen, l.exp.signum()), l.exp.unsigned_abs() as usize))
    }

    pub fn only_t(&self) -> bool {
        self.letters.iter().all(|l| matches!(l.gen, Gen::T(_)))
    }
}

/// `Λ ∩ C(A)` and `Λ ∩ C(A*)`, given as ring elements over `T`.
#[derive(Clone, Debug, PartialEq)]
pub struct TamenessDatum {
    pub centralizer: Vec<RingElement>,
    pub co_centralizer: Vec<RingElement>,
}

impl TamenessDatum {
    pub fn all(&self) -> impl Iterator<Item = &RingElement> {
        self.centralizer.iter().chain(&self.co_centralizer)
    }
}

/// A presentation with module generators `𝒜`, generators `𝒯` of `T`
/// (free then torsion), relators and the commutator table `[tᵢ,tⱼ] = a_ij`.
#[derive(Clone, Debug, PartialEq)]
pub struct Presentation {
    pub module_gens: Vec<String>,
    pub free_gens: Vec<String>,
    pub torsion_gens: Vec<(String, u64)>,
    pub relators: Vec<GroupWord>,
    /// Pairs `(i, j)`, `i < j`, of `T`-generator indices to module generator indices.
    pub commutator_table: BTreeMap<(usize, usize), usize>,
    pub tameness: Option<TamenessDatum>,
    /// Name of the preset family this presentation was built from, if any.
    pub preset: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct TorsionFile {
    name: String,
    order: i64,
}

#[derive(Serialize, Deserialize)]
struct TableFile {
    pair: [String; 2],
    equals: String,
}

#[derive(Serialize, Deserialize)]
struct LambdaFile {
    #[serde(default)]
    centralizer: Vec<String>,
    #[serde(default)]
    co_centralizer: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PresentationFile {
    #[serde(default)]
    module_generators: Vec<String>,
    #[serde(default)]
    free_generators: Vec<String>,
    #[serde(default)]
    torsion_generators: Vec<TorsionFile>,
    #[serde(default)]
    commutator_table: Vec<TableFile>,
    #[serde(default)]
    relators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lambda: Option<LambdaFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    preset: Option<String>,
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    chars
        .next()
        .is_some_and(|c| c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

impl Presentation {
    /// Builds and validates a presentation from its parts; relators and
    /// `Λ` are given in text form.
    pub fn build(
        module_gens: Vec<String>,
        free_gens: Vec<String>,
        torsion_gens: Vec<(String, u64)>,
        table: Vec<((String, String), String)>,
        relators: &[String],
        lambda: Option<(Vec<String>, Vec<String>)>,
    ) -> Result<Presentation> {
        let mut p = Presentation {
            module_gens,
            free_gens,
            torsion_gens,
            relators: Vec::new(),
            commutator_table: BTreeMap::new(),
            tameness: None,
            preset: None,
        };
        let mut seen = HashSet::new();
        for name in p.all_names() {
            if !valid_name(&name) {
                return Err(Error::Invalid(format!("`{name}` is not a valid generator name")));
            }
            if !seen.insert(name.clone()) {
                return Err(Error::Invalid(format!("duplicate generator `{name}`")));
            }
        }
        for (_, d) in &p.torsion_gens {
            if *d < 2 {
                return Err(Error::TorsionOrder(*d as i64));
            }
        }
        for ((x, y), a) in table {
            let (i, j) = match (p.lookup(&x), p.lookup(&y)) {
                (Some(Gen::T(i)), Some(Gen::T(j))) => (i, j),
                _ => {
                    return Err(Error::Invalid(format!(
                        "commutator table pair ({x}, {y}) must name generators of T"
                    )))
                }
            };
            if i >= j {
                return Err(Error::Invalid(format!(
                    "commutator table pair ({x}, {y}) must follow generator order"
                )));
            }
            let Some(Gen::Module(m)) = p.lookup(&a) else {
                return Err(Error::Invalid(format!("`{a}` is not a module generator")));
            };
            if p.commutator_table.insert((i, j), m).is_some() {
                return Err(Error::Invalid(format!("pair ({x}, {y}) listed twice")));
            }
        }
        let nt = p.t_count();
        for i in 0..nt {
            for j in i + 1..nt {
                if !p.commutator_table.contains_key(&(i, j)) {
                    return Err(Error::Invalid(format!(
                        "commutator table misses the pair ({}, {})",
                        p.t_name(i),
                        p.t_name(j)
                    )));
                }
            }
        }
        for r in relators {
            let w = parse_word(r, &p)?;
            p.check_relator(&w, r)?;
            p.relators.push(w);
        }
        if let Some((c, cc)) = lambda {
            let vars = p.t_names();
            let parse = |v: &Vec<String>| -> Result<Vec<RingElement>> {
                v.iter()
                    .map(|s| {
                        let r = parse_ring(s, &vars)?;
                        if r.is_zero() {
                            Err(Error::Invalid(format!("Λ element `{s}` is zero")))
                        } else {
                            Ok(r)
                        }
                    })
                    .collect()
            };
            p.tameness = Some(TamenessDatum {
                centralizer: parse(&c)?,
                co_centralizer: parse(&cc)?,
            });
        }
        Ok(p)
    }

    fn check_relator(&self, w: &GroupWord, text: &str) -> Result<()> {
        let sums = exponent_sums(w, self);
        if let Some(i) = sums.iter().position(|&s| s != 0) {
            return Err(Error::NonzeroExponentSum {
                relator: text.to_string(),
                generator: self.t_name(i).to_string(),
            });
        }
        Ok(())
    }

    fn all_names(&self) -> Vec<String> {
        self.module_gens
            .iter()
            .chain(&self.free_gens)
            .cloned()
            .chain(self.torsion_gens.iter().map(|t| t.0.clone()))
            .collect()
    }

    /// Number of module generators `m`.
    pub fn m(&self) -> usize {
        self.module_gens.len()
    }

    /// Number of free generators `k`.
    pub fn k(&self) -> usize {
        self.free_gens.len()
    }

    /// Number of generators of `T`, free and torsion.
    pub fn t_count(&self) -> usize {
        self.free_gens.len() + self.torsion_gens.len()
    }

    pub fn t_name(&self, i: usize) -> &str {
        if i < self.free_gens.len() {
            &self.free_gens[i]
        } else {
            &self.torsion_gens[i - self.free_gens.len()].0
        }
    }

    pub fn t_names(&self) -> Vec<String> {
        (0..self.t_count()).map(|i| self.t_name(i).to_string()).collect()
    }

    /// Order of `T`-generator `i`, `None` for free generators.
    pub fn torsion_order(&self, i: usize) -> Option<u64> {
        i.checked_sub(self.free_gens.len())
            .map(|j| self.torsion_gens[j].1)
    }

    pub fn gen_name(&self, g: Gen) -> &str {
        match g {
            Gen::Module(i) => &self.module_gens[i],
            Gen::T(i) => self.t_name(i),
        }
    }

    pub fn lookup(&self, name: &str) -> Option<Gen> {
        if let Some(i) = self.module_gens.iter().position(|n| n == name) {
            return Some(Gen::Module(i));
        }
        (0..self.t_count())
            .find(|&i| self.t_name(i) == name)
            .map(Gen::T)
    }

    /// The ring `ℤT`.
    pub fn ring(&self) -> LaurentRing {
        LaurentRing {
            free: self.k(),
            torsion: self.torsion_gens.iter().map(|t| t.1).collect(),
        }
    }

    /// Variable names `𝒯` and basis names `𝒜`.
    pub fn names(&self) -> Names {
        Names::new(self.t_names(), self.module_gens.clone())
    }

    /// Module generator realizing `[tᵢ, tⱼ]` for `i < j`.
    pub fn commutator_gen(&self, i: usize, j: usize) -> Option<usize> {
        self.commutator_table.get(&(i, j)).copied()
    }

    pub fn parse(text: &str) -> Result<Presentation> {
        let file: PresentationFile = serde_json::from_str(text).map_err(|e| {
            let offset = line_col_offset(text, e.line(), e.column());
            Error::syntax(offset, e.to_string())
        })?;
        let mut torsion = Vec::new();
        for t in file.torsion_generators {
            if t.order < 2 {
                return Err(Error::TorsionOrder(t.order));
            }
            torsion.push((t.name, t.order as u64));
        }
        let mut p = Presentation::build(
            file.module_generators,
            file.free_generators,
            torsion,
            file.commutator_table
                .into_iter()
                .map(|e| ((e.pair[0].clone(), e.pair[1].clone()), e.equals))
                .collect(),
            &file.relators,
            file.lambda.map(|l| (l.centralizer, l.co_centralizer)),
        )?;
        p.preset = file.preset;
        Ok(p)
    }

    pub fn to_json(&self) -> String {
        let ring_names = Names::new(self.t_names(), Vec::new());
        let file = PresentationFile {
            module_generators: self.module_gens.clone(),
            free_generators: self.free_gens.clone(),
            torsion_generators: self
                .torsion_gens
                .iter()
                .map(|(n, d)| TorsionFile {
                    name: n.clone(),
                    order: *d as i64,
                })
                .collect(),
            commutator_table: self
                .commutator_table
                .iter()
                .map(|(&(i, j), &a)| TableFile {
                    pair: [self.t_name(i).to_string(), self.t_name(j).to_string()],
                    equals: self.module_gens[a].clone(),
                })
                .collect(),
            relators: self.relators.iter().map(|w| format_word(w, self)).collect(),
            lambda: self.tameness.as_ref().map(|l| LambdaFile {
                centralizer: l.centralizer.iter().map(|r| format_ring(r, &ring_names)).collect(),
                co_centralizer: l
                    .co_centralizer
                    .iter()
                    .map(|r| format_ring(r, &ring_names))
                    .collect(),
            }),
            preset: self.preset.clone(),
        };
        serde_json::to_string_pretty(&file).expect("serializable")
    }
}

fn line_col_offset(text: &str, line: usize, col: usize) -> usize {
    text.split_inclusive('\n')
        .take(line.saturating_sub(1))
        .map(str::len)
        .sum::<usize>()
        + col.saturating_sub(1)
}

/// The image of `w` in `T` as an exponent vector; torsion coordinates are
/// reduced into `[0, d)`.
pub fn exponent_sums(w: &GroupWord, p: &Presentation) -> Vec<i64> {
    let mut sums = vec![0i64; p.t_count()];
    for l in w.letters() {
        if let Gen::T(i) = l.gen {
            sums[i] += l.exp;
        }
    }
    for (i, s) in sums.iter_mut().enumerate() {
        if let Some(d) = p.torsion_order(i) {
            *s = s.rem_euclid(d as i64);
        }
    }
    sums
}

/// Renders a word such as `t^2*a*t^-2`; the empty word is `1`.
pub fn format_word(w: &GroupWord, p: &Presentation) -> String {
    if w.is_identity() {
        return "1".to_string();
    }
    let mut out = String::new();
    for (i, l) in w.letters().iter().enumerate() {
        if i > 0 {
            out.push('*');
        }
        out.push_str(p.gen_name(l.gen));
        if l.exp != 1 {
            let _ = write!(out, "^{}", l.exp);
        }
    }
    out
}

struct WordParser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
    p: &'a Presentation,
}

impl WordParser<'_> {
    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.1.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len, |c| c.0)
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::syntax(self.offset(), format!("expected `{c}`")))
        }
    }

    fn name(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.1.is_alphanumeric() || c.1 == '_')
            && (self.pos > start || !self.chars[self.pos].1.is_ascii_digit())
        {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().map(|c| c.1).collect())
    }

    fn integer(&mut self) -> Option<Result<i64>> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.1.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().map(|c| c.1).collect();
        let off = self.chars[start].0;
        Some(s.parse().map_err(|_| Error::syntax(off, "integer out of range")))
    }

    fn generator(&mut self) -> Result<Option<GroupWord>> {
        let off = self.offset();
        match self.name() {
            Some(n) => match self.p.lookup(&n) {
                Some(g) => Ok(Some(GroupWord::letter(g, 1))),
                None => {
                    let _ = off;
                    Err(Error::UnknownGenerator(n))
                }
            },
            None => Ok(None),
        }
    }

    fn word(&mut self) -> Result<GroupWord> {
        let mut w = self.factor()?;
        while self.eat('*') {
            w = w.mul(&self.factor()?);
        }
        Ok(w)
    }

    fn factor(&mut self) -> Result<GroupWord> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let off = self.offset();
        let out = if let Some(n) = self.integer() {
            base.pow(if neg { -n? } else { n? })
        } else if let Some(g) = self.generator()? {
            let c = base.conjugate(&g);
            if neg {
                c.inverse()
            } else {
                c
            }
        } else if !neg && self.eat('(') {
            let by = self.word()?;
            self.expect(')')?;
            base.conjugate(&by)
        } else {
            return Err(Error::syntax(off, "expected an exponent"));
        };
        if self.peek() == Some('^') {
            return Err(Error::syntax(
                self.offset(),
                "nested exponents need parentheses",
            ));
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<GroupWord> {
        let off = self.offset();
        if self.eat('[') {
            let x = self.word()?;
            self.expect(',')?;
            let y = self.word()?;
            self.expect(']')?;
            return Ok(GroupWord::commutator(&x, &y));
        }
        if self.eat('(') {
            let w = self.word()?;
            self.expect(')')?;
            return Ok(w);
        }
        if let Some(n) = self.integer() {
            return if n? == 1 {
                Ok(GroupWord::identity())
            } else {
                Err(Error::syntax(off, "only `1` may stand for a word"))
            };
        }
        match self.generator()? {
            Some(w) => Ok(w),
            None => Err(Error::syntax(off, "expected a generator")),
        }
    }
}

/// Parses a word over the generators of `p`.
pub fn parse_word(text: &str, p: &Presentation) -> Result<GroupWord> {
    let mut parser = WordParser {
        chars: text.char_indices().collect(),
        pos: 0,
        len: text.len(),
        p,
    };
    let w = parser.word()?;
    if parser.peek().is_some() {
        return Err(Error::syntax(parser.offset(), "trailing input"));
    }
    Ok(w)
}

/// Ordered forms of the relators: generators of the relator submodule.
pub fn relator_module(p: &Presentation) -> Result<Vec<crate::element::ModuleElement>> {
    p.relators
        .iter()
        .map(|r| crate::collection::ordered_form(r, p).map(|(f, _)| f.vector))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs2() -> Presentation {
        Presentation::parse(
            r#"{"module_generators": ["a"], "free_generators": ["t"], "relators": ["a^t * a^-2"]}"#,
        )
        .unwrap()
    }

    #[test]
    fn parses_bs_file() {
        let p = bs2();
        assert_eq!((p.k(), p.m()), (1, 1));
        assert_eq!(format_word(&p.relators[0], &p), "t^-1*a*t*a^-2");
    }

    #[test]
    fn rejects_nonzero_exponent_sum() {
        let e = Presentation::parse(
            r#"{"module_generators": ["a"], "free_generators": ["t"], "relators": ["t"]}"#,
        )
        .unwrap_err();
        assert!(matches!(e, Error::NonzeroExponentSum { .. }));
    }

    #[test]
    fn word_conventions() {
        let p = bs2();
        let w = parse_word("[a, a^t]", &p).unwrap();
        assert_eq!(format_word(&w, &p), "a^-1*t^-1*a^-1*t*a*t^-1*a*t");
        let w = parse_word("a^-2", &p).unwrap();
        assert_eq!(w.letters(), &[Letter { gen: Gen::Module(0), exp: -2 }]);
        let w = parse_word("t^3 * a * t^-3", &p).unwrap();
        assert_eq!(format_word(&w, &p), "t^3*a*t^-3");
        let w = parse_word("a^-t", &p).unwrap();
        assert_eq!(format_word(&w, &p), "t^-1*a^-1*t");
    }

    #[test]
    fn word_errors() {
        let p = bs2();
        assert!(matches!(parse_word("b", &p), Err(Error::UnknownGenerator(_))));
        assert!(matches!(parse_word("a^t^t", &p), Err(Error::Syntax { .. })));
        assert!(matches!(parse_word("a *", &p), Err(Error::Syntax { .. })));
        assert!(matches!(parse_word("[a, t", &p), Err(Error::Syntax { .. })));
    }

    #[test]
    fn exponent_sums_reduce_torsion() {
        let p = Presentation::build(
            vec!["a".into()],
            vec![],
            vec![("s".into(), 2)],
            vec![],
            &[],
            None,
        )
        .unwrap();
        let w = parse_word("s^3", &p).unwrap();
        assert_eq!(exponent_sums(&w, &p), vec![1]);
    }

    #[test]
    fn missing_commutator_entry_is_rejected() {
        let e = Presentation::build(
            vec!["a".into()],
            vec!["s".into(), "t".into()],
            vec![],
            vec![],
            &[],
            None,
        );
        assert!(matches!(e, Err(Error::Invalid(_))));
    }

    #[test]
    fn json_round_trip() {
        let p = bs2();
        assert_eq!(Presentation::parse(&p.to_json()).unwrap(), p);
    }
}
