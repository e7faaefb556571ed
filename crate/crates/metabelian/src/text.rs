//! Canonical text for ring and module elements.
//!
//! Printing groups terms by basis vector, e.g. `(t^2 - 2*t)*a1 + 3*a2`.
//! Parsing accepts any arithmetic expression built from integers, variable
//! names (with integer powers; negative powers only on monomials) and basis
//! names, so printed text always parses back to the same element.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::element::{ModuleElement, RingElement, Term};
use crate::error::{Error, Result};
use crate::monomial::Monomial;

/// Variable and basis names used for rendering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Names {
    pub vars: Vec<String>,
    pub basis: Vec<String>,
}

impl Names {
    pub fn new(vars: Vec<String>, basis: Vec<String>) -> Self {
        Names { vars, basis }
    }

    /// Names `x1…xk` and `e1…em`.
    pub fn generic(nvars: usize, rank: usize) -> Self {
        Names {
            vars: (1..=nvars).map(|i| format!("x{i}")).collect(),
            basis: (1..=rank).map(|i| format!("e{i}")).collect(),
        }
    }

    pub fn ring(&self) -> Names {
        Names {
            vars: self.vars.clone(),
            basis: Vec::new(),
        }
    }
}

fn write_monomial(out: &mut String, m: &Monomial, names: &Names) -> bool {
    let mut wrote = false;
    for (i, e) in m.exps.iter().enumerate() {
        if e.is_zero() {
            continue;
        }
        if wrote {
            out.push('*');
        }
        wrote = true;
        out.push_str(&names.vars[i]);
        if !e.is_one() {
            let _ = write!(out, "^{e}");
        }
    }
    wrote
}

/// Renders a ring element such as `t^2 - 2*t + 1`.
pub fn format_ring(lambda: &RingElement, names: &Names) -> String {
    if lambda.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, t) in lambda.terms().iter().enumerate() {
        let neg = t.coeff.is_negative();
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mag = t.coeff.abs();
        let mut mono = String::new();
        let has_mono = write_monomial(&mut mono, &t.mono.ring_part(), names);
        if !has_mono {
            let _ = write!(out, "{mag}");
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            let _ = write!(out, "{mag}*{mono}");
        }
    }
    out
}

/// Renders a module or ring element.
pub fn format_element(g: &ModuleElement, names: &Names) -> String {
    if g.is_ring() {
        return format_ring(g, names);
    }
    let mut out = String::new();
    for j in 0..g.rank() {
        let lam = g.component(j);
        if lam.is_zero() {
            continue;
        }
        let single = lam.terms().len() == 1;
        let (body, neg) = if single {
            let t = &lam.terms()[0];
            let mag = ModuleElement::ring_monomial(t.coeff.abs(), t.mono.clone());
            (format_ring(&mag, names), t.coeff.is_negative())
        } else {
            (format!("({})", format_ring(&lam, names)), false)
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if body == "1" {
            out.push_str(&names.basis[j]);
        } else {
            let _ = write!(out, "{body}*{}", names.basis[j]);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let bytes: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < bytes.len() {
        let (off, c) = bytes[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = bytes[start..i].iter().map(|p| p.1).collect();
            out.push((off, Tok::Int(s.parse().expect("digits"))));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].1.is_alphanumeric() || bytes[i].1 == '_') {
                i += 1;
            }
            out.push((off, Tok::Name(bytes[start..i].iter().map(|p| p.1).collect())));
        } else if "+-*^()".contains(c) {
            out.push((off, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::syntax(off, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    names: &'a Names,
    rank: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|p| &p.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |p| p.0)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn nvars(&self) -> usize {
        self.names.vars.len()
    }

    fn expr(&mut self) -> Result<ModuleElement> {
        let mut acc = if self.eat('-') {
            self.product()?.neg()
        } else {
            self.eat('+');
            self.product()?
        };
        loop {
            if self.eat('+') {
                let rhs = self.product()?;
                acc = self.combine_add(acc, rhs)?;
            } else if self.eat('-') {
                let rhs = self.product()?.neg();
                acc = self.combine_add(acc, rhs)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn combine_add(&self, a: ModuleElement, b: ModuleElement) -> Result<ModuleElement> {
        let off = self.offset();
        let (a, b) = (self.promote(a), self.promote(b));
        match (a.is_ring(), b.is_ring()) {
            (true, true) | (false, false) => a.add(&b),
            _ => {
                // A ring element can only be added to a module element if it is zero.
                if a.is_zero() {
                    Ok(b)
                } else if b.is_zero() {
                    Ok(a)
                } else {
                    Err(Error::syntax(off, "cannot add a ring element to a module element"))
                }
            }
        }
    }

    fn promote(&self, g: ModuleElement) -> ModuleElement {
        if g.is_ring() && g.is_zero() && self.rank > 0 {
            ModuleElement::zero(self.nvars(), self.rank)
        } else {
            g
        }
    }

    fn product(&mut self) -> Result<ModuleElement> {
        let mut acc = self.power()?;
        while self.eat('*') {
            let off = self.offset();
            let rhs = self.power()?;
            acc = match (acc.is_ring(), rhs.is_ring()) {
                (true, _) => rhs.mul_ring(&acc)?,
                (false, true) => acc.mul_ring(&rhs)?,
                (false, false) => {
                    return Err(Error::syntax(off, "product of two module elements"));
                }
            };
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<ModuleElement> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let off = self.offset();
        let neg = self.eat('-');
        let e = match self.peek() {
            Some(Tok::Int(v)) => v.clone(),
            _ => return Err(Error::syntax(off, "expected an integer exponent")),
        };
        self.pos += 1;
        let e = if neg { -e } else { e };
        if !base.is_ring() {
            return Err(Error::syntax(off, "power of a module element"));
        }
        if base.terms().len() == 1 && base.terms()[0].coeff.is_one() {
            let m = &base.terms()[0].mono;
            let mono = Monomial::from_exps(m.exps.iter().map(|x| x * &e));
            return Ok(ModuleElement::ring_monomial(1, mono));
        }
        if e.is_negative() {
            return Err(Error::syntax(off, "negative power of a non-monomial"));
        }
        let e = e
            .to_u32()
            .ok_or_else(|| Error::syntax(off, "exponent too large"))?;
        let mut acc = ModuleElement::ring_one(self.nvars());
        for _ in 0..e {
            acc = acc.mul_ring(&base)?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<ModuleElement> {
        let off = self.offset();
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(ModuleElement::ring_monomial(v, Monomial::one(self.nvars())))
            }
            Some(Tok::Name(n)) => {
                self.pos += 1;
                if let Some(i) = self.names.vars.iter().position(|v| *v == n) {
                    Ok(ModuleElement::ring_monomial(
                        1,
                        Monomial::var(self.nvars(), i, 1),
                    ))
                } else if let Some(j) = self.names.basis.iter().position(|v| *v == n) {
                    Ok(ModuleElement::basis_vector(self.nvars(), self.rank, j))
                } else {
                    Err(Error::UnknownGenerator(n))
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::syntax(self.offset(), "expected `)`"));
                }
                Ok(inner)
            }
            _ => Err(Error::syntax(off, "expected a term")),
        }
    }
}

/// Parses a module element over the given names. A bare ring expression is
/// accepted only when `names.basis` is empty.
pub fn parse_element(text: &str, names: &Names) -> Result<ModuleElement> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        names,
        rank: names.basis.len(),
    };
    let g = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::syntax(p.offset(), "trailing input"));
    }
    let g = p.promote(g);
    if names.basis.is_empty() {
        return Ok(g);
    }
    if g.is_ring() {
        return Err(Error::syntax(0, "expected a module element (no basis name found)"));
    }
    Ok(g)
}

/// Parses a ring element over `vars`.
pub fn parse_ring(text: &str, vars: &[String]) -> Result<RingElement> {
    parse_element(text, &Names::new(vars.to_vec(), Vec::new()))
}

/// Convenience: the ring element `Σ c·x^e` from `(c, exponents)` pairs.
pub fn ring_from_pairs(nvars: usize, pairs: &[(i64, Vec<i64>)]) -> RingElement {
    ModuleElement::from_terms(
        nvars,
        0,
        pairs
            .iter()
            .map(|(c, e)| Term::new(*c, Monomial::from_exps(e.iter().copied()))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Names {
        Names::new(
            vec!["t".into(), "s".into()],
            vec!["a1".into(), "a2".into()],
        )
    }

    #[test]
    fn canonical_rendering() {
        let g = parse_element("(t^2 - 2*t)*a1 + 3*a2", &names()).unwrap();
        assert_eq!(format_element(&g, &names()), "(t^2 - 2*t)*a1 + 3*a2");
    }

    #[test]
    fn laurent_and_negative_terms() {
        let g = parse_element("-t^-1*a1 - a2 + s*t*a2", &names()).unwrap();
        let text = format_element(&g, &names());
        assert_eq!(text, "-t^-1*a1 + (t*s - 1)*a2");
        assert_eq!(parse_element(&text, &names()).unwrap(), g);
    }

    #[test]
    fn ring_text() {
        let vars = vec!["t".to_string()];
        let f = parse_ring("(1+t)^2", &vars).unwrap();
        assert_eq!(format_ring(&f, &Names::new(vars, vec![])), "t^2 + 2*t + 1");
    }

    #[test]
    fn errors_carry_offsets() {
        assert!(matches!(
            parse_element("t *", &names()),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_element("q*a1", &names()),
            Err(Error::UnknownGenerator(_))
        ));
        assert!(parse_element("a1*a2", &names()).is_err());
    }
}
