//! Example presentations and the norm growth of powers of `1 + … + t^d`.
//!
//! Preset specs are written `bs:2`, `lamplighter:3`, `zwrz`, `gamma`,
//! `free_abelian:2` and `wf:R:K:F1;F2[:M1,M2]`, where the `Fi` are
//! polynomials in `t` and the optional `Mi` are orders of extra torsion
//! generators.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::element::RingElement;
use crate::error::{Error, Result};
use crate::presentation::{parse_word, GroupWord, Presentation};
use crate::text::parse_ring;

/// A preset family with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PresetSpec {
    /// `BS(1,n) = ⟨a, t | t a t⁻¹ = aⁿ⟩`.
    Bs(i64),
    /// `ℤ_m ≀ ℤ`.
    Lamplighter(i64),
    /// `ℤ ≀ ℤ`.
    Zwrz,
    /// Baumslag's `⟨a, s, t | [a,a^t], [s,t], a^s = a a^t⟩`.
    Gamma,
    /// `ℤ^k`.
    FreeAbelian(usize),
    /// Baumslag's `W_F`: `r` module generators, polynomials `fⱼ` given by
    /// coefficient lists `[1, c₁, …, 1]`, and torsion generator orders.
    Wf {
        r: usize,
        polys: Vec<Vec<i64>>,
        torsion: Vec<u64>,
    },
}

fn poly_text(c: &[i64], var: &str) -> String {
    let mut out = String::new();
    for (e, &c) in c.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let sign = if c < 0 { "-" } else if out.is_empty() { "" } else { "+" };
        let mag = c.unsigned_abs();
        let body = match (e, mag) {
            (0, m) => m.to_string(),
            (1, 1) => var.to_string(),
            (1, m) => format!("{m}*{var}"),
            (e, 1) => format!("{var}^{e}"),
            (e, m) => format!("{m}*{var}^{e}"),
        };
        out.push_str(sign);
        out.push_str(&body);
    }
    out
}

impl fmt::Display for PresetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PresetSpec::Bs(n) => write!(f, "bs:{n}"),
            PresetSpec::Lamplighter(m) => write!(f, "lamplighter:{m}"),
            PresetSpec::Zwrz => write!(f, "zwrz"),
            PresetSpec::Gamma => write!(f, "gamma"),
            PresetSpec::FreeAbelian(k) => write!(f, "free_abelian:{k}"),
            PresetSpec::Wf { r, polys, torsion } => {
                let fs: Vec<String> = polys.iter().map(|c| poly_text(c, "t")).collect();
                write!(f, "wf:{r}:{}:{}", polys.len(), fs.join(";"))?;
                if !torsion.is_empty() {
                    let ms: Vec<String> = torsion.iter().map(u64::to_string).collect();
                    write!(f, ":{}", ms.join(","))?;
                }
                Ok(())
            }
        }
    }
}

fn int_arg(s: Option<&str>, default: i64) -> Result<i64> {
    match s {
        None => Ok(default),
        Some(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Invalid(format!("`{s}` is not an integer"))),
    }
}

/// Coefficients `[c₀, …, c_d]` of a polynomial in one variable `t`.
pub fn coefficients(f: &RingElement) -> Result<Vec<i64>> {
    if f.nvars() != 1 || f.is_zero() {
        return Err(Error::Invalid("expected a nonzero polynomial in one variable".into()));
    }
    let mut out: Vec<i64> = Vec::new();
    for t in f.terms() {
        let e = t.mono.exps[0]
            .to_usize()
            .ok_or_else(|| Error::Invalid("negative or huge exponent".into()))?;
        let c = t
            .coeff
            .to_i64()
            .ok_or_else(|| Error::Invalid("coefficient out of range".into()))?;
        if out.len() <= e {
            out.resize(e + 1, 0);
        }
        out[e] = c;
    }
    Ok(out)
}

/// Checks `f = 1 + c₁t + … + t^d` with `d ≥ 1`.
pub fn check_shape(c: &[i64]) -> Result<()> {
    if c.len() < 2 || c[0] != 1 || c[c.len() - 1] != 1 {
        return Err(Error::Invalid(
            "polynomial must be monic of degree at least 1 with constant term 1".into(),
        ));
    }
    Ok(())
}

impl FromStr for PresetSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let arg = parts.get(1).copied();
        let spec = match parts[0] {
            "bs" => PresetSpec::Bs(int_arg(arg, 2)?),
            "lamplighter" => PresetSpec::Lamplighter(int_arg(arg, 2)?),
            "zwrz" => PresetSpec::Zwrz,
            "gamma" | "baumslag_gamma" => PresetSpec::Gamma,
            "free_abelian" => {
                let k = int_arg(arg, 2)?;
                PresetSpec::FreeAbelian(
                    usize::try_from(k).map_err(|_| Error::Invalid("k must be nonnegative".into()))?,
                )
            }
            "wf" => {
                let r = int_arg(arg, 1)?;
                let k = int_arg(parts.get(2).copied(), 1)?;
                let polys: Vec<Vec<i64>> = match parts.get(3) {
                    Some(fs) => fs
                        .split(';')
                        .map(|f| coefficients(&parse_ring(f, &["t".to_string()])?))
                        .collect::<Result<_>>()?,
                    None => vec![vec![1, 1]; k.max(0) as usize],
                };
                if polys.len() as i64 != k {
                    return Err(Error::Invalid(format!("expected {k} polynomials, got {}", polys.len())));
                }
                let torsion = match parts.get(4) {
                    Some(ms) if !ms.is_empty() => ms
                        .split(',')
                        .map(|m| {
                            m.trim()
                                .parse()
                                .map_err(|_| Error::Invalid(format!("`{m}` is not an order")))
                        })
                        .collect::<Result<_>>()?,
                    _ => Vec::new(),
                };
                PresetSpec::Wf {
                    r: usize::try_from(r).map_err(|_| Error::Invalid("r must be positive".into()))?,
                    polys,
                    torsion,
                }
            }
            other => return Err(Error::Invalid(format!("unknown preset `{other}`"))),
        };
        Ok(spec)
    }
}

fn strings(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// Commutator generators `c_x_y` for every pair of `T`-generators, each of
/// which is also a relator.
fn commuting_t(t_names: &[String]) -> (Vec<String>, Vec<((String, String), String)>, Vec<String>) {
    let mut gens = Vec::new();
    let mut table = Vec::new();
    for i in 0..t_names.len() {
        for j in i + 1..t_names.len() {
            let c = format!("c_{}_{}", t_names[i], t_names[j]);
            table.push(((t_names[i].clone(), t_names[j].clone()), c.clone()));
            gens.push(c);
        }
    }
    let relators = gens.clone();
    (gens, table, relators)
}

/// Builds the presentation of a preset.
pub fn build(spec: &PresetSpec) -> Result<Presentation> {
    let mut p = match spec {
        PresetSpec::Bs(n) => {
            if *n <= 1 {
                return Err(Error::Invalid(format!("bs needs n ≥ 2, got {n}")));
            }
            Presentation::build(
                strings(&["a"]),
                strings(&["t"]),
                vec![],
                vec![],
                &[format!("t*a*t^-1*a^-{n}")],
                Some((vec![format!("{n}*t")], vec![format!("{n}*t^-1")])),
            )?
        }
        PresetSpec::Lamplighter(m) => {
            if *m < 2 {
                return Err(Error::Invalid(format!("lamplighter needs m ≥ 2, got {m}")));
            }
            Presentation::build(
                strings(&["a"]),
                strings(&["t"]),
                vec![],
                vec![],
                &[format!("a^{m}"), "[a, a^t]".into()],
                None,
            )?
        }
        PresetSpec::Zwrz => Presentation::build(
            strings(&["a"]),
            strings(&["t"]),
            vec![],
            vec![],
            &["[a, a^t]".into()],
            None,
        )?,
        PresetSpec::Gamma => Presentation::build(
            strings(&["a", "b"]),
            strings(&["s", "t"]),
            vec![],
            vec![(("s".into(), "t".into()), "b".into())],
            &["[a, a^t]".into(), "b".into(), "a^s * a^-1 * (a^-1)^t".into()],
            None,
        )?,
        PresetSpec::FreeAbelian(k) => {
            let ts: Vec<String> = (1..=*k).map(|i| format!("t{i}")).collect();
            let (gens, table, relators) = commuting_t(&ts);
            let mut lambda = Vec::new();
            for t in &ts {
                lambda.push(t.clone());
                lambda.push(format!("{t}^-1"));
            }
            Presentation::build(gens, ts, vec![], table, &relators, Some((lambda, vec![])))?
        }
        PresetSpec::Wf { r, polys, torsion } => build_wf(*r, polys, torsion)?,
    };
    p.preset = Some(spec.to_string());
    Ok(p)
}

fn build_wf(r: usize, polys: &[Vec<i64>], torsion: &[u64]) -> Result<Presentation> {
    let k = polys.len();
    if r == 0 || k == 0 {
        return Err(Error::Invalid("wf needs r ≥ 1 and k ≥ 1".into()));
    }
    for c in polys {
        check_shape(c)?;
    }
    let a: Vec<String> = (1..=r).map(|i| format!("a{i}")).collect();
    let t: Vec<String> = (1..=k).map(|i| format!("t{i}")).collect();
    let u: Vec<String> = (1..=k).map(|i| format!("u{i}")).collect();
    let tors: Vec<(String, u64)> = torsion
        .iter()
        .enumerate()
        .map(|(i, &m)| (format!("t{}", k + i + 1), m))
        .collect();
    let all_t: Vec<String> = t
        .iter()
        .chain(&u)
        .cloned()
        .chain(tors.iter().map(|x| x.0.clone()))
        .collect();
    let (cgens, table, mut relators) = commuting_t(&all_t);
    for i in 0..r {
        for j in i + 1..r {
            relators.push(format!("[{}, {}]", a[i], a[j]));
        }
    }
    // Conjugates by t₁^{α₁}…t_l^{α_l} with 0 ≤ αᵢ ≤ dᵢ (free), αᵢ < mᵢ (torsion).
    let mut limits: Vec<(String, u64)> = polys
        .iter()
        .zip(&t)
        .map(|(c, name)| (name.clone(), c.len() as u64 - 1))
        .collect();
    limits.extend(tors.iter().map(|(n, m)| (n.clone(), m - 1)));
    let mut box_words = vec![String::new()];
    for (name, lim) in &limits {
        let mut next = Vec::new();
        for w in &box_words {
            for e in 0..=*lim {
                let mut s = w.clone();
                if e > 0 {
                    if !s.is_empty() {
                        s.push('*');
                    }
                    s.push_str(&format!("{name}^{e}"));
                }
                next.push(s);
            }
        }
        box_words = next;
    }
    let conj = |gen: &str, w: &str| {
        if w.is_empty() {
            gen.to_string()
        } else {
            format!("{gen}^({w})")
        }
    };
    let mut conjugates = Vec::new();
    for g in &a {
        for w in &box_words {
            conjugates.push(conj(g, w));
        }
    }
    for x in 0..conjugates.len() {
        for y in x + 1..conjugates.len() {
            let (gx, gy) = (x / box_words.len(), y / box_words.len());
            if gx != gy && box_words[x % box_words.len()].is_empty() && box_words[y % box_words.len()].is_empty() {
                continue; // already [aᵢ, aⱼ]
            }
            relators.push(format!("[{}, {}]", conjugates[x], conjugates[y]));
        }
    }
    for ai in &a {
        for (j, c) in polys.iter().enumerate() {
            let mut rel = format!("{ai}^{}", u[j]);
            for (e, &ce) in c.iter().enumerate() {
                if ce == 0 {
                    continue;
                }
                let power = format!("{ai}^{}", -ce);
                if e == 0 {
                    rel.push_str(&format!(" * {power}"));
                } else {
                    rel.push_str(&format!(" * ({power})^({}^{e})", t[j]));
                }
            }
            relators.push(rel);
        }
    }
    let mut gens = a.clone();
    gens.extend(cgens);
    let free: Vec<String> = t.iter().chain(&u).cloned().collect();
    Presentation::build(gens, free, tors, table, &relators, None)
}

/// Identity words exhibiting the growth of the Dehn function: `tⁿ a t⁻ⁿ a^{-bⁿ}`
/// for `BS(1,b)`, `[a₁^{u₁ⁿ}, a₁]` for `W_F` and `Γ`, `[t₁ⁿ, t₂ⁿ]` for
/// `ℤ^k` with `k ≥ 2`, `[a^{tⁿ}, a]` for the wreath products.
pub fn witness(p: &Presentation, n: u32) -> Result<Option<GroupWord>> {
    let Some(tag) = &p.preset else {
        return Ok(None);
    };
    let spec: PresetSpec = tag.parse()?;
    let text = match spec {
        PresetSpec::Bs(b) => {
            let e = (b as i128).checked_pow(n).filter(|&e| e <= i64::MAX as i128);
            match e {
                Some(e) => format!("t^{n}*a*t^-{n}*a^-{e}"),
                None => return Ok(None),
            }
        }
        PresetSpec::Lamplighter(_) | PresetSpec::Zwrz => format!("[a^(t^{n}), a]"),
        PresetSpec::Gamma => format!("[a^(s^{n}), a]"),
        PresetSpec::FreeAbelian(k) if k >= 2 => format!("[t1^{n}, t2^{n}]"),
        PresetSpec::FreeAbelian(_) => return Ok(None),
        PresetSpec::Wf { .. } => format!("[a1^(u1^{n}), a1]"),
    };
    parse_word(&text, p).map(Some)
}

/// `|fⁿ|` for `n = 1..=N` and the fitted growth rate `α`.
#[derive(Clone, Debug, PartialEq)]
pub struct NormGrowth {
    pub norms: Vec<BigInt>,
    pub alpha: f64,
}

fn ln_big(v: &BigInt) -> f64 {
    let bits = v.bits();
    if bits <= 1000 {
        v.to_f64().unwrap_or(f64::INFINITY).ln()
    } else {
        let shift = bits - 64;
        (v >> shift).to_f64().unwrap_or(f64::INFINITY).ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// Least-squares slope of `ys` against `xs`.
pub fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Norms of the powers of `f = 1 + c₁t + … + t^d`, with `α = exp(slope of
/// log|fⁿ|)`.
pub fn norm_growth(f: &RingElement, n: usize) -> Result<NormGrowth> {
    let c = coefficients(f)?;
    check_shape(&c)?;
    if n == 0 {
        return Err(Error::Invalid("N must be at least 1".into()));
    }
    let mut power = f.clone();
    let mut norms = Vec::with_capacity(n);
    for i in 1..=n {
        if i > 1 {
            power = power.mul_ring(f)?;
        }
        norms.push(power.length());
    }
    let alpha = if n == 1 {
        norms[0].to_f64().unwrap_or(f64::INFINITY)
    } else {
        let xs: Vec<f64> = (1..=n).map(|i| i as f64).collect();
        let ys: Vec<f64> = norms.iter().map(ln_big).collect();
        slope(&xs, &ys).exp()
    };
    Ok(NormGrowth { norms, alpha })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collection::ordered_form;
    use crate::presentation::format_word;
    use crate::text::format_element;

    fn t() -> Vec<String> {
        vec!["t".to_string()]
    }

    #[test]
    fn spec_round_trip() {
        for s in ["bs:2", "lamplighter:3", "zwrz", "gamma", "free_abelian:2", "wf:1:1:1+t", "wf:2:2:1+t;1-t+t^2:2"] {
            let spec: PresetSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!("bs:1".parse::<PresetSpec>().and_then(|s| build(&s)).is_err());
        assert!("wf:1:1:2+t".parse::<PresetSpec>().and_then(|s| build(&s)).is_err());
        assert!("nope".parse::<PresetSpec>().is_err());
    }

    #[test]
    fn bs_relator() {
        let p = build(&PresetSpec::Bs(2)).unwrap();
        assert_eq!(format_word(&p.relators[0], &p), "t*a*t^-1*a^-2");
    }

    #[test]
    fn wf_action_relator() {
        let p = build(&"wf:1:1:1+t".parse().unwrap()).unwrap();
        let names = p.names();
        let last = p.relators.last().unwrap();
        let (f, _) = ordered_form(last, &p).unwrap();
        assert_eq!(format_element(&f.vector, &names), "(-t1 + u1 - 1)*a1");
    }

    #[test]
    fn norm_growth_examples() {
        let g = norm_growth(&parse_ring("1 + t", &t()).unwrap(), 10).unwrap();
        let want: Vec<BigInt> = (1..=10).map(|i| BigInt::from(1u64 << i)).collect();
        assert_eq!(g.norms, want);
        assert!((g.alpha - 2.0).abs() < 1e-9);
        let g = norm_growth(&parse_ring("1 + t + t^2", &t()).unwrap(), 2).unwrap();
        assert_eq!(g.norms[1], BigInt::from(9));
        let g = norm_growth(&parse_ring("1 + t^5", &t()).unwrap(), 6).unwrap();
        assert_eq!(g.norms[5], BigInt::from(64));
        assert!(norm_growth(&parse_ring("2 + t", &t()).unwrap(), 3).is_err());
    }
}
