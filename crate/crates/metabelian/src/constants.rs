//! Geometric constants of a tameness datum `Λ`.
//!
//! Each `λ ∈ Λ` contributes the finite set `θ(supp λ) ⊂ ℝ^k` (torsion
//! coordinates dropped). With `f(u) = max_λ min_{y ∈ supp λ} ⟨u, y⟩`, the
//! constants are `C = inf_{|u|=1} f(u)`, `D = max_λ min_y |y|`,
//! `r₀ = D²/2C`, `ε(r) = C − D²/2r` and
//! `R = 2k·max{D²/2C, D, D²/(4kC − 4)}`.
//!
//! For `k = 1` the sphere is `{±1}` and everything is exact. For `k ≥ 2`
//! `f` is sampled on a grid of directions; since `f` is `L`-Lipschitz with
//! `L = max |y|`, `min f − L·h` over a grid of mesh `h` is a lower bound
//! for `C`.

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bound::Magnitude;
use crate::element::RingElement;
use crate::error::{Error, Result};
use crate::presentation::TamenessDatum;

/// How `C` was obtained.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Method {
    Exact,
    /// Lower bound from `directions` grid points of mesh `mesh`.
    Sampled { directions: usize, mesh: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeometryReport {
    pub c: f64,
    pub d: f64,
    pub r0: f64,
    /// `None` when `4kC − 4 ≤ 0`.
    pub r: Option<f64>,
    pub k: usize,
    pub method: Method,
}

impl GeometryReport {
    /// `ε(r) = C − D²/2r`.
    pub fn epsilon(&self, r: f64) -> f64 {
        self.c - self.d * self.d / (2.0 * r)
    }

    pub fn to_json(&self) -> Value {
        let r = match self.r {
            Some(r) => json!(r.to_string()),
            None => json!("undefined"),
        };
        let mut v = json!({
            "C": self.c.to_string(),
            "D": self.d.to_string(),
            "r0": self.r0.to_string(),
            "R": r,
            "k": self.k,
            "method": self.method,
        });
        if self.r.is_none() {
            v["R_diagnostic"] = json!(format!(
                "4kC - 4 = {} <= 0; supply a datum with larger C, e.g. powers of its elements",
                4.0 * self.k as f64 * self.c - 4.0
            ));
        }
        v
    }
}

/// `θ(supp λ)` on the first `k` coordinates, one set per element.
pub fn support_sets(lambda: &TamenessDatum, k: usize) -> Result<Vec<Vec<Vec<f64>>>> {
    lambda
        .all()
        .map(|l| {
            if l.is_zero() {
                return Err(Error::Invalid("Λ contains zero".into()));
            }
            let mut set: Vec<Vec<f64>> = Vec::new();
            for t in l.terms() {
                let y: Vec<f64> = t.mono.exps[..k]
                    .iter()
                    .map(|e| e.to_f64().unwrap_or(f64::NAN))
                    .collect();
                if !set.contains(&y) {
                    set.push(y);
                }
            }
            Ok(set)
        })
        .collect()
}

fn dot(u: &[f64], y: &[f64]) -> f64 {
    u.iter().zip(y).map(|(a, b)| a * b).sum()
}

fn norm(y: &[f64]) -> f64 {
    dot(y, y).sqrt()
}

/// `f(u) = max_λ min_{y ∈ supp λ} ⟨u, y⟩`, `-∞` for empty `Λ`.
pub fn support_function(sets: &[Vec<Vec<f64>>], u: &[f64]) -> f64 {
    sets.iter()
        .map(|s| s.iter().map(|y| dot(u, y)).fold(f64::INFINITY, f64::min))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Unit directions for a grid of refinement `level` and its mesh.
fn directions(k: usize, level: u32) -> (Vec<Vec<f64>>, f64) {
    if k == 1 {
        return (vec![vec![1.0], vec![-1.0]], 0.0);
    }
    if k == 2 {
        let n = 8usize << level;
        let dirs = (0..n)
            .map(|i| {
                let a = std::f64::consts::TAU * i as f64 / n as f64;
                vec![a.cos(), a.sin()]
            })
            .collect();
        return (dirs, 2.0 * (std::f64::consts::PI / (2.0 * n as f64)).sin());
    }
    // Grid on the surface of the cube [-1,1]^k, projected radially.
    let g = 2usize << level;
    let mut dirs = Vec::new();
    let steps: Vec<f64> = (0..=g).map(|i| -1.0 + 2.0 * i as f64 / g as f64).collect();
    for face in 0..k {
        for sign in [-1.0, 1.0] {
            let mut idx = vec![0usize; k - 1];
            loop {
                let mut p = Vec::with_capacity(k);
                let mut it = idx.iter();
                for c in 0..k {
                    if c == face {
                        p.push(sign);
                    } else {
                        p.push(steps[*it.next().expect("k-1 indices")]);
                    }
                }
                let n = norm(&p);
                dirs.push(p.into_iter().map(|x| x / n).collect());
                let mut c = 0;
                while c < k - 1 {
                    idx[c] += 1;
                    if idx[c] <= g {
                        break;
                    }
                    idx[c] = 0;
                    c += 1;
                }
                if c == k - 1 {
                    break;
                }
            }
        }
    }
    (dirs, ((k - 1) as f64).sqrt() / g as f64)
}

const MAX_LEVEL: u32 = 12;

fn violation(u: &[f64], value: f64) -> Error {
    Error::TamenessViolation {
        direction: u.to_vec(),
        value,
    }
}

/// Lower bound for `C` and the grid it came from.
fn lower_bound_c(sets: &[Vec<Vec<f64>>], k: usize) -> Result<(f64, Method)> {
    let mut prev: Option<f64> = None;
    let lip = sets
        .iter()
        .flatten()
        .map(|y| norm(y))
        .fold(0.0, f64::max);
    let max_level = match k {
        1 => 0,
        2 => MAX_LEVEL,
        3 => 6,
        _ => 3,
    };
    for level in 0..=max_level {
        let (dirs, mesh) = directions(k, level);
        let mut best = f64::INFINITY;
        for u in &dirs {
            let v = support_function(sets, u);
            if v <= 0.0 {
                return Err(violation(u, v));
            }
            best = best.min(v);
        }
        if k == 1 {
            return Ok((best, Method::Exact));
        }
        let low = best - lip * mesh;
        let method = Method::Sampled {
            directions: dirs.len(),
            mesh,
        };
        if let Some(p) = prev {
            if low > 0.0 && (low - p).abs() <= 0.01 * low {
                return Ok((low, method));
            }
        }
        if level == max_level {
            if low > 0.0 {
                return Ok((low, method));
            }
            return Err(Error::Invalid(format!(
                "grid of mesh {mesh} cannot certify C > 0 (sampled minimum {best})"
            )));
        }
        prev = Some(low);
    }
    unreachable!("loop returns at max level")
}

/// Computes `C`, `D`, `r₀` and `R` for `Λ` over `k` free generators.
pub fn geometry_constants(lambda: &TamenessDatum, k: usize) -> Result<GeometryReport> {
    if k == 0 {
        return Err(Error::Invalid("constants need k ≥ 1".into()));
    }
    let sets = support_sets(lambda, k)?;
    if sets.is_empty() {
        let mut u = vec![0.0; k];
        u[0] = 1.0;
        return Err(violation(&u, f64::NEG_INFINITY));
    }
    let (c, method) = lower_bound_c(&sets, k)?;
    let d = sets
        .iter()
        .map(|s| s.iter().map(|y| norm(y)).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max);
    let r0 = d * d / (2.0 * c);
    let kf = k as f64;
    let denom = 4.0 * kf * c - 4.0;
    let r = (denom > 0.0).then(|| 2.0 * kf * r0.max(d).max(d * d / denom));
    Ok(GeometryReport {
        c,
        d,
        r0,
        r,
        k,
        method,
    })
}

/// Outcome of [`tameness_check`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TamenessVerdict {
    pub tame: bool,
    /// `true` only for `k = 1`.
    pub exact: bool,
    pub directions: usize,
    pub mesh: f64,
    /// A direction where `f ≤ 0`, if one was found.
    pub witness: Option<Vec<f64>>,
}

/// Checks that every direction `u` has some `λ` with `⟨u, y⟩ > 0` on all of
/// `supp λ`. Exact for `k = 1`, a grid verdict otherwise.
pub fn tameness_check(lambda: &TamenessDatum, k: usize) -> Result<TamenessVerdict> {
    let sets = support_sets(lambda, k)?;
    let level = if k == 2 { 6 } else { 2 };
    let (dirs, mesh) = directions(k.max(1), if k == 1 { 0 } else { level });
    let witness = dirs
        .iter()
        .find(|u| support_function(&sets, u) <= 0.0)
        .cloned();
    Ok(TamenessVerdict {
        tame: witness.is_none(),
        exact: k == 1,
        directions: dirs.len(),
        mesh,
        witness,
    })
}

/// `K = max(K₁, K₂^{2k})` with `K₂ = max_λ Σ|λ(u)| + 2`; an empty datum
/// gives `K₂ = 2`.
pub fn k_constant(lambda: Option<&TamenessDatum>, k: usize, k1: u64) -> Magnitude {
    let k2: BigInt = lambda
        .and_then(|l| l.all().map(RingElement::length).max())
        .unwrap_or_default()
        + 2;
    let k2 = Magnitude::Exact(k2.to_biguint().unwrap_or_else(|| BigUint::from(2u32)));
    let pow = k2.pow_u64(2 * k as u64);
    let k1 = Magnitude::from_u64(k1);
    if k1 > pow {
        k1
    } else {
        pow
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_ring;

    fn datum(c: &[&str], cc: &[&str], vars: &[&str]) -> TamenessDatum {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let p = |v: &[&str]| v.iter().map(|s| parse_ring(s, &vars).unwrap()).collect();
        TamenessDatum {
            centralizer: p(c),
            co_centralizer: p(cc),
        }
    }

    #[test]
    fn bs_constants() {
        let g = geometry_constants(&datum(&["2*t^-1"], &["2*t"], &["t"]), 1).unwrap();
        assert_eq!((g.c, g.d, g.r0, g.r), (1.0, 1.0, 0.5, None));
        assert_eq!(g.method, Method::Exact);
        assert!((g.epsilon(2.0) - 0.75).abs() < 1e-12);
    }

    #[test]
    fn dilated_supports() {
        let g = geometry_constants(&datum(&["3*t^-2"], &["3*t^2"], &["t"]), 1).unwrap();
        assert_eq!((g.c, g.d), (2.0, 2.0));
        assert_eq!(g.r, Some(2.0 * 2.0_f64.max(1.0).max(4.0 / 4.0)));
    }

    #[test]
    fn violations() {
        let e = geometry_constants(&datum(&["5"], &[], &["t"]), 1).unwrap_err();
        assert!(matches!(e, Error::TamenessViolation { .. }));
        let v = tameness_check(&datum(&["t - 1"], &[], &["t"]), 1).unwrap();
        assert!(!v.tame);
        assert_eq!(v.witness, Some(vec![1.0]));
        assert!(!tameness_check(&datum(&[], &[], &["t"]), 1).unwrap().tame);
        assert!(tameness_check(&datum(&["2*t^-1"], &["2*t"], &["t"]), 1).unwrap().tame);
    }

    #[test]
    fn square_lattice_in_two_dimensions() {
        let g = geometry_constants(&datum(&["x", "x^-1", "y", "y^-1"], &[], &["x", "y"]), 2).unwrap();
        // f(u) = max |uᵢ| ≥ 1/√2 with equality on the diagonals.
        assert!(g.c <= std::f64::consts::FRAC_1_SQRT_2 + 1e-12);
        assert!(g.c > 0.69);
        assert_eq!(g.d, 1.0);
    }

    #[test]
    fn cube_grid_in_three_dimensions() {
        let g = geometry_constants(
            &datum(&["x", "x^-1", "y", "y^-1", "z", "z^-1"], &[], &["x", "y", "z"]),
            3,
        )
        .unwrap();
        assert!(g.c <= 1.0 / 3.0_f64.sqrt() + 1e-12);
        assert!(g.c > 0.5);
    }

    #[test]
    fn k_constant_examples() {
        let d = datum(&["2*t^-1"], &["2*t"], &["t"]);
        assert_eq!(k_constant(Some(&d), 1, 1), Magnitude::from_u64(16));
        assert_eq!(k_constant(None, 2, 1), Magnitude::from_u64(16));
        assert_eq!(k_constant(Some(&d), 1, 100), Magnitude::from_u64(100));
    }
}
