//! Cohomology rings of real quadrics: presentations, the additive model with
//! its products, per-bidegree group queries and the verification paths.

pub mod checks;
pub mod interior;
pub mod model;
pub mod theorem_a;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;
use thiserror::Error;

use crate::bigraded_core::{BiDegree, FgAbGroup};
use crate::ideals::{chow_ideal, i_odd, j_generators, j_ideal, jbar, quotient_at, split_parity, Ideal, IdealError};
use crate::poly::{Algebra, Poly, PolyError};

pub use model::{BasisClass, ModelPiece, ModelRing, QClass};
pub use theorem_a::{verify_theorem_a, IdealReading, TheoremAReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuadricError {
    #[error("need n >= 1 and 0 <= 2s <= n, got n={n}, s={s}")]
    Params { n: i32, s: i32 },
    #[error("degree error: {0}")]
    Degree(String),
    #[error("bad class: {0}")]
    Class(String),
    #[error("generator `{name}` has degree {degree}, expected (2k,k)")]
    GeneratorDegree { name: String, degree: BiDegree },
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Ring the presentation is taken over.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseRing {
    Z,
    /// `Z[τ,τ⁻¹]`.
    ZTau,
    A,
    B,
    /// `𝓑_s ⊗ Λ(η)`.
    BsEta(i32),
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseRing::Z => write!(f, "Z"),
            BaseRing::ZTau => write!(f, "Z[t,t^-1]"),
            BaseRing::A => write!(f, "A"),
            BaseRing::B => write!(f, "B"),
            BaseRing::BsEta(s) => write!(f, "B_{s}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub name: String,
    pub degree: BiDegree,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub base: BaseRing,
    pub generators: Vec<Generator>,
    pub relations: Vec<String>,
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<&str> = self.generators.iter().filter(|g| g.name != "eta").map(|g| g.name.as_str()).collect();
        write!(f, "{}", self.base)?;
        if !gens.is_empty() {
            write!(f, "[{}]", gens.join(","))?;
        }
        if self.generators.iter().any(|g| g.name == "eta") {
            write!(f, " (x) E(eta)")?;
        }
        if !self.relations.is_empty() {
            write!(f, "/({})", self.relations.join(", "))?;
        }
        Ok(())
    }
}

fn gen(name: &str, p: i32, q: i32) -> Generator {
    Generator { name: name.into(), degree: BiDegree::new(p, q) }
}

fn check_params(n: i32, s: i32) -> Result<(), QuadricError> {
    if n < 1 || s < 0 || 2 * s > n {
        Err(QuadricError::Params { n, s })
    } else {
        Ok(())
    }
}

fn wrap(s: &str) -> String {
    if s.contains(['+', ' ']) || s.starts_with('-') {
        format!("({s})")
    } else {
        s.to_string()
    }
}

fn h_power_str(k: i32) -> String {
    match k {
        0 => "1".into(),
        1 => "h".into(),
        _ => format!("h^{k}"),
    }
}

/// The ring presentation for `(n, s)`: the anisotropic forms for `s = 0`,
/// otherwise `𝓑_s[h,x,y] ⊗ Λ(η)` modulo the isotropic ideal.
pub fn presentation(n: i32, s: i32) -> Result<Presentation, QuadricError> {
    check_params(n, s)?;
    let (m, d) = split_parity(n);
    if s == 0 {
        return Ok(if d == 1 {
            Presentation { base: BaseRing::A, generators: vec![gen("h", 2, 1)], relations: i_odd(m)?.generator_strings() }
        } else {
            Presentation {
                base: BaseRing::A,
                generators: vec![gen("h", 2, 1), gen("x", n, -1)],
                relations: j_ideal(n)?.generator_strings(),
            }
        });
    }
    let k = n - 2 * s;
    let hs = h_power_str(s);
    let alg = Algebra::a_hx(k);
    let mut relations: Vec<String> =
        j_generators(&alg, k).iter().filter(|g| !g.is_zero()).map(|g| format!("{hs}*{}", wrap(&g.to_string()))).collect();
    relations.push(format!("{hs}*(t*y - 1)"));
    relations.push(format!("{hs}*eta"));
    relations.push(format!("{} - 2*eta", h_power_str(n - s + 1)));
    let e = n - s + 1;
    Ok(Presentation {
        base: BaseRing::BsEta(s),
        generators: vec![gen("h", 2, 1), gen("x", k, -1), gen("y", 0, -2), gen("eta", 2 * e, e)],
        relations,
    })
}

type RingCache = Mutex<HashMap<(i32, i32), Arc<ModelRing>>>;

/// Shared model ring for `(n, s)`.
pub fn ring(n: i32, s: i32) -> Result<Arc<ModelRing>, QuadricError> {
    static CACHE: OnceLock<RingCache> = OnceLock::new();
    check_params(n, s)?;
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(r) = cache.lock().expect("ring cache").get(&(n, s)) {
        return Ok(r.clone());
    }
    let r = Arc::new(ModelRing::new(n, s)?);
    Ok(cache.lock().expect("ring cache").entry((n, s)).or_insert(r).clone())
}

pub fn cohomology_group(n: i32, s: i32, p: i32, q: i32) -> Result<FgAbGroup, QuadricError> {
    ring(n, s)?.group(BiDegree::new(p, q))
}

/// Product of two classes given as strings, e.g. `h^2`, `eta*h`, `int:e*t^-1*x`.
pub fn multiply(n: i32, s: i32, a: &str, b: &str) -> Result<QClass, QuadricError> {
    let r = ring(n, s)?;
    let (x, y) = (r.parse_class(a)?, r.parse_class(b)?);
    r.multiply(&x, &y)
}

/// Generators of the torsion-free quotient, as an ideal of `Z[τ,τ⁻¹,h(,χ)]`.
pub fn free_quotient_ideal(n: i32) -> Result<Ideal, QuadricError> {
    check_params(n, 0)?;
    let (m, d) = split_parity(n);
    if d == 1 {
        let alg = Algebra::free_h();
        let h = Poly::v(&alg, "h");
        return Ok(Ideal::new(format!("F_{n}"), &alg, vec![h.pow((2 * m) as u32)])?);
    }
    let alg = Algebra::free_h_chi(m);
    let (t, h, chi) = (Poly::v(&alg, "t"), Poly::v(&alg, "h"), Poly::v(&alg, "chi"));
    let sgn = if m % 2 == 0 { 1 } else { -1 };
    let g3 = &(&t.pow((m + 1) as u32) * &chi.pow(2)) - &h.pow((2 * m) as u32).scale(sgn);
    Ok(Ideal::new(format!("F_{n}"), &alg, vec![h.pow((2 * m + 1) as u32), &h * &chi, g3])?)
}

/// The ring modulo torsion of the anisotropic quadric of dimension `n`.
pub fn free_quotient(n: i32) -> Result<Presentation, QuadricError> {
    let ideal = free_quotient_ideal(n)?;
    let (m, d) = split_parity(n);
    let mut generators = vec![gen("h", 2, 1)];
    if d == 0 {
        generators.push(gen("chi", 2 * m, -1));
    }
    Ok(Presentation { base: BaseRing::ZTau, generators, relations: ideal.generator_strings() })
}

/// `F₂`-dimension of the mod-2 cohomology of the anisotropic quadric at `(p, q)`.
pub fn grassmannian_mod2(n: i32, p: i32, q: i32) -> Result<usize, QuadricError> {
    let g = quotient_at(&jbar(n)?, BiDegree::new(p, q))?;
    Ok(g.twos())
}

/// `CH*(Q_n)` over `Z`, generated by `h` and the half-dimensional class `phi`.
pub fn chow_presentation(n: i32) -> Result<Presentation, QuadricError> {
    check_params(n, 0)?;
    let (m, _) = split_parity(n);
    Ok(Presentation {
        base: BaseRing::Z,
        generators: vec![gen("h", 2, 1), gen("phi", 2 * m, m)],
        relations: chow_ideal(n)?.generator_strings(),
    })
}

/// `CH*(P^k) = Z[h]/(h^{k+1})`.
pub fn projective_chow(k: i32) -> Presentation {
    if k == 0 {
        return Presentation { base: BaseRing::Z, generators: vec![], relations: vec![] };
    }
    Presentation { base: BaseRing::Z, generators: vec![gen("h", 2, 1)], relations: vec![h_power_str(k + 1)] }
}

/// Re-bases a Chow ring presentation over `𝓑`.
pub fn cellular_ring(chow: &Presentation) -> Result<Presentation, QuadricError> {
    for g in &chow.generators {
        if g.degree.p != 2 * g.degree.q {
            return Err(QuadricError::GeneratorDegree { name: g.name.clone(), degree: g.degree });
        }
    }
    Ok(Presentation { base: BaseRing::B, generators: chow.generators.clone(), relations: chow.relations.clone() })
}

#[cfg(test)]
mod tests;
