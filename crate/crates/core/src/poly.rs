//! Bigraded polynomial algebras with per-variable bidegrees, at most one
//! Laurent variable, and coefficients in `Z`, `ℵ`-style `Z` with a
//! 2-torsion `ε`, or `F₂`. Also the recursive families `F_m`, `𝐟_m`, `f̄_n`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::bigraded_core::BiDegree;
use crate::coeff_rings::{format_terms, parse_raw_terms, power_str, ParseError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("algebra mismatch: `{0}` vs `{1}`")]
    AlgebraMismatch(String, String),
    #[error("unknown variable `{0}` in algebra `{1}`")]
    UnknownVariable(String, String),
    #[error("negative exponent on non-Laurent variable `{0}`")]
    NegativeExponent(String),
    #[error("bidegree pieces of `{0}` are not finite")]
    InfinitePiece(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CoeffTag {
    Z,
    /// Integers, with every monomial divisible by the variable at this index 2-torsion.
    ZEps(usize),
    F2,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct VarSpec {
    pub name: String,
    pub degree: BiDegree,
    pub laurent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Algebra {
    pub name: String,
    pub coeff: CoeffTag,
    pub vars: Vec<VarSpec>,
}

pub type AlgebraRef = Arc<Algebra>;

fn var(name: &str, p: i32, q: i32) -> VarSpec {
    VarSpec { name: name.into(), degree: BiDegree::new(p, q), laurent: false }
}

fn laurent(name: &str, p: i32, q: i32) -> VarSpec {
    VarSpec { name: name.into(), degree: BiDegree::new(p, q), laurent: true }
}

impl Algebra {
    pub fn new(name: impl Into<String>, coeff: CoeffTag, vars: Vec<VarSpec>) -> AlgebraRef {
        Arc::new(Algebra { name: name.into(), coeff, vars })
    }

    /// `𝓐[h,x]` with `deg x = (n,-1)`.
    pub fn a_hx(n: i32) -> AlgebraRef {
        Self::new(
            format!("A[h,x_{n}]"),
            CoeffTag::ZEps(0),
            vec![var("e", 1, 1), laurent("t", 0, 2), var("h", 2, 1), var("x", n, -1)],
        )
    }

    /// `𝓐[h]`.
    pub fn a_h() -> AlgebraRef {
        Self::new("A[h]", CoeffTag::ZEps(0), vec![var("e", 1, 1), laurent("t", 0, 2), var("h", 2, 1)])
    }

    /// `ℵ[ξ,ξ⁻¹,h,x_n]`.
    pub fn r_n(n: i32) -> AlgebraRef {
        Self::new(
            format!("R_{n}"),
            CoeffTag::ZEps(0),
            vec![var("e", 1, 1), laurent("xi", 0, 1), var("h", 2, 1), var("x", n, -1)],
        )
    }

    /// `ℵ[ξ,ξ⁻¹,h]`.
    pub fn aleph_xi_h() -> AlgebraRef {
        Self::new("aleph[xi,h]", CoeffTag::ZEps(0), vec![var("e", 1, 1), laurent("xi", 0, 1), var("h", 2, 1)])
    }

    /// `F₂[ε,ξ,ξ⁻¹,h,x_n]`.
    pub fn f2_r_n(n: i32) -> AlgebraRef {
        Self::new(
            format!("F2[e,xi,h,x_{n}]"),
            CoeffTag::F2,
            vec![var("e", 1, 1), laurent("xi", 0, 1), var("h", 2, 1), var("x", n, -1)],
        )
    }

    /// `F₂[ξ,ξ⁻¹,w₁,w₂,w̄_n]`.
    pub fn f2_w_bar(n: i32) -> AlgebraRef {
        Self::new(
            format!("F2[xi,w1,w2,wn_{n}]"),
            CoeffTag::F2,
            vec![laurent("xi", 0, 1), var("w1", 1, 0), var("w2", 2, 0), var("wn", n, 0)],
        )
    }

    /// `F₂[ξ,ξ⁻¹,w₁,w₂]`.
    pub fn f2_w() -> AlgebraRef {
        Self::new("F2[xi,w1,w2]", CoeffTag::F2, vec![laurent("xi", 0, 1), var("w1", 1, 0), var("w2", 2, 0)])
    }

    /// `F₂[w₁,w₂]`.
    pub fn f2_grass() -> AlgebraRef {
        Self::new("F2[w1,w2]", CoeffTag::F2, vec![var("w1", 1, 0), var("w2", 2, 0)])
    }

    /// `Z[ξ,ξ⁻¹,h,φ]` with `deg φ = (2m, m)`.
    pub fn chow_xi(m: i32) -> AlgebraRef {
        Self::new(
            format!("Z[xi,h,phi_{m}]"),
            CoeffTag::Z,
            vec![laurent("xi", 0, 1), var("h", 2, 1), var("phi", 2 * m, m)],
        )
    }

    /// `Z[τ,τ⁻¹,h]`.
    pub fn free_h() -> AlgebraRef {
        Self::new("Z[t,h]", CoeffTag::Z, vec![laurent("t", 0, 2), var("h", 2, 1)])
    }

    /// `Z[τ,τ⁻¹,h,χ]` with `deg χ = (2m,-1)`.
    pub fn free_h_chi(m: i32) -> AlgebraRef {
        Self::new(
            format!("Z[t,h,chi_{m}]"),
            CoeffTag::Z,
            vec![laurent("t", 0, 2), var("h", 2, 1), var("chi", 2 * m, -1)],
        )
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn is_torsion_monomial(&self, exps: &[i32]) -> bool {
        match self.coeff {
            CoeffTag::Z => false,
            CoeffTag::ZEps(e) => exps[e] > 0,
            CoeffTag::F2 => true,
        }
    }

    pub fn monomial_degree(&self, exps: &[i32]) -> BiDegree {
        self.vars
            .iter()
            .zip(exps)
            .fold(BiDegree::ZERO, |acc, (v, &e)| acc + v.degree.scale(e))
    }

    fn laurent_index(&self) -> Result<Option<usize>, PolyError> {
        let mut found = None;
        for (i, v) in self.vars.iter().enumerate() {
            if v.laurent {
                if found.is_some() || v.degree.p != 0 || v.degree.q == 0 {
                    return Err(PolyError::InfinitePiece(self.name.clone()));
                }
                found = Some(i);
            } else if v.degree.p <= 0 {
                return Err(PolyError::InfinitePiece(self.name.clone()));
            }
        }
        Ok(found)
    }

    /// All monomials of bidegree `d`, in a fixed deterministic order.
    pub fn monomials_at(&self, d: BiDegree) -> Result<Vec<Vec<i32>>, PolyError> {
        let lau = self.laurent_index()?;
        let mut out = Vec::new();
        if d.p < 0 {
            return Ok(out);
        }
        let others: Vec<usize> = (0..self.nvars()).filter(|&i| Some(i) != lau).collect();
        let mut exps = vec![0i32; self.nvars()];
        self.enumerate(&others, 0, d.p, d.q, lau, &mut exps, &mut out);
        out.sort_by(|a, b| b.cmp(a));
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn enumerate(
        &self,
        others: &[usize],
        pos: usize,
        p_left: i32,
        q_left: i32,
        lau: Option<usize>,
        exps: &mut Vec<i32>,
        out: &mut Vec<Vec<i32>>,
    ) {
        if pos == others.len() {
            if p_left != 0 {
                return;
            }
            match lau {
                Some(l) => {
                    let ql = self.vars[l].degree.q;
                    if q_left % ql == 0 {
                        exps[l] = q_left / ql;
                        out.push(exps.clone());
                        exps[l] = 0;
                    }
                }
                None => {
                    if q_left == 0 {
                        out.push(exps.clone());
                    }
                }
            }
            return;
        }
        let i = others[pos];
        let dv = self.vars[i].degree;
        let mut k = 0;
        while k * dv.p <= p_left {
            exps[i] = k;
            self.enumerate(others, pos + 1, p_left - k * dv.p, q_left - k * dv.q, lau, exps, out);
            k += 1;
        }
        exps[i] = 0;
    }

    pub fn monomial_string(&self, exps: &[i32]) -> String {
        let parts: Vec<String> = self
            .vars
            .iter()
            .zip(exps)
            .filter_map(|(v, &e)| power_str(&v.name, e as i64))
            .collect();
        parts.join("*")
    }
}

/// A polynomial in a declared algebra; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    pub alg: AlgebraRef,
    pub terms: BTreeMap<Vec<i32>, BigInt>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.alg.name, self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Highest monomials first reads naturally (e.g. `e^2 + xi*h`).
        let s = format_terms(self.terms.iter().rev().map(|(e, c)| (c, self.alg.monomial_string(e))));
        write!(f, "{s}")
    }
}

impl Poly {
    pub fn zero(alg: &AlgebraRef) -> Poly {
        Poly { alg: alg.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(alg: &AlgebraRef, c: impl Into<BigInt>) -> Poly {
        Poly::monomial(alg, vec![0; alg.nvars()], c)
    }

    pub fn one(alg: &AlgebraRef) -> Poly {
        Poly::constant(alg, 1)
    }

    pub fn monomial(alg: &AlgebraRef, exps: Vec<i32>, c: impl Into<BigInt>) -> Poly {
        Poly::from_terms(alg, [(exps, c.into())])
    }

    /// The variable `name` raised to `e` (negative only for the Laurent variable).
    pub fn var_pow(alg: &AlgebraRef, name: &str, e: i32) -> Result<Poly, PolyError> {
        let i = alg
            .index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.into(), alg.name.clone()))?;
        if e < 0 && !alg.vars[i].laurent {
            return Err(PolyError::NegativeExponent(name.into()));
        }
        let mut exps = vec![0; alg.nvars()];
        exps[i] = e;
        Ok(Poly::monomial(alg, exps, 1))
    }

    /// Like [`Poly::var_pow`] with exponent one; panics on an unknown name.
    pub fn v(alg: &AlgebraRef, name: &str) -> Poly {
        Poly::var_pow(alg, name, 1).expect("variable declared in algebra")
    }

    pub fn vp(alg: &AlgebraRef, name: &str, e: i32) -> Poly {
        Poly::var_pow(alg, name, e).expect("variable declared in algebra")
    }

    pub fn from_terms(alg: &AlgebraRef, terms: impl IntoIterator<Item = (Vec<i32>, BigInt)>) -> Poly {
        let mut acc: BTreeMap<Vec<i32>, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            if c.is_zero() {
                continue;
            }
            *acc.entry(e).or_default() += c;
        }
        let two = BigInt::from(2);
        let terms = acc
            .into_iter()
            .map(|(e, c)| {
                let c = if alg.is_torsion_monomial(&e) { c.mod_floor(&two) } else { c };
                (e, c)
            })
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Poly { alg: alg.clone(), terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, other: &Poly) -> Result<(), PolyError> {
        if Arc::ptr_eq(&self.alg, &other.alg) || self.alg == other.alg {
            Ok(())
        } else {
            Err(PolyError::AlgebraMismatch(self.alg.name.clone(), other.alg.name.clone()))
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check(other)?;
        Ok(Poly::from_terms(
            &self.alg,
            self.terms.iter().chain(other.terms.iter()).map(|(e, c)| (e.clone(), c.clone())),
        ))
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check(other)?;
        let mut acc: BTreeMap<Vec<i32>, BigInt> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_default() += c1 * c2;
            }
        }
        Ok(Poly::from_terms(&self.alg, acc))
    }

    pub fn scale(&self, k: impl Into<BigInt>) -> Poly {
        let k = k.into();
        Poly::from_terms(&self.alg, self.terms.iter().map(|(e, c)| (e.clone(), c * &k)))
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one(&self.alg);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = &out * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        out
    }

    /// Bidegree if nonzero and bihomogeneous.
    pub fn degree(&self) -> Option<BiDegree> {
        let mut it = self.terms.keys().map(|e| self.alg.monomial_degree(e));
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    /// Bihomogeneous components, keyed by bidegree.
    pub fn components(&self) -> BTreeMap<BiDegree, Poly> {
        let mut out: BTreeMap<BiDegree, Vec<(Vec<i32>, BigInt)>> = BTreeMap::new();
        for (e, c) in &self.terms {
            out.entry(self.alg.monomial_degree(e)).or_default().push((e.clone(), c.clone()));
        }
        out.into_iter().map(|(d, t)| (d, Poly::from_terms(&self.alg, t))).collect()
    }

    pub fn coefficient(&self, exps: &[i32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn parse(alg: &AlgebraRef, s: &str) -> Result<Poly, PolyError> {
        if s.trim() == "0" {
            return Ok(Poly::zero(alg));
        }
        let mut terms = Vec::new();
        for (c, factors) in parse_raw_terms(s)? {
            let mut exps = vec![0i32; alg.nvars()];
            for (name, e) in factors {
                let i = alg
                    .index_of(&name)
                    .ok_or_else(|| PolyError::UnknownVariable(name.clone(), alg.name.clone()))?;
                exps[i] += e as i32;
            }
            for (i, &e) in exps.iter().enumerate() {
                if e < 0 && !alg.vars[i].laurent {
                    return Err(PolyError::NegativeExponent(alg.vars[i].name.clone()));
                }
            }
            terms.push((exps, c));
        }
        Ok(Poly::from_terms(alg, terms))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        self.try_add(o).expect("polynomials in the same algebra")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self.try_add(&-o).expect("polynomials in the same algebra")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(-1)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        self.try_mul(o).expect("polynomials in the same algebra")
    }
}

pub fn poly_mul(a: &Poly, b: &Poly) -> Result<Poly, PolyError> {
    a.try_mul(b)
}

/// `F_m` by the recursion `F_{m+1} = εF_m + (ξh)F_{m-1}` in any algebra with
/// variables `e`, `xi`, `h`; `F_{-1} = 0`.
pub fn big_f_in(alg: &AlgebraRef, m: i32) -> Poly {
    big_f_family(alg, m.max(0) as usize).swap_remove((m + 1) as usize)
}

/// `[F_{-1}, F_0, …, F_top]`.
pub fn big_f_family(alg: &AlgebraRef, top: usize) -> Vec<Poly> {
    let e = Poly::v(alg, "e");
    let xh = &Poly::v(alg, "xi") * &Poly::v(alg, "h");
    let mut out = vec![Poly::zero(alg), Poly::one(alg)];
    for k in 1..=top {
        let next = &(&e * &out[k]) + &(&xh * &out[k - 1]);
        out.push(next);
    }
    out
}

pub fn big_f(m: i32) -> Poly {
    big_f_in(&Algebra::aleph_xi_h(), m)
}

/// Closed form `Σ_{a+2b=m} C(a+b,b) ε^a ξ^b h^b`.
pub fn big_f_closed(alg: &AlgebraRef, m: i32) -> Poly {
    if m < 0 {
        return Poly::zero(alg);
    }
    let (e, xi, h) = (Poly::v(alg, "e"), Poly::v(alg, "xi"), Poly::v(alg, "h"));
    let mut out = Poly::zero(alg);
    for b in 0..=m / 2 {
        let a = m - 2 * b;
        let c = binomial(BigInt::from(a + b), BigInt::from(b));
        let term = &(&e.pow(a as u32) * &xi.pow(b as u32)) * &h.pow(b as u32);
        out = &out + &term.scale(c);
    }
    out
}

/// `𝐟_m = Σ_{a+2b=m} C(a+b,b) ε^{2a+1} τ^b h^{2b}` in any algebra with `e`, `t`, `h`.
pub fn f_bold_in(alg: &AlgebraRef, m: i32) -> Poly {
    if m < 0 {
        return Poly::zero(alg);
    }
    let (e, t, h) = (Poly::v(alg, "e"), Poly::v(alg, "t"), Poly::v(alg, "h"));
    let mut out = Poly::zero(alg);
    for b in 0..=m / 2 {
        let a = m - 2 * b;
        let c = binomial(BigInt::from(a + b), BigInt::from(b));
        let term = &(&e.pow((2 * a + 1) as u32) * &t.pow(b as u32)) * &h.pow((2 * b) as u32);
        out = &out + &term.scale(c);
    }
    out
}

pub fn f_bold(m: i32) -> Poly {
    f_bold_in(&Algebra::a_h(), m)
}

/// `f̄_n` by `f̄_{n+1} = w₁f̄_n + w₂f̄_{n-1}` in any algebra with `w1`, `w2`; `f̄_{-1} = 0`.
pub fn f_bar_in(alg: &AlgebraRef, n: i32) -> Poly {
    f_bar_family(alg, n.max(0) as usize).swap_remove((n + 1) as usize)
}

/// `[f̄_{-1}, f̄_0, …, f̄_top]`.
pub fn f_bar_family(alg: &AlgebraRef, top: usize) -> Vec<Poly> {
    let w1 = Poly::v(alg, "w1");
    let w2 = Poly::v(alg, "w2");
    let mut out = vec![Poly::zero(alg), Poly::one(alg)];
    for k in 1..=top {
        let next = &(&w1 * &out[k]) + &(&w2 * &out[k - 1]);
        out.push(next);
    }
    out
}

pub fn f_bar(n: i32) -> Poly {
    f_bar_in(&Algebra::f2_grass(), n)
}

/// Substitutes `τ = ξ²` from `𝓐`-side variables `e,t,h` into `e,xi,h`.
pub fn tau_to_xi_squared(p: &Poly, target: &AlgebraRef) -> Poly {
    let src = &p.alg;
    let map: Vec<Option<usize>> = src
        .vars
        .iter()
        .map(|v| target.index_of(if v.name == "t" { "xi" } else { &v.name }))
        .collect();
    Poly::from_terms(
        target,
        p.terms.iter().map(|(e, c)| {
            let mut out = vec![0; target.nvars()];
            for (i, &k) in e.iter().enumerate() {
                let j = map[i].expect("variable present in target");
                out[j] += if src.vars[i].name == "t" { 2 * k } else { k };
            }
            (out, c.clone())
        }),
    )
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaIdReport {
    pub m_max: usize,
    pub series_order: usize,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl LemmaIdReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the closed form and doubling identities for `F_m`, the
/// correspondence `F_{2m+1} ↔ 𝐟_m`, the doubling identities for `f̄_n`, and
/// the generating-function identity `G = (1+p(y))H` through `series_order`.
pub fn verify_lemma_id(m_max: usize, series_order: usize) -> LemmaIdReport {
    let alg = Algebra::aleph_xi_h();
    let a_h = Algebra::a_h();
    let top = (2 * m_max + 1).max(series_order);
    let f = big_f_family(&alg, top);
    let big = |k: i64| -> &Poly { &f[(k + 1) as usize] };
    let e = Poly::v(&alg, "e");
    let xh = &Poly::v(&alg, "xi") * &Poly::v(&alg, "h");
    let mut failures = Vec::new();
    let mut checks = 0;
    for m in 0..=m_max as i64 {
        checks += 4;
        if *big(m) != big_f_closed(&alg, m as i32) {
            failures.push(format!("closed form of F_{m}"));
        }
        let fm2 = big(m) * big(m);
        if *big(2 * m + 1) != &e * &fm2 {
            failures.push(format!("F_{} = e*F_{m}^2", 2 * m + 1));
        }
        let fm1 = big(m - 1) * big(m - 1);
        if *big(2 * m) != &fm2 + &(&xh * &fm1) {
            failures.push(format!("F_{} = F_{m}^2 + xi*h*F_{}^2", 2 * m, m - 1));
        }
        if tau_to_xi_squared(&f_bold_in(&a_h, m as i32), &alg) != *big(2 * m + 1) {
            failures.push(format!("f_{m} maps to F_{}", 2 * m + 1));
        }
    }
    let w = Algebra::f2_grass();
    let fb = f_bar_family(&w, 2 * m_max + 1);
    let bar = |k: i64| -> &Poly { &fb[(k + 1) as usize] };
    let w1 = Poly::v(&w, "w1");
    let w2 = Poly::v(&w, "w2");
    for n in 0..=m_max as i64 {
        checks += 2;
        let sq = bar(n) * bar(n);
        if *bar(2 * n + 1) != &w1 * &sq {
            failures.push(format!("fbar_{} = w1*fbar_{n}^2", 2 * n + 1));
        }
        let sq1 = bar(n - 1) * bar(n - 1);
        if *bar(2 * n) != &sq + &(&w2 * &sq1) {
            failures.push(format!("fbar_{} = fbar_{n}^2 + w2*fbar_{}^2", 2 * n, n - 1));
        }
    }
    // Coefficient of y^N in (1 + εy + ξh y²)·Σ F_k² y^{2k}.
    let sq = |k: i64| -> Poly { big(k) * big(k) };
    for n in 0..=series_order as i64 {
        checks += 1;
        let mut rhs = Poly::zero(&alg);
        if n % 2 == 0 {
            rhs = &rhs + &sq(n / 2);
        }
        if n >= 1 && (n - 1) % 2 == 0 {
            rhs = &rhs + &(&e * &sq((n - 1) / 2));
        }
        if n >= 2 && (n - 2) % 2 == 0 {
            rhs = &rhs + &(&xh * &sq((n - 2) / 2));
        }
        if rhs != *big(n) {
            failures.push(format!("series coefficient y^{n}"));
        }
    }
    LemmaIdReport { m_max, series_order, checks, failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(alg: &AlgebraRef, s: &str) -> Poly {
        Poly::parse(alg, s).unwrap()
    }

    #[test]
    fn small_f_values() {
        let a = Algebra::aleph_xi_h();
        assert_eq!(big_f(0), Poly::one(&a));
        assert_eq!(big_f(2), p(&a, "e^2 + xi*h"));
        assert_eq!(big_f(3), p(&a, "e^3"));
        assert!(big_f(-1).is_zero());
        // One recursion step from F_1 = ε and F_0 = 1.
        let e = Poly::v(&a, "e");
        let xh = p(&a, "xi*h");
        assert_eq!(&(&e * &big_f(1)) + &(&xh * &big_f(0)), big_f(2));
    }

    #[test]
    fn small_f_bold_values() {
        let a = Algebra::a_h();
        assert_eq!(f_bold(0), p(&a, "e"));
        assert_eq!(f_bold(2), p(&a, "e^5 + e*t*h^2"));
        assert_eq!(f_bold(3), p(&a, "e^7"));
        assert_eq!(f_bold(2).degree(), Some(BiDegree::new(5, 5)));
    }

    #[test]
    fn small_f_bar_values() {
        let w = Algebra::f2_grass();
        assert_eq!(f_bar(0), Poly::one(&w));
        assert_eq!(f_bar(2), p(&w, "w1^2 + w2"));
        assert_eq!(f_bar(3), p(&w, "w1^3"));
    }

    #[test]
    fn trivial_products() {
        let a = Algebra::aleph_xi_h();
        let e = Poly::v(&a, "e");
        assert_eq!(&e * &e, p(&a, "e^2"));
        let q = p(&a, "e^2 + xi*h");
        assert_eq!(&q * &Poly::one(&a), q);
        assert!(poly_mul(&e, &Poly::one(&Algebra::a_h())).is_err());
    }

    #[test]
    fn eps_multiples_are_two_torsion() {
        let a = Algebra::a_hx(3);
        assert!(p(&a, "2*e*h").is_zero());
        assert_eq!(p(&a, "3*e + 3*h"), p(&a, "e + 3*h"));
    }

    #[test]
    fn parse_errors() {
        let a = Algebra::a_h();
        assert!(matches!(Poly::parse(&a, "h^-1"), Err(PolyError::NegativeExponent(_))));
        assert!(matches!(Poly::parse(&a, "y"), Err(PolyError::UnknownVariable(..))));
        assert_eq!(p(&a, "t^-2*h"), Poly::vp(&a, "t", -2).try_mul(&Poly::v(&a, "h")).unwrap());
    }

    #[test]
    fn monomial_enumeration() {
        let a = Algebra::a_h();
        // (4,2): e^a t^b h^i with a + 2i = 4 and a + 2b + i = 2; i = 1 needs b = -1/2.
        let ms = a.monomials_at(BiDegree::new(4, 2)).unwrap();
        let strs: Vec<String> = ms.iter().map(|e| a.monomial_string(e)).collect();
        assert_eq!(strs, vec!["e^4*t^-1", "h^2"]);
        let bad = Algebra::new("bad", CoeffTag::Z, vec![var("y", 0, -2)]);
        assert!(bad.monomials_at(BiDegree::new(0, 0)).is_err());
    }

    #[test]
    fn lemma_identities_small() {
        let r = verify_lemma_id(12, 20);
        assert!(r.passed(), "{:?}", r.failures);
    }

    proptest! {
        #[test]
        fn f_is_homogeneous(m in 0i32..40) {
            prop_assert_eq!(big_f(m).degree(), Some(BiDegree::new(m, m)));
        }

        #[test]
        fn f_bold_matches_odd_f(m in 0i32..30) {
            prop_assert_eq!(tau_to_xi_squared(&f_bold(m), &Algebra::aleph_xi_h()), big_f(2 * m + 1));
        }

        #[test]
        fn parse_print_round_trip(c in prop::collection::vec((-3i64..4, 0i32..3, -2i32..3, 0i32..3, 0i32..2), 0..5)) {
            let a = Algebra::a_hx(3);
            let poly = Poly::from_terms(&a, c.into_iter().map(|(k, e, t, h, x)| (vec![e, t, h, x], BigInt::from(k))));
            prop_assert_eq!(Poly::parse(&a, &poly.to_string()).unwrap(), poly);
        }
    }
}
