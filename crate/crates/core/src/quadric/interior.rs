//! The anisotropic ring `𝓐[h,x]/J_k` that sits inside an isotropic quadric,
//! with per-bidegree quotient pieces cached up to the `τ`-shift.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::bigraded_core::{BiDegree, FgAbGroup, Matrix};
use crate::coeff_rings::{b_to_a, BElem};
use crate::ideals::{j_ideal, split_parity, Ideal, QuotientPiece};
use crate::poly::{f_bold_in, Algebra, AlgebraRef, CoeffTag, Poly, VarSpec};

use super::QuadricError;

const E: usize = 0;
const T: usize = 1;
const H: usize = 2;
const X: usize = 3;

pub struct InteriorRing {
    /// Dimension `k` of the interior quadric.
    pub dim: i32,
    pub alg: AlgebraRef,
    ideal: Option<Ideal>,
    cache: Mutex<HashMap<(i32, i32), Arc<QuotientPiece>>>,
}

/// `𝓐[h,x]` with `deg x = (0,-1)`; the zero-dimensional interior lives here.
fn edge_algebra() -> AlgebraRef {
    let v = |name: &str, p, q, laurent| VarSpec { name: name.into(), degree: BiDegree::new(p, q), laurent };
    Algebra::new(
        "A[h,x_0]",
        CoeffTag::ZEps(0),
        vec![v("e", 1, 1, false), v("t", 0, 2, true), v("h", 2, 1, false), v("x", 0, -1, false)],
    )
}

fn shift(p: &Poly, k: i32) -> Poly {
    if k == 0 {
        return p.clone();
    }
    Poly::from_terms(
        &p.alg,
        p.terms.iter().map(|(e, c)| {
            let mut e = e.clone();
            e[T] += k;
            (e, c.clone())
        }),
    )
}

impl InteriorRing {
    pub fn new(dim: i32) -> Result<Self, QuadricError> {
        let (alg, ideal) = if dim == 0 {
            (edge_algebra(), None)
        } else {
            let j = j_ideal(dim)?;
            (j.alg.clone(), Some(j))
        };
        Ok(InteriorRing { dim, alg, ideal, cache: Mutex::new(HashMap::new()) })
    }

    pub fn ideal(&self) -> Option<&Ideal> {
        self.ideal.as_ref()
    }

    pub fn is_edge(&self) -> bool {
        self.ideal.is_none()
    }

    /// Quotient piece at `(p, q mod 2)` and the `τ`-exponent shift back to `q`.
    fn base(&self, d: BiDegree) -> Result<(Arc<QuotientPiece>, i32), QuadricError> {
        let ideal = self.ideal.as_ref().expect("not the edge ring");
        let q0 = d.q.rem_euclid(2);
        let k = (d.q - q0) / 2;
        let key = (d.p, q0);
        if let Some(qp) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok((qp.clone(), k));
        }
        let qp = Arc::new(QuotientPiece::new(ideal, BiDegree::new(d.p, q0))?);
        self.cache.lock().expect("cache lock").entry(key).or_insert_with(|| qp.clone());
        Ok((qp, k))
    }

    /// Monomial basis of the `𝓐[h,x]` piece that carries the quotient at `d`.
    pub fn basis(&self, d: BiDegree) -> Result<Vec<Vec<i32>>, QuadricError> {
        if self.is_edge() {
            return Ok(edge_basis(d));
        }
        let (qp, k) = self.base(d)?;
        Ok(qp.piece.basis.iter().map(|e| shifted_exps(e, k)).collect())
    }

    /// Relation rows (ideal and torsion) in the coordinates of [`Self::basis`].
    pub fn relations(&self, d: BiDegree) -> Result<Matrix, QuadricError> {
        if self.is_edge() {
            return Ok(vec![]);
        }
        Ok(self.base(d)?.0.span.rows.clone())
    }

    pub fn group(&self, d: BiDegree) -> Result<FgAbGroup, QuadricError> {
        if self.is_edge() {
            return Ok(FgAbGroup::free(edge_basis(d).len()));
        }
        Ok(self.base(d)?.0.group.clone())
    }

    /// Monomials whose classes generate the piece.
    pub fn normal_monomials(&self, d: BiDegree) -> Result<Vec<Vec<i32>>, QuadricError> {
        if self.is_edge() {
            return Ok(edge_basis(d));
        }
        let (qp, k) = self.base(d)?;
        Ok(qp.normal_monomials().iter().map(|e| shifted_exps(e, k)).collect())
    }

    /// Coordinates of a polynomial of bidegree `d`.
    pub fn vector(&self, p: &Poly, d: BiDegree) -> Result<Vec<BigInt>, QuadricError> {
        let basis = self.basis(d)?;
        let p = self.normal_form(p)?;
        let mut v = vec![BigInt::zero(); basis.len()];
        for (e, c) in &p.terms {
            let i = basis.iter().position(|b| b == e).ok_or_else(|| QuadricError::Degree(format!("{p} not in degree {d}")))?;
            v[i] += c;
        }
        Ok(v)
    }

    pub fn normal_form(&self, p: &Poly) -> Result<Poly, QuadricError> {
        if self.is_edge() {
            return Ok(edge_reduce(p, true));
        }
        let mut out = Poly::zero(&self.alg);
        for (d, comp) in p.components() {
            let (qp, k) = self.base(d)?;
            out = &out + &shift(&qp.normal_form(&shift(&comp, -k))?, k);
        }
        Ok(out)
    }

    /// Representative `Σ c_i h^i + Σ N τ^b x` with `i ≤ dim` and integer `N`:
    /// `x` only to the first power and without `ε`, so that products and
    /// powers of `𝐡` can be read off term by term.
    pub fn canonical(&self, p: &Poly) -> Result<Poly, QuadricError> {
        if self.is_edge() {
            return Ok(edge_reduce(p, true));
        }
        let (m, d) = split_parity(self.dim);
        let alg = &self.alg;
        let settled = |e: &[i32]| if e[X] == 0 { e[H] <= self.dim } else { d == 0 && e[X] == 1 && e[H] == 0 && e[E] == 0 };
        let mut work = p.clone();
        while !work.terms.keys().all(|e| settled(e)) {
            let mut out = Poly::zero(alg);
            for (e, c) in &work.terms {
                let (a, b, i, k) = (e[E], e[T], e[H], e[X]);
                let term = if settled(e) {
                    Poly::monomial(alg, e.clone(), c.clone())
                } else if k == 0 || (d == 0 && i > 0) {
                    // h^{dim+1} = 0 and hx = 0.
                    Poly::zero(alg)
                } else if d == 1 {
                    // τ^m x = 𝐟_{m-1}.
                    let sub = &Poly::vp(alg, "t", -m) * &f_bold_in(alg, m - 1);
                    &Poly::monomial(alg, vec![a, b, i, 0], c.clone()) * &sub.pow(k as u32)
                } else if k >= 2 {
                    // x² = (-1)^m τ^{-m-1} h^{2m}.
                    let sgn = if m % 2 == 0 { 1 } else { -1 };
                    Poly::monomial(alg, vec![a, b - m - 1, 2 * m, k - 2], c * sgn)
                } else {
                    // ετ^m x = h𝐟_{m-1}.
                    let sub = &Poly::vp(alg, "t", -m) * &f_bold_in(alg, m - 1);
                    &Poly::monomial(alg, vec![a - 1, b, i + 1, 0], c.clone()) * &sub
                };
                out = &out + &term;
            }
            work = out;
        }
        Ok(work)
    }

    /// `π(b)·u` in normal form.
    pub fn act(&self, b: &BElem, u: &Poly) -> Result<Poly, QuadricError> {
        let a = b_to_a(b);
        let pb = Poly::from_terms(&self.alg, a.terms.iter().map(|((x, y), c)| (vec![*x as i32, *y, 0, 0], c.clone())));
        self.normal_form(&(&pb * u))
    }

    pub fn one(&self) -> Poly {
        Poly::one(&self.alg)
    }

    pub fn parse(&self, s: &str) -> Result<Poly, QuadricError> {
        let p = Poly::parse(&self.alg, s)?;
        self.normal_form(&p)
    }
}

fn shifted_exps(e: &[i32], k: i32) -> Vec<i32> {
    let mut e = e.to_vec();
    e[T] += k;
    e
}

/// Basis of `Z[τ^±, x]/(τx² - 1)` at `d`: `τ^b` or `τ^b x` in `p = 0`.
fn edge_basis(d: BiDegree) -> Vec<Vec<i32>> {
    if d.p != 0 {
        return vec![];
    }
    if d.q.rem_euclid(2) == 0 {
        vec![vec![0, d.q / 2, 0, 0]]
    } else {
        vec![vec![0, (d.q + 1) / 2, 0, 1]]
    }
}

/// `x² → τ^{-1}`; with `kill`, also `ε → 0` and `h → 0`.
pub(crate) fn edge_reduce(p: &Poly, kill: bool) -> Poly {
    Poly::from_terms(
        &p.alg,
        p.terms.iter().filter_map(|(e, c)| {
            if kill && (e[E] > 0 || e[H] > 0) {
                return None;
            }
            let k = e[X];
            Some((vec![e[E], e[T] - k.div_euclid(2), e[H], k.rem_euclid(2)], c.clone()))
        }),
    )
}

/// A single integral coefficient `N τ^b` as an element of `𝓑` after doubling:
/// `2Nτ^b`, which is `N·τ^{b+1}α` when `b < 0`.
pub(crate) fn doubled_tau_power(n: &BigInt, b: i32) -> BElem {
    use crate::coeff_rings::BMono;
    if b >= 0 {
        BElem::monomial(n * 2, BMono::Pos { a: 0, b: b as u32 })
    } else {
        BElem::monomial(n.clone(), BMono::Alpha { j: (-b - 1) as u32 })
    }
}
