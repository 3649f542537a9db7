//! Chow ring of the complex quadric of dimension `n = 2m - δ`,
//! `Z[h,φ]/⟨h^{1-δ}(h^m - 2φ), φ² - c_m h^m φ⟩` with `c_m = (1+(-1)^m)/2`,
//! its conjugation action, and restriction along `Q_n ⊂ Q_{n+1}`.
//!
//! Reduced basis in codimension `k`: `h^k` for `k < m`; `h^m, φ` (δ = 0) or
//! `φ` (δ = 1) for `k = m`; `h^{k-m}φ` for `m < k ≤ n`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::bigraded_core::{int_matrix, right_kernel, Matrix};
use crate::ideals::{chow_c, split_parity};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChowError {
    #[error("quadric dimensions differ: {0} vs {1}")]
    DimensionMismatch(i32, i32),
    #[error("codimension {k} out of range for n = {n}")]
    CodimRange { n: i32, k: i32 },
    #[error("quadric dimension must be at least 1, got {0}")]
    BadDimension(i32),
    #[error("matrix is not an involution")]
    NotInvolution,
}

/// `h^a φ^b` with `b ∈ {0,1}` in reduced form.
pub type ChowMono = (u32, u32);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChowElem {
    pub n: i32,
    pub terms: BTreeMap<ChowMono, BigInt>,
}

fn sign(k: i32) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Reduced expansion of `h^a φ^b` for any `b ≥ 0`.
fn reduce_monomial(n: i32, a: u32, b: u32) -> Vec<(ChowMono, BigInt)> {
    let (m, d) = split_parity(n);
    let m = m as u32;
    let codim = a as i32 + (b * m) as i32;
    if codim > n {
        return vec![];
    }
    match b {
        0 => {
            if a < m || (a == m && d == 0) {
                vec![((a, 0), BigInt::one())]
            } else {
                // h^{1-δ}·h^m = 2h^{1-δ}φ, so h^a = 2h^{a-m}φ past the threshold.
                vec![((a - m, 1), BigInt::from(2))]
            }
        }
        1 => vec![((a, 1), BigInt::one())],
        _ => {
            // φ² = c_m h^m φ.
            let c = chow_c(m as i32);
            if c == 0 {
                return vec![];
            }
            reduce_monomial(n, a + m, b - 1)
        }
    }
}

impl ChowElem {
    pub fn zero(n: i32) -> Self {
        ChowElem { n, terms: BTreeMap::new() }
    }

    pub fn from_terms(n: i32, terms: impl IntoIterator<Item = (ChowMono, BigInt)>) -> Self {
        let mut acc: BTreeMap<ChowMono, BigInt> = BTreeMap::new();
        for ((a, b), c) in terms {
            for (mono, k) in reduce_monomial(n, a, b) {
                *acc.entry(mono).or_default() += &c * k;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        ChowElem { n, terms: acc }
    }

    pub fn one(n: i32) -> Self {
        Self::monomial(n, 0, 0)
    }

    pub fn h(n: i32) -> Self {
        Self::monomial(n, 1, 0)
    }

    pub fn phi(n: i32) -> Self {
        Self::monomial(n, 0, 1)
    }

    pub fn monomial(n: i32, a: u32, b: u32) -> Self {
        Self::from_terms(n, [((a, b), BigInt::one())])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &ChowElem) -> ChowElem {
        ChowElem::from_terms(self.n, self.terms.iter().chain(other.terms.iter()).map(|(k, c)| (*k, c.clone())))
    }

    pub fn scale(&self, k: i64) -> ChowElem {
        ChowElem::from_terms(self.n, self.terms.iter().map(|(m, c)| (*m, c * k)))
    }

    pub fn sub(&self, other: &ChowElem) -> ChowElem {
        self.add(&other.scale(-1))
    }
}

impl fmt::Display for ChowElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = crate::coeff_rings::format_terms(self.terms.iter().map(|((a, b), c)| {
            let parts: Vec<String> = [crate::coeff_rings::power_str("h", *a as i64), crate::coeff_rings::power_str("phi", *b as i64)]
                .into_iter()
                .flatten()
                .collect();
            (c, parts.join("*"))
        }));
        write!(f, "{s}")
    }
}

pub fn chow_mul(a: &ChowElem, b: &ChowElem) -> Result<ChowElem, ChowError> {
    if a.n != b.n {
        return Err(ChowError::DimensionMismatch(a.n, b.n));
    }
    Ok(ChowElem::from_terms(
        a.n,
        a.terms
            .iter()
            .flat_map(|((x, y), c)| b.terms.iter().map(move |((u, v), d)| ((x + u, y + v), c * d))),
    ))
}

/// Image of `h^a φ^b` under conjugation, with `σh = h` and
/// `σφ = c_m h^m - (-1)^m φ`.
fn galois_monomial(n: i32, a: u32, b: u32) -> ChowElem {
    let (m, _) = split_parity(n);
    let sphi = ChowElem::monomial(n, m as u32, 0).scale(chow_c(m)).sub(&ChowElem::phi(n).scale(sign(m)));
    let mut out = ChowElem::monomial(n, a, 0);
    for _ in 0..b {
        out = chow_mul(&out, &sphi).expect("same n");
    }
    out
}

pub fn galois(a: &ChowElem) -> ChowElem {
    let mut out = ChowElem::zero(a.n);
    for ((x, y), c) in &a.terms {
        out = out.add(&galois_monomial(a.n, *x, *y).scale_big(c));
    }
    out
}

impl ChowElem {
    fn scale_big(&self, k: &BigInt) -> ChowElem {
        ChowElem::from_terms(self.n, self.terms.iter().map(|(m, c)| (*m, c * k)))
    }
}

/// Reduced basis of codimension `k`.
pub fn chow_basis(n: i32, k: i32) -> Result<Vec<ChowMono>, ChowError> {
    if n < 1 {
        return Err(ChowError::BadDimension(n));
    }
    if k < 0 || k > n {
        return Err(ChowError::CodimRange { n, k });
    }
    let (m, d) = split_parity(n);
    let k = k as u32;
    let m = m as u32;
    Ok(if k < m {
        vec![(k, 0)]
    } else if k == m {
        if d == 0 {
            vec![(m, 0), (0, 1)]
        } else {
            vec![(0, 1)]
        }
    } else {
        vec![(k - m, 1)]
    })
}

/// A free abelian group with an involution; `sigma` has the images of the
/// basis vectors as columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Z2Module {
    pub rank: usize,
    pub sigma: Vec<Vec<i64>>,
}

impl Z2Module {
    pub fn new(sigma: Vec<Vec<i64>>) -> Result<Self, ChowError> {
        let r = sigma.len();
        let m = Z2Module { rank: r, sigma };
        if m.sigma.iter().any(|row| row.len() != r) || m.square() != identity_i64(r) {
            return Err(ChowError::NotInvolution);
        }
        Ok(m)
    }

    pub fn trivial(rank: usize) -> Self {
        Z2Module { rank, sigma: identity_i64(rank) }
    }

    fn square(&self) -> Vec<Vec<i64>> {
        let r = self.rank;
        (0..r)
            .map(|i| (0..r).map(|j| (0..r).map(|k| self.sigma[i][k] * self.sigma[k][j]).sum()).collect())
            .collect()
    }

    /// `(-1)^t σ`.
    pub fn twisted(&self, t: i32) -> Z2Module {
        let s = sign(t);
        Z2Module { rank: self.rank, sigma: self.sigma.iter().map(|r| r.iter().map(|x| x * s).collect()).collect() }
    }

    pub fn direct_sum(&self, other: &Z2Module) -> Z2Module {
        let r = self.rank + other.rank;
        let mut sigma = vec![vec![0; r]; r];
        for (row, src) in sigma.iter_mut().zip(&self.sigma) {
            row[..self.rank].copy_from_slice(src);
        }
        for (row, src) in sigma[self.rank..].iter_mut().zip(&other.sigma) {
            row[self.rank..].copy_from_slice(src);
        }
        Z2Module { rank: r, sigma }
    }

    /// `σ + s·1` as an integer matrix.
    pub fn shifted(&self, s: i64) -> Matrix {
        let mut m = self.sigma.clone();
        for (i, row) in m.iter_mut().enumerate() {
            row[i] += s;
        }
        int_matrix(&m)
    }
}

fn identity_i64(r: usize) -> Vec<Vec<i64>> {
    (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect()
}

fn coords(e: &ChowElem, basis: &[ChowMono]) -> Vec<i64> {
    basis
        .iter()
        .map(|b| e.terms.get(b).map(|c| i64::try_from(c.clone()).expect("small coefficient")).unwrap_or(0))
        .collect()
}

pub fn chow_group(n: i32, k: i32) -> Result<Z2Module, ChowError> {
    let basis = chow_basis(n, k)?;
    let cols: Vec<Vec<i64>> = basis.iter().map(|&(a, b)| coords(&galois_monomial(n, a, b), &basis)).collect();
    let r = basis.len();
    let sigma = (0..r).map(|i| (0..r).map(|j| cols[j][i]).collect()).collect();
    Z2Module::new(sigma)
}

#[derive(Debug, Clone, Serialize)]
pub struct CodimInvariants {
    pub codim: i32,
    pub invariants: Vec<String>,
    pub anti_invariants: Vec<String>,
}

/// Bases of `ker(σ - 1)` and `ker(σ + 1)` in every codimension.
pub fn invariants_antiinvariants(n: i32) -> Result<Vec<CodimInvariants>, ChowError> {
    let mut out = Vec::new();
    for k in 0..=n {
        let basis = chow_basis(n, k)?;
        let g = chow_group(n, k)?;
        let to_elem = |v: &Vec<BigInt>| ChowElem::from_terms(n, basis.iter().copied().zip(v.iter().cloned())).to_string();
        let inv = right_kernel(&g.shifted(-1), g.rank).iter().map(to_elem).collect();
        let anti = right_kernel(&g.shifted(1), g.rank).iter().map(to_elem).collect();
        out.push(CodimInvariants { codim: k, invariants: inv, anti_invariants: anti });
    }
    Ok(out)
}

/// Restriction `CH*(Q_{n+1}) → CH*(Q_n)`: `h ↦ h`, `φ ↦ h^{(1+(-1)^n)/2} φ`.
pub fn pullback(n: i32, a: &ChowElem) -> Result<ChowElem, ChowError> {
    if a.n != n + 1 {
        return Err(ChowError::DimensionMismatch(a.n, n + 1));
    }
    let shift = if n % 2 == 0 { 1 } else { 0 };
    Ok(ChowElem::from_terms(n, a.terms.iter().map(|((x, y), c)| ((x + shift * y, *y), c.clone()))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_basis(n: i32) -> Vec<ChowElem> {
        (0..=n)
            .flat_map(|k| chow_basis(n, k).unwrap())
            .map(|(a, b)| ChowElem::monomial(n, a, b))
            .collect()
    }

    #[test]
    fn products_in_q2() {
        let n = 2;
        let h = ChowElem::h(n);
        let phi = ChowElem::phi(n);
        let hphi = ChowElem::monomial(n, 1, 1);
        assert_eq!(chow_mul(&h, &h).unwrap(), hphi.scale(2));
        assert!(chow_mul(&phi, &phi).unwrap().is_zero());
        assert!(chow_mul(&h, &ChowElem::h(3)).is_err());
    }

    #[test]
    fn products_in_q3() {
        let n = 3;
        assert!(chow_mul(&ChowElem::phi(n), &ChowElem::phi(n)).unwrap().is_zero());
        assert_eq!(chow_mul(&ChowElem::one(n), &ChowElem::phi(n)).unwrap(), ChowElem::phi(n));
        // h² = 2φ in codimension m = 2.
        assert_eq!(chow_mul(&ChowElem::h(n), &ChowElem::h(n)).unwrap(), ChowElem::phi(n).scale(2));
    }

    #[test]
    fn galois_examples() {
        assert_eq!(galois(&ChowElem::phi(4)), ChowElem::monomial(4, 2, 0).sub(&ChowElem::phi(4)));
        assert_eq!(galois(&ChowElem::phi(2)), ChowElem::phi(2));
        for n in 1..6 {
            assert_eq!(galois(&ChowElem::h(n)), ChowElem::h(n));
        }
    }

    #[test]
    fn group_examples() {
        assert_eq!(chow_group(2, 1).unwrap(), Z2Module::trivial(2));
        assert_eq!(chow_group(4, 2).unwrap().sigma, vec![vec![1, 1], vec![0, -1]]);
        assert_eq!(chow_group(3, 0).unwrap(), Z2Module::trivial(1));
        assert!(chow_group(3, 4).is_err());
    }

    #[test]
    fn invariant_examples() {
        let q4 = invariants_antiinvariants(4).unwrap();
        assert_eq!(q4[2].anti_invariants.len(), 1);
        let anti = &q4[2].anti_invariants[0];
        assert!(anti == "h^2 - 2*phi" || anti == "2*phi - h^2", "{anti}");
        assert_eq!(q4[2].invariants, vec!["h^2"]);
        for c in invariants_antiinvariants(6).unwrap() {
            assert!(c.anti_invariants.is_empty());
        }
    }

    #[test]
    fn pullback_examples() {
        assert_eq!(pullback(3, &ChowElem::phi(4)).unwrap(), ChowElem::phi(3));
        assert_eq!(pullback(2, &ChowElem::phi(3)).unwrap(), ChowElem::monomial(2, 1, 1));
        assert_eq!(pullback(5, &ChowElem::h(6)).unwrap(), ChowElem::h(5));
    }

    #[test]
    fn galois_is_an_involution() {
        for n in 1..=10 {
            for b in all_basis(n) {
                assert_eq!(galois(&galois(&b)), b, "n={n} {b}");
            }
        }
    }

    #[test]
    fn galois_is_multiplicative() {
        for n in 1..=8 {
            let basis = all_basis(n);
            for x in &basis {
                for y in &basis {
                    let lhs = galois(&chow_mul(x, y).unwrap());
                    let rhs = chow_mul(&galois(x), &galois(y)).unwrap();
                    assert_eq!(lhs, rhs, "n={n} {x} * {y}");
                }
            }
        }
    }

    #[test]
    fn ranks_per_codimension() {
        for n in 1..=10 {
            let (m, d) = split_parity(n);
            for k in 0..=n {
                let want = if k == m && d == 0 { 2 } else { 1 };
                assert_eq!(chow_basis(n, k).unwrap().len(), want, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn multiplication_is_associative() {
        for n in 1..=8 {
            let basis = all_basis(n);
            for x in &basis {
                for y in &basis {
                    for z in &basis {
                        let l = chow_mul(&chow_mul(x, y).unwrap(), z).unwrap();
                        let r = chow_mul(x, &chow_mul(y, z).unwrap()).unwrap();
                        assert_eq!(l, r);
                    }
                }
            }
        }
    }

    #[test]
    fn anti_invariant_is_killed_by_h() {
        for m in 1..=2 {
            let n = 4 * m;
            let x = ChowElem::monomial(n, (2 * m) as u32, 0).sub(&ChowElem::phi(n).scale(2));
            assert!(chow_mul(&ChowElem::h(n), &x).unwrap().is_zero());
        }
    }

    #[test]
    fn non_involution_rejected() {
        assert_eq!(Z2Module::new(vec![vec![2]]), Err(ChowError::NotInvolution));
    }
}
