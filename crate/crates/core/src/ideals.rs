//! Bihomogeneous ideals, realised one bidegree at a time: the piece of the
//! ambient algebra is a free abelian group on monomials modulo the 2-torsion
//! relations, and the ideal's piece is the lattice spanned by
//! `monomial · generator` products.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::bigraded_core::{
    lattice_intersect, quotient_of_free, BiDegree, FgAbGroup, Hnf, IntLattice, Matrix,
};
use crate::poly::{big_f_in, f_bar_in, f_bold_in, Algebra, AlgebraRef, Poly, PolyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdealError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("generator `{0}` is not bihomogeneous")]
    NotHomogeneous(String),
    #[error("polynomial `{0}` is not bihomogeneous of the requested degree")]
    WrongDegree(String),
    #[error("parameter out of range: {0}")]
    Range(String),
    #[error("bad window `{0}`; expected pmin:pmax:qmin:qmax")]
    BadWindow(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BidegreeWindow {
    pub p_min: i32,
    pub p_max: i32,
    pub q_min: i32,
    pub q_max: i32,
}

impl BidegreeWindow {
    pub fn new(p_min: i32, p_max: i32, q_min: i32, q_max: i32) -> Result<Self, IdealError> {
        if p_min > p_max || q_min > q_max {
            return Err(IdealError::BadWindow(format!("{p_min}:{p_max}:{q_min}:{q_max}")));
        }
        Ok(BidegreeWindow { p_min, p_max, q_min, q_max })
    }

    /// `p ∈ [0, 2n+4]`, `q ∈ [-n-4, n+4]`.
    pub fn standard(n: i32) -> Self {
        BidegreeWindow { p_min: 0, p_max: 2 * n + 4, q_min: -n - 4, q_max: n + 4 }
    }

    /// Bidegrees in row-major order (`p` outer).
    pub fn iter(&self) -> impl Iterator<Item = BiDegree> + '_ {
        (self.p_min..=self.p_max).flat_map(move |p| (self.q_min..=self.q_max).map(move |q| BiDegree::new(p, q)))
    }
}

impl FromStr for BidegreeWindow {
    type Err = IdealError;
    fn from_str(s: &str) -> Result<Self, IdealError> {
        let parts: Vec<i32> = s
            .split(':')
            .map(|x| x.trim().parse::<i32>())
            .collect::<Result<_, _>>()
            .map_err(|_| IdealError::BadWindow(s.into()))?;
        match parts.as_slice() {
            [a, b, c, d] => BidegreeWindow::new(*a, *b, *c, *d),
            _ => Err(IdealError::BadWindow(s.into())),
        }
    }
}

impl fmt::Display for BidegreeWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}:{}", self.p_min, self.p_max, self.q_min, self.q_max)
    }
}

/// The monomial basis of one bidegree of an algebra.
#[derive(Debug, Clone)]
pub struct Piece {
    pub alg: AlgebraRef,
    pub degree: BiDegree,
    pub basis: Vec<Vec<i32>>,
    index: HashMap<Vec<i32>, usize>,
}

impl Piece {
    pub fn at(alg: &AlgebraRef, d: BiDegree) -> Result<Piece, IdealError> {
        let basis = alg.monomials_at(d)?;
        let index = basis.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        Ok(Piece { alg: alg.clone(), degree: d, basis, index })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn position(&self, exps: &[i32]) -> Option<usize> {
        self.index.get(exps).copied()
    }

    /// Coordinates of a polynomial of this bidegree.
    pub fn vector(&self, p: &Poly) -> Result<Vec<BigInt>, IdealError> {
        let mut v = vec![BigInt::zero(); self.dim()];
        for (e, c) in &p.terms {
            let i = self.position(e).ok_or_else(|| IdealError::WrongDegree(p.to_string()))?;
            v[i] += c;
        }
        Ok(v)
    }

    pub fn poly(&self, v: &[BigInt]) -> Poly {
        Poly::from_terms(&self.alg, self.basis.iter().cloned().zip(v.iter().cloned()))
    }

    /// Rows `2·e_i` for each 2-torsion monomial.
    pub fn torsion_rows(&self) -> Matrix {
        self.basis
            .iter()
            .enumerate()
            .filter(|(_, e)| self.alg.is_torsion_monomial(e))
            .map(|(i, _)| {
                let mut r = vec![BigInt::zero(); self.dim()];
                r[i] = BigInt::from(2);
                r
            })
            .collect()
    }

    pub fn torsion_lattice(&self) -> IntLattice {
        IntLattice::new(self.dim(), self.torsion_rows())
    }

    /// The piece as an abelian group, torsion relations included.
    pub fn group(&self) -> FgAbGroup {
        quotient_of_free(self.dim(), &self.torsion_rows())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    pub name: String,
    pub alg: AlgebraRef,
    pub generators: Vec<Poly>,
}

impl Ideal {
    pub fn new(name: impl Into<String>, alg: &AlgebraRef, generators: Vec<Poly>) -> Result<Ideal, IdealError> {
        let generators: Vec<Poly> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        for g in &generators {
            if g.alg != *alg {
                return Err(PolyError::AlgebraMismatch(g.alg.name.clone(), alg.name.clone()).into());
            }
            if !g.is_homogeneous() {
                return Err(IdealError::NotHomogeneous(g.to_string()));
            }
        }
        Ok(Ideal { name: name.into(), alg: alg.clone(), generators })
    }

    pub fn zero(alg: &AlgebraRef) -> Ideal {
        Ideal { name: "0".into(), alg: alg.clone(), generators: vec![] }
    }

    pub fn plus(&self, other: &Ideal) -> Ideal {
        let mut g = self.generators.clone();
        g.extend(other.generators.iter().cloned());
        Ideal { name: format!("{} + {}", self.name, other.name), alg: self.alg.clone(), generators: g }
    }

    /// Rows spanning the ideal's piece at `piece.degree`, without torsion relations.
    pub fn product_rows(&self, piece: &Piece) -> Result<Matrix, IdealError> {
        let mut rows = Vec::new();
        for g in &self.generators {
            let dg = g.degree().expect("generators are homogeneous");
            for m in self.alg.monomials_at(piece.degree - dg)? {
                let prod = &Poly::monomial(&self.alg, m, 1) * g;
                if !prod.is_zero() {
                    rows.push(piece.vector(&prod)?);
                }
            }
        }
        Ok(rows)
    }

    pub fn span_in(&self, piece: &Piece) -> Result<IntLattice, IdealError> {
        let mut rows = self.product_rows(piece)?;
        rows.extend(piece.torsion_rows());
        Ok(IntLattice::new(piece.dim(), rows))
    }

    pub fn generator_strings(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.to_string()).collect()
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.generator_strings().join(", "))
    }
}

/// Lattice spanned by the ideal in bidegree `d`, torsion relations included.
pub fn ideal_span(ideal: &Ideal, d: BiDegree) -> Result<IntLattice, IdealError> {
    ideal.span_in(&Piece::at(&ideal.alg, d)?)
}

/// One bidegree of a quotient algebra with the data to reduce elements.
#[derive(Debug, Clone)]
pub struct QuotientPiece {
    pub piece: Piece,
    pub span: Hnf,
    pub group: FgAbGroup,
}

impl QuotientPiece {
    pub fn new(ideal: &Ideal, d: BiDegree) -> Result<QuotientPiece, IdealError> {
        let piece = Piece::at(&ideal.alg, d)?;
        let lattice = ideal.span_in(&piece)?;
        let span = lattice.hnf();
        let group = quotient_of_free(piece.dim(), &span.rows);
        Ok(QuotientPiece { piece, span, group })
    }

    pub fn reduce_vector(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.span.reduce(v)
    }

    pub fn normal_form(&self, p: &Poly) -> Result<Poly, IdealError> {
        let v = self.piece.vector(p)?;
        Ok(self.piece.poly(&self.reduce_vector(&v)))
    }

    pub fn contains(&self, p: &Poly) -> Result<bool, IdealError> {
        Ok(self.span.contains(&self.piece.vector(p)?))
    }

    /// Monomials not used as pivots: a generating set of the quotient.
    pub fn normal_monomials(&self) -> Vec<Vec<i32>> {
        let piv: std::collections::HashSet<usize> = self.span.pivots.iter().copied().collect();
        let mut out = Vec::new();
        for (i, e) in self.piece.basis.iter().enumerate() {
            if !piv.contains(&i) {
                out.push(e.clone());
            } else {
                let row = self.span.rows.iter().zip(&self.span.pivots).find(|(_, p)| **p == i).unwrap().0;
                if !row[i].is_one() {
                    out.push(e.clone());
                }
            }
        }
        out
    }
}

pub fn quotient_at(ideal: &Ideal, d: BiDegree) -> Result<FgAbGroup, IdealError> {
    Ok(QuotientPiece::new(ideal, d)?.group)
}

/// Canonical representative of `x + I`, componentwise in bidegree.
pub fn normal_form(x: &Poly, ideal: &Ideal) -> Result<Poly, IdealError> {
    let mut out = Poly::zero(&ideal.alg);
    for (d, comp) in x.components() {
        let q = QuotientPiece::new(ideal, d)?;
        out = &out + &q.normal_form(&comp)?;
    }
    Ok(out)
}

pub fn ideal_contains(ideal: &Ideal, x: &Poly) -> Result<bool, IdealError> {
    Ok(normal_form(x, ideal)?.is_zero())
}

#[derive(Debug, Clone, Serialize)]
pub struct IdealComparison {
    pub equal: bool,
    pub bidegrees_checked: usize,
    pub first_discrepancy: Option<BiDegree>,
    /// An element of one ideal missing from the other.
    pub witness: Option<String>,
    /// Which side the witness belongs to: 1 or 2.
    pub witness_side: Option<u8>,
}

pub fn ideal_equal(a: &Ideal, b: &Ideal, w: &BidegreeWindow) -> Result<IdealComparison, IdealError> {
    let mut checked = 0;
    for d in w.iter() {
        let piece = Piece::at(&a.alg, d)?;
        checked += 1;
        if piece.dim() == 0 {
            continue;
        }
        let la = a.span_in(&piece)?;
        let lb = b.span_in(&piece)?;
        let (ha, hb) = (la.hnf(), lb.hnf());
        if ha == hb {
            continue;
        }
        let missing = |from: &IntLattice, into: &Hnf| from.generators.iter().find(|g| !into.contains(g)).cloned();
        let (side, v) = match missing(&la, &hb) {
            Some(v) => (1, v),
            None => (2, missing(&lb, &ha).expect("distinct Hermite forms")),
        };
        return Ok(IdealComparison {
            equal: false,
            bidegrees_checked: checked,
            first_discrepancy: Some(d),
            witness: Some(piece.poly(&v).to_string()),
            witness_side: Some(side),
        });
    }
    Ok(IdealComparison { equal: true, bidegrees_checked: checked, first_discrepancy: None, witness: None, witness_side: None })
}

/// `n = 2m - δ`.
pub fn split_parity(n: i32) -> (i32, i32) {
    let m = (n + 1).div_euclid(2);
    (m, 2 * m - n)
}

fn sign(k: i32) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn range(cond: bool, msg: impl Into<String>) -> Result<(), IdealError> {
    if cond {
        Ok(())
    } else {
        Err(IdealError::Range(msg.into()))
    }
}

/// `J̄_n = ⟨f̄_{n+1}, w₂f̄_n⟩ ⊂ F₂[ξ,ξ⁻¹,w₁,w₂]`.
pub fn jbar(n: i32) -> Result<Ideal, IdealError> {
    range(n >= 0, "jbar needs n >= 0")?;
    let alg = Algebra::f2_w();
    let w2 = Poly::v(&alg, "w2");
    Ideal::new(format!("Jbar_{n}"), &alg, vec![f_bar_in(&alg, n + 1), &w2 * &f_bar_in(&alg, n)])
}

/// `Ĵ_n = ⟨𝐠₁,…,𝐠₄⟩ ⊂ ℛ_n`.
pub fn jhat(n: i32) -> Result<Ideal, IdealError> {
    range(n >= 1, "jhat needs n >= 1")?;
    let alg = Algebra::r_n(n);
    Ideal::new(format!("Jhat_{n}"), &alg, jhat_generators(&alg, n))
}

pub fn jhat_generators(alg: &AlgebraRef, n: i32) -> Vec<Poly> {
    let (m, d) = split_parity(n);
    let e = Poly::v(alg, "e");
    let xi = Poly::v(alg, "xi");
    let h = Poly::v(alg, "h");
    let x = Poly::v(alg, "x");
    let xh = &xi * &h;
    let g1 = &(&(&e.pow((1 - d) as u32) * &xi.pow((2 * m) as u32)) * &x) - &(&h.pow((1 - d) as u32) * &big_f_in(alg, 2 * m - 1));
    let g2 = big_f_in(alg, 2 * m + 1);
    let g3 = &h * &x;
    let inner = &xi.pow((2 * m + 1 - d) as u32) * &x;
    let g4 = &xh.pow((2 * m) as u32) - &(&xh.pow(d as u32) * &inner.pow(2)).scale(sign(m));
    vec![g1, g2, g3, g4]
}

/// `J_n` by its explicit generators, odd and even cases.
pub fn j_ideal(n: i32) -> Result<Ideal, IdealError> {
    range(n >= 1, "J_n needs n >= 1")?;
    let alg = Algebra::a_hx(n);
    Ideal::new(format!("J_{n}"), &alg, j_generators(&alg, n))
}

/// Generators of `J_n` in any algebra with variables `e, t, h, x`.
pub fn j_generators(alg: &AlgebraRef, n: i32) -> Vec<Poly> {
    let (m, d) = split_parity(n);
    let e = Poly::v(alg, "e");
    let t = Poly::v(alg, "t");
    let h = Poly::v(alg, "h");
    let x = Poly::v(alg, "x");
    let hx = &h * &x;
    if d == 1 {
        vec![
            &(&t.pow(m as u32) * &x) - &f_bold_in(alg, m - 1),
            f_bold_in(alg, m),
            hx,
            h.pow((2 * m) as u32),
        ]
    } else {
        vec![
            f_bold_in(alg, m),
            &(&(&e * &t.pow(m as u32)) * &x) - &(&h * &f_bold_in(alg, m - 1)),
            hx,
            &h.pow((2 * m) as u32) - &(&t.pow((m + 1) as u32) * &x.pow(2)).scale(sign(m)),
        ]
    }
}

/// `I_{2m-1} = ⟨𝐟_m, h𝐟_{m-1}, h^{2m}⟩ ⊂ 𝓐[h]`.
pub fn i_odd(m: i32) -> Result<Ideal, IdealError> {
    range(m >= 1, "I_{2m-1} needs m >= 1")?;
    let alg = Algebra::a_h();
    let h = Poly::v(&alg, "h");
    Ideal::new(
        format!("I_{}", 2 * m - 1),
        &alg,
        vec![f_bold_in(&alg, m), &h * &f_bold_in(&alg, m - 1), h.pow((2 * m) as u32)],
    )
}

/// `c_m = (1 + (-1)^m)/2`.
pub fn chow_c(m: i32) -> i64 {
    if m % 2 == 0 {
        1
    } else {
        0
    }
}

/// `𝓒_n = ⟨h^{1-δ}(h^m - 2φ), φ² - c_m h^m φ⟩ ⊂ Z[ξ,ξ⁻¹,h,φ]`.
pub fn chow_ideal(n: i32) -> Result<Ideal, IdealError> {
    range(n >= 1, "Chow ideal needs n >= 1")?;
    let (m, d) = split_parity(n);
    let alg = Algebra::chow_xi(m);
    let h = Poly::v(&alg, "h");
    let phi = Poly::v(&alg, "phi");
    let g1 = &h.pow((1 - d) as u32) * &(&h.pow(m as u32) - &phi.scale(2));
    let g2 = &(&phi * &phi) - &(&h.pow(m as u32) * &phi).scale(chow_c(m));
    Ideal::new(format!("C_{n}"), &alg, vec![g1, g2])
}

/// The four listed generators of the Pfister-quadric ideal, literal.
/// The second one is not bihomogeneous in general, so this returns raw
/// polynomials rather than an [`Ideal`].
pub fn pfister_generators(r: u32) -> Result<(AlgebraRef, Vec<Poly>), IdealError> {
    range(r >= 2, "Pfister check needs r >= 2")?;
    let n = (1i32 << (r + 1)) - 2;
    let alg = Algebra::a_hx(n);
    let e = Poly::v(&alg, "e");
    let t = Poly::v(&alg, "t");
    let h = Poly::v(&alg, "h");
    let x = Poly::v(&alg, "x");
    let two_r = 1u32 << r;
    let mut sum = Poly::zero(&alg);
    for j in 0..=(r - 2) {
        let tj = 1u32 << j;
        let term = &(&e.pow(4 * (two_r - tj)) * &t.pow(tj - 1)) * &h.pow(2 * (tj - 1));
        sum = &sum + &term;
    }
    let g1 = e.pow(two_r - 1);
    let g2 = &(&(&e * &t.pow(two_r - 1)) * &x) - &(&(&h * &e) * &sum);
    let g3 = &h * &x;
    let g4 = &h.pow((1 << (r + 1)) - 2) + &(&t.pow(two_r) * &x.pow(2));
    Ok((alg, vec![g1, g2, g3, g4]))
}

/// Sublattice of `l` lying in the coordinate span of `coords`, expressed in those coordinates.
pub fn restrict_to_coordinates(l: &IntLattice, coords: &[usize]) -> IntLattice {
    let n = l.ambient_rank;
    let unit: Matrix = coords
        .iter()
        .map(|&i| {
            let mut r = vec![BigInt::zero(); n];
            r[i] = BigInt::one();
            r
        })
        .collect();
    let inter = lattice_intersect(l, &IntLattice::new(n, unit)).expect("same ambient rank");
    IntLattice::new(coords.len(), inter.generators.iter().map(|g| coords.iter().map(|&i| g[i].clone()).collect()).collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct IntersectionReport {
    pub n: i32,
    pub bidegrees_checked: usize,
    pub failures: Vec<BiDegree>,
}

/// Checks that the explicit generators of `J_n` cut out `𝓐[h,x] ∩ Ĵ_n`
/// bidegree-wise, using `τ ↦ ξ²`.
pub fn verify_j_is_intersection(n: i32, w: &BidegreeWindow) -> Result<IntersectionReport, IdealError> {
    let j = j_ideal(n)?;
    let jh = jhat(n)?;
    let (xi_idx, e_idx, h_idx, x_idx) = (1usize, 0usize, 2usize, 3usize);
    let mut failures = Vec::new();
    let mut checked = 0;
    for d in w.iter() {
        let pa = Piece::at(&j.alg, d)?;
        let pr = Piece::at(&jh.alg, d)?;
        checked += 1;
        // 𝓐 monomial e^a t^b h^i x^k ↦ e^a ξ^{2b} h^i x^k.
        let coords: Vec<usize> = pa
            .basis
            .iter()
            .map(|e| {
                let img = vec![e[e_idx], 2 * e[1], e[h_idx], e[x_idx]];
                pr.position(&img).expect("image monomial has the same bidegree")
            })
            .collect();
        debug_assert!(coords.iter().all(|&c| pr.basis[c][xi_idx] % 2 == 0));
        let restricted = restrict_to_coordinates(&jh.span_in(&pr)?, &coords);
        if !restricted.same_as(&j.span_in(&pa)?) {
            failures.push(d);
        }
    }
    Ok(IntersectionReport { n, bidegrees_checked: checked, failures })
}

#[derive(Debug, Clone, Serialize)]
pub struct TorsionReport {
    pub n: i32,
    pub bidegrees_checked: usize,
    pub failures: Vec<BiDegree>,
}

/// The torsion of `𝓐[h,x]/J_n` equals the image of `⟨ε⟩`, bidegree-wise.
pub fn verify_torsion_is_eps(n: i32, w: &BidegreeWindow) -> Result<TorsionReport, IdealError> {
    let j = j_ideal(n)?;
    let eps = Ideal::new("eps", &j.alg, vec![Poly::v(&j.alg, "e")])?;
    let mut failures = Vec::new();
    let mut checked = 0;
    for d in w.iter() {
        let piece = Piece::at(&j.alg, d)?;
        checked += 1;
        if piece.dim() == 0 {
            continue;
        }
        let l = j.span_in(&piece)?;
        let with_eps = l.sum(&eps.span_in(&piece)?);
        if !l.saturation().same_as(&with_eps) {
            failures.push(d);
        }
    }
    Ok(TorsionReport { n, bidegrees_checked: checked, failures })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(alg: &AlgebraRef, s: &str) -> Poly {
        Poly::parse(alg, s).unwrap()
    }

    #[test]
    fn i1_quotients() {
        let i1 = i_odd(1).unwrap();
        assert_eq!(i1.generator_strings(), vec!["e^3", "e*h", "h^2"]);
        assert_eq!(quotient_at(&i1, BiDegree::new(2, 1)).unwrap(), FgAbGroup::free(1));
        assert_eq!(quotient_at(&i1, BiDegree::new(1, 1)).unwrap(), FgAbGroup::with_twos(0, 1));
        assert_eq!(quotient_at(&i1, BiDegree::new(3, 3)).unwrap(), FgAbGroup::zero());
    }

    #[test]
    fn i1_normal_forms() {
        let i1 = i_odd(1).unwrap();
        let a = &i1.alg;
        assert!(normal_form(&p(a, "h^2"), &i1).unwrap().is_zero());
        assert_eq!(normal_form(&p(a, "e"), &i1).unwrap(), p(a, "e"));
        assert!(normal_form(&p(a, "e^3 + e*h"), &i1).unwrap().is_zero());
    }

    #[test]
    fn span_examples() {
        let a = Algebra::a_h();
        let zero = Ideal::zero(&a);
        let piece = Piece::at(&a, BiDegree::new(4, 2)).unwrap();
        assert_eq!(zero.span_in(&piece).unwrap().rank(), piece.torsion_rows().len());
        let j1 = j_ideal(1).unwrap();
        // Every generator of J_1 has p-degree at least 2 except τx - ε at (1,1);
        // in (1,1) the span is ⟨τx - ε⟩ plus torsion.
        let span = ideal_span(&j1, BiDegree::new(1, 1)).unwrap();
        let pc = Piece::at(&j1.alg, BiDegree::new(1, 1)).unwrap();
        assert!(span.contains(&pc.vector(&p(&j1.alg, "t*x - e")).unwrap()));
        let h2 = Ideal::new("h2", &a, vec![p(&a, "h^2")]).unwrap();
        assert!(ideal_span(&h2, BiDegree::new(2, 1)).unwrap().rank() == 0);
    }

    #[test]
    fn builder_examples() {
        let same = |i: &Ideal, gens: &[&str]| {
            let want: Vec<Poly> = gens.iter().map(|g| p(&i.alg, g)).collect();
            assert_eq!(i.generators, want, "{}", i.name);
        };
        same(&jbar(1).unwrap(), &["w1^2 + w2", "w1*w2"]);
        // 2ε = 0, so τx - ε is stored as τx + ε.
        same(&j_ideal(1).unwrap(), &["t*x - e", "e^3", "h*x", "h^2"]);
        same(&chow_ideal(2).unwrap(), &["h^2 - 2*h*phi", "phi^2"]);
        same(&j_ideal(2).unwrap(), &["e^3", "e*t*x - h*e", "h*x", "h^2 + t^2*x^2"]);
    }

    #[test]
    fn prop_identity_n2() {
        let j2 = j_ideal(2).unwrap();
        let a = j2.alg.clone();
        let lhs = j2.plus(&Ideal::new("e", &a, vec![p(&a, "e")]).unwrap());
        let rhs = Ideal::new("rhs", &a, vec![p(&a, "e"), p(&a, "h*x"), p(&a, "h^2 + t^2*x^2")]).unwrap();
        let w = BidegreeWindow::new(0, 8, -4, 6).unwrap();
        assert!(ideal_equal(&lhs, &rhs, &w).unwrap().equal);
        assert!(ideal_equal(&j2, &j2, &w).unwrap().equal);
    }

    #[test]
    fn strict_inclusion_has_witness() {
        let a = Algebra::a_h();
        let h = Ideal::new("h", &a, vec![p(&a, "h")]).unwrap();
        let h2 = Ideal::new("h2", &a, vec![p(&a, "h^2")]).unwrap();
        let cmp = ideal_equal(&h, &h2, &BidegreeWindow::new(0, 4, 0, 4).unwrap()).unwrap();
        assert!(!cmp.equal);
        assert_eq!(cmp.first_discrepancy, Some(BiDegree::new(2, 1)));
        assert_eq!(cmp.witness.as_deref(), Some("h"));
    }

    #[test]
    fn window_parse() {
        let w: BidegreeWindow = "0:8:-4:6".parse().unwrap();
        assert_eq!(w, BidegreeWindow::new(0, 8, -4, 6).unwrap());
        assert!("1:0:0:0".parse::<BidegreeWindow>().is_err());
        assert!("a:b".parse::<BidegreeWindow>().is_err());
    }

    #[test]
    fn jbar_chain_small() {
        // w₂^k J̄_n ⊂ J̄_{n+k} ⊂ J̄_n.
        for n in 0..4 {
            for k in 0..3 {
                let a = jbar(n).unwrap();
                let b = jbar(n + k).unwrap();
                let w2k = Poly::vp(&a.alg, "w2", k);
                for g in &a.generators {
                    assert!(ideal_contains(&b, &(&w2k * g)).unwrap());
                }
                for g in &b.generators {
                    assert!(ideal_contains(&a, g).unwrap());
                }
            }
        }
    }

    #[test]
    fn intersection_and_torsion_small() {
        for n in 1..=3 {
            let w = BidegreeWindow::standard(n);
            let r = verify_j_is_intersection(n, &w).unwrap();
            assert!(r.failures.is_empty(), "n={n}: {:?}", r.failures);
            let t = verify_torsion_is_eps(n, &w).unwrap();
            assert!(t.failures.is_empty(), "n={n}: {:?}", t.failures);
        }
    }

    #[test]
    fn pfister_generators_shape() {
        let (alg, g) = pfister_generators(2).unwrap();
        assert_eq!(g[0], Poly::vp(&alg, "e", 3));
        assert!(!g[1].is_homogeneous());
        assert!(pfister_generators(1).is_err());
    }
}
