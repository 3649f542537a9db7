//! Verification of the isotropic presentation against the additive model.
//!
//! The source ring `𝓑_s[h,x,y] ⊗ Λ(η)` is first divided by
//! `h^s(τy - 1)` and `h^s η`, which leaves
//! `M = ⊕_{j<s} 𝓑h^j ⊕ ⊕_{j<s} 𝓑ηh^j ⊕ h^s·𝓐[h,x]`, finite in each bidegree.
//! The remaining relations are spanned in `M` and compared with the kernel
//! of the evaluation map `Ψ: M → model`, bidegree by bidegree.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::bigraded_core::{preimage, quotient_of_free, BiDegree, FgAbGroup, IntLattice, Matrix};
use crate::coeff_rings::{b_mul, b_to_a, BElem, BMono};
use crate::ideals::{j_generators, BidegreeWindow};
use crate::poly::{AlgebraRef, Poly};

use super::interior::{doubled_tau_power, edge_reduce};
use super::model::{ModelPiece, ModelRing, QClass};
use super::QuadricError;

/// Which ideal is divided out of `M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdealReading {
    /// `[h^s]·J̃ + [h^s]⟨η⟩ + ⟨h^{n-s+1} - 2η⟩` with `J̃` an ideal of
    /// `𝓑[h,x,y]`, so every `h^s·u·g_k` is a relation.
    Literal,
    /// The ideal of `𝓑_s[h,x,y] ⊗ Λ(η)` generated by `h^s g_k`, `h^s η` and
    /// `h^{n-s+1} - 2η`; `x` and `y` only multiply together with `h^s`.
    Generated,
    /// `x`-multiples of `h^s g_k` only where they stay in the kernel, `h^s x^3`
    /// for even interiors, and `h^s y^a h^{n-2s+1} - (2τ^{-a})η` for all `a`.
    Corrected,
}

impl IdealReading {
    pub const ALL: [IdealReading; 3] = [IdealReading::Literal, IdealReading::Generated, IdealReading::Corrected];
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum MMono {
    Low(u32, BMono),
    Eta(u32, BMono),
    High(Vec<i32>),
}

/// An element `Σ b_j h^j + Σ b'_j ηh^j + h^s·w` of `M`.
#[derive(Debug, Clone)]
struct MElem {
    low: BTreeMap<u32, BElem>,
    eta: BTreeMap<u32, BElem>,
    high: Poly,
}

impl MElem {
    fn high(high: Poly) -> Self {
        MElem { low: BTreeMap::new(), eta: BTreeMap::new(), high }
    }
}

/// How a relation may be multiplied inside the ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Multipliers {
    /// Ring multiples `b h^j` and `h^s u`.
    Ring,
    /// Ring multiples and all `u ∈ 𝓐[h,x]`.
    Module,
    /// Ring multiples and `u ∈ 𝓐[h]`.
    XFree,
}

struct Relation {
    name: String,
    elem: MElem,
    multipliers: Multipliers,
}

struct MPiece {
    monos: Vec<MMono>,
    index: HashMap<MMono, usize>,
}

impl MPiece {
    fn dim(&self) -> usize {
        self.monos.len()
    }

    fn torsion_rows(&self) -> Matrix {
        let n = self.dim();
        self.monos
            .iter()
            .enumerate()
            .filter(|(_, m)| match m {
                MMono::Low(_, b) | MMono::Eta(_, b) => b.is_torsion(),
                MMono::High(e) => e[0] > 0,
            })
            .map(|(i, _)| {
                let mut r = vec![BigInt::zero(); n];
                r[i] = BigInt::from(2);
                r
            })
            .collect()
    }
}

fn h_deg(j: i32) -> BiDegree {
    BiDegree::new(2 * j, j)
}

struct Checker<'a> {
    ring: &'a ModelRing,
}

impl<'a> Checker<'a> {
    fn s(&self) -> i32 {
        self.ring.s
    }

    fn dim(&self) -> i32 {
        self.ring.interior.dim
    }

    fn alg(&self) -> &AlgebraRef {
        &self.ring.interior.alg
    }

    fn h(&self, k: i32) -> Poly {
        Poly::vp(self.alg(), "h", k)
    }

    fn zero(&self) -> MElem {
        MElem::high(Poly::zero(self.alg()))
    }

    fn is_zero(&self, x: &MElem) -> bool {
        x.low.is_empty() && x.eta.is_empty() && self.reduce_high(&x.high).is_zero()
    }

    /// Monomials of `𝓐[h,x]` at `d`; for the zero-dimensional interior `x²` is
    /// already rewritten as `τ⁻¹`, so only `x^0` and `x^1` occur.
    fn high_monomials(&self, d: BiDegree) -> Result<Vec<Vec<i32>>, QuadricError> {
        if d.p < 0 {
            return Ok(vec![]);
        }
        if !self.ring.interior.is_edge() {
            return Ok(self.alg().monomials_at(d)?);
        }
        let mut out = Vec::new();
        for i in 0..=d.p / 2 {
            let a = d.p - 2 * i;
            for k in 0..2 {
                let twice_b = d.q - a - i + k;
                if twice_b.rem_euclid(2) == 0 {
                    out.push(vec![a, twice_b / 2, i, k]);
                }
            }
        }
        Ok(out)
    }

    fn reduce_high(&self, p: &Poly) -> Poly {
        if self.ring.interior.is_edge() {
            edge_reduce(p, false)
        } else {
            p.clone()
        }
    }

    fn piece(&self, d: BiDegree) -> Result<MPiece, QuadricError> {
        let mut monos = Vec::new();
        for j in 0..self.s() {
            if let Some(b) = BMono::at(d - h_deg(j)) {
                monos.push(MMono::Low(j as u32, b));
            }
        }
        for e in self.high_monomials(d - h_deg(self.s()))? {
            monos.push(MMono::High(e));
        }
        for j in 0..self.s() {
            if let Some(b) = BMono::at(d - self.ring.eta_degree() - h_deg(j)) {
                monos.push(MMono::Eta(j as u32, b));
            }
        }
        let index = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Ok(MPiece { monos, index })
    }

    fn vector(&self, x: &MElem, piece: &MPiece) -> Result<Vec<BigInt>, QuadricError> {
        let mut v = vec![BigInt::zero(); piece.dim()];
        let mut put = |m: MMono, c: &BigInt| -> Result<(), QuadricError> {
            let i = piece.index.get(&m).ok_or_else(|| QuadricError::Degree(format!("term {m:?} outside the bidegree")))?;
            v[*i] += c;
            Ok(())
        };
        for (j, b) in &x.low {
            for (m, c) in &b.terms {
                put(MMono::Low(*j, *m), c)?;
            }
        }
        for (j, b) in &x.eta {
            for (m, c) in &b.terms {
                put(MMono::Eta(*j, *m), c)?;
            }
        }
        for (e, c) in &self.reduce_high(&x.high).terms {
            put(MMono::High(e.clone()), c)?;
        }
        Ok(v)
    }

    fn pi_poly(&self, b: &BElem) -> Poly {
        let a = b_to_a(b);
        Poly::from_terms(self.alg(), a.terms.iter().map(|((x, y), c)| (vec![*x as i32, *y, 0, 0], c.clone())))
    }

    /// `b h^j · x` in `M`.
    fn times_bh(&self, b: &BElem, j: u32, x: &MElem) -> MElem {
        let s = self.s() as u32;
        let mut out = self.zero();
        for (i, c) in &x.low {
            let bc = b_mul(b, c);
            if i + j < s {
                if !bc.is_zero() {
                    out.low.insert(i + j, bc);
                }
            } else {
                out.high = &out.high + &(&self.pi_poly(&bc) * &self.h((i + j - s) as i32));
            }
        }
        for (i, c) in &x.eta {
            let bc = b_mul(b, c);
            if i + j < s && !bc.is_zero() {
                out.eta.insert(i + j, bc);
            }
        }
        out.high = &out.high + &(&(&self.pi_poly(b) * &self.h(j as i32)) * &x.high);
        out
    }

    /// `h^s u · x` in `M`, for `u` in `𝓐[h,x]`.
    fn times_high(&self, u: &Poly, x: &MElem) -> MElem {
        let mut high = Poly::zero(self.alg());
        for (i, c) in &x.low {
            high = &high + &(&(&self.pi_poly(c) * &self.h(*i as i32)) * u);
        }
        high = &high + &(&(&self.h(self.s()) * u) * &x.high);
        MElem::high(high)
    }

    fn mono_elem(&self, m: &MMono) -> MElem {
        let mut x = self.zero();
        match m {
            MMono::Low(j, b) => {
                x.low.insert(*j, BElem::monomial(1, *b));
            }
            MMono::Eta(j, b) => {
                x.eta.insert(*j, BElem::monomial(1, *b));
            }
            MMono::High(e) => x.high = Poly::monomial(self.alg(), e.clone(), 1),
        }
        x
    }

    /// Product of two monomials of `M`.
    fn mono_product(&self, a: &MMono, b: &MMono) -> MElem {
        let y = self.mono_elem(b);
        match (a, b) {
            (MMono::Low(j, c), _) => self.times_bh(&BElem::monomial(1, *c), *j, &y),
            (MMono::Eta(..), MMono::Low(..)) => self.mono_product(b, a),
            (MMono::High(e), MMono::Low(..) | MMono::High(_)) => self.times_high(&Poly::monomial(self.alg(), e.clone(), 1), &y),
            _ => self.zero(),
        }
    }

    fn degree(&self, x: &MElem) -> BiDegree {
        if let Some((j, b)) = x.low.iter().next() {
            return b.degree().expect("monomial coefficient") + h_deg(*j as i32);
        }
        if let Some((j, b)) = x.eta.iter().next() {
            return b.degree().expect("monomial coefficient") + h_deg(*j as i32) + self.ring.eta_degree();
        }
        x.high.degree().expect("homogeneous relation") + h_deg(self.s())
    }

    /// `h^s·τ^{-a}h^{n-2s+1} - (2τ^{-a})η`.
    fn eta_relation(&self, a: i32) -> MElem {
        let mut eta = BTreeMap::new();
        eta.insert(0, doubled_tau_power(&BigInt::from(-1), -a));
        MElem { low: BTreeMap::new(), eta, high: &Poly::vp(self.alg(), "t", -a) * &self.h(self.dim() + 1) }
    }

    /// Relations of the chosen reading, apart from the `y`-divided `η` relations.
    fn relations(&self, reading: IdealReading) -> Vec<Relation> {
        let s = self.s();
        let dim = self.dim();
        let odd = dim % 2 == 1;
        let mut out = Vec::new();
        for (k, g) in j_generators(self.alg(), dim).into_iter().enumerate() {
            let g = self.reduce_high(&g);
            if g.is_zero() {
                continue;
            }
            let multipliers = match (reading, k) {
                (IdealReading::Literal, _) => Multipliers::Module,
                (IdealReading::Generated, _) => Multipliers::Ring,
                // For odd interiors this is `h^{n-2s+1}`, covered by the η relation.
                (IdealReading::Corrected, 3) if odd => continue,
                (IdealReading::Corrected, 0 | 1) => Multipliers::Module,
                (IdealReading::Corrected, _) if odd => Multipliers::Module,
                (IdealReading::Corrected, _) => Multipliers::XFree,
            };
            out.push(Relation { name: format!("h^{s}*({g})"), elem: MElem::high(g), multipliers });
        }
        if reading == IdealReading::Corrected && !odd && dim >= 2 {
            let x3 = Poly::vp(self.alg(), "x", 3);
            out.push(Relation { name: format!("h^{s}*x^3"), elem: MElem::high(x3), multipliers: Multipliers::Module });
        }
        out.push(Relation {
            name: format!("h^{} - 2*eta", self.ring.n - s + 1),
            elem: self.eta_relation(0),
            multipliers: Multipliers::Ring,
        });
        out
    }

    fn ring_multiples(&self, x: &MElem, d: BiDegree, piece: &MPiece, rows: &mut Matrix) -> Result<(), QuadricError> {
        let g = self.degree(x);
        let mut j = 0;
        while d.p - g.p - 2 * j >= 0 {
            if let Some(b) = BMono::at(d - g - h_deg(j)) {
                rows.push(self.vector(&self.times_bh(&BElem::monomial(1, b), j as u32, x), piece)?);
            }
            j += 1;
        }
        for e in self.high_monomials(d - g - h_deg(self.s()))? {
            let u = Poly::monomial(self.alg(), e, 1);
            rows.push(self.vector(&self.times_high(&u, x), piece)?);
        }
        Ok(())
    }

    fn multiples(&self, r: &Relation, d: BiDegree, piece: &MPiece, rows: &mut Matrix) -> Result<(), QuadricError> {
        self.ring_multiples(&r.elem, d, piece, rows)?;
        if r.multipliers == Multipliers::Ring {
            return Ok(());
        }
        for e in self.high_monomials(d - self.degree(&r.elem))? {
            if r.multipliers == Multipliers::XFree && e[3] > 0 {
                continue;
            }
            let u = Poly::monomial(self.alg(), e, 1);
            rows.push(self.vector(&MElem::high(&u * &r.elem.high), piece)?);
        }
        Ok(())
    }

    /// Largest `a` whose divided `η` relation has multiples in degree `d` that
    /// are not `τ`-multiples of those with smaller `a`.
    fn divided_range(&self, d: BiDegree) -> i32 {
        let e = self.ring.eta_degree();
        ((e.q - d.q + (d.p - e.p).max(0)) / 2 + 2).max(1)
    }

    fn span_rows(&self, reading: IdealReading, relations: &[Relation], d: BiDegree, piece: &MPiece) -> Result<Matrix, QuadricError> {
        let mut rows = piece.torsion_rows();
        for r in relations {
            self.multiples(r, d, piece, &mut rows)?;
        }
        if reading == IdealReading::Corrected {
            for a in 1..=self.divided_range(d) {
                self.ring_multiples(&self.eta_relation(a), d, piece, &mut rows)?;
            }
        }
        Ok(rows)
    }

    fn psi(&self, m: &MMono) -> Result<QClass, QuadricError> {
        match m {
            MMono::Low(..) | MMono::Eta(..) => {
                let x = self.mono_elem(m);
                let mut c = QClass::zero(self.ring);
                c.low = x.low;
                c.eta = x.eta;
                Ok(c)
            }
            MMono::High(e) => {
                let mut rest = e.clone();
                rest[2] = 0;
                self.ring.hpow_times_interior(e[2] as u32, &Poly::monomial(self.alg(), rest, 1))
            }
        }
    }

    fn psi_elem(&self, x: &MElem) -> Result<QClass, QuadricError> {
        let piece = self.piece(self.degree(x))?;
        let v = self.vector(x, &piece)?;
        let mut out = QClass::zero(self.ring);
        for (c, m) in v.iter().zip(&piece.monos) {
            if !c.is_zero() {
                out = out.add(&self.ring.scale(&BElem::monomial(c.clone(), BMono::ONE), &self.psi(m)?)?);
            }
        }
        Ok(out)
    }

    fn psi_matrix(&self, piece: &MPiece, model: &ModelPiece) -> Result<Matrix, QuadricError> {
        piece.monos.iter().map(|m| self.ring.vector(&self.psi(m)?, model)).collect()
    }

    /// Whether a homogeneous class of degree `d` is zero in the model.
    fn class_vanishes(&self, c: &QClass, d: BiDegree) -> Result<bool, QuadricError> {
        if c.is_zero() {
            return Ok(true);
        }
        let model = self.ring.piece(d)?;
        let v = self.ring.vector(c, &model)?;
        Ok(IntLattice::new(model.classes.len(), model.relations.clone()).contains(&v))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BidegreeMismatch {
    pub p: i32,
    pub q: i32,
    pub presentation: FgAbGroup,
    pub model: FgAbGroup,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremAReport {
    pub n: i32,
    pub s: i32,
    pub reading: IdealReading,
    pub window: BidegreeWindow,
    pub bidegrees_checked: usize,
    pub generators: Vec<String>,
    /// Generators whose image under `Ψ` is not zero.
    pub surviving_generators: Vec<String>,
    /// Bidegrees where the quotient group differs from the model.
    pub group_mismatches: Vec<BidegreeMismatch>,
    /// Bidegrees where the relations do not span `ker Ψ` or `Ψ` misses classes.
    pub not_bijective: Vec<BiDegree>,
}

impl TheoremAReport {
    pub fn passed(&self) -> bool {
        self.surviving_generators.is_empty() && self.group_mismatches.is_empty() && self.not_bijective.is_empty()
    }
}

/// Checks one reading of the isotropic ideal over `w`.
pub fn verify_theorem_a(ring: &ModelRing, w: &BidegreeWindow, reading: IdealReading) -> Result<TheoremAReport, QuadricError> {
    let ck = Checker { ring };
    let relations = ck.relations(reading);
    let mut surviving = Vec::new();
    for r in &relations {
        if !ck.class_vanishes(&ck.psi_elem(&r.elem)?, ck.degree(&r.elem))? {
            surviving.push(r.name.clone());
        }
    }
    let mut mismatches = Vec::new();
    let mut not_bijective = Vec::new();
    let mut checked = 0;
    for d in w.iter() {
        checked += 1;
        let piece = ck.piece(d)?;
        let rows = ck.span_rows(reading, &relations, d, &piece)?;
        let group = quotient_of_free(piece.dim(), &rows);
        let model = ring.piece(d)?;
        if group != model.group {
            mismatches.push(BidegreeMismatch { p: d.p, q: d.q, presentation: group, model: model.group.clone() });
        }
        let psi = ck.psi_matrix(&piece, &model)?;
        let mdim = model.classes.len();
        let kernel = preimage(&psi, &IntLattice::new(mdim, model.relations.clone()));
        let mut image = psi;
        image.extend(model.relations.iter().cloned());
        let onto = IntLattice::new(mdim, image).same_as(&IntLattice::full(mdim));
        if !(onto && kernel.same_as(&IntLattice::new(piece.dim(), rows))) {
            not_bijective.push(d);
        }
    }
    let mut generators: Vec<String> = relations.into_iter().map(|r| r.name).collect();
    generators.push(format!("h^{}*(t*y - 1)", ring.s));
    generators.push(format!("h^{}*eta", ring.s));
    if reading == IdealReading::Corrected {
        generators.push(format!("h^{}*y^a - 2*t^-a*eta (a >= 1)", ring.n - ring.s + 1));
    }
    Ok(TheoremAReport {
        n: ring.n,
        s: ring.s,
        reading,
        window: *w,
        bidegrees_checked: checked,
        generators,
        surviving_generators: surviving,
        group_mismatches: mismatches,
        not_bijective,
    })
}

/// Monomial pairs `a, b` of `M` with degrees in `w` where `Ψ(ab) ≠ Ψ(a)Ψ(b)`.
pub fn multiplicativity_failures(ring: &ModelRing, w: &BidegreeWindow) -> Result<Vec<String>, QuadricError> {
    let ck = Checker { ring };
    let mut monos = Vec::new();
    for d in w.iter() {
        monos.extend(ck.piece(d)?.monos.into_iter().map(|m| (m, d)));
    }
    let mut failures = Vec::new();
    for (a, da) in &monos {
        for (b, db) in &monos {
            let prod = ck.mono_product(a, b);
            let lhs = if ck.is_zero(&prod) { QClass::zero(ring) } else { ck.psi_elem(&prod)? };
            let rhs = ring.multiply(&ck.psi(a)?, &ck.psi(b)?)?;
            if !ck.class_vanishes(&lhs.add(&rhs.neg()), *da + *db)? {
                failures.push(format!("{a:?} * {b:?}: {lhs} vs {rhs}"));
            }
        }
    }
    Ok(failures)
}
