//! Additive model of an isotropic quadric's cohomology:
//! `⊕_{j<s} 𝓑·𝐡^j ⊕ j_†(interior) ⊕ ⊕_{j<s} 𝓑·η𝐡^j`, with its products.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::bigraded_core::{quotient_of_free, BiDegree, FgAbGroup, Matrix};
use crate::coeff_rings::{b_group, b_mul, BElem, BMono};
use crate::poly::Poly;

use super::interior::{doubled_tau_power, InteriorRing};
use super::QuadricError;

/// A class `Σ b_j 𝐡^j + j_†(u) + Σ b'_j η𝐡^j`; the interior part is kept
/// in normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QClass {
    pub low: BTreeMap<u32, BElem>,
    pub eta: BTreeMap<u32, BElem>,
    pub interior: Poly,
}

/// Which summand a basis class belongs to.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BasisClass {
    PowerH(u32, BMono),
    EtaH(u32, BMono),
    Interior(Vec<i32>),
}

/// Coordinates of the model in one bidegree.
#[derive(Debug, Clone)]
pub struct ModelPiece {
    pub degree: BiDegree,
    pub classes: Vec<BasisClass>,
    /// Torsion and interior relations, in the coordinates of `classes`.
    pub relations: Matrix,
    pub group: FgAbGroup,
}

fn add_into(map: &mut BTreeMap<u32, BElem>, j: u32, b: &BElem) {
    let sum = map.get(&j).map(|x| x.add(b)).unwrap_or_else(|| b.clone());
    if sum.is_zero() {
        map.remove(&j);
    } else {
        map.insert(j, sum);
    }
}

impl QClass {
    pub fn zero(ring: &ModelRing) -> Self {
        QClass { low: BTreeMap::new(), eta: BTreeMap::new(), interior: Poly::zero(&ring.interior.alg) }
    }

    pub fn is_zero(&self) -> bool {
        self.low.is_empty() && self.eta.is_empty() && self.interior.is_zero()
    }

    pub fn add(&self, other: &QClass) -> QClass {
        let mut out = self.clone();
        for (j, b) in &other.low {
            add_into(&mut out.low, *j, b);
        }
        for (j, b) in &other.eta {
            add_into(&mut out.eta, *j, b);
        }
        out.interior = &out.interior + &other.interior;
        out
    }

    pub fn neg(&self) -> QClass {
        QClass {
            low: self.low.iter().map(|(j, b)| (*j, b.neg())).collect(),
            eta: self.eta.iter().map(|(j, b)| (*j, b.neg())).collect(),
            interior: -&self.interior,
        }
    }
}

fn coefficient_prefix(b: &BElem) -> Option<String> {
    if *b == BElem::one() {
        return None;
    }
    let s = b.to_string();
    Some(if b.terms.len() > 1 { format!("({s})") } else { s })
}

fn term(b: &BElem, factor: Option<String>) -> String {
    match (coefficient_prefix(b), factor) {
        (None, None) => "1".into(),
        (Some(c), None) => c,
        (None, Some(f)) => f,
        (Some(c), Some(f)) => format!("{c}*{f}"),
    }
}

fn h_factor(j: u32) -> Option<String> {
    match j {
        0 => None,
        1 => Some("h".into()),
        _ => Some(format!("h^{j}")),
    }
}

impl fmt::Display for QClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (j, b) in &self.low {
            parts.push(term(b, h_factor(*j)));
        }
        if !self.interior.is_zero() {
            let s = self.interior.to_string();
            parts.push(if self.interior.terms.len() > 1 { format!("int:({s})") } else { format!("int:{s}") });
        }
        for (j, b) in &self.eta {
            let factor = match h_factor(*j) {
                None => "eta".to_string(),
                Some(h) => format!("eta*{h}"),
            };
            parts.push(term(b, Some(factor)));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// The additive model for `(n, s)` with `0 ≤ 2s ≤ n`.
pub struct ModelRing {
    pub n: i32,
    pub s: i32,
    pub interior: InteriorRing,
}

impl ModelRing {
    pub fn new(n: i32, s: i32) -> Result<Self, QuadricError> {
        if n < 1 || s < 0 || 2 * s > n {
            return Err(QuadricError::Params { n, s });
        }
        Ok(ModelRing { n, s, interior: InteriorRing::new(n - 2 * s)? })
    }

    pub fn eta_degree(&self) -> BiDegree {
        let k = self.n - self.s + 1;
        BiDegree::new(2 * k, k)
    }

    pub fn interior_shift(&self) -> BiDegree {
        BiDegree::new(2 * self.s, self.s)
    }

    fn h_deg(j: u32) -> BiDegree {
        BiDegree::new(2 * j as i32, j as i32)
    }

    pub fn group(&self, d: BiDegree) -> Result<FgAbGroup, QuadricError> {
        let mut g = self.interior.group(d - self.interior_shift())?;
        for j in 0..self.s as u32 {
            g = g.direct_sum(&b_group(d - Self::h_deg(j)).0);
            g = g.direct_sum(&b_group(d - self.eta_degree() - Self::h_deg(j)).0);
        }
        Ok(g)
    }

    pub fn piece(&self, d: BiDegree) -> Result<ModelPiece, QuadricError> {
        let mut classes = Vec::new();
        for j in 0..self.s as u32 {
            if let Some(m) = BMono::at(d - Self::h_deg(j)) {
                classes.push(BasisClass::PowerH(j, m));
            }
        }
        let int_basis = self.interior.basis(d - self.interior_shift())?;
        let int_start = classes.len();
        classes.extend(int_basis.iter().cloned().map(BasisClass::Interior));
        for j in 0..self.s as u32 {
            if let Some(m) = BMono::at(d - self.eta_degree() - Self::h_deg(j)) {
                classes.push(BasisClass::EtaH(j, m));
            }
        }
        let dim = classes.len();
        let mut relations: Matrix = Vec::new();
        for (i, c) in classes.iter().enumerate() {
            if let BasisClass::PowerH(_, m) | BasisClass::EtaH(_, m) = c {
                if m.is_torsion() {
                    let mut r = vec![BigInt::zero(); dim];
                    r[i] = BigInt::from(2);
                    relations.push(r);
                }
            }
        }
        for row in self.interior.relations(d - self.interior_shift())? {
            let mut r = vec![BigInt::zero(); dim];
            for (k, x) in row.into_iter().enumerate() {
                r[int_start + k] = x;
            }
            relations.push(r);
        }
        let group = quotient_of_free(dim, &relations);
        Ok(ModelPiece { degree: d, classes, relations, group })
    }

    /// Coordinates of a class that is homogeneous of bidegree `d`.
    pub fn vector(&self, c: &QClass, piece: &ModelPiece) -> Result<Vec<BigInt>, QuadricError> {
        let d = piece.degree;
        let mut v = vec![BigInt::zero(); piece.classes.len()];
        let mut seen_low = 0;
        let mut seen_eta = 0;
        let int_vec = self.interior.vector(&c.interior, d - self.interior_shift())?;
        let mut int_idx = 0;
        for (i, bc) in piece.classes.iter().enumerate() {
            match bc {
                BasisClass::PowerH(j, m) => {
                    if let Some(b) = c.low.get(j) {
                        v[i] = b.terms.get(m).cloned().unwrap_or_default();
                        seen_low += usize::from(b.terms.contains_key(m));
                    }
                }
                BasisClass::EtaH(j, m) => {
                    if let Some(b) = c.eta.get(j) {
                        v[i] = b.terms.get(m).cloned().unwrap_or_default();
                        seen_eta += usize::from(b.terms.contains_key(m));
                    }
                }
                BasisClass::Interior(_) => {
                    v[i] = int_vec[int_idx].clone();
                    int_idx += 1;
                }
            }
        }
        let total_low: usize = c.low.values().map(|b| b.terms.len()).sum();
        let total_eta: usize = c.eta.values().map(|b| b.terms.len()).sum();
        if seen_low != total_low || seen_eta != total_eta {
            return Err(QuadricError::Degree(format!("class {c} is not of degree {d}")));
        }
        Ok(v)
    }

    pub fn basis_class(&self, bc: &BasisClass) -> QClass {
        let mut c = QClass::zero(self);
        match bc {
            BasisClass::PowerH(j, m) => {
                c.low.insert(*j, BElem::monomial(1, *m));
            }
            BasisClass::EtaH(j, m) => {
                c.eta.insert(*j, BElem::monomial(1, *m));
            }
            BasisClass::Interior(e) => c.interior = Poly::monomial(&self.interior.alg, e.clone(), 1),
        }
        c
    }

    /// Classes generating the bidegree `d` as an abelian group.
    pub fn generators_at(&self, d: BiDegree) -> Result<Vec<QClass>, QuadricError> {
        let piece = self.piece(d)?;
        let normal = self.interior.normal_monomials(d - self.interior_shift())?;
        Ok(piece
            .classes
            .iter()
            .filter(|bc| match bc {
                BasisClass::Interior(e) => normal.contains(e),
                _ => true,
            })
            .map(|bc| self.basis_class(bc))
            .collect())
    }

    pub fn interior_class(&self, u: &Poly) -> Result<QClass, QuadricError> {
        let mut c = QClass::zero(self);
        c.interior = self.interior.normal_form(u)?;
        Ok(c)
    }

    pub fn one(&self) -> QClass {
        if self.s > 0 {
            let mut c = QClass::zero(self);
            c.low.insert(0, BElem::one());
            c
        } else {
            QClass { low: BTreeMap::new(), eta: BTreeMap::new(), interior: self.interior.one() }
        }
    }

    pub fn eta(&self) -> Result<QClass, QuadricError> {
        if self.s == 0 {
            return Err(QuadricError::Class("eta needs s >= 1".into()));
        }
        let mut c = QClass::zero(self);
        c.eta.insert(0, BElem::one());
        Ok(c)
    }

    /// `𝐡^j`.
    pub fn h_power(&self, j: u32) -> Result<QClass, QuadricError> {
        if (j as i32) < self.s {
            let mut c = QClass::zero(self);
            c.low.insert(j, BElem::one());
            Ok(c)
        } else {
            self.hpow_times_interior(j - self.s as u32, &self.interior.one())
        }
    }

    /// `𝐡^r · j_†(u)`.
    pub fn hpow_times_interior(&self, r: u32, u: &Poly) -> Result<QClass, QuadricError> {
        if r == 0 {
            return self.interior_class(u);
        }
        let dim = self.interior.dim;
        let mut out = QClass::zero(self);
        let mut int = Poly::zero(&self.interior.alg);
        for (e, c) in &self.interior.canonical(u)?.terms {
            let (a, b, i, k) = (e[0], e[1], e[2], e[3]);
            if k >= 1 {
                // 𝐡^{r}·j_†(τ^b x) = 0 for r ≥ 1.
                continue;
            }
            let t = r as i32 + i;
            if t <= dim {
                int = &int + &Poly::monomial(&self.interior.alg, vec![a, b, t, 0], c.clone());
            } else if t <= self.n - self.s && a == 0 {
                add_into(&mut out.eta, (t - 1 - dim) as u32, &doubled_tau_power(c, b));
            }
        }
        out.interior = self.interior.normal_form(&int)?;
        Ok(out)
    }

    /// `b · c`, with `𝓑` acting on the interior through `𝓑 → 𝓐`.
    pub fn scale(&self, b: &BElem, c: &QClass) -> Result<QClass, QuadricError> {
        let mut out = QClass::zero(self);
        for (j, x) in &c.low {
            add_into(&mut out.low, *j, &b_mul(b, x));
        }
        for (j, x) in &c.eta {
            add_into(&mut out.eta, *j, &b_mul(b, x));
        }
        out.interior = self.interior.act(b, &c.interior)?;
        Ok(out)
    }

    pub fn multiply(&self, x: &QClass, y: &QClass) -> Result<QClass, QuadricError> {
        let s = self.s as u32;
        let mut out = QClass::zero(self);
        for (i, a) in &x.low {
            for (j, b) in &y.low {
                let ab = b_mul(a, b);
                if ab.is_zero() {
                    continue;
                }
                let term = if i + j < s {
                    let mut t = QClass::zero(self);
                    t.low.insert(i + j, ab);
                    t
                } else {
                    self.scale(&ab, &self.hpow_times_interior(i + j - s, &self.interior.one())?)?
                };
                out = out.add(&term);
            }
        }
        let low_eta = |l: &BTreeMap<u32, BElem>, e: &BTreeMap<u32, BElem>, out: &mut QClass| {
            for (i, a) in l {
                for (j, b) in e {
                    if i + j < s {
                        add_into(&mut out.eta, i + j, &b_mul(a, b));
                    }
                }
            }
        };
        low_eta(&x.low, &y.eta, &mut out);
        low_eta(&y.low, &x.eta, &mut out);
        for (l, u) in [(&x.low, &y.interior), (&y.low, &x.interior)] {
            if u.is_zero() {
                continue;
            }
            for (i, a) in l {
                out = out.add(&self.scale(a, &self.hpow_times_interior(*i, u)?)?);
            }
        }
        if !x.interior.is_zero() && !y.interior.is_zero() {
            out = out.add(&self.interior_product(&x.interior, &y.interior)?);
        }
        out.interior = self.interior.normal_form(&out.interior)?;
        Ok(out)
    }

    /// `j_†(u)·j_†(v)`.
    fn interior_product(&self, u: &Poly, v: &Poly) -> Result<QClass, QuadricError> {
        if self.s == 0 {
            return self.interior_class(&(u * v));
        }
        let alg = &self.interior.alg;
        let (cu, cv) = (self.interior.canonical(u)?, self.interior.canonical(v)?);
        let mut out = QClass::zero(self);
        for (e, c) in &cu.terms {
            for (f, d) in &cv.terms {
                // j_†(u)·j_†(v) = 𝐡^s·j_†(uv); with an `x` on both sides this is
                // the top `η`-class, otherwise an `x`-term is killed by `𝐡`.
                let coeff = Poly::monomial(alg, vec![e[0] + f[0], e[1] + f[1], 0, e[3] + f[3]], c * d);
                let r = (e[2] + f[2] + self.s) as u32;
                out = out.add(&self.hpow_times_interior(r, &coeff)?);
            }
        }
        Ok(out)
    }

    /// Parses `h^2`, `eta*h`, `2*t*h`, `a*eta`, `int:e*t^-1*x`, and sums of
    /// non-interior terms joined by `+`.
    pub fn parse_class(&self, s: &str) -> Result<QClass, QuadricError> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("int:") {
            let u = self.interior.parse(rest.trim().trim_start_matches('(').trim_end_matches(')'))?;
            return self.interior_class(&u);
        }
        let mut total = QClass::zero(self);
        for part in s.split('+') {
            total = total.add(&self.parse_term(part.trim())?);
        }
        Ok(total)
    }

    fn parse_term(&self, s: &str) -> Result<QClass, QuadricError> {
        if s.is_empty() {
            return Err(QuadricError::Class("empty term".into()));
        }
        let (sign, body) = match s.strip_prefix('-') {
            Some(r) => (-1, r.trim()),
            None => (1, s),
        };
        let mut hpow = 0u32;
        let mut eta = 0u32;
        let mut coeff = Vec::new();
        for f in body.split('*').map(str::trim) {
            if f == "eta" {
                eta += 1;
            } else if f == "h" {
                hpow += 1;
            } else if let Some(e) = f.strip_prefix("h^") {
                hpow += e.parse::<u32>().map_err(|_| QuadricError::Class(format!("bad exponent in `{f}`")))?;
            } else {
                coeff.push(f);
            }
        }
        let b = if coeff.is_empty() { BElem::one() } else { BElem::parse(&coeff.join("*")).map_err(|e| QuadricError::Class(e.to_string()))? };
        let b = b.scale(&BigInt::from(sign));
        let mut c = self.h_power(hpow)?;
        for _ in 0..eta {
            c = self.multiply(&c, &self.eta()?)?;
        }
        self.scale(&b, &c)
    }

    /// Degree of a nonzero class, if homogeneous.
    pub fn degree(&self, c: &QClass) -> Option<BiDegree> {
        let mut degs = Vec::new();
        for (j, b) in &c.low {
            degs.push(b.degree()? + Self::h_deg(*j));
        }
        for (j, b) in &c.eta {
            degs.push(b.degree()? + Self::h_deg(*j) + self.eta_degree());
        }
        if !c.interior.is_zero() {
            degs.push(c.interior.degree()? + self.interior_shift());
        }
        let first = *degs.first()?;
        degs.iter().all(|d| *d == first).then_some(first)
    }
}
