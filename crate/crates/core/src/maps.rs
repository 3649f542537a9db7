//! Ring homomorphisms between the bigraded algebras: reduction mod 2, the
//! Stiefel-Whitney substitution, the Grassmannian quotient, their composite,
//! the inclusion `τ ↦ ξ²`, and the integral forgetful map. Plus the
//! per-bidegree checks built from them.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::bigraded_core::{preimage, BiDegree, IntLattice};
use crate::ideals::{
    chow_ideal, ideal_contains, ideal_equal, j_ideal, jbar, jhat, split_parity, verify_torsion_is_eps,
    BidegreeWindow, Ideal, IdealComparison, IdealError, Piece,
};
use crate::poly::{f_bar_in, Algebra, AlgebraRef, Poly, PolyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error("image of `{var}` has degree {got:?}, expected {want}")]
    DegreeMismatch { var: String, got: Option<BiDegree>, want: BiDegree },
    #[error("no inverse given for the image of Laurent variable `{0}`")]
    MissingInverse(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
}

/// A ring map given by images of the source variables. Integer
/// coefficients map to integers; torsion in the target is applied by its
/// own normalisation (so a map into an `F₂` algebra reduces mod 2).
#[derive(Debug, Clone)]
pub struct RingMap {
    pub name: String,
    pub source: AlgebraRef,
    pub target: AlgebraRef,
    pub images: Vec<Poly>,
    pub inverse_images: Vec<Option<Poly>>,
}

impl RingMap {
    pub fn new(
        name: impl Into<String>,
        source: &AlgebraRef,
        target: &AlgebraRef,
        images: Vec<(&str, Poly, Option<Poly>)>,
    ) -> Result<RingMap, MapError> {
        let mut imgs = vec![None; source.nvars()];
        let mut invs = vec![None; source.nvars()];
        for (name, img, inv) in images {
            let i = source
                .index_of(name)
                .ok_or_else(|| PolyError::UnknownVariable(name.into(), source.name.clone()))?;
            let want = source.vars[i].degree;
            if !img.is_zero() && img.degree() != Some(want) {
                return Err(MapError::DegreeMismatch { var: name.into(), got: img.degree(), want });
            }
            imgs[i] = Some(img);
            invs[i] = inv;
        }
        let mut images = Vec::with_capacity(source.nvars());
        for (i, img) in imgs.into_iter().enumerate() {
            let v = &source.vars[i];
            let img = img.ok_or_else(|| MapError::UnknownGenerator(v.name.clone()))?;
            if v.laurent && invs[i].is_none() {
                return Err(MapError::MissingInverse(v.name.clone()));
            }
            images.push(img);
        }
        Ok(RingMap { name: name.into(), source: source.clone(), target: target.clone(), images, inverse_images: invs })
    }

    pub fn apply(&self, x: &Poly) -> Result<Poly, MapError> {
        if x.alg != self.source {
            return Err(PolyError::AlgebraMismatch(x.alg.name.clone(), self.source.name.clone()).into());
        }
        let mut cache: HashMap<(usize, i32), Poly> = HashMap::new();
        let mut out = Poly::zero(&self.target);
        for (exps, c) in &x.terms {
            let mut term = Poly::constant(&self.target, c.clone());
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let f = cache
                    .entry((i, e))
                    .or_insert_with(|| {
                        if e > 0 {
                            self.images[i].pow(e as u32)
                        } else {
                            self.inverse_images[i].as_ref().expect("checked at construction").pow((-e) as u32)
                        }
                    })
                    .clone();
                term = &term * &f;
                if term.is_zero() {
                    break;
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &RingMap) -> Result<RingMap, MapError> {
        let images: Result<Vec<Poly>, MapError> = self.images.iter().map(|p| other.apply(&lift(p, &other.source))).collect();
        let invs: Result<Vec<Option<Poly>>, MapError> = self
            .inverse_images
            .iter()
            .map(|p| p.as_ref().map(|p| other.apply(&lift(p, &other.source))).transpose())
            .collect();
        Ok(RingMap {
            name: format!("{} . {}", other.name, self.name),
            source: self.source.clone(),
            target: other.target.clone(),
            images: images?,
            inverse_images: invs?,
        })
    }
}

/// Re-tags a polynomial into an algebra with the same variables (used when
/// composing through structurally equal algebras).
fn lift(p: &Poly, alg: &AlgebraRef) -> Poly {
    Poly::from_terms(alg, p.terms.iter().map(|(e, c)| (e.clone(), c.clone())))
}

/// Reduction of coefficients `ℛ_n → F₂[ε,ξ,ξ⁻¹,h,x_n]`.
pub fn pi_map(n: i32) -> RingMap {
    let src = Algebra::r_n(n);
    let tgt = Algebra::f2_r_n(n);
    let v = |s: &str| Poly::v(&tgt, s);
    RingMap::new(
        "pi",
        &src,
        &tgt,
        vec![("e", v("e"), None), ("xi", v("xi"), Some(Poly::vp(&tgt, "xi", -1))), ("h", v("h"), None), ("x", v("x"), None)],
    )
    .expect("well-formed map")
}

/// `W: ε ↦ ξw₁, h ↦ ξw₂, x_n ↦ ξ⁻¹w̄_n`.
pub fn w_map(n: i32) -> RingMap {
    let src = Algebra::f2_r_n(n);
    let tgt = Algebra::f2_w_bar(n);
    let xi = Poly::v(&tgt, "xi");
    let xinv = Poly::vp(&tgt, "xi", -1);
    RingMap::new(
        "W",
        &src,
        &tgt,
        vec![
            ("e", &xi * &Poly::v(&tgt, "w1"), None),
            ("xi", xi.clone(), Some(xinv.clone())),
            ("h", &xi * &Poly::v(&tgt, "w2"), None),
            ("x", &xinv * &Poly::v(&tgt, "wn"), None),
        ],
    )
    .expect("well-formed map")
}

/// `q: w̄_n ↦ f̄_n`.
pub fn q_map(n: i32) -> RingMap {
    let src = Algebra::f2_w_bar(n);
    let tgt = Algebra::f2_w();
    RingMap::new(
        "q",
        &src,
        &tgt,
        vec![
            ("xi", Poly::v(&tgt, "xi"), Some(Poly::vp(&tgt, "xi", -1))),
            ("w1", Poly::v(&tgt, "w1"), None),
            ("w2", Poly::v(&tgt, "w2"), None),
            ("wn", f_bar_in(&tgt, n), None),
        ],
    )
    .expect("well-formed map")
}

/// `Ψ = q∘W∘π: ℛ_n → F₂[ξ,ξ⁻¹,w₁,w₂]`, written directly.
pub fn psi_map(n: i32) -> RingMap {
    let src = Algebra::r_n(n);
    let tgt = Algebra::f2_w();
    let xi = Poly::v(&tgt, "xi");
    let xinv = Poly::vp(&tgt, "xi", -1);
    RingMap::new(
        "Psi",
        &src,
        &tgt,
        vec![
            ("e", &xi * &Poly::v(&tgt, "w1"), None),
            ("xi", xi.clone(), Some(xinv.clone())),
            ("h", &xi * &Poly::v(&tgt, "w2"), None),
            ("x", &xinv * &f_bar_in(&tgt, n), None),
        ],
    )
    .expect("well-formed map")
}

/// `ι: 𝓐[h,x_n] → ℛ_n`, `τ ↦ ξ²`.
pub fn iota_map(n: i32) -> RingMap {
    let src = Algebra::a_hx(n);
    let tgt = Algebra::r_n(n);
    RingMap::new(
        "iota",
        &src,
        &tgt,
        vec![
            ("e", Poly::v(&tgt, "e"), None),
            ("t", Poly::vp(&tgt, "xi", 2), Some(Poly::vp(&tgt, "xi", -2))),
            ("h", Poly::v(&tgt, "h"), None),
            ("x", Poly::v(&tgt, "x"), None),
        ],
    )
    .expect("well-formed map")
}

/// `ρ̄ = Ψ∘ι: 𝓐[h,x_n] → F₂[ξ,ξ⁻¹,w₁,w₂]`.
pub fn rho_bar_map(n: i32) -> RingMap {
    iota_map(n).then(&psi_map(n)).expect("composable")
}

/// Integral forgetful map `𝓐[h,x_n] → Z[ξ,ξ⁻¹,h,φ]`: `ε ↦ 0`, `τ ↦ ξ²`,
/// `h ↦ h`, `x ↦ 0` for odd `n` and `ξ^{-m-1}(h^m - 2φ)` for `n = 2m`.
pub fn psi_hat_map(n: i32) -> RingMap {
    let (m, _) = split_parity(n);
    let src = Algebra::a_hx(n);
    let tgt = Algebra::chow_xi(m);
    RingMap::new(
        "Psi_hat",
        &src,
        &tgt,
        vec![
            ("e", Poly::zero(&tgt), None),
            ("t", Poly::vp(&tgt, "xi", 2), Some(Poly::vp(&tgt, "xi", -2))),
            ("h", Poly::v(&tgt, "h"), None),
            ("x", forgetful_image("x", n).expect("x is a generator"), None),
        ],
    )
    .expect("well-formed map")
}

/// Image of a generator under the integral forgetful map.
pub fn forgetful_image(g: &str, n: i32) -> Result<Poly, MapError> {
    let (m, d) = split_parity(n);
    let tgt = Algebra::chow_xi(m);
    match g {
        "h" => Ok(Poly::v(&tgt, "h")),
        "e" => Ok(Poly::zero(&tgt)),
        "t" => Ok(Poly::vp(&tgt, "xi", 2)),
        "x" if d == 1 => Ok(Poly::zero(&tgt)),
        "x" => {
            let inner = &Poly::vp(&tgt, "h", m) - &Poly::v(&tgt, "phi").scale(2);
            Ok(&Poly::vp(&tgt, "xi", -m - 1) * &inner)
        }
        _ => Err(MapError::UnknownGenerator(g.into())),
    }
}

/// Image of a generator under reduction of coefficients, in `F₂[ξ,ξ⁻¹,w₁,w₂]`.
pub fn reduction_image(g: &str, n: i32) -> Result<Poly, MapError> {
    let f = rho_bar_map(n);
    let src = &f.source;
    if src.index_of(g).is_none() {
        return Err(MapError::UnknownGenerator(g.into()));
    }
    f.apply(&Poly::v(src, g))
}

#[derive(Debug, Clone, Serialize)]
pub struct AlgebraicReport {
    pub n: i32,
    pub window: BidegreeWindow,
    /// Each generator of `Ĵ_n` lands in `J̄_n`.
    pub generators_map_into_jbar: Vec<bool>,
    pub ideal_identity: IdealComparison,
    pub torsion_is_eps: bool,
    pub torsion_failures: Vec<BiDegree>,
    pub rho_injective_on_torsion: bool,
    pub injectivity_failures: Vec<BiDegree>,
}

impl AlgebraicReport {
    pub fn passed(&self) -> bool {
        self.generators_map_into_jbar.iter().all(|b| *b)
            && self.ideal_identity.equal
            && self.torsion_is_eps
            && self.rho_injective_on_torsion
    }
}

/// `J_n + ⟨ε⟩` and the three-generator ideal it should equal.
pub fn eps_identity_ideals(n: i32) -> Result<(Ideal, Ideal), MapError> {
    let (m, d) = split_parity(n);
    let j = j_ideal(n)?;
    let a = j.alg.clone();
    let e = Poly::v(&a, "e");
    let h = Poly::v(&a, "h");
    let x = Poly::v(&a, "x");
    let t = Poly::v(&a, "t");
    let sign = if m % 2 == 0 { 1 } else { -1 };
    let lhs = j.plus(&Ideal::new("eps", &a, vec![e.clone()])?);
    let gens = [e, &h.pow((1 - d) as u32) * &x, &h.pow((2 * m) as u32) - &(&t.pow((m + 1) as u32) * &x.pow(2)).scale(sign)];
    // For odd n the last generator is not bihomogeneous; its graded pieces
    // are `h^{2m}` and a multiple of `x`, which is already in the ideal.
    let pieces = gens.iter().flat_map(|g| g.components().into_values()).collect();
    let rhs = Ideal::new("eps identity", &a, pieces)?;
    Ok((lhs, rhs))
}

/// The four checks on `Ĵ_n`, `J_n` and `J̄_n`.
pub fn verify_prop_algebraic(n: i32, w: &BidegreeWindow) -> Result<AlgebraicReport, MapError> {
    let jb = jbar(n)?;
    let jh = jhat(n)?;
    let psi = psi_map(n);
    let mut gens_ok = Vec::new();
    for g in &jh.generators {
        gens_ok.push(ideal_contains(&jb, &psi.apply(g)?)?);
    }
    let (lhs, rhs) = eps_identity_ideals(n)?;
    let identity = ideal_equal(&lhs, &rhs, w)?;
    let tor = verify_torsion_is_eps(n, w)?;
    let inj = rho_injectivity_failures(n, w)?;
    Ok(AlgebraicReport {
        n,
        window: *w,
        generators_map_into_jbar: gens_ok,
        ideal_identity: identity,
        torsion_is_eps: tor.failures.is_empty(),
        torsion_failures: tor.failures,
        rho_injective_on_torsion: inj.is_empty(),
        injectivity_failures: inj,
    })
}

/// Bidegrees where `ρ̄` fails to be injective on the torsion of `𝓐[h,x]/J_n`.
pub fn rho_injectivity_failures(n: i32, w: &BidegreeWindow) -> Result<Vec<BiDegree>, MapError> {
    let j = j_ideal(n)?;
    let jb = jbar(n)?;
    let rho = rho_bar_map(n);
    let mut failures = Vec::new();
    for d in w.iter() {
        let src = Piece::at(&j.alg, d)?;
        if src.dim() == 0 {
            continue;
        }
        let tgt = Piece::at(&jb.alg, d)?;
        let l = j.span_in(&src)?;
        let sat = l.saturation();
        let lh = l.hnf();
        if sat.generators.iter().all(|g| lh.contains(g)) {
            continue;
        }
        // Images of a basis of the saturation, in the target piece.
        let mut rows = Vec::with_capacity(sat.generators.len());
        for g in &sat.generators {
            rows.push(tgt.vector(&rho.apply(&src.poly(g))?)?);
        }
        let kernel = preimage(&rows, &jb.span_in(&tgt)?);
        for k in &kernel.generators {
            let elem = crate::bigraded_core::vec_mat(k, &sat.generators, src.dim());
            if !lh.contains(&elem) {
                failures.push(d);
                break;
            }
        }
    }
    Ok(failures)
}

#[derive(Debug, Clone, Serialize)]
pub struct DiagramReport {
    pub n: i32,
    pub monomials_checked: usize,
    pub composite_mismatches: Vec<String>,
    /// Generators of `J_n` whose image under `ρ̄` is not in `J̄_n`.
    pub descent_failures: Vec<String>,
}

impl DiagramReport {
    pub fn passed(&self) -> bool {
        self.composite_mismatches.is_empty() && self.descent_failures.is_empty()
    }
}

/// `q∘W∘π` agrees with `Ψ` on all monomials with `p ≤ p_max` (and `q` in a
/// matching range), and `ρ̄` maps `J_n` into `J̄_n`.
pub fn verify_diagram(n: i32, p_max: i32) -> Result<DiagramReport, MapError> {
    let composite = pi_map(n).then(&w_map(n))?.then(&q_map(n))?;
    let psi = psi_map(n);
    let src = Algebra::r_n(n);
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for p in 0..=p_max {
        for q in -p_max..=p_max {
            for e in src.monomials_at(BiDegree::new(p, q))? {
                let m = Poly::monomial(&src, e, 1);
                checked += 1;
                if composite.apply(&m)? != psi.apply(&m)? {
                    mismatches.push(m.to_string());
                }
            }
        }
    }
    let jb = jbar(n)?;
    let rho = rho_bar_map(n);
    let mut descent = Vec::new();
    for g in &j_ideal(n)?.generators {
        if !ideal_contains(&jb, &rho.apply(g)?)? {
            descent.push(g.to_string());
        }
    }
    Ok(DiagramReport { n, monomials_checked: checked, composite_mismatches: mismatches, descent_failures: descent })
}

#[derive(Debug, Clone, Serialize)]
pub struct KernelReport {
    pub n: i32,
    pub bidegrees_checked: usize,
    pub failures: Vec<BiDegree>,
}

/// `ker(𝓐[h,x] → Z[ξ,ξ⁻¹,h,φ]/𝓒_n) = ⟨ε⟩ + J_n`, bidegree-wise.
pub fn verify_forgetful_kernel(n: i32, w: &BidegreeWindow) -> Result<KernelReport, MapError> {
    let j = j_ideal(n)?;
    let eps = Ideal::new("eps", &j.alg, vec![Poly::v(&j.alg, "e")])?;
    let expected = j.plus(&eps);
    let chow = chow_ideal(n)?;
    let f = psi_hat_map(n);
    let mut failures = Vec::new();
    let mut checked = 0;
    for d in w.iter() {
        let src = Piece::at(&j.alg, d)?;
        checked += 1;
        if src.dim() == 0 {
            continue;
        }
        let tgt = Piece::at(&chow.alg, d)?;
        let mut rows = Vec::with_capacity(src.dim());
        for e in &src.basis {
            rows.push(tgt.vector(&f.apply(&Poly::monomial(&src.alg, e.clone(), 1))?)?);
        }
        let ker: IntLattice = preimage(&rows, &chow.span_in(&tgt)?);
        if !ker.same_as(&expected.span_in(&src)?) {
            failures.push(d);
        }
    }
    Ok(KernelReport { n, bidegrees_checked: checked, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{big_f_in, f_bar_in};

    #[test]
    fn w_images() {
        let w = w_map(3);
        let e = Poly::v(&w.source, "e");
        assert_eq!(w.apply(&e).unwrap(), Poly::parse(&w.target, "xi*w1").unwrap());
    }

    #[test]
    fn q_image_of_wbar() {
        let q = q_map(2);
        let wn = Poly::v(&q.source, "wn");
        assert_eq!(q.apply(&wn).unwrap(), Poly::parse(&q.target, "w1^2 + w2").unwrap());
    }

    #[test]
    fn psi_of_f_is_scaled_fbar() {
        for n in 0..10 {
            let psi = psi_map(3);
            let f = big_f_in(&Algebra::r_n(3), n);
            let want = &Poly::vp(&psi.target, "xi", n) * &f_bar_in(&psi.target, n);
            assert_eq!(psi.apply(&f).unwrap(), want, "n={n}");
        }
    }

    #[test]
    fn g3_dies_for_n1() {
        let psi = psi_map(1);
        let jh = jhat(1).unwrap();
        let img = psi.apply(&jh.generators[2]).unwrap();
        assert!(ideal_contains(&jbar(1).unwrap(), &img).unwrap());
    }

    #[test]
    fn g4_for_n4_is_scaled_beta() {
        // β₄ = w₂^{δ}(f̄₄² + w₂⁴) with δ = 0 and Ψ(𝐠₄) = ξ⁸β₄.
        let psi = psi_map(4);
        let t = &psi.target;
        let jh = jhat(4).unwrap();
        let img = psi.apply(&jh.generators[3]).unwrap();
        let f4 = f_bar_in(t, 4);
        let beta = &(&f4 * &f4) + &Poly::vp(t, "w2", 4);
        assert_eq!(img, &Poly::vp(t, "xi", 8) * &beta);
        assert!(ideal_contains(&jbar(4).unwrap(), &beta).unwrap());
    }

    #[test]
    fn generator_images() {
        assert_eq!(forgetful_image("h", 5).unwrap(), Poly::v(&Algebra::chow_xi(3), "h"));
        let c = Algebra::chow_xi(2);
        assert_eq!(forgetful_image("x", 4).unwrap(), Poly::parse(&c, "xi^-3*h^2 - 2*xi^-3*phi").unwrap());
        assert!(forgetful_image("x", 3).unwrap().is_zero());
        assert!(forgetful_image("y", 3).is_err());
        let f = Algebra::f2_w();
        assert_eq!(reduction_image("h", 3).unwrap(), Poly::parse(&f, "xi*w2").unwrap());
        assert_eq!(reduction_image("e", 3).unwrap(), Poly::parse(&f, "xi*w1").unwrap());
        assert_eq!(reduction_image("x", 3).unwrap(), &Poly::vp(&f, "xi", -1) * &f_bar_in(&f, 3));
    }

    #[test]
    fn degree_checked_on_construction() {
        let src = Algebra::a_h();
        let tgt = Algebra::a_h();
        let bad = RingMap::new(
            "bad",
            &src,
            &tgt,
            vec![
                ("e", Poly::v(&tgt, "h"), None),
                ("t", Poly::v(&tgt, "t"), Some(Poly::vp(&tgt, "t", -1))),
                ("h", Poly::v(&tgt, "h"), None),
            ],
        );
        assert!(matches!(bad, Err(MapError::DegreeMismatch { .. })));
    }

    #[test]
    fn algebraic_n2() {
        let r = verify_prop_algebraic(2, &BidegreeWindow::standard(2)).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn algebraic_odd_uses_graded_pieces() {
        let (_, rhs) = eps_identity_ideals(3).unwrap();
        assert_eq!(rhs.generator_strings(), vec!["e", "x", "-t^3*x^2", "h^4"]);
        let r = verify_prop_algebraic(3, &BidegreeWindow::standard(3)).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn diagram_small() {
        for n in 1..=3 {
            let r = verify_diagram(n, 6).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn forgetful_kernel_small() {
        for n in 1..=4 {
            let r = verify_forgetful_kernel(n, &BidegreeWindow::standard(n)).unwrap();
            assert!(r.failures.is_empty(), "n={n}: {:?}", r.failures);
        }
    }
}
