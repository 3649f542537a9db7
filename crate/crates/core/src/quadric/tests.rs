use super::*;
use crate::coeff_rings::{BElem, BMono};
use crate::ideals::BidegreeWindow;
use proptest::prelude::*;

fn same_class(r: &ModelRing, a: &QClass, b: &QClass) -> bool {
    let diff = a.add(&b.neg());
    if diff.is_zero() {
        return true;
    }
    let Some(d) = r.degree(&diff) else { return false };
    let piece = r.piece(d).unwrap();
    let v = r.vector(&diff, &piece).unwrap();
    crate::bigraded_core::IntLattice::new(piece.classes.len(), piece.relations.clone()).contains(&v)
}

#[test]
fn conic_groups() {
    assert_eq!(cohomology_group(1, 0, 2, 1).unwrap(), FgAbGroup::free(1));
    assert_eq!(cohomology_group(1, 0, 1, 1).unwrap(), FgAbGroup::with_twos(0, 1));
    for q in -6..=6 {
        let expected = if q % 2 == 0 { FgAbGroup::with_twos(0, 1) } else { FgAbGroup::free(1) };
        assert_eq!(cohomology_group(1, 0, 2, q).unwrap(), expected, "q={q}");
    }
}

#[test]
fn parameters_are_validated() {
    assert!(matches!(cohomology_group(1, 1, 0, 0), Err(QuadricError::Params { .. })));
    assert!(presentation(0, 0).is_err());
    assert!(ring(3, -1).is_err());
}

#[test]
fn anisotropic_presentations() {
    assert_eq!(presentation(1, 0).unwrap().to_string(), "A[h]/(e^3, e*h, h^2)");
    assert_eq!(presentation(2, 0).unwrap().to_string(), "A[h,x]/(e^3, e*t*x + e*h, h*x, t^2*x^2 + h^2)");
    assert_eq!(presentation(3, 0).unwrap().to_string(), "A[h]/(e^5 + e*t*h^2, e^3*h, h^4)");
}

#[test]
fn isotropic_presentation_degrees() {
    let p = presentation(2, 1).unwrap();
    assert_eq!(p.base, BaseRing::BsEta(1));
    let eta = p.generators.iter().find(|g| g.name == "eta").unwrap();
    assert_eq!(eta.degree, BiDegree::new(4, 2));
    let x = p.generators.iter().find(|g| g.name == "x").unwrap();
    assert_eq!(x.degree, BiDegree::new(0, -1));
    assert!(p.relations.contains(&"h^2 - 2*eta".to_string()));
    assert_eq!(presentation(6, 2).unwrap().generators[1].degree, BiDegree::new(2, -1));
}

#[test]
fn h_squared_is_twice_eta() {
    assert_eq!(multiply(2, 1, "h", "h").unwrap().to_string(), "2*eta");
}

#[test]
fn eta_squares_to_zero() {
    for (n, s) in [(2, 1), (3, 1), (4, 2), (5, 2)] {
        assert!(multiply(n, s, "eta", "eta").unwrap().is_zero());
    }
}

#[test]
fn interior_x_squared_lands_on_top_eta_class() {
    // x² = -τ⁻²h² in the interior, and 𝐡^s·j_†(-τ⁻²h²) = -2τ⁻²η = -τ⁻¹αη.
    let r = ring(4, 1).unwrap();
    let mut expected = QClass::zero(&r);
    expected.eta.insert(0, BElem::monomial(-1, BMono::Alpha { j: 1 }));
    assert_eq!(multiply(4, 1, "int:x", "int:x").unwrap(), expected);
    // Zero-dimensional interior: x² = τ⁻¹, giving 2τ⁻¹η = αη.
    assert_eq!(multiply(2, 1, "int:x", "int:x").unwrap().to_string(), "a*eta");
}

#[test]
fn mixed_interior_products_vanish() {
    assert!(multiply(4, 1, "int:x", "h").unwrap().is_zero());
    assert!(multiply(4, 1, "int:x", "int:h").unwrap().is_zero());
    assert!(multiply(4, 1, "int:x", "eta").unwrap().is_zero());
}

#[test]
fn anisotropic_products() {
    assert!(multiply(4, 0, "h^4", "h").unwrap().is_zero());
    assert!(multiply(1, 0, "h", "h").unwrap().is_zero());
}

#[test]
fn free_quotients() {
    assert_eq!(free_quotient(1).unwrap().relations, vec!["h^2"]);
    assert_eq!(free_quotient(3).unwrap().relations, vec!["h^4"]);
    assert_eq!(free_quotient(2).unwrap().relations, vec!["h^3", "h*chi", "t^2*chi^2 + h^2"]);
}

#[test]
fn mod2_dimensions() {
    assert_eq!(grassmannian_mod2(1, 0, 0).unwrap(), 1);
    assert_eq!(grassmannian_mod2(1, 1, 0).unwrap(), 1);
    assert_eq!(grassmannian_mod2(1, 3, 0).unwrap(), 0);
}

#[test]
fn cellular_rebasing() {
    assert_eq!(cellular_ring(&projective_chow(0)).unwrap().to_string(), "B");
    assert_eq!(cellular_ring(&projective_chow(1)).unwrap().to_string(), "B[h]/(h^2)");
    let q2 = cellular_ring(&chow_presentation(2).unwrap()).unwrap();
    assert_eq!(q2.to_string(), "B[h,phi]/(h^2 - 2*h*phi, phi^2)");
    let bad = Presentation { base: BaseRing::Z, generators: vec![gen("x", 2, -1)], relations: vec![] };
    assert!(matches!(cellular_ring(&bad), Err(QuadricError::GeneratorDegree { .. })));
}

#[test]
fn corrected_reading_matches_small_cases() {
    for (n, s) in [(2, 1), (3, 1), (4, 2)] {
        let rep = checks::isotropic_presentation(n, s, IdealReading::Corrected, &checks::isotropic_window(n)).unwrap();
        assert!(rep.passed(), "({n},{s}): {rep:?}");
    }
}

#[test]
fn literal_reading_forces_two_eta_to_vanish() {
    let rep = checks::isotropic_presentation(3, 1, IdealReading::Literal, &checks::isotropic_window(3)).unwrap();
    assert_eq!(rep.surviving_generators, vec!["h^1*(h^2)"]);
    // At the η degree the model has Z but the literal quotient only Z/2.
    let m = rep.group_mismatches.iter().find(|m| (m.p, m.q) == (6, 3)).unwrap();
    assert_eq!(m.model, FgAbGroup::free(1));
    assert_eq!(m.presentation, FgAbGroup::with_twos(0, 1));
}

#[test]
fn evaluation_is_multiplicative() {
    for (n, s) in [(2, 1), (4, 1), (4, 2)] {
        let r = ring(n, s).unwrap();
        let f = theorem_a::multiplicativity_failures(&r, &BidegreeWindow::new(0, n + 2, -3, 3).unwrap()).unwrap();
        assert!(f.is_empty(), "({n},{s}): {:?}", f.first());
    }
}

fn basis_classes(r: &ModelRing, w: &BidegreeWindow) -> Vec<QClass> {
    w.iter().flat_map(|d| r.generators_at(d).unwrap()).collect()
}

#[test]
fn products_are_associative_and_additive() {
    for (n, s) in [(2, 1), (3, 1), (4, 2)] {
        let r = ring(n, s).unwrap();
        let classes = basis_classes(&r, &BidegreeWindow::new(0, 2 * n, -2, 2).unwrap());
        for a in &classes {
            for b in &classes {
                let ab = r.multiply(a, b).unwrap();
                if let Some(d) = r.degree(&ab) {
                    assert_eq!(d, r.degree(a).unwrap() + r.degree(b).unwrap());
                }
                for c in &classes {
                    let left = r.multiply(&ab, c).unwrap();
                    let right = r.multiply(a, &r.multiply(b, c).unwrap()).unwrap();
                    assert!(same_class(&r, &left, &right), "({n},{s}): ({a})({b})({c}): {left} vs {right}");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_triples_associate(
        ns in prop::sample::select(vec![(2, 1), (4, 1), (5, 2), (6, 2), (6, 3)]),
        picks in prop::collection::vec((0i32..13, -7i32..8, 0usize..8), 3),
    ) {
        let (n, s) = ns;
        let r = ring(n, s).unwrap();
        let mut cls = Vec::new();
        for (p, q, k) in picks {
            let gens = r.generators_at(BiDegree::new(p.min(2 * n), q)).unwrap();
            if gens.is_empty() {
                return Ok(());
            }
            cls.push(gens[k % gens.len()].clone());
        }
        let left = r.multiply(&r.multiply(&cls[0], &cls[1]).unwrap(), &cls[2]).unwrap();
        let right = r.multiply(&cls[0], &r.multiply(&cls[1], &cls[2]).unwrap()).unwrap();
        prop_assert!(same_class(&r, &left, &right));
    }
}
