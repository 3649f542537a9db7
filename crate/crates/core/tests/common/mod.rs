//! Independent oracles shared by the integration tests.

use quadric_bredon::bigraded_core::FgAbGroup;

/// Cohomology of the antipodal 2-sphere modulo the involution with
/// coefficients twisted by the `q`-th power of the sign.
///
/// The free cell structure has one orbit of cells `e_k, g·e_k` per dimension
/// with `∂e₁ = g·e₀ - e₀` and `∂e₂ = e₁ + g·e₁`. An equivariant cochain is
/// fixed by its value on `e_k`, and `g` acts on the coefficients by `(-1)^q`,
/// so both coboundaries are multiplication by an integer.
pub fn conic_oracle(p: i32, q: i32) -> FgAbGroup {
    let sign: i64 = if q.rem_euclid(2) == 0 { 1 } else { -1 };
    // coboundary[k] : C^k → C^{k+1}; C^k = 0 outside 0..=2.
    let coboundary = |k: i32| -> i64 {
        match k {
            0 => sign - 1,
            1 => 1 + sign,
            _ => 0,
        }
    };
    if !(0..=2).contains(&p) {
        return FgAbGroup::zero();
    }
    if coboundary(p) != 0 {
        // Injective on a rank-one group: no cocycles.
        return FgAbGroup::zero();
    }
    match coboundary(p - 1).unsigned_abs() {
        0 => FgAbGroup::free(1),
        1 => FgAbGroup::zero(),
        m => FgAbGroup::from_parts(0, &[m]),
    }
}
