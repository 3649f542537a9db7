mod common;

use quadric_bredon::bigraded_core::FgAbGroup;
use quadric_bredon::quadric::cohomology_group;

#[test]
fn oracle_matches_the_expected_pattern() {
    assert_eq!(common::conic_oracle(0, 4), FgAbGroup::free(1));
    assert_eq!(common::conic_oracle(1, 3), FgAbGroup::with_twos(0, 1));
    assert_eq!(common::conic_oracle(2, -2), FgAbGroup::with_twos(0, 1));
    assert_eq!(common::conic_oracle(2, -3), FgAbGroup::free(1));
    assert!(common::conic_oracle(0, 1).is_zero());
    assert!(common::conic_oracle(1, 0).is_zero());
    assert!(common::conic_oracle(3, 0).is_zero());
}

#[test]
fn conic_groups_match_cochain_oracle() {
    for q in -6..=6 {
        for p in -2..=4 {
            assert_eq!(cohomology_group(1, 0, p, q).unwrap(), common::conic_oracle(p, q), "p={p} q={q}");
        }
    }
}
