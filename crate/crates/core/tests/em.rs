use mstruct_core::error::Error;
use mstruct_core::simpchain::em_space;
use mstruct_core::zmod::{homology, AbelianGroup};
use proptest::prelude::*;

fn group(s: &str) -> AbelianGroup {
    s.parse().unwrap()
}

fn homology_of(m: &str, k: usize, bound: usize) -> Vec<String> {
    let x = em_space(&group(m), k, bound).unwrap();
    let h = homology(&x.chains(), 1, bound as i64);
    (1..=bound as i64).map(|d| h[&d].to_string()).collect()
}

#[test]
fn integers_in_degree_one_is_a_circle() {
    assert_eq!(homology_of("Z", 1, 3), ["ℤ", "0", "0"]);
}

#[test]
fn mod_two_in_degree_one_is_projective_space() {
    let x = em_space(&group("Z/2"), 1, 3).unwrap();
    for d in 0..=4 {
        assert_eq!(x.of_dim(d).len(), 1);
    }
    assert_eq!(homology_of("Z/2", 1, 3), ["ℤ/2", "0", "ℤ/2"]);
}

#[test]
fn lens_space_pattern() {
    assert_eq!(homology_of("Z/3", 1, 4), ["ℤ/3", "0", "ℤ/3", "0"]);
}

#[test]
fn mod_two_in_degree_two() {
    assert_eq!(homology_of("Z/2", 2, 4), ["0", "ℤ/2", "0", "ℤ/4"]);
}

#[test]
fn mixed_group_in_degree_one() {
    assert_eq!(homology_of("Z + Z/2", 1, 2), ["ℤ ⊕ ℤ/2", "ℤ/2"]);
}

#[test]
fn free_part_above_degree_one_is_truncated() {
    assert_eq!(homology_of("Z", 2, 3), ["0", "ℤ", "0"]);
    assert!(matches!(em_space(&group("Z"), 2, 4), Err(Error::BoundExhausted(_))));
}

#[test]
fn bad_parameters() {
    assert!(matches!(em_space(&group("Z/2"), 0, 3), Err(Error::Precondition(_))));
    assert!(matches!(em_space(&group("Z/2"), 3, 2), Err(Error::Precondition(_))));
    assert!("Z/0".parse::<AbelianGroup>().is_err());
    assert!("Q".parse::<AbelianGroup>().is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn hurewicz_degree(d in 2u64..=5, k in 1usize..=2, free in 0usize..=1) {
        let m = AbelianGroup::free(free).direct_sum(&AbelianGroup::cyclic(d));
        let x = em_space(&m, k, k).unwrap();
        let h = homology(&x.chains(), 1, k as i64);
        for i in 1..k as i64 {
            prop_assert!(h[&i].is_zero());
        }
        prop_assert_eq!(&h[&(k as i64)], &m);
    }
}
