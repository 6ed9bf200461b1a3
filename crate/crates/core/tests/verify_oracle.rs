mod common;

use packcolor::graph::GraphSpec;
use packcolor::verify::{min_same_color_distance_on_path, verify, verify_path_pattern};
use packcolor::{PeriodicColoring, Verdict};
use proptest::prelude::*;

fn spec_and_word() -> impl Strategy<Value = ((u64, u64), Vec<u32>)> {
    let spec = (2u64..=12)
        .prop_flat_map(|t| (1..t, Just(t)))
        .prop_filter("connected", |&(k, t)| num_gcd(k, t) == 1);
    (spec, prop::collection::vec(1u32..=8, 1..=60))
}

fn num_gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

fn check_agreement(k: u64, t: u64, word: Vec<u32>) -> Result<(), TestCaseError> {
    let spec = GraphSpec::new(k, t).unwrap();
    let coloring = PeriodicColoring::new(word.clone(), 0).unwrap();
    let verdict = verify(&spec, &coloring).unwrap();
    let conflict = common::periodic_word_has_conflict(k as i64, t as i64, &word);
    prop_assert_eq!(verdict.is_valid(), !conflict);
    if let Verdict::Invalid(w) = verdict {
        prop_assert_eq!(coloring.color_at(w.u), w.color);
        prop_assert_eq!(coloring.color_at(w.v), w.color);
        prop_assert!(w.distance <= w.color as u64);
        prop_assert_eq!(spec.distance(w.v - w.u).unwrap(), w.distance);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn verify_agrees_with_all_pairs(((k, t), word) in spec_and_word()) {
        check_agreement(k, t, word)?;
    }

    #[test]
    fn sparse_high_colors_agree(
        ((k, t), base) in spec_and_word(),
        stretch in 1u32..4,
    ) {
        // Bias towards valid words: mostly large colors with a few 1s.
        let word: Vec<u32> = base.iter().map(|&c| if c <= stretch { 1 } else { c + 4 }).collect();
        check_agreement(k, t, word)?;
    }
}

#[test]
fn path_distances() {
    let w = PeriodicColoring::new(vec![1, 2, 1, 3, 1, 2, 1, 4], 0).unwrap();
    assert_eq!(min_same_color_distance_on_path(&w, 1).unwrap(), 2);
    assert_eq!(min_same_color_distance_on_path(&w, 2).unwrap(), 4);
    assert_eq!(min_same_color_distance_on_path(&w, 4).unwrap(), 8);
    assert!(min_same_color_distance_on_path(&w, 5).is_err());
    assert!(verify_path_pattern(&w).is_valid());
    let bad = PeriodicColoring::new(vec![1, 2, 1, 3, 2], 0).unwrap();
    assert!(!verify_path_pattern(&bad).is_valid());
}
