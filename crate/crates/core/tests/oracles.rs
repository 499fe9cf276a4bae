//! The engine against independent rank oracles.

mod common;

use common::oracle::{oracle_hc, oracle_hoch};
use dgcoh::cyclic::{hc, hoch};
use dgcoh::fixtures::{group_likes, trivial};
use dgcoh::Field;

#[test]
fn oracle_values() {
    assert_eq!(oracle_hoch(1, 4), vec![1, 0, 0, 0, 0]);
    assert_eq!(oracle_hoch(3, 3), vec![3, 0, 0, 0]);
    assert_eq!(oracle_hc(4), vec![1, 0, 1, 0, 1]);
}

#[test]
fn hoch_of_the_ground_field_matches_oracle() {
    for f in [Field::Rational, Field::Prime(5)] {
        let got: Vec<usize> = hoch(&trivial(f), 4).unwrap().into_values().collect();
        assert_eq!(got, oracle_hoch(1, 4));
    }
}

#[test]
fn hc_of_the_ground_field_matches_oracle() {
    let got: Vec<usize> = hc(&trivial(Field::Rational), 4, None).unwrap().into_values().collect();
    assert_eq!(got, oracle_hc(4));
}

#[test]
fn hoch_of_group_likes_matches_oracle() {
    for m in 1..=3 {
        let got: Vec<usize> = hoch(&group_likes(Field::Rational, m), 3).unwrap().into_values().collect();
        assert_eq!(got, oracle_hoch(m, 3), "k^{m}");
    }
}
