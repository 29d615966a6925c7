mod common;

use common::{real_symbol, PadicOracle};
use isospec::cyclic_symbols::hilbert_symbol;
use isospec::Place;
use num_rational::Rational64;

#[test]
fn formula_matches_solvability_search() {
    let mut oracle = PadicOracle::new();
    let mut mismatches = Vec::new();
    for a in (-20i64..=20).filter(|&x| x != 0) {
        for b in (-20i64..=20).filter(|&x| x != 0) {
            let (ra, rb) = (Rational64::from_integer(a), Rational64::from_integer(b));
            for p in [2u64, 3, 5, 7, 11, 13] {
                let formula = hilbert_symbol(ra, rb, &Place::prime(p)).unwrap();
                if formula != oracle.symbol((a, 1), (b, 1), p) {
                    mismatches.push((a, b, p));
                }
            }
            assert_eq!(hilbert_symbol(ra, rb, &Place::real()).unwrap(), real_symbol(a, b));
        }
    }
    assert!(mismatches.is_empty(), "{mismatches:?}");
}

#[test]
fn rational_arguments_match() {
    let mut oracle = PadicOracle::new();
    for (a, b) in [((3, 4), (-5, 9)), ((-7, 2), (6, 5)), ((1, 18), (-1, 3)), ((10, 7), (-14, 15))] {
        for p in [2u64, 3, 5, 7] {
            let formula = hilbert_symbol(Rational64::new(a.0, a.1), Rational64::new(b.0, b.1), &Place::prime(p)).unwrap();
            assert_eq!(formula, oracle.symbol(a, b, p), "({a:?}, {b:?}) at {p}");
        }
    }
}

#[test]
fn documented_values() {
    let mut oracle = PadicOracle::new();
    assert_eq!(oracle.symbol((-1, 1), (-1, 1), 2), -1);
    assert_eq!(oracle.symbol((-1, 1), (-1, 1), 5), 1);
    assert_eq!(oracle.symbol((-1, 1), (3, 1), 3), -1);
    assert_eq!(oracle.symbol((-1, 1), (3, 1), 2), -1);
    assert_eq!(oracle.symbol((1, 1), (7, 1), 7), 1);
}
