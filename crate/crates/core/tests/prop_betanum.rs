use std::collections::BTreeSet;

use aperiodica::betanum::{
    beta_substitution, first_beta_integers, greedy_expand, parry_admissible, renyi_development,
    BetaBasis, DigitString, QuadraticSign,
};
use aperiodica::exactnum::QuadraticReal;
use num_traits::ToPrimitive;
use proptest::prelude::*;

/// `τ`, `1+√2` and `2+√3`.
fn bases() -> Vec<BetaBasis> {
    vec![
        BetaBasis::from_polynomial(1, 1, QuadraticSign::Plus).unwrap(),
        BetaBasis::from_polynomial(2, 1, QuadraticSign::Plus).unwrap(),
        BetaBasis::from_polynomial(4, 1, QuadraticSign::Minus).unwrap(),
    ]
}

fn max_digit(b: &BetaBasis) -> u32 {
    b.beta().ceil().to_u32().unwrap() - 1
}

fn basis_and_digits(max_len: usize) -> impl Strategy<Value = (usize, Vec<u32>)> {
    (0..3usize).prop_flat_map(move |i| {
        let top = max_digit(&bases()[i]);
        (Just(i), prop::collection::vec(0..=top, 1..=max_len))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn admissible_strings_are_exactly_greedy_ones((i, digits) in basis_and_digits(12)) {
        let b = &bases()[i];
        let s = DigitString::integer(digits.clone()).trimmed();
        let x = s.value(b);
        let g = greedy_expand(&x, b, 40).unwrap();
        let admissible = parry_admissible(&digits, b).unwrap();
        prop_assert_eq!(admissible, g.trimmed() == s, "{} vs greedy {}", s, g);
    }

    #[test]
    fn greedy_expansion_round_trips((i, digits) in basis_and_digits(14), shift in 0i64..6) {
        let b = &bases()[i];
        let exponent = digits.len() as i64 - 1 - shift;
        let s = DigitString { digits, exponent: exponent.max(0), exact: true };
        let x = s.value(b);
        let g = greedy_expand(&x, b, 300).unwrap();
        if i < 2 {
            // finiteness holds for β² = mβ + 1
            prop_assert!(g.exact, "{} expands to {}", x, g);
        }
        if g.exact {
            prop_assert_eq!(g.value(b), x);
        } else {
            prop_assert!(g.value(b) < x);
        }
        prop_assert!(parry_admissible(&g.digits, b).unwrap());
    }
}

#[test]
fn renyi_development_sums_to_one() {
    let mut forms = Vec::new();
    for m in 1..=6u64 {
        for n in 1..=m {
            forms.push((m, n, QuadraticSign::Plus));
        }
        for n in 1..=m.saturating_sub(2) {
            forms.push((m, n, QuadraticSign::Minus));
        }
    }
    for (m, n, s) in forms {
        let b = BetaBasis::from_polynomial(m, n, s).unwrap();
        let d = renyi_development(&b, 4096).unwrap();
        assert_eq!(
            d.value(&b).unwrap(),
            QuadraticReal::one(),
            "beta^2 = {m} beta {s:?} {n}"
        );
        let q = d.quasi_greedy();
        assert_eq!(q.value(&b).unwrap(), QuadraticReal::one());
    }
}

#[test]
fn gap_words_are_fixed_points() {
    let units: Vec<(u64, QuadraticSign)> = (1..=5)
        .map(|m| (m, QuadraticSign::Plus))
        .chain((3..=6).map(|m| (m, QuadraticSign::Minus)))
        .collect();
    for (m, s) in units {
        let b = BetaBasis::from_polynomial(m, 1, s).unwrap();
        let z = first_beta_integers(&b, 1000).unwrap();
        let phi = beta_substitution(&b).unwrap();
        let gaps = z.gap_word();
        assert_eq!(
            phi.render(&phi.fixed_point_prefix(0, gaps.len()).unwrap()),
            gaps,
            "m = {m}, {s:?}"
        );
    }
}

#[test]
fn beta_times_beta_integers_stay_inside() {
    let mut all = bases();
    all.push(BetaBasis::from_polynomial(2, 2, QuadraticSign::Plus).unwrap());
    all.push(BetaBasis::from_polynomial(5, 3, QuadraticSign::Minus).unwrap());
    for b in &all {
        let z = first_beta_integers(b, 400).unwrap();
        let set: BTreeSet<&QuadraticReal> = z.points.iter().collect();
        let top = z.points.last().unwrap();
        for x in &z.points {
            let y = b.beta() * x;
            if &y > top {
                break;
            }
            assert!(set.contains(&y), "beta = {}: beta * {x} missing", b.beta());
        }
    }
}
