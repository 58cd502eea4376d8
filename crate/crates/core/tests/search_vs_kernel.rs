//! The zero-sum search and the circulant kernel answer the same question
//! from two directions: a nonzero periodic integer word annihilated by the
//! figure exists at period n only if the kernel at n is nontrivial.

use abelian_rigidity::lattice::{parse_figure, WeightedFigure};
use abelian_rigidity::oracle::{minimal_period_1d, search_zero_sum_1d};
use abelian_rigidity::witness::circulant_kernel_dim;
use proptest::prelude::*;

fn figure(weights: &[i64]) -> WeightedFigure {
    let text: String = std::iter::once("dim 1\n".to_string())
        .chain(weights.iter().enumerate().filter(|(_, w)| **w != 0).map(|(i, w)| format!("{i} {w}\n")))
        .collect();
    parse_figure(&text).unwrap()
}

fn weighted_sum(weights: &[i64], word: &[i64], x: usize) -> i64 {
    weights.iter().enumerate().map(|(t, g)| g * word[(x + t) % word.len()]).sum()
}

fn check(weights: &[i64], max_len: usize) {
    let fig = figure(weights);
    let r = search_zero_sum_1d(&fig, -2, 2, max_len).unwrap();
    assert!(r.exhausted);
    for word in &r.solutions {
        assert!(word.iter().any(|&v| v != 0));
        assert!((0..word.len()).all(|x| weighted_sum(weights, word, x) == 0), "{weights:?} {word:?}");
        let n = minimal_period_1d(&word.repeat(2));
        assert!(circulant_kernel_dim(&fig, n).unwrap() > 0, "{weights:?} {word:?}");
    }
    // Small kernels are spanned by vectors with tiny entries here, so a
    // nontrivial kernel at n <= max_len shows up in the search.
    for n in 1..=max_len {
        if circulant_kernel_dim(&fig, n).unwrap() > 0 {
            assert!(r.solutions.iter().any(|w| w.len() == n), "{weights:?} n={n}");
        }
    }
}

#[test]
fn cyclotomic_examples() {
    check(&[1, 1], 6);
    check(&[1, 1, 1], 6);
    check(&[1, -1, 1], 6);
    check(&[1, 2, 2, 1], 6);
    check(&[1, 0, -1], 6);
}

#[test]
fn non_cyclotomic_examples() {
    for w in [[2, 1], [1, 3], [3, -1]] {
        let fig = figure(&w);
        assert!((1..=12).all(|n| circulant_kernel_dim(&fig, n).unwrap() == 0));
        assert!(search_zero_sum_1d(&fig, -2, 2, 6).unwrap().solutions.is_empty());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn solutions_lie_in_the_kernel(w in prop::collection::vec(-2i64..=2, 2..=4)) {
        prop_assume!(w[0] != 0 && *w.last().unwrap() != 0);
        let fig = figure(&w);
        let r = search_zero_sum_1d(&fig, -1, 1, 6).unwrap();
        for word in &r.solutions {
            prop_assert!((0..word.len()).all(|x| weighted_sum(&w, word, x) == 0));
            prop_assert!(circulant_kernel_dim(&fig, word.len()).unwrap() > 0);
        }
    }
}
