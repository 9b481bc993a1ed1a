//! Random inputs: proptest strategies and seeded samplers.

#![allow(dead_code)]

use proptest::prelude::*;
use qsphere::algebra::{normalize, AlgebraElement, FreeElement, FreeWord, Generator, NormalMonomial};
use qsphere::chains::ChainElement;
use qsphere::scalars::{rational, Scalar};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn scalar() -> impl Strategy<Value = Scalar> {
    prop::collection::vec(((-2i32..=2, -2i32..=2), -5i64..=5, 1i64..=4), 0..=3)
        .prop_map(|ts| Scalar::from_terms(ts.into_iter().map(|((a, b), n, d)| ((a, b), rational(n, d)))))
}

pub fn nonzero_scalar() -> impl Strategy<Value = Scalar> {
    scalar().prop_filter("nonzero", |s| !s.is_zero())
}

pub fn word(max_len: usize) -> impl Strategy<Value = FreeWord> {
    prop::collection::vec(prop::sample::select(Generator::ALL.to_vec()), 0..=max_len)
}

pub fn free_element(max_terms: usize, max_len: usize) -> impl Strategy<Value = FreeElement> {
    prop::collection::vec((word(max_len), scalar()), 1..=max_terms).prop_map(FreeElement::from_terms)
}

pub fn algebra_element(max_terms: usize, max_len: usize) -> impl Strategy<Value = AlgebraElement> {
    free_element(max_terms, max_len).prop_map(|x| normalize(&x))
}

pub fn monomial() -> impl Strategy<Value = NormalMonomial> {
    (-2i32..=2, 0u32..=2, 0u32..=2, 0u32..=2).prop_map(|(k, m, n, l)| NormalMonomial::new(k, m, n, l))
}

pub fn chain(degrees: std::ops::RangeInclusive<usize>, max_terms: usize) -> impl Strategy<Value = ChainElement> {
    degrees.prop_flat_map(move |d| {
        prop::collection::vec(
            (prop::collection::vec(monomial(), d + 1), nonzero_scalar()),
            1..=max_terms,
        )
        .prop_map(move |terms| {
            let mut out = ChainElement::zero(d);
            for (slots, c) in terms {
                out.add_term(slots, c);
            }
            out
        })
    })
}

pub fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> FreeWord {
    let len = rng.random_range(0..=max_len);
    (0..len)
        .map(|_| Generator::ALL[rng.random_range(0..Generator::ALL.len())])
        .collect()
}

pub fn random_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    let n = rng.random_range(1..=2);
    Scalar::from_terms((0..n).map(|_| {
        let e = (rng.random_range(-1..=1), rng.random_range(-1..=1));
        (e, rational(rng.random_range(-4..=4), rng.random_range(1..=3)))
    }))
}

pub fn random_free(rng: &mut ChaCha8Rng, max_terms: usize, max_len: usize) -> FreeElement {
    let n = rng.random_range(1..=max_terms);
    FreeElement::from_terms((0..n).map(|_| (random_word(rng, max_len), random_scalar(rng))))
}

/// Length of the longest word with a nonzero coefficient.
pub fn max_word_len(x: &FreeElement) -> usize {
    x.terms().map(|(w, _)| w.len()).max().unwrap_or(0)
}
