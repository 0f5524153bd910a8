#![allow(dead_code)]

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::Rng;
use seaweed_core::seaweed::partial_compositions;
use seaweed_core::{AlgebraElement, Rational, SeaweedDescriptor};

pub fn d(text: &str) -> SeaweedDescriptor {
    text.parse().unwrap()
}

/// Seaweeds of rank `1..=max_n` with both compositions uniform among the
/// `2^n` partial compositions.
pub fn descriptor(max_n: usize) -> impl Strategy<Value = SeaweedDescriptor> {
    (1..=max_n).prop_flat_map(|n| {
        let count = 1usize << n;
        (Just(n), 0..count, 0..count).prop_map(|(n, a, b)| {
            let comps = partial_compositions(n);
            SeaweedDescriptor::new(n, comps[a].clone(), comps[b].clone()).unwrap()
        })
    })
}

/// A random integer combination of the basis, with small coefficients.
pub fn random_element(d: &SeaweedDescriptor, rng: &mut impl Rng) -> AlgebraElement {
    let basis = d.chevalley_basis();
    let coeffs: Vec<Rational> = basis
        .iter()
        .map(|_| Rational::from_integer(BigInt::from(rng.gen_range(-5i64..=5))))
        .collect();
    AlgebraElement::from_basis_combination(d.n(), &basis, &coeffs)
}
