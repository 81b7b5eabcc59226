//! Shared proptest strategies for the unit tests.

use alloc::vec::Vec;
use proptest::prelude::*;

use crate::{LinearEquation, Quaternion};

pub fn arb_quaternion() -> impl Strategy<Value = Quaternion> {
    [-1.0f64..1.0, -1.0..1.0, -1.0..1.0, -1.0..1.0].prop_map(Quaternion::from_array)
}

pub fn arb_terms(max_len: usize) -> impl Strategy<Value = Vec<(Quaternion, Quaternion)>> {
    proptest::collection::vec((arb_quaternion(), arb_quaternion()), 1..=max_len)
}

/// Plain equation with 1..=max_len terms and a random right-hand side.
pub fn arb_plain_equation(max_len: usize) -> impl Strategy<Value = LinearEquation> {
    (arb_terms(max_len), arb_quaternion())
        .prop_map(|(terms, rhs)| LinearEquation::plain(terms, rhs))
}
