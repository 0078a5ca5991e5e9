#![allow(dead_code)]

use num_bigint::BigInt;
use proptest::prelude::*;
use terai_core::form::reduced_forms;
use terai_core::{Form, TransformMatrix};

/// Negative discriminant from a seed: `-4n` or `-(4n + 3)`, magnitude at least 3.
pub fn discriminant(n: u32, odd: bool) -> BigInt {
    let n = i64::from(n.max(1));
    if odd {
        BigInt::from(-(4 * n + 3))
    } else {
        BigInt::from(-4 * n)
    }
}

/// A reduced primitive form of `disc`, picked by index.
pub fn pick_form(disc: &BigInt, index: usize) -> Form {
    let forms = reduced_forms(disc).unwrap();
    forms[index % forms.len()].clone()
}

/// Product of translations and swaps: `T^s1 S T^s2 S ...`.
pub fn unimodular(shifts: &[i64]) -> TransformMatrix {
    let swap = TransformMatrix::from_i64(0, -1, 1, 0).unwrap();
    let mut m = TransformMatrix::identity();
    for &s in shifts {
        m = m.mul(&TransformMatrix::from_i64(1, s, 0, 1).unwrap()).mul(&swap);
    }
    m
}

pub fn shifts() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-40i64..=40, 0..6)
}

/// `(disc, form)` with `|disc| <= 4 * max_n + 3`.
pub fn any_form(max_n: u32) -> impl Strategy<Value = (BigInt, Form)> {
    (1..=max_n, any::<bool>(), any::<usize>()).prop_map(|(n, odd, i)| {
        let disc = discriminant(n, odd);
        let f = pick_form(&disc, i);
        (disc, f)
    })
}

/// Three forms sharing one discriminant.
pub fn form_triple(max_n: u32) -> impl Strategy<Value = (BigInt, Form, Form, Form)> {
    (1..=max_n, any::<bool>(), any::<usize>(), any::<usize>(), any::<usize>()).prop_map(|(n, odd, i, j, l)| {
        let disc = discriminant(n, odd);
        let (f, g, h) = (pick_form(&disc, i), pick_form(&disc, j), pick_form(&disc, l));
        (disc, f, g, h)
    })
}
