//! Seeded random generators for test vectors and report evidence.
//!
//! Entries are small rationals so that exact arithmetic stays cheap even
//! through twentieth powers; every generator takes the caller's RNG so
//! that reports are reproducible from a seed.

use rand::Rng;

use crate::scalar::Scalar;
use crate::seq::{ConvSeq, FinSeq, IndexBase};

/// A random rational with numerator in `[-bound, bound]` and denominator
/// in `[1, den_bound]`. May be zero.
pub fn rational(rng: &mut impl Rng, bound: i64, den_bound: i64) -> Scalar {
    let p = rng.random_range(-bound..=bound);
    let q = rng.random_range(1..=den_bound);
    Scalar::rational(p, q)
}

/// A random nonzero rational.
pub fn nonzero_rational(rng: &mut impl Rng, bound: i64, den_bound: i64) -> Scalar {
    loop {
        let s = rational(rng, bound, den_bound);
        if !s.is_zero() {
            return s;
        }
    }
}

/// A random finitely supported sequence with support extent at most
/// `max_extent` and roughly half of those positions filled.
pub fn fin_seq(rng: &mut impl Rng, base: IndexBase, max_extent: u32) -> FinSeq {
    let first = base.first_index();
    let extent = rng.random_range(0..=max_extent) as i64;
    let mut entries = Vec::new();
    for k in first..first + extent {
        if rng.random_bool(0.5) {
            entries.push((k, rational(rng, 9, 9)));
        }
    }
    if extent > 0 {
        // pin the extent so support bounds are exercised
        entries.push((first + extent - 1, nonzero_rational(rng, 9, 9)));
    }
    FinSeq::from_entries(base, entries).expect("indices start at the base")
}

/// A random nonzero finitely supported sequence.
pub fn nonzero_fin_seq(rng: &mut impl Rng, base: IndexBase, max_extent: u32) -> FinSeq {
    loop {
        let x = fin_seq(rng, base, max_extent.max(1));
        if !x.is_zero() {
            return x;
        }
    }
}

/// A random convergent sequence in the limit-plus-deviation model. The
/// limit is zero with probability about one quarter.
pub fn conv_seq(rng: &mut impl Rng, max_extent: u32) -> ConvSeq {
    let limit = if rng.random_bool(0.25) {
        Scalar::zero()
    } else {
        rational(rng, 9, 9)
    };
    let deviation = fin_seq(rng, IndexBase::One, max_extent);
    ConvSeq::new(limit, deviation).expect("deviation lives over the naturals")
}
