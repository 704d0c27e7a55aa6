//! Fibonacci and Lucas numbers modulo p² (or any modulus).
//!
//! The corollary sums need F_k and L_k as plain integers mod p², so both are
//! computed by integer recurrences — no √5, no quadratic extension.

use crate::residue::{Modulus, PrimeContext, Residue};

/// F_k and L_k reduced mod the modulus they were built with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibPair {
    pub k: u64,
    pub fib: Residue,
    pub lucas: Residue,
}

/// Fast doubling: F_{2i} = F_i(2F_{i+1} − F_i), F_{2i+1} = F_i² + F_{i+1}²,
/// walking the bits of k from the top. L_k = 2F_{k+1} − F_k. O(log k) steps.
pub fn fib_lucas(k: u64, m: &Modulus) -> FibPair {
    // (f, g) = (F_i, F_{i+1}), i built up bit by bit.
    let (mut f, mut g) = (m.zero(), m.one());
    for bit in (0..u64::BITS - k.leading_zeros()).rev() {
        let two_g = m.add(&g, &g);
        let f2i = m.mul(&f, &m.sub(&two_g, &f));
        let f2i1 = m.add(&m.mul(&f, &f), &m.mul(&g, &g));
        if (k >> bit) & 1 == 0 {
            (f, g) = (f2i, f2i1);
        } else {
            let next = m.add(&f2i, &f2i1);
            (f, g) = (f2i1, next);
        }
    }
    let lucas = m.sub(&m.add(&g, &g), &f);
    FibPair { k, fib: f, lucas }
}

/// Consecutive (F_k, L_k) mod p² for k = 0..p−1 by the linear recurrence;
/// agrees with [`fib_lucas`] at every index.
pub fn fib_lucas_stream(ctx: &PrimeContext) -> impl Iterator<Item = FibPair> + '_ {
    let m = ctx.modulus();
    let mut f = (m.zero(), m.one());
    let mut l = (m.add(&m.one(), &m.one()), m.one());
    (0..ctx.p()).map(move |k| {
        let pair = FibPair { k, fib: f.0.clone(), lucas: l.0.clone() };
        f = (f.1.clone(), m.add(&f.0, &f.1));
        l = (l.1.clone(), m.add(&l.0, &l.1));
        pair
    })
}
