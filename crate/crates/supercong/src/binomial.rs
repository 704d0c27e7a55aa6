//! Incremental binomial-coefficient streams mod p² and the exact
//! big-integer facts they are checked against.
//!
//! Three streams cover every binomial a congruence check needs:
//!
//! * central: C(2k,k) for 0 ≤ k ≤ p−1
//! * half:    C(n,k) for 0 ≤ k ≤ n, n = (p−1)/2
//! * middle:  C(n+k,2k) for 0 ≤ k ≤ n
//!
//! Each advances by one exact rational multiplication. The central
//! recurrence picks up a factor of p at k = n+1 (2k−1 runs through p), so
//! the stream carries a [`ValuatedResidue`]; plain mod-p² arithmetic would
//! corrupt every term past that point.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::residue::{PrimeContext, ValuatedResidue};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum StreamError {
    #[error("stream index {k} is past the last defined index {max}")]
    RangeExhausted { k: u64, max: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinomialKind {
    /// C(2k,k), defined for 0 ≤ k ≤ p−1.
    Central,
    /// C(n,k), defined for 0 ≤ k ≤ n.
    Half,
    /// C(n+k,2k), defined for 0 ≤ k ≤ n.
    Middle,
}

impl BinomialKind {
    fn max_index(self, ctx: &PrimeContext) -> u64 {
        match self {
            BinomialKind::Central => ctx.p() - 1,
            BinomialKind::Half | BinomialKind::Middle => ctx.n(),
        }
    }
}

/// One binomial family streamed in index order, one rational step at a time.
pub struct BinomialStream<'a> {
    ctx: &'a PrimeContext,
    kind: BinomialKind,
    k: u64,
    current: ValuatedResidue,
    max_k: u64,
    started: bool,
}

impl<'a> BinomialStream<'a> {
    pub fn new(kind: BinomialKind, ctx: &'a PrimeContext) -> Self {
        BinomialStream {
            ctx,
            kind,
            k: 0,
            current: ValuatedResidue::one(ctx),
            max_k: kind.max_index(ctx),
            started: false,
        }
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn current(&self) -> &ValuatedResidue {
        &self.current
    }

    /// Steps from index k to k+1 and returns the new term.
    pub fn advance(&mut self) -> Result<&ValuatedResidue, StreamError> {
        if self.k >= self.max_k {
            return Err(StreamError::RangeExhausted { k: self.k + 1, max: self.max_k });
        }
        let (k, n) = (self.k as i128, self.ctx.n() as i128);
        self.current = match self.kind {
            BinomialKind::Central => self
                .current
                .mul_rational(2 * (2 * k + 1), k + 1, self.ctx)
                .expect("central recurrence stays p-adically integral"),
            BinomialKind::Half => self
                .current
                .mul_rational(n - k, k + 1, self.ctx)
                .expect("half recurrence never touches p"),
            // Split into two factors so numerators stay far from overflow
            // even for primes near 2^64; no factor is divisible by p.
            BinomialKind::Middle => self
                .current
                .mul_rational(n + k + 1, 2 * k + 1, self.ctx)
                .and_then(|v| v.mul_rational(n - k, 2 * k + 2, self.ctx))
                .expect("middle recurrence never touches p"),
        };
        self.k += 1;
        Ok(&self.current)
    }
}

/// Yields (k, term) starting from k = 0.
impl Iterator for BinomialStream<'_> {
    type Item = (u64, ValuatedResidue);

    fn next(&mut self) -> Option<Self::Item> {
        if !self.started {
            self.started = true;
            return Some((0, self.current.clone()));
        }
        match self.advance() {
            Ok(v) => {
                let v = v.clone();
                Some((self.k, v))
            }
            Err(StreamError::RangeExhausted { .. }) => None,
        }
    }
}

/// C(n,k) over the integers; 0 outside 0 ≤ k ≤ n. Multiplicative formula
/// with running division, which is exact at every step.
pub fn exact_binomial(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc = acc * (n - k + i) / i;
    }
    acc
}

/// Π_{j=1..k} (p² − (2j−1)²) as an exact integer; the empty product is 1.
pub fn odd_square_product(p: u64, k: u64) -> BigInt {
    let p2 = BigInt::from(p) * BigInt::from(p);
    let mut acc = BigInt::one();
    for j in 1..=k {
        let odd = BigInt::from(2 * j - 1);
        acc *= &p2 - &odd * &odd;
    }
    acc
}

/// Exactness check of C((p−1)/2 + k, 2k) = Π_{j=1..k}(p² − (2j−1)²) / (4^k (2k)!):
/// the division must come out even and hit the binomial on the nose.
pub fn product_formula_check(p: u64, k: u64) -> bool {
    let n = (p - 1) / 2;
    debug_assert!(k <= n);
    let prod = odd_square_product(p, k);
    let mut denom = BigInt::from(4u32).pow(k as u32);
    for i in 1..=2 * k {
        denom *= BigInt::from(i);
    }
    let (q, r) = num_integer::Integer::div_rem(&prod, &denom);
    r.is_zero() && q == BigInt::from(exact_binomial(n + k, 2 * k as i64))
}

/// C(n,k)C(n+k,k) = C(n+k,2k)C(2k,k), exactly over the integers.
pub fn trinomial_revision_check(n: u64, k: u64) -> bool {
    debug_assert!(k <= n);
    exact_binomial(n, k as i64) * exact_binomial(n + k, k as i64)
        == exact_binomial(n + k, 2 * k as i64) * exact_binomial(2 * k, k as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::residue::Modulus;
    use num_traits::ToPrimitive;

    fn ctx(p: u64) -> PrimeContext {
        PrimeContext::new(p).unwrap()
    }

    /// p-adic valuation of an exact integer, saturated at 2 like the stream's.
    fn exact_val_capped(v: &BigUint, p: u64) -> u8 {
        if (v % p).is_zero() {
            if (v % (p * p)).is_zero() {
                2
            } else {
                1
            }
        } else {
            0
        }
    }

    #[test]
    fn central_stream_p5() {
        let c = ctx(5);
        let got: Vec<u64> = BinomialStream::new(BinomialKind::Central, &c)
            .map(|(_, v)| v.collapse(&c).as_u64().unwrap())
            .collect();
        assert_eq!(got, vec![1, 2, 6, 20, 20]);
        let vals: Vec<u8> = BinomialStream::new(BinomialKind::Central, &c)
            .map(|(_, v)| v.val())
            .collect();
        assert_eq!(vals, vec![0, 0, 0, 1, 1]);
    }

    #[test]
    fn half_and_middle_streams_p5() {
        let c = ctx(5);
        let half: Vec<u64> = BinomialStream::new(BinomialKind::Half, &c)
            .map(|(_, v)| v.collapse(&c).as_u64().unwrap())
            .collect();
        assert_eq!(half, vec![1, 2, 1]);
        let middle: Vec<u64> = BinomialStream::new(BinomialKind::Middle, &c)
            .map(|(_, v)| v.collapse(&c).as_u64().unwrap())
            .collect();
        assert_eq!(middle, vec![1, 3, 1]);
    }

    #[test]
    fn streams_error_past_range() {
        let c = ctx(5);
        let mut s = BinomialStream::new(BinomialKind::Half, &c);
        for _ in 0..c.n() {
            s.advance().unwrap();
        }
        assert_eq!(s.advance(), Err(StreamError::RangeExhausted { k: 3, max: 2 }));
        let mut s = BinomialStream::new(BinomialKind::Central, &c);
        for _ in 0..c.p() - 1 {
            s.advance().unwrap();
        }
        assert_eq!(s.advance(), Err(StreamError::RangeExhausted { k: 5, max: 4 }));
    }

    #[test]
    fn streams_match_exact_binomials_with_valuations() {
        // Unit-scale slice of the oracle-equivalence property (acceptance
        // runs it to p < 200): value and valuation agree for all kinds.
        for p in crate::primes::primes_in_range(3, 60) {
            let c = ctx(p);
            let n = c.n();
            let m = c.modulus();
            for (kind, top, arg) in [
                (BinomialKind::Central, p - 1, Box::new(|k: u64| (2 * k, k)) as Box<dyn Fn(u64) -> (u64, u64)>),
                (BinomialKind::Half, n, Box::new(move |k: u64| (n, k))),
                (BinomialKind::Middle, n, Box::new(move |k: u64| (n + k, 2 * k))),
            ] {
                let mut count = 0;
                for (k, v) in BinomialStream::new(kind, &c) {
                    let (bn, bk) = arg(k);
                    let exact = exact_binomial(bn, bk as i64);
                    assert_eq!(
                        v.collapse(&c),
                        m.reduce_biguint(&exact),
                        "p={p} kind={kind:?} k={k}"
                    );
                    assert_eq!(v.val(), exact_val_capped(&exact, p), "p={p} kind={kind:?} k={k}");
                    count += 1;
                }
                assert_eq!(count, top + 1);
            }
        }
    }

    #[test]
    fn half_stream_valuation_is_always_zero() {
        for p in [3u64, 7, 31, 101] {
            let c = ctx(p);
            assert!(BinomialStream::new(BinomialKind::Half, &c).all(|(_, v)| v.val() == 0));
        }
    }

    #[test]
    fn central_tail_valuations() {
        // Between n and p−1 (exclusive) the central value is divisible by p.
        for p in crate::primes::primes_in_range(3, 300) {
            let c = ctx(p);
            for (k, v) in BinomialStream::new(BinomialKind::Central, &c) {
                if k > c.n() && k < p - 1 {
                    assert!(v.val() >= 1, "p={p} k={k}");
                }
            }
        }
    }

    #[test]
    fn exact_binomial_examples() {
        assert_eq!(exact_binomial(10, 5).to_u64(), Some(252));
        assert_eq!(exact_binomial(0, 0).to_u64(), Some(1));
        assert_eq!(exact_binomial(4, 7).to_u64(), Some(0));
        assert_eq!(exact_binomial(4, -1).to_u64(), Some(0));
        assert_eq!(
            exact_binomial(64, 32).to_string(),
            "1832624140942590534" // matches Pascal recurrence below
        );
    }

    #[test]
    fn exact_binomial_matches_pascal() {
        let mut row: Vec<BigUint> = vec![BigUint::one()];
        for n in 0..=80u64 {
            for (k, c) in row.iter().enumerate() {
                assert_eq!(exact_binomial(n, k as i64), *c, "n={n} k={k}");
            }
            let mut next = vec![BigUint::one()];
            for w in row.windows(2) {
                next.push(&w[0] + &w[1]);
            }
            next.push(BigUint::one());
            row = next;
        }
    }

    #[test]
    fn odd_square_product_examples() {
        assert_eq!(odd_square_product(5, 1), BigInt::from(24));
        assert_eq!(odd_square_product(5, 2), BigInt::from(384));
        assert_eq!(odd_square_product(7, 3), BigInt::from(46080));
        assert_eq!(odd_square_product(11, 0), BigInt::one());
    }

    #[test]
    fn product_formula_examples_and_sweep() {
        assert!(product_formula_check(5, 2));
        assert!(product_formula_check(5, 1));
        assert!(product_formula_check(13, 0));
        for p in crate::primes::primes_in_range(3, 80) {
            for k in 0..=(p - 1) / 2 {
                assert!(product_formula_check(p, k), "p={p} k={k}");
            }
        }
    }

    #[test]
    fn trinomial_revision_examples_and_sweep() {
        assert!(trinomial_revision_check(5, 2));
        assert!(trinomial_revision_check(9, 0));
        assert!(trinomial_revision_check(3, 3));
        for n in 0..=25u64 {
            for k in 0..=n {
                assert!(trinomial_revision_check(n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn big_prime_stream_smoke() {
        // Exercise the big-word path: first few central terms above 2^32.
        let c = ctx(4294967311);
        let m = Modulus::from_biguint(BigUint::from(4294967311u64) * 4294967311u64);
        let mut s = BinomialStream::new(BinomialKind::Central, &c);
        for want in [2u64, 6, 20, 70, 252] {
            let v = s.advance().unwrap();
            assert_eq!(v.collapse(&c), m.reduce_u64(want));
        }
    }
}
