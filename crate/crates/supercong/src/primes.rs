//! Prime enumeration and the x² + y² representation of p ≡ 1 (mod 4).

use num_integer::Roots;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum PartitionError {
    /// x² + y² = p needs p ≡ 1 (mod 4) (or p = 2, which this crate never
    /// asks about).
    #[error("{0} is not congruent to 1 modulo 4")]
    BadResidueClass(u64),
    /// No square root of -1 found; only possible if the input is composite.
    #[error("no square root of -1 modulo {0}; input is not prime")]
    NoSquareRoot(u64),
}

/// Deterministic trial division. Fine for the sizes this crate handles:
/// context construction is O(√p) next to O(p) scan work per prime.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for d in [2u64, 3, 5] {
        if n % d == 0 {
            return n == d;
        }
    }
    // Wheel over 30: candidates coprime to 2·3·5.
    let mut d = 7u64;
    let steps = [4u64, 2, 4, 2, 4, 6, 2, 6];
    let mut i = 0;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += steps[i];
        i = (i + 1) % steps.len();
    }
    true
}

const SEGMENT: usize = 1 << 20;

/// All primes in [lo, hi), ascending. Segmented sieve of Eratosthenes, so
/// memory stays O(√hi + segment) regardless of the span.
pub fn primes_in_range(lo: u64, hi: u64) -> Vec<u64> {
    PrimeIter::new(lo, hi).collect()
}

/// Streaming form of [`primes_in_range`].
pub struct PrimeIter {
    hi: u64,
    base: Vec<u64>,
    segment_lo: u64,
    flags: Vec<bool>,
    cursor: usize,
}

impl PrimeIter {
    pub fn new(lo: u64, hi: u64) -> Self {
        let base = if hi <= 2 { Vec::new() } else { simple_sieve(hi.sqrt() + 1) };
        let mut it = PrimeIter { hi, base, segment_lo: lo.max(2), flags: Vec::new(), cursor: 0 };
        it.fill_segment();
        it
    }

    fn fill_segment(&mut self) {
        while self.segment_lo < self.hi {
            let lo = self.segment_lo;
            let len = SEGMENT.min((self.hi - lo) as usize);
            self.flags.clear();
            self.flags.resize(len, true);
            for &p in &self.base {
                if p * p >= lo + len as u64 {
                    break;
                }
                let start = (p * p).max(lo.div_ceil(p) * p);
                let mut j = (start - lo) as usize;
                while j < len {
                    self.flags[j] = false;
                    j += p as usize;
                }
            }
            self.cursor = 0;
            if self.flags.iter().any(|&f| f) {
                return;
            }
            self.segment_lo += len as u64;
        }
        self.flags.clear();
        self.cursor = 0;
    }

    fn advance_segment(&mut self) {
        self.segment_lo += self.flags.len() as u64;
        self.fill_segment();
    }
}

impl Iterator for PrimeIter {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        loop {
            if self.flags.is_empty() {
                return None;
            }
            while self.cursor < self.flags.len() {
                let i = self.cursor;
                self.cursor += 1;
                if self.flags[i] {
                    return Some(self.segment_lo + i as u64);
                }
            }
            self.advance_segment();
        }
    }
}

/// Primes below `limit` by a plain sieve (used for the base primes).
fn simple_sieve(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    if limit < 3 {
        return if limit == 2 { Vec::new() } else { Vec::new() };
    }
    let mut flags = vec![true; limit];
    flags[0] = false;
    flags[1] = false;
    let mut i = 2;
    while i * i < limit {
        if flags[i] {
            let mut j = i * i;
            while j < limit {
                flags[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    flags.iter().enumerate().filter(|(_, &f)| f).map(|(i, _)| i as u64).collect()
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// A square root of -1 modulo a prime p ≡ 1 (mod 4), normalized to z ≤ p/2.
///
/// Scans for the least quadratic non-residue a by Euler's criterion and
/// returns a^((p-1)/4). Composite inputs are detected when some candidate's
/// Euler power lands outside {1, -1}.
pub fn sqrt_minus_one(p: u64) -> Result<u64, PartitionError> {
    if p % 4 != 1 {
        return Err(PartitionError::BadResidueClass(p));
    }
    for a in 2..p {
        let e = pow_mod(a, (p - 1) / 2, p);
        if e == 1 {
            continue;
        }
        if e != p - 1 {
            return Err(PartitionError::NoSquareRoot(p));
        }
        let z = pow_mod(a, (p - 1) / 4, p);
        if mul_mod(z, z, p) != p - 1 {
            return Err(PartitionError::NoSquareRoot(p));
        }
        return Ok(z.min(p - z));
    }
    Err(PartitionError::NoSquareRoot(p))
}

/// The essentially unique decomposition p = x² + y² for prime p ≡ 1 (mod 4),
/// normalized so that x ≡ 1 (mod 4) (x may be negative) and y > 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadraticPartition {
    pub p: u64,
    pub x: i64,
    pub y: i64,
}

/// Cornacchia's algorithm: Euclidean descent on (p, z) where z² ≡ -1 (mod p).
/// The first two remainders below √p are |x| and |y|.
pub fn cornacchia(p: u64) -> Result<QuadraticPartition, PartitionError> {
    if p == 5 {
        // Descent degenerates for z = 2: handled directly.
        return Ok(QuadraticPartition { p, x: 1, y: 2 });
    }
    let z = sqrt_minus_one(p)?;
    let bound = p.sqrt();
    let (mut a, mut b) = (p, z);
    while b > bound {
        (a, b) = (b, a % b);
    }
    let r = a % b;
    let (u, v) = (b, r);
    debug_assert_eq!(u * u + v * v, p, "descent must land on the partition");
    // Exactly one of u, v is odd since p ≡ 1 (mod 4) forces opposite parities.
    let (odd, even) = if u % 2 == 1 { (u, v) } else { (v, u) };
    let x = if odd % 4 == 1 { odd as i64 } else { -(odd as i64) };
    Ok(QuadraticPartition { p, x, y: even as i64 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trial_division_matches_sieve() {
        let sieve = simple_sieve(2000);
        for n in 0..2000u64 {
            assert_eq!(is_prime_u64(n), sieve.binary_search(&n).is_ok(), "n={n}");
        }
        assert!(is_prime_u64(4294967311));
        assert!(!is_prime_u64(4294967309));
    }

    #[test]
    fn small_ranges() {
        assert_eq!(primes_in_range(2, 20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(primes_in_range(3, 20), vec![3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(primes_in_range(20, 30), vec![23, 29]);
        assert!(primes_in_range(20, 23).is_empty());
        assert!(primes_in_range(10, 10).is_empty());
        assert!(primes_in_range(10, 5).is_empty());
        assert_eq!(primes_in_range(0, 3), vec![2]);
    }

    #[test]
    fn prime_counts() {
        // π(10^6) = 78498; dropping p = 2 leaves 78497.
        assert_eq!(primes_in_range(2, 1_000_000).len(), 78498);
        assert_eq!(primes_in_range(3, 1_000_000).len(), 78497);
    }

    #[test]
    fn segment_boundaries() {
        // Ranges straddling the segment size must not drop or duplicate.
        let around = (SEGMENT as u64 - 50)..(SEGMENT as u64 + 50);
        let got = primes_in_range(around.start, around.end);
        let want: Vec<u64> = around.filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn sqrt_minus_one_examples() {
        assert_eq!(sqrt_minus_one(13), Ok(5));
        assert_eq!(sqrt_minus_one(29), Ok(12));
        assert_eq!(sqrt_minus_one(5), Ok(2));
        assert_eq!(sqrt_minus_one(7), Err(PartitionError::BadResidueClass(7)));
        for p in primes_in_range(5, 20_000) {
            if p % 4 != 1 {
                continue;
            }
            let z = sqrt_minus_one(p).unwrap();
            assert!(z <= p / 2);
            assert_eq!(mul_mod(z, z, p), p - 1, "p={p}");
        }
    }

    #[test]
    fn cornacchia_examples() {
        assert_eq!(cornacchia(13).unwrap(), QuadraticPartition { p: 13, x: -3, y: 2 });
        assert_eq!(cornacchia(29).unwrap(), QuadraticPartition { p: 29, x: 5, y: 2 });
        assert_eq!(cornacchia(5).unwrap(), QuadraticPartition { p: 5, x: 1, y: 2 });
        assert_eq!(cornacchia(97).unwrap(), QuadraticPartition { p: 97, x: 9, y: 4 });
        assert_eq!(cornacchia(7), Err(PartitionError::BadResidueClass(7)));
    }

    #[test]
    fn cornacchia_matches_exhaustive_search() {
        for p in primes_in_range(5, 100_000) {
            if p % 4 != 1 {
                continue;
            }
            let part = cornacchia(p).unwrap();
            assert_eq!(part.x * part.x + part.y * part.y, p as i64, "p={p}");
            assert_eq!(part.x.rem_euclid(4), 1, "p={p}");
            assert!(part.y > 0, "p={p}");
            // Uniqueness of the normalized form against brute force.
            let mut found = None;
            let mut a = 1i64;
            while a * a <= p as i64 {
                let rest = p as i64 - a * a;
                let b = (rest as u64).sqrt() as i64;
                if b * b == rest && a % 2 == 1 {
                    let x = if a % 4 == 1 { a } else { -a };
                    found = Some((x, b));
                }
                a += 1;
            }
            assert_eq!(Some((part.x, part.y)), found, "p={p}");
        }
    }
}
