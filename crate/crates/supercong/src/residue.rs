//! Arithmetic in ℤ/p²ℤ: canonical residues, rational lifting, and
//! valuation-tracked multiplication.
//!
//! Everything downstream (binomial streams, congruence checks) runs over a
//! [`PrimeContext`] holding an odd prime `p`, the modulus `p²`, the exponent
//! `n = (p-1)/2` and the constant inverses of 16 and 32. Residues are always
//! canonical in `[0, m)` so report output is bit-exact.
//!
//! Moduli below 2^64 (`p < 2^32`) use u64 words with u128 intermediate
//! products; larger primes route to big-integer arithmetic behind the same
//! API.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;
use thiserror::Error;

use crate::primes::is_prime_u64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithmeticError {
    /// gcd(value, modulus) != 1; for modulus p² this signals a p-divisible
    /// denominator.
    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: String, modulus: String },
    /// A running p-adic valuation would drop below zero: some intermediate
    /// is not a p-adic integer, which in this crate always means a logic bug
    /// in a stream recurrence.
    #[error("p-adic valuation would drop below zero")]
    NegativeValuation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ContextError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
}

/// One machine word when the modulus fits, a big integer otherwise. A value
/// and its modulus always use the same representation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Word {
    Small(u64),
    Big(BigUint),
}

/// A modulus m ≥ 2 together with the arithmetic of ℤ/mℤ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Modulus(Word);

/// Canonical residue: an integer in `[0, m)` for the modulus it was built
/// from. Construction goes through [`Modulus`]/[`PrimeContext`] reduction,
/// which is what maintains canonicity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Residue(Word);

impl Modulus {
    pub fn from_u64(m: u64) -> Self {
        assert!(m >= 2, "modulus must be at least 2");
        Modulus(Word::Small(m))
    }

    /// Values that fit a word are normalized to the small representation.
    pub fn from_biguint(m: BigUint) -> Self {
        match m.to_u64_digits().as_slice() {
            [] | [_] if m >= BigUint::from(2u32) => {
                Modulus(Word::Small(m.iter_u64_digits().next().unwrap()))
            }
            _ => {
                assert!(m >= BigUint::from(2u32), "modulus must be at least 2");
                Modulus(Word::Big(m))
            }
        }
    }

    pub fn to_biguint(&self) -> BigUint {
        match &self.0 {
            Word::Small(m) => BigUint::from(*m),
            Word::Big(m) => m.clone(),
        }
    }

    pub fn zero(&self) -> Residue {
        match &self.0 {
            Word::Small(_) => Residue(Word::Small(0)),
            Word::Big(_) => Residue(Word::Big(BigUint::zero())),
        }
    }

    pub fn one(&self) -> Residue {
        self.reduce_u64(1)
    }

    pub fn reduce_u64(&self, v: u64) -> Residue {
        match &self.0 {
            Word::Small(m) => Residue(Word::Small(v % m)),
            Word::Big(m) => Residue(Word::Big(BigUint::from(v) % m)),
        }
    }

    pub fn reduce_i128(&self, v: i128) -> Residue {
        match &self.0 {
            Word::Small(m) => {
                let m = *m as i128;
                Residue(Word::Small((v.rem_euclid(m)) as u64))
            }
            Word::Big(m) => {
                let m = BigInt::from_biguint(Sign::Plus, m.clone());
                let r = BigInt::from(v).mod_floor(&m);
                Residue(Word::Big(r.to_biguint().unwrap()))
            }
        }
    }

    pub fn reduce_bigint(&self, v: &BigInt) -> Residue {
        match &self.0 {
            Word::Small(m) => {
                let r = v.mod_floor(&BigInt::from(*m));
                Residue(Word::Small(u64::try_from(r).unwrap()))
            }
            Word::Big(m) => {
                let m = BigInt::from_biguint(Sign::Plus, m.clone());
                Residue(Word::Big(v.mod_floor(&m).to_biguint().unwrap()))
            }
        }
    }

    pub fn reduce_biguint(&self, v: &BigUint) -> Residue {
        match &self.0 {
            Word::Small(m) => Residue(Word::Small(
                u64::try_from(v % BigUint::from(*m)).unwrap(),
            )),
            Word::Big(m) => Residue(Word::Big(v % m)),
        }
    }

    pub fn add(&self, a: &Residue, b: &Residue) -> Residue {
        match (&self.0, &a.0, &b.0) {
            (Word::Small(m), Word::Small(a), Word::Small(b)) => {
                Residue(Word::Small(((*a as u128 + *b as u128) % *m as u128) as u64))
            }
            (Word::Big(m), Word::Big(a), Word::Big(b)) => Residue(Word::Big((a + b) % m)),
            _ => unreachable!("residue paired with a modulus of a different width"),
        }
    }

    pub fn sub(&self, a: &Residue, b: &Residue) -> Residue {
        match (&self.0, &a.0, &b.0) {
            (Word::Small(m), Word::Small(a), Word::Small(b)) => {
                Residue(Word::Small(if a >= b { a - b } else { m - b + a }))
            }
            (Word::Big(m), Word::Big(a), Word::Big(b)) => {
                Residue(Word::Big(if a >= b { a - b } else { m - b + a }))
            }
            _ => unreachable!("residue paired with a modulus of a different width"),
        }
    }

    pub fn neg(&self, a: &Residue) -> Residue {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &Residue, b: &Residue) -> Residue {
        match (&self.0, &a.0, &b.0) {
            (Word::Small(m), Word::Small(a), Word::Small(b)) => {
                Residue(Word::Small(((*a as u128 * *b as u128) % *m as u128) as u64))
            }
            (Word::Big(m), Word::Big(a), Word::Big(b)) => Residue(Word::Big((a * b) % m)),
            _ => unreachable!("residue paired with a modulus of a different width"),
        }
    }

    /// Square-and-multiply.
    pub fn pow(&self, base: &Residue, mut exp: u64) -> Residue {
        let mut acc = self.one();
        let mut sq = base.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            exp >>= 1;
            if exp > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        acc
    }

    /// Extended Euclid. Fails exactly when gcd(a, m) != 1.
    pub fn inverse(&self, a: &Residue) -> Result<Residue, ArithmeticError> {
        let not_invertible = || ArithmeticError::NotInvertible {
            value: a.to_string(),
            modulus: self.to_biguint().to_string(),
        };
        match (&self.0, &a.0) {
            (Word::Small(m), Word::Small(a)) => {
                inverse_u64(*a, *m).map(|r| Residue(Word::Small(r))).ok_or_else(not_invertible)
            }
            (Word::Big(m), Word::Big(a)) => {
                let a = BigInt::from_biguint(Sign::Plus, a.clone());
                let m = BigInt::from_biguint(Sign::Plus, m.clone());
                let gcd = a.extended_gcd(&m);
                if gcd.gcd.is_one() {
                    Ok(Residue(Word::Big(gcd.x.mod_floor(&m).to_biguint().unwrap())))
                } else {
                    Err(not_invertible())
                }
            }
            _ => unreachable!("residue paired with a modulus of a different width"),
        }
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Word::Small(m) => write!(f, "{m}"),
            Word::Big(m) => write!(f, "{m}"),
        }
    }
}

/// Returns `a^(-1) mod m`, or [`ArithmeticError::NotInvertible`] when
/// gcd(a, m) > 1. Negative `a` is reduced first.
pub fn mod_inverse(a: i128, m: &Modulus) -> Result<Residue, ArithmeticError> {
    m.inverse(&m.reduce_i128(a))
}

fn inverse_u64(a: u64, m: u64) -> Option<u64> {
    // Bezout coefficients stay below m in magnitude, so i128 never overflows.
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

impl Residue {
    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Word::Small(v) => *v == 0,
            Word::Big(v) => v.is_zero(),
        }
    }

    pub fn as_u64(&self) -> Option<u64> {
        match &self.0 {
            Word::Small(v) => Some(*v),
            Word::Big(v) => u64::try_from(v).ok(),
        }
    }

    pub fn to_biguint(&self) -> BigUint {
        match &self.0 {
            Word::Small(v) => BigUint::from(*v),
            Word::Big(v) => v.clone(),
        }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Word::Small(v) => write!(f, "{v}"),
            Word::Big(v) => write!(f, "{v}"),
        }
    }
}

/// The ambient ring of every congruence check: an odd prime `p`, the modulus
/// `m = p²`, the half exponent `n = (p-1)/2`, and the inverses of 16 and 32
/// that weight every sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeContext {
    p: u64,
    n: u64,
    modulus: Modulus,
    inv16: Residue,
    inv32: Residue,
}

impl PrimeContext {
    /// Validates primality by trial division, so construction is O(√p).
    pub fn new(p: u64) -> Result<Self, ContextError> {
        if p < 3 || p % 2 == 0 || !is_prime_u64(p) {
            return Err(ContextError::NotOddPrime(p));
        }
        let modulus = match p.checked_mul(p) {
            Some(m) => Modulus::from_u64(m),
            None => Modulus::from_biguint(BigUint::from(p) * p),
        };
        let inv16 = modulus.inverse(&modulus.reduce_u64(16)).expect("p is odd");
        let inv32 = modulus.inverse(&modulus.reduce_u64(32)).expect("p is odd");
        Ok(PrimeContext { p, n: (p - 1) / 2, modulus, inv16, inv32 })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// (p - 1) / 2, the upper summation index of both theorem sums.
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn inv16(&self) -> &Residue {
        &self.inv16
    }

    pub fn inv32(&self) -> &Residue {
        &self.inv32
    }

    pub fn zero(&self) -> Residue {
        self.modulus.zero()
    }

    pub fn one(&self) -> Residue {
        self.modulus.one()
    }

    pub fn reduce_u64(&self, v: u64) -> Residue {
        self.modulus.reduce_u64(v)
    }

    pub fn reduce_i128(&self, v: i128) -> Residue {
        self.modulus.reduce_i128(v)
    }

    pub fn reduce_bigint(&self, v: &BigInt) -> Residue {
        self.modulus.reduce_bigint(v)
    }

    pub fn add(&self, a: &Residue, b: &Residue) -> Residue {
        self.modulus.add(a, b)
    }

    pub fn sub(&self, a: &Residue, b: &Residue) -> Residue {
        self.modulus.sub(a, b)
    }

    pub fn mul(&self, a: &Residue, b: &Residue) -> Residue {
        self.modulus.mul(a, b)
    }

    pub fn neg(&self, a: &Residue) -> Residue {
        self.modulus.neg(a)
    }

    pub fn pow(&self, base: &Residue, exp: u64) -> Residue {
        self.modulus.pow(base, exp)
    }

    pub fn inverse(&self, a: &Residue) -> Result<Residue, ArithmeticError> {
        self.modulus.inverse(a)
    }

    /// num/den lifted into ℤ/p²ℤ. Errors with `NotInvertible` iff p | den.
    pub fn from_rational(&self, num: i128, den: i128) -> Result<Residue, ArithmeticError> {
        assert!(den != 0, "denominator must be nonzero");
        let inv = self.inverse(&self.reduce_i128(den))?;
        Ok(self.mul(&self.reduce_i128(num), &inv))
    }

    pub fn from_rational_big(&self, num: &BigInt, den: &BigInt) -> Result<Residue, ArithmeticError> {
        assert!(!den.is_zero(), "denominator must be nonzero");
        let inv = self.inverse(&self.reduce_bigint(den))?;
        Ok(self.mul(&self.reduce_bigint(num), &inv))
    }

    /// (-1)^n mod p², the right-hand side of the full-range congruence.
    pub fn neg_one_to_n(&self) -> Residue {
        if self.n % 2 == 0 {
            self.one()
        } else {
            self.reduce_i128(-1)
        }
    }
}

/// A residue mod p² stored as `unit · p^val` with `p ∤ unit`, so streams can
/// pass through transient division by p without losing mod-p² precision.
///
/// The valuation saturates at 2: anything divisible by p² is zero in this
/// ring, represented canonically as `unit = 1, val = 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuatedResidue {
    unit: Residue,
    val: u8,
}

const VAL_SATURATED: u8 = 2;

impl ValuatedResidue {
    pub fn one(ctx: &PrimeContext) -> Self {
        ValuatedResidue { unit: ctx.one(), val: 0 }
    }

    pub fn zero(ctx: &PrimeContext) -> Self {
        ValuatedResidue { unit: ctx.one(), val: VAL_SATURATED }
    }

    /// Builds `unit · p^val` directly. Panics if `val < 2` and p | unit; the
    /// unit/valuation split must be genuine.
    pub fn from_parts(unit: u64, val: u8, ctx: &PrimeContext) -> Self {
        if val >= VAL_SATURATED {
            return Self::zero(ctx);
        }
        assert!(unit % ctx.p() != 0, "unit part must be coprime to p");
        ValuatedResidue { unit: ctx.reduce_u64(unit), val }
    }

    /// Splits an integer into its p-part and unit part.
    pub fn from_integer(v: i128, ctx: &PrimeContext) -> Self {
        if v == 0 {
            return Self::zero(ctx);
        }
        let (unit, val) = strip_p(v.unsigned_abs(), ctx.p());
        if val >= VAL_SATURATED as u32 {
            return Self::zero(ctx);
        }
        let mut unit = ctx.reduce_i128(unit as i128);
        if v < 0 {
            unit = ctx.neg(&unit);
        }
        ValuatedResidue { unit, val: val as u8 }
    }

    /// p-adic valuation of the represented value, saturated at 2.
    pub fn val(&self) -> u8 {
        self.val
    }

    pub fn unit(&self) -> &Residue {
        &self.unit
    }

    pub fn is_zero(&self) -> bool {
        self.val >= VAL_SATURATED
    }

    /// Multiplies by the exact rational num/den, stripping all factors of p
    /// from both before reduction so the division stays well defined mod p².
    ///
    /// The result represents `self · num / den` whenever that value is a
    /// p-adic integer. `NegativeValuation` signals that it provably is not
    /// (the running valuation would go negative), or that a value already
    /// saturated to zero would have to be divided by p, which the saturated
    /// representation cannot support.
    pub fn mul_rational(
        &self,
        num: i128,
        den: i128,
        ctx: &PrimeContext,
    ) -> Result<Self, ArithmeticError> {
        assert!(den != 0, "denominator must be nonzero");
        if num == 0 {
            return Ok(Self::zero(ctx));
        }
        let (num_unit, num_val) = strip_p(num.unsigned_abs(), ctx.p());
        let (den_unit, den_val) = strip_p(den.unsigned_abs(), ctx.p());
        if self.is_zero() {
            // True valuation is only known to be >= 2; net division by p
            // would make the result indeterminate.
            return if num_val >= den_val {
                Ok(Self::zero(ctx))
            } else {
                Err(ArithmeticError::NegativeValuation)
            };
        }
        let val = self.val as i64 + num_val as i64 - den_val as i64;
        if val < 0 {
            return Err(ArithmeticError::NegativeValuation);
        }
        if val >= VAL_SATURATED as i64 {
            return Ok(Self::zero(ctx));
        }
        let num_res = ctx.reduce_i128(num_unit as i128);
        let den_inv = ctx
            .inverse(&ctx.reduce_i128(den_unit as i128))
            .expect("den unit is coprime to p after stripping");
        let mut unit = ctx.mul(&ctx.mul(&self.unit, &num_res), &den_inv);
        if (num < 0) != (den < 0) {
            unit = ctx.neg(&unit);
        }
        Ok(ValuatedResidue { unit, val: val as u8 })
    }

    /// `unit · p^val mod p²`; saturated values collapse to 0.
    pub fn collapse(&self, ctx: &PrimeContext) -> Residue {
        match self.val {
            0 => self.unit.clone(),
            1 => ctx.mul(&self.unit, &ctx.reduce_u64(ctx.p())),
            _ => ctx.zero(),
        }
    }
}

/// Returns (v / p^e, e) with p ∤ v / p^e.
fn strip_p(mut v: u128, p: u64) -> (u128, u32) {
    debug_assert!(v != 0);
    let p = p as u128;
    let mut e = 0;
    while v % p == 0 {
        v /= p;
        e += 1;
    }
    (v, e)
}
