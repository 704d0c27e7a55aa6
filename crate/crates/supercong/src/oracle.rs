//! Exact big-integer evaluation of every congruence sum — the independent
//! path the fast mod-p² streams are checked against.
//!
//! Rational weights (16^{−k}, t/16, …) are handled by clearing denominators:
//! each oracle computes the sum multiplied by w^top for w the cleared
//! denominator, as a plain integer. A fast-path value S matches the oracle O
//! exactly when O ≡ S·w^top (mod p²); since w is a unit mod p², this scaled
//! comparison carries the same information as the original congruence.
//!
//! All sums run by Horner on the descending power, so only one running
//! ascending power is ever materialized.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("unknown oracle kind {0:?}")]
    UnknownKind(String),
    #[error("oracle kind {kind:?} requires parameter {param:?}")]
    MissingParam { kind: String, param: &'static str },
    #[error("{0} is not congruent to 1 modulo 4")]
    WrongResidueClass(u64),
}

/// Optional rational parameters for the parameterized sums.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OracleParams {
    pub alpha: Option<Rational>,
    pub beta: Option<Rational>,
    pub t: Option<Rational>,
}

/// C(2k,k)² for k = 0, 1, 2, … by the exact central recurrence.
fn central_squares(limit: u64) -> impl Iterator<Item = BigInt> {
    let mut c = BigUint::one();
    let mut k = 0u64;
    std::iter::from_fn(move || {
        if k > limit {
            return None;
        }
        let sq = BigInt::from(&c * &c);
        c = &c * (2 * (2 * k + 1)) / (k + 1);
        k += 1;
        Some(sq)
    })
}

/// Σ_{k=0}^{p−1} C(2k,k)² 16^{p−1−k}: the full-range sum with 16-powers
/// cleared. Reduced mod p² it equals (fast value)·16^{p−1}.
pub fn rv_oracle(p: u64) -> BigInt {
    let mut s = BigInt::zero();
    for sq in central_squares(p - 1) {
        s = s * 16 + sq;
    }
    s
}

/// Σ_{k=0}^{p−1} C(2k,k)² 32^{p−1−k}.
pub fn sun_oracle(p: u64) -> BigInt {
    let mut s = BigInt::zero();
    for sq in central_squares(p - 1) {
        s = s * 32 + sq;
    }
    s
}

/// Left theorem sum scaled by (16·d)^n where d = den(α)·den(β):
/// Σ_{k=0}^{n} C(2k,k)² (16U)^{n−k} V^k with U, V the integer numerators of
/// α−β and −β over the common denominator d.
pub fn theorem_lhs_oracle(p: u64, alpha: &Rational, beta: &Rational) -> BigInt {
    let n = (p - 1) / 2;
    let u = alpha.num() * beta.den() - beta.num() * alpha.den();
    let v = -(beta.num() * alpha.den());
    let base = BigInt::from(16) * u;
    let mut vpow = BigInt::one();
    let mut s = BigInt::zero();
    for (k, sq) in central_squares(n).enumerate() {
        s = s * &base + sq * &vpow;
        if k as u64 != n {
            vpow *= &v;
        }
    }
    s
}

/// Right theorem sum scaled by dⁿ: Σ C(n,k)² A^{n−k} B^k with A = num(α)den(β),
/// B = num(β)den(α).
pub fn theorem_rhs_oracle(p: u64, alpha: &Rational, beta: &Rational) -> BigInt {
    let n = (p - 1) / 2;
    let a = alpha.num() * beta.den();
    let b = beta.num() * alpha.den();
    let mut half = BigUint::one(); // C(n,k)
    let mut bpow = BigInt::one();
    let mut s = BigInt::zero();
    for k in 0..=n {
        let c = BigInt::from(&half * &half);
        s = s * &a + c * &bpow;
        if k != n {
            half = half * (n - k) / (k + 1);
            bpow *= &b;
        }
    }
    s
}

/// Σ_{k=0}^{p−1} C(2k,k)² (16·den(t))^{p−1−k} num(t)^k — the remark's left
/// sum with t/16 cleared.
pub fn remark_lhs_oracle(p: u64, t: &Rational) -> BigInt {
    remark_sum(p, t.den(), t.num())
}

/// (−1)^{(p−1)/2} Σ_{k=0}^{p−1} C(2k,k)² (16·den(t))^{p−1−k} (den(t)−num(t))^k:
/// the remark's right sum under the same clearing, sign included.
pub fn remark_rhs_oracle(p: u64, t: &Rational) -> BigInt {
    let s = remark_sum(p, t.den(), &(t.den() - t.num()));
    if (p - 1) / 2 % 2 == 1 {
        -s
    } else {
        s
    }
}

fn remark_sum(p: u64, den: &BigInt, num: &BigInt) -> BigInt {
    let base = BigInt::from(16) * den;
    let mut npow = BigInt::one();
    let mut s = BigInt::zero();
    for (k, sq) in central_squares(p - 1).enumerate() {
        s = s * &base + sq * &npow;
        if k as u64 != p - 1 {
            npow *= num;
        }
    }
    s
}

/// Σ_{k=0}^{p−1} C(2k,k)² F_k 16^{p−1−k}.
pub fn fib_oracle(p: u64) -> BigInt {
    weighted_oracle(p, BigInt::zero(), BigInt::one())
}

/// Σ_{k=0}^{p−1} C(2k,k)² L_k 16^{p−1−k}.
pub fn lucas_oracle(p: u64) -> BigInt {
    weighted_oracle(p, BigInt::from(2), BigInt::one())
}

fn weighted_oracle(p: u64, w0: BigInt, w1: BigInt) -> BigInt {
    let (mut w, mut w_next) = (w0, w1);
    let mut s = BigInt::zero();
    for sq in central_squares(p - 1) {
        s = s * 16 + sq * &w;
        let bump = &w + &w_next;
        w = std::mem::replace(&mut w_next, bump);
    }
    s
}

/// The exact alternating half-identity Σ_{k=0}^{2f} C(2f,k)²(−1)^k for
/// f = (p−1)/4; equals (−1)^f C(2f,f) when the books balance.
pub fn gauss_oracle(p: u64) -> Result<BigInt, OracleError> {
    if p % 4 != 1 {
        return Err(OracleError::WrongResidueClass(p));
    }
    let f = (p - 1) / 4;
    let mut c = BigUint::one(); // C(2f,k)
    let mut s = BigInt::zero();
    for k in 0..=2 * f {
        let sq = BigInt::from(&c * &c);
        if k % 2 == 0 {
            s += sq;
        } else {
            s -= sq;
        }
        if k != 2 * f {
            c = c * (2 * f - k) / (k + 1);
        }
    }
    Ok(s)
}

/// String-keyed dispatch used by the CLI's `oracle` subcommand.
pub fn oracle_sum(kind: &str, p: u64, params: &OracleParams) -> Result<BigInt, OracleError> {
    let need = |param: &'static str, r: &Option<Rational>| {
        r.clone().ok_or(OracleError::MissingParam { kind: kind.to_string(), param })
    };
    match kind {
        "rv" => Ok(rv_oracle(p)),
        "sun" => Ok(sun_oracle(p)),
        "theorem_lhs" => {
            Ok(theorem_lhs_oracle(p, &need("alpha", &params.alpha)?, &need("beta", &params.beta)?))
        }
        "theorem_rhs" => {
            Ok(theorem_rhs_oracle(p, &need("alpha", &params.alpha)?, &need("beta", &params.beta)?))
        }
        "remark_lhs" => Ok(remark_lhs_oracle(p, &need("t", &params.t)?)),
        "remark_rhs" => Ok(remark_rhs_oracle(p, &need("t", &params.t)?)),
        "fib" => Ok(fib_oracle(p)),
        "lucas" => Ok(lucas_oracle(p)),
        "gauss" => gauss_oracle(p),
        other => Err(OracleError::UnknownKind(other.to_string())),
    }
}
