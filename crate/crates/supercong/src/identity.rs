//! Exact characteristic-zero verification of the combinatorial machinery:
//! the Gould identity
//!
//!   Σ_{k=0}^n C(n,k) C(n+k,k) (α−β)^{n−k} β^k  =  Σ_{k=0}^n C(n,k)² α^{n−k} β^k
//!
//! both numerically at integer points and symbolically in ℤ[α,β], plus the
//! generating-function route: both sides equal [zⁿ] (1−(α−β)z)ⁿ/(1−αz)^{n+1}.
//! Everything runs over arbitrary-precision integers; no rationals appear
//! because every denominator in the expansions cancels.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::binomial::exact_binomial;

/// Dense polynomial in ℤ[α,β]: `c[i][j]` is the coefficient of α^i β^j,
/// stored triangularly for i + j ≤ degree.
#[derive(Debug, Clone)]
pub struct BivariatePolynomial {
    degree: usize,
    c: Vec<Vec<BigInt>>,
}

impl BivariatePolynomial {
    pub fn zero(degree: usize) -> Self {
        let c = (0..=degree).map(|i| vec![BigInt::zero(); degree - i + 1]).collect();
        BivariatePolynomial { degree, c }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeff(&self, i: usize, j: usize) -> BigInt {
        self.c.get(i).and_then(|row| row.get(j)).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, i: usize, j: usize, coeff: &BigInt) {
        assert!(i + j <= self.degree, "monomial degree out of range");
        self.c[i][j] += coeff;
    }
}

/// Coefficient-wise equality with zero padding, so polynomials of different
/// declared degree compare equal when they denote the same element of ℤ[α,β].
impl PartialEq for BivariatePolynomial {
    fn eq(&self, other: &Self) -> bool {
        let d = self.degree.max(other.degree);
        (0..=d).all(|i| (0..=d - i).all(|j| self.coeff(i, j) == other.coeff(i, j)))
    }
}

impl Eq for BivariatePolynomial {}

/// Power series in z over ℤ, truncated at a fixed order (inclusive).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least the constant term");
        TruncatedSeries { coeffs }
    }

    /// The polynomial (1 + c·z)^e truncated at `order`.
    pub fn binomial_power(c: &BigInt, e: u64, order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|k| BigInt::from(exact_binomial(e, k as i64)) * c.pow(k as u32))
            .collect();
        TruncatedSeries { coeffs }
    }

    /// Closed form for (1 − c·z)^(−m): coefficients C(m−1+k, k) c^k.
    pub fn reciprocal_power(c: &BigInt, m: u64, order: usize) -> Self {
        assert!(m >= 1);
        let coeffs = (0..=order)
            .map(|k| BigInt::from(exact_binomial(m - 1 + k as u64, k as i64)) * c.pow(k as u32))
            .collect();
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Cauchy product truncated to the shorter operand's order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![BigInt::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order + 1 - i).enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        TruncatedSeries { coeffs }
    }

    /// Multiplicative inverse by the convolution recurrence
    /// b_k = −a_0^(−1) Σ_{i=1..k} a_i b_{k−i}. Over ℤ this needs a unit
    /// constant term (±1); returns None otherwise.
    pub fn inverse(&self) -> Option<Self> {
        let a0 = &self.coeffs[0];
        if !a0.is_one() && *a0 != -BigInt::one() {
            return None;
        }
        let mut b = vec![a0.clone()]; // a0⁻¹ = a0 for a0 = ±1
        for k in 1..=self.order() {
            let mut acc = BigInt::zero();
            for i in 1..=k {
                acc += &self.coeffs[i] * &b[k - i];
            }
            b.push(-a0 * acc);
        }
        Some(TruncatedSeries { coeffs: b })
    }
}

/// Horner evaluation of Σ_{k=0}^n c_k u^{n−k} v^k with incrementally
/// supplied coefficients: S_k = u·S_{k−1} + c_k·v^k.
fn horner_bivariate(n: u64, u: &BigInt, v: &BigInt, mut coeff: impl FnMut(u64) -> BigInt) -> BigInt {
    let mut s = BigInt::zero();
    let mut vpow = BigInt::one();
    for k in 0..=n {
        if k == 0 {
            s = coeff(0);
        } else {
            vpow *= v;
            s = u * s + coeff(k) * &vpow;
        }
    }
    s
}

/// Σ_{k=0}^n C(n,k) C(n+k,k) (a−b)^{n−k} b^k, exactly.
pub fn gould_lhs(n: u64, a: i64, b: i64) -> BigInt {
    let d = BigInt::from(a) - BigInt::from(b);
    let mut half = BigUint::one(); // C(n,k)
    let mut shifted = BigUint::one(); // C(n+k,k)
    horner_bivariate(n, &d, &BigInt::from(b), |k| {
        let c = BigInt::from(&half * &shifted);
        if k != n {
            half = &half * (n - k) / (k + 1);
            shifted = &shifted * (n + k + 1) / (k + 1);
        }
        c
    })
}

/// Σ_{k=0}^n C(n,k)² a^{n−k} b^k, exactly.
pub fn gould_rhs(n: u64, a: i64, b: i64) -> BigInt {
    let mut half = BigUint::one(); // C(n,k)
    horner_bivariate(n, &BigInt::from(a), &BigInt::from(b), |k| {
        let c = BigInt::from(&half * &half);
        if k != n {
            half = &half * (n - k) / (k + 1);
        }
        c
    })
}

/// Full symbolic equality in ℤ[α,β]: expands (α−β)^{n−k} binomially on the
/// left and compares every coefficient with Σ C(n,k)² α^{n−k} β^k. Binomials
/// come from a Pascal triangle so the expansion is O(n²) ring operations.
pub fn gould_polynomial_check(n: u64) -> bool {
    let n_us = n as usize;
    let pascal = pascal_rows(2 * n_us);
    let mut lhs = BivariatePolynomial::zero(n_us);
    for k in 0..=n_us {
        let outer = &pascal[n_us][k] * &pascal[n_us + k][k];
        // (α−β)^{n−k} β^k = Σ_i C(n−k,i) α^i (−1)^{n−k−i} β^{n−i}
        for i in 0..=n_us - k {
            let mut coeff = &outer * &pascal[n_us - k][i];
            if (n_us - k - i) % 2 == 1 {
                coeff = -coeff;
            }
            lhs.add_term(i, n_us - i, &coeff);
        }
    }
    let mut rhs = BivariatePolynomial::zero(n_us);
    for k in 0..=n_us {
        let c = &pascal[n_us][k];
        rhs.add_term(n_us - k, k, &(c * c));
    }
    lhs == rhs
}

fn pascal_rows(top: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(top + 1);
    rows.push(vec![BigInt::one()]);
    for r in 1..=top {
        let prev = &rows[r - 1];
        let mut row = Vec::with_capacity(r + 1);
        row.push(BigInt::one());
        for i in 1..r {
            row.push(&prev[i - 1] + &prev[i]);
        }
        row.push(BigInt::one());
        rows.push(row);
    }
    rows
}

/// Verifies that [zⁿ] (1−(a−b)z)ⁿ/(1−az)^{n+1} matches both Gould sums.
/// The reciprocal is computed twice — closed form and convolution inverse —
/// and the two must agree, which also certifies the series engine.
pub fn gf_coefficient_check(n: u64, a: i64, b: i64) -> bool {
    let order = n as usize;
    let numerator = TruncatedSeries::binomial_power(&(BigInt::from(b) - BigInt::from(a)), n, order);
    let recip_closed = TruncatedSeries::reciprocal_power(&BigInt::from(a), n + 1, order);
    let denominator = TruncatedSeries::binomial_power(&BigInt::from(-a), n + 1, order);
    let recip_conv = match denominator.inverse() {
        Some(s) => s,
        None => return false,
    };
    if recip_closed != recip_conv {
        return false;
    }
    let coefficient = numerator.mul(&recip_closed).coeff(order);
    coefficient == gould_lhs(n, a, b) && coefficient == gould_rhs(n, a, b)
}
