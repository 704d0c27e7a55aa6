//! Scan orchestration: which checks run for which primes, seeded random
//! trials, deterministic parallel execution, and the identity-range harness.
//!
//! Determinism is a hard contract: for a fixed (config, seed) the report is
//! byte-identical whatever `jobs` is. Primes are processed in fixed-size
//! ascending chunks; random trials draw from a ChaCha stream keyed by
//! (seed, p, check), never from shared state. Under `fail_fast` the scan
//! stops issuing chunks once a processed chunk contains a failure — in-flight
//! primes are drained and reported, later ones never start.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

use crate::checks::{
    check_theorem, fib_check, gauss_binomial_check, key_congruence_check, lucas_check,
    remark_i_check, rv_check, sun_check, symmetry_check, tail_vanishing_check, CheckRecord, Params,
};
use crate::identity::{gf_coefficient_check, gould_lhs, gould_polynomial_check, gould_rhs};
use crate::primes::primes_in_range;
use crate::report::ReportFormat;
use crate::residue::{PrimeContext, Residue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UsageError {
    #[error("--min must be at least 3, got {0}")]
    MinTooSmall(u64),
    #[error("--min {min} exceeds --max {max}")]
    MinAboveMax { min: u64, max: u64 },
    #[error("no checks selected")]
    NoChecks,
    #[error("--jobs must be at least 1")]
    ZeroJobs,
    #[error("unknown check {0:?}")]
    UnknownCheck(String),
}

/// The congruence checks a scan can run, in canonical report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckKind {
    Theorem,
    Symmetry,
    Rv,
    Tail,
    RemarkI,
    Fib,
    Lucas,
    Sun,
    Gauss,
    Key,
}

impl CheckKind {
    pub const ALL: [CheckKind; 10] = [
        CheckKind::Theorem,
        CheckKind::Symmetry,
        CheckKind::Rv,
        CheckKind::Tail,
        CheckKind::RemarkI,
        CheckKind::Fib,
        CheckKind::Lucas,
        CheckKind::Sun,
        CheckKind::Gauss,
        CheckKind::Key,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Theorem => "theorem",
            CheckKind::Symmetry => "symmetry",
            CheckKind::Rv => "rv",
            CheckKind::Tail => "tail",
            CheckKind::RemarkI => "remark_i",
            CheckKind::Fib => "fib",
            CheckKind::Lucas => "lucas",
            CheckKind::Sun => "sun",
            CheckKind::Gauss => "gauss",
            CheckKind::Key => "key",
        }
    }
}

impl FromStr for CheckKind {
    type Err = UsageError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CheckKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| UsageError::UnknownCheck(s.to_string()))
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Everything a scan needs; [`validate`](Self::validate) enforces the field
/// invariants before any work starts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanConfig {
    /// Inclusive lower bound of the prime range, ≥ 3.
    pub min_p: u64,
    /// Inclusive upper bound.
    pub max_p: u64,
    pub checks: Vec<CheckKind>,
    /// Random (α,β) or t draws per prime for the parameterized checks.
    pub trials: u32,
    pub seed: u64,
    pub jobs: usize,
    pub format: ReportFormat,
    pub fail_fast: bool,
    /// Include the p = 5 fib special case when deciding pass/fail.
    pub strict: bool,
}

impl ScanConfig {
    pub fn new(min_p: u64, max_p: u64) -> Self {
        ScanConfig {
            min_p,
            max_p,
            checks: CheckKind::ALL.to_vec(),
            trials: 8,
            seed: 0,
            jobs: default_jobs(),
            format: ReportFormat::Text,
            fail_fast: false,
            strict: false,
        }
    }

    pub fn validate(&self) -> Result<(), UsageError> {
        if self.min_p < 3 {
            return Err(UsageError::MinTooSmall(self.min_p));
        }
        if self.min_p > self.max_p {
            return Err(UsageError::MinAboveMax { min: self.min_p, max: self.max_p });
        }
        if self.checks.is_empty() {
            return Err(UsageError::NoChecks);
        }
        if self.jobs == 0 {
            return Err(UsageError::ZeroJobs);
        }
        Ok(())
    }
}

pub fn default_jobs() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

/// Whether a record participates in the scan's pass/fail verdict. The p = 5
/// fib record is informational unless `strict` opts it in.
pub fn record_is_asserted(rec: &CheckRecord, strict: bool) -> bool {
    strict || !(rec.check == "fib" && rec.p == 5)
}

/// Independent, reproducible randomness per (seed, prime, check): scheduling
/// can never perturb which trial values a prime sees.
fn trial_rng(seed: u64, p: u64, tag: &str) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&p.to_le_bytes());
    for (dst, src) in key[16..].iter_mut().zip(tag.bytes()) {
        *dst = src;
    }
    ChaCha8Rng::from_seed(key)
}

/// Uniform residue in [0, p²), via the integer range for word-size moduli
/// and rejection sampling on 64-bit limbs beyond.
fn random_residue(rng: &mut ChaCha8Rng, ctx: &PrimeContext) -> Residue {
    if let Some(m) = ctx.modulus().to_biguint().to_u64_digits().first().copied().filter(|_| ctx.modulus().to_biguint().bits() <= 64) {
        return ctx.reduce_u64(rng.gen_range(0..m));
    }
    let m = ctx.modulus().to_biguint();
    let limbs = m.to_u64_digits().len();
    loop {
        let digits: Vec<u64> = (0..limbs).map(|_| rng.gen()).collect();
        let candidate = num_bigint::BigUint::new(digits.iter().flat_map(|d| [(d & 0xffff_ffff) as u32, (d >> 32) as u32]).collect());
        if candidate < m {
            return ctx.reduce_bigint(&num_bigint::BigInt::from(candidate));
        }
    }
}

/// All selected records for one prime, in the canonical check order; random
/// trials come after the fixed instances of each parameterized check.
fn records_for_prime(p: u64, config: &ScanConfig) -> Vec<CheckRecord> {
    let ctx = PrimeContext::new(p).expect("scan only visits odd primes");
    let mut out = Vec::new();
    for kind in CheckKind::ALL {
        if !config.checks.contains(&kind) {
            continue;
        }
        match kind {
            CheckKind::Theorem => {
                for (a, b) in fixed_pairs(&ctx) {
                    out.push(check_theorem(&ctx, &a, &b));
                }
                let mut rng = trial_rng(config.seed, p, "theorem");
                for _ in 0..config.trials {
                    let a = random_residue(&mut rng, &ctx);
                    let b = random_residue(&mut rng, &ctx);
                    out.push(check_theorem(&ctx, &a, &b));
                }
            }
            CheckKind::Symmetry => {
                for (a, b) in fixed_pairs(&ctx) {
                    out.push(symmetry_check(&ctx, &a, &b));
                }
                let mut rng = trial_rng(config.seed, p, "symmetry");
                for _ in 0..config.trials {
                    let a = random_residue(&mut rng, &ctx);
                    let b = random_residue(&mut rng, &ctx);
                    out.push(symmetry_check(&ctx, &a, &b));
                }
            }
            CheckKind::Rv => out.push(rv_check(&ctx)),
            CheckKind::Tail => out.push(tail_vanishing_check(&ctx)),
            CheckKind::RemarkI => {
                for t in fixed_ts(&ctx) {
                    out.push(remark_i_check(&ctx, &t));
                }
                let mut rng = trial_rng(config.seed, p, "remark_i");
                for _ in 0..config.trials {
                    let t = random_residue(&mut rng, &ctx);
                    out.push(remark_i_check(&ctx, &t));
                }
            }
            CheckKind::Fib => {
                if p % 4 == 1 {
                    out.push(fib_check(&ctx).expect("residue class checked"));
                }
            }
            CheckKind::Lucas => {
                if p % 4 == 3 {
                    out.push(lucas_check(&ctx).expect("residue class checked"));
                }
            }
            CheckKind::Sun => out.push(sun_check(&ctx)),
            CheckKind::Gauss => {
                if p % 4 == 1 {
                    out.push(gauss_binomial_check(&ctx).expect("residue class checked"));
                }
            }
            CheckKind::Key => out.push(key_congruence_check(&ctx)),
        }
    }
    out
}

fn fixed_pairs(ctx: &PrimeContext) -> Vec<(Residue, Residue)> {
    vec![
        (ctx.zero(), ctx.reduce_i128(-1)),
        (ctx.one(), ctx.zero()),
        (
            ctx.from_rational(1, 2).expect("2 is a unit for odd p"),
            ctx.from_rational(-1, 2).expect("2 is a unit for odd p"),
        ),
    ]
}

fn fixed_ts(ctx: &PrimeContext) -> Vec<Residue> {
    vec![
        ctx.zero(),
        ctx.one(),
        ctx.reduce_u64(2),
        ctx.from_rational(1, 2).expect("2 is a unit for odd p"),
    ]
}

/// Primes per parallel batch. Fixed so chunk boundaries — and therefore the
/// fail_fast truncation point — cannot depend on the job count.
const CHUNK: usize = 32;

/// Runs the scan and returns records ordered by (prime, canonical check
/// order, trial order).
pub fn run_scan(config: &ScanConfig) -> Result<Vec<CheckRecord>, UsageError> {
    config.validate()?;
    let primes = primes_in_range(config.min_p.max(3), config.max_p.saturating_add(1));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .expect("thread pool construction only fails on resource exhaustion");
    let mut out = Vec::new();
    for chunk in primes.chunks(CHUNK) {
        let batch: Vec<Vec<CheckRecord>> = pool.install(|| {
            chunk.par_iter().map(|&p| records_for_prime(p, config)).collect()
        });
        let mut failed = false;
        for records in batch {
            for rec in records {
                failed = failed || (!rec.ok && record_is_asserted(&rec, config.strict));
                out.push(rec);
            }
        }
        if config.fail_fast && failed {
            break;
        }
    }
    Ok(out)
}

/// The identity-range analogue of [`CheckKind`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdentityKind {
    GouldPoly,
    GouldValue,
    Gf,
    Trinomial,
}

impl IdentityKind {
    pub const ALL: [IdentityKind; 4] = [
        IdentityKind::GouldPoly,
        IdentityKind::GouldValue,
        IdentityKind::Gf,
        IdentityKind::Trinomial,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityKind::GouldPoly => "gould_poly",
            IdentityKind::GouldValue => "gould_value",
            IdentityKind::Gf => "gf",
            IdentityKind::Trinomial => "trinomial",
        }
    }
}

impl FromStr for IdentityKind {
    type Err = UsageError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IdentityKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| UsageError::UnknownCheck(s.to_string()))
    }
}

impl fmt::Display for IdentityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exact-identity sweep over a range of n (the record's `p` column carries n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityConfig {
    pub min_n: u64,
    /// Inclusive.
    pub max_n: u64,
    pub checks: Vec<IdentityKind>,
    /// Random (a,b) evaluation points per n.
    pub trials: u32,
    pub seed: u64,
    pub jobs: usize,
    pub format: ReportFormat,
}

impl IdentityConfig {
    pub fn new(min_n: u64, max_n: u64) -> Self {
        IdentityConfig {
            min_n,
            max_n,
            checks: IdentityKind::ALL.to_vec(),
            trials: 5,
            seed: 0,
            jobs: default_jobs(),
            format: ReportFormat::Text,
        }
    }

    pub fn validate(&self) -> Result<(), UsageError> {
        if self.min_n > self.max_n {
            return Err(UsageError::MinAboveMax { min: self.min_n, max: self.max_n });
        }
        if self.checks.is_empty() {
            return Err(UsageError::NoChecks);
        }
        if self.jobs == 0 {
            return Err(UsageError::ZeroJobs);
        }
        Ok(())
    }
}

fn identity_records_for_n(n: u64, config: &IdentityConfig) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for kind in IdentityKind::ALL {
        if !config.checks.contains(&kind) {
            continue;
        }
        match kind {
            IdentityKind::GouldPoly => {
                // Digest: both polynomials evaluated at α = β = 1; ok is the
                // full coefficient-wise comparison.
                let ok = gould_polynomial_check(n);
                let lhs = gould_lhs(n, 1, 1);
                let rhs = gould_rhs(n, 1, 1);
                let mut rec = CheckRecord {
                    p: n,
                    check: "gould_poly".into(),
                    params: Params::new(),
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                    ok: ok && lhs == rhs,
                };
                rec.ok = ok && rec.lhs == rec.rhs;
                out.push(rec);
            }
            IdentityKind::GouldValue => {
                let mut rng = trial_rng(config.seed, n, "gould_value");
                for _ in 0..config.trials.max(1) {
                    let a = rng.gen_range(-1000i64..=1000);
                    let b = rng.gen_range(-1000i64..=1000);
                    let lhs = gould_lhs(n, a, b);
                    let rhs = gould_rhs(n, a, b);
                    let mut params = Params::new();
                    params.push("a", a);
                    params.push("b", b);
                    out.push(CheckRecord {
                        p: n,
                        check: "gould_value".into(),
                        params,
                        ok: lhs == rhs,
                        lhs: lhs.to_string(),
                        rhs: rhs.to_string(),
                    });
                }
            }
            IdentityKind::Gf => {
                let mut rng = trial_rng(config.seed, n, "gf");
                for _ in 0..config.trials.max(1) {
                    let a = rng.gen_range(-100i64..=100);
                    let b = rng.gen_range(-100i64..=100);
                    let ok = gf_coefficient_check(n, a, b);
                    let value = gould_rhs(n, a, b);
                    let mut params = Params::new();
                    params.push("a", a);
                    params.push("b", b);
                    out.push(CheckRecord {
                        p: n,
                        check: "gf".into(),
                        params,
                        lhs: value.to_string(),
                        rhs: value.to_string(),
                        ok,
                    });
                }
            }
            IdentityKind::Trinomial => {
                let mut digest_l = num_bigint::BigUint::from(0u32);
                let mut digest_r = num_bigint::BigUint::from(0u32);
                let mut all_ok = true;
                for k in 0..=n {
                    let l = crate::binomial::exact_binomial(n, k as i64)
                        * crate::binomial::exact_binomial(n + k, k as i64);
                    let r = crate::binomial::exact_binomial(n + k, 2 * k as i64)
                        * crate::binomial::exact_binomial(2 * k, k as i64);
                    all_ok = all_ok && l == r;
                    digest_l += l;
                    digest_r += r;
                }
                out.push(CheckRecord {
                    p: n,
                    check: "trinomial".into(),
                    params: Params::new(),
                    lhs: digest_l.to_string(),
                    rhs: digest_r.to_string(),
                    ok: all_ok,
                });
            }
        }
    }
    out
}

pub fn run_identity(config: &IdentityConfig) -> Result<Vec<CheckRecord>, UsageError> {
    config.validate()?;
    let ns: Vec<u64> = (config.min_n..=config.max_n).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .expect("thread pool construction only fails on resource exhaustion");
    let batches: Vec<Vec<CheckRecord>> = pool.install(|| {
        ns.par_iter().map(|&n| identity_records_for_n(n, config)).collect()
    });
    Ok(batches.into_iter().flatten().collect())
}
