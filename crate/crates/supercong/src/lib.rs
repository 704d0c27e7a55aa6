//! Verification toolkit for central-binomial supercongruences modulo p².
//!
//! The crate certifies, prime by prime, a family of congruences between
//! truncated central-binomial sums and closed forms mod p². Each check is
//! evaluated twice — once through fast modular streams, once through an
//! exact big-integer oracle — and a record is emitted with both sides.

pub mod binomial;
pub mod checks;
pub mod fibonacci;
pub mod identity;
pub mod oracle;
pub mod primes;
pub mod rational;
pub mod report;
pub mod residue;
pub mod scan;

pub use binomial::{
    exact_binomial, odd_square_product, product_formula_check, trinomial_revision_check,
    BinomialKind, BinomialStream, StreamError,
};
pub use fibonacci::{fib_lucas, fib_lucas_stream, FibPair};
pub use primes::{cornacchia, primes_in_range, sqrt_minus_one, PartitionError, QuadraticPartition};
pub use residue::{
    ArithmeticError, ContextError, Modulus, PrimeContext, Residue, ValuatedResidue,
};
