//! Exact prime-exponent ledgers for the values `f(1), …, f(N)` of an integer
//! polynomial: `lcm`, its radical, the product `Q(N)` split by prime size, and
//! checks of the multiplicity bounds for large primes.

pub mod aggregate;
pub mod analysis;
pub mod error;
pub mod modular;
pub mod numeric;
pub mod oracle;
pub mod polynomial;
mod serde_util;
pub mod sieve;

pub use aggregate::{summarize, SweepRecord};
pub use analysis::{CheckName, CheckOptions, Status, VerificationReport};
pub use error::{Error, Result};
pub use oracle::{naive_run, OracleResult};
pub use polynomial::{IntPoly, Irreducibility, PolyProfile};
pub use sieve::{build_ledger, FactorLedger, LedgerOptions, PrimeLocalData};
