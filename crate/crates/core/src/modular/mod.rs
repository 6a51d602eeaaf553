//! Roots of `f` modulo `p` and modulo prime powers `p^k`.
//!
//! Level-1 roots come from an exhaustive scan for small `p` and from
//! `gcd(x^p - x, f)` plus equal-degree splitting above [`SCAN_THRESHOLD`].
//! Higher levels lift simple roots with one Newton step and test all `p`
//! candidates above a non-simple root.

pub mod fp;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polynomial::{eval_slice, IntPoly};

/// Primes up to this bound get their roots by direct scan.
pub const SCAN_THRESHOLD: u64 = 2048;

/// Roots of `f` modulo `p^level`, sorted, each in `[0, p^level)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootSet {
    pub p: u64,
    pub level: u32,
    #[serde(serialize_with = "crate::serde_util::biguint")]
    pub modulus: BigUint,
    #[serde(serialize_with = "crate::serde_util::biguint_vec")]
    pub roots: Vec<BigUint>,
    /// `simple[j]` iff `f'(roots[j]) ≢ 0 (mod p)`.
    pub simple: Vec<bool>,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Keeps only roots in `[1, limit]`; lifts of the dropped ones all exceed `limit`
    /// once the modulus does.
    pub fn retain_at_most(&mut self, limit: u64) {
        let limit = BigUint::from(limit);
        let keep: Vec<bool> = self
            .roots
            .iter()
            .map(|r| !r.is_zero() && *r <= limit)
            .collect();
        let mut it = keep.iter();
        self.roots.retain(|_| *it.next().expect("same length"));
        let mut it = keep.iter();
        self.simple.retain(|_| *it.next().expect("same length"));
    }
}

fn simple_flag(deriv: &[BigInt], r: &BigInt, p: &BigInt) -> bool {
    !eval_slice(deriv, r).mod_floor(p).is_zero()
}

/// Roots of `f` modulo the prime `p` (level 1), seeded splitting with seed 0.
pub fn roots_mod_p(f: &IntPoly, p: u64) -> RootSet {
    roots_mod_p_seeded(f, p, 0)
}

pub fn roots_mod_p_seeded(f: &IntPoly, p: u64, seed: u64) -> RootSet {
    let reduced = f.reduce_mod(p);
    let residues: Vec<u64> = if reduced.is_empty() {
        (0..p).collect()
    } else if p <= SCAN_THRESHOLD {
        (0..p).filter(|&r| fp::eval(&reduced, r, p) == 0).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        fp::roots_by_gcd(&reduced, p, &mut rng)
    };
    let deriv = f.derivative_coeffs();
    let pb = BigInt::from(p);
    let simple = residues
        .iter()
        .map(|&r| simple_flag(&deriv, &BigInt::from(r), &pb))
        .collect();
    RootSet {
        p,
        level: 1,
        modulus: BigUint::from(p),
        roots: residues.into_iter().map(BigUint::from).collect(),
        simple,
    }
}

/// Number of roots of `f` modulo `p`.
pub fn rho(f: &IntPoly, p: u64) -> usize {
    let reduced = f.reduce_mod(p);
    if reduced.is_empty() {
        return p as usize;
    }
    if p <= SCAN_THRESHOLD {
        (0..p).filter(|&r| fp::eval(&reduced, r, p) == 0).count()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(p);
        fp::roots_by_gcd(&reduced, p, &mut rng).len()
    }
}

/// Lifts `prev` (roots mod `p^{k-1}`) to the full root set mod `p^k`.
///
/// Fails with [`Error::CapExceeded`] when `p^k > cap`: no `|f(n)| ≤ cap` can be
/// divisible by such a modulus, so the caller's lifting loop should stop.
pub fn lift_roots(f: &IntPoly, prev: &RootSet, cap: &BigUint) -> Result<RootSet> {
    lift_roots_within(f, prev, cap, None)
}

/// As [`lift_roots`], but candidates above `limit` are skipped.
pub fn lift_roots_within(
    f: &IntPoly,
    prev: &RootSet,
    cap: &BigUint,
    limit: Option<u64>,
) -> Result<RootSet> {
    let p = prev.p;
    let modulus = &prev.modulus * p;
    if &modulus > cap {
        return Err(Error::CapExceeded {
            what: "modulus",
            value: modulus.to_string(),
            cap: cap.to_string(),
        });
    }
    let limit = limit.map(BigUint::from);
    let coeffs = f.coeffs();
    let deriv = f.derivative_coeffs();
    let prev_mod = BigInt::from(prev.modulus.clone());
    let new_mod = BigInt::from(modulus.clone());
    let pb = BigInt::from(p);

    let mut roots = Vec::new();
    let mut simple = Vec::new();
    for (r, &is_simple) in prev.roots.iter().zip(&prev.simple) {
        let r = BigInt::from(r.clone());
        if is_simple {
            // f(r) = q p^{k-1}; r + t p^{k-1} is a root mod p^k iff q + t f'(r) ≡ 0 (mod p).
            let q = eval_slice(coeffs, &r) / &prev_mod;
            let dr = eval_slice(&deriv, &r)
                .mod_floor(&pb)
                .to_u64()
                .expect("residue < p");
            let inv = fp::inv_mod(dr, p);
            let qm = q.mod_floor(&pb).to_u64().expect("residue < p");
            let t = fp::mul_mod((p - qm) % p, inv, p);
            let lifted = (&r + BigInt::from(t) * &prev_mod)
                .to_biguint()
                .expect("nonnegative");
            debug_assert!(eval_slice(coeffs, &BigInt::from(lifted.clone()))
                .mod_floor(&new_mod)
                .is_zero());
            if limit.as_ref().is_none_or(|l| &lifted <= l) {
                roots.push(lifted);
                simple.push(true);
            }
        } else {
            for t in 0..p {
                let cand = &r + BigInt::from(t) * &prev_mod;
                let cand_u = cand.to_biguint().expect("nonnegative");
                if limit.as_ref().is_some_and(|l| &cand_u > l) {
                    break;
                }
                if eval_slice(coeffs, &cand).mod_floor(&new_mod).is_zero() {
                    roots.push(cand_u);
                    simple.push(simple_flag(&deriv, &cand, &pb));
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..roots.len()).collect();
    order.sort_by(|&a, &b| roots[a].cmp(&roots[b]));
    Ok(RootSet {
        p,
        level: prev.level + 1,
        modulus,
        roots: order.iter().map(|&j| roots[j].clone()).collect(),
        simple: order.iter().map(|&j| simple[j]).collect(),
    })
}

/// `#{n ∈ [1, N] : n ≡ r (mod m)}` for `0 ≤ r < m`.
pub fn count_progression(r: &BigUint, m: &BigUint, n: u64) -> u64 {
    assert!(r < m, "residue must be reduced");
    match (r.to_u64(), m.to_u64()) {
        (Some(r), Some(m)) => count_progression_u64(r, m, n),
        // m > N here, so only r itself can be in range
        (Some(r), None) => u64::from(r >= 1 && r <= n),
        (None, _) => 0,
    }
}

pub fn count_progression_u64(r: u64, m: u64, n: u64) -> u64 {
    assert!(r < m, "residue must be reduced");
    if r == 0 {
        n / m
    } else if r > n {
        0
    } else {
        (n - r) / m + 1
    }
}

/// Roots of `f` modulo `p^level` by trying every residue; testing aid and
/// ground truth for small moduli.
pub fn roots_by_scan(f: &IntPoly, p: u64, level: u32) -> Vec<BigUint> {
    let m = num_traits::pow(BigUint::from(p), level as usize);
    let mb = BigInt::from(m.clone());
    let mut out = Vec::new();
    let mut r = BigUint::zero();
    while r < m {
        if f.eval(&BigInt::from(r.clone())).mod_floor(&mb).is_zero() {
            out.push(r.clone());
        }
        r += BigUint::one();
    }
    out
}
