//! Brute-force ground truth for small `N`.
//!
//! Nothing here goes through `modular` or `sieve`: values are computed by a
//! local Horner loop, factored by trial division (with `num-prime` for the
//! rare leftover above `10^12`), and the lcm is a running gcd-based lcm.
//! Agreement with the sieve pipeline is therefore evidence, not a tautology.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::polynomial::IntPoly;
use crate::sieve::{FactorLedger, Hit, PrimeLocalData};

pub const ORACLE_MAX_N: u64 = 10_000;
const TRIAL_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub n: u64,
    pub lcm_value: BigUint,
    pub rad_value: BigUint,
    /// Ledger with the same layout as the pipeline's: hits kept for `p > N`.
    pub ledger: FactorLedger,
}

fn horner(coeffs: &[BigInt], n: u64) -> BigInt {
    let x = BigInt::from(n);
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c)
}

/// Prime factorization of `v ≥ 1` as `(p, e)` pairs, increasing in `p`.
pub fn trial_factor(v: &BigUint) -> Vec<(BigUint, u32)> {
    let mut out = Vec::new();
    let mut rest = v.clone();
    let mut push = |rest: &mut BigUint, d: u64| {
        let mut e = 0;
        while (&*rest % d).is_zero() {
            *rest /= d;
            e += 1;
        }
        if e > 0 {
            out.push((BigUint::from(d), e));
        }
    };
    push(&mut rest, 2);
    let mut d = 3u64;
    while d <= TRIAL_LIMIT {
        if BigUint::from(d) * d > rest {
            break;
        }
        push(&mut rest, d);
        d += 2;
    }
    if rest.is_one() {
        return out;
    }
    if rest < BigUint::from(TRIAL_LIMIT) * TRIAL_LIMIT {
        // no factor up to min(10^6, sqrt(rest)), so rest is prime
        out.push((rest, 1));
        return out;
    }
    let tail: Vec<(BigUint, u32)> = match rest.to_u128() {
        Some(r) => num_prime::nt_funcs::factorize128(r)
            .into_iter()
            .map(|(p, e)| (BigUint::from(p), e as u32))
            .collect(),
        None => num_prime::nt_funcs::factorize(rest)
            .into_iter()
            .map(|(p, e)| (p, e as u32))
            .collect(),
    };
    out.extend(tail);
    out.sort();
    out
}

/// Factors every `|f(n)|`, `1 ≤ n ≤ N`, and assembles lcm, radical and ledger.
pub fn naive_run(f: &IntPoly, n_max: u64) -> Result<OracleResult> {
    if n_max > ORACLE_MAX_N {
        return Err(Error::CapExceeded {
            what: "oracle N",
            value: n_max.to_string(),
            cap: ORACLE_MAX_N.to_string(),
        });
    }
    let zone_constant = f.zone_constant()?;
    let mut entries: BTreeMap<BigUint, PrimeLocalData> = BTreeMap::new();
    let mut lcm = BigUint::one();
    let mut skipped = 0;
    for n in 1..=n_max {
        let v = horner(f.coeffs(), n).into_parts().1;
        if v.is_zero() {
            skipped += 1;
            continue;
        }
        lcm = lcm.lcm(&v);
        for (p, e) in trial_factor(&v) {
            let keep = p > BigUint::from(n_max);
            let entry = entries.entry(p.clone()).or_insert_with(|| PrimeLocalData {
                p,
                alpha: 0,
                max_exp: 0,
                hit_count: 0,
                layer_counts: Vec::new(),
                hits: Vec::new(),
            });
            entry.alpha += e as u64;
            entry.hit_count += 1;
            entry.max_exp = entry.max_exp.max(e);
            while entry.layer_counts.len() < e as usize {
                entry.layer_counts.push(0);
            }
            for i in 0..e as usize {
                entry.layer_counts[i] += 1;
            }
            if keep {
                entry.hits.push(Hit { n, valuation: e });
            }
        }
    }

    let mut from_ledger = BigUint::one();
    let mut rad = BigUint::one();
    for e in entries.values() {
        from_ledger *= e.p.pow(e.max_exp);
        rad *= &e.p;
    }
    if from_ledger != lcm {
        return Err(Error::OracleInconsistent(format!(
            "ledger lcm {from_ledger} differs from gcd-chain lcm {lcm}"
        )));
    }
    let ledger = FactorLedger {
        poly: f.clone(),
        n: n_max,
        bound: zone_constant.saturating_mul(n_max),
        zone_constant,
        hits_above: n_max,
        entries,
        skipped_zero_count: skipped,
    };
    Ok(OracleResult {
        n: n_max,
        lcm_value: lcm,
        rad_value: rad,
        ledger,
    })
}

/// Entry-by-entry differences between two ledgers (prime, alpha, max_exp,
/// hit_count, layer counts); empty when they agree.
pub fn ledger_diff(a: &FactorLedger, b: &FactorLedger) -> Vec<String> {
    let mut out = Vec::new();
    if a.skipped_zero_count != b.skipped_zero_count {
        out.push(format!(
            "skipped zeros: {} vs {}",
            a.skipped_zero_count, b.skipped_zero_count
        ));
    }
    for (p, x) in &a.entries {
        match b.entries.get(p) {
            None => out.push(format!("p = {p}: only in first ledger (alpha {})", x.alpha)),
            Some(y) if !x.same_counts(y) => out.push(format!(
                "p = {p}: alpha {} vs {}, max_exp {} vs {}, hit_count {} vs {}, layers {:?} vs {:?}",
                x.alpha, y.alpha, x.max_exp, y.max_exp, x.hit_count, y.hit_count,
                x.layer_counts, y.layer_counts
            )),
            Some(_) => {}
        }
    }
    for (p, y) in &b.entries {
        if !a.entries.contains_key(p) {
            out.push(format!("p = {p}: only in second ledger (alpha {})", y.alpha));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    #[test]
    fn small_lcms() {
        let f = poly("x^2 + 1");
        let r = naive_run(&f, 3).unwrap();
        assert_eq!(r.lcm_value, BigUint::from(10u32));
        assert_eq!(r.rad_value, BigUint::from(10u32));

        let r = naive_run(&f, 5).unwrap();
        assert_eq!(r.lcm_value, BigUint::from(2210u32));
        assert_eq!(r.rad_value, BigUint::from(2210u32));
        assert_eq!(r.ledger.product(), BigUint::from(44200u32));

        let r = naive_run(&f, 7).unwrap();
        assert_eq!(r.lcm_value, BigUint::from(408_850u32));
        assert_eq!(r.ledger.get(5).unwrap().max_exp, 2);
    }

    #[test]
    fn cap_and_empty() {
        let f = poly("x^2 + 1");
        assert!(matches!(naive_run(&f, 10_001), Err(Error::CapExceeded { .. })));
        let r = naive_run(&f, 0).unwrap();
        assert!(r.ledger.entries.is_empty());
        assert!(r.lcm_value.is_one());
    }

    #[test]
    fn zeros_are_skipped() {
        let f = poly("x^2 - 10*x + 21");
        let r = naive_run(&f, 8).unwrap();
        assert_eq!(r.ledger.skipped_zero_count, 2);
    }

    #[test]
    fn trial_factor_reconstructs() {
        for v in [1u64, 2, 97, 561, 1_000_003 * 1_000_033, 2u64.pow(61) - 1, 600_851_475_143] {
            let fs = trial_factor(&BigUint::from(v));
            let back: BigUint = fs.iter().map(|(p, e)| p.pow(*e)).product();
            assert_eq!(back, BigUint::from(v));
        }
        let big = BigUint::from(1_000_000_007u64) * 1_000_000_009u64 * 998_244_353u64;
        let fs = trial_factor(&big);
        assert_eq!(fs.len(), 3);
    }
}
