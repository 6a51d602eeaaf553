//! Exact factorization of `Q(N) = ∏_{n≤N} |f(n)|` as a per-prime ledger.
//!
//! Three passes:
//!
//! 1. For each prime `p ≤ B` the layer counts `b_i = #{n ≤ N : p^i | f(n)}` are
//!    computed analytically from the roots of `f` mod `p^i` ([`local_data`]).
//! 2. A segmented pass over `n ∈ [1, N]` divides every `|f(n)|` by the primes
//!    `p ≤ B`, visiting only `n` in root progressions, and cross-checks the
//!    removed exponents against pass 1.
//! 3. What remains of each `|f(n)|` has only prime factors above `B` and is
//!    split by [`factor::factor_cofactor`].
//!
//! Both parallel axes (primes in pass 1, segments in pass 2, cofactors in
//! pass 3) collect in input order, so the ledger is identical for any worker count.

pub mod factor;
pub mod primes;

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::modular::{self, count_progression, RootSet};
use crate::polynomial::IntPoly;

pub const DEFAULT_SEGMENT: usize = 1 << 16;

/// A value `n ≤ N` with `p | f(n)`, and `v_p(f(n))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Hit {
    pub n: u64,
    pub valuation: u32,
}

/// Everything the ledger knows about one prime `p` for one `(f, N)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeLocalData {
    #[serde(serialize_with = "crate::serde_util::biguint")]
    pub p: BigUint,
    /// `α_p(N) = Σ_{n≤N} v_p(f(n))`.
    pub alpha: u64,
    /// `e_p = max_{n≤N} v_p(f(n))`.
    pub max_exp: u32,
    /// `#{n ≤ N : p | f(n)}`.
    pub hit_count: u64,
    /// `layer_counts[i - 1] = #{n ≤ N : p^i | f(n)}`, trailing zeros trimmed.
    pub layer_counts: Vec<u64>,
    /// Individual hits, sorted by `n`; filled only for primes above the ledger's
    /// `hits_above` threshold (by default `N`, where each `n` is one root mod `p`).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub hits: Vec<Hit>,
}

impl PrimeLocalData {
    pub fn empty(p: BigUint) -> Self {
        PrimeLocalData {
            p,
            alpha: 0,
            max_exp: 0,
            hit_count: 0,
            layer_counts: Vec::new(),
            hits: Vec::new(),
        }
    }

    /// `b_i` for `i ≥ 1`.
    pub fn layer(&self, i: usize) -> u64 {
        assert!(i >= 1, "layers are 1-based");
        self.layer_counts.get(i - 1).copied().unwrap_or(0)
    }

    /// Records one `n` with `v_p(f(n)) = v ≥ 1`.
    pub fn add_hit(&mut self, n: u64, v: u32, keep_position: bool) {
        debug_assert!(v >= 1);
        self.alpha += v as u64;
        self.hit_count += 1;
        self.max_exp = self.max_exp.max(v);
        if self.layer_counts.len() < v as usize {
            self.layer_counts.resize(v as usize, 0);
        }
        for b in &mut self.layer_counts[..v as usize] {
            *b += 1;
        }
        if keep_position {
            self.hits.push(Hit { n, valuation: v });
        }
    }

    /// Commutative, associative sum of statistics over disjoint `n`-ranges.
    pub fn merge(&mut self, other: &PrimeLocalData) {
        debug_assert_eq!(self.p, other.p);
        self.alpha += other.alpha;
        self.hit_count += other.hit_count;
        self.max_exp = self.max_exp.max(other.max_exp);
        if self.layer_counts.len() < other.layer_counts.len() {
            self.layer_counts.resize(other.layer_counts.len(), 0);
        }
        for (a, b) in self.layer_counts.iter_mut().zip(&other.layer_counts) {
            *a += b;
        }
        self.hits.extend_from_slice(&other.hits);
        self.hits.sort_unstable();
    }

    /// Same statistics, ignoring the optional hit positions.
    pub fn same_counts(&self, other: &PrimeLocalData) -> bool {
        self.p == other.p
            && self.alpha == other.alpha
            && self.max_exp == other.max_exp
            && self.hit_count == other.hit_count
            && self.layer_counts == other.layer_counts
    }
}

/// The exact factorization of `Q(N)` for one polynomial and one `N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorLedger {
    #[serde(serialize_with = "crate::serde_util::poly")]
    pub poly: IntPoly,
    pub n: u64,
    /// Sieve bound `B`; primes above it came from cofactor factorization.
    pub bound: u64,
    /// `D = 1 + d·|f_d|`.
    pub zone_constant: u64,
    /// Primes above this threshold carry individual hit positions.
    pub hits_above: u64,
    #[serde(serialize_with = "entries_as_list")]
    pub entries: BTreeMap<BigUint, PrimeLocalData>,
    /// `#{n ≤ N : f(n) = 0}`; such values are left out of `Q(N)` and of the lcm.
    pub skipped_zero_count: u64,
}

fn entries_as_list<S: serde::Serializer>(
    v: &BTreeMap<BigUint, PrimeLocalData>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.values())
}

impl FactorLedger {
    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    pub fn get(&self, p: u64) -> Option<&PrimeLocalData> {
        self.entries.get(&BigUint::from(p))
    }

    /// `L_f(N) = ∏ p^{e_p}`.
    pub fn lcm(&self) -> BigUint {
        product_of_powers(self.entries.values().map(|e| (&e.p, e.max_exp as u64)))
    }

    /// `ℓ_f(N) = ∏_{p | Q(N)} p`.
    pub fn radical(&self) -> BigUint {
        product_of_powers(self.entries.values().map(|e| (&e.p, 1)))
    }

    /// `Q(N) = ∏ p^{α_p}`.
    pub fn product(&self) -> BigUint {
        product_of_powers(self.entries.values().map(|e| (&e.p, e.alpha)))
    }
}

/// Balanced product tree over `p^e` terms.
pub fn product_of_powers<'a>(terms: impl Iterator<Item = (&'a BigUint, u64)>) -> BigUint {
    let mut layer: Vec<BigUint> = terms
        .filter(|(_, e)| *e > 0)
        .map(|(p, e)| num_traits::pow(p.clone(), e as usize))
        .collect();
    if layer.is_empty() {
        return BigUint::one();
    }
    while layer.len() > 1 {
        layer = layer
            .chunks(2)
            .map(|c| if c.len() == 2 { &c[0] * &c[1] } else { c[0].clone() })
            .collect();
    }
    layer.pop().expect("nonempty")
}

#[derive(Debug, Clone)]
pub struct LedgerOptions {
    /// Sieve bound `B`; `None` means `D·N`. Must not be below `D·N`.
    pub bound: Option<u64>,
    /// Values of `n` per segment in the residual pass.
    pub segment_size: usize,
    /// Worker threads; 0 uses rayon's default.
    pub workers: usize,
    /// Seeds equal-degree splitting and rho.
    pub seed: u64,
    /// Primes above this keep hit positions; `None` means `N`.
    pub hits_above: Option<u64>,
}

impl Default for LedgerOptions {
    fn default() -> Self {
        LedgerOptions {
            bound: None,
            segment_size: DEFAULT_SEGMENT,
            workers: 0,
            seed: 0,
            hits_above: None,
        }
    }
}

/// Root data of one prime that survives into the residual pass.
struct PrimeScan {
    p: u64,
    level1: Vec<u64>,
    data: PrimeLocalData,
}

/// `(PrimeLocalData, level-1 roots)` for `p`, derived from root counts alone.
fn scan_prime(
    f: &IntPoly,
    p: u64,
    n_max: u64,
    cap: &BigUint,
    zeros: &[u64],
    seed: u64,
) -> (PrimeLocalData, Vec<u64>) {
    let mut level: RootSet = modular::roots_mod_p_seeded(f, p, seed);
    let level1: Vec<u64> = level
        .roots
        .iter()
        .map(|r| r.to_u64().expect("residue < p"))
        .collect();
    let mut data = PrimeLocalData::empty(BigUint::from(p));
    let z = zeros.len() as u64;
    loop {
        if &level.modulus > cap || level.is_empty() {
            break;
        }
        let raw: u64 = level
            .roots
            .iter()
            .map(|r| count_progression(r, &level.modulus, n_max))
            .sum();
        // every zero of f in [1, N] sits in exactly one progression at every level
        let count = raw - z;
        if count == 0 {
            break;
        }
        data.layer_counts.push(count);
        let next_modulus = &level.modulus * p;
        let limit = (next_modulus > BigUint::from(n_max)).then_some(n_max);
        if BigUint::from(n_max) < level.modulus {
            level.retain_at_most(n_max);
        }
        match modular::lift_roots_within(f, &level, cap, limit) {
            Ok(next) => level = next,
            Err(Error::CapExceeded { .. }) => break,
            Err(e) => unreachable!("lifting only fails on the cap: {e}"),
        }
    }
    data.alpha = data.layer_counts.iter().sum();
    data.hit_count = data.layer_counts.first().copied().unwrap_or(0);
    data.max_exp = data.layer_counts.len() as u32;
    (data, level1)
}

fn valuation(v: &BigUint, p: u64) -> u32 {
    let mut v = v.clone();
    let mut e = 0;
    while !v.is_zero() && rem_u64(&v, p) == 0 {
        v /= p;
        e += 1;
    }
    e
}

/// `PrimeLocalData` of `p` for `f` on `[1, N]`, with `cap = max_{n≤N} |f(n)|`.
///
/// Exact: layer counts are summed over root progressions mod `p^i` for every
/// `p^i ≤ cap`. For `p > N` the individual hits are filled in as well.
pub fn local_data(f: &IntPoly, p: u64, n_max: u64, cap: &BigUint) -> PrimeLocalData {
    let zeros = integer_zeros(f, n_max);
    let (mut data, level1) = scan_prime(f, p, n_max, cap, &zeros, 0);
    if p > n_max {
        for &r in &level1 {
            if r >= 1 && r <= n_max && !zeros.contains(&r) {
                let v = valuation(&f.abs_eval_u64(r), p);
                data.hits.push(Hit { n: r, valuation: v });
            }
        }
    }
    data
}

fn integer_zeros(f: &IntPoly, n_max: u64) -> Vec<u64> {
    if n_max == 0 {
        return Vec::new();
    }
    let hi = i64::try_from(n_max).unwrap_or(i64::MAX);
    f.integer_zeros(1, hi).into_iter().map(|z| z as u64).collect()
}

#[inline]
fn rem_u64(v: &BigUint, p: u64) -> u64 {
    let p128 = p as u128;
    v.iter_u64_digits()
        .rev()
        .fold(0u128, |r, d| ((r << 64) | d as u128) % p128) as u64
}

/// `|f(n)|` during the residual pass.
enum Residual {
    Zero,
    Small(u128),
    Big(BigUint),
}

impl Residual {
    fn divide_out(&mut self, p: u64) -> u32 {
        let mut e = 0;
        match self {
            Residual::Zero => {}
            Residual::Small(v) => {
                let p = p as u128;
                while *v % p == 0 {
                    *v /= p;
                    e += 1;
                }
            }
            Residual::Big(v) => {
                while rem_u64(v, p) == 0 {
                    *v /= p;
                    e += 1;
                }
            }
        }
        e
    }

    fn into_cofactor(self) -> Option<BigUint> {
        match self {
            Residual::Zero => None,
            Residual::Small(v) => (v > 1).then(|| BigUint::from(v)),
            Residual::Big(v) => (v > BigUint::one()).then_some(v),
        }
    }
}

fn abs_value(f: &IntPoly, small: Option<&[i128]>, n: u64) -> Residual {
    if let Some(c) = small {
        let x = n as i128;
        let mut acc: Option<i128> = Some(0);
        for &ci in c.iter().rev() {
            acc = acc.and_then(|a| a.checked_mul(x)).and_then(|a| a.checked_add(ci));
        }
        if let Some(v) = acc {
            return if v == 0 {
                Residual::Zero
            } else {
                Residual::Small(v.unsigned_abs())
            };
        }
    }
    let v = f.eval(&BigInt::from(n));
    if v.is_zero() {
        Residual::Zero
    } else {
        Residual::Big(v.into_parts().1)
    }
}

struct SegmentOutput {
    /// Parallel to the prime scan list.
    sieved: Vec<PrimeLocalData>,
    cofactors: Vec<(u64, BigUint)>,
    zeros: u64,
}

fn sieve_segment(
    f: &IntPoly,
    small: Option<&[i128]>,
    scans: &[PrimeScan],
    lo: u64,
    hi: u64,
    hits_above: u64,
) -> SegmentOutput {
    let mut values: Vec<Residual> = (lo..=hi).map(|n| abs_value(f, small, n)).collect();
    let zeros = values.iter().filter(|v| matches!(v, Residual::Zero)).count() as u64;
    let mut sieved = Vec::with_capacity(scans.len());
    for scan in scans {
        let p = scan.p;
        let keep = p > hits_above;
        let mut acc = PrimeLocalData::empty(scan.data.p.clone());
        let mut visited: Vec<(u64, u32)> = Vec::new();
        for &r in &scan.level1 {
            // first n ≥ max(lo, 1) with n ≡ r (mod p)
            let mut n = if lo <= r { r } else { lo + (r + p - lo % p) % p };
            if n == 0 {
                n = p;
            }
            while n <= hi {
                let e = values[(n - lo) as usize].divide_out(p);
                if e > 0 {
                    visited.push((n, e));
                }
                n += p;
            }
        }
        if keep {
            visited.sort_unstable();
        }
        for (n, e) in visited {
            acc.add_hit(n, e, keep);
        }
        sieved.push(acc);
    }
    let cofactors = values
        .into_iter()
        .zip(lo..=hi)
        .filter_map(|(v, n)| v.into_cofactor().map(|c| (n, c)))
        .collect();
    SegmentOutput {
        sieved,
        cofactors,
        zeros,
    }
}

/// Builds the exact [`FactorLedger`] of `Q(N)` for `f`.
pub fn build_ledger(f: &IntPoly, n_max: u64, opts: &LedgerOptions) -> Result<FactorLedger> {
    let zone_constant = f.zone_constant()?;
    let required = zone_constant
        .checked_mul(n_max)
        .ok_or_else(|| Error::BoundTooLarge(format!("D*N = {zone_constant}*{n_max}")))?;
    let bound = opts.bound.unwrap_or(required);
    if bound < required {
        return Err(Error::BoundBelowZone { bound, required });
    }
    let hits_above = opts.hits_above.unwrap_or(n_max);
    let mut ledger = FactorLedger {
        poly: f.clone(),
        n: n_max,
        bound,
        zone_constant,
        hits_above,
        entries: BTreeMap::new(),
        skipped_zero_count: 0,
    };
    if n_max == 0 {
        return Ok(ledger);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    pool.install(|| build_into(&mut ledger, opts))?;
    Ok(ledger)
}

fn build_into(ledger: &mut FactorLedger, opts: &LedgerOptions) -> Result<()> {
    let f = ledger.poly.clone();
    let n_max = ledger.n;
    let cap = f.max_abs_on_range(n_max);
    let zeros = integer_zeros(&f, n_max);

    let primes = primes::primes_up_to(ledger.bound);
    let scans: Vec<PrimeScan> = primes
        .par_iter()
        .filter_map(|&p| {
            let (data, level1) = scan_prime(&f, p, n_max, &cap, &zeros, opts.seed);
            (data.alpha > 0).then_some(PrimeScan { p, level1, data })
        })
        .collect();

    let small = f.coeffs_i128();
    let seg = opts.segment_size.max(1) as u64;
    let segments: Vec<(u64, u64)> = (0..n_max.div_ceil(seg))
        .map(|k| (k * seg + 1, ((k + 1) * seg).min(n_max)))
        .collect();
    let outputs: Vec<SegmentOutput> = segments
        .par_iter()
        .map(|&(lo, hi)| sieve_segment(&f, small.as_deref(), &scans, lo, hi, ledger.hits_above))
        .collect();

    let mut totals: Vec<PrimeLocalData> = scans
        .iter()
        .map(|s| PrimeLocalData::empty(s.data.p.clone()))
        .collect();
    let mut cofactors = Vec::new();
    for out in outputs {
        ledger.skipped_zero_count += out.zeros;
        for (t, s) in totals.iter_mut().zip(&out.sieved) {
            t.merge(s);
        }
        cofactors.extend(out.cofactors);
    }
    for (scan, sieved) in scans.iter().zip(totals) {
        if !scan.data.same_counts(&sieved) {
            return Err(Error::LedgerMismatch {
                prime: scan.p,
                analytic: format!("{:?}", scan.data.layer_counts),
                sieved: format!("{:?}", sieved.layer_counts),
            });
        }
        ledger.entries.insert(sieved.p.clone(), sieved);
    }

    let factored: Vec<(u64, Vec<(BigUint, u32)>)> = cofactors
        .par_iter()
        .map(|(n, c)| {
            factor::factor_cofactor(c, opts.seed ^ n.wrapping_mul(0xA24B_AED4_963E_E407))
                .map(|fs| (*n, fs))
        })
        .collect::<Result<_>>()?;
    let bound = BigUint::from(ledger.bound);
    let keep_from = BigUint::from(ledger.hits_above);
    for (n, fs) in factored {
        for (p, e) in fs {
            if p <= bound {
                return Err(Error::LedgerMismatch {
                    prime: p.to_u64().unwrap_or(u64::MAX),
                    analytic: "no factor at or below the sieve bound".to_string(),
                    sieved: format!("residual of f({n}) still divisible"),
                });
            }
            let keep = p > keep_from;
            ledger
                .entries
                .entry(p.clone())
                .or_insert_with(|| PrimeLocalData::empty(p))
                .add_hit(n, e, keep);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    fn brute_local(f: &IntPoly, p: u64, n_max: u64) -> PrimeLocalData {
        let mut d = PrimeLocalData::empty(BigUint::from(p));
        for n in 1..=n_max {
            let v = f.abs_eval_u64(n);
            if v.is_zero() {
                continue;
            }
            let e = valuation(&v, p);
            if e > 0 {
                d.add_hit(n, e, p > n_max);
            }
        }
        d
    }

    #[test]
    fn local_data_examples() {
        let f = poly("x^2+1");
        let d = local_data(&f, 5, 10, &f.max_abs_on_range(10));
        assert_eq!((d.alpha, d.max_exp, d.hit_count), (5, 2, 4));
        let d = local_data(&f, 3, 100, &f.max_abs_on_range(100));
        assert_eq!((d.alpha, d.max_exp, d.hit_count), (0, 0, 0));
        let d = local_data(&f, 101, 10, &f.max_abs_on_range(10));
        assert_eq!((d.alpha, d.max_exp, d.hit_count), (1, 1, 1));
        assert_eq!(d.hits, vec![Hit { n: 10, valuation: 1 }]);
    }

    #[test]
    fn local_data_matches_brute_force() {
        for s in ["x^2+1", "x^3+2", "2*x^3 - x + 7", "x^2+x+1", "x^2 - 3*x - 4", "4*x^2 + 2*x + 8"] {
            let f = poly(s);
            for n_max in [1u64, 5, 37, 250] {
                let cap = f.max_abs_on_range(n_max);
                for p in primes::primes_up_to(600) {
                    assert_eq!(local_data(&f, p, n_max, &cap), brute_local(&f, p, n_max), "{s} N={n_max} p={p}");
                }
            }
        }
    }

    #[test]
    fn ledger_small_example() {
        let f = poly("x^2+1");
        let l = build_ledger(&f, 5, &LedgerOptions::default()).unwrap();
        let got: Vec<(u64, u64, u32, u64)> = l
            .entries
            .values()
            .map(|e| (e.p.to_u64().unwrap(), e.alpha, e.max_exp, e.hit_count))
            .collect();
        assert_eq!(got, vec![(2, 3, 1, 3), (5, 2, 1, 2), (13, 1, 1, 1), (17, 1, 1, 1)]);
        assert_eq!(l.lcm(), BigUint::from(2210u32));
        assert_eq!(l.product(), BigUint::from(44200u32));

        let l1 = build_ledger(&f, 1, &LedgerOptions::default()).unwrap();
        assert_eq!(l1.entries.len(), 1);
        assert_eq!(l1.get(2).unwrap().alpha, 1);

        let l0 = build_ledger(&f, 0, &LedgerOptions::default()).unwrap();
        assert!(l0.entries.is_empty());
        assert_eq!(l0.lcm(), BigUint::one());
    }

    #[test]
    fn bound_below_zone_rejected() {
        let f = poly("x^2+1");
        let opts = LedgerOptions {
            bound: Some(29),
            ..Default::default()
        };
        assert_eq!(
            build_ledger(&f, 10, &opts),
            Err(Error::BoundBelowZone { bound: 29, required: 30 })
        );
    }

    #[test]
    fn reducible_polynomial_zeros_are_skipped() {
        // (x - 3)(x - 7) vanishes at n = 3, 7
        let f = poly("x^2 - 10*x + 21");
        let l = build_ledger(&f, 40, &LedgerOptions::default()).unwrap();
        assert_eq!(l.skipped_zero_count, 2);
        let mut want: BTreeMap<BigUint, PrimeLocalData> = BTreeMap::new();
        for n in 1..=40u64 {
            let v = f.abs_eval_u64(n);
            if v.is_zero() {
                continue;
            }
            for (p, e) in factor::factorize(&v, 0).unwrap() {
                let keep = p > BigUint::from(40u32);
                want.entry(p.clone()).or_insert_with(|| PrimeLocalData::empty(p)).add_hit(n, e, keep);
            }
        }
        assert_eq!(l.entries, want);
    }

    #[test]
    fn segment_size_and_workers_do_not_change_the_ledger() {
        let f = poly("x^3+2");
        let base = build_ledger(&f, 3000, &LedgerOptions::default()).unwrap();
        for (seg, workers) in [(64, 1), (1000, 4), (3000, 8), (7, 3)] {
            let opts = LedgerOptions {
                segment_size: seg,
                workers,
                ..Default::default()
            };
            assert_eq!(build_ledger(&f, 3000, &opts).unwrap(), base, "seg={seg} workers={workers}");
        }
    }

    #[test]
    fn raised_bound_gives_same_entries() {
        let f = poly("2*x^3 - x + 7");
        let a = build_ledger(&f, 500, &LedgerOptions::default()).unwrap();
        let b = build_ledger(
            &f,
            500,
            &LedgerOptions {
                bound: Some(20_000),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(a.entries, b.entries);
    }

    #[test]
    fn product_tree_matches_fold() {
        let ps: Vec<BigUint> = [2u32, 3, 5, 7, 11].iter().map(|&p| BigUint::from(p)).collect();
        let got = product_of_powers(ps.iter().zip([3u64, 0, 2, 1, 1]));
        assert_eq!(got, BigUint::from(8u32 * 25 * 7 * 11));
    }
}
