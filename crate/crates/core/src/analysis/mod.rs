//! Checks of the multiplicity bounds, the small-prime formula, the divided
//! difference argument and the zone inequalities against exact ledger data.
//!
//! Statements with an explicit bound (`α ≤ d²`, `α ≤ d(d-1)/2`, `b_i ≤ d-i`,
//! `p^i | A`, the ratio bracket) are asserted. Statements whose constants are
//! unspecified (deviation from `Nρ/(p-1)`, the squareful ratios) only report.

pub mod identity;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::aggregate::summarize;
use crate::error::{Error, Result};
use crate::modular;
use crate::polynomial::{IntPoly, Irreducibility};
use crate::sieve::{product_of_powers, FactorLedger, Hit};

pub use identity::{
    amgm_ratio, amgm_suite, check_amgm_ratio, check_divisibility_a, divided_difference_a,
    identity_suite,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// A prime, a tuple of points, or a parameter triple.
    pub subject: String,
    pub observed: String,
    pub bound: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check_name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poly: Option<String>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    pub parameters: BTreeMap<String, String>,
    pub status: Status,
    pub violations: Vec<Violation>,
    pub empirical_constants: BTreeMap<String, f64>,
}

impl VerificationReport {
    pub fn new(name: &str) -> Self {
        VerificationReport {
            check_name: name.to_string(),
            poly: None,
            n: None,
            parameters: BTreeMap::new(),
            status: Status::Pass,
            violations: Vec::new(),
            empirical_constants: BTreeMap::new(),
        }
    }

    pub fn with_poly(mut self, f: &IntPoly) -> Self {
        self.poly = Some(f.to_string());
        self
    }

    pub fn with_n(mut self, n: u64) -> Self {
        self.n = Some(n);
        self
    }

    pub fn param(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn violation(&mut self, subject: String, observed: String, bound: String) {
        self.violations.push(Violation {
            subject,
            observed,
            bound,
        });
    }

    pub fn empirical(&mut self, name: &str, value: f64) {
        self.empirical_constants.insert(name.to_string(), value);
    }

    /// Pass iff no violations, unless already marked not applicable.
    pub fn finish(mut self) -> Self {
        if self.status != Status::NotApplicable {
            self.status = if self.violations.is_empty() {
                Status::Pass
            } else {
                Status::Fail
            };
        }
        self
    }

    fn not_applicable(mut self, why: &str) -> Self {
        self.status = Status::NotApplicable;
        self.parameters.insert("reason".to_string(), why.to_string());
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckName {
    AmgmRatio,
    DividedDifference,
    HenselFormula,
    NaiveMultiplicity,
    RefinedMultiplicity,
    SquarefulRatios,
    ZoneInequalities,
}

impl CheckName {
    pub const ALL: [CheckName; 7] = [
        CheckName::AmgmRatio,
        CheckName::DividedDifference,
        CheckName::HenselFormula,
        CheckName::NaiveMultiplicity,
        CheckName::RefinedMultiplicity,
        CheckName::SquarefulRatios,
        CheckName::ZoneInequalities,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::AmgmRatio => "amgm_ratio",
            CheckName::DividedDifference => "divided_difference",
            CheckName::HenselFormula => "hensel_formula",
            CheckName::NaiveMultiplicity => "naive_multiplicity",
            CheckName::RefinedMultiplicity => "refined_multiplicity",
            CheckName::SquarefulRatios => "squareful_ratios",
            CheckName::ZoneInequalities => "zone_inequalities",
        }
    }

    /// Comma-separated names, or `all`.
    pub fn parse_list(s: &str) -> Result<Vec<CheckName>> {
        if s.trim() == "all" {
            return Ok(Self::ALL.to_vec());
        }
        let mut out: Vec<CheckName> = s
            .split(',')
            .map(|x| x.trim().parse())
            .collect::<Result<_>>()?;
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|c| c.as_str() == s).ok_or_else(|| {
            let names: Vec<&str> = Self::ALL.iter().map(|c| c.as_str()).collect();
            Error::InvalidArgument(format!(
                "unknown check {s:?}; valid names: {}",
                names.join(", ")
            ))
        })
    }
}

#[derive(Debug, Clone)]
pub struct CheckOptions {
    pub seed: u64,
    /// Random `(f, points)` cases for the two evaluations of `A`.
    pub identity_cases: usize,
    /// Random point sets per `(d, i, ℓ)` for the ratio bracket.
    pub amgm_cases: usize,
    pub max_random_degree: usize,
    /// Harvested tuples per prime and layer.
    pub tuples_per_prime: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            seed: 0,
            identity_cases: 1000,
            amgm_cases: 1000,
            max_random_degree: 6,
            tuples_per_prime: 64,
        }
    }
}

fn ledger_report(name: CheckName, ledger: &FactorLedger) -> VerificationReport {
    VerificationReport::new(name.as_str())
        .with_poly(&ledger.poly)
        .with_n(ledger.n)
        .param("D", ledger.zone_constant)
        .param("B", ledger.bound)
}

/// Per-prime statistics restricted to `n ≤ cut`, from the hit positions.
fn stats_up_to(hits: &[Hit], cut: u64) -> (u64, u64, u32, Vec<u64>) {
    let mut alpha = 0;
    let mut count = 0;
    let mut max_exp = 0;
    let mut layers: Vec<u64> = Vec::new();
    for h in hits.iter().filter(|h| h.n <= cut) {
        alpha += h.valuation as u64;
        count += 1;
        max_exp = max_exp.max(h.valuation);
        if layers.len() < h.valuation as usize {
            layers.resize(h.valuation as usize, 0);
        }
        for b in &mut layers[..h.valuation as usize] {
            *b += 1;
        }
    }
    (alpha, count, max_exp, layers)
}

/// Smallest `N₀` such that no prime violates `bad` at any `N' ∈ [N₀, N]`, with
/// `bad` applied to primes `p > c·N'`.
///
/// Counts only grow with `N'` while the zone `p > c·N'` shrinks, so for each
/// prime the violating `N'` form an interval ending at `min(N, ⌊(p-1)/c⌋)`:
/// one evaluation per prime suffices. Returns `(N₀, scan floor)`; below the
/// floor the ledger lacks hit positions for some zone primes.
fn empirical_n0(
    ledger: &FactorLedger,
    c: u64,
    bad: impl Fn(u64, u64, u32, &[u64]) -> bool,
) -> (u64, u64) {
    let floor = ledger.hits_above.div_ceil(c).max(1);
    let mut largest: Option<u64> = None;
    for e in ledger.entries.values() {
        if e.hits.is_empty() || e.p <= BigUint::from(c) * floor {
            continue;
        }
        let top = ((&e.p - 1u32) / c).to_u64().unwrap_or(u64::MAX).min(ledger.n);
        let (alpha, count, max_exp, layers) = stats_up_to(&e.hits, top);
        if bad(alpha, count, max_exp, &layers) {
            largest = largest.max(Some(top));
        }
    }
    (largest.map_or(floor, |t| t + 1), floor)
}

fn record_n0(report: &mut VerificationReport, (n0, floor): (u64, u64)) {
    report.empirical("empirical_n0", n0 as f64);
    report.empirical("n0_scan_floor", floor as f64);
}

/// For `p > N`: `α_p ≤ d²`, `#{n : p | f(n)} ≤ d` and `v_p(f(n)) ≤ d`.
pub fn check_naive_multiplicity(ledger: &FactorLedger) -> VerificationReport {
    let d = ledger.degree() as u64;
    let mut report = ledger_report(CheckName::NaiveMultiplicity, ledger).param("d", d);
    if d < 2 {
        return report.not_applicable("degree below 2");
    }
    let n = BigUint::from(ledger.n);
    let bad = |alpha: u64, count: u64, max_exp: u32, _: &[u64]| {
        alpha > d * d || count > d || max_exp as u64 > d
    };
    let mut zone = 0u64;
    let mut max_alpha = 0u64;
    for e in ledger.entries.values().filter(|e| e.p > n) {
        zone += 1;
        max_alpha = max_alpha.max(e.alpha);
        let p = e.p.to_string();
        if e.alpha > d * d {
            report.violation(p.clone(), format!("alpha = {}", e.alpha), format!("<= {}", d * d));
        }
        if e.hit_count > d {
            report.violation(p.clone(), format!("hit_count = {}", e.hit_count), format!("<= {d}"));
        }
        if e.max_exp as u64 > d {
            report.violation(p, format!("max_exp = {}", e.max_exp), format!("<= {d}"));
        }
    }
    report.empirical("zone_primes", zone as f64);
    report.empirical("max_alpha", max_alpha as f64);
    record_n0(&mut report, empirical_n0(ledger, 1, bad));
    if zone == 0 {
        return report.not_applicable("no primes above N");
    }
    report.finish()
}

/// For `p > DN`: `α_p ≤ d(d-1)/2` and `b_i ≤ d - i` for every layer `i ≥ 1`.
pub fn check_refined_multiplicity(ledger: &FactorLedger) -> VerificationReport {
    let d = ledger.degree() as u64;
    let mut report = ledger_report(CheckName::RefinedMultiplicity, ledger).param("d", d);
    if d < 2 {
        return report.not_applicable("degree below 2");
    }
    let cap = d * (d - 1) / 2;
    let layer_bad = |layers: &[u64]| {
        layers
            .iter()
            .enumerate()
            .any(|(k, &b)| b as i64 > d as i64 - (k as i64 + 1))
    };
    let bad = |alpha: u64, _: u64, _: u32, layers: &[u64]| alpha > cap || layer_bad(layers);
    let linear = BigUint::from(ledger.zone_constant) * ledger.n;
    let mut zone = 0u64;
    let mut max_hits = 0u64;
    for e in ledger.entries.values().filter(|e| e.p > linear) {
        zone += 1;
        max_hits = max_hits.max(e.hit_count);
        let p = e.p.to_string();
        if e.alpha > cap {
            report.violation(p.clone(), format!("alpha = {}", e.alpha), format!("<= {cap}"));
        }
        for (k, &b) in e.layer_counts.iter().enumerate() {
            let i = k as i64 + 1;
            if b as i64 > d as i64 - i {
                report.violation(p.clone(), format!("b_{i} = {b}"), format!("<= {}", d as i64 - i));
            }
        }
    }
    report.empirical("zone_primes", zone as f64);
    report.empirical("max_hit_count", max_hits as f64);
    record_n0(&mut report, empirical_n0(ledger, ledger.zone_constant, bad));
    if zone == 0 {
        return report.not_applicable("no primes above D*N");
    }
    report.finish()
}

const DEV_BINS: [(f64, &str); 5] = [
    (0.5, "dev_hist_lt_0.5"),
    (1.0, "dev_hist_lt_1"),
    (2.0, "dev_hist_lt_2"),
    (4.0, "dev_hist_lt_4"),
    (f64::INFINITY, "dev_hist_ge_4"),
];

/// Report-only. For unramified `p ≤ N` records
/// `|α_p - Nρ(p)/(p-1)|·ln p / ln N`; for ramified `p ≤ N` records `α_p·p/N`.
pub fn check_hensel_formula(ledger: &FactorLedger) -> VerificationReport {
    let n = ledger.n;
    let mut report = ledger_report(CheckName::HenselFormula, ledger);
    if n < 2 {
        return report.not_applicable("N below 2");
    }
    let profile = match ledger.poly.profile() {
        Ok(p) => p,
        Err(e) => return report.not_applicable(&e.to_string()),
    };
    let ln_n = (n as f64).ln();
    let mut hist = [0u64; DEV_BINS.len()];
    let (mut max_dev, mut max_dev_prime) = (0f64, 0u64);
    let mut ramified_max = 0f64;
    for p in crate::sieve::primes::primes_up_to(n) {
        let alpha = ledger.get(p).map_or(0, |e| e.alpha);
        let pb = BigUint::from(p);
        if profile.ramified_primes.contains(&pb) {
            let ratio = alpha as f64 * p as f64 / n as f64;
            report.empirical(&format!("ramified_alpha_p_over_n_{p}"), ratio);
            ramified_max = ramified_max.max(ratio);
            continue;
        }
        let rho = if alpha == 0 { 0 } else { modular::rho(&ledger.poly, p) };
        let predicted = n as f64 * rho as f64 / (p - 1) as f64;
        let dev = (alpha as f64 - predicted).abs() * (p as f64).ln() / ln_n;
        let bin = DEV_BINS.iter().position(|(hi, _)| dev < *hi).expect("last bin unbounded");
        hist[bin] += 1;
        if dev > max_dev {
            max_dev = dev;
            max_dev_prime = p;
        }
    }
    for ((_, name), count) in DEV_BINS.iter().zip(hist) {
        report.empirical(name, count as f64);
    }
    report.empirical("max_dev", max_dev);
    report.empirical("max_dev_prime", max_dev_prime as f64);
    report.empirical("ramified_max_alpha_p_over_n", ramified_max);
    report.finish()
}

/// Report-only: the two ratios whose vanishing limits are equivalent to the
/// conjectured asymptotics, and the split of prime divisors at `DN`.
pub fn check_squareful_ratios(ledger: &FactorLedger) -> VerificationReport {
    let mut report = ledger_report(CheckName::SquarefulRatios, ledger);
    let rec = summarize(ledger);
    let linear = BigUint::from(ledger.zone_constant) * ledger.n;
    let below = ledger.entries.values().filter(|e| e.p <= linear).count();
    report.empirical("n_primes", rec.n_primes as f64);
    report.empirical("n_squareful", rec.n_squareful as f64);
    report.empirical("n_repeated", rec.n_repeated as f64);
    report.empirical("n_primes_at_most_dn", below as f64);
    report.empirical("n_primes_above_dn", (rec.n_primes as usize - below) as f64);
    if rec.n_primes == 0 {
        return report.not_applicable("Q(N) = 1");
    }
    report.empirical("squareful_ratio", rec.n_squareful as f64 / rec.n_primes as f64);
    report.empirical("repeated_ratio", rec.n_repeated as f64 / rec.n_primes as f64);
    report.finish()
}

/// `∏_p p^{k·w_p} ≥ ∏_{p > DN} p^{α_p}`, decided exactly after cancelling
/// exponents prime by prime.
fn dominates(ledger: &FactorLedger, k: u64, weight: impl Fn(&crate::PrimeLocalData) -> u64) -> bool {
    let linear = BigUint::from(ledger.zone_constant) * ledger.n;
    let mut plus: Vec<(&BigUint, u64)> = Vec::new();
    let mut minus: Vec<(&BigUint, u64)> = Vec::new();
    for e in ledger.entries.values() {
        let left = k * weight(e);
        let right = if e.p > linear { e.alpha } else { 0 };
        if left >= right {
            plus.push((&e.p, left - right));
        } else {
            minus.push((&e.p, right - left));
        }
    }
    minus.is_empty() || product_of_powers(plus.into_iter()) >= product_of_powers(minus.into_iter())
}

/// `L^{d-1} ≥ Q_L` and `ℓ^{d(d-1)/2} ≥ Q_L`, exact.
pub fn check_zone_inequalities(ledger: &FactorLedger) -> VerificationReport {
    let d = ledger.degree() as u64;
    let mut report = ledger_report(CheckName::ZoneInequalities, ledger).param("d", d);
    if d < 2 {
        return report.not_applicable("degree below 2");
    }
    let rec = summarize(ledger);
    let (k_l, k_rad) = (d - 1, d * (d - 1) / 2);
    report.empirical("lhs_lcm", k_l as f64 * rec.log_l);
    report.empirical("lhs_rad", k_rad as f64 * rec.log_rad);
    report.empirical("log_QL", rec.log_ql);
    if !dominates(ledger, k_l, |e| e.max_exp as u64) {
        report.violation(
            "(d-1)*log_L >= log_QL".to_string(),
            format!("{} < {}", k_l as f64 * rec.log_l, rec.log_ql),
            "exact".to_string(),
        );
    }
    if !dominates(ledger, k_rad, |_| 1) {
        report.violation(
            "d(d-1)/2*log_rad >= log_QL".to_string(),
            format!("{} < {}", k_rad as f64 * rec.log_rad, rec.log_ql),
            "exact".to_string(),
        );
    }
    report.finish()
}

/// Points `m_1 < … < m_t ≤ N` sharing `p^i | f(m_j)`, for a prime `p > N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tuple {
    pub p: BigUint,
    pub i: usize,
    pub points: Vec<u64>,
}

/// Up to `cap` `k`-subsets of `items` in lexicographic order.
fn combinations(items: &[u64], k: usize, cap: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    if k > items.len() {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&j| items[j]).collect());
        if out.len() >= cap {
            return out;
        }
        let Some(pos) = (0..k).rev().find(|&j| idx[j] != j + items.len() - k) else {
            return out;
        };
        idx[pos] += 1;
        for j in pos + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Tuples of size `t = d - i + 1 ≥ 2` read off the hit positions of primes `p > N`.
pub fn harvest_tuples(ledger: &FactorLedger, cap_per_prime: usize) -> Vec<Tuple> {
    let d = ledger.degree();
    let n = BigUint::from(ledger.n);
    let mut out = Vec::new();
    for e in ledger.entries.values().filter(|e| e.p > n) {
        for i in 1..d {
            let pts: Vec<u64> = e.hits.iter().filter(|h| h.valuation as usize >= i).map(|h| h.n).collect();
            for points in combinations(&pts, d - i + 1, cap_per_prime) {
                out.push(Tuple {
                    p: e.p.clone(),
                    i,
                    points,
                });
            }
        }
    }
    out
}

/// Triangle-inequality bound `Σ_{ℓ ≥ d-i} |f_ℓ|·C(ℓ, d-i)·N^{ℓ-(d-i)}` on `|A|`.
fn triangle_bound(f: &IntPoly, i: usize, n: u64) -> BigInt {
    let d = f.degree();
    (d - i..=d)
        .map(|l| {
            f.coeff(l).abs()
                * num_integer::binomial(BigInt::from(l), BigInt::from(d - i))
                * num_traits::pow(BigInt::from(n), l - (d - i))
        })
        .sum()
}

/// The random two-route suite for `A` plus every harvested tuple: `p^i | A`
/// always, and for `p > DN` also `A ≠ 0` (when `f` is not known reducible) and
/// the triangle bound.
pub fn check_divided_difference(ledger: &FactorLedger, opts: &CheckOptions) -> VerificationReport {
    let suite = identity_suite(opts.seed, opts.identity_cases, opts.max_random_degree);
    let mut report = ledger_report(CheckName::DividedDifference, ledger)
        .param("seed", opts.seed)
        .param("random_cases", opts.identity_cases);
    report.violations = suite.violations;
    report.empirical_constants = suite.empirical_constants;

    let f = &ledger.poly;
    let reducible = matches!(
        f.profile().map(|p| p.irreducibility),
        Ok(Irreducibility::Reducible) | Err(Error::ZeroDiscriminant)
    );
    let linear = BigUint::from(ledger.zone_constant) * ledger.n;
    let d = f.degree();
    let simple_bound = |i: usize| {
        (BigInt::from(1) + f.leading().abs() * num_traits::pow(BigInt::from(d), i))
            * num_traits::pow(BigInt::from(ledger.n), i)
    };
    let (mut checked, mut above, mut zero_middle, mut over_simple) = (0u64, 0u64, 0u64, 0u64);
    for t in harvest_tuples(ledger, opts.tuples_per_prime) {
        let pts: Vec<i64> = t.points.iter().map(|&m| m as i64).collect();
        let subject = format!("p = {}, i = {}, points {:?}", t.p, t.i, t.points);
        let a = match divided_difference_a(f, &pts) {
            Ok(a) => a,
            Err(e) => {
                report.violation(subject, e.to_string(), "integral, routes equal".to_string());
                continue;
            }
        };
        checked += 1;
        let pi = BigInt::from(t.p.pow(t.i as u32));
        if !a.is_multiple_of(&pi) {
            report.violation(subject.clone(), a.to_string(), format!("multiple of p^{}", t.i));
        }
        if t.p > linear {
            above += 1;
            if a.is_zero() && !reducible {
                report.violation(subject.clone(), "A = 0".to_string(), "A != 0".to_string());
            }
            let tb = triangle_bound(f, t.i, ledger.n);
            if a.abs() > tb {
                report.violation(subject.clone(), a.to_string(), format!("|A| <= {tb}"));
            }
            if a.abs() > simple_bound(t.i) {
                over_simple += 1;
            }
        } else if a.is_zero() {
            zero_middle += 1;
        }
    }
    report.empirical("harvested_tuples", checked as f64);
    report.empirical("harvested_above_dn", above as f64);
    report.empirical("a_zero_between_n_and_dn", zero_middle as f64);
    report.empirical("above_dn_exceeding_simplified_bound", over_simple as f64);
    report.finish()
}

/// The random ratio suite plus the ratio at every harvested tuple and every
/// admissible `ℓ`.
pub fn check_amgm_on_ledger(ledger: &FactorLedger, opts: &CheckOptions) -> VerificationReport {
    let suite = amgm_suite(opts.seed, opts.amgm_cases, opts.max_random_degree);
    let mut report = ledger_report(CheckName::AmgmRatio, ledger)
        .param("seed", opts.seed)
        .param("cases_per_triple", opts.amgm_cases);
    report.violations = suite.violations;
    report.empirical_constants = suite.empirical_constants;
    let d = ledger.degree();
    let mut harvested = 0u64;
    for t in harvest_tuples(ledger, opts.tuples_per_prime) {
        let ms: Vec<BigInt> = t.points.iter().map(|&m| BigInt::from(m)).collect();
        for l in (d - t.i + 1)..=d {
            let r = amgm_ratio(d, t.i, l, &ms).expect("admissible").expect("l > d - i");
            harvested += 1;
            if !(r.at_least_one() && r.within_sharp_bound() && r.sharp_bound_within_power(d)) {
                report.violation(
                    format!("p = {}, i = {}, l = {l}, points {:?}", t.p, t.i, t.points),
                    format!("{}/{}", r.numerator, r.denominator),
                    format!("[1, {}/{}]", r.binomial, r.t),
                );
            }
        }
    }
    report.empirical("harvested_ratios", harvested as f64);
    report.finish()
}

pub fn run_check(name: CheckName, ledger: &FactorLedger, opts: &CheckOptions) -> VerificationReport {
    match name {
        CheckName::AmgmRatio => check_amgm_on_ledger(ledger, opts),
        CheckName::DividedDifference => check_divided_difference(ledger, opts),
        CheckName::HenselFormula => check_hensel_formula(ledger),
        CheckName::NaiveMultiplicity => check_naive_multiplicity(ledger),
        CheckName::RefinedMultiplicity => check_refined_multiplicity(ledger),
        CheckName::SquarefulRatios => check_squareful_ratios(ledger),
        CheckName::ZoneInequalities => check_zone_inequalities(ledger),
    }
}

/// Runs the named checks concurrently; reports come back sorted by name.
pub fn run_checks(ledger: &FactorLedger, names: &[CheckName], opts: &CheckOptions) -> Vec<VerificationReport> {
    let mut names = names.to_vec();
    names.sort();
    names.dedup();
    names.par_iter().map(|&c| run_check(c, ledger, opts)).collect()
}
