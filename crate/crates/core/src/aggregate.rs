//! Scalar statistics of a ledger: the split of `log Q(N)` by prime size,
//! `log L_f(N)`, `log ℓ_f(N)`, the normalized ratios and the prime counts.

use std::time::Instant;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::modular;
use crate::numeric::{ln_prime, KahanSum};
use crate::polynomial::IntPoly;
use crate::sieve::{build_ledger, primes, FactorLedger, LedgerOptions};

/// One row of a sweep. Logs are natural logs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRecord {
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(rename = "log_Q")]
    pub log_q: f64,
    /// Primes `p ≤ N`.
    #[serde(rename = "log_QS")]
    pub log_qs: f64,
    /// Primes `N < p ≤ DN`.
    #[serde(rename = "log_QLI")]
    pub log_qli: f64,
    /// Primes `p > DN`.
    #[serde(rename = "log_QL")]
    pub log_ql: f64,
    #[serde(rename = "log_L")]
    pub log_l: f64,
    pub log_rad: f64,
    /// `log_l / ((d-1)·N·ln N)`; NaN when `d < 2` or `N < 2`.
    #[serde(rename = "ratio_L")]
    pub ratio_l: f64,
    pub ratio_rad: f64,
    /// `log_qs / (N·ln N)`; NaN when `N < 2`.
    #[serde(rename = "ratio_QS")]
    pub ratio_qs: f64,
    pub n_primes: u64,
    /// Primes with `p^2 | Q(N)`.
    pub n_squareful: u64,
    /// Primes dividing `f(n)` for at least two distinct `n`.
    pub n_repeated: u64,
    pub seconds: f64,
}

impl SweepRecord {
    /// `(log_QS - N ln N) / N`, the bounded quantity behind the small-prime asymptotic.
    pub fn small_prime_offset(&self) -> f64 {
        let n = self.n as f64;
        (self.log_qs - n * n.ln()) / n
    }
}

/// Statistics of a complete ledger. `seconds` is left at 0.
pub fn summarize(ledger: &FactorLedger) -> SweepRecord {
    let n = ledger.n;
    let d = ledger.degree();
    let small = BigUint::from(n);
    let linear = BigUint::from(ledger.zone_constant) * n;
    let (mut q, mut qs, mut qli, mut ql) = (KahanSum::new(), KahanSum::new(), KahanSum::new(), KahanSum::new());
    let (mut l, mut rad) = (KahanSum::new(), KahanSum::new());
    let (mut n_primes, mut n_squareful, mut n_repeated) = (0, 0, 0);
    for e in ledger.entries.values() {
        if e.alpha == 0 {
            continue;
        }
        let lp = ln_prime(&e.p);
        let term = e.alpha as f64 * lp;
        q.add(term);
        if e.p <= small {
            qs.add(term);
        } else if e.p <= linear {
            qli.add(term);
        } else {
            ql.add(term);
        }
        l.add(e.max_exp as f64 * lp);
        rad.add(lp);
        n_primes += 1;
        if e.alpha >= 2 {
            n_squareful += 1;
        }
        if e.hit_count >= 2 {
            n_repeated += 1;
        }
    }
    let nf = n as f64;
    let n_ln_n = if n >= 2 { nf * nf.ln() } else { f64::NAN };
    let conj = if d >= 2 { (d - 1) as f64 * n_ln_n } else { f64::NAN };
    SweepRecord {
        n,
        log_q: q.value(),
        log_qs: qs.value(),
        log_qli: qli.value(),
        log_ql: ql.value(),
        log_l: l.value(),
        log_rad: rad.value(),
        ratio_l: l.value() / conj,
        ratio_rad: rad.value() / conj,
        ratio_qs: qs.value() / n_ln_n,
        n_primes,
        n_squareful,
        n_repeated,
        seconds: 0.0,
    }
}

/// How the sieve bound is chosen at each `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BoundRule {
    /// `B = D·N`.
    #[default]
    ZoneTimesN,
    /// A fixed `B`, which must be at least `D·N` at every `N` of the schedule.
    Fixed(u64),
}

/// Result of one `N` of a sweep: a record, or the error that left a gap.
#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub n: u64,
    pub result: Result<SweepRecord>,
}

/// One independent ledger per `N`, in schedule order. `sink` sees every
/// outcome as soon as it is ready; failed `N` become gaps, not aborts.
pub fn sweep(
    f: &IntPoly,
    schedule: &[u64],
    rule: BoundRule,
    opts: &LedgerOptions,
    mut sink: impl FnMut(&SweepOutcome),
) -> Result<Vec<SweepOutcome>> {
    if let Some(w) = schedule.windows(2).find(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(format!(
            "schedule must be strictly increasing ({} then {})",
            w[0], w[1]
        )));
    }
    let mut out = Vec::with_capacity(schedule.len());
    for &n in schedule {
        let mut o = opts.clone();
        o.bound = match rule {
            BoundRule::ZoneTimesN => None,
            BoundRule::Fixed(b) => Some(b),
        };
        let start = Instant::now();
        let result = build_ledger(f, n, &o).map(|ledger| {
            let mut rec = summarize(&ledger);
            rec.seconds = start.elapsed().as_secs_f64();
            rec
        });
        let outcome = SweepOutcome { n, result };
        sink(&outcome);
        out.push(outcome);
    }
    Ok(out)
}

/// `Σ_{p ≤ B} ρ_f(p)·ln p / (p - 1)`.
pub fn chebotarev_partial_sum(f: &IntPoly, bound: u64) -> f64 {
    let mut acc = KahanSum::new();
    primes::for_each_prime(bound, |p| {
        let r = modular::rho(f, p);
        if r > 0 {
            acc.add(r as f64 * (p as f64).ln() / (p - 1) as f64);
        }
    });
    acc.value()
}

pub const CSV_COLUMNS: [&str; 14] = [
    "N", "log_Q", "log_QS", "log_QLI", "log_QL", "log_L", "log_rad", "ratio_L", "ratio_rad",
    "ratio_QS", "n_primes", "n_squareful", "n_repeated", "seconds",
];

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "NaN".to_string()
    } else if x == 0.0 {
        "0".to_string()
    } else {
        format!("{x:.16e}")
    }
}

pub fn csv_header() -> String {
    CSV_COLUMNS.join(",")
}

pub fn csv_row(r: &SweepRecord) -> String {
    let floats = [
        r.log_q, r.log_qs, r.log_qli, r.log_ql, r.log_l, r.log_rad, r.ratio_l, r.ratio_rad,
        r.ratio_qs,
    ];
    let mut cells = vec![r.n.to_string()];
    cells.extend(floats.iter().map(|&x| format_float(x)));
    cells.push(r.n_primes.to_string());
    cells.push(r.n_squareful.to_string());
    cells.push(r.n_repeated.to_string());
    cells.push(format_float(r.seconds));
    cells.join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn poly(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn n5_summary() {
        let f = poly("x^2 + 1");
        let led = build_ledger(&f, 5, &LedgerOptions::default()).unwrap();
        let r = summarize(&led);
        assert!(close(r.log_l, 2210f64.ln(), 1e-12));
        assert!(close(r.log_q, 44200f64.ln(), 1e-12));
        assert!(close(r.log_rad, 2210f64.ln(), 1e-12));
        assert!(close(r.log_qs, 8f64.ln() + 25f64.ln(), 1e-12));
        // D·N = 15, so 13 is a linear-sized prime and only 17 is large
        assert!(close(r.log_qli, 13f64.ln(), 1e-12));
        assert!(close(r.log_ql, 17f64.ln(), 1e-12));
        assert_eq!((r.n_primes, r.n_squareful, r.n_repeated), (4, 2, 2));
        assert!(r.ratio_l > 0.0);
    }

    #[test]
    fn n1_summary() {
        let f = poly("x^2 + 1");
        let r = summarize(&build_ledger(&f, 1, &LedgerOptions::default()).unwrap());
        let l2 = 2f64.ln();
        assert_eq!((r.log_q, r.log_l, r.log_rad), (l2, l2, l2));
        assert!(r.ratio_l.is_nan());
    }

    #[test]
    fn linear_polys_have_nan_ratios() {
        let f = poly("2*x + 1");
        let r = summarize(&build_ledger(&f, 50, &LedgerOptions::default()).unwrap());
        assert!(r.ratio_l.is_nan() && r.ratio_rad.is_nan());
        assert!(!r.ratio_qs.is_nan());
    }

    #[test]
    fn sweep_trend_and_gaps() {
        let f = poly("x^2 + 1");
        let mut seen = Vec::new();
        let out = sweep(&f, &[10, 100], BoundRule::default(), &LedgerOptions::default(), |o| {
            seen.push(o.n)
        })
        .unwrap();
        assert_eq!(seen, vec![10, 100]);
        let a = out[0].result.as_ref().unwrap();
        let b = out[1].result.as_ref().unwrap();
        assert!(b.ratio_l > a.ratio_l);
        for (o, n) in out.iter().zip([10, 100]) {
            let want = oracle::naive_run(&f, n).unwrap();
            let rec = o.result.as_ref().unwrap();
            assert!(close(rec.log_l, crate::numeric::ln_biguint(&want.lcm_value), 1e-12));
        }

        assert!(sweep(&f, &[], BoundRule::default(), &LedgerOptions::default(), |_| {})
            .unwrap()
            .is_empty());
        assert!(sweep(&f, &[5, 5], BoundRule::default(), &LedgerOptions::default(), |_| {}).is_err());

        // a fixed bound valid at N = 10 but below D·N at N = 100 leaves a gap
        let out = sweep(&f, &[10, 100], BoundRule::Fixed(30), &LedgerOptions::default(), |_| {}).unwrap();
        assert!(out[0].result.is_ok());
        assert!(matches!(out[1].result, Err(Error::BoundBelowZone { .. })));
    }

    #[test]
    fn cubic_normalizer() {
        let f = poly("x^3 + 2");
        let r = summarize(&build_ledger(&f, 50, &LedgerOptions::default()).unwrap());
        let want = r.log_l / (2.0 * 50.0 * 50f64.ln());
        assert_eq!(r.ratio_l, want);
    }

    #[test]
    fn chebotarev_small_bounds() {
        let f = poly("x^2 + 1");
        let want = 2f64.ln() + 2.0 * 5f64.ln() / 4.0;
        assert!(close(chebotarev_partial_sum(&f, 10), want, 1e-12));
        assert!((chebotarev_partial_sum(&f, 10) - 1.49786).abs() < 1e-5);
        assert_eq!(chebotarev_partial_sum(&f, 2), 2f64.ln());
        let g = poly("x^3 + 2");
        assert_eq!(chebotarev_partial_sum(&g, 2), 2f64.ln());
    }

    #[test]
    fn csv_round_trip() {
        let f = poly("x^2 + 1");
        let r = summarize(&build_ledger(&f, 200, &LedgerOptions::default()).unwrap());
        let row = csv_row(&r);
        let cells: Vec<&str> = row.split(',').collect();
        assert_eq!(cells.len(), CSV_COLUMNS.len());
        let log_l: f64 = cells[5].parse().unwrap();
        assert_eq!(log_l, r.log_l);
        let ratio: f64 = cells[7].parse().unwrap();
        let derived = log_l / (200.0 * 200f64.ln());
        assert!(((ratio - derived) / derived).abs() < 1e-12);
    }
}
