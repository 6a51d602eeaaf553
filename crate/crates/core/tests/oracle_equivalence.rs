use lcmlab_core::numeric::ln_biguint;
use lcmlab_core::oracle::{ledger_diff, naive_run};
use lcmlab_core::{build_ledger, summarize, IntPoly, LedgerOptions};

const POLYS: [&str; 8] = [
    "x^2 + 1",
    "x^2 + x + 1",
    "x^3 + 2",
    "2*x^3 - x + 7",
    "3*x^2 + 2*x + 1",
    "x^4 + x + 1",
    "x^2 - 1",
    "x^2 - 10*x + 21",
];

#[test]
fn pipeline_matches_oracle_up_to_500() {
    for s in POLYS {
        let f: IntPoly = s.parse().unwrap();
        for n in (0..=120).chain([250, 333, 500]) {
            let want = naive_run(&f, n).unwrap();
            let got = build_ledger(&f, n, &LedgerOptions::default()).unwrap();
            let diff = ledger_diff(&got, &want.ledger);
            assert!(diff.is_empty(), "f = {s}, N = {n}: {diff:?}");
            assert_eq!(got.lcm(), want.lcm_value, "f = {s}, N = {n}");
            assert_eq!(got.radical(), want.rad_value, "f = {s}, N = {n}");
            // positions of hits above N agree too
            for (p, e) in &got.entries {
                assert_eq!(e.hits, want.ledger.entries[p].hits, "f = {s}, N = {n}, p = {p}");
            }
        }
    }
}

#[test]
fn summary_logs_match_exact_values() {
    for s in ["x^2 + 1", "x^3 + 2"] {
        let f: IntPoly = s.parse().unwrap();
        for n in [10, 100, 1000] {
            let want = naive_run(&f, n).unwrap();
            let rec = summarize(&build_ledger(&f, n, &LedgerOptions::default()).unwrap());
            let (l, r) = (ln_biguint(&want.lcm_value), ln_biguint(&want.rad_value));
            assert!(((rec.log_l - l) / l).abs() < 1e-9);
            assert!(((rec.log_rad - r) / r).abs() < 1e-9);
        }
    }
}
