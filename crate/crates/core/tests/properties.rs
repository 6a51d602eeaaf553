use lcmlab_core::modular::{self, fp, RootSet};
use lcmlab_core::numeric::{ln_biguint, KahanSum};
use lcmlab_core::sieve::primes::primes_up_to;
use lcmlab_core::{build_ledger, IntPoly, LedgerOptions};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

const FIXED: [&str; 12] = [
    "x^2 + 1",
    "x^2 + x + 1",
    "x^3 + 2",
    "2*x^3 - x + 7",
    "3*x^2 + 2*x + 1",
    "x^4 + 1",
    "x^4 + x + 1",
    "x^3 - x - 1",
    "5*x^5 - 3*x^2 + 11",
    "x^2 - 2",
    "x^6 + x^3 + 1",
    "x^2 - 1",
];

fn poly_strategy(max_d: usize, bound: i64) -> impl Strategy<Value = IntPoly> {
    (1..=max_d).prop_flat_map(move |d| {
        (prop::collection::vec(-bound..=bound, d), 1..=bound, any::<bool>()).prop_map(
            move |(mut cs, lead, neg)| {
                cs.push(if neg { -lead } else { lead });
                IntPoly::from_i64s(&cs).unwrap()
            },
        )
    })
}

proptest! {
    #[test]
    fn horner_equals_power_sum(f in poly_strategy(6, 1000), n in -1000i64..=1000) {
        let x = BigInt::from(n);
        let direct: BigInt = f
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| c * num_traits::pow(x.clone(), k))
            .sum();
        prop_assert_eq!(f.eval(&x), direct);
    }

    #[test]
    fn progression_count_matches_enumeration(m in 1u64..=50, r_seed in 0u64..50, n in 0u64..=1000) {
        let r = r_seed % m;
        let want = (1..=n).filter(|k| k % m == r).count() as u64;
        prop_assert_eq!(modular::count_progression_u64(r, m, n), want);
        prop_assert_eq!(
            modular::count_progression(&BigUint::from(r), &BigUint::from(m), n),
            want
        );
    }

    #[test]
    fn lifting_matches_scan(f in poly_strategy(4, 30), pi in 0usize..10) {
        let p = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29][pi];
        let cap = BigUint::from(100_000u32);
        let mut level = modular::roots_mod_p(&f, p);
        let mut k = 1;
        loop {
            prop_assert_eq!(&level.roots, &modular::roots_by_scan(&f, p, k));
            match modular::lift_roots(&f, &level, &cap) {
                Ok(next) => {
                    for r in &next.roots {
                        prop_assert!(level.roots.contains(&(r % &level.modulus)));
                    }
                    level = next;
                    k += 1;
                }
                Err(_) => break,
            }
        }
    }
}

/// `disc(f) ≡ 0 (mod p)` iff `f mod p` has a repeated factor, for `p ∤ f_d`.
#[test]
fn discriminant_detects_repeated_roots() {
    for s in FIXED {
        let f: IntPoly = s.parse().unwrap();
        let disc = f.discriminant();
        for p in primes_up_to(100) {
            let fbar = f.reduce_mod(p);
            if fbar.len() != f.degree() + 1 {
                continue;
            }
            let dbar = f
                .derivative_coeffs()
                .iter()
                .map(|c| c.mod_floor(&BigInt::from(p)).to_u64().unwrap())
                .collect::<Vec<_>>();
            let g = fp::gcd(&fbar, &dbar, p);
            let divides = disc.is_multiple_of(&BigInt::from(p));
            assert_eq!(divides, g.len() >= 2, "f = {s}, p = {p}");
            // a root in F_p where f' also vanishes is a repeated root we can see directly
            let visible = (0..p).any(|r| fp::eval(&fbar, r, p) == 0 && fp::eval(&dbar, r, p) == 0);
            if visible {
                assert!(divides, "f = {s}, p = {p}");
            }
        }
    }
}

/// Unramified primes keep exactly `ρ_f(p)` roots at every level.
#[test]
fn hensel_regularity() {
    let cap = BigUint::from(1_000_000u32);
    for s in FIXED {
        let f: IntPoly = s.parse().unwrap();
        let disc = f.discriminant();
        for p in primes_up_to(50) {
            if disc.is_multiple_of(&BigInt::from(p)) {
                continue;
            }
            let mut level: RootSet = modular::roots_mod_p(&f, p);
            let rho = level.len();
            while let Ok(next) = modular::lift_roots(&f, &level, &cap) {
                assert_eq!(next.len(), rho, "f = {s}, p = {p}, level {}", next.level);
                level = next;
            }
        }
    }
}

#[test]
fn segment_sizes_do_not_matter() {
    for s in ["x^2 + 1", "2*x^3 - x + 7", "x^2 - 1"] {
        let f: IntPoly = s.parse().unwrap();
        let n = 3000;
        let base = build_ledger(&f, n, &LedgerOptions { segment_size: n as usize, ..Default::default() }).unwrap();
        for seg in [64, 1000] {
            let other = build_ledger(&f, n, &LedgerOptions { segment_size: seg, ..Default::default() }).unwrap();
            assert_eq!(base, other, "f = {s}, segment {seg}");
        }
    }
}

#[test]
fn alpha_log_sum_matches_value_logs() {
    for s in ["x^2 + 1", "x^3 + 2", "2*x^3 - x + 7", "5*x^5 - 3*x^2 + 11"] {
        let f: IntPoly = s.parse().unwrap();
        let n = 2000;
        let led = build_ledger(&f, n, &LedgerOptions::default()).unwrap();
        let from_ledger: KahanSum = led
            .entries
            .values()
            .map(|e| e.alpha as f64 * ln_biguint(&e.p))
            .collect();
        let direct: KahanSum = (1..=n)
            .map(|k| f.abs_eval_u64(k))
            .filter(|v| !v.is_zero())
            .map(|v| ln_biguint(&v))
            .collect();
        let (a, b) = (from_ledger.value(), direct.value());
        assert!(((a - b) / b).abs() < 1e-6, "f = {s}: {a} vs {b}");
    }
}

/// Primes above the sieve bound only ever come from `n` with at most `d` hits.
#[test]
fn large_primes_respect_degree() {
    for s in ["x^2 + 1", "x^3 + 2", "2*x^3 - x + 7"] {
        let f: IntPoly = s.parse().unwrap();
        let led = build_ledger(&f, 1000, &LedgerOptions::default()).unwrap();
        let b = BigUint::from(led.bound);
        for e in led.entries.values().filter(|e| e.p > b) {
            assert!(e.hit_count <= f.degree() as u64 && e.max_exp as usize <= f.degree(), "{s}: {e:?}");
        }
    }
}
