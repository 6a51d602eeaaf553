//! Primality proving/testing and Brent–Pollard rho.
//!
//! Below 2^64 Miller–Rabin with the first twelve prime bases is deterministic.
//! Above, a number is accepted as prime after BPSW (strong base-2 Miller–Rabin
//! plus a strong Lucas test) and a few extra seeded random Miller–Rabin bases.

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Iterations of one rho attempt before trying a new polynomial.
pub const RHO_BUDGET: u64 = 1 << 20;
/// Rho attempts, each with a fresh seed, before [`Error::FactorTimeout`].
pub const RHO_ATTEMPTS: u64 = 8;

const MR_BASES_U64: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
const EXTRA_RANDOM_BASES: usize = 4;

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES_U64 {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &MR_BASES_U64 {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn strong_probable_prime(n: &BigUint, a: &BigUint) -> bool {
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().expect("n > 1");
    let d = &n1 >> s;
    let mut x = a.modpow(&d, n);
    if x == one || x == n1 {
        return true;
    }
    for _ in 1..s {
        x = &x * &x % n;
        if x == n1 {
            return true;
        }
    }
    false
}

fn jacobi(a: &BigInt, n: &BigInt) -> i32 {
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut t = 1;
    let three = BigInt::from(3);
    let five = BigInt::from(5);
    let eight = BigInt::from(8);
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = n.mod_floor(&eight);
            if r == three || r == five {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.mod_floor(&BigInt::from(4)) == three && n.mod_floor(&BigInt::from(4)) == three {
            t = -t;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

fn half_mod(x: BigInt, n: &BigInt) -> BigInt {
    let x = if x.is_odd() { x + n } else { x };
    let h: BigInt = x >> 1;
    h.mod_floor(n)
}

/// Strong Lucas probable-prime test with Selfridge's parameters. `n` odd, not a square.
fn strong_lucas(n: &BigUint) -> bool {
    let nb = BigInt::from(n.clone());
    let mut d = BigInt::from(5);
    loop {
        match jacobi(&d, &nb) {
            -1 => break,
            0 if d.abs() != nb => return false,
            _ => {}
        }
        d = if d.is_positive() { -d - 2 } else { -d + 2 };
    }
    let p = BigInt::one();
    let q: BigInt = (BigInt::one() - &d) / 4;
    let np1: BigUint = n + 1u32;
    let s = np1.trailing_zeros().expect("n + 1 > 0");
    let k = &np1 >> s;

    let mut u = BigInt::one();
    let mut v = p.clone();
    let mut qk = q.mod_floor(&nb);
    let bits = k.bits();
    for i in (0..bits - 1).rev() {
        u = (&u * &v).mod_floor(&nb);
        v = (&v * &v - &qk * 2u32).mod_floor(&nb);
        qk = (&qk * &qk).mod_floor(&nb);
        if k.bit(i) {
            let nu = half_mod(&p * &u + &v, &nb);
            let nv = half_mod(&d * &u + &p * &v, &nb);
            u = nu;
            v = nv;
            qk = (&qk * &q).mod_floor(&nb);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = (&v * &v - &qk * 2u32).mod_floor(&nb);
        qk = (&qk * &qk).mod_floor(&nb);
        if v.is_zero() {
            return true;
        }
    }
    false
}

pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in &MR_BASES_U64 {
        if (n % p).is_zero() {
            return false;
        }
    }
    let r = n.sqrt();
    if &r * &r == *n {
        return false;
    }
    if !strong_probable_prime(n, &BigUint::from(2u32)) || !strong_lucas(n) {
        return false;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(n.iter_u64_digits().fold(0, |h, w| h ^ w));
    let hi = n - 2u32;
    (0..EXTRA_RANDOM_BASES).all(|_| {
        let a = rng.gen_biguint_range(&BigUint::from(3u32), &hi);
        strong_probable_prime(n, &a)
    })
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn brent_u64(n: u64, c: u64, y0: u64, budget: u64) -> Option<u64> {
    let f = |y: u64| (mul_mod(y, y, n) + c) % n;
    let m = 128u64;
    let (mut y, mut r, mut q, mut g) = (y0 % n, 1u64, 1u64, 1u64);
    let (mut x, mut ys) = (y, y);
    let mut spent = 0u64;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..m.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = gcd_u64(q, n);
            k += m;
        }
        spent += 2 * r;
        r *= 2;
        if spent > budget {
            return None;
        }
    }
    if g == n {
        loop {
            ys = f(ys);
            g = gcd_u64(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn brent_big(n: &BigUint, c: &BigUint, y0: &BigUint, budget: u64) -> Option<BigUint> {
    let f = |y: &BigUint| (y * y + c) % n;
    let m = 128u64;
    let one = BigUint::one();
    let mut y = y0 % n;
    let mut r = 1u64;
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut spent = 0u64;
    let diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    while g == one {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g == one {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                q = q * diff(&x, &y) % n;
            }
            g = q.gcd(n);
            k += m;
        }
        spent += 2 * r;
        r *= 2;
        if spent > budget {
            return None;
        }
    }
    if &g == n {
        loop {
            ys = f(&ys);
            g = diff(&x, &ys).gcd(n);
            if g > one {
                break;
            }
        }
    }
    (&g != n).then_some(g)
}

/// Some nontrivial divisor of the composite `n`.
fn find_divisor(n: &BigUint, seed: u64) -> Result<BigUint> {
    if n.is_even() {
        return Ok(BigUint::from(2u32));
    }
    // Rho cannot separate p^k; peel perfect powers first.
    for k in (2..=n.bits() as u32).rev() {
        let r = n.nth_root(k);
        if r > BigUint::one() && num_traits::pow(r.clone(), k as usize) == *n {
            return Ok(r);
        }
    }
    for attempt in 0..RHO_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt.wrapping_mul(0x2545_F491_4F6C_DD1D)));
        let found = match n.to_u64() {
            Some(small) => {
                let c = rng.gen_range(1..small);
                let y0 = rng.gen_range(0..small);
                brent_u64(small, c, y0, RHO_BUDGET).map(BigUint::from)
            }
            None => {
                let c = rng.gen_biguint_range(&BigUint::one(), n);
                let y0 = rng.gen_biguint_below(n);
                brent_big(n, &c, &y0, RHO_BUDGET)
            }
        };
        if let Some(d) = found {
            return Ok(d);
        }
    }
    Err(Error::FactorTimeout(n.clone()))
}

fn split_into(n: BigUint, seed: u64, out: &mut Vec<BigUint>) -> Result<()> {
    if n.is_one() {
        return Ok(());
    }
    if is_prime(&n) {
        out.push(n);
        return Ok(());
    }
    let d = find_divisor(&n, seed)?;
    let rest = &n / &d;
    split_into(d, seed.wrapping_add(1), out)?;
    split_into(rest, seed.wrapping_add(2), out)
}

fn collect_powers(mut primes: Vec<BigUint>) -> Vec<(BigUint, u32)> {
    primes.sort();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// Complete factorization of `c > 1` by primality testing and Brent–Pollard rho.
/// Output is sorted by prime.
pub fn factor_cofactor(c: &BigUint, seed: u64) -> Result<Vec<(BigUint, u32)>> {
    if c <= &BigUint::one() {
        return Err(Error::InvalidArgument(format!(
            "cofactor must exceed 1, got {c}"
        )));
    }
    let mut primes = Vec::new();
    split_into(c.clone(), seed, &mut primes)?;
    Ok(collect_powers(primes))
}

/// Factorization of any `n ≥ 1` (empty for 1): trial division by primes below
/// 10^4, then [`factor_cofactor`].
pub fn factorize(n: &BigUint, seed: u64) -> Result<Vec<(BigUint, u32)>> {
    if n.is_zero() {
        return Err(Error::InvalidArgument("cannot factor zero".to_string()));
    }
    let mut rest = n.clone();
    let mut out = Vec::new();
    for p in super::primes::primes_up_to(10_000) {
        if rest.is_one() {
            break;
        }
        let mut e = 0;
        while (&rest % p).is_zero() {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            out.push((BigUint::from(p), e));
        }
    }
    if !rest.is_one() {
        out.extend(factor_cofactor(&rest, seed)?);
    }
    Ok(out)
}
