//! Dense polynomials over `F_p` for word-sized `p`, ascending coefficients,
//! no trailing zeros. Just enough for root extraction and irreducibility tests.

use rand::Rng;

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse modulo a prime; `a` must be nonzero mod `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

pub fn eval(f: &[u64], x: u64, p: u64) -> u64 {
    f.iter()
        .rev()
        .fold(0u64, |acc, &c| (mul_mod(acc, x, p) + c) % p)
}

fn trim(f: &mut Vec<u64>) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

fn make_monic(f: &mut [u64], p: u64) {
    if let Some(&lead) = f.last() {
        let inv = inv_mod(lead, p);
        for c in f.iter_mut() {
            *c = mul_mod(*c, inv, p);
        }
    }
}

fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    trim(&mut out);
    out
}

/// `a mod m` for monic `m`.
fn rem_monic(a: &mut Vec<u64>, m: &[u64], p: u64) {
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = *a.last().expect("nonempty");
        let shift = a.len() - 1 - dm;
        if lead != 0 {
            for (k, &mc) in m.iter().enumerate() {
                let t = mul_mod(lead, mc, p);
                a[k + shift] = (a[k + shift] + p - t) % p;
            }
        }
        a.pop();
    }
    trim(a);
}

fn mul_rem(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    rem_monic(&mut out, m, p);
    out
}

/// `base^exp mod m` for monic `m`.
pub fn pow_rem(base: &[u64], mut exp: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    rem_monic(&mut acc, m, p);
    let mut b = base.to_vec();
    rem_monic(&mut b, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_rem(&acc, &b, m, p);
        }
        exp >>= 1;
        if exp > 0 {
            b = mul_rem(&b, &b, m, p);
        }
    }
    acc
}

/// Monic gcd.
pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        make_monic(&mut b, p);
        rem_monic(&mut a, &b, p);
        std::mem::swap(&mut a, &mut b);
    }
    make_monic(&mut a, p);
    a
}

fn div_exact_monic(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![0u64; a.len() - dm];
    while r.len() > dm {
        let lead = *r.last().expect("nonempty");
        let shift = r.len() - 1 - dm;
        q[shift] = lead;
        for (k, &mc) in m.iter().enumerate() {
            let t = mul_mod(lead, mc, p);
            r[k + shift] = (r[k + shift] + p - t) % p;
        }
        r.pop();
    }
    debug_assert!(r.iter().all(|&c| c == 0));
    q
}

/// Distinct roots of a monic squarefree `g` that splits into linear factors,
/// by equal-degree (Cantor–Zassenhaus) splitting. `p` must be odd.
pub fn split_linear<R: Rng>(g: &[u64], p: u64, rng: &mut R, out: &mut Vec<u64>) {
    match g.len() {
        0 | 1 => {}
        2 => out.push((p - g[0]) % p),
        _ => loop {
            let a = rng.gen_range(0..p);
            // gcd((x + a)^((p-1)/2) - 1, g) separates residues r with r + a a square.
            let h = pow_rem(&[a, 1], (p - 1) / 2, g, p);
            let h1 = sub(&h, &[1], p);
            let d = gcd(g, &h1, p);
            if d.len() > 1 && d.len() < g.len() {
                let rest = div_exact_monic(g, &d, p);
                split_linear(&d, p, rng, out);
                split_linear(&rest, p, rng, out);
                return;
            }
        },
    }
}

/// Distinct roots of `f` in `F_p`, sorted. `f` must be nonzero mod `p`.
pub fn roots_by_gcd<R: Rng>(f: &[u64], p: u64, rng: &mut R) -> Vec<u64> {
    let mut m = f.to_vec();
    trim(&mut m);
    if m.len() <= 1 {
        return Vec::new();
    }
    make_monic(&mut m, p);
    let xp = pow_rem(&[0, 1], p, &m, p);
    let g = gcd(&m, &sub(&xp, &[0, 1], p), p);
    let mut roots = Vec::with_capacity(g.len().saturating_sub(1));
    if p == 2 {
        roots.extend((0..2).filter(|&r| eval(&g, r, p) == 0));
    } else {
        split_linear(&g, p, rng, &mut roots);
    }
    roots.sort_unstable();
    roots
}

/// Irreducibility over `F_p` (Ben-Or): no factor of degree `i ≤ deg/2` divides
/// `x^{p^i} - x`. `f` must have nonzero leading coefficient mod `p`.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let mut m = f.to_vec();
    trim(&mut m);
    let d = m.len().saturating_sub(1);
    if d == 0 {
        return false;
    }
    make_monic(&mut m, p);
    let x = vec![0u64, 1];
    let mut frob = x.clone();
    for _ in 0..d / 2 {
        frob = pow_rem(&frob, p, &m, p);
        if gcd(&m, &sub(&frob, &x, p), p).len() > 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn roots_match_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let polys: [&[u64]; 4] = [&[1, 0, 1], &[2, 0, 0, 1], &[6, 11, 6, 1], &[3, 5, 0, 0, 7, 1]];
        for p in [2u64, 3, 5, 7, 13, 101, 2053, 4099] {
            for f in polys {
                let f: Vec<u64> = f.iter().map(|c| c % p).collect();
                let want: Vec<u64> = (0..p).filter(|&r| eval(&f, r, p) == 0).collect();
                assert_eq!(roots_by_gcd(&f, p, &mut rng), want, "p={p} f={f:?}");
            }
        }
    }

    #[test]
    fn irreducibility_small_cases() {
        assert!(is_irreducible(&[1, 0, 1], 3));
        assert!(!is_irreducible(&[1, 0, 1], 5));
        assert!(is_irreducible(&[1, 1, 0, 0, 1], 2));
        // x^4 + 1 splits modulo every prime.
        for p in [2u64, 3, 5, 7, 11, 13, 17] {
            assert!(!is_irreducible(&[1, 0, 0, 0, 1], p));
        }
        // (x^2 + x + 1)^2 over F_2
        assert!(!is_irreducible(&[1, 0, 1, 0, 1], 2));
    }
}
