//! Segmented, bit-packed sieve of Eratosthenes over odd numbers.

/// Odd numbers covered by one segment (one bit each).
const SEGMENT_ODDS: u64 = 1 << 21;

fn small_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// All primes `p ≤ limit` in increasing order.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for_each_prime(limit, |p| out.push(p));
    out
}

/// Calls `visit` on every prime `p ≤ limit` in increasing order.
pub fn for_each_prime(limit: u64, mut visit: impl FnMut(u64)) {
    if limit < 2 {
        return;
    }
    visit(2);
    let base = small_primes(limit.isqrt());
    // bit i of a segment starting at odd `start` stands for start + 2i
    let mut start = 3u64;
    let mut bits = vec![0u64; (SEGMENT_ODDS / 64) as usize];
    while start <= limit {
        let count = SEGMENT_ODDS.min((limit - start) / 2 + 1);
        let words = count.div_ceil(64) as usize;
        bits[..words].fill(0);
        let end = start + 2 * (count - 1);
        for &p in base.iter().skip(1) {
            if p * p > end {
                break;
            }
            // first odd multiple of p that is ≥ max(start, p²)
            let mut m = (p * p).max(start.div_ceil(p) * p);
            if m % 2 == 0 {
                m += p;
            }
            while m <= end {
                let i = (m - start) / 2;
                bits[(i / 64) as usize] |= 1 << (i % 64);
                m += 2 * p;
            }
        }
        for (w, &word) in bits[..words].iter().enumerate() {
            let mut free = !word;
            while free != 0 {
                let b = free.trailing_zeros() as u64;
                let i = w as u64 * 64 + b;
                if i >= count {
                    break;
                }
                visit(start + 2 * i);
                free &= free - 1;
            }
        }
        start = end + 2;
    }
}
