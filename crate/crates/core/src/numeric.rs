//! Floating-point helpers for log-space statistics.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl FromIterator<f64> for KahanSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut k = KahanSum::new();
        for x in iter {
            k.add(x);
        }
        k
    }
}

/// Natural log of a positive big integer from its top 64 bits.
///
/// Relative error is dominated by one `f64` rounding of the mantissa, well
/// under `1e-12` for every input `> 1`.
pub fn ln_biguint(x: &BigUint) -> f64 {
    if let Some(small) = x.to_u64() {
        return (small as f64).ln();
    }
    let bits = x.bits();
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("64 bits");
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

/// `ln p` for a prime stored as a big integer.
pub fn ln_prime(p: &BigUint) -> f64 {
    ln_biguint(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn kahan_beats_naive_on_cancellation() {
        let xs = [1e16, 1.0, -1e16, 1.0];
        let k: KahanSum = xs.iter().copied().collect();
        assert_eq!(k.value(), 2.0);
    }

    #[test]
    fn ln_of_large_powers() {
        for (base, exp) in [(3u32, 500usize), (7, 91), (2, 4000), (10, 300)] {
            let x = num_traits::pow(BigUint::from(base), exp);
            let want = exp as f64 * (base as f64).ln();
            let got = ln_biguint(&x);
            assert!(((got - want) / want).abs() < 1e-12, "{base}^{exp}: {got} vs {want}");
        }
        assert_eq!(ln_biguint(&BigUint::one()), 0.0);
    }
}
