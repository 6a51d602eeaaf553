//! The divided difference `A = Σ_j f(m_j) / ∏_{k≠j} (m_j - m_k)` and the ratio
//! of complete homogeneous to power sums that bounds its top-degree term.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Status, VerificationReport};
use crate::error::{Error, Result};
use crate::polynomial::IntPoly;

/// `[h_0, …, h_max]` of the given variables.
pub fn complete_homogeneous(points: &[BigInt], max_s: usize) -> Vec<BigInt> {
    let mut h = vec![BigInt::zero(); max_s + 1];
    h[0] = BigInt::one();
    for m in points {
        for s in 1..=max_s {
            let step = m * &h[s - 1];
            h[s] += step;
        }
    }
    h
}

/// `Σ_j m_j^s`.
pub fn power_sum(points: &[BigInt], s: usize) -> BigInt {
    points.iter().map(|m| num_traits::pow(m.clone(), s)).sum()
}

fn validate_points(f: &IntPoly, points: &[i64]) -> Result<()> {
    let t = points.len();
    if t < 2 || t > f.degree() + 1 {
        return Err(Error::InvalidArgument(format!(
            "need 2 <= t <= d + 1 = {} points, got {t}",
            f.degree() + 1
        )));
    }
    let mut sorted = points.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidArgument("points must be distinct".to_string()));
    }
    Ok(())
}

/// The defining sum, accumulated as an exact rational.
pub fn divided_difference_direct(f: &IntPoly, points: &[i64]) -> BigRational {
    let mut acc = BigRational::zero();
    for (j, &mj) in points.iter().enumerate() {
        let mut den = BigInt::one();
        for (k, &mk) in points.iter().enumerate() {
            if k != j {
                den *= BigInt::from(mj) - BigInt::from(mk);
            }
        }
        acc += BigRational::new(f.eval_i64(mj), den);
    }
    acc
}

/// `Σ_{ℓ=t-1}^{d} f_ℓ · h_{ℓ-t+1}(m_1, …, m_t)`.
pub fn divided_difference_expanded(f: &IntPoly, points: &[i64]) -> BigInt {
    let t = points.len();
    let d = f.degree();
    let ms: Vec<BigInt> = points.iter().map(|&m| BigInt::from(m)).collect();
    let h = complete_homogeneous(&ms, d + 1 - t);
    (t - 1..=d).map(|l| f.coeff(l) * &h[l + 1 - t]).sum()
}

/// `A` for `t = d - i + 1` distinct points, evaluated both ways.
///
/// Fails with [`Error::NonIntegral`] or [`Error::RouteMismatch`] if the two
/// evaluations disagree, which would mean an arithmetic bug.
pub fn divided_difference_a(f: &IntPoly, points: &[i64]) -> Result<BigInt> {
    validate_points(f, points)?;
    let direct = divided_difference_direct(f, points);
    if !direct.is_integer() {
        return Err(Error::NonIntegral(direct.to_string()));
    }
    let direct = direct.to_integer();
    let expanded = divided_difference_expanded(f, points);
    if direct != expanded {
        return Err(Error::RouteMismatch {
            direct: direct.to_string(),
            expanded: expanded.to_string(),
        });
    }
    Ok(direct)
}

/// Checks `p^i | A` for points with `p^i | f(m_j)` and `|m_j - m_k| < p`.
pub fn check_divisibility_a(
    f: &IntPoly,
    p: &BigUint,
    i: usize,
    points: &[i64],
) -> Result<VerificationReport> {
    let d = f.degree();
    let mut report = VerificationReport::new("divided_difference")
        .with_poly(f)
        .param("p", p)
        .param("i", i)
        .param("points", format!("{points:?}"));
    if i == 0 || i > d {
        return Err(Error::InvalidArgument(format!("need 1 <= i <= d = {d}, got {i}")));
    }
    if points.len() != d - i + 1 {
        return Err(Error::InvalidArgument(format!(
            "i = {i} needs d - i + 1 = {} points, got {}",
            d - i + 1,
            points.len()
        )));
    }
    if points.len() < 2 {
        report.status = Status::NotApplicable;
        return Ok(report);
    }
    let pi = BigInt::from(p.pow(i as u32));
    for &m in points {
        if !f.eval_i64(m).is_multiple_of(&pi) {
            return Err(Error::PreconditionUnmet(format!("p^{i} does not divide f({m})")));
        }
    }
    let pb = BigInt::from(p.clone());
    for (a, &x) in points.iter().enumerate() {
        for &y in &points[a + 1..] {
            if (BigInt::from(x) - BigInt::from(y)).abs() >= pb {
                return Err(Error::PreconditionUnmet(format!("|{x} - {y}| >= p")));
            }
        }
    }
    let a = divided_difference_a(f, points)?;
    report.empirical("a_is_zero", if a.is_zero() { 1.0 } else { 0.0 });
    if !a.is_multiple_of(&pi) {
        report.violation(format!("{points:?}"), a.to_string(), format!("multiple of {p}^{i}"));
    }
    Ok(report.finish())
}

fn binomial(n: usize, k: usize) -> BigInt {
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// Outcome of one ratio evaluation, `h_s(m) / p_s(m)` with `s = ℓ - (d - i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmgmRatio {
    pub numerator: BigInt,
    pub denominator: BigInt,
    /// `C(ℓ, d-i)`; the sharp upper bound is this over `d - i + 1`.
    pub binomial: BigInt,
    pub t: usize,
}

impl AmgmRatio {
    pub fn at_least_one(&self) -> bool {
        self.numerator >= self.denominator
    }

    pub fn within_sharp_bound(&self) -> bool {
        &self.numerator * BigInt::from(self.t) <= &self.binomial * &self.denominator
    }

    pub fn sharp_bound_within_power(&self, d: usize) -> bool {
        self.binomial <= BigInt::from(self.t) << d
    }

    pub fn as_f64(&self) -> f64 {
        ratio_f64(&self.numerator, &self.denominator)
    }
}

fn ratio_f64(a: &BigInt, b: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    let shift = a.bits().max(b.bits()).saturating_sub(60);
    let a = (a >> shift).to_f64().unwrap_or(f64::NAN);
    let b = (b >> shift).to_f64().unwrap_or(f64::NAN);
    a / b
}

/// `None` for the degenerate exponent `ℓ = d - i`.
pub fn amgm_ratio(d: usize, i: usize, l: usize, points: &[BigInt]) -> Result<Option<AmgmRatio>> {
    if i == 0 || i > d || l + i < d || l > d {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= i <= d and d - i <= l <= d (d = {d}, i = {i}, l = {l})"
        )));
    }
    let t = d - i + 1;
    if points.len() != t {
        return Err(Error::InvalidArgument(format!("need {t} points, got {}", points.len())));
    }
    if points.iter().any(|m| !m.is_positive()) {
        return Err(Error::InvalidArgument("points must be positive".to_string()));
    }
    let s = l - (d - i);
    if s == 0 {
        return Ok(None);
    }
    Ok(Some(AmgmRatio {
        numerator: complete_homogeneous(points, s).pop().expect("s + 1 entries"),
        denominator: power_sum(points, s),
        binomial: binomial(l, d - i),
        t,
    }))
}

pub fn check_amgm_ratio(d: usize, i: usize, l: usize, points: &[u64]) -> Result<VerificationReport> {
    let ms: Vec<BigInt> = points.iter().map(|&m| BigInt::from(m)).collect();
    let mut report = VerificationReport::new("amgm_ratio")
        .param("d", d)
        .param("i", i)
        .param("l", l)
        .param("points", format!("{points:?}"));
    let Some(r) = amgm_ratio(d, i, l, &ms)? else {
        report.status = Status::NotApplicable;
        return Ok(report);
    };
    record_amgm(&mut report, d, i, l, points, &r);
    report.empirical("ratio", r.as_f64());
    report.empirical("sharp_bound", ratio_f64(&r.binomial, &BigInt::from(r.t)));
    Ok(report.finish())
}

fn record_amgm(report: &mut VerificationReport, d: usize, i: usize, l: usize, points: &[u64], r: &AmgmRatio) {
    let subject = format!("d={d} i={i} l={l} points={points:?}");
    let observed = format!("{}/{}", r.numerator, r.denominator);
    if !r.at_least_one() {
        report.violation(subject.clone(), observed.clone(), ">= 1".to_string());
    }
    if !r.within_sharp_bound() {
        report.violation(subject.clone(), observed, format!("<= {}/{}", r.binomial, r.t));
    }
    if !r.sharp_bound_within_power(d) {
        report.violation(subject, format!("{}/{}", r.binomial, r.t), format!("<= 2^{d}"));
    }
}

fn random_poly(rng: &mut ChaCha8Rng, d: usize) -> IntPoly {
    let mut coeffs: Vec<BigInt> = (0..=d).map(|_| BigInt::from(rng.gen_range(-1000i64..=1000))).collect();
    if coeffs[d].is_zero() {
        coeffs[d] = BigInt::one();
    }
    IntPoly::new(coeffs).expect("leading coefficient nonzero")
}

fn distinct_points(rng: &mut ChaCha8Rng, t: usize, lo: i64, hi: i64) -> Vec<i64> {
    let mut pts: Vec<i64> = Vec::with_capacity(t);
    while pts.len() < t {
        let m = rng.gen_range(lo..=hi);
        if !pts.contains(&m) {
            pts.push(m);
        }
    }
    pts
}

/// Both routes for `A` on `cases` seeded random `(f, points)` with `d ≤ max_d`,
/// `|m_j| ≤ 10^6`.
pub fn identity_suite(seed: u64, cases: usize, max_d: usize) -> VerificationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = VerificationReport::new("divided_difference")
        .param("seed", seed)
        .param("cases", cases)
        .param("max_d", max_d);
    let mut zero = 0u64;
    for case in 0..cases {
        let d = rng.gen_range(1..=max_d.max(1));
        let f = random_poly(&mut rng, d);
        let t = rng.gen_range(2..=d + 1);
        let pts = distinct_points(&mut rng, t, -1_000_000, 1_000_000);
        match divided_difference_a(&f, &pts) {
            Ok(a) => zero += a.is_zero() as u64,
            Err(e) => report.violation(format!("case {case}: f = {f}, points {pts:?}"), e.to_string(), "integral, routes equal".to_string()),
        }
    }
    report.empirical("random_cases", cases as f64);
    report.empirical("random_a_zero", zero as f64);
    report.finish()
}

/// Ratio bounds on `cases` seeded random point sets for every admissible
/// `(d, i, ℓ)` with `d ≤ max_d` and `ℓ > d - i`, plus the all-equal point set
/// that attains the sharp bound.
pub fn amgm_suite(seed: u64, cases: usize, max_d: usize) -> VerificationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = VerificationReport::new("amgm_ratio")
        .param("seed", seed)
        .param("cases_per_triple", cases)
        .param("max_d", max_d);
    let (mut triples, mut checked, mut sharp_hits) = (0u64, 0u64, 0u64);
    let mut max_fraction_of_bound = 0f64;
    for d in 1..=max_d {
        for i in 1..=d {
            for l in (d - i + 1)..=d {
                triples += 1;
                let t = d - i + 1;
                for case in 0..=cases {
                    let points: Vec<u64> = if case == cases {
                        vec![rng.gen_range(1..=1000); t]
                    } else {
                        let hi = if case % 2 == 0 { 10 } else { 1_000_000 };
                        (0..t).map(|_| rng.gen_range(1..=hi)).collect()
                    };
                    let ms: Vec<BigInt> = points.iter().map(|&m| BigInt::from(m)).collect();
                    let r = amgm_ratio(d, i, l, &ms)
                        .expect("admissible triple")
                        .expect("l > d - i");
                    record_amgm(&mut report, d, i, l, &points, &r);
                    checked += 1;
                    if &r.numerator * BigInt::from(r.t) == &r.binomial * &r.denominator {
                        sharp_hits += 1;
                    }
                    let frac = ratio_f64(&(&r.numerator * BigInt::from(r.t)), &(&r.binomial * &r.denominator));
                    max_fraction_of_bound = max_fraction_of_bound.max(frac);
                }
            }
        }
    }
    report.empirical("triples", triples as f64);
    report.empirical("cases_checked", checked as f64);
    report.empirical("sharp_bound_attained", sharp_hits as f64);
    report.empirical("max_ratio_over_sharp_bound", max_fraction_of_bound);
    report.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    fn big(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// `h_s` by listing every composition of `s` into `len` parts.
    fn h_by_compositions(points: &[BigInt], s: usize) -> BigInt {
        fn go(points: &[BigInt], s: usize, acc: BigInt) -> BigInt {
            match points.split_first() {
                None => if s == 0 { acc } else { BigInt::zero() },
                Some((m, rest)) => (0..=s)
                    .map(|a| go(rest, s - a, &acc * num_traits::pow(m.clone(), a)))
                    .sum(),
            }
        }
        go(points, s, BigInt::one())
    }

    #[test]
    fn h_matches_compositions() {
        let pts = big(&[3, -2, 7, 1]);
        let h = complete_homogeneous(&pts, 6);
        for s in 0..=6 {
            assert_eq!(h[s], h_by_compositions(&pts, s), "s = {s}");
        }
    }

    #[test]
    fn worked_examples() {
        let f = poly("x^2 + 1");
        assert_eq!(divided_difference_a(&f, &[1, 2]).unwrap(), BigInt::from(3));
        assert_eq!(divided_difference_a(&f, &[1, 2, 3]).unwrap(), BigInt::from(1));
        let g = poly("x^3 + 2");
        assert_eq!(divided_difference_a(&g, &[2, 5]).unwrap(), BigInt::from(39));
        assert!(divided_difference_a(&f, &[1]).is_err());
        assert!(divided_difference_a(&f, &[1, 1]).is_err());
        assert!(divided_difference_a(&f, &[1, 2, 3, 4]).is_err());
    }

    #[test]
    fn divisibility_examples() {
        let f = poly("x^2 + 1");
        let r = check_divisibility_a(&f, &BigUint::from(5u32), 1, &[2, 3]).unwrap();
        assert_eq!(r.status, Status::Pass);
        let r = check_divisibility_a(&f, &BigUint::from(5u32), 2, &[7]).unwrap();
        assert_eq!(r.status, Status::NotApplicable);
        assert!(matches!(
            check_divisibility_a(&f, &BigUint::from(5u32), 1, &[2, 4]),
            Err(Error::PreconditionUnmet(_))
        ));
    }

    #[test]
    fn amgm_examples() {
        let r = check_amgm_ratio(2, 1, 2, &[3, 4]).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.empirical_constants["ratio"], 1.0);
        assert_eq!(r.empirical_constants["sharp_bound"], 1.0);
        let r = check_amgm_ratio(3, 2, 3, &[1, 1]).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.empirical_constants["ratio"], 1.5);
        assert_eq!(r.empirical_constants["sharp_bound"], 1.5);
        let r = check_amgm_ratio(3, 1, 2, &[4, 5, 6]).unwrap();
        assert_eq!(r.status, Status::NotApplicable);
        assert!(check_amgm_ratio(3, 1, 1, &[4, 5, 6]).is_err());
    }

    #[test]
    fn suites_pass_small() {
        let r = identity_suite(7, 200, 6);
        assert_eq!(r.status, Status::Pass, "{:?}", r.violations);
        let r = amgm_suite(7, 20, 6);
        assert_eq!(r.status, Status::Pass, "{:?}", r.violations);
        assert!(r.empirical_constants["sharp_bound_attained"] > 0.0);
        assert!(r.empirical_constants["max_ratio_over_sharp_bound"] <= 1.0);
    }
}
