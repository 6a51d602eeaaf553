//! Integer polynomials in one variable and the constants derived from them:
//! discriminant, the linear-zone constant `D = 1 + d·|f_d|`, the ramified primes
//! and a cheap irreducibility certificate.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::modular::fp;
use crate::sieve::{factor, primes};

/// Integer polynomial `f_0 + f_1 x + … + f_d x^d` with `d ≥ 1` and `f_d ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    /// Builds a polynomial from ascending coefficients. Trailing zeros are
    /// dropped; the result must have degree at least one.
    pub fn new(mut coeffs: Vec<BigInt>) -> Result<Self> {
        trim(&mut coeffs);
        if coeffs.len() < 2 {
            return Err(Error::InvalidPolynomial(
                "degree must be at least 1".to_string(),
            ));
        }
        Ok(IntPoly { coeffs })
    }

    pub fn from_i64s(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Ascending coefficients `f_0..=f_d`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `f_i`, zero above the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("degree >= 1")
    }

    pub fn eval(&self, n: &BigInt) -> BigInt {
        eval_slice(&self.coeffs, n)
    }

    pub fn eval_i64(&self, n: i64) -> BigInt {
        self.eval(&BigInt::from(n))
    }

    /// `|f(n)|` for `n ≥ 0`.
    pub fn abs_eval_u64(&self, n: u64) -> BigUint {
        self.eval(&BigInt::from(n)).into_parts().1
    }

    pub fn derivative_coeffs(&self) -> Vec<BigInt> {
        derivative_slice(&self.coeffs)
    }

    /// Coefficients as `i128`, if every one fits.
    pub fn coeffs_i128(&self) -> Option<Vec<i128>> {
        self.coeffs.iter().map(|c| c.to_i128()).collect()
    }

    /// `D = 1 + d·|f_d|`, the boundary constant between linear-sized and large primes.
    pub fn zone_constant(&self) -> Result<u64> {
        let d = BigInt::from(self.degree() as u64);
        let big = BigInt::one() + d * self.leading().abs();
        big.to_u64()
            .ok_or_else(|| Error::BoundTooLarge(format!("D = {big} does not fit in 64 bits")))
    }

    /// Reduction mod `p` as ascending `u64` residues (may have lower degree).
    pub fn reduce_mod(&self, p: u64) -> Vec<u64> {
        let m = BigInt::from(p);
        let mut out: Vec<u64> = self
            .coeffs
            .iter()
            .map(|c| c.mod_floor(&m).to_u64().expect("residue < p"))
            .collect();
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    }

    pub fn discriminant(&self) -> BigInt {
        discriminant(self)
    }

    /// Exact `max_{1≤n≤N} |f(n)|`; `N` must be at least 1.
    pub fn max_abs_on_range(&self, n_max: u64) -> BigUint {
        max_abs_on_range(self, n_max)
    }

    /// All integers `n ∈ [lo, hi]` with `f(n) = 0`.
    pub fn integer_zeros(&self, lo: i64, hi: i64) -> Vec<i64> {
        if lo > hi {
            return Vec::new();
        }
        let (lo, hi) = (BigInt::from(lo), BigInt::from(hi));
        sign_change_points(&self.coeffs, &lo, &hi)
            .into_iter()
            .filter(|k| self.eval(k).is_zero())
            .map(|k| k.to_i64().expect("within i64 range"))
            .collect()
    }

    /// Does `f` have a root in `ℚ`?
    pub fn has_rational_root(&self) -> bool {
        // Integer roots of the monic g(y) = f_d^{d-1} f(y / f_d) are f_d times rational roots of f.
        let d = self.degree();
        let lead = self.leading().clone();
        let mut g = Vec::with_capacity(d + 1);
        for k in 0..d {
            g.push(&self.coeffs[k] * num_traits::pow(lead.clone(), d - 1 - k));
        }
        g.push(BigInt::one());
        if g[0].is_zero() {
            return true;
        }
        let bound = BigInt::one() + g.iter().map(|c| c.abs()).max().expect("nonempty");
        sign_change_points(&g, &-bound.clone(), &bound)
            .into_iter()
            .any(|k| eval_slice(&g, &k).is_zero())
    }

    pub fn profile(&self) -> Result<PolyProfile> {
        profile(self)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag.is_one();
            match (k, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag}*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for IntPoly {
    type Err = Error;

    /// Accepts either ascending coefficients `"f0,f1,...,fd"` or a symbolic sum of
    /// terms like `"x^3 - 2*x + 7"`.
    fn from_str(s: &str) -> Result<Self> {
        if s.contains('x') || s.contains('X') {
            parse_symbolic(s)
        } else {
            parse_coefficient_list(s)
        }
    }
}

fn parse_err(column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        column,
        message: message.into(),
    }
}

fn parse_coefficient_list(s: &str) -> Result<IntPoly> {
    let mut coeffs = Vec::new();
    let mut column = 1;
    for piece in s.split(',') {
        let lead = piece.len() - piece.trim_start().len();
        let tok = piece.trim();
        if tok.is_empty() {
            return Err(parse_err(column + lead, "empty coefficient"));
        }
        let c = BigInt::from_str(tok)
            .map_err(|_| parse_err(column + lead, format!("invalid integer {tok:?}")))?;
        coeffs.push(c);
        column += piece.chars().count() + 1;
    }
    IntPoly::new(coeffs)
}

fn parse_symbolic(s: &str) -> Result<IntPoly> {
    let chars: Vec<char> = s.chars().collect();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
    };
    let digits = |pos: &mut usize| -> Option<String> {
        let start = *pos;
        while *pos < chars.len() && chars[*pos].is_ascii_digit() {
            *pos += 1;
        }
        (start < *pos).then(|| chars[start..*pos].iter().collect())
    };

    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut first = true;
    skip_ws(&mut pos);
    if pos == chars.len() {
        return Err(parse_err(1, "empty polynomial"));
    }
    while pos < chars.len() {
        let term_start = pos + 1;
        let mut negative = false;
        match chars[pos] {
            '+' => pos += 1,
            '-' => {
                negative = true;
                pos += 1
            }
            _ if first => {}
            c => return Err(parse_err(pos + 1, format!("expected '+' or '-', found {c:?}"))),
        }
        first = false;
        skip_ws(&mut pos);

        let coef = digits(&mut pos);
        skip_ws(&mut pos);
        let mut has_x = false;
        if pos < chars.len() && chars[pos] == '*' {
            if coef.is_none() {
                return Err(parse_err(pos + 1, "'*' without a coefficient"));
            }
            pos += 1;
            skip_ws(&mut pos);
            if pos >= chars.len() || !matches!(chars[pos], 'x' | 'X') {
                return Err(parse_err(pos + 1, "expected 'x' after '*'"));
            }
        }
        let mut exp = 0usize;
        if pos < chars.len() && matches!(chars[pos], 'x' | 'X') {
            has_x = true;
            pos += 1;
            skip_ws(&mut pos);
            exp = 1;
            if pos < chars.len() && chars[pos] == '^' {
                pos += 1;
                skip_ws(&mut pos);
                let e = digits(&mut pos).ok_or_else(|| parse_err(pos + 1, "expected exponent"))?;
                exp = e
                    .parse()
                    .map_err(|_| parse_err(pos + 1, "exponent out of range"))?;
                if exp > 4096 {
                    return Err(parse_err(pos + 1, "exponent out of range"));
                }
            }
        }
        if coef.is_none() && !has_x {
            return Err(parse_err(
                term_start,
                "expected a coefficient or 'x' to start a term",
            ));
        }
        let mut c = match coef {
            Some(text) => BigInt::from_str(&text).expect("digits"),
            None => BigInt::one(),
        };
        if negative {
            c = -c;
        }
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, BigInt::zero());
        }
        coeffs[exp] += c;
        skip_ws(&mut pos);
    }
    IntPoly::new(coeffs)
}

pub(crate) fn trim(coeffs: &mut Vec<BigInt>) {
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
}

pub(crate) fn eval_slice(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in coeffs.iter().rev() {
        acc *= x;
        acc += c;
    }
    acc
}

pub(crate) fn derivative_slice(coeffs: &[BigInt]) -> Vec<BigInt> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigInt::from(k as u64))
        .collect()
}

fn degree_of(p: &[BigInt]) -> usize {
    p.len().saturating_sub(1)
}

fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Pseudo-remainder of `a` by `b`: `lc(b)^{deg a - deg b + 1} a mod b`.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = degree_of(b);
    let lb = b.last().expect("nonzero divisor").clone();
    let mut steps = (degree_of(a) + 1).saturating_sub(db);
    while r.len() > db && !r.is_empty() {
        let dr = degree_of(&r);
        let lr = r.last().expect("nonempty").clone();
        for c in r.iter_mut() {
            *c *= &lb;
        }
        let shift = dr - db;
        for (k, bc) in b.iter().enumerate() {
            r[k + shift] -= &lr * bc;
        }
        trim(&mut r);
        steps -= 1;
    }
    // Multiply by the leftover powers so the result is the textbook pseudo-remainder.
    if steps > 0 {
        let scale = num_traits::pow(lb, steps);
        for c in r.iter_mut() {
            *c *= &scale;
        }
    }
    r
}

/// Resultant of two integer polynomials by the subresultant PRS.
pub fn resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() || b.is_empty() {
        return BigInt::zero();
    }
    let mut s = BigInt::one();
    if degree_of(&a) < degree_of(&b) {
        std::mem::swap(&mut a, &mut b);
        if degree_of(&a) % 2 == 1 && degree_of(&b) % 2 == 1 {
            s = -s;
        }
    }
    if degree_of(&b) == 0 {
        return num_traits::pow(b[0].clone(), degree_of(&a));
    }
    let ca = content(&a);
    let cb = content(&b);
    for c in a.iter_mut() {
        *c = &*c / &ca;
    }
    for c in b.iter_mut() {
        *c = &*c / &cb;
    }
    let t = num_traits::pow(ca, degree_of(&b)) * num_traits::pow(cb, degree_of(&a));
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let da = degree_of(&a);
        let db = degree_of(&b);
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
        let r = pseudo_rem(&a, &b);
        if r.is_empty() {
            return BigInt::zero();
        }
        let divisor = &g * num_traits::pow(h.clone(), delta);
        a = b;
        b = r.into_iter().map(|c| c / &divisor).collect();
        g = a.last().expect("nonzero").clone();
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(g.clone(), delta) / num_traits::pow(h.clone(), delta - 1)
        };
        if degree_of(&b) == 0 {
            let da = degree_of(&a);
            let lb = b[0].clone();
            let h_final = if da == 0 {
                h
            } else {
                num_traits::pow(lb, da) / num_traits::pow(h, da - 1)
            };
            return s * t * h_final;
        }
    }
}

/// `disc(f) = (-1)^{d(d-1)/2} Res(f, f') / f_d`.
pub fn discriminant(f: &IntPoly) -> BigInt {
    let d = f.degree();
    let res = resultant(f.coeffs(), &f.derivative_coeffs());
    let q = res / f.leading();
    if (d * (d - 1) / 2) % 2 == 1 {
        -q
    } else {
        q
    }
}

fn sign_of(x: &BigInt) -> i8 {
    match x.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Integers in `[lo, hi]` bracketing every sign change of `g` on the real line:
/// exact integer zeros plus the floor/ceil pair around each non-integer crossing.
///
/// Recurses on `g'`: between consecutive bracket points of the derivative `g` is
/// monotone over the integers, so one bisection per stretch finds its crossing.
fn sign_change_points(g: &[BigInt], lo: &BigInt, hi: &BigInt) -> BTreeSet<BigInt> {
    let mut g = g.to_vec();
    trim(&mut g);
    let mut out = BTreeSet::new();
    if g.len() < 2 || lo > hi {
        return out;
    }
    let crit = sign_change_points(&derivative_slice(&g), lo, hi);
    let mut breaks: Vec<BigInt> = Vec::with_capacity(crit.len() + 2);
    breaks.push(lo.clone());
    breaks.extend(crit);
    breaks.push(hi.clone());
    breaks.dedup();

    if breaks.len() == 1 && eval_slice(&g, &breaks[0]).is_zero() {
        out.insert(breaks[0].clone());
    }
    for w in breaks.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let sa = sign_of(&eval_slice(&g, a));
        let sb = sign_of(&eval_slice(&g, b));
        if sa == 0 {
            out.insert(a.clone());
        }
        if sb == 0 {
            out.insert(b.clone());
        }
        if sa * sb >= 0 {
            continue;
        }
        let (mut left, mut right) = (a.clone(), b.clone());
        while &right - &left > BigInt::one() {
            let mid: BigInt = (&left + &right) >> 1;
            match sign_of(&eval_slice(&g, &mid)) {
                0 => {
                    out.insert(mid.clone());
                    break;
                }
                s if s == sa => left = mid,
                _ => right = mid,
            }
        }
        out.insert(left);
        out.insert(right);
    }
    out
}

fn max_abs_on_range(f: &IntPoly, n_max: u64) -> BigUint {
    assert!(n_max >= 1, "range must be nonempty");
    let lo = BigInt::one();
    let hi = BigInt::from(n_max);
    let mut candidates = sign_change_points(&f.derivative_coeffs(), &lo, &hi);
    candidates.insert(lo);
    candidates.insert(hi);
    candidates
        .iter()
        .map(|n| f.eval(n).into_parts().1)
        .max()
        .expect("nonempty")
}

/// How far irreducibility over `ℚ` has been established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Irreducibility {
    /// Certified: irreducible modulo some small prime, or degree ≤ 3 without rational roots.
    Proved,
    /// No certificate found; the caller's claim is trusted.
    Assumed,
    /// `f` has a rational root.
    Reducible,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolyProfile {
    pub degree: usize,
    #[serde(serialize_with = "crate::serde_util::bigint")]
    pub disc: BigInt,
    /// `D = 1 + d·|f_d|`.
    pub zone_constant: u64,
    #[serde(serialize_with = "crate::serde_util::biguint_vec")]
    pub ramified_primes: Vec<BigUint>,
    pub irreducibility: Irreducibility,
    /// Prime `p < 200` modulo which `f` is irreducible, when one exists.
    pub certifying_prime: Option<u64>,
}

pub const CERTIFYING_PRIME_LIMIT: u64 = 200;

fn profile(f: &IntPoly) -> Result<PolyProfile> {
    let disc = f.discriminant();
    if disc.is_zero() {
        return Err(Error::ZeroDiscriminant);
    }
    let zone_constant = f.zone_constant()?;
    let ramified_primes = factor::factorize(disc.magnitude(), 0)?
        .into_iter()
        .map(|(p, _)| p)
        .collect();

    let certifying_prime = primes::primes_up_to(CERTIFYING_PRIME_LIMIT)
        .into_iter()
        .find(|&p| {
            let g = f.reduce_mod(p);
            g.len() == f.degree() + 1 && fp::is_irreducible(&g, p)
        });
    let irreducibility = if certifying_prime.is_some() {
        Irreducibility::Proved
    } else if f.has_rational_root() {
        Irreducibility::Reducible
    } else if f.degree() <= 3 {
        Irreducibility::Proved
    } else {
        Irreducibility::Assumed
    };
    Ok(PolyProfile {
        degree: f.degree(),
        disc,
        zone_constant,
        ramified_primes,
        irreducibility,
        certifying_prime,
    })
}

impl PartialOrd for IntPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for IntPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}
