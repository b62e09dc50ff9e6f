//! Closed-form counts of self-conjugate simultaneous cores.
//!
//! Every formula is a finite sum of binomial or multinomial coefficients
//! evaluated exactly. The kernel returns 0 for any out-of-range index so that
//! boundary terms need no special casing. Floors are mathematical floors.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::{gcd, Error, Result};

/// Binomial coefficient; 0 unless `0 <= k <= n`.
pub fn binom(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Multinomial coefficient `n! / (k_1! ... k_m!)`; 0 if a part is negative
/// or the parts do not sum to `n`.
pub fn multinom(n: i64, parts: &[i64]) -> BigUint {
    if n < 0 || parts.iter().any(|&k| k < 0) || parts.iter().sum::<i64>() != n {
        return BigUint::zero();
    }
    let mut rest = n;
    let mut acc = BigUint::one();
    for &k in parts {
        acc *= binom(rest, k);
        rest -= k;
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountMethod {
    FormulaP2,
    FormulaP3,
    FormulaD1,
    Fms,
    SymMotzkin,
    CornerP2,
    CornerP3,
    Dp,
    Enumeration,
}

impl fmt::Display for CountMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            CountMethod::FormulaP2 => "formula-p2",
            CountMethod::FormulaP3 => "formula-p3",
            CountMethod::FormulaD1 => "formula-d1",
            CountMethod::Fms => "fms",
            CountMethod::SymMotzkin => "sym-motzkin",
            CountMethod::CornerP2 => "corner-p2",
            CountMethod::CornerP3 => "corner-p3",
            CountMethod::Dp => "dp",
            CountMethod::Enumeration => "enumeration",
        };
        f.write_str(name)
    }
}

/// A count and the route that produced it. Serializes the value as a decimal
/// string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountResult {
    #[serde(serialize_with = "decimal")]
    pub value: BigUint,
    pub method: CountMethod,
}

fn decimal<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_str_radix(10))
}

impl CountResult {
    pub fn new(value: BigUint, method: CountMethod) -> Self {
        CountResult { value, method }
    }
}

fn require_coprime(s: u64, d: u64) -> Result<()> {
    if s == 0 || d == 0 {
        return Err(Error::invalid("parameters must be positive"));
    }
    if gcd(s, d) != 1 {
        return Err(Error::invalid(format!("gcd({s},{d}) is not 1")));
    }
    Ok(())
}

fn fl(a: i64, b: i64) -> i64 {
    Integer::div_floor(&a, &b)
}

/// Self-conjugate `(s, s+d, s+2d)`-cores.
pub fn count_sc_p2(s: u64, d: u64) -> Result<CountResult> {
    require_coprime(s, d)?;
    let (s, d) = (s as i64, d as i64);
    let value = if d % 2 == 0 {
        (0..=fl(s, 4))
            .map(|i| multinom((s + d - 1) / 2, &[i, d / 2 + i, (s - 1) / 2 - 2 * i]))
            .sum()
    } else {
        (0..=fl(s, 2))
            .map(|i| multinom(fl(s + d - 1, 2), &[fl(i, 2), fl(d + i, 2), fl(s, 2) - i]))
            .sum()
    };
    Ok(CountResult::new(value, CountMethod::FormulaP2))
}

/// Self-conjugate `(s, s+d, s+2d, s+3d)`-cores.
pub fn count_sc_p3(s: u64, d: u64) -> Result<CountResult> {
    require_coprime(s, d)?;
    let (s, d) = (s as i64, d as i64);
    let value = if d % 2 == 0 {
        let top = (s + d - 1) / 2;
        (0..=fl(s, 4))
            .map(|i| binom(top - i, (s - 1) / 2 - 2 * i) * binom(top - i, i))
            .sum()
    } else {
        (0..=fl(s, 2))
            .map(|i| {
                binom(fl(s + d - 1, 2) - fl(i, 2), fl(s, 2) - i)
                    * binom(fl(s + d, 2) - fl(i + 1, 2), fl(i, 2))
            })
            .sum()
    };
    Ok(CountResult::new(value, CountMethod::FormulaP3))
}

/// Self-conjugate `(s, s+1, ..., s+p)`-cores. For `p = 2` the inner range
/// bound is `k - 1` (the second argument of the minimum is unbounded).
pub fn count_sc_d1(s: u64, p: u32) -> Result<CountResult> {
    if s == 0 {
        return Err(Error::invalid("s must be positive"));
    }
    if p < 2 {
        return Err(Error::invalid("p must be at least 2"));
    }
    let s = s as i64;
    let q = p as i64 - 2;
    let mut value = BigUint::one();
    for k in 1..=fl(s, 2) {
        let r = if q == 0 {
            k - 1
        } else {
            (k - 1).min(fl(s - 2 * k, q))
        };
        for l in 0..=r {
            value += binom(fl(k - 1, 2), fl(l, 2))
                * binom(fl(k, 2), fl(l + 1, 2))
                * binom(fl(s - l * q, 2), k);
        }
    }
    Ok(CountResult::new(value, CountMethod::FormulaD1))
}

/// Self-conjugate `(s, t)`-cores: `C(⌊s/2⌋ + ⌊t/2⌋, ⌊s/2⌋)`.
pub fn count_fms(s: u64, t: u64) -> Result<CountResult> {
    require_coprime(s, t)?;
    let (s2, t2) = ((s / 2) as i64, (t / 2) as i64);
    Ok(CountResult::new(binom(s2 + t2, s2), CountMethod::Fms))
}

/// Symmetric Motzkin paths of length `s`.
pub fn count_sym_motzkin(s: u64) -> Result<CountResult> {
    if s == 0 {
        return Err(Error::invalid("s must be positive"));
    }
    let r = (s / 2) as i64;
    let value = (0..=r).map(|i| binom(r, i) * binom(i, fl(i, 2))).sum();
    Ok(CountResult::new(value, CountMethod::SymMotzkin))
}

/// Self-conjugate `(s, s+1, s+2)`-cores with `m` corners.
pub fn count_corners_p2(s: u64, m: u64) -> Result<CountResult> {
    if s == 0 {
        return Err(Error::invalid("s must be positive"));
    }
    let (r, m) = ((s / 2) as i64, m as i64);
    let value = multinom(r, &[fl(m, 2), fl(m + 1, 2), r - m]);
    Ok(CountResult::new(value, CountMethod::CornerP2))
}

/// Self-conjugate `(s, s+1, s+2, s+3)`-cores with `m` corners.
pub fn count_corners_p3(s: u64, m: u64) -> Result<CountResult> {
    if s == 0 {
        return Err(Error::invalid("s must be positive"));
    }
    let (s, m) = (s as i64, m as i64);
    let r = fl(s, 2);
    let value = binom(r - fl(m, 2), r - m) * binom(fl(s + 1, 2) - fl(m + 1, 2), fl(m, 2));
    Ok(CountResult::new(value, CountMethod::CornerP3))
}

/// Closed form for `(s, d, p)` when one exists: the `p = 2` and `p = 3`
/// formulas, and the `d = 1` formula for any `p`.
pub fn formula_counts(s: u64, d: u64, p: u32) -> Result<Vec<CountResult>> {
    let mut out = Vec::new();
    match p {
        2 => out.push(count_sc_p2(s, d)?),
        3 => out.push(count_sc_p3(s, d)?),
        _ => require_coprime(s, d)?,
    }
    if d == 1 {
        out.push(count_sc_d1(s, p)?);
    }
    Ok(out)
}

/// Equal counts for `(s, d, p)` and `(s+1, d, p)` when `d` is odd and `s`,
/// `p` are even, both sides taken from oracle enumeration. Both pairs must be
/// coprime.
pub fn check_corollary_d_odd(s: u64, d: u64, p: u32) -> Result<bool> {
    if d.is_multiple_of(2) || s % 2 == 1 || p % 2 == 1 {
        return Err(Error::invalid(format!(
            "needs odd d and even s, p; got (s,d,p) = ({s},{d},{p})"
        )));
    }
    require_coprime(s, d)?;
    require_coprime(s + 1, d)?;
    let left = crate::oracle::enumerate_md_sets(&crate::oracle::EnumerationTask::new(s, d, p))?;
    let right =
        crate::oracle::enumerate_md_sets(&crate::oracle::EnumerationTask::new(s + 1, d, p))?;
    Ok(left.len() == right.len())
}
