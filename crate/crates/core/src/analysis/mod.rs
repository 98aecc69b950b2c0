//! Performance analysis: memory sharing, comparisons against the
//! memory-sharing baselines, scheme enumeration for a target `(K, M/N)` and
//! the growth estimate for `m`.
//!
//! Ratios and rates are exact rationals throughout. Floats only appear in
//! `ln F` and in the comparison bounds, which are computed exactly and then
//! rounded once.

mod compare;
mod enumerate;
mod share;

use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use compare::{
    compare_general, compare_special, default_z_range, locate_general, locate_special,
    table_iv_rows, table_v_rows, Baseline, ComparisonResult, OperatingPoint,
};
pub use enumerate::{enumerate_all, enumerate_schemes, estimate_m_range, EnumeratedScheme};
pub use share::{memory_share, MemoryShareSpec};

/// Exact `F` is only retained up to this many bits.
pub const MAX_EXACT_F_BITS: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("parameter domain: {0}")]
    Domain(String),
    #[error("memory sharing needs at least one component")]
    EmptyShare,
    #[error("weights must lie in (0, 1], got {0}")]
    WeightRange(BigRational),
    #[error("weights sum to {0}, not 1")]
    WeightSum(BigRational),
    #[error("components must be ordered by ascending memory ratio")]
    Unordered,
    #[error("invalid number `{0}`: expected an integer, a decimal or a/b")]
    BadNumber(String),
}

/// `(M/N, R, F)` of a caching scheme.
#[derive(Clone, Debug, PartialEq)]
pub struct SchemeMetrics {
    pub ratio: BigRational,
    pub rate: BigRational,
    pub ln_f: f64,
    /// Present when `F` has at most [`MAX_EXACT_F_BITS`] bits.
    pub f: Option<BigUint>,
}

impl SchemeMetrics {
    pub fn new(ratio: BigRational, rate: BigRational, f: BigUint) -> Result<Self, AnalysisError> {
        let ln_f = ln_biguint(&f);
        Self::check(&ratio, &rate, ln_f)?;
        let f = (f.bits() <= MAX_EXACT_F_BITS).then_some(f);
        Ok(SchemeMetrics {
            ratio,
            rate,
            ln_f,
            f,
        })
    }

    /// For packet counts too large to keep exactly.
    pub fn from_ln(
        ratio: BigRational,
        rate: BigRational,
        ln_f: f64,
    ) -> Result<Self, AnalysisError> {
        Self::check(&ratio, &rate, ln_f)?;
        Ok(SchemeMetrics {
            ratio,
            rate,
            ln_f,
            f: None,
        })
    }

    pub fn from_params(p: &crate::pda::PdaParams) -> Result<Self, AnalysisError> {
        Self::new(p.memory_ratio(), p.rate(), p.f.clone())
    }

    fn check(ratio: &BigRational, rate: &BigRational, ln_f: f64) -> Result<(), AnalysisError> {
        if !(ratio > &BigRational::zero() && ratio < &BigRational::one()) {
            return Err(AnalysisError::Domain(format!("0 < M/N < 1 (got {ratio})")));
        }
        if !rate.is_positive() {
            return Err(AnalysisError::Domain(format!("R > 0 (got {rate})")));
        }
        if !ln_f.is_finite() || ln_f < 0.0 {
            return Err(AnalysisError::Domain("F >= 1".into()));
        }
        Ok(())
    }
}

/// Natural log of a big integer, accurate to double precision.
pub fn ln_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64 bits");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

pub(crate) fn rational(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub(crate) fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Parses `a/b`, an integer, or a finite decimal such as `0.1` into an exact
/// rational.
pub fn parse_rational(s: &str) -> Result<BigRational, AnalysisError> {
    let bad = || AnalysisError::BadNumber(s.to_string());
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let unsigned = int.strip_prefix(['-', '+']).unwrap_or(int);
    let all_digits = |p: &str| p.bytes().all(|b| b.is_ascii_digit());
    if unsigned.len() + frac.len() == 0 || !all_digits(unsigned) || !all_digits(frac) {
        return Err(bad());
    }
    let n = BigInt::from_str(&format!("{int}{frac}")).map_err(|_| bad())?;
    Ok(BigRational::new(
        n,
        num_traits::pow(BigInt::from(10), frac.len()),
    ))
}

/// Formats like C's `%.15g`: 15 significant digits, trailing zeros removed,
/// scientific notation below `1e-4` or from `1e15`.
pub fn format_sig15(x: f64) -> String {
    format_sig(x, 15)
}

pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs());
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("2/3").unwrap(), rational(2, 3));
        assert_eq!(parse_rational("4/6").unwrap(), rational(2, 3));
        assert_eq!(parse_rational("0.1").unwrap(), rational(1, 10));
        assert_eq!(parse_rational(".5").unwrap(), rational(1, 2));
        assert_eq!(parse_rational("3").unwrap(), rational(3, 1));
        assert_eq!(parse_rational("-0.25").unwrap(), rational(-1, 4));
        for bad in ["", ".", "1/0", "a", "0.1.2", "1e3", "0.-1"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn sig15_matches_printf() {
        assert_eq!(format_sig15(1.0 / 72.9), "0.0137174211248285");
        assert_eq!(format_sig15(1.0 / 53144.1), "1.88167642315892e-05");
        assert_eq!(format_sig15(1.0 / 729.0), "0.00137174211248285");
        assert_eq!(format_sig15(0.125), "0.125");
        assert_eq!(format_sig15(2.0 / 9.0), "0.222222222222222");
        assert_eq!(format_sig15(1.0 / 18.0), "0.0555555555555556");
        assert_eq!(format_sig15(0.5), "0.5");
        assert_eq!(format_sig15(45.0), "45");
        assert_eq!(format_sig15(1e20), "1e+20");
    }

    #[test]
    fn ln_of_large_integers() {
        let x = num_traits::pow(BigUint::from(3u32), 134);
        assert!((ln_biguint(&x) - 134.0 * 3f64.ln()).abs() < 1e-9);
        let y = num_traits::pow(BigUint::from(7u32), 2000);
        assert!((ln_biguint(&y) / (2000.0 * 7f64.ln()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn metrics_domain() {
        assert!(SchemeMetrics::new(rational(1, 1), rational(1, 1), 4u32.into()).is_err());
        assert!(SchemeMetrics::new(rational(1, 2), rational(0, 1), 4u32.into()).is_err());
        let big = num_traits::pow(BigUint::from(2u32), 5000);
        let m = SchemeMetrics::new(rational(1, 2), rational(1, 1), big).unwrap();
        assert!(m.f.is_none());
    }
}
