use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{rational, to_f64, AnalysisError};

/// The memory-sharing scheme compared against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Baseline {
    /// Sharing between the `z = 1` and `z = q - 1` general-family schemes.
    Szg,
    /// Sharing between the `z = 1` and `z = q - 1` special-family schemes.
    Yctc,
}

impl Baseline {
    pub fn name(self) -> &'static str {
        match self {
            Baseline::Szg => "szg",
            Baseline::Yctc => "yctc",
        }
    }
}

impl fmt::Display for Baseline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Baseline {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "szg" => Ok(Baseline::Szg),
            "yctc" => Ok(Baseline::Yctc),
            _ => Err(format!("unknown baseline `{s}` (expected szg or yctc)")),
        }
    }
}

/// Where the target memory ratio sits relative to the family's lattice of
/// achievable ratios.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OperatingPoint {
    /// Exactly the ratio of the scheme with parameter `z`.
    Lattice,
    /// Strictly between the ratios for `z` and `z + 1`; the compared scheme
    /// is itself a memory-sharing of those two.
    Between,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonResult {
    pub baseline: Baseline,
    pub q: u32,
    pub z: u32,
    pub t: u32,
    pub lambda: BigRational,
    pub point: OperatingPoint,
    /// Upper bound on `R / R_baseline`: `1 / (λ w^{2t})`.
    pub r_ratio_bound: f64,
    pub r_ratio_bound_exact: BigRational,
    /// The `F / F_baseline` column: a bound, or the exact value when
    /// `f_is_equality`.
    pub f_ratio: f64,
    pub f_ratio_exact: BigRational,
    pub f_is_equality: bool,
    /// The true `F / F_baseline`, which the bound dominates.
    pub f_ratio_actual: BigRational,
    /// `λ w^{2t} > 1`: the scheme beats the baseline in both R and F.
    pub advantage: bool,
}

impl ComparisonResult {
    pub fn exact_case(&self) -> bool {
        self.point == OperatingPoint::Lattice
    }
}

fn w(q: u32, z: u32) -> u32 {
    (q - 1) / (q - z)
}

fn pow(base: u32, e: u32) -> BigRational {
    BigRational::from_integer(num_traits::pow(BigInt::from(base), e as usize))
}

fn check(
    q: u32,
    z: u32,
    t: u32,
    lambda: &BigRational,
    point: OperatingPoint,
) -> Result<(), AnalysisError> {
    let domain = |msg: String| Err(AnalysisError::Domain(msg));
    if q < 2 {
        return domain(format!("q >= 2 (got q = {q})"));
    }
    if z < 1 || z >= q {
        return domain(format!("1 <= z < q (got z = {z}, q = {q})"));
    }
    if t < 1 {
        return domain("t >= 1".into());
    }
    if !(lambda > &BigRational::zero() && lambda < &BigRational::one()) {
        return domain(format!("0 < lambda < 1 (got {lambda})"));
    }
    if point == OperatingPoint::Between && q - z < 2 {
        return domain(format!(
            "q - z > 1 between lattice points (got q - z = {})",
            q - z
        ));
    }
    Ok(())
}

fn advantage_and_r_bound(q: u32, z: u32, t: u32, lambda: &BigRational) -> (bool, BigRational) {
    let denom = lambda * pow(w(q, z), 2 * t);
    (denom > BigRational::one(), denom.recip())
}

/// Compares the general family (parameter `z`) with memory sharing between
/// the general-family endpoints `z = 1` and `z = q - 1` at the same `t`,
/// mixed with weight `lambda`.
pub fn compare_general(
    q: u32,
    z: u32,
    t: u32,
    lambda: &BigRational,
    point: OperatingPoint,
) -> Result<ComparisonResult, AnalysisError> {
    check(q, z, t, lambda, point)?;
    let (advantage, r_bound) = advantage_and_r_bound(q, z, t, lambda);
    let baseline_f = pow(q - 1, t) + BigRational::one();
    let (f_bound, f_actual) = match point {
        OperatingPoint::Lattice => (pow(q - z, t).recip(), pow(w(q, z), t) / &baseline_f),
        OperatingPoint::Between => (
            pow(q - z, t).recip() + pow(q - z - 1, t).recip(),
            (pow(w(q, z), t) + pow(w(q, z + 1), t)) / &baseline_f,
        ),
    };
    Ok(ComparisonResult {
        baseline: Baseline::Szg,
        q,
        z,
        t,
        lambda: lambda.clone(),
        point,
        r_ratio_bound: to_f64(&r_bound),
        r_ratio_bound_exact: r_bound,
        f_ratio: to_f64(&f_bound),
        f_ratio_exact: f_bound,
        f_is_equality: false,
        f_ratio_actual: f_actual,
        advantage,
    })
}

/// Compares the special family with memory sharing between its `z = 1` and
/// `z = q - 1` members. At a lattice point the `F` ratio is exactly `w/q`.
pub fn compare_special(
    q: u32,
    z: u32,
    lambda: &BigRational,
    point: OperatingPoint,
) -> Result<ComparisonResult, AnalysisError> {
    check(q, z, 1, lambda, point)?;
    let (advantage, r_bound) = advantage_and_r_bound(q, z, 1, lambda);
    let (f_value, f_actual, equality) = match point {
        OperatingPoint::Lattice => {
            let v = rational(w(q, z), q);
            (v.clone(), v, true)
        }
        OperatingPoint::Between => (
            rational(1, q - z) + rational(1, q - z - 1),
            rational(w(q, z) + w(q, z + 1), q),
            false,
        ),
    };
    Ok(ComparisonResult {
        baseline: Baseline::Yctc,
        q,
        z,
        t: 1,
        lambda: lambda.clone(),
        point,
        r_ratio_bound: to_f64(&r_bound),
        r_ratio_bound_exact: r_bound,
        f_ratio: to_f64(&f_value),
        f_ratio_exact: f_value,
        f_is_equality: equality,
        f_ratio_actual: f_actual,
        advantage,
    })
}

fn locate(
    lattice: impl Fn(u32) -> BigRational,
    q: u32,
    ratio: &BigRational,
) -> Option<(u32, OperatingPoint)> {
    (1..q).find_map(|z| {
        let here = lattice(z);
        if &here == ratio {
            Some((z, OperatingPoint::Lattice))
        } else if z + 1 < q && &here < ratio && ratio < &lattice(z + 1) {
            Some((z, OperatingPoint::Between))
        } else {
            None
        }
    })
}

/// Finds `z` with `1 - ((q-z)/q)^t` equal to, or just below, `ratio`.
pub fn locate_general(q: u32, t: u32, ratio: &BigRational) -> Option<(u32, OperatingPoint)> {
    locate(|z| BigRational::one() - pow(q - z, t) / pow(q, t), q, ratio)
}

/// Finds `z` with `z/q` equal to, or just below, `ratio`.
pub fn locate_special(q: u32, ratio: &BigRational) -> Option<(u32, OperatingPoint)> {
    locate(|z| rational(z, q), q, ratio)
}

/// `z` values swept when none is given: those with `w >= 2` (where an
/// advantage is possible), excluding `z = q - 1`, which is the baseline's
/// own upper endpoint.
pub fn default_z_range(q: u32) -> RangeInclusive<u32> {
    (q + 2) / 2..=q.saturating_sub(2)
}

/// The lattice-point comparison over [`default_z_range`] for the general
/// family with `q = 20`, `t = 3`, `λ = 0.1`.
pub fn table_iv_rows() -> Vec<ComparisonResult> {
    default_z_range(20)
        .map(|z| {
            compare_general(20, z, 3, &rational(1, 10), OperatingPoint::Lattice).expect("in domain")
        })
        .collect()
}

/// The lattice-point comparison over [`default_z_range`] for the special
/// family with `q = 20`, `λ = 0.5`.
pub fn table_v_rows() -> Vec<ComparisonResult> {
    default_z_range(20)
        .map(|z| {
            compare_special(20, z, &rational(1, 2), OperatingPoint::Lattice).expect("in domain")
        })
        .collect()
}
