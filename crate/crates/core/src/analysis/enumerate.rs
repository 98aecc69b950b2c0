use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{rational, MAX_EXACT_F_BITS};
use crate::constructions::{ConstructionParams, Family};

/// One parameter choice reaching the requested `(K, M/N)`.
#[derive(Clone, Debug, PartialEq)]
pub struct EnumeratedScheme {
    pub family: Family,
    pub q: u32,
    pub z: u32,
    pub m: u32,
    pub t: u32,
    pub k: u64,
    pub ratio: BigRational,
    pub rate: BigRational,
    pub ln_f: f64,
    /// Exact `F` when it has at most [`MAX_EXACT_F_BITS`] bits.
    pub f: Option<BigUint>,
}

impl EnumeratedScheme {
    fn new(family: Family, q: u32, z: u32, m: u32, t: u32, k: u64, ratio: &BigRational) -> Self {
        let w = (q - 1) / (q - z);
        let (w_exp, rate) = match family {
            Family::General => (t, pow_ratio(rational(q - z, w), t)),
            Family::Special => (1, rational(q - z, w)),
            Family::ExtGeneral => (0, pow_ratio(rational(q - z, 1), t)),
            Family::ExtSpecial => (0, rational(q - z, 1)),
        };
        let ln_f = f64::from(w_exp) * f64::from(w).ln() + f64::from(m) * f64::from(q).ln();
        let f = (ln_f / std::f64::consts::LN_2 < (MAX_EXACT_F_BITS - 1) as f64).then(|| {
            num_traits::pow(BigUint::from(w), w_exp as usize)
                * num_traits::pow(BigUint::from(q), m as usize)
        });
        EnumeratedScheme {
            family,
            q,
            z,
            m,
            t,
            k,
            ratio: ratio.clone(),
            rate,
            ln_f,
            f,
        }
    }

    pub fn params(&self) -> ConstructionParams {
        ConstructionParams::new(self.q, self.z, self.m, self.t)
    }
}

fn pow_ratio(x: BigRational, e: u32) -> BigRational {
    num_traits::pow(x, e as usize)
}

/// Smallest `m > t` with `C(m, t) = target`, if any.
fn solve_binomial(target: u64, t: u32) -> Option<u32> {
    let t128 = u128::from(t);
    let mut m = t128 + 1;
    let mut c = m; // C(t + 1, t)
    let target = u128::from(target);
    while c < target {
        m += 1;
        c = c * m / (m - t128);
    }
    (c == target).then(|| u32::try_from(m).ok()).flatten()
}

/// All `(family, q, z, m, t)` whose closed-form `K` equals `k` and whose
/// memory ratio equals `ratio`, sorted by rate then `q`.
///
/// The general and extended-general families are searched for `t >= 2`
/// only: at `t = 1` they are the column blocks of the special families at
/// the same rate and `q` times the packet count. [`enumerate_all`] keeps
/// them.
pub fn enumerate_schemes(k: u64, ratio: &BigRational) -> Vec<EnumeratedScheme> {
    search(k, ratio, 2)
}

/// Like [`enumerate_schemes`] but including `t = 1` for the general families.
pub fn enumerate_all(k: u64, ratio: &BigRational) -> Vec<EnumeratedScheme> {
    search(k, ratio, 1)
}

fn search(k: u64, ratio: &BigRational, min_general_t: u32) -> Vec<EnumeratedScheme> {
    let mut out = Vec::new();
    if k < 2 || ratio <= &BigRational::zero() || ratio >= &BigRational::one() {
        return out;
    }
    let (Ok(num), Ok(den)) = (u64::try_from(ratio.numer()), u64::try_from(ratio.denom())) else {
        return out;
    };
    let t_max = k.ilog2() + 1;
    let q_max = u32::try_from(k).unwrap_or(u32::MAX);
    for q in 2..=q_max {
        let q64 = u64::from(q);
        // z/q = num/den has at most one solution.
        if q64.is_multiple_of(den) && k.is_multiple_of(q64) {
            let z = (num * (q64 / den)) as u32;
            let w = u64::from((q - 1) / (q - z));
            let n = k / q64 - 1;
            if n >= 1 {
                if let Ok(m) = u32::try_from(n) {
                    out.push(EnumeratedScheme::new(Family::Special, q, z, m, 1, k, ratio));
                }
                if n.is_multiple_of(w) {
                    if let Ok(m) = u32::try_from(n / w) {
                        out.push(EnumeratedScheme::new(
                            Family::ExtSpecial,
                            q,
                            z,
                            m,
                            1,
                            k,
                            ratio,
                        ));
                    }
                }
            }
        }
        for t in min_general_t..=t_max {
            let Some(qt) = q64.checked_pow(t).filter(|&qt| qt <= k) else {
                break;
            };
            if !k.is_multiple_of(qt) {
                continue;
            }
            let qt_big = BigInt::from(qt);
            for z in 1..q {
                let lattice = BigRational::one()
                    - BigRational::new(
                        num_traits::pow(BigInt::from(q - z), t as usize),
                        qt_big.clone(),
                    );
                if &lattice != ratio {
                    continue;
                }
                if let Some(m) = solve_binomial(k / qt, t) {
                    out.push(EnumeratedScheme::new(Family::General, q, z, m, t, k, ratio));
                }
                let w = u64::from((q - 1) / (q - z));
                if let Some(wqt) = (w * q64).checked_pow(t).filter(|&x| k.is_multiple_of(x)) {
                    if let Some(m) = solve_binomial(k / wqt, t) {
                        out.push(EnumeratedScheme::new(
                            Family::ExtGeneral,
                            q,
                            z,
                            m,
                            t,
                            k,
                            ratio,
                        ));
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| {
        a.rate
            .cmp(&b.rate)
            .then(a.q.cmp(&b.q))
            .then(
                Family::ALL
                    .iter()
                    .position(|&f| f == a.family)
                    .cmp(&Family::ALL.iter().position(|&f| f == b.family)),
            )
            .then(a.t.cmp(&b.t))
    });
    out
}

/// Open interval `(t K^{1/t} / (e q), t K^{1/t} / q)` containing `m` for a
/// general-family scheme with `K = C(m, t) q^t`, so that `F` grows like
/// `w^t q^{t K^{1/t} / q}`.
pub fn estimate_m_range(k: u64, q: u32, t: u32) -> (f64, f64) {
    let upper = f64::from(t) * (k as f64).powf(1.0 / f64::from(t)) / f64::from(q);
    (upper / std::f64::consts::E, upper)
}
