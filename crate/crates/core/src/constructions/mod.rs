//! PDA families parameterized by `(q, z, m, t)` plus the baseline MN PDA.
//!
//! All four families label rows and columns with short vectors over `Z_q`
//! and fill each cell with either a star or a "symbol vector", which is then
//! encoded to an integer. The families differ only in which vectors index
//! the rows and columns:
//!
//! | family        | rows                    | columns                              |
//! |---------------|-------------------------|--------------------------------------|
//! | `General`     | `(a, eps)`, `eps` len t | `(b, delta)`                         |
//! | `Special`     | `(a, eps)`, `eps` len 1 | `(b, delta)`, then `(b, m)`          |
//! | `ExtGeneral`  | `a`                     | `(b, delta, eps)`                    |
//! | `ExtSpecial`  | `a`                     | `(b, delta, eps)`, then `(b, m)`     |
//!
//! where `a` ranges over `Z_q^m`, `b` over `Z_q^t`, `delta` over the
//! increasing `t`-subsets of `[0, m)` and each `eps` coordinate over
//! `[0, w)` with `w = floor((q-1)/(q-z))`. The `(b, m)` block uses the
//! sum rule (see [`entry`]).

mod index;
mod mn;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::{One, Pow, ToPrimitive};
use thiserror::Error;

use crate::pda::{PdaArray, PdaCell, PdaParams};

pub use index::{col_indices, entry, row_indices, ColIndex, RowIndex, SymbolVector};
pub use mn::{construct_mn, construct_mn_with_cap, mn_params};

/// Default upper bound on `F * K` for array builders.
pub const DEFAULT_MAX_CELLS: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    General,
    Special,
    ExtGeneral,
    ExtSpecial,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::General,
        Family::Special,
        Family::ExtGeneral,
        Family::ExtSpecial,
    ];

    /// Special families fix `t = 1`.
    pub fn is_special(self) -> bool {
        matches!(self, Family::Special | Family::ExtSpecial)
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::General => "general",
            Family::Special => "special",
            Family::ExtGeneral => "ext-general",
            Family::ExtSpecial => "ext-special",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown family {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("parameter constraint violated: {0}")]
    Domain(String),
    #[error("array would have {cells} cells, above the cap of {cap}")]
    CellCap { cells: BigUint, cap: u64 },
}

fn domain(msg: String) -> ConstructionError {
    ConstructionError::Domain(msg)
}

/// The generator tuple shared by the four families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ConstructionParams {
    pub q: u32,
    pub z: u32,
    pub m: u32,
    pub t: u32,
}

impl ConstructionParams {
    pub fn new(q: u32, z: u32, m: u32, t: u32) -> Self {
        ConstructionParams { q, z, m, t }
    }

    /// Parameters for the special families, which fix `t = 1`.
    pub fn special(q: u32, z: u32, m: u32) -> Self {
        ConstructionParams { q, z, m, t: 1 }
    }

    /// `floor((q-1)/(q-z))`, the range of every `eps` coordinate.
    pub fn w(&self) -> u32 {
        (self.q - 1) / (self.q - self.z)
    }

    /// Checks the parameter domain of `family`.
    pub fn validate(&self, family: Family) -> Result<(), ConstructionError> {
        let ConstructionParams { q, z, m, t } = *self;
        if q < 2 {
            return Err(domain(format!("q >= 2 (got q = {q})")));
        }
        if z < 1 || z >= q {
            return Err(domain(format!("1 <= z < q (got z = {z}, q = {q})")));
        }
        if m < 1 {
            return Err(domain(format!("m >= 1 (got m = {m})")));
        }
        if family.is_special() {
            if t != 1 {
                return Err(domain(format!(
                    "t = 1 for the {family} family (got t = {t})"
                )));
            }
        } else {
            if t < 1 {
                return Err(domain(format!("t >= 1 (got t = {t})")));
            }
            if t >= m {
                return Err(domain(format!("t < m (got t = {t}, m = {m})")));
            }
        }
        Ok(())
    }
}

impl fmt::Display for ConstructionParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q={} z={} m={} t={}", self.q, self.z, self.m, self.t)
    }
}

fn big(n: u32) -> BigUint {
    BigUint::from(n)
}

/// Closed-form `(K, F, Z, S)` of a family, without building the array.
pub fn theorem_params(
    family: Family,
    p: &ConstructionParams,
) -> Result<PdaParams, ConstructionError> {
    p.validate(family)?;
    let (q, z, m, t, w) = (big(p.q), big(p.z), p.m, p.t, big(p.w()));
    let qz = &q - &z;
    let q_m: BigUint = Pow::pow(&q, m);
    let params = match family {
        Family::General => {
            let w_t: BigUint = Pow::pow(&w, t);
            let qz_t: BigUint = Pow::pow(&qz, t);
            let q_mt: BigUint = Pow::pow(&q, m - t);
            let k = binomial(big(m), big(t)) * Pow::pow(&q, t);
            let f = &w_t * &q_m;
            let zz = &w_t * (&q_m - &q_mt * &qz_t);
            let s = qz_t * &q_m;
            PdaParams { k, f, z: zz, s }
        }
        Family::Special => {
            let k = big(m + 1) * &q;
            let f = &w * &q_m;
            let zz = &z * &w * Pow::pow(&q, m - 1);
            let s = &qz * &q_m;
            PdaParams { k, f, z: zz, s }
        }
        Family::ExtGeneral => {
            let qz_t: BigUint = Pow::pow(&qz, t);
            let k = binomial(big(m), big(t)) * Pow::pow(&w, t) * Pow::pow(&q, t);
            let zz = &q_m - &qz_t * Pow::pow(&q, m - t);
            let s = qz_t * &q_m;
            PdaParams {
                k,
                f: q_m,
                z: zz,
                s,
            }
        }
        Family::ExtSpecial => {
            let k = (big(m) * &w + BigUint::one()) * &q;
            let zz = &z * Pow::pow(&q, m - 1);
            let s = &qz * &q_m;
            PdaParams {
                k,
                f: q_m,
                z: zz,
                s,
            }
        }
    };
    Ok(params)
}

pub(crate) fn check_cap(cells: BigUint, cap: u64) -> Result<usize, ConstructionError> {
    match cells.to_u64() {
        Some(n) if n <= cap => Ok(n as usize),
        _ => Err(ConstructionError::CellCap { cells, cap }),
    }
}

/// Builds the array of `family`, refusing requests with more than
/// `max_cells` cells.
pub fn construct(
    family: Family,
    p: &ConstructionParams,
    max_cells: u64,
) -> Result<PdaArray, ConstructionError> {
    let expected = theorem_params(family, p)?;
    check_cap(&expected.k * &expected.f, max_cells)?;
    if expected.s > BigUint::from(u32::MAX) {
        return Err(domain(format!(
            "S = {} does not fit a 32-bit symbol",
            expected.s
        )));
    }
    let rows = row_indices(family, p)?;
    let cols = col_indices(family, p)?;
    let mut cells = Vec::with_capacity(rows.len() * cols.len());
    let mut scratch = SymbolVector::default();
    for row in &rows {
        for col in &cols {
            let cell = if index::fill_entry(p, row, col, &mut scratch) {
                let code = scratch.encode(p.q, p.z);
                PdaCell::symbol(code as u32 + 1).expect("encoded symbols are positive")
            } else {
                PdaCell::Star
            };
            cells.push(cell);
        }
    }
    Ok(PdaArray::new(rows.len(), cols.len(), cells).expect("index sets are non-empty"))
}

pub fn construct_general(p: &ConstructionParams) -> Result<PdaArray, ConstructionError> {
    construct(Family::General, p, DEFAULT_MAX_CELLS)
}

pub fn construct_special(p: &ConstructionParams) -> Result<PdaArray, ConstructionError> {
    construct(Family::Special, p, DEFAULT_MAX_CELLS)
}

pub fn construct_ext_general(p: &ConstructionParams) -> Result<PdaArray, ConstructionError> {
    construct(Family::ExtGeneral, p, DEFAULT_MAX_CELLS)
}

pub fn construct_ext_special(p: &ConstructionParams) -> Result<PdaArray, ConstructionError> {
    construct(Family::ExtSpecial, p, DEFAULT_MAX_CELLS)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pda::{params_of, verify_pda};

    fn counted(family: Family, q: u32, z: u32, m: u32, t: u32) -> PdaParams {
        let arr = construct(
            family,
            &ConstructionParams::new(q, z, m, t),
            DEFAULT_MAX_CELLS,
        )
        .unwrap();
        let report = verify_pda(&arr);
        assert!(report.valid, "{family} {q} {z} {m} {t}: {report}");
        params_of(&arr).unwrap()
    }

    #[test]
    fn small_instances_match_hand_counts() {
        assert_eq!(
            counted(Family::General, 3, 2, 2, 1),
            PdaParams::new(6u32, 18u32, 12u32, 9u32)
        );
        assert_eq!(
            counted(Family::General, 3, 1, 2, 1),
            PdaParams::new(6u32, 9u32, 3u32, 18u32)
        );
        assert_eq!(
            counted(Family::General, 2, 1, 2, 1),
            PdaParams::new(4u32, 4u32, 2u32, 4u32)
        );
        assert_eq!(
            counted(Family::Special, 3, 2, 2, 1),
            PdaParams::new(9u32, 18u32, 12u32, 9u32)
        );
        assert_eq!(
            counted(Family::Special, 3, 1, 2, 1),
            PdaParams::new(9u32, 9u32, 3u32, 18u32)
        );
        assert_eq!(
            counted(Family::Special, 2, 1, 1, 1),
            PdaParams::new(4u32, 2u32, 1u32, 2u32)
        );
        assert_eq!(
            counted(Family::ExtGeneral, 3, 2, 2, 1),
            PdaParams::new(12u32, 9u32, 6u32, 9u32)
        );
        assert_eq!(
            counted(Family::ExtGeneral, 3, 1, 2, 1),
            PdaParams::new(6u32, 9u32, 3u32, 18u32)
        );
        assert_eq!(
            counted(Family::ExtGeneral, 2, 1, 3, 2),
            PdaParams::new(12u32, 8u32, 6u32, 8u32)
        );
        assert_eq!(
            counted(Family::ExtSpecial, 3, 2, 2, 1),
            PdaParams::new(15u32, 9u32, 6u32, 9u32)
        );
        assert_eq!(
            counted(Family::ExtSpecial, 3, 1, 2, 1),
            PdaParams::new(9u32, 9u32, 3u32, 18u32)
        );
        assert_eq!(
            counted(Family::ExtSpecial, 2, 1, 1, 1),
            PdaParams::new(4u32, 2u32, 1u32, 2u32)
        );
    }

    #[test]
    fn closed_forms_handle_huge_exponents() {
        let p = theorem_params(Family::Special, &ConstructionParams::special(3, 2, 134)).unwrap();
        assert_eq!(p.k, BigUint::from(405u32));
        assert_eq!(
            p.f,
            BigUint::from(2u32) * Pow::pow(&BigUint::from(3u32), 134u32)
        );
    }

    #[test]
    fn domain_violations_name_the_constraint() {
        let err =
            theorem_params(Family::General, &ConstructionParams::new(3, 2, 2, 2)).unwrap_err();
        assert!(err.to_string().contains("t < m"), "{err}");
        let err =
            theorem_params(Family::General, &ConstructionParams::new(3, 3, 2, 1)).unwrap_err();
        assert!(err.to_string().contains("z < q"), "{err}");
        let err =
            theorem_params(Family::Special, &ConstructionParams::new(3, 1, 2, 2)).unwrap_err();
        assert!(err.to_string().contains("t = 1"), "{err}");
        let err =
            theorem_params(Family::ExtSpecial, &ConstructionParams::special(1, 1, 2)).unwrap_err();
        assert!(err.to_string().contains("q >= 2"), "{err}");
        let err =
            theorem_params(Family::ExtSpecial, &ConstructionParams::special(4, 1, 0)).unwrap_err();
        assert!(err.to_string().contains("m >= 1"), "{err}");
    }

    #[test]
    fn cell_cap_is_enforced() {
        let p = ConstructionParams::new(6, 5, 4, 2);
        assert!(matches!(
            construct(Family::General, &p, 1_000),
            Err(ConstructionError::CellCap { cap: 1_000, .. })
        ));
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>(), Ok(f));
        }
        assert!("mn".parse::<Family>().is_err());
    }
}
