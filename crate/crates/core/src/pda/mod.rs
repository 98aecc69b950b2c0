//! Placement delivery arrays: the data model, the C1–C3 verifier, canonical
//! symbol relabeling, equivalence up to relabeling, and the text format.
//!
//! A PDA is an `F x K` grid. Row `j` is a packet index, column `k` a user.
//! A star at `(j, k)` means user `k` caches packet `j` of every file; an
//! integer symbol `s` means packet `j` of user `k`'s demanded file is
//! delivered in the `s`-th broadcast. All indices in this API are 0-based;
//! the text format and human-readable reports use 1-based coordinates.

mod canon;
mod text;
mod verify;

use std::fmt;
use std::num::NonZeroU32;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

pub use canon::{canonicalize, equivalent};
pub use text::{emit, parse, ParseError, ParseErrorKind, PdaDocument, PdaHeader};
pub use verify::{
    params_of, verify_document, verify_pda, Condition, VerificationReport, Violation,
};

/// One cell of a PDA.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PdaCell {
    Star,
    Symbol(NonZeroU32),
}

impl PdaCell {
    /// Builds a symbol cell; `None` for 0, which is never a symbol.
    pub fn symbol(s: u32) -> Option<PdaCell> {
        NonZeroU32::new(s).map(PdaCell::Symbol)
    }

    pub fn is_star(self) -> bool {
        matches!(self, PdaCell::Star)
    }

    pub fn as_symbol(self) -> Option<u32> {
        match self {
            PdaCell::Star => None,
            PdaCell::Symbol(s) => Some(s.get()),
        }
    }
}

impl fmt::Display for PdaCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PdaCell::Star => f.write_str("*"),
            PdaCell::Symbol(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid cell token {0:?}: expected `*` or a positive integer")]
pub struct CellParseError(pub String);

impl FromStr for PdaCell {
    type Err = CellParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "*" {
            return Ok(PdaCell::Star);
        }
        if !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(CellParseError(s.to_string()));
        }
        s.parse::<u32>()
            .ok()
            .and_then(PdaCell::symbol)
            .ok_or_else(|| CellParseError(s.to_string()))
    }
}

/// Errors from building or interrogating a [`PdaArray`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PdaError {
    #[error("a PDA needs at least one row and one column (got {rows}x{cols})")]
    EmptyShape { rows: usize, cols: usize },
    #[error("expected {expected} cells for the declared shape, got {found}")]
    CellCount { expected: usize, found: usize },
    #[error("row {row} has {found} cells, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("star counts differ between columns: column {first_col} has {first} stars, column {col} has {found}")]
    NonUniformStars {
        first_col: usize,
        first: usize,
        col: usize,
        found: usize,
    },
}

/// An `F x K` grid of [`PdaCell`]s stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PdaArray {
    rows: usize,
    cols: usize,
    cells: Vec<PdaCell>,
}

impl PdaArray {
    pub fn new(rows: usize, cols: usize, cells: Vec<PdaCell>) -> Result<Self, PdaError> {
        if rows == 0 || cols == 0 {
            return Err(PdaError::EmptyShape { rows, cols });
        }
        if cells.len() != rows * cols {
            return Err(PdaError::CellCount {
                expected: rows * cols,
                found: cells.len(),
            });
        }
        Ok(PdaArray { rows, cols, cells })
    }

    pub fn from_rows(rows: Vec<Vec<PdaCell>>) -> Result<Self, PdaError> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        let mut cells = Vec::with_capacity(n_rows * n_cols);
        for (j, row) in rows.into_iter().enumerate() {
            if row.len() != n_cols {
                return Err(PdaError::RaggedRow {
                    row: j,
                    expected: n_cols,
                    found: row.len(),
                });
            }
            cells.extend(row);
        }
        PdaArray::new(n_rows, n_cols, cells)
    }

    /// Parses a bare whitespace grid (no header), one row per line.
    ///
    /// ```
    /// use coded_caching::pda::PdaArray;
    /// let a = PdaArray::from_grid_str("* 1\n1 *").unwrap();
    /// assert_eq!((a.rows(), a.cols()), (2, 2));
    /// ```
    pub fn from_grid_str(grid: &str) -> Result<Self, String> {
        let rows = grid
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| {
                l.split_whitespace()
                    .map(|t| t.parse::<PdaCell>().map_err(|e| e.to_string()))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        PdaArray::from_rows(rows).map_err(|e| e.to_string())
    }

    /// Number of rows, `F`.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns, `K`.
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> PdaCell {
        self.cells[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, cell: PdaCell) {
        self.cells[row * self.cols + col] = cell;
    }

    pub fn row(&self, row: usize) -> &[PdaCell] {
        &self.cells[row * self.cols..(row + 1) * self.cols]
    }

    pub fn cells(&self) -> &[PdaCell] {
        &self.cells
    }

    /// Iterates `(row, col, cell)` in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, PdaCell)> + '_ {
        let cols = self.cols;
        self.cells
            .iter()
            .enumerate()
            .map(move |(i, &c)| (i / cols, i % cols, c))
    }

    pub fn column_star_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.cols];
        for (_, k, c) in self.iter() {
            if c.is_star() {
                counts[k] += 1;
            }
        }
        counts
    }

    /// Largest symbol present, 0 for an all-star array.
    pub fn max_symbol(&self) -> u32 {
        self.cells
            .iter()
            .filter_map(|c| c.as_symbol())
            .max()
            .unwrap_or(0)
    }

    /// Number of distinct symbols present.
    pub fn distinct_symbols(&self) -> usize {
        let mut seen = vec![false; self.max_symbol() as usize + 1];
        let mut n = 0;
        for s in self.cells.iter().filter_map(|c| c.as_symbol()) {
            if !seen[s as usize] {
                seen[s as usize] = true;
                n += 1;
            }
        }
        n
    }

    /// Cells grouped by symbol: entry `s - 1` lists the `(row, col)` cells
    /// holding `s`, in row-major order.
    pub fn symbol_occurrences(&self) -> Vec<Vec<(usize, usize)>> {
        let mut groups = vec![Vec::new(); self.max_symbol() as usize];
        for (j, k, c) in self.iter() {
            if let Some(s) = c.as_symbol() {
                groups[s as usize - 1].push((j, k));
            }
        }
        groups
    }

    pub fn transpose(&self) -> PdaArray {
        let mut cells = Vec::with_capacity(self.cells.len());
        for k in 0..self.cols {
            for j in 0..self.rows {
                cells.push(self.get(j, k));
            }
        }
        PdaArray {
            rows: self.cols,
            cols: self.rows,
            cells,
        }
    }

    /// Places `other` to the right of `self`. Symbols are kept as-is.
    pub fn hconcat(&self, other: &PdaArray) -> Result<PdaArray, PdaError> {
        if self.rows != other.rows {
            return Err(PdaError::CellCount {
                expected: self.rows,
                found: other.rows,
            });
        }
        let cols = self.cols + other.cols;
        let mut cells = Vec::with_capacity(self.rows * cols);
        for j in 0..self.rows {
            cells.extend_from_slice(self.row(j));
            cells.extend_from_slice(other.row(j));
        }
        PdaArray::new(self.rows, cols, cells)
    }
}

impl fmt::Display for PdaArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.rows {
            let line: Vec<String> = self.row(j).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// The `(K, F, Z, S)` tuple of a PDA. Big integers so that closed-form
/// parameters of full-scale constructions (e.g. `F = 2 * 3^134`) fit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PdaParams {
    pub k: BigUint,
    pub f: BigUint,
    pub z: BigUint,
    pub s: BigUint,
}

impl PdaParams {
    pub fn new(
        k: impl Into<BigUint>,
        f: impl Into<BigUint>,
        z: impl Into<BigUint>,
        s: impl Into<BigUint>,
    ) -> Self {
        PdaParams {
            k: k.into(),
            f: f.into(),
            z: z.into(),
            s: s.into(),
        }
    }

    /// `M/N = Z/F`, in lowest terms.
    pub fn memory_ratio(&self) -> BigRational {
        assert!(!self.f.is_zero(), "F must be positive");
        BigRational::new(self.z.clone().into(), self.f.clone().into())
    }

    /// `R = S/F`, in lowest terms.
    pub fn rate(&self) -> BigRational {
        assert!(!self.f.is_zero(), "F must be positive");
        BigRational::new(self.s.clone().into(), self.f.clone().into())
    }
}

impl fmt::Display for PdaParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.k, self.f, self.z, self.s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_is_not_a_symbol() {
        assert_eq!(PdaCell::symbol(0), None);
        assert!("0".parse::<PdaCell>().is_err());
        assert!("-3".parse::<PdaCell>().is_err());
        assert!("+3".parse::<PdaCell>().is_err());
        assert_eq!("*".parse::<PdaCell>(), Ok(PdaCell::Star));
        assert_eq!("12".parse::<PdaCell>().unwrap().as_symbol(), Some(12));
    }

    #[test]
    fn shape_is_checked() {
        assert!(matches!(
            PdaArray::new(0, 3, vec![]),
            Err(PdaError::EmptyShape { .. })
        ));
        assert!(matches!(
            PdaArray::new(2, 2, vec![PdaCell::Star; 3]),
            Err(PdaError::CellCount { .. })
        ));
        let ragged = vec![vec![PdaCell::Star, PdaCell::Star], vec![PdaCell::Star]];
        assert!(matches!(
            PdaArray::from_rows(ragged),
            Err(PdaError::RaggedRow { row: 1, .. })
        ));
    }

    #[test]
    fn symbol_occurrences_groups_by_symbol() {
        let a = PdaArray::from_grid_str("* 1\n1 *\n2 *").unwrap();
        let groups = a.symbol_occurrences();
        assert_eq!(groups, vec![vec![(0, 1), (1, 0)], vec![(2, 0)]]);
        assert_eq!(a.column_star_counts(), vec![1, 2]);
        assert_eq!(a.distinct_symbols(), 2);
        assert_eq!(a.transpose().transpose(), a);
    }

    #[test]
    fn params_ratios_are_reduced() {
        let p = PdaParams::new(4u32, 6u32, 3u32, 4u32);
        assert_eq!(p.memory_ratio(), BigRational::new(1.into(), 2.into()));
        assert_eq!(p.rate(), BigRational::new(2.into(), 3.into()));
        assert_eq!(p.to_string(), "(4,6,3,4)");
    }
}
