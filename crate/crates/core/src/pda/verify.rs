use std::collections::HashMap;
use std::fmt;

use super::{PdaArray, PdaCell, PdaDocument, PdaError, PdaParams};

/// The PDA condition a violation breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    /// Every column holds the same number `Z` of stars.
    C1,
    /// Every symbol in `1..=S` occurs at least once, and no other symbol does.
    C2,
    /// Two equal symbols share a row or a column.
    C3a,
    /// Two equal symbols whose cross cells are not both stars.
    C3b,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::C1 => "C1",
            Condition::C2 => "C2",
            Condition::C3a => "C3a",
            Condition::C3b => "C3b",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub condition: Condition,
    /// 0-based `(row, col)` cells involved.
    pub locations: Vec<(usize, usize)>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.condition, self.detail)?;
        if !self.locations.is_empty() {
            let cells: Vec<String> = self
                .locations
                .iter()
                .map(|(j, k)| format!("({},{})", j + 1, k + 1))
                .collect();
            write!(f, " at {}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Outcome of [`verify_pda`]. `valid` is true iff `violations` is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    fn from_violations(mut violations: Vec<Violation>) -> Self {
        violations.sort_by(|a, b| (a.condition, &a.locations).cmp(&(b.condition, &b.locations)));
        VerificationReport {
            valid: violations.is_empty(),
            violations,
        }
    }

    pub fn count(&self, condition: Condition) -> usize {
        self.violations
            .iter()
            .filter(|v| v.condition == condition)
            .count()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.valid {
            return writeln!(f, "valid");
        }
        writeln!(f, "invalid: {} violation(s)", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

/// Checks C1, C2 and C3 and reports every violation found.
///
/// `Z` is taken as the most common column star count (ties go to the
/// leftmost column) and `S` as the largest symbol present. C3 is checked per
/// symbol group, so the cost is the sum over symbols of `count_s choose 2`.
pub fn verify_pda(arr: &PdaArray) -> VerificationReport {
    check(arr, None, None)
}

/// Like [`verify_pda`], but `Z` and `S` come from the document header, so a
/// header that disagrees with the grid is reported as C1/C2 violations.
pub fn verify_document(doc: &PdaDocument) -> VerificationReport {
    check(&doc.array, Some(doc.header.z), Some(doc.header.s))
}

fn check(
    arr: &PdaArray,
    expected_z: Option<usize>,
    declared_s: Option<usize>,
) -> VerificationReport {
    let mut violations = Vec::new();
    check_stars(arr, expected_z, &mut violations);
    let groups = arr.symbol_occurrences();
    check_symbols(&groups, declared_s, &mut violations);
    for (idx, cells) in groups.iter().enumerate() {
        check_pairs(arr, idx as u32 + 1, cells, &mut violations);
    }
    VerificationReport::from_violations(violations)
}

fn modal_star_count(counts: &[usize]) -> usize {
    let mut freq: HashMap<usize, usize> = HashMap::new();
    for &c in counts {
        *freq.entry(c).or_default() += 1;
    }
    let best = freq.values().copied().max().unwrap_or(0);
    counts
        .iter()
        .copied()
        .find(|c| freq[c] == best)
        .unwrap_or(0)
}

fn check_stars(arr: &PdaArray, expected_z: Option<usize>, out: &mut Vec<Violation>) {
    let counts = arr.column_star_counts();
    let z = expected_z.unwrap_or_else(|| modal_star_count(&counts));
    for (k, &c) in counts.iter().enumerate() {
        if c != z {
            let locations = (0..arr.rows())
                .filter(|&j| arr.get(j, k).is_star())
                .map(|j| (j, k))
                .collect();
            out.push(Violation {
                condition: Condition::C1,
                locations,
                detail: format!("column {} has {} stars, expected Z = {}", k + 1, c, z),
            });
        }
    }
}

fn check_symbols(
    groups: &[Vec<(usize, usize)>],
    declared_s: Option<usize>,
    out: &mut Vec<Violation>,
) {
    let s = declared_s.unwrap_or(groups.len());
    for (idx, cells) in groups.iter().enumerate().take(s) {
        if cells.is_empty() {
            out.push(Violation {
                condition: Condition::C2,
                locations: Vec::new(),
                detail: format!("symbol {} does not occur (S = {})", idx + 1, s),
            });
        }
    }
    for (idx, cells) in groups.iter().enumerate().skip(s) {
        if !cells.is_empty() {
            out.push(Violation {
                condition: Condition::C2,
                locations: cells.clone(),
                detail: format!("symbol {} exceeds S = {}", idx + 1, s),
            });
        }
    }
    // A declared S larger than any symbol present leaves trailing symbols missing.
    for idx in groups.len()..s {
        out.push(Violation {
            condition: Condition::C2,
            locations: Vec::new(),
            detail: format!("symbol {} does not occur (S = {})", idx + 1, s),
        });
    }
}

fn check_pairs(arr: &PdaArray, symbol: u32, cells: &[(usize, usize)], out: &mut Vec<Violation>) {
    for (i, &(j1, k1)) in cells.iter().enumerate() {
        for &(j2, k2) in &cells[i + 1..] {
            if j1 == j2 || k1 == k2 {
                let shared = if j1 == j2 { "row" } else { "column" };
                out.push(Violation {
                    condition: Condition::C3a,
                    locations: vec![(j1, k1), (j2, k2)],
                    detail: format!("symbol {symbol} repeats in the same {shared}"),
                });
                continue;
            }
            let cross = [(j1, k2), (j2, k1)];
            let bad: Vec<(usize, usize)> = cross
                .iter()
                .copied()
                .filter(|&(j, k)| arr.get(j, k) != PdaCell::Star)
                .collect();
            if !bad.is_empty() {
                let mut locations = vec![(j1, k1), (j2, k2)];
                locations.extend(&bad);
                out.push(Violation {
                    condition: Condition::C3b,
                    locations,
                    detail: format!(
                        "symbol {symbol}: cross cells of the 2x2 subarray are not both stars"
                    ),
                });
            }
        }
    }
}

/// Counts `(K, F, Z, S)`. Only C1 is required, since `Z` is otherwise not
/// well defined; `S` is the number of distinct symbols.
pub fn params_of(arr: &PdaArray) -> Result<PdaParams, PdaError> {
    let counts = arr.column_star_counts();
    let z = counts[0];
    if let Some((k, &c)) = counts.iter().enumerate().find(|(_, &c)| c != z) {
        return Err(PdaError::NonUniformStars {
            first_col: 0,
            first: z,
            col: k,
            found: c,
        });
    }
    Ok(PdaParams::new(
        arr.cols() as u64,
        arr.rows() as u64,
        z as u64,
        arr.distinct_symbols() as u64,
    ))
}
