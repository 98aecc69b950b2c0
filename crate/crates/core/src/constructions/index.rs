use super::{ConstructionError, ConstructionParams, Family};

/// A row label: `a` in `Z_q^m`, plus the `eps` vector for the families that
/// replicate rows (`General`, `Special`); empty otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RowIndex {
    pub a: Vec<u32>,
    pub eps: Vec<u32>,
}

/// A column label. `delta` is an increasing `t`-subset of `[0, m)`, or the
/// single sentinel `[m]` for the sum-rule block of the special families.
/// `eps` is non-empty only for the extended families' replicated columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColIndex {
    pub b: Vec<u32>,
    pub delta: Vec<u32>,
    pub eps: Vec<u32>,
}

impl ColIndex {
    fn is_sum_block(&self, m: u32) -> bool {
        self.delta.len() == 1 && self.delta[0] == m
    }
}

/// The vector a non-star cell holds: `m` coordinates in `Z_q` followed by a
/// tail of coordinates in `[0, q - z)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SymbolVector {
    pub coords: Vec<u32>,
    pub tail: Vec<u32>,
}

impl SymbolVector {
    /// Mixed-radix value, most significant coordinate first: radix `q` for
    /// `coords`, `q - z` for `tail`. Bijective onto `[0, q^m (q-z)^len)`.
    pub fn encode(&self, q: u32, z: u32) -> u64 {
        let tail_radix = u64::from(q - z);
        let v = self
            .coords
            .iter()
            .fold(0u64, |v, &c| v * u64::from(q) + u64::from(c));
        self.tail.iter().fold(v, |v, &c| {
            debug_assert!(u64::from(c) < tail_radix);
            v * tail_radix + u64::from(c)
        })
    }
}

/// All vectors of length `len` over `[0, radix)`, first coordinate varying
/// fastest.
fn vectors(len: u32, radix: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0u32; len as usize]];
    let total = (radix as usize).pow(len);
    for _ in 1..total {
        let mut v = out.last().expect("non-empty").clone();
        for c in v.iter_mut() {
            *c += 1;
            if *c < radix {
                break;
            }
            *c = 0;
        }
        out.push(v);
    }
    out
}

/// Increasing `t`-subsets of `[0, m)` in lexicographic order.
fn combinations(m: u32, t: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = (0..t).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..t as usize).rev().find(|&i| cur[i] < m - t + i as u32) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..t as usize {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Row labels of `family`, in array order: `eps` outer, `a` inner.
pub fn row_indices(
    family: Family,
    p: &ConstructionParams,
) -> Result<Vec<RowIndex>, ConstructionError> {
    p.validate(family)?;
    let a_vectors = vectors(p.m, p.q);
    let rows = match family {
        Family::General | Family::Special => vectors(p.t, p.w())
            .into_iter()
            .flat_map(|eps| {
                a_vectors.iter().map(move |a| RowIndex {
                    a: a.clone(),
                    eps: eps.clone(),
                })
            })
            .collect(),
        Family::ExtGeneral | Family::ExtSpecial => a_vectors
            .into_iter()
            .map(|a| RowIndex { a, eps: Vec::new() })
            .collect(),
    };
    Ok(rows)
}

/// Column labels of `family`, in array order: `delta` outer, then `eps`,
/// then `b`; the sum-rule block comes last.
pub fn col_indices(
    family: Family,
    p: &ConstructionParams,
) -> Result<Vec<ColIndex>, ConstructionError> {
    p.validate(family)?;
    let b_vectors = vectors(p.t, p.q);
    let eps_vectors = match family {
        Family::General | Family::Special => vec![Vec::new()],
        Family::ExtGeneral | Family::ExtSpecial => vectors(p.t, p.w()),
    };
    let mut cols = Vec::new();
    for delta in combinations(p.m, p.t) {
        for eps in &eps_vectors {
            for b in &b_vectors {
                cols.push(ColIndex {
                    b: b.clone(),
                    delta: delta.clone(),
                    eps: eps.clone(),
                });
            }
        }
    }
    if family.is_special() {
        cols.extend((0..p.q).map(|b| ColIndex {
            b: vec![b],
            delta: vec![p.m],
            eps: Vec::new(),
        }));
    }
    Ok(cols)
}

fn reduce(x: i64, q: u32) -> u32 {
    x.rem_euclid(i64::from(q)) as u32
}

/// Fills `out` with the symbol vector at `(row, col)`; returns false for a
/// star.
pub(super) fn fill_entry(
    p: &ConstructionParams,
    row: &RowIndex,
    col: &ColIndex,
    out: &mut SymbolVector,
) -> bool {
    let (q, z) = (p.q, p.z);
    let gap = i64::from(q - z);
    if col.is_sum_block(p.m) {
        // Star iff the shifted coordinate sum lies in Y_{b,z} = {b, ..., b+z-1}.
        let eps = row.eps.first().copied().unwrap_or(0);
        let sum: i64 = row.a.iter().map(|&x| i64::from(x)).sum();
        let x = reduce(sum - i64::from(eps) * gap, q);
        let b = col.b[0];
        if reduce(i64::from(x) - i64::from(b), q) < z {
            return false;
        }
        out.coords.clear();
        out.coords.extend_from_slice(&row.a);
        out.tail.clear();
        out.tail.push(reduce(i64::from(b) - i64::from(x) - 1, q));
        return true;
    }

    let eps = if row.eps.is_empty() {
        &col.eps
    } else {
        &row.eps
    };
    // Star iff some a_{delta_i} lies in X_{b_i,z} = {b_i, b_i-1, ..., b_i-z+1}.
    for (&d, &b) in col.delta.iter().zip(&col.b) {
        if reduce(i64::from(b) - i64::from(row.a[d as usize]), q) < z {
            return false;
        }
    }
    out.coords.clear();
    out.coords.extend_from_slice(&row.a);
    out.tail.clear();
    for ((&d, &b), &e) in col.delta.iter().zip(&col.b).zip(eps) {
        let a_d = i64::from(row.a[d as usize]);
        out.coords[d as usize] = reduce(i64::from(b) - i64::from(e) * gap, q);
        out.tail.push(reduce(a_d - i64::from(b) - 1, q));
    }
    true
}

/// The symbol vector at `(row, col)`, or `None` for a star.
pub fn entry(p: &ConstructionParams, row: &RowIndex, col: &ColIndex) -> Option<SymbolVector> {
    let mut out = SymbolVector::default();
    fill_entry(p, row, col, &mut out).then_some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vectors_vary_first_coordinate_fastest() {
        assert_eq!(
            vectors(2, 3)[..4],
            [vec![0, 0], vec![1, 0], vec![2, 0], vec![0, 1]]
        );
        assert_eq!(vectors(0, 5), vec![Vec::<u32>::new()]);
        assert_eq!(vectors(3, 2).len(), 8);
    }

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(
            combinations(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(combinations(3, 1).len(), 3);
    }

    #[test]
    fn encoding_is_dense_and_injective() {
        let (q, z) = (3u32, 1u32);
        let mut seen = std::collections::HashSet::new();
        for coords in vectors(2, q) {
            for tail in vectors(1, q - z) {
                let v = SymbolVector {
                    coords: coords.clone(),
                    tail,
                }
                .encode(q, z);
                assert!(v < 18);
                assert!(seen.insert(v));
            }
        }
        assert_eq!(seen.len(), 18);
        // Most significant coordinate first.
        let v = SymbolVector {
            coords: vec![1, 0],
            tail: vec![0],
        }
        .encode(q, z);
        assert_eq!(v, 6);
    }

    #[test]
    fn worked_entries_for_q3_z2_m2() {
        // Labels and vectors of the vector-form table for (q, z, m, t) = (3, 2, 2, 1).
        let p = ConstructionParams::new(3, 2, 2, 1);
        let row = |a0, a1, e| RowIndex {
            a: vec![a0, a1],
            eps: vec![e],
        };
        let col = |b, d| ColIndex {
            b: vec![b],
            delta: vec![d],
            eps: vec![],
        };
        let sv = |c0, c1, t| {
            Some(SymbolVector {
                coords: vec![c0, c1],
                tail: vec![t],
            })
        };
        assert_eq!(entry(&p, &row(0, 0, 0), &col(0, 0)), None);
        assert_eq!(entry(&p, &row(0, 0, 0), &col(2, 0)), sv(2, 0, 0));
        assert_eq!(entry(&p, &row(1, 0, 0), &col(0, 0)), sv(0, 0, 0));
        assert_eq!(entry(&p, &row(0, 0, 1), &col(2, 0)), sv(1, 0, 0));
        assert_eq!(entry(&p, &row(2, 2, 1), &col(1, 1)), sv(2, 0, 0));
        // Sum block column (b, m).
        assert_eq!(entry(&p, &row(0, 0, 0), &col(1, 2)), sv(0, 0, 0));
        assert_eq!(entry(&p, &row(0, 0, 0), &col(0, 2)), None);
        assert_eq!(entry(&p, &row(0, 0, 1), &col(0, 2)), sv(0, 0, 0));
    }

    #[test]
    fn extended_columns_carry_eps() {
        let p = ConstructionParams::new(3, 2, 2, 1);
        let cols = col_indices(Family::ExtGeneral, &p).unwrap();
        assert_eq!(cols.len(), 12);
        assert_eq!(
            cols[3],
            ColIndex {
                b: vec![0],
                delta: vec![0],
                eps: vec![1]
            }
        );
        let rows = row_indices(Family::ExtGeneral, &p).unwrap();
        assert_eq!(rows.len(), 9);
        let r = RowIndex {
            a: vec![2, 0],
            eps: vec![],
        };
        let c = ColIndex {
            b: vec![1],
            delta: vec![0],
            eps: vec![1],
        };
        assert_eq!(
            entry(&p, &r, &c),
            Some(SymbolVector {
                coords: vec![0, 0],
                tail: vec![0]
            })
        );
    }
}
