//! The MN PDA: rows are the `tt`-subsets of users, and the cell of row `T`
//! and user `k` is a star if `k` is in `T`, otherwise the symbol naming the
//! `(tt+1)`-subset `T + {k}`.

use num_bigint::BigUint;
use num_integer::binomial;

use super::{check_cap, ConstructionError, DEFAULT_MAX_CELLS};
use crate::pda::{PdaArray, PdaCell, PdaParams};

/// `(K, F, Z, S) = (K, C(K,tt), C(K-1,tt-1), C(K,tt+1))`.
pub fn mn_params(k: usize, tt: usize) -> Result<PdaParams, ConstructionError> {
    check_domain(k, tt)?;
    let kb = BigUint::from(k);
    let ttb = BigUint::from(tt);
    Ok(PdaParams {
        f: binomial(kb.clone(), ttb.clone()),
        z: binomial(&kb - 1u32, &ttb - 1u32),
        s: binomial(kb.clone(), ttb + 1u32),
        k: kb,
    })
}

fn check_domain(k: usize, tt: usize) -> Result<(), ConstructionError> {
    if k < 2 || tt < 1 || tt >= k {
        return Err(ConstructionError::Domain(format!(
            "1 <= t <= K - 1 (got K = {k}, t = {tt})"
        )));
    }
    Ok(())
}

/// Builds the MN PDA for `k` users with `tt = K M / N`.
pub fn construct_mn(k: usize, tt: usize) -> Result<PdaArray, ConstructionError> {
    construct_mn_with_cap(k, tt, DEFAULT_MAX_CELLS)
}

pub fn construct_mn_with_cap(
    k: usize,
    tt: usize,
    max_cells: u64,
) -> Result<PdaArray, ConstructionError> {
    let params = mn_params(k, tt)?;
    check_cap(&params.f * &params.k, max_cells)?;
    let ranks = RankTable::new(k, tt + 1);
    let mut cells = Vec::new();
    let mut rows = 0;
    let mut subset: Vec<usize> = (0..tt).collect();
    let mut scratch = Vec::with_capacity(tt + 1);
    loop {
        rows += 1;
        for user in 0..k {
            if subset.contains(&user) {
                cells.push(PdaCell::Star);
                continue;
            }
            scratch.clear();
            scratch.extend_from_slice(&subset);
            let pos = scratch.partition_point(|&x| x < user);
            scratch.insert(pos, user);
            let s = ranks.rank(&scratch) + 1;
            cells.push(PdaCell::symbol(s as u32).expect("ranks start at 1"));
        }
        if !next_subset(&mut subset, k) {
            break;
        }
    }
    Ok(PdaArray::new(rows, k, cells).expect("at least one subset"))
}

/// Advances to the next increasing subset in lexicographic order.
fn next_subset(subset: &mut [usize], n: usize) -> bool {
    let r = subset.len();
    let Some(i) = (0..r).rev().find(|&i| subset[i] < n - r + i) else {
        return false;
    };
    subset[i] += 1;
    for j in i + 1..r {
        subset[j] = subset[j - 1] + 1;
    }
    true
}

/// Lexicographic rank of `r`-subsets of `[0, n)`.
struct RankTable {
    n: usize,
    r: usize,
    choose: Vec<Vec<u64>>,
}

impl RankTable {
    fn new(n: usize, r: usize) -> Self {
        let mut choose = vec![vec![0u64; r + 1]; n + 1];
        for row in choose.iter_mut() {
            row[0] = 1;
        }
        for i in 1..=n {
            for j in 1..=r {
                choose[i][j] = choose[i - 1][j - 1].saturating_add(choose[i - 1][j]);
            }
        }
        RankTable { n, r, choose }
    }

    fn rank(&self, subset: &[usize]) -> u64 {
        debug_assert_eq!(subset.len(), self.r);
        let mut rank = 0;
        let mut prev = 0;
        for (i, &c) in subset.iter().enumerate() {
            let remaining = self.r - 1 - i;
            for v in prev..c {
                rank += self.choose[self.n - 1 - v][remaining];
            }
            prev = c + 1;
        }
        rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pda::{params_of, verify_pda};

    #[test]
    fn smallest_mn_pda() {
        let a = construct_mn(2, 1).unwrap();
        assert_eq!(a, PdaArray::from_grid_str("* 1\n1 *").unwrap());
        assert_eq!(
            params_of(&a).unwrap(),
            PdaParams::new(2u32, 2u32, 1u32, 1u32)
        );
    }

    #[test]
    fn k4_t2_is_the_six_row_example() {
        let a = construct_mn(4, 2).unwrap();
        let expected =
            PdaArray::from_grid_str("* * 1 2\n* 1 * 3\n* 2 3 *\n1 * * 4\n2 * 4 *\n3 4 * *")
                .unwrap();
        assert_eq!(a, expected);
    }

    #[test]
    fn k5_t2_counts() {
        let a = construct_mn(5, 2).unwrap();
        assert!(verify_pda(&a).valid);
        let p = params_of(&a).unwrap();
        assert_eq!(p, PdaParams::new(5u32, 10u32, 4u32, 10u32));
        assert_eq!(p, mn_params(5, 2).unwrap());
        assert_eq!(p.rate(), num_rational::BigRational::from_integer(1.into()));
    }

    #[test]
    fn rank_matches_enumeration_order() {
        let (n, r) = (7, 3);
        let table = RankTable::new(n, r);
        let mut subset: Vec<usize> = (0..r).collect();
        let mut expected = 0;
        loop {
            assert_eq!(table.rank(&subset), expected);
            expected += 1;
            if !next_subset(&mut subset, n) {
                break;
            }
        }
        assert_eq!(expected, 35);
    }

    #[test]
    fn rejects_t_outside_range() {
        assert!(construct_mn(4, 0).is_err());
        assert!(construct_mn(4, 4).is_err());
        assert!(construct_mn(1, 1).is_err());
    }
}
