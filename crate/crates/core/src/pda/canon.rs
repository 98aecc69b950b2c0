use super::{PdaArray, PdaCell};

/// Renumbers symbols `1, 2, ...` by first appearance in row-major order.
/// The star pattern is unchanged and the operation is idempotent.
pub fn canonicalize(arr: &PdaArray) -> PdaArray {
    let mut relabel = vec![0u32; arr.max_symbol() as usize + 1];
    let mut next = 0u32;
    let cells = arr
        .cells()
        .iter()
        .map(|&c| match c.as_symbol() {
            None => PdaCell::Star,
            Some(s) => {
                let slot = &mut relabel[s as usize];
                if *slot == 0 {
                    next += 1;
                    *slot = next;
                }
                PdaCell::symbol(*slot).expect("relabeled symbols start at 1")
            }
        })
        .collect();
    PdaArray::new(arr.rows(), arr.cols(), cells).expect("shape is preserved")
}

/// True iff `a` and `b` have the same shape and star pattern and a bijection
/// between their symbol sets maps `a` onto `b` cell-wise.
pub fn equivalent(a: &PdaArray, b: &PdaArray) -> bool {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return false;
    }
    let mut forward = vec![0u32; a.max_symbol() as usize + 1];
    let mut backward = vec![0u32; b.max_symbol() as usize + 1];
    for (&x, &y) in a.cells().iter().zip(b.cells()) {
        match (x.as_symbol(), y.as_symbol()) {
            (None, None) => {}
            (Some(sx), Some(sy)) => {
                let f = &mut forward[sx as usize];
                let g = &mut backward[sy as usize];
                if (*f != 0 && *f != sy) || (*g != 0 && *g != sx) {
                    return false;
                }
                *f = sy;
                *g = sx;
            }
            _ => return false,
        }
    }
    true
}
