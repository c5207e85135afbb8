//! Row reduction and null spaces over `Z_p`.

use super::field::PrimeField;

/// Reduced row-echelon form of `rows` (all of length `ncols`). Zero rows are dropped.
/// Returns the reduced rows and their pivot columns.
pub fn rref(field: PrimeField, rows: &[Vec<u32>], ncols: usize) -> (Vec<Vec<u32>>, Vec<usize>) {
    let mut m: Vec<Vec<u32>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(pr) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = field.inv(m[r][c]).expect("nonzero pivot");
        for v in m[r].iter_mut() {
            *v = field.mul(*v, inv);
        }
        for i in 0..m.len() {
            if i == r || m[i][c] == 0 {
                continue;
            }
            let f = m[i][c];
            let pivot_row = m[r].clone();
            for (x, &y) in m[i].iter_mut().zip(&pivot_row) {
                *x = field.sub(*x, field.mul(f, y));
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

/// Basis of `{v : M v = 0}` for the matrix whose rows are `rows`.
pub fn null_space(field: PrimeField, rows: &[Vec<u32>], ncols: usize) -> Vec<Vec<u32>> {
    let (red, pivots) = rref(field, rows, ncols);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![0u32; ncols];
            v[free] = 1;
            for (row, &pc) in red.iter().zip(&pivots) {
                v[pc] = field.neg(row[free]);
            }
            v
        })
        .collect()
}

/// Whether `v` lies in the row space of the reduced basis `red` with pivots `pivots`.
pub fn in_row_space(field: PrimeField, red: &[Vec<u32>], pivots: &[usize], v: &[u32]) -> bool {
    let mut w = v.to_vec();
    for (row, &pc) in red.iter().zip(pivots) {
        let f = w[pc];
        if f != 0 {
            for (x, &y) in w.iter_mut().zip(row) {
                *x = field.sub(*x, field.mul(f, y));
            }
        }
    }
    w.iter().all(|&x| x == 0)
}
