//! Exact solvability of `A x = c` over `Z` and `Z/2` for sparse integer matrices.
//!
//! Elimination first pivots on `±1` entries, which are unimodular row
//! operations and so preserve integer solvability. Whatever is left has no
//! unit entries and goes through a dense column-Hermite reduction over
//! `BigInt`. Every witness is checked by multiplication before it is returned.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Ring {
    Integers,
    Mod2,
}

/// Column-major sparse integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    pub rows: usize,
    pub columns: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> SparseMatrix {
        SparseMatrix { rows, columns: vec![Vec::new(); cols] }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> SparseMatrix {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = SparseMatrix::new(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                if v != 0 {
                    m.columns[j].push((i, v));
                }
            }
        }
        m
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn push(&mut self, row: usize, col: usize, value: i64) {
        if value != 0 {
            self.columns[col].push((row, value));
        }
    }

    /// `A x`, or `None` on overflow.
    pub fn mul_vec(&self, x: &[i64]) -> Option<Vec<i64>> {
        let mut out = vec![0i64; self.rows];
        for (col, &xj) in self.columns.iter().zip(x) {
            if xj == 0 {
                continue;
            }
            for &(i, a) in col {
                out[i] = out[i].checked_add(a.checked_mul(xj)?)?;
            }
        }
        Some(out)
    }
}

/// An inconsistent row of the reduced system: its right-hand side is not a
/// multiple of `divisor` (zero for an all-zero row).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Refutation {
    pub row: usize,
    pub divisor: i64,
    pub residual: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Witness(Vec<i64>),
    Refutation(Refutation),
}

impl Solution {
    pub fn is_witness(&self) -> bool {
        matches!(self, Solution::Witness(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("right-hand side has {got} entries, matrix has {rows} rows")]
    DimensionMismatch { rows: usize, got: usize },
    #[error("integer overflow during elimination")]
    Overflow,
    #[error("internal error: witness failed verification")]
    Unverified,
}

fn reduce(v: i64, ring: Ring) -> i64 {
    match ring {
        Ring::Integers => v,
        Ring::Mod2 => v.rem_euclid(2),
    }
}

struct Pivot {
    col: usize,
    entries: Vec<(usize, i64)>,
    rhs: i64,
    unit: i64,
}

pub fn solve_integer_system(a: &SparseMatrix, c: &[i64], ring: Ring) -> Result<Solution, SolveError> {
    if c.len() != a.rows {
        return Err(SolveError::DimensionMismatch { rows: a.rows, got: c.len() });
    }
    let mut rows: Vec<BTreeMap<usize, i64>> = vec![BTreeMap::new(); a.rows];
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); a.cols()];
    for (j, col) in a.columns.iter().enumerate() {
        for &(i, v) in col {
            let e = rows[i].entry(j).or_insert(0);
            *e = reduce(e.checked_add(v).ok_or(SolveError::Overflow)?, ring);
        }
    }
    for (i, r) in rows.iter_mut().enumerate() {
        r.retain(|_, v| *v != 0);
        for &j in r.keys() {
            col_rows[j].insert(i);
        }
    }
    let mut rhs: Vec<i64> = c.iter().map(|&v| reduce(v, ring)).collect();
    let mut active = vec![true; a.rows];
    let mut version = vec![0u64; a.rows];
    let mut heap: BinaryHeap<Reverse<(usize, usize, u64)>> =
        rows.iter().enumerate().map(|(i, r)| Reverse((r.len(), i, 0))).collect();
    let mut pivots: Vec<Pivot> = Vec::new();

    while let Some(Reverse((_, i, ver))) = heap.pop() {
        if !active[i] || ver != version[i] || rows[i].is_empty() {
            continue;
        }
        let Some(j) = rows[i]
            .iter()
            .filter(|(_, v)| v.abs() == 1)
            .map(|(&j, _)| j)
            .min_by_key(|&j| (col_rows[j].len(), j))
        else {
            continue;
        };
        let unit = rows[i][&j];
        let pivot_row: Vec<(usize, i64)> = rows[i].iter().map(|(&k, &v)| (k, v)).collect();
        let pivot_rhs = rhs[i];
        let targets: Vec<usize> = col_rows[j].iter().copied().filter(|&r| r != i).collect();
        for r in targets {
            let factor = rows[r][&j].checked_mul(unit).ok_or(SolveError::Overflow)?;
            for &(k, v) in &pivot_row {
                let delta = factor.checked_mul(v).ok_or(SolveError::Overflow)?;
                let entry = rows[r].entry(k).or_insert(0);
                *entry = reduce(entry.checked_sub(delta).ok_or(SolveError::Overflow)?, ring);
                if *entry == 0 {
                    rows[r].remove(&k);
                    col_rows[k].remove(&r);
                } else {
                    col_rows[k].insert(r);
                }
            }
            let delta = factor.checked_mul(pivot_rhs).ok_or(SolveError::Overflow)?;
            rhs[r] = reduce(rhs[r].checked_sub(delta).ok_or(SolveError::Overflow)?, ring);
            version[r] += 1;
            heap.push(Reverse((rows[r].len(), r, version[r])));
        }
        for &(k, _) in &pivot_row {
            col_rows[k].remove(&i);
        }
        active[i] = false;
        pivots.push(Pivot { col: j, entries: pivot_row, rhs: pivot_rhs, unit });
    }

    let mut x = vec![0i64; a.cols()];
    let mut dense_rows = Vec::new();
    for i in (0..a.rows).filter(|&i| active[i]) {
        if rows[i].is_empty() {
            if rhs[i] != 0 {
                return Ok(Solution::Refutation(Refutation {
                    row: i,
                    divisor: 0,
                    residual: rhs[i].to_string(),
                }));
            }
        } else {
            dense_rows.push(i);
        }
    }
    if !dense_rows.is_empty() {
        // over Z/2 every nonzero entry is a unit, so this only runs over Z
        debug_assert_eq!(ring, Ring::Integers);
        let dense_cols: Vec<usize> = dense_rows
            .iter()
            .flat_map(|&i| rows[i].keys().copied())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let matrix: Vec<Vec<BigInt>> = dense_rows
            .iter()
            .map(|&i| dense_cols.iter().map(|j| BigInt::from(*rows[i].get(j).unwrap_or(&0))).collect())
            .collect();
        let b: Vec<BigInt> = dense_rows.iter().map(|&i| BigInt::from(rhs[i])).collect();
        match dense_solve(matrix, b) {
            Ok(y) => {
                for (&j, v) in dense_cols.iter().zip(y) {
                    x[j] = v.to_i64().ok_or(SolveError::Overflow)?;
                }
            }
            Err((local, divisor, residual)) => {
                return Ok(Solution::Refutation(Refutation {
                    row: dense_rows[local],
                    divisor: divisor.to_i64().ok_or(SolveError::Overflow)?,
                    residual: residual.to_string(),
                }));
            }
        }
    }

    for p in pivots.iter().rev() {
        let mut acc = p.rhs;
        for &(k, v) in &p.entries {
            if k != p.col {
                acc = acc
                    .checked_sub(v.checked_mul(x[k]).ok_or(SolveError::Overflow)?)
                    .ok_or(SolveError::Overflow)?;
            }
        }
        x[p.col] = reduce(acc.checked_mul(p.unit).ok_or(SolveError::Overflow)?, ring);
    }

    let ax = a.mul_vec(&x).ok_or(SolveError::Overflow)?;
    let ok = ax.iter().zip(c).all(|(&l, &r)| reduce(l - r, ring) == 0);
    if !ok {
        return Err(SolveError::Unverified);
    }
    Ok(Solution::Witness(x))
}

/// Column-Hermite solve of a small dense system. On failure returns the local
/// row index, its pivot (zero when the row has none) and the residual.
fn dense_solve(mut m: Vec<Vec<BigInt>>, b: Vec<BigInt>) -> Result<Vec<BigInt>, (usize, BigInt, BigInt)> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut v: Vec<Vec<BigInt>> = (0..cols)
        .map(|i| (0..cols).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut pivot_of_row: Vec<Option<usize>> = vec![None; rows];
    let mut k = 0;
    for r in 0..rows {
        if k == cols {
            break;
        }
        for j in k + 1..cols {
            if m[r][j].is_zero() {
                continue;
            }
            if m[r][k].is_zero() {
                swap_cols(&mut m, &mut v, k, j);
                continue;
            }
            let (a, bb) = (m[r][k].clone(), m[r][j].clone());
            let eg = a.extended_gcd(&bb);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let p = -(&bb / &g);
            let q = &a / &g;
            combine_cols(&mut m, &mut v, k, j, [&s, &t, &p, &q]);
        }
        if !m[r][k].is_zero() {
            pivot_of_row[r] = Some(k);
            k += 1;
        }
    }
    let mut y = vec![BigInt::zero(); cols];
    for r in 0..rows {
        let mut residual = b[r].clone();
        for (p, yp) in y.iter().enumerate().take(k) {
            if !yp.is_zero() && !m[r][p].is_zero() {
                residual -= &m[r][p] * yp;
            }
        }
        match pivot_of_row[r] {
            Some(p) => {
                let (q, rem) = residual.div_rem(&m[r][p]);
                if !rem.is_zero() {
                    return Err((r, m[r][p].abs(), residual));
                }
                y[p] = q;
            }
            None => {
                if !residual.is_zero() {
                    return Err((r, BigInt::zero(), residual));
                }
            }
        }
    }
    Ok((0..cols)
        .map(|i| v[i].iter().zip(&y).fold(BigInt::zero(), |acc, (vij, yj)| acc + vij * yj))
        .collect())
}

fn swap_cols(m: &mut [Vec<BigInt>], v: &mut [Vec<BigInt>], a: usize, b: usize) {
    for row in m.iter_mut().chain(v.iter_mut()) {
        row.swap(a, b);
    }
}

/// `(col_k, col_j) <- (s col_k + t col_j, p col_k + q col_j)` with `sq - tp = 1`.
fn combine_cols(m: &mut [Vec<BigInt>], v: &mut [Vec<BigInt>], k: usize, j: usize, [s, t, p, q]: [&BigInt; 4]) {
    for row in m.iter_mut().chain(v.iter_mut()) {
        let (ck, cj) = (row[k].clone(), row[j].clone());
        row[k] = s * &ck + t * &cj;
        row[j] = p * &ck + q * &cj;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve(rows: &[Vec<i64>], c: &[i64], ring: Ring) -> Solution {
        solve_integer_system(&SparseMatrix::from_dense(rows), c, ring).unwrap()
    }

    #[test]
    fn identity_returns_rhs() {
        let a = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert_eq!(solve(&a, &[4, -7, 2], Ring::Integers), Solution::Witness(vec![4, -7, 2]));
    }

    #[test]
    fn parity_refutes() {
        assert!(!solve(&[vec![2]], &[1], Ring::Integers).is_witness());
        assert!(!solve(&[vec![2]], &[1], Ring::Mod2).is_witness());
        assert!(solve(&[vec![2]], &[4], Ring::Integers).is_witness());
    }

    #[test]
    fn diagonal_solve() {
        let a = vec![vec![1, 0], vec![0, 3]];
        assert_eq!(solve(&a, &[5, 6], Ring::Integers), Solution::Witness(vec![5, 2]));
        match solve(&a, &[5, 7], Ring::Integers) {
            Solution::Refutation(r) => {
                assert_eq!((r.row, r.divisor), (1, 3));
            }
            s => panic!("expected refutation, got {s:?}"),
        }
    }

    #[test]
    fn needs_column_operations() {
        // 2x + 3y = 1 has no solution with y = 0
        assert!(solve(&[vec![2, 3]], &[1], Ring::Integers).is_witness());
        assert!(!solve(&[vec![4, 6]], &[1], Ring::Integers).is_witness());
        assert!(solve(&[vec![4, 6], vec![2, 2]], &[2, 2], Ring::Integers).is_witness());
    }

    #[test]
    fn mod2_solves_what_z_cannot() {
        assert!(!solve(&[vec![3]], &[1], Ring::Integers).is_witness());
        assert!(solve(&[vec![3]], &[1], Ring::Mod2).is_witness());
        // rows agree mod 2 but the right-hand sides do not
        let a = vec![vec![1, 1], vec![1, -1]];
        assert!(!solve(&a, &[1, 0], Ring::Integers).is_witness());
        assert!(!solve(&a, &[1, 0], Ring::Mod2).is_witness());
    }

    #[test]
    fn inconsistent_zero_row() {
        let a = vec![vec![1, 1], vec![1, 1]];
        match solve(&a, &[1, 2], Ring::Integers) {
            Solution::Refutation(r) => assert_eq!(r.divisor, 0),
            s => panic!("expected refutation, got {s:?}"),
        }
    }

    #[test]
    fn dimension_mismatch() {
        let a = SparseMatrix::from_dense(&[vec![1]]);
        assert!(matches!(
            solve_integer_system(&a, &[1, 2], Ring::Integers),
            Err(SolveError::DimensionMismatch { .. })
        ));
    }
}
