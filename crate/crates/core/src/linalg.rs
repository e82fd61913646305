//! Small dense integer and rational matrix helpers.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type IntMatrix = Vec<Vec<i64>>;

pub fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn transpose(m: &IntMatrix) -> IntMatrix {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|row| row[j]).collect()).collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    a.iter()
        .map(|row| {
            (0..b[0].len())
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * brow[j]).sum())
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &IntMatrix, v: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

/// Fraction-free (Bareiss) determinant.
pub fn det_i64(m: &IntMatrix) -> i64 {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

/// Rank of a set of integer vectors over Q.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    echelon(m).len()
}

/// Nonzero rows of a reduced row-echelon form.
fn echelon(mut m: Vec<Vec<BigRational>>) -> Vec<Vec<BigRational>> {
    if m.is_empty() {
        return m;
    }
    let cols = m[0].len();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(p, row);
        let inv = BigRational::one() / &m[row][col];
        for x in m[row].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                let pivot_row = m[row].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= p * &f;
                }
            }
        }
        row += 1;
        if row == m.len() {
            break;
        }
    }
    m.truncate(row);
    m
}

/// True when `v` lies in the rational span of `basis`.
pub fn in_span(basis: &[Vec<i64>], v: &[i64]) -> bool {
    let r = rank(basis);
    let mut ext = basis.to_vec();
    ext.push(v.to_vec());
    rank(&ext) == r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant() {
        assert_eq!(det_i64(&vec![vec![2, -1], vec![-3, 2]]), 1);
        assert_eq!(det_i64(&vec![vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(det_i64(&vec![vec![1, 2], vec![2, 4]]), 0);
    }

    #[test]
    fn spans() {
        let b = vec![vec![1, 1, 0]];
        assert!(in_span(&b, &[2, 2, 0]));
        assert!(!in_span(&b, &[1, 0, 0]));
        assert_eq!(rank(&[vec![1, 0], vec![0, 1], vec![1, 1]]), 2);
        assert_eq!(rank(&[]), 0);
    }
}
