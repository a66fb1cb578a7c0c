//! Smith normal form over the integers with unimodular transforms, and an
//! exact Bareiss determinant.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Matrix = Vec<Vec<BigInt>>;

pub fn to_big(a: &[Vec<i64>]) -> Matrix {
    a.iter().map(|row| row.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// `left · A · right = diagonal`, with `diagonal[i] | diagonal[i+1]` over
/// the nonzero entries, all of them positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub left: Matrix,
    pub right: Matrix,
    pub rows: usize,
    pub cols: usize,
}

impl SmithForm {
    pub fn diagonal_matrix(&self) -> Matrix {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (i, x) in self.diagonal.iter().enumerate() {
            d[i][i] = x.clone();
        }
        d
    }

    pub fn verify(&self, a: &Matrix) -> bool {
        mul(&mul(&self.left, a), &self.right) == self.diagonal_matrix()
    }
}

fn swap_cols(m: &mut Matrix, i: usize, j: usize) {
    for row in m.iter_mut() {
        row.swap(i, j);
    }
}

/// row[target] -= q * row[source]
fn row_sub(m: &mut Matrix, target: usize, source: usize, q: &BigInt) {
    let src = m[source].clone();
    for (x, s) in m[target].iter_mut().zip(&src) {
        *x -= q * s;
    }
}

/// col[target] -= q * col[source]
fn col_sub(m: &mut Matrix, target: usize, source: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let s = row[source].clone();
        row[target] -= q * s;
    }
}

/// Smith normal form by smallest-entry pivoting and Euclidean reduction.
pub fn smith_normal_form(a: &Matrix) -> SmithForm {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m = a.clone();
    let mut left = identity(rows);
    let mut right = identity(cols);
    let mut rank = 0;

    'outer: for t in 0..rows.min(cols) {
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !m[i][j].is_zero()
                        && pivot.is_none_or(|(pi, pj)| m[i][j].abs() < m[pi][pj].abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break 'outer };
            m.swap(t, pi);
            left.swap(t, pi);
            swap_cols(&mut m, t, pj);
            swap_cols(&mut right, t, pj);

            let mut dirty = false;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = &m[i][t] / &m[t][t];
                row_sub(&mut m, i, t, &q);
                row_sub(&mut left, i, t, &q);
                dirty |= !m[i][t].is_zero();
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = &m[t][j] / &m[t][t];
                col_sub(&mut m, j, t, &q);
                col_sub(&mut right, j, t, &q);
                dirty |= !m[t][j].is_zero();
            }
            if dirty {
                continue;
            }
            // pivot must divide the whole remaining block
            let offending = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !(&m[i][j] % &m[t][t]).is_zero())
            });
            match offending {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_sub(&mut m, t, i, &minus_one);
                    row_sub(&mut left, t, i, &minus_one);
                }
                None => break,
            }
        }
        if m[t][t].is_negative() {
            for x in m[t].iter_mut() {
                *x = -&*x;
            }
            for x in left[t].iter_mut() {
                *x = -&*x;
            }
        }
        rank = t + 1;
    }

    SmithForm {
        diagonal: (0..rank).map(|i| m[i][i].clone()).collect(),
        left,
        right,
        rows,
        cols,
    }
}

/// Exact determinant by fraction-free Gaussian elimination.
pub fn determinant(a: &Matrix) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}
