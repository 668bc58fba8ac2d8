//! Integer matrices and the Smith normal form.

use std::fmt;

use num_integer::Integer;
use num_traits::Signed;

/// Scalars the integer linear algebra runs over (`BigInt`, `i64`, …).
pub trait IntScalar: Integer + Signed + Clone + fmt::Debug + fmt::Display {}

impl<T: Integer + Signed + Clone + fmt::Debug + fmt::Display> IntScalar for T {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<T>>,
}

impl<T: IntScalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![vec![T::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = T::one();
        }
        m
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows(data: Vec<Vec<T>>, cols: usize) -> Self {
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix {
            rows: data.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i][j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i]
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i][j] = out.data[i][j].clone() + a.clone() * other.data[k][j].clone();
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.rows, "dimension mismatch");
        (0..self.cols)
            .map(|j| {
                v.iter()
                    .zip(&self.data)
                    .fold(T::zero(), |acc, (a, row)| acc + a.clone() * row[j].clone())
            })
            .collect()
    }

    /// Determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> T {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        let mut m = self.data.clone();
        let mut sign = T::one();
        let mut prev = T::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return T::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone();
                    m[i][j] = v.div_floor(&prev);
                }
            }
            prev = m[k][k].clone();
        }
        sign * m[n - 1][n - 1].clone()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.data.swap(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for row in &mut self.data {
            row.swap(a, b);
        }
    }

    /// row_a += k · row_b
    fn add_row(&mut self, a: usize, b: usize, k: &T) {
        for j in 0..self.cols {
            let v = self.data[b][j].clone() * k.clone();
            self.data[a][j] = self.data[a][j].clone() + v;
        }
    }

    /// col_a += k · col_b
    fn add_col(&mut self, a: usize, b: usize, k: &T) {
        for row in &mut self.data {
            let v = row[b].clone() * k.clone();
            row[a] = row[a].clone() + v;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for x in &mut self.data[a] {
            *x = -x.clone();
        }
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.data[i][j].is_zero()))
    }
}

impl<T: IntScalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .data
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// `U·A·V = D` with `D` diagonal, `d_1 | d_2 | …`, `U` and `V` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf<T> {
    pub u: Matrix<T>,
    pub d: Matrix<T>,
    pub v: Matrix<T>,
}

impl<T: IntScalar> Snf<T> {
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d.data[i][i].clone()).collect()
    }

    /// Recomputes `U·A·V`, checks the divisibility chain and `|det| = 1`.
    pub fn verify(&self, a: &Matrix<T>) -> bool {
        if self.u.mul(a).mul(&self.v) != self.d || !self.d.is_diagonal() {
            return false;
        }
        let diag = self.diagonal();
        let chain = diag.windows(2).all(|w| {
            if w[0].is_zero() {
                w[1].is_zero()
            } else {
                w[1].is_multiple_of(&w[0])
            }
        });
        chain
            && diag.iter().all(|x| !x.is_negative())
            && self.u.det().abs().is_one()
            && self.v.det().abs().is_one()
    }
}

/// Smith normal form. The result is verified before it is returned.
pub fn snf<T: IntScalar>(a: &Matrix<T>) -> Snf<T> {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = Matrix::identity(m);
    let mut v = Matrix::identity(n);
    for t in 0..m.min(n) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = &d.data[i][j];
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < d.data[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            if pi != t {
                d.swap_rows(t, pi);
                u.swap_rows(t, pi);
            }
            if pj != t {
                d.swap_cols(t, pj);
                v.swap_cols(t, pj);
            }
            let p = d.data[t][t].clone();
            let mut dirty = false;
            for i in t + 1..m {
                let q = d.data[i][t].div_floor(&p);
                if !q.is_zero() {
                    d.add_row(i, t, &-q.clone());
                    u.add_row(i, t, &-q);
                }
                dirty |= !d.data[i][t].is_zero();
            }
            for j in t + 1..n {
                let q = d.data[t][j].div_floor(&p);
                if !q.is_zero() {
                    d.add_col(j, t, &-q.clone());
                    v.add_col(j, t, &-q);
                }
                dirty |= !d.data[t][j].is_zero();
            }
            if dirty {
                continue;
            }
            // pivot must divide the rest of the block
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d.data[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    d.add_row(t, i, &T::one());
                    u.add_row(t, i, &T::one());
                }
                None => break,
            }
        }
        if d.data[t][t].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    let out = Snf { u, d, v };
    assert!(out.verify(a), "Smith normal form failed verification");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn mat(rows: &[&[i64]]) -> Matrix<BigInt> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
            cols,
        )
    }

    #[test]
    fn two_and_three() {
        let s = snf(&mat(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn identity_and_zero() {
        let i = mat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(snf(&i).d, i);
        let z = mat(&[&[0]]);
        assert_eq!(snf(&z).d, z);
    }

    #[test]
    fn rectangular_with_i64() {
        let a: Matrix<i64> = Matrix::from_rows(vec![vec![4, 6, 8], vec![6, 9, 12]], 3);
        let s = snf(&a);
        assert_eq!(s.diagonal(), vec![1, 0]);
        assert!(s.verify(&a));
    }

    #[test]
    fn bareiss_determinant() {
        assert_eq!(mat(&[&[2, 1], &[7, 4]]).det(), BigInt::from(1));
        assert_eq!(mat(&[&[0, 1, 2], &[3, 4, 5], &[6, 7, 9]]).det(), BigInt::from(-3));
    }
}
