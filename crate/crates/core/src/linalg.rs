//! Dense linear algebra over the rationals by exact Gauss–Jordan elimination.

use num_traits::{One, Zero};

use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Rational>>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![vec![Rational::zero(); cols]; rows],
        }
    }

    pub fn from_rows(data: Vec<Vec<Rational>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r][c] = v;
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    fn rref(&mut self, limit_cols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..limit_cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.data[r][col].is_zero()) else {
                continue;
            };
            self.data.swap(row, p);
            let inv = Rational::one() / &self.data[row][col];
            for v in &mut self.data[row] {
                *v *= &inv;
            }
            let pivot_row = self.data[row].clone();
            for r in 0..self.rows {
                if r == row || self.data[r][col].is_zero() {
                    continue;
                }
                let factor = self.data[r][col].clone();
                for (v, pv) in self.data[r].iter_mut().zip(&pivot_row) {
                    *v -= &factor * pv;
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref(self.cols).len()
    }

    /// A nonzero vector `x` with `A x = 0`, if the kernel is nontrivial.
    pub fn kernel_vector(&self) -> Option<Vec<Rational>> {
        let mut m = self.clone();
        let pivots = m.rref(self.cols);
        let free = (0..self.cols).find(|c| !pivots.contains(c))?;
        let mut x = vec![Rational::zero(); self.cols];
        x[free] = Rational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = -m.data[r][free].clone();
        }
        Some(x)
    }

    /// Solves `A x = b_j` for every right-hand side column; `None` when any
    /// system is inconsistent. Free variables are set to zero.
    pub fn solve_many(&self, rhs: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
        let mut aug = self.clone();
        for (r, row) in aug.data.iter_mut().enumerate() {
            row.extend(rhs.iter().map(|b| b[r].clone()));
        }
        aug.cols += rhs.len();
        let pivots = aug.rref(self.cols);
        // rows past the pivots must have a zero right-hand side
        for r in pivots.len()..self.rows {
            if aug.data[r][self.cols..].iter().any(|v| !v.is_zero()) {
                return None;
            }
        }
        Some(
            (0..rhs.len())
                .map(|j| {
                    let mut x = vec![Rational::zero(); self.cols];
                    for (r, &pc) in pivots.iter().enumerate() {
                        x[pc] = aug.data[r][self.cols + j].clone();
                    }
                    x
                })
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn mat(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
    }

    fn mul(a: &Matrix, x: &[Rational]) -> Vec<Rational> {
        (0..a.rows())
            .map(|r| (0..a.cols()).map(|c| a.get(r, c) * &x[c]).sum())
            .collect()
    }

    #[test]
    fn rank_and_kernel() {
        let a = mat(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel_vector().unwrap();
        assert!(mul(&a, &k).iter().all(Zero::is_zero));
        assert!(k.iter().any(|v| !v.is_zero()));
        assert!(mat(&[&[1, 0], &[0, 1]]).kernel_vector().is_none());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = mat(&[&[1, 1], &[1, -1], &[2, 0]]);
        let b = vec![int(3), int(1), int(4)];
        let x = a.solve_many(std::slice::from_ref(&b)).unwrap().remove(0);
        assert_eq!(mul(&a, &x), b);
        assert!(a.solve_many(&[vec![int(3), int(1), int(5)]]).is_none());
    }
}
