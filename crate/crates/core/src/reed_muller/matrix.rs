//! Dense GF(2) matrices over [`BitWord`] rows.

use std::sync::OnceLock;

use crate::bitword::BitWord;
use crate::error::{param, Result};

/// Reduced row-echelon form of a matrix together with the row operations
/// that produced it.
#[derive(Debug, Clone)]
pub struct Echelon {
    /// Nonzero rows of the reduced form; row `i` has its leading 1 at `pivots[i]`.
    pub rows: Vec<BitWord>,
    pub pivots: Vec<usize>,
    /// `combos[i]` lists which original rows sum to `rows[i]`.
    pub combos: Vec<BitWord>,
}

#[derive(Debug, Clone)]
pub struct Gf2Matrix {
    rows: Vec<BitWord>,
    cols: usize,
    echelon: OnceLock<Echelon>,
}

impl PartialEq for Gf2Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.cols == other.cols && self.rows == other.rows
    }
}

impl Eq for Gf2Matrix {}

impl Gf2Matrix {
    pub fn new(rows: Vec<BitWord>, cols: usize) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return param(format!(
                "row of length {} in a {cols}-column matrix",
                r.len()
            ));
        }
        Ok(Gf2Matrix {
            rows,
            cols,
            echelon: OnceLock::new(),
        })
    }

    pub fn from_rows(rows: Vec<BitWord>) -> Result<Self> {
        let cols = rows.first().map_or(0, BitWord::len);
        Self::new(rows, cols)
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n).map(|i| BitWord::from_fn(n, |j| i == j)).collect();
        Gf2Matrix::new(rows, n).unwrap()
    }

    pub fn rows(&self) -> &[BitWord] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &BitWord {
        &self.rows[i]
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    /// Column `j` as a word of length `nrows`.
    pub fn column(&self, j: usize) -> BitWord {
        BitWord::from_bits(self.rows.iter().map(|r| r.get(j)))
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let rows = (0..self.cols).map(|j| self.column(j)).collect();
        Gf2Matrix::new(rows, self.nrows()).unwrap()
    }

    /// Matrix with the rows of `self` followed by the rows of `other`.
    pub fn stack(&self, other: &Gf2Matrix) -> Result<Gf2Matrix> {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Gf2Matrix::new(rows, self.cols)
    }

    pub fn echelon(&self) -> &Echelon {
        self.echelon.get_or_init(|| reduce(&self.rows, self.cols))
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    pub fn pivot_columns(&self) -> &[usize] {
        &self.echelon().pivots
    }

    /// Coefficients `x` (one per row) with `sum_i x_i * row_i = target`, if any.
    pub fn solve(&self, target: &BitWord) -> Option<BitWord> {
        assert_eq!(target.len(), self.cols, "target length mismatch");
        let ech = self.echelon();
        let mut rest = target.clone();
        let mut x = BitWord::zeros(self.nrows());
        for ((row, &p), combo) in ech.rows.iter().zip(&ech.pivots).zip(&ech.combos) {
            if rest.get(p) {
                rest ^= row;
                x ^= combo;
            }
        }
        rest.is_zero().then_some(x)
    }

    pub fn in_row_space(&self, target: &BitWord) -> bool {
        self.solve(target).is_some()
    }

    /// `sum_i coeffs_i * row_i`.
    pub fn combine(&self, coeffs: &BitWord) -> BitWord {
        assert_eq!(coeffs.len(), self.nrows(), "coefficient length mismatch");
        let mut out = BitWord::zeros(self.cols);
        for (i, row) in self.rows.iter().enumerate() {
            if coeffs.get(i) {
                out ^= row;
            }
        }
        out
    }
}

fn reduce(rows: &[BitWord], cols: usize) -> Echelon {
    let n = rows.len();
    let mut work: Vec<(BitWord, BitWord)> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| (r.clone(), BitWord::from_fn(n, |j| i == j)))
        .collect();
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..cols {
        if next == n {
            break;
        }
        let Some(p) = (next..n).find(|&i| work[i].0.get(col)) else {
            continue;
        };
        work.swap(next, p);
        let (pivot_row, pivot_combo) = work[next].clone();
        for (i, (row, combo)) in work.iter_mut().enumerate() {
            if i != next && row.get(col) {
                *row ^= &pivot_row;
                *combo ^= &pivot_combo;
            }
        }
        pivots.push(col);
        next += 1;
    }
    work.truncate(next);
    let (rows, combos) = work.into_iter().unzip();
    Echelon {
        rows,
        pivots,
        combos,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&str]) -> Gf2Matrix {
        Gf2Matrix::from_rows(rows.iter().map(|r| r.parse().unwrap()).collect()).unwrap()
    }

    #[test]
    fn identity_rank() {
        assert_eq!(Gf2Matrix::identity(3).rank(), 3);
    }

    #[test]
    fn duplicate_rows_do_not_add_rank() {
        let a = m(&["1100", "0110", "1100", "1010"]);
        // 1010 = 1100 + 0110
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn solve_finds_combination() {
        let a = m(&["11110000", "11001100", "10101010"]);
        let target: BitWord = "01011010".parse().unwrap();
        let x = a.solve(&target).unwrap();
        assert_eq!(a.combine(&x), target);
        assert!(a.solve(&"10000000".parse().unwrap()).is_none());
    }

    #[test]
    fn rejects_ragged_rows() {
        let rows = vec!["101".parse().unwrap(), "10".parse().unwrap()];
        assert!(Gf2Matrix::from_rows(rows).is_err());
    }

    #[test]
    fn transpose_twice_is_identity() {
        let a = m(&["1101", "0111", "1000"]);
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.transpose().rank(), a.rank());
    }
}
