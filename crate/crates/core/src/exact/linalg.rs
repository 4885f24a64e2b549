//! Exact rational linear algebra: row reduction and right-nullspace bases.

use num_traits::{One, Zero};

use super::rational::Rational;

/// Dense matrix as rows of rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    pub rows: Vec<Vec<Rational>>,
    pub cols: usize,
}

impl RatMatrix {
    pub fn new(rows: Vec<Vec<Rational>>, cols: usize) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "ragged matrix");
        }
        RatMatrix { rows, cols }
    }

    pub fn identity(n: usize) -> Self {
        let mut rows = vec![vec![Rational::zero(); n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = Rational::one();
        }
        RatMatrix { rows, cols: n }
    }

    /// In-place reduction to reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row >= self.rows.len() {
                break;
            }
            // pick the pivot with the smallest representation to slow coefficient growth
            let mut best: Option<usize> = None;
            for r in row..self.rows.len() {
                if !self.rows[r][col].is_zero() {
                    let size = |q: &Rational| q.numer().bits() + q.denom().bits();
                    match best {
                        None => best = Some(r),
                        Some(b) if size(&self.rows[r][col]) < size(&self.rows[b][col]) => {
                            best = Some(r)
                        }
                        _ => {}
                    }
                }
            }
            let Some(pr) = best else { continue };
            self.rows.swap(row, pr);
            let inv = Rational::one() / self.rows[row][col].clone();
            for c in col..self.cols {
                let v = std::mem::take(&mut self.rows[row][c]) * &inv;
                self.rows[row][c] = v;
            }
            for r in 0..self.rows.len() {
                if r != row && !self.rows[r][col].is_zero() {
                    let factor = self.rows[r][col].clone();
                    for c in col..self.cols {
                        let t = &self.rows[row][c] * &factor;
                        self.rows[r][c] -= t;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        self.rows
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).fold(Rational::zero(), |s, t| s + t))
            .collect()
    }
}

/// Basis of the right nullspace { v : M v = 0 }, in the canonical form where
/// each basis vector carries a 1 in one free column (free columns in
/// increasing order) and the pivot entries are read off the RREF.
pub fn rational_nullspace(matrix: &RatMatrix) -> Vec<Vec<Rational>> {
    let mut m = matrix.clone();
    let pivots = m.rref();
    let pivot_rows: Vec<(usize, usize)> = pivots.iter().cloned().enumerate().map(|(r, c)| (c, r)).collect();
    let is_pivot = |c: usize| pivots.binary_search(&c).is_ok();
    let mut basis = Vec::new();
    for free in 0..matrix.cols {
        if is_pivot(free) {
            continue;
        }
        let mut v = vec![Rational::zero(); matrix.cols];
        v[free] = Rational::one();
        for &(pc, pr) in &pivot_rows {
            v[pc] = -m.rows[pr][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Row-reduce a set of vectors to a canonical RREF basis, for span comparison.
pub fn canonical_span(vectors: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut m = RatMatrix::new(vectors.to_vec(), cols);
    m.rref();
    m.rows.retain(|r| r.iter().any(|c| !c.is_zero()));
    m.rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        let cols = rows.first().map(|r| r.len()).unwrap_or(0);
        RatMatrix::new(
            rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect(),
            cols,
        )
    }

    #[test]
    fn nullspace_identity_is_empty() {
        assert!(rational_nullspace(&m(&[&[1, 0], &[0, 1]])).is_empty());
    }

    #[test]
    fn nullspace_one_row() {
        let basis = rational_nullspace(&m(&[&[1, 1]]));
        assert_eq!(basis, vec![vec![rat(-1), rat(1)]]);
    }

    #[test]
    fn nullspace_rank_one() {
        let mat = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let basis = rational_nullspace(&mat);
        assert_eq!(basis, vec![vec![rat(-2), rat(1), rat(0)], vec![rat(-3), rat(0), rat(1)]]);
        for v in &basis {
            assert!(mat.apply(v).iter().all(|x| x.is_zero()));
        }
        // rank + nullity = cols
        assert_eq!(mat.rank() + basis.len(), mat.cols);
    }

    #[test]
    fn span_comparison() {
        let a = canonical_span(&[vec![rat(1), rat(1)], vec![rat(2), rat(2)]], 2);
        let b = canonical_span(&[vec![rat(3), rat(3)]], 2);
        assert_eq!(a, b);
    }
}
