use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::IntegerMatrix;

/// Dense matrix over the rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: RationalMatrix,
    pub pivots: Vec<usize>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_integer(m: &IntegerMatrix) -> Self {
        RationalMatrix {
            rows: m.rows(),
            cols: m.cols(),
            entries: m
                .entries()
                .iter()
                .map(|e| BigRational::from_integer(e.clone()))
                .collect(),
        }
    }

    /// Columns given as vectors, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<BigRational>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<BigRational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in rational product");
        let mut out = RationalMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, factor: &BigRational) -> RationalMatrix {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * factor).collect(),
        }
    }

    /// Integer matrix times rational column vector.
    pub fn apply_integer(m: &IntegerMatrix, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(m.cols(), v.len());
        (0..m.rows())
            .map(|i| {
                let mut acc = BigRational::zero();
                for (a, x) in m.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += x * BigRational::from_integer(a.clone());
                    }
                }
                acc
            })
            .collect()
    }

    /// Places `blocks[i][j]` (each optional, zero if absent) into one matrix.
    pub fn block(
        row_sizes: &[usize],
        col_sizes: &[usize],
        blocks: &[(usize, usize, RationalMatrix)],
    ) -> Self {
        let row_off: Vec<usize> = offsets(row_sizes);
        let col_off: Vec<usize> = offsets(col_sizes);
        let mut m = Self::zeros(row_sizes.iter().sum(), col_sizes.iter().sum());
        for (bi, bj, b) in blocks {
            assert_eq!(b.rows, row_sizes[*bi]);
            assert_eq!(b.cols, col_sizes[*bj]);
            for r in 0..b.rows {
                for c in 0..b.cols {
                    let e = b.get(r, c);
                    if !e.is_zero() {
                        let v = m.get(row_off[*bi] + r, col_off[*bj] + c) + e;
                        m.set(row_off[*bi] + r, col_off[*bj] + c, v);
                    }
                }
            }
        }
        m
    }

    pub fn rref(&self) -> Echelon {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..a.cols {
            if row == a.rows {
                break;
            }
            let Some(p) = (row..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..a.cols {
                    a.entries.swap(p * a.cols + c, row * a.cols + c);
                }
            }
            let inv = a.get(row, col).recip();
            for c in col..a.cols {
                let v = a.get(row, c) * &inv;
                a.set(row, c, v);
            }
            for r in 0..a.rows {
                if r == row || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                for c in col..a.cols {
                    let s = a.get(row, c);
                    if !s.is_zero() {
                        let v = a.get(r, c) - &factor * s;
                        a.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { matrix: a, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the null space, one vector per free column, in column order.
    pub fn kernel_basis(&self) -> Vec<Vec<BigRational>> {
        let ech = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[f] = BigRational::one();
                for (r, &p) in ech.pivots.iter().enumerate() {
                    v[p] = -ech.matrix.get(r, f).clone();
                }
                v
            })
            .collect()
    }

    /// Solves `self * X = rhs` for a matrix with full column rank.
    /// Returns `None` if some column of `rhs` is outside the column space.
    pub fn solve_full_column_rank(&self, rhs: &RationalMatrix) -> Option<RationalMatrix> {
        assert_eq!(self.rows, rhs.rows);
        let n = self.cols;
        let mut aug = RationalMatrix::zeros(self.rows, n + rhs.cols);
        for r in 0..self.rows {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            for c in 0..rhs.cols {
                aug.set(r, n + c, rhs.get(r, c).clone());
            }
        }
        let ech = aug.rref();
        if ech.pivots.iter().any(|&p| p >= n) {
            return None;
        }
        assert_eq!(
            ech.pivots.len(),
            n,
            "solve_full_column_rank on a rank-deficient matrix"
        );
        let mut x = RationalMatrix::zeros(n, rhs.cols);
        for (r, &p) in ech.pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                x.set(p, c, ech.matrix.get(r, n + c).clone());
            }
        }
        Some(x)
    }

    /// True if every entry is an integer.
    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|e| e.is_integer())
    }

    /// Entries as integers, if all are integral.
    pub fn to_integer(&self) -> Option<IntegerMatrix> {
        if !self.is_integral() {
            return None;
        }
        Some(IntegerMatrix::new(
            self.rows,
            self.cols,
            self.entries
                .iter()
                .map(|e| e.to_integer())
                .collect::<Vec<BigInt>>(),
        ))
    }
}

fn offsets(sizes: &[usize]) -> Vec<usize> {
    let mut acc = 0;
    sizes
        .iter()
        .map(|s| {
            let o = acc;
            acc += s;
            o
        })
        .collect()
}
