//! Dense exact matrices over the rationals: reduced row echelon form, rank,
//! nullspaces and inverses.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{leading_positive, primitive_integer_vector, Rational};

#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|q| q.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Build from row vectors. All rows must share a length; `cols` is only
    /// consulted when `rows` is empty.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Result<Self> {
        let cols = rows.first().map_or(cols, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    actual: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Self {
            rows: n,
            cols,
            data,
        })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| crate::rational::int(x)).collect())
            .collect();
        Self::from_rows(rows, cols).expect("ragged integer matrix")
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        self.rows().map(<[Rational]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: v.len(),
            });
        }
        Ok(self
            .rows()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// In-place Gauss-Jordan elimination. Returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut lead = 0;
        for col in 0..self.cols {
            if lead == self.rows {
                break;
            }
            let Some(p) = (lead..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(lead, p);
            let inv = self[(lead, col)].recip();
            for c in col..self.cols {
                let v = &self[(lead, c)] * &inv;
                self[(lead, c)] = v;
            }
            for r in 0..self.rows {
                if r == lead || self[(r, col)].is_zero() {
                    continue;
                }
                let factor = self[(r, col)].clone();
                for c in col..self.cols {
                    if self[(lead, c)].is_zero() {
                        continue;
                    }
                    let delta = &factor * &self[(lead, c)];
                    self[(r, c)] -= delta;
                }
            }
            pivots.push(col);
            lead += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : A x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Rational::zero(); self.cols];
                v[free] = Rational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(i, free)].clone();
                }
                v
            })
            .collect()
    }

    /// Basis of `{y : yᵀ A = 0}`.
    pub fn left_nullspace(&self) -> Vec<Vec<Rational>> {
        self.transpose().nullspace()
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                actual: self.cols,
            });
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::InvalidInput("matrix is singular".into()));
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    pub fn determinant(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                actual: self.cols,
            });
        }
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det *= &pivot;
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = &m[(r, col)] / &pivot;
                for c in col..n {
                    let delta = &factor * &m[(col, c)];
                    m[(r, c)] -= delta;
                }
            }
        }
        Ok(det)
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        &mut self.data[r * self.cols + c]
    }
}

/// Canonical basis for the span of `vectors`: RREF rows with denominators
/// cleared, divided by their gcd and leading entry positive. Two families
/// span the same subspace iff their normalized bases are equal.
pub fn normalized_row_basis(vectors: &[Vec<Rational>], width: usize) -> Vec<Vec<Rational>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = RationalMatrix::from_rows(vectors.to_vec(), width).expect("ragged vectors");
    let (r, pivots) = m.rref();
    (0..pivots.len())
        .map(|i| {
            let mut v = primitive_integer_vector(r.row(i));
            leading_positive(&mut v);
            v
        })
        .collect()
}

/// Greedy selection of a maximal independent subset, keeping the first
/// representative of each new direction. Returns indices into `vectors`.
pub fn independent_subset(vectors: &[Vec<Rational>], width: usize) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut rank = 0;
    for (i, v) in vectors.iter().enumerate() {
        if v.iter().all(Zero::is_zero) {
            continue;
        }
        let mut rows: Vec<Vec<Rational>> = chosen.iter().map(|&j| vectors[j].clone()).collect();
        rows.push(v.clone());
        let r = RationalMatrix::from_rows(rows, width)
            .expect("ragged vectors")
            .rank();
        if r > rank {
            rank = r;
            chosen.push(i);
        }
    }
    chosen
}
