//! Dense exact linear algebra over ℚ: row reduction, kernels, images, solving,
//! and cohomology of a three-term piece of a cochain complex.

use std::fmt;

use crate::rational::Rational;

pub type Vector = Vec<Rational>;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix { rows: rows.len(), cols, data: rows.iter().flatten().cloned().collect() }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, x) in col.iter().enumerate() {
                m.set(r, c, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Rational) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let v = out.get(r, c) + &(a * b);
                        out.set(r, c, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vector {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = Rational::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let x = m.get(r, j);
                    if x.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &(&f * x);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : M x = 0}`.
    pub fn kernel(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(row, free);
            }
            basis.push(v);
        }
        basis
    }

    /// Basis of `{y : yᵀ M = 0}`.
    pub fn left_kernel(&self) -> Vec<Vector> {
        self.transpose().kernel()
    }

    /// Basis of the column space, taken from the original pivot columns.
    pub fn image(&self) -> Vec<Vector> {
        let (_, pivots) = self.rref();
        pivots.into_iter().map(|c| self.column(c)).collect()
    }

    /// Some `x` with `M x = b`, or `None` when `b` is not in the image.
    pub fn solve(&self, b: &[Rational]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = red.get(row, self.cols).clone();
        }
        Some(x)
    }
}

pub fn vec_is_zero(v: &[Rational]) -> bool {
    v.iter().all(Rational::is_zero)
}

/// Cohomology at the middle term of `V⁻ --d_in--> V --d_out--> V⁺`.
///
/// Matrices act on column vectors, so `d_in` is `dim V × dim V⁻`.
#[derive(Debug, Clone)]
pub struct Cohomology {
    dim: usize,
    boundaries: Vec<Vector>,
    representatives: Vec<Vector>,
    d_in: Matrix,
    /// Columns: boundary basis followed by representatives.
    frame: Matrix,
}

impl Cohomology {
    pub fn new(d_in: &Matrix, d_out: &Matrix) -> Self {
        let dim = d_in.rows();
        assert_eq!(d_out.cols(), dim, "composable maps required");
        let boundaries = d_in.image();
        let cycles = d_out.kernel();
        // Pivot columns of [boundaries | cycles] beyond the boundary block
        // complete the boundary basis to a cycle basis.
        let mut all = boundaries.clone();
        all.extend(cycles.iter().cloned());
        let (_, pivots) = Matrix::from_columns(dim, &all).rref();
        let representatives: Vec<Vector> =
            pivots.into_iter().filter(|&c| c >= boundaries.len()).map(|c| all[c].clone()).collect();
        let mut chosen = boundaries.clone();
        chosen.extend(representatives.iter().cloned());
        let frame = Matrix::from_columns(dim, &chosen);
        Cohomology { dim, boundaries, representatives, d_in: d_in.clone(), frame }
    }

    pub fn dimension(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[Vector] {
        &self.representatives
    }

    pub fn boundaries(&self) -> &[Vector] {
        &self.boundaries
    }

    /// Coordinates of the class of a cycle in the representative basis.
    /// Returns `None` if `z` is not a cycle in the span of the frame.
    pub fn class_of(&self, z: &[Rational]) -> Option<Vector> {
        assert_eq!(z.len(), self.dim);
        let c = self.frame.solve(z)?;
        Some(c[self.boundaries.len()..].to_vec())
    }

    /// A primitive `y` with `d_in y = b`, if `b` is a boundary.
    pub fn primitive(&self, b: &[Rational]) -> Option<Vector> {
        self.d_in.solve(b)
    }
}
