use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Zero};

use super::rat::Rat;

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rat::one();
        }
        m
    }

    pub fn scalar(n: usize, r: &Rat) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = r.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(rows: usize, cols: &[Vec<Rat>]) -> Self {
        let mut m = Mat::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..rows {
                m.set(i, j, c[i].clone());
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

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rat) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_scalar(&self) -> Option<Rat> {
        if self.rows != self.cols {
            return None;
        }
        let s = if self.rows == 0 { Rat::zero() } else { self.get(0, 0).clone() };
        for i in 0..self.rows {
            for j in 0..self.cols {
                let want = if i == j { &s } else { &Rat::zero() };
                if self.get(i, j) != want {
                    return None;
                }
            }
        }
        Some(s)
    }

    pub fn scale(&self, r: &Rat) -> Mat {
        if r.is_zero() {
            return Mat::zeros(self.rows, self.cols);
        }
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * r).collect(),
        }
    }

    pub fn transpose(&self) -> Mat {
        let mut m = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    /// `self += r·o` in place.
    pub fn add_scaled(&mut self, o: &Mat, r: &Rat) {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        if r.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&o.data) {
            if !b.is_zero() {
                *a += b * r;
            }
        }
    }

    pub fn kron(&self, o: &Mat) -> Mat {
        let mut m = Mat::zeros(self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        let b = o.get(k, l);
                        if !b.is_zero() {
                            m.set(i * o.rows + k, j * o.cols + l, a * b);
                        }
                    }
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, x: &[Rat]) -> Vec<Rat> {
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for (a, b) in self.row(i).iter().zip(x) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
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
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = Rat::one() / m.get(r, c).clone();
            for j in c..m.cols {
                let x = m.get(r, j) * &inv;
                m.set(r, j, x);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    if m.get(r, j).is_zero() {
                        continue;
                    }
                    let x = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : A x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Rat::zero(); self.cols];
                x[f] = Rat::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    x[pc] = -r.get(row, f).clone();
                }
                x
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rat::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Stack matrices with equal column counts vertically.
    pub fn vstack(blocks: &[&Mat]) -> Mat {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            data.extend(b.data.iter().cloned());
            rows += b.rows;
        }
        Mat { rows, cols, data }
    }
}

impl Add for &Mat {
    type Output = Mat;
    fn add(self, o: &Mat) -> Mat {
        let mut m = self.clone();
        m.add_scaled(o, &Rat::one());
        m
    }
}

impl Sub for &Mat {
    type Output = Mat;
    fn sub(self, o: &Mat) -> Mat {
        let mut m = self.clone();
        m.add_scaled(o, &-Rat::one());
        m
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        self.scale(&-Rat::one())
    }
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "matrix product shape mismatch");
        let mut m = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        m.data[i * o.cols + j] += a * b;
                    }
                }
            }
        }
        m
    }
}

/// Particular solution (if consistent) and kernel basis of `A x = b`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSolution {
    pub particular: Option<Vec<Rat>>,
    pub kernel: Vec<Vec<Rat>>,
}

/// Exact solve of `A x = b` via reduced row echelon form. An inconsistent
/// system is reported by `particular = None`, not an error.
pub fn poly_linear_solve(a: &Mat, b: &[Rat]) -> LinearSolution {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let n = a.cols();
    let mut aug = Mat::zeros(a.rows(), n + 1);
    for i in 0..a.rows() {
        for j in 0..n {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, n, b[i].clone());
    }
    let (r, pivots) = aug.rref();
    let kernel = a.nullspace();
    if pivots.last() == Some(&n) {
        return LinearSolution {
            particular: None,
            kernel,
        };
    }
    let mut x = vec![Rat::zero(); n];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = r.get(row, n).clone();
    }
    LinearSolution {
        particular: Some(x),
        kernel,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::{ri, rq};

    #[test]
    fn identity_and_zero() {
        let s = poly_linear_solve(&Mat::identity(3), &[ri(1), ri(0), ri(0)]);
        assert_eq!(s.particular, Some(vec![ri(1), ri(0), ri(0)]));
        assert!(s.kernel.is_empty());
        let z = poly_linear_solve(&Mat::zeros(2, 3), &[ri(0), ri(0)]);
        assert_eq!(z.kernel.len(), 3);
    }

    #[test]
    fn two_by_two_matches_cramer() {
        let a = Mat::from_rows(vec![vec![rq(1, 2), ri(3)], vec![rq(-2, 3), rq(5, 7)]]);
        let b = [ri(1), rq(1, 3)];
        let det = a.get(0, 0) * a.get(1, 1) - a.get(0, 1) * a.get(1, 0);
        let x0 = (&b[0] * a.get(1, 1) - a.get(0, 1) * &b[1]) / &det;
        let x1 = (a.get(0, 0) * &b[1] - &b[0] * a.get(1, 0)) / &det;
        assert_eq!(poly_linear_solve(&a, &b).particular, Some(vec![x0, x1]));
    }

    #[test]
    fn inconsistent() {
        let a = Mat::from_rows(vec![vec![ri(1), ri(1)], vec![ri(1), ri(1)]]);
        assert_eq!(poly_linear_solve(&a, &[ri(1), ri(2)]).particular, None);
    }

    #[test]
    fn inverse_roundtrip() {
        let a = Mat::from_rows(vec![vec![ri(2), ri(1)], vec![ri(1), ri(1)]]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Mat::identity(2));
    }
}
