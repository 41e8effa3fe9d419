//! Dense matrices over a prime field, one byte per entry. Vectors are rows.

use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

#[inline]
pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    // p is prime and small
    let mut r = 1u32;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Entries reduced mod `p`.
    pub fn from_rows(rows: &[Vec<i64>], p: u32) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, &x) in row.iter().enumerate() {
                m.data[i * c + j] = x.rem_euclid(p as i64) as u8;
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

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn from_row_vecs(rows: &[Vec<u8>], cols: usize) -> Self {
        let mut m = Self::zero(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            m.data[i * cols..(i + 1) * cols].copy_from_slice(r);
        }
        m
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &Matrix, p: u32) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = vec![0u32; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u32;
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                let dst = &mut out[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d = (*d + a * b as u32) % p;
                }
            }
        }
        Matrix {
            rows: self.rows,
            cols: other.cols,
            data: out.into_iter().map(|x| x as u8).collect(),
        }
    }

    pub fn add(&self, other: &Matrix, p: u32) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| ((a as u32 + b as u32) % p) as u8)
                .collect(),
        }
    }

    pub fn scale(&self, c: u32, p: u32) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| (a as u32 * c % p) as u8).collect(),
        }
    }

    pub fn neg(&self, p: u32) -> Matrix {
        self.scale(p - 1, p)
    }

    pub fn sub(&self, other: &Matrix, p: u32) -> Matrix {
        self.add(&other.neg(p), p)
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j));
            }
        }
        m
    }

    /// Row-reduces in place; returns pivot columns.
    pub fn rref(&mut self, p: u32) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    let t = self.get(r, j);
                    self.set(r, j, self.get(pr, j));
                    self.set(pr, j, t);
                }
            }
            let iv = inv_mod(self.get(r, c) as u32, p);
            for j in 0..self.cols {
                let v = self.get(r, j) as u32 * iv % p;
                self.set(r, j, v as u8);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c) as u32;
                if f == 0 {
                    continue;
                }
                for j in 0..self.cols {
                    let v = (self.get(i, j) as u32 + (p - f) * self.get(r, j) as u32) % p;
                    self.set(i, j, v as u8);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, p: u32) -> usize {
        self.clone().rref(p).len()
    }

    /// Basis of `{v : v · self = 0}`.
    pub fn left_kernel(&self, p: u32) -> Vec<Vec<u8>> {
        let (r, c) = (self.rows, self.cols);
        let mut aug = Matrix::zero(r, c + r);
        for i in 0..r {
            for j in 0..c {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, c + i, 1);
        }
        // eliminate on the first c columns only
        let mut row = 0;
        for col in 0..c {
            let Some(pr) = (row..r).find(|&i| aug.get(i, col) != 0) else {
                continue;
            };
            if pr != row {
                for j in 0..c + r {
                    let t = aug.get(row, j);
                    aug.set(row, j, aug.get(pr, j));
                    aug.set(pr, j, t);
                }
            }
            let iv = inv_mod(aug.get(row, col) as u32, p);
            for j in 0..c + r {
                let v = aug.get(row, j) as u32 * iv % p;
                aug.set(row, j, v as u8);
            }
            for i in 0..r {
                if i == row {
                    continue;
                }
                let f = aug.get(i, col) as u32;
                if f == 0 {
                    continue;
                }
                for j in 0..c + r {
                    let v = (aug.get(i, j) as u32 + (p - f) * aug.get(row, j) as u32) % p;
                    aug.set(i, j, v as u8);
                }
            }
            row += 1;
        }
        let mut out: Vec<Vec<u8>> = (row..r).map(|i| aug.row(i)[c..].to_vec()).collect();
        let mut m = Matrix::from_row_vecs(&out, r);
        m.rref(p);
        out = m.row_vecs().into_iter().filter(|v| v.iter().any(|&x| x != 0)).collect();
        out
    }

    /// Basis of `{x : self · x = 0}` as rows.
    pub fn right_kernel(&self, p: u32) -> Vec<Vec<u8>> {
        self.transpose().left_kernel(p)
    }

    pub fn inverse(&self, p: u32) -> Option<Matrix> {
        let n = self.rows;
        if n != self.cols {
            return None;
        }
        let mut aug = Matrix::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let piv = aug.rref(p);
        if piv.len() < n || piv[n - 1] >= n {
            return None;
        }
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, aug.get(i, n + j));
            }
        }
        Some(m)
    }
}

pub fn vec_mat(v: &[u8], m: &Matrix, p: u32) -> Vec<u8> {
    let mut out = vec![0u32; m.cols()];
    for (k, &a) in v.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, o) in out.iter_mut().enumerate() {
            *o = (*o + a as u32 * m.get(k, j) as u32) % p;
        }
    }
    out.into_iter().map(|x| x as u8).collect()
}

/// Echelon basis of the span of `vecs`.
pub fn span_basis(vecs: &[Vec<u8>], dim: usize, p: u32) -> Vec<Vec<u8>> {
    if vecs.is_empty() {
        return Vec::new();
    }
    let mut m = Matrix::from_row_vecs(vecs, dim);
    let k = m.rref(p).len();
    m.row_vecs().into_iter().take(k).collect()
}

/// Solves `x · a = b` for a row vector `x`, if possible.
pub fn solve_left(a: &Matrix, b: &[u8], p: u32) -> Option<Vec<u8>> {
    // [a; b] : find x with x a - b = 0, via kernel of the stacked matrix
    let r = a.rows();
    let mut rows = a.row_vecs();
    rows.push(b.to_vec());
    let m = Matrix::from_row_vecs(&rows, a.cols());
    for k in m.left_kernel(p) {
        if k[r] != 0 {
            let s = p - inv_mod(k[r] as u32, p);
            // x = -k[..r] / k[r]
            return Some(k[..r].iter().map(|&x| (x as u32 * s % p) as u8).collect());
        }
    }
    None
}

/// Incrementally maintained echelon basis of a subspace of `F_p^dim`.
#[derive(Clone, Debug)]
pub struct Echelon {
    p: u32,
    dim: usize,
    rows: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(dim: usize, p: u32) -> Self {
        Echelon {
            p,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn reduce(&self, v: &[u8]) -> Vec<u8> {
        let p = self.p;
        let mut v = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let f = v[c] as u32;
            if f == 0 {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(row) {
                *x = ((*x as u32 + (p - f) * y as u32) % p) as u8;
            }
        }
        v
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &[u8]) -> bool {
        let mut r = self.reduce(v);
        let Some(c) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let iv = inv_mod(r[c] as u32, self.p);
        for x in r.iter_mut() {
            *x = (*x as u32 * iv % self.p) as u8;
        }
        self.rows.push(r);
        self.pivots.push(c);
        true
    }

    pub fn basis(&self) -> &[Vec<u8>] {
        &self.rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_rows(&[vec![1, 2, 0], vec![0, 1, 1], vec![1, 0, 2]], 3);
        let i = m.inverse(3).unwrap();
        assert!(m.mul(&i, 3).is_identity());
    }

    #[test]
    fn singular_has_kernel() {
        let m = Matrix::from_rows(&[vec![1, 1], vec![1, 1]], 2);
        assert!(m.inverse(2).is_none());
        let k = m.left_kernel(2);
        assert_eq!(k, vec![vec![1, 1]]);
        assert_eq!(m.rank(2), 1);
    }

    #[test]
    fn solve() {
        let a = Matrix::from_rows(&[vec![1, 0], vec![1, 1]], 5);
        let x = solve_left(&a, &[3, 2], 5).unwrap();
        assert_eq!(vec_mat(&x, &a, 5), vec![3, 2]);
        let z = Matrix::from_rows(&[vec![1, 0], vec![2, 0]], 5);
        assert!(solve_left(&z, &[0, 1], 5).is_none());
    }
}
