//! Exact integer and rational linear algebra on small dense matrices.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Vector = Vec<BigInt>;

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn ints(vs: &[i64]) -> Vector {
    vs.iter().map(|&v| BigInt::from(v)).collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn unit(dim: usize, index: usize) -> Vector {
    let mut v = vec![BigInt::zero(); dim];
    v[index] = BigInt::one();
    v
}

pub fn is_zero_vector(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// gcd of all coordinates; zero for the zero vector.
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

pub fn is_primitive(v: &[BigInt]) -> bool {
    content(v).is_one()
}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.row_vectors()).finish()
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from equal-length rows. Panics on ragged input.
    pub fn from_rows<R: AsRef<[BigInt]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged matrix rows");
            data.extend(r.as_ref().iter().cloned());
        }
        IntMatrix { rows: rows.len(), cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns<R: AsRef<[BigInt]>>(cols: &[R]) -> Self {
        Self::from_rows(cols).transpose()
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let rows: Vec<Vector> = rows.iter().map(|r| ints(r)).collect();
        Self::from_rows(&rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
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

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    out[(r, c)] += a * &other[(k, c)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows).map(|r| dot(self.row(r), v)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = &self[(r, c)];
                    if r == c {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = self.row_vectors();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.det().abs().is_one()
    }

    /// Inverse over the rationals, `None` when singular.
    pub fn rational_inverse(&self) -> Option<Vec<Vec<BigRational>>> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|r| {
                let mut row: Vec<BigRational> =
                    self.row(r).iter().map(|x| BigRational::from_integer(x.clone())).collect();
                row.extend((0..n).map(|c| {
                    if c == r {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                }));
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot);
            let p = a[col][col].clone();
            for x in a[col].iter_mut() {
                *x = &*x / &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let v = &f * &a[col][c];
                    a[r][c] -= v;
                }
            }
        }
        Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
    }

    /// Inverse over the integers, `None` when singular or not integral.
    pub fn integer_inverse(&self) -> Option<IntMatrix> {
        let inv = self.rational_inverse()?;
        let n = self.rows;
        let mut out = IntMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                if !inv[r][c].is_integer() {
                    return None;
                }
                out[(r, c)] = inv[r][c].to_integer();
            }
        }
        Some(out)
    }
}

impl core::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        assert!(r < self.rows && c < self.cols, "matrix index out of bounds");
        &self.data[r * self.cols + c]
    }
}

impl core::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        assert!(r < self.rows && c < self.cols, "matrix index out of bounds");
        &mut self.data[r * self.cols + c]
    }
}

/// Solves `A x = b` exactly over the rationals; `None` if `A` is singular.
pub fn solve_rational(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigRational>> {
    let inv = a.rational_inverse()?;
    Some(
        inv.iter()
            .map(|row| {
                row.iter()
                    .zip(b)
                    .map(|(x, y)| x * BigRational::from_integer(y.clone()))
                    .fold(BigRational::zero(), |s, t| s + t)
            })
            .collect(),
    )
}

/// Solves `A x = b` and insists on an integral solution.
pub fn solve_integral(a: &IntMatrix, b: &[BigInt]) -> Option<Vector> {
    let x = solve_rational(a, b)?;
    x.into_iter().map(|q| q.is_integer().then(|| q.to_integer())).collect()
}

/// A unimodular matrix `U` with `U v = e_last`, for primitive `v`.
///
/// Built from 2×2 extended-gcd row operations that fold every coordinate into
/// the last one; returns the identity when `v` already is the last unit
/// vector. `None` if `v` is not primitive.
pub fn unimodular_to_last_axis(v: &[BigInt]) -> Option<IntMatrix> {
    let n = v.len();
    if n == 0 || !is_primitive(v) {
        return None;
    }
    let last = n - 1;
    let mut u = IntMatrix::identity(n);
    let mut w = v.to_vec();
    for p in 0..last {
        if w[p].is_zero() {
            continue;
        }
        let (a, b) = (w[p].clone(), w[last].clone());
        let eg = a.extended_gcd(&b);
        let (g, s, t) = (eg.gcd, eg.x, eg.y);
        let (bg, ag) = (&b / &g, &a / &g);
        // rows (p, last) <- [[b/g, -a/g], [s, t]] * rows (p, last); det = 1
        for c in 0..n {
            let rp = u[(p, c)].clone();
            let rl = u[(last, c)].clone();
            u[(p, c)] = &bg * &rp - &ag * &rl;
            u[(last, c)] = &s * &rp + &t * &rl;
        }
        w[p] = BigInt::zero();
        w[last] = g;
    }
    if w[last].is_negative() {
        for c in 0..n {
            let x = -&u[(last, c)];
            u[(last, c)] = x;
        }
        if n > 1 {
            // keep det = +1
            for c in 0..n {
                let x = -&u[(0, c)];
                u[(0, c)] = x;
            }
        }
    }
    Some(u)
}
