//! Exact linear algebra: big-integer matrices (Smith normal form, integer
//! solutions of linear systems, bounded lattice enumeration) and dense
//! matrices over a field (rank, determinant, inverse).

#![allow(clippy::needless_range_loop)]

use std::fmt;
use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::ring::Field;

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        IntMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        IntMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn from_column(col: &[BigInt]) -> Self {
        IntMatrix { rows: col.len(), cols: 1, data: col.to_vec() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn get_i64(&self, i: usize, j: usize) -> i64 {
        self.get(i, j).to_i64().expect("entry fits in i64")
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.data[i * self.cols + j] = x;
    }

    pub fn add_to(&mut self, i: usize, j: usize, x: i64) {
        self.data[i * self.cols + j] += x;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get_i64(i, j)).collect()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * k).collect() }
    }

    pub fn pow(&self, k: usize) -> IntMatrix {
        assert_eq!(self.rows, self.cols);
        let mut acc = IntMatrix::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += k * row[src]
    fn add_row_multiple(&mut self, target: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let delta = k * self.get(src, j);
            self.data[target * self.cols + j] += delta;
        }
    }

    /// col[target] += k * col[src]
    fn add_col_multiple(&mut self, target: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let delta = k * self.get(i, src);
            self.data[i * self.cols + target] += delta;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = -self.get(i, j);
            self.set(i, j, x);
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// `u * m * v == d`, with `u`, `v` unimodular and `d` diagonal, its nonzero
/// entries positive and each dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (r, c) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    for t in 0..r.min(c) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    let x = a.get(i, j);
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                debug_assert!(u.mul(m).mul(&v) == a);
                return SmithForm { u, d: a, v };
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..r {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = -(a.get(i, t) / a.get(t, t));
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= a.get(i, t).is_zero();
            }
            for j in t + 1..c {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = -(a.get(t, j) / a.get(t, t));
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= a.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            let pivot = a.get(t, t).clone();
            let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a.get(i, j).is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    debug_assert!(u.mul(m).mul(&v) == a);
    SmithForm { u, d: a, v }
}

/// Integer solutions of `a x = b`: `particular + span_Z(kernel)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerSolutions {
    pub particular: Vec<BigInt>,
    pub kernel: Vec<Vec<BigInt>>,
}

pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<IntegerSolutions> {
    assert_eq!(a.rows, b.len());
    let snf = smith_normal_form(a);
    let ub = snf.u.mul_vec(b);
    let diag = snf.diagonal();
    let rank = snf.rank();
    let mut y = vec![BigInt::zero(); a.cols];
    for i in 0..a.rows {
        if i < rank {
            let (q, rem) = ub[i].div_rem(&diag[i]);
            if !rem.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !ub[i].is_zero() {
            return None;
        }
    }
    let particular = snf.v.mul_vec(&y);
    let kernel = (rank..a.cols).map(|j| snf.v.column(j)).collect();
    Some(IntegerSolutions { particular, kernel })
}

/// Row-echelon basis of the lattice spanned by `vectors`: each row has a
/// positive pivot strictly to the right of the previous row's pivot.
pub fn echelon_basis(vectors: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let Some(width) = vectors.first().map(Vec::len) else {
        return Vec::new();
    };
    let mut rows: Vec<Vec<BigInt>> = vectors.to_vec();
    let mut pivot_row = 0;
    for col in 0..width {
        loop {
            let candidates: Vec<usize> = (pivot_row..rows.len()).filter(|&i| !rows[i][col].is_zero()).collect();
            if candidates.is_empty() {
                break;
            }
            let best = *candidates.iter().min_by_key(|&&i| rows[i][col].abs()).unwrap();
            rows.swap(pivot_row, best);
            let mut done = true;
            for i in pivot_row + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = &rows[i][col] / &rows[pivot_row][col];
                let pivot = rows[pivot_row].clone();
                for (x, p) in rows[i].iter_mut().zip(&pivot) {
                    *x -= &q * p;
                }
                done &= rows[i][col].is_zero();
            }
            if done {
                if rows[pivot_row][col].is_negative() {
                    for x in rows[pivot_row].iter_mut() {
                        *x = -&*x;
                    }
                }
                pivot_row += 1;
                break;
            }
        }
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.truncate(pivot_row);
    rows
}

/// Visits every point `offset + sum c_i basis_i` with all coordinates in
/// `[-bound, bound]`, in lexicographic order of the coefficient vector.
/// `basis` must be in the form produced by [`echelon_basis`].
pub fn for_each_bounded_point<F>(offset: &[BigInt], basis: &[Vec<BigInt>], bound: &BigInt, mut visit: F)
where
    F: FnMut(&[BigInt]) -> ControlFlow<()>,
{
    let pivots: Vec<usize> = basis
        .iter()
        .map(|row| row.iter().position(|x| !x.is_zero()).expect("nonzero basis row"))
        .collect();
    let _ = bounded_rec(offset.to_vec(), basis, &pivots, 0, bound, &mut visit);
}

fn bounded_rec<F>(
    partial: Vec<BigInt>,
    basis: &[Vec<BigInt>],
    pivots: &[usize],
    level: usize,
    bound: &BigInt,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[BigInt]) -> ControlFlow<()>,
{
    let fixed_upto = pivots.get(level).copied().unwrap_or(partial.len());
    if partial[..fixed_upto].iter().any(|x| x.abs() > *bound) {
        return ControlFlow::Continue(());
    }
    if level == basis.len() {
        return visit(&partial);
    }
    let row = &basis[level];
    let p = &row[pivots[level]];
    let s = &partial[pivots[level]];
    let lo = (-bound - s).div_ceil(p);
    let hi = (bound - s).div_floor(p);
    let mut c = lo;
    while c <= hi {
        let next: Vec<BigInt> = partial.iter().zip(row).map(|(x, b)| x + &c * b).collect();
        bounded_rec(next, basis, pivots, level + 1, bound, visit)?;
        c += 1;
    }
    ControlFlow::Continue(())
}

/// Dense square or rectangular matrix over a field, row-major.
pub type FieldMatrix<F> = Vec<Vec<<F as crate::ring::Ring>::Elem>>;

pub fn field_identity<F: Field>(f: &F, n: usize) -> FieldMatrix<F> {
    (0..n).map(|i| (0..n).map(|j| if i == j { f.one() } else { f.zero() }).collect()).collect()
}

pub fn field_mul<F: Field>(f: &F, a: &FieldMatrix<F>, b: &FieldMatrix<F>) -> FieldMatrix<F> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner, "matrix product dimension mismatch");
            (0..cols)
                .map(|j| {
                    (0..inner).fold(f.zero(), |acc, k| {
                        if f.is_zero(&row[k]) {
                            acc
                        } else {
                            f.add(&acc, &f.mul(&row[k], &b[k][j]))
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// Row-reduces in place; returns the rank and the determinant factor of the
/// performed operations (for square input, the determinant when full rank).
fn eliminate<F: Field>(f: &F, m: &mut FieldMatrix<F>) -> (usize, F::Elem) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut det = f.one();
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !f.is_zero(&m[i][col])) else {
            det = f.zero();
            continue;
        };
        if p != rank {
            m.swap(p, rank);
            det = f.neg(&det);
        }
        let pivot = m[rank][col].clone();
        det = f.mul(&det, &pivot);
        let inv = f.inv(&pivot).expect("nonzero pivot");
        for j in col..cols {
            m[rank][j] = f.mul(&m[rank][j], &inv);
        }
        for i in 0..rows {
            if i == rank || f.is_zero(&m[i][col]) {
                continue;
            }
            let factor = m[i][col].clone();
            for j in col..cols {
                let delta = f.mul(&factor, &m[rank][j]);
                m[i][j] = f.sub(&m[i][j], &delta);
            }
        }
        rank += 1;
        if rank == rows {
            if rank < cols {
                det = f.zero();
            }
            break;
        }
    }
    (rank, det)
}

pub fn field_rank<F: Field>(f: &F, m: &FieldMatrix<F>) -> usize {
    let mut work = m.clone();
    eliminate(f, &mut work).0
}

pub fn field_determinant<F: Field>(f: &F, m: &FieldMatrix<F>) -> F::Elem {
    let n = m.len();
    if n == 0 {
        return f.one();
    }
    let mut work = m.clone();
    let (rank, det) = eliminate(f, &mut work);
    if rank < n {
        f.zero()
    } else {
        det
    }
}

pub fn field_inverse<F: Field>(f: &F, m: &FieldMatrix<F>) -> Option<FieldMatrix<F>> {
    let n = m.len();
    let mut aug: FieldMatrix<F> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
            r
        })
        .collect();
    // eliminate only over the left block
    for col in 0..n {
        let p = (col..n).find(|&i| !f.is_zero(&aug[i][col]))?;
        aug.swap(p, col);
        let inv = f.inv(&aug[col][col]).expect("nonzero pivot");
        for x in aug[col].iter_mut() {
            *x = f.mul(x, &inv);
        }
        for i in 0..n {
            if i == col || f.is_zero(&aug[i][col]) {
                continue;
            }
            let factor = aug[i][col].clone();
            for j in 0..2 * n {
                let delta = f.mul(&factor, &aug[col][j]);
                aug[i][j] = f.sub(&aug[i][j], &delta);
            }
        }
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}
