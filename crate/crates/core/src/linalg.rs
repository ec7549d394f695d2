//! Exact integer matrices: Smith and Hermite normal forms, determinants,
//! unimodular inverses and integral kernels.
//!
//! Everything here works over `i64` with checked arithmetic. The matrices
//! that arise from face rings of small characteristic pairs have tiny
//! entries, but the elimination steps can still blow up on adversarial
//! input, so overflow is reported instead of wrapping.

use std::fmt;
use std::ops::{Index, IndexMut};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("integer overflow during exact elimination")]
    Overflow,
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(i64),
}

pub type Result<T> = std::result::Result<T, LinalgError>;

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.row_iter()).finish()
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (r, c): (usize, usize)) -> &i64 {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut i64 {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

fn checked_axpy(dst: i64, q: i64, src: i64) -> Result<i64> {
    q.checked_mul(src)
        .and_then(|p| dst.checked_add(p))
        .ok_or(LinalgError::Overflow)
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed to describe a matrix with
    /// no rows.
    pub fn from_rows<R: AsRef<[i64]>>(cols: usize, rows: &[R]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(LinalgError::Shape(format!(
                    "row {i} has length {}, expected {cols}",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns<R: AsRef<[i64]>>(rows: usize, cols: &[R]) -> Result<Self> {
        Ok(Self::from_rows(rows, cols)?.transpose())
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[i64]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn column(&self, c: usize) -> Vec<i64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.row_iter().map(<[i64]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(LinalgError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    out[(r, c)] = checked_axpy(out[(r, c)], a, other[(k, c)])?;
                }
            }
        }
        Ok(out)
    }

    /// `self * v` for a column vector `v`.
    pub fn apply(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.cols {
            return Err(LinalgError::Shape(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        self.row_iter().map(|row| dot(row, v)).collect::<Result<Vec<_>>>()
    }

    /// Row vector times matrix, `v * self`.
    pub fn left_apply(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.rows {
            return Err(LinalgError::Shape(format!(
                "vector of length {} against {} rows",
                v.len(),
                self.rows
            )));
        }
        let mut out = vec![0i64; self.cols];
        for (r, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                *o = checked_axpy(*o, a, self[(r, c)])?;
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, q: i64) -> Result<()> {
        if q == 0 {
            return Ok(());
        }
        for c in 0..self.cols {
            let v = checked_axpy(self[(dst, c)], q, self[(src, c)])?;
            self[(dst, c)] = v;
        }
        Ok(())
    }

    /// col[dst] += q * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, q: i64) -> Result<()> {
        if q == 0 {
            return Ok(());
        }
        for r in 0..self.rows {
            let v = checked_axpy(self[(r, dst)], q, self[(r, src)])?;
            self[(r, dst)] = v;
        }
        Ok(())
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            self[(r, c)] = -self[(r, c)];
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<i64> {
        if !self.is_square() {
            return Err(LinalgError::Shape("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        let mut a: Vec<Vec<i128>> = self
            .row_iter()
            .map(|r| r.iter().map(|&x| x as i128).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[i][j]
                        .checked_mul(a[k][k])
                        .zip(a[i][k].checked_mul(a[k][j]))
                        .and_then(|(x, y)| x.checked_sub(y))
                        .ok_or(LinalgError::Overflow)?;
                    a[i][j] = num / prev;
                }
            }
            prev = a[k][k];
        }
        i64::try_from(sign * a[n - 1][n - 1]).map_err(|_| LinalgError::Overflow)
    }

    /// Inverse of a matrix with determinant ±1.
    pub fn unimodular_inverse(&self) -> Result<IntMatrix> {
        if !self.is_square() {
            return Err(LinalgError::Shape("inverse of a non-square matrix".into()));
        }
        let det = self.determinant()?;
        if det.abs() != 1 {
            return Err(LinalgError::NotUnimodular(det));
        }
        // U A V = I, so A^{-1} = V U.
        let snf = self.smith()?;
        snf.right.mul(&snf.left)
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.smith()?.rank())
    }

    /// Smith normal form `left * self * right = diag(d_1, .., d_r, 0, ..)`
    /// with `d_i > 0` and `d_i | d_{i+1}`.
    pub fn smith(&self) -> Result<Smith> {
        let mut a = self.clone();
        let mut left = IntMatrix::identity(self.rows);
        let mut right = IntMatrix::identity(self.cols);
        let mut right_inv = IntMatrix::identity(self.cols);
        let n = self.rows.min(self.cols);
        let mut diagonal = Vec::new();

        // Column ops on `a` are mirrored on `right`; the inverse row op keeps
        // `right_inv` equal to right^{-1}.
        macro_rules! col_add {
            ($dst:expr, $src:expr, $q:expr) => {{
                a.add_col_multiple($dst, $src, $q)?;
                right.add_col_multiple($dst, $src, $q)?;
                right_inv.add_row_multiple($src, $dst, -$q)?;
            }};
        }
        macro_rules! col_swap {
            ($x:expr, $y:expr) => {{
                a.swap_cols($x, $y);
                right.swap_cols($x, $y);
                right_inv.swap_rows($x, $y);
            }};
        }
        macro_rules! row_add {
            ($dst:expr, $src:expr, $q:expr) => {{
                a.add_row_multiple($dst, $src, $q)?;
                left.add_row_multiple($dst, $src, $q)?;
            }};
        }
        macro_rules! row_swap {
            ($x:expr, $y:expr) => {{
                a.swap_rows($x, $y);
                left.swap_rows($x, $y);
            }};
        }

        for t in 0..n {
            // Smallest nonzero entry of the trailing block goes to (t, t).
            let mut best: Option<(i64, usize, usize)> = None;
            for r in t..a.rows {
                for c in t..a.cols {
                    let v = a[(r, c)].abs();
                    if v != 0 && best.is_none_or(|(b, _, _)| v < b) {
                        best = Some((v, r, c));
                    }
                }
            }
            let Some((_, pr, pc)) = best else { break };
            row_swap!(t, pr);
            col_swap!(t, pc);

            loop {
                let p = a[(t, t)];
                let mut clean = true;
                for r in t + 1..a.rows {
                    let q = a[(r, t)].div_euclid(p);
                    if q != 0 {
                        row_add!(r, t, -q);
                    }
                    if a[(r, t)] != 0 {
                        clean = false;
                    }
                }
                for c in t + 1..a.cols {
                    let q = a[(t, c)].div_euclid(p);
                    if q != 0 {
                        col_add!(c, t, -q);
                    }
                    if a[(t, c)] != 0 {
                        clean = false;
                    }
                }
                if !clean {
                    // A remainder smaller than the pivot survived; promote it.
                    let mut best = (a[(t, t)].abs(), t, t);
                    for r in t + 1..a.rows {
                        let v = a[(r, t)].abs();
                        if v != 0 && v < best.0 {
                            best = (v, r, t);
                        }
                    }
                    for c in t + 1..a.cols {
                        let v = a[(t, c)].abs();
                        if v != 0 && v < best.0 {
                            best = (v, t, c);
                        }
                    }
                    row_swap!(t, best.1);
                    col_swap!(t, best.2);
                    continue;
                }
                // Divisibility: fold any offending row into the pivot row.
                let p = a[(t, t)];
                let offender = (t + 1..a.rows).find(|&r| (t + 1..a.cols).any(|c| a[(r, c)] % p != 0));
                match offender {
                    Some(r) => row_add!(t, r, 1),
                    None => break,
                }
            }
            if a[(t, t)] < 0 {
                a.negate_row(t);
                left.negate_row(t);
            }
            diagonal.push(a[(t, t)]);
        }

        Ok(Smith {
            diagonal,
            left,
            right,
            right_inv,
        })
    }

    /// Basis of the integer left kernel `{x : x * self = 0}`. The basis is a
    /// basis of the saturated lattice.
    pub fn left_kernel(&self) -> Result<Vec<Vec<i64>>> {
        let snf = self.smith()?;
        let r = snf.rank();
        Ok((r..self.rows).map(|i| snf.left.row(i).to_vec()).collect())
    }
}

pub fn dot(a: &[i64], b: &[i64]) -> Result<i64> {
    a.iter().zip(b).try_fold(0i64, |acc, (&x, &y)| checked_axpy(acc, x, y))
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

pub fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0, |g, &x| gcd(g, x))
}

/// Result of [`IntMatrix::smith`].
#[derive(Clone, Debug)]
pub struct Smith {
    /// Nonzero invariant factors, in order.
    pub diagonal: Vec<i64>,
    pub left: IntMatrix,
    pub right: IntMatrix,
    pub right_inv: IntMatrix,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Invariant factors different from 1.
    pub fn torsion(&self) -> Vec<i64> {
        self.diagonal.iter().copied().filter(|&d| d != 1).collect()
    }
}

/// Row-style Hermite basis of an integer lattice, used to pick unique coset
/// representatives.
///
/// Pivots are taken in the given column priority order: the first pivot
/// column is the most preferred one to eliminate. Reduced vectors therefore
/// avoid the preferred columns wherever the lattice allows.
#[derive(Clone, Debug)]
pub struct HermiteBasis {
    width: usize,
    rows: Vec<(usize, Vec<i64>)>,
}

impl HermiteBasis {
    pub fn new(width: usize, generators: &[Vec<i64>], column_priority: &[usize]) -> Result<Self> {
        debug_assert_eq!(column_priority.len(), width);
        let mut work: Vec<Vec<i64>> = generators
            .iter()
            .filter(|g| g.iter().any(|&x| x != 0))
            .cloned()
            .collect();
        let mut rows: Vec<(usize, Vec<i64>)> = Vec::new();
        for &col in column_priority {
            loop {
                let mut active: Vec<usize> = (0..work.len()).filter(|&i| work[i][col] != 0).collect();
                if active.is_empty() {
                    break;
                }
                active.sort_by_key(|&i| work[i][col].abs());
                let piv = active[0];
                if active.len() == 1 {
                    let mut row = work.swap_remove(piv);
                    if row[col] < 0 {
                        row.iter_mut().for_each(|x| *x = -*x);
                    }
                    rows.push((col, row));
                    break;
                }
                let pivot_row = work[piv].clone();
                for &i in &active[1..] {
                    let q = work[i][col].div_euclid(pivot_row[col]);
                    for (x, &y) in work[i].iter_mut().zip(&pivot_row) {
                        *x = checked_axpy(*x, -q, y)?;
                    }
                }
                work.retain(|r| r.iter().any(|&x| x != 0));
            }
        }
        // Reduce entries at later pivot columns of earlier rows.
        for j in 1..rows.len() {
            let (pc, prow) = rows[j].clone();
            for (_, earlier) in rows.iter_mut().take(j) {
                let q = earlier[pc].div_euclid(prow[pc]);
                if q != 0 {
                    for (x, &y) in earlier.iter_mut().zip(&prow) {
                        *x = checked_axpy(*x, -q, y)?;
                    }
                }
            }
        }
        Ok(HermiteBasis { width, rows })
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Unique representative of `v` modulo the lattice.
    pub fn reduce(&self, v: &[i64]) -> Result<Vec<i64>> {
        let mut out = v.to_vec();
        for (pc, row) in &self.rows {
            let q = out[*pc].div_euclid(row[*pc]);
            if q != 0 {
                for (x, &y) in out.iter_mut().zip(row) {
                    *x = checked_axpy(*x, -q, y)?;
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows[0].len(), rows).unwrap()
    }

    fn check_smith(a: &IntMatrix) -> Smith {
        let s = a.smith().unwrap();
        let d = s.left.mul(a).unwrap().mul(&s.right).unwrap();
        for r in 0..d.nrows() {
            for c in 0..d.ncols() {
                let expect = if r == c && r < s.rank() { s.diagonal[r] } else { 0 };
                assert_eq!(d[(r, c)], expect, "entry ({r},{c}) of {d:?}");
            }
        }
        for w in s.diagonal.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
        assert_eq!(s.right.mul(&s.right_inv).unwrap(), IntMatrix::identity(a.ncols()));
        assert_eq!(s.left.determinant().unwrap().abs(), 1);
        s
    }

    #[test]
    fn smith_of_classic_example() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = check_smith(&a);
        assert_eq!(s.diagonal, vec![2, 6, 12]);
    }

    #[test]
    fn smith_rectangular_and_degenerate() {
        check_smith(&m(&[&[0, 0, 0], &[0, 0, 0]]));
        let s = check_smith(&m(&[&[3, 5]]));
        assert_eq!(s.diagonal, vec![1]);
        let s = check_smith(&m(&[&[2, 0], &[0, 3], &[4, 6]]));
        assert_eq!(s.diagonal, vec![1, 6]);
        check_smith(&IntMatrix::zeros(0, 4));
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let a = m(&[&[0, 2, 1], &[3, -1, 4], &[1, 1, 0]]);
        // 0*(0-4) - 2*(0-4) + 1*(3+1) = 12
        assert_eq!(a.determinant().unwrap(), 12);
        assert_eq!(m(&[&[1, 2], &[2, 4]]).determinant().unwrap(), 0);
        assert_eq!(IntMatrix::identity(5).determinant().unwrap(), 1);
    }

    #[test]
    fn unimodular_inverse_roundtrip() {
        let a = m(&[&[2, 3, 0], &[1, 2, 0], &[4, -1, 1]]);
        let inv = a.unimodular_inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), IntMatrix::identity(3));
        assert!(matches!(
            m(&[&[2, 0], &[0, 1]]).unimodular_inverse(),
            Err(LinalgError::NotUnimodular(2))
        ));
    }

    #[test]
    fn left_kernel_is_saturated() {
        // x*A = 0 with A = [[2],[4]] has kernel spanned by (2,-1).
        let a = m(&[&[2], &[4]]);
        let k = a.left_kernel().unwrap();
        assert_eq!(k.len(), 1);
        assert_eq!(gcd_all(&k[0]), 1);
        assert_eq!(a.left_apply(&k[0]).unwrap(), vec![0]);
    }

    #[test]
    fn hermite_reduction_is_canonical() {
        let lattice = vec![vec![1, 0, -1], vec![0, 1, -1]];
        let h = HermiteBasis::new(3, &lattice, &[2, 1, 0]).unwrap();
        assert_eq!(h.rank(), 2);
        // Every vector collapses onto the first coordinate.
        assert_eq!(h.reduce(&[0, 0, 1]).unwrap(), vec![1, 0, 0]);
        assert_eq!(h.reduce(&[0, 1, 0]).unwrap(), vec![1, 0, 0]);
        assert_eq!(h.reduce(&[2, -1, 3]).unwrap(), vec![4, 0, 0]);
    }

    #[test]
    fn overflow_is_reported() {
        let big = i64::MAX / 2;
        let a = m(&[&[big, 3], &[3, big]]);
        assert!(matches!(a.mul(&a), Err(LinalgError::Overflow)));
    }
}
