use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{format_rational, rat, LinAlgError, Rational, Subspace};

/// Dense rectangular matrix over Q, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixQ {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl MatrixQ {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixQ { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    /// `lambda * I`
    pub fn scalar(n: usize, lambda: &Rational) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = lambda.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, LinAlgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinAlgError::Ragged);
        }
        Ok(MatrixQ { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Convenience constructor for integer matrices. Panics on ragged input.
    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let rows = rows.iter().map(|r| r.as_ref().iter().map(|&x| rat(x)).collect()).collect();
        Self::from_rows(rows).expect("ragged integer matrix")
    }

    /// Matrix whose columns are the given vectors, all of length `n`.
    pub fn from_columns(n: usize, columns: &[Vec<Rational>]) -> Result<Self, LinAlgError> {
        let mut m = Self::zeros(n, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != n {
                return Err(LinAlgError::DimensionMismatch { expected: n, found: col.len() });
            }
            for (i, x) in col.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        Ok(m)
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

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn checked_mul(&self, rhs: &MatrixQ) -> Result<MatrixQ, LinAlgError> {
        if self.cols != rhs.rows {
            return Err(LinAlgError::DimensionMismatch { expected: self.cols, found: rhs.rows });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip_with(
        &self,
        rhs: &MatrixQ,
        f: impl Fn(&Rational, &Rational) -> Rational,
    ) -> Result<MatrixQ, LinAlgError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.rows * self.cols,
                found: rhs.rows * rhs.cols,
            });
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect();
        Ok(MatrixQ { rows: self.rows, cols: self.cols, data })
    }

    pub fn checked_add(&self, rhs: &MatrixQ) -> Result<MatrixQ, LinAlgError> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn checked_sub(&self, rhs: &MatrixQ) -> Result<MatrixQ, LinAlgError> {
        self.zip_with(rhs, |a, b| a - b)
    }

    pub fn scale(&self, q: &Rational) -> MatrixQ {
        MatrixQ { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * q).collect() }
    }

    /// `self - lambda * I`
    pub fn shift(&self, lambda: &Rational) -> Result<MatrixQ, LinAlgError> {
        self.require_square()?;
        let mut m = self.clone();
        for i in 0..self.rows {
            m.data[i * self.cols + i] -= lambda;
        }
        Ok(m)
    }

    pub fn apply(&self, v: &[Rational]) -> Result<Vec<Rational>, LinAlgError> {
        if v.len() != self.cols {
            return Err(LinAlgError::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub(crate) fn require_square(&self) -> Result<(), LinAlgError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(LinAlgError::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn pow(&self, k: u32) -> Result<MatrixQ, LinAlgError> {
        self.require_square()?;
        let mut acc = MatrixQ::identity(self.rows);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Integer power; negative exponents go through the inverse.
    pub fn powi(&self, k: i64) -> Result<MatrixQ, LinAlgError> {
        let e = u32::try_from(k.unsigned_abs()).map_err(|_| LinAlgError::Singular)?;
        if k >= 0 {
            self.pow(e)
        } else {
            self.inverse()?.pow(e)
        }
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == MatrixQ::identity(self.rows)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.denom().is_one())
    }

    /// Reduced row-echelon form and the pivot columns.
    pub fn rref(&self) -> (MatrixQ, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).recip();
            for c in col..m.cols {
                let v = m.get(row, c) * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let v = m.get(r, c) - &factor * m.get(row, c);
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
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

    /// Rank over Q by fraction-free (Bareiss) elimination on the row-scaled
    /// integer matrix.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect()
            })
            .collect();
        let (n, m) = (self.rows, self.cols);
        let mut prev = BigInt::one();
        let mut rank = 0;
        for col in 0..m {
            if rank == n {
                break;
            }
            let Some(p) = (rank..n).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            for r in rank + 1..n {
                for c in col + 1..m {
                    let v = &a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c];
                    a[r][c] = v / &prev;
                }
                a[r][col] = BigInt::zero();
            }
            prev = a[rank][col].clone();
            rank += 1;
        }
        rank
    }

    pub fn determinant(&self) -> Result<Rational, LinAlgError> {
        self.require_square()?;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m.get(col, col).clone();
            det *= &pivot;
            for r in col + 1..n {
                let factor = m.get(r, col) / &pivot;
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = m.get(r, c) - &factor * m.get(col, c);
                    m.set(r, c, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<MatrixQ, LinAlgError> {
        self.require_square()?;
        let n = self.rows;
        let mut aug = MatrixQ::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, Rational::one());
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(LinAlgError::Singular);
        }
        let mut inv = MatrixQ::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.get(r, n + c).clone());
            }
        }
        Ok(inv)
    }

    /// `a * b * a^-1`
    pub fn conjugate_by(&self, a: &MatrixQ) -> Result<MatrixQ, LinAlgError> {
        let ainv = a.inverse()?;
        a.checked_mul(self)?.checked_mul(&ainv)
    }

    /// Entries as `i64`, if every entry is an integer in range.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .map(|x| if x.denom().is_one() { i64::try_from(x.numer()).ok() } else { None })
                    .collect()
            })
            .collect()
    }

    pub fn max_abs_entry(&self) -> Rational {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<'a> $tr<&'a MatrixQ> for &'a MatrixQ {
            type Output = MatrixQ;
            fn $m(self, rhs: &MatrixQ) -> MatrixQ {
                self.$checked(rhs).expect(concat!("shape mismatch in matrix ", stringify!($m)))
            }
        }
        impl $tr<MatrixQ> for MatrixQ {
            type Output = MatrixQ;
            fn $m(self, rhs: MatrixQ) -> MatrixQ {
                (&self).$m(&rhs)
            }
        }
    };
}
binop!(Mul, mul, checked_mul);
binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);

impl Neg for &MatrixQ {
    type Output = MatrixQ;
    fn neg(self) -> MatrixQ {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for MatrixQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> =
            (0..self.rows).map(|r| self.row(r).iter().map(format_rational).collect()).collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for (i, row) in cells.iter().enumerate() {
            let line: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
            write!(f, "[ {} ]", line.join(" "))?;
            if i + 1 < cells.len() {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// Rank over Q.
pub fn rank(m: &MatrixQ) -> usize {
    m.rank()
}

/// `{ v : M v = 0 }` with its canonical basis.
pub fn kernel_basis(m: &MatrixQ) -> Subspace {
    let (red, pivots) = m.rref();
    let n = m.cols();
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); n];
        v[free] = Rational::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -red.get(r, free).clone();
        }
        basis.push(v);
    }
    Subspace::span(n, &basis).expect("kernel vectors have ambient length")
}

/// Column span of `M` with its canonical basis.
pub fn image_basis(m: &MatrixQ) -> Subspace {
    let cols: Vec<Vec<Rational>> = (0..m.cols()).map(|c| m.column(c)).collect();
    Subspace::span(m.rows(), &cols).expect("columns have ambient length")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn printed_fstar_minus_one() -> MatrixQ {
        MatrixQ::from_i64(&[
            [-1, -1, -1, -1, 1],
            [0, 0, 0, 0, -1],
            [1, 1, 1, 1, 1],
            [0, 0, 0, 0, -1],
            [0, 0, 0, 0, 0],
        ])
    }

    fn span_i64(n: usize, vs: &[&[i64]]) -> Subspace {
        let vs: Vec<Vec<Rational>> = vs.iter().map(|v| v.iter().map(|&x| rat(x)).collect()).collect();
        Subspace::span(n, &vs).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&MatrixQ::zeros(5, 5)), 0);
        assert_eq!(rank(&MatrixQ::identity(5)), 5);
        assert_eq!(rank(&printed_fstar_minus_one()), 2);
        assert_eq!(rank(&MatrixQ::zeros(0, 3)), 0);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&MatrixQ::identity(4)).dim(), 0);
        let k = kernel_basis(&printed_fstar_minus_one());
        assert_eq!(k, span_i64(5, &[&[1, 0, 0, -1, 0], &[0, 1, 0, -1, 0], &[0, 0, 1, -1, 0]]));
        let d = MatrixQ::from_i64(&[[0, 0], [0, 1]]);
        assert_eq!(kernel_basis(&d), span_i64(2, &[&[1, 0]]));
    }

    #[test]
    fn image_examples() {
        let im = image_basis(&printed_fstar_minus_one());
        assert_eq!(im, span_i64(5, &[&[-1, 0, 1, 0, 0], &[1, -1, 1, -1, 0]]));
        assert_eq!(image_basis(&MatrixQ::zeros(3, 3)).dim(), 0);
        assert_eq!(image_basis(&MatrixQ::identity(3)), Subspace::full(3));
    }

    #[test]
    fn inverse_and_determinant() {
        let m = MatrixQ::from_i64(&[[2, 1], [7, 4]]);
        assert_eq!(m.determinant().unwrap(), rat(1));
        assert!((&m * &m.inverse().unwrap()).is_identity());
        assert_eq!(MatrixQ::from_i64(&[[1, 2], [2, 4]]).inverse(), Err(LinAlgError::Singular));
        assert!(matches!(MatrixQ::zeros(2, 3).determinant(), Err(LinAlgError::NotSquare { .. })));
        assert_eq!(m.powi(-2).unwrap(), m.inverse().unwrap().pow(2).unwrap());
    }

    #[test]
    fn display_is_aligned() {
        let m = MatrixQ::from_i64(&[[1, -10], [0, 3]]);
        assert_eq!(m.to_string(), "[   1 -10 ]\n[   0   3 ]");
    }

    fn small_matrix() -> impl Strategy<Value = MatrixQ> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            prop::collection::vec(-3i64..=3, r * c).prop_map(move |v| {
                let rows: Vec<Vec<i64>> = v.chunks(c).map(<[i64]>::to_vec).collect();
                MatrixQ::from_i64(&rows)
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity_and_transpose(m in small_matrix()) {
            let r = rank(&m);
            prop_assert_eq!(r, rank(&m.transpose()));
            prop_assert_eq!(kernel_basis(&m).dim(), m.cols() - r);
            prop_assert_eq!(image_basis(&m).dim(), r);
            // Bareiss and Gauss-Jordan agree
            prop_assert_eq!(r, m.rref().1.len());
        }

        #[test]
        fn kernel_vectors_are_annihilated(m in small_matrix()) {
            for v in kernel_basis(&m).basis() {
                prop_assert!(m.apply(v).unwrap().iter().all(Zero::is_zero));
            }
        }
    }
}
