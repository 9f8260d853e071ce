//! Dense matrices over Z and over the base field, with exact Gaussian
//! elimination. Dimensions are stored explicitly and validated on every
//! operation.

use std::fmt;
use std::sync::Arc;

use num::{BigInt, BigRational, One, Zero};

use super::{FieldElem, NumberField};
use crate::{Error, Result};

/// A rectangular integer matrix, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.entry_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        IntMatrix { rows, cols, data }
    }

    /// Convenience constructor from machine integers; panics on ragged rows.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_fn(r, c, |i, j| BigInt::from(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn entry_mut(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.entry(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.entry(c, r).clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entry(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let add = a * other.entry(k, c);
                    *out.entry_mut(r, c) += add;
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Stacks `other` to the right of `self`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack row counts differ".into()));
        }
        Ok(Self::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.entry(r, c).clone()
            } else {
                other.entry(r, c - self.cols).clone()
            }
        }))
    }

    /// Keeps the given columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |r, c| self.entry(r, cols[c]).clone())
    }

    pub fn map_to_rational(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| BigRational::from(self.entry(r, c).clone()))
                    .collect()
            })
            .collect()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.entry(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// A rectangular matrix over the base field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    field: Arc<NumberField>,
    data: Vec<FieldElem>,
}

impl FieldMatrix {
    pub fn zero(field: &Arc<NumberField>, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            rows,
            cols,
            field: field.clone(),
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Arc<NumberField>, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            *m.entry_mut(i, i) = field.one();
        }
        m
    }

    pub fn from_fn(
        field: &Arc<NumberField>,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FieldElem,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        FieldMatrix {
            rows,
            cols,
            field: field.clone(),
            data,
        }
    }

    pub fn from_int(field: &Arc<NumberField>, m: &IntMatrix) -> Self {
        Self::from_fn(field, m.rows(), m.cols(), |r, c| {
            field.from_rational(BigRational::from(m.entry(r, c).clone()))
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn entry(&self, r: usize, c: usize) -> &FieldElem {
        &self.data[r * self.cols + c]
    }

    pub fn entry_mut(&mut self, r: usize, c: usize) -> &mut FieldElem {
        &mut self.data[r * self.cols + c]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |r, c| self.entry(c, r).clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zero(&self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entry(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let add = a.mul(other.entry(k, c));
                    let cur = out.entry(r, c).add(&add);
                    *out.entry_mut(r, c) = cur;
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Column span containment: every column of `other` lies in the span of
    /// the columns of `self`.
    pub fn spans(&self, other: &Self) -> Result<bool> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("span test row counts differ".into()));
        }
        match exact_solve(self, other)? {
            Some(_) => Ok(true),
            None => Ok(false),
        }
    }
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FieldMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.entry(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Affine description of the solution set of AX = B.
#[derive(Clone, Debug)]
pub struct ExactSolution {
    /// One solution, with all free variables set to zero.
    pub particular: FieldMatrix,
    /// Basis of ker(A), one column per free variable of the echelon form.
    pub kernel: Vec<Vec<FieldElem>>,
}

/// Solves AX = B exactly over the base field. Returns `None` when the system
/// is inconsistent. The kernel basis is canonical: each vector has a 1 in its
/// free coordinate and zeros in the other free coordinates.
pub fn exact_solve(a: &FieldMatrix, b: &FieldMatrix) -> Result<Option<ExactSolution>> {
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "coefficient matrix has {} rows, right-hand side has {}",
            a.rows(),
            b.rows()
        )));
    }
    let field = a.field().clone();
    let m = a.rows();
    let n = a.cols();
    let k = b.cols();

    // Row-reduce the augmented matrix [A | B] to reduced echelon form.
    let mut aug = FieldMatrix::from_fn(&field, m, n + k, |r, c| {
        if c < n {
            a.entry(r, c).clone()
        } else {
            b.entry(r, c - n).clone()
        }
    });

    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut pivot_row = 0usize;
    for col in 0..n {
        let found = (pivot_row..m).find(|&r| !aug.entry(r, col).is_zero());
        let r = match found {
            Some(r) => r,
            None => continue,
        };
        if r != pivot_row {
            for c in 0..n + k {
                let tmp = aug.entry(r, c).clone();
                *aug.entry_mut(r, c) = aug.entry(pivot_row, c).clone();
                *aug.entry_mut(pivot_row, c) = tmp;
            }
        }
        let inv = aug.entry(pivot_row, col).inv().expect("pivot is nonzero");
        for c in 0..n + k {
            let v = aug.entry(pivot_row, c).mul(&inv);
            *aug.entry_mut(pivot_row, c) = v;
        }
        for r2 in 0..m {
            if r2 == pivot_row || aug.entry(r2, col).is_zero() {
                continue;
            }
            let factor = aug.entry(r2, col).clone();
            for c in 0..n + k {
                let v = aug.entry(r2, c).sub(&factor.mul(aug.entry(pivot_row, c)));
                *aug.entry_mut(r2, c) = v;
            }
        }
        pivot_cols.push(col);
        pivot_row += 1;
        if pivot_row == m {
            break;
        }
    }

    // Inconsistency: a zero row of A with a nonzero right-hand side.
    for r in pivot_row..m {
        for c in n..n + k {
            if !aug.entry(r, c).is_zero() {
                return Ok(None);
            }
        }
    }

    let mut particular = FieldMatrix::zero(&field, n, k);
    for (pr, &pc) in pivot_cols.iter().enumerate() {
        for c in 0..k {
            *particular.entry_mut(pc, c) = aug.entry(pr, n + c).clone();
        }
    }

    let free_cols: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    let mut kernel = Vec::with_capacity(free_cols.len());
    for &fc in &free_cols {
        let mut v = vec![field.zero(); n];
        v[fc] = field.one();
        for (pr, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = aug.entry(pr, fc).neg();
        }
        kernel.push(v);
    }

    Ok(Some(ExactSolution { particular, kernel }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qmat(field: &Arc<NumberField>, rows: &[Vec<i64>]) -> FieldMatrix {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        FieldMatrix::from_fn(field, r, c, |i, j| field.from_integer(rows[i][j]))
    }

    #[test]
    fn identity_system() {
        let k = NumberField::rationals();
        let a = FieldMatrix::identity(&k, 2);
        let b = qmat(&k, &[vec![1], vec![2]]);
        let sol = exact_solve(&a, &b).unwrap().unwrap();
        assert_eq!(sol.particular, b);
        assert!(sol.kernel.is_empty());
    }

    #[test]
    fn symmetric_kernel() {
        let k = NumberField::rationals();
        let a = qmat(&k, &[vec![1, 1]]);
        let b = qmat(&k, &[vec![0]]);
        let sol = exact_solve(&a, &b).unwrap().unwrap();
        assert!(sol.particular.is_zero());
        assert_eq!(sol.kernel.len(), 1);
        // kernel basis {(1, -1)} up to the canonical free-variable convention:
        // free column is the second, so the vector is (-1, 1).
        assert_eq!(sol.kernel[0][0], k.from_integer(-1));
        assert_eq!(sol.kernel[0][1], k.from_integer(1));
    }

    #[test]
    fn rank_deficient_particular_and_kernel() {
        let k = NumberField::rationals();
        let a = qmat(&k, &[vec![2, 4], vec![1, 2]]);
        let b = qmat(&k, &[vec![2], vec![1]]);
        let sol = exact_solve(&a, &b).unwrap().unwrap();
        assert_eq!(sol.particular.entry(0, 0), &k.from_integer(1));
        assert_eq!(sol.particular.entry(1, 0), &k.from_integer(0));
        assert_eq!(sol.kernel.len(), 1);
        assert_eq!(sol.kernel[0][0], k.from_integer(-2));
        assert_eq!(sol.kernel[0][1], k.from_integer(1));
    }

    #[test]
    fn inconsistent_detected() {
        let k = NumberField::rationals();
        let a = qmat(&k, &[vec![1, 1], vec![1, 1]]);
        let b = qmat(&k, &[vec![0], vec![1]]);
        assert!(exact_solve(&a, &b).unwrap().is_none());
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let k = NumberField::rationals();
        let a = qmat(&k, &[vec![1, 1]]);
        let b = qmat(&k, &[vec![0], vec![1]]);
        assert!(matches!(exact_solve(&a, &b), Err(Error::DimensionMismatch(_))));
    }
}
