//! Matrices over the period scalar field: comparison maps, their Kronecker
//! products, determinants and inverses, all exact.

use std::fmt;
use std::sync::Arc;

use crate::numfield::{FieldMatrix, IntMatrix};
use crate::{Error, Result};

use super::scalar::PeriodScalar;
use super::SymbolRegistry;

#[derive(Clone)]
pub struct PeriodMatrix {
    rows: usize,
    cols: usize,
    registry: Arc<SymbolRegistry>,
    data: Vec<PeriodScalar>,
}

impl PartialEq for PeriodMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl Eq for PeriodMatrix {}

impl PeriodMatrix {
    pub fn zero(registry: &Arc<SymbolRegistry>, rows: usize, cols: usize) -> Self {
        PeriodMatrix {
            rows,
            cols,
            registry: registry.clone(),
            data: vec![PeriodScalar::zero(registry); rows * cols],
        }
    }

    pub fn identity(registry: &Arc<SymbolRegistry>, n: usize) -> Self {
        let mut m = Self::zero(registry, n, n);
        for i in 0..n {
            *m.entry_mut(i, i) = PeriodScalar::one(registry);
        }
        m
    }

    pub fn from_fn(
        registry: &Arc<SymbolRegistry>,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> PeriodScalar,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        PeriodMatrix {
            rows,
            cols,
            registry: registry.clone(),
            data,
        }
    }

    pub fn from_int_matrix(registry: &Arc<SymbolRegistry>, m: &IntMatrix) -> Self {
        Self::from_fn(registry, m.rows(), m.cols(), |r, c| {
            PeriodScalar::from_rational(
                registry,
                num::BigRational::from(m.entry(r, c).clone()),
            )
        })
    }

    pub fn from_field_matrix(registry: &Arc<SymbolRegistry>, m: &FieldMatrix) -> Self {
        Self::from_fn(registry, m.rows(), m.cols(), |r, c| {
            PeriodScalar::constant(registry, m.entry(r, c).clone())
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn registry(&self) -> &Arc<SymbolRegistry> {
        &self.registry
    }

    pub fn entry(&self, r: usize, c: usize) -> &PeriodScalar {
        &self.data[r * self.cols + c]
    }

    pub fn entry_mut(&mut self, r: usize, c: usize) -> &mut PeriodScalar {
        &mut self.data[r * self.cols + c]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.registry, self.cols, self.rows, |r, c| {
            self.entry(c, r).clone()
        })
    }

    pub fn scale(&self, s: &PeriodScalar) -> Self {
        Self::from_fn(&self.registry, self.rows, self.cols, |r, c| {
            self.entry(r, c).mul(s)
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("matrix addition shapes differ".into()));
        }
        Ok(Self::from_fn(&self.registry, self.rows, self.cols, |r, c| {
            self.entry(r, c).add(other.entry(r, c))
        }))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zero(&self.registry, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entry(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.entry(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let sum = out.entry(r, c).add(&a.mul(b));
                    *out.entry_mut(r, c) = sum;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_int_right(&self, x: &IntMatrix) -> Result<Self> {
        self.mul(&Self::from_int_matrix(&self.registry, x))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Kronecker product with row-major index pairing:
    /// `(A⊗B)[i·rB + k, j·cB + l] = A[i,j] · B[k,l]`.
    pub fn kronecker(&self, other: &Self) -> Self {
        Self::from_fn(
            &self.registry,
            self.rows * other.rows,
            self.cols * other.cols,
            |r, c| {
                let (i, k) = (r / other.rows, r % other.rows);
                let (j, l) = (c / other.cols, c % other.cols);
                self.entry(i, j).mul(other.entry(k, l))
            },
        )
    }

    /// Exact determinant by Gaussian elimination over the fraction field.
    pub fn det(&self) -> Result<PeriodScalar> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(
                "determinant of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let mut work = self.clone();
        let mut det = PeriodScalar::one(&self.registry);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !work.entry(r, col).is_zero());
            let pr = match pivot {
                None => return Ok(PeriodScalar::zero(&self.registry)),
                Some(p) => p,
            };
            if pr != col {
                for c in 0..n {
                    let tmp = work.entry(pr, c).clone();
                    *work.entry_mut(pr, c) = work.entry(col, c).clone();
                    *work.entry_mut(col, c) = tmp;
                }
                det = det.neg();
            }
            let pivot_val = work.entry(col, col).clone();
            det = det.mul(&pivot_val);
            for r in col + 1..n {
                if work.entry(r, col).is_zero() {
                    continue;
                }
                let factor = work.entry(r, col).div(&pivot_val)?;
                for c in col..n {
                    let v = work.entry(r, c).sub(&factor.mul(work.entry(col, c)));
                    *work.entry_mut(r, c) = v;
                }
            }
        }
        Ok(det)
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<PeriodMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut work = self.clone();
        let mut inv = Self::identity(&self.registry, n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !work.entry(r, col).is_zero());
            let pr = pivot.ok_or_else(|| {
                Error::NotInvertible("comparison matrix has vanishing determinant".into())
            })?;
            if pr != col {
                for c in 0..n {
                    let tmp = work.entry(pr, c).clone();
                    *work.entry_mut(pr, c) = work.entry(col, c).clone();
                    *work.entry_mut(col, c) = tmp;
                    let tmp = inv.entry(pr, c).clone();
                    *inv.entry_mut(pr, c) = inv.entry(col, c).clone();
                    *inv.entry_mut(col, c) = tmp;
                }
            }
            let pivot_inv = work.entry(col, col).inv()?;
            for c in 0..n {
                let w = work.entry(col, c).mul(&pivot_inv);
                *work.entry_mut(col, c) = w;
                let v = inv.entry(col, c).mul(&pivot_inv);
                *inv.entry_mut(col, c) = v;
            }
            for r in 0..n {
                if r == col || work.entry(r, col).is_zero() {
                    continue;
                }
                let factor = work.entry(r, col).clone();
                for c in 0..n {
                    let w = work.entry(r, c).sub(&factor.mul(work.entry(col, c)));
                    *work.entry_mut(r, c) = w;
                    let v = inv.entry(r, c).sub(&factor.mul(inv.entry(col, c)));
                    *inv.entry_mut(r, c) = v;
                }
            }
        }
        Ok(inv)
    }
}

impl fmt::Display for PeriodMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.entry(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for PeriodMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::NumberField;
    use num::BigInt;

    fn fixture() -> Arc<SymbolRegistry> {
        let mut reg = SymbolRegistry::new(NumberField::rationals());
        reg.register_log_prime(BigInt::from(2)).unwrap();
        reg.freeze().unwrap()
    }

    /// The period matrix of [Z -> G_m, 1 -> 2]: [[2πi, log 2], [0, 1]].
    fn sample(reg: &Arc<SymbolRegistry>) -> PeriodMatrix {
        let log2 = PeriodScalar::symbol(reg, reg.lookup("log(2)").unwrap());
        let mut m = PeriodMatrix::identity(reg, 2);
        *m.entry_mut(0, 0) = PeriodScalar::two_pi_i(reg);
        *m.entry_mut(0, 1) = log2;
        m
    }

    #[test]
    fn det_of_triangular_matrix() {
        let reg = fixture();
        let m = sample(&reg);
        assert_eq!(m.det().unwrap(), PeriodScalar::two_pi_i(&reg));
    }

    #[test]
    fn inverse_of_sample() {
        let reg = fixture();
        let m = sample(&reg);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), PeriodMatrix::identity(&reg, 2));
        assert_eq!(inv.mul(&m).unwrap(), PeriodMatrix::identity(&reg, 2));
        // (1/2πi) [[1, -log2], [0, 2πi]]
        let log2 = PeriodScalar::symbol(&reg, reg.lookup("log(2)").unwrap());
        let tpi = PeriodScalar::two_pi_i(&reg);
        assert_eq!(inv.entry(0, 0), &tpi.inv().unwrap());
        assert_eq!(inv.entry(0, 1), &log2.neg().div(&tpi).unwrap());
        assert_eq!(inv.entry(1, 0), &PeriodScalar::zero(&reg));
        assert_eq!(inv.entry(1, 1), &PeriodScalar::one(&reg));
    }

    #[test]
    fn kronecker_of_tate_objects() {
        let reg = fixture();
        // (2πi) ⊗ (2πi) = (2πi)^2 as 1x1 matrices
        let t = PeriodMatrix::from_fn(&reg, 1, 1, |_, _| PeriodScalar::two_pi_i(&reg));
        let tt = t.kronecker(&t);
        assert_eq!(tt.entry(0, 0), &PeriodScalar::two_pi_i_pow(&reg, 2));
    }

    #[test]
    fn singular_matrix_rejected() {
        let reg = fixture();
        let m = PeriodMatrix::zero(&reg, 2, 2);
        assert!(m.det().unwrap().is_zero());
        assert!(matches!(m.inverse(), Err(Error::NotInvertible(_))));
    }
}
