//! Exact arithmetic over Q and simple number fields `K = Q[x]/(f)`, together
//! with the exact linear algebra and lattice machinery used by every other
//! module.
//!
//! A field element is a coordinate vector over the power basis
//! 1, α, ..., α^{d-1}; the degree-1 case is plain rationals. All arithmetic
//! is exact and equality is canonical (reduced fractions, reduced modulo f).

mod poly;

pub mod lattice;
pub mod matrix;

pub use lattice::{
    hnf, integer_kernel, integer_solve, invariant_factors_of_cyclics, saturate, snf, Lattice,
    SnfDecomposition,
};
pub use matrix::{exact_solve, ExactSolution, FieldMatrix, IntMatrix};

use std::fmt;
use std::sync::Arc;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::{Error, Result};

/// Largest supported degree for a defining polynomial. Beyond this the
/// exhaustive irreducibility check is not attempted and registration fails.
pub const MAX_FIELD_DEGREE: usize = 8;

/// A base field: either Q itself or `Q[x]/(f)` for a monic irreducible f of
/// degree at most [`MAX_FIELD_DEGREE`]. Towers are not supported; flatten to
/// a primitive generator first.
#[derive(Debug)]
pub struct NumberField {
    /// Monic defining polynomial, low degree first, length `degree + 1`.
    /// For Q this is the polynomial x.
    min_poly: Vec<BigRational>,
    degree: usize,
    generator_name: String,
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.min_poly == other.min_poly
    }
}

impl Eq for NumberField {}

impl NumberField {
    /// The rational field Q, modelled as the degree-1 extension `Q[x]/(x)`.
    pub fn rationals() -> Arc<Self> {
        Arc::new(NumberField {
            min_poly: vec![BigRational::zero(), BigRational::one()],
            degree: 1,
            generator_name: "a".into(),
        })
    }

    /// Registers `K = Q[x]/(f)` for f given low degree first. The polynomial
    /// must be monic and irreducible; irreducibility is checked exhaustively
    /// (rational roots plus Kronecker factor search) up to degree 8.
    pub fn extension(coeffs: Vec<BigRational>, generator_name: &str) -> Result<Arc<Self>> {
        let coeffs = poly::trim(coeffs);
        let degree = match poly::degree(&coeffs) {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::Reducible("defining polynomial is constant".into())),
        };
        if degree > MAX_FIELD_DEGREE {
            return Err(Error::DegreeTooLarge(degree, MAX_FIELD_DEGREE));
        }
        if !coeffs.last().unwrap().is_one() {
            return Err(Error::NotMonic);
        }
        if degree > 1 && !poly::is_irreducible(&coeffs)? {
            return Err(Error::Reducible(format!(
                "polynomial of degree {degree} factors over Q"
            )));
        }
        Ok(Arc::new(NumberField {
            min_poly: coeffs,
            degree,
            generator_name: generator_name.into(),
        }))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_rational(&self) -> bool {
        self.degree == 1
    }

    pub fn generator_name(&self) -> &str {
        &self.generator_name
    }

    pub fn min_poly(&self) -> &[BigRational] {
        &self.min_poly
    }

    pub fn zero(self: &Arc<Self>) -> FieldElem {
        FieldElem {
            field: self.clone(),
            coords: vec![BigRational::zero(); self.degree],
        }
    }

    pub fn one(self: &Arc<Self>) -> FieldElem {
        self.from_rational(BigRational::one())
    }

    pub fn from_rational(self: &Arc<Self>, value: BigRational) -> FieldElem {
        let mut coords = vec![BigRational::zero(); self.degree];
        coords[0] = value;
        FieldElem {
            field: self.clone(),
            coords,
        }
    }

    pub fn from_integer(self: &Arc<Self>, value: i64) -> FieldElem {
        self.from_rational(BigRational::from(BigInt::from(value)))
    }

    /// The class of x, i.e. the primitive generator α. For Q this is 0.
    pub fn generator(self: &Arc<Self>) -> FieldElem {
        let mut coords = vec![BigRational::zero(); self.degree];
        if self.degree > 1 {
            coords[1] = BigRational::one();
        }
        FieldElem {
            field: self.clone(),
            coords,
        }
    }

    pub fn from_coords(self: &Arc<Self>, coords: Vec<BigRational>) -> Result<FieldElem> {
        if coords.len() != self.degree {
            return Err(Error::DimensionMismatch(format!(
                "field element needs {} coordinates, got {}",
                self.degree,
                coords.len()
            )));
        }
        Ok(FieldElem {
            field: self.clone(),
            coords,
        })
    }
}

/// An element of the base field, written over the power basis of α.
#[derive(Clone)]
pub struct FieldElem {
    field: Arc<NumberField>,
    coords: Vec<BigRational>,
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other) && self.coords == other.coords
    }
}

impl Eq for FieldElem {}

impl FieldElem {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    fn same_field(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || self.field == other.field
    }

    fn assert_same_field(&self, other: &Self) {
        assert!(self.same_field(other), "field elements from different fields");
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(|c| c.is_zero())
    }

    /// Some(q) when the element lies in the prime field Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coords[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        FieldElem {
            field: self.field.clone(),
            coords,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect();
        FieldElem {
            field: self.field.clone(),
            coords,
        }
    }

    pub fn neg(&self) -> Self {
        FieldElem {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        let product = poly::mul(&poly::trim(self.coords.clone()), &poly::trim(other.coords.clone()));
        let reduced = poly::rem(&product, &self.field.min_poly);
        self.wrap_reduced(reduced)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        FieldElem {
            field: self.field.clone(),
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplicative inverse; None for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let (g, s, _) = poly::xgcd(&poly::trim(self.coords.clone()), &self.field.min_poly);
        debug_assert_eq!(g, vec![BigRational::one()], "defining polynomial not irreducible");
        let reduced = poly::rem(&s, &self.field.min_poly);
        Some(self.wrap_reduced(reduced))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        other.inv().map(|i| self.mul(&i)).ok_or(Error::DivisionByZero)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = self.field.one();
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    fn wrap_reduced(&self, reduced: Vec<BigRational>) -> Self {
        let mut coords = reduced;
        coords.resize(self.field.degree, BigRational::zero());
        FieldElem {
            field: self.field.clone(),
            coords,
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let name = self.field.generator_name();
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                1 => {
                    if mag.is_one() {
                        write!(f, "{name}")?;
                    } else {
                        write!(f, "{mag}*{name}")?;
                    }
                }
                _ => {
                    if mag.is_one() {
                        write!(f, "{name}^{i}")?;
                    } else {
                        write!(f, "{mag}*{name}^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rational_field_arithmetic() {
        let k = NumberField::rationals();
        let a = k.from_rational(q(1, 2));
        let b = k.from_rational(q(1, 3));
        assert_eq!(a.add(&b), k.from_rational(q(5, 6)));
        assert_eq!(a.mul(&b), k.from_rational(q(1, 6)));
        assert_eq!(a.inv().unwrap(), k.from_rational(q(2, 1)));
    }

    #[test]
    fn quadratic_field_arithmetic() {
        // K = Q(sqrt 2)
        let k = NumberField::extension(
            vec![q(-2, 1), q(0, 1), q(1, 1)],
            "s",
        )
        .unwrap();
        let s = k.generator();
        assert_eq!(s.mul(&s), k.from_integer(2));
        // (1 + s)(1 - s) = 1 - 2 = -1
        let a = k.one().add(&s);
        let b = k.one().sub(&s);
        assert_eq!(a.mul(&b), k.from_integer(-1));
        // 1/s = s/2
        assert_eq!(s.inv().unwrap(), s.scale(&q(1, 2)));
    }

    #[test]
    fn reducible_polynomial_rejected() {
        let err = NumberField::extension(vec![q(-1, 1), q(0, 1), q(1, 1)], "a");
        assert!(matches!(err, Err(Error::Reducible(_))));
    }

    #[test]
    fn non_monic_rejected() {
        let err = NumberField::extension(vec![q(-2, 1), q(0, 1), q(2, 1)], "a");
        assert!(matches!(err, Err(Error::NotMonic)));
    }

    #[test]
    fn degree_bound_enforced() {
        let mut coeffs = vec![q(0, 1); 10];
        coeffs[0] = q(-2, 1);
        coeffs[9] = q(1, 1);
        let err = NumberField::extension(coeffs, "a");
        assert!(matches!(err, Err(Error::DegreeTooLarge(9, 8))));
    }
}
