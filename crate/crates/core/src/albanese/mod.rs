//! Desk-scale geometric instances of the period conjecture: punctured
//! projective lines and punctured elliptic curves over Q.
//!
//! For a smooth curve X = X̄ minus a finite set S of rational points, the
//! degree-one motivic Albanese dual is `[Div⁰_S(X̄) → Pic⁰(X̄)]`. For P¹ the
//! Picard side vanishes; for an elliptic curve it is the curve itself via
//! the chord-tangent group law, computed here in exact rational arithmetic.

mod report;

pub use report::{
    albanese_motive, albanese_one_motive, ker_u1_star, period_conjecture_report, AlbaneseMotive,
    AlbaneseTarget, Completeness, ConjectureReport, KerU1Star, ReportRow,
};

use std::fmt;

use num::{BigInt, BigRational, Zero};

use crate::{Error, Result};

/// A rational point of P¹.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum P1Point {
    Finite(BigRational),
    Infinity,
}

impl fmt::Display for P1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            P1Point::Finite(x) => write!(f, "{x}"),
            P1Point::Infinity => write!(f, "inf"),
        }
    }
}

/// A rational point of an elliptic curve in short Weierstrass form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum EcPoint {
    Affine(BigRational, BigRational),
    Infinity,
}

impl EcPoint {
    pub fn affine(x: BigRational, y: BigRational) -> Self {
        EcPoint::Affine(x, y)
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, EcPoint::Infinity)
    }
}

impl fmt::Display for EcPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EcPoint::Affine(x, y) => write!(f, "({x},{y})"),
            EcPoint::Infinity => write!(f, "O"),
        }
    }
}

/// y² = x³ + ax + b over Q with nonzero discriminant.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EllipticCurve {
    a: BigRational,
    b: BigRational,
}

/// Documented cap on rational torsion orders; multiples are tried up to
/// here before a point is reported non-torsion.
pub const TORSION_CAP: u32 = 12;

/// Result of the bounded order computation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PointOrder {
    Finite(u32),
    ExceedsBound,
}

impl EllipticCurve {
    pub fn new(a: BigRational, b: BigRational) -> Result<Self> {
        let four = BigRational::from(BigInt::from(4));
        let twenty_seven = BigRational::from(BigInt::from(27));
        let disc = four * &a * &a * &a + twenty_seven * &b * &b;
        if disc.is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(EllipticCurve { a, b })
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn contains(&self, p: &EcPoint) -> bool {
        match p {
            EcPoint::Infinity => true,
            EcPoint::Affine(x, y) => {
                y * y == x * x * x + &self.a * x + &self.b
            }
        }
    }

    fn expect_on_curve(&self, p: &EcPoint) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::NotOnCurve(p.to_string()))
        }
    }

    pub fn neg(&self, p: &EcPoint) -> EcPoint {
        match p {
            EcPoint::Infinity => EcPoint::Infinity,
            EcPoint::Affine(x, y) => EcPoint::Affine(x.clone(), -y.clone()),
        }
    }

    /// Exact chord-tangent addition with O the identity.
    pub fn add(&self, p: &EcPoint, q: &EcPoint) -> Result<EcPoint> {
        self.expect_on_curve(p)?;
        self.expect_on_curve(q)?;
        Ok(self.add_unchecked(p, q))
    }

    fn add_unchecked(&self, p: &EcPoint, q: &EcPoint) -> EcPoint {
        let (x1, y1) = match p {
            EcPoint::Infinity => return q.clone(),
            EcPoint::Affine(x, y) => (x, y),
        };
        let (x2, y2) = match q {
            EcPoint::Infinity => return p.clone(),
            EcPoint::Affine(x, y) => (x, y),
        };
        let slope = if x1 == x2 {
            if (y1 + y2).is_zero() {
                return EcPoint::Infinity;
            }
            // tangent: (3x² + a) / (2y)
            let three = BigRational::from(BigInt::from(3));
            let two = BigRational::from(BigInt::from(2));
            (three * x1 * x1 + &self.a) / (two * y1)
        } else {
            (y2 - y1) / (x2 - x1)
        };
        let x3 = &slope * &slope - x1 - x2;
        let y3 = slope * (x1 - &x3) - y1;
        EcPoint::Affine(x3, y3)
    }

    /// n·P for any integer n, by repeated exact addition.
    pub fn mul(&self, n: i64, p: &EcPoint) -> Result<EcPoint> {
        self.expect_on_curve(p)?;
        let base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut acc = EcPoint::Infinity;
        for _ in 0..n.unsigned_abs() {
            acc = self.add_unchecked(&acc, &base);
        }
        Ok(acc)
    }

    /// Least n ≤ max with n·P = O, else the point is reported non-torsion.
    pub fn order(&self, p: &EcPoint, max: u32) -> Result<PointOrder> {
        self.expect_on_curve(p)?;
        let mut acc = EcPoint::Infinity;
        for n in 1..=max {
            acc = self.add_unchecked(&acc, p);
            if acc.is_infinity() {
                return Ok(PointOrder::Finite(n));
            }
        }
        Ok(PointOrder::ExceedsBound)
    }
}

/// The curve underlying a workbench instance.
#[derive(Clone, PartialEq, Debug)]
pub enum CurveKind {
    P1 { punctures: Vec<P1Point> },
    Elliptic { curve: EllipticCurve, punctures: Vec<EcPoint> },
}

/// A punctured curve over Q plus the enumeration bound for relation
/// finding among non-torsion points.
#[derive(Clone, PartialEq, Debug)]
pub struct CurveModel {
    pub kind: CurveKind,
    pub relation_bound: u64,
}

pub const DEFAULT_RELATION_BOUND: u64 = 50;

impl CurveModel {
    pub fn p1(punctures: Vec<P1Point>) -> Result<Self> {
        for (i, p) in punctures.iter().enumerate() {
            if punctures[..i].contains(p) {
                return Err(Error::DuplicatePuncture(p.to_string()));
            }
        }
        Ok(CurveModel {
            kind: CurveKind::P1 { punctures },
            relation_bound: DEFAULT_RELATION_BOUND,
        })
    }

    pub fn elliptic(
        a: BigRational,
        b: BigRational,
        punctures: Vec<EcPoint>,
        relation_bound: u64,
    ) -> Result<Self> {
        let curve = EllipticCurve::new(a, b)?;
        for (i, p) in punctures.iter().enumerate() {
            curve.expect_on_curve(p)?;
            if punctures[..i].contains(p) {
                return Err(Error::DuplicatePuncture(p.to_string()));
            }
        }
        Ok(CurveModel {
            kind: CurveKind::Elliptic { curve, punctures },
            relation_bound,
        })
    }

    pub fn puncture_count(&self) -> usize {
        match &self.kind {
            CurveKind::P1 { punctures } => punctures.len(),
            CurveKind::Elliptic { punctures, .. } => punctures.len(),
        }
    }
}

#[cfg(test)]
pub(crate) fn big_rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve_x3_plus_1() -> EllipticCurve {
        EllipticCurve::new(big_rat(0, 1), big_rat(1, 1)).unwrap()
    }

    #[test]
    fn doubling_on_x3_plus_1() {
        // (2,3) + (2,3) = (0,1): slope 12/6 = 2
        let e = curve_x3_plus_1();
        let p = EcPoint::affine(big_rat(2, 1), big_rat(3, 1));
        let twice = e.add(&p, &p).unwrap();
        assert_eq!(twice, EcPoint::affine(big_rat(0, 1), big_rat(1, 1)));
    }

    #[test]
    fn identity_and_inverse() {
        let e = curve_x3_plus_1();
        let p = EcPoint::affine(big_rat(2, 1), big_rat(3, 1));
        assert_eq!(e.add(&p, &EcPoint::Infinity).unwrap(), p);
        assert_eq!(e.add(&p, &e.neg(&p)).unwrap(), EcPoint::Infinity);
    }

    #[test]
    fn order_six_point() {
        let e = curve_x3_plus_1();
        let p = EcPoint::affine(big_rat(2, 1), big_rat(3, 1));
        assert_eq!(e.order(&p, TORSION_CAP).unwrap(), PointOrder::Finite(6));
        assert_eq!(e.order(&EcPoint::Infinity, TORSION_CAP).unwrap(), PointOrder::Finite(1));
    }

    #[test]
    fn non_torsion_point_exceeds_bound() {
        // (3,5) on y² = x³ - 2 has infinite order
        let e = EllipticCurve::new(big_rat(0, 1), big_rat(-2, 1)).unwrap();
        let p = EcPoint::affine(big_rat(3, 1), big_rat(5, 1));
        assert_eq!(e.order(&p, TORSION_CAP).unwrap(), PointOrder::ExceedsBound);
    }

    #[test]
    fn group_law_axioms_on_generated_points() {
        // associativity, commutativity, inverses on multiples of two seeds
        let e = curve_x3_plus_1();
        let seed1 = EcPoint::affine(big_rat(2, 1), big_rat(3, 1));
        let seed2 = EcPoint::affine(big_rat(0, 1), big_rat(-1, 1));
        let mut points = Vec::new();
        for i in 0..4i64 {
            for j in 0..3i64 {
                let p = e
                    .add(&e.mul(i, &seed1).unwrap(), &e.mul(j, &seed2).unwrap())
                    .unwrap();
                points.push(p);
            }
        }
        for p in &points {
            assert!(e.contains(p));
            assert_eq!(e.add(p, &e.neg(p)).unwrap(), EcPoint::Infinity);
            for q in &points {
                assert_eq!(e.add(p, q).unwrap(), e.add(q, p).unwrap());
                for r in &points {
                    let left = e.add(&e.add(p, q).unwrap(), r).unwrap();
                    let right = e.add(p, &e.add(q, r).unwrap()).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn rejects_bad_curves_and_points() {
        assert!(matches!(
            EllipticCurve::new(big_rat(0, 1), big_rat(0, 1)),
            Err(Error::SingularCurve)
        ));
        let e = curve_x3_plus_1();
        let off = EcPoint::affine(big_rat(1, 1), big_rat(1, 1));
        assert!(matches!(
            e.add(&off, &EcPoint::Infinity),
            Err(Error::NotOnCurve(_))
        ));
        let dup = CurveModel::p1(vec![P1Point::Infinity, P1Point::Infinity]);
        assert!(matches!(dup, Err(Error::DuplicatePuncture(_))));
    }
}
