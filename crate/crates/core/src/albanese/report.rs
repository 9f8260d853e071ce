//! The Albanese workbench: the degree-one motive of a punctured curve, the
//! exact kernel of u₁*, and the period-conjecture rank table.

use num::{BigInt, Zero};

use crate::numfield::{IntMatrix, Lattice, NumberField};
use crate::onemotive::{AbelianDatum, OneMotive};
use crate::{Error, Result};

use super::{CurveKind, CurveModel, EcPoint, EllipticCurve, PointOrder, TORSION_CAP};

/// Description of `RA¹(X) = [Div⁰_S(X̄) → Pic⁰(X̄)]`: the divisor lattice has
/// basis D_i = (P_i) − (P_0); u₁* sends D_i to the Picard class P_i ⊖ P_0.
#[derive(Clone, Debug)]
pub struct AlbaneseMotive {
    pub lattice_rank: usize,
    pub target: AlbaneseTarget,
}

#[derive(Clone, Debug)]
pub enum AlbaneseTarget {
    /// Pic⁰(P¹) = 0.
    Zero,
    /// Pic⁰(E) ≅ E with the images of the divisor basis.
    Elliptic {
        curve: EllipticCurve,
        images: Vec<EcPoint>,
    },
}

/// Whether a kernel computation was exhaustive.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Completeness {
    Exact,
    BoundLimited(u64),
}

impl std::fmt::Display for Completeness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Completeness::Exact => write!(f, "exact"),
            Completeness::BoundLimited(b) => write!(f, "bound-limited at {b}"),
        }
    }
}

/// ker u₁* together with its completeness flag.
#[derive(Clone, Debug)]
pub struct KerU1Star {
    pub lattice: Lattice,
    pub completeness: Completeness,
}

/// Builds RA¹(X). The puncture set must be nonempty (a proper curve has no
/// divisor lattice; the report handles that case directly).
pub fn albanese_motive(model: &CurveModel) -> Result<AlbaneseMotive> {
    if model.puncture_count() == 0 {
        return Err(Error::Unsupported(
            "proper curve: the divisor lattice is empty (see the report op)".into(),
        ));
    }
    match &model.kind {
        CurveKind::P1 { punctures } => Ok(AlbaneseMotive {
            lattice_rank: punctures.len() - 1,
            target: AlbaneseTarget::Zero,
        }),
        CurveKind::Elliptic { curve, punctures } => {
            let base = &punctures[0];
            let neg_base = curve.neg(base);
            let images = punctures[1..]
                .iter()
                .map(|p| curve.add(p, &neg_base))
                .collect::<Result<Vec<_>>>()?;
            Ok(AlbaneseMotive {
                lattice_rank: punctures.len() - 1,
                target: AlbaneseTarget::Elliptic {
                    curve: curve.clone(),
                    images,
                },
            })
        }
    }
}

/// The exact kernel of u₁*: all degree-zero divisors supported on the
/// punctures whose class vanishes in Pic⁰.
///
/// Torsion directions are enumerated exhaustively (the kernel is then
/// exact); non-torsion directions are searched in the box |n| ≤ B, and the
/// result is flagged bound-limited. The returned basis is in Hermite form;
/// no rational saturation is applied, since kernels of maps to groups with
/// torsion are genuinely of finite index in their rational span.
pub fn ker_u1_star(model: &CurveModel) -> Result<KerU1Star> {
    let motive = albanese_motive(model)?;
    let k = motive.lattice_rank;
    match &motive.target {
        AlbaneseTarget::Zero => Ok(KerU1Star {
            lattice: Lattice::standard(k),
            completeness: Completeness::Exact,
        }),
        AlbaneseTarget::Elliptic { curve, images } => {
            let orders: Vec<PointOrder> = images
                .iter()
                .map(|p| curve.order(p, TORSION_CAP))
                .collect::<Result<Vec<_>>>()?;
            let all_torsion = orders.iter().all(|o| matches!(o, PointOrder::Finite(_)));
            let first_free = orders
                .iter()
                .position(|o| matches!(o, PointOrder::ExceedsBound));

            // per-coordinate ranges, shrinking the box until the product of
            // range sizes fits the enumeration budget; the kernel is stable
            // under negation, so the first non-torsion coordinate only
            // needs the half-range [0, B]
            let budget: u64 = 2_000_000;
            let mut bound = model.relation_bound.max(1);
            let range_product = |b: u64| -> u64 {
                let mut prod: u64 = 1;
                for (i, o) in orders.iter().enumerate() {
                    let size = match o {
                        PointOrder::Finite(n) => *n as u64,
                        PointOrder::ExceedsBound if Some(i) == first_free => b + 1,
                        PointOrder::ExceedsBound => 2 * b + 1,
                    };
                    prod = prod.saturating_mul(size);
                }
                prod
            };
            while range_product(bound) > budget && bound > 1 {
                bound -= 1;
            }
            if range_product(bound) > budget {
                return Err(Error::Unsupported(
                    "relation enumeration exceeds the desk-scale budget".into(),
                ));
            }

            let mut relations: Vec<Vec<BigInt>> = Vec::new();
            let mut tuple = vec![0i64; k];
            enumerate_relations(
                curve,
                images,
                &orders,
                bound as i64,
                first_free,
                0,
                &EcPoint::Infinity,
                &mut tuple,
                &mut relations,
            )?;
            // the order relations o_i · e_i are kernel elements as well
            for (i, o) in orders.iter().enumerate() {
                if let PointOrder::Finite(n) = o {
                    let mut v = vec![BigInt::zero(); k];
                    v[i] = BigInt::from(*n);
                    relations.push(v);
                }
            }
            let gens =
                IntMatrix::from_fn(k, relations.len(), |r, c| relations[c][r].clone());
            Ok(KerU1Star {
                lattice: Lattice::from_generators(k, &gens)?,
                completeness: if all_torsion {
                    Completeness::Exact
                } else {
                    Completeness::BoundLimited(bound)
                },
            })
        }
    }
}

/// Depth-first enumeration with one exact group-law addition per visited
/// grid step: coordinate i ranges over [0, o_i) for torsion images, over
/// [0, B] for the first non-torsion image (negation symmetry of the
/// kernel), and over [-B, B] for the remaining non-torsion images.
#[allow(clippy::too_many_arguments)]
fn enumerate_relations(
    curve: &EllipticCurve,
    images: &[EcPoint],
    orders: &[PointOrder],
    bound: i64,
    first_free: Option<usize>,
    i: usize,
    partial: &EcPoint,
    tuple: &mut Vec<i64>,
    out: &mut Vec<Vec<BigInt>>,
) -> Result<()> {
    if i == images.len() {
        if partial.is_infinity() && tuple.iter().any(|&t| t != 0) {
            out.push(tuple.iter().map(|&t| BigInt::from(t)).collect());
        }
        return Ok(());
    }
    let (start, end) = match orders[i] {
        PointOrder::Finite(n) => (0i64, n as i64 - 1),
        PointOrder::ExceedsBound if Some(i) == first_free => (0i64, bound),
        PointOrder::ExceedsBound => (-bound, bound),
    };
    let mut sum = curve.add(partial, &curve.mul(start, &images[i])?)?;
    let mut v = start;
    loop {
        tuple[i] = v;
        enumerate_relations(curve, images, orders, bound, first_free, i + 1, &sum, tuple, out)?;
        if v == end {
            break;
        }
        v += 1;
        sum = curve.add(&sum, &images[i])?;
    }
    tuple[i] = 0;
    Ok(())
}

/// One row of the period-conjecture rank table.
#[derive(Clone, Debug)]
pub struct ReportRow {
    pub q: i64,
    pub predicted_rank: usize,
    pub law: &'static str,
    pub completeness: Completeness,
}

/// The predicted ranks of H^{1,q}_ϖ(X) over a range of twists.
#[derive(Clone, Debug)]
pub struct ConjectureReport {
    pub rows: Vec<ReportRow>,
}

pub const LAW_Q1_KERNEL: &str = "q1-albanese-kernel";
pub const LAW_Q1_PROPER: &str = "q1-proper-vanishing";
pub const LAW_Q0_NORMAL: &str = "q0-normal-vanishing";
pub const LAW_TWIST: &str = "twist-vanishing";

/// Predicted rank of H^{1,q}_ϖ(X) for each q in the range: the kernel rank
/// at q = 1, zero at q = 0 (the curves here are normal) and zero at every
/// other twist.
pub fn period_conjecture_report(
    model: &CurveModel,
    q_min: i64,
    q_max: i64,
) -> Result<ConjectureReport> {
    let kernel = if model.puncture_count() == 0 {
        None
    } else {
        Some(ker_u1_star(model)?)
    };
    let mut rows = Vec::new();
    for q in q_min..=q_max {
        let row = if q == 1 {
            match &kernel {
                None => ReportRow {
                    q,
                    predicted_rank: 0,
                    law: LAW_Q1_PROPER,
                    completeness: Completeness::Exact,
                },
                Some(k) => ReportRow {
                    q,
                    predicted_rank: k.lattice.rank(),
                    law: LAW_Q1_KERNEL,
                    completeness: k.completeness,
                },
            }
        } else if q == 0 {
            ReportRow {
                q,
                predicted_rank: 0,
                law: LAW_Q0_NORMAL,
                completeness: Completeness::Exact,
            }
        } else {
            ReportRow {
                q,
                predicted_rank: 0,
                law: LAW_TWIST,
                completeness: Completeness::Exact,
            }
        };
        rows.push(row);
    }
    Ok(ConjectureReport { rows })
}

/// The formal 1-motive model of RA¹(X) under the algebraic-independence
/// assumption: distinct image points get independent abelian-log labels, so
/// its period cohomology vanishes exactly when no coincidences are forced.
/// Useful as a cross-check against the exact kernel for independent
/// non-torsion punctures.
pub fn albanese_one_motive(model: &CurveModel, prefix: &str) -> Result<OneMotive> {
    let motive = albanese_motive(model)?;
    let field = NumberField::rationals();
    match &motive.target {
        AlbaneseTarget::Zero => Ok(OneMotive::lattice_only(&field, motive.lattice_rank)),
        AlbaneseTarget::Elliptic { images, .. } => {
            let labels: Vec<Option<String>> = images
                .iter()
                .map(|p| match p {
                    EcPoint::Infinity => None,
                    EcPoint::Affine(x, y) => Some(format!("{prefix}({x},{y})")),
                })
                .collect();
            OneMotive::abelian_lattice(&field, AbelianDatum::elliptic(prefix), labels)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::albanese::{big_rat, P1Point};

    fn p1_minus(points: &[i64]) -> CurveModel {
        let mut punctures: Vec<P1Point> =
            points.iter().map(|&n| P1Point::Finite(big_rat(n, 1))).collect();
        punctures.push(P1Point::Infinity);
        CurveModel::p1(punctures).unwrap()
    }

    #[test]
    fn p1_minus_three_points() {
        let model = p1_minus(&[0, 1]);
        let motive = albanese_motive(&model).unwrap();
        assert_eq!(motive.lattice_rank, 2);
        assert!(matches!(motive.target, AlbaneseTarget::Zero));
        let ker = ker_u1_star(&model).unwrap();
        assert_eq!(ker.lattice.rank(), 2);
        assert_eq!(ker.completeness, Completeness::Exact);
    }

    #[test]
    fn p1_rank_matches_puncture_count() {
        // |S| = 1: just the point at infinity, rank 0
        let single = CurveModel::p1(vec![P1Point::Infinity]).unwrap();
        assert_eq!(ker_u1_star(&single).unwrap().lattice.rank(), 0);
        for n in 1..=5 {
            let pts: Vec<i64> = (0..n).collect();
            let model = p1_minus(&pts);
            assert_eq!(ker_u1_star(&model).unwrap().lattice.rank(), n as usize);
        }
    }

    #[test]
    fn elliptic_single_puncture_has_rank_zero() {
        let model = CurveModel::elliptic(
            big_rat(0, 1),
            big_rat(1, 1),
            vec![EcPoint::Infinity],
            50,
        )
        .unwrap();
        let motive = albanese_motive(&model).unwrap();
        assert_eq!(motive.lattice_rank, 0);
        let ker = ker_u1_star(&model).unwrap();
        assert_eq!(ker.lattice.rank(), 0);
        assert_eq!(ker.completeness, Completeness::Exact);
    }

    #[test]
    fn torsion_puncture_gives_rank_one() {
        // y² = x³ + 1 minus {O, (2,3)}: (2,3) has order 6, kernel = 6Z
        let model = CurveModel::elliptic(
            big_rat(0, 1),
            big_rat(1, 1),
            vec![EcPoint::Infinity, EcPoint::affine(big_rat(2, 1), big_rat(3, 1))],
            50,
        )
        .unwrap();
        let motive = albanese_motive(&model).unwrap();
        assert_eq!(motive.lattice_rank, 1);
        if let AlbaneseTarget::Elliptic { images, .. } = &motive.target {
            assert_eq!(images[0], EcPoint::affine(big_rat(2, 1), big_rat(3, 1)));
        } else {
            panic!("expected elliptic target");
        }
        let ker = ker_u1_star(&model).unwrap();
        assert_eq!(ker.lattice.rank(), 1);
        assert_eq!(ker.completeness, Completeness::Exact);
        assert_eq!(
            ker.lattice.basis().column(0),
            vec![BigInt::from(6)],
            "generator is 6((2,3)) − 6((O))"
        );
    }

    #[test]
    fn non_torsion_puncture_is_bound_limited() {
        let model = CurveModel::elliptic(
            big_rat(0, 1),
            big_rat(-2, 1),
            vec![EcPoint::Infinity, EcPoint::affine(big_rat(3, 1), big_rat(5, 1))],
            50,
        )
        .unwrap();
        let ker = ker_u1_star(&model).unwrap();
        assert_eq!(ker.lattice.rank(), 0);
        assert_eq!(ker.completeness, Completeness::BoundLimited(50));
    }

    #[test]
    fn kernel_stable_once_bound_covers_orders() {
        // all punctures torsion: the kernel is independent of B
        let p = EcPoint::affine(big_rat(2, 1), big_rat(3, 1));
        for bound in [1u64, 12, 50] {
            let mut model = CurveModel::elliptic(
                big_rat(0, 1),
                big_rat(1, 1),
                vec![EcPoint::Infinity, p.clone()],
                bound,
            )
            .unwrap();
            model.relation_bound = bound;
            let ker = ker_u1_star(&model).unwrap();
            assert_eq!(ker.lattice.basis().column(0), vec![BigInt::from(6)]);
        }
    }

    #[test]
    fn two_torsion_punctures() {
        // punctures O, (2,3), (0,1) on y² = x³ + 1: images P (order 6) and
        // 2P (order 3); relations: n·P + m·2P = O
        let p = EcPoint::affine(big_rat(2, 1), big_rat(3, 1));
        let two_p = EcPoint::affine(big_rat(0, 1), big_rat(1, 1));
        let model = CurveModel::elliptic(
            big_rat(0, 1),
            big_rat(1, 1),
            vec![EcPoint::Infinity, p, two_p],
            50,
        )
        .unwrap();
        let ker = ker_u1_star(&model).unwrap();
        assert_eq!(ker.lattice.rank(), 2);
        assert_eq!(ker.completeness, Completeness::Exact);
        // index of the kernel in Z²: |image subgroup| = 6
        let dec = crate::numfield::snf(ker.lattice.basis());
        let index: BigInt = dec.diagonal().iter().product();
        assert_eq!(index.magnitude().clone(), num::BigUint::from(6u32));
    }

    #[test]
    fn report_rows() {
        let model = p1_minus(&[0, 1]);
        let report = period_conjecture_report(&model, -1, 2).unwrap();
        let ranks: Vec<usize> = report.rows.iter().map(|r| r.predicted_rank).collect();
        assert_eq!(ranks, vec![0, 0, 2, 0]);
        assert_eq!(report.rows[2].law, LAW_Q1_KERNEL);
        // proper curve: q = 1 row is zero
        let proper = CurveModel::elliptic(big_rat(0, 1), big_rat(1, 1), vec![], 50).unwrap();
        let report = period_conjecture_report(&proper, 1, 1).unwrap();
        assert_eq!(report.rows[0].predicted_rank, 0);
        assert_eq!(report.rows[0].law, LAW_Q1_PROPER);
    }

    #[test]
    fn one_motive_model_cross_check() {
        use crate::onemotive::{ker_u, prepare_registry, realize_bdr};
        use crate::perimod::period_cohomology;
        use crate::periodring::SymbolRegistry;

        // independent non-torsion puncture: the formal model also gives 0
        let model = CurveModel::elliptic(
            big_rat(0, 1),
            big_rat(-2, 1),
            vec![EcPoint::Infinity, EcPoint::affine(big_rat(3, 1), big_rat(5, 1))],
            50,
        )
        .unwrap();
        let motive = albanese_one_motive(&model, "E").unwrap();
        assert_eq!(ker_u(&motive, &[]).unwrap().rank(), 0);
        let mut builder = SymbolRegistry::new(NumberField::rationals());
        prepare_registry(&mut builder, &motive).unwrap();
        let reg = builder.freeze().unwrap();
        let t = realize_bdr(&motive, &reg).unwrap();
        assert!(period_cohomology(&t).unwrap().is_zero());
    }
}
