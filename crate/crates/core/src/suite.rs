//! Deterministic desk-scale catalogs of 1-motives shared by the
//! verification suites and the benchmarks.
//!
//! Values are drawn from {±1, 2, 3, 4, 6, 1/2}, lattice ranks stay ≤ 3 and
//! torus ranks ≤ 2, so every Hom-group in the catalog is reachable by the
//! brute-force oracle with entries in [-5, 5].

use std::sync::Arc;

use num::{BigInt, BigRational};

use crate::numfield::{FieldMatrix, NumberField};
use crate::onemotive::{prepare_registry, AbelianDatum, OneMotive};
use crate::periodring::SymbolRegistry;
use crate::Result;

fn value(field: &Arc<NumberField>, n: i64, d: i64) -> crate::numfield::FieldElem {
    field.from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn torus_lattice(field: &Arc<NumberField>, rows: &[&[(i64, i64)]]) -> OneMotive {
    let s = rows.len();
    let r = rows.first().map(|row| row.len()).unwrap_or(0);
    let m = FieldMatrix::from_fn(field, s, r, |i, j| value(field, rows[i][j].0, rows[i][j].1));
    OneMotive::torus_lattice(field, m).expect("catalog motive is well-formed")
}

/// Torus-lattice motives over Q: every Kummer motive over the value set,
/// plus higher lattice and torus ranks.
pub fn torus_lattice_catalog(field: &Arc<NumberField>) -> Vec<OneMotive> {
    let mut out = Vec::new();
    // rank-1 Kummer motives
    for &(n, d) in &[(2, 1), (3, 1), (4, 1), (6, 1), (-1, 1), (1, 2), (1, 1)] {
        out.push(torus_lattice(field, &[&[(n, d)]]));
    }
    // pure lattices and tori
    out.push(OneMotive::lattice_only(field, 1));
    out.push(OneMotive::lattice_only(field, 2));
    out.push(OneMotive::lattice_only(field, 3));
    out.push(OneMotive::torus_only(field, 1));
    out.push(OneMotive::torus_only(field, 2));
    // rank-2 lattices into one torus
    out.push(torus_lattice(field, &[&[(2, 1), (4, 1)]]));
    out.push(torus_lattice(field, &[&[(2, 1), (3, 1)]]));
    out.push(torus_lattice(field, &[&[(2, 1), (-1, 1)]]));
    out.push(torus_lattice(field, &[&[(6, 1), (1, 2)]]));
    out.push(torus_lattice(field, &[&[(3, 1), (3, 1)]]));
    // rank 3 into one torus
    out.push(torus_lattice(field, &[&[(2, 1), (4, 1), (6, 1)]]));
    // rank 1 into two tori
    out.push(torus_lattice(field, &[&[(2, 1)], &[(3, 1)]]));
    out.push(torus_lattice(field, &[&[(2, 1)], &[(4, 1)]]));
    out.push(torus_lattice(field, &[&[(-1, 1)], &[(6, 1)]]));
    // rank 2 into two tori
    out.push(torus_lattice(field, &[&[(2, 1), (4, 1)], &[(3, 1), (6, 1)]]));
    out.push(torus_lattice(field, &[&[(2, 1), (1, 1)], &[(1, 1), (3, 1)]]));
    out.push(torus_lattice(field, &[&[(1, 2), (4, 1)], &[(6, 1), (-1, 1)]]));
    // rank 3 into two tori, and value-set stragglers
    out.push(torus_lattice(
        field,
        &[&[(2, 1), (3, 1), (1, 1)], &[(1, 1), (6, 1), (4, 1)]],
    ));
    out.push(torus_lattice(field, &[&[(4, 1), (1, 2)]]));
    out.push(torus_lattice(field, &[&[(-1, 1), (-1, 1)]]));
    out.push(torus_lattice(field, &[&[(6, 1)], &[(6, 1)]]));
    out
}

/// The catalog extended by abelian examples; ≥ 30 motives, all free, for
/// the determinant sweep.
pub fn realization_catalog(field: &Arc<NumberField>) -> Vec<OneMotive> {
    let mut out = torus_lattice_catalog(field);
    out.push(
        OneMotive::abelian_lattice(field, AbelianDatum::elliptic("E"), vec![Some("P".into())])
            .expect("abelian catalog motive"),
    );
    out.push(
        OneMotive::abelian_lattice(
            field,
            AbelianDatum::elliptic("E"),
            vec![Some("P".into()), Some("Q".into())],
        )
        .expect("abelian catalog motive"),
    );
    out.push(
        OneMotive::abelian_lattice(field, AbelianDatum::elliptic("F"), vec![None])
            .expect("abelian catalog motive"),
    );
    // torus × abelian with a lattice point
    out.push(
        OneMotive::new(
            field.clone(),
            1,
            Vec::new(),
            1,
            FieldMatrix::from_fn(field, 1, 1, |_, _| value(field, 2, 1)),
            FieldMatrix::zero(field, 1, 0),
            Some(AbelianDatum::elliptic("E")),
            vec![Some("P".into())],
        )
        .expect("mixed catalog motive"),
    );
    out
}

/// Index pairs into [`torus_lattice_catalog`] whose realization dimensions
/// multiply to at most 6, keeping the (4h) brute-force box tractable;
/// at least 20 pairs.
pub fn fullness_pairs(catalog: &[OneMotive]) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    let dims: Vec<usize> = catalog.iter().map(|m| m.betti_rank()).collect();
    for i in 0..catalog.len() {
        for j in 0..catalog.len() {
            if dims[i] * dims[j] <= 6 && dims[i] > 0 && dims[j] > 0 {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

/// One frozen registry covering every motive in the given list.
pub fn shared_registry(
    field: &Arc<NumberField>,
    motives: &[OneMotive],
) -> Result<Arc<SymbolRegistry>> {
    let mut builder = SymbolRegistry::new(field.clone());
    for m in motives {
        prepare_registry(&mut builder, m)?;
    }
    builder.freeze()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_sizes_meet_the_suite_requirements() {
        let field = NumberField::rationals();
        let catalog = torus_lattice_catalog(&field);
        assert!(catalog.len() >= 20);
        assert!(realization_catalog(&field).len() >= 30);
        let pairs = fullness_pairs(&catalog);
        assert!(pairs.len() >= 20, "got {} pairs", pairs.len());
        assert!(catalog.iter().all(|m| m.lattice_rank() <= 3));
        assert!(catalog.iter().all(|m| m.torus_rank() <= 2));
    }

    #[test]
    fn shared_registry_covers_catalog() {
        let field = NumberField::rationals();
        let catalog = realization_catalog(&field);
        let reg = shared_registry(&field, &catalog).unwrap();
        assert!(reg.is_frozen());
        assert!(reg.lookup("log(2)").is_some());
        assert!(reg.lookup("log(3)").is_some());
        assert!(reg.lookup("Eom1").is_some());
    }
}
