//! The Betti-de Rham and de Rham-Betti realizations of free 1-motives, with
//! weight and Hodge filtrations, plus the bookkeeping that turns motive
//! morphisms into triple morphisms.
//!
//! Basis conventions (global, so outputs are reproducible bit-exactly):
//! the Betti basis is (torus H_1 generators, abelian H_1 generators, one
//! principal lift per lattice generator); the de Rham basis is (Lie T,
//! abelian de Rham basis, the L ⊗ G_a coordinates). Lattice lifts use the
//! principal branch (the 2πi-offset k is 0), so the lift column of a
//! generator x carries log-decompositions of its torus values, the abelian
//! logarithm symbols of its point label, and x ⊗ 1 in the L ⊗ G_a block.
//! The Hodge subspace is spanned by the declared abelian Hodge rows and the
//! whole L ⊗ G_a block; the weight steps are the torus block (-2) and the
//! semiabelian block (-1).

use std::sync::Arc;

use num::{BigInt, BigRational, One, Zero};

use crate::numfield::{FieldMatrix, IntMatrix, Lattice};
use crate::perimod::{PeriodTriple, Side, TripleMorphism, WeightFiltration};
use crate::periodring::{
    log_decompose, Monomial, PeriodMatrix, PeriodScalar, SymbolRegistry,
};
use crate::{Error, Result};

use super::{MotiveMorphism, OneMotive};

/// Name of the formal abelian logarithm of a point label in a de Rham row.
pub(crate) fn abelian_log_name(label: &str, row: usize) -> String {
    format!("ablog({label},{row})")
}

/// Registers everything `realize_bdr` will need for this motive: log-prime
/// symbols for rational torus values, the abelian period symbols with their
/// declared relations, and abelian logarithm symbols for the point labels.
/// Number-field torus values must already be declared as multiplicative
/// basis elements on the builder. Idempotent across motives sharing data.
pub fn prepare_registry(builder: &mut SymbolRegistry, motive: &OneMotive) -> Result<()> {
    let field = motive.field().clone();
    for r in 0..motive.torus_rank() {
        for c in 0..motive.lattice_rank() {
            let v = motive.u_torus().entry(r, c);
            if v.is_one() || *v == field.from_integer(-1) {
                continue;
            }
            if field.is_rational() {
                let q = v.as_rational().expect("rational base field");
                for (p, _) in crate::periodring::factor_rational(q)? {
                    builder.register_log_prime(p)?;
                }
            } else if builder.lookup_log_unit(v).is_none() {
                return Err(Error::UndeclaredUnit(v.to_string()));
            }
        }
    }
    if let Some(datum) = motive.abelian() {
        for row in &datum.period_symbols {
            for name in row {
                if builder.lookup(name).is_none() {
                    builder.register_abelian_period(name)?;
                }
            }
        }
        for label in motive.u_abelian().iter().flatten() {
            for row in 0..2 * datum.genus {
                let name = abelian_log_name(label, row);
                if builder.lookup(&name).is_none() {
                    builder.register_elliptic_log(&name)?;
                }
            }
        }
        for relation in &datum.relations {
            let to_monomial = |pairs: &[(String, u32)]| -> Result<Monomial> {
                let mut ids = Vec::with_capacity(pairs.len());
                for (name, e) in pairs {
                    let id = builder
                        .lookup(name)
                        .ok_or_else(|| Error::MissingSymbol(name.clone()))?;
                    ids.push((id, *e));
                }
                Ok(Monomial::from_pairs(&ids))
            };
            let lhs = to_monomial(&relation.lhs)?;
            if builder.relations().iter().any(|r| r.lhs() == &lhs) {
                continue; // shared datum already declared it
            }
            let rhs = relation
                .rhs
                .iter()
                .map(|(c, pairs)| Ok((field.from_rational(c.clone()), to_monomial(pairs)?)))
                .collect::<Result<Vec<_>>>()?;
            builder.add_relation(lhs, rhs)?;
        }
    }
    Ok(())
}

/// T_BdR(M) = (T_Z(M_C), T_dr(M_K), ϖ_{M,Z}) with weight and Hodge
/// filtrations. The motive must be free; the invertibility of the
/// comparison map is verified on the result.
pub fn realize_bdr(motive: &OneMotive, registry: &Arc<SymbolRegistry>) -> Result<PeriodTriple> {
    motive.expect_free("realization of a motive with torsion (realize its free part)")?;
    let s = motive.torus_rank();
    let g2 = 2 * motive.genus();
    let r = motive.lattice_rank();
    let n = s + g2 + r;
    let field = motive.field().clone();

    let mut omega = PeriodMatrix::zero(registry, n, n);
    // torus H_1 block: 2πi on the Lie T diagonal
    for c in 0..s {
        *omega.entry_mut(c, c) = PeriodScalar::two_pi_i(registry);
    }
    // abelian H_1 block: the declared period symbols
    if let Some(datum) = motive.abelian() {
        for row in 0..g2 {
            for col in 0..g2 {
                let name = &datum.period_symbols[row][col];
                let id = registry
                    .lookup(name)
                    .ok_or_else(|| Error::MissingSymbol(name.clone()))?;
                *omega.entry_mut(s + row, s + col) = PeriodScalar::symbol(registry, id);
            }
        }
    }
    // lattice lifts
    for j in 0..r {
        for c in 0..s {
            *omega.entry_mut(c, s + g2 + j) =
                log_decompose(motive.u_torus().entry(c, j), registry)?;
        }
        if let Some(label) = &motive.u_abelian().get(j).cloned().flatten() {
            for row in 0..g2 {
                let name = abelian_log_name(label, row);
                let id = registry
                    .lookup(&name)
                    .ok_or(Error::MissingSymbol(name))?;
                *omega.entry_mut(s + row, s + g2 + j) = PeriodScalar::symbol(registry, id);
            }
        }
        *omega.entry_mut(s + g2 + j, s + g2 + j) = PeriodScalar::one(registry);
    }

    let weight = weight_sublattices(s, g2, n);
    let hodge = hodge_subspace(motive, s, g2, r, n, &field);

    let triple = PeriodTriple::new(
        Side::Homological,
        n,
        Vec::new(),
        n,
        omega,
        Some(weight),
        Some(hodge),
    )?;
    triple.expect_iso().map_err(|_| {
        Error::NotIsomorphism(
            "realized comparison map has vanishing determinant (declared relations \
             degenerate the periods)"
                .into(),
        )
    })?;
    Ok(triple)
}

fn weight_sublattices(s: usize, g2: usize, n: usize) -> WeightFiltration {
    let coord_lattice = |count: usize| {
        let gens = IntMatrix::from_fn(n, count, |row, col| {
            if row == col {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        });
        Lattice::from_generators(n, &gens).expect("coordinate sublattice")
    };
    vec![
        (-2, coord_lattice(s)),
        (-1, coord_lattice(s + g2)),
        (0, Lattice::standard(n)),
    ]
}

fn hodge_subspace(
    motive: &OneMotive,
    s: usize,
    g2: usize,
    r: usize,
    n: usize,
    field: &Arc<crate::numfield::NumberField>,
) -> FieldMatrix {
    let mut rows: Vec<usize> = Vec::new();
    if let Some(datum) = motive.abelian() {
        for &h in &datum.hodge_rows {
            rows.push(s + h);
        }
    }
    for j in 0..r {
        rows.push(s + g2 + j);
    }
    FieldMatrix::from_fn(field, n, rows.len(), |row, col| {
        if row == rows[col] {
            field.one()
        } else {
            field.zero()
        }
    })
}

/// T_dRB(M) = ς(T_BdR(M*)): the contravariant realization on the
/// cohomological side. Restricted to motives whose Cartier dual is
/// combinatorial, i.e. torus-lattice motives.
pub fn realize_drb(motive: &OneMotive, registry: &Arc<SymbolRegistry>) -> Result<PeriodTriple> {
    let dual = motive.cartier_dual_motive()?;
    realize_bdr(&dual, registry)?.varsigma()
}

/// The canonical identification T_Z(M*) ≅ T_Z(M)^∨(1) as a morphism pair:
/// dual-torus H_1 generators map to the dual basis of the lattice lifts,
/// and dual-lattice lifts map to minus the dual basis of the torus H_1.
/// With these matrices, cartier_dual(realize_bdr(M)) and
/// realize_bdr(cartier_dual_motive(M)) agree bit-exactly.
pub fn cartier_identification(motive: &OneMotive) -> Result<TripleMorphism> {
    if motive.abelian().is_some() {
        return Err(Error::Unsupported(
            "combinatorial Cartier identification is torus-lattice only".into(),
        ));
    }
    let s = motive.torus_rank();
    let r = motive.lattice_rank();
    let n = s + r;
    // columns: basis of T_Z(M*) = (μ*_1..μ*_r, λ*_1..λ*_s);
    // rows: dual basis (μ^∨_1..μ^∨_s, λ^∨_1..λ^∨_r)
    let phi_z = IntMatrix::from_fn(n, n, |row, col| {
        if col < r && row == s + col {
            BigInt::one()
        } else if col >= r && row == col - r {
            -BigInt::one()
        } else {
            BigInt::zero()
        }
    });
    let field = motive.field().clone();
    let phi_k = FieldMatrix::from_fn(&field, n, n, |row, col| {
        if col < r && row == s + col {
            field.one()
        } else if col >= r && row == col - r {
            field.from_integer(-1)
        } else {
            field.zero()
        }
    });
    Ok(TripleMorphism { phi_z, phi_k })
}

/// Base-change bookkeeping: the triple morphism induced on realizations by
/// a motive morphism (f, g). The torus block is the character matrix, the
/// lift block is f, and the 2πi-offset block is forced by the principal-
/// branch normalization of the lifts.
pub fn induced_morphism(
    phi: &MotiveMorphism,
    source: &OneMotive,
    target: &OneMotive,
    registry: &Arc<SymbolRegistry>,
) -> Result<TripleMorphism> {
    if source.abelian().is_some() || target.abelian().is_some() {
        return Err(Error::Unsupported(
            "induced morphisms are torus-lattice only".into(),
        ));
    }
    let sm = source.torus_rank();
    let rm = source.lattice_rank();
    let sn = target.torus_rank();
    let rn = target.lattice_rank();
    let field = source.field().clone();
    let two_pi_i = PeriodScalar::two_pi_i(registry);

    // offsets k[c'][j]: (Σ_c g[c'][c]·log a_{cj} − Σ_{j'} f[j'][j]·log b_{c'j'}) / 2πi
    let mut offsets = IntMatrix::zero(sn, rm);
    for cp in 0..sn {
        for j in 0..rm {
            let mut diff = PeriodScalar::zero(registry);
            for c in 0..sm {
                let dec = log_decompose(source.u_torus().entry(c, j), registry)?;
                let coeff = field.from_rational(BigRational::from(phi.g.entry(cp, c).clone()));
                diff = diff.add(&dec.scale_field(&coeff));
            }
            for jp in 0..rn {
                let dec = log_decompose(target.u_torus().entry(cp, jp), registry)?;
                let coeff = field.from_rational(BigRational::from(phi.f.entry(jp, j).clone()));
                diff = diff.sub(&dec.scale_field(&coeff));
            }
            if diff.is_zero() {
                continue;
            }
            let quotient = diff.div(&two_pi_i)?;
            let k = quotient
                .as_field_constant()
                .and_then(|c| c.as_rational().cloned())
                .filter(|q| q.is_integer())
                .ok_or_else(|| {
                    Error::Unsupported(
                        "pair is not a motive morphism: period offset is not an integer \
                         multiple of 2πi"
                            .into(),
                    )
                })?;
            *offsets.entry_mut(cp, j) = k.to_integer();
        }
    }

    let phi_z = IntMatrix::from_fn(sn + rn, sm + rm, |row, col| {
        if row < sn && col < sm {
            phi.g.entry(row, col).clone()
        } else if row < sn {
            offsets.entry(row, col - sm).clone()
        } else if col >= sm {
            phi.f.entry(row - sn, col - sm).clone()
        } else {
            BigInt::zero()
        }
    });
    let phi_k = FieldMatrix::from_fn(&field, sn + rn, sm + rm, |row, col| {
        if row < sn && col < sm {
            field.from_rational(BigRational::from(phi.g.entry(row, col).clone()))
        } else if row >= sn && col >= sm {
            field.from_rational(BigRational::from(phi.f.entry(row - sn, col - sm).clone()))
        } else {
            field.zero()
        }
    });
    Ok(TripleMorphism { phi_z, phi_k })
}
