//! Morphisms of period triples and the finitely generated abelian groups
//! they form.
//!
//! A morphism is a pair φ = (φ_Z, φ_K) making the comparison square commute
//! exactly in the symbol ring. Torsion components are unconstrained by the
//! comparison maps (the complexified space is torsion free), so the torsion
//! part of a Hom-group is pure bookkeeping over the invariant factors while
//! the free part is cut out by the solver.

use num::{BigInt, BigRational, Integer, Zero};

use crate::numfield::{FieldMatrix, IntMatrix};
use crate::periodring::PeriodMatrix;
use crate::{Error, Result};

use super::{PeriodTriple, Side};

/// A morphism between two period triples, restricted to the free parts.
#[derive(Clone, PartialEq, Debug)]
pub struct TripleMorphism {
    /// target.free_rank × source.free_rank integer matrix.
    pub phi_z: IntMatrix,
    /// target.k_dim × source.k_dim matrix over the base field.
    pub phi_k: FieldMatrix,
}

impl TripleMorphism {
    pub fn identity(triple: &PeriodTriple) -> Self {
        TripleMorphism {
            phi_z: IntMatrix::identity(triple.free_rank()),
            phi_k: FieldMatrix::identity(triple.registry().field(), triple.k_dim()),
        }
    }

    pub fn zero(source: &PeriodTriple, target: &PeriodTriple) -> Self {
        TripleMorphism {
            phi_z: IntMatrix::zero(target.free_rank(), source.free_rank()),
            phi_k: FieldMatrix::zero(
                source.registry().field(),
                target.k_dim(),
                source.k_dim(),
            ),
        }
    }

    /// self ∘ other (apply `other` first).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        Ok(TripleMorphism {
            phi_z: self.phi_z.mul(&other.phi_z)?,
            phi_k: self.phi_k.mul(&other.phi_k)?,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.phi_z == IntMatrix::identity(self.phi_z.rows())
            && self.phi_k == FieldMatrix::identity(self.phi_k.field(), self.phi_k.rows())
    }

    /// Exact commutation of the comparison square between `source` and
    /// `target` (which must live on the same side).
    pub fn satisfies_square(&self, source: &PeriodTriple, target: &PeriodTriple) -> Result<bool> {
        if source.side() != target.side() {
            return Err(Error::SideMismatch);
        }
        let reg = source.registry();
        let phi_z = PeriodMatrix::from_int_matrix(reg, &self.phi_z);
        let phi_k = PeriodMatrix::from_field_matrix(reg, &self.phi_k);
        let (lhs, rhs) = match source.side() {
            // ω' ∘ φ_Z = (φ_K ⊗ C) ∘ ω
            Side::Homological => (
                target.omega().mul(&phi_z)?,
                phi_k.mul(source.omega())?,
            ),
            // (φ_Z ⊗ C) ∘ η = η' ∘ (φ_K ⊗ C)
            Side::Cohomological => (
                phi_z.mul(source.omega())?,
                target.omega().mul(&phi_k)?,
            ),
        };
        Ok(lhs == rhs)
    }
}

/// The Hom-group of two triples: a lattice of morphisms on the free parts
/// plus the invariant factors of the finite part.
#[derive(Clone, Debug)]
pub struct HomLattice {
    generators: Vec<TripleMorphism>,
    torsion: Vec<BigInt>,
}

impl HomLattice {
    pub(crate) fn new(generators: Vec<TripleMorphism>, torsion: Vec<BigInt>) -> Self {
        HomLattice { generators, torsion }
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn generators(&self) -> &[TripleMorphism] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty() && self.torsion.is_empty()
    }

    /// (rank, invariant factors): the isomorphism class of the group.
    pub fn invariants(&self) -> (usize, Vec<BigInt>) {
        (self.rank(), self.torsion.clone())
    }
}

/// Torsion part of Hom(H, H'): Hom(Z^n, T') ⊕ Hom(T, T') where n is the
/// free rank of the source and T, T' the torsion parts.
pub(crate) fn hom_torsion_invariants(source: &PeriodTriple, target: &PeriodTriple) -> Vec<BigInt> {
    let mut cyclics: Vec<BigInt> = Vec::new();
    for b in target.torsion() {
        for _ in 0..source.free_rank() {
            cyclics.push(b.clone());
        }
        for a in source.torsion() {
            cyclics.push(a.gcd(b));
        }
    }
    crate::numfield::invariant_factors_of_cyclics(&cyclics)
}

/// Lemma "weights": true iff φ_Z maps each declared weight step of `source`
/// into the corresponding step of `target`.
pub fn check_weight_preservation(
    phi: &TripleMorphism,
    source: &PeriodTriple,
    target: &PeriodTriple,
) -> Result<bool> {
    let sw = source
        .weight()
        .ok_or_else(|| Error::Unsupported("source carries no weight filtration".into()))?;
    if target.weight().is_none() {
        return Err(Error::Unsupported("target carries no weight filtration".into()));
    }
    for (i, step) in sw {
        let target_step = target.weight_at(*i)?;
        let image = phi.phi_z.mul(step.basis())?;
        for c in 0..image.cols() {
            if !target_step.contains(&image.column(c)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Lemma "hodge": true iff φ_K maps the Hodge subspace of the source into
/// the Hodge subspace of the target (exact containment over K).
pub fn check_hodge_preservation(
    phi: &TripleMorphism,
    source: &PeriodTriple,
    target: &PeriodTriple,
) -> Result<bool> {
    let sh = source
        .hodge()
        .ok_or_else(|| Error::Unsupported("source carries no Hodge subspace".into()))?;
    let th = target
        .hodge()
        .ok_or_else(|| Error::Unsupported("target carries no Hodge subspace".into()))?;
    let image = phi.phi_k.mul(sh)?;
    th.spans(&image)
}

/// Rational-entry helper: rows of a matrix as vectors for kernel assembly.
pub(crate) fn rational_rows_to_int(rows: &[Vec<BigRational>], cols: usize) -> IntMatrix {
    IntMatrix::from_fn(rows.len(), cols, |r, c| {
        let mut lcm = BigInt::from(1);
        for x in &rows[r] {
            lcm = lcm.lcm(x.denom());
        }
        (&rows[r][c] * BigRational::from(lcm)).to_integer()
    })
}

pub(crate) fn is_zero_row(row: &[BigRational]) -> bool {
    row.iter().all(|x| x.is_zero())
}
