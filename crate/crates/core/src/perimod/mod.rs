//! The category of period triples and its cohomological mirror.
//!
//! A homological object is a triple (H_Z, H_K, ω) with H_Z a finitely
//! generated abelian group, H_K a K-vector space and ω: H_Z → H_K ⊗ C a
//! group homomorphism; a cohomological object carries instead a comparison
//! η: H_K ⊗ C → H_Z ⊗ C. Matrix entries live in the formal period ring, so
//! "ω_C invertible" is the exact statement det(ω) ≠ 0 in that ring. Since
//! H_K ⊗ C is torsion free, ω kills torsion and only the free part of H_Z
//! enters the matrix; torsion is carried along as invariant factors.

mod hom;
mod morphism;

pub use hom::{biext_group, find_mutually_inverse, hom_group, period_cohomology, BiextGroup};
pub use morphism::{
    check_hodge_preservation, check_weight_preservation, HomLattice, TripleMorphism,
};

use std::fmt;
use std::sync::Arc;

use num::{BigInt, Zero};

use crate::numfield::{invariant_factors_of_cyclics, FieldMatrix, Lattice};
use crate::periodring::{PeriodMatrix, PeriodScalar, SymbolRegistry};
use crate::{Error, Result};

/// Which side of the period equivalence an object lives on.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    /// (H_Z, H_K, ω) with ω: H_Z → H_K ⊗ C.
    Homological,
    /// (H_K, H_Z, η) with η: H_K ⊗ C → H_Z ⊗ C.
    Cohomological,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Homological => write!(f, "homological"),
            Side::Cohomological => write!(f, "cohomological"),
        }
    }
}

/// Weight filtration: increasing steps (i, sublattice of the free part).
/// Between declared steps the filtration is constant; below the first step
/// it is zero and at 0 and above it is everything.
pub type WeightFiltration = Vec<(i32, Lattice)>;

/// An object of the period category.
#[derive(Clone, PartialEq)]
pub struct PeriodTriple {
    side: Side,
    free_rank: usize,
    torsion: Vec<BigInt>,
    k_dim: usize,
    /// Homological: k_dim × free_rank. Cohomological: free_rank × k_dim.
    omega: PeriodMatrix,
    weight: Option<WeightFiltration>,
    hodge: Option<FieldMatrix>,
    iso: bool,
}

impl PeriodTriple {
    /// Validates and builds a triple; the "≅" flag is computed by testing
    /// det(ω) ≠ 0 in the symbol ring.
    pub fn new(
        side: Side,
        free_rank: usize,
        torsion: Vec<BigInt>,
        k_dim: usize,
        omega: PeriodMatrix,
        weight: Option<WeightFiltration>,
        hodge: Option<FieldMatrix>,
    ) -> Result<Self> {
        let (want_rows, want_cols) = match side {
            Side::Homological => (k_dim, free_rank),
            Side::Cohomological => (free_rank, k_dim),
        };
        if omega.rows() != want_rows || omega.cols() != want_cols {
            return Err(Error::DimensionMismatch(format!(
                "comparison matrix is {}x{}, expected {}x{}",
                omega.rows(),
                omega.cols(),
                want_rows,
                want_cols
            )));
        }
        for t in &torsion {
            if t < &BigInt::from(2) {
                return Err(Error::Unsupported(
                    "torsion invariant factors must be at least 2".into(),
                ));
            }
        }
        let torsion = invariant_factors_of_cyclics(&torsion);
        if let Some(w) = &weight {
            let mut prev: Option<&(i32, Lattice)> = None;
            for step in w {
                if step.1.ambient_rank() != free_rank {
                    return Err(Error::DimensionMismatch(
                        "weight sublattice has wrong ambient rank".into(),
                    ));
                }
                if !step.1.is_saturated() {
                    return Err(Error::Unsupported(
                        "weight sublattices must be saturated".into(),
                    ));
                }
                if let Some(p) = prev {
                    if p.0 >= step.0 || !p.1.is_sublattice_of(&step.1) {
                        return Err(Error::Unsupported(
                            "weight filtration must be strictly increasing and nested".into(),
                        ));
                    }
                }
                prev = Some(step);
            }
        }
        if let Some(h) = &hodge {
            if h.rows() != k_dim {
                return Err(Error::DimensionMismatch(
                    "Hodge subspace basis has wrong row count".into(),
                ));
            }
            if h.cols() > k_dim {
                return Err(Error::DimensionMismatch(
                    "Hodge subspace dimension exceeds the space".into(),
                ));
            }
        }
        let iso = free_rank == k_dim && !omega.det()?.is_zero();
        Ok(PeriodTriple {
            side,
            free_rank,
            torsion,
            k_dim,
            omega,
            weight,
            hodge,
            iso,
        })
    }

    /// The Tate object Z(r) = (Z, K, (2πi)^r) on the homological side.
    pub fn tate(registry: &Arc<SymbolRegistry>, r: i64) -> Self {
        let omega = PeriodMatrix::from_fn(registry, 1, 1, |_, _| {
            PeriodScalar::two_pi_i_pow(registry, r)
        });
        PeriodTriple::new(Side::Homological, 1, Vec::new(), 1, omega, None, None)
            .expect("Tate object is well-formed")
    }

    /// ς(Z(r)), the Tate object of the cohomological side; its comparison
    /// matrix is (2πi)^{-r}.
    pub fn tate_cohomological(registry: &Arc<SymbolRegistry>, r: i64) -> Self {
        Self::tate(registry, r)
            .varsigma()
            .expect("Tate objects are invertible")
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn k_dim(&self) -> usize {
        self.k_dim
    }

    pub fn omega(&self) -> &PeriodMatrix {
        &self.omega
    }

    pub fn weight(&self) -> Option<&WeightFiltration> {
        self.weight.as_ref()
    }

    pub fn hodge(&self) -> Option<&FieldMatrix> {
        self.hodge.as_ref()
    }

    pub fn registry(&self) -> &Arc<SymbolRegistry> {
        self.omega.registry()
    }

    /// Whether ω_C is invertible, i.e. the object lies in the "≅"
    /// subcategory.
    pub fn is_iso(&self) -> bool {
        self.iso
    }

    pub fn expect_iso(&self) -> Result<()> {
        if self.iso {
            Ok(())
        } else {
            Err(Error::NotIsomorphism(
                "comparison map has vanishing determinant or is not square".into(),
            ))
        }
    }

    fn expect_free(&self, what: &str) -> Result<()> {
        if self.is_free() {
            Ok(())
        } else {
            Err(Error::TorsionPresent(what.into()))
        }
    }

    /// The weight step at index i (step-function semantics).
    pub fn weight_at(&self, i: i32) -> Result<Lattice> {
        let w = self
            .weight
            .as_ref()
            .ok_or_else(|| Error::Unsupported("triple carries no weight filtration".into()))?;
        let mut current = Lattice::zero(self.free_rank);
        for (idx, lat) in w {
            if *idx <= i {
                current = lat.clone();
            }
        }
        Ok(current)
    }

    /// Tensor product: Kronecker products of lattices, spaces and comparison
    /// matrices. Torsion is out of scope for tensor. Weight filtrations
    /// convolve when both factors carry one.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.side != other.side {
            return Err(Error::SideMismatch);
        }
        self.expect_free("tensor with torsion")?;
        other.expect_free("tensor with torsion")?;
        let omega = self.omega.kronecker(&other.omega);
        let weight = match (&self.weight, &other.weight) {
            (Some(wa), Some(wb)) => Some(convolve_weights(
                wa,
                self.free_rank,
                wb,
                other.free_rank,
            )?),
            _ => None,
        };
        PeriodTriple::new(
            self.side,
            self.free_rank * other.free_rank,
            Vec::new(),
            self.k_dim * other.k_dim,
            omega,
            weight,
            None,
        )
    }

    /// The dual (H_Z^∨, H_K^∨, ω^∨); the comparison matrix is the
    /// transpose-inverse. Requires a free "≅" object; satisfies
    /// (H^∨)^∨ = H on the nose.
    pub fn dual(&self) -> Result<Self> {
        self.expect_free("dual of a triple with torsion")?;
        self.expect_iso()?;
        let omega = self.omega.inverse()?.transpose();
        PeriodTriple::new(
            self.side,
            self.free_rank,
            Vec::new(),
            self.k_dim,
            omega,
            None,
            None,
        )
    }

    /// Tate twist H(r) = H ⊗ Z(r): the comparison matrix scales by (2πi)^r
    /// on the homological side and by (2πi)^{-r} on the cohomological side.
    /// Weight steps shift by -2r; the Hodge subspace is unchanged.
    pub fn tate_twist(&self, r: i64) -> Result<Self> {
        let exponent = match self.side {
            Side::Homological => r,
            Side::Cohomological => -r,
        };
        let factor = PeriodScalar::two_pi_i_pow(self.registry(), exponent);
        let omega = self.omega.scale(&factor);
        let weight = self.weight.as_ref().map(|w| {
            w.iter()
                .map(|(i, l)| (i - 2 * r as i32, l.clone()))
                .collect()
        });
        PeriodTriple::new(
            self.side,
            self.free_rank,
            self.torsion.clone(),
            self.k_dim,
            omega,
            weight,
            self.hodge.clone(),
        )
    }

    /// Cartier dual H^* = H^∨(1) = (H_Z^∨, H_K^∨, 2πi·ω^∨).
    pub fn cartier_dual(&self) -> Result<Self> {
        self.dual()?.tate_twist(1)
    }

    /// ς(H_Z, H_K, ω) = (H_K, H_Z, ω_C^{-1}): the equivalence onto the
    /// cohomological side.
    pub fn varsigma(&self) -> Result<Self> {
        if self.side != Side::Homological {
            return Err(Error::SideMismatch);
        }
        self.flip_side(Side::Cohomological)
    }

    /// Inverse of [`PeriodTriple::varsigma`].
    pub fn varsigma_inverse(&self) -> Result<Self> {
        if self.side != Side::Cohomological {
            return Err(Error::SideMismatch);
        }
        self.flip_side(Side::Homological)
    }

    fn flip_side(&self, new_side: Side) -> Result<Self> {
        self.expect_iso()?;
        let omega = self.omega.inverse()?;
        PeriodTriple::new(
            new_side,
            self.free_rank,
            self.torsion.clone(),
            self.k_dim,
            omega,
            self.weight.clone(),
            self.hodge.clone(),
        )
    }

    pub fn with_filtrations(
        mut self,
        weight: Option<WeightFiltration>,
        hodge: Option<FieldMatrix>,
    ) -> Result<Self> {
        let rebuilt = PeriodTriple::new(
            self.side,
            self.free_rank,
            std::mem::take(&mut self.torsion),
            self.k_dim,
            self.omega,
            weight,
            hodge,
        )?;
        Ok(rebuilt)
    }
}

impl fmt::Debug for PeriodTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PeriodTriple({}, free rank {}, torsion {:?}, K-dim {}, iso: {}) {}",
            self.side, self.free_rank, self.torsion, self.k_dim, self.iso, self.omega
        )
    }
}

/// Convolution of two step filtrations on a Kronecker product:
/// W_n = Σ_{i+j<=n} W_i ⊗ W_j, saturated.
fn convolve_weights(
    wa: &WeightFiltration,
    rank_a: usize,
    wb: &WeightFiltration,
    rank_b: usize,
) -> Result<WeightFiltration> {
    use num::BigRational;

    let ambient = rank_a * rank_b;
    let mut breakpoints: Vec<i32> = Vec::new();
    for (ia, _) in wa {
        for (ib, _) in wb {
            if !breakpoints.contains(&(ia + ib)) {
                breakpoints.push(ia + ib);
            }
        }
    }
    breakpoints.sort();
    let mut out: WeightFiltration = Vec::new();
    for &n in &breakpoints {
        let mut span: Vec<Vec<BigRational>> = Vec::new();
        for (ia, la) in wa {
            for (ib, lb) in wb {
                if ia + ib > n {
                    continue;
                }
                for ca in 0..la.rank() {
                    for cb in 0..lb.rank() {
                        let va = la.basis().column(ca);
                        let vb = lb.basis().column(cb);
                        let mut v = vec![BigRational::zero(); ambient];
                        for (i, x) in va.iter().enumerate() {
                            for (j, y) in vb.iter().enumerate() {
                                v[i * rank_b + j] = BigRational::from(x * y);
                            }
                        }
                        span.push(v);
                    }
                }
            }
        }
        let lattice = crate::numfield::saturate(ambient, &span)?;
        if out.last().map(|(_, l)| l == &lattice).unwrap_or(false) {
            continue;
        }
        out.push((n, lattice));
    }
    Ok(out)
}
