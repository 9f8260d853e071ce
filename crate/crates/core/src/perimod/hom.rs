//! The exact Hom-group solver.
//!
//! For triples H, H' on the homological side a morphism is a pair
//! (φ_Z, φ_K) with ω'·φ_Z = (φ_K ⊗ C)·ω. Under the algebraic-independence
//! model every matrix entry of that identity is a polynomial identity in the
//! registry symbols, so collecting monomial coefficients turns the square
//! into a Q-linear system in the integer unknowns φ_Z and the K-unknowns
//! φ_K. The solver keeps φ_K as unknowns (no symbolic matrix inversion is
//! needed), solves the joint kernel exactly, projects onto the φ_Z
//! coordinates and saturates to a lattice; φ_K is then recovered per
//! generator and the commuting square is re-verified post-solve. The
//! projection is faithful because the source comparison map is invertible,
//! which pins φ_K to φ_Z.
//!
//! Torsion maps never interact with the comparison maps: torsion-to-torsion
//! and free-to-torsion components are counted by finite abelian group
//! theory, torsion-to-free components vanish.

use std::collections::BTreeSet;
use std::sync::Arc;

use num::{BigInt, BigRational, One, Zero};

use crate::numfield::{
    exact_solve, integer_kernel, integer_solve, saturate, FieldMatrix, IntMatrix,
    Lattice, NumberField,
};
use crate::periodring::{Monomial, PeriodScalar, Poly};
use crate::{Error, Result};

use super::morphism::{hom_torsion_invariants, is_zero_row, rational_rows_to_int};
use super::{HomLattice, PeriodTriple, Side, TripleMorphism};

/// The complete group of morphisms H → H' under the algebraic-independence
/// model. The source must be an "≅" object (its comparison map determines
/// φ_K from φ_Z); both triples must share a side and a frozen registry.
pub fn hom_group(source: &PeriodTriple, target: &PeriodTriple) -> Result<HomLattice> {
    if !source.registry().is_frozen() {
        return Err(Error::RegistryNotFrozen);
    }
    if !Arc::ptr_eq(source.registry(), target.registry()) {
        return Err(Error::Unsupported(
            "triples come from different symbol registries".into(),
        ));
    }
    if source.side() != target.side() {
        return Err(Error::SideMismatch);
    }
    if source.side() == Side::Cohomological {
        // Hom(ςX, ςY) ≅ Hom(X, Y) with the same component matrices.
        let src = source.varsigma_inverse()?;
        let tgt = target.varsigma_inverse()?;
        return hom_group(&src, &tgt);
    }
    source.expect_iso()?;

    let field = source.registry().field().clone();
    let d = field.degree();
    let ns = source.free_rank();
    let nt = target.free_rank();
    let ks = source.k_dim();
    let kt = target.k_dim();
    let n_x = nt * ns;
    let n_phi = kt * ks * d;
    let width = n_x + n_phi;

    // Column layout: X[i][c] at i*ns + c; coordinate t of φ_K[r][j] at
    // n_x + (r*ks + j)*d + t.
    let x_col = |i: usize, c: usize| i * ns + c;
    let phi_col = |r: usize, j: usize, t: usize| n_x + (r * ks + j) * d + t;

    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for r in 0..kt {
        for c in 0..ns {
            // Equation: Σ_i ω'[r,i]·X[i,c] − Σ_j ω[j,c]·φ_K[r,j] = 0.
            let mut scalars: Vec<PeriodScalar> = Vec::with_capacity(nt + ks);
            for i in 0..nt {
                scalars.push(target.omega().entry(r, i).clone());
            }
            for j in 0..ks {
                scalars.push(source.omega().entry(j, c).clone());
            }
            let cleared = clear_denominators(&scalars);

            let mut support: BTreeSet<Monomial> = BTreeSet::new();
            for p in &cleared {
                for (m, _) in p.terms() {
                    support.insert(m.clone());
                }
            }
            for m in &support {
                let mut eq_rows = vec![vec![BigRational::zero(); width]; d];
                for i in 0..nt {
                    if let Some(a) = cleared[i].coefficient(m) {
                        for t in 0..d {
                            eq_rows[t][x_col(i, c)] = a.coords()[t].clone();
                        }
                    }
                }
                for j in 0..ks {
                    if let Some(b) = cleared[nt + j].coefficient(m) {
                        // -b times the unknown field element φ_K[r][j]:
                        // coordinate t' of the unknown contributes the
                        // coordinates of -b·α^{t'}.
                        for t_prime in 0..d {
                            let basis_elem = field.generator().pow(t_prime as u32);
                            let product = b.neg().mul(&basis_elem);
                            for t in 0..d {
                                eq_rows[t][phi_col(r, j, t_prime)] =
                                    product.coords()[t].clone();
                            }
                        }
                    }
                }
                for row in eq_rows {
                    if !is_zero_row(&row) {
                        rows.push(row);
                    }
                }
            }
        }
    }

    // Joint kernel over Q, then project onto the φ_Z block and saturate.
    let generators = if n_x == 0 {
        Vec::new()
    } else if rows.is_empty() {
        // no constraints: every integer matrix is a morphism (ω, ω' empty)
        (0..n_x)
            .map(|u| {
                let phi_z = IntMatrix::from_fn(nt, ns, |i, c| {
                    if x_col(i, c) == u {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                });
                TripleMorphism {
                    phi_z,
                    phi_k: FieldMatrix::zero(&field, kt, ks),
                }
            })
            .collect()
    } else {
        let system = rational_rows_to_int(&rows, width);
        let kernel = integer_kernel(&system);
        let projected: Vec<Vec<BigRational>> = (0..kernel.cols())
            .map(|col| {
                (0..n_x)
                    .map(|u| BigRational::from(kernel.entry(u, col).clone()))
                    .collect()
            })
            .collect();
        let lattice = saturate(n_x, &projected)?;
        let mut gens = Vec::with_capacity(lattice.rank());
        for g in 0..lattice.rank() {
            let xvec = lattice.basis().column(g);
            let phi_z = IntMatrix::from_fn(nt, ns, |i, c| xvec[x_col(i, c)].clone());
            let phi_k = recover_phi_k(&rows, n_x, n_phi, d, &field, &xvec, kt, ks)?;
            let morphism = TripleMorphism { phi_z, phi_k };
            debug_assert!(
                morphism.satisfies_square(source, target)?,
                "solver generator fails the comparison square"
            );
            if !morphism.satisfies_square(source, target)? {
                return Err(Error::Unsupported(
                    "internal: solver generator fails the comparison square".into(),
                ));
            }
            gens.push(morphism);
        }
        gens
    };

    Ok(HomLattice::new(
        generators,
        hom_torsion_invariants(source, target),
    ))
}

/// Multiplies each scalar's numerator by the denominators of all the others,
/// producing polynomials with the same mutual ratios.
fn clear_denominators(scalars: &[PeriodScalar]) -> Vec<Poly> {
    (0..scalars.len())
        .map(|u| {
            let mut p = scalars[u].num().clone();
            for (v, s) in scalars.iter().enumerate() {
                if v != u {
                    p = p.mul(s.den());
                }
            }
            p
        })
        .collect()
}

/// Solves the φ_K block for a fixed integer φ_Z vector. Unique because the
/// source comparison map is invertible.
#[allow(clippy::too_many_arguments)]
fn recover_phi_k(
    rows: &[Vec<BigRational>],
    n_x: usize,
    n_phi: usize,
    d: usize,
    field: &Arc<NumberField>,
    xvec: &[BigInt],
    kt: usize,
    ks: usize,
) -> Result<FieldMatrix> {
    let rationals = NumberField::rationals();
    let a = FieldMatrix::from_fn(&rationals, rows.len(), n_phi, |r, c| {
        rationals.from_rational(rows[r][n_x + c].clone())
    });
    let b = FieldMatrix::from_fn(&rationals, rows.len(), 1, |r, _| {
        let mut acc = BigRational::zero();
        for (u, x) in xvec.iter().enumerate() {
            acc += &rows[r][u] * BigRational::from(x.clone());
        }
        rationals.from_rational(-acc)
    });
    let solution = exact_solve(&a, &b)?.ok_or_else(|| {
        Error::Unsupported("internal: lattice vector is not liftable to a morphism".into())
    })?;
    let coords: Vec<BigRational> = (0..n_phi)
        .map(|i| {
            solution.particular.entry(i, 0)
                .as_rational()
                .expect("rational field")
                .clone()
        })
        .collect();
    let phi_k = FieldMatrix::from_fn(field, kt, ks, |r, j| {
        let base = (r * ks + j) * d;
        field
            .from_coords(coords[base..base + d].to_vec())
            .expect("coordinate chunk has the field degree")
    });
    Ok(phi_k)
}

/// Period cohomology H_ϖ = Hom(Z(0), H) ≅ H_Z ∩ H_K: the lattice classes
/// whose periods are K-rational, together with all of the torsion.
pub fn period_cohomology(h: &PeriodTriple) -> Result<HomLattice> {
    let unit = match h.side() {
        Side::Homological => PeriodTriple::tate(h.registry(), 0),
        Side::Cohomological => PeriodTriple::tate_cohomological(h.registry(), 0),
    };
    hom_group(&unit, h)
}

/// The biextension group of two (realized) triples together with, for equal
/// arguments, the sublattice of alternating elements corresponding to
/// symmetric biextensions.
#[derive(Clone, Debug)]
pub struct BiextGroup {
    pub group: HomLattice,
    pub alternating: Option<Lattice>,
}

/// Biext(N, M; G_m) ≅ (T(N)^∨ ⊗ T(M)^∨ ⊗ Z(1))_ϖ.
pub fn biext_group(h_n: &PeriodTriple, h_m: &PeriodTriple) -> Result<BiextGroup> {
    if h_n.side() != Side::Homological || h_m.side() != Side::Homological {
        return Err(Error::SideMismatch);
    }
    let z1 = PeriodTriple::tate(h_n.registry(), 1);
    let product = h_n.dual()?.tensor(&h_m.dual()?.tensor(&z1)?)?;
    let group = period_cohomology(&product)?;
    let alternating = if h_n == h_m {
        Some(alternating_sublattice(&group, h_n.free_rank())?)
    } else {
        None
    };
    Ok(BiextGroup { group, alternating })
}

/// Pairings in the span of the period-cohomology generators whose n×n
/// matrix is alternating.
fn alternating_sublattice(group: &HomLattice, n: usize) -> Result<Lattice> {
    let ambient = n * n;
    let gens = group.generators();
    if gens.is_empty() {
        return Ok(Lattice::zero(ambient));
    }
    // Conditions on y: Σ_g y_g (v_g[ij] + v_g[ji]) = 0 for i <= j.
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..n {
        for j in i..n {
            let row: Vec<BigInt> = gens
                .iter()
                .map(|g| {
                    let v = |a: usize, b: usize| g.phi_z.entry(a * n + b, 0).clone();
                    v(i, j) + v(j, i)
                })
                .collect();
            rows.push(row);
        }
    }
    let condition = IntMatrix::from_fn(rows.len(), gens.len(), |r, c| rows[r][c].clone());
    let kernel = integer_kernel(&condition);
    let mut combos = IntMatrix::zero(ambient, kernel.cols());
    for k in 0..kernel.cols() {
        for (g, gen) in gens.iter().enumerate() {
            let y = kernel.entry(g, k);
            for a in 0..ambient {
                let add = y * gen.phi_z.entry(a, 0);
                let v = combos.entry(a, k).clone() + add;
                *combos.entry_mut(a, k) = v;
            }
        }
    }
    Lattice::from_generators(ambient, &combos)
}

/// Bounded search for mutually inverse morphisms between two triples.
///
/// Enumerates integer combinations of the Hom(a, b) generators with
/// coefficients in [-bound, bound] and solves the linear system for the
/// inverse exactly over Z. Returns the pair (f, g) with g∘f = id_a and
/// f∘g = id_b when found.
pub fn find_mutually_inverse(
    a: &PeriodTriple,
    b: &PeriodTriple,
    bound: i64,
) -> Result<Option<(TripleMorphism, TripleMorphism)>> {
    // the identity pair short-circuits triples with equal comparison data
    if a.free_rank() == b.free_rank() && a.k_dim() == b.k_dim() {
        let id = TripleMorphism {
            phi_z: IntMatrix::identity(a.free_rank()),
            phi_k: FieldMatrix::identity(a.registry().field(), a.k_dim()),
        };
        if id.satisfies_square(a, b)? && id.satisfies_square(b, a)? {
            return Ok(Some((id.clone(), id)));
        }
    }
    let hom_ab = hom_group(a, b)?;
    let hom_ba = hom_group(b, a)?;
    if hom_ab.rank() == 0 || hom_ba.rank() == 0 {
        // only the zero objects are isomorphic through empty Hom-groups
        let trivial = a.free_rank() == 0 && b.free_rank() == 0;
        if trivial {
            return Ok(Some((
                TripleMorphism::zero(a, b),
                TripleMorphism::zero(b, a),
            )));
        }
        return Ok(None);
    }
    if hom_ab.rank() > 8 {
        return Err(Error::Unsupported(
            "isomorphism search over a Hom-group of rank > 8".into(),
        ));
    }

    let id_a = IntMatrix::identity(a.free_rank());
    let id_b = IntMatrix::identity(b.free_rank());
    let gens_ba = hom_ba.generators();

    let mut coeffs = vec![-bound; hom_ab.rank()];
    'outer: loop {
        if coeffs.iter().any(|&c| c != 0) {
            let coeff_big: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
            let f = linear_combination(
                TripleMorphism::zero(a, b),
                hom_ab.generators(),
                &coeff_big,
            );
            // Solve Σ_j d_j (G_j ∘ f) = id_a and Σ_j d_j (f ∘ G_j) = id_b.
            let na = a.free_rank();
            let nb = b.free_rank();
            let mut m_rows: Vec<Vec<BigInt>> = vec![Vec::new(); na * na + nb * nb];
            for gj in gens_ba {
                let gf = gj.phi_z.mul(&f.phi_z)?; // na × na
                let fg = f.phi_z.mul(&gj.phi_z)?; // nb × nb
                for r in 0..na {
                    for c in 0..na {
                        m_rows[r * na + c].push(gf.entry(r, c).clone());
                    }
                }
                for r in 0..nb {
                    for c in 0..nb {
                        m_rows[na * na + r * nb + c].push(fg.entry(r, c).clone());
                    }
                }
            }
            let m = IntMatrix::from_fn(na * na + nb * nb, gens_ba.len(), |r, c| {
                m_rows[r][c].clone()
            });
            let mut rhs: Vec<BigInt> = Vec::with_capacity(na * na + nb * nb);
            for r in 0..na {
                for c in 0..na {
                    rhs.push(id_a.entry(r, c).clone());
                }
            }
            for r in 0..nb {
                for c in 0..nb {
                    rhs.push(id_b.entry(r, c).clone());
                }
            }
            if let Some(d) = integer_solve(&m, &rhs)? {
                let g = linear_combination(TripleMorphism::zero(b, a), gens_ba, &d);
                if g.compose(&f)?.is_identity() && f.compose(&g)?.is_identity() {
                    return Ok(Some((f, g)));
                }
            }
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == coeffs.len() {
                break 'outer;
            }
            coeffs[pos] += 1;
            if coeffs[pos] <= bound {
                break;
            }
            coeffs[pos] = -bound;
            pos += 1;
        }
    }
    Ok(None)
}

/// base + Σ coeffs[j] · gens[j], componentwise on both matrices.
fn linear_combination(
    base: TripleMorphism,
    gens: &[TripleMorphism],
    coeffs: &[BigInt],
) -> TripleMorphism {
    let mut phi_z = base.phi_z;
    let mut phi_k = base.phi_k;
    for (g, c) in gens.iter().zip(coeffs.iter()) {
        if c.is_zero() {
            continue;
        }
        phi_z = IntMatrix::from_fn(phi_z.rows(), phi_z.cols(), |r, cc| {
            phi_z.entry(r, cc) + c * g.phi_z.entry(r, cc)
        });
        let scale = BigRational::from(c.clone());
        phi_k = FieldMatrix::from_fn(phi_k.field(), phi_k.rows(), phi_k.cols(), |r, cc| {
            phi_k.entry(r, cc).add(&g.phi_k.entry(r, cc).scale(&scale))
        });
    }
    TripleMorphism { phi_z, phi_k }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::NumberField;
    use crate::periodring::{PeriodMatrix, SymbolRegistry};

    fn registry() -> Arc<crate::periodring::SymbolRegistry> {
        let mut reg = SymbolRegistry::new(NumberField::rationals());
        reg.register_log_prime(BigInt::from(2)).unwrap();
        reg.register_log_prime(BigInt::from(3)).unwrap();
        reg.freeze().unwrap()
    }

    /// The period triple of [Z → G_m, 1 ↦ a] for a = 2^e2 · 3^e3:
    /// ω = [[2πi, e2·log2 + e3·log3], [0, 1]].
    fn kummer_triple(
        reg: &Arc<SymbolRegistry>,
        e2: i64,
        e3: i64,
    ) -> PeriodTriple {
        let log2 = PeriodScalar::symbol(reg, reg.lookup("log(2)").unwrap());
        let log3 = PeriodScalar::symbol(reg, reg.lookup("log(3)").unwrap());
        let field = reg.field().clone();
        let log_a = log2
            .scale_field(&field.from_integer(e2))
            .add(&log3.scale_field(&field.from_integer(e3)));
        let mut omega = PeriodMatrix::identity(reg, 2);
        *omega.entry_mut(0, 0) = PeriodScalar::two_pi_i(reg);
        *omega.entry_mut(0, 1) = log_a;
        PeriodTriple::new(Side::Homological, 2, Vec::new(), 2, omega, None, None).unwrap()
    }

    #[test]
    fn hom_of_tate_objects() {
        let reg = registry();
        let z0 = PeriodTriple::tate(&reg, 0);
        let z1 = PeriodTriple::tate(&reg, 1);
        // Hom(Z(0), Z(1)) = 0: the 2πi coefficient forces φ = 0
        assert!(hom_group(&z0, &z1).unwrap().is_zero());
        assert!(hom_group(&z1, &z0).unwrap().is_zero());
        // Hom(Z(1), Z(1)) ≅ Z generated by the identity
        let endo = hom_group(&z1, &z1).unwrap();
        assert_eq!(endo.rank(), 1);
        assert!(endo.torsion().is_empty());
        assert!(endo.generators()[0].is_identity()
            || endo.generators()[0]
                .phi_z
                .entry(0, 0)
                .clone()
                == BigInt::from(-1));
    }

    #[test]
    fn hom_of_kummer_triples_two_vs_four() {
        let reg = registry();
        let m2 = kummer_triple(&reg, 1, 0); // a = 2
        let m4 = kummer_triple(&reg, 2, 0); // a = 4
        let hom = hom_group(&m2, &m4).unwrap();
        assert_eq!(hom.rank(), 1);
        let g = &hom.generators()[0].phi_z;
        // generator: lattice part f = ±1, torus part the squaring character
        let f = g.entry(1, 1).clone();
        let c = g.entry(0, 0).clone();
        assert_eq!(c, BigInt::from(2) * &f);
        assert_eq!(g.entry(0, 1), &BigInt::from(0));
        assert_eq!(g.entry(1, 0), &BigInt::from(0));
    }

    #[test]
    fn hom_of_kummer_triples_two_vs_three() {
        let reg = registry();
        let m2 = kummer_triple(&reg, 1, 0);
        let m3 = kummer_triple(&reg, 0, 1);
        // log2 and log3 are independent: only the zero morphism
        assert!(hom_group(&m2, &m3).unwrap().is_zero());
    }

    #[test]
    fn twist_vanishing_against_torus_realization() {
        let reg = registry();
        // realization of [0 → G_m^2]: (Z^2, K^2, 2πi·I)
        let omega = PeriodMatrix::identity(&reg, 2)
            .scale(&PeriodScalar::two_pi_i(&reg));
        let torus =
            PeriodTriple::new(Side::Homological, 2, Vec::new(), 2, omega, None, None).unwrap();
        for q in [-2i64, 2, 3] {
            let zq = PeriodTriple::tate(&reg, q);
            assert!(hom_group(&zq, &torus).unwrap().is_zero(), "q = {q}");
        }
        // q = 1 picks out the characters Z^2
        let z1 = PeriodTriple::tate(&reg, 1);
        assert_eq!(hom_group(&z1, &torus).unwrap().rank(), 2);
    }

    #[test]
    fn period_cohomology_of_tate_objects() {
        let reg = registry();
        assert_eq!(
            period_cohomology(&PeriodTriple::tate(&reg, 0)).unwrap().rank(),
            1
        );
        assert!(period_cohomology(&PeriodTriple::tate(&reg, 1)).unwrap().is_zero());
        assert!(period_cohomology(&PeriodTriple::tate(&reg, -1)).unwrap().is_zero());
    }

    #[test]
    fn period_cohomology_of_trivial_kummer() {
        let reg = registry();
        // a = 1: ω = [[2πi, 0], [0, 1]]; H_ϖ = Z (the lattice generator)
        let h = kummer_triple(&reg, 0, 0);
        let coh = period_cohomology(&h).unwrap();
        assert_eq!(coh.rank(), 1);
        let v = &coh.generators()[0].phi_z;
        assert_eq!(v.entry(0, 0), &BigInt::from(0));
        assert_eq!(v.entry(1, 0).clone(), BigInt::from(1));
    }

    #[test]
    fn hom_respects_duality() {
        let reg = registry();
        let a = kummer_triple(&reg, 1, 0);
        let b = kummer_triple(&reg, 2, 0);
        let direct = hom_group(&a, &b).unwrap();
        let dualized = hom_group(&b.dual().unwrap(), &a.dual().unwrap()).unwrap();
        assert_eq!(direct.invariants(), dualized.invariants());
    }

    #[test]
    fn hom_on_cohomological_side_matches() {
        let reg = registry();
        let a = kummer_triple(&reg, 1, 0);
        let b = kummer_triple(&reg, 2, 0);
        let hom = hom_group(&a, &b).unwrap();
        let coh = hom_group(&a.varsigma().unwrap(), &b.varsigma().unwrap()).unwrap();
        assert_eq!(hom.invariants(), coh.invariants());
    }

    #[test]
    fn torsion_bookkeeping() {
        let reg = registry();
        // source (Z ⊕ Z/2, K, [2πi]); target (Z ⊕ Z/4, K, [2πi])
        let omega = PeriodMatrix::from_fn(&reg, 1, 1, |_, _| PeriodScalar::two_pi_i(&reg));
        let src = PeriodTriple::new(
            Side::Homological,
            1,
            vec![BigInt::from(2)],
            1,
            omega.clone(),
            None,
            None,
        )
        .unwrap();
        let dst = PeriodTriple::new(
            Side::Homological,
            1,
            vec![BigInt::from(4)],
            1,
            omega,
            None,
            None,
        )
        .unwrap();
        let hom = hom_group(&src, &dst).unwrap();
        // free part: Hom(Z(1), Z(1)) = Z; torsion: Hom(Z, Z/4) ⊕ Hom(Z/2, Z/4)
        assert_eq!(hom.rank(), 1);
        assert_eq!(
            hom.torsion().to_vec(),
            vec![BigInt::from(2), BigInt::from(4)]
        );
    }

    #[test]
    fn biext_of_tate_objects() {
        let reg = registry();
        let z0 = PeriodTriple::tate(&reg, 0);
        let z1 = PeriodTriple::tate(&reg, 1);
        // N = M = Z(1) (torus): Z(-1)⊗Z(-1)⊗Z(1) = Z(-1), H_ϖ = 0
        let b = biext_group(&z1, &z1).unwrap();
        assert!(b.group.is_zero());
        // N = Z(0) (lattice), M = Z(1) (torus): Z(0)⊗Z(-1)⊗Z(1) = Z(0), H_ϖ = Z
        let b = biext_group(&z0, &z1).unwrap();
        assert_eq!(b.group.rank(), 1);
        // N = M = Z(0): result Z(1), H_ϖ = 0; alternating part of 0 is 0
        let b = biext_group(&z0, &z0).unwrap();
        assert!(b.group.is_zero());
        assert_eq!(b.alternating.unwrap().rank(), 0);
    }

    #[test]
    fn mutually_inverse_search_finds_canonical_isos() {
        let reg = registry();
        let m2 = kummer_triple(&reg, 1, 0);
        // H and (H^∨)^∨ are equal on the nose, so certainly isomorphic
        let ddual = m2.dual().unwrap().dual().unwrap();
        let pair = find_mutually_inverse(&m2, &ddual, 2).unwrap();
        assert!(pair.is_some());
        // Z(0) and Z(1) are not isomorphic
        let z0 = PeriodTriple::tate(&reg, 0);
        let z1 = PeriodTriple::tate(&reg, 1);
        assert!(find_mutually_inverse(&z0, &z1, 2).unwrap().is_none());
    }
}
