//! Exact multiplicative linear algebra on 1-motives: the direct Hom-group
//! of torus-lattice motives and the kernel of u.
//!
//! Values in K* are decomposed into exponent vectors over rational primes
//! (plus declared multiplicative-basis elements over number fields and a
//! sign bit); commuting-square conditions then become integer linear
//! equations together with mod-2 sign conditions. Abelian point labels act
//! as additional independent coordinates, which is the algebraic-
//! independence model on the abelian side.

use std::sync::Arc;

use num::{BigInt, BigRational, Signed, Zero};

use crate::numfield::{integer_kernel, FieldElem, IntMatrix, Lattice, NumberField};
use crate::periodring::factor_rational;
use crate::{Error, Result};

use super::{pow_signed, OneMotive};

/// A coordinate of the multiplicative exponent space.
#[derive(Clone, PartialEq, Eq, Debug)]
enum MultKey {
    Prime(BigInt),
    Unit(usize),
    Point(String),
}

/// Signed exponent vector of a value in K*; `negative` is the sign bit.
struct Decomposition {
    exponents: Vec<(MultKey, i64)>,
    negative: bool,
}

fn decompose(
    value: &FieldElem,
    field: &Arc<NumberField>,
    units: &[FieldElem],
) -> Result<Decomposition> {
    if value.is_zero() {
        return Err(Error::Unsupported("multiplicative decomposition of zero".into()));
    }
    if value.is_one() {
        return Ok(Decomposition {
            exponents: Vec::new(),
            negative: false,
        });
    }
    if *value == field.from_integer(-1) {
        return Ok(Decomposition {
            exponents: Vec::new(),
            negative: true,
        });
    }
    if field.is_rational() {
        let q = value.as_rational().expect("rational base field");
        let exponents = factor_rational(q)?
            .into_iter()
            .map(|(p, e)| (MultKey::Prime(p), e))
            .collect();
        return Ok(Decomposition {
            exponents,
            negative: q.is_negative(),
        });
    }
    if let Some(i) = units.iter().position(|u| u == value) {
        return Ok(Decomposition {
            exponents: vec![(MultKey::Unit(i), 1)],
            negative: false,
        });
    }
    Err(Error::UndeclaredUnit(value.to_string()))
}

/// Accumulates rows of exact conditions and of mod-2 sign conditions over a
/// common set of unknowns, then solves for the integer kernel.
struct MultiplicativeSystem {
    unknowns: usize,
    keys: Vec<MultKey>,
    /// exact rows, indexed by key: row per (equation, key)
    exact: Vec<Vec<BigInt>>,
    /// mod-2 rows
    signs: Vec<Vec<BigInt>>,
}

impl MultiplicativeSystem {
    fn new(unknowns: usize) -> Self {
        MultiplicativeSystem {
            unknowns,
            keys: Vec::new(),
            exact: Vec::new(),
            signs: Vec::new(),
        }
    }

    fn key_index(&mut self, key: MultKey) -> usize {
        if let Some(i) = self.keys.iter().position(|k| k == &key) {
            return i;
        }
        self.keys.push(key);
        self.keys.len() - 1
    }

    /// Adds the condition Π value_t^{sum of unknown terms} = 1 where each
    /// (unknown, coefficient, value) contributes value^{coefficient·unknown}.
    fn add_product_condition(
        &mut self,
        terms: &[(usize, i64, Decomposition)],
    ) {
        // one exact row per key present, one sign row
        let mut rows: Vec<(usize, Vec<BigInt>)> = Vec::new();
        let mut sign_row = vec![BigInt::zero(); self.unknowns];
        let mut sign_nonzero = false;
        for (unknown, coeff, dec) in terms {
            for (key, e) in &dec.exponents {
                let ki = self.key_index(key.clone());
                let row = match rows.iter_mut().find(|(k, _)| *k == ki) {
                    Some((_, row)) => row,
                    None => {
                        rows.push((ki, vec![BigInt::zero(); self.unknowns]));
                        &mut rows.last_mut().unwrap().1
                    }
                };
                row[*unknown] += BigInt::from(*coeff) * BigInt::from(*e);
            }
            if dec.negative {
                sign_row[*unknown] += BigInt::from(*coeff);
                sign_nonzero = true;
            }
        }
        for (_, row) in rows {
            if row.iter().any(|x| !x.is_zero()) {
                self.exact.push(row);
            }
        }
        if sign_nonzero {
            self.signs.push(sign_row);
        }
    }

    /// The kernel: integer vectors satisfying every exact row and every
    /// sign row mod 2. Not saturated on purpose: sign conditions cut out
    /// genuine finite-index subgroups.
    fn solve(&self) -> Result<Lattice> {
        let n = self.unknowns;
        let exact = IntMatrix::from_fn(self.exact.len(), n, |r, c| self.exact[r][c].clone());
        let k1 = integer_kernel(&exact); // n × m
        if self.signs.is_empty() || k1.cols() == 0 {
            return Lattice::from_generators(n, &k1);
        }
        let m = k1.cols();
        let sign_rows = self.signs.len();
        // rows: S · k1 · y ≡ 0 (mod 2) — solve over Z with slack columns
        let sk = IntMatrix::from_fn(sign_rows, m, |r, c| {
            let mut acc = BigInt::zero();
            for u in 0..n {
                acc += &self.signs[r][u] * k1.entry(u, c);
            }
            acc
        });
        let augmented = IntMatrix::from_fn(sign_rows, m + sign_rows, |r, c| {
            if c < m {
                sk.entry(r, c).clone()
            } else if c == m + r {
                BigInt::from(2)
            } else {
                BigInt::zero()
            }
        });
        let kernel = integer_kernel(&augmented);
        let y_part = IntMatrix::from_fn(m, kernel.cols(), |r, c| kernel.entry(r, c).clone());
        let final_gens = k1.mul(&y_part)?;
        Lattice::from_generators(n, &final_gens)
    }
}

/// ker u on a 1-motive: the integer vectors n with Π_j a_{cj}^{n_j} = 1 in
/// every torus coordinate and vanishing abelian image, plus the torsion
/// kernel.
#[derive(Clone, Debug)]
pub struct KerU {
    /// Kernel on the free part of L, as a (not necessarily saturated)
    /// sublattice of Z^rank.
    pub lattice: Lattice,
    /// Invariant factors of ker(u) ∩ L_tor.
    pub torsion: Vec<BigInt>,
}

impl KerU {
    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn invariants(&self) -> (usize, Vec<BigInt>) {
        (self.rank(), self.torsion.clone())
    }
}

/// Computes ker u exactly. `units` is the declared multiplicative basis for
/// number-field values (must match the registry declaration used for
/// realizations; empty over Q).
pub fn ker_u(motive: &OneMotive, units: &[FieldElem]) -> Result<KerU> {
    let r = motive.lattice_rank();
    let field = motive.field();
    let mut system = MultiplicativeSystem::new(r);
    for c in 0..motive.torus_rank() {
        let terms: Vec<(usize, i64, Decomposition)> = (0..r)
            .map(|j| {
                decompose(motive.u_torus().entry(c, j), field, units).map(|d| (j, 1i64, d))
            })
            .collect::<Result<_>>()?;
        system.add_product_condition(&terms);
    }
    // abelian labels: independent points force Σ_{label_j = P} n_j = 0
    let mut labels: Vec<&String> = Vec::new();
    for label in motive.u_abelian().iter().flatten() {
        if !labels.contains(&label) {
            labels.push(label);
        }
    }
    for label in labels {
        let terms: Vec<(usize, i64, Decomposition)> = motive
            .u_abelian()
            .iter()
            .enumerate()
            .filter(|(_, l)| l.as_ref() == Some(label))
            .map(|(j, _)| {
                (
                    j,
                    1i64,
                    Decomposition {
                        exponents: vec![(MultKey::Point(label.clone()), 1)],
                        negative: false,
                    },
                )
            })
            .collect();
        system.add_product_condition(&terms);
    }
    let lattice = system.solve()?;

    // torsion kernel via the same enumeration as torsion_parts
    let torsion = if motive.lattice_torsion().is_empty() {
        Vec::new()
    } else {
        motive.torsion_parts()?.tor.lattice_torsion().to_vec()
    };
    Ok(KerU { lattice, torsion })
}

/// A morphism of torus-lattice 1-motives: a lattice map f together with a
/// character matrix g with v∘f = g∘u.
#[derive(Clone, Debug, PartialEq)]
pub struct MotiveMorphism {
    /// target_rank × source_rank on the lattices.
    pub f: IntMatrix,
    /// target_torus × source_torus character matrix.
    pub g: IntMatrix,
}

/// The Hom-group of two free torus-lattice motives.
#[derive(Clone, Debug)]
pub struct MotiveHom {
    generators: Vec<MotiveMorphism>,
}

impl MotiveHom {
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[MotiveMorphism] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// (rank, invariant factors): free motives have torsion-free Hom.
    pub fn invariants(&self) -> (usize, Vec<BigInt>) {
        (self.rank(), Vec::new())
    }
}

/// All pairs (f, g) with v∘f = g∘u, decided by exponent vectors.
pub fn hom_motives(
    source: &OneMotive,
    target: &OneMotive,
    units: &[FieldElem],
) -> Result<MotiveHom> {
    source.expect_free("hom of motives with torsion")?;
    target.expect_free("hom of motives with torsion")?;
    if source.abelian().is_some() || target.abelian().is_some() {
        return Err(Error::Unsupported(
            "direct motive Hom is torus-lattice only; use the realization solver".into(),
        ));
    }
    let field = source.field();
    let rm = source.lattice_rank();
    let sm = source.torus_rank();
    let rn = target.lattice_rank();
    let sn = target.torus_rank();
    let n_f = rn * rm;
    let n_g = sn * sm;
    let f_col = |jp: usize, j: usize| jp * rm + j;
    let g_col = |cp: usize, c: usize| n_f + cp * sm + c;

    let mut system = MultiplicativeSystem::new(n_f + n_g);
    for cp in 0..sn {
        for j in 0..rm {
            // Π_{j'} b[cp][j']^{F[j'][j]} · Π_c a[c][j]^{-G[cp][c]} = 1
            let mut terms: Vec<(usize, i64, Decomposition)> = Vec::new();
            for jp in 0..rn {
                let dec = decompose(target.u_torus().entry(cp, jp), field, units)?;
                terms.push((f_col(jp, j), 1, dec));
            }
            for c in 0..sm {
                let dec = decompose(source.u_torus().entry(c, j), field, units)?;
                terms.push((g_col(cp, c), -1, dec));
            }
            system.add_product_condition(&terms);
        }
    }
    let lattice = system.solve()?;
    let mut generators = Vec::with_capacity(lattice.rank());
    for k in 0..lattice.rank() {
        let v = lattice.basis().column(k);
        let f = IntMatrix::from_fn(rn, rm, |jp, j| v[f_col(jp, j)].clone());
        let g = IntMatrix::from_fn(sn, sm, |cp, c| v[g_col(cp, c)].clone());
        let morphism = MotiveMorphism { f, g };
        debug_assert!(morphism_commutes(&morphism, source, target)?);
        generators.push(morphism);
    }
    Ok(MotiveHom { generators })
}

/// Exact check v∘f = g∘u by evaluating products in K*.
pub(crate) fn morphism_commutes(
    phi: &MotiveMorphism,
    source: &OneMotive,
    target: &OneMotive,
) -> Result<bool> {
    let field = source.field();
    for cp in 0..target.torus_rank() {
        for j in 0..source.lattice_rank() {
            let mut lhs = field.one();
            for jp in 0..target.lattice_rank() {
                lhs = lhs.mul(&pow_signed(
                    target.u_torus().entry(cp, jp),
                    phi.f.entry(jp, j),
                ));
            }
            let mut rhs = field.one();
            for c in 0..source.torus_rank() {
                rhs = rhs.mul(&pow_signed(
                    source.u_torus().entry(c, j),
                    phi.g.entry(cp, c),
                ));
            }
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Convenience: i64 multiplication of BigRational for tests.
#[allow(dead_code)]
pub(crate) fn big_rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::One;

    fn q_field() -> Arc<NumberField> {
        NumberField::rationals()
    }

    fn kummer(a: i64) -> OneMotive {
        let f = q_field();
        OneMotive::kummer(&f, f.from_integer(a)).unwrap()
    }

    #[test]
    fn ker_u_examples() {
        let f = q_field();
        // [Z → 2]: 2^n = 1 only for n = 0
        assert_eq!(ker_u(&kummer(2), &[]).unwrap().rank(), 0);
        // [Z → 1]: u = 0, kernel is Z
        assert_eq!(ker_u(&kummer(1), &[]).unwrap().rank(), 1);
        // [Z² → G_m], u(e1) = 2, u(e2) = 4: kernel Z·(2, -1)
        let m = OneMotive::torus_lattice(
            &f,
            crate::numfield::FieldMatrix::from_fn(&f, 1, 2, |_, c| {
                f.from_integer(if c == 0 { 2 } else { 4 })
            }),
        )
        .unwrap();
        let k = ker_u(&m, &[]).unwrap();
        assert_eq!(k.rank(), 1);
        let v = k.lattice.basis().column(0);
        assert_eq!(v[0].abs() * 1, BigInt::from(2));
        assert_eq!(v[1].abs(), BigInt::from(1));
    }

    #[test]
    fn ker_u_sign_subtlety() {
        // [Z → -1]: (-1)^n = 1 iff n even: kernel 2Z, not saturated
        let k = ker_u(&kummer(-1), &[]).unwrap();
        assert_eq!(k.rank(), 1);
        assert_eq!(k.lattice.basis().column(0)[0].abs(), BigInt::from(2));
    }

    #[test]
    fn ker_u_abelian_labels() {
        let f = q_field();
        // two generators on the same formal point: kernel (1, -1)
        let m = OneMotive::abelian_lattice(
            &f,
            super::super::AbelianDatum::elliptic("e"),
            vec![Some("P".into()), Some("P".into())],
        )
        .unwrap();
        let k = ker_u(&m, &[]).unwrap();
        assert_eq!(k.rank(), 1);
        // distinct formal points: kernel 0
        let m2 = OneMotive::abelian_lattice(
            &f,
            super::super::AbelianDatum::elliptic("e"),
            vec![Some("P".into()), Some("Q".into())],
        )
        .unwrap();
        assert_eq!(ker_u(&m2, &[]).unwrap().rank(), 0);
    }

    #[test]
    fn hom_two_to_four_is_squaring() {
        let hom = hom_motives(&kummer(2), &kummer(4), &[]).unwrap();
        assert_eq!(hom.rank(), 1);
        let gen = &hom.generators()[0];
        // 2^m = 4^n forces m = 2n: f = ±1, g = ±2
        let f = gen.f.entry(0, 0).clone();
        let g = gen.g.entry(0, 0).clone();
        assert_eq!(g, BigInt::from(2) * &f);
        assert_eq!(f.abs(), BigInt::one());
    }

    #[test]
    fn hom_two_to_three_vanishes() {
        assert!(hom_motives(&kummer(2), &kummer(3), &[]).unwrap().is_zero());
    }

    #[test]
    fn hom_from_torus_is_characters() {
        let f = q_field();
        let torus = OneMotive::torus_only(&f, 1);
        let hom = hom_motives(&torus, &kummer(5), &[]).unwrap();
        assert_eq!(hom.rank(), 1);
        assert_eq!(hom.generators()[0].g.entry(0, 0).abs(), BigInt::one());
    }

    #[test]
    fn hom_generators_commute() {
        let f = q_field();
        let m = OneMotive::torus_lattice(
            &f,
            crate::numfield::FieldMatrix::from_fn(&f, 2, 1, |r, _| {
                f.from_integer(if r == 0 { 2 } else { 6 })
            }),
        )
        .unwrap();
        let n = OneMotive::torus_lattice(
            &f,
            crate::numfield::FieldMatrix::from_fn(&f, 1, 2, |_, c| {
                f.from_integer(if c == 0 { 4 } else { -1 })
            }),
        )
        .unwrap();
        for pair in [(&m, &n), (&n, &m)] {
            let hom = hom_motives(pair.0, pair.1, &[]).unwrap();
            for g in hom.generators() {
                assert!(morphism_commutes(g, pair.0, pair.1).unwrap());
            }
        }
    }
}
