//! 1-motives with torsion at desk scale: `M = [u: L → G]` with L a finitely
//! generated abelian group and G = G_m^s × A a split semiabelian variety.
//!
//! The lattice part is a free rank plus invariant factors; the map u is
//! recorded by its values in the torus coordinates (elements of K*) and by
//! formal point labels for the abelian part. Torsion generators may only
//! map to roots of unity in the torus (their images have finite order), and
//! motives with lattice torsion must have no abelian part here.

mod homker;
mod realize;

pub use homker::{hom_motives, ker_u, KerU, MotiveHom, MotiveMorphism};
pub use realize::{
    cartier_identification, induced_morphism, prepare_registry, realize_bdr, realize_drb,
};

use std::fmt;
use std::sync::Arc;

use num::{BigInt, One, ToPrimitive, Zero};

use crate::numfield::{
    integer_kernel, integer_solve, invariant_factors_of_cyclics, snf, FieldElem, FieldMatrix,
    IntMatrix, NumberField,
};
use crate::{Error, Result};

/// Formal abelian datum of genus g: a 2g × 2g matrix of period symbol names
/// (rows index the de Rham basis, columns the homology basis), the subset of
/// de Rham basis rows spanning the Hodge subspace V(A), and optional
/// triangular relations between the symbols (e.g. a Legendre relation).
#[derive(Clone, Debug, PartialEq)]
pub struct AbelianDatum {
    pub genus: usize,
    pub period_symbols: Vec<Vec<String>>,
    pub hodge_rows: Vec<usize>,
    pub relations: Vec<AbelianRelation>,
}

/// A relation between abelian period symbols, by name; coefficients are
/// rational so the datum stays field-independent.
#[derive(Clone, Debug, PartialEq)]
pub struct AbelianRelation {
    pub lhs: Vec<(String, u32)>,
    pub rhs: Vec<(num::BigRational, Vec<(String, u32)>)>,
}

impl AbelianDatum {
    /// Standard genus-1 datum: period matrix [[om1, om2], [eta1, eta2]] with
    /// V(A) spanned by the second de Rham basis vector, plus the Legendre
    /// relation om1*eta2 -> om2*eta1 + 2πi.
    pub fn elliptic(prefix: &str) -> Self {
        let n = |s: &str| format!("{prefix}{s}");
        AbelianDatum {
            genus: 1,
            period_symbols: vec![
                vec![n("om1"), n("om2")],
                vec![n("eta1"), n("eta2")],
            ],
            hodge_rows: vec![1],
            relations: vec![AbelianRelation {
                lhs: vec![(n("om1"), 1), (n("eta2"), 1)],
                rhs: vec![
                    (num::BigRational::one(), vec![(n("om2"), 1), (n("eta1"), 1)]),
                    (num::BigRational::one(), vec![("2πi".into(), 1)]),
                ],
            }],
        }
    }

    fn validate(&self) -> Result<()> {
        let n = 2 * self.genus;
        if self.period_symbols.len() != n
            || self.period_symbols.iter().any(|row| row.len() != n)
        {
            return Err(Error::DimensionMismatch(
                "abelian period symbol matrix must be 2g × 2g".into(),
            ));
        }
        if self.hodge_rows.len() != self.genus {
            return Err(Error::DimensionMismatch(
                "Hodge rows must number exactly g".into(),
            ));
        }
        let mut seen = std::collections::BTreeSet::new();
        for &r in &self.hodge_rows {
            if r >= n || !seen.insert(r) {
                return Err(Error::Unsupported("invalid Hodge row selection".into()));
            }
        }
        Ok(())
    }
}

/// A 1-motive with torsion, `M = [u: L → G_m^s × A]`.
#[derive(Clone, PartialEq)]
pub struct OneMotive {
    field: Arc<NumberField>,
    lattice_rank: usize,
    lattice_torsion: Vec<BigInt>,
    torus_rank: usize,
    /// torus_rank × lattice_rank values in K*.
    u_torus: FieldMatrix,
    /// torus_rank × (number of torsion generators) values of finite order.
    u_torus_torsion: FieldMatrix,
    abelian: Option<AbelianDatum>,
    /// One label per free lattice generator; None maps to 0 in A.
    u_abelian: Vec<Option<String>>,
}

impl OneMotive {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        field: Arc<NumberField>,
        lattice_rank: usize,
        lattice_torsion: Vec<BigInt>,
        torus_rank: usize,
        u_torus: FieldMatrix,
        u_torus_torsion: FieldMatrix,
        abelian: Option<AbelianDatum>,
        u_abelian: Vec<Option<String>>,
    ) -> Result<Self> {
        if u_torus.rows() != torus_rank || u_torus.cols() != lattice_rank {
            return Err(Error::DimensionMismatch(format!(
                "torus value matrix is {}x{}, expected {}x{}",
                u_torus.rows(),
                u_torus.cols(),
                torus_rank,
                lattice_rank
            )));
        }
        let lattice_torsion = invariant_factors_of_cyclics(&lattice_torsion);
        if u_torus_torsion.rows() != torus_rank
            || u_torus_torsion.cols() != lattice_torsion.len()
        {
            return Err(Error::DimensionMismatch(
                "torsion value matrix shape must be torus_rank × #torsion".into(),
            ));
        }
        for r in 0..u_torus.rows() {
            for c in 0..u_torus.cols() {
                if u_torus.entry(r, c).is_zero() {
                    return Err(Error::Unsupported("u must land in G(K): zero torus value".into()));
                }
            }
        }
        // torsion generators must map to roots of unity of dividing order
        for (i, d) in lattice_torsion.iter().enumerate() {
            let exp = d
                .to_u32()
                .ok_or_else(|| Error::Unsupported("torsion order out of range".into()))?;
            for r in 0..torus_rank {
                let v = u_torus_torsion.entry(r, i);
                if v.is_zero() || !v.pow(exp).is_one() {
                    return Err(Error::Unsupported(
                        "torsion generator image must be a root of unity of dividing order"
                            .into(),
                    ));
                }
            }
        }
        if let Some(datum) = &abelian {
            datum.validate()?;
            if u_abelian.len() != lattice_rank {
                return Err(Error::DimensionMismatch(
                    "one abelian point label per free lattice generator".into(),
                ));
            }
            if !lattice_torsion.is_empty() {
                return Err(Error::TorsionPresent(
                    "lattice torsion together with an abelian part".into(),
                ));
            }
        } else if !u_abelian.is_empty() {
            return Err(Error::DimensionMismatch(
                "point labels without an abelian part".into(),
            ));
        }
        Ok(OneMotive {
            field,
            lattice_rank,
            lattice_torsion,
            torus_rank,
            u_torus,
            u_torus_torsion,
            abelian,
            u_abelian,
        })
    }

    /// [L → G_m^s] from its value matrix (s = rows, rank = cols).
    pub fn torus_lattice(field: &Arc<NumberField>, u_torus: FieldMatrix) -> Result<Self> {
        let s = u_torus.rows();
        let r = u_torus.cols();
        Self::new(
            field.clone(),
            r,
            Vec::new(),
            s,
            u_torus,
            FieldMatrix::zero(field, s, 0),
            None,
            Vec::new(),
        )
    }

    /// [Z^r → 0].
    pub fn lattice_only(field: &Arc<NumberField>, rank: usize) -> Self {
        Self::torus_lattice(field, FieldMatrix::zero(field, 0, rank))
            .expect("lattice motive is well-formed")
    }

    /// [0 → G_m^s].
    pub fn torus_only(field: &Arc<NumberField>, s: usize) -> Self {
        Self::torus_lattice(field, FieldMatrix::zero(field, s, 0))
            .expect("torus motive is well-formed")
    }

    /// [u: Z → G_m] with u(1) = a.
    pub fn kummer(field: &Arc<NumberField>, a: FieldElem) -> Result<Self> {
        Self::torus_lattice(field, FieldMatrix::from_fn(field, 1, 1, |_, _| a.clone()))
    }

    /// [L → A] with formal points: one label per lattice generator.
    pub fn abelian_lattice(
        field: &Arc<NumberField>,
        datum: AbelianDatum,
        labels: Vec<Option<String>>,
    ) -> Result<Self> {
        let r = labels.len();
        Self::new(
            field.clone(),
            r,
            Vec::new(),
            0,
            FieldMatrix::zero(field, 0, r),
            FieldMatrix::zero(field, 0, 0),
            Some(datum),
            labels,
        )
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn lattice_rank(&self) -> usize {
        self.lattice_rank
    }

    pub fn lattice_torsion(&self) -> &[BigInt] {
        &self.lattice_torsion
    }

    pub fn torus_rank(&self) -> usize {
        self.torus_rank
    }

    pub fn u_torus(&self) -> &FieldMatrix {
        &self.u_torus
    }

    pub fn u_torus_torsion(&self) -> &FieldMatrix {
        &self.u_torus_torsion
    }

    pub fn abelian(&self) -> Option<&AbelianDatum> {
        self.abelian.as_ref()
    }

    pub fn u_abelian(&self) -> &[Option<String>] {
        &self.u_abelian
    }

    pub fn genus(&self) -> usize {
        self.abelian.as_ref().map(|a| a.genus).unwrap_or(0)
    }

    /// M is a Deligne 1-motive iff the lattice is free.
    pub fn is_free(&self) -> bool {
        self.lattice_torsion.is_empty()
    }

    pub fn expect_free(&self, what: &str) -> Result<()> {
        if self.is_free() {
            Ok(())
        } else {
            Err(Error::TorsionPresent(what.into()))
        }
    }

    /// Rank of T_Z(M): torus H_1 ⊕ abelian H_1 ⊕ lattice lifts.
    pub fn betti_rank(&self) -> usize {
        self.torus_rank + 2 * self.genus() + self.lattice_rank
    }

    /// dim V(M) = g + lattice rank and dim T_dr = rank + torus rank + 2g.
    pub fn universal_extension_dims(&self) -> Result<(usize, usize)> {
        self.expect_free("universal extension of a torsion motive (take torsion_parts first)")?;
        Ok((
            self.genus() + self.lattice_rank,
            self.lattice_rank + self.torus_rank + 2 * self.genus(),
        ))
    }

    /// The weight filtration W_{-2} = T[-1] ⊆ W_{-1} = G[-1] ⊆ W_0 = M,
    /// returned as sub-1-motives.
    pub fn weight_filtration(&self) -> WeightParts {
        let torus = Self::torus_only(&self.field, self.torus_rank);
        let g_part = match &self.abelian {
            None => torus.clone(),
            Some(datum) => Self::new(
                self.field.clone(),
                0,
                Vec::new(),
                self.torus_rank,
                FieldMatrix::zero(&self.field, self.torus_rank, 0),
                FieldMatrix::zero(&self.field, self.torus_rank, 0),
                Some(datum.clone()),
                Vec::new(),
            )
            .expect("semiabelian part is well-formed"),
        };
        WeightParts {
            w_minus2: torus,
            w_minus1: g_part,
            w_0: self.clone(),
        }
    }

    /// Torsion/free/torsion-free decomposition.
    ///
    /// M_tor = [L_tor ∩ ker u → 0], M_tf = [L/(L_tor ∩ ker u) → G], and
    /// M_fr = [L/L_tor → G/u(L_tor)], where the quotient of the torus by the
    /// finite subgroup u(L_tor) is recomputed on the character lattice.
    pub fn torsion_parts(&self) -> Result<TorsionParts> {
        if self.abelian.is_some() && !self.lattice_torsion.is_empty() {
            return Err(Error::TorsionPresent(
                "torsion decomposition with an abelian part".into(),
            ));
        }
        if self.lattice_torsion.is_empty() {
            return Ok(TorsionParts {
                tor: Self::torus_lattice(&self.field, FieldMatrix::zero(&self.field, 0, 0))?,
                f_group: Vec::new(),
                tf: self.clone(),
                fr: self.clone(),
            });
        }
        let orders: Vec<BigInt> = self.lattice_torsion.clone();
        let kernel_elements = self.torsion_kernel_elements(&orders)?;
        let p = orders.len();

        // Lattice spanned by the lifts of the kernel elements and the order
        // relations diag(d_i).
        let mut cols: Vec<Vec<BigInt>> = kernel_elements.clone();
        for (i, d) in orders.iter().enumerate() {
            let mut v = vec![BigInt::zero(); p];
            v[i] = d.clone();
            cols.push(v);
        }
        let gen_matrix = IntMatrix::from_fn(p, cols.len(), |r, c| cols[c][r].clone());
        let l_prime = crate::numfield::Lattice::from_generators(p, &gen_matrix)?;

        // invariants of K = L'/D
        let diag = IntMatrix::from_fn(p, p, |r, c| {
            if r == c {
                orders[r].clone()
            } else {
                BigInt::zero()
            }
        });
        let mut expr = IntMatrix::zero(p, p);
        for c in 0..p {
            let col: Vec<BigInt> = (0..p).map(|r| diag.entry(r, c).clone()).collect();
            let x = solve_in_basis(l_prime.basis(), &col)?;
            for r in 0..p {
                *expr.entry_mut(r, c) = x[r].clone();
            }
        }
        let tor_invariants: Vec<BigInt> = snf(&expr)
            .diagonal()
            .into_iter()
            .filter(|d| !d.is_one() && !d.is_zero())
            .collect();

        // invariants of F = L_tor / K = Z^p / L'
        let _f_group: Vec<BigInt> = snf(l_prime.basis())
            .diagonal()
            .into_iter()
            .filter(|d| !d.is_one() && !d.is_zero())
            .collect();

        let tor_matrix = FieldMatrix::zero(&self.field, 0, tor_invariants.len());
        let tor = Self::new(
            self.field.clone(),
            0,
            tor_invariants,
            0,
            FieldMatrix::zero(&self.field, 0, 0),
            tor_matrix,
            None,
            Vec::new(),
        )?;

        // M_tf: same free part, torsion replaced by F with images of the
        // quotient generators.
        let f_data = self.quotient_torsion_data(&l_prime)?;
        let tf = Self::new(
            self.field.clone(),
            self.lattice_rank,
            f_data.invariants.clone(),
            self.torus_rank,
            self.u_torus.clone(),
            f_data.values,
            None,
            Vec::new(),
        )?;

        // M_fr: quotient the torus by u(L_tor) via its character lattice.
        let fr = self.free_part()?;

        Ok(TorsionParts {
            tor,
            f_group: f_data.invariants,
            tf,
            fr,
        })
    }

    /// All torsion elements x with u(x) = 1, as lifts in Z^p. Bounded
    /// enumeration; the torsion group order must stay at desk scale.
    fn torsion_kernel_elements(&self, orders: &[BigInt]) -> Result<Vec<Vec<BigInt>>> {
        let mut total = BigInt::one();
        for d in orders {
            total *= d;
        }
        if total > BigInt::from(100_000u32) {
            return Err(Error::Unsupported(
                "torsion subgroup too large for exhaustive kernel enumeration".into(),
            ));
        }
        let radix: Vec<u64> = orders.iter().map(|d| d.to_u64().unwrap()).collect();
        let p = orders.len();
        let mut idx = vec![0u64; p];
        let mut out = Vec::new();
        loop {
            // evaluate u on the element with coordinates idx
            let mut in_kernel = true;
            for r in 0..self.torus_rank {
                let mut acc = self.field.one();
                for (i, &e) in idx.iter().enumerate() {
                    acc = acc.mul(&self.u_torus_torsion.entry(r, i).pow(e as u32));
                }
                if !acc.is_one() {
                    in_kernel = false;
                    break;
                }
            }
            if in_kernel {
                out.push(idx.iter().map(|&e| BigInt::from(e)).collect());
            }
            let mut pos = 0;
            loop {
                if pos == p {
                    return Ok(out);
                }
                idx[pos] += 1;
                if idx[pos] < radix[pos] {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }

    /// Invariant factors and u-values for the quotient F = L_tor/K given the
    /// lattice L' with F = Z^p/L'.
    fn quotient_torsion_data(&self, l_prime: &crate::numfield::Lattice) -> Result<QuotientData> {
        let p = l_prime.ambient_rank();
        let dec = snf(l_prime.basis());
        let mut invariants = Vec::new();
        let mut reps: Vec<Vec<BigInt>> = Vec::new();
        let u_inv = unimodular_inverse(&dec.u)?;
        for (i, d) in dec.diagonal().iter().enumerate() {
            if d.is_one() || d.is_zero() {
                continue;
            }
            invariants.push(d.clone());
            reps.push((0..p).map(|r| u_inv.entry(r, i).clone()).collect());
        }
        let values = FieldMatrix::from_fn(&self.field, self.torus_rank, invariants.len(), |r, c| {
            let mut acc = self.field.one();
            for (i, e) in reps[c].iter().enumerate() {
                acc = acc.mul(&pow_signed(self.u_torus_torsion.entry(r, i), e));
            }
            acc
        });
        Ok(QuotientData { invariants, values })
    }

    /// Cartier dual of a free torus-lattice motive: the dual of
    /// [L → G_m^s] with value matrix A is [Z^s → G_m^rank(L)] with value
    /// matrix Aᵀ. Involutive up to the canonical identification.
    pub fn cartier_dual_motive(&self) -> Result<OneMotive> {
        self.expect_free("Cartier dual of a motive with torsion")?;
        if self.abelian.is_some() {
            return Err(Error::Unsupported(
                "combinatorial Cartier duality is torus-lattice only; dualize the \
                 realized triple instead"
                    .into(),
            ));
        }
        let transposed = FieldMatrix::from_fn(
            &self.field,
            self.lattice_rank,
            self.torus_rank,
            |r, c| self.u_torus.entry(c, r).clone(),
        );
        Self::torus_lattice(&self.field, transposed)
    }

    /// M_fr = [L/L_tor → G/u(L_tor)].
    fn free_part(&self) -> Result<OneMotive> {
        // μ = subgroup of the torus generated by the torsion images
        let generators: Vec<Vec<FieldElem>> = (0..self.u_torus_torsion.cols())
            .map(|c| {
                (0..self.torus_rank)
                    .map(|r| self.u_torus_torsion.entry(r, c).clone())
                    .collect()
            })
            .collect();
        let chars = characters_vanishing_on(&self.field, self.torus_rank, &generators)?;
        // new value matrix: V'[b][j] = Π_c a[c][j]^{chars[b][c]}
        let new_values = FieldMatrix::from_fn(
            &self.field,
            chars.len(),
            self.lattice_rank,
            |b, j| {
                let mut acc = self.field.one();
                for (c, e) in chars[b].iter().enumerate() {
                    acc = acc.mul(&pow_signed(self.u_torus.entry(c, j), e));
                }
                acc
            },
        );
        Self::torus_lattice(&self.field, new_values)
    }
}

impl fmt::Debug for OneMotive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "OneMotive [Z^{}⊕{:?} → G_m^{}{}]",
            self.lattice_rank,
            self.lattice_torsion,
            self.torus_rank,
            if self.abelian.is_some() { " × A" } else { "" }
        )
    }
}

/// The three stages of the weight filtration as sub-1-motives.
#[derive(Clone, Debug)]
pub struct WeightParts {
    pub w_minus2: OneMotive,
    pub w_minus1: OneMotive,
    pub w_0: OneMotive,
}

/// The torsion/free/torsion-free decomposition of a 1-motive with torsion.
#[derive(Clone, Debug)]
pub struct TorsionParts {
    /// [L_tor ∩ ker u → 0].
    pub tor: OneMotive,
    /// Invariant factors of F = L_tor/(L_tor ∩ ker u).
    pub f_group: Vec<BigInt>,
    /// [L/(L_tor ∩ ker u) → G].
    pub tf: OneMotive,
    /// [L/L_tor → G/u(L_tor)].
    pub fr: OneMotive,
}

struct QuotientData {
    invariants: Vec<BigInt>,
    values: FieldMatrix,
}

/// x^e for a signed exponent (x must be invertible for e < 0).
pub(crate) fn pow_signed(x: &FieldElem, e: &BigInt) -> FieldElem {
    let exp = e.to_i64().expect("exponent fits in i64");
    if exp >= 0 {
        x.pow(exp as u32)
    } else {
        x.inv().expect("nonzero value").pow((-exp) as u32)
    }
}

/// Solves basis * x = v over Z (basis columns independent).
fn solve_in_basis(basis: &IntMatrix, v: &[BigInt]) -> Result<Vec<BigInt>> {
    integer_solve(basis, v)?.ok_or_else(|| {
        Error::Unsupported("internal: vector is not in the generated lattice".into())
    })
}

/// Inverse of a unimodular integer matrix.
fn unimodular_inverse(m: &IntMatrix) -> Result<IntMatrix> {
    let n = m.rows();
    let mut out = IntMatrix::zero(n, n);
    for c in 0..n {
        let mut e = vec![BigInt::zero(); n];
        e[c] = BigInt::one();
        let col = integer_solve(m, &e)?
            .ok_or_else(|| Error::NotInvertible("matrix is not unimodular".into()))?;
        for r in 0..n {
            *out.entry_mut(r, c) = col[r].clone();
        }
    }
    Ok(out)
}

/// The sublattice of characters Z^s vanishing on the finite subgroup of
/// G_m^s generated by the given root-of-unity vectors, as basis rows.
fn characters_vanishing_on(
    field: &Arc<NumberField>,
    s: usize,
    generators: &[Vec<FieldElem>],
) -> Result<Vec<Vec<BigInt>>> {
    if generators.is_empty() {
        return Ok((0..s)
            .map(|i| {
                let mut v = vec![BigInt::zero(); s];
                v[i] = BigInt::one();
                v
            })
            .collect());
    }
    // collect the cyclic group generated by all component values
    let mut elements: Vec<FieldElem> = vec![field.one()];
    let mut frontier: Vec<FieldElem> = elements.clone();
    while let Some(x) = frontier.pop() {
        for g in generators {
            for v in g {
                let y = x.mul(v);
                if !elements.contains(&y) {
                    if elements.len() > 4096 {
                        return Err(Error::Unsupported(
                            "root-of-unity subgroup too large".into(),
                        ));
                    }
                    elements.push(y.clone());
                    frontier.push(y);
                }
            }
        }
    }
    let n = elements.len() as u32; // cyclic of order n
    let zeta = elements
        .iter()
        .find(|x| order_of(x, n) == n)
        .cloned()
        .ok_or_else(|| Error::Unsupported("roots of unity do not form a cyclic group".into()))?;
    // discrete logs of each generator component
    let dlog = |x: &FieldElem| -> u32 {
        let mut acc = field.one();
        for k in 0..n {
            if &acc == x {
                return k;
            }
            acc = acc.mul(&zeta);
        }
        unreachable!("element lies in the cyclic group");
    };
    // rows: for each subgroup generator g, Σ_c e_{g,c} χ_c ≡ 0 (mod n)
    let rows = generators.len();
    let condition = IntMatrix::from_fn(rows, s + rows, |r, c| {
        if c < s {
            BigInt::from(dlog(&generators[r][c]))
        } else if c == s + r {
            BigInt::from(n)
        } else {
            BigInt::zero()
        }
    });
    let kernel = integer_kernel(&condition);
    // project onto the character block and re-span
    let projected = IntMatrix::from_fn(s, kernel.cols(), |r, c| kernel.entry(r, c).clone());
    let lattice = crate::numfield::Lattice::from_generators(s, &projected)?;
    Ok((0..lattice.rank())
        .map(|c| lattice.basis().column(c))
        .collect())
}

/// Order of a root of unity dividing n.
fn order_of(x: &FieldElem, n: u32) -> u32 {
    let mut acc = x.clone();
    for k in 1..=n {
        if acc.is_one() {
            return k;
        }
        acc = acc.mul(x);
    }
    n + 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigRational;

    fn q_field() -> Arc<NumberField> {
        NumberField::rationals()
    }

    fn rat(n: i64, d: i64) -> FieldElem {
        let f = q_field();
        f.from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    #[test]
    fn universal_extension_dimensions() {
        let f = q_field();
        let kummer = OneMotive::kummer(&f, f.from_integer(2)).unwrap();
        assert_eq!(kummer.universal_extension_dims().unwrap(), (1, 2));
        let torus = OneMotive::torus_only(&f, 1);
        assert_eq!(torus.universal_extension_dims().unwrap(), (0, 1));
        let lattice = OneMotive::lattice_only(&f, 2);
        assert_eq!(lattice.universal_extension_dims().unwrap(), (2, 2));
        let abelian = OneMotive::abelian_lattice(
            &f,
            AbelianDatum::elliptic("e"),
            vec![Some("P".into())],
        )
        .unwrap();
        assert_eq!(abelian.universal_extension_dims().unwrap(), (2, 3));
    }

    #[test]
    fn weight_filtration_of_kummer_motive() {
        let f = q_field();
        let m = OneMotive::kummer(&f, f.from_integer(2)).unwrap();
        let w = m.weight_filtration();
        assert_eq!(w.w_minus2.torus_rank(), 1);
        assert_eq!(w.w_minus2.lattice_rank(), 0);
        assert_eq!(w.w_minus1, w.w_minus2); // no abelian part
        assert_eq!(w.w_0, m);
        // pure lattice: W_{-1} = 0
        let l = OneMotive::lattice_only(&f, 1);
        let wl = l.weight_filtration();
        assert_eq!(wl.w_minus1.torus_rank(), 0);
        assert_eq!(wl.w_minus1.betti_rank(), 0);
        // torus × abelian: W_{-2} is the torus, gr_{-1} has rank 2g
        let mut ab = OneMotive::abelian_lattice(
            &f,
            AbelianDatum::elliptic("e"),
            Vec::new(),
        )
        .unwrap();
        ab = OneMotive::new(
            f.clone(),
            0,
            Vec::new(),
            1,
            FieldMatrix::zero(&f, 1, 0),
            FieldMatrix::zero(&f, 1, 0),
            ab.abelian.clone(),
            Vec::new(),
        )
        .unwrap();
        let wab = ab.weight_filtration();
        assert_eq!(wab.w_minus2.betti_rank(), 1);
        assert_eq!(wab.w_minus1.betti_rank(), 3);
    }

    #[test]
    fn torsion_parts_of_free_motive() {
        let f = q_field();
        let m = OneMotive::kummer(&f, f.from_integer(2)).unwrap();
        let parts = m.torsion_parts().unwrap();
        assert!(parts.tor.lattice_torsion().is_empty());
        assert_eq!(parts.fr, m);
        assert_eq!(parts.tf, m);
    }

    #[test]
    fn torsion_parts_with_trivial_map() {
        // L = Z/2, u = 0: M_tor = [Z/2 → 0], M_tf has torsion killed
        let f = q_field();
        let m = OneMotive::new(
            f.clone(),
            0,
            vec![BigInt::from(2)],
            0,
            FieldMatrix::zero(&f, 0, 0),
            FieldMatrix::zero(&f, 0, 1),
            None,
            Vec::new(),
        )
        .unwrap();
        let parts = m.torsion_parts().unwrap();
        assert_eq!(parts.tor.lattice_torsion().to_vec(), vec![BigInt::from(2)]);
        assert!(parts.f_group.is_empty());
        assert!(parts.tf.lattice_torsion().is_empty());
        assert_eq!(parts.tf.betti_rank(), 0);
    }

    #[test]
    fn torsion_parts_with_minus_one_image() {
        // L = Z/2 mapping onto -1 ∈ G_m: M_tor = 0, F = Z/2,
        // M_fr = [0 → G_m/μ2 ≅ G_m]
        let f = q_field();
        let m = OneMotive::new(
            f.clone(),
            0,
            vec![BigInt::from(2)],
            1,
            FieldMatrix::zero(&f, 1, 0),
            FieldMatrix::from_fn(&f, 1, 1, |_, _| f.from_integer(-1)),
            None,
            Vec::new(),
        )
        .unwrap();
        let parts = m.torsion_parts().unwrap();
        assert!(parts.tor.lattice_torsion().is_empty());
        assert_eq!(parts.f_group, vec![BigInt::from(2)]);
        assert_eq!(parts.fr.torus_rank(), 1);
        assert_eq!(parts.fr.lattice_rank(), 0);
        // M_tf keeps the Z/2 with its value -1
        assert_eq!(parts.tf.lattice_torsion().to_vec(), vec![BigInt::from(2)]);
        assert_eq!(
            parts.tf.u_torus_torsion().entry(0, 0),
            &f.from_integer(-1)
        );
    }

    #[test]
    fn free_part_character_index() {
        // the character lattice of G_m/μ2 inside G_m is 2Z: the new
        // coordinate of a value a is a^2
        let f = q_field();
        let m = OneMotive::new(
            f.clone(),
            1,
            vec![BigInt::from(2)],
            1,
            FieldMatrix::from_fn(&f, 1, 1, |_, _| f.from_integer(3)),
            FieldMatrix::from_fn(&f, 1, 1, |_, _| f.from_integer(-1)),
            None,
            Vec::new(),
        )
        .unwrap();
        let parts = m.torsion_parts().unwrap();
        assert_eq!(parts.fr.u_torus().entry(0, 0), &f.from_integer(9));
    }

    #[test]
    fn rejects_bad_torsion_values() {
        let f = q_field();
        // 3 is not a root of unity of order dividing 2
        let err = OneMotive::new(
            f.clone(),
            0,
            vec![BigInt::from(2)],
            1,
            FieldMatrix::zero(&f, 1, 0),
            FieldMatrix::from_fn(&f, 1, 1, |_, _| f.from_integer(3)),
            None,
            Vec::new(),
        );
        assert!(err.is_err());
        let half = rat(1, 2);
        assert!(OneMotive::kummer(&f, half).is_ok());
        assert!(OneMotive::kummer(&f, f.zero()).is_err());
    }
}
