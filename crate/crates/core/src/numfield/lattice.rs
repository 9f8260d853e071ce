//! Hermite and Smith normal forms over Z, integer kernels, and saturated
//! lattices.
//!
//! All canonical forms are column-based HNF with nonnegative pivots: the
//! column HNF of M is the transpose of the row HNF of M^T, where the row HNF
//! is the upper echelon form with positive pivots and entries above each
//! pivot reduced into [0, pivot). This representative is unique, which makes
//! equality of lattices decidable by comparing bases.

use std::fmt;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use super::matrix::IntMatrix;
use crate::{Error, Result};

fn swap_rows(m: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for c in 0..m.cols() {
        let tmp = m.entry(a, c).clone();
        *m.entry_mut(a, c) = m.entry(b, c).clone();
        *m.entry_mut(b, c) = tmp;
    }
}

fn negate_row(m: &mut IntMatrix, r: usize) {
    for c in 0..m.cols() {
        let v = -m.entry(r, c).clone();
        *m.entry_mut(r, c) = v;
    }
}

/// row[a] -= q * row[b]
fn row_submul(m: &mut IntMatrix, a: usize, b: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for c in 0..m.cols() {
        let v = m.entry(a, c) - q * m.entry(b, c);
        *m.entry_mut(a, c) = v;
    }
}

/// Row Hermite normal form: upper echelon, pivots positive, entries above
/// each pivot reduced into [0, pivot).
fn row_hnf(mut m: IntMatrix) -> IntMatrix {
    let rows = m.rows();
    let cols = m.cols();
    let mut pivot_row = 0usize;
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        // Euclidean elimination below the pivot row in this column.
        loop {
            let mut best: Option<usize> = None;
            for r in pivot_row..rows {
                if m.entry(r, col).is_zero() {
                    continue;
                }
                best = match best {
                    None => Some(r),
                    Some(b) => {
                        if m.entry(r, col).abs() < m.entry(b, col).abs() {
                            Some(r)
                        } else {
                            Some(b)
                        }
                    }
                };
            }
            let b = match best {
                None => break,
                Some(b) => b,
            };
            swap_rows(&mut m, pivot_row, b);
            let mut done = true;
            for r in pivot_row + 1..rows {
                if m.entry(r, col).is_zero() {
                    continue;
                }
                let q = m.entry(r, col).div_floor(m.entry(pivot_row, col));
                row_submul(&mut m, r, pivot_row, &q);
                if !m.entry(r, col).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if m.entry(pivot_row, col).is_zero() {
            continue;
        }
        if m.entry(pivot_row, col).is_negative() {
            negate_row(&mut m, pivot_row);
        }
        // Reduce the entries above the pivot into [0, pivot).
        for r in 0..pivot_row {
            let q = m.entry(r, col).div_floor(m.entry(pivot_row, col));
            row_submul(&mut m, r, pivot_row, &q);
        }
        pivot_row += 1;
    }
    m
}

/// Column Hermite normal form: canonical form with the same column span
/// over Z and the same shape as the input.
pub fn hnf(m: &IntMatrix) -> IntMatrix {
    row_hnf(m.transpose()).transpose()
}

/// Smith normal form D = U * M * V with U, V unimodular, D diagonal with
/// nonnegative entries satisfying d_i | d_{i+1}.
#[derive(Clone, Debug)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfDecomposition {
    /// Nonzero diagonal entries, i.e. the invariant factors of the cokernel
    /// together with the rank information.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.entry(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

pub fn snf(m: &IntMatrix) -> SnfDecomposition {
    let rows = m.rows();
    let cols = m.cols();
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    let swap_cols = |m: &mut IntMatrix, a: usize, b: usize| {
        if a == b {
            return;
        }
        for r in 0..m.rows() {
            let tmp = m.entry(r, a).clone();
            *m.entry_mut(r, a) = m.entry(r, b).clone();
            *m.entry_mut(r, b) = tmp;
        }
    };
    let col_submul = |m: &mut IntMatrix, a: usize, b: usize, q: &BigInt| {
        if q.is_zero() {
            return;
        }
        for r in 0..m.rows() {
            let val = m.entry(r, a) - q * m.entry(r, b);
            *m.entry_mut(r, a) = val;
        }
    };

    let mut t = 0usize;
    while t < rows.min(cols) {
        // Find a nonzero pivot in the trailing submatrix, smallest first.
        let mut pivot: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                if d.entry(r, c).is_zero() {
                    continue;
                }
                pivot = match pivot {
                    None => Some((r, c)),
                    Some((pr, pc)) => {
                        if d.entry(r, c).abs() < d.entry(pr, pc).abs() {
                            Some((r, c))
                        } else {
                            Some((pr, pc))
                        }
                    }
                };
            }
        }
        let (pr, pc) = match pivot {
            None => break,
            Some(p) => p,
        };
        swap_rows(&mut d, t, pr);
        swap_rows(&mut u, t, pr);
        swap_cols(&mut d, t, pc);
        swap_cols(&mut v, t, pc);

        loop {
            // Clear column t below the pivot.
            let mut dirty = false;
            for r in t + 1..rows {
                if d.entry(r, t).is_zero() {
                    continue;
                }
                let q = d.entry(r, t).div_floor(d.entry(t, t));
                row_submul(&mut d, r, t, &q);
                row_submul(&mut u, r, t, &q);
                if !d.entry(r, t).is_zero() {
                    // Remainder became the new, strictly smaller pivot.
                    swap_rows(&mut d, t, r);
                    swap_rows(&mut u, t, r);
                    dirty = true;
                }
            }
            // Clear row t right of the pivot.
            for c in t + 1..cols {
                if d.entry(t, c).is_zero() {
                    continue;
                }
                let q = d.entry(t, c).div_floor(d.entry(t, t));
                col_submul(&mut d, c, t, &q);
                col_submul(&mut v, c, t, &q);
                if !d.entry(t, c).is_zero() {
                    swap_cols(&mut d, t, c);
                    swap_cols(&mut v, t, c);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Pivot must divide every entry of the trailing submatrix.
            let mut fix: Option<usize> = None;
            'search: for r in t + 1..rows {
                for c in t + 1..cols {
                    if !(d.entry(r, c) % d.entry(t, t)).is_zero() {
                        fix = Some(r);
                        break 'search;
                    }
                }
            }
            match fix {
                Some(r) => {
                    // Fold the offending row into row t and re-run.
                    let minus_one = -BigInt::one();
                    row_submul(&mut d, t, r, &minus_one);
                    row_submul(&mut u, t, r, &minus_one);
                }
                None => break,
            }
        }
        if d.entry(t, t).is_negative() {
            negate_row(&mut d, t);
            negate_row(&mut u, t);
        }
        t += 1;
    }
    SnfDecomposition { u, d, v }
}

/// Basis of the integer kernel {x in Z^n : Mx = 0}, returned as the columns
/// of an n x k matrix in column HNF. The kernel of an integer matrix is
/// automatically saturated.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let dec = snf(m);
    let rank = dec.rank();
    let free: Vec<usize> = (rank..m.cols()).collect();
    let basis = dec.v.select_columns(&free);
    drop_zero_columns(&hnf(&basis))
}

/// One integer solution of Mx = v, if any, via the Smith decomposition:
/// with D = UMV the system becomes D y = U v, solvable iff each pivot
/// divides its right-hand entry and the trailing entries vanish.
pub fn integer_solve(m: &IntMatrix, v: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if v.len() != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side has length {}, expected {}",
            v.len(),
            m.rows()
        )));
    }
    let dec = snf(m);
    let rhs_mat = IntMatrix::from_fn(m.rows(), 1, |r, _| v[r].clone());
    let uv = dec.u.mul(&rhs_mat)?;
    let rank = dec.rank();
    let mut y = vec![BigInt::zero(); m.cols()];
    for i in 0..m.rows() {
        let b = uv.entry(i, 0);
        if i < rank {
            let d = dec.d.entry(i, i);
            if !(b % d).is_zero() {
                return Ok(None);
            }
            y[i] = b / d;
        } else if !b.is_zero() {
            return Ok(None);
        }
    }
    let y_mat = IntMatrix::from_fn(m.cols(), 1, |r, _| y[r].clone());
    let x = dec.v.mul(&y_mat)?;
    Ok(Some((0..m.cols()).map(|r| x.entry(r, 0).clone()).collect()))
}

fn drop_zero_columns(m: &IntMatrix) -> IntMatrix {
    let keep: Vec<usize> = (0..m.cols())
        .filter(|&c| (0..m.rows()).any(|r| !m.entry(r, c).is_zero()))
        .collect();
    m.select_columns(&keep)
}

/// A full-rank-by-construction sublattice of Z^n: the basis columns are
/// independent and stored in column HNF, so equal lattices have equal bases.
#[derive(Clone, PartialEq, Eq)]
pub struct Lattice {
    ambient_rank: usize,
    basis: IntMatrix,
}

impl Lattice {
    /// The lattice spanned by the given columns (which may be dependent).
    pub fn from_generators(ambient_rank: usize, generators: &IntMatrix) -> Result<Self> {
        if generators.rows() != ambient_rank {
            return Err(Error::DimensionMismatch(format!(
                "generators live in Z^{}, expected Z^{}",
                generators.rows(),
                ambient_rank
            )));
        }
        Ok(Lattice {
            ambient_rank,
            basis: drop_zero_columns(&hnf(generators)),
        })
    }

    pub fn zero(ambient_rank: usize) -> Self {
        Lattice {
            ambient_rank,
            basis: IntMatrix::zero(ambient_rank, 0),
        }
    }

    pub fn standard(ambient_rank: usize) -> Self {
        Lattice {
            ambient_rank,
            basis: IntMatrix::identity(ambient_rank),
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Membership of an integer vector, solved by back-substitution on the
    /// HNF basis.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.ambient_rank, "vector has wrong length");
        self.solve_integer(v).is_some()
    }

    fn solve_integer(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        // Solve basis * x = v exactly over Q and demand integrality.
        let mut residual: Vec<BigRational> =
            v.iter().map(|x| BigRational::from(x.clone())).collect();
        let mut coeffs = vec![BigInt::zero(); self.basis.cols()];
        for c in 0..self.basis.cols() {
            // First nonzero row of this HNF column.
            let pivot_row = (0..self.ambient_rank)
                .find(|&r| !self.basis.entry(r, c).is_zero())
                .expect("basis columns are nonzero");
            let pivot = BigRational::from(self.basis.entry(pivot_row, c).clone());
            let q = &residual[pivot_row] / &pivot;
            if !q.is_integer() {
                return None;
            }
            for r in 0..self.ambient_rank {
                let sub = &q * BigRational::from(self.basis.entry(r, c).clone());
                residual[r] -= sub;
            }
            coeffs[c] = q.to_integer();
        }
        if residual.iter().all(|x| x.is_zero()) {
            Some(coeffs)
        } else {
            None
        }
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        assert_eq!(self.ambient_rank, other.ambient_rank);
        (0..self.basis.cols()).all(|c| other.contains(&self.basis.column(c)))
    }

    pub fn sum(&self, other: &Lattice) -> Result<Lattice> {
        if self.ambient_rank != other.ambient_rank {
            return Err(Error::DimensionMismatch("lattice sum ambient ranks differ".into()));
        }
        let stacked = self.basis.hstack(&other.basis)?;
        Lattice::from_generators(self.ambient_rank, &stacked)
    }

    pub fn intersect(&self, other: &Lattice) -> Result<Lattice> {
        if self.ambient_rank != other.ambient_rank {
            return Err(Error::DimensionMismatch(
                "lattice intersection ambient ranks differ".into(),
            ));
        }
        // x = B1 a = B2 b: kernel of [B1 | -B2], image under B1 of the a-part.
        let negated = IntMatrix::from_fn(other.basis.rows(), other.basis.cols(), |r, c| {
            -other.basis.entry(r, c).clone()
        });
        let stacked = self.basis.hstack(&negated)?;
        let ker = integer_kernel(&stacked);
        let a_part = IntMatrix::from_fn(self.basis.cols(), ker.cols(), |r, c| {
            ker.entry(r, c).clone()
        });
        let gens = self.basis.mul(&a_part)?;
        Lattice::from_generators(self.ambient_rank, &gens)
    }

    /// The saturation span_Q(self) ∩ Z^n.
    pub fn saturate(&self) -> Lattice {
        let span: Vec<Vec<BigRational>> = (0..self.basis.cols())
            .map(|c| {
                (0..self.ambient_rank)
                    .map(|r| BigRational::from(self.basis.entry(r, c).clone()))
                    .collect()
            })
            .collect();
        saturate(self.ambient_rank, &span).expect("own basis is well-formed")
    }

    pub fn is_saturated(&self) -> bool {
        self == &self.saturate()
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Lattice rank {} in Z^{}: {:?}",
            self.rank(),
            self.ambient_rank,
            self.basis
        )
    }
}

/// The lattice W ∩ Z^n for W the Q-span of the given vectors in Q^n.
///
/// W is first described as the rational kernel of a matrix A (the orthogonal
/// relations of the span); W ∩ Z^n is then the integer kernel of A, which is
/// saturated by construction.
pub fn saturate(ambient_rank: usize, span: &[Vec<BigRational>]) -> Result<Lattice> {
    for v in span {
        if v.len() != ambient_rank {
            return Err(Error::DimensionMismatch(format!(
                "span vector has length {}, expected {}",
                v.len(),
                ambient_rank
            )));
        }
    }
    if span.is_empty() {
        return Ok(Lattice::zero(ambient_rank));
    }
    // Integer matrix with the same column span as `span`.
    let cleared = clear_denominators_columns(ambient_rank, span);
    // Rational relations y with y^T * cleared = 0, i.e. the kernel of the
    // transpose. Its integer kernel suffices since the span is unchanged.
    let relations = integer_kernel(&cleared.transpose());
    if relations.cols() == 0 {
        // Full span: W = Q^n.
        return Ok(Lattice::standard(ambient_rank));
    }
    let result = integer_kernel(&relations.transpose());
    Lattice::from_generators(ambient_rank, &result)
}

fn clear_denominators_columns(ambient_rank: usize, span: &[Vec<BigRational>]) -> IntMatrix {
    IntMatrix::from_fn(ambient_rank, span.len(), |r, c| {
        let mut lcm = BigInt::one();
        for x in &span[c] {
            lcm = lcm.lcm(x.denom());
        }
        (&span[c][r] * BigRational::from(lcm)).to_integer()
    })
}

/// Invariant factors (each > 1, with d_i | d_{i+1}) of the finite abelian
/// group ⊕ Z/c_i presented by the given cyclic orders.
pub fn invariant_factors_of_cyclics(orders: &[BigInt]) -> Vec<BigInt> {
    let nontrivial: Vec<&BigInt> = orders.iter().filter(|c| !c.is_one() && !c.is_zero()).collect();
    if nontrivial.is_empty() {
        return Vec::new();
    }
    let n = nontrivial.len();
    let m = IntMatrix::from_fn(n, n, |r, c| {
        if r == c {
            nontrivial[r].clone()
        } else {
            BigInt::zero()
        }
    });
    let dec = snf(&m);
    dec.diagonal().into_iter().filter(|d| !d.is_one()).collect()
}
