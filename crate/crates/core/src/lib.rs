//! permotive: an exact symbolic calculator for period categories of
//! 1-motives.
//!
//! The crate computes Betti-de Rham period triples of 1-motives over Q and
//! simple number fields, solves Hom-groups in the category of period triples
//! exactly under the algebraic-independence model for transcendental
//! constants, and evaluates period-conjecture instances on concrete curve
//! models. Everything is exact: coefficients live in a number field, periods
//! live in a fraction field of formal symbols, and lattices are handled by
//! Hermite/Smith normal forms.
//!
//! Module map:
//! - [`numfield`]: exact field arithmetic, exact linear algebra, HNF/SNF,
//!   lattice saturation;
//! - [`periodring`]: the coefficient ring of formal periods (symbols,
//!   triangular rewrite rules, log decomposition over primes);
//! - [`perimod`]: period triples, tensor/dual/twist/Cartier operations, the
//!   exact Hom-group solver and period cohomology;
//! - [`onemotive`]: 1-motives with torsion, their structure theory and the
//!   Betti-de Rham / de Rham-Betti realizations;
//! - [`albanese`]: punctured-curve instances of the period conjecture.
//!
//! A minimal end-to-end computation: realize `[u: Z → G_m, 1 ↦ 2]`, read
//! off its period matrix, and solve a Hom-group against the twist Z(1).
//!
//! ```
//! use permotive::onemotive::{prepare_registry, realize_bdr, OneMotive};
//! use permotive::perimod::{hom_group, period_cohomology, PeriodTriple};
//! use permotive::periodring::SymbolRegistry;
//! use permotive::NumberField;
//!
//! let field = NumberField::rationals();
//! let motive = OneMotive::kummer(&field, field.from_integer(2)).unwrap();
//!
//! let mut builder = SymbolRegistry::new(field.clone());
//! prepare_registry(&mut builder, &motive).unwrap();
//! let registry = builder.freeze().unwrap();
//!
//! let triple = realize_bdr(&motive, &registry).unwrap();
//! assert!(triple.is_iso());
//! assert_eq!(triple.omega().entry(0, 0).to_string(), "2πi");
//! assert_eq!(triple.omega().entry(0, 1).to_string(), "log(2)");
//!
//! // H_ϖ = Hom(Z(0), H) vanishes: log 2 is never K-rational here
//! assert_eq!(period_cohomology(&triple).unwrap().rank(), 0);
//! // the characters of the torus part: Hom(Z(1), H) has rank 1
//! let z1 = PeriodTriple::tate(&registry, 1);
//! assert_eq!(hom_group(&z1, &triple).unwrap().rank(), 1);
//! ```

// Index-based loops mirror the matrix algebra throughout and read better
// than iterator chains over two dimensions.
#![allow(clippy::needless_range_loop)]

pub mod albanese;
pub mod error;
pub mod numfield;
pub mod onemotive;
pub mod perimod;
pub mod periodring;
pub mod suite;

pub use error::{Error, Result};
pub use numfield::{
    exact_solve, hnf, integer_kernel, snf, FieldElem, FieldMatrix, IntMatrix, Lattice, NumberField,
};
