//! Property tests for the exact linear algebra and the period ring.

use std::sync::Arc;

use num::{BigInt, BigRational, Signed, Zero};
use proptest::prelude::*;

use permotive::numfield::{
    exact_solve, hnf, integer_kernel, saturate, snf, FieldMatrix, IntMatrix, Lattice, NumberField,
};
use permotive::periodring::{
    log_decompose, monomial_coefficients, Monomial, PeriodScalar, SymbolRegistry,
};

fn small_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(rows, cols)| {
        proptest::collection::vec(-6i64..=6, rows * cols).prop_map(move |entries| {
            IntMatrix::from_fn(rows, cols, |r, c| BigInt::from(entries[r * cols + c]))
        })
    })
}

fn rational_vecs() -> impl Strategy<Value = (usize, Vec<Vec<BigRational>>)> {
    (1usize..=4, 0usize..=3).prop_flat_map(|(n, k)| {
        proptest::collection::vec((-8i64..=8, 1i64..=6), n * k).prop_map(move |entries| {
            let vecs = (0..k)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let (num, den) = entries[i * n + j];
                            BigRational::new(BigInt::from(num), BigInt::from(den))
                        })
                        .collect()
                })
                .collect();
            (n, vecs)
        })
    })
}

proptest! {
    #[test]
    fn hnf_is_idempotent_and_span_preserving(m in small_matrix()) {
        let h = hnf(&m);
        prop_assert_eq!(hnf(&h), h.clone());
        let l1 = Lattice::from_generators(m.rows(), &m).unwrap();
        let l2 = Lattice::from_generators(m.rows(), &h).unwrap();
        prop_assert_eq!(l1, l2);
    }

    #[test]
    fn snf_decomposition_and_divisibility(m in small_matrix()) {
        let dec = snf(&m);
        let product = dec.u.mul(&m).unwrap().mul(&dec.v).unwrap();
        prop_assert_eq!(product, dec.d.clone());
        // diagonal, nonnegative, each dividing the next
        let diag = dec.diagonal();
        for r in 0..dec.d.rows() {
            for c in 0..dec.d.cols() {
                if r != c {
                    prop_assert!(dec.d.entry(r, c).is_zero());
                }
            }
        }
        for w in diag.windows(2) {
            prop_assert!(!w[0].is_negative());
            if !w[0].is_zero() {
                prop_assert!((&w[1] % &w[0]).is_zero());
            } else {
                prop_assert!(w[1].is_zero());
            }
        }
        // idempotence: the SNF of D is D
        prop_assert_eq!(snf(&dec.d).d, dec.d.clone());
        // transforms are unimodular
        prop_assert_eq!(snf(&dec.u).d, IntMatrix::identity(m.rows()));
        prop_assert_eq!(snf(&dec.v).d, IntMatrix::identity(m.cols()));
    }

    #[test]
    fn kernel_dimension_is_the_nullity(m in small_matrix()) {
        let rank = snf(&m).rank();
        let kernel = integer_kernel(&m);
        prop_assert_eq!(kernel.cols() + rank, m.cols());
        // every kernel column is annihilated
        prop_assert!(m.mul(&kernel).unwrap().is_zero());
    }

    #[test]
    fn exact_solve_rank_nullity(m in small_matrix()) {
        // 200-case rank/nullity sweep over random small systems
        let field = NumberField::rationals();
        let a = FieldMatrix::from_int(&field, &m);
        let zero = FieldMatrix::zero(&field, m.rows(), 1);
        let sol = exact_solve(&a, &zero).unwrap().unwrap();
        let rank = snf(&m).rank();
        prop_assert_eq!(sol.kernel.len() + rank, m.cols());
        // kernel vectors are genuine solutions
        for v in &sol.kernel {
            let vm = FieldMatrix::from_fn(&field, m.cols(), 1, |r, _| v[r].clone());
            prop_assert!(a.mul(&vm).unwrap().is_zero());
        }
    }

    #[test]
    fn saturation_preserves_the_span((n, vecs) in rational_vecs()) {
        let lattice = saturate(n, &vecs).unwrap();
        let field = NumberField::rationals();
        // span(lattice) ⊆ span(vecs) and conversely, checked by exact solves
        let w = FieldMatrix::from_fn(&field, n, vecs.len(), |r, c| {
            field.from_rational(vecs[c][r].clone())
        });
        let l = FieldMatrix::from_fn(&field, n, lattice.rank(), |r, c| {
            field.from_rational(BigRational::from(lattice.basis().entry(r, c).clone()))
        });
        prop_assert!(w.spans(&l).unwrap());
        prop_assert!(l.spans(&w).unwrap());
        prop_assert!(lattice.is_saturated());
    }
}

fn legendre_registry() -> Arc<SymbolRegistry> {
    let field = NumberField::rationals();
    let mut reg = SymbolRegistry::new(field.clone());
    reg.register_log_prime(BigInt::from(2)).unwrap();
    reg.register_log_prime(BigInt::from(3)).unwrap();
    let om1 = reg.register_abelian_period("om1").unwrap();
    let om2 = reg.register_abelian_period("om2").unwrap();
    let eta1 = reg.register_abelian_period("eta1").unwrap();
    let eta2 = reg.register_abelian_period("eta2").unwrap();
    reg.add_relation(
        Monomial::from_pairs(&[(om1, 1), (eta2, 1)]),
        vec![
            (field.one(), Monomial::from_pairs(&[(om2, 1), (eta1, 1)])),
            (field.one(), Monomial::symbol(reg.two_pi_i())),
        ],
    )
    .unwrap();
    reg.freeze().unwrap()
}

proptest! {
    #[test]
    fn normal_form_is_a_ring_homomorphism(
        seed in proptest::collection::vec((0usize..7, 1u32..=2, -4i64..=4), 0..=6)
    ) {
        let reg = legendre_registry();
        let field = reg.field().clone();
        let build = |terms: &[(usize, u32, i64)]| {
            let mut acc = PeriodScalar::zero(&reg);
            for &(id, exp, coeff) in terms {
                let id = reg.symbol_id(id % reg.num_symbols()).unwrap();
                let m = Monomial::from_pairs(&[(id, exp)]);
                acc = acc.add(
                    &PeriodScalar::monomial(&reg, m).scale_field(&field.from_integer(coeff)),
                );
            }
            acc
        };
        let half = seed.len() / 2;
        let x = build(&seed[..half]);
        let y = build(&seed[half..]);
        // idempotence and compatibility with + and ×
        prop_assert_eq!(x.normal_form(), x.clone());
        prop_assert_eq!(
            x.add(&y).normal_form(),
            x.normal_form().add(&y.normal_form())
        );
        prop_assert_eq!(
            x.mul(&y).normal_form(),
            x.normal_form().mul(&y.normal_form())
        );
    }

    #[test]
    fn log_decomposition_is_multiplicative_modulo_branch(
        an in -30i64..30, ad in 1i64..12, bn in -30i64..30, bd in 1i64..12
    ) {
        prop_assume!(an != 0 && bn != 0);
        let reg = {
            let field = NumberField::rationals();
            let mut builder = SymbolRegistry::new(field);
            // register every prime that can appear
            for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29] {
                builder.register_log_prime(BigInt::from(p)).unwrap();
            }
            builder.freeze().unwrap()
        };
        let field = reg.field().clone();
        let a = field.from_rational(BigRational::new(BigInt::from(an), BigInt::from(ad)));
        let b = field.from_rational(BigRational::new(BigInt::from(bn), BigInt::from(bd)));
        let ab = a.mul(&b);
        let da = log_decompose(&a, &reg).unwrap();
        let db = log_decompose(&b, &reg).unwrap();
        let dab = log_decompose(&ab, &reg).unwrap();
        let diff = da.add(&db).sub(&dab);
        // the defect lies in Z·2πi
        let coeffs = monomial_coefficients(&diff).unwrap();
        for (m, c) in coeffs {
            prop_assert_eq!(m, Monomial::symbol(reg.two_pi_i()));
            prop_assert!(c.as_rational().unwrap().is_integer());
        }
    }
}
