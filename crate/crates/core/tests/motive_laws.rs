//! Functoriality of the realization: induced morphisms compose, and
//! realizing a composite equals composing the realizations.

use permotive::numfield::{FieldMatrix, NumberField};
use permotive::onemotive::{hom_motives, induced_morphism, realize_bdr, MotiveMorphism, OneMotive};
use permotive::suite::shared_registry;

#[test]
fn induced_morphisms_are_functorial() {
    let field = NumberField::rationals();
    // a composable chain [Z → 2] → [Z → 4] → [Z → 16]
    let m2 = OneMotive::kummer(&field, field.from_integer(2)).unwrap();
    let m4 = OneMotive::kummer(&field, field.from_integer(4)).unwrap();
    let m16 = OneMotive::kummer(&field, field.from_integer(16)).unwrap();
    let registry = shared_registry(&field, &[m2.clone(), m4.clone(), m16.clone()]).unwrap();
    let t2 = realize_bdr(&m2, &registry).unwrap();
    let _t4 = realize_bdr(&m4, &registry).unwrap();
    let t16 = realize_bdr(&m16, &registry).unwrap();

    let first = hom_motives(&m2, &m4, &[]).unwrap();
    let second = hom_motives(&m4, &m16, &[]).unwrap();
    assert_eq!(first.rank(), 1);
    assert_eq!(second.rank(), 1);
    for f in first.generators() {
        for g in second.generators() {
            let composite = MotiveMorphism {
                f: g.f.mul(&f.f).unwrap(),
                g: g.g.mul(&f.g).unwrap(),
            };
            let induced_f = induced_morphism(f, &m2, &m4, &registry).unwrap();
            let induced_g = induced_morphism(g, &m4, &m16, &registry).unwrap();
            let induced_composite =
                induced_morphism(&composite, &m2, &m16, &registry).unwrap();
            // realize(g ∘ f) = realize(g) ∘ realize(f), and it commutes
            assert_eq!(induced_composite, induced_g.compose(&induced_f).unwrap());
            assert!(induced_composite.satisfies_square(&t2, &t16).unwrap());
        }
    }
}

#[test]
fn induced_morphisms_cover_multi_rank_pairs() {
    let field = NumberField::rationals();
    let m = OneMotive::torus_lattice(
        &field,
        FieldMatrix::from_fn(&field, 1, 2, |_, c| field.from_integer(if c == 0 { 2 } else { 4 })),
    )
    .unwrap();
    let n = OneMotive::torus_lattice(
        &field,
        FieldMatrix::from_fn(&field, 2, 1, |r, _| field.from_integer(if r == 0 { 2 } else { -1 })),
    )
    .unwrap();
    let registry = shared_registry(&field, &[m.clone(), n.clone()]).unwrap();
    let tm = realize_bdr(&m, &registry).unwrap();
    let tn = realize_bdr(&n, &registry).unwrap();
    for direction in [(&m, &n, &tm, &tn), (&n, &m, &tn, &tm)] {
        let hom = hom_motives(direction.0, direction.1, &[]).unwrap();
        for gen in hom.generators() {
            let induced =
                induced_morphism(gen, direction.0, direction.1, &registry).unwrap();
            assert!(induced.satisfies_square(direction.2, direction.3).unwrap());
        }
    }
}
