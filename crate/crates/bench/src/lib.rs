//! Shared fixtures for the criterion benchmarks.

use std::sync::Arc;

use permotive::numfield::NumberField;
use permotive::onemotive::OneMotive;
use permotive::periodring::SymbolRegistry;
use permotive::suite::{shared_registry, torus_lattice_catalog};

pub struct BenchFixture {
    pub field: Arc<NumberField>,
    pub catalog: Vec<OneMotive>,
    pub registry: Arc<SymbolRegistry>,
}

pub fn fixture() -> BenchFixture {
    let field = NumberField::rationals();
    let catalog = torus_lattice_catalog(&field);
    let registry = shared_registry(&field, &catalog).expect("registry for the catalog");
    BenchFixture {
        field,
        catalog,
        registry,
    }
}
