//! Benchmark fixtures built from the catalog.

use liefol_core::catalog::{self, CatalogEntry, Params};
use liefol_core::liecore::GModule;
use liefol_core::qlinalg::{rat, QMatrix};

/// A catalog entry with default parameters.
pub fn entry(name: &str) -> CatalogEntry {
    catalog::build(name, &Params::default()).expect("catalog entries build with default parameters")
}

/// The quotient module `L/𝔤` of a catalog entry.
pub fn quotient(name: &str) -> GModule {
    entry(name)
        .subalgebra
        .quotient_module()
        .expect("catalog subalgebras are closed")
}

/// Dense integer matrix with a deterministic, well-spread pattern.
pub fn dense_matrix(rows: usize, cols: usize) -> QMatrix {
    QMatrix::from_fn(rows, cols, |i, j| rat(((i * 7 + j * 13 + i * j) % 11) as i64 - 5))
}
