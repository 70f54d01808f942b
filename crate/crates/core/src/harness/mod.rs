//! Catalog of small p-groups and the property suites run over it.

mod catalog;
mod verify;

pub use catalog::{
    abelian_groups, build_catalog, build_catalog_for, build_default_catalog, default_max_order,
    partitions, Catalog, CatalogEntry, CatalogError,
};
pub use verify::{psi_collisions, verify_theorems, Status, TheoremReport, Violation};
