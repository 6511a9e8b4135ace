//! Built-in manifolds, shipped as documents.

use crate::document::{parse_manifold, LoadedModel, ManifoldDocument};
use crate::error::Result;

pub struct CatalogEntry {
    pub name: &'static str,
    pub summary: &'static str,
    pub source: &'static str,
}

pub const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "kenmotsu5",
        summary: "5-dim Kenmotsu model, [e_i, e_5] = e_i for i = 1..4",
        source: include_str!("../catalog/kenmotsu5.json"),
    },
    CatalogEntry {
        name: "hyperbolic3",
        summary: "3-dim Kenmotsu model, [e_1, e_3] = e_1, [e_2, e_3] = e_2",
        source: include_str!("../catalog/hyperbolic3.json"),
    },
    CatalogEntry {
        name: "flat3",
        summary: "abelian R^3 with a contact block; not Kenmotsu",
        source: include_str!("../catalog/flat3.json"),
    },
];

pub fn names() -> impl Iterator<Item = &'static str> {
    ENTRIES.iter().map(|e| e.name)
}

/// `None` for unknown names. The shipped documents always parse.
pub fn document(name: &str) -> Option<ManifoldDocument> {
    let entry = ENTRIES.iter().find(|e| e.name == name)?;
    Some(parse_manifold(entry.source).expect("built-in catalog documents are valid"))
}

pub fn load(name: &str) -> Option<Result<LoadedModel>> {
    document(name).map(|d| d.to_model())
}
