//! Placeholder.
pub struct Catalog;
pub fn load_catalog() {}
