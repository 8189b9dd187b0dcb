//! Catalog, table and fetch support for the `gdcage` command-line tool.

pub mod catalog;
pub mod fetch;
pub mod table;
