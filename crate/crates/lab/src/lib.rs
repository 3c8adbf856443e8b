//! Experiment runner companion to `kerr-core`: recipes that reproduce the
//! reference figures and checks as CSV files plus a JSON run manifest.

pub mod cache;
pub mod csv;
pub mod forecast;
pub mod manifest;
pub mod params;
pub mod recipes;
pub mod runners;
