//! Library surface of the batch front end, shared by the `priorcurve`
//! binary and the integration test suites.

pub mod config;
pub mod emit;
pub mod grid;
pub mod ingest;
pub mod reproduce;
