//! Exact spin L-factors, Hecke eigenvalues and sign certification for Ikeda
//! lifts of elliptic eigenforms, with closed forms for genus 4.

pub mod cli;
pub mod combinat;
pub mod eigen;
pub mod error;
pub mod exactalg;
pub mod ingest;
pub mod lfactor;
pub mod par;
pub mod series;

pub use error::{Error, Result};
