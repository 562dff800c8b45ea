//! Exact computation of logarithmic André–Quillen homology in low degrees.
//!
//! The crate is layered bottom-up: exact linear algebra over `Z` and fields,
//! polynomial rings and Gröbner bases, finitely presented abelian groups and
//! monoids, finitely presented modules, and finally the complexes whose
//! homology is reported.

pub mod error;
pub mod abgroup;
pub mod aqclassic;
pub mod exactlinalg;
pub mod field;
pub mod fpmodule;
pub mod groebner;
pub mod kcomplex;
pub mod logls;
pub mod logsurj;
pub mod monoids;
pub mod poly;

pub use error::{Error, Result};
