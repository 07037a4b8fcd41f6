//! Initial forms, initial ideals, Gröbner complexes and tropical varieties over
//! valued fields, computed with exact rational arithmetic throughout.
//!
//! The pipeline is: [`valued_field`] supplies the coefficient field with its
//! valuation and splitting; [`poly`] handles single polynomials; [`ideal_graded`]
//! does degreewise linear algebra on homogeneous ideals; [`polyhedra`] provides
//! exact polyhedra and complexes; [`grobner_complex`] and [`tropical`] assemble
//! them into Gröbner complexes, tropical varieties and tropical bases.

pub mod error;
pub mod grobner_complex;
pub mod ideal_graded;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod polyhedra;
pub mod rational;
pub mod tropical;
pub mod upoly;
pub mod valued_field;

pub use error::{Error, Result};
pub use rational::Rational;
