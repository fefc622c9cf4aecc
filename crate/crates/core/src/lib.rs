//! Exact computer algebra for polynomial automorphism groups in odd
//! characteristic: fields, sparse polynomials, endomorphisms and words,
//! generator constructions with certificates, torus actions, a finite model
//! of automorphisms of `GL_n`, word search and a regression suite.

pub mod endo;
pub mod error;
pub mod field;
pub mod gens;
pub mod lingrp;
pub mod poly;
pub mod random;
pub mod search;
pub mod torus;
pub mod verify;

pub use endo::{eval_word, verify_inverse_pair, Endomorphism, GeneratorSet, GeneratorWord, Letter};
pub use error::{Error, Result};
pub use field::{Elem, Field, FieldSpec, Scalar};
pub use lingrp::{Matrix, StandardAuto};
pub use poly::{ExponentVector, Monomial, Polynomial, DEFAULT_DEGREE_CAP};
pub use search::{default_generators, find_word, rips_probe, SearchConfig, SearchOutcome, Strategy};

/// Attached to every search and survey report.
pub const FINITE_FIELD_CAVEAT: &str = "The conjecture is stated over infinite fields; finite-field reachability results transfer in neither direction automatically.";
