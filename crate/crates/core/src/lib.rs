//! Finite semifields of order `2^n` given by standard bases of `n x n`
//! matrices over GF(2).
//!
//! The crate covers bit-packed GF(2) linear algebra ([`gf2`]), the cube and
//! standard-basis representations with verification ([`semifield`]),
//! structural analysis such as subsemifield detection and nuclei
//! ([`analysis`]), and a backtracking search for new standard bases
//! ([`search`]).
//!
//! Indices are 0-based throughout the API: matrix `0` is `A_1`, bit `0` of
//! a vector is the coefficient of the unity `a_1`.

pub mod analysis;
pub mod error;
pub mod fixtures;
pub mod gf2;
pub mod poly;
pub mod search;
pub mod semifield;

pub use analysis::{FieldId, Nuclei, SubalgebraReport, SubsemifieldScan, Subspace, Verdict};
pub use error::{Error, Result};
pub use gf2::{Gf2Matrix, Gf2Vector, MAX_DIM};
pub use poly::Gf2Poly;
pub use search::{SearchBudget, SearchConstraints, SearchError, SearchEvent, SearchOutcome};
pub use semifield::{Condition, Cube, StandardBasis, VerificationReport, Witness};
