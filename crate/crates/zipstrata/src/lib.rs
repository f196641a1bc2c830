//! Computational engine for the combinatorics of G-zip stratifications and
//! partial Hasse invariants on the classical families GL_n (split),
//! Sp_2n (split) and U_n (inert), together with an exact finite-field
//! verification layer for the explicit matrix constructions.
//!
//! Everything is exact: integer lattices, rational cocharacters, big-integer
//! binomial sums and arithmetic in small finite fields. No floats anywhere.

pub mod fq;
pub mod fqmat;
pub mod matrix;
pub mod poly;
pub mod poset;
pub mod realize;
pub mod rep;
pub mod root;
pub mod weight;
pub mod weyl;
pub mod zip;

pub use fq::{FqCtx, FqElem};
pub use fqmat::FqMatrix;
pub use root::{Character, Family, RootDatum, RootError};
pub use weyl::{CosetSide, WeylElt};
pub use zip::ZipDatum;
