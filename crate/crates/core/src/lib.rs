//! Finite quantale-enriched (T,V)-spaces.
//!
//! Values and quantales live in [`quantale`], V-relations in [`vrel`], monads in [`monad`],
//! spaces and their constructions in [`space`], C-generated structures in [`generation`]
//! and quasi-spaces in [`quasi`]. Everything is exact: rationals are `Ratio<i64>` and
//! structure equality is entrywise equality.

pub mod budget;
pub mod carrier;
pub mod enumerate;
pub mod error;
pub mod generation;
pub mod monad;
pub mod quantale;
pub mod quasi;
pub mod random;
pub mod report;
pub mod space;
pub mod vrel;

pub use budget::Budget;
pub use carrier::{AllMaps, Carrier, MapArrow};
pub use error::{Error, Result};
pub use generation::{ProbeClass, ProbeMode};
pub use monad::Monad;
pub use quantale::{validate_quantale, Cost, Quantale, QuantaleKind, QuantaleReport, Rational, Value};
pub use quasi::{QuasiClass, QuasiSpace};
pub use report::{ValidationReport, Violation};
pub use space::{validate_space, FunctionSpace, Space};
pub use vrel::{compose, VRel};
