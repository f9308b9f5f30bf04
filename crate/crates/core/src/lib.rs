//! Exact classification of Fano and IP lattice simplices by dimension and
//! Gorenstein index, with checks of the sharp volume, multiplicity and Mahler
//! volume bounds.

// Index loops read better than iterator chains in the matrix code.
#![allow(clippy::needless_range_loop)]

pub mod bounds;
pub mod classify;
pub mod error;
pub mod hnf;
pub mod int;
pub mod matrix;
pub mod normal_form;
pub mod simplex;
pub mod ufp;

pub use bounds::{verify_bounds, BoundKind, BoundReport, SylvesterTable};
pub use classify::{ClassificationRecord, ClassificationTask, ClassifyOptions, Mode};
pub use error::{Error, Result};
pub use int::Rat;
pub use matrix::IntMatrix;
pub use normal_form::CanonicalMatrix;
pub use simplex::{GorensteinData, LatticeSimplex, SimplexInvariants};
pub use ufp::{UnitFractionPartition, WeightSystem};
