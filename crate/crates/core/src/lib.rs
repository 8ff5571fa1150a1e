//! Exact computation of small Hales-Jewett type partition numbers.
//!
//! The crate computes values such as `hj_C(m, Λ)`, Shelah's `f8`/`f9` family,
//! `f13`, and van der Waerden / Gallai-Witt numbers by pruned exhaustive
//! search, emitting certificates that can be re-checked offline. It also
//! implements the witness-lifting maps that relate these numbers and audits
//! the inequalities between them on computed values.

pub mod blocks;
pub mod certificate;
pub mod chain;
pub mod cli;
pub mod cnf;
pub mod coloring;
pub mod db;
pub mod error;
pub mod growth;
pub mod kind;
pub mod omega;
pub mod reduce;
pub mod search;
pub mod symmetry;
pub mod verify;
pub mod witness;
pub mod words;

pub use blocks::{BlockConstraint, BlockSystem};
pub use certificate::{CertVerdict, Certificate};
pub use chain::{verify_chain, ChainMode, ChainReport, ChainStatus};
pub use coloring::{Coloring, Ground};
pub use db::{DbResult, Integrity, ResultsDb};
pub use error::{Error, Result};
pub use kind::{ColorConstraint, Kind, KindSpec};
pub use omega::OmegaPoint;
pub use search::{compute_number, exists_bad_coloring, Budget, NumberResult, SearchOptions, SearchStats, SearchVerdict};
pub use verify::verify_witness;
pub use witness::{Witness, WitnessFamily};
pub use words::{Alphabet, ColorSet, CountProfile, Word};
