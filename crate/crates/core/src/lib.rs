//! Simulator and verification workbench for local decision classes on
//! labeled graphs.
//!
//! The crate is organized around a small pipeline:
//!
//! * [`graph`] — labeled graph configurations, identifier assignments, and
//!   bit-exact radius-`t` views ([`view`]).
//! * [`engine`] — local verifiers, step-counted execution, and integer
//!   polynomial bounds.
//! * [`semantics`] — finite realizations of the acceptance semantics of the
//!   decision classes, via exhaustive quantification over certificates and
//!   identifier assignments.
//! * [`languages`] — membership oracles, verifiers, and provers for the
//!   concrete languages bundled with the workbench.
//! * [`turing`] — the deterministic single-tape machine engine backing the
//!   iterated-configuration languages.
//! * [`transforms`] — verifier-to-verifier simulations between classes.
//! * [`harness`] — indistinguishability triples, view covers, and the
//!   experiment registry.

pub mod bits;
pub mod engine;
pub mod graph;
pub mod harness;
pub mod languages;
pub mod semantics;
pub mod transforms;
pub mod turing;
pub mod view;

pub use bits::BitString;
pub use graph::{Configuration, IdAssignment, IdMode, Label};
pub use view::View;
