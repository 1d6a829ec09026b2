//! Indistinguishability triples, view covers, and the experiment registry.
//!
//! The separation arguments all share one mechanical core: build a
//! non-member whose every node has the same view as some node of a member,
//! check the cover node by node, and replay certificate assignments across
//! it to confirm that verdicts transfer. The experiment registry binds each
//! bundled scenario to a desk-scale check with a machine-readable report.

mod cover;
mod experiments;
mod family;
mod triples;

pub use cover::{
    falsify, replay_cover, view_cover, CoverEntry, CoverMapping, CoverOutcome, FalsifyReport,
    GraphClassification, ReplayReport,
};
pub use experiments::{
    experiment_names, run_lemma, CheckResult, ExperimentParams, ExperimentReport,
};
pub use family::{
    build_descriptor, build_predicate_verifier, verifier_family, PredicateSpec,
    VerifierDescriptor,
};
pub use triples::{agtg_triple, altg_triple, path_l_pair, BoundCheck, Triple};

use thiserror::Error;

use crate::engine::EngineError;
use crate::graph::{Configuration, GraphError, IdAssignment};
use crate::languages::LanguageError;
use crate::semantics::SemanticsError;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("unknown experiment {0:?}")]
    UnknownExperiment(String),
    #[error("view cover failed at target node {node}")]
    CoverFailed { node: usize },
    #[error("certificate bound is not monotone at n = {n}: Q(n) = {at_n}, Q(n+1) = {at_n1}")]
    BoundNotMonotoneAtN { n: u64, at_n: String, at_n1: String },
    #[error("bad experiment parameters: {0}")]
    BadParams(String),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Language(#[from] LanguageError),
}

/// A configuration together with a fixed id assignment; the form the
/// indistinguishability arguments quantify over.
#[derive(Debug, Clone)]
pub struct Identified {
    pub cfg: Configuration,
    pub ids: IdAssignment,
}

impl Identified {
    /// Ids `1..=n` in node order.
    pub fn consecutive(cfg: Configuration) -> Self {
        let ids = IdAssignment::consecutive(&cfg);
        Identified { cfg, ids }
    }

    pub fn node_count(&self) -> usize {
        self.cfg.node_count()
    }
}
