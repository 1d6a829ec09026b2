//! Finite realizations of the acceptance semantics of the decision classes.
//!
//! Membership in a certificate class is a statement quantified over
//! certificate assignments and identifier assignments. On finite instances
//! both quantifiers range over finite (if large) spaces, so the class
//! semantics become checkable: this module enumerates those spaces in a
//! pinned order and reports witnesses reproducibly.
//!
//! Two exact strategies keep the universal side tractable:
//!
//! * **Ball restriction** — a node's verdict depends only on its own ball,
//!   and every ball-local assignment extends to a global one, so "all nodes
//!   accept under all assignments" factors into per-node checks over ball
//!   restrictions.
//! * **Read branching** — a verifier only distinguishes certificates it
//!   actually reads. Evaluating against a branching oracle enumerates the
//!   reachable answer paths instead of the raw certificate product, which
//!   collapses, e.g., length-only readers from exponential to linear.
//!
//! Both are cross-checked against plain exhaustive enumeration in the test
//! suite.

mod branch;
mod check;
mod enumerate;
mod quantify;
mod spec;

pub use branch::BranchLeaves;
pub use check::{check_class_membership, decide_ld, ClassCheckReport, DecidesReport, Violation};
pub use enumerate::{certificate_count, enumerate_certificates, CertEnum};
pub use quantify::{
    all_ids_accept, lp_all_certs_accept, lp_cert_bounds, pi1_classify, sigma1_decide,
    BallTupleCache, ExploreParams, Explored, QuantOutcome, QuantResult, Sigma1Result,
};
pub use spec::{BoundScope, ClassSpec, Family, IdScope};

use num_bigint::BigUint;
use thiserror::Error;

use crate::engine::EngineError;
use crate::graph::GraphError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemanticsError {
    #[error("exploration space too large: {detail} (cap {cap})")]
    SpaceTooLarge { detail: String, cap: u64 },
    #[error("bad class spec: {0}")]
    BadSpec(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Work meter shared by the quantification loops. Each verifier invocation
/// (concrete or branched) charges one unit.
#[derive(Debug, Clone)]
pub struct WorkBudget {
    cap: u64,
    used: u64,
}

impl WorkBudget {
    pub fn new(cap: u64) -> Self {
        WorkBudget { cap, used: 0 }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn charge(&mut self, units: u64, what: &str) -> Result<(), SemanticsError> {
        self.used = self.used.saturating_add(units);
        if self.used > self.cap {
            return Err(SemanticsError::SpaceTooLarge {
                detail: format!("{what}: {} work units", self.used),
                cap: self.cap,
            });
        }
        Ok(())
    }

    /// Pre-flight check for a space whose size is known up front.
    pub fn ensure_fits(&self, size: &BigUint, what: &str) -> Result<(), SemanticsError> {
        if *size > BigUint::from(self.cap) {
            return Err(SemanticsError::SpaceTooLarge {
                detail: format!("{what}: {size} assignments"),
                cap: self.cap,
            });
        }
        Ok(())
    }
}
