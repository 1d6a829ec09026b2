//! Membership oracles, verifiers, and provers for the bundled languages.
//!
//! A [`Language`] packages an exact membership oracle (brute force where
//! needed) with the verifiers that decide or certify it under particular
//! class semantics, plus an optional prover for existential schemes.
//! Membership never looks at identifiers or certificates; malformed inputs
//! (wrong shape, out-of-range labels) are simply not members, and verifiers
//! reject them.

mod coloring;
mod iter;
mod node_lang;
mod not_all_selected;
mod path_lang;
mod threshold;

pub use coloring::{
    color_cert_width, colorability_language, colorability_membership, colorability_prover,
    colorability_verifier, coloring_language, coloring_membership, coloring_verifier,
    decode_color, encode_color,
};
pub use iter::{
    iter_build, iter_language, iter_membership, iter_minus_verifier, iter_pi1_verifier,
};
pub use node_lang::{node_language, node_membership, node_verifier};
pub use not_all_selected::{not_all_selected_language, not_all_selected_membership};
pub use path_lang::{
    build_path_l, palindrome_oracle, path_l_endpoint_verifier, path_l_language,
    path_l_membership, word_bound,
};
pub use threshold::{
    agtg_language, agtg_membership, agtg_npld_prover, agtg_npld_verifier, agtg_pi1_verifier,
    altg_language, altg_membership, altg_verifier_with_n,
};

use std::sync::Arc;

use thiserror::Error;

use crate::engine::Verifier;
use crate::graph::{CertificateAssignment, Configuration, GraphError};
use crate::semantics::ClassSpec;
use crate::turing::TmError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LanguageError {
    #[error("bad label: {0}")]
    BadLabel(String),
    #[error("configuration is not {0}-colorable")]
    NotColorable(u64),
    #[error("configuration is not a path")]
    NotAPath,
    #[error("configuration is not a member: {0}")]
    NotAMember(String),
    #[error("word of {len} bits exceeds the limit {max}")]
    WordTooLong { len: usize, max: usize },
    #[error("machine does not halt on input {which} within the step cap")]
    NonHaltingInput { which: &'static str },
    #[error("machine halts on input {which} without taking a step")]
    InstantHalt { which: &'static str },
    #[error(transparent)]
    Tm(#[from] TmError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub type MembershipFn = dyn Fn(&Configuration) -> bool + Send + Sync;
pub type ProverFn =
    dyn Fn(&Configuration) -> Result<CertificateAssignment, LanguageError> + Send + Sync;

/// A verifier together with the class semantics it is meant to run under.
#[derive(Clone)]
pub struct NamedVerifier {
    pub name: String,
    pub verifier: Verifier,
    pub spec: ClassSpec,
}

/// Expected input shape; shape violations are non-members.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Path,
    Any,
}

/// A distributed language bundled with its verifiers and optional prover.
#[derive(Clone)]
pub struct Language {
    pub name: String,
    pub shape: Shape,
    membership: Arc<MembershipFn>,
    pub verifiers: Vec<NamedVerifier>,
    prover: Option<Arc<ProverFn>>,
}

impl Language {
    pub fn new(name: impl Into<String>, shape: Shape, membership: Arc<MembershipFn>) -> Self {
        Language {
            name: name.into(),
            shape,
            membership,
            verifiers: Vec::new(),
            prover: None,
        }
    }

    pub fn with_verifier(
        mut self,
        name: impl Into<String>,
        verifier: Verifier,
        spec: ClassSpec,
    ) -> Self {
        self.verifiers.push(NamedVerifier {
            name: name.into(),
            verifier,
            spec,
        });
        self
    }

    pub fn with_prover(mut self, prover: Arc<ProverFn>) -> Self {
        self.prover = Some(prover);
        self
    }

    pub fn contains(&self, cfg: &Configuration) -> bool {
        (self.membership)(cfg)
    }

    pub fn membership_fn(&self) -> Arc<MembershipFn> {
        self.membership.clone()
    }

    pub fn prove(
        &self,
        cfg: &Configuration,
    ) -> Option<Result<CertificateAssignment, LanguageError>> {
        self.prover.as_ref().map(|p| p(cfg))
    }

    pub fn has_prover(&self) -> bool {
        self.prover.is_some()
    }

    /// The verifier registered for the given semantics name, e.g.
    /// `pi1-plocal`.
    pub fn verifier_for(&self, semantics: &str) -> Option<&NamedVerifier> {
        self.verifiers
            .iter()
            .find(|v| v.spec.semantics_name() == semantics)
    }
}

/// All bundled languages with their default parameters.
pub fn registry() -> Vec<Language> {
    vec![
        coloring_language(3),
        colorability_language(3),
        not_all_selected_language(),
        agtg_language(),
        altg_language(),
        path_l_language(),
        iter_language(false),
        iter_language(true),
        node_language("node-palindrome", palindrome_oracle()),
    ]
}

/// Looks up a bundled language by name; `k` parameterizes the coloring
/// languages (default 3).
pub fn language_by_name(name: &str, k: Option<u64>) -> Option<Language> {
    let k = k.unwrap_or(3);
    match name {
        "coloring" => Some(coloring_language(k)),
        "colorability" => Some(colorability_language(k)),
        "not-all-selected" => Some(not_all_selected_language()),
        "agtg" => Some(agtg_language()),
        "altg" => Some(altg_language()),
        "path-palindrome" => Some(path_l_language()),
        "iter" => Some(iter_language(true)),
        "iter-minus" => Some(iter_language(false)),
        "node-palindrome" => Some(node_language("node-palindrome", palindrome_oracle())),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_names_are_unique_and_resolvable() {
        let langs = registry();
        let mut names: Vec<&str> = langs.iter().map(|l| l.name.as_str()).collect();
        names.sort_unstable();
        let before = names.len();
        names.dedup();
        assert_eq!(before, names.len());
        for name in names {
            assert!(language_by_name(name, None).is_some(), "{name} not resolvable");
        }
    }
}
