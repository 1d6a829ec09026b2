//! Single-node languages over a pluggable word oracle: the configuration
//! is one node whose label word is in the oracle's language. Only a
//! decidable stand-in ships; the oracle interface is the extension point.

use std::sync::Arc;

use crate::engine::{PolyBound, Verdict, Verifier};
use crate::graph::Configuration;
use crate::semantics::{BoundScope, ClassSpec};

use super::path_lang::WordOracle;
use super::{Language, Shape};

pub fn node_membership(cfg: &Configuration, oracle: &WordOracle) -> bool {
    cfg.node_count() == 1
        && cfg
            .label(0)
            .word
            .as_ref()
            .is_some_and(|w| cfg.label(0).fields.is_empty() && oracle(w))
}

/// Radius-1 rule: accept iff the node is alone (no ball neighbors) and its
/// word is in the language. Local compute is unbounded.
pub fn node_verifier(oracle: WordOracle) -> Verifier {
    Verifier::new("single-node-word", 1, move |view| {
        view.ops(2);
        if view.node_count() != 1 || view.label_arity(0) != 0 {
            return Ok(Verdict::Reject);
        }
        let Some(word) = view.label_word(0) else {
            return Ok(Verdict::Reject);
        };
        view.ops(word.len() as u64 + 1);
        Ok(Verdict::of(oracle(word)))
    })
}

pub fn node_language(name: &str, oracle: WordOracle) -> Language {
    let membership_oracle = oracle.clone();
    Language::new(
        name,
        Shape::Any,
        Arc::new(move |cfg| node_membership(cfg, &membership_oracle)),
    )
    .with_verifier(
        "single-node-word",
        node_verifier(oracle),
        ClassSpec::ld().with_time_bound(PolyBound::new(&[64, 16]), BoundScope::GlobalN),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::BitString;
    use crate::graph::Label;
    use crate::languages::palindrome_oracle;
    use crate::semantics::{decide_ld, ExploreParams};

    fn word_cfg(w: &str) -> Configuration {
        Configuration::path(vec![Label::with_word(&[], BitString::parse(w).unwrap())]).unwrap()
    }

    #[test]
    fn single_node_language_decided() {
        let oracle = palindrome_oracle();
        let lang = node_language("node-palindrome", oracle);
        assert!(lang.contains(&word_cfg("0110")));
        assert!(!lang.contains(&word_cfg("01")));
        // Two nodes are never members, and the verifier rejects them too.
        let two = Configuration::path(vec![
            Label::with_word(&[], BitString::parse("00").unwrap()),
            Label::with_word(&[], BitString::parse("00").unwrap()),
        ])
        .unwrap();
        assert!(!lang.contains(&two));
        let v = &lang.verifiers[0].verifier;
        let membership = lang.membership_fn();
        let report = decide_ld(
            v,
            &move |cfg: &Configuration| membership(cfg),
            &[word_cfg("0110"), word_cfg("01"), two],
            &ExploreParams::default(),
        )
        .unwrap();
        assert!(report.passed(), "{:?}", report.violation);
    }
}
