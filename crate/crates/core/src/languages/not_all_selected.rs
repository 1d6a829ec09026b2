//! Label-0/1 configurations where at least one node carries 0.

use std::sync::Arc;

use crate::graph::Configuration;

use super::{Language, LanguageError, Shape};

/// True iff all labels are in `{0, 1}` and some node is labeled 0. Errors
/// on out-of-range labels when called directly; the bundled language treats
/// those as non-members.
pub fn not_all_selected_membership(cfg: &Configuration) -> Result<bool, LanguageError> {
    let mut any_zero = false;
    for (v, label) in cfg.labels().iter().enumerate() {
        match label.field0() {
            Some(0) => any_zero = true,
            Some(1) => {}
            other => {
                return Err(LanguageError::BadLabel(format!(
                    "node {v} has label {other:?}, expected 0 or 1"
                )))
            }
        }
    }
    Ok(any_zero)
}

pub fn not_all_selected_language() -> Language {
    Language::new(
        "not-all-selected",
        Shape::Any,
        Arc::new(|cfg| not_all_selected_membership(cfg).unwrap_or(false)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let m = |values: &[u64]| {
            not_all_selected_membership(&Configuration::labeled_path(values).unwrap())
        };
        assert_eq!(m(&[0, 1, 1]), Ok(true));
        assert_eq!(m(&[1, 1]), Ok(false));
        assert_eq!(m(&[0]), Ok(true));
        assert!(matches!(m(&[2, 0]), Err(LanguageError::BadLabel(_))));
        // The bundled language maps bad labels to non-membership.
        let lang = not_all_selected_language();
        assert!(!lang.contains(&Configuration::labeled_path(&[2, 0]).unwrap()));
    }
}
