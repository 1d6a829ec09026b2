//! Countdown paths carrying a word at one endpoint: labels
//! `(n, n), (n, n-1), ..., (n, 2), (n, 1, w)` with the word `w` in a
//! pluggable language. The second field counts down to the word end, the
//! first pins the claimed size.

use std::sync::Arc;

use crate::bits::BitString;
use crate::engine::{MeteredView, PolyBound, Verdict, Verifier};
use crate::graph::{Configuration, Label};
use crate::semantics::{BoundScope, ClassSpec};

use super::{Language, LanguageError, Shape};

pub type WordOracle = Arc<dyn Fn(&BitString) -> bool + Send + Sync>;

/// Maximum word length on an `n`-node instance: `floor(log2(n))`.
pub fn word_bound(n: usize) -> usize {
    if n == 0 {
        0
    } else {
        (usize::BITS - 1 - n.leading_zeros()) as usize
    }
}

/// Builds the countdown path for `word` on `n` nodes.
pub fn build_path_l(word: &BitString, n: usize) -> Result<Configuration, LanguageError> {
    if n == 0 {
        return Err(LanguageError::BadLabel("empty path".into()));
    }
    let max = word_bound(n);
    if word.len() > max {
        return Err(LanguageError::WordTooLong {
            len: word.len(),
            max,
        });
    }
    let n64 = n as u64;
    let labels: Vec<Label> = (0..n)
        .map(|j| {
            let countdown = (n - j) as u64;
            if countdown == 1 {
                Label::with_word(&[n64, 1], word.clone())
            } else {
                Label::of(&[n64, countdown])
            }
        })
        .collect();
    Ok(Configuration::path(labels)?)
}

/// Membership: the exact countdown pattern in some orientation, a word of
/// legal length at the countdown end, and the word in the language.
pub fn path_l_membership(cfg: &Configuration, oracle: &WordOracle) -> bool {
    let Some(order) = cfg.path_order() else {
        return false;
    };
    let forward: Vec<usize> = order.clone();
    let backward: Vec<usize> = order.iter().rev().copied().collect();
    [forward, backward]
        .iter()
        .any(|o| matches_pattern(cfg, o, oracle))
}

fn matches_pattern(cfg: &Configuration, order: &[usize], oracle: &WordOracle) -> bool {
    let n = cfg.node_count();
    let n64 = n as u64;
    for (j, &node) in order.iter().enumerate() {
        let label = cfg.label(node);
        let countdown = (n - j) as u64;
        if label.fields != vec![n64, countdown] {
            return false;
        }
        match (&label.word, countdown) {
            (Some(w), 1) => {
                if w.len() > word_bound(n) || !oracle(w) {
                    return false;
                }
            }
            (None, 1) => return false,
            (None, _) => {}
            (Some(_), _) => return false,
        }
    }
    true
}

/// Radius-1 verifier: the countdown node evaluates the word with unbounded
/// local compute; every node checks its own pattern position against its
/// neighbors. Decides the language on connected path-shaped inputs.
pub fn path_l_endpoint_verifier(oracle: WordOracle) -> Verifier {
    Verifier::new("path-countdown", 1, move |view| {
        let Some((nc, i)) = read_pattern_fields(view, 0) else {
            return Ok(Verdict::Reject);
        };
        view.ops(2);
        if i < 1 || i > nc {
            return Ok(Verdict::Reject);
        }
        // Word exactly on the countdown-1 node, of legal length, in the
        // language.
        let word = view.label_word(0);
        match (word, i) {
            (Some(w), 1) => {
                view.ops(w.len() as u64 + 1);
                if w.len() > word_bound(nc as usize) || !oracle(w) {
                    return Ok(Verdict::Reject);
                }
            }
            (None, 1) => return Ok(Verdict::Reject),
            (Some(_), _) => return Ok(Verdict::Reject),
            (None, _) => {}
        }
        // Expected neighbor countdowns.
        let mut expected: Vec<u64> = Vec::with_capacity(2);
        if i >= 2 {
            expected.push(i - 1);
        }
        if i + 1 <= nc {
            expected.push(i + 1);
        }
        let neighbors = view.neighbors(0);
        view.op();
        if neighbors.len() != expected.len() {
            return Ok(Verdict::Reject);
        }
        let mut seen: Vec<u64> = Vec::with_capacity(2);
        for &j in &neighbors {
            let Some((nc_nb, i_nb)) = read_pattern_fields(view, j) else {
                return Ok(Verdict::Reject);
            };
            view.op();
            if nc_nb != nc {
                return Ok(Verdict::Reject);
            }
            // The word sits exactly on countdown-1 nodes.
            let has_word = view.label_word(j).is_some();
            view.op();
            if has_word != (i_nb == 1) {
                return Ok(Verdict::Reject);
            }
            seen.push(i_nb);
        }
        seen.sort_unstable();
        let mut want = expected.clone();
        want.sort_unstable();
        view.ops(2);
        Ok(Verdict::of(seen == want))
    })
}

fn read_pattern_fields(view: &MeteredView<'_>, node: usize) -> Option<(u64, u64)> {
    if view.label_arity(node) != 2 {
        return None;
    }
    Some((view.label_field(node, 0)?, view.label_field(node, 1)?))
}

/// Binary palindromes: the decidable stand-in word language.
pub fn palindrome_oracle() -> WordOracle {
    Arc::new(|w: &BitString| {
        let n = w.len();
        (0..n / 2).all(|i| w.get(i) == w.get(n - 1 - i))
    })
}

pub fn path_l_language() -> Language {
    let oracle = palindrome_oracle();
    let membership_oracle = oracle.clone();
    Language::new(
        "path-palindrome",
        Shape::Path,
        Arc::new(move |cfg| path_l_membership(cfg, &membership_oracle)),
    )
    .with_verifier(
        "path-countdown",
        path_l_endpoint_verifier(oracle),
        ClassSpec::ld().with_time_bound(PolyBound::new(&[64, 16]), BoundScope::GlobalN),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builder_label_pattern() {
        let cfg = build_path_l(&BitString::parse("1").unwrap(), 4).unwrap();
        assert_eq!(cfg.label(0).fields, vec![4, 4]);
        assert_eq!(cfg.label(1).fields, vec![4, 3]);
        assert_eq!(cfg.label(2).fields, vec![4, 2]);
        assert_eq!(cfg.label(3).fields, vec![4, 1]);
        assert_eq!(cfg.label(3).word.as_ref().unwrap().to_string(), "1");
        assert!(cfg.label(0).word.is_none());
    }

    #[test]
    fn word_bound_is_floor_log2() {
        assert_eq!(word_bound(1), 0);
        assert_eq!(word_bound(2), 1);
        assert_eq!(word_bound(7), 2);
        assert_eq!(word_bound(8), 3);
        assert_eq!(word_bound(16), 4);
        let err = build_path_l(&BitString::parse("111").unwrap(), 4).unwrap_err();
        assert!(matches!(err, LanguageError::WordTooLong { len: 3, max: 2 }));
    }

    #[test]
    fn membership_examples() {
        let oracle = palindrome_oracle();
        let member = build_path_l(&BitString::parse("0110").unwrap(), 16).unwrap();
        assert!(path_l_membership(&member, &oracle));
        let non = build_path_l(&BitString::parse("01").unwrap(), 16).unwrap();
        assert!(!path_l_membership(&non, &oracle));
        // Orientation independence: reverse the labels.
        let reversed = {
            let labels: Vec<Label> = (0..16).rev().map(|j| member.label(j).clone()).collect();
            Configuration::path(labels).unwrap()
        };
        assert!(path_l_membership(&reversed, &oracle));
    }

    #[test]
    fn palindromes() {
        let oracle = palindrome_oracle();
        for (w, expect) in [("", true), ("0", true), ("0110", true), ("01", false), ("100", false)] {
            assert_eq!(oracle(&BitString::parse(w).unwrap()), expect, "{w:?}");
        }
    }
}
