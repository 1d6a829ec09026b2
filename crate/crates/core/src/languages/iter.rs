//! Iterated-configuration paths: a pivot node labeled with a machine and
//! two inputs, and every other node labeled with its distance from the
//! pivot and the machine's configuration after that many steps (one input
//! per side). Both endpoints must hold halting configurations; the strict
//! variant additionally wants an accepting endpoint.

use std::sync::Arc;

use crate::bits::BitString;
use crate::engine::{MeteredView, PolyBound, Verdict, Verifier};
use crate::graph::{Configuration, Label};
use crate::semantics::{BoundScope, ClassSpec};
use crate::turing::{tm_advance, tm_config_after, tm_halt_time, TmConfig, TmSpec};

use super::{Language, LanguageError, Shape};

fn encode_input(input: &[u8]) -> BitString {
    let mut out = BitString::new();
    out.push_value(input.len() as u64, 16);
    for &s in input {
        out.push_value(s as u64, 8);
    }
    out
}

fn decode_input(bits: &BitString, pos: usize) -> Option<(Vec<u8>, usize)> {
    let len = bits.read_value(pos, 16)? as usize;
    let mut cur = pos + 16;
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(bits.read_value(cur, 8)? as u8);
        cur += 8;
    }
    Some((out, cur))
}

/// Pivot label: distance field 0, word = machine || input a || input b.
fn pivot_label(tm: &TmSpec, a: &[u8], b: &[u8]) -> Label {
    let mut word = tm.to_bits();
    word.extend(&encode_input(a));
    word.extend(&encode_input(b));
    Label::with_word(&[0], word)
}

/// Chain label: distance field d, word = machine || configuration.
fn chain_label(tm: &TmSpec, d: u64, config: &TmConfig) -> Label {
    let mut word = tm.to_bits();
    word.extend(&config.to_bits());
    Label::with_word(&[d], word)
}

#[derive(Debug)]
struct PivotLabel {
    tm: TmSpec,
    a: Vec<u8>,
    b: Vec<u8>,
}

#[derive(Debug)]
struct ChainLabel {
    d: u64,
    tm: TmSpec,
    config: TmConfig,
}

fn parse_pivot(label: &Label) -> Option<PivotLabel> {
    if label.fields != vec![0] {
        return None;
    }
    let word = label.word.as_ref()?;
    let (tm, pos) = TmSpec::from_bits(word, 0).ok()?;
    let (a, pos) = decode_input(word, pos)?;
    let (b, pos) = decode_input(word, pos)?;
    if pos != word.len() {
        return None; // trailing garbage
    }
    if a.iter().chain(&b).any(|&s| s >= tm.alphabet_size()) {
        return None;
    }
    Some(PivotLabel { tm, a, b })
}

fn parse_chain(label: &Label) -> Option<ChainLabel> {
    let [d] = label.fields[..] else {
        return None;
    };
    if d == 0 {
        return None;
    }
    let word = label.word.as_ref()?;
    let (tm, pos) = TmSpec::from_bits(word, 0).ok()?;
    let (config, pos) = TmConfig::from_bits(word, pos).ok()?;
    if pos != word.len() {
        return None;
    }
    Some(ChainLabel { d, tm, config })
}

/// Builds the canonical instance: arms of exactly the halting lengths,
/// input-a arm first, pivot in the middle. The machine must halt on both
/// inputs within `step_cap` and must take at least one step on each.
pub fn iter_build(
    tm: &TmSpec,
    a: &[u8],
    b: &[u8],
    step_cap: u64,
) -> Result<Configuration, LanguageError> {
    let t_a = tm_halt_time(tm, a, step_cap)?.ok_or(LanguageError::NonHaltingInput { which: "a" })?;
    let t_b = tm_halt_time(tm, b, step_cap)?.ok_or(LanguageError::NonHaltingInput { which: "b" })?;
    if t_a == 0 {
        return Err(LanguageError::InstantHalt { which: "a" });
    }
    if t_b == 0 {
        return Err(LanguageError::InstantHalt { which: "b" });
    }
    let n = (t_a + t_b + 1) as usize;
    let mut labels = Vec::with_capacity(n);
    for j in 0..n as u64 {
        let pivot_at = t_a;
        let label = if j < pivot_at {
            let d = pivot_at - j;
            chain_label(tm, d, &tm_config_after(tm, a, d)?)
        } else if j == pivot_at {
            pivot_label(tm, a, b)
        } else {
            let d = j - pivot_at;
            chain_label(tm, d, &tm_config_after(tm, b, d)?)
        };
        labels.push(label);
    }
    Ok(Configuration::path(labels)?)
}

/// Membership check. Arms may be longer than the halting times (frozen
/// configurations); `strict` additionally requires an accepting endpoint.
/// When `expected_tm` is given, the encoded machine must equal it.
pub fn iter_membership(cfg: &Configuration, expected_tm: Option<&TmSpec>, strict: bool) -> bool {
    let Some(order) = cfg.path_order() else {
        return false;
    };
    let n = cfg.node_count();
    // Locate the unique pivot.
    let pivots: Vec<usize> = (0..n)
        .filter(|&v| cfg.label(v).field0() == Some(0))
        .collect();
    let [pivot_node] = pivots[..] else {
        return false;
    };
    let Some(pivot) = parse_pivot(cfg.label(pivot_node)) else {
        return false;
    };
    if let Some(exp) = expected_tm {
        if pivot.tm != *exp {
            return false;
        }
    }
    let Some(pos) = order.iter().position(|&v| v == pivot_node) else {
        return false;
    };
    if pos == 0 || pos == n - 1 {
        return false; // both arms must be nonempty
    }
    let left: Vec<usize> = order[..pos].iter().rev().copied().collect();
    let right: Vec<usize> = order[pos + 1..].to_vec();
    let ok = |first: &[usize], second: &[usize]| {
        arm_matches(cfg, &pivot.tm, &pivot.a, first)
            && arm_matches(cfg, &pivot.tm, &pivot.b, second)
    };
    // Sides are arbitrary but must be consistent: try both orientations.
    if !(ok(&left, &right) || ok(&right, &left)) {
        return false;
    }
    // Endpoint configurations are halting by the arm check (the arm ends at
    // its halting configuration only if long enough); verify explicitly and
    // apply the strict rule.
    let end_configs: Vec<TmConfig> = [left.last(), right.last()]
        .iter()
        .filter_map(|v| v.and_then(|&v| parse_chain(cfg.label(v))).map(|c| c.config))
        .collect();
    if end_configs.len() != 2 || !end_configs.iter().all(|c| c.is_halting(&pivot.tm)) {
        return false;
    }
    !strict || end_configs.iter().any(|c| c.is_accepting(&pivot.tm))
}

/// Does the arm (nodes at distance 1.. from the pivot, in order) carry the
/// run of the machine on `input`?
fn arm_matches(cfg: &Configuration, tm: &TmSpec, input: &[u8], arm: &[usize]) -> bool {
    let mut expected = match tm_config_after(tm, input, 0) {
        Ok(c) => c,
        Err(_) => return false,
    };
    for (idx, &node) in arm.iter().enumerate() {
        expected = tm_advance(tm, &expected);
        let Some(chain) = parse_chain(cfg.label(node)) else {
            return false;
        };
        if chain.tm != *tm || chain.d != idx as u64 + 1 || chain.config != expected {
            return false;
        }
    }
    true
}

/// Shared per-node checks of both verifiers. Returns the verdict of the
/// structural rules.
fn structural_verdict(view: &MeteredView<'_>) -> Verdict {
    let Some(d) = view.label_field(0, 0) else {
        return Verdict::Reject;
    };
    let neighbors = view.neighbors(0);
    view.ops(2);
    if d == 0 {
        // Pivot: degree 2, both neighbors at distance 1 carrying the
        // one-step configurations of the two inputs, same machine.
        let Some(pivot) = view.label_word(0).and_then(|w| {
            parse_pivot(&Label {
                fields: vec![0],
                word: Some(w.clone()),
            })
        }) else {
            return Verdict::Reject;
        };
        if neighbors.len() != 2 {
            return Verdict::Reject;
        }
        let mut nb_configs = Vec::with_capacity(2);
        for &j in &neighbors {
            let Some(chain) = read_chain(view, j) else {
                return Verdict::Reject;
            };
            view.ops(2);
            if chain.d != 1 || chain.tm != pivot.tm {
                return Verdict::Reject;
            }
            nb_configs.push(chain.config);
        }
        let Ok(step_a) = tm_config_after(&pivot.tm, &pivot.a, 1) else {
            return Verdict::Reject;
        };
        let Ok(step_b) = tm_config_after(&pivot.tm, &pivot.b, 1) else {
            return Verdict::Reject;
        };
        view.ops(2 + pivot.a.len() as u64 + pivot.b.len() as u64);
        let direct = nb_configs[0] == step_a && nb_configs[1] == step_b;
        let swapped = nb_configs[0] == step_b && nb_configs[1] == step_a;
        Verdict::of(direct || swapped)
    } else {
        let Some(own) = read_chain(view, 0) else {
            return Verdict::Reject;
        };
        // Neighbor distances: an interior node sees d-1 and d+1, an
        // endpoint sees d-1 and must be halting.
        let mut nb = Vec::with_capacity(2);
        for &j in &neighbors {
            let Some(d_nb) = view.label_field(j, 0) else {
                return Verdict::Reject;
            };
            nb.push((j, d_nb));
        }
        view.ops(2);
        let shape_ok = match nb.as_slice() {
            [(_, a)] => *a + 1 == own.d && own.config.is_halting(&own.tm),
            [(_, a), (_, b)] => {
                let lo = (*a).min(*b);
                let hi = (*a).max(*b);
                lo + 1 == own.d && own.d + 1 == hi
            }
            _ => false,
        };
        if !shape_ok {
            return Verdict::Reject;
        }
        // Machine consistency and the configuration chain toward the pivot.
        for &(j, d_nb) in &nb {
            if d_nb + 1 != own.d {
                continue;
            }
            if d_nb == 0 {
                // Pivot side: the pivot itself checks the pairing; here only
                // the machine must match.
                let Some(pivot) = view.label_word(j).and_then(|w| {
                    parse_pivot(&Label {
                        fields: vec![0],
                        word: Some(w.clone()),
                    })
                }) else {
                    return Verdict::Reject;
                };
                view.op();
                if pivot.tm != own.tm {
                    return Verdict::Reject;
                }
            } else {
                let Some(chain) = read_chain(view, j) else {
                    return Verdict::Reject;
                };
                view.ops(2);
                if chain.tm != own.tm || tm_advance(&own.tm, &chain.config) != own.config {
                    return Verdict::Reject;
                }
            }
        }
        // The d+1 side, when present, is checked by that node's own d-1
        // rule; machines must still match.
        for &(j, d_nb) in &nb {
            if d_nb == own.d + 1 {
                let Some(chain) = read_chain(view, j) else {
                    return Verdict::Reject;
                };
                view.op();
                if chain.tm != own.tm {
                    return Verdict::Reject;
                }
            }
        }
        Verdict::Accept
    }
}

fn read_chain(view: &MeteredView<'_>, node: usize) -> Option<ChainLabel> {
    let d = view.label_field(node, 0)?;
    let word = view.label_word(node)?;
    parse_chain(&Label {
        fields: vec![d],
        word: Some(word.clone()),
    })
}

/// Radius-1 verifier for the non-strict variant: structural checks only,
/// certificates ignored.
pub fn iter_minus_verifier() -> Verifier {
    Verifier::new("iter-minus", 1, |view| Ok(structural_verdict(view)))
}

/// Radius-1 verifier for the strict variant: structural checks everywhere;
/// the pivot additionally reads its certificate length k and rejects if the
/// machine rejects both inputs within k steps.
pub fn iter_pi1_verifier() -> Verifier {
    Verifier::new("iter-pi1", 1, |view| {
        let structural = structural_verdict(view);
        let d = view.label_field(0, 0);
        if d != Some(0) || structural == Verdict::Reject {
            return Ok(structural);
        }
        let pivot = view
            .label_word(0)
            .and_then(|w| {
                parse_pivot(&Label {
                    fields: vec![0],
                    word: Some(w.clone()),
                })
            })
            .expect("structural acceptance implies a parseable pivot");
        let k = view.cert_len(0);
        view.ops(2 * k + 2);
        let Ok(conf_a) = tm_config_after(&pivot.tm, &pivot.a, k) else {
            return Ok(Verdict::Reject);
        };
        let Ok(conf_b) = tm_config_after(&pivot.tm, &pivot.b, k) else {
            return Ok(Verdict::Reject);
        };
        let both_rejecting =
            conf_a.is_rejecting(&pivot.tm) && conf_b.is_rejecting(&pivot.tm);
        Ok(Verdict::of(!both_rejecting))
    })
}

pub fn iter_language(strict: bool) -> Language {
    let name = if strict { "iter" } else { "iter-minus" };
    let lang = Language::new(
        name,
        Shape::Path,
        Arc::new(move |cfg| iter_membership(cfg, None, strict)),
    );
    if strict {
        lang.with_verifier(
            "iter-pi1",
            iter_pi1_verifier(),
            ClassSpec::pi1_plocal(PolyBound::x())
                .with_time_bound(PolyBound::new(&[0, 0, 64]), BoundScope::GlobalN),
        )
    } else {
        lang.with_verifier(
            "iter-minus",
            iter_minus_verifier(),
            ClassSpec::pi1_plocal(PolyBound::zero())
                .with_time_bound(PolyBound::new(&[0, 0, 64]), BoundScope::GlobalN),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::run_all;
    use crate::graph::{assign_ids, IdAssignment, IdMode};
    use crate::semantics::{pi1_classify, ExploreParams, QuantOutcome};
    use crate::turing::{binary_input, parity_machine};

    fn consecutive(cfg: &Configuration) -> IdAssignment {
        let n = cfg.node_count() as u64;
        assign_ids(cfg, &(1..=n).collect::<Vec<_>>(), IdMode::GlobalUnique, n).unwrap()
    }

    #[test]
    fn build_and_verify_parity_instance() {
        let tm = parity_machine();
        let a = binary_input("11").unwrap();
        let b = binary_input("1").unwrap();
        // Halting times 3 and 2: 6 nodes, pivot at index 3.
        let cfg = iter_build(&tm, &a, &b, 100).unwrap();
        assert_eq!(cfg.node_count(), 6);
        assert_eq!(cfg.label(3).field0(), Some(0));
        assert!(iter_membership(&cfg, Some(&tm), false));
        // "11" has even parity: accepting endpoint exists.
        assert!(iter_membership(&cfg, Some(&tm), true));
        let report = run_all(&iter_minus_verifier(), &cfg, &consecutive(&cfg), None).unwrap();
        assert!(report.accepted(), "rejecting nodes: {:?}", report.rejecting_nodes());
    }

    #[test]
    fn both_rejecting_is_minus_only() {
        let tm = parity_machine();
        let a = binary_input("1").unwrap();
        let b = binary_input("111").unwrap();
        let cfg = iter_build(&tm, &a, &b, 100).unwrap();
        assert!(iter_membership(&cfg, None, false));
        assert!(!iter_membership(&cfg, None, true));
    }

    #[test]
    fn mutated_chain_is_rejected() {
        let tm = parity_machine();
        let a = binary_input("11").unwrap();
        let b = binary_input("1").unwrap();
        let cfg = iter_build(&tm, &a, &b, 100).unwrap();
        // Bump an interior node's distance field.
        let mut label = cfg.label(1).clone();
        label.fields[0] += 1;
        let mutated = cfg.with_label(1, label).unwrap();
        assert!(!iter_membership(&mutated, None, false));
        let report = run_all(&iter_minus_verifier(), &mutated, &consecutive(&mutated), None).unwrap();
        assert!(!report.accepted());
    }

    #[test]
    fn wrong_machine_cross_check() {
        let tm = parity_machine();
        let other = crate::turing::contains_zero_machine();
        let a = binary_input("11").unwrap();
        let b = binary_input("1").unwrap();
        let cfg = iter_build(&tm, &a, &b, 100).unwrap();
        assert!(iter_membership(&cfg, Some(&tm), false));
        assert!(!iter_membership(&cfg, Some(&other), false));
    }

    #[test]
    fn nonhalting_and_instant_builds_fail() {
        let tm = parity_machine();
        // Cap 1 is below the halting time of "11" (3 steps).
        let err = iter_build(&tm, &binary_input("11").unwrap(), &[], 1).unwrap_err();
        assert!(matches!(err, LanguageError::NonHaltingInput { which: "a" }));
    }

    #[test]
    fn pi1_uniform_reject_on_both_rejecting() {
        let tm = parity_machine();
        let a = binary_input("1").unwrap(); // rejects after 2 steps
        let b = binary_input("111").unwrap(); // rejects after 4 steps
        let cfg = iter_build(&tm, &a, &b, 100).unwrap();
        let n = cfg.node_count();
        assert_eq!(n, 7); // pivot at index 2
        let spec = ClassSpec::pi1_plocal(PolyBound::x());
        let res = pi1_classify(&iter_pi1_verifier(), &cfg, &spec, &ExploreParams::default())
            .unwrap();
        match res.outcome {
            QuantOutcome::UniformReject { witness } => {
                // The pivot rejects once its certificate length reaches the
                // later rejection time; the minimal witness is all zeros of
                // that length on the pivot, empty elsewhere.
                assert_eq!(witness.cert(2).to_string(), "0000");
                for v in [0, 1, 3, 4, 5, 6] {
                    assert!(witness.cert(v).is_empty());
                }
            }
            other => panic!("expected uniform reject, got {other:?}"),
        }
    }

    #[test]
    fn pi1_uniform_accept_on_one_accepting_arm() {
        let tm = parity_machine();
        let a = binary_input("11").unwrap(); // accepts after 3 steps
        let b = binary_input("1").unwrap(); // rejects after 2 steps
        let cfg = iter_build(&tm, &a, &b, 100).unwrap();
        let spec = ClassSpec::pi1_plocal(PolyBound::x());
        let res = pi1_classify(&iter_pi1_verifier(), &cfg, &spec, &ExploreParams::default())
            .unwrap();
        assert!(res.outcome.is_uniform_accept());
    }
}
