//! The two threshold path languages: all labels greater than the graph
//! size, and all labels less than the graph size.

use std::sync::Arc;

use crate::bits::BitString;
use crate::engine::{MeteredView, PolyBound, Verdict, Verifier};
use crate::graph::{CertificateAssignment, Configuration};
use crate::semantics::{BoundScope, ClassSpec};

use super::{Language, LanguageError, Shape};

/// Path whose every label exceeds the number of nodes.
pub fn agtg_membership(cfg: &Configuration) -> bool {
    let n = cfg.node_count() as u64;
    cfg.path_order().is_some()
        && cfg
            .labels()
            .iter()
            .all(|l| l.field0().is_some_and(|x| x > n))
}

/// Radius-0 rule: accept iff the own label exceeds the own certificate
/// length. Under certificate bound `Q(n) = n`, a label above n beats every
/// certificate, and a label at most n loses to some certificate length.
pub fn agtg_pi1_verifier() -> Verifier {
    Verifier::new("agtg-pi1", 0, |view| {
        let Some(x) = view.label_field(0, 0) else {
            return Ok(Verdict::Reject);
        };
        let c = view.cert_len(0);
        view.op();
        Ok(Verdict::of(x > c))
    })
}

/// Counter-pair certificate `1^i 0 1^m`: position `i` from one endpoint and
/// the claimed path length `m`.
fn encode_counter_pair(i: usize, m: usize) -> BitString {
    let mut out = BitString::ones(i);
    out.push(false);
    out.extend(&BitString::ones(m));
    out
}

/// Parses `1^i 0 1^m` with `i, m >= 1` read through the metered view.
fn read_counter_pair(view: &MeteredView<'_>, node: usize) -> Option<(u64, u64)> {
    let len = view.cert_len(node);
    let mut zero_at = None;
    for j in 0..len {
        view.op();
        if !view.cert_bit(node, j) {
            zero_at = Some(j);
            break;
        }
    }
    let i = zero_at?;
    if i == 0 {
        return None; // no position prefix
    }
    // Everything after the separator must be ones.
    for j in i + 1..len {
        view.op();
        if !view.cert_bit(node, j) {
            return None;
        }
    }
    let m = len - i - 1;
    if m == 0 {
        return None;
    }
    Some((i, m))
}

/// Prover for the counter-pair scheme: node at position `i` (1-based from
/// the endpoint with the smaller node index) gets `1^i 0 1^n`.
pub fn agtg_npld_prover(cfg: &Configuration) -> Result<CertificateAssignment, LanguageError> {
    let order = cfg.path_order().ok_or(LanguageError::NotAPath)?;
    if !agtg_membership(cfg) {
        return Err(LanguageError::NotAMember(
            "some label is not above the path length".into(),
        ));
    }
    let n = cfg.node_count();
    let mut certs = vec![BitString::new(); n];
    for (pos, &node) in order.iter().enumerate() {
        certs[node] = encode_counter_pair(pos + 1, n);
    }
    Ok(CertificateAssignment::new(certs).expect("counter pairs are short"))
}

/// Radius-1 verifier for the counter-pair scheme: certificates must be
/// consistent and consecutive along the path, endpoints must anchor the
/// counter at 1 or at the claimed length, and the own label must exceed the
/// claimed length.
pub fn agtg_npld_verifier() -> Verifier {
    Verifier::new("agtg-npld", 1, |view| {
        let Some(x) = view.label_field(0, 0) else {
            return Ok(Verdict::Reject);
        };
        let Some((i, m)) = read_counter_pair(view, 0) else {
            return Ok(Verdict::Reject);
        };
        let neighbors = view.neighbors(0);
        view.op();
        if neighbors.len() > 2 {
            return Ok(Verdict::Reject);
        }
        let mut neighbor_counters = Vec::with_capacity(2);
        for &j in &neighbors {
            let Some((i_nb, m_nb)) = read_counter_pair(view, j) else {
                return Ok(Verdict::Reject);
            };
            view.op();
            if m_nb != m {
                return Ok(Verdict::Reject);
            }
            neighbor_counters.push(i_nb);
        }
        let ok = match neighbor_counters.as_slice() {
            [] => i == 1 && m == 1,
            [nb] => (i == 1 && *nb == 2) || (i == m && *nb + 1 == m),
            [a, b] => {
                let lo = (*a).min(*b);
                let hi = (*a).max(*b);
                i >= 2 && lo + 1 == i && i + 1 == hi
            }
            _ => false,
        };
        view.ops(4);
        if !ok {
            return Ok(Verdict::Reject);
        }
        view.op();
        Ok(Verdict::of(x > m))
    })
}

pub fn agtg_language() -> Language {
    Language::new("agtg", Shape::Path, Arc::new(agtg_membership))
        .with_verifier(
            "agtg-pi1",
            agtg_pi1_verifier(),
            ClassSpec::pi1_plocal(PolyBound::x())
                .with_time_bound(PolyBound::new(&[8, 8]), BoundScope::GlobalN),
        )
        .with_verifier(
            "agtg-npld",
            agtg_npld_verifier(),
            ClassSpec::sigma1_plocal(PolyBound::new(&[2, 2]))
                .with_time_bound(PolyBound::new(&[64, 64]), BoundScope::GlobalN),
        )
        .with_prover(Arc::new(agtg_npld_prover))
}

/// Path whose every label is below the number of nodes.
pub fn altg_membership(cfg: &Configuration) -> bool {
    let n = cfg.node_count() as u64;
    cfg.path_order().is_some()
        && cfg
            .labels()
            .iter()
            .all(|l| l.field0().is_some_and(|x| x < n))
}

/// Radius-0 size-aware rule: accept iff the own label is below n.
pub fn altg_verifier_with_n() -> Verifier {
    Verifier::new_n_aware("altg-knows-n", 0, |view| {
        let Some(x) = view.label_field(0, 0) else {
            return Ok(Verdict::Reject);
        };
        let Some(n) = view.graph_size() else {
            return Ok(Verdict::Reject);
        };
        view.op();
        Ok(Verdict::of(x < n))
    })
}

pub fn altg_language() -> Language {
    Language::new("altg", Shape::Path, Arc::new(altg_membership)).with_verifier(
        "altg-knows-n",
        altg_verifier_with_n(),
        ClassSpec::pi1_plocal_knows_n(PolyBound::constant(1))
            .with_time_bound(PolyBound::new(&[8, 8]), BoundScope::GlobalN),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{run, run_all};
    use crate::graph::{assign_ids, IdMode};
    use crate::semantics::{pi1_classify, ExploreParams, QuantOutcome};
    use crate::view::extract_view;

    fn consecutive(cfg: &Configuration) -> crate::graph::IdAssignment {
        let n = cfg.node_count() as u64;
        let ids: Vec<u64> = (1..=n).collect();
        assign_ids(cfg, &ids, IdMode::GlobalUnique, n).unwrap()
    }

    #[test]
    fn agtg_membership_examples() {
        assert!(agtg_membership(&Configuration::labeled_path(&[4, 5, 5]).unwrap()));
        // Boundary: 3 is not greater than 3.
        assert!(!agtg_membership(&Configuration::labeled_path(&[3, 5, 5]).unwrap()));
        // Non-path shape.
        let tri = Configuration::build(
            3,
            &[(0, 1), (1, 2), (0, 2)],
            vec![
                crate::graph::Label::of(&[9]),
                crate::graph::Label::of(&[9]),
                crate::graph::Label::of(&[9]),
            ],
        )
        .unwrap();
        assert!(!agtg_membership(&tri));
    }

    #[test]
    fn pi1_verifier_rule() {
        let v = agtg_pi1_verifier();
        let cfg = Configuration::labeled_path(&[5]).unwrap();
        let ids = consecutive(&cfg);
        let mut certs = CertificateAssignment::empty(1);
        certs.set(0, BitString::parse("111").unwrap()).unwrap();
        let view = extract_view(&cfg, &ids, Some(&certs), 0, 0).unwrap();
        assert!(run(&v, &view, None).unwrap().0.is_accept()); // 5 > 3

        let cfg2 = Configuration::labeled_path(&[4]).unwrap();
        let mut certs2 = CertificateAssignment::empty(1);
        certs2.set(0, BitString::parse("1111").unwrap()).unwrap();
        let view2 = extract_view(&cfg2, &consecutive(&cfg2), Some(&certs2), 0, 0).unwrap();
        // Strict inequality: 4 > 4 fails.
        assert!(!run(&v, &view2, None).unwrap().0.is_accept());
    }

    #[test]
    fn npld_prover_certificates_accepted_everywhere() {
        let cfg = Configuration::labeled_path(&[5, 5, 5]).unwrap();
        let certs = agtg_npld_prover(&cfg).unwrap();
        // 1^i 0 1^3 per position.
        assert_eq!(certs.cert(0).to_string(), "10111");
        assert_eq!(certs.cert(1).to_string(), "110111");
        assert_eq!(certs.cert(2).to_string(), "1110111");
        let report = run_all(&agtg_npld_verifier(), &cfg, &consecutive(&cfg), Some(&certs)).unwrap();
        assert!(report.accepted());
    }

    #[test]
    fn npld_single_node_path() {
        let cfg = Configuration::labeled_path(&[2]).unwrap();
        let certs = agtg_npld_prover(&cfg).unwrap();
        assert_eq!(certs.cert(0).to_string(), "101");
        let report = run_all(&agtg_npld_verifier(), &cfg, &consecutive(&cfg), Some(&certs)).unwrap();
        assert!(report.accepted());
    }

    #[test]
    fn npld_rejects_undersized_counter_claim() {
        // Certificates claiming a 2-node path on 3 nodes cannot be
        // consistent and consecutive.
        let cfg = Configuration::labeled_path(&[5, 5, 5]).unwrap();
        let mut certs = CertificateAssignment::empty(3);
        certs.set(0, encode_counter_pair(1, 2)).unwrap();
        certs.set(1, encode_counter_pair(2, 2)).unwrap();
        certs.set(2, encode_counter_pair(1, 2)).unwrap();
        let report = run_all(&agtg_npld_verifier(), &cfg, &consecutive(&cfg), Some(&certs)).unwrap();
        assert!(!report.accepted());
    }

    #[test]
    fn npld_prover_requires_membership() {
        let bad = Configuration::labeled_path(&[2, 5, 5]).unwrap();
        assert!(matches!(
            agtg_npld_prover(&bad),
            Err(LanguageError::NotAMember(_))
        ));
    }

    #[test]
    fn altg_examples() {
        assert!(altg_membership(&Configuration::labeled_path(&[2, 2, 2]).unwrap()));
        assert!(!altg_membership(&Configuration::labeled_path(&[3, 2, 2]).unwrap()));
        let v = altg_verifier_with_n();
        let cfg = Configuration::labeled_path(&[2, 2, 2]).unwrap();
        let view = extract_view(&cfg, &consecutive(&cfg), None, 0, 0).unwrap();
        assert!(run(&v, &view, Some(3)).unwrap().0.is_accept());
        assert!(!run(&v, &view, Some(2)).unwrap().0.is_accept());
    }

    #[test]
    fn altg_knows_n_classification() {
        let v = altg_verifier_with_n();
        let spec = ClassSpec::pi1_plocal_knows_n(PolyBound::constant(1));
        let member = Configuration::labeled_path(&[2, 2, 2]).unwrap();
        let res = pi1_classify(&v, &member, &spec, &ExploreParams::default()).unwrap();
        assert!(res.outcome.is_uniform_accept());
        let non = Configuration::labeled_path(&[3, 2, 2]).unwrap();
        let res = pi1_classify(&v, &non, &spec, &ExploreParams::default()).unwrap();
        assert!(matches!(res.outcome, QuantOutcome::UniformReject { .. }));
    }
}
