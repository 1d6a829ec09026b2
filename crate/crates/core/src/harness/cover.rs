//! View covers: map every node of a target configuration onto a node of a
//! source configuration with a bit-identical certificate-free view, then
//! replay certificate assignments across the mapping to confirm that
//! verdicts transfer.

use serde::Serialize;

use crate::bits::BitString;
use crate::engine::{run_with_certs, CertSource, PolyBound, Verifier};
use crate::graph::CertificateAssignment;
use crate::semantics::{
    enumerate_certificates, pi1_classify, ClassSpec, ExploreParams, QuantOutcome,
};
use crate::view::{extract_view, views_identical, View};

use super::{HarnessError, Identified, Triple};

/// One covered node: target node `target_node` looks exactly like node
/// `source_node` of `sources[source]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CoverEntry {
    pub target_node: usize,
    pub source: usize,
    pub source_node: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoverMapping {
    pub radius: usize,
    pub entries: Vec<CoverEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub enum CoverOutcome {
    Full(CoverMapping),
    Failed { first_uncovered: usize },
}

impl CoverOutcome {
    pub fn mapping(&self) -> Option<&CoverMapping> {
        match self {
            CoverOutcome::Full(m) => Some(m),
            CoverOutcome::Failed { .. } => None,
        }
    }
}

/// Finds, for every target node, the first source node (in source order,
/// then node order) with an identical certificate-free radius-`r` view.
/// With `budget` given, a source only qualifies if the per-node certificate
/// budget evaluated at its size dominates the target's: transferred
/// assignments must remain admissible at the source.
pub fn view_cover(
    target: &Identified,
    sources: &[&Identified],
    r: usize,
    budget: Option<&PolyBound>,
) -> Result<CoverOutcome, HarnessError> {
    let target_budget = budget.map(|q| q.eval(target.node_count() as u64));
    let mut source_views: Vec<Vec<View>> = Vec::with_capacity(sources.len());
    let mut source_ok: Vec<bool> = Vec::with_capacity(sources.len());
    for s in sources {
        let views = (0..s.node_count())
            .map(|u| extract_view(&s.cfg, &s.ids, None, u, r))
            .collect::<Result<Vec<_>, _>>()?;
        source_views.push(views);
        let ok = match (&target_budget, budget) {
            (Some(tb), Some(q)) => q.eval(s.node_count() as u64) >= *tb,
            _ => true,
        };
        source_ok.push(ok);
    }
    let mut entries = Vec::with_capacity(target.node_count());
    for v in 0..target.node_count() {
        let tv = extract_view(&target.cfg, &target.ids, None, v, r)?;
        let hit = source_views.iter().enumerate().find_map(|(si, views)| {
            if !source_ok[si] {
                return None;
            }
            views
                .iter()
                .position(|sv| views_identical(&tv, sv))
                .map(|u| CoverEntry {
                    target_node: v,
                    source: si,
                    source_node: u,
                })
        });
        match hit {
            Some(entry) => entries.push(entry),
            None => return Ok(CoverOutcome::Failed { first_uncovered: v }),
        }
    }
    Ok(CoverOutcome::Full(CoverMapping { radius: r, entries }))
}

#[derive(Debug, Clone, Serialize)]
pub struct ReplayReport {
    pub assignments_replayed: u64,
    pub verdicts_compared: u64,
    pub mismatches: u64,
}

/// Replays certificate assignments across a cover: for every enumerated
/// assignment to the target (within `bits_per_node`, capped at
/// `max_assignments` in enumeration order), each target node's verdict must
/// equal its covered source node's verdict under the transferred
/// assignment. The transfer copies each ball certificate to the
/// corresponding position of the identical source view.
pub fn replay_cover(
    verifier: &Verifier,
    target: &Identified,
    sources: &[&Identified],
    mapping: &CoverMapping,
    bits_per_node: u64,
    max_assignments: u64,
) -> Result<ReplayReport, HarnessError> {
    let r = mapping.radius;
    let n_t = target.node_count() as u64;
    // Pre-extract the paired views.
    let mut pairs = Vec::with_capacity(mapping.entries.len());
    for e in &mapping.entries {
        let tv = extract_view(&target.cfg, &target.ids, None, e.target_node, r)?;
        let s = sources[e.source];
        let sv = extract_view(&s.cfg, &s.ids, None, e.source_node, r)?;
        debug_assert!(views_identical(&tv, &sv));
        pairs.push((tv, sv, e.source));
    }
    let bounds = vec![bits_per_node; target.node_count()];
    let mut report = ReplayReport {
        assignments_replayed: 0,
        verdicts_compared: 0,
        mismatches: 0,
    };
    for certs in enumerate_certificates(&bounds).take(max_assignments as usize) {
        report.assignments_replayed += 1;
        for (tv, sv, source) in &pairs {
            let n_s = sources[*source].node_count() as u64;
            // Transfer the ball certificates positionally.
            let mut by_source = vec![BitString::new(); sources[*source].node_count()];
            for p in 0..tv.node_count() {
                by_source[sv.source_node(p)] = certs.cert(tv.source_node(p)).clone();
            }
            let target_slice: Vec<BitString> = certs.certs().to_vec();
            let (vt, _) =
                run_with_certs(verifier, tv, CertSource::Slice(&target_slice), Some(n_t))?;
            let (vs, _) = run_with_certs(verifier, sv, CertSource::Slice(&by_source), Some(n_s))?;
            report.verdicts_compared += 1;
            if vt != vs {
                report.mismatches += 1;
            }
        }
    }
    Ok(report)
}

/// Classification of one graph of a triple against the membership oracle.
#[derive(Debug, Clone, Serialize)]
pub struct GraphClassification {
    pub graph: &'static str,
    pub member: bool,
    pub outcome: String,
    pub agrees: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FalsifyReport {
    pub cover: CoverMapping,
    pub classifications: Vec<GraphClassification>,
    /// Index (0, 1, 2) of the first graph the verifier is wrong on, if any.
    pub first_incorrect: Option<usize>,
    pub replay: ReplayReport,
    /// True when both sources classify as uniform accept within the
    /// explored space: the cover then forces acceptance of the non-member
    /// target, so no correct classification of it is possible.
    pub forced_acceptance: bool,
}

impl FalsifyReport {
    /// The verifier is demonstrably incorrect on the triple.
    pub fn refuted(&self) -> bool {
        self.first_incorrect.is_some() || self.forced_acceptance
    }
}

/// Checks a universal-certificate verifier against a triple: classifies all
/// three graphs under the spec's semantics, locates a disagreement with
/// membership, and replays the cover to exhibit the forcing argument.
pub fn falsify(
    verifier: &Verifier,
    spec: &ClassSpec,
    triple: &Triple,
    membership: &dyn Fn(&crate::graph::Configuration) -> bool,
    params: &ExploreParams,
) -> Result<FalsifyReport, HarnessError> {
    let budget = spec.cert_bound.as_ref().map(|(q, _)| q);
    let cover = match view_cover(
        &triple.g3,
        &[&triple.g1, &triple.g2],
        verifier.radius(),
        budget,
    )? {
        CoverOutcome::Full(m) => m,
        CoverOutcome::Failed { first_uncovered } => {
            return Err(HarnessError::CoverFailed {
                node: first_uncovered,
            })
        }
    };
    let names = ["g1", "g2", "g3"];
    let mut classifications = Vec::with_capacity(3);
    let mut first_incorrect = None;
    let mut sources_accept = true;
    for (i, g) in triple.graphs().iter().enumerate() {
        let member = membership(&g.cfg);
        let res = pi1_classify(verifier, &g.cfg, spec, params)?;
        let agrees = match &res.outcome {
            QuantOutcome::UniformAccept => member,
            QuantOutcome::UniformReject { .. } => !member,
            QuantOutcome::Inconsistent { .. } => false,
        };
        if i < 2 && !res.outcome.is_uniform_accept() {
            sources_accept = false;
        }
        if !agrees && first_incorrect.is_none() {
            first_incorrect = Some(i);
        }
        classifications.push(GraphClassification {
            graph: names[i],
            member,
            outcome: res.outcome.kind().to_string(),
            agrees,
        });
    }
    let g3_member = membership(&triple.g3.cfg);
    let replay = replay_cover(
        verifier,
        &triple.g3,
        &[&triple.g1, &triple.g2],
        &cover,
        2,
        512,
    )?;
    Ok(FalsifyReport {
        cover,
        classifications,
        first_incorrect,
        replay,
        forced_acceptance: sources_accept && !g3_member,
    })
}

/// Transfers a certificate assignment from the target to one source along
/// the cover (helper for tests and reports): ball values copy positionally,
/// everything else stays empty.
pub fn transfer_assignment(
    target_view: &View,
    source_view: &View,
    source_size: usize,
    certs: &CertificateAssignment,
) -> Vec<BitString> {
    let mut by_source = vec![BitString::new(); source_size];
    for p in 0..target_view.node_count() {
        by_source[source_view.source_node(p)] = certs.cert(target_view.source_node(p)).clone();
    }
    by_source
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::agtg_triple;
    use crate::languages::{agtg_membership, agtg_pi1_verifier};

    #[test]
    fn agtg_cover_is_the_expected_split() {
        let t = agtg_triple(1).unwrap();
        let outcome = view_cover(&t.g3, &[&t.g1, &t.g2], 1, None).unwrap();
        let mapping = outcome.mapping().expect("cover should be full");
        let as_tuples: Vec<(usize, usize, usize)> = mapping
            .entries
            .iter()
            .map(|e| (e.target_node, e.source, e.source_node))
            .collect();
        // Left two nodes look like g1, right two like g2.
        assert_eq!(as_tuples, vec![(0, 0, 0), (1, 0, 1), (2, 1, 2), (3, 1, 3)]);
    }

    #[test]
    fn identity_cover() {
        let t = agtg_triple(1).unwrap();
        let outcome = view_cover(&t.g1, &[&t.g1], 1, None).unwrap();
        let mapping = outcome.mapping().unwrap();
        for (v, e) in mapping.entries.iter().enumerate() {
            assert_eq!((e.target_node, e.source, e.source_node), (v, 0, v));
        }
    }

    #[test]
    fn budget_dominance_blocks_smaller_sources() {
        // Under a growing per-size bound, the n-node source cannot absorb
        // the (n+1)-node target's certificates.
        let t = agtg_triple(1).unwrap();
        let outcome = view_cover(&t.g3, &[&t.g1], 1, Some(&PolyBound::x())).unwrap();
        assert!(matches!(outcome, CoverOutcome::Failed { first_uncovered: 0 }));
        // Without the budget the same single-source cover fails only at the
        // far end (nodes 2, 3 look like g2, not g1).
        let outcome = view_cover(&t.g3, &[&t.g1], 1, None).unwrap();
        assert!(matches!(outcome, CoverOutcome::Failed { first_uncovered: 2 }));
    }

    #[test]
    fn replay_transfers_verdicts_exactly() {
        let t = agtg_triple(1).unwrap();
        let mapping = view_cover(&t.g3, &[&t.g1, &t.g2], 1, None)
            .unwrap()
            .mapping()
            .unwrap()
            .clone();
        let report = replay_cover(
            &agtg_pi1_verifier(),
            &t.g3,
            &[&t.g1, &t.g2],
            &mapping,
            2,
            10_000,
        )
        .unwrap();
        assert_eq!(report.mismatches, 0);
        // 2 bits per node over 4 nodes: full space replayed.
        assert_eq!(report.assignments_replayed, 7u64.pow(4));
    }

    #[test]
    fn falsify_constant_accept_verifier() {
        let t = agtg_triple(1).unwrap();
        let yes = Verifier::new("yes", 1, |_| Ok(crate::engine::Verdict::Accept));
        let spec = ClassSpec::pi1_plocal(PolyBound::x());
        let report = falsify(&yes, &spec, &t, &agtg_membership, &ExploreParams::default())
            .unwrap();
        // Wrong on g3: accepts a non-member under every certificate.
        assert_eq!(report.first_incorrect, Some(2));
        assert!(report.forced_acceptance);
        assert!(report.refuted());
        assert_eq!(report.replay.mismatches, 0);
    }
}
