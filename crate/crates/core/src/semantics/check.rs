//! Cross-checking verifiers against membership oracles over families of
//! configurations.

use serde::Serialize;

use crate::engine::{run_all_with_views, within_budget, BudgetKind, Verifier};
use crate::graph::{assign_ids, id_universe, Configuration, IdMode};

use super::quantify::{pi1_classify, sigma1_decide, ExploreParams, Explored, QuantOutcome};
use super::spec::{BoundScope, ClassSpec, Family, IdScope};
use super::{SemanticsError, WorkBudget};

/// First disagreement found between a verifier and a membership oracle.
#[derive(Debug, Clone, Serialize)]
pub enum Violation {
    /// The aggregate verdict disagrees with membership (certificate-free
    /// families), possibly only under some ids.
    WrongVerdict {
        config_index: usize,
        member: bool,
        ids: Vec<u64>,
        accepted: bool,
        varies_across_ids: bool,
    },
    /// An existential decision disagrees with membership.
    WrongSigma1 {
        config_index: usize,
        member: bool,
        decided_yes: bool,
    },
    /// A universal classification disagrees with membership.
    WrongPi1 {
        config_index: usize,
        member: bool,
        outcome: String,
    },
    /// The verifier's verdict depends on the id assignment.
    InconsistentAcrossIds {
        config_index: usize,
        accepting_ids: Vec<u64>,
        rejecting_ids: Vec<u64>,
    },
}

/// Report of a certificate-free decision sweep.
#[derive(Debug, Clone, Serialize)]
pub struct DecidesReport {
    pub configs_checked: usize,
    pub id_assignments_checked: u64,
    pub violation: Option<Violation>,
}

impl DecidesReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks that a certificate-free verifier decides the language on every
/// listed configuration: the aggregate verdict must be constant across all
/// enumerated id assignments and equal membership. Stops at the first
/// violation.
pub fn decide_ld(
    verifier: &Verifier,
    membership: &dyn Fn(&Configuration) -> bool,
    cfgs: &[Configuration],
    params: &ExploreParams,
) -> Result<DecidesReport, SemanticsError> {
    if verifier.n_aware() {
        return Err(SemanticsError::BadSpec(
            "certificate-free decision does not provide n".into(),
        ));
    }
    let mut budget = WorkBudget::new(params.cap);
    let mut ids_checked = 0u64;
    for (config_index, cfg) in cfgs.iter().enumerate() {
        let member = membership(cfg);
        let n = cfg.node_count();
        let universe = (n + params.slack) as u64;
        let mut first_verdict: Option<bool> = None;
        for tuple in id_universe(n, params.slack) {
            budget.charge(n as u64, "decide sweep")?;
            ids_checked += 1;
            let ids = assign_ids(cfg, &tuple, IdMode::GlobalUnique, universe)?;
            let report = crate::engine::run_all(verifier, cfg, &ids, None)?;
            let accepted = report.accepted();
            if accepted != member {
                return Ok(DecidesReport {
                    configs_checked: config_index + 1,
                    id_assignments_checked: ids_checked,
                    violation: Some(Violation::WrongVerdict {
                        config_index,
                        member,
                        ids: tuple,
                        accepted,
                        varies_across_ids: first_verdict.is_some_and(|f| f != accepted),
                    }),
                });
            }
            first_verdict.get_or_insert(accepted);
        }
    }
    Ok(DecidesReport {
        configs_checked: cfgs.len(),
        id_assignments_checked: ids_checked,
        violation: None,
    })
}

/// Aggregated result of checking one verifier against one oracle over a
/// family of configurations under full class semantics.
#[derive(Debug, Clone, Serialize)]
pub struct ClassCheckReport {
    pub semantics: String,
    pub configs_checked: usize,
    pub violation: Option<Violation>,
    pub explored: Explored,
    /// Worst measured steps-to-budget ratio, when the spec carries a time
    /// bound: (ratio, config index, node).
    pub worst_budget: Option<(f64, usize, usize)>,
}

impl ClassCheckReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Drives the appropriate quantifier for the spec's family over every
/// configuration and cross-checks against the membership oracle. Reports
/// the first disagreement and, when the spec carries a time bound, the
/// worst advisory budget ratio (measured on the first id assignment).
pub fn check_class_membership(
    verifier: &Verifier,
    spec: &ClassSpec,
    membership: &dyn Fn(&Configuration) -> bool,
    cfgs: &[Configuration],
    params: &ExploreParams,
) -> Result<ClassCheckReport, SemanticsError> {
    spec.validate()?;
    let mut explored = Explored::default();
    let mut worst_budget: Option<(f64, usize, usize)> = None;
    let mut violation = None;
    let mut checked = 0;

    for (config_index, cfg) in cfgs.iter().enumerate() {
        let member = membership(cfg);
        checked += 1;
        match spec.family {
            Family::Ld | Family::Pld | Family::Lp | Family::LpStar => {
                let report = decide_ld(
                    verifier,
                    membership,
                    std::slice::from_ref(cfg),
                    params,
                )?;
                explored.id_assignments += report.id_assignments_checked;
                if let Some(mut v) = report.violation {
                    if let Violation::WrongVerdict { config_index: ci, .. } = &mut v {
                        *ci = config_index;
                    }
                    violation = Some(v);
                }
            }
            Family::Sigma1 => {
                let (res, ex) = sigma1_decide(verifier, cfg, spec, params)?;
                merge(&mut explored, ex);
                if res.is_yes() != member {
                    violation = Some(Violation::WrongSigma1 {
                        config_index,
                        member,
                        decided_yes: res.is_yes(),
                    });
                }
            }
            Family::Pi1 => {
                let res = pi1_classify(verifier, cfg, spec, params)?;
                merge(&mut explored, res.explored);
                let agrees = match &res.outcome {
                    QuantOutcome::UniformAccept => member,
                    QuantOutcome::UniformReject { .. } => !member,
                    QuantOutcome::Inconsistent { .. } => false,
                };
                if !agrees {
                    violation = match res.outcome {
                        QuantOutcome::Inconsistent {
                            accepting_ids,
                            rejecting_ids,
                            ..
                        } => Some(Violation::InconsistentAcrossIds {
                            config_index,
                            accepting_ids,
                            rejecting_ids,
                        }),
                        other => Some(Violation::WrongPi1 {
                            config_index,
                            member,
                            outcome: other.kind().to_string(),
                        }),
                    };
                }
            }
        }
        if let Some((time, scope)) = &spec.time_bound {
            let n = cfg.node_count();
            let universe = (n + params.slack) as u64;
            let tuple: Vec<u64> = (1..=n as u64).collect();
            let mode = match spec.id_scope {
                IdScope::GlobalUnique => IdMode::GlobalUnique,
                IdScope::TLocalUnique => IdMode::LocalUnique(verifier.radius()),
            };
            let ids = assign_ids(cfg, &tuple, mode, universe)?;
            let (report, views) = run_all_with_views(verifier, cfg, &ids, None)?;
            let kind = match scope {
                BoundScope::GlobalN => BudgetKind::Global(time),
                BoundScope::LocalView => BudgetKind::LocalView(time),
            };
            let budget = within_budget(&report, kind, n, &views);
            if let Some(node) = budget.worst_node {
                if worst_budget.is_none_or(|(r, _, _)| budget.worst_ratio > r) {
                    worst_budget = Some((budget.worst_ratio, config_index, node));
                }
            }
        }
        if violation.is_some() {
            break;
        }
    }
    Ok(ClassCheckReport {
        semantics: spec.semantics_name(),
        configs_checked: checked,
        violation,
        explored,
        worst_budget,
    })
}

fn merge(acc: &mut Explored, other: Explored) {
    acc.certificates += other.certificates;
    acc.id_assignments += other.id_assignments;
    acc.runs += other.runs;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{PolyBound, Verdict};
    use crate::graph::Label;

    fn triangle(colors: [u64; 3]) -> Configuration {
        Configuration::build(
            3,
            &[(0, 1), (1, 2), (0, 2)],
            colors.iter().map(|&c| Label::of(&[c])).collect(),
        )
        .unwrap()
    }

    fn coloring_verifier() -> Verifier {
        Verifier::new("coloring", 1, |view| {
            let own = view.label_field(0, 0);
            view.op();
            if own.map_or(true, |c| c < 1 || c > 3) {
                return Ok(Verdict::Reject);
            }
            for j in view.neighbors(0) {
                view.op();
                if view.label_field(j, 0) == own {
                    return Ok(Verdict::Reject);
                }
            }
            Ok(Verdict::Accept)
        })
    }

    fn proper(cfg: &Configuration) -> bool {
        cfg.edges().all(|(u, v)| cfg.label(u).field0() != cfg.label(v).field0())
            && cfg
                .labels()
                .iter()
                .all(|l| l.field0().is_some_and(|c| (1..=3).contains(&c)))
    }

    #[test]
    fn decide_ld_exhaustive_triangles() {
        // All 27 colorings of a triangle with colors in {1,2,3}.
        let mut cfgs = Vec::new();
        for a in 1..=3 {
            for b in 1..=3 {
                for c in 1..=3 {
                    cfgs.push(triangle([a, b, c]));
                }
            }
        }
        let params = ExploreParams::default().with_slack(0);
        let report = decide_ld(&coloring_verifier(), &proper, &cfgs, &params).unwrap();
        assert!(report.passed(), "{:?}", report.violation);
        assert_eq!(report.configs_checked, 27);
    }

    #[test]
    fn decide_ld_catches_wrong_verifier() {
        let accept_all = Verifier::new("yes", 0, |_| Ok(Verdict::Accept));
        // Member requires some node labeled 0.
        let membership = |cfg: &Configuration| cfg.labels().iter().any(|l| l.field0() == Some(0));
        let cfg = Configuration::labeled_path(&[1]).unwrap();
        let report = decide_ld(&accept_all, &membership, &[cfg], &ExploreParams::default()).unwrap();
        match report.violation {
            Some(Violation::WrongVerdict { member: false, accepted: true, .. }) => {}
            other => panic!("expected wrong verdict, got {other:?}"),
        }
    }

    #[test]
    fn decide_ld_vacuous_on_empty_family() {
        let accept_all = Verifier::new("yes", 0, |_| Ok(Verdict::Accept));
        let report =
            decide_ld(&accept_all, &|_| true, &[], &ExploreParams::default()).unwrap();
        assert!(report.passed());
        assert_eq!(report.configs_checked, 0);
    }

    #[test]
    fn class_check_pi1_family() {
        // Threshold rule vs the all-labels-over-threshold language on
        // paths: correct everywhere.
        let v = Verifier::new("label-gt-certlen", 0, |view| {
            let x = view.label_field(0, 0).unwrap_or(0);
            let c = view.cert_len(0);
            view.op();
            Ok(Verdict::of(x > c))
        });
        let member = |cfg: &Configuration| {
            let n = cfg.node_count() as u64;
            cfg.labels().iter().all(|l| l.field0().is_some_and(|x| x > n))
        };
        let cfgs: Vec<Configuration> = [
            vec![4u64, 5, 5],
            vec![5, 5, 5],
            vec![2, 5, 5],
            vec![3, 5, 5],
        ]
        .iter()
        .map(|ls| Configuration::labeled_path(ls).unwrap())
        .collect();
        let spec = ClassSpec::pi1_plocal(PolyBound::x());
        let report =
            check_class_membership(&v, &spec, &member, &cfgs, &ExploreParams::default()).unwrap();
        assert!(report.passed(), "{:?}", report.violation);
        assert_eq!(report.configs_checked, 4);
    }
}
