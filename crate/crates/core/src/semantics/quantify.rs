//! The quantifier engines: existential and universal certificate semantics
//! over enumerated certificate and identifier spaces.

use itertools::Itertools;
use serde::Serialize;

use crate::bits::BitString;
use crate::engine::{run_with_certs, CertSource, PolyBound, Verdict, Verifier};
use crate::graph::{
    assign_ids, id_universe, id_universe_count, CertificateAssignment, Configuration, IdAssignment,
    IdMode, MAX_WORD_BITS,
};
use crate::view::{extract_view, View};

use super::enumerate::CertEnum;
use super::spec::{BoundScope, ClassSpec, Family};
use super::{BranchLeaves, SemanticsError, WorkBudget};

/// Exploration parameters shared by the quantifier entry points.
#[derive(Debug, Clone)]
pub struct ExploreParams {
    /// Ids are drawn injectively from `{1, ..., n + slack}`.
    pub slack: usize,
    /// Cap on total verifier invocations (concrete or branched).
    pub cap: u64,
    /// Per-node certificate-length bound, evaluated at n, for classes whose
    /// certificate space is unbounded. Results obtained this way are labeled
    /// as bounded exploration.
    pub exploration_bound: Option<PolyBound>,
}

impl Default for ExploreParams {
    fn default() -> Self {
        ExploreParams {
            slack: 1,
            cap: 10_000_000,
            exploration_bound: None,
        }
    }
}

impl ExploreParams {
    pub fn with_cap(mut self, cap: u64) -> Self {
        self.cap = cap;
        self
    }

    pub fn with_slack(mut self, slack: usize) -> Self {
        self.slack = slack;
        self
    }

    pub fn with_exploration_bound(mut self, bound: PolyBound) -> Self {
        self.exploration_bound = Some(bound);
        self
    }
}

/// How much of the space a quantifier run actually touched.
#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct Explored {
    pub certificates: u64,
    pub id_assignments: u64,
    pub runs: u64,
}

/// Outcome of a universal-certificate classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuantOutcome {
    /// Every enumerated (certificate, id) pair accepts.
    UniformAccept,
    /// `witness` makes the verifier reject under every enumerated id; it is
    /// minimal in certificate enumeration order.
    UniformReject { witness: CertificateAssignment },
    /// No certificate rejects uniformly, yet not everything accepts: the
    /// verifier treats `cert` differently under different ids.
    Inconsistent {
        cert: CertificateAssignment,
        accepting_ids: Vec<u64>,
        rejecting_ids: Vec<u64>,
    },
}

impl QuantOutcome {
    pub fn kind(&self) -> &'static str {
        match self {
            QuantOutcome::UniformAccept => "uniform-accept",
            QuantOutcome::UniformReject { .. } => "uniform-reject",
            QuantOutcome::Inconsistent { .. } => "inconsistent",
        }
    }

    pub fn is_uniform_accept(&self) -> bool {
        matches!(self, QuantOutcome::UniformAccept)
    }

    pub fn is_uniform_reject(&self) -> bool {
        matches!(self, QuantOutcome::UniformReject { .. })
    }
}

#[derive(Debug, Clone)]
pub struct QuantResult {
    pub outcome: QuantOutcome,
    pub explored: Explored,
    /// Set when the class has unbounded certificates and the result only
    /// speaks for the explored bound.
    pub bounded_exploration: Option<String>,
}

/// Outcome of an existential-certificate decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sigma1Result {
    /// `witness` is accepted under every enumerated id; minimal in
    /// certificate enumeration order.
    Yes { witness: CertificateAssignment },
    No,
}

impl Sigma1Result {
    pub fn is_yes(&self) -> bool {
        matches!(self, Sigma1Result::Yes { .. })
    }
}

// ---------------------------------------------------------------------------
// Ball-restriction machinery
// ---------------------------------------------------------------------------

/// Per-node views over every injective id tuple on the node's ball.
///
/// A node's verdict is a function of its ball alone, and every ball-local
/// injective tuple extends to a global injective assignment, so universal
/// statements over (certificate, id) pairs factor through these views.
pub struct BallTupleCache {
    views: Vec<Vec<View>>,
    universe: u64,
}

impl BallTupleCache {
    pub fn build(
        cfg: &Configuration,
        radius: usize,
        slack: usize,
    ) -> Result<Self, SemanticsError> {
        let n = cfg.node_count();
        let universe = (n + slack) as u64;
        let mut views = Vec::with_capacity(n);
        for v in 0..n {
            let ball: Vec<usize> = cfg.ball(v, radius)?.into_iter().map(|(u, _)| u).collect();
            let k = ball.len();
            let mut per_node = Vec::new();
            for tuple in (1..=universe).permutations(k) {
                let ids = complete_ids(n, universe, &ball, &tuple);
                let ids = assign_ids(cfg, &ids, IdMode::GlobalUnique, universe)?;
                per_node.push(extract_view(cfg, &ids, None, v, radius)?);
            }
            views.push(per_node);
        }
        Ok(BallTupleCache { views, universe })
    }

    pub fn views(&self, v: usize) -> &[View] {
        &self.views[v]
    }

    pub fn universe(&self) -> u64 {
        self.universe
    }
}

/// Extends a ball-local id tuple to a full injective assignment; nodes
/// outside the ball take the smallest unused values in index order.
fn complete_ids(n: usize, universe: u64, ball: &[usize], tuple: &[u64]) -> Vec<u64> {
    let mut ids = vec![0u64; n];
    let mut used = vec![false; universe as usize + 1];
    for (&node, &id) in ball.iter().zip(tuple) {
        ids[node] = id;
        used[id as usize] = true;
    }
    let mut next = 1u64;
    for slot in ids.iter_mut() {
        if *slot == 0 {
            while used[next as usize] {
                next += 1;
            }
            *slot = next;
            used[next as usize] = true;
        }
    }
    ids
}

/// Cert-free radius-`r` views of every node under one id assignment.
struct ViewSet {
    views: Vec<View>,
}

impl ViewSet {
    fn build(
        cfg: &Configuration,
        ids: &IdAssignment,
        radius: usize,
    ) -> Result<Self, SemanticsError> {
        let views = (0..cfg.node_count())
            .map(|v| extract_view(cfg, ids, None, v, radius))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ViewSet { views })
    }
}

/// Aggregate verdict under one id assignment, splicing `certs` into the
/// cached views; stops at the first rejecting node.
fn aggregate_spliced(
    verifier: &Verifier,
    set: &ViewSet,
    certs: &[BitString],
    n: u64,
    budget: &mut WorkBudget,
    explored: &mut Explored,
) -> Result<Verdict, SemanticsError> {
    for view in &set.views {
        budget.charge(1, "verifier run")?;
        explored.runs += 1;
        let (verdict, _) = run_with_certs(verifier, view, CertSource::Slice(certs), Some(n))?;
        if !verdict.is_accept() {
            return Ok(Verdict::Reject);
        }
    }
    Ok(Verdict::Accept)
}

/// True iff every node accepts `certs` over every ball id tuple, which is
/// exactly "every enumerated id assignment accepts `certs`".
fn certs_accepted_under_all_ids(
    verifier: &Verifier,
    cache: &BallTupleCache,
    certs: &[BitString],
    n: u64,
    budget: &mut WorkBudget,
    explored: &mut Explored,
) -> Result<bool, SemanticsError> {
    for v in 0..cache.views.len() {
        for view in cache.views(v) {
            budget.charge(1, "verifier run")?;
            explored.runs += 1;
            let (verdict, _) = run_with_certs(verifier, view, CertSource::Slice(certs), Some(n))?;
            if !verdict.is_accept() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Sufficient condition for uniform rejection: some node rejects `certs`
/// over every ball id tuple.
fn some_node_rejects_under_all_ids(
    verifier: &Verifier,
    cache: &BallTupleCache,
    certs: &[BitString],
    n: u64,
    budget: &mut WorkBudget,
    explored: &mut Explored,
) -> Result<bool, SemanticsError> {
    'nodes: for v in 0..cache.views.len() {
        for view in cache.views(v) {
            budget.charge(1, "verifier run")?;
            explored.runs += 1;
            let (verdict, _) = run_with_certs(verifier, view, CertSource::Slice(certs), Some(n))?;
            if verdict.is_accept() {
                continue 'nodes;
            }
        }
        return Ok(true);
    }
    Ok(false)
}

/// Public form of the completeness check: does every enumerated id accept
/// this certificate assignment?
pub fn all_ids_accept(
    verifier: &Verifier,
    cfg: &Configuration,
    certs: &CertificateAssignment,
    params: &ExploreParams,
) -> Result<bool, SemanticsError> {
    let cache = BallTupleCache::build(cfg, verifier.radius(), params.slack)?;
    let mut budget = WorkBudget::new(params.cap);
    let mut explored = Explored::default();
    certs_accepted_under_all_ids(
        verifier,
        &cache,
        certs.certs(),
        cfg.node_count() as u64,
        &mut budget,
        &mut explored,
    )
}

// ---------------------------------------------------------------------------
// Bound resolution
// ---------------------------------------------------------------------------

fn clamp_bits(bound: u64) -> u64 {
    bound.min(MAX_WORD_BITS as u64)
}

/// Per-node certificate bounds for the id-oblivious flavors.
fn oblivious_bounds(
    spec: &ClassSpec,
    cfg: &Configuration,
    params: &ExploreParams,
) -> Result<(Vec<u64>, Option<String>), SemanticsError> {
    let n = cfg.node_count();
    match &spec.cert_bound {
        Some((q, BoundScope::GlobalN)) => {
            let b = clamp_bits(q.eval_budget(n as u64));
            Ok((vec![b; n], None))
        }
        None => {
            let q = params.exploration_bound.as_ref().ok_or_else(|| {
                SemanticsError::BadSpec(
                    "unbounded-certificate class needs an exploration bound".into(),
                )
            })?;
            let b = clamp_bits(q.eval_budget(n as u64));
            Ok((
                vec![b; n],
                Some(format!(
                    "within explored bound {q} = {b} bits per node"
                )),
            ))
        }
        Some((_, BoundScope::LocalView)) => Err(SemanticsError::BadSpec(
            "local-view certificate bounds use the per-id path".into(),
        )),
    }
}

/// Per-node certificate bounds of the view-bounded flavor under one id
/// assignment: the bound polynomial evaluated at each node's own
/// certificate-free view size.
pub fn lp_cert_bounds(
    cfg: &Configuration,
    ids: &IdAssignment,
    radius: usize,
    q: &PolyBound,
) -> Result<Vec<u64>, SemanticsError> {
    (0..cfg.node_count())
        .map(|v| {
            let view = extract_view(cfg, ids, None, v, radius)?;
            Ok(clamp_bits(q.eval_budget(view.bits())))
        })
        .collect()
}

fn local_unique_assignment(
    cfg: &Configuration,
    tuple: &[u64],
    radius: usize,
    universe: u64,
) -> Result<IdAssignment, SemanticsError> {
    Ok(assign_ids(cfg, tuple, IdMode::LocalUnique(radius), universe)?)
}

fn check_verifier_fits_spec(verifier: &Verifier, spec: &ClassSpec) -> Result<(), SemanticsError> {
    spec.validate()?;
    if verifier.n_aware() && !spec.knows_n {
        return Err(SemanticsError::BadSpec(format!(
            "verifier {:?} reads n but the class does not provide it",
            verifier.name()
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Existential certificates
// ---------------------------------------------------------------------------

/// Decides `exists c (within bounds): for all ids, the verifier accepts
/// (cfg, c, id)`. Returns the first such certificate in enumeration order.
pub fn sigma1_decide(
    verifier: &Verifier,
    cfg: &Configuration,
    spec: &ClassSpec,
    params: &ExploreParams,
) -> Result<(Sigma1Result, Explored), SemanticsError> {
    check_verifier_fits_spec(verifier, spec)?;
    if spec.family != Family::Sigma1 {
        return Err(SemanticsError::BadSpec("sigma1_decide needs a Sigma1 spec".into()));
    }
    let n = cfg.node_count();
    let mut explored = Explored::default();
    let mut budget = WorkBudget::new(params.cap);
    let bounds = if spec.is_lp_flavor() {
        // A certificate must satisfy the view-size bound under every id;
        // the pointwise minimum over enumerated ids realizes that.
        let (q, _) = spec.cert_bound.as_ref().expect("lp flavor has a bound");
        let mut mins: Option<Vec<u64>> = None;
        for tuple in id_universe(n, params.slack) {
            budget.charge(1, "id enumeration")?;
            explored.id_assignments += 1;
            let ids = local_unique_assignment(cfg, &tuple, verifier.radius(), (n + params.slack) as u64)?;
            let bs = lp_cert_bounds(cfg, &ids, verifier.radius(), q)?;
            mins = Some(match mins {
                None => bs,
                Some(m) => m.into_iter().zip(bs).map(|(a, b)| a.min(b)).collect(),
            });
        }
        mins.ok_or_else(|| SemanticsError::BadSpec("empty id universe".into()))?
    } else {
        oblivious_bounds(spec, cfg, params)?.0
    };
    let cache = BallTupleCache::build(cfg, verifier.radius(), params.slack)?;
    let mut e = CertEnum::new(&bounds);
    while e.advance() {
        explored.certificates += 1;
        budget.charge(1, "certificate scan")?;
        if certs_accepted_under_all_ids(verifier, &cache, e.current(), n as u64, &mut budget, &mut explored)? {
            return Ok((
                Sigma1Result::Yes {
                    witness: e.current_assignment(),
                },
                explored,
            ));
        }
    }
    Ok((Sigma1Result::No, explored))
}

// ---------------------------------------------------------------------------
// Universal certificates
// ---------------------------------------------------------------------------

/// Classifies a configuration under universal-certificate semantics.
pub fn pi1_classify(
    verifier: &Verifier,
    cfg: &Configuration,
    spec: &ClassSpec,
    params: &ExploreParams,
) -> Result<QuantResult, SemanticsError> {
    check_verifier_fits_spec(verifier, spec)?;
    if spec.family != Family::Pi1 {
        return Err(SemanticsError::BadSpec("pi1_classify needs a Pi1 spec".into()));
    }
    if spec.is_lp_flavor() {
        pi1_classify_lp(verifier, cfg, spec, params)
    } else {
        pi1_classify_oblivious(verifier, cfg, spec, params)
    }
}

fn pi1_classify_oblivious(
    verifier: &Verifier,
    cfg: &Configuration,
    spec: &ClassSpec,
    params: &ExploreParams,
) -> Result<QuantResult, SemanticsError> {
    let n = cfg.node_count();
    let n64 = n as u64;
    let (bounds, bounded_exploration) = oblivious_bounds(spec, cfg, params)?;
    let mut budget = WorkBudget::new(params.cap);
    let mut explored = Explored::default();
    let cache = BallTupleCache::build(cfg, verifier.radius(), params.slack)?;

    // Universal acceptance, factored per ball and branched per read.
    let mut all_accept = true;
    'phase_a: for v in 0..n {
        for view in cache.views(v) {
            let mut leaves = BranchLeaves::new(verifier, view, &bounds, Some(n64));
            while let Some(verdict) = leaves.next_leaf().map_err(SemanticsError::Engine)? {
                budget.charge(1, "branch leaf")?;
                explored.runs += 1;
                if !verdict.is_accept() {
                    all_accept = false;
                    break 'phase_a;
                }
            }
        }
    }
    if all_accept {
        return Ok(QuantResult {
            outcome: QuantOutcome::UniformAccept,
            explored,
            bounded_exploration,
        });
    }

    // Ordered scan for the first uniformly rejecting certificate. A
    // candidate must reject under the first id; confirmation is either the
    // factored sufficient check or a full id sweep.
    let first_tuple = id_universe(n, params.slack)
        .next()
        .ok_or_else(|| SemanticsError::BadSpec("empty id universe".into()))?;
    let first_ids = assign_ids(cfg, &first_tuple, IdMode::GlobalUnique, (n + params.slack) as u64)?;
    let set0 = ViewSet::build(cfg, &first_ids, verifier.radius())?;
    let mut e = CertEnum::new(&bounds);
    while e.advance() {
        explored.certificates += 1;
        budget.charge(1, "certificate scan")?;
        let probe = aggregate_spliced(verifier, &set0, e.current(), n64, &mut budget, &mut explored)?;
        if probe.is_accept() {
            continue;
        }
        if some_node_rejects_under_all_ids(verifier, &cache, e.current(), n64, &mut budget, &mut explored)? {
            return Ok(QuantResult {
                outcome: QuantOutcome::UniformReject {
                    witness: e.current_assignment(),
                },
                explored,
                bounded_exploration,
            });
        }
        let mut uniform = true;
        for tuple in id_universe(n, params.slack) {
            explored.id_assignments += 1;
            let ids = assign_ids(cfg, &tuple, IdMode::GlobalUnique, (n + params.slack) as u64)?;
            let set = ViewSet::build(cfg, &ids, verifier.radius())?;
            let agg = aggregate_spliced(verifier, &set, e.current(), n64, &mut budget, &mut explored)?;
            if agg.is_accept() {
                uniform = false;
                break;
            }
        }
        if uniform {
            return Ok(QuantResult {
                outcome: QuantOutcome::UniformReject {
                    witness: e.current_assignment(),
                },
                explored,
                bounded_exploration,
            });
        }
    }

    // No uniform rejecter: find the first certificate with mixed verdicts
    // across ids.
    let mut e = CertEnum::new(&bounds);
    while e.advance() {
        budget.charge(1, "inconsistency scan")?;
        let mut accepting: Option<Vec<u64>> = None;
        let mut rejecting: Option<Vec<u64>> = None;
        for tuple in id_universe(n, params.slack) {
            explored.id_assignments += 1;
            let ids = assign_ids(cfg, &tuple, IdMode::GlobalUnique, (n + params.slack) as u64)?;
            let set = ViewSet::build(cfg, &ids, verifier.radius())?;
            let agg = aggregate_spliced(verifier, &set, e.current(), n64, &mut budget, &mut explored)?;
            if agg.is_accept() {
                accepting.get_or_insert(tuple);
            } else {
                rejecting.get_or_insert(tuple);
            }
            if accepting.is_some() && rejecting.is_some() {
                return Ok(QuantResult {
                    outcome: QuantOutcome::Inconsistent {
                        cert: e.current_assignment(),
                        accepting_ids: accepting.unwrap(),
                        rejecting_ids: rejecting.unwrap(),
                    },
                    explored,
                    bounded_exploration,
                });
            }
        }
    }
    Err(SemanticsError::BadSpec(
        "verifier verdicts changed between passes; decide is not a pure function".into(),
    ))
}

/// Per-id semantics for the view-bounded flavor: under every id the
/// verifier must accept all certificates within that id's bounds (members)
/// or reject some certificate within them (non-members).
fn pi1_classify_lp(
    verifier: &Verifier,
    cfg: &Configuration,
    spec: &ClassSpec,
    params: &ExploreParams,
) -> Result<QuantResult, SemanticsError> {
    let (q, _) = spec.cert_bound.as_ref().expect("lp flavor has a bound");
    let n = cfg.node_count();
    let universe = (n + params.slack) as u64;
    let mut budget = WorkBudget::new(params.cap);
    let mut explored = Explored::default();

    let mut first_accepting: Option<Vec<u64>> = None;
    let mut first_rejecting: Option<(Vec<u64>, CertificateAssignment)> = None;
    for tuple in id_universe(n, params.slack) {
        budget.charge(1, "id enumeration")?;
        explored.id_assignments += 1;
        let ids = local_unique_assignment(cfg, &tuple, verifier.radius(), universe)?;
        let bounds = lp_cert_bounds(cfg, &ids, verifier.radius(), q)?;
        if lp_all_accept_under_id(verifier, cfg, &ids, &bounds, &mut budget, &mut explored)? {
            first_accepting.get_or_insert(tuple);
        } else {
            let witness =
                lp_first_rejecting_cert(verifier, cfg, &ids, &bounds, &mut budget, &mut explored)?
                    .expect("a rejecting certificate exists when not all accept");
            first_rejecting.get_or_insert((tuple, witness));
        }
        if first_accepting.is_some() && first_rejecting.is_some() {
            let (rejecting_ids, cert) = first_rejecting.unwrap();
            return Ok(QuantResult {
                outcome: QuantOutcome::Inconsistent {
                    cert,
                    accepting_ids: first_accepting.unwrap(),
                    rejecting_ids,
                },
                explored,
                bounded_exploration: None,
            });
        }
    }
    let outcome = match first_rejecting {
        None => QuantOutcome::UniformAccept,
        Some((_, witness)) => QuantOutcome::UniformReject { witness },
    };
    Ok(QuantResult {
        outcome,
        explored,
        bounded_exploration: None,
    })
}

/// Does every certificate assignment within `bounds` make every node accept
/// under this fixed id assignment?
pub fn lp_all_certs_accept(
    verifier: &Verifier,
    cfg: &Configuration,
    ids: &IdAssignment,
    q: &PolyBound,
    cap: u64,
) -> Result<bool, SemanticsError> {
    let bounds = lp_cert_bounds(cfg, ids, verifier.radius(), q)?;
    let mut budget = WorkBudget::new(cap);
    let mut explored = Explored::default();
    lp_all_accept_under_id(verifier, cfg, ids, &bounds, &mut budget, &mut explored)
}

fn lp_all_accept_under_id(
    verifier: &Verifier,
    cfg: &Configuration,
    ids: &IdAssignment,
    bounds: &[u64],
    budget: &mut WorkBudget,
    explored: &mut Explored,
) -> Result<bool, SemanticsError> {
    // For a fixed id assignment, "all certificates make all nodes accept"
    // factors per node over its own ball reads.
    let n64 = cfg.node_count() as u64;
    for v in 0..cfg.node_count() {
        let view = extract_view(cfg, ids, None, v, verifier.radius())?;
        let mut leaves = BranchLeaves::new(verifier, &view, bounds, Some(n64));
        while let Some(verdict) = leaves.next_leaf().map_err(SemanticsError::Engine)? {
            budget.charge(1, "branch leaf")?;
            explored.runs += 1;
            if !verdict.is_accept() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn lp_first_rejecting_cert(
    verifier: &Verifier,
    cfg: &Configuration,
    ids: &IdAssignment,
    bounds: &[u64],
    budget: &mut WorkBudget,
    explored: &mut Explored,
) -> Result<Option<CertificateAssignment>, SemanticsError> {
    let set = ViewSet::build(cfg, ids, verifier.radius())?;
    let n64 = cfg.node_count() as u64;
    let mut e = CertEnum::new(bounds);
    while e.advance() {
        explored.certificates += 1;
        budget.charge(1, "certificate scan")?;
        let agg = aggregate_spliced(verifier, &set, e.current(), n64, budget, explored)?;
        if !agg.is_accept() {
            return Ok(Some(e.current_assignment()));
        }
    }
    Ok(None)
}

/// Number of id assignments the quantifiers range over; exposed for report
/// sizing.
pub fn id_space_size(cfg: &Configuration, slack: usize) -> num_bigint::BigUint {
    id_universe_count(cfg.node_count(), slack)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Verdict;
    use crate::graph::Label;

    fn agtg_style_verifier() -> Verifier {
        // Accepts iff own first label field exceeds own certificate length.
        Verifier::new("label-gt-certlen", 0, |view| {
            let x = view.label_field(0, 0).unwrap_or(0);
            let c = view.cert_len(0);
            view.op();
            Ok(Verdict::of(x > c))
        })
    }

    #[test]
    fn pi1_uniform_accept_on_members() {
        let cfg = Configuration::labeled_path(&[5, 5, 5]).unwrap();
        let spec = ClassSpec::pi1_plocal(PolyBound::x());
        let res = pi1_classify(&agtg_style_verifier(), &cfg, &spec, &ExploreParams::default())
            .unwrap();
        assert!(res.outcome.is_uniform_accept());
    }

    #[test]
    fn pi1_uniform_reject_with_minimal_witness() {
        let cfg = Configuration::labeled_path(&[2, 5, 5]).unwrap();
        let spec = ClassSpec::pi1_plocal(PolyBound::x());
        let res = pi1_classify(&agtg_style_verifier(), &cfg, &spec, &ExploreParams::default())
            .unwrap();
        match res.outcome {
            QuantOutcome::UniformReject { witness } => {
                // First uniformly rejecting assignment in order: node 0
                // needs |c| >= 2, the others stay empty.
                assert_eq!(witness.cert(0).to_string(), "00");
                assert_eq!(witness.cert(1).len(), 0);
                assert_eq!(witness.cert(2).len(), 0);
            }
            other => panic!("expected uniform reject, got {other:?}"),
        }
    }

    #[test]
    fn pi1_id_sensitive_verifier_is_inconsistent() {
        // Accepts iff own id is odd: verdicts vary across ids for the same
        // (empty) certificate.
        let v = Verifier::new("id-odd", 0, |view| Ok(Verdict::of(view.id(0) % 2 == 1)));
        let cfg = Configuration::labeled_path(&[1, 1]).unwrap();
        let spec = ClassSpec::pi1_plocal(PolyBound::constant(1));
        let res = pi1_classify(&v, &cfg, &spec, &ExploreParams::default()).unwrap();
        match res.outcome {
            QuantOutcome::Inconsistent { cert, accepting_ids, rejecting_ids } => {
                assert_eq!(cert.certs().iter().map(|c| c.len()).sum::<usize>(), 0);
                assert_ne!(accepting_ids, rejecting_ids);
            }
            other => panic!("expected inconsistent, got {other:?}"),
        }
    }

    #[test]
    fn pi1_bound_zero_degenerates_to_empty_assignment() {
        let v = agtg_style_verifier();
        let member = Configuration::labeled_path(&[1]).unwrap();
        let spec = ClassSpec::pi1_plocal(PolyBound::zero());
        // Label 1 > 0 = empty certificate: accept; no other certificates
        // exist at bound 0.
        let res = pi1_classify(&v, &member, &spec, &ExploreParams::default()).unwrap();
        assert!(res.outcome.is_uniform_accept());
        assert_eq!(res.explored.certificates, 0); // accepted in phase A
    }

    #[test]
    fn sigma1_yes_and_no() {
        // Accepts iff certificate length equals own label: a certificate
        // exists iff the label is within bounds.
        let v = Verifier::new("certlen-eq-label", 0, |view| {
            let x = view.label_field(0, 0).unwrap_or(0);
            let c = view.cert_len(0);
            view.op();
            Ok(Verdict::of(x == c))
        });
        let cfg = Configuration::labeled_path(&[2, 1]).unwrap();
        let spec = ClassSpec::sigma1_plocal(PolyBound::constant(3));
        let (res, _) = sigma1_decide(&v, &cfg, &spec, &ExploreParams::default()).unwrap();
        match res {
            Sigma1Result::Yes { witness } => {
                assert_eq!(witness.cert(0).len(), 2);
                assert_eq!(witness.cert(1).len(), 1);
                // Minimal in order: all-zero bits.
                assert_eq!(witness.cert(0).to_string(), "00");
                assert_eq!(witness.cert(1).to_string(), "0");
            }
            Sigma1Result::No => panic!("expected yes"),
        }
        // Bound too small for label 5: no certificate works.
        let cfg = Configuration::labeled_path(&[5]).unwrap();
        let (res, _) = sigma1_decide(&v, &cfg, &spec, &ExploreParams::default()).unwrap();
        assert_eq!(res, Sigma1Result::No);
    }

    #[test]
    fn sigma1_cap_enforced() {
        // Label 0 is never above any certificate length, so the scan would
        // walk the whole space; the cap stops it.
        let v = agtg_style_verifier();
        let cfg = Configuration::labeled_path(&[0, 0, 0]).unwrap();
        let spec = ClassSpec::sigma1_plocal(PolyBound::constant(8));
        let params = ExploreParams::default().with_cap(50);
        let err = sigma1_decide(&v, &cfg, &spec, &params).unwrap_err();
        assert!(matches!(err, SemanticsError::SpaceTooLarge { .. }));
    }

    #[test]
    fn pi1_local_flavor_requires_exploration_bound() {
        let v = agtg_style_verifier();
        let cfg = Configuration::labeled_path(&[5]).unwrap();
        let spec = ClassSpec::pi1_local();
        let err = pi1_classify(&v, &cfg, &spec, &ExploreParams::default()).unwrap_err();
        assert!(matches!(err, SemanticsError::BadSpec(_)));
        let params = ExploreParams::default().with_exploration_bound(PolyBound::new(&[0, 2]));
        let res = pi1_classify(&v, &cfg, &spec, &params).unwrap();
        assert!(res.bounded_exploration.is_some());
        assert!(res.outcome.is_uniform_accept());
    }

    #[test]
    fn lp_flavor_per_id_classification() {
        // Rejects iff some ball certificate is nonempty; members of nothing,
        // but uniform across ids, so classification is clean.
        let v = Verifier::new("all-empty", 1, |view| {
            for i in 0..view.node_count() {
                if view.cert_len(i) > 0 {
                    return Ok(Verdict::Reject);
                }
            }
            Ok(Verdict::Accept)
        });
        let cfg = Configuration::labeled_path(&[1, 1, 1]).unwrap();
        let spec = ClassSpec::pi1_lp(PolyBound::constant(1));
        let res = pi1_classify(&v, &cfg, &spec, &ExploreParams::default()).unwrap();
        match res.outcome {
            QuantOutcome::UniformReject { witness } => {
                let total: usize = witness.certs().iter().map(|c| c.len()).sum();
                assert_eq!(total, 1);
            }
            other => panic!("expected uniform reject, got {other:?}"),
        }
        // The all-accepting verifier is uniform-accept under the same spec.
        let ok = Verifier::new("yes", 1, |_| Ok(Verdict::Accept));
        let res = pi1_classify(&ok, &cfg, &spec, &ExploreParams::default()).unwrap();
        assert!(res.outcome.is_uniform_accept());
    }

    #[test]
    fn cert_ignoring_verifier_never_inconsistent_over_certs() {
        // Reads ids but no certificates; inconsistency, when present, is
        // attributed to ids with the first (empty) certificate.
        let v = Verifier::new("id-odd", 0, |view| Ok(Verdict::of(view.id(0) % 2 == 1)));
        let cfg = Configuration::labeled_path(&[1]).unwrap();
        let spec = ClassSpec::pi1_plocal(PolyBound::constant(2));
        let res = pi1_classify(&v, &cfg, &spec, &ExploreParams::default()).unwrap();
        if let QuantOutcome::Inconsistent { cert, .. } = &res.outcome {
            assert!(cert.certs().iter().all(|c| c.is_empty()));
        }
    }

    #[test]
    fn ball_cache_counts() {
        let cfg = Configuration::labeled_path(&[1, 1, 1]).unwrap();
        let cache = BallTupleCache::build(&cfg, 1, 1).unwrap();
        // Node 0's ball has 2 nodes: P(4, 2) = 12 tuples.
        assert_eq!(cache.views(0).len(), 12);
        // Node 1's ball has 3 nodes: P(4, 3) = 24 tuples.
        assert_eq!(cache.views(1).len(), 24);
    }

    #[test]
    fn knows_n_mismatch_rejected() {
        let v = Verifier::new_n_aware("needs-n", 0, |view| {
            Ok(Verdict::of(view.graph_size().unwrap_or(0) > 0))
        });
        let cfg = Configuration::labeled_path(&[1]).unwrap();
        let spec = ClassSpec::pi1_plocal(PolyBound::x());
        assert!(matches!(
            pi1_classify(&v, &cfg, &spec, &ExploreParams::default()),
            Err(SemanticsError::BadSpec(_))
        ));
        let spec = ClassSpec::pi1_plocal_knows_n(PolyBound::x());
        assert!(pi1_classify(&v, &cfg, &spec, &ExploreParams::default()).is_ok());
    }

    #[test]
    fn label_gt_certlen_bound_zero_single_node() {
        // Empty label tuple reads as 0: the verifier rejects; phase B finds
        // the empty witness.
        let v = agtg_style_verifier();
        let cfg = Configuration::path(vec![Label::empty()]).unwrap();
        let spec = ClassSpec::pi1_plocal(PolyBound::zero());
        let res = pi1_classify(&v, &cfg, &spec, &ExploreParams::default()).unwrap();
        match res.outcome {
            QuantOutcome::UniformReject { witness } => assert!(witness.cert(0).is_empty()),
            other => panic!("expected uniform reject, got {other:?}"),
        }
    }
}
