//! Verifier abstraction, step-counted execution, and polynomial bounds.
//!
//! # Cost model
//!
//! Budgets are a measurement, not an enforcement: a node cannot evaluate its
//! own time bound, so the engine records steps and compares after the fact.
//! One tick is charged per view-field read (every accessor on
//! [`MeteredView`]) and per word operation on values of at most 64 bits;
//! verifier bodies charge their own arithmetic and comparisons through
//! [`MeteredView::op`]. The bundled verifiers follow this discipline, which
//! makes step counts reproducible across runs and machines.

use std::cell::Cell;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::bits::BitString;
use crate::graph::{CertificateAssignment, Configuration, GraphError, IdAssignment};
use crate::view::{extract_view, View};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Accept,
    Reject,
}

impl Verdict {
    pub fn is_accept(self) -> bool {
        self == Verdict::Accept
    }

    pub fn of(accept: bool) -> Verdict {
        if accept {
            Verdict::Accept
        } else {
            Verdict::Reject
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecideError {
    #[error("verifier-internal enumeration of {needed} assignments exceeds cap {cap}")]
    SpaceTooLarge { needed: BigUint, cap: u64 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("view radius {got} does not match verifier radius {expected}")]
    RadiusMismatch { expected: usize, got: usize },
    #[error("verifier is size-aware but no n was supplied")]
    MissingN,
    #[error("leading coefficient must be positive")]
    NonPositiveLeading,
    #[error(transparent)]
    Decide(#[from] DecideError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Where a metered run reads certificates from.
#[derive(Clone, Copy)]
pub enum CertSource<'a> {
    /// The certificates embedded in the view itself (absent reads as the
    /// empty string).
    FromView,
    /// A full assignment, indexed through the view's source nodes. This is
    /// how enumeration loops splice candidate certificates into a
    /// certificate-free template without re-extracting the ball.
    Assignment(&'a CertificateAssignment),
    /// A bare per-node slice, indexed through the view's source nodes.
    Slice(&'a [BitString]),
    /// An oracle that answers certificate queries; the quantification
    /// engine uses this to branch over all possible answers.
    Oracle(&'a dyn CertOracle),
}

/// Query interface for symbolic certificate backends. Keys are source-node
/// indices of the underlying configuration.
pub trait CertOracle {
    fn cert_len(&self, source_node: usize) -> u64;
    fn cert_bit(&self, source_node: usize, bit: u64) -> bool;
}

/// A view handed to a verifier, with a per-invocation step meter.
///
/// Index 0 is always the root. All accessors charge one tick.
pub struct MeteredView<'a> {
    view: &'a View,
    certs: CertSource<'a>,
    n: Option<u64>,
    ticks: Cell<u64>,
}

impl<'a> MeteredView<'a> {
    pub fn new(view: &'a View, certs: CertSource<'a>, n: Option<u64>) -> Self {
        MeteredView {
            view,
            certs,
            n,
            ticks: Cell::new(0),
        }
    }

    fn tick(&self) {
        self.ticks.set(self.ticks.get() + 1);
    }

    /// Charges one word-operation tick (comparison, addition, ...).
    pub fn op(&self) {
        self.tick();
    }

    /// Charges `k` word-operation ticks.
    pub fn ops(&self, k: u64) {
        self.ticks.set(self.ticks.get() + k);
    }

    pub fn steps(&self) -> u64 {
        self.ticks.get()
    }

    pub fn node_count(&self) -> usize {
        self.tick();
        self.view.node_count()
    }

    pub fn distance(&self, i: usize) -> usize {
        self.tick();
        self.view.node(i).distance
    }

    pub fn id(&self, i: usize) -> u64 {
        self.tick();
        self.view.node(i).id
    }

    pub fn label_arity(&self, i: usize) -> usize {
        self.tick();
        self.view.node(i).label.fields.len()
    }

    pub fn label_field(&self, i: usize, j: usize) -> Option<u64> {
        self.tick();
        self.view.node(i).label.fields.get(j).copied()
    }

    pub fn label_word(&self, i: usize) -> Option<&BitString> {
        self.tick();
        self.view.node(i).label.word.as_ref()
    }

    /// Certificate length of view node `i`; absent certificates read as 0.
    pub fn cert_len(&self, i: usize) -> u64 {
        self.tick();
        match self.certs {
            CertSource::FromView => self.view.node(i).cert.as_ref().map_or(0, |c| c.len() as u64),
            CertSource::Assignment(a) => a.cert(self.view.source_node(i)).len() as u64,
            CertSource::Slice(s) => s[self.view.source_node(i)].len() as u64,
            CertSource::Oracle(o) => o.cert_len(self.view.source_node(i)),
        }
    }

    /// Bit `j` of node `i`'s certificate; out-of-range reads as false.
    pub fn cert_bit(&self, i: usize, j: u64) -> bool {
        self.tick();
        match self.certs {
            CertSource::FromView => self
                .view
                .node(i)
                .cert
                .as_ref()
                .and_then(|c| c.get(j as usize))
                .unwrap_or(false),
            CertSource::Assignment(a) => a
                .cert(self.view.source_node(i))
                .get(j as usize)
                .unwrap_or(false),
            CertSource::Slice(s) => s[self.view.source_node(i)].get(j as usize).unwrap_or(false),
            CertSource::Oracle(o) => o.cert_bit(self.view.source_node(i), j),
        }
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.tick();
        self.view.adjacent(i, j)
    }

    /// Ball neighbors of node `i`, charging one tick per candidate checked.
    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.view.node_count())
            .filter(|&j| self.adjacent(i, j))
            .collect()
    }

    /// The graph size, for size-aware verifiers only.
    pub fn graph_size(&self) -> Option<u64> {
        self.tick();
        self.n
    }

    /// The raw view, for radius bookkeeping inside transforms. Reads made
    /// through it are not metered; transforms meter their own simulation.
    pub fn raw(&self) -> &'a View {
        self.view
    }

    pub fn cert_source(&self) -> CertSource<'a> {
        self.certs
    }
}

pub type DecideFn = dyn Fn(&MeteredView<'_>) -> Result<Verdict, DecideError> + Send + Sync;

/// A radius-`t` local decision rule. Immutable and shareable; `decide` must
/// be a pure function of the view (and of `n` when size-aware).
#[derive(Clone)]
pub struct Verifier {
    radius: usize,
    n_aware: bool,
    name: String,
    decide: Arc<DecideFn>,
}

impl fmt::Debug for Verifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Verifier({}, radius {}{})",
            self.name,
            self.radius,
            if self.n_aware { ", knows n" } else { "" }
        )
    }
}

impl Verifier {
    pub fn new<F>(name: impl Into<String>, radius: usize, f: F) -> Self
    where
        F: Fn(&MeteredView<'_>) -> Result<Verdict, DecideError> + Send + Sync + 'static,
    {
        Verifier {
            radius,
            n_aware: false,
            name: name.into(),
            decide: Arc::new(f),
        }
    }

    pub fn new_n_aware<F>(name: impl Into<String>, radius: usize, f: F) -> Self
    where
        F: Fn(&MeteredView<'_>) -> Result<Verdict, DecideError> + Send + Sync + 'static,
    {
        Verifier {
            radius,
            n_aware: true,
            name: name.into(),
            decide: Arc::new(f),
        }
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn n_aware(&self) -> bool {
        self.n_aware
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub(crate) fn decide_metered(
        &self,
        metered: &MeteredView<'_>,
    ) -> Result<Verdict, DecideError> {
        (self.decide)(metered)
    }
}

/// Runs a verifier on one view. Returns the verdict and the step count.
pub fn run(verifier: &Verifier, view: &View, n: Option<u64>) -> Result<(Verdict, u64), EngineError> {
    run_with_certs(verifier, view, CertSource::FromView, n)
}

/// Runs a verifier on a view with an explicit certificate source.
pub fn run_with_certs(
    verifier: &Verifier,
    view: &View,
    certs: CertSource<'_>,
    n: Option<u64>,
) -> Result<(Verdict, u64), EngineError> {
    if view.radius() != verifier.radius {
        return Err(EngineError::RadiusMismatch {
            expected: verifier.radius,
            got: view.radius(),
        });
    }
    if verifier.n_aware && n.is_none() {
        return Err(EngineError::MissingN);
    }
    let metered = MeteredView::new(view, certs, if verifier.n_aware { n } else { None });
    let verdict = verifier.decide_metered(&metered)?;
    Ok((verdict, metered.steps()))
}

/// Per-node outcome of a whole-graph run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NodeRun {
    pub verdict: Verdict,
    pub steps: u64,
}

/// Outcome of running a verifier at every node: the graph is accepted iff
/// all nodes accept.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub per_node: Vec<NodeRun>,
    pub aggregate: Verdict,
    pub max_steps: u64,
}

impl RunReport {
    pub fn accepted(&self) -> bool {
        self.aggregate.is_accept()
    }

    pub fn rejecting_nodes(&self) -> Vec<usize> {
        self.per_node
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.verdict.is_accept())
            .map(|(i, _)| i)
            .collect()
    }
}

/// Runs the verifier at every node of the configuration.
pub fn run_all(
    verifier: &Verifier,
    cfg: &Configuration,
    ids: &IdAssignment,
    certs: Option<&CertificateAssignment>,
) -> Result<RunReport, EngineError> {
    Ok(run_all_with_views(verifier, cfg, ids, certs)?.0)
}

/// As [`run_all`], also returning each node's view for budget measurement.
pub fn run_all_with_views(
    verifier: &Verifier,
    cfg: &Configuration,
    ids: &IdAssignment,
    certs: Option<&CertificateAssignment>,
) -> Result<(RunReport, Vec<View>), EngineError> {
    let n = cfg.node_count();
    let mut per_node = Vec::with_capacity(n);
    let mut views = Vec::with_capacity(n);
    let mut aggregate = Verdict::Accept;
    let mut max_steps = 0;
    for v in 0..n {
        let view = extract_view(cfg, ids, certs, v, verifier.radius())?;
        let (verdict, steps) = run(verifier, &view, Some(n as u64))?;
        if !verdict.is_accept() {
            aggregate = Verdict::Reject;
        }
        max_steps = max_steps.max(steps);
        per_node.push(NodeRun { verdict, steps });
        views.push(view);
    }
    Ok((
        RunReport {
            per_node,
            aggregate,
            max_steps,
        },
        views,
    ))
}

// ---------------------------------------------------------------------------
// Polynomial bounds
// ---------------------------------------------------------------------------

/// An integer-coefficient polynomial, used for time and certificate budgets.
///
/// Coefficients are stored low degree first with no trailing zero (the zero
/// polynomial has no coefficients). Evaluation is exact integer arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyBound {
    coeffs: Vec<BigInt>,
}

impl PolyBound {
    pub fn new(coeffs: &[i64]) -> Self {
        PolyBound::from_bigints(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn from_bigints(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyBound { coeffs }
    }

    pub fn zero() -> Self {
        PolyBound { coeffs: Vec::new() }
    }

    pub fn constant(c: i64) -> Self {
        PolyBound::new(&[c])
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        PolyBound::new(&[0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coefficient(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Exact evaluation at a nonnegative integer argument.
    pub fn eval(&self, m: u64) -> BigInt {
        let m = BigInt::from(m);
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &m + c;
        }
        acc
    }

    /// Evaluation as a budget: negative values clamp to 0, oversized values
    /// to `u64::MAX`.
    pub fn eval_budget(&self, m: u64) -> u64 {
        let v = self.eval(m);
        if v.is_negative() {
            0
        } else {
            v.to_u64().unwrap_or(u64::MAX)
        }
    }

    pub fn add(&self, other: &PolyBound) -> PolyBound {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| self.coefficient(i) + other.coefficient(i))
            .collect();
        PolyBound::from_bigints(coeffs)
    }

    pub fn mul(&self, other: &PolyBound) -> PolyBound {
        if self.is_zero() || other.is_zero() {
            return PolyBound::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        PolyBound::from_bigints(coeffs)
    }

    /// `self(inner(x))`, exact.
    pub fn compose(&self, inner: &PolyBound) -> PolyBound {
        let mut acc = PolyBound::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner);
            acc = acc.add(&PolyBound::from_bigints(vec![c.clone()]));
        }
        acc
    }
}

impl fmt::Display for PolyBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.magnitude();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            if i >= 1 {
                write!(f, "x")?;
                if i > 1 {
                    write!(f, "^{i}")?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for PolyBound {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("bad polynomial {input:?}: {reason}")]
pub struct PolyParseError {
    pub input: String,
    pub reason: String,
}

impl FromStr for PolyBound {
    type Err = PolyParseError;

    /// Grammar (after whitespace stripping):
    ///
    /// ```text
    /// poly  := term (('+' | '-') term)*   with an optional leading sign
    /// term  := int | int 'x' pow | 'x' pow
    /// pow   := ('^' uint)?                 (omitted means exponent 1)
    /// int   := decimal digits
    /// ```
    fn from_str(s: &str) -> Result<Self, PolyParseError> {
        let err = |reason: &str| PolyParseError {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty"));
        }
        let bytes = compact.as_bytes();
        let mut pos = 0;
        let mut terms: Vec<(i64, usize)> = Vec::new();
        while pos < bytes.len() {
            let mut sign = 1i64;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -1;
                }
                pos += 1;
            } else if !terms.is_empty() {
                return Err(err("expected + or - between terms"));
            }
            let digits_start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let coeff: i64 = if pos > digits_start {
                compact[digits_start..pos]
                    .parse()
                    .map_err(|_| err("coefficient out of range"))?
            } else {
                1
            };
            let mut exp = 0usize;
            if pos < bytes.len() && bytes[pos] == b'x' {
                pos += 1;
                exp = 1;
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    let e_start = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    if pos == e_start {
                        return Err(err("missing exponent after ^"));
                    }
                    exp = compact[e_start..pos]
                        .parse()
                        .map_err(|_| err("exponent out of range"))?;
                }
            } else if pos == digits_start {
                return Err(err("expected a coefficient or x"));
            }
            terms.push((sign * coeff, exp));
        }
        let max_exp = terms.iter().map(|&(_, e)| e).max().unwrap_or(0);
        if max_exp > 64 {
            return Err(err("exponent larger than 64"));
        }
        let mut coeffs = vec![BigInt::zero(); max_exp + 1];
        for (c, e) in terms {
            coeffs[e] += BigInt::from(c);
        }
        Ok(PolyBound::from_bigints(coeffs))
    }
}

/// Monotone envelope: for `P` with positive leading coefficient, returns
/// `(sum of |coefficients|) * (x + 1)^degree`, which dominates `P` on all
/// integers `m >= 0` and is nondecreasing there.
pub fn monotone_dominator(p: &PolyBound) -> Result<PolyBound, EngineError> {
    if p.is_zero() || !p.leading().is_positive() {
        return Err(EngineError::NonPositiveLeading);
    }
    let k = p.degree();
    let s: BigInt = p.coeffs.iter().map(|c| c.abs()).sum();
    // (x + 1)^k expanded via binomials.
    let mut coeffs = vec![BigInt::zero(); k + 1];
    let mut binom = BigInt::one();
    for (i, slot) in coeffs.iter_mut().enumerate() {
        if i > 0 {
            binom = &binom * BigInt::from((k - i + 1) as u64) / BigInt::from(i as u64);
        }
        *slot = &binom * &s;
    }
    Ok(PolyBound::from_bigints(coeffs))
}

// ---------------------------------------------------------------------------
// Budget measurement
// ---------------------------------------------------------------------------

/// Which quantity the time budget is a function of.
pub enum BudgetKind<'a> {
    /// Steps at each node must stay within `P(n)`.
    Global(&'a PolyBound),
    /// Steps at each node must stay within `P` of that node's own view
    /// size in bits.
    LocalView(&'a PolyBound),
}

#[derive(Debug, Clone, Serialize)]
pub struct BudgetEntry {
    pub node: usize,
    pub steps: u64,
    pub bound: String,
    pub ratio: f64,
    pub within: bool,
}

/// Advisory budget report: measured steps against the evaluated bound.
#[derive(Debug, Clone, Serialize)]
pub struct BudgetReport {
    pub entries: Vec<BudgetEntry>,
    pub all_within: bool,
    pub worst_ratio: f64,
    pub worst_node: Option<usize>,
}

/// Compares each node's measured steps against the budget. `views` must be
/// the per-node views the report was produced from (used for the local-view
/// kind); `n` is the graph size.
pub fn within_budget(
    report: &RunReport,
    kind: BudgetKind<'_>,
    n: usize,
    views: &[View],
) -> BudgetReport {
    let mut entries = Vec::with_capacity(report.per_node.len());
    let mut all_within = true;
    let mut worst_ratio = 0.0f64;
    let mut worst_node = None;
    for (node, run) in report.per_node.iter().enumerate() {
        let bound: BigInt = match &kind {
            BudgetKind::Global(p) => p.eval(n as u64),
            BudgetKind::LocalView(p) => p.eval(views[node].bits()),
        };
        let steps_big = BigInt::from(run.steps);
        let within = !bound.is_negative() && steps_big <= bound;
        let ratio = if bound.is_zero() || bound.is_negative() {
            if run.steps == 0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            run.steps as f64 / bound.to_f64().unwrap_or(f64::MAX)
        };
        if worst_node.is_none() || ratio > worst_ratio {
            worst_ratio = ratio;
            worst_node = Some(node);
        }
        all_within &= within;
        entries.push(BudgetEntry {
            node,
            steps: run.steps,
            bound: bound.to_string(),
            ratio,
            within,
        });
    }
    BudgetReport {
        entries,
        all_within,
        worst_ratio,
        worst_node,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{assign_ids, IdMode, Label};

    fn always_accept() -> Verifier {
        Verifier::new("accept-all", 0, |_| Ok(Verdict::Accept))
    }

    /// Accepts iff the root's first label field exceeds its certificate
    /// length.
    fn label_gt_cert_len(radius: usize) -> Verifier {
        Verifier::new("label-gt-cert-len", radius, |view| {
            let label = view.label_field(0, 0).unwrap_or(0);
            let clen = view.cert_len(0);
            view.op();
            Ok(Verdict::of(label > clen))
        })
    }

    fn path(values: &[u64]) -> (Configuration, IdAssignment) {
        let cfg = Configuration::labeled_path(values).unwrap();
        let n = cfg.node_count();
        let ids: Vec<u64> = (1..=n as u64).collect();
        let ids = assign_ids(&cfg, &ids, IdMode::GlobalUnique, n as u64).unwrap();
        (cfg, ids)
    }

    #[test]
    fn run_checks_radius_and_n() {
        let (cfg, ids) = path(&[5]);
        let view = extract_view(&cfg, &ids, None, 0, 1).unwrap();
        let v = label_gt_cert_len(0);
        assert_eq!(
            run(&v, &view, None),
            Err(EngineError::RadiusMismatch { expected: 0, got: 1 })
        );
        let aware = Verifier::new_n_aware("needs-n", 0, |view| {
            Ok(Verdict::of(view.graph_size().is_some()))
        });
        let view0 = extract_view(&cfg, &ids, None, 0, 0).unwrap();
        assert_eq!(run(&aware, &view0, None), Err(EngineError::MissingN));
        assert!(run(&aware, &view0, Some(1)).unwrap().0.is_accept());
    }

    #[test]
    fn threshold_rule_and_determinism() {
        let (cfg, ids) = path(&[5]);
        let mut certs = CertificateAssignment::empty(1);
        certs.set(0, BitString::parse("101").unwrap()).unwrap();
        let view = extract_view(&cfg, &ids, Some(&certs), 0, 0).unwrap();
        let v = label_gt_cert_len(0);
        // label 5 > certificate length 3
        let first = run(&v, &view, None).unwrap();
        assert_eq!(first.0, Verdict::Accept);
        let again = run(&v, &view, None).unwrap();
        assert_eq!(first, again);

        let (cfg2, ids2) = path(&[2]);
        let mut certs2 = CertificateAssignment::empty(1);
        certs2.set(0, BitString::parse("101").unwrap()).unwrap();
        let view2 = extract_view(&cfg2, &ids2, Some(&certs2), 0, 0).unwrap();
        assert_eq!(run(&v, &view2, None).unwrap().0, Verdict::Reject);
    }

    #[test]
    fn run_all_aggregates_conjunctively() {
        // Proper-coloring-style rule at radius 1: reject if any ball
        // neighbor of the root shares its first label field.
        let coloring = Verifier::new("distinct-from-neighbors", 1, |view| {
            let own = view.label_field(0, 0);
            for j in view.neighbors(0) {
                view.op();
                if view.label_field(j, 0) == own {
                    return Ok(Verdict::Reject);
                }
            }
            Ok(Verdict::Accept)
        });
        let tri = Configuration::build(
            3,
            &[(0, 1), (1, 2), (0, 2)],
            vec![Label::of(&[1]), Label::of(&[2]), Label::of(&[3])],
        )
        .unwrap();
        let ids = assign_ids(&tri, &[1, 2, 3], IdMode::GlobalUnique, 3).unwrap();
        let report = run_all(&coloring, &tri, &ids, None).unwrap();
        assert!(report.accepted());

        let bad = Configuration::build(
            3,
            &[(0, 1), (1, 2), (0, 2)],
            vec![Label::of(&[1]), Label::of(&[1]), Label::of(&[2])],
        )
        .unwrap();
        let report = run_all(&coloring, &bad, &ids, None).unwrap();
        assert!(!report.accepted());
        assert_eq!(report.rejecting_nodes(), vec![0, 1]);

        let single = Configuration::labeled_path(&[1]).unwrap();
        let ids1 = assign_ids(&single, &[1], IdMode::GlobalUnique, 1).unwrap();
        let report = run_all(&always_accept(), &single, &ids1, None).unwrap();
        assert_eq!(report.per_node.len(), 1);
        assert!(report.accepted());
    }

    #[test]
    fn poly_eval_examples() {
        assert_eq!(PolyBound::x().eval(5), BigInt::from(5));
        let p = PolyBound::new(&[1, -4, 1]); // x^2 - 4x + 1
        assert_eq!(p.eval(1), BigInt::from(-2));
        assert_eq!(PolyBound::zero().eval(7), BigInt::zero());
    }

    #[test]
    fn poly_parse_and_display() {
        let p: PolyBound = "2x^2+3".parse().unwrap();
        assert_eq!(p, PolyBound::new(&[3, 0, 2]));
        assert_eq!(p.to_string(), "2x^2 + 3");
        let q: PolyBound = "x^2 - 4x + 1".parse().unwrap();
        assert_eq!(q, PolyBound::new(&[1, -4, 1]));
        assert_eq!("x".parse::<PolyBound>().unwrap(), PolyBound::x());
        assert_eq!("7".parse::<PolyBound>().unwrap(), PolyBound::constant(7));
        assert_eq!("-x+2".parse::<PolyBound>().unwrap(), PolyBound::new(&[2, -1]));
        assert!("".parse::<PolyBound>().is_err());
        assert!("2y".parse::<PolyBound>().is_err());
        assert!("x^".parse::<PolyBound>().is_err());
    }

    #[test]
    fn dominator_examples() {
        // x^2 -> (x+1)^2
        let p = PolyBound::new(&[0, 0, 1]);
        assert_eq!(monotone_dominator(&p).unwrap(), PolyBound::new(&[1, 2, 1]));
        // x^2 - 4x + 1 -> 6(x+1)^2
        let p = PolyBound::new(&[1, -4, 1]);
        assert_eq!(monotone_dominator(&p).unwrap(), PolyBound::new(&[6, 12, 6]));
        // x^3 + x^2 - 100x -> 102(x+1)^3
        let p = PolyBound::new(&[0, -100, 1, 1]);
        assert_eq!(
            monotone_dominator(&p).unwrap(),
            PolyBound::new(&[102, 306, 306, 102])
        );
        assert_eq!(
            monotone_dominator(&PolyBound::new(&[5, -1])),
            Err(EngineError::NonPositiveLeading)
        );
        assert_eq!(
            monotone_dominator(&PolyBound::zero()),
            Err(EngineError::NonPositiveLeading)
        );
    }

    #[test]
    fn dominator_dominates_exhaustively() {
        for p in [
            PolyBound::new(&[0, 0, 1]),
            PolyBound::new(&[1, -4, 1]),
            PolyBound::new(&[0, -100, 1, 1]),
        ] {
            let bar = monotone_dominator(&p).unwrap();
            let mut prev = bar.eval(0);
            assert!(prev >= p.eval(0));
            for m in 1..=1000u64 {
                let cur = bar.eval(m);
                assert!(cur >= p.eval(m), "{bar} < {p} at {m}");
                assert!(cur >= prev, "{bar} not monotone at {m}");
                prev = cur;
            }
        }
    }

    #[test]
    fn poly_compose() {
        // (x + 1) composed with 2x^2 gives 2x^2 + 1.
        let q: PolyBound = "x+1".parse().unwrap();
        let inner = PolyBound::new(&[0, 0, 2]);
        assert_eq!(q.compose(&inner), PolyBound::new(&[1, 0, 2]));
        // (x^2 + 1) o (x + 1) = x^2 + 2x + 2
        let a = PolyBound::new(&[1, 0, 1]);
        let b = PolyBound::new(&[1, 1]);
        assert_eq!(a.compose(&b), PolyBound::new(&[2, 2, 1]));
    }

    #[test]
    fn budget_measurement() {
        let (cfg, ids) = path(&[5, 5, 5]);
        let v = label_gt_cert_len(0);
        let (report, views) = run_all_with_views(&v, &cfg, &ids, None).unwrap();
        // 3 ticks per node: two field reads plus one comparison.
        assert!(report.per_node.iter().all(|r| r.steps == 3));
        let p = PolyBound::new(&[0, 0, 1]); // x^2
        let budget = within_budget(&report, BudgetKind::LocalView(&p), 3, &views);
        assert!(budget.all_within);
        let tight = PolyBound::constant(2);
        let budget = within_budget(&report, BudgetKind::Global(&tight), 3, &views);
        assert!(!budget.all_within);
        assert!(budget.worst_ratio > 1.0);
    }

    #[test]
    fn exponential_verifier_exceeds_polynomial_budget() {
        // Charges 2^label_bits ticks.
        let expo = Verifier::new("exponential", 0, |view| {
            let bits = view.raw().label_bits();
            view.ops(1u64 << bits.min(40));
            Ok(Verdict::Accept)
        });
        let (cfg, ids) = path(&[1 << 12]);
        let (report, views) = run_all_with_views(&expo, &cfg, &ids, None).unwrap();
        let p = PolyBound::new(&[0, 0, 1]); // x^2 of the view bits
        let budget = within_budget(&report, BudgetKind::LocalView(&p), 1, &views);
        assert!(!budget.all_within);
    }
}
