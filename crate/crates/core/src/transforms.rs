//! Verifier-to-verifier simulations: compiling away the universal
//! certificate quantifier of a view-bounded verifier at the cost of
//! doubling the locality radius.
//!
//! Both transforms rest on the same geometric fact: inside a radius-2r
//! view, the exact radius-r view of every node at distance at most r from
//! the root is reconstructible, because shortest paths between nodes of the
//! inner ball never leave the outer ball. That makes each inner node's
//! certificate-length budget (a polynomial in its own certificate-free
//! view size) computable by the simulating node.

use num_bigint::BigUint;
use std::collections::HashMap;

use crate::bits::BitString;
use crate::engine::{
    monotone_dominator, run_with_certs, CertOracle, CertSource, DecideError, EngineError,
    MeteredView, PolyBound, Verdict, Verifier,
};
use crate::semantics::{certificate_count, CertEnum};
use crate::view::View;

/// Inner-ball context shared by both transforms: the nodes of the root's
/// distance-r ball in the outer view, their certificate budgets, and the
/// root's reconstructed radius-r view.
struct InnerBall {
    /// (outer view index, source node) of each inner-ball member.
    members: Vec<(usize, usize)>,
    /// Certificate-length budget per member, aligned with `members`.
    budgets: Vec<u64>,
    /// The root's radius-r view, certificate-free.
    root_view: View,
    max_source: usize,
}

fn inner_ball(outer: &View, r: usize, q: &PolyBound) -> InnerBall {
    let mut members = Vec::new();
    let mut budgets = Vec::new();
    let mut max_source = 0;
    for i in 0..outer.node_count() {
        max_source = max_source.max(outer.source_node(i));
        if outer.node(i).distance <= r {
            let sub = outer.sub_view(i, r).with_certs(None);
            members.push((i, outer.source_node(i)));
            budgets.push(q.eval_budget(sub.bits()));
        }
    }
    let root_view = outer.sub_view(0, r).with_certs(None);
    InnerBall {
        members,
        budgets,
        root_view,
        max_source,
    }
}

/// Compiles a view-bounded universal-certificate verifier into a
/// certificate-free verifier of doubled radius: the node simulates `a` on
/// itself under every certificate assignment to its distance-r ball within
/// the per-node budgets `q`, and accepts iff every simulation accepts.
/// `cap` bounds the per-call enumeration.
pub fn pi1lp_to_ld(a: &Verifier, q: &PolyBound, cap: u64) -> Verifier {
    let r = a.radius();
    let inner = a.clone();
    let q = q.clone();
    Verifier::new(format!("ld-sim-{}", a.name()), 2 * r, move |view| {
        let ball = inner_ball(view.raw(), r, &q);
        let space = certificate_count(&ball.budgets);
        if space > BigUint::from(cap) {
            return Err(DecideError::SpaceTooLarge { needed: space, cap });
        }
        // Scatter buffer indexed by source node.
        let mut by_source = vec![BitString::new(); ball.max_source + 1];
        let mut e = CertEnum::new(&ball.budgets);
        while e.advance() {
            for (slot, (_, source)) in e.current().iter().zip(&ball.members) {
                by_source[*source] = slot.clone();
            }
            let (verdict, steps) = run_with_certs(
                &inner,
                &ball.root_view,
                CertSource::Slice(&by_source),
                None,
            )
            .map_err(engine_to_decide)?;
            view.ops(steps + 1);
            if !verdict.is_accept() {
                return Ok(Verdict::Reject);
            }
        }
        Ok(Verdict::Accept)
    })
}

fn engine_to_decide(e: EngineError) -> DecideError {
    match e {
        EngineError::Decide(d) => d,
        // Radius and n preconditions hold by construction of the
        // simulation; anything else would be an internal logic error.
        other => panic!("inner simulation failed: {other}"),
    }
}

/// Pass-through certificate source: the simulated verifier reads the outer
/// run's certificates, so only fields it actually touches are read (which
/// keeps symbolic exploration of the transformed verifier small).
struct OuterCerts<'a, 'b> {
    outer: &'a MeteredView<'b>,
    index_of_source: HashMap<usize, usize>,
}

impl CertOracle for OuterCerts<'_, '_> {
    fn cert_len(&self, source_node: usize) -> u64 {
        self.outer.cert_len(self.index_of_source[&source_node])
    }

    fn cert_bit(&self, source_node: usize, bit: u64) -> bool {
        self.outer.cert_bit(self.index_of_source[&source_node], bit)
    }
}

/// Compiles a view-bounded universal-certificate verifier into a
/// graph-size-bounded one of doubled radius. The new certificate bound is
/// `R(x) = Q'(x^2 * h(x))` where `Q'` is the monotone envelope of `q` and
/// `h` bounds label sizes. The verifier screens first: an in-ball
/// certificate longer than its owner's view-size budget makes the node
/// accept outright; otherwise it runs `a` on the actual certificates.
pub fn pi1lp_to_pi1plocal(
    a: &Verifier,
    q: &PolyBound,
    h: &PolyBound,
) -> Result<(Verifier, PolyBound), EngineError> {
    let q_prime = monotone_dominator(q)?;
    let x_sq_h = PolyBound::new(&[0, 0, 1]).mul(h);
    let r_bound = q_prime.compose(&x_sq_h);
    let r = a.radius();
    let inner = a.clone();
    let q = q.clone();
    let verifier = Verifier::new(format!("plocal-sim-{}", a.name()), 2 * r, move |view| {
        let ball = inner_ball(view.raw(), r, &q);
        // Screening: oversized certificates cannot occur in the simulated
        // class, so their presence proves the instance is being probed
        // outside it; accept.
        for ((i, _), budget) in ball.members.iter().zip(&ball.budgets) {
            view.op();
            if view.cert_len(*i) > *budget {
                return Ok(Verdict::Accept);
            }
        }
        let index_of_source: HashMap<usize, usize> = ball
            .members
            .iter()
            .map(|&(i, source)| (source, i))
            .collect();
        let oracle = OuterCerts {
            outer: view,
            index_of_source,
        };
        let (verdict, _) = run_with_certs(
            &inner,
            &ball.root_view,
            CertSource::Oracle(&oracle),
            None,
        )
        .map_err(engine_to_decide)?;
        view.op();
        Ok(verdict)
    });
    Ok((verifier, r_bound))
}
