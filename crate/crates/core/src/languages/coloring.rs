//! Proper coloring (labels as colors) and colorability (colors as
//! certificates).

use std::sync::Arc;

use crate::bits::{bit_len, BitString};
use crate::engine::{PolyBound, Verdict, Verifier};
use crate::graph::{CertificateAssignment, Configuration};
use crate::semantics::ClassSpec;

use super::{Language, LanguageError, Shape};

/// True iff every label is a color in `{1..k}` differing from all
/// neighbors'.
pub fn coloring_membership(cfg: &Configuration, k: u64) -> bool {
    let in_range = cfg
        .labels()
        .iter()
        .all(|l| l.field0().is_some_and(|c| c >= 1 && c <= k));
    in_range
        && cfg
            .edges()
            .all(|(u, v)| cfg.label(u).field0() != cfg.label(v).field0())
}

/// Radius-1 rule: accept iff the own color is in range and differs from
/// every neighbor's.
pub fn coloring_verifier(k: u64) -> Verifier {
    Verifier::new(format!("coloring-{k}"), 1, move |view| {
        let own = view.label_field(0, 0);
        view.ops(2);
        if !own.is_some_and(|c| c >= 1 && c <= k) {
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

pub fn coloring_language(k: u64) -> Language {
    Language::new(
        "coloring",
        Shape::Any,
        Arc::new(move |cfg| coloring_membership(cfg, k)),
    )
    .with_verifier(
        "coloring",
        coloring_verifier(k),
        ClassSpec::ld().with_time_bound(
            PolyBound::new(&[16, 8]),
            crate::semantics::BoundScope::GlobalN,
        ),
    )
}

/// Certificate width for colors in `{1..k}`: minimal binary for `k - 1`.
pub fn color_cert_width(k: u64) -> usize {
    bit_len(k.saturating_sub(1)) as usize
}

/// Encodes color `c` in `{1..k}` as `c - 1` in exactly
/// [`color_cert_width`] bits; `k = 1` encodes as the empty string.
pub fn encode_color(c: u64, k: u64) -> Option<BitString> {
    if c < 1 || c > k {
        return None;
    }
    BitString::from_value_width(c - 1, color_cert_width(k))
}

/// Exact-width decode; anything else is malformed.
pub fn decode_color(bits: &BitString, k: u64) -> Option<u64> {
    if bits.len() != color_cert_width(k) {
        return None;
    }
    let v = bits.to_value()?;
    (v < k).then_some(v + 1)
}

/// True iff the graph admits a proper `k`-coloring (labels are ignored).
/// Backtracking in lexicographic order over color vectors.
pub fn colorability_membership(cfg: &Configuration, k: u64) -> bool {
    first_proper_coloring(cfg, k).is_some()
}

fn first_proper_coloring(cfg: &Configuration, k: u64) -> Option<Vec<u64>> {
    fn go(cfg: &Configuration, k: u64, colors: &mut Vec<u64>) -> bool {
        let v = colors.len();
        if v == cfg.node_count() {
            return true;
        }
        'candidates: for c in 1..=k {
            for &u in cfg.neighbors(v) {
                if u < v && colors[u] == c {
                    continue 'candidates;
                }
            }
            colors.push(c);
            if go(cfg, k, colors) {
                return true;
            }
            colors.pop();
        }
        false
    }
    let mut colors = Vec::with_capacity(cfg.node_count());
    go(cfg, k, &mut colors).then_some(colors)
}

/// Radius-1 rule over certificates: accept iff the own certificate and all
/// neighbors' decode to colors and the own color differs from each
/// neighbor's.
pub fn colorability_verifier(k: u64) -> Verifier {
    Verifier::new(format!("colorability-{k}"), 1, move |view| {
        let own = read_color(view, 0, k);
        view.op();
        let Some(own) = own else {
            return Ok(Verdict::Reject);
        };
        for j in view.neighbors(0) {
            view.op();
            match read_color(view, j, k) {
                Some(c) if c != own => {}
                _ => return Ok(Verdict::Reject),
            }
        }
        Ok(Verdict::Accept)
    })
}

fn read_color(view: &crate::engine::MeteredView<'_>, i: usize, k: u64) -> Option<u64> {
    let width = color_cert_width(k);
    let len = view.cert_len(i);
    if len != width as u64 {
        return None;
    }
    let mut value = 0u64;
    for j in 0..width {
        value = value << 1 | view.cert_bit(i, j as u64) as u64;
    }
    view.ops(width as u64);
    (value < k).then_some(value + 1)
}

/// Emits the lexicographically first proper coloring as certificates.
pub fn colorability_prover(
    cfg: &Configuration,
    k: u64,
) -> Result<CertificateAssignment, LanguageError> {
    let colors = first_proper_coloring(cfg, k).ok_or(LanguageError::NotColorable(k))?;
    let certs = colors
        .iter()
        .map(|&c| encode_color(c, k).expect("colors from the search are in range"))
        .collect();
    Ok(CertificateAssignment::new(certs).expect("color certificates are short"))
}

pub fn colorability_language(k: u64) -> Language {
    let width = color_cert_width(k) as i64;
    Language::new(
        "colorability",
        Shape::Any,
        Arc::new(move |cfg| colorability_membership(cfg, k)),
    )
    .with_verifier(
        "colorability",
        colorability_verifier(k),
        ClassSpec::sigma1_plocal(PolyBound::constant(width)),
    )
    .with_prover(Arc::new(move |cfg| colorability_prover(cfg, k)))
}
