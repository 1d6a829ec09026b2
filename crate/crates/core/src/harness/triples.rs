//! Builders for the indistinguishability witnesses: two members and a
//! non-member whose nodes are locally indistinguishable from them.

use serde::Serialize;

use crate::bits::BitString;
use crate::engine::PolyBound;
use crate::graph::Configuration;
use crate::languages::build_path_l;

use super::{HarnessError, Identified};

/// The member/member/non-member pattern behind the threshold separations.
/// `n` is the base size (`2r + 1`, the smallest size exceeding twice the
/// radius); ids are consecutive from 1 in all three graphs.
#[derive(Debug, Clone)]
pub struct Triple {
    pub g1: Identified,
    pub g2: Identified,
    pub g3: Identified,
    pub n: usize,
}

impl Triple {
    pub fn graphs(&self) -> [&Identified; 3] {
        [&self.g1, &self.g2, &self.g3]
    }
}

/// Triple for the all-labels-above-n language: `g1` is an n-node member
/// with labels `n+1, n+2, ..., n+2`; `g2` an (n+1)-node member of all
/// `n+2`; `g3` the (n+1)-node non-member `n+1, n+2, ..., n+2`. At radius r
/// the left r+1 nodes of `g3` see exactly `g1`, the rest see exactly `g2`.
pub fn agtg_triple(r: usize) -> Result<Triple, HarnessError> {
    if r < 1 {
        return Err(HarnessError::BadParams("radius must be at least 1".into()));
    }
    let n = 2 * r + 1;
    let n64 = n as u64;
    let mut g1_labels = vec![n64 + 2; n];
    g1_labels[0] = n64 + 1;
    let g2_labels = vec![n64 + 2; n + 1];
    let mut g3_labels = vec![n64 + 2; n + 1];
    g3_labels[0] = n64 + 1;
    Ok(Triple {
        g1: Identified::consecutive(Configuration::labeled_path(&g1_labels)?),
        g2: Identified::consecutive(Configuration::labeled_path(&g2_labels)?),
        g3: Identified::consecutive(Configuration::labeled_path(&g3_labels)?),
        n,
    })
}

/// Side condition carried by the below-n triple: the certificate bound must
/// not shrink when the graph grows by one node.
#[derive(Debug, Clone, Serialize)]
pub struct BoundCheck {
    pub n: u64,
    pub q_at_n: String,
    pub q_at_n_plus_1: String,
    pub holds: bool,
}

/// Triple for the all-labels-below-n language: `g1` is an (n+1)-node member
/// `n, n-1, ..., n-1`; `g2` the n-node member of all `n-1`; `g3` the n-node
/// non-member `n, n-1, ..., n-1`. Errors if `Q(n+1) < Q(n)`: transferred
/// assignments must stay within the larger graph's budget.
pub fn altg_triple(r: usize, q: &PolyBound) -> Result<(Triple, BoundCheck), HarnessError> {
    if r < 1 {
        return Err(HarnessError::BadParams("radius must be at least 1".into()));
    }
    let n = 2 * r + 1;
    let n64 = n as u64;
    let at_n = q.eval(n64);
    let at_n1 = q.eval(n64 + 1);
    let check = BoundCheck {
        n: n64,
        q_at_n: at_n.to_string(),
        q_at_n_plus_1: at_n1.to_string(),
        holds: at_n1 >= at_n,
    };
    if !check.holds {
        return Err(HarnessError::BoundNotMonotoneAtN {
            n: n64,
            at_n: check.q_at_n,
            at_n1: check.q_at_n_plus_1,
        });
    }
    let mut g1_labels = vec![n64 - 1; n + 1];
    g1_labels[0] = n64;
    let g2_labels = vec![n64 - 1; n];
    let mut g3_labels = vec![n64 - 1; n];
    g3_labels[0] = n64;
    Ok((
        Triple {
            g1: Identified::consecutive(Configuration::labeled_path(&g1_labels)?),
            g2: Identified::consecutive(Configuration::labeled_path(&g2_labels)?),
            g3: Identified::consecutive(Configuration::labeled_path(&g3_labels)?),
            n,
        },
        check,
    ))
}

/// Two countdown paths differing only in the endpoint word. Nodes farther
/// than the verification radius from the word cannot tell them apart.
pub fn path_l_pair(
    n: usize,
    psi: &BitString,
    psi_prime: &BitString,
) -> Result<(Identified, Identified), HarnessError> {
    let g1 = build_path_l(psi, n)?;
    let g2 = build_path_l(psi_prime, n)?;
    Ok((Identified::consecutive(g1), Identified::consecutive(g2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::languages::{agtg_membership, altg_membership, palindrome_oracle, path_l_membership};

    #[test]
    fn agtg_triple_r1_matches_expected_pattern() {
        let t = agtg_triple(1).unwrap();
        assert_eq!(t.n, 3);
        let labels = |g: &Identified| -> Vec<u64> {
            g.cfg.labels().iter().map(|l| l.field0().unwrap()).collect()
        };
        assert_eq!(labels(&t.g1), vec![4, 5, 5]);
        assert_eq!(labels(&t.g2), vec![5, 5, 5, 5]);
        assert_eq!(labels(&t.g3), vec![4, 5, 5, 5]);
        assert!(agtg_membership(&t.g1.cfg));
        assert!(agtg_membership(&t.g2.cfg));
        assert!(!agtg_membership(&t.g3.cfg)); // 4 is not above 4
        assert_eq!(t.g1.ids.ids(), &[1, 2, 3]);
    }

    #[test]
    fn altg_triple_r1_matches_expected_pattern() {
        let (t, check) = altg_triple(1, &PolyBound::x()).unwrap();
        let labels = |g: &Identified| -> Vec<u64> {
            g.cfg.labels().iter().map(|l| l.field0().unwrap()).collect()
        };
        assert_eq!(labels(&t.g1), vec![3, 2, 2, 2]);
        assert_eq!(labels(&t.g2), vec![2, 2, 2]);
        assert_eq!(labels(&t.g3), vec![3, 2, 2]);
        assert!(check.holds); // 4 >= 3
        assert!(altg_membership(&t.g1.cfg));
        assert!(altg_membership(&t.g2.cfg));
        assert!(!altg_membership(&t.g3.cfg));
    }

    #[test]
    fn altg_triple_rejects_shrinking_bound() {
        // Q(x) = 8 - x shrinks: Q(4) = 4 < Q(3) = 5.
        let q = PolyBound::new(&[8, -1]);
        assert!(matches!(
            altg_triple(1, &q),
            Err(HarnessError::BoundNotMonotoneAtN { n: 3, .. })
        ));
    }

    #[test]
    fn memberships_hold_for_larger_radii() {
        for r in 1..=3 {
            let t = agtg_triple(r).unwrap();
            assert!(agtg_membership(&t.g1.cfg));
            assert!(agtg_membership(&t.g2.cfg));
            assert!(!agtg_membership(&t.g3.cfg));
            let (t, _) = altg_triple(r, &PolyBound::x()).unwrap();
            assert!(altg_membership(&t.g1.cfg));
            assert!(altg_membership(&t.g2.cfg));
            assert!(!altg_membership(&t.g3.cfg));
        }
    }

    #[test]
    fn path_pair_builds_members_and_non_members() {
        let oracle = palindrome_oracle();
        let psi = BitString::parse("00").unwrap();
        let psi_prime = BitString::parse("01").unwrap();
        let (g1, g2) = path_l_pair(8, &psi, &psi_prime).unwrap();
        assert!(path_l_membership(&g1.cfg, &oracle));
        assert!(!path_l_membership(&g2.cfg, &oracle));
        // Identical words give identical configurations.
        let (a, b) = path_l_pair(8, &psi, &psi).unwrap();
        assert_eq!(a.cfg, b.cfg);
    }
}
