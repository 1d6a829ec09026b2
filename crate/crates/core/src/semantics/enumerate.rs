//! Certificate-space enumeration in a pinned, reproducible order.
//!
//! Assignments are ordered by total length ascending; within one total, by
//! the per-node length vector lexicographically (node 0 most significant);
//! within one length vector, by the concatenated bit values
//! lexicographically, node 0 most significant and bits compared left to
//! right with `0 < 1`. Witnesses reported by the quantifier engines are
//! always minimal in this order.

use num_bigint::BigUint;
use num_traits::One;

use crate::bits::BitString;
use crate::graph::CertificateAssignment;

/// Number of assignments where node `v` gets any string of length
/// `0..=bounds[v]`: the product of `2^(b+1) - 1`.
pub fn certificate_count(bounds: &[u64]) -> BigUint {
    let mut count = BigUint::one();
    for &b in bounds {
        count *= (BigUint::one() << (b + 1)) - BigUint::one();
    }
    count
}

/// Streaming enumerator over all certificate assignments within per-node
/// length bounds. Restartable by construction; `Clone` splits the stream.
#[derive(Debug, Clone)]
pub struct CertEnum {
    bounds: Vec<u64>,
    lens: Vec<u64>,
    bits: Vec<BitString>,
    total: u64,
    max_total: u64,
    state: State,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum State {
    Fresh,
    Running,
    Done,
}

impl CertEnum {
    pub fn new(bounds: &[u64]) -> Self {
        let max_total = bounds.iter().sum();
        CertEnum {
            bounds: bounds.to_vec(),
            lens: vec![0; bounds.len()],
            bits: vec![BitString::new(); bounds.len()],
            total: 0,
            max_total,
            state: State::Fresh,
        }
    }

    pub fn bounds(&self) -> &[u64] {
        &self.bounds
    }

    /// The current assignment. Only valid after `advance` returned true.
    pub fn current(&self) -> &[BitString] {
        &self.bits
    }

    /// Clones the current assignment into a [`CertificateAssignment`] with
    /// the enumerator's bounds attached.
    pub fn current_assignment(&self) -> CertificateAssignment {
        CertificateAssignment::with_bounds(self.bits.clone(), Some(self.bounds.clone()))
            .expect("enumerated certificates satisfy their own bounds")
    }

    /// Steps to the next assignment in order. The first call yields the
    /// all-empty assignment. Returns false when the space is exhausted.
    pub fn advance(&mut self) -> bool {
        match self.state {
            State::Fresh => {
                // Total 0: the all-empty assignment, always first.
                self.state = State::Running;
                true
            }
            State::Done => false,
            State::Running => {
                if self.advance_bits() {
                    return true;
                }
                if self.advance_lens() {
                    return true;
                }
                // Next total length.
                loop {
                    if self.total >= self.max_total {
                        self.state = State::Done;
                        return false;
                    }
                    self.total += 1;
                    if self.first_lens_for_total() {
                        return true;
                    }
                }
            }
        }
    }

    /// Multi-node odometer over the bit values, lengths fixed. Node n-1
    /// is least significant.
    fn advance_bits(&mut self) -> bool {
        for v in (0..self.bits.len()).rev() {
            if self.bits[v].increment_fixed_width() {
                return true;
            }
            // wrapped to zeros; carry on
        }
        false
    }

    /// Advances the length vector to the next composition of `total` in
    /// lexicographic order, resetting all bits to zeros.
    fn advance_lens(&mut self) -> bool {
        let n = self.lens.len();
        if n == 0 {
            return false;
        }
        let mut suffix_sum: u64 = 0;
        for p in (0..n).rev() {
            suffix_sum += self.lens[p];
            let at_p = self.lens[p];
            // Increment position p, redistribute the rest minimally.
            if p + 1 < n && at_p < self.bounds[p] && suffix_sum > at_p {
                self.lens[p] += 1;
                let rest = suffix_sum - at_p - 1;
                if self.fill_min_lex(p + 1, rest) {
                    self.reset_bits();
                    return true;
                }
                self.lens[p] -= 1;
            }
        }
        false
    }

    /// Smallest-lex distribution of `amount` over positions `from..`.
    /// Returns false if it does not fit.
    fn fill_min_lex(&mut self, from: usize, mut amount: u64) -> bool {
        let n = self.lens.len();
        let mut tail_capacity: Vec<u64> = vec![0; n + 1];
        for i in (from..n).rev() {
            tail_capacity[i] = tail_capacity[i + 1] + self.bounds[i];
        }
        if amount > tail_capacity[from] {
            return false;
        }
        for i in from..n {
            let after = tail_capacity[i + 1];
            let here = amount.saturating_sub(after).min(self.bounds[i]);
            self.lens[i] = here;
            amount -= here;
        }
        amount == 0
    }

    fn first_lens_for_total(&mut self) -> bool {
        if self.fill_min_lex(0, self.total) {
            self.reset_bits();
            true
        } else {
            false
        }
    }

    fn reset_bits(&mut self) {
        for (v, b) in self.bits.iter_mut().enumerate() {
            *b = BitString::zeros(self.lens[v] as usize);
        }
    }
}

/// Convenience iterator over full [`CertificateAssignment`] values. The
/// quantifier engines use [`CertEnum`] directly to avoid per-step clones.
pub fn enumerate_certificates(bounds: &[u64]) -> impl Iterator<Item = CertificateAssignment> {
    let mut e = CertEnum::new(bounds);
    std::iter::from_fn(move || {
        if e.advance() {
            Some(e.current_assignment())
        } else {
            None
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn collect_strings(bounds: &[u64]) -> Vec<Vec<String>> {
        enumerate_certificates(bounds)
            .map(|a| a.certs().iter().map(|c| c.to_string()).collect())
            .collect()
    }

    #[test]
    fn single_node_bound_one() {
        assert_eq!(collect_strings(&[1]), vec![vec![""], vec!["0"], vec!["1"]]);
    }

    #[test]
    fn single_node_bound_two_is_length_then_lex() {
        assert_eq!(
            collect_strings(&[2]),
            vec![vec![""], vec!["0"], vec!["1"], vec!["00"], vec!["01"], vec!["10"], vec!["11"]]
        );
    }

    #[test]
    fn two_nodes_bound_one_each() {
        let all = collect_strings(&[1, 1]);
        assert_eq!(all.len(), 9);
        assert_eq!(
            all,
            vec![
                vec!["", ""],
                vec!["", "0"],
                vec!["", "1"],
                vec!["0", ""],
                vec!["1", ""],
                vec!["0", "0"],
                vec!["0", "1"],
                vec!["1", "0"],
                vec!["1", "1"],
            ]
        );
    }

    #[test]
    fn bound_zero_single_assignment() {
        assert_eq!(collect_strings(&[0, 0, 0]), vec![vec!["", "", ""]]);
    }

    #[test]
    fn counts_match_formula() {
        assert_eq!(certificate_count(&[2]), BigUint::from(7u32));
        assert_eq!(certificate_count(&[2, 2]), BigUint::from(49u32));
        assert_eq!(certificate_count(&[]), BigUint::from(1u32));
        for bounds in [vec![0u64], vec![1, 2], vec![2, 0, 1], vec![3, 3]] {
            let count = enumerate_certificates(&bounds).count();
            assert_eq!(BigUint::from(count), certificate_count(&bounds), "{bounds:?}");
        }
    }

    #[test]
    fn order_is_total_then_length_vector_then_bits() {
        fn key(a: &CertificateAssignment) -> (usize, Vec<usize>, Vec<String>) {
            let lens: Vec<usize> = a.certs().iter().map(|c| c.len()).collect();
            (
                lens.iter().sum(),
                lens,
                a.certs().iter().map(|c| c.to_string()).collect(),
            )
        }
        for bounds in [vec![1u64, 2], vec![2, 2], vec![3, 1, 2]] {
            let all: Vec<CertificateAssignment> = enumerate_certificates(&bounds).collect();
            for pair in all.windows(2) {
                assert!(
                    key(&pair[0]) < key(&pair[1]),
                    "order violated: {:?} then {:?}",
                    pair[0],
                    pair[1]
                );
            }
        }
    }

    #[test]
    fn enumerator_is_restartable() {
        let first: Vec<_> = collect_strings(&[1, 1]);
        let second: Vec<_> = collect_strings(&[1, 1]);
        assert_eq!(first, second);
    }
}
