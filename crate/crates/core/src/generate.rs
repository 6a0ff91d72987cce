//! Isomorph-free generation of small posets.
//!
//! Every poset on `n` elements arises from one on `n - 1` elements by adding
//! a maximal element whose strict down-set is some down-closed subset, so we
//! extend each class representative in every possible way and keep one poset
//! per canonical code.

use std::collections::HashSet;

use crate::bits::{BitMatrix, BitSet};
use crate::error::Result;
use crate::iso::canonical_poset;
use crate::limits::Limits;
use crate::poset::{index_labels, FinitePoset};

/// One representative per isomorphism class of posets with exactly `n` elements.
///
/// Representatives are in canonical labelling, sorted by canonical code.
pub fn posets_of_size(n: usize, limits: &Limits) -> Result<Vec<FinitePoset>> {
    Limits::check("generated poset", n, limits.generation)?;
    let mut level = vec![FinitePoset::empty()];
    for _ in 0..n {
        level = extend(&level);
    }
    Ok(level)
}

/// Every isomorphism class with `1 ≤ |P| ≤ n`, smaller sizes first.
pub fn all_posets_up_to(n: usize, limits: &Limits) -> Result<Vec<FinitePoset>> {
    Limits::check("generated poset", n, limits.generation)?;
    let mut out = Vec::new();
    let mut level = vec![FinitePoset::empty()];
    for _ in 0..n {
        level = extend(&level);
        out.extend(level.iter().cloned());
    }
    Ok(out)
}

fn extend(level: &[FinitePoset]) -> Vec<FinitePoset> {
    let mut seen = HashSet::new();
    let mut next: Vec<(Vec<u64>, FinitePoset)> = Vec::new();
    for p in level {
        let n = p.len();
        for mask in 0u64..(1 << n) {
            let below = BitSet::from_indices(n, (0..n).filter(|&i| mask >> i & 1 == 1));
            if !p.is_down_closed(&below) {
                continue;
            }
            let mut leq = BitMatrix::new(n + 1);
            for (i, j) in p.relation().pairs() {
                leq.set(i, j);
            }
            for i in below.iter() {
                leq.set(i, n);
            }
            leq.set(n, n);
            let q =
                FinitePoset::new(index_labels(n + 1), leq).expect("extension by a maximal element");
            let (code, canon) = canonical_poset(&q);
            if seen.insert(code.clone()) {
                next.push((code, canon));
            }
        }
    }
    next.sort_by(|a, b| a.0.cmp(&b.0));
    next.into_iter().map(|(_, p)| p).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let lim = Limits::default();
        let counts: Vec<usize> = (0..=5)
            .map(|n| posets_of_size(n, &lim).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16, 63]);
        assert_eq!(all_posets_up_to(3, &lim).unwrap().len(), 8);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(posets_of_size(8, &Limits::default()).is_err());
    }
}
