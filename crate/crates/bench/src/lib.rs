//! Benchmark fixtures.

use taxotopy::generate::posets_of_size;
use taxotopy::{catalog, FinitePoset, Limits};

/// Every poset of size `n` up to isomorphism.
pub fn corpus(n: usize) -> Vec<FinitePoset> {
    posets_of_size(n, &Limits::default()).expect("corpus size within limits")
}

/// Named inputs of growing size: chains, cones and the catalog shapes.
pub fn named() -> Vec<(String, FinitePoset)> {
    let mut out: Vec<(String, FinitePoset)> = ["diamond", "bowtie", "X", "cone_diamond"]
        .iter()
        .map(|n| (n.to_string(), catalog(n).unwrap()))
        .collect();
    for k in [4, 6, 8, 10] {
        out.push((format!("n({k})"), FinitePoset::chain(k)));
    }
    out
}
