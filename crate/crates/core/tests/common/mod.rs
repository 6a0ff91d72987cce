//! Brute-force oracles written without the library's enumeration code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use proptest::prelude::*;
use taxotopy::{BitMatrix, FinitePoset, GaloisConnection, MonotoneMap};

/// Every function `n → m` as a value table, in lexicographic order.
pub fn all_functions(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|f| {
                (0..m).map(move |v| {
                    let mut g = f.clone();
                    g.push(v);
                    g
                })
            })
            .collect();
    }
    out
}

pub fn brute_monotone(s: &FinitePoset, p: &FinitePoset) -> Vec<Vec<usize>> {
    all_functions(s.len(), p.len())
        .into_iter()
        .filter(|f| (0..s.len()).all(|i| (0..s.len()).all(|j| !s.leq(i, j) || p.leq(f[i], f[j]))))
        .collect()
}

/// Pairs `(f*, f_*)` of monotone endomaps with `f*(p) ≤ q ⟺ p ≤ f_*(q)`.
pub fn brute_adj(p: &FinitePoset) -> BTreeSet<(Vec<usize>, Vec<usize>)> {
    let mono = brute_monotone(p, p);
    let n = p.len();
    let mut out = BTreeSet::new();
    for lo in &mono {
        for up in &mono {
            if (0..n).all(|a| (0..n).all(|b| p.leq(lo[a], b) == p.leq(a, up[b]))) {
                out.insert((lo.clone(), up.clone()));
            }
        }
    }
    out
}

pub fn as_conn(pair: &(Vec<usize>, Vec<usize>)) -> GaloisConnection {
    GaloisConnection {
        lower: MonotoneMap::from_values_unchecked(pair.0.clone()),
        upper: MonotoneMap::from_values_unchecked(pair.1.clone()),
    }
}

fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    g.iter().map(|&x| f[x]).collect()
}

/// `k ⪯ h` in `Λ(S,P)` straight from the definition, over brute-force `Adj`.
pub fn brute_taxotopy(s: &FinitePoset, p: &FinitePoset) -> (Vec<Vec<usize>>, Vec<Vec<bool>>) {
    let maps = brute_monotone(s, p);
    let adj_s = brute_adj(s);
    let adj_p = brute_adj(p);
    let rel = maps
        .iter()
        .map(|k| {
            maps.iter()
                .map(|h| {
                    adj_s.iter().any(|(fl, fu)| {
                        adj_p.iter().any(|(gl, gu)| {
                            compose(k, fl) == compose(gl, h) && compose(h, fu) == compose(gu, k)
                        })
                    })
                })
                .collect()
        })
        .collect();
    (maps, rel)
}

/// `p ⪯ q` in `λ(P)`.
pub fn brute_lambda(p: &FinitePoset) -> Vec<Vec<bool>> {
    let adj = brute_adj(p);
    let n = p.len();
    (0..n)
        .map(|a| {
            (0..n)
                .map(|b| adj.iter().any(|(lo, up)| lo[b] == a && up[a] == b))
                .collect()
        })
        .collect()
}

/// Every partial order on `n` labelled points.
pub fn labelled_posets(n: usize) -> Vec<FinitePoset> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|(i, j)| i != j)
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let mut rel = BitMatrix::identity(n);
        for (b, &(i, j)) in pairs.iter().enumerate() {
            if mask >> b & 1 == 1 {
                rel.set(i, j);
            }
        }
        if rel.is_transitive() && rel.is_antisymmetric() {
            out.push(FinitePoset::from_fn(n, |i, j| rel.get(i, j)).unwrap());
        }
    }
    out
}

/// A random poset: a random DAG on `1..=max` points, transitively closed.
pub fn arb_poset(max: usize) -> impl Strategy<Value = FinitePoset> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut rel = BitMatrix::identity(n);
            let mut it = bits.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    if it.next().unwrap() {
                        rel.set(i, j);
                    }
                }
            }
            let closed = rel.reflexive_transitive_closure();
            FinitePoset::from_fn(n, |i, j| closed.get(i, j)).unwrap()
        })
    })
}
