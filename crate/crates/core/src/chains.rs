//! `L(P)`: taxotopy classes of maps from the integers, represented by their
//! image chains.
//!
//! A map `ℤ → P` is determined up to equivalence by its image, and constant
//! maps are never related to non-constant ones, so `L(P)` lives on the set of
//! chains of `P`: singletons ordered as in `λ(P)`, longer chains ordered by
//! [`chain_taxotopic`].

use std::collections::HashMap;

use crate::bits::BitMatrix;
use crate::error::{Error, Result};
use rayon::prelude::*;

use crate::fundamental::{lambda_with, taxotopy_matrix, witness_holds, TaxotopyWitness};
use crate::galois::{enumerate_adjunctions, satisfies_law, AdjunctionSet, GaloisConnection};
use crate::limits::Limits;
use crate::map::MonotoneMap;
use crate::poset::FinitePoset;
use crate::preorder::{posetal_reflection, Preorder, QuotientResult};

/// `0 ↦ p₀`, `i ↦ pᵢ` for `1 ≤ i ≤ n-3`, `[n-2, d-2] ↦ p_{n-2}`, `d-1 ↦ p_{n-1}`.
pub fn canonical_chain_map(chain: &[usize], d: usize) -> Result<MonotoneMap> {
    let n = chain.len();
    if n < 2 {
        return Err(Error::ChainTooShort);
    }
    if d < n {
        return Err(Error::BadHeight { len: n, height: d });
    }
    let values = (0..d)
        .map(|i| match i {
            0 => chain[0],
            _ if i == d - 1 => chain[n - 1],
            _ if i + 2 <= n => chain[i],
            _ => chain[n - 2],
        })
        .collect();
    Ok(MonotoneMap::from_values_unchecked(values))
}

/// Connections on `𝐝` whose adjoints both fix `0` and `d-1`.
pub fn endpoint_fixing_adjunctions(d: usize, limits: &Limits) -> Result<AdjunctionSet> {
    if d < 2 {
        return Err(Error::ChainTooShort);
    }
    let adj = enumerate_adjunctions(&FinitePoset::chain(d), limits)?;
    Ok(endpoint_fixing(&adj))
}

fn endpoint_fixing(adj: &AdjunctionSet) -> AdjunctionSet {
    let top = adj.poset().len() - 1;
    adj.filtered(|f| {
        f.lower.apply(0) == 0
            && f.upper.apply(0) == 0
            && f.lower.apply(top) == top
            && f.upper.apply(top) == top
    })
}

/// One step of a run decomposition: a block of consecutive domain points
/// whose `h`-values sweep `H[a..=b]`, followed by a block of codomain points
/// whose `k`-values sweep `K[a'..=b']`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Run {
    pub h: (usize, usize),
    pub k: (usize, usize),
}

/// Witness for `k ⪯ h` between non-constant chains: a connection on `P`
/// plus the run decomposition describing the connection on `ℤ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainWitness {
    pub cod_conn: usize,
    pub runs: Vec<Run>,
}

/// Decides `k ⪯ h` in `L(P)` for chains `K = im k`, `H = im h` with at least
/// two elements, returning the first witness in `Adj(P)` order.
///
/// A connection on `ℤ` is the same thing as an interleaving of two copies of
/// `ℤ` into one total order: `f*(x)` is the first codomain point after `x`
/// and `f_*(y)` the last domain point before `y`. The interleaving alternates
/// domain and codomain blocks, and the two commuting squares become local
/// conditions on consecutive blocks:
/// `g*` is constant on the `h`-values of a domain block, equal to the `k`-value
/// that opens the next codomain block, and `g_*` is constant on the `k`-values
/// of a codomain block, equal to the `h`-value that closes the block before.
/// Both ends of `ℤ` are infinite repetitions of the extreme blocks, so the
/// search is reachability from `(0, 0)` to `(|H|-1, |K|-1)`.
pub fn chain_taxotopic(
    k_chain: &[usize],
    h_chain: &[usize],
    adj: &AdjunctionSet,
) -> Option<ChainWitness> {
    if k_chain.len() < 2 || h_chain.len() < 2 {
        return None;
    }
    adj.iter().enumerate().find_map(|(gi, g)| {
        run_path(k_chain, h_chain, g).map(|runs| ChainWitness { cod_conn: gi, runs })
    })
}

fn run_path(kc: &[usize], hc: &[usize], g: &GaloisConnection) -> Option<Vec<Run>> {
    let (m, n) = (hc.len(), kc.len());
    let lower = |i: usize| g.lower.apply(hc[i]);
    let upper = |j: usize| g.upper.apply(kc[j]);
    if lower(0) != kc[0]
        || upper(0) != hc[0]
        || lower(m - 1) != kc[n - 1]
        || upper(n - 1) != hc[m - 1]
    {
        return None;
    }
    let mut parent: Vec<Option<(usize, Run)>> = vec![None; m * n];
    let mut seen = vec![false; m * n];
    seen[0] = true;
    let mut queue = std::collections::VecDeque::from([(0usize, 0usize)]);
    while let Some((b, b2)) = queue.pop_front() {
        if (b, b2) == (m - 1, n - 1) {
            break;
        }
        for a in b..=(b + 1).min(m - 1) {
            for a2 in b2..=(b2 + 1).min(n - 1) {
                // g* is constant K[a2] on H[a..=e]
                let mut e = a;
                while e < m && lower(e) == kc[a2] {
                    for e2 in a2..n {
                        if upper(e2) != hc[e] {
                            break;
                        }
                        let state = e * n + e2;
                        if !seen[state] {
                            seen[state] = true;
                            parent[state] = Some((
                                b * n + b2,
                                Run {
                                    h: (a, e),
                                    k: (a2, e2),
                                },
                            ));
                            queue.push_back((e, e2));
                        }
                    }
                    e += 1;
                }
            }
        }
    }
    let goal = m * n - 1;
    if !seen[goal] {
        return None;
    }
    let mut runs = Vec::new();
    let mut state = goal;
    while let Some((prev, run)) = parent[state] {
        runs.push(run);
        state = prev;
    }
    runs.reverse();
    Some(runs)
}

/// A finite window realising a [`ChainWitness`].
#[derive(Clone, Debug)]
pub struct WindowWitness {
    pub k: MonotoneMap,
    pub h: MonotoneMap,
    /// A connection on the window chain fixing both endpoints.
    pub f: GaloisConnection,
}

impl ChainWitness {
    /// Lays the runs out on a window `𝐋` with representatives `k', h'` of the
    /// two chains. The connection fixes `0` and `L-1`, so it extends to `ℤ`
    /// by the identity and the result can be checked with plain map algebra.
    pub fn realize(&self, k_chain: &[usize], h_chain: &[usize]) -> WindowWitness {
        let (m, n) = (h_chain.len(), k_chain.len());
        // every run as (domain values, codomain values); the first run pins 0 ↦ 0
        let mut blocks: Vec<(Vec<usize>, Vec<usize>)> = vec![(vec![h_chain[0]], vec![k_chain[0]])];
        for run in &self.runs {
            blocks.push((
                h_chain[run.h.0..=run.h.1].to_vec(),
                k_chain[run.k.0..=run.k.1].to_vec(),
            ));
        }
        blocks.push((vec![h_chain[m - 1]], vec![k_chain[n - 1]]));
        let dom_len: usize = blocks.iter().map(|b| b.0.len()).sum();
        let cod_len: usize = blocks.iter().map(|b| b.1.len()).sum();
        // pad inside an extra starting run so both sides have the same length
        let len = dom_len.max(cod_len);
        blocks.insert(
            1,
            (
                vec![h_chain[0]; len - dom_len + 1],
                vec![k_chain[0]; len - cod_len + 1],
            ),
        );
        let len = len + 1;

        let mut h = Vec::with_capacity(len);
        let mut k = Vec::with_capacity(len);
        let mut lower = vec![0; len];
        let mut upper = vec![0; len];
        for (dvals, cvals) in &blocks {
            let first_cod = k.len();
            for &v in dvals {
                lower[h.len()] = first_cod;
                h.push(v);
            }
            let last_dom = h.len() - 1;
            for &v in cvals {
                upper[k.len()] = last_dom;
                k.push(v);
            }
        }
        WindowWitness {
            k: MonotoneMap::from_values_unchecked(k),
            h: MonotoneMap::from_values_unchecked(h),
            f: GaloisConnection {
                lower: MonotoneMap::from_values_unchecked(lower),
                upper: MonotoneMap::from_values_unchecked(upper),
            },
        }
    }
}

impl WindowWitness {
    /// Rechecks the law on the window, the fixed endpoints and both squares.
    pub fn verify(&self, g: &GaloisConnection) -> bool {
        let len = self.h.domain_len();
        let window = FinitePoset::chain(len);
        satisfies_law(&window, &window, &self.f.lower, &self.f.upper)
            && self.f.lower.apply(0) == 0
            && self.f.upper.apply(0) == 0
            && self.f.lower.apply(len - 1) == len - 1
            && self.f.upper.apply(len - 1) == len - 1
            && witness_holds(&self.k, &self.h, &self.f, g)
    }
}

/// How a pair of chains in `L(P)` is related.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainRelation {
    /// Both chains are single points; the witness comes from `λ(P)`.
    Constant(TaxotopyWitness),
    Chain(ChainWitness),
}

/// `L(P)` on the set of all chains of `P`.
#[derive(Clone, Debug)]
pub struct ChainPoset {
    /// Ordered by length, then lexicographically; singletons come first in element order.
    pub chains: Vec<Vec<usize>>,
    pub preorder: Preorder,
    pub quotient: QuotientResult,
    pub witnesses: HashMap<(usize, usize), ChainRelation>,
}

impl ChainPoset {
    pub fn poset(&self) -> &FinitePoset {
        &self.quotient.quotient
    }

    /// Classes whose members are one-element chains.
    pub fn constant_classes(&self) -> Vec<usize> {
        (0..self.quotient.class_count())
            .filter(|&c| self.chains[self.quotient.classes[c][0]].len() == 1)
            .collect()
    }

    pub fn index_of(&self, chain: &[usize]) -> Option<usize> {
        self.chains.iter().position(|c| c == chain)
    }
}

pub fn chain_label(p: &FinitePoset, chain: &[usize]) -> String {
    chain
        .iter()
        .map(|&x| p.label(x))
        .collect::<Vec<_>>()
        .join("<")
}

#[allow(non_snake_case)]
pub fn L_poset(p: &FinitePoset, limits: &Limits) -> Result<ChainPoset> {
    if p.is_empty() {
        return Err(Error::EmptyPoset);
    }
    Limits::check("λ carrier", p.len(), limits.lambda)?;
    let adj = enumerate_adjunctions(p, limits)?;
    l_poset_with(p, &adj)
}

pub fn l_poset_with(p: &FinitePoset, adj: &AdjunctionSet) -> Result<ChainPoset> {
    let chains = p.chains();
    let total = chains.len();
    let n = p.len();
    let mut rel = BitMatrix::new(total);
    let mut witnesses = HashMap::new();

    let lam = lambda_with(p, adj);
    for (i, j) in lam.preorder.relation().pairs() {
        rel.set(i, j);
    }
    for (pair, w) in lam.witnesses {
        witnesses.insert(pair, ChainRelation::Constant(w));
    }

    let cells: Vec<(usize, usize, ChainWitness)> = (n..total)
        .into_par_iter()
        .flat_map_iter(|i| {
            let chains = &chains;
            (n..total).filter_map(move |j| {
                chain_taxotopic(&chains[i], &chains[j], adj).map(|w| (i, j, w))
            })
        })
        .collect();
    for (i, j, w) in cells {
        debug_assert!(w
            .realize(&chains[i], &chains[j])
            .verify(adj.get(w.cod_conn)));
        rel.set(i, j);
        witnesses.insert((i, j), ChainRelation::Chain(w));
    }

    if rel.reflexive_transitive_closure() != rel {
        return Err(Error::TheoremViolation(
            "chain taxotopy relation is not transitive".into(),
        ));
    }
    let preorder = Preorder::new(rel)?;
    let mut quotient = posetal_reflection(&preorder);
    let labels = quotient
        .classes
        .iter()
        .map(|c| chain_label(p, &chains[c[0]]))
        .collect();
    quotient.quotient = quotient.quotient.with_labels(labels)?;
    Ok(ChainPoset {
        chains,
        preorder,
        quotient,
        witnesses,
    })
}

/// The relation among non-constant chains obtained from canonical maps on
/// `𝐝 = d(P)` with endpoint-fixing witnesses only.
///
/// Every pair it relates is related in `L(P)`, but not conversely: on `𝟑`
/// it misses `0<1<2 ⪯ 0<2`, which needs the doubling connection on `ℤ`.
/// Kept for comparison with [`L_poset`].
pub fn canonical_window_relation(
    p: &FinitePoset,
    adj: &AdjunctionSet,
    limits: &Limits,
) -> Result<BitMatrix> {
    let chains = p.chains();
    let n = p.len();
    let d = p.height()?;
    let long = &chains[n..];
    if d < 2 {
        return Ok(BitMatrix::new(0));
    }
    let ef = endpoint_fixing_adjunctions(d, limits)?;
    let maps = long
        .iter()
        .map(|c| canonical_chain_map(c, d))
        .collect::<Result<Vec<_>>>()?;
    Ok(taxotopy_matrix(&maps, ef.connections(), adj.connections()).0)
}
