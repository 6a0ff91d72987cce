//! Covers of posets, gluing of compatible families, the retracts `ρ` onto
//! blocks, matching families and the `⪯*` preorder on maps into `P_⊥`.
//!
//! Maps into `P_⊥` use the indexing of [`FinitePoset::add_bottom`]: `0` is
//! `⊥` and element `p` of `P` sits at `p + 1`. Maps into a block `Q_⊥` do the
//! same with the block's local indexing.

use std::collections::HashMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::fundamental::{fundamental_poset_with, map_label, witness_holds, FundamentalPoset};
use crate::galois::{
    enumerate_adjunctions, extend_to_bottom, first_non_restricting, is_weak_sub, restricts_to,
    satisfies_law, AdjunctionSet, GaloisConnection,
};
use crate::iso::are_isomorphic;
use crate::limits::Limits;
use crate::map::{is_monotone, monotone_maps, MonotoneMap};
use crate::poset::FinitePoset;

/// The clause of the cover definition that failed, with a witness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("cover contains an empty block")]
    EmptyBlock,
    #[error("block {block} is not in Sub_w(P): connection {connection} escapes it")]
    NotWeakSub { block: usize, connection: usize },
    #[error("intersection of blocks {0} and {1} is nonempty but not a block")]
    NotIntersectionClosed(usize, usize),
    #[error("blocks do not cover element {0}")]
    NotCovering(usize),
    #[error("connection {connection} on block {outer} does not restrict to block {inner}")]
    NoRestriction {
        inner: usize,
        outer: usize,
        connection: usize,
    },
    #[error("family has {found} members for {expected} blocks")]
    FamilySize { expected: usize, found: usize },
    #[error("connection on block {outer} does not restrict to the one on block {inner}")]
    NotCompatible { inner: usize, outer: usize },
    #[error("cover is not chain-compact")]
    NotChainCompact,
    #[error("blocks disagree on the value at element {0}")]
    GlueConflict(usize),
    #[error("block {inner} is not ρ of block {outer} at point {point}")]
    NotMatching {
        inner: usize,
        outer: usize,
        point: usize,
    },
}

/// One block of a cover with its subposet and `Adj`.
#[derive(Clone, Debug)]
pub struct Block {
    pub set: BitSet,
    pub poset: FinitePoset,
    /// Global index of each local element, ascending.
    pub members: Vec<usize>,
    pub adj: AdjunctionSet,
}

impl Block {
    /// `set ∩ self` in the block's local indexing.
    pub fn localize(&self, set: &BitSet) -> BitSet {
        BitSet::from_indices(
            self.members.len(),
            self.members
                .iter()
                .enumerate()
                .filter(|(_, &m)| set.contains(m))
                .map(|(i, _)| i),
        )
    }

    /// A value of `Q_⊥` as a value of `P_⊥`.
    fn globalize(&self, v: usize) -> usize {
        if v == 0 {
            0
        } else {
            self.members[v - 1] + 1
        }
    }
}

/// A validated cover.
#[derive(Clone, Debug)]
pub struct Cover {
    poset: FinitePoset,
    adj: AdjunctionSet,
    blocks: Vec<Block>,
    inclusions: Vec<(usize, usize)>,
}

impl Cover {
    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn adjunctions(&self) -> &AdjunctionSet {
        &self.adj
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `(inner, outer)` pairs with `blocks[inner] ⊊ blocks[outer]`.
    pub fn inclusions(&self) -> &[(usize, usize)] {
        &self.inclusions
    }

    /// Blocks not strictly inside another block.
    pub fn maximal_blocks(&self) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&b| !self.inclusions.iter().any(|&(i, _)| i == b))
            .collect()
    }
}

/// Checks every clause of the cover definition. Duplicate blocks are dropped.
pub fn validate_cover(p: &FinitePoset, blocks: &[BitSet], limits: &Limits) -> Result<Cover> {
    if p.is_empty() {
        return Err(Error::EmptyPoset);
    }
    let mut sets: Vec<BitSet> = Vec::new();
    for b in blocks {
        if b.universe() != p.len() {
            return Err(Error::NotASubset);
        }
        if !sets.contains(b) {
            sets.push(b.clone());
        }
    }
    if sets.iter().any(|b| b.is_empty()) {
        return Err(CoverError::EmptyBlock.into());
    }
    let adj = enumerate_adjunctions(p, limits)?;
    for (block, q) in sets.iter().enumerate() {
        if let Some(connection) = first_non_restricting(&adj, q) {
            return Err(CoverError::NotWeakSub { block, connection }.into());
        }
    }
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            let meet = sets[i].intersection(&sets[j]);
            if !meet.is_empty() && !sets.contains(&meet) {
                return Err(CoverError::NotIntersectionClosed(i, j).into());
            }
        }
    }
    let mut union = BitSet::new(p.len());
    for q in &sets {
        union.union_with(q);
    }
    if let Some(x) = p.elements().find(|&x| !union.contains(x)) {
        return Err(CoverError::NotCovering(x).into());
    }

    let mut out = Vec::with_capacity(sets.len());
    for set in sets {
        let (poset, members) = p.subposet(&set);
        let adj = enumerate_adjunctions(&poset, limits)?;
        out.push(Block {
            set,
            poset,
            members,
            adj,
        });
    }
    let mut inclusions = Vec::new();
    for (i, inner) in out.iter().enumerate() {
        for (o, outer) in out.iter().enumerate() {
            if i != o && inner.set.is_subset(&outer.set) {
                inclusions.push((i, o));
            }
        }
    }
    for &(inner, outer) in &inclusions {
        let local = out[outer].localize(&out[inner].set);
        if let Some(connection) = first_non_restricting(&out[outer].adj, &local) {
            return Err(CoverError::NoRestriction {
                inner,
                outer,
                connection,
            }
            .into());
        }
    }
    Ok(Cover {
        poset: p.clone(),
        adj,
        blocks: out,
        inclusions,
    })
}

/// Chain-compactness, clause by clause on every maximal chain.
///
/// The subfamily `𝒬′` for a chain is taken to be every block whose trace
/// on the chain is convex: only those can satisfy the interval clause, and
/// the other two clauses only get easier as `𝒬′` grows.
pub fn is_chain_compact(cover: &Cover) -> bool {
    cover
        .poset
        .maximal_chains()
        .iter()
        .all(|chain| chain_is_compact(cover, chain))
}

fn chain_is_compact(cover: &Cover, chain: &[usize]) -> bool {
    let convex: Vec<&BitSet> = cover
        .blocks
        .iter()
        .map(|b| &b.set)
        .filter(|q| {
            let at: Vec<usize> = (0..chain.len()).filter(|&i| q.contains(chain[i])).collect();
            at.last().is_none_or(|&last| last - at[0] + 1 == at.len())
        })
        .collect();
    if !chain.iter().all(|&x| convex.iter().any(|q| q.contains(x))) {
        return false;
    }
    for i in 0..chain.len() {
        for j in i + 1..chain.len() {
            let (a, b) = (chain[i], chain[j]);
            if cover
                .blocks
                .iter()
                .any(|q| q.set.contains(a) && q.set.contains(b))
            {
                continue;
            }
            // steps between chain points sharing a convex block
            let mut reach = vec![false; chain.len()];
            reach[i] = true;
            for t in i..j {
                if !reach[t] {
                    continue;
                }
                for u in t + 1..=j {
                    if convex
                        .iter()
                        .any(|q| q.contains(chain[t]) && q.contains(chain[u]))
                    {
                        reach[u] = true;
                    }
                }
            }
            if !reach[j] {
                return false;
            }
        }
    }
    true
}

/// Whether `family[inner]` is the restriction of `family[outer]` for every inclusion.
pub fn check_compatible(cover: &Cover, family: &[GaloisConnection]) -> Result<()> {
    if family.len() != cover.blocks.len() {
        return Err(CoverError::FamilySize {
            expected: cover.blocks.len(),
            found: family.len(),
        }
        .into());
    }
    for &(inner, outer) in &cover.inclusions {
        let local = cover.blocks[outer].localize(&cover.blocks[inner].set);
        let restricted = restricts_to(&cover.blocks[outer].poset, &family[outer], &local);
        if restricted.as_ref() != Some(&family[inner]) {
            return Err(CoverError::NotCompatible { inner, outer }.into());
        }
    }
    Ok(())
}

/// Glues a compatible family of block connections into one on `P`.
pub fn glue_compatible_family(
    cover: &Cover,
    family: &[GaloisConnection],
) -> Result<GaloisConnection> {
    check_compatible(cover, family)?;
    if !is_chain_compact(cover) {
        return Err(CoverError::NotChainCompact.into());
    }
    let n = cover.poset.len();
    let mut lower = vec![usize::MAX; n];
    let mut upper = vec![usize::MAX; n];
    for (block, f) in cover.blocks.iter().zip(family) {
        for (local, &x) in block.members.iter().enumerate() {
            let lo = block.members[f.lower.apply(local)];
            let up = block.members[f.upper.apply(local)];
            if lower[x] != usize::MAX && (lower[x] != lo || upper[x] != up) {
                return Err(CoverError::GlueConflict(x).into());
            }
            lower[x] = lo;
            upper[x] = up;
        }
    }
    let p = &cover.poset;
    if !is_monotone(p, p, &lower) || !is_monotone(p, p, &upper) {
        return Err(Error::TheoremViolation(format!(
            "glued family is not monotone: lower {lower:?}, upper {upper:?}"
        )));
    }
    let lower = MonotoneMap::from_values_unchecked(lower);
    let upper = MonotoneMap::from_values_unchecked(upper);
    if !satisfies_law(p, p, &lower, &upper) {
        return Err(Error::TheoremViolation(format!(
            "glued maps {lower:?} and {upper:?} are not adjoint"
        )));
    }
    Ok(GaloisConnection { lower, upper })
}

/// `ρ_Q(h)(s) = max(h(s↓) ∩ Q)`, or `⊥` when that set is empty.
///
/// `h: S → P_⊥`; the result is a map `S → Q_⊥` in `Q`'s local indexing.
pub fn rho(s: &FinitePoset, p: &FinitePoset, h: &MonotoneMap, q: &BitSet) -> Result<MonotoneMap> {
    if !s.is_total() {
        return Err(Error::NotAChain);
    }
    if q.universe() != p.len() || h.domain_len() != s.len() {
        return Err(Error::NotASubset);
    }
    let mut local = vec![usize::MAX; p.len()];
    for (i, x) in q.iter().enumerate() {
        local[x] = i;
    }
    let mut out = Vec::with_capacity(s.len());
    for t in s.elements() {
        let hits: Vec<usize> = s
            .down_set(t)
            .iter()
            .map(|u| h.apply(u))
            .filter(|&v| v != 0 && q.contains(v - 1))
            .map(|v| v - 1)
            .collect();
        match hits.first() {
            None => out.push(0),
            Some(_) => {
                let max = hits
                    .iter()
                    .copied()
                    .find(|&m| hits.iter().all(|&x| p.leq(x, m)))
                    .ok_or(Error::MaxUndefined(t))?;
                out.push(local[max] + 1);
            }
        }
    }
    Ok(MonotoneMap::from_values_unchecked(out))
}

/// `ρ_{Q,Q′}` from block `outer` to block `inner`.
pub fn rho_between(
    cover: &Cover,
    s: &FinitePoset,
    outer: usize,
    inner: usize,
    h: &MonotoneMap,
) -> Result<MonotoneMap> {
    let ob = &cover.blocks[outer];
    rho(s, &ob.poset, h, &ob.localize(&cover.blocks[inner].set))
}

/// The first clause of the matching condition that fails, if any.
pub fn check_matching_family(cover: &Cover, s: &FinitePoset, family: &[MonotoneMap]) -> Result<()> {
    if family.len() != cover.blocks.len() {
        return Err(CoverError::FamilySize {
            expected: cover.blocks.len(),
            found: family.len(),
        }
        .into());
    }
    for &(inner, outer) in &cover.inclusions {
        let expected = match rho_between(cover, s, outer, inner, &family[outer]) {
            Ok(m) => m,
            Err(Error::MaxUndefined(point)) => {
                return Err(CoverError::NotMatching {
                    inner,
                    outer,
                    point,
                }
                .into())
            }
            Err(e) => return Err(e),
        };
        if let Some(point) = s
            .elements()
            .find(|&t| expected.apply(t) != family[inner].apply(t))
        {
            return Err(CoverError::NotMatching {
                inner,
                outer,
                point,
            }
            .into());
        }
    }
    Ok(())
}

pub fn is_matching_family(cover: &Cover, s: &FinitePoset, family: &[MonotoneMap]) -> bool {
    check_matching_family(cover, s, family).is_ok()
}

/// The amalgam `s ↦ max{h_Q(s)}` in `P_⊥`, absent when some maximum fails to exist.
pub fn amalgamate(
    cover: &Cover,
    s: &FinitePoset,
    family: &[MonotoneMap],
) -> Result<Option<MonotoneMap>> {
    check_matching_family(cover, s, family)?;
    let pb = cover.poset.add_bottom();
    let mut out = Vec::with_capacity(s.len());
    for t in s.elements() {
        let values: Vec<usize> = cover
            .blocks
            .iter()
            .zip(family)
            .map(|(b, h)| b.globalize(h.apply(t)))
            .collect();
        match values
            .iter()
            .copied()
            .find(|&m| values.iter().all(|&v| pb.leq(v, m)))
        {
            Some(m) => out.push(m),
            None => return Ok(None),
        }
    }
    Ok(Some(MonotoneMap::from_values_unchecked(out)))
}

/// Every matching family of `S`-chains over the cover.
///
/// Families are determined by their maximal blocks, so those are chosen
/// freely and the rest is derived by `ρ` and then checked.
pub fn matching_families(
    cover: &Cover,
    s: &FinitePoset,
    limits: &Limits,
) -> Result<Vec<Vec<MonotoneMap>>> {
    if !s.is_total() {
        return Err(Error::NotAChain);
    }
    let maximal = cover.maximal_blocks();
    let choices: Vec<Vec<MonotoneMap>> = maximal
        .iter()
        .map(|&b| monotone_maps(s, &cover.blocks[b].poset.add_bottom(), limits))
        .collect::<Result<_>>()?;
    let source: Vec<Option<usize>> = (0..cover.blocks.len())
        .map(|b| {
            if maximal.contains(&b) {
                None
            } else {
                cover
                    .inclusions
                    .iter()
                    .find(|&&(i, o)| i == b && maximal.contains(&o))
                    .map(|&(_, o)| o)
            }
        })
        .collect();
    let mut out = Vec::new();
    let mut pick = vec![0usize; maximal.len()];
    if choices.iter().any(|c| c.is_empty()) {
        return Ok(out);
    }
    loop {
        let mut family: Vec<Option<MonotoneMap>> = vec![None; cover.blocks.len()];
        for (slot, &b) in maximal.iter().enumerate() {
            family[b] = Some(choices[slot][pick[slot]].clone());
        }
        let mut ok = true;
        for b in 0..cover.blocks.len() {
            if let Some(o) = source[b] {
                match rho_between(
                    cover,
                    s,
                    o,
                    b,
                    family[o].as_ref().expect("maximal blocks are filled"),
                ) {
                    Ok(m) => family[b] = Some(m),
                    Err(Error::MaxUndefined(_)) => ok = false,
                    Err(e) => return Err(e),
                }
            }
        }
        if ok {
            let family: Vec<MonotoneMap> = family
                .into_iter()
                .map(|m| m.expect("every block is filled"))
                .collect();
            if is_matching_family(cover, s, &family) {
                out.push(family);
            }
        }
        // odometer over the maximal blocks
        let mut k = 0;
        loop {
            if k == pick.len() {
                return Ok(out);
            }
            pick[k] += 1;
            if pick[k] < choices[k].len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
    }
}

/// `{f^ext : f ∈ Adj(P)}` as connections on `P_⊥`.
pub fn extended_adjunctions(p_bot: &FinitePoset, adj_p: &AdjunctionSet) -> AdjunctionSet {
    AdjunctionSet::from_connections(p_bot.clone(), adj_p.iter().map(extend_to_bottom).collect())
}

/// `Λ*(S, P_⊥)`: maps `S → P_⊥` with codomain witnesses drawn from `f^ext`.
pub fn star_fundamental(
    s: &FinitePoset,
    p: &FinitePoset,
    limits: &Limits,
) -> Result<FundamentalPoset> {
    let adj_s = enumerate_adjunctions(s, limits)?;
    let adj_p = enumerate_adjunctions(p, limits)?;
    star_fundamental_with(s, p, &adj_s, &adj_p, limits)
}

/// `Λ*(S, P_⊥)` from precomputed `Adj(S)` and `Adj(P)`.
///
/// Also checks that `Λ(S, P) ↣ Λ*(S, P_⊥)` is an order embedding.
pub fn star_fundamental_with(
    s: &FinitePoset,
    p: &FinitePoset,
    adj_s: &AdjunctionSet,
    adj_p: &AdjunctionSet,
    limits: &Limits,
) -> Result<FundamentalPoset> {
    let pb = p.add_bottom();
    let ext = extended_adjunctions(&pb, adj_p);
    let star = fundamental_poset_with(monotone_maps(s, &pb, limits)?, adj_s, &ext, map_label(&pb))?;
    let plain = fundamental_poset_with(monotone_maps(s, p, limits)?, adj_s, adj_p, map_label(p))?;
    let shifted: Vec<usize> = plain
        .maps
        .iter()
        .map(|m| {
            let up =
                MonotoneMap::from_values_unchecked(m.values().iter().map(|&v| v + 1).collect());
            star.index_of(&up).expect("maps into P are maps into P_⊥")
        })
        .collect();
    for i in 0..plain.maps.len() {
        for j in 0..plain.maps.len() {
            if plain.related(i, j) != star.related(shifted[i], shifted[j]) {
                return Err(Error::TheoremViolation(format!(
                    "Λ(S,P) does not embed in Λ*(S,P_⊥) at {:?}, {:?}",
                    plain.maps[i], plain.maps[j]
                )));
            }
        }
    }
    Ok(star)
}

/// Both sides of the van Kampen theorem for `Λ*` on one instance.
#[derive(Clone, Debug)]
pub struct StarVanKampenReport {
    /// `|Pos(S, P_⊥)|`.
    pub maps: usize,
    pub matching_families: usize,
    /// Whether distinct matching families have distinct amalgams, so that
    /// amalgamation and `ρ` are mutually inverse.
    pub families_biject: bool,
    /// Ordered pairs with `h ⪯* h′`.
    pub related_pairs: usize,
    /// Ordered pairs on which `h ⪯* h′` and "`ρ_Q(h) ⪯* ρ_Q(h′)` for every
    /// block" disagree.
    pub iff_violations: Vec<(MonotoneMap, MonotoneMap)>,
    /// Related pairs for which no single `f ∈ Adj(P)` restricts to blockwise
    /// witnesses. Reported, not treated as a failure.
    pub without_compatible_witnesses: usize,
    /// `Λ*(S, P_⊥)`.
    pub star: FinitePoset,
    /// The limit of the `Λ*(S, Q_⊥)` along the induced `ρ` maps.
    pub limit: FinitePoset,
    pub limit_isomorphic: bool,
}

impl StarVanKampenReport {
    pub fn holds(&self) -> bool {
        self.iff_violations.is_empty() && self.limit_isomorphic
    }
}

/// [`van_kampen_star_report`], turning a failed conclusion into `TheoremViolation`.
pub fn van_kampen_star_check(
    s: &FinitePoset,
    cover: &Cover,
    limits: &Limits,
) -> Result<StarVanKampenReport> {
    let report = van_kampen_star_report(s, cover, limits)?;
    if let Some((h, k)) = report.iff_violations.first() {
        return Err(Error::TheoremViolation(format!(
            "⪯* is not blockwise on {} pairs, first {h:?} vs {k:?}",
            report.iff_violations.len()
        )));
    }
    if !report.limit_isomorphic {
        return Err(Error::TheoremViolation(format!(
            "limit of the block posets has {} elements, Λ*(S,P_⊥) has {}, and they are not isomorphic",
            report.limit.len(),
            report.star.len()
        )));
    }
    Ok(report)
}

/// Checks the hypotheses, then computes both sides: `⪯*` against its
/// blockwise version on every pair, and `Λ*(S, P_⊥)` against the limit of
/// the block posets.
pub fn van_kampen_star_report(
    s: &FinitePoset,
    cover: &Cover,
    limits: &Limits,
) -> Result<StarVanKampenReport> {
    if !s.is_total() {
        return Err(Error::HypothesisFailed(
            "S is not a finite total order".into(),
        ));
    }
    if !is_chain_compact(cover) {
        return Err(Error::HypothesisFailed("cover is not chain-compact".into()));
    }
    let families = matching_families(cover, s, limits)?;
    let mut amalgams = Vec::with_capacity(families.len());
    for family in &families {
        match amalgamate(cover, s, family)? {
            Some(h) => amalgams.push(h),
            None => {
                return Err(Error::HypothesisFailed(format!(
                    "matching family {family:?} has no amalgam"
                )))
            }
        }
    }

    let adj_s = enumerate_adjunctions(s, limits)?;
    let star = star_fundamental_with(s, &cover.poset, &adj_s, &cover.adj, limits)?;
    let stars: Vec<FundamentalPoset> = cover
        .blocks
        .iter()
        .map(|b| star_fundamental_with(s, &b.poset, &adj_s, &b.adj, limits))
        .collect::<Result<_>>()?;

    // ρ tables; amalgamating the retracts of a map must give it back
    let mut rho_idx = vec![Vec::with_capacity(star.maps.len()); cover.blocks.len()];
    for h in &star.maps {
        let family: Vec<MonotoneMap> = cover
            .blocks
            .iter()
            .map(|b| rho(s, &cover.poset, h, &b.set))
            .collect::<Result<_>>()?;
        if amalgamate(cover, s, &family)?.as_ref() != Some(h) {
            return Err(Error::TheoremViolation(format!(
                "{h:?} is not the amalgam of its retracts"
            )));
        }
        for (b, m) in family.iter().enumerate() {
            rho_idx[b].push(stars[b].index_of(m).expect("ρ lands in Pos(S, Q_⊥)"));
        }
    }
    let mut distinct = amalgams.clone();
    distinct.sort();
    distinct.dedup();
    let families_biject = distinct.len() == amalgams.len();

    let m = star.maps.len();
    let blockwise = |i: usize, j: usize| {
        (0..cover.blocks.len()).all(|b| stars[b].related(rho_idx[b][i], rho_idx[b][j]))
    };
    let iff_violations: Vec<(MonotoneMap, MonotoneMap)> = (0..m)
        .into_par_iter()
        .flat_map_iter(|i| (0..m).map(move |j| (i, j)))
        .filter(|&(i, j)| star.related(i, j) != blockwise(i, j))
        .map(|(i, j)| (star.maps[i].clone(), star.maps[j].clone()))
        .collect();

    // f ∈ Adj(P) ↦ f|_Q, extended to Q_⊥
    let restricted: Vec<Vec<GaloisConnection>> = cover
        .adj
        .iter()
        .map(|f| {
            cover
                .blocks
                .iter()
                .map(|b| {
                    extend_to_bottom(
                        &restricts_to(&cover.poset, f, &b.set).expect("blocks are in Sub_w(P)"),
                    )
                })
                .collect()
        })
        .collect();
    let related: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (0..m).map(move |j| (i, j)))
        .filter(|&(i, j)| star.related(i, j))
        .collect();
    let without_compatible_witnesses = related
        .par_iter()
        .filter(|&&(i, j)| {
            !restricted.iter().any(|fam| {
                fam.iter().enumerate().all(|(b, g)| {
                    let (k, h) = (&stars[b].maps[rho_idx[b][i]], &stars[b].maps[rho_idx[b][j]]);
                    adj_s.iter().any(|e| witness_holds(k, h, e, g))
                })
            })
        })
        .count();

    let limit = star_limit(cover, s, &stars)?;
    let limit_isomorphic = are_isomorphic(&limit, star.poset());
    Ok(StarVanKampenReport {
        maps: m,
        matching_families: families.len(),
        families_biject,
        related_pairs: related.len(),
        iff_violations,
        without_compatible_witnesses,
        star: star.poset().clone(),
        limit,
        limit_isomorphic,
    })
}

/// The limit in `Pos` of the block posets `Λ*(S, Q_⊥)` along the maps
/// induced by `ρ_{Q,Q′}`: compatible tuples of classes, ordered componentwise.
///
/// For a cover `{Q, Q′, Q∩Q′}` this is the pullback over `Λ*(S, (Q∩Q′)_⊥)`.
pub fn star_limit(
    cover: &Cover,
    s: &FinitePoset,
    stars: &[FundamentalPoset],
) -> Result<FinitePoset> {
    // induced class maps, checked to be well defined
    let mut class_maps: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for &(inner, outer) in &cover.inclusions {
        let mut table = vec![usize::MAX; stars[outer].class_count()];
        for (mi, h) in stars[outer].maps.iter().enumerate() {
            let c = stars[outer].quotient.class_of[mi];
            let image = rho_between(cover, s, outer, inner, h)?;
            let target = stars[inner]
                .class_of_map(&image)
                .expect("ρ lands in Pos(S, Q_⊥)");
            if table[c] != usize::MAX && table[c] != target {
                return Err(Error::TheoremViolation(format!(
                    "ρ from block {outer} to block {inner} is not constant on the class of {h:?}"
                )));
            }
            table[c] = target;
        }
        class_maps.insert((inner, outer), table);
    }
    let maximal = cover.maximal_blocks();
    let sizes: Vec<usize> = maximal.iter().map(|&b| stars[b].class_count()).collect();
    let mut tuples: Vec<Vec<usize>> = Vec::new();
    let mut pick = vec![0usize; maximal.len()];
    'outer: loop {
        let mut tuple = vec![usize::MAX; cover.blocks.len()];
        for (slot, &b) in maximal.iter().enumerate() {
            tuple[b] = pick[slot];
        }
        let mut ok = true;
        for b in 0..cover.blocks.len() {
            if tuple[b] != usize::MAX {
                continue;
            }
            for (slot, &o) in maximal.iter().enumerate() {
                if let Some(table) = class_maps.get(&(b, o)) {
                    let c = table[pick[slot]];
                    if tuple[b] == usize::MAX {
                        tuple[b] = c;
                    } else if tuple[b] != c {
                        ok = false;
                    }
                }
            }
        }
        ok &= class_maps
            .iter()
            .all(|(&(i, o), table)| table[tuple[o]] == tuple[i]);
        if ok {
            tuples.push(tuple);
        }
        let mut k = 0;
        loop {
            if k == pick.len() {
                break 'outer;
            }
            pick[k] += 1;
            if pick[k] < sizes[k] {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
    }
    let labels: Vec<String> = tuples
        .iter()
        .map(|t| {
            let parts: Vec<&str> = t
                .iter()
                .enumerate()
                .map(|(b, &c)| stars[b].poset().label(c))
                .collect();
            format!("({})", parts.join(", "))
        })
        .collect();
    let leq = |a: usize, b: usize| {
        (0..cover.blocks.len()).all(|q| stars[q].poset().leq(tuples[a][q], tuples[b][q]))
    };
    let limit = FinitePoset::from_fn(tuples.len(), leq)?;
    limit.with_labels(labels)
}

/// For every `h ⪯* k` in `Λ*(S, P_⊥)`: `ρ_Q(h) ⪯* ρ_Q(k)` in `Λ*(S, Q_⊥)`
/// and `im h` meets `Q` exactly when `im k` does.
pub fn retract_order_check(
    s: &FinitePoset,
    p: &FinitePoset,
    q: &BitSet,
    limits: &Limits,
) -> Result<bool> {
    if !s.is_total() {
        return Err(Error::NotAChain);
    }
    let adj_s = enumerate_adjunctions(s, limits)?;
    let adj_p = enumerate_adjunctions(p, limits)?;
    if let Some(connection) = first_non_restricting(&adj_p, q) {
        return Err(CoverError::NotWeakSub {
            block: 0,
            connection,
        }
        .into());
    }
    if q.is_empty() {
        return Err(CoverError::EmptyBlock.into());
    }
    let (sub, _) = p.subposet(q);
    let adj_q = enumerate_adjunctions(&sub, limits)?;
    let big = star_fundamental_with(s, p, &adj_s, &adj_p, limits)?;
    let small = star_fundamental_with(s, &sub, &adj_s, &adj_q, limits)?;
    let retracts: Vec<usize> = big
        .maps
        .iter()
        .map(|h| rho(s, p, h, q).map(|r| small.index_of(&r).expect("ρ lands in Pos(S, Q_⊥)")))
        .collect::<Result<_>>()?;
    let meets = |h: &MonotoneMap| h.values().iter().any(|&v| v != 0 && q.contains(v - 1));
    let n = big.maps.len();
    Ok((0..n).into_par_iter().all(|i| {
        (0..n).all(|j| {
            !big.related(i, j)
                || (small.related(retracts[i], retracts[j])
                    && meets(&big.maps[i]) == meets(&big.maps[j]))
        })
    }))
}

/// For every `h ⪯* h′`: `im h ∩ P` is empty exactly when `im h′ ∩ P` is.
pub fn max_comparison_check(s: &FinitePoset, p: &FinitePoset, limits: &Limits) -> Result<bool> {
    Ok(max_comparison_holds(&star_fundamental(s, p, limits)?))
}

/// [`max_comparison_check`] on a precomputed `Λ*(S, P_⊥)`.
pub fn max_comparison_holds(star: &FundamentalPoset) -> bool {
    let all_bottom: Vec<bool> = star
        .maps
        .iter()
        .map(|h| h.values().iter().all(|&v| v == 0))
        .collect();
    let n = star.maps.len();
    (0..n).all(|i| (0..n).all(|j| !star.related(i, j) || all_bottom[i] == all_bottom[j]))
}

/// Chain-compact covers `{Q, Q′, Q∩Q′}` with `Q ∪ Q′ = P`, neither block
/// containing the other and a nonempty overlap.
pub fn three_block_covers(p: &FinitePoset, limits: &Limits) -> Result<Vec<Cover>> {
    let n = p.len();
    Limits::check("cover search carrier", n, limits.generation)?;
    let adj = enumerate_adjunctions(p, limits)?;
    let weak: Vec<u64> = (1u64..1 << n)
        .filter(|&m| is_weak_sub(&adj, &mask_set(n, m)))
        .collect();
    let full = (1u64 << n) - 1;
    let mut out = Vec::new();
    for (i, &a) in weak.iter().enumerate() {
        for &b in &weak[i + 1..] {
            if a | b != full || a & b == 0 || a & b == a || a & b == b {
                continue;
            }
            let blocks = [mask_set(n, a), mask_set(n, b), mask_set(n, a & b)];
            match validate_cover(p, &blocks, limits) {
                Ok(cover) if is_chain_compact(&cover) => out.push(cover),
                Ok(_) | Err(Error::Cover(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(out)
}

fn mask_set(n: usize, mask: u64) -> BitSet {
    BitSet::from_indices(n, (0..n).filter(|&i| mask >> i & 1 == 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::catalog;

    fn set(n: usize, xs: &[usize]) -> BitSet {
        BitSet::from_indices(n, xs.iter().copied())
    }

    #[test]
    fn whole_poset_is_a_compact_cover() {
        let lim = Limits::default();
        for p in [
            catalog("diamond").unwrap(),
            catalog("V").unwrap(),
            FinitePoset::chain(4),
        ] {
            let cover = validate_cover(&p, &[p.all()], &lim).unwrap();
            assert!(is_chain_compact(&cover));
            let id: Vec<_> = vec![GaloisConnection::identity(p.len())];
            assert_eq!(glue_compatible_family(&cover, &id).unwrap(), id[0]);
        }
    }

    #[test]
    fn bowtie_halves_are_not_compact() {
        let p = catalog("bowtie").unwrap();
        let lim = Limits::default();
        let lows = BitSet::from_indices(4, p.minimal_elements());
        let highs = BitSet::from_indices(4, p.maximal_elements());
        if let Ok(cover) = validate_cover(&p, &[lows, highs], &lim) {
            assert!(!is_chain_compact(&cover));
        }
    }

    #[test]
    fn rho_on_a_chain() {
        let four = FinitePoset::chain(4);
        let h = MonotoneMap::from_values_unchecked(vec![1, 2, 3, 4]);
        let r = rho(&four, &four, &h, &set(4, &[1, 3])).unwrap();
        assert_eq!(r.values(), &[0, 1, 1, 2]);
        let bot = MonotoneMap::constant(4, 0);
        assert_eq!(
            rho(&four, &four, &bot, &set(4, &[1, 3])).unwrap().values(),
            &[0, 0, 0, 0]
        );
    }

    #[test]
    fn single_block_amalgam_round_trips() {
        let lim = Limits::default();
        let p = catalog("V").unwrap();
        let two = FinitePoset::chain(2);
        let cover = validate_cover(&p, &[p.all()], &lim).unwrap();
        for h in monotone_maps(&two, &p.add_bottom(), &lim).unwrap() {
            assert_eq!(amalgamate(&cover, &two, &[h.clone()]).unwrap(), Some(h));
        }
    }

    #[test]
    fn star_of_a_point() {
        let one = FinitePoset::chain(1);
        let star = star_fundamental(&one, &one, &Limits::default()).unwrap();
        assert_eq!(star.maps.len(), 2);
        assert!(!star.related(0, 1) && !star.related(1, 0));
    }
}
