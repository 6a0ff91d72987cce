//! Taxotopy between posets: weak `S`-adjoints and the preorder `P ⪯_S Q`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fundamental::{fundamental_poset, is_s_continuous_with, FundamentalPoset};
use crate::limits::Limits;
use crate::map::{monotone_maps, MonotoneMap};
use crate::poset::{fresh_label, FinitePoset};

/// `h⁺: Q ⇄ P : h₊`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakAdjointPair {
    /// `h⁺: Q → P`.
    pub forward: MonotoneMap,
    /// `h₊: P → Q`.
    pub backward: MonotoneMap,
}

impl WeakAdjointPair {
    /// Given `h⁺: Q ⇄ P : h₊` and `g⁺: R ⇄ Q : g₊`, the pair `h⁺g⁺: R ⇄ P : g₊h₊`.
    pub fn then(&self, next: &WeakAdjointPair) -> WeakAdjointPair {
        WeakAdjointPair {
            forward: self.forward.after(&next.forward),
            backward: next.backward.after(&self.backward),
        }
    }
}

/// Checks the four clauses against precomputed `Λ(S,Q)` and `Λ(S,P)`.
pub fn is_weak_s_adjoint_with(
    pair: &WeakAdjointPair,
    lam_q: &FundamentalPoset,
    lam_p: &FundamentalPoset,
) -> bool {
    is_s_continuous_with(&pair.forward, lam_q, lam_p)
        && is_s_continuous_with(&pair.backward, lam_p, lam_q)
        && unit_clauses(pair, lam_q, lam_p)
}

/// `k′ ⪯ h₊h⁺k′` on `Q` and `h⁺h₊k ⪯ k` on `P`.
fn unit_clauses(
    pair: &WeakAdjointPair,
    lam_q: &FundamentalPoset,
    lam_p: &FundamentalPoset,
) -> bool {
    let round_q = pair.backward.after(&pair.forward);
    let round_p = pair.forward.after(&pair.backward);
    let index =
        |lam: &FundamentalPoset, m: &MonotoneMap| lam.index_of(m).expect("composites are monotone");
    (0..lam_q.maps.len()).all(|i| lam_q.related(i, index(lam_q, &round_q.after(&lam_q.maps[i]))))
        && (0..lam_p.maps.len())
            .all(|i| lam_p.related(index(lam_p, &round_p.after(&lam_p.maps[i])), i))
}

pub fn is_weak_s_adjoint(
    pair: &WeakAdjointPair,
    s: &FinitePoset,
    q: &FinitePoset,
    p: &FinitePoset,
    limits: &Limits,
) -> Result<bool> {
    if pair.forward.domain_len() != q.len() || pair.backward.domain_len() != p.len() {
        return Err(Error::CarrierMismatch);
    }
    if !crate::map::is_monotone(q, p, pair.forward.values())
        || !crate::map::is_monotone(p, q, pair.backward.values())
    {
        return Err(Error::NotMonotone);
    }
    let lam_q = fundamental_poset(s, q, limits)?;
    let lam_p = fundamental_poset(s, p, limits)?;
    Ok(is_weak_s_adjoint_with(pair, &lam_q, &lam_p))
}

/// `P ⪯_S Q`: a weak `S`-adjunction whose right adjoint `h₊` goes `P → Q`.
///
/// Returns the first pair in (forward, backward) enumeration order.
pub fn poset_taxotopic(
    p: &FinitePoset,
    q: &FinitePoset,
    s: &FinitePoset,
    limits: &Limits,
) -> Result<Option<WeakAdjointPair>> {
    let lam_p = fundamental_poset(s, p, limits)?;
    let lam_q = fundamental_poset(s, q, limits)?;
    poset_taxotopic_with(p, q, &lam_p, &lam_q, limits)
}

pub fn poset_taxotopic_with(
    p: &FinitePoset,
    q: &FinitePoset,
    lam_p: &FundamentalPoset,
    lam_q: &FundamentalPoset,
    limits: &Limits,
) -> Result<Option<WeakAdjointPair>> {
    // continuity first, it is the cheap filter
    let forwards: Vec<MonotoneMap> = monotone_maps(q, p, limits)?
        .into_iter()
        .filter(|h| is_s_continuous_with(h, lam_q, lam_p))
        .collect();
    let backwards: Vec<MonotoneMap> = monotone_maps(p, q, limits)?
        .into_iter()
        .filter(|h| is_s_continuous_with(h, lam_p, lam_q))
        .collect();
    Ok(forwards.par_iter().find_map_first(|f| {
        backwards.iter().find_map(|b| {
            let pair = WeakAdjointPair {
                forward: f.clone(),
                backward: b.clone(),
            };
            unit_clauses(&pair, lam_q, lam_p).then_some(pair)
        })
    }))
}

/// Taxotopy equivalent to `𝟏`, with `S`-taxotopy in both directions.
pub fn is_null_taxotopic(p: &FinitePoset, s: &FinitePoset, limits: &Limits) -> Result<bool> {
    let one = FinitePoset::chain(1);
    Ok(poset_taxotopic(p, &one, s, limits)?.is_some()
        && poset_taxotopic(&one, p, s, limits)?.is_some())
}

/// `P ≈_S Q`.
pub fn taxotopy_equivalent(
    p: &FinitePoset,
    q: &FinitePoset,
    s: &FinitePoset,
    limits: &Limits,
) -> Result<bool> {
    let lam_p = fundamental_poset(s, p, limits)?;
    let lam_q = fundamental_poset(s, q, limits)?;
    Ok(
        poset_taxotopic_with(p, q, &lam_p, &lam_q, limits)?.is_some()
            && poset_taxotopic_with(q, p, &lam_q, &lam_p, limits)?.is_some(),
    )
}

/// `P̈`: `P` with two incomparable elements above everything.
pub fn double_point(p: &FinitePoset) -> FinitePoset {
    let n = p.len();
    let q = FinitePoset::from_fn(n + 2, |i, j| match (i < n, j < n) {
        (true, true) => p.leq(i, j),
        (true, false) => true,
        _ => false,
    })
    .expect("adding two maxima keeps a partial order");
    let mut labels = p.labels().to_vec();
    for base in ["a", "b"] {
        let l = fresh_label(&labels, base);
        labels.push(l);
    }
    q.with_labels(labels).expect("labels are fresh")
}

/// `𝐕 ≈ P̈` for null-taxotopic `P`.
pub fn v_equivalence_check(p: &FinitePoset, limits: &Limits) -> Result<bool> {
    let one = FinitePoset::chain(1);
    if !is_null_taxotopic(p, &one, limits)? {
        return Err(Error::NotNullTaxotopic);
    }
    let v = crate::poset::catalog("V")?;
    taxotopy_equivalent(&v, &double_point(p), &one, limits)
}

/// Whether the class maps `Λ(S,h⁺)` and `Λ(S,h₊)` form an adjunction
/// `Λ(S,Q) ⇄ Λ(S,P)`.
pub fn induced_adjunction_holds(
    pair: &WeakAdjointPair,
    lam_q: &FundamentalPoset,
    lam_p: &FundamentalPoset,
) -> bool {
    let class_map =
        |h: &MonotoneMap, from: &FundamentalPoset, to: &FundamentalPoset| -> Option<Vec<usize>> {
            let mut out = vec![usize::MAX; from.class_count()];
            for (i, k) in from.maps.iter().enumerate() {
                let c = to
                    .class_of_map(&h.after(k))
                    .expect("composites are monotone");
                let slot = &mut out[from.quotient.class_of[i]];
                if *slot != usize::MAX && *slot != c {
                    return None;
                }
                *slot = c;
            }
            Some(out)
        };
    let (Some(up), Some(down)) = (
        class_map(&pair.forward, lam_q, lam_p),
        class_map(&pair.backward, lam_p, lam_q),
    ) else {
        return false;
    };
    let (cq, cp) = (lam_q.poset(), lam_p.poset());
    (0..cq.len()).all(|x| (0..cp.len()).all(|y| cp.leq(up[x], y) == cq.leq(x, down[y])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::catalog;

    fn lim() -> Limits {
        Limits::default()
    }

    fn one() -> FinitePoset {
        FinitePoset::chain(1)
    }

    #[test]
    fn identity_pair_is_weak_adjoint() {
        let d = catalog("diamond").unwrap();
        let id = WeakAdjointPair {
            forward: MonotoneMap::identity(4),
            backward: MonotoneMap::identity(4),
        };
        assert!(is_weak_s_adjoint(&id, &one(), &d, &d, &lim()).unwrap());
        assert!(poset_taxotopic(&d, &d, &one(), &lim()).unwrap().is_some());
    }

    #[test]
    fn cone_maps_to_one_both_ways() {
        let c = catalog("V").unwrap().cone();
        let top = c.len() - 1;
        // h⁺ = ⊥ : 𝟏 → CP with h₊ = !
        let left = WeakAdjointPair {
            forward: MonotoneMap::constant(1, 0),
            backward: MonotoneMap::constant(c.len(), 0),
        };
        assert!(is_weak_s_adjoint(&left, &one(), &one(), &c, &lim()).unwrap());
        // h⁺ = ! with h₊ = ⊤ : 𝟏 → CP
        let right = WeakAdjointPair {
            forward: MonotoneMap::constant(c.len(), 0),
            backward: MonotoneMap::constant(1, top),
        };
        assert!(is_weak_s_adjoint(&right, &one(), &c, &one(), &lim()).unwrap());
        assert!(is_null_taxotopic(&c, &one(), &lim()).unwrap());
    }

    #[test]
    fn v_is_not_null_taxotopic() {
        let v = catalog("V").unwrap();
        assert!(!is_null_taxotopic(&v, &one(), &lim()).unwrap());
        assert_eq!(
            v_equivalence_check(&v, &lim()),
            Err(Error::NotNullTaxotopic)
        );
    }

    #[test]
    fn double_point_of_one_is_v() {
        assert!(crate::iso::are_isomorphic(
            &double_point(&one()),
            &catalog("V").unwrap()
        ));
        assert!(v_equivalence_check(&FinitePoset::chain(2), &lim()).unwrap());
    }

    #[test]
    fn found_pairs_induce_adjunctions() {
        let d = catalog("diamond").unwrap();
        let lam_d = fundamental_poset(&one(), &d, &lim()).unwrap();
        let lam_1 = fundamental_poset(&one(), &one(), &lim()).unwrap();
        let pair = poset_taxotopic_with(&d, &one(), &lam_d, &lam_1, &lim())
            .unwrap()
            .unwrap();
        assert!(induced_adjunction_holds(&pair, &lam_1, &lam_d));
    }
}
