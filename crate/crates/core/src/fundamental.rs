//! The taxotopy preorder between monotone maps and the fundamental posets
//! it reflects to.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::bits::BitMatrix;
use crate::error::{Error, Result};
use crate::galois::{connections_between, enumerate_adjunctions, AdjunctionSet, GaloisConnection};
use crate::limits::Limits;
use crate::map::{monotone_maps, MonotoneMap};
use crate::poset::FinitePoset;
use crate::preorder::{posetal_reflection, Preorder, QuotientResult};

/// Indices of the domain and codomain connections realising `k ⪯ h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TaxotopyWitness {
    pub dom_conn: usize,
    pub cod_conn: usize,
}

/// `(f, g) ⊨ k ⪯ h`: `k∘f* = g*∘h` and `h∘f_* = g_*∘k`.
pub fn witness_holds(
    k: &MonotoneMap,
    h: &MonotoneMap,
    f: &GaloisConnection,
    g: &GaloisConnection,
) -> bool {
    k.after(&f.lower) == g.lower.after(h) && h.after(&f.upper) == g.upper.after(k)
}

/// First witness for `k ⪯ h`, scanning codomain connections in the outer loop.
pub fn is_taxotopic(
    k: &MonotoneMap,
    h: &MonotoneMap,
    adj_dom: &AdjunctionSet,
    adj_cod: &AdjunctionSet,
) -> Option<TaxotopyWitness> {
    for (gi, g) in adj_cod.iter().enumerate() {
        for (fi, f) in adj_dom.iter().enumerate() {
            if witness_holds(k, h, f, g) {
                return Some(TaxotopyWitness {
                    dom_conn: fi,
                    cod_conn: gi,
                });
            }
        }
    }
    None
}

/// A preorder on a list of maps together with its posetal reflection.
#[derive(Clone, Debug)]
pub struct FundamentalPoset {
    pub maps: Vec<MonotoneMap>,
    pub preorder: Preorder,
    pub quotient: QuotientResult,
    /// `(i, j) ↦ w` whenever `maps[i] ⪯ maps[j]`.
    pub witnesses: HashMap<(usize, usize), TaxotopyWitness>,
    index: HashMap<MonotoneMap, usize>,
}

impl FundamentalPoset {
    /// Verifies that `rel` is already a preorder (no closure is taken) and reflects it.
    pub fn from_relation(
        maps: Vec<MonotoneMap>,
        rel: BitMatrix,
        witnesses: HashMap<(usize, usize), TaxotopyWitness>,
        label: impl Fn(&MonotoneMap) -> String,
    ) -> Result<Self> {
        let closed = rel.reflexive_transitive_closure();
        if closed != rel {
            let (i, j) = closed
                .pairs()
                .find(|&(i, j)| !rel.get(i, j))
                .expect("closures differ somewhere");
            return Err(Error::TheoremViolation(format!(
                "taxotopy relation is not transitive: {:?} ≺ {:?} only through intermediates",
                maps[i], maps[j]
            )));
        }
        let preorder = Preorder::new(rel)?;
        let mut quotient = posetal_reflection(&preorder);
        let labels = quotient
            .classes
            .iter()
            .map(|c| label(&maps[c[0]]))
            .collect();
        quotient.quotient = quotient.quotient.with_labels(labels)?;
        let index = maps
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Ok(FundamentalPoset {
            maps,
            preorder,
            quotient,
            witnesses,
            index,
        })
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.quotient.quotient
    }

    pub fn index_of(&self, map: &MonotoneMap) -> Option<usize> {
        self.index.get(map).copied()
    }

    pub fn class_of_map(&self, map: &MonotoneMap) -> Option<usize> {
        self.index_of(map).map(|i| self.quotient.class_of[i])
    }

    pub fn related(&self, i: usize, j: usize) -> bool {
        self.preorder.get(i, j)
    }

    pub fn class_count(&self) -> usize {
        self.quotient.class_count()
    }
}

/// Labels a map by the element labels of its value table.
pub fn map_label(p: &FinitePoset) -> impl Fn(&MonotoneMap) -> String + '_ {
    move |m: &MonotoneMap| {
        if m.domain_len() == 1 {
            p.label(m.apply(0)).to_string()
        } else {
            let parts: Vec<&str> = m.values().iter().map(|&v| p.label(v)).collect();
            format!("<{}>", parts.join(","))
        }
    }
}

/// The taxotopy relation on `maps`, witnessed by `dom_conns × cod_conns`.
///
/// Per cell the witness is the first hit in codomain-outer, domain-inner
/// order, so the table matches a pairwise scan exactly.
pub fn taxotopy_matrix(
    maps: &[MonotoneMap],
    dom_conns: &[GaloisConnection],
    cod_conns: &[GaloisConnection],
) -> (BitMatrix, HashMap<(usize, usize), TaxotopyWitness>) {
    let m = maps.len();
    // Composites need not lie in `maps` (chain maps are not closed under
    // them), so every table entry is interned into one shared id space.
    let mut interner: HashMap<Vec<usize>, u32> = maps
        .iter()
        .enumerate()
        .map(|(i, map)| (map.values().to_vec(), i as u32))
        .collect();
    let mut intern = |rows: Vec<Vec<MonotoneMap>>| -> Vec<Vec<u32>> {
        rows.into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|map| {
                        let next = interner.len() as u32;
                        *interner.entry(map.0).or_insert(next)
                    })
                    .collect()
            })
            .collect()
    };

    // a[f][k] = k∘f*, c[f][h] = h∘f_*, b[g][h] = g*∘h, d[g][k] = g_*∘k
    let a = intern(
        dom_conns
            .par_iter()
            .map(|f| maps.iter().map(|k| k.after(&f.lower)).collect())
            .collect(),
    );
    let c = intern(
        dom_conns
            .par_iter()
            .map(|f| maps.iter().map(|h| h.after(&f.upper)).collect())
            .collect(),
    );
    let b = intern(
        cod_conns
            .par_iter()
            .map(|g| maps.iter().map(|h| g.lower.after(h)).collect())
            .collect(),
    );
    let d = intern(
        cod_conns
            .par_iter()
            .map(|g| maps.iter().map(|k| g.upper.after(k)).collect())
            .collect(),
    );
    // inverse of a[f]: target ↦ list of k
    let a_inv: Vec<HashMap<u32, Vec<u32>>> = a
        .par_iter()
        .map(|row| {
            let mut inv: HashMap<u32, Vec<u32>> = HashMap::new();
            for (k, &t) in row.iter().enumerate() {
                inv.entry(t).or_default().push(k as u32);
            }
            inv
        })
        .collect();

    let columns: Vec<Vec<(u32, TaxotopyWitness)>> = (0..m)
        .into_par_iter()
        .map(|h| {
            let mut found = vec![false; m];
            let mut hits = Vec::new();
            for (gi, (bg, dg)) in b.iter().zip(&d).enumerate() {
                let target = bg[h];
                for (fi, inv) in a_inv.iter().enumerate() {
                    let Some(ks) = inv.get(&target) else { continue };
                    let ch = c[fi][h];
                    for &k in ks {
                        if !found[k as usize] && dg[k as usize] == ch {
                            found[k as usize] = true;
                            hits.push((
                                k,
                                TaxotopyWitness {
                                    dom_conn: fi,
                                    cod_conn: gi,
                                },
                            ));
                        }
                    }
                }
            }
            hits
        })
        .collect();

    let mut rel = BitMatrix::new(m);
    let mut witnesses = HashMap::new();
    for (h, hits) in columns.into_iter().enumerate() {
        for (k, w) in hits {
            rel.set(k as usize, h);
            witnesses.insert((k as usize, h), w);
        }
    }
    (rel, witnesses)
}

/// `Λ(S, P)`; `Λ(P)` is `fundamental_poset(P, P)`.
pub fn fundamental_poset(
    s: &FinitePoset,
    p: &FinitePoset,
    limits: &Limits,
) -> Result<FundamentalPoset> {
    let maps = monotone_maps(s, p, limits)?;
    let adj_s = enumerate_adjunctions(s, limits)?;
    let adj_p = enumerate_adjunctions(p, limits)?;
    fundamental_poset_with(maps, &adj_s, &adj_p, map_label(p))
}

/// `Λ` over an explicit map list and explicit witness sets.
pub fn fundamental_poset_with(
    maps: Vec<MonotoneMap>,
    adj_dom: &AdjunctionSet,
    adj_cod: &AdjunctionSet,
    label: impl Fn(&MonotoneMap) -> String,
) -> Result<FundamentalPoset> {
    let (rel, witnesses) = taxotopy_matrix(&maps, adj_dom.connections(), adj_cod.connections());
    FundamentalPoset::from_relation(maps, rel, witnesses, label)
}

/// `λ(P) = Λ(𝟏, P)`: `p ⪯ q` iff some `f` has `f*(q) = p` and `f_*(p) = q`.
pub fn lambda(p: &FinitePoset, limits: &Limits) -> Result<FundamentalPoset> {
    if p.is_empty() {
        return Err(Error::EmptyPoset);
    }
    Limits::check("λ carrier", p.len(), limits.lambda)?;
    let adj = enumerate_adjunctions(p, limits)?;
    Ok(lambda_with(p, &adj))
}

/// `λ(P)` from a precomputed `Adj(P)`.
pub fn lambda_with(p: &FinitePoset, adj: &AdjunctionSet) -> FundamentalPoset {
    let n = p.len();
    let mut rel = BitMatrix::new(n);
    let mut witnesses = HashMap::new();
    for (gi, g) in adj.iter().enumerate() {
        for q in 0..n {
            let lo = g.lower.apply(q);
            if g.upper.apply(lo) == q && !rel.get(lo, q) {
                rel.set(lo, q);
                witnesses.insert(
                    (lo, q),
                    TaxotopyWitness {
                        dom_conn: 0,
                        cod_conn: gi,
                    },
                );
            }
        }
    }
    let maps = (0..n).map(|v| MonotoneMap::constant(1, v)).collect();
    FundamentalPoset::from_relation(maps, rel, witnesses, map_label(p))
        .expect("λ relation is a preorder")
}

/// A cross witness for `k ⪯_P^Q h`: `e ∈ Adj(S)` and `f*: Q ⇄ P : f_*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedWitness {
    pub e: usize,
    pub cross: GaloisConnection,
}

/// `f*∘h = k∘e*` and `f_*∘k = h∘e_*` for `k: S → P`, `h: S → Q`.
pub fn generalized_holds(
    k: &MonotoneMap,
    h: &MonotoneMap,
    e: &GaloisConnection,
    cross: &GaloisConnection,
) -> bool {
    cross.lower.after(h) == k.after(&e.lower) && cross.upper.after(k) == h.after(&e.upper)
}

/// `k ⪯_P^Q h` for `k: S → P` and `h: S → Q`.
pub fn generalized_taxotopic(
    k: &MonotoneMap,
    h: &MonotoneMap,
    s: &FinitePoset,
    p: &FinitePoset,
    q: &FinitePoset,
    limits: &Limits,
) -> Result<Option<GeneralizedWitness>> {
    if s.is_empty() {
        return Err(Error::EmptyDomain);
    }
    let adj_s = enumerate_adjunctions(s, limits)?;
    let cross = connections_between(q, p, limits)?;
    Ok(generalized_taxotopic_with(k, h, &adj_s, &cross))
}

pub fn generalized_taxotopic_with(
    k: &MonotoneMap,
    h: &MonotoneMap,
    adj_s: &AdjunctionSet,
    cross: &[GaloisConnection],
) -> Option<GeneralizedWitness> {
    for c in cross {
        for (ei, e) in adj_s.iter().enumerate() {
            if generalized_holds(k, h, e, c) {
                return Some(GeneralizedWitness {
                    e: ei,
                    cross: c.clone(),
                });
            }
        }
    }
    None
}

/// `h: Q → P` is S-continuous if `k ⪯ k'` in `Λ(S,Q)` implies `h∘k ⪯ h∘k'` in `Λ(S,P)`.
pub fn is_s_continuous(
    h: &MonotoneMap,
    s: &FinitePoset,
    q: &FinitePoset,
    p: &FinitePoset,
    limits: &Limits,
) -> Result<bool> {
    let lam_q = fundamental_poset(s, q, limits)?;
    let lam_p = fundamental_poset(s, p, limits)?;
    Ok(is_s_continuous_with(h, &lam_q, &lam_p))
}

pub fn is_s_continuous_with(
    h: &MonotoneMap,
    lam_q: &FundamentalPoset,
    lam_p: &FundamentalPoset,
) -> bool {
    let image: Vec<usize> = lam_q
        .maps
        .iter()
        .map(|k| lam_p.index_of(&h.after(k)).expect("h∘k is monotone"))
        .collect();
    lam_q
        .preorder
        .relation()
        .pairs()
        .all(|(i, j)| lam_p.related(image[i], image[j]))
}

/// Whether constants give an order embedding `λ(P) ↣ Λ(Q, P)`.
pub fn lambda_embedding_check(q: &FinitePoset, p: &FinitePoset, limits: &Limits) -> Result<bool> {
    let small = lambda(p, limits)?;
    let big = fundamental_poset(q, p, limits)?;
    Ok(lambda_embeds(&small, &big, q.len()))
}

pub fn lambda_embeds(small: &FundamentalPoset, big: &FundamentalPoset, domain: usize) -> bool {
    let n = small.maps.len();
    let consts: Vec<usize> = (0..n)
        .map(|v| {
            big.index_of(&MonotoneMap::constant(domain, v))
                .expect("constants are monotone")
        })
        .collect();
    (0..n).all(|a| (0..n).all(|b| small.related(a, b) == big.related(consts[a], consts[b])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::are_isomorphic;
    use crate::poset::catalog;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn lambda_diamond_is_three() {
        let d = catalog("diamond").unwrap();
        let lam = lambda(&d, &lim()).unwrap();
        assert!(are_isomorphic(lam.poset(), &FinitePoset::chain(3)));
        assert_eq!(lam.quotient.classes, vec![vec![0], vec![1, 2], vec![3]]);
    }

    #[test]
    fn lambda_small_cases() {
        assert_eq!(
            lambda(&FinitePoset::chain(1), &lim())
                .unwrap()
                .class_count(),
            1
        );
        assert_eq!(
            lambda(&FinitePoset::antichain(3), &lim())
                .unwrap()
                .class_count(),
            1
        );
        assert_eq!(
            lambda(&FinitePoset::empty(), &lim()).unwrap_err(),
            Error::EmptyPoset
        );
    }

    #[test]
    fn fast_path_matches_general() {
        let one = FinitePoset::chain(1);
        for name in ["diamond", "V", "X", "bowtie", "n(4)"] {
            let p = catalog(name).unwrap();
            let fast = lambda(&p, &lim()).unwrap();
            let slow = fundamental_poset(&one, &p, &lim()).unwrap();
            assert_eq!(fast.preorder, slow.preorder, "{name}");
        }
    }

    #[test]
    fn diamond_constants() {
        let d = catalog("diamond").unwrap();
        let adj = enumerate_adjunctions(&d, &lim()).unwrap();
        let adj1 = enumerate_adjunctions(&FinitePoset::chain(1), &lim()).unwrap();
        let c = |v| MonotoneMap::constant(1, v);
        let w = is_taxotopic(&c(2), &c(3), &adj1, &adj).unwrap();
        assert!(witness_holds(
            &c(2),
            &c(3),
            adj1.get(0),
            adj.get(w.cod_conn)
        ));
        assert!(is_taxotopic(&c(3), &c(1), &adj1, &adj).is_none());
        assert_eq!(
            is_taxotopic(&c(1), &c(1), &adj1, &adj),
            Some(TaxotopyWitness {
                dom_conn: 0,
                cod_conn: 0
            })
        );
    }

    #[test]
    fn big_lambda_of_two_is_three() {
        let two = FinitePoset::chain(2);
        let lam = fundamental_poset(&two, &two, &lim()).unwrap();
        assert!(are_isomorphic(lam.poset(), &FinitePoset::chain(3)));
    }

    #[test]
    fn cross_constant_pair() {
        let (two, three) = (FinitePoset::chain(2), FinitePoset::chain(3));
        let one = FinitePoset::chain(1);
        let k = MonotoneMap::constant(1, 0);
        let h = MonotoneMap::constant(1, 2);
        let w = generalized_taxotopic(&k, &h, &one, &two, &three, &lim())
            .unwrap()
            .unwrap();
        assert!(generalized_holds(
            &k,
            &h,
            &GaloisConnection::identity(1),
            &w.cross
        ));
    }

    #[test]
    fn identity_is_continuous() {
        let d = catalog("diamond").unwrap();
        let one = FinitePoset::chain(1);
        assert!(is_s_continuous(&MonotoneMap::identity(4), &one, &d, &d, &lim()).unwrap());
    }

    #[test]
    fn embeddings() {
        let d = catalog("diamond").unwrap();
        assert!(lambda_embedding_check(&FinitePoset::chain(2), &d, &lim()).unwrap());
        assert!(
            lambda_embedding_check(&FinitePoset::chain(2), &FinitePoset::chain(4), &lim()).unwrap()
        );
    }
}
