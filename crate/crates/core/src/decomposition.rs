//! Fundamental posets of disjoint unions.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::bits::{BitMatrix, BitSet};
use crate::error::{Error, Result};
use crate::fundamental::{fundamental_poset, generalized_taxotopic_with, FundamentalPoset};
use crate::galois::{connections_between, enumerate_adjunctions, AdjunctionSet};
use crate::limits::Limits;
use crate::map::{monotone_maps, MonotoneMap};
use crate::poset::{index_labels, FinitePoset};
use crate::preorder::{posetal_reflection, Preorder, QuotientResult};

/// The permutations of connected components induced by `Adj(P)`.
#[derive(Clone, Debug)]
pub struct Admissibility {
    pub components: Vec<BitSet>,
    /// Distinct permutations `φ`, sorted; `φ[i]` is the component receiving `f_*(P_i)`.
    pub permutations: Vec<Vec<usize>>,
    /// `i ⪯ j` iff some admissible `φ` has `φ(i) = j`.
    pub preorder: BitMatrix,
}

impl Admissibility {
    pub fn is_identity(&self) -> bool {
        self.preorder == BitMatrix::identity(self.components.len())
    }
}

pub fn admissible_permutations(p: &FinitePoset, limits: &Limits) -> Result<Admissibility> {
    let adj = enumerate_adjunctions(p, limits)?;
    admissible_permutations_with(&adj)
}

pub fn admissible_permutations_with(adj: &AdjunctionSet) -> Result<Admissibility> {
    let p = adj.poset();
    let components = p.connected_components();
    let c = components.len();
    let mut comp_of = vec![0; p.len()];
    for (i, block) in components.iter().enumerate() {
        for x in block.iter() {
            comp_of[x] = i;
        }
    }
    let mut perms = BTreeSet::new();
    for (fi, f) in adj.iter().enumerate() {
        let phi: Vec<usize> = components
            .iter()
            .map(|block| {
                comp_of[f
                    .upper
                    .apply(block.first().expect("components are nonempty"))]
            })
            .collect();
        let inside = components
            .iter()
            .enumerate()
            .all(|(i, block)| block.iter().all(|x| comp_of[f.upper.apply(x)] == phi[i]));
        let mut hit = vec![false; c];
        phi.iter().for_each(|&j| hit[j] = true);
        if !inside || hit.contains(&false) {
            return Err(Error::TheoremViolation(format!(
                "connection {fi} does not permute the components: {phi:?}"
            )));
        }
        perms.insert(phi);
    }
    let mut preorder = BitMatrix::identity(c);
    for phi in &perms {
        for (i, &j) in phi.iter().enumerate() {
            preorder.set(i, j);
        }
    }
    Ok(Admissibility {
        components,
        permutations: perms.into_iter().collect(),
        preorder,
    })
}

/// A relation on `Q × Q`, pair `(a, b)` stored at index `a * |Q| + b`.
#[derive(Clone, Debug)]
pub struct FoldInput {
    pub base: FinitePoset,
    pub rel: BitMatrix,
}

impl FoldInput {
    pub fn pair(&self, a: usize, b: usize) -> usize {
        a * self.base.len() + b
    }

    /// The componentwise order on `Q × Q`.
    pub fn product_order(base: &FinitePoset) -> FoldInput {
        FoldInput {
            rel: base.product(base).relation().clone(),
            base: base.clone(),
        }
    }
}

/// `Fold(Q², ≤)`: identify `(a, b)` with `(b, a)` and reflect.
pub fn fold(input: &FoldInput) -> Result<QuotientResult> {
    let q = input.base.len();
    let swap = |x: usize| (x % q) * q + x / q;
    for (x, y) in input.rel.pairs() {
        if !input.rel.get(swap(x), swap(y)) {
            return Err(Error::SymmetryViolation(x, y));
        }
    }
    let mut rel = input.rel.clone();
    for x in 0..q * q {
        rel.set(x, swap(x));
    }
    let mut result = posetal_reflection(&Preorder::closure_of(&rel));
    let labels = result
        .classes
        .iter()
        .map(|c| {
            let x = c[0];
            format!(
                "{{{},{}}}",
                input.base.label(x / q),
                input.base.label(x % q)
            )
        })
        .collect();
    result.quotient = result.quotient.with_labels(labels)?;
    Ok(result)
}

/// `⪯°` on `Λ(P)²`: `(h₁,h₂) ⪯° (k₁,k₂)` iff some `e` and `f, g` give
/// `(f,e) ⊨ h₁ ⪯ k₁` and `(g,e) ⊨ h₂ ⪯ k₂`.
///
/// Computed on map representatives; fails with `TheoremViolation` if the
/// answer depends on the representatives chosen (it does for `P = 𝟑`).
pub fn open_book_relation(
    p: &FinitePoset,
    limits: &Limits,
) -> Result<(FoldInput, FundamentalPoset)> {
    let (maps_input, lam) = open_book_maps(p, limits)?;
    let rel = &maps_input.rel;
    let m = lam.maps.len();
    let classes = &lam.quotient;
    let c = classes.class_count();
    let mut out = BitMatrix::new(c * c);
    for x in 0..c * c {
        for y in 0..c * c {
            let (h1, h2) = (classes.representative(x / c), classes.representative(x % c));
            let (k1, k2) = (classes.representative(y / c), classes.representative(y % c));
            if rel.get(h1 * m + h2, k1 * m + k2) {
                out.set(x, y);
            }
        }
    }
    for (a, b) in (0..m * m).flat_map(|a| (0..m * m).map(move |b| (a, b))) {
        let x = classes.class_of[a / m] * c + classes.class_of[a % m];
        let y = classes.class_of[b / m] * c + classes.class_of[b % m];
        if rel.get(a, b) != out.get(x, y) {
            return Err(Error::TheoremViolation(format!(
                "open book relation depends on representatives: {:?} -> {:?} disagrees with its classes",
                (&lam.maps[a / m], &lam.maps[a % m]),
                (&lam.maps[b / m], &lam.maps[b % m]),
            )));
        }
    }
    let base = lam.poset().clone();
    Ok((FoldInput { base, rel: out }, lam))
}

/// `⪯°` on pairs of maps in `Pos(P, P)`, before any passage to classes.
///
/// The base is the discrete poset on `Pos(P, P)` labelled by value tables.
pub fn open_book_maps(p: &FinitePoset, limits: &Limits) -> Result<(FoldInput, FundamentalPoset)> {
    let lam = fundamental_poset(p, p, limits)?;
    let adj = enumerate_adjunctions(p, limits)?;
    let rel = open_book_on_maps(&lam.maps, &adj);
    let label = crate::fundamental::map_label(p);
    let labels = lam.maps.iter().map(label).collect();
    let base = FinitePoset::antichain(lam.maps.len()).with_labels(labels)?;
    Ok((FoldInput { base, rel }, lam))
}

fn open_book_on_maps(maps: &[MonotoneMap], adj: &AdjunctionSet) -> BitMatrix {
    let m = maps.len();
    // r[e][h] = { k : ∃ f, (f, e) ⊨ h ⪯ k }
    let r: Vec<Vec<BitSet>> = adj
        .connections()
        .par_iter()
        .map(|e| {
            maps.iter()
                .map(|h| {
                    BitSet::from_indices(
                        m,
                        (0..m).filter(|&k| {
                            adj.iter()
                                .any(|f| crate::fundamental::witness_holds(h, &maps[k], f, e))
                        }),
                    )
                })
                .collect()
        })
        .collect();
    let rows: Vec<BitSet> = (0..m * m)
        .into_par_iter()
        .map(|a| {
            let (h1, h2) = (a / m, a % m);
            let mut row = BitSet::new(m * m);
            for re in &r {
                for k1 in re[h1].iter() {
                    for k2 in re[h2].iter() {
                        row.insert(k1 * m + k2);
                    }
                }
            }
            row
        })
        .collect();
    let mut rel = BitMatrix::new(m * m);
    for (a, row) in rows.iter().enumerate() {
        for b in row.iter() {
            rel.set(a, b);
        }
    }
    rel
}

/// `Λ(P ⊔ P) = Fold(Λ(P)², ⪯) ⊔ Fold(Λ(P)², ⪯°)` for connected `P`.
///
/// The open-book half is folded on map pairs and reflected afterwards,
/// since `⪯°` need not be constant on `Λ(P)` classes.
pub fn lambda_double(p: &FinitePoset, limits: &Limits) -> Result<FinitePoset> {
    if !p.is_connected() || p.is_empty() {
        return Err(Error::NotConnected);
    }
    let (open, lam) = open_book_maps(p, limits)?;
    let product = fold(&FoldInput::product_order(lam.poset()))?;
    let book = fold(&open)?;
    Ok(product.quotient.disjoint_union(&book.quotient))
}

/// `Λ(S, ⊔ P_i)` from the cross relations `k ₛ⪯_{P_i}^{P_j} h` over admissible `i ⪯ j`.
pub fn lambda_disjoint(
    s: &FinitePoset,
    components: &[FinitePoset],
    limits: &Limits,
) -> Result<QuotientResult> {
    if s.is_empty() || !s.is_connected() {
        return Err(Error::NotConnected);
    }
    if components.is_empty() {
        return Err(Error::EmptyPoset);
    }
    if components.iter().any(|c| c.is_empty() || !c.is_connected()) {
        return Err(Error::NotConnected);
    }
    let union = components[1..]
        .iter()
        .fold(components[0].clone(), |acc, c| acc.disjoint_union(c));
    let admissible = admissible_permutations(&union, limits)?;
    // component order of `union` follows the input order since each component is contiguous
    let adj_s = enumerate_adjunctions(s, limits)?;
    let maps: Vec<Vec<MonotoneMap>> = components
        .iter()
        .map(|c| monotone_maps(s, c, limits))
        .collect::<Result<_>>()?;
    let offsets: Vec<usize> = maps
        .iter()
        .scan(0, |acc, m| {
            let o = *acc;
            *acc += m.len();
            Some(o)
        })
        .collect();
    let total: usize = maps.iter().map(Vec::len).sum();
    let c = components.len();
    let pairs: Vec<(usize, usize)> = (0..c)
        .flat_map(|i| (0..c).map(move |j| (i, j)))
        .filter(|&(i, j)| admissible.preorder.get(i, j))
        .collect();
    let cells: Vec<(usize, usize)> = pairs
        .par_iter()
        .map(|&(i, j)| -> Result<Vec<(usize, usize)>> {
            // cross connections f*: P_j → P_i, f_*: P_i → P_j
            let cross = connections_between(&components[j], &components[i], limits)?;
            let mut out = Vec::new();
            for (a, k) in maps[i].iter().enumerate() {
                for (b, h) in maps[j].iter().enumerate() {
                    if generalized_taxotopic_with(k, h, &adj_s, &cross).is_some() {
                        out.push((offsets[i] + a, offsets[j] + b));
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let mut rel = BitMatrix::identity(total);
    for (a, b) in cells {
        rel.set(a, b);
    }
    if rel.reflexive_transitive_closure() != rel {
        return Err(Error::TheoremViolation(
            "cross-component taxotopy is not transitive".into(),
        ));
    }
    Ok(posetal_reflection(&Preorder::new(rel)?))
}

/// The two-component formula for `Λ(P₁ ⊔ P₂)` when neither component can be swapped.
pub fn lambda_rigid_pair(
    p1: &FinitePoset,
    p2: &FinitePoset,
    limits: &Limits,
) -> Result<FinitePoset> {
    if !p1.is_connected() || !p2.is_connected() || p1.is_empty() || p2.is_empty() {
        return Err(Error::NotConnected);
    }
    let union = p1.disjoint_union(p2);
    if !admissible_permutations(&union, limits)?.is_identity() {
        return Err(Error::AdmissibilityNotIdentity);
    }
    let l1 = fundamental_poset(p1, p1, limits)?;
    let l2 = fundamental_poset(p2, p2, limits)?;
    let l12 = fundamental_poset(p1, p2, limits)?;
    let l21 = fundamental_poset(p2, p1, limits)?;
    let lu1 = fundamental_poset(&union, p1, limits)?;
    let lu2 = fundamental_poset(&union, p2, limits)?;
    let left = l1
        .poset()
        .product(l2.poset())
        .disjoint_union(&l12.poset().product(l21.poset()));
    let right = lu1.poset().disjoint_union(lu2.poset());
    let out = left.disjoint_union(&right);
    out.with_labels(index_labels(out.len()))
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
    fn connected_has_identity_only() {
        let a = admissible_permutations(&catalog("diamond").unwrap(), &lim()).unwrap();
        assert_eq!(a.permutations, vec![vec![0]]);
    }

    #[test]
    fn two_twos_swap() {
        let two = FinitePoset::chain(2);
        let a = admissible_permutations(&two.disjoint_union(&two), &lim()).unwrap();
        assert_eq!(a.permutations, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn fold_of_three_squared_is_cone_diamond() {
        let three = FinitePoset::chain(3);
        let q = fold(&FoldInput::product_order(&three)).unwrap();
        assert!(are_isomorphic(
            &q.quotient,
            &catalog("cone_diamond").unwrap()
        ));
        let one = FinitePoset::chain(1);
        assert_eq!(
            fold(&FoldInput::product_order(&one)).unwrap().class_count(),
            1
        );
    }

    #[test]
    fn asymmetric_relation_rejected() {
        let two = FinitePoset::chain(2);
        let mut rel = BitMatrix::identity(4);
        rel.set(0, 1);
        let err = fold(&FoldInput { base: two, rel }).unwrap_err();
        assert_eq!(err, Error::SymmetryViolation(0, 1));
    }

    #[test]
    fn open_book_of_two() {
        let two = FinitePoset::chain(2);
        let (open, _) = open_book_relation(&two, &lim()).unwrap();
        let book = fold(&open).unwrap();
        let expect = catalog("X").unwrap().disjoint_union(&FinitePoset::chain(1));
        assert!(are_isomorphic(&book.quotient, &expect));
    }

    #[test]
    fn double_of_one() {
        let d = lambda_double(&FinitePoset::chain(1), &lim()).unwrap();
        assert!(are_isomorphic(&d, &FinitePoset::antichain(2)));
    }

    #[test]
    fn swappable_pair_rejected() {
        let two = FinitePoset::chain(2);
        assert_eq!(
            lambda_rigid_pair(&two, &two, &lim()).unwrap_err(),
            Error::AdmissibilityNotIdentity
        );
    }
}
