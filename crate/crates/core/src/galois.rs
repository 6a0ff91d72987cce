//! Monotone Galois connections: adjoint computation, enumeration, and the
//! restriction and extension properties.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::map::MonotoneMap;
use crate::poset::FinitePoset;

/// An adjoint pair `f* ⊣ f_*`.
///
/// For `Adj(P)` both maps are endomaps of `P`. Between posets, `lower` goes
/// `dom → cod` and `upper` goes back.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaloisConnection {
    pub lower: MonotoneMap,
    pub upper: MonotoneMap,
}

impl GaloisConnection {
    pub fn identity(n: usize) -> Self {
        GaloisConnection {
            lower: MonotoneMap::identity(n),
            upper: MonotoneMap::identity(n),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.lower.is_identity() && self.upper.is_identity()
    }

    /// `f_* ∘ f*`
    pub fn closure(&self) -> MonotoneMap {
        self.upper.after(&self.lower)
    }

    /// `f* ∘ f_*`
    pub fn interior(&self) -> MonotoneMap {
        self.lower.after(&self.upper)
    }
}

/// `f*(x) ≤ y ⟺ x ≤ f_*(y)` for all `x ∈ dom`, `y ∈ cod`.
pub fn satisfies_law(
    dom: &FinitePoset,
    cod: &FinitePoset,
    lower: &MonotoneMap,
    upper: &MonotoneMap,
) -> bool {
    dom.elements().all(|x| {
        cod.elements()
            .all(|y| cod.leq(lower.apply(x), y) == dom.leq(x, upper.apply(y)))
    })
}

/// `f_*(y) = max{x : f(x) ≤ y}`, checked against the law.
pub fn right_adjoint_of(
    dom: &FinitePoset,
    cod: &FinitePoset,
    f: &MonotoneMap,
) -> Option<MonotoneMap> {
    let mut values = Vec::with_capacity(cod.len());
    for y in cod.elements() {
        let below = BitSet::from_indices(
            dom.len(),
            dom.elements().filter(|&x| cod.leq(f.apply(x), y)),
        );
        let max = below.iter().find(|&m| below.is_subset(dom.down_set(m)))?;
        values.push(max);
    }
    let g = MonotoneMap::from_values_unchecked(values);
    satisfies_law(dom, cod, f, &g).then_some(g)
}

/// `g*(x) = min{y : x ≤ g(y)}` for `g: cod → dom`, checked against the law.
pub fn left_adjoint_of(
    dom: &FinitePoset,
    cod: &FinitePoset,
    g: &MonotoneMap,
) -> Option<MonotoneMap> {
    let mut values = Vec::with_capacity(dom.len());
    for x in dom.elements() {
        let above = BitSet::from_indices(
            cod.len(),
            cod.elements().filter(|&y| dom.leq(x, g.apply(y))),
        );
        let min = above.iter().find(|&m| above.is_subset(cod.up_set(m)))?;
        values.push(min);
    }
    let f = MonotoneMap::from_values_unchecked(values);
    satisfies_law(dom, cod, &f, g).then_some(f)
}

/// `Adj(P)` in a fixed order: identity first, then by the lower map's table.
#[derive(Clone, Debug)]
pub struct AdjunctionSet {
    poset: FinitePoset,
    connections: Vec<GaloisConnection>,
    by_lower: HashMap<MonotoneMap, usize>,
}

impl AdjunctionSet {
    pub(crate) fn from_connections(
        poset: FinitePoset,
        mut connections: Vec<GaloisConnection>,
    ) -> Self {
        connections.sort_by(|a, b| {
            b.is_identity()
                .cmp(&a.is_identity())
                .then_with(|| a.lower.cmp(&b.lower))
        });
        let by_lower = connections
            .iter()
            .enumerate()
            .map(|(i, c)| (c.lower.clone(), i))
            .collect();
        AdjunctionSet {
            poset,
            connections,
            by_lower,
        }
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.connections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.connections.is_empty()
    }

    pub fn get(&self, i: usize) -> &GaloisConnection {
        &self.connections[i]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, GaloisConnection> {
        self.connections.iter()
    }

    pub fn connections(&self) -> &[GaloisConnection] {
        &self.connections
    }

    pub fn index_of_lower(&self, lower: &MonotoneMap) -> Option<usize> {
        self.by_lower.get(lower).copied()
    }

    /// Keeps the connections selected by `keep`, preserving order.
    pub fn filtered(&self, keep: impl Fn(&GaloisConnection) -> bool) -> AdjunctionSet {
        let kept = self
            .connections
            .iter()
            .filter(|c| keep(c))
            .cloned()
            .collect();
        Self::from_connections(self.poset.clone(), kept)
    }
}

/// Exhaustive `Adj(P)`.
pub fn enumerate_adjunctions(p: &FinitePoset, limits: &Limits) -> Result<AdjunctionSet> {
    Limits::check("Adj(P) carrier", p.len(), limits.adjunctions)?;
    let conns = enumerate_connections(p, p);
    Ok(AdjunctionSet::from_connections(p.clone(), conns))
}

/// All connections `dom ⇄ cod` with `lower: dom → cod`, sorted by lower table.
pub fn connections_between(
    dom: &FinitePoset,
    cod: &FinitePoset,
    limits: &Limits,
) -> Result<Vec<GaloisConnection>> {
    Limits::check("Adj carrier", dom.len().max(cod.len()), limits.adjunctions)?;
    let mut conns = enumerate_connections(dom, cod);
    conns.sort_by(|a, b| a.lower.cmp(&b.lower));
    Ok(conns)
}

fn join_table(p: &FinitePoset) -> Vec<Vec<Option<usize>>> {
    let n = p.len();
    let mut table = vec![vec![None; n]; n];
    for a in 0..n {
        for b in a..n {
            let ub = p.up_set(a).intersection(p.up_set(b));
            let join = ub.iter().find(|&m| ub.is_subset(p.up_set(m)));
            table[a][b] = join;
            table[b][a] = join;
        }
    }
    table
}

/// Depth-first search over candidate left adjoints along a linear extension.
///
/// Two sound prunings: left adjoints preserve every existing join (including
/// the empty one, `⊥`), and every minimal element of `cod` lies in the image
/// of a left adjoint (otherwise `max{x : f(x) ≤ m}` is a max of nothing).
fn enumerate_connections(dom: &FinitePoset, cod: &FinitePoset) -> Vec<GaloisConnection> {
    let n = dom.len();
    if n == 0 || cod.is_empty() {
        return Vec::new();
    }
    let order = dom.linear_extension();
    let dom_join = join_table(dom);
    let cod_join = join_table(cod);
    // for each position in `order`, a pair of earlier elements whose join it is
    let forced_by: Vec<Option<(usize, usize)>> = order
        .iter()
        .map(|&x| {
            let below: Vec<usize> = dom.down_set(x).iter().filter(|&y| y != x).collect();
            below.iter().enumerate().find_map(|(i, &a)| {
                below[i + 1..]
                    .iter()
                    .find(|&&b| dom_join[a][b] == Some(x))
                    .map(|&b| (a, b))
            })
        })
        .collect();
    let dom_bottom = dom.bottom();
    let cod_bottom = cod.bottom();
    if dom_bottom.is_some() && cod_bottom.is_none() {
        return Vec::new();
    }
    let cod_minimal = cod.minimal_elements();

    let ctx = Ctx {
        dom,
        cod,
        order: &order,
        forced_by: &forced_by,
        cod_join: &cod_join,
        dom_bottom,
        cod_bottom,
        cod_minimal: &cod_minimal,
    };

    let first = order[0];
    let roots: Vec<usize> = ctx.candidates(first, &vec![usize::MAX; n], 0);
    let mut found: Vec<GaloisConnection> = roots
        .into_par_iter()
        .flat_map_iter(|v| {
            let mut values = vec![usize::MAX; n];
            values[first] = v;
            let mut out = Vec::new();
            ctx.fill(1, &mut values, &mut out);
            out
        })
        .collect();
    found.sort_by(|a, b| a.lower.cmp(&b.lower));
    found
}

struct Ctx<'a> {
    dom: &'a FinitePoset,
    cod: &'a FinitePoset,
    order: &'a [usize],
    forced_by: &'a [Option<(usize, usize)>],
    cod_join: &'a [Vec<Option<usize>>],
    dom_bottom: Option<usize>,
    cod_bottom: Option<usize>,
    cod_minimal: &'a [usize],
}

impl Ctx<'_> {
    fn candidates(&self, x: usize, values: &[usize], k: usize) -> Vec<usize> {
        if Some(x) == self.dom_bottom {
            return self.cod_bottom.into_iter().collect();
        }
        if let Some((a, b)) = self.forced_by[k] {
            return self.cod_join[values[a]][values[b]].into_iter().collect();
        }
        let mut lower_bound = BitSet::full(self.cod.len());
        for y in self.dom.down_set(x).iter() {
            if y != x {
                lower_bound.intersect_with(self.cod.up_set(values[y]));
            }
        }
        lower_bound.to_vec()
    }

    fn fill(&self, k: usize, values: &mut Vec<usize>, out: &mut Vec<GaloisConnection>) {
        let remaining = self.order.len() - k;
        let missing = self
            .cod_minimal
            .iter()
            .filter(|&&m| !self.order[..k].iter().any(|&x| values[x] == m))
            .count();
        if missing > remaining {
            return;
        }
        if remaining == 0 {
            let f = MonotoneMap::from_values_unchecked(values.clone());
            if let Some(g) = right_adjoint_of(self.dom, self.cod, &f) {
                out.push(GaloisConnection { lower: f, upper: g });
            }
            return;
        }
        let x = self.order[k];
        for v in self.candidates(x, values, k) {
            // forced values still have to respect monotonicity
            let ok = self
                .dom
                .down_set(x)
                .iter()
                .all(|y| y == x || self.cod.leq(values[y], v));
            if ok {
                values[x] = v;
                self.fill(k + 1, values, out);
            }
        }
        values[x] = usize::MAX;
    }
}

/// `(f ∘ g)* = f* ∘ g*` and `(f ∘ g)_* = g_* ∘ f_*`.
pub fn compose(f: &GaloisConnection, g: &GaloisConnection) -> Result<GaloisConnection> {
    if f.lower.domain_len() != g.lower.domain_len() {
        return Err(Error::CarrierMismatch);
    }
    Ok(GaloisConnection {
        lower: f.lower.after(&g.lower),
        upper: g.upper.after(&f.upper),
    })
}

pub fn closure_op(f: &GaloisConnection) -> MonotoneMap {
    f.closure()
}

pub fn interior_op(f: &GaloisConnection) -> MonotoneMap {
    f.interior()
}

/// Fixed points of an endomap.
pub fn fixed_set(op: &MonotoneMap) -> BitSet {
    let n = op.domain_len();
    BitSet::from_indices(n, (0..n).filter(|&x| op.apply(x) == x))
}

/// `f|_Q` in the subposet's own indexing, if both adjoints preserve `Q`.
pub fn restricts_to(p: &FinitePoset, f: &GaloisConnection, q: &BitSet) -> Option<GaloisConnection> {
    let (_, members) = p.subposet(q);
    let mut pos = vec![usize::MAX; p.len()];
    for (i, &m) in members.iter().enumerate() {
        pos[m] = i;
    }
    let mut lower = Vec::with_capacity(members.len());
    let mut upper = Vec::with_capacity(members.len());
    for &m in &members {
        let (a, b) = (f.lower.apply(m), f.upper.apply(m));
        if !q.contains(a) || !q.contains(b) {
            return None;
        }
        lower.push(pos[a]);
        upper.push(pos[b]);
    }
    Some(GaloisConnection {
        lower: MonotoneMap::from_values_unchecked(lower),
        upper: MonotoneMap::from_values_unchecked(upper),
    })
}

/// Membership in `Sub_w(P)`: every connection restricts to `Q`.
pub fn is_weak_sub(adj: &AdjunctionSet, q: &BitSet) -> bool {
    first_non_restricting(adj, q).is_none()
}

/// Index of the first connection that does not restrict to `Q`.
pub fn first_non_restricting(adj: &AdjunctionSet, q: &BitSet) -> Option<usize> {
    adj.iter().position(|f| {
        q.iter()
            .any(|x| !q.contains(f.lower.apply(x)) || !q.contains(f.upper.apply(x)))
    })
}

/// For `h: Q → P`, whether every `f ∈ Adj(Q)` has some `g ∈ Adj(P)` with
/// `h∘f* = g*∘h` and `h∘f_* = g_*∘h`.
pub fn has_extension_property(
    h: &MonotoneMap,
    adj_q: &AdjunctionSet,
    adj_p: &AdjunctionSet,
) -> bool {
    adj_q.iter().all(|f| extension_of(h, f, adj_p).is_some())
}

/// Index of the first `g ∈ Adj(P)` extending `f` along `h`.
pub fn extension_of(h: &MonotoneMap, f: &GaloisConnection, adj_p: &AdjunctionSet) -> Option<usize> {
    let hf_lower = h.after(&f.lower);
    let hf_upper = h.after(&f.upper);
    adj_p
        .iter()
        .position(|g| g.lower.after(h) == hf_lower && g.upper.after(h) == hf_upper)
}

/// Inclusion `Q ↣ P` as a map in the subposet's indexing.
pub fn inclusion(q: &BitSet) -> MonotoneMap {
    MonotoneMap::from_values_unchecked(q.to_vec())
}

/// Membership in `Sub_s(P)`: restriction and extension property together.
pub fn is_strong_sub(adj_p: &AdjunctionSet, q: &BitSet, limits: &Limits) -> Result<bool> {
    if !is_weak_sub(adj_p, q) {
        return Ok(false);
    }
    let (sub, _) = adj_p.poset().subposet(q);
    let adj_q = enumerate_adjunctions(&sub, limits)?;
    Ok(has_extension_property(&inclusion(q), &adj_q, adj_p))
}

/// `f^ext` on `P_⊥` (index 0 is the new bottom), fixing `⊥` in both components.
pub fn extend_to_bottom(f: &GaloisConnection) -> GaloisConnection {
    let shift = |m: &MonotoneMap| {
        MonotoneMap::from_values_unchecked(
            std::iter::once(0)
                .chain(m.values().iter().map(|&v| v + 1))
                .collect(),
        )
    };
    GaloisConnection {
        lower: shift(&f.lower),
        upper: shift(&f.upper),
    }
}

/// `Adj(P₁) × Adj(P₂)` against `Adj(P₁ ◁ P₂)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrdinalSumCount {
    pub product: usize,
    pub sum: usize,
    /// Every componentwise `f₁ ⊕ f₂` is in `Adj(P₁ ◁ P₂)`.
    pub embedded: bool,
}

impl OrdinalSumCount {
    pub fn bijective(&self) -> bool {
        self.embedded && self.product == self.sum
    }
}

pub fn ordinal_sum_adjunctions(
    p1: &FinitePoset,
    p2: &FinitePoset,
    limits: &Limits,
) -> Result<OrdinalSumCount> {
    let a1 = enumerate_adjunctions(p1, limits)?;
    let a2 = enumerate_adjunctions(p2, limits)?;
    let sum = enumerate_adjunctions(&p1.ordinal_sum(p2), limits)?;
    let n = p1.len();
    let join = |x: &MonotoneMap, y: &MonotoneMap| {
        MonotoneMap::from_values_unchecked(
            x.values()
                .iter()
                .copied()
                .chain(y.values().iter().map(|&v| v + n))
                .collect(),
        )
    };
    let embedded = a1.iter().all(|f| {
        a2.iter().all(|g| {
            sum.index_of_lower(&join(&f.lower, &g.lower))
                .is_some_and(|i| sum.get(i).upper == join(&f.upper, &g.upper))
        })
    });
    Ok(OrdinalSumCount {
        product: a1.len() * a2.len(),
        sum: sum.len(),
        embedded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::catalog;

    fn map(v: &[usize]) -> MonotoneMap {
        MonotoneMap::from_values_unchecked(v.to_vec())
    }

    #[test]
    fn diamond_example_pair() {
        let d = catalog("diamond").unwrap();
        let lower = map(&[0, 0, 2, 2]);
        assert_eq!(right_adjoint_of(&d, &d, &lower), Some(map(&[1, 1, 3, 3])));
        assert_eq!(left_adjoint_of(&d, &d, &map(&[1, 1, 3, 3])), Some(lower));
    }

    #[test]
    fn antichain_endomaps() {
        let a = FinitePoset::antichain(2);
        assert_eq!(right_adjoint_of(&a, &a, &map(&[1, 0])), Some(map(&[1, 0])));
        assert_eq!(right_adjoint_of(&a, &a, &map(&[0, 0])), None);
    }

    #[test]
    fn two_has_two_adjunctions() {
        let two = FinitePoset::chain(2);
        assert_eq!(
            left_adjoint_of(&two, &two, &map(&[1, 1])),
            Some(map(&[0, 0]))
        );
        let adj = enumerate_adjunctions(&two, &Limits::default()).unwrap();
        assert_eq!(adj.len(), 2);
        assert!(adj.get(0).is_identity());
        assert_eq!(adj.get(1).lower, map(&[0, 0]));
        assert_eq!(adj.get(1).upper, map(&[1, 1]));
        assert_eq!(
            enumerate_adjunctions(&FinitePoset::chain(1), &Limits::default())
                .unwrap()
                .len(),
            1
        );
    }

    #[test]
    fn closure_and_interior_on_diamond() {
        let d = catalog("diamond").unwrap();
        let f = GaloisConnection {
            lower: map(&[0, 0, 2, 2]),
            upper: map(&[1, 1, 3, 3]),
        };
        assert_eq!(fixed_set(&closure_op(&f)).to_vec(), vec![1, 3]);
        assert_eq!(fixed_set(&interior_op(&f)).to_vec(), vec![0, 2]);
        let ff = compose(&f, &f).unwrap();
        assert!(satisfies_law(&d, &d, &ff.lower, &ff.upper));
        assert!(restricts_to(&d, &f, &BitSet::from_indices(4, [0, 3])).is_none());
    }

    #[test]
    fn weak_sub_of_four() {
        let four = FinitePoset::chain(4);
        let adj = enumerate_adjunctions(&four, &Limits::default()).unwrap();
        assert!(!is_weak_sub(&adj, &BitSet::from_indices(4, [1, 2])));
        assert!(is_weak_sub(&adj, &four.all()));
    }

    #[test]
    fn bottom_extension() {
        let f = GaloisConnection {
            lower: map(&[0, 0]),
            upper: map(&[1, 1]),
        };
        let e = extend_to_bottom(&f);
        assert_eq!(e.lower, map(&[0, 1, 1]));
        assert_eq!(e.upper, map(&[0, 2, 2]));
        let three = FinitePoset::chain(3);
        assert!(satisfies_law(&three, &three, &e.lower, &e.upper));
    }

    #[test]
    fn strong_sub_of_two() {
        let two = FinitePoset::chain(2);
        let adj = enumerate_adjunctions(&two, &Limits::default()).unwrap();
        assert!(is_strong_sub(&adj, &two.all(), &Limits::default()).unwrap());
    }

    #[test]
    fn compose_rejects_mismatch() {
        assert_eq!(
            compose(
                &GaloisConnection::identity(2),
                &GaloisConnection::identity(3)
            ),
            Err(Error::CarrierMismatch)
        );
    }
}
