//! Structural reductions and the theorems that compute `λ` from pieces:
//! tunnels, the van Kampen pushout for `λ`, the `T`/`B` towers, rigid
//! points and Paris points.

use rayon::prelude::*;

use crate::bits::{BitMatrix, BitSet};
use crate::covers::{
    star_fundamental_with, star_limit, three_block_covers, validate_cover, van_kampen_star_report,
};
use crate::error::{Error, Result};
use crate::fundamental::{is_s_continuous_with, lambda_with, FundamentalPoset};
use crate::galois::{
    enumerate_adjunctions, has_extension_property, inclusion, is_weak_sub, AdjunctionSet,
};
use crate::generate::all_posets_up_to;
use crate::iso::are_isomorphic;
use crate::limits::Limits;
use crate::map::MonotoneMap;
use crate::poset::{fresh_label, FinitePoset};
use crate::preorder::{posetal_reflection, Preorder, QuotientResult};

/// A closed interval `[a, b]` whose interior meets the rest of `P` only
/// through `a` and `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Tunnel {
    pub a: usize,
    pub b: usize,
    /// Not contained in a larger tunnel.
    pub maximal: bool,
}

pub fn is_tunnel(p: &FinitePoset, a: usize, b: usize) -> bool {
    if !p.lt(a, b) {
        return false;
    }
    let closed = p.interval(a, b).expect("a < b");
    let open = p.open_interval(a, b).expect("a < b");
    if open.count() < 2 {
        return false;
    }
    let ok = open.iter().all(|c| {
        p.elements()
            .filter(|&d| !closed.contains(d))
            .all(|d| (!p.lt(c, d) || p.lt(b, d)) && (!p.lt(d, c) || p.lt(d, a)))
    });
    ok
}

/// Every tunnel, ordered by `(a, b)`.
///
/// Tunnels need not nest: on `𝟓` both `[0,3]` and `[1,4]` are tunnels with
/// overlapping interiors, so no nesting is assumed.
pub fn find_tunnels(p: &FinitePoset) -> Vec<Tunnel> {
    let pairs: Vec<(usize, usize)> = p
        .relation()
        .pairs()
        .filter(|&(a, b)| a != b && is_tunnel(p, a, b))
        .collect();
    let span = |(a, b): (usize, usize)| p.interval(a, b).expect("a < b");
    let mut out: Vec<Tunnel> = pairs
        .iter()
        .map(|&t| {
            let inner = span(t);
            let maximal = !pairs.iter().any(|&u| u != t && inner.is_subset(&span(u)));
            Tunnel {
                a: t.0,
                b: t.1,
                maximal,
            }
        })
        .collect();
    out.sort_by_key(|t| (t.a, t.b));
    out
}

/// Replaces the interior of the tunnel `[a, b]` by a single element.
///
/// The new element takes the place and the label of the first interior
/// element; everything else keeps its relative order.
pub fn collapse_tunnel(p: &FinitePoset, a: usize, b: usize) -> Result<FinitePoset> {
    if a >= p.len() || b >= p.len() || !is_tunnel(p, a, b) {
        return Err(Error::NotATunnel(a, b));
    }
    let open = p.open_interval(a, b).expect("a < b");
    let c = open.first().expect("tunnels have interior points");
    let kept: Vec<usize> = p
        .elements()
        .filter(|&x| x == c || !open.contains(x))
        .collect();
    let leq = |i: usize, j: usize| {
        let (x, y) = (kept[i], kept[j]);
        match (x == c, y == c) {
            (true, true) => true,
            (true, false) => p.leq(b, y),
            (false, true) => p.leq(x, a),
            (false, false) => p.leq(x, y),
        }
    };
    let q = FinitePoset::from_fn(kept.len(), leq)?;
    q.with_labels(kept.iter().map(|&x| p.label(x).to_string()).collect())
}

/// Collapses maximal tunnels until none remain.
pub fn reduce(p: &FinitePoset) -> FinitePoset {
    let mut q = p.clone();
    while let Some(t) = find_tunnels(&q).into_iter().find(|t| t.maximal) {
        q = collapse_tunnel(&q, t.a, t.b).expect("found tunnels collapse");
    }
    q
}

/// Pushout of `A ← C → B` in `Pos`: glue along the images of `f` and `g`,
/// close the union of both orders, then reflect.
///
/// `A`'s elements come first in the carrier, then `B`'s.
pub fn pushout(a: &FinitePoset, b: &FinitePoset, f: &[usize], g: &[usize]) -> QuotientResult {
    let (n, m) = (a.len(), b.len());
    let mut rel = BitMatrix::new(n + m);
    for (i, j) in a.relation().pairs() {
        rel.set(i, j);
    }
    for (i, j) in b.relation().pairs() {
        rel.set(n + i, n + j);
    }
    for (&x, &y) in f.iter().zip(g) {
        rel.set(x, n + y);
        rel.set(n + y, x);
    }
    let pre = Preorder::closure_of(&rel);
    let mut q = posetal_reflection(&pre);
    let mut labels: Vec<String> = Vec::with_capacity(q.class_count());
    for class in &q.classes {
        let r = class[0];
        let base = if r < n { a.label(r) } else { b.label(r - n) };
        labels.push(fresh_label(&labels, base));
    }
    q.quotient = q.quotient.with_labels(labels).expect("labels are fresh");
    q
}

struct Piece {
    set: BitSet,
    members: Vec<usize>,
    adj: AdjunctionSet,
    lambda: Option<FundamentalPoset>,
}

impl Piece {
    fn new(p: &FinitePoset, set: &BitSet, limits: &Limits) -> Result<Piece> {
        let (poset, members) = p.subposet(set);
        let adj = enumerate_adjunctions(&poset, limits)?;
        let lambda = (!poset.is_empty()).then(|| lambda_with(&poset, &adj));
        Ok(Piece {
            set: set.clone(),
            members,
            adj,
            lambda,
        })
    }

    /// Inclusion of `inner` as a map into this piece's local indexing.
    fn include(&self, inner: &Piece) -> MonotoneMap {
        MonotoneMap::from_values_unchecked(
            inner
                .members
                .iter()
                .map(|x| {
                    self.members
                        .iter()
                        .position(|y| y == x)
                        .expect("inner ⊆ outer")
                })
                .collect(),
        )
    }

    fn localize(&self, set: &BitSet) -> BitSet {
        BitSet::from_indices(
            self.members.len(),
            self.members
                .iter()
                .enumerate()
                .filter(|(_, &m)| set.contains(m))
                .map(|(i, _)| i),
        )
    }

    /// Class of global element `x` in `λ` of this piece.
    fn class_of(&self, x: usize) -> usize {
        let local = self
            .members
            .iter()
            .position(|&y| y == x)
            .expect("x belongs to the piece");
        self.lambda
            .as_ref()
            .expect("nonempty piece")
            .quotient
            .class_of[local]
    }

    fn lambda_poset(&self) -> FinitePoset {
        self.lambda
            .as_ref()
            .map_or_else(FinitePoset::empty, |l| l.poset().clone())
    }
}

/// `λ(A) ∪_{λ(A∩B)} λ(B)` for subsets `A, B` of `P`.
fn lambda_pushout(a: &Piece, b: &Piece, c: &Piece) -> FinitePoset {
    let reps: Vec<usize> = c
        .lambda
        .as_ref()
        .map(|l| {
            l.quotient
                .classes
                .iter()
                .map(|cl| c.members[cl[0]])
                .collect()
        })
        .unwrap_or_default();
    let f: Vec<usize> = reps.iter().map(|&x| a.class_of(x)).collect();
    let g: Vec<usize> = reps.iter().map(|&x| b.class_of(x)).collect();
    pushout(&a.lambda_poset(), &b.lambda_poset(), &f, &g).quotient
}

/// The first failing hypothesis among restriction and continuity of `inner ↣ outer`.
fn inclusion_failure(name: &str, inner: &Piece, outer: &Piece) -> Option<String> {
    if inner.members.is_empty() {
        return None;
    }
    if !is_weak_sub(&outer.adj, &outer.localize(&inner.set)) {
        return Some(format!("{name} lacks the restriction property"));
    }
    let h = outer.include(inner);
    let (li, lo) = (inner.lambda.as_ref()?, outer.lambda.as_ref()?);
    if !is_s_continuous_with(&h, li, lo) {
        return Some(format!("{name} is not continuous"));
    }
    None
}

/// Both sides of the van Kampen theorem for `λ` on `P = P₁ ∪ P₂`.
#[derive(Clone, Debug)]
pub struct LambdaVanKampenReport {
    /// The first hypothesis that failed, if any.
    pub hypothesis_failure: Option<String>,
    pub pushout: FinitePoset,
    pub lambda: FinitePoset,
    pub isomorphic: bool,
}

/// Checks restriction and continuity of the four inclusions and computes
/// the pushout `λ(P₁) ∪_{λ(P₁∩P₂)} λ(P₂)` whether or not they hold.
pub fn van_kampen_lambda_report(
    p: &FinitePoset,
    p1: &BitSet,
    p2: &BitSet,
    limits: &Limits,
) -> Result<LambdaVanKampenReport> {
    if p.is_empty() {
        return Err(Error::EmptyPoset);
    }
    if p1.universe() != p.len() || p2.universe() != p.len() {
        return Err(Error::NotASubset);
    }
    if p1.union(p2) != p.all() {
        return Err(Error::HypothesisFailed("P₁ ∪ P₂ is not all of P".into()));
    }
    let whole = Piece::new(p, &p.all(), limits)?;
    let one = Piece::new(p, p1, limits)?;
    let two = Piece::new(p, p2, limits)?;
    let meet = Piece::new(p, &p1.intersection(p2), limits)?;
    let hypothesis_failure = inclusion_failure("P₁∩P₂ ↣ P₁", &meet, &one)
        .or_else(|| inclusion_failure("P₁∩P₂ ↣ P₂", &meet, &two))
        .or_else(|| inclusion_failure("P₁ ↣ P", &one, &whole))
        .or_else(|| inclusion_failure("P₂ ↣ P", &two, &whole));
    let pushout = lambda_pushout(&one, &two, &meet);
    let lambda = whole.lambda_poset();
    let isomorphic = are_isomorphic(&pushout, &lambda);
    Ok(LambdaVanKampenReport {
        hypothesis_failure,
        pushout,
        lambda,
        isomorphic,
    })
}

/// [`van_kampen_lambda_report`] as a checker.
pub fn van_kampen_lambda(
    p: &FinitePoset,
    p1: &BitSet,
    p2: &BitSet,
    limits: &Limits,
) -> Result<LambdaVanKampenReport> {
    let report = van_kampen_lambda_report(p, p1, p2, limits)?;
    if let Some(why) = &report.hypothesis_failure {
        return Err(Error::HypothesisFailed(why.clone()));
    }
    if !report.isomorphic {
        return Err(Error::TheoremViolation(format!(
            "pushout {:?} is not λ(P) = {:?}",
            report.pushout, report.lambda
        )));
    }
    Ok(report)
}

/// `T_0 ⊇ T_1 ⊇ … ⊇ T_t`, or the dual tower of `B`s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tower {
    pub levels: Vec<BitSet>,
}

impl Tower {
    /// `t(P)` (or `b(P)`).
    pub fn index(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn top(&self) -> &BitSet {
        self.levels.last().expect("towers start at P")
    }
}

/// `T(Q) = ⋂_{x ∈ max Q} x↓`, computed inside the subset `q`.
fn t_step(p: &FinitePoset, q: &BitSet) -> BitSet {
    let mut out = q.clone();
    for x in maxima(p, q) {
        out.intersect_with(p.down_set(x));
    }
    out
}

fn maxima(p: &FinitePoset, q: &BitSet) -> Vec<usize> {
    q.iter()
        .filter(|&x| q.iter().all(|y| y == x || !p.lt(x, y)))
        .collect()
}

fn minima(p: &FinitePoset, q: &BitSet) -> Vec<usize> {
    q.iter()
        .filter(|&x| q.iter().all(|y| y == x || !p.lt(y, x)))
        .collect()
}

/// The tower `T_n(P)` up to `t(P)`, checking `T_{n+1} ∈ Sub_w(T_n)` on the way.
#[allow(non_snake_case)]
pub fn T_tower(p: &FinitePoset, limits: &Limits) -> Result<Tower> {
    if !p.is_connected() || p.is_empty() {
        return Err(Error::NotConnected);
    }
    let mut levels = vec![p.all()];
    loop {
        let cur = levels.last().expect("nonempty");
        let next = t_step(p, cur);
        if next == *cur || next.is_empty() {
            break;
        }
        let (sub, members) = p.subposet(cur);
        let adj = enumerate_adjunctions(&sub, limits)?;
        let local = BitSet::from_indices(
            members.len(),
            members
                .iter()
                .enumerate()
                .filter(|(_, &m)| next.contains(m))
                .map(|(i, _)| i),
        );
        if !is_weak_sub(&adj, &local) {
            return Err(Error::TheoremViolation(format!(
                "T_{} = {:?} is not in Sub_w(T_{})",
                levels.len(),
                next,
                levels.len() - 1
            )));
        }
        levels.push(next);
    }
    Ok(Tower { levels })
}

/// The tower `B_m(P)` up to `b(P)`, the dual of [`T_tower`].
#[allow(non_snake_case)]
pub fn B_tower(p: &FinitePoset, limits: &Limits) -> Result<Tower> {
    T_tower(&p.dual(), limits)
}

/// `η` on `max P` with `f*(a) ≤ b ⟺ b = η(a)`, as `(a, η(a))` pairs.
pub fn max_permutation(
    p: &FinitePoset,
    f: &crate::galois::GaloisConnection,
) -> Result<Vec<(usize, usize)>> {
    if !p.is_connected() || p.is_empty() {
        return Err(Error::NotConnected);
    }
    let maxes = p.maximal_elements();
    let mut out = Vec::with_capacity(maxes.len());
    for &a in &maxes {
        let above: Vec<usize> = maxes
            .iter()
            .copied()
            .filter(|&b| p.leq(f.lower.apply(a), b))
            .collect();
        match above[..] {
            [b] => out.push((a, b)),
            _ => {
                return Err(Error::TheoremViolation(format!(
                    "f*({}) lies below {} maximal elements",
                    p.label(a),
                    above.len()
                )))
            }
        }
    }
    let mut targets: Vec<usize> = out.iter().map(|&(_, b)| b).collect();
    targets.sort_unstable();
    targets.dedup();
    if targets.len() != maxes.len() {
        return Err(Error::TheoremViolation(
            "η is not a permutation of max P".into(),
        ));
    }
    Ok(out)
}

/// `ρ` on `min P` with `f_*(b) ≥ a ⟺ a = ρ(b)`, as `(b, ρ(b))` pairs.
pub fn min_permutation(
    p: &FinitePoset,
    f: &crate::galois::GaloisConnection,
) -> Result<Vec<(usize, usize)>> {
    // on P^op the roles of the adjoints swap
    let swapped = crate::galois::GaloisConnection {
        lower: f.upper.clone(),
        upper: f.lower.clone(),
    };
    max_permutation(&p.dual(), &swapped)
}

/// Points fixed by every closure operator and by every interior operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidPoints {
    /// `⋃_n max T_n(P)`.
    pub closure: BitSet,
    /// `⋃_m min B_m(P)`.
    pub interior: BitSet,
}

/// The rigid subsets, verified against every `f ∈ Adj(P)`.
pub fn rigid_points(p: &FinitePoset, limits: &Limits) -> Result<RigidPoints> {
    let adj = enumerate_adjunctions(p, limits)?;
    let mut closure = BitSet::new(p.len());
    for level in &T_tower(p, limits)?.levels {
        for x in maxima(p, level) {
            closure.insert(x);
        }
    }
    let mut interior = BitSet::new(p.len());
    for level in &B_tower(p, limits)?.levels {
        for x in minima(p, level) {
            interior.insert(x);
        }
    }
    for f in adj.iter() {
        let (c, i) = (f.closure(), f.interior());
        if let Some(x) = closure.iter().find(|&x| c.apply(x) != x) {
            return Err(Error::TheoremViolation(format!(
                "closure {c:?} moves {}",
                p.label(x)
            )));
        }
        if let Some(x) = interior.iter().find(|&x| i.apply(x) != x) {
            return Err(Error::TheoremViolation(format!(
                "interior {i:?} moves {}",
                p.label(x)
            )));
        }
    }
    Ok(RigidPoints { closure, interior })
}

/// Both sides of a Paris-point decomposition `λ(P) = λ(T_n) ∪_{λ(T_n∩B_m)} λ(B_m)`.
#[derive(Clone, Debug)]
pub struct ParisReport {
    pub n: usize,
    pub m: usize,
    /// `T_n(P)`.
    pub top: BitSet,
    /// `B_m(P)`.
    pub bottom: BitSet,
    /// Whether the inclusions of the pieces into `P` (and, for the
    /// singleton form, of `T_n ∩ B_m` into the pieces) have the extension property.
    pub extension: bool,
    pub pushout: FinitePoset,
    pub lambda: FinitePoset,
    pub isomorphic: bool,
}

fn paris_sides(
    p: &FinitePoset,
    n: usize,
    m: usize,
    top: BitSet,
    bottom: BitSet,
    limits: &Limits,
) -> Result<ParisReport> {
    let whole = Piece::new(p, &p.all(), limits)?;
    let t = Piece::new(p, &top, limits)?;
    let b = Piece::new(p, &bottom, limits)?;
    let meet = Piece::new(p, &top.intersection(&bottom), limits)?;
    let extends = |inner: &Piece, outer: &Piece| {
        inner.members.is_empty()
            || has_extension_property(&outer.include(inner), &inner.adj, &outer.adj)
    };
    let extension =
        extends(&t, &whole) && extends(&b, &whole) && extends(&meet, &t) && extends(&meet, &b);
    let pushout = lambda_pushout(&t, &b, &meet);
    let lambda = whole.lambda_poset();
    let isomorphic = are_isomorphic(&pushout, &lambda);
    Ok(ParisReport {
        n,
        m,
        top,
        bottom,
        extension,
        pushout,
        lambda,
        isomorphic,
    })
}

fn paris_result(report: ParisReport) -> Result<ParisReport> {
    if report.isomorphic {
        Ok(report)
    } else {
        Err(Error::TheoremViolation(format!(
            "pushout {:?} is not λ(P) = {:?}",
            report.pushout, report.lambda
        )))
    }
}

/// The singleton form: `max T_t = {x}` and `min B_b = {y}` cutsets with `x ≥ y`.
pub fn paris_point(p: &FinitePoset, limits: &Limits) -> Result<ParisReport> {
    let tt = T_tower(p, limits)?;
    let bt = B_tower(p, limits)?;
    let (t, b) = (tt.index(), bt.index());
    let xs = maxima(p, tt.top());
    let ys = minima(p, bt.top());
    let ([x], [y]) = (&xs[..], &ys[..]) else {
        return Err(Error::HypothesisFailed(format!(
            "max T_t has {} elements and min B_b has {}",
            xs.len(),
            ys.len()
        )));
    };
    let (x, y) = (*x, *y);
    if !p.is_cutset(&BitSet::from_indices(p.len(), [x])) {
        return Err(Error::HypothesisFailed(format!(
            "{{{}}} is not a cutset",
            p.label(x)
        )));
    }
    if !p.is_cutset(&BitSet::from_indices(p.len(), [y])) {
        return Err(Error::HypothesisFailed(format!(
            "{{{}}} is not a cutset",
            p.label(y)
        )));
    }
    if !p.leq(y, x) {
        return Err(Error::HypothesisFailed(format!(
            "{} is not below {}",
            p.label(y),
            p.label(x)
        )));
    }
    paris_result(paris_sides(
        p,
        t,
        b,
        p.down_set(x).clone(),
        p.up_set(y).clone(),
        limits,
    )?)
}

/// Checks the two cutset bullets shared by the general and the `Λ*` forms.
fn general_hypotheses(
    p: &FinitePoset,
    n: usize,
    m: usize,
    limits: &Limits,
) -> Result<(BitSet, BitSet)> {
    let tt = T_tower(p, limits)?;
    let bt = B_tower(p, limits)?;
    if n > tt.index() || m > bt.index() {
        return Err(Error::HypothesisFailed(format!(
            "need n ≤ t = {} and m ≤ b = {}",
            tt.index(),
            bt.index()
        )));
    }
    let (top, bottom) = (tt.levels[n].clone(), bt.levels[m].clone());
    let (xs, ys) = (maxima(p, &top), minima(p, &bottom));
    if !p.is_cutset(&BitSet::from_indices(p.len(), xs.iter().copied())) {
        return Err(Error::HypothesisFailed(format!(
            "max T_{n} is not a cutset"
        )));
    }
    if !p.is_cutset(&BitSet::from_indices(p.len(), ys.iter().copied())) {
        return Err(Error::HypothesisFailed(format!(
            "min B_{m} is not a cutset"
        )));
    }
    if let Some(&y) = ys.iter().find(|&&y| !xs.iter().any(|&x| p.leq(y, x))) {
        return Err(Error::HypothesisFailed(format!(
            "{} is below no element of max T_{n}",
            p.label(y)
        )));
    }
    Ok((top, bottom))
}

/// The general form for given `n ≤ t(P)` and `m ≤ b(P)`.
pub fn paris_point_general(
    p: &FinitePoset,
    n: usize,
    m: usize,
    limits: &Limits,
) -> Result<ParisReport> {
    let (top, bottom) = general_hypotheses(p, n, m, limits)?;
    let adj = enumerate_adjunctions(p, limits)?;
    for (name, set) in [("T", &top), ("B", &bottom)] {
        let (sub, _) = p.subposet(set);
        let adj_sub = enumerate_adjunctions(&sub, limits)?;
        if !has_extension_property(&inclusion(set), &adj_sub, &adj) {
            return Err(Error::HypothesisFailed(format!(
                "{name} ↣ P lacks the extension property"
            )));
        }
    }
    paris_result(paris_sides(p, n, m, top, bottom, limits)?)
}

/// Both sides of `Λ*(S, P_⊥) = Λ*(S, (T_n)_⊥) ×_{Λ*(S, (T_n∩B_m)_⊥)} Λ*(S, (B_m)_⊥)`.
#[derive(Clone, Debug)]
pub struct ParisStarReport {
    pub star: FinitePoset,
    pub pullback: FinitePoset,
    pub isomorphic: bool,
    pub chain_compact: bool,
}

pub fn paris_point_star(
    p: &FinitePoset,
    s: &FinitePoset,
    n: usize,
    m: usize,
    limits: &Limits,
) -> Result<ParisStarReport> {
    if !s.is_total() {
        return Err(Error::HypothesisFailed(
            "S is not a finite total order".into(),
        ));
    }
    let (top, bottom) = general_hypotheses(p, n, m, limits)?;
    let meet = top.intersection(&bottom);
    let cover = validate_cover(p, &[top, bottom, meet], limits).map_err(|e| match e {
        Error::Cover(c) => {
            Error::HypothesisFailed(format!("{{T_n, B_m, T_n∩B_m}} is not a cover: {c}"))
        }
        other => other,
    })?;
    let adj_s = enumerate_adjunctions(s, limits)?;
    let star = star_fundamental_with(s, p, &adj_s, cover.adjunctions(), limits)?;
    let stars: Vec<FundamentalPoset> = cover
        .blocks()
        .iter()
        .map(|b| star_fundamental_with(s, &b.poset, &adj_s, &b.adj, limits))
        .collect::<Result<_>>()?;
    let pullback = star_limit(&cover, s, &stars)?;
    let isomorphic = are_isomorphic(&pullback, star.poset());
    let report = ParisStarReport {
        star: star.poset().clone(),
        pullback,
        isomorphic,
        chain_compact: crate::covers::is_chain_compact(&cover),
    };
    if !report.isomorphic {
        return Err(Error::TheoremViolation(format!(
            "pullback has {} elements, Λ*(S,P_⊥) has {}, and they are not isomorphic",
            report.pullback.len(),
            report.star.len()
        )));
    }
    Ok(report)
}

/// Which theorem's hypotheses an instance search looks for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Hypothesis {
    Paris,
    VanKampenLambda,
    /// `S` is the chain with `source` elements.
    VanKampenStar {
        source: usize,
    },
}

/// A poset and the pieces satisfying the hypotheses, with the verdict.
#[derive(Clone, Debug)]
pub struct Instance {
    pub poset: FinitePoset,
    pub pieces: Vec<BitSet>,
    /// Whether the conclusion held.
    pub holds: bool,
    pub note: String,
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub hypothesis: Hypothesis,
    pub max_size: usize,
    /// Connected posets examined.
    pub examined: usize,
    pub instances: Vec<Instance>,
}

/// Runs the hypothesis checker over every connected poset with at most
/// `max_size` elements and records each instance with both sides compared.
///
/// Van Kampen instances for `λ` use two proper subsets; `Λ*` instances use
/// the three-block chain-compact covers.
pub fn search(max_size: usize, hypothesis: Hypothesis, limits: &Limits) -> Result<SearchReport> {
    let posets: Vec<FinitePoset> = all_posets_up_to(max_size, limits)?
        .into_iter()
        .filter(|p| p.is_connected())
        .collect();
    let found: Vec<Vec<Instance>> = posets
        .par_iter()
        .map(|p| match hypothesis {
            Hypothesis::Paris => paris_instances(p, limits),
            Hypothesis::VanKampenLambda => van_kampen_instances(p, limits),
            Hypothesis::VanKampenStar { source } => star_instances(p, source, limits),
        })
        .collect::<Result<_>>()?;
    Ok(SearchReport {
        hypothesis,
        max_size,
        examined: posets.len(),
        instances: found.into_iter().flatten().collect(),
    })
}

/// Sorts a checker outcome into "not an instance", "instance" or a hard error.
fn verdict<T>(r: Result<T>) -> Result<Option<(bool, String)>> {
    match r {
        Ok(_) => Ok(Some((true, String::new()))),
        Err(Error::HypothesisFailed(_)) => Ok(None),
        Err(Error::TheoremViolation(why)) => Ok(Some((false, why))),
        Err(e) => Err(e),
    }
}

fn paris_instances(p: &FinitePoset, limits: &Limits) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    if let Some((holds, why)) = verdict(paris_point(p, limits))? {
        out.push(Instance {
            poset: p.clone(),
            pieces: Vec::new(),
            holds,
            note: format!("singleton {why}"),
        });
    }
    let (t, b) = (T_tower(p, limits)?.index(), B_tower(p, limits)?.index());
    for n in 0..=t {
        for m in 0..=b {
            if let Some((holds, why)) = verdict(paris_point_general(p, n, m, limits))? {
                out.push(Instance {
                    poset: p.clone(),
                    pieces: Vec::new(),
                    holds,
                    note: format!("n={n} m={m} {why}"),
                });
            }
        }
    }
    Ok(out)
}

fn van_kampen_instances(p: &FinitePoset, limits: &Limits) -> Result<Vec<Instance>> {
    let n = p.len();
    let adj = enumerate_adjunctions(p, limits)?;
    let set = |mask: u64| BitSet::from_indices(n, (0..n).filter(|&i| mask >> i & 1 == 1));
    let full = (1u64 << n) - 1;
    // proper pieces must lie in Sub_w(P)
    let weak: Vec<u64> = (1..full).filter(|&m| is_weak_sub(&adj, &set(m))).collect();
    let mut out = Vec::new();
    for (i, &a) in weak.iter().enumerate() {
        for &b in &weak[i + 1..] {
            if a | b != full {
                continue;
            }
            let (p1, p2) = (set(a), set(b));
            let report = van_kampen_lambda_report(p, &p1, &p2, limits)?;
            if report.hypothesis_failure.is_none() {
                out.push(Instance {
                    poset: p.clone(),
                    pieces: vec![p1, p2],
                    holds: report.isomorphic,
                    note: String::new(),
                });
            }
        }
    }
    Ok(out)
}

fn star_instances(p: &FinitePoset, source: usize, limits: &Limits) -> Result<Vec<Instance>> {
    if source == 0 {
        return Err(Error::EmptyDomain);
    }
    let s = FinitePoset::chain(source);
    let mut out = Vec::new();
    for cover in three_block_covers(p, limits)? {
        match van_kampen_star_report(&s, &cover, limits) {
            Ok(r) => out.push(Instance {
                poset: p.clone(),
                pieces: cover.blocks().iter().map(|b| b.set.clone()).collect(),
                holds: r.holds(),
                note: format!(
                    "iff violations {}, limit {} vs Λ* {}",
                    r.iff_violations.len(),
                    r.limit.len(),
                    r.star.len()
                ),
            }),
            Err(Error::HypothesisFailed(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fundamental::lambda;
    use crate::poset::catalog;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn tunnels_of_small_posets() {
        let four = FinitePoset::chain(4);
        assert_eq!(
            find_tunnels(&four),
            vec![Tunnel {
                a: 0,
                b: 3,
                maximal: true
            }]
        );
        let d = catalog("diamond").unwrap();
        assert_eq!(
            find_tunnels(&d),
            vec![Tunnel {
                a: 0,
                b: 3,
                maximal: true
            }]
        );
        assert!(find_tunnels(&FinitePoset::chain(3)).is_empty());
    }

    #[test]
    fn chain_tunnels_overlap_without_nesting() {
        let five = FinitePoset::chain(5);
        assert!(is_tunnel(&five, 0, 3) && is_tunnel(&five, 1, 4));
        assert!(find_tunnels(&five)
            .iter()
            .filter(|t| t.maximal)
            .eq([&Tunnel {
                a: 0,
                b: 4,
                maximal: true
            }]));
    }

    #[test]
    fn collapse_and_reduce() {
        let d = catalog("diamond").unwrap();
        let c = collapse_tunnel(&d, 0, 3).unwrap();
        assert!(are_isomorphic(&c, &FinitePoset::chain(3)));
        assert!(are_isomorphic(
            lambda(&c, &lim()).unwrap().poset(),
            lambda(&d, &lim()).unwrap().poset()
        ));
        assert!(are_isomorphic(
            &reduce(&FinitePoset::chain(6)),
            &FinitePoset::chain(3)
        ));
        assert_eq!(collapse_tunnel(&d, 0, 1), Err(Error::NotATunnel(0, 1)));
    }

    #[test]
    fn towers_of_v() {
        let v = catalog("V").unwrap();
        let t = T_tower(&v, &lim()).unwrap();
        assert_eq!(t.index(), 1);
        assert_eq!(t.top().to_vec(), vec![v.index_of("v").unwrap()]);
        let d = catalog("diamond").unwrap();
        assert_eq!(T_tower(&d, &lim()).unwrap().index(), 0);
        assert_eq!(B_tower(&d, &lim()).unwrap().index(), 0);
    }

    #[test]
    fn rigid_points_of_v() {
        let v = catalog("V").unwrap();
        let r = rigid_points(&v, &lim()).unwrap();
        assert_eq!(r.closure.count(), 3);
    }

    #[test]
    fn disjoint_pushout_is_not_lambda() {
        let two = FinitePoset::chain(2);
        let p = two.disjoint_union(&two);
        let r = van_kampen_lambda_report(
            &p,
            &BitSet::from_indices(4, [0, 1]),
            &BitSet::from_indices(4, [2, 3]),
            &lim(),
        )
        .unwrap();
        assert!(r.hypothesis_failure.unwrap().contains("restriction"));
        assert!(!r.isomorphic);
    }

    #[test]
    fn trivial_van_kampen() {
        let d = catalog("diamond").unwrap();
        assert!(
            van_kampen_lambda(&d, &d.all(), &d.all(), &lim())
                .unwrap()
                .isomorphic
        );
    }

    #[test]
    fn identity_permutations() {
        let x = catalog("X").unwrap();
        let id = crate::galois::GaloisConnection::identity(x.len());
        assert!(max_permutation(&x, &id)
            .unwrap()
            .iter()
            .all(|(a, b)| a == b));
        assert!(min_permutation(&x, &id)
            .unwrap()
            .iter()
            .all(|(a, b)| a == b));
    }
}
