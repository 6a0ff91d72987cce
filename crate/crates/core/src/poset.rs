//! Finite posets and the elementary constructions on them.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::bits::{BitMatrix, BitSet};
use crate::error::{Error, Result};

/// A finite partially ordered set on the indices `0..n`.
///
/// Labels only matter at the I/O boundary; every algorithm works on indices.
#[derive(Clone, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    leq: BitMatrix,
    geq: BitMatrix,
}

impl FinitePoset {
    /// Builds a poset from an explicit `≤` matrix, checking all three axioms.
    pub fn new(labels: Vec<String>, leq: BitMatrix) -> Result<Self> {
        let n = labels.len();
        assert_eq!(leq.size(), n, "label count and relation size differ");
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        for i in 0..n {
            if !leq.get(i, i) {
                return Err(Error::NotReflexive(i));
            }
        }
        for i in 0..n {
            for j in leq.row(i).iter() {
                if i != j && leq.get(j, i) {
                    return Err(Error::NotAntisymmetric(i, j));
                }
                if let Some(k) = leq.row(j).iter().find(|&k| !leq.get(i, k)) {
                    return Err(Error::NotTransitive(i, j, k));
                }
            }
        }
        Ok(Self::from_parts(labels, leq))
    }

    fn from_parts(labels: Vec<String>, leq: BitMatrix) -> Self {
        let geq = leq.transpose();
        FinitePoset { labels, leq, geq }
    }

    /// Builds the poset whose order is the reflexive-transitive closure of `covers`.
    pub fn from_covers<S: AsRef<str>>(labels: &[S], covers: &[(S, S)]) -> Result<Self> {
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| Error::UnknownLabel(s.to_string()))
        };
        let mut rel = BitMatrix::new(labels.len());
        for (a, b) in covers {
            rel.set(lookup(a.as_ref())?, lookup(b.as_ref())?);
        }
        Self::from_relation(labels, &rel)
    }

    /// Reflexive-transitive closure of an arbitrary relation; fails on cycles.
    pub fn from_relation(labels: Vec<String>, rel: &BitMatrix) -> Result<Self> {
        let leq = rel.reflexive_transitive_closure();
        for i in 0..labels.len() {
            for j in leq.row(i).iter() {
                if i != j && leq.get(j, i) {
                    return Err(Error::Cycle(labels[i].clone()));
                }
            }
        }
        Ok(Self::from_parts(labels, leq))
    }

    /// Poset on `0..n` labelled by index, with `i ≤ j` decided by `f`.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let mut leq = BitMatrix::new(n);
        for i in 0..n {
            for j in 0..n {
                if i == j || f(i, j) {
                    leq.set(i, j);
                }
            }
        }
        Self::new(index_labels(n), leq)
    }

    pub fn empty() -> Self {
        Self::from_parts(Vec::new(), BitMatrix::new(0))
    }

    /// The chain `0 < 1 < … < n-1`.
    pub fn chain(n: usize) -> Self {
        Self::from_fn(n, |i, j| i <= j).expect("chain is a poset")
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_fn(n, |i, j| i == j).expect("antichain is a poset")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq.get(i, j)
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq.get(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    pub fn relation(&self) -> &BitMatrix {
        &self.leq
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn with_labels(&self, labels: Vec<String>) -> Result<Self> {
        assert_eq!(labels.len(), self.len());
        Self::new(labels, self.leq.clone())
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn all(&self) -> BitSet {
        BitSet::full(self.len())
    }

    /// `p↑ = { q : p ≤ q }`
    pub fn up_set(&self, p: usize) -> &BitSet {
        self.leq.row(p)
    }

    /// `q↓ = { p : p ≤ q }`
    pub fn down_set(&self, q: usize) -> &BitSet {
        self.geq.row(q)
    }

    /// Closed interval `[p, q]`.
    pub fn interval(&self, p: usize, q: usize) -> Result<BitSet> {
        if !self.leq(p, q) {
            return Err(Error::NotComparable(p, q));
        }
        Ok(self.up_set(p).intersection(self.down_set(q)))
    }

    /// Open interval `(p, q)`.
    pub fn open_interval(&self, p: usize, q: usize) -> Result<BitSet> {
        let mut s = self.interval(p, q)?;
        s.remove(p);
        s.remove(q);
        Ok(s)
    }

    pub fn is_minimal(&self, p: usize) -> bool {
        self.down_set(p).count() == 1
    }

    pub fn is_maximal(&self, p: usize) -> bool {
        self.up_set(p).count() == 1
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        self.elements().filter(|&p| self.is_minimal(p)).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        self.elements().filter(|&p| self.is_maximal(p)).collect()
    }

    pub fn bottom(&self) -> Option<usize> {
        self.elements()
            .find(|&p| self.up_set(p).count() == self.len())
    }

    pub fn top(&self) -> Option<usize> {
        self.elements()
            .find(|&p| self.down_set(p).count() == self.len())
    }

    pub fn is_total(&self) -> bool {
        self.elements()
            .all(|i| self.elements().all(|j| self.comparable(i, j)))
    }

    /// Covering pairs `(a, b)` with `a ⋖ b`: the Hasse diagram edges.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in self.elements() {
            for b in self.up_set(a).iter() {
                if a == b {
                    continue;
                }
                let between = self.up_set(a).intersection(self.down_set(b)).count();
                if between == 2 {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// A linear extension: indices sorted by the size of their down-set.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = self.elements().collect();
        order.sort_by_key(|&p| (self.down_set(p).count(), p));
        order
    }

    /// The induced subposet on `subset`, plus the map from new to old indices.
    pub fn subposet(&self, subset: &BitSet) -> (FinitePoset, Vec<usize>) {
        let members = subset.to_vec();
        let m = members.len();
        let mut leq = BitMatrix::new(m);
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                if self.leq(a, b) {
                    leq.set(i, j);
                }
            }
        }
        let labels = members.iter().map(|&a| self.labels[a].clone()).collect();
        (Self::from_parts(labels, leq), members)
    }

    /// Opposite order `P^op`.
    pub fn dual(&self) -> FinitePoset {
        Self::from_parts(self.labels.clone(), self.geq.clone())
    }

    /// Disjoint union `P ⊔ Q`, with `Q`'s elements after `P`'s.
    pub fn disjoint_union(&self, other: &FinitePoset) -> FinitePoset {
        self.glue(other, false)
    }

    /// Ordinal sum `P ◁ Q`: every element of `P` strictly below every element of `Q`.
    pub fn ordinal_sum(&self, other: &FinitePoset) -> FinitePoset {
        self.glue(other, true)
    }

    fn glue(&self, other: &FinitePoset, stacked: bool) -> FinitePoset {
        let (n, m) = (self.len(), other.len());
        let mut labels = self.labels.clone();
        for l in &other.labels {
            labels.push(fresh_label(&labels, l));
        }
        let mut leq = BitMatrix::new(n + m);
        for (i, j) in self.leq.pairs() {
            leq.set(i, j);
        }
        for (i, j) in other.leq.pairs() {
            leq.set(n + i, n + j);
        }
        if stacked {
            for i in 0..n {
                for j in 0..m {
                    leq.set(i, n + j);
                }
            }
        }
        Self::from_parts(labels, leq)
    }

    /// `P_⊥ = 𝟏 ◁ P`; the new bottom is index 0.
    pub fn add_bottom(&self) -> FinitePoset {
        let bot =
            FinitePoset::from_parts(vec![fresh_label(&self.labels, "⊥")], BitMatrix::identity(1));
        let mut sum = bot.ordinal_sum(self);
        // keep the original labels untouched
        sum.labels[1..].clone_from_slice(&self.labels);
        sum
    }

    /// Cone `CP`: a new bottom (index 0), `P` shifted by one, and a new top (last index).
    pub fn cone(&self) -> FinitePoset {
        let bot_label = fresh_label(&self.labels, "⊥");
        let mut with_bot = self.labels.clone();
        with_bot.push(bot_label.clone());
        let top_label = fresh_label(&with_bot, "⊤");
        let bot = FinitePoset::from_parts(vec![bot_label], BitMatrix::identity(1));
        let top = FinitePoset::from_parts(vec![top_label.clone()], BitMatrix::identity(1));
        let mut c = bot.ordinal_sum(self).ordinal_sum(&top);
        let n = c.len();
        c.labels[1..n - 1].clone_from_slice(&self.labels);
        c.labels[n - 1] = top_label;
        c
    }

    /// Cartesian product with the componentwise order; `(i, j)` sits at `i * |Q| + j`.
    pub fn product(&self, other: &FinitePoset) -> FinitePoset {
        let m = other.len();
        let n = self.len() * m;
        let mut leq = BitMatrix::new(n);
        for a in 0..n {
            for b in 0..n {
                if self.leq(a / m, b / m) && other.leq(a % m, b % m) {
                    leq.set(a, b);
                }
            }
        }
        let labels = (0..n)
            .map(|a| format!("({},{})", self.labels[a / m], other.labels[a % m]))
            .collect();
        Self::from_parts(labels, leq)
    }

    /// All nonempty chains, each as a strictly increasing element list.
    ///
    /// Ordered by length, then lexicographically along the linear extension.
    pub fn chains(&self) -> Vec<Vec<usize>> {
        let order = self.linear_extension();
        let mut out = Vec::new();
        let mut stack: Vec<usize> = Vec::new();
        fn grow(
            p: &FinitePoset,
            order: &[usize],
            start: usize,
            stack: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            for k in start..order.len() {
                let x = order[k];
                if stack.last().is_none_or(|&last| p.lt(last, x)) {
                    stack.push(x);
                    out.push(stack.clone());
                    grow(p, order, k + 1, stack, out);
                    stack.pop();
                }
            }
        }
        grow(self, &order, 0, &mut stack, &mut out);
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Maximal chains, bottom to top.
    pub fn maximal_chains(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let covers = self.covers();
        let mut up: Vec<Vec<usize>> = vec![Vec::new(); self.len()];
        for &(a, b) in &covers {
            up[a].push(b);
        }
        fn walk(up: &[Vec<usize>], x: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            path.push(x);
            if up[x].is_empty() {
                out.push(path.clone());
            } else {
                for &y in &up[x] {
                    walk(up, y, path, out);
                }
            }
            path.pop();
        }
        for m in self.minimal_elements() {
            walk(&up, m, &mut Vec::new(), &mut out);
        }
        out.sort();
        out
    }

    /// Height `d(P)`: the largest number of elements in a chain.
    pub fn height(&self) -> Result<usize> {
        if self.is_empty() {
            return Err(Error::EmptyPoset);
        }
        let mut longest = vec![1usize; self.len()];
        for &x in &self.linear_extension() {
            for y in self.down_set(x).iter() {
                if y != x {
                    longest[x] = longest[x].max(longest[y] + 1);
                }
            }
        }
        Ok(longest.into_iter().max().unwrap_or(0))
    }

    /// Connected components of the comparability graph, ordered by least element index.
    pub fn connected_components(&self) -> Vec<BitSet> {
        let n = self.len();
        let mut comp = vec![usize::MAX; n];
        let mut blocks = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = blocks.len();
            let mut block = BitSet::new(n);
            let mut stack = vec![start];
            comp[start] = id;
            while let Some(x) = stack.pop() {
                block.insert(x);
                for y in self.up_set(x).iter().chain(self.down_set(x).iter()) {
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        stack.push(y);
                    }
                }
            }
            blocks.push(block);
        }
        blocks
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Whether every maximal chain meets `subset`.
    pub fn is_cutset(&self, subset: &BitSet) -> bool {
        self.maximal_chains()
            .iter()
            .all(|c| c.iter().any(|&x| subset.contains(x)))
    }

    pub fn is_down_closed(&self, subset: &BitSet) -> bool {
        subset.iter().all(|x| self.down_set(x).is_subset(subset))
    }

    pub fn is_up_closed(&self, subset: &BitSet) -> bool {
        subset.iter().all(|x| self.up_set(x).is_subset(subset))
    }
}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .covers()
            .iter()
            .map(|&(a, b)| format!("{}<{}", self.labels[a], self.labels[b]))
            .collect();
        write!(f, "Poset[{}; {}]", self.labels.join(" "), edges.join(", "))
    }
}

pub(crate) fn index_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// `base`, primed until it no longer clashes with `taken`.
pub(crate) fn fresh_label(taken: &[String], base: &str) -> String {
    let mut l = base.to_string();
    while taken.iter().any(|t| *t == l) {
        l.push('\'');
    }
    l
}

/// Named posets used throughout the theory.
///
/// Accepts `one`, `two`, `three`, `n(k)`, `diamond`, `V`, `X`, `bowtie`,
/// `antichain(k)` and `cone_diamond`.
pub fn catalog(name: &str) -> Result<FinitePoset> {
    let parse_arg = |prefix: &str| -> Option<usize> {
        name.strip_prefix(prefix)?
            .strip_suffix(')')?
            .trim()
            .parse()
            .ok()
    };
    if let Some(k) = parse_arg("n(") {
        return Ok(FinitePoset::chain(k));
    }
    if let Some(k) = parse_arg("antichain(") {
        return Ok(FinitePoset::antichain(k));
    }
    let p = match name {
        "one" => FinitePoset::chain(1),
        "two" => FinitePoset::chain(2),
        "three" => FinitePoset::chain(3),
        "diamond" => FinitePoset::from_covers(
            &["bot", "a", "b", "top"],
            &[("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")],
        )?,
        "V" => FinitePoset::from_covers(&["v", "a", "b"], &[("v", "a"), ("v", "b")])?,
        "X" => FinitePoset::from_covers(
            &["a", "b", "m", "c", "d"],
            &[("a", "m"), ("b", "m"), ("m", "c"), ("m", "d")],
        )?,
        "bowtie" => FinitePoset::from_covers(
            &["a", "b", "c", "d"],
            &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
        )?,
        "cone_diamond" => catalog("diamond")?.cone(),
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    Ok(p)
}
