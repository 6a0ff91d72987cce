use std::fmt;

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::poset::FinitePoset;

/// An order-preserving map stored as its value table.
///
/// Domain and codomain are not carried along; every operation that cares
/// takes the posets explicitly.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonotoneMap(pub(crate) Vec<usize>);

impl MonotoneMap {
    /// Checks monotonicity of `values` as a map `dom → cod`.
    pub fn new(dom: &FinitePoset, cod: &FinitePoset, values: Vec<usize>) -> Result<Self> {
        if values.len() != dom.len() || values.iter().any(|&v| v >= cod.len()) {
            return Err(Error::NotMonotone);
        }
        if !is_monotone(dom, cod, &values) {
            return Err(Error::NotMonotone);
        }
        Ok(MonotoneMap(values))
    }

    /// Trusts the caller; only checked in debug builds by the callers that matter.
    pub fn from_values_unchecked(values: Vec<usize>) -> Self {
        MonotoneMap(values)
    }

    pub fn identity(n: usize) -> Self {
        MonotoneMap((0..n).collect())
    }

    pub fn constant(domain: usize, value: usize) -> Self {
        MonotoneMap(vec![value; domain])
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn domain_len(&self) -> usize {
        self.0.len()
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn after(&self, inner: &MonotoneMap) -> MonotoneMap {
        MonotoneMap(inner.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn image(&self, codomain: usize) -> BitSet {
        BitSet::from_indices(codomain, self.0.iter().copied())
    }

    pub fn is_constant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Pointwise `self ≤ other` in `cod`.
    pub fn pointwise_leq(&self, other: &MonotoneMap, cod: &FinitePoset) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| cod.leq(a, b))
    }
}

impl fmt::Debug for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "⟩")
    }
}

pub fn is_monotone(dom: &FinitePoset, cod: &FinitePoset, values: &[usize]) -> bool {
    dom.relation()
        .pairs()
        .all(|(i, j)| cod.leq(values[i], values[j]))
}

/// `Pos(S, P)`, lexicographic by value table.
pub fn monotone_maps(
    s: &FinitePoset,
    p: &FinitePoset,
    limits: &Limits,
) -> Result<Vec<MonotoneMap>> {
    if s.is_empty() {
        return Err(Error::EmptyDomain);
    }
    limits.check_maps(s.len(), p.len())?;
    let mut out = Vec::new();
    let mut values = vec![0usize; s.len()];
    fn fill(
        s: &FinitePoset,
        p: &FinitePoset,
        i: usize,
        values: &mut Vec<usize>,
        out: &mut Vec<MonotoneMap>,
    ) {
        if i == s.len() {
            out.push(MonotoneMap(values.clone()));
            return;
        }
        'value: for v in 0..p.len() {
            for j in 0..i {
                if s.leq(j, i) && !p.leq(values[j], v) || s.leq(i, j) && !p.leq(v, values[j]) {
                    continue 'value;
                }
            }
            values[i] = v;
            fill(s, p, i + 1, values, out);
        }
    }
    fill(s, p, 0, &mut values, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::catalog;

    #[test]
    fn counts() {
        let lim = Limits::default();
        let two = FinitePoset::chain(2);
        let diamond = catalog("diamond").unwrap();
        assert_eq!(
            monotone_maps(&FinitePoset::chain(1), &diamond, &lim)
                .unwrap()
                .len(),
            4
        );
        let m = monotone_maps(&two, &two, &lim).unwrap();
        assert_eq!(
            m.iter().map(|f| f.values().to_vec()).collect::<Vec<_>>(),
            vec![vec![0, 0], vec![0, 1], vec![1, 1]]
        );
        assert_eq!(monotone_maps(&two, &diamond, &lim).unwrap().len(), 9);
    }

    #[test]
    fn empty_domain_rejected() {
        let r = monotone_maps(
            &FinitePoset::empty(),
            &FinitePoset::chain(2),
            &Limits::default(),
        );
        assert_eq!(r, Err(Error::EmptyDomain));
    }

    #[test]
    fn checked_constructor() {
        let two = FinitePoset::chain(2);
        assert!(MonotoneMap::new(&two, &two, vec![1, 0]).is_err());
        assert!(MonotoneMap::new(&two, &two, vec![0, 1])
            .unwrap()
            .is_identity());
    }

    #[test]
    fn composition_order() {
        let f = MonotoneMap(vec![1, 1, 2]);
        let g = MonotoneMap(vec![0, 0, 1]);
        assert_eq!(f.after(&g).values(), &[1, 1, 1]);
        assert_eq!(g.after(&f).values(), &[0, 0, 1]);
    }
}
