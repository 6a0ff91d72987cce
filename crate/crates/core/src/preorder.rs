use crate::bits::BitMatrix;
use crate::error::{Error, Result};
use crate::poset::{index_labels, FinitePoset};

/// A reflexive, transitive relation on `0..n`; antisymmetry is not required.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Preorder {
    rel: BitMatrix,
}

impl Preorder {
    pub fn new(rel: BitMatrix) -> Result<Self> {
        let n = rel.size();
        for i in 0..n {
            if !rel.get(i, i) {
                return Err(Error::NotReflexive(i));
            }
        }
        for i in 0..n {
            for j in rel.row(i).iter() {
                if let Some(k) = rel.row(j).iter().find(|&k| !rel.get(i, k)) {
                    return Err(Error::NotTransitive(i, j, k));
                }
            }
        }
        Ok(Preorder { rel })
    }

    /// Reflexive-transitive closure of an arbitrary relation.
    pub fn closure_of(rel: &BitMatrix) -> Self {
        Preorder {
            rel: rel.reflexive_transitive_closure(),
        }
    }

    pub fn size(&self) -> usize {
        self.rel.size()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rel.get(i, j)
    }

    pub fn relation(&self) -> &BitMatrix {
        &self.rel
    }

    pub fn equivalent(&self, i: usize, j: usize) -> bool {
        self.get(i, j) && self.get(j, i)
    }
}

/// A partial order obtained by collapsing the mutual classes of a preorder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientResult {
    pub quotient: FinitePoset,
    /// Carrier index to class index.
    pub class_of: Vec<usize>,
    /// Members of each class, ascending.
    pub classes: Vec<Vec<usize>>,
}

impl QuotientResult {
    pub fn representative(&self, class: usize) -> usize {
        self.classes[class][0]
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }
}

/// Collapses `x ⪯ y ⪯ x` classes. Class ids are assigned by first occurrence.
pub fn posetal_reflection(pre: &Preorder) -> QuotientResult {
    let n = pre.size();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let members: Vec<usize> = (x..n).filter(|&y| pre.equivalent(x, y)).collect();
        for &y in &members {
            class_of[y] = id;
        }
        classes.push(members);
    }
    let m = classes.len();
    let mut leq = BitMatrix::new(m);
    for a in 0..m {
        for b in 0..m {
            if pre.get(classes[a][0], classes[b][0]) {
                leq.set(a, b);
            }
        }
    }
    let quotient = FinitePoset::new(index_labels(m), leq)
        .expect("reflection of a preorder is a partial order");
    QuotientResult {
        quotient,
        class_of,
        classes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn preorder(n: usize, pairs: &[(usize, usize)]) -> Preorder {
        let mut m = BitMatrix::identity(n);
        for &(a, b) in pairs {
            m.set(a, b);
        }
        Preorder::new(m).unwrap()
    }

    #[test]
    fn discrete_and_complete() {
        let q = posetal_reflection(&preorder(3, &[]));
        assert_eq!(q.quotient, FinitePoset::antichain(3));
        assert_eq!(q.class_of, vec![0, 1, 2]);
        let all: Vec<_> = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).collect();
        let q = posetal_reflection(&preorder(3, &all));
        assert_eq!(q.class_count(), 1);
    }

    #[test]
    fn mutual_pair_collapses() {
        let q = posetal_reflection(&preorder(3, &[(0, 1), (1, 0), (1, 2), (0, 2)]));
        assert_eq!(q.classes, vec![vec![0, 1], vec![2]]);
        assert!(q.quotient.leq(0, 1) && !q.quotient.leq(1, 0));
    }

    #[test]
    fn invalid_inputs() {
        let mut m = BitMatrix::identity(3);
        m.set(0, 1);
        m.set(1, 2);
        assert_eq!(Preorder::new(m), Err(Error::NotTransitive(0, 1, 2)));
        assert_eq!(
            Preorder::new(BitMatrix::new(1)),
            Err(Error::NotReflexive(0))
        );
    }
}
