//! Order isomorphism and canonical forms.

use crate::bits::BitMatrix;
use crate::error::Result;
use crate::limits::Limits;
use crate::poset::{index_labels, FinitePoset};

/// Isomorphism-invariant colouring of the elements, refined until stable.
///
/// Each round recolours `x` by its old colour together with the colour
/// multisets of its strict down-set and strict up-set. Colour ids are ranks
/// among the distinct signatures, so they are comparable across posets whose
/// refinements agree round by round.
fn invariants(p: &FinitePoset) -> Vec<usize> {
    refine(p, p.len()).0
}

fn refine(p: &FinitePoset, split: usize) -> (Vec<usize>, Vec<Vec<usize>>) {
    let n = p.len();
    let mut color: Vec<usize> = vec![0; n];
    let mut classes = 1;
    let mut history = Vec::new();
    loop {
        let sigs: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..n)
            .map(|x| {
                let mut down: Vec<usize> = p
                    .down_set(x)
                    .iter()
                    .filter(|&y| y != x)
                    .map(|y| color[y])
                    .collect();
                let mut up: Vec<usize> = p
                    .up_set(x)
                    .iter()
                    .filter(|&y| y != x)
                    .map(|y| color[y])
                    .collect();
                down.sort_unstable();
                up.sort_unstable();
                (color[x], down, up)
            })
            .collect();
        let mut distinct: Vec<&(usize, Vec<usize>, Vec<usize>)> = sigs.iter().collect();
        distinct.sort();
        distinct.dedup();
        color = sigs
            .iter()
            .map(|s| distinct.binary_search(&s).unwrap())
            .collect();
        // per-side histogram, so that a joint refinement can detect divergence early
        let mut hist = vec![0usize; 2 * distinct.len()];
        for (x, &c) in color.iter().enumerate() {
            hist[2 * c + usize::from(x >= split)] += 1;
        }
        history.push(hist);
        if distinct.len() == classes {
            return (color, history);
        }
        classes = distinct.len();
    }
}

/// An order isomorphism `P → Q` as a table `φ[p] = q`, if one exists.
pub fn is_isomorphic(
    p: &FinitePoset,
    q: &FinitePoset,
    limits: &Limits,
) -> Result<Option<Vec<usize>>> {
    Limits::check(
        "isomorphism candidate",
        p.len().max(q.len()),
        limits.isomorphism,
    )?;
    Ok(find_isomorphism(p, q))
}

/// Convenience wrapper without a size bound.
pub fn are_isomorphic(p: &FinitePoset, q: &FinitePoset) -> bool {
    find_isomorphism(p, q).is_some()
}

fn find_isomorphism(p: &FinitePoset, q: &FinitePoset) -> Option<Vec<usize>> {
    let n = p.len();
    if n != q.len() || p.relation().count_ones() != q.relation().count_ones() {
        return None;
    }
    // refine both sides together so colour ids line up
    let (joint, history) = refine(&p.disjoint_union(q), n);
    if history.iter().any(|h| h.chunks(2).any(|c| c[0] != c[1])) {
        return None;
    }
    let ip = joint[..n].to_vec();
    let iq = joint[n..].to_vec();
    // most constrained elements first
    let mut order: Vec<usize> = p.elements().collect();
    order.sort_by_key(|&x| (ip.iter().filter(|&&v| v == ip[x]).count(), ip[x], x));
    let mut phi = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn search(
        k: usize,
        order: &[usize],
        p: &FinitePoset,
        q: &FinitePoset,
        ip: &[usize],
        iq: &[usize],
        phi: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let Some(&x) = order.get(k) else {
            return true;
        };
        for y in 0..q.len() {
            if used[y] || iq[y] != ip[x] {
                continue;
            }
            let consistent = order[..k]
                .iter()
                .all(|&z| p.leq(x, z) == q.leq(y, phi[z]) && p.leq(z, x) == q.leq(phi[z], y));
            if !consistent {
                continue;
            }
            phi[x] = y;
            used[y] = true;
            if search(k + 1, order, p, q, ip, iq, phi, used) {
                return true;
            }
            used[y] = false;
        }
        phi[x] = usize::MAX;
        false
    }

    search(0, &order, p, q, &ip, &iq, &mut phi, &mut used).then_some(phi)
}

/// Canonical code: lexicographically least row-major relation encoding over
/// all orderings that list elements by ascending invariant.
pub fn canonical_form(p: &FinitePoset) -> (Vec<u64>, Vec<usize>) {
    let inv = invariants(p);
    let mut sorted: Vec<usize> = p.elements().collect();
    sorted.sort_by_key(|&x| (inv[x], x));
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for &x in &sorted {
        match cells.last_mut() {
            Some(cell) if inv[cell[0]] == inv[x] => cell.push(x),
            _ => cells.push(vec![x]),
        }
    }
    let mut best: Option<(Vec<u64>, Vec<usize>)> = None;
    let mut order = Vec::with_capacity(p.len());
    fn walk(
        p: &FinitePoset,
        cells: &mut [Vec<usize>],
        ci: usize,
        order: &mut Vec<usize>,
        best: &mut Option<(Vec<u64>, Vec<usize>)>,
    ) {
        if ci == cells.len() {
            let code = encode(p, order);
            if best.as_ref().is_none_or(|(b, _)| code < *b) {
                *best = Some((code, order.clone()));
            }
            return;
        }
        permute(p, cells, ci, 0, order, best);
    }
    fn permute(
        p: &FinitePoset,
        cells: &mut [Vec<usize>],
        ci: usize,
        k: usize,
        order: &mut Vec<usize>,
        best: &mut Option<(Vec<u64>, Vec<usize>)>,
    ) {
        if k == cells[ci].len() {
            walk(p, cells, ci + 1, order, best);
            return;
        }
        for i in k..cells[ci].len() {
            cells[ci].swap(k, i);
            order.push(cells[ci][k]);
            permute(p, cells, ci, k + 1, order, best);
            order.pop();
            cells[ci].swap(k, i);
        }
    }
    walk(p, &mut cells, 0, &mut order, &mut best);
    best.unwrap_or_default()
}

fn encode(p: &FinitePoset, order: &[usize]) -> Vec<u64> {
    let n = order.len();
    let mut code = vec![0u64; (n * n).div_ceil(64).max(1)];
    for (i, &a) in order.iter().enumerate() {
        for (j, &b) in order.iter().enumerate() {
            if p.leq(a, b) {
                let bit = i * n + j;
                // high bits first so that numeric order is lexicographic
                code[bit / 64] |= 1 << (63 - bit % 64);
            }
        }
    }
    code
}

/// `P` relabelled into its canonical order, with index labels.
pub fn canonical_poset(p: &FinitePoset) -> (Vec<u64>, FinitePoset) {
    let (code, order) = canonical_form(p);
    let n = order.len();
    let mut leq = BitMatrix::new(n);
    for (i, &a) in order.iter().enumerate() {
        for (j, &b) in order.iter().enumerate() {
            if p.leq(a, b) {
                leq.set(i, j);
            }
        }
    }
    let canon = FinitePoset::new(index_labels(n), leq).expect("relabelling keeps the order axioms");
    (code, canon)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::catalog;

    #[test]
    fn diamond_is_self_dual() {
        let d = catalog("diamond").unwrap();
        let phi = is_isomorphic(&d, &d.dual(), &Limits::default())
            .unwrap()
            .unwrap();
        for a in d.elements() {
            for b in d.elements() {
                assert_eq!(d.leq(a, b), d.dual().leq(phi[a], phi[b]));
            }
        }
    }

    #[test]
    fn sum_of_twos_is_not_four() {
        let p = FinitePoset::chain(2).disjoint_union(&FinitePoset::chain(2));
        assert!(!are_isomorphic(&p, &FinitePoset::chain(4)));
    }

    #[test]
    fn canonical_codes_agree_on_relabelling() {
        let v = catalog("V").unwrap();
        let v2 = FinitePoset::from_covers(&["x", "y", "z"], &[("z", "x"), ("z", "y")]).unwrap();
        assert_eq!(canonical_form(&v).0, canonical_form(&v2).0);
        assert_ne!(canonical_form(&v).0, canonical_form(&v.dual()).0);
    }

    #[test]
    fn size_limit() {
        let big = FinitePoset::antichain(40);
        let lim = Limits::default();
        assert!(is_isomorphic(&big, &big, &lim).is_err());
    }
}
