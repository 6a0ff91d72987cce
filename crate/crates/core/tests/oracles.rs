mod common;

use std::collections::BTreeSet;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use proptest::prelude::*;
use taxotopy::chains::{canonical_window_relation, L_poset};
use taxotopy::galois::enumerate_adjunctions;
use taxotopy::generate::{all_posets_up_to, posets_of_size};
use taxotopy::iso::{are_isomorphic, canonical_form};
use taxotopy::map::monotone_maps;
use taxotopy::*;

use common::*;

fn lim() -> Limits {
    Limits::default()
}

#[test]
fn adjunctions_match_brute_force_up_to_four() {
    for p in all_posets_up_to(4, &lim()).unwrap() {
        let got: BTreeSet<(Vec<usize>, Vec<usize>)> = enumerate_adjunctions(&p, &lim())
            .unwrap()
            .iter()
            .map(|f| (f.lower.values().to_vec(), f.upper.values().to_vec()))
            .collect();
        assert_eq!(got, brute_adj(&p), "{p:?}");
    }
}

#[test]
fn monotone_maps_match_brute_force() {
    let ps = all_posets_up_to(3, &lim()).unwrap();
    for s in &ps {
        for p in &ps {
            let got: Vec<Vec<usize>> = monotone_maps(s, p, &lim())
                .unwrap()
                .iter()
                .map(|m| m.values().to_vec())
                .collect();
            let mut want = brute_monotone(s, p);
            let mut got_sorted = got.clone();
            got_sorted.sort();
            want.sort();
            assert_eq!(got_sorted, want);
        }
    }
}

#[test]
fn lambda_matches_pairwise_scan() {
    for p in all_posets_up_to(5, &lim()).unwrap() {
        let lam = lambda(&p, &lim()).unwrap();
        let want = brute_lambda(&p);
        for a in 0..p.len() {
            for b in 0..p.len() {
                let (i, j) = (
                    lam.index_of(&MonotoneMap::constant(1, a)).unwrap(),
                    lam.index_of(&MonotoneMap::constant(1, b)).unwrap(),
                );
                assert_eq!(lam.related(i, j), want[a][b], "{p:?} {a} {b}");
            }
        }
    }
}

#[test]
fn fundamental_poset_matches_definition() {
    let ps = all_posets_up_to(3, &lim()).unwrap();
    for s in ps.iter().take(4) {
        for p in &ps {
            let lam = fundamental_poset(s, p, &lim()).unwrap();
            let (maps, rel) = brute_taxotopy(s, p);
            for (a, k) in maps.iter().enumerate() {
                for (b, h) in maps.iter().enumerate() {
                    let i = lam
                        .index_of(&MonotoneMap::from_values_unchecked(k.clone()))
                        .unwrap();
                    let j = lam
                        .index_of(&MonotoneMap::from_values_unchecked(h.clone()))
                        .unwrap();
                    assert_eq!(lam.related(i, j), rel[a][b], "S={s:?} P={p:?} {k:?} {h:?}");
                }
            }
        }
    }
}

#[test]
fn every_recorded_witness_holds() {
    for p in all_posets_up_to(3, &lim()).unwrap() {
        let lam = fundamental_poset(&p, &p, &lim()).unwrap();
        let adj = enumerate_adjunctions(&p, &lim()).unwrap();
        for (&(i, j), w) in &lam.witnesses {
            assert!(fundamental::witness_holds(
                &lam.maps[i],
                &lam.maps[j],
                adj.get(w.dom_conn),
                adj.get(w.cod_conn)
            ));
        }
    }
}

#[test]
fn poset_counts() {
    let counts: Vec<usize> = (1..=6)
        .map(|n| posets_of_size(n, &lim()).unwrap().len())
        .collect();
    assert_eq!(counts, vec![1, 2, 5, 16, 63, 318]);
    assert_eq!(
        all_posets_up_to(5, &lim()).unwrap().len(),
        1 + 2 + 5 + 16 + 63
    );
}

#[test]
fn generation_matches_labelled_brute_force() {
    for n in 1..=4 {
        let codes: BTreeSet<Vec<u64>> = labelled_posets(n)
            .iter()
            .map(|p| canonical_form(p).0)
            .collect();
        let generated = posets_of_size(n, &lim()).unwrap();
        assert_eq!(codes.len(), generated.len());
        for (i, p) in generated.iter().enumerate() {
            assert!(codes.contains(&canonical_form(p).0));
            assert!(generated[..i].iter().all(|q| !are_isomorphic(p, q)));
        }
    }
}

#[test]
fn window_relation_is_contained_in_chain_poset() {
    for p in all_posets_up_to(5, &lim()).unwrap() {
        if p.height().unwrap() < 2 {
            continue;
        }
        let adj = enumerate_adjunctions(&p, &lim()).unwrap();
        let window = canonical_window_relation(&p, &adj, &lim()).unwrap();
        let l = L_poset(&p, &lim()).unwrap();
        let n = p.len();
        for (i, j) in window.pairs() {
            assert!(
                l.preorder.get(n + i, n + j),
                "{p:?}: {:?} ⪯ {:?}",
                l.chains[n + i],
                l.chains[n + j]
            );
        }
    }
}

#[test]
fn chain_witnesses_realize_on_windows() {
    for p in all_posets_up_to(4, &lim()).unwrap() {
        let adj = enumerate_adjunctions(&p, &lim()).unwrap();
        let l = L_poset(&p, &lim()).unwrap();
        for (&(i, j), rel) in &l.witnesses {
            if let chains::ChainRelation::Chain(w) = rel {
                let win = w.realize(&l.chains[i], &l.chains[j]);
                assert!(win.verify(adj.get(w.cod_conn)));
            }
        }
    }
}

fn scc_classes(n: usize, edges: &[(usize, usize)]) -> BTreeSet<BTreeSet<usize>> {
    let mut g = DiGraph::<(), ()>::new();
    let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
    for &(a, b) in edges {
        g.add_edge(nodes[a], nodes[b], ());
    }
    tarjan_scc(&g)
        .into_iter()
        .map(|c| c.into_iter().map(|x| x.index()).collect())
        .collect()
}

proptest! {
    #[test]
    fn reflection_classes_are_sccs(n in 1usize..9, edges in proptest::collection::vec((0usize..9, 0usize..9), 0..20)) {
        let edges: Vec<(usize, usize)> = edges.into_iter().filter(|&(a, b)| a < n && b < n).collect();
        let mut rel = BitMatrix::identity(n);
        for &(a, b) in &edges {
            rel.set(a, b);
        }
        let q = posetal_reflection(&Preorder::closure_of(&rel));
        let ours: BTreeSet<BTreeSet<usize>> = q.classes.iter().map(|c| c.iter().copied().collect()).collect();
        prop_assert_eq!(ours, scc_classes(n, &edges));
        for (a, b) in edges {
            prop_assert!(q.quotient.leq(q.class_of[a], q.class_of[b]));
        }
    }
}
