use taxotopy::covers::*;
use taxotopy::equivalence::*;
use taxotopy::galois::{enumerate_adjunctions, restricts_to};
use taxotopy::generate::all_posets_up_to;
use taxotopy::iso::are_isomorphic;
use taxotopy::structure::*;
use taxotopy::*;

fn lim() -> Limits {
    Limits::default()
}

fn connected(n: usize) -> Vec<FinitePoset> {
    all_posets_up_to(n, &lim())
        .unwrap()
        .into_iter()
        .filter(FinitePoset::is_connected)
        .collect()
}

#[test]
fn restricted_families_glue_back() {
    for p in all_posets_up_to(5, &lim()).unwrap() {
        for cover in three_block_covers(&p, &lim()).unwrap() {
            for f in cover.adjunctions().iter() {
                let family: Vec<GaloisConnection> = cover
                    .blocks()
                    .iter()
                    .map(|b| restricts_to(&p, f, &b.set).expect("blocks are weak subposets"))
                    .collect();
                check_compatible(&cover, &family).unwrap();
                assert_eq!(&glue_compatible_family(&cover, &family).unwrap(), f);
            }
        }
    }
}

#[test]
fn maps_are_amalgams_of_their_retracts() {
    let s = FinitePoset::chain(2);
    for p in all_posets_up_to(5, &lim()).unwrap() {
        let pb = p.add_bottom();
        let maps = map::monotone_maps(&s, &pb, &lim()).unwrap();
        for cover in three_block_covers(&p, &lim()).unwrap() {
            for h in &maps {
                let family: Vec<MonotoneMap> = cover
                    .blocks()
                    .iter()
                    .map(|b| rho(&s, &p, h, &b.set).unwrap())
                    .collect();
                assert!(is_matching_family(&cover, &s, &family));
                assert_eq!(amalgamate(&cover, &s, &family).unwrap().as_ref(), Some(h));
            }
        }
    }
}

#[test]
fn distinct_families_can_share_an_amalgam() {
    // {0,1} < 2 < {3,4,5}
    let p = FinitePoset::from_covers(
        &["0", "1", "2", "3", "4", "5"],
        &[("0", "2"), ("1", "2"), ("2", "3"), ("2", "4"), ("2", "5")],
    )
    .unwrap();
    let set = |xs: &[usize]| BitSet::from_indices(6, xs.iter().copied());
    let cover = validate_cover(
        &p,
        &[set(&[0, 1, 2]), set(&[2, 3, 4, 5]), set(&[2])],
        &lim(),
    )
    .unwrap();
    let s = FinitePoset::chain(2);
    let families = matching_families(&cover, &s, &lim()).unwrap();
    let amalgams: Vec<MonotoneMap> = families
        .iter()
        .filter_map(|f| amalgamate(&cover, &s, f).unwrap())
        .collect();
    let mut distinct = amalgams.clone();
    distinct.sort_by(|a, b| a.values().cmp(b.values()));
    distinct.dedup();
    assert!(distinct.len() < amalgams.len());
    let report = van_kampen_star_report(&s, &cover, &lim()).unwrap();
    assert!(!report.families_biject && !report.limit_isomorphic);
}

#[test]
fn disjoint_union_counterexample() {
    let two = FinitePoset::chain(2);
    let p = two.disjoint_union(&two);
    let (a, b) = (
        BitSet::from_indices(4, [0, 1]),
        BitSet::from_indices(4, [2, 3]),
    );
    let report = van_kampen_lambda_report(&p, &a, &b, &lim()).unwrap();
    assert!(report.hypothesis_failure.is_some());
    assert!(!report.isomorphic);
    assert!(matches!(
        van_kampen_lambda(&p, &a, &b, &lim()),
        Err(Error::HypothesisFailed(_))
    ));
}

#[test]
fn lambda_searches_find_verified_instances() {
    for h in [Hypothesis::Paris, Hypothesis::VanKampenLambda] {
        let report = search(5, h, &lim()).unwrap();
        assert!(report.instances.len() >= 3, "{h:?}");
        assert!(report.instances.iter().all(|i| i.holds), "{h:?}");
    }
}

#[test]
fn towers_permutations_and_rigid_points() {
    for p in connected(5) {
        T_tower(&p, &lim()).unwrap();
        B_tower(&p, &lim()).unwrap();
        rigid_points(&p, &lim()).unwrap();
        for f in enumerate_adjunctions(&p, &lim()).unwrap().iter() {
            let eta = max_permutation(&p, f).unwrap();
            for &(a, b) in &eta {
                for c in p.maximal_elements() {
                    assert_eq!(p.leq(f.lower.apply(a), c), c == b);
                }
            }
            min_permutation(&p, f).unwrap();
        }
    }
}

#[test]
fn bounded_posets_have_trivial_towers() {
    for p in connected(5)
        .into_iter()
        .filter(|p| p.top().is_some() && p.bottom().is_some())
    {
        assert_eq!(T_tower(&p, &lim()).unwrap().index(), 0);
        assert_eq!(B_tower(&p, &lim()).unwrap().index(), 0);
    }
}

#[test]
fn singleton_paris_points_have_extension_property() {
    for p in connected(5) {
        if let Ok(r) = paris_point(&p, &lim()) {
            assert!(r.extension, "{p:?}");
        }
    }
}

#[test]
fn paris_star_examples() {
    let d = catalog("diamond").unwrap();
    for k in [2, 3] {
        let s = FinitePoset::chain(k);
        assert!(paris_point_star(&d, &s, 0, 0, &lim()).unwrap().isomorphic);
    }
    // searched instances with a proper piece
    let bowtie = catalog("bowtie").unwrap();
    let wedge = FinitePoset::from_covers(&["0", "1", "2"], &[("0", "2"), ("1", "2")]).unwrap();
    for k in [2, 3] {
        let s = FinitePoset::chain(k);
        assert!(
            paris_point_star(&bowtie, &s, 1, 0, &lim())
                .unwrap()
                .isomorphic
        );
        assert!(
            paris_point_star(&wedge, &s, 0, 1, &lim())
                .unwrap()
                .isomorphic
        );
    }
}

#[test]
fn paris_star_violation_on_x() {
    let x = catalog("X").unwrap();
    let err = paris_point_star(&x, &FinitePoset::chain(2), 1, 1, &lim()).unwrap_err();
    assert!(matches!(err, Error::TheoremViolation(_)));
}

#[test]
fn null_taxotopy_list() {
    let one = FinitePoset::chain(1);
    for k in 1..=5 {
        assert!(is_null_taxotopic(&FinitePoset::chain(k), &one, &lim()).unwrap());
    }
    for p in all_posets_up_to(3, &lim()).unwrap() {
        assert!(is_null_taxotopic(&p.cone(), &one, &lim()).unwrap());
    }
    assert!(is_null_taxotopic(&catalog("diamond").unwrap(), &one, &lim()).unwrap());
    assert!(!is_null_taxotopic(&catalog("V").unwrap(), &one, &lim()).unwrap());
    assert!(v_equivalence_check(&catalog("diamond").unwrap(), &lim()).unwrap());
}

#[test]
fn poset_taxotopy_is_transitive_by_composition() {
    let one = FinitePoset::chain(1);
    let ps = all_posets_up_to(3, &lim()).unwrap();
    let lams: Vec<FundamentalPoset> = ps
        .iter()
        .map(|p| fundamental_poset(&one, p, &lim()).unwrap())
        .collect();
    for (i, p) in ps.iter().enumerate() {
        for (j, q) in ps.iter().enumerate() {
            let Some(pq) = poset_taxotopic_with(p, q, &lams[i], &lams[j], &lim()).unwrap() else {
                continue;
            };
            assert!(induced_adjunction_holds(&pq, &lams[j], &lams[i]));
            for (k, r) in ps.iter().enumerate() {
                let Some(qr) = poset_taxotopic_with(q, r, &lams[j], &lams[k], &lim()).unwrap()
                else {
                    continue;
                };
                // P ⪯ Q ⪯ R: h⁺: Q → P then g⁺: R → Q
                let pr = pq.then(&qr);
                assert!(
                    is_weak_s_adjoint_with(&pr, &lams[k], &lams[i]),
                    "{p:?} {q:?} {r:?}"
                );
            }
        }
    }
}

#[test]
fn tunnel_collapse_on_chains_reduces_to_three() {
    for n in 3..=7 {
        assert!(are_isomorphic(
            &reduce(&FinitePoset::chain(n)),
            &FinitePoset::chain(3)
        ));
    }
    let d = catalog("diamond").unwrap();
    assert!(are_isomorphic(&reduce(&d), &FinitePoset::chain(3)));
}
