//! Counting primitives checked against independent brute-force oracles.

mod util;

use burnside::group::{
    all_subgroup_classes, all_subgroups, closure, double_coset_reps, fixed_point_count,
    is_solvable, p_residual, parse_group, parse_group_with_cap, Subgroup,
};
use burnside::Error;
use util::subgroup_by_keys;

#[test]
fn parse_group_spec_examples() {
    assert_eq!(parse_group("cyclic:6").unwrap().order(), 6);
    let s3 = parse_group("perm:3:(1 2),(1 2 3)").unwrap();
    assert_eq!(s3.order(), 6);
    assert!(!s3.is_abelian());
    let klein = parse_group("product:cyclic:2,cyclic:2").unwrap();
    assert_eq!(klein.order(), 4);
    let involutions = (0..4u16)
        .filter(|&x| x != klein.identity() && klein.mul(x, x) == klein.identity())
        .count();
    assert_eq!(involutions, 3);
}

#[test]
fn parse_rebuild_order_matches_family() {
    for (spec, order) in [
        ("cyclic:12", 12),
        ("dihedral:6", 12),
        ("symmetric:4", 24),
        ("alternating:5", 60),
        ("quaternion:8", 8),
        ("elementary:3:2", 9),
        ("abelian:2,4", 8),
        ("product:dihedral:3,cyclic:2", 12),
    ] {
        assert_eq!(parse_group(spec).unwrap().order(), order, "{spec}");
    }
}

#[test]
fn order_cap_is_enforced_and_overridable() {
    let err = parse_group("symmetric:6").unwrap_err();
    assert!(matches!(err, Error::OrderCap { order: 720, cap: 512 }));
    assert_eq!(parse_group_with_cap("symmetric:6", 1000).unwrap().order(), 720);
    // The closure-driven perm family hits the cap during enumeration.
    let err = parse_group_with_cap("perm:12:(1 2),(1 2 3 4 5 6 7 8 9 10 11 12)", 100).unwrap_err();
    assert!(matches!(err, Error::OrderCap { .. }));
}

#[test]
fn subgroup_classes_sigma3() {
    let g = parse_group("symmetric:3").unwrap();
    let classes = all_subgroup_classes(&g);
    assert_eq!(classes.len(), 4);
    let counts: Vec<usize> = classes.iter().map(|c| c.conjugates_count()).collect();
    let weyls: Vec<i64> = classes.iter().map(|c| c.weyl_order).collect();
    let orders: Vec<usize> = classes.iter().map(|c| c.order()).collect();
    assert_eq!(orders, vec![1, 2, 3, 6]);
    assert_eq!(counts, vec![1, 3, 1, 1]);
    assert_eq!(weyls, vec![6, 1, 2, 1]);
}

#[test]
fn subgroup_classes_z4_and_trivial() {
    let z4 = parse_group("cyclic:4").unwrap();
    let classes = all_subgroup_classes(&z4);
    assert_eq!(classes.len(), 3);
    assert_eq!(
        classes.iter().map(|c| c.weyl_order).collect::<Vec<_>>(),
        vec![4, 2, 1]
    );
    let triv = parse_group("cyclic:1").unwrap();
    let classes = all_subgroup_classes(&triv);
    assert_eq!(classes.len(), 1);
    assert_eq!(classes[0].weyl_order, 1);
}

#[test]
fn enumeration_agrees_with_subset_closure_oracle() {
    for g in util::corpus_groups() {
        if g.order() > 24 {
            continue;
        }
        let fast = all_subgroups(&g);
        let brute = util::subgroups_by_subset_closure(&g);
        assert_eq!(fast, brute, "subgroup sets differ for {}", g.name());
        // The class decomposition covers each subgroup exactly once.
        let classes = all_subgroup_classes(&g);
        let total: usize = classes.iter().map(|c| c.conjugates_count()).sum();
        assert_eq!(total, brute.len(), "class sizes do not add up for {}", g.name());
        let mut covered: Vec<Vec<u16>> = classes
            .iter()
            .flat_map(|c| c.conjugates.iter().cloned())
            .collect();
        covered.sort();
        assert_eq!(covered, brute, "conjugate union mismatch for {}", g.name());
    }
}

#[test]
fn double_coset_examples() {
    let g = parse_group("symmetric:3").unwrap();
    // <(1 2)> as image tuples: the transposition swapping points 0 and 1.
    let h = subgroup_by_keys(&g, &[&[1, 0, 2]]);
    assert_eq!(double_coset_reps(&g, &h, &h).unwrap().len(), 2);
    let triv = Subgroup::trivial(&g);
    assert_eq!(double_coset_reps(&g, &triv, &triv).unwrap().len(), 6);
    let whole = Subgroup::whole(&g);
    assert_eq!(double_coset_reps(&g, &whole, &whole).unwrap().len(), 1);
}

#[test]
fn double_cosets_partition_the_group() {
    for g in util::corpus_groups() {
        if g.order() > 24 {
            continue;
        }
        let classes = all_subgroup_classes(&g);
        for h in &classes {
            for k in &classes {
                let reps = double_coset_reps(&g, &h.representative, &k.representative).unwrap();
                // Rebuild the partition and check sizes sum to |G|.
                let mut seen = vec![false; g.order()];
                for &r in &reps {
                    for &a in h.representative.members() {
                        for &b in k.representative.members() {
                            seen[g.mul(g.mul(a, r), b) as usize] = true;
                        }
                    }
                }
                assert!(seen.iter().all(|&s| s), "double cosets miss elements");
            }
        }
    }
}

#[test]
fn fixed_point_examples() {
    let g = parse_group("symmetric:3").unwrap();
    let z2 = subgroup_by_keys(&g, &[&[1, 0, 2]]);
    let z3 = subgroup_by_keys(&g, &[&[1, 2, 0]]);
    assert_eq!(fixed_point_count(&g, &z2, &z2).unwrap(), 1);
    assert_eq!(fixed_point_count(&g, &z2, &z3).unwrap(), 0);
    let triv = Subgroup::trivial(&g);
    assert_eq!(fixed_point_count(&g, &triv, &z3).unwrap(), 2); // [G : K]
    assert_eq!(fixed_point_count(&g, &triv, &z2).unwrap(), 3);
}

#[test]
fn fixed_points_invariants() {
    for g in util::corpus_groups() {
        if g.order() > 24 {
            continue;
        }
        let classes = all_subgroup_classes(&g);
        for (i, h) in classes.iter().enumerate() {
            for (j, k) in classes.iter().enumerate() {
                let count = fixed_point_count(&g, &h.representative, &k.representative).unwrap();
                // Weyl order of K divides the count.
                assert_eq!(count % k.weyl_order, 0, "{}: W_G(K) must divide", g.name());
                // Nonzero iff H is subconjugate to K.
                let subconj = classes[i]
                    .conjugates
                    .iter()
                    .any(|c| c.iter().all(|m| k.representative.members().contains(m)));
                assert_eq!(count > 0, subconj, "{}: subconjugacy iff fixed points", g.name());
                // Depends only on the conjugacy classes: check another conjugate.
                let alt = classes[i].conjugates.last().unwrap();
                let alt_sub = Subgroup::from_members(&g, alt.clone()).unwrap();
                assert_eq!(
                    fixed_point_count(&g, &alt_sub, &k.representative).unwrap(),
                    count,
                    "{}: class invariance ({i},{j})",
                    g.name()
                );
            }
        }
    }
}

#[test]
fn fixed_points_reject_non_subgroups() {
    let g = parse_group("symmetric:3").unwrap();
    let bogus = Subgroup::generated(&g, &[9]).unwrap_err();
    assert!(matches!(bogus, Error::NotSubgroup(_)));
}

#[test]
fn p_residual_examples() {
    let g = parse_group("symmetric:3").unwrap();
    let whole = Subgroup::whole(&g);
    let r2 = p_residual(&g, &whole, 2).unwrap();
    assert_eq!(r2.order(), 3);
    let r3 = p_residual(&g, &whole, 3).unwrap();
    assert_eq!(r3.order(), 6);
    let z4 = parse_group("cyclic:4").unwrap();
    let r = p_residual(&z4, &Subgroup::whole(&z4), 2).unwrap();
    assert_eq!(r.order(), 1);
    assert!(matches!(p_residual(&g, &whole, 6), Err(Error::NotPrime(6))));
}

/// Brute-force minimality oracle: H'_p is the smallest normal subgroup of H
/// with p-power index.
#[test]
fn p_residual_is_minimal_among_normal_subgroups() {
    for g in util::corpus_groups() {
        if g.order() > 24 {
            continue;
        }
        let subs = all_subgroups(&g);
        for members in &subs {
            if members.len() > 64 {
                continue;
            }
            let h = Subgroup::from_members(&g, members.clone()).unwrap();
            for p in [2u64, 3, 5] {
                let res = p_residual(&g, &h, p).unwrap();
                // The residual is normal in H with p-power quotient.
                assert!(res.is_subset_of(&h));
                assert!(is_p_power(h.order() as u64 / res.order() as u64, p));
                assert!(is_normal_in(&g, res.members(), &h));
                // No smaller normal subgroup has a p-power quotient.
                for cand in &subs {
                    if cand.len() >= res.order()
                        || !Subgroup::from_members(&g, cand.clone()).unwrap().is_subset_of(&h)
                        || !is_normal_in(&g, cand, &h)
                        || !is_p_power((h.order() / cand.len()) as u64, p)
                    {
                        continue;
                    }
                    panic!(
                        "{}: found smaller normal subgroup with p-quotient (p={p})",
                        g.name()
                    );
                }
            }
        }
    }
}

fn is_p_power(mut n: u64, p: u64) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

fn is_normal_in(g: &burnside::FiniteGroup, members: &[u16], h: &Subgroup) -> bool {
    if !members.iter().all(|m| h.members().contains(m)) {
        return false;
    }
    h.members().iter().all(|&b| {
        let mut conj: Vec<u16> = members.iter().map(|&m| g.conjugate(b, m)).collect();
        conj.sort_unstable();
        conj == members
    })
}

#[test]
fn solvability() {
    assert!(is_solvable(&parse_group("symmetric:3").unwrap()));
    assert!(is_solvable(&parse_group("cyclic:9").unwrap()));
    assert!(is_solvable(&parse_group("symmetric:4").unwrap()));
    assert!(!is_solvable(&parse_group("alternating:5").unwrap()));
}

#[test]
fn closure_of_nothing_is_trivial() {
    let g = parse_group("dihedral:4").unwrap();
    assert_eq!(closure(&g, &[]), vec![g.identity()]);
}
