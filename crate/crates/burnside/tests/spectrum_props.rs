//! Prime spectrum, p-perfection, idempotents, and units.

mod util;

use burnside::ring::mul;
use burnside::spectrum::{
    bauer_may_check, idempotents, nested_chains, normal_p_quotient_pairs, p_perfection_pair,
    perfect_classes, pi_perfect_classes, prime_ideal_equal, prime_ideal_subset, units,
    PrimeIdealDescriptor,
};
use burnside::util::prime_divisors;
use burnside::{BurnsideElement, Error};
use util::lattice_of;

#[test]
fn perfection_pair_examples() {
    let s3 = lattice_of("symmetric:3");
    // (Sigma3, full, 2): O^2(Sigma3) = Z/3, Sylow-2 preimage is Sigma3.
    let pair = p_perfection_pair(&s3, 3, 2).unwrap();
    assert_eq!((pair.h_sub, pair.h_sup), (2, 3));
    // (Sigma3, Z/2-class, 2): residual trivial, Sylow-2 of Sigma3 is Z/2.
    let pair = p_perfection_pair(&s3, 1, 2).unwrap();
    assert_eq!((pair.h_sub, pair.h_sup), (0, 1));
    // (Z/4, full, 2): 2-group, so residual is trivial and overgroup is Z/4.
    let z4 = lattice_of("cyclic:4");
    let pair = p_perfection_pair(&z4, 2, 2).unwrap();
    assert_eq!((pair.h_sub, pair.h_sup), (0, 2));
    assert!(matches!(
        p_perfection_pair(&s3, 0, 4),
        Err(Error::NotPrime(4))
    ));
}

#[test]
fn perfection_identities_over_corpus() {
    for lat in util::corpus_lattices() {
        for p in [2u64, 3, 5] {
            if lat.group().order() as u64 % p != 0 {
                continue;
            }
            for h in 0..lat.class_count() {
                let pair = p_perfection_pair(&lat, h, p).unwrap();
                // |W_G(H^p)| coprime to p.
                assert_ne!(
                    lat.weyl_order(pair.h_sup) % p as i64,
                    0,
                    "{}: W_G(H^p) must be coprime to {p}",
                    lat.group().name()
                );
                // (H_p)^p = H^p and (H^p)_p = H_p.
                let from_sub = p_perfection_pair(&lat, pair.h_sub, p).unwrap();
                assert_eq!(from_sub.h_sub, pair.h_sub);
                assert_eq!(from_sub.h_sup, pair.h_sup);
                let from_sup = p_perfection_pair(&lat, pair.h_sup, p).unwrap();
                assert_eq!(from_sup.h_sub, pair.h_sub);
                assert_eq!(from_sup.h_sup, pair.h_sup);
            }
        }
    }
}

#[test]
fn prime_ideal_equality_examples() {
    let s3 = lattice_of("symmetric:3");
    let q = |c, p| PrimeIdealDescriptor::new(c, p).unwrap();
    assert!(prime_ideal_equal(&s3, q(0, 2), q(1, 2)).unwrap());
    assert!(!prime_ideal_equal(&s3, q(0, 0), q(1, 0)).unwrap());
    assert!(prime_ideal_equal(&s3, q(2, 3), q(0, 3)).unwrap());
    assert!(!prime_ideal_equal(&s3, q(0, 2), q(0, 3)).unwrap());
}

#[test]
fn containment_rule_is_consistent() {
    for lat in util::corpus_lattices() {
        if lat.group().order() > 24 {
            continue;
        }
        let primes = prime_divisors(lat.group().order() as u64);
        for h in 0..lat.class_count() {
            for k in 0..lat.class_count() {
                let q0 = PrimeIdealDescriptor::new(h, 0).unwrap();
                for &p in &primes {
                    let qp = PrimeIdealDescriptor::new(k, p).unwrap();
                    let contained = prime_ideal_subset(&lat, q0, qp).unwrap();
                    let hp = PrimeIdealDescriptor::new(h, p).unwrap();
                    let equal = prime_ideal_equal(&lat, hp, qp).unwrap();
                    assert_eq!(contained, equal, "{}", lat.group().name());
                }
                // Characteristic-0 ideals are incomparable unless equal.
                let k0 = PrimeIdealDescriptor::new(k, 0).unwrap();
                assert_eq!(
                    prime_ideal_subset(&lat, q0, k0).unwrap(),
                    h == k
                );
            }
        }
    }
}

#[test]
fn bauer_may_examples() {
    let s3 = lattice_of("symmetric:3");
    // 1 <= Z/3 <= Sigma3 at p=2: the ends differ, vacuously true.
    let qh = PrimeIdealDescriptor::new(0, 2).unwrap();
    let qk = PrimeIdealDescriptor::new(3, 2).unwrap();
    assert!(!prime_ideal_equal(&s3, qh, qk).unwrap());
    assert!(bauer_may_check(&s3, (0, 2, 3), 2).unwrap());

    // Z/4 chain 1 <= Z/2 <= Z/4 at p=2: ends equal forces the middle.
    let z4 = lattice_of("cyclic:4");
    let q0 = PrimeIdealDescriptor::new(0, 2).unwrap();
    let q2 = PrimeIdealDescriptor::new(2, 2).unwrap();
    assert!(prime_ideal_equal(&z4, q0, q2).unwrap());
    assert!(bauer_may_check(&z4, (0, 1, 2), 2).unwrap());

    // Degenerate chain.
    assert!(bauer_may_check(&s3, (1, 1, 1), 2).unwrap());

    // Z/2-class and Z/3-class of Sigma3 are not nested.
    assert!(matches!(
        bauer_may_check(&s3, (1, 2, 3), 2),
        Err(Error::NotNested)
    ));
}

#[test]
fn bauer_may_over_corpus_chains() {
    for lat in util::corpus_lattices() {
        if lat.group().order() > 24 {
            continue; // the full corpus runs in the acceptance suite
        }
        let chains = nested_chains(&lat).unwrap();
        for p in [2u64, 3, 5, 7] {
            for &chain in &chains {
                assert!(
                    bauer_may_check(&lat, chain, p).unwrap(),
                    "{}: chain {chain:?} p={p}",
                    lat.group().name()
                );
            }
        }
    }
}

#[test]
fn normal_p_quotient_pairs_share_ideals() {
    for lat in util::corpus_lattices() {
        if lat.group().order() > 24 {
            continue;
        }
        for p in prime_divisors(lat.group().order() as u64) {
            for (k, h) in normal_p_quotient_pairs(&lat, p).unwrap() {
                let qk = PrimeIdealDescriptor::new(k, p).unwrap();
                let qh = PrimeIdealDescriptor::new(h, p).unwrap();
                assert!(
                    prime_ideal_equal(&lat, qk, qh).unwrap(),
                    "{}: q({k},{p}) vs q({h},{p})",
                    lat.group().name()
                );
            }
        }
    }
}

#[test]
fn idempotents_examples() {
    let s3 = lattice_of("symmetric:3");
    let idems = idempotents(&s3).unwrap();
    assert_eq!(idems.len(), 2);
    assert!(idems[0].is_zero());
    assert_eq!(idems[1], BurnsideElement::one(&s3));

    let z2 = lattice_of("cyclic:2");
    assert_eq!(idempotents(&z2).unwrap().len(), 2);

    let a5 = lattice_of("alternating:5");
    let idems = idempotents(&a5).unwrap();
    assert_eq!(idems.len(), 4);
    for e in &idems {
        assert_eq!(mul(e, e).unwrap(), *e, "idempotency of {e}");
    }
    assert_eq!(perfect_classes(&a5).unwrap().len(), 2);
}

#[test]
fn idempotent_count_is_two_to_perfect_classes() {
    for lat in util::corpus_lattices() {
        if lat.class_count() > 16 {
            continue;
        }
        let idems = idempotents(&lat).unwrap();
        let perfect = perfect_classes(&lat).unwrap();
        assert_eq!(
            idems.len(),
            1usize << perfect.len(),
            "{}",
            lat.group().name()
        );
    }
}

#[test]
fn units_examples() {
    let z3 = lattice_of("cyclic:3");
    let us = units(&z3).unwrap();
    assert_eq!(us.len(), 2);
    let one = BurnsideElement::one(&z3);
    assert!(us.contains(&one));
    assert!(us.contains(&one.scaled(-1)));

    let s3 = lattice_of("symmetric:3");
    let us = units(&s3).unwrap();
    // Includes 1 - 2a + c with ghost (1,-1,1,1).
    let x = BurnsideElement::from_coeffs(
        &s3,
        [(3, 1), (1, -2), (0, 1)],
    )
    .unwrap();
    assert_eq!(x.marks().values(), &[1, -1, 1, 1]);
    assert!(us.contains(&x));

    let triv = lattice_of("cyclic:1");
    assert_eq!(units(&triv).unwrap().len(), 2);
}

#[test]
fn units_are_a_group_with_sign_ghosts() {
    for lat in util::corpus_lattices() {
        if lat.class_count() > 12 {
            continue;
        }
        let us = units(&lat).unwrap();
        let one = BurnsideElement::one(&lat);
        for u in &us {
            assert_eq!(mul(u, u).unwrap(), one);
            assert!(u.marks().values().iter().all(|&v| v == 1 || v == -1));
            for v in &us {
                let w = mul(u, v).unwrap();
                assert!(us.contains(&w), "{}: units not closed", lat.group().name());
            }
        }
    }
}

#[test]
fn odd_order_groups_have_unit_idempotent_bijection() {
    for spec in ["cyclic:3", "cyclic:5", "cyclic:7", "cyclic:9", "cyclic:15"] {
        let lat = lattice_of(spec);
        let us = units(&lat).unwrap();
        let es = idempotents(&lat).unwrap();
        assert_eq!(us.len(), 2, "{spec}");
        assert_eq!(us.len(), es.len(), "{spec}");
        // The bijection e -> 2e - 1 lands in the units.
        let one = BurnsideElement::one(&lat);
        for e in &es {
            let u = &e.scaled(2) - &one;
            assert!(us.contains(&u), "{spec}: 2e-1 not a unit");
        }
    }
}

#[test]
fn pi_perfect_examples() {
    let s3 = lattice_of("symmetric:3");
    assert_eq!(pi_perfect_classes(&s3, &[2, 3]).unwrap(), vec![0]);
    assert_eq!(pi_perfect_classes(&s3, &[2]).unwrap(), vec![0, 2]);
    let a5 = lattice_of("alternating:5");
    let perfect = pi_perfect_classes(&a5, &[2, 3, 5]).unwrap();
    assert_eq!(perfect.len(), 2);
    assert_eq!(perfect[0], 0);
    assert_eq!(perfect[1], a5.full_class());
    assert!(matches!(
        pi_perfect_classes(&s3, &[4]),
        Err(Error::NotPrime(4))
    ));
}

#[test]
fn class_bound_is_enforced() {
    // elementary:3:3 has 28 classes, beyond the enumeration bound of 20.
    let lat = lattice_of("elementary:3:3");
    assert_eq!(lat.class_count(), 28);
    assert!(matches!(
        idempotents(&lat),
        Err(Error::ClassBound { count: 28, bound: 20 })
    ));
}
