//! Induction, restriction, the product map, and the alpha map.

mod util;

use burnside::maps::{
    alpha_map, induction, product_map, restriction, restriction_normal, SubgroupEmbedding,
};
use burnside::ring::mul;
use burnside::{BurnsideElement, Error};
use util::{lattice_of, Rng};

#[test]
fn induction_examples() {
    let s3 = lattice_of("symmetric:3");
    // Z/3 inside Sigma3 (ambient class 2).
    let e = SubgroupEmbedding::for_class(&s3, 2).unwrap();
    assert_eq!(e.sub().class_count(), 2);
    let free_sub = BurnsideElement::basis(e.sub(), 0).unwrap();
    assert_eq!(
        induction(&e, &free_sub).unwrap(),
        BurnsideElement::basis(&s3, 0).unwrap()
    );
    let unit_sub = BurnsideElement::one(e.sub());
    assert_eq!(
        induction(&e, &unit_sub).unwrap(),
        BurnsideElement::basis(&s3, 2).unwrap()
    );
    // Additivity through a Z/2 embedding.
    let e2 = SubgroupEmbedding::for_class(&s3, 1).unwrap();
    let x = BurnsideElement::basis(e2.sub(), 0).unwrap().scaled(2);
    assert_eq!(
        induction(&e2, &x).unwrap(),
        BurnsideElement::basis(&s3, 0).unwrap().scaled(2)
    );
}

#[test]
fn restriction_examples() {
    let s3 = lattice_of("symmetric:3");
    // Restrict [Sigma3/Z2] to the normal subgroup Z/3: coefficient
    // 6*1/(3*2) = 1 on [Z3/1].
    let e = SubgroupEmbedding::for_class(&s3, 2).unwrap();
    let a = BurnsideElement::basis(&s3, 1).unwrap();
    let expected = BurnsideElement::basis(e.sub(), 0).unwrap();
    assert_eq!(restriction(&e, &a).unwrap(), expected);
    assert_eq!(restriction_normal(&e, &a).unwrap(), expected);

    // Restrict [Sigma3/Z3] to Z/2: one double coset, trivial intersection.
    let e2 = SubgroupEmbedding::for_class(&s3, 1).unwrap();
    let b = BurnsideElement::basis(&s3, 2).unwrap();
    assert_eq!(
        restriction(&e2, &b).unwrap(),
        BurnsideElement::basis(e2.sub(), 0).unwrap()
    );

    // Points restrict to points.
    let one = BurnsideElement::one(&s3);
    assert_eq!(restriction(&e2, &one).unwrap(), BurnsideElement::one(e2.sub()));
}

#[test]
fn restriction_routes_agree_on_normal_pairs() {
    for lat in util::corpus_lattices() {
        if lat.group().order() > 16 {
            continue; // full corpus in the acceptance suite
        }
        for class in 0..lat.class_count() {
            if lat.classes()[class].conjugates_count() != 1 {
                continue;
            }
            let e = SubgroupEmbedding::for_class(&lat, class).unwrap();
            for l in 0..lat.class_count() {
                let x = BurnsideElement::basis(&lat, l).unwrap();
                assert_eq!(
                    restriction(&e, &x).unwrap(),
                    restriction_normal(&e, &x).unwrap(),
                    "{}: class {class}, basis {l}",
                    lat.group().name()
                );
            }
        }
    }
}

#[test]
fn restriction_commutes_with_marks() {
    // phi_L(res x) = phi_L(x) for subgroups L of H.
    for spec in ["symmetric:3", "dihedral:4", "alternating:4"] {
        let lat = lattice_of(spec);
        let mut rng = Rng(0x42);
        for class in 0..lat.class_count() {
            let e = SubgroupEmbedding::for_class(&lat, class).unwrap();
            for _ in 0..4 {
                let x = util::random_element(&lat, &mut rng, -5, 5);
                let res = restriction(&e, &x).unwrap();
                let res_marks = res.marks();
                let x_marks = x.marks();
                for (sub_class, &ambient_class) in e.class_transfer().iter().enumerate() {
                    assert_eq!(
                        res_marks.value(sub_class),
                        x_marks.value(ambient_class),
                        "{spec}: marks disagree at sub class {sub_class}"
                    );
                }
            }
        }
    }
}

#[test]
fn product_map_examples() {
    let z2 = lattice_of("cyclic:2");
    let z3 = lattice_of("cyclic:3");
    let z6 = lattice_of("product:cyclic:2,cyclic:3");
    assert_eq!(z6.class_count(), 4);

    // [Z2/1] (x) [Z3/Z3] lands on the order-3 subgroup class of Z6.
    let x = BurnsideElement::basis(&z2, 0).unwrap();
    let y = BurnsideElement::one(&z3);
    let image = product_map(&z6, &x, &y).unwrap();
    let (&class, &coeff) = image.coeffs().iter().next().unwrap();
    assert_eq!(coeff, 1);
    assert_eq!(z6.classes()[class].order(), 3);

    // Units map to the unit.
    let image = product_map(&z6, &BurnsideElement::one(&z2), &BurnsideElement::one(&z3)).unwrap();
    assert_eq!(image, BurnsideElement::one(&z6));

    // Coprime orders: every basis class of Z6 is hit (isomorphism).
    let mut hit = std::collections::BTreeSet::new();
    for h1 in 0..z2.class_count() {
        for h2 in 0..z3.class_count() {
            let img = product_map(
                &z6,
                &BurnsideElement::basis(&z2, h1).unwrap(),
                &BurnsideElement::basis(&z3, h2).unwrap(),
            )
            .unwrap();
            assert_eq!(img.coeffs().len(), 1);
            hit.insert(*img.coeffs().keys().next().unwrap());
        }
    }
    assert_eq!(hit.len(), z6.class_count());
}

#[test]
fn product_map_is_a_ring_map_and_basis_injective() {
    let a = lattice_of("cyclic:2");
    let b = lattice_of("symmetric:3");
    let target = lattice_of("product:cyclic:2,symmetric:3");
    let mut rng = Rng(0x77);
    for _ in 0..6 {
        let x = util::random_element(&a, &mut rng, -3, 3);
        let x2 = util::random_element(&a, &mut rng, -3, 3);
        let y = util::random_element(&b, &mut rng, -3, 3);
        let y2 = util::random_element(&b, &mut rng, -3, 3);
        let lhs = product_map(&target, &mul(&x, &x2).unwrap(), &mul(&y, &y2).unwrap()).unwrap();
        let rhs = mul(
            &product_map(&target, &x, &y).unwrap(),
            &product_map(&target, &x2, &y2).unwrap(),
        )
        .unwrap();
        assert_eq!(lhs, rhs);
    }
    // Distinct basis pairs map to distinct classes.
    let mut seen = std::collections::BTreeSet::new();
    for h1 in 0..a.class_count() {
        for h2 in 0..b.class_count() {
            let img = product_map(
                &target,
                &BurnsideElement::basis(&a, h1).unwrap(),
                &BurnsideElement::basis(&b, h2).unwrap(),
            )
            .unwrap();
            let class = *img.coeffs().keys().next().unwrap();
            assert!(seen.insert(class), "basis pair collision at ({h1},{h2})");
        }
    }
}

#[test]
fn product_map_rejects_wrong_target() {
    let z2 = lattice_of("cyclic:2");
    let z3 = lattice_of("cyclic:3");
    let wrong = lattice_of("cyclic:6");
    let err = product_map(
        &wrong,
        &BurnsideElement::one(&z2),
        &BurnsideElement::one(&z3),
    )
    .unwrap_err();
    assert!(matches!(err, Error::EmbeddingMismatch(_)));
}

#[test]
fn alpha_map_examples() {
    let s3 = lattice_of("symmetric:3");
    let z6 = lattice_of("cyclic:6");
    // Free orbit maps to the free orbit: ghost (6,0,0,0).
    let x = BurnsideElement::basis(&z6, 0).unwrap();
    let img = alpha_map(&s3, &z6, &x).unwrap();
    assert_eq!(img, BurnsideElement::basis(&s3, 0).unwrap());
    // Unit maps to the unit.
    let img = alpha_map(&s3, &z6, &BurnsideElement::one(&z6)).unwrap();
    assert_eq!(img, BurnsideElement::one(&s3));
    // [Z6/Z2] transports to ghost (3,3,0,0) = 3a - c.
    let z2_class = (0..z6.class_count())
        .find(|&i| z6.classes()[i].order() == 2)
        .unwrap();
    let x = BurnsideElement::basis(&z6, z2_class).unwrap();
    let img = alpha_map(&s3, &z6, &x).unwrap();
    assert_eq!(img.marks().values(), &[3, 3, 0, 0]);
    assert_eq!(
        img,
        BurnsideElement::from_coeffs(&s3, [(1, 3), (0, -1)]).unwrap()
    );
}

#[test]
fn alpha_map_lands_in_image_over_small_corpus() {
    for lat in util::corpus_lattices() {
        if lat.group().order() > 24 {
            continue;
        }
        let n = lat.group().order();
        let cyclic = lattice_of(&format!("cyclic:{n}"));
        let mut rng = Rng(0xa1fa);
        for _ in 0..6 {
            let x = util::random_element(&cyclic, &mut rng, -4, 4);
            let img = alpha_map(&lat, &cyclic, &x).unwrap();
            // Defining property: phi_H(alpha(x)) = phi_{Z/|H|}(x).
            let marks = img.marks();
            let src = x.marks();
            for (h, rec) in lat.classes().iter().enumerate() {
                let c = (0..cyclic.class_count())
                    .find(|&i| cyclic.classes()[i].order() == rec.order())
                    .unwrap();
                assert_eq!(marks.value(h), src.value(c), "{}", lat.group().name());
            }
        }
    }
}
