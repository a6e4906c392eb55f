//! Lattice order, table of marks, and the mark homomorphism round trip.

mod util;

use burnside::element::{element_from_ghost, invert_marks};
use burnside::lattice::table_of_marks;
use burnside::{BurnsideElement, GhostVector};
use num_traits::ToPrimitive;
use util::{lattice_of, Rng};

#[test]
fn lattices_and_elements_are_shareable_across_threads() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<burnside::SubgroupLattice>();
    assert_send_sync::<burnside::BurnsideElement>();
    assert_send_sync::<burnside::GhostVector>();
    assert_send_sync::<burnside::FiniteGroup>();
    // Deterministic output under concurrent reads of one lattice.
    let lat = lattice_of("symmetric:4");
    let rows = lat.mark_rows().to_vec();
    std::thread::scope(|scope| {
        for _ in 0..4 {
            scope.spawn(|| {
                let lat = lat.clone();
                assert_eq!(lat.mark_rows(), rows.as_slice());
                assert!(burnside::congruence::order_check(&lat).unwrap().1);
            });
        }
    });
}

#[test]
fn lattice_order_sigma3() {
    let lat = lattice_of("symmetric:3");
    let orders: Vec<usize> = lat.classes().iter().map(|c| c.order()).collect();
    assert_eq!(orders, vec![1, 2, 3, 6]);
    assert_eq!(lat.label(0), "c0_o1");
    assert_eq!(lat.resolve_label("trivial"), Some(0));
    assert_eq!(lat.resolve_label("full"), Some(3));
    assert_eq!(lat.resolve_label("c2_o3"), Some(2));
}

#[test]
fn lattice_order_z4_chain() {
    let lat = lattice_of("cyclic:4");
    let orders: Vec<usize> = lat.classes().iter().map(|c| c.order()).collect();
    assert_eq!(orders, vec![1, 2, 4]);
}

#[test]
fn lattice_order_d4_is_a_linear_extension() {
    // dihedral:4 has order 8: both Klein-four classes and the Z/4 class must
    // precede the full group.
    let lat = lattice_of("dihedral:4");
    let full = lat.full_class();
    for (i, c) in lat.classes().iter().enumerate() {
        if c.order() == 4 {
            assert!(i < full);
        }
    }
    let count4 = lat.classes().iter().filter(|c| c.order() == 4).count();
    assert_eq!(count4, 3, "one cyclic and two Klein-four classes");
    // Linear extension property over all pairs.
    for i in 0..lat.class_count() {
        for j in 0..lat.class_count() {
            if lat.subconjugate(i, j) && i != j {
                assert!(i < j, "subconjugacy must respect the order");
            }
        }
    }
}

#[test]
fn mark_matrix_sigma3_frozen() {
    let lat = lattice_of("symmetric:3");
    let marks = table_of_marks(&lat);
    assert_eq!(
        marks.entries(),
        &[
            vec![6, 0, 0, 0],
            vec![3, 1, 0, 0],
            vec![2, 0, 2, 0],
            vec![1, 1, 1, 1],
        ]
    );
}

#[test]
fn mark_matrix_small_frozen() {
    let z2 = lattice_of("cyclic:2");
    assert_eq!(table_of_marks(&z2).entries(), &[vec![2, 0], vec![1, 1]]);
    let z4 = lattice_of("cyclic:4");
    let m = table_of_marks(&z4);
    assert_eq!(
        (0..3).map(|i| m.entry(i, i)).collect::<Vec<_>>(),
        vec![4, 2, 1]
    );
}

#[test]
fn mark_matrix_invariants_over_corpus() {
    for lat in util::corpus_lattices() {
        let n = lat.class_count();
        for h in 0..n {
            assert_eq!(lat.mark(h, h), lat.weyl_order(h));
            assert_ne!(lat.mark(h, h), 0);
            for k in 0..n {
                if lat.mark(h, k) != 0 {
                    assert!(lat.subconjugate(k, h), "{}", lat.group().name());
                    assert!(k <= h);
                }
                assert_eq!(lat.mark(h, k) % lat.weyl_order(h), 0);
            }
        }
    }
}

#[test]
fn mark_vector_examples() {
    let lat = lattice_of("symmetric:3");
    let a = BurnsideElement::basis(&lat, 1).unwrap();
    assert_eq!(a.marks().values(), &[3, 1, 0, 0]);
    let unit = BurnsideElement::one(&lat);
    assert_eq!(unit.marks().values(), &[1, 1, 1, 1]);
    let free = BurnsideElement::basis(&lat, 0).unwrap();
    let x = &free.scaled(2) - &unit;
    assert_eq!(x.marks().values(), &[11, -1, -1, -1]);
}

#[test]
fn invert_marks_examples() {
    let lat = lattice_of("symmetric:3");
    let free = GhostVector::new(&lat, vec![6, 0, 0, 0]).unwrap();
    let x = element_from_ghost(&free).unwrap();
    assert_eq!(x, BurnsideElement::basis(&lat, 0).unwrap());

    let ones = GhostVector::new(&lat, vec![1, 1, 1, 1]).unwrap();
    assert_eq!(element_from_ghost(&ones).unwrap(), BurnsideElement::one(&lat));

    let point = GhostVector::new(&lat, vec![1, 0, 0, 0]).unwrap();
    let (coeffs, integral) = invert_marks(&point);
    assert!(!integral);
    assert_eq!(coeffs[0].numer().to_i64(), Some(1));
    assert_eq!(coeffs[0].denom().to_i64(), Some(6));
    assert!(coeffs[1..].iter().all(|c| c.numer().to_i64() == Some(0)));
}

#[test]
fn invert_after_mark_is_identity_on_random_elements() {
    for lat in util::corpus_lattices() {
        let mut rng = Rng(0x1001 + lat.class_count() as u64);
        for _ in 0..25 {
            let x = util::random_element(&lat, &mut rng, -9, 9);
            let back = element_from_ghost(&x.marks()).unwrap();
            assert_eq!(back, x, "round trip failed over {}", lat.group().name());
        }
    }
}

#[test]
fn normalized_rows_form_an_integral_basis() {
    for lat in util::corpus_lattices() {
        let n = lat.class_count();
        // a_H = row(H) / |W_G H| is integral and a_H(H) = 1.
        let mut normalized = Vec::with_capacity(n);
        for h in 0..n {
            let w = lat.weyl_order(h);
            let row: Vec<i64> = (0..n)
                .map(|k| {
                    let m = lat.mark(h, k);
                    assert_eq!(m % w, 0);
                    m / w
                })
                .collect();
            assert_eq!(row[h], 1);
            normalized.push(row);
        }
        // Every integer vector is an integer combination of the a_H: solve by
        // back-substitution against the unitriangular system.
        let mut rng = Rng(0x77 + n as u64);
        for _ in 0..10 {
            let target: Vec<i64> = (0..n).map(|_| rng.range(-10, 10)).collect();
            let mut residual = target.clone();
            let mut coeffs = vec![0i64; n];
            for h in (0..n).rev() {
                let c = residual[h];
                coeffs[h] = c;
                for k in 0..n {
                    residual[k] -= c * normalized[h][k];
                }
            }
            assert!(residual.iter().all(|&v| v == 0));
        }
    }
}
