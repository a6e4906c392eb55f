//! Shared helpers for integration tests: the test corpus, a deterministic
//! generator for randomized checks, and brute-force oracles kept independent
//! of the library's implementation paths.

#![allow(dead_code)]

use burnside::group::{closure, FiniteGroup, Subgroup};
use burnside::lattice::SubgroupLattice;
use burnside::{parse_group, BurnsideElement};
use std::sync::Arc;

/// Corpus fixed by the acceptance criteria.
pub fn corpus_specs() -> Vec<String> {
    let mut specs: Vec<String> = (1..=16).map(|n| format!("cyclic:{n}")).collect();
    specs.extend(
        ["abelian:2,2", "abelian:2,4", "abelian:2,2,2"]
            .iter()
            .map(|s| s.to_string()),
    );
    for p in [2u64, 3] {
        for n in 1..=3 {
            specs.push(format!("elementary:{p}:{n}"));
        }
    }
    specs.extend((3..=8).map(|n| format!("dihedral:{n}")));
    specs.extend(
        [
            "quaternion:8",
            "symmetric:3",
            "symmetric:4",
            "alternating:4",
            "alternating:5",
        ]
        .iter()
        .map(|s| s.to_string()),
    );
    specs
}

pub fn corpus_groups() -> Vec<FiniteGroup> {
    corpus_specs()
        .iter()
        .map(|s| parse_group(s).expect("corpus spec builds"))
        .collect()
}

pub fn corpus_lattices() -> Vec<Arc<SubgroupLattice>> {
    static CACHE: std::sync::OnceLock<Vec<Arc<SubgroupLattice>>> = std::sync::OnceLock::new();
    CACHE
        .get_or_init(|| {
            corpus_groups()
                .into_iter()
                .map(|g| SubgroupLattice::build(g).expect("corpus lattice builds"))
                .collect()
        })
        .clone()
}

pub fn lattice_of(spec: &str) -> Arc<SubgroupLattice> {
    SubgroupLattice::build(parse_group(spec).unwrap()).unwrap()
}

/// Deterministic splitmix generator for frozen randomized trials.
pub struct Rng(pub u64);

impl Rng {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }

    /// Uniform value in [lo, hi].
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }
}

/// Independent subgroup enumeration by subset closure: close every subset of
/// size at most 3. Complete for the corpus groups of order <= 24, whose
/// subgroups all admit generating sets of at most 3 elements.
pub fn subgroups_by_subset_closure(g: &FiniteGroup) -> Vec<Vec<u16>> {
    let n = g.order() as u16;
    let mut found = std::collections::BTreeSet::new();
    found.insert(closure(g, &[]));
    for a in 0..n {
        found.insert(closure(g, &[a]));
        for b in (a + 1)..n {
            found.insert(closure(g, &[a, b]));
            for c in (b + 1)..n {
                found.insert(closure(g, &[a, b, c]));
            }
        }
    }
    found.into_iter().collect()
}

/// A random sparse element with coefficients in [lo, hi].
pub fn random_element(
    lat: &Arc<SubgroupLattice>,
    rng: &mut Rng,
    lo: i64,
    hi: i64,
) -> BurnsideElement {
    let count = lat.class_count();
    let terms = 1 + rng.below(count.min(4) as u64) as usize;
    let mut coeffs = Vec::new();
    for _ in 0..terms {
        coeffs.push((rng.below(count as u64) as usize, rng.range(lo, hi)));
    }
    BurnsideElement::from_coeffs(lat, coeffs).unwrap()
}

/// Subgroup from explicit generator keys (panics if a key is missing).
pub fn subgroup_by_keys(g: &FiniteGroup, keys: &[&[u16]]) -> Subgroup {
    let gens: Vec<u16> = keys
        .iter()
        .map(|k| g.index_of_key(k).expect("generator key exists"))
        .collect();
    Subgroup::generated(g, &gens).unwrap()
}
