//! Prime ideals q(H,p) / q(H,0), p-perfection, the chain property for prime
//! ideals, idempotent and unit enumeration, and pi-perfect class counts.

use std::sync::Arc;

use crate::element::{element_from_ghost, BurnsideElement, GhostVector};
use crate::error::{Error, Result};
use crate::group::{all_subgroup_classes, p_residual, realize_quotient, Subgroup};
use crate::lattice::SubgroupLattice;
use crate::util::{is_prime, p_part};

/// Exhaustive idempotent/unit searches enumerate 2^classes ghost vectors;
/// this bound keeps the search around a million membership tests.
pub const ENUM_CLASS_BOUND: usize = 20;

/// A prime ideal of A(G): q(H, 0) in characteristic 0, q(H, p) at a prime p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeIdealDescriptor {
    pub class_index: usize,
    pub characteristic: u64,
}

impl PrimeIdealDescriptor {
    pub fn new(class_index: usize, characteristic: u64) -> Result<Self> {
        if characteristic != 0 && !is_prime(characteristic) {
            return Err(Error::NotPrime(characteristic));
        }
        Ok(PrimeIdealDescriptor {
            class_index,
            characteristic,
        })
    }
}

/// The p-perfection data of a class (H): h_sub is the class of H'_p (the
/// smallest normal subgroup with finite p-group quotient; the torus
/// saturation is the identity for finite groups) and h_sup the class of H^p,
/// the preimage in N_G(H_p) of a Sylow p-subgroup of N_G(H_p)/H_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PerfectionPair {
    pub base_class: usize,
    pub p: u64,
    pub h_sub: usize,
    pub h_sup: usize,
}

/// Class of the p-residual of the representative of class `h`.
pub fn residual_class(lattice: &SubgroupLattice, h: usize, p: u64) -> Result<usize> {
    let record = lattice.class(h)?;
    let res = p_residual(lattice.group(), &record.rep, p)?;
    lattice
        .class_of_members(res.members())
        .ok_or_else(|| Error::Internal("residual not in lattice".into()))
}

pub fn p_perfection_pair(
    lattice: &SubgroupLattice,
    h: usize,
    p: u64,
) -> Result<PerfectionPair> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    lattice.class(h)?;
    let (h_sub, h_sup) = lattice.perfection_memo((h, p), || {
        let h_sub = residual_class(lattice, h, p)?;
        let h_sup = sylow_overgroup_class(lattice, h_sub, p)?;
        Ok((h_sub, h_sup))
    })?;
    Ok(PerfectionPair {
        base_class: h,
        p,
        h_sub,
        h_sup,
    })
}

/// Class of the preimage in N_G(H) of a Sylow p-subgroup of N_G(H)/H, for
/// the representative H of class `h`. The quotient is realized on its coset
/// space and searched with the ordinary subgroup enumeration; Sylow
/// subgroups are conjugate in the quotient, so the resulting class does not
/// depend on the pick.
fn sylow_overgroup_class(lattice: &SubgroupLattice, h: usize, p: u64) -> Result<usize> {
    let g = lattice.group();
    let record = lattice.class(h)?;
    let (quotient, cosets) = realize_quotient(g, &record.normalizer, &record.rep)?;
    let target = p_part(quotient.order() as u64, p) as usize;
    if target == 1 {
        return Ok(h);
    }
    let sylow = all_subgroup_classes(&quotient)
        .into_iter()
        .find(|c| c.order() == target)
        .ok_or_else(|| Error::Internal("missing Sylow subgroup in quotient".into()))?;
    let mut members: Vec<u16> = sylow
        .representative
        .members()
        .iter()
        .flat_map(|&q| cosets[q as usize].iter().copied())
        .collect();
    members.sort_unstable();
    lattice
        .class_of_members(&members)
        .ok_or_else(|| Error::Internal("Sylow preimage not in lattice".into()))
}

/// Equality of prime ideals: characteristic 0 ideals agree iff the classes
/// agree; characteristic p ideals agree iff the primes agree and the Sylow
/// overgroups (H^p) agree.
pub fn prime_ideal_equal(
    lattice: &SubgroupLattice,
    q1: PrimeIdealDescriptor,
    q2: PrimeIdealDescriptor,
) -> Result<bool> {
    lattice.class(q1.class_index)?;
    lattice.class(q2.class_index)?;
    if q1.characteristic != q2.characteristic {
        return Ok(false);
    }
    if q1.characteristic == 0 {
        return Ok(q1.class_index == q2.class_index);
    }
    let p = q1.characteristic;
    let a = p_perfection_pair(lattice, q1.class_index, p)?;
    let b = p_perfection_pair(lattice, q2.class_index, p)?;
    Ok(a.h_sup == b.h_sup)
}

/// Containment of prime ideals. Distinct characteristic-0 ideals are
/// incomparable; q(H,0) is contained in q(K,p) iff q(H,p) = q(K,p); maximal
/// ideals are contained only in themselves.
pub fn prime_ideal_subset(
    lattice: &SubgroupLattice,
    q1: PrimeIdealDescriptor,
    q2: PrimeIdealDescriptor,
) -> Result<bool> {
    match (q1.characteristic, q2.characteristic) {
        (0, 0) => Ok(q1.class_index == q2.class_index),
        (0, _p) => prime_ideal_equal(
            lattice,
            PrimeIdealDescriptor {
                class_index: q1.class_index,
                characteristic: q2.characteristic,
            },
            q2,
        ),
        (_p, 0) => Ok(false),
        (_, _) => prime_ideal_equal(lattice, q1, q2),
    }
}

/// The chain property of prime ideals on a nested chain h <= j <= k realized
/// by nested representatives: q(h,p) = q(k,p) forces the middle term to
/// agree as well. Returns whether the implication holds (a property-test
/// harness; the statement is a theorem).
pub fn bauer_may_check(
    lattice: &SubgroupLattice,
    chain: (usize, usize, usize),
    p: u64,
) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let (h, j, k) = chain;
    if !chain_is_nested(lattice, h, j, k)? {
        return Err(Error::NotNested);
    }
    let qh = PrimeIdealDescriptor::new(h, p)?;
    let qj = PrimeIdealDescriptor::new(j, p)?;
    let qk = PrimeIdealDescriptor::new(k, p)?;
    if prime_ideal_equal(lattice, qh, qk)? {
        Ok(prime_ideal_equal(lattice, qh, qj)? && prime_ideal_equal(lattice, qj, qk)?)
    } else {
        Ok(true)
    }
}

/// Whether classes h <= j <= k admit nested representatives A <= B <= C.
pub fn chain_is_nested(
    lattice: &SubgroupLattice,
    h: usize,
    j: usize,
    k: usize,
) -> Result<bool> {
    let hc = lattice.class(h)?;
    let jc = lattice.class(j)?;
    let kc = lattice.class(k)?;
    for b in &jc.conjugates {
        let lower = hc.conjugates.iter().any(|a| subset(a, b));
        if !lower {
            continue;
        }
        let upper = kc.conjugates.iter().any(|c| subset(b, c));
        if upper {
            return Ok(true);
        }
    }
    Ok(false)
}

fn subset(a: &[u16], b: &[u16]) -> bool {
    if a.len() > b.len() {
        return false;
    }
    let mut i = 0;
    for &x in a {
        while i < b.len() && b[i] < x {
            i += 1;
        }
        if i == b.len() || b[i] != x {
            return false;
        }
    }
    true
}

/// All idempotents, by exhausting 0/1 ghost vectors and keeping those in
/// the mark image. Sorted by ghost vector, so 0 comes first and 1 last.
pub fn idempotents(lattice: &Arc<SubgroupLattice>) -> Result<Vec<BurnsideElement>> {
    enumerate_ghosts(lattice, 0)
}

/// All units (u with u*u = 1), by exhausting +/-1 ghost vectors in the mark
/// image. Always contains 1 and -1.
pub fn units(lattice: &Arc<SubgroupLattice>) -> Result<Vec<BurnsideElement>> {
    enumerate_ghosts(lattice, -1)
}

/// Shared exhaustive search: `low` = 0 enumerates {0,1}-vectors
/// (idempotents), `low` = -1 enumerates {-1,1}-vectors (units).
fn enumerate_ghosts(lattice: &Arc<SubgroupLattice>, low: i64) -> Result<Vec<BurnsideElement>> {
    let n = lattice.class_count();
    if n > ENUM_CLASS_BOUND {
        return Err(Error::ClassBound {
            count: n,
            bound: ENUM_CLASS_BOUND,
        });
    }
    let relations = crate::congruence::all_congruences(lattice)?;
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << n) {
        let values: Vec<i64> = (0..n)
            .map(|k| if mask & (1 << k) != 0 { 1 } else { low })
            .collect();
        let ok = relations.iter().all(|rel| {
            let sum: i128 = rel
                .terms
                .iter()
                .map(|&(c, m)| m as i128 * values[c] as i128)
                .sum();
            sum.rem_euclid(rel.modulus as i128) == 0
        });
        if !ok {
            continue;
        }
        let f = GhostVector::new(lattice, values)?;
        out.push(element_from_ghost(&f)?);
    }
    out.sort_by(|a, b| a.marks().values().to_vec().cmp(&b.marks().values().to_vec()));
    Ok(out)
}

/// Classes whose representative H satisfies p_residual(H, p) = H for every
/// p in pi, i.e. H has no nontrivial solvable pi-quotient.
pub fn pi_perfect_classes(lattice: &SubgroupLattice, pi: &[u64]) -> Result<Vec<usize>> {
    for &p in pi {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
    }
    let mut out = Vec::new();
    'classes: for h in 0..lattice.class_count() {
        for &p in pi {
            if residual_class(lattice, h, p)? != h {
                continue 'classes;
            }
        }
        out.push(h);
    }
    Ok(out)
}

/// Perfect classes for pi = all primes dividing |G|.
pub fn perfect_classes(lattice: &SubgroupLattice) -> Result<Vec<usize>> {
    let pi = crate::util::prime_divisors(lattice.group().order() as u64);
    pi_perfect_classes(lattice, &pi)
}

/// All nested chains (h, j, k) of distinct-or-equal classes realized by
/// nested representatives. Used by property suites.
pub fn nested_chains(lattice: &SubgroupLattice) -> Result<Vec<(usize, usize, usize)>> {
    let n = lattice.class_count();
    let mut out = Vec::new();
    for h in 0..n {
        for j in 0..n {
            for k in 0..n {
                if chain_is_nested(lattice, h, j, k)? {
                    out.push((h, j, k));
                }
            }
        }
    }
    Ok(out)
}

/// Subgroup pairs K normal in H with p-power quotient, as class pairs with a
/// witness; used to test q(K,p) = q(H,p).
pub fn normal_p_quotient_pairs(
    lattice: &SubgroupLattice,
    p: u64,
) -> Result<Vec<(usize, usize)>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let g = lattice.group();
    let mut pairs = Vec::new();
    for (hj, hcls) in lattice.classes().iter().enumerate() {
        let h = &hcls.rep;
        for km in lattice
            .classes()
            .iter()
            .flat_map(|c| c.conjugates.iter())
        {
            if !subset(km, h.members()) {
                continue;
            }
            let index = (h.order() / km.len()) as u64;
            if index == 1 || p_part(index, p) != index {
                continue;
            }
            let normal = h.members().iter().all(|&b| {
                let mut conj: Vec<u16> = km.iter().map(|&m| g.conjugate(b, m)).collect();
                conj.sort_unstable();
                conj == *km
            });
            if normal {
                let kj = lattice
                    .class_of_members(km)
                    .ok_or_else(|| Error::Internal("conjugate not classified".into()))?;
                pairs.push((kj, hj));
            }
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    Ok(pairs)
}

/// Witness subgroup for a class, for callers that need concrete members.
pub fn class_representative(lattice: &SubgroupLattice, h: usize) -> Result<&Subgroup> {
    Ok(&lattice.class(h)?.rep)
}
