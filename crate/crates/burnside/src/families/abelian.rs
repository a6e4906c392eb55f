//! The abelian fast path for multiplication and the reduction of compact
//! abelian Lie groups to their component groups.

use std::sync::Arc;

use crate::element::BurnsideElement;
use crate::error::{Error, Result};
use crate::group::{intersect_members, GroupSpec};
use crate::lattice::SubgroupLattice;

/// Closed-form product for a finite abelian group:
/// [G/K].[G/L] = (|G| |K cap L|) / (|K| |L|) . [G/(K cap L)].
pub fn abelian_mul(
    lattice: &Arc<SubgroupLattice>,
    k: usize,
    l: usize,
) -> Result<BurnsideElement> {
    if !lattice.group().is_abelian() {
        return Err(Error::NotAbelian);
    }
    let krec = lattice.class(k)?;
    let lrec = lattice.class(l)?;
    let inter = intersect_members(krec.rep.members(), lrec.rep.members());
    let class = lattice
        .class_of_members(&inter)
        .ok_or_else(|| Error::Internal("intersection not in lattice".into()))?;
    let num = (lattice.group().order() * inter.len()) as i64;
    let den = (krec.order() * lrec.order()) as i64;
    if num % den != 0 {
        return Err(Error::Internal("abelian product coefficient not integral".into()));
    }
    BurnsideElement::from_coeffs(lattice, [(class, num / den)])
}

/// A compact abelian Lie group: a torus of the given rank times the finite
/// abelian group with the given invariant factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompactAbelianDescriptor {
    pub torus_rank: u32,
    pub invariant_factors: Vec<u64>,
}

impl CompactAbelianDescriptor {
    pub fn new(torus_rank: u32, invariant_factors: Vec<u64>) -> Result<Self> {
        if invariant_factors.iter().any(|&d| d < 2) {
            return Err(Error::Dimension(
                "invariant factors must be at least 2".into(),
            ));
        }
        Ok(CompactAbelianDescriptor {
            torus_rank,
            invariant_factors,
        })
    }
}

/// A(G) = A(G / G0): discard the torus and return the component group. A
/// bare torus reduces to the trivial group, whose Burnside ring is Z.
pub fn compact_abelian_reduce(d: &CompactAbelianDescriptor) -> GroupSpec {
    if d.invariant_factors.is_empty() {
        GroupSpec::Cyclic(1)
    } else {
        GroupSpec::Abelian(d.invariant_factors.clone())
    }
}
