//! Congruence relations characterizing the image of the mark homomorphism
//! inside the ghost ring, and the order invariant |G|.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::element::GhostVector;
use crate::error::{Error, Result};
use crate::lattice::SubgroupLattice;
use crate::util::{euler_phi, lcm};

/// The congruence relation attached to one class (H): for f in the mark
/// image, sum over terms of multiplicity * f(C-class) is divisible by
/// |W_G H|. Terms aggregate the subgroups C with H normal in C inside
/// N_G(H) and C/H cyclic, weighted by the number of generators of C/H.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceRelation {
    pub class_index: usize,
    pub terms: Vec<(usize, i64)>,
    pub modulus: i64,
}

impl CongruenceRelation {
    /// Evaluate the left side on a ghost vector.
    pub fn evaluate(&self, f: &GhostVector) -> i64 {
        let sum: i128 = self
            .terms
            .iter()
            .map(|&(c, m)| m as i128 * f.value(c) as i128)
            .sum();
        i64::try_from(sum).expect("congruence sum overflow")
    }

    pub fn holds(&self, f: &GhostVector) -> bool {
        self.evaluate(f).rem_euclid(self.modulus) == 0
    }

    /// Render as e.g. `f(c0_o1)+3*f(c1_o2)+2*f(c2_o3) ≡ 0 mod 6`.
    pub fn display(&self, lattice: &SubgroupLattice) -> String {
        let mut out = String::new();
        for (i, &(c, m)) in self.terms.iter().enumerate() {
            if i > 0 {
                out.push('+');
            }
            if m != 1 {
                out.push_str(&format!("{m}*"));
            }
            out.push_str(&format!("f({})", lattice.label(c)));
        }
        out.push_str(&format!(" ≡ 0 mod {}", self.modulus));
        out
    }
}

/// The congruence relation for class `h`, enumerating the actual subgroups
/// C with H normal in C and C inside N_G(H), C/H cyclic, for the fixed class
/// representative H, then aggregating multiplicities by the class of C.
pub fn congruences_for_class(
    lattice: &SubgroupLattice,
    h: usize,
) -> Result<CongruenceRelation> {
    lattice
        .congruences()
        .get(h)
        .cloned()
        .ok_or(Error::InvalidClass(h))
}

/// All per-class relations, in class order.
pub fn all_congruences(lattice: &SubgroupLattice) -> Result<Vec<CongruenceRelation>> {
    Ok(lattice.congruences().to_vec())
}

/// Derive every class's relation from scratch; called once per lattice via
/// the lattice's cache.
pub(crate) fn compute_all_congruences(lattice: &SubgroupLattice) -> Vec<CongruenceRelation> {
    let g = lattice.group();
    let mut out = Vec::with_capacity(lattice.class_count());
    for (h, record) in lattice.classes().iter().enumerate() {
        let hm = record.rep.members();
        let nm = record.normalizer.members();
        let mut terms: std::collections::BTreeMap<usize, i64> = std::collections::BTreeMap::new();
        for (j, cls) in lattice.classes().iter().enumerate() {
            for cm in &cls.conjugates {
                if !subset(hm, cm) || !subset(cm, nm) {
                    continue;
                }
                let index = (cm.len() / hm.len()) as u64;
                if quotient_is_cyclic(g, cm, hm, index) {
                    *terms.entry(j).or_insert(0) += euler_phi(index) as i64;
                }
            }
        }
        out.push(CongruenceRelation {
            class_index: h,
            terms: terms.into_iter().collect(),
            modulus: record.weyl_order,
        });
    }
    out
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

/// Whether C/H is cyclic: some coset of H in C has order [C : H] in the
/// quotient (H is normal in C by containment in N_G(H)).
fn quotient_is_cyclic(
    g: &crate::group::FiniteGroup,
    c_members: &[u16],
    h_members: &[u16],
    index: u64,
) -> bool {
    if index == 1 {
        return true;
    }
    c_members.iter().any(|&c| {
        let mut x = c;
        let mut k = 1u64;
        while h_members.binary_search(&x).is_err() {
            x = g.mul(x, c);
            k += 1;
        }
        k == index
    })
}

/// The first relation a ghost vector violates, in class order.
#[derive(Debug, Clone)]
pub struct CongruenceViolation {
    pub relation: CongruenceRelation,
    pub sum: i64,
}

pub fn first_violation(
    lattice: &SubgroupLattice,
    f: &GhostVector,
) -> Result<Option<CongruenceViolation>> {
    for h in 0..lattice.class_count() {
        let rel = congruences_for_class(lattice, h)?;
        if !rel.holds(f) {
            let sum = rel.evaluate(f);
            return Ok(Some(CongruenceViolation { relation: rel, sum }));
        }
    }
    Ok(None)
}

/// Membership of f in the image of the mark homomorphism, characterized by
/// the congruence relations.
pub fn in_image(lattice: &SubgroupLattice, f: &GhostVector) -> Result<bool> {
    Ok(first_violation(lattice, f)?.is_none())
}

/// Independent span oracle: exact Hermite-style integer elimination over
/// the rows, computed once, then queried for membership. Kept independent
/// of the congruence code path.
pub struct SpanOracle {
    ncols: usize,
    work: Vec<Vec<BigInt>>,
    pivots: Vec<(usize, usize)>,
}

impl SpanOracle {
    pub fn new(rows: &[Vec<i64>]) -> SpanOracle {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut work: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut top = 0usize;
        for col in 0..ncols {
            // Euclidean elimination within the column below `top`.
            loop {
                let mut best: Option<usize> = None;
                for r in top..work.len() {
                    if !work[r][col].is_zero()
                        && best.is_none_or(|b| work[r][col].abs() < work[b][col].abs())
                    {
                        best = Some(r);
                    }
                }
                let Some(best) = best else { break };
                work.swap(top, best);
                let mut any_left = false;
                for r in (top + 1)..work.len() {
                    if work[r][col].is_zero() {
                        continue;
                    }
                    let q = &work[r][col] / &work[top][col];
                    if !q.is_zero() {
                        for cc in 0..ncols {
                            let sub = &q * &work[top][cc];
                            work[r][cc] -= sub;
                        }
                    }
                    if !work[r][col].is_zero() {
                        any_left = true;
                    }
                }
                if !any_left {
                    break;
                }
            }
            if top < work.len() && !work[top][col].is_zero() {
                pivots.push((top, col));
                top += 1;
            }
        }
        SpanOracle {
            ncols,
            work,
            pivots,
        }
    }

    pub fn contains(&self, f: &[i64]) -> bool {
        if f.len() != self.ncols {
            return false;
        }
        let mut residual: Vec<BigInt> = f.iter().map(|&v| BigInt::from(v)).collect();
        for &(row, col) in &self.pivots {
            if residual[col].is_zero() {
                continue;
            }
            let q = &residual[col] / &self.work[row][col];
            let rem = &residual[col] - &q * &self.work[row][col];
            if !rem.is_zero() {
                return false;
            }
            for cc in 0..self.ncols {
                let sub = &q * &self.work[row][cc];
                residual[cc] -= sub;
            }
        }
        residual.iter().all(|v| v.is_zero())
    }
}

/// One-shot convenience over `SpanOracle`.
pub fn in_row_span(rows: &[Vec<i64>], f: &[i64]) -> bool {
    if rows.is_empty() {
        return f.iter().all(|&v| v == 0);
    }
    SpanOracle::new(rows).contains(f)
}

/// The order invariant: the least common multiple of all Weyl orders (equals
/// |G| for finite groups), and whether order * e_h lies in the mark image for
/// every indicator vector e_h.
pub fn order_check(lattice: &SubgroupLattice) -> Result<(i64, bool)> {
    let order = lattice
        .classes()
        .iter()
        .fold(1i64, |acc, c| lcm(acc, c.weyl_order));
    let n = lattice.class_count();
    let relations = all_congruences(lattice)?;
    for h in 0..n {
        let mut values = vec![0i64; n];
        values[h] = order;
        for rel in &relations {
            let sum: i128 = rel
                .terms
                .iter()
                .map(|&(c, m)| m as i128 * values[c] as i128)
                .sum();
            if sum.rem_euclid(rel.modulus as i128) != 0 {
                return Ok((order, false));
            }
        }
    }
    Ok((order, true))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_span_basics() {
        let rows = vec![vec![2, 0], vec![1, 1]];
        assert!(in_row_span(&rows, &[2, 0]));
        assert!(in_row_span(&rows, &[3, 1]));
        assert!(in_row_span(&rows, &[0, 2])); // 2*(1,1) - (2,0)
        assert!(!in_row_span(&rows, &[1, 0]));
        assert!(in_row_span(&rows, &[0, 0]));
    }
}
