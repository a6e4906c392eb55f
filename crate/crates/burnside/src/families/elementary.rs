//! Distinguished generating sets (normal forms) for subgroups of (Z/p)^n
//! and their intersections.
//!
//! The normal form of a subgroup is the unique generating set whose rows
//! have a 1 at their pivot coordinate, zeros at every later coordinate, and
//! zeros at the pivot coordinates of the other rows; pivots are listed in
//! strictly decreasing order (row 1 carries the largest pivot).

use crate::error::{Error, Result};
use crate::util::is_prime;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryAbelianNF {
    pub p: u64,
    pub n: usize,
    /// 1-based pivot coordinates, strictly decreasing.
    pub pivots: Vec<usize>,
    /// Rows over Z/p; row k has its pivot at coordinate pivots(k).
    pub rows: Vec<Vec<u64>>,
}

impl ElementaryAbelianNF {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// The (pivot, row) tuples, the paper's bookkeeping unit.
    pub fn tuples(&self) -> Vec<(usize, Vec<u64>)> {
        self.pivots
            .iter()
            .copied()
            .zip(self.rows.iter().cloned())
            .collect()
    }

    /// Reduce a vector against the rows; returns the residual.
    fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let mut v = v.to_vec();
        for (k, &pivot) in self.pivots.iter().enumerate() {
            let c = v[pivot - 1] % self.p;
            if c != 0 {
                for i in 0..self.n {
                    v[i] = (v[i] + (self.p - c) * self.rows[k][i]) % self.p;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Every element of the subgroup, in lexicographic coefficient order.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![vec![0u64; self.n]];
        for row in &self.rows {
            let mut next = Vec::with_capacity(out.len() * self.p as usize);
            for base in &out {
                for c in 0..self.p {
                    let v: Vec<u64> = base
                        .iter()
                        .zip(row.iter())
                        .map(|(&b, &r)| (b + c * r) % self.p)
                        .collect();
                    next.push(v);
                }
            }
            out = next;
        }
        out.sort();
        out.dedup();
        out
    }
}

/// The unique distinguished generating set of the span of `gens`.
pub fn nf_from_generators(p: u64, n: usize, gens: &[Vec<u64>]) -> Result<ElementaryAbelianNF> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    for g in gens {
        if g.len() != n {
            return Err(Error::Dimension(format!(
                "generator has length {}, expected {n}",
                g.len()
            )));
        }
    }
    let mut rows: Vec<Vec<u64>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new(); // 0-based while working
    for g in gens {
        let mut v: Vec<u64> = g.iter().map(|&x| x % p).collect();
        // Eliminate existing pivots.
        for (k, &piv) in pivots.iter().enumerate() {
            let c = v[piv] % p;
            if c != 0 {
                for i in 0..n {
                    v[i] = (v[i] + (p - c) * rows[k][i]) % p;
                }
            }
        }
        let Some(piv) = (0..n).rev().find(|&i| v[i] % p != 0) else {
            continue;
        };
        // Normalize the pivot to 1.
        let inv = mod_inverse(v[piv], p);
        for x in v.iter_mut() {
            *x = (*x * inv) % p;
        }
        // Clear this coordinate from the existing rows.
        for k in 0..rows.len() {
            let c = rows[k][piv] % p;
            if c != 0 {
                for i in 0..n {
                    rows[k][i] = (rows[k][i] + (p - c) * v[i]) % p;
                }
            }
        }
        rows.push(v);
        pivots.push(piv);
    }
    // Sort rows by decreasing pivot.
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by(|&a, &b| pivots[b].cmp(&pivots[a]));
    let rows: Vec<Vec<u64>> = order.iter().map(|&i| rows[i].clone()).collect();
    let pivots: Vec<usize> = order.iter().map(|&i| pivots[i] + 1).collect();
    Ok(ElementaryAbelianNF { p, n, pivots, rows })
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p.
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Result of intersecting two normal forms: the true intersection computed
/// by exact linear algebra, the normal form whose tuple set is the
/// intersection of the two tuple sets (the paper's bookkeeping rule, kept
/// verbatim), and whether the two coincide.
#[derive(Debug, Clone)]
pub struct NfIntersection {
    pub linear: ElementaryAbelianNF,
    pub tuple_rule: ElementaryAbelianNF,
    pub agree: bool,
}

pub fn nf_intersect(a: &ElementaryAbelianNF, b: &ElementaryAbelianNF) -> Result<NfIntersection> {
    if a.p != b.p || a.n != b.n {
        return Err(Error::Dimension(
            "normal forms over different ambient groups".into(),
        ));
    }
    let linear = intersect_linear(a, b)?;
    let tuples_a = a.tuples();
    let tuples_b = b.tuples();
    let common: Vec<Vec<u64>> = tuples_a
        .iter()
        .filter(|t| tuples_b.contains(t))
        .map(|(_, row)| row.clone())
        .collect();
    let tuple_rule = nf_from_generators(a.p, a.n, &common)?;
    let agree = linear == tuple_rule;
    Ok(NfIntersection {
        linear,
        tuple_rule,
        agree,
    })
}

/// Zassenhaus block elimination: echelonize rows [a | a] for a in A and
/// [b | 0] for b in B with pivots chosen in the left block first; rows whose
/// left block vanishes span the intersection in the right block.
fn intersect_linear(
    a: &ElementaryAbelianNF,
    b: &ElementaryAbelianNF,
) -> Result<ElementaryAbelianNF> {
    let (p, n) = (a.p, a.n);
    // Combined coordinates: index 0..n is the payload (right block), index
    // n..2n the main block; trailing-pivot echelon then prefers the main
    // block, and exhausted rows leave their payload spanning A cap B.
    let mut stacked: Vec<Vec<u64>> = Vec::new();
    for row in &a.rows {
        let mut v = row.clone();
        v.extend(row.iter().copied());
        stacked.push(v);
    }
    for row in &b.rows {
        let mut v = vec![0u64; n];
        v.extend(row.iter().copied());
        stacked.push(v);
    }
    let echelon = nf_from_generators(p, 2 * n, &stacked)?;
    let payload: Vec<Vec<u64>> = echelon
        .rows
        .iter()
        .filter(|r| r[n..].iter().all(|&x| x == 0))
        .map(|r| r[..n].to_vec())
        .collect();
    nf_from_generators(p, n, &payload)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_example_nf() {
        let nf = nf_from_generators(2, 3, &[vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        assert_eq!(nf.pivots, vec![3, 2]);
        assert_eq!(nf.rows, vec![vec![1, 0, 1], vec![1, 1, 0]]);
    }

    #[test]
    fn empty_and_full() {
        let nf = nf_from_generators(3, 2, &[]).unwrap();
        assert_eq!(nf.rank(), 0);
        let full = nf_from_generators(3, 2, &[vec![1, 2], vec![2, 2], vec![0, 1]]).unwrap();
        assert_eq!(full.rank(), 2);
        assert_eq!(full.pivots, vec![2, 1]);
        assert_eq!(full.rows, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn documented_tuple_rule_discrepancy() {
        // (Z/2)^2: full group vs the diagonal: the tuple rule yields the
        // trivial subgroup while the true intersection is the diagonal.
        let full = nf_from_generators(2, 2, &[vec![1, 0], vec![0, 1]]).unwrap();
        let diag = nf_from_generators(2, 2, &[vec![1, 1]]).unwrap();
        let result = nf_intersect(&full, &diag).unwrap();
        assert_eq!(result.linear, diag);
        assert_eq!(result.tuple_rule.rank(), 0);
        assert!(!result.agree);
    }
}
