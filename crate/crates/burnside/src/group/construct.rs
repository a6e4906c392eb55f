//! Realization of group specs on concrete, canonically indexed element sets.
//!
//! Elements are sorted by a canonical key: the image tuple for permutation
//! groups, mixed-radix coordinates for abelian and coordinate families, and
//! the pair of factor indices for products. Indexing is therefore
//! deterministic for a given spec.

use crate::error::{Error, Result};
use crate::group::spec::GroupSpec;
use crate::group::FiniteGroup;

pub fn realize(spec: &GroupSpec, cap: u64) -> Result<FiniteGroup> {
    let name = spec.to_string();
    match spec {
        GroupSpec::Cyclic(n) => coords_group(name, &[*n]),
        GroupSpec::Abelian(ds) => coords_group(name, ds),
        GroupSpec::Elementary { p, n } => coords_group(name, &vec![*p; *n as usize]),
        GroupSpec::Dihedral(n) => dihedral_group(name, *n),
        GroupSpec::Quaternion8 => quaternion_group(name),
        GroupSpec::Symmetric(n) => permutation_group(name, all_permutations(*n as u16)),
        GroupSpec::Alternating(n) => permutation_group(
            name,
            all_permutations(*n as u16)
                .into_iter()
                .filter(|p| perm_parity(p))
                .collect(),
        ),
        GroupSpec::Perm { points, cycles } => {
            let gens: Vec<Vec<u16>> = cycles.iter().map(|c| cycle_to_perm(*points, c)).collect();
            let elems = perm_closure(*points, &gens, cap)?;
            permutation_group(name, elems)
        }
        GroupSpec::Product(a, b) => {
            let ga = a.build(cap)?;
            let gb = b.build(cap)?;
            product_group(name, &ga, &gb)
        }
    }
}

/// Assemble a group from raw elements: sort by key, build the table, locate
/// identity and inverses, and validate the axioms.
fn assemble<E>(
    name: String,
    elems: Vec<E>,
    key: impl Fn(&E) -> Vec<u16>,
    mul: impl Fn(&E, &E) -> E,
) -> Result<FiniteGroup> {
    let mut keyed: Vec<(Vec<u16>, E)> = elems.into_iter().map(|e| (key(&e), e)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    for w in keyed.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(Error::Internal(format!(
                "duplicate element key in {name}"
            )));
        }
    }
    let n = keyed.len();
    if n > u16::MAX as usize {
        return Err(Error::OrderCap {
            order: n as u64,
            cap: u16::MAX as u64,
        });
    }
    let keys: Vec<Vec<u16>> = keyed.iter().map(|(k, _)| k.clone()).collect();
    let index_of = |k: &[u16]| keys.binary_search_by(|probe| probe.as_slice().cmp(k)).ok();
    let mut table = vec![0u16; n * n];
    for (i, (_, a)) in keyed.iter().enumerate() {
        for (j, (_, b)) in keyed.iter().enumerate() {
            let prod = key(&mul(a, b));
            let Some(idx) = index_of(&prod) else {
                return Err(Error::Internal(format!(
                    "element set of {name} is not closed under multiplication"
                )));
            };
            table[i * n + j] = idx as u16;
        }
    }
    FiniteGroup::from_table(name, keys, table)
}

fn coords_group(name: String, radices: &[u64]) -> Result<FiniteGroup> {
    for &d in radices {
        if d == 0 || d > u16::MAX as u64 {
            return Err(Error::Internal("coordinate radix out of range".into()));
        }
    }
    let radices: Vec<u16> = radices.iter().map(|&d| d as u16).collect();
    let mut elems: Vec<Vec<u16>> = vec![vec![]];
    for &d in &radices {
        let mut next = Vec::with_capacity(elems.len() * d as usize);
        for e in &elems {
            for v in 0..d {
                let mut e = e.clone();
                e.push(v);
                next.push(e);
            }
        }
        elems = next;
    }
    let rad = radices.clone();
    assemble(name, elems, |e| e.clone(), move |a, b| {
        a.iter()
            .zip(b.iter())
            .zip(rad.iter())
            .map(|((&x, &y), &d)| (x + y) % d)
            .collect()
    })
}

/// Dihedral group of order 2n as pairs (rotation, flip): r^i s^f with
/// (i,f)(j,g) = (i + (-1)^f j mod n, f xor g). Faithful for every n >= 1.
fn dihedral_group(name: String, n: u64) -> Result<FiniteGroup> {
    let n = n as u16;
    let mut elems = Vec::with_capacity(2 * n as usize);
    for i in 0..n {
        for f in 0..2u16 {
            elems.push((i, f));
        }
    }
    assemble(
        name,
        elems,
        |&(i, f)| vec![i, f],
        move |&(i, f), &(j, g)| {
            let j = if f == 0 { j } else { (n - j) % n };
            ((i + j) % n, f ^ g)
        },
    )
}

/// Quaternion group of order 8: elements (axis, sign) over axes 1,i,j,k in
/// the fixed order [1, -1, i, -i, j, -j, k, -k].
fn quaternion_group(name: String) -> Result<FiniteGroup> {
    // axis_mul[a][b] = (axis of a*b, extra sign of a*b)
    const AXIS_MUL: [[(u16, u16); 4]; 4] = [
        [(0, 0), (1, 0), (2, 0), (3, 0)],
        [(1, 0), (0, 1), (3, 0), (2, 1)],
        [(2, 0), (3, 1), (0, 1), (1, 0)],
        [(3, 0), (2, 0), (1, 1), (0, 1)],
    ];
    let elems: Vec<(u16, u16)> = (0..4).flat_map(|a| (0..2).map(move |s| (a, s))).collect();
    assemble(
        name,
        elems,
        |&(a, s)| vec![a * 2 + s],
        |&(a, s), &(b, t)| {
            let (axis, extra) = AXIS_MUL[a as usize][b as usize];
            (axis, s ^ t ^ extra)
        },
    )
}

fn permutation_group(name: String, perms: Vec<Vec<u16>>) -> Result<FiniteGroup> {
    assemble(name, perms, |p| p.clone(), |a, b| compose(a, b))
}

/// Direct product on pairs of factor indices, keyed [i, j].
fn product_group(name: String, ga: &FiniteGroup, gb: &FiniteGroup) -> Result<FiniteGroup> {
    let mut elems = Vec::with_capacity(ga.order() * gb.order());
    for i in 0..ga.order() as u16 {
        for j in 0..gb.order() as u16 {
            elems.push((i, j));
        }
    }
    assemble(
        name,
        elems,
        |&(i, j)| vec![i, j],
        |&(i, j), &(k, l)| (ga.mul(i, k), gb.mul(j, l)),
    )
}

/// (a . b)(x) = a(b(x)); the right factor acts first.
fn compose(a: &[u16], b: &[u16]) -> Vec<u16> {
    b.iter().map(|&x| a[x as usize]).collect()
}

fn all_permutations(n: u16) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    let mut cur: Vec<u16> = (0..n).collect();
    let mut used = vec![false; n as usize];
    fn rec(n: u16, depth: usize, cur: &mut Vec<u16>, used: &mut Vec<bool>, out: &mut Vec<Vec<u16>>) {
        if depth == n as usize {
            out.push(cur[..n as usize].to_vec());
            return;
        }
        for v in 0..n {
            if !used[v as usize] {
                used[v as usize] = true;
                cur[depth] = v;
                rec(n, depth + 1, cur, used, out);
                used[v as usize] = false;
            }
        }
    }
    rec(n, 0, &mut cur, &mut used, &mut out);
    out
}

/// True for even permutations.
fn perm_parity(p: &[u16]) -> bool {
    let mut seen = vec![false; p.len()];
    let mut transpositions = 0;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x] as usize;
            len += 1;
        }
        transpositions += len - 1;
    }
    transpositions % 2 == 0
}

fn cycle_to_perm(points: u16, cycle: &[u16]) -> Vec<u16> {
    let mut p: Vec<u16> = (0..points).collect();
    for w in 0..cycle.len() {
        let from = cycle[w];
        let to = cycle[(w + 1) % cycle.len()];
        p[from as usize] = to;
    }
    p
}

fn perm_closure(points: u16, gens: &[Vec<u16>], cap: u64) -> Result<Vec<Vec<u16>>> {
    let identity: Vec<u16> = (0..points).collect();
    let mut seen = std::collections::BTreeSet::new();
    seen.insert(identity.clone());
    let mut list = vec![identity];
    for g in gens {
        if seen.insert(g.clone()) {
            list.push(g.clone());
        }
    }
    let mut i = 0;
    while i < list.len() {
        let mut j = 0;
        while j < list.len() {
            for prod in [compose(&list[i], &list[j]), compose(&list[j], &list[i])] {
                if seen.insert(prod.clone()) {
                    if list.len() as u64 + 1 > cap {
                        return Err(Error::OrderCap {
                            order: list.len() as u64 + 1,
                            cap,
                        });
                    }
                    list.push(prod);
                }
            }
            j += 1;
        }
        i += 1;
    }
    Ok(list)
}
