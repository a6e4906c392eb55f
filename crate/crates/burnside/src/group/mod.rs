//! Concrete finite groups, their subgroups, and the counting primitives
//! (normalizers, double cosets, fixed points) consumed by every other module.

pub mod construct;
pub mod spec;

pub use spec::{parse_group, parse_group_with_cap, GroupSpec, DEFAULT_ORDER_CAP};

use crate::error::{Error, Result};
use crate::util::{is_prime, SplitMix};

/// A finite group realized on an indexed element set with a total
/// multiplication table. Immutable after construction.
#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    keys: Vec<Vec<u16>>,
    table: Vec<u16>,
    inverse: Vec<u16>,
    identity: u16,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.keys == other.keys && self.table == other.table
    }
}
impl Eq for FiniteGroup {}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order())
    }
}

impl FiniteGroup {
    /// Build from a sorted key list and a multiplication table, validating
    /// the group axioms (associativity exhaustively up to order 64, by
    /// deterministic sampling above).
    pub fn from_table(name: String, keys: Vec<Vec<u16>>, table: Vec<u16>) -> Result<Self> {
        let n = keys.len();
        if n == 0 || table.len() != n * n {
            return Err(Error::Internal("malformed multiplication table".into()));
        }
        let mut identity = None;
        'rows: for e in 0..n {
            for x in 0..n {
                if table[e * n + x] != x as u16 || table[x * n + e] != x as u16 {
                    continue 'rows;
                }
            }
            identity = Some(e as u16);
            break;
        }
        let Some(identity) = identity else {
            return Err(Error::Internal(format!("{name}: no identity element")));
        };
        let mut inverse = vec![u16::MAX; n];
        for a in 0..n {
            for b in 0..n {
                if table[a * n + b] == identity && table[b * n + a] == identity {
                    inverse[a] = b as u16;
                    break;
                }
            }
            if inverse[a] == u16::MAX {
                return Err(Error::Internal(format!("{name}: element without inverse")));
            }
        }
        let g = FiniteGroup {
            name,
            keys,
            table,
            inverse,
            identity,
        };
        g.check_associativity()?;
        Ok(g)
    }

    fn check_associativity(&self) -> Result<()> {
        let n = self.order();
        let check = |a: u16, b: u16, c: u16| -> bool {
            self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
        };
        if n <= 64 {
            for a in 0..n as u16 {
                for b in 0..n as u16 {
                    for c in 0..n as u16 {
                        if !check(a, b, c) {
                            return Err(Error::Internal(format!(
                                "{}: multiplication is not associative",
                                self.name
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = SplitMix(0x6275726e73696465);
            for _ in 0..4096 {
                let a = rng.below(n as u64) as u16;
                let b = rng.below(n as u64) as u16;
                let c = rng.below(n as u64) as u16;
                if !check(a, b, c) {
                    return Err(Error::Internal(format!(
                        "{}: multiplication is not associative",
                        self.name
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.keys.len()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.table[a as usize * self.order() + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u16) -> u16 {
        self.inverse[a as usize]
    }

    pub fn identity(&self) -> u16 {
        self.identity
    }

    /// g x g^{-1}
    #[inline]
    pub fn conjugate(&self, g: u16, x: u16) -> u16 {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn key(&self, i: u16) -> &[u16] {
        &self.keys[i as usize]
    }

    pub fn index_of_key(&self, key: &[u16]) -> Option<u16> {
        self.keys
            .binary_search_by(|probe| probe.as_slice().cmp(key))
            .ok()
            .map(|i| i as u16)
    }

    pub fn element_order(&self, a: u16) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order() as u16;
        for a in 0..n {
            for b in (a + 1)..n {
                if self.mul(a, b) != self.mul(b, a) {
                    return false;
                }
            }
        }
        true
    }

    /// Canonical byte serialization of the multiplication structure, suitable
    /// for content addressing. Two groups share bytes iff they have identical
    /// canonical element order and multiplication table.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let n = self.order() as u64;
        let mut out = Vec::with_capacity(8 + self.table.len() * 2);
        out.extend_from_slice(&n.to_le_bytes());
        for &v in &self.table {
            out.extend_from_slice(&v.to_le_bytes());
        }
        out
    }
}

/// A subgroup of a concrete group, stored as a sorted member list plus a
/// generating set. The parent group is passed explicitly to operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<u16>,
    generators: Vec<u16>,
}

impl Subgroup {
    pub fn trivial(g: &FiniteGroup) -> Subgroup {
        Subgroup {
            members: vec![g.identity()],
            generators: vec![],
        }
    }

    pub fn whole(g: &FiniteGroup) -> Subgroup {
        let members: Vec<u16> = (0..g.order() as u16).collect();
        let generators = greedy_generators(g, &members);
        Subgroup {
            members,
            generators,
        }
    }

    pub fn generated(g: &FiniteGroup, gens: &[u16]) -> Result<Subgroup> {
        for &x in gens {
            if x as usize >= g.order() {
                return Err(Error::NotSubgroup(format!("element index {x} out of range")));
            }
        }
        let members = closure(g, gens);
        let mut generators = gens.to_vec();
        generators.sort_unstable();
        generators.dedup();
        Ok(Subgroup {
            members,
            generators,
        })
    }

    /// Wrap an already-closed member set, deriving a small generating set.
    pub fn from_members(g: &FiniteGroup, members: Vec<u16>) -> Result<Subgroup> {
        let s = Subgroup {
            generators: greedy_generators(g, &members),
            members,
        };
        s.validate(g)?;
        Ok(s)
    }

    pub fn members(&self) -> &[u16] {
        &self.members
    }

    pub fn generators(&self) -> &[u16] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: u16) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        members_subset(&self.members, &other.members)
    }

    /// Check closure, identity, Lagrange divisibility, and that the stored
    /// generators regenerate the member set.
    pub fn validate(&self, g: &FiniteGroup) -> Result<()> {
        let n = g.order();
        if self.members.is_empty() || self.members.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::NotSubgroup("member list not sorted".into()));
        }
        if self.members.iter().any(|&m| m as usize >= n) {
            return Err(Error::NotSubgroup("member index out of range".into()));
        }
        if !self.contains(g.identity()) {
            return Err(Error::NotSubgroup("missing identity".into()));
        }
        let inset = member_bitset(n, &self.members);
        for &a in &self.members {
            if !inset[g.inv(a) as usize] {
                return Err(Error::NotSubgroup("not closed under inverse".into()));
            }
            for &b in &self.members {
                if !inset[g.mul(a, b) as usize] {
                    return Err(Error::NotSubgroup("not closed under multiplication".into()));
                }
            }
        }
        if n % self.members.len() != 0 {
            return Err(Error::NotSubgroup("order does not divide group order".into()));
        }
        if closure(g, &self.generators) != self.members {
            return Err(Error::NotSubgroup(
                "generators do not generate the member set".into(),
            ));
        }
        Ok(())
    }
}

fn member_bitset(n: usize, members: &[u16]) -> Vec<bool> {
    let mut set = vec![false; n];
    for &m in members {
        set[m as usize] = true;
    }
    set
}

fn members_subset(a: &[u16], b: &[u16]) -> bool {
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

/// Closed subgroup generated by `seeds`, as a sorted member list.
pub fn closure(g: &FiniteGroup, seeds: &[u16]) -> Vec<u16> {
    let n = g.order();
    let mut inset = vec![false; n];
    let mut list: Vec<u16> = Vec::with_capacity(seeds.len() + 1);
    inset[g.identity() as usize] = true;
    list.push(g.identity());
    for &s in seeds {
        if !inset[s as usize] {
            inset[s as usize] = true;
            list.push(s);
        }
    }
    let mut i = 0;
    while i < list.len() {
        let mut j = 0;
        while j < list.len() {
            for prod in [g.mul(list[i], list[j]), g.mul(list[j], list[i])] {
                if !inset[prod as usize] {
                    inset[prod as usize] = true;
                    list.push(prod);
                }
            }
            j += 1;
        }
        i += 1;
    }
    list.sort_unstable();
    list
}

/// Smallest-first greedy generating set for a closed member list.
fn greedy_generators(g: &FiniteGroup, members: &[u16]) -> Vec<u16> {
    let mut gens: Vec<u16> = Vec::new();
    let mut cur = closure(g, &gens);
    while cur.len() < members.len() {
        let next = members
            .iter()
            .copied()
            .find(|m| cur.binary_search(m).is_err())
            .expect("member set larger than its closure");
        gens.push(next);
        cur = closure(g, &gens);
    }
    gens
}

fn conjugate_members(g: &FiniteGroup, members: &[u16], by: u16) -> Vec<u16> {
    let mut out: Vec<u16> = members.iter().map(|&m| g.conjugate(by, m)).collect();
    out.sort_unstable();
    out
}

/// Every subgroup of `g`, as sorted member lists in lexicographic order.
///
/// Layered cyclic-extension enumeration: seed with all cyclic subgroups,
/// then close `<A u {x}>` for known subgroups A and cyclic generators x
/// until no new subgroup appears. Since `<A u {x}>` depends only on the
/// cyclic subgroup `<x>`, one representative generator per cyclic subgroup
/// suffices.
pub fn all_subgroups(g: &FiniteGroup) -> Vec<Vec<u16>> {
    let n = g.order() as u16;
    let mut known = std::collections::BTreeSet::new();
    let mut queue: Vec<Vec<u16>> = Vec::new();
    // One representative generator per cyclic subgroup, first-seen order.
    let mut cyclic_reps: Vec<u16> = Vec::new();
    for x in 0..n {
        let mut cyc = Vec::new();
        let mut power = x;
        loop {
            cyc.push(power);
            power = g.mul(power, x);
            if power == x {
                break;
            }
        }
        cyc.sort_unstable();
        if known.insert(cyc.clone()) {
            cyclic_reps.push(x);
            queue.push(cyc);
        }
    }
    let mut qi = 0;
    while qi < queue.len() {
        let base = queue[qi].clone();
        qi += 1;
        if base.len() == n as usize {
            continue;
        }
        for &x in &cyclic_reps {
            if base.binary_search(&x).is_ok() {
                continue;
            }
            let ext = closure_extend(g, &base, x);
            if known.insert(ext.clone()) {
                queue.push(ext);
            }
        }
    }
    known.into_iter().collect()
}

/// Closure of `closed u {extra}` where `closed` is already a subgroup:
/// only pairs involving new elements need multiplying.
fn closure_extend(g: &FiniteGroup, closed: &[u16], extra: u16) -> Vec<u16> {
    let n = g.order();
    let mut inset = vec![false; n];
    let mut list: Vec<u16> = closed.to_vec();
    for &m in closed {
        inset[m as usize] = true;
    }
    let frontier_start = list.len();
    if !inset[extra as usize] {
        inset[extra as usize] = true;
        list.push(extra);
    }
    let mut i = frontier_start;
    while i < list.len() {
        let mut j = 0;
        while j < list.len() {
            for prod in [g.mul(list[i], list[j]), g.mul(list[j], list[i])] {
                if !inset[prod as usize] {
                    inset[prod as usize] = true;
                    list.push(prod);
                }
            }
            j += 1;
        }
        i += 1;
    }
    list.sort_unstable();
    list
}

/// One conjugacy class of subgroups: canonical representative, all
/// conjugates, normalizer of the representative, and the Weyl order
/// |N_G(H)| / |H|.
#[derive(Debug, Clone)]
pub struct SubgroupClass {
    pub representative: Subgroup,
    pub conjugates: Vec<Vec<u16>>,
    pub normalizer: Subgroup,
    pub weyl_order: i64,
}

impl SubgroupClass {
    pub fn conjugates_count(&self) -> usize {
        self.conjugates.len()
    }

    pub fn order(&self) -> usize {
        self.representative.order()
    }
}

/// Conjugacy classes of subgroups, ordered by ascending subgroup order and
/// then by the representative's canonical member-set key. This order is a
/// linear extension of subconjugacy.
pub fn all_subgroup_classes(g: &FiniteGroup) -> Vec<SubgroupClass> {
    let subs = all_subgroups(g);
    let mut assigned = std::collections::BTreeSet::new();
    let mut classes: Vec<SubgroupClass> = Vec::new();
    for members in &subs {
        if assigned.contains(members) {
            continue;
        }
        let mut conjugates = std::collections::BTreeSet::new();
        for by in 0..g.order() as u16 {
            conjugates.insert(conjugate_members(g, members, by));
        }
        let conjugates: Vec<Vec<u16>> = conjugates.into_iter().collect();
        for c in &conjugates {
            assigned.insert(c.clone());
        }
        // `members` is the lexicographically first unassigned subgroup, so it
        // is the canonical representative of its class.
        let normalizer_members: Vec<u16> = (0..g.order() as u16)
            .filter(|&by| conjugate_members(g, members, by) == *members)
            .collect();
        let weyl_order = (normalizer_members.len() / members.len()) as i64;
        let representative = Subgroup {
            generators: greedy_generators(g, members),
            members: members.clone(),
        };
        let normalizer = Subgroup {
            generators: greedy_generators(g, &normalizer_members),
            members: normalizer_members,
        };
        classes.push(SubgroupClass {
            representative,
            conjugates,
            normalizer,
            weyl_order,
        });
    }
    classes.sort_by(|a, b| {
        (a.order(), a.representative.members())
            .cmp(&(b.order(), b.representative.members()))
    });
    classes
}

/// One representative per double coset HgK, in ascending first-seen element
/// order. The double cosets partition G.
pub fn double_coset_reps(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Result<Vec<u16>> {
    h.validate(g)?;
    k.validate(g)?;
    let n = g.order();
    let mut visited = vec![false; n];
    let mut reps = Vec::new();
    for x in 0..n as u16 {
        if visited[x as usize] {
            continue;
        }
        reps.push(x);
        for &a in h.members() {
            let ax = g.mul(a, x);
            for &b in k.members() {
                visited[g.mul(ax, b) as usize] = true;
            }
        }
    }
    Ok(reps)
}

/// |(G/K)^H|: the number of cosets gK fixed by every element of H.
pub fn fixed_point_count(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Result<i64> {
    h.validate(g)?;
    k.validate(g)?;
    Ok(fixed_point_count_unchecked(g, h.generators(), k))
}

/// Same as `fixed_point_count`, trusting the inputs. `h_gens` may be any
/// generating set of H: the stabilizer of a coset is a subgroup, so fixing
/// generators fixes all of H.
pub(crate) fn fixed_point_count_unchecked(
    g: &FiniteGroup,
    h_gens: &[u16],
    k: &Subgroup,
) -> i64 {
    let n = g.order();
    let kset = member_bitset(n, k.members());
    let mut in_seen_coset = vec![false; n];
    let mut count = 0i64;
    for x in 0..n as u16 {
        if in_seen_coset[x as usize] {
            continue;
        }
        for &m in k.members() {
            in_seen_coset[g.mul(x, m) as usize] = true;
        }
        let xinv = g.inv(x);
        let fixed = h_gens
            .iter()
            .all(|&a| kset[g.mul(g.mul(xinv, a), x) as usize]);
        if fixed {
            count += 1;
        }
    }
    count
}

/// H'_p: the smallest normal subgroup of H whose quotient is a finite
/// p-group, computed as the closure of all elements of H of order coprime
/// to p.
pub fn p_residual(g: &FiniteGroup, h: &Subgroup, p: u64) -> Result<Subgroup> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    h.validate(g)?;
    let seeds: Vec<u16> = h
        .members()
        .iter()
        .copied()
        .filter(|&m| g.element_order(m) as u64 % p != 0)
        .collect();
    let members = closure(g, &seeds);
    Ok(Subgroup {
        generators: greedy_generators(g, &members),
        members,
    })
}

/// Commutator subgroup of `s` inside `g`: closure of all commutators
/// a^{-1} b^{-1} a b over member pairs.
pub fn derived_subgroup(g: &FiniteGroup, s: &Subgroup) -> Subgroup {
    let mut seeds = Vec::new();
    for &a in s.members() {
        for &b in s.members() {
            let c = g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b));
            seeds.push(c);
        }
    }
    seeds.sort_unstable();
    seeds.dedup();
    let members = closure(g, &seeds);
    Subgroup {
        generators: greedy_generators(g, &members),
        members,
    }
}

/// True iff the derived series reaches the trivial subgroup.
pub fn is_solvable(g: &FiniteGroup) -> bool {
    let mut cur = Subgroup::whole(g);
    loop {
        let next = derived_subgroup(g, &cur);
        if next.order() == cur.order() {
            return cur.order() == 1;
        }
        cur = next;
    }
}

/// Realize a subgroup as a standalone group on its own index set. Returns
/// the group together with the inclusion map (local index -> ambient index).
/// Element keys are the ambient indices, so local indexing follows the
/// ambient order.
pub fn realize_subgroup(g: &FiniteGroup, s: &Subgroup) -> Result<(FiniteGroup, Vec<u16>)> {
    s.validate(g)?;
    let members = s.members().to_vec();
    let local_of = |ambient: u16| -> u16 {
        members
            .binary_search(&ambient)
            .expect("product of members stays in a closed subgroup") as u16
    };
    let m = members.len();
    let keys: Vec<Vec<u16>> = members.iter().map(|&a| vec![a]).collect();
    let mut table = vec![0u16; m * m];
    for i in 0..m {
        for j in 0..m {
            table[i * m + j] = local_of(g.mul(members[i], members[j]));
        }
    }
    let group = FiniteGroup::from_table(
        format!("{}/sub[o{}]", g.name(), m),
        keys,
        table,
    )?;
    Ok((group, members))
}

/// Realize the quotient big/normal on its coset space. Returns the quotient
/// group together with the member list of each coset (indexed like the
/// quotient's elements). Cosets are keyed by their smallest member.
pub fn realize_quotient(
    g: &FiniteGroup,
    big: &Subgroup,
    normal: &Subgroup,
) -> Result<(FiniteGroup, Vec<Vec<u16>>)> {
    big.validate(g)?;
    normal.validate(g)?;
    if !normal.is_subset_of(big) {
        return Err(Error::NotSubgroup("kernel not inside the subgroup".into()));
    }
    for &b in big.generators() {
        if conjugate_members(g, normal.members(), b) != normal.members() {
            return Err(Error::NotSubgroup("kernel is not normal".into()));
        }
    }
    let n = g.order();
    let mut coset_of = vec![u16::MAX; n];
    let mut cosets: Vec<Vec<u16>> = Vec::new();
    for &b in big.members() {
        if coset_of[b as usize] != u16::MAX {
            continue;
        }
        let idx = cosets.len() as u16;
        let mut coset: Vec<u16> = normal.members().iter().map(|&m| g.mul(b, m)).collect();
        coset.sort_unstable();
        for &c in &coset {
            coset_of[c as usize] = idx;
        }
        cosets.push(coset);
    }
    let q = cosets.len();
    // Sort cosets by smallest member for canonical keys.
    let mut order: Vec<usize> = (0..q).collect();
    order.sort_by_key(|&i| cosets[i][0]);
    let cosets: Vec<Vec<u16>> = order.iter().map(|&i| cosets[i].clone()).collect();
    let mut coset_of = vec![u16::MAX; n];
    for (idx, coset) in cosets.iter().enumerate() {
        for &c in coset {
            coset_of[c as usize] = idx as u16;
        }
    }
    let keys: Vec<Vec<u16>> = cosets.iter().map(|c| vec![c[0]]).collect();
    let mut table = vec![0u16; q * q];
    for i in 0..q {
        for j in 0..q {
            table[i * q + j] = coset_of[g.mul(cosets[i][0], cosets[j][0]) as usize];
        }
    }
    let group = FiniteGroup::from_table(
        format!("{}/quotient[o{}]", g.name(), q),
        keys,
        table,
    )?;
    Ok((group, cosets))
}

/// Left cosets of K: returns (reps in first-seen ascending order,
/// coset index of every element).
pub fn left_cosets(g: &FiniteGroup, k: &Subgroup) -> (Vec<u16>, Vec<u16>) {
    let n = g.order();
    let mut coset_of = vec![u16::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n as u16 {
        if coset_of[x as usize] != u16::MAX {
            continue;
        }
        let idx = reps.len() as u16;
        reps.push(x);
        for &m in k.members() {
            coset_of[g.mul(x, m) as usize] = idx;
        }
    }
    (reps, coset_of)
}

/// Sorted intersection of two sorted member lists.
pub fn intersect_members(a: &[u16], b: &[u16]) -> Vec<u16> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

