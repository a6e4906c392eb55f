//! The ordered subgroup lattice and the table of marks.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::congruence::CongruenceRelation;
use crate::error::{Error, Result};
use crate::group::{
    all_subgroup_classes, fixed_point_count_unchecked, FiniteGroup, Subgroup, SubgroupClass,
};

/// One conjugacy class of subgroups inside a built lattice.
#[derive(Debug, Clone)]
pub struct ClassRecord {
    pub rep: Subgroup,
    pub conjugates: Vec<Vec<u16>>,
    pub normalizer: Subgroup,
    pub weyl_order: i64,
    pub label: String,
}

impl ClassRecord {
    pub fn order(&self) -> usize {
        self.rep.order()
    }

    pub fn conjugates_count(&self) -> usize {
        self.conjugates.len()
    }
}

/// Conjugacy classes of subgroups in a linear order respecting subconjugacy
/// (ascending subgroup order, ties broken by the representative's canonical
/// member-set key), together with the subconjugacy relation and the table of
/// marks. Immutable after construction and safe to share across threads.
pub struct SubgroupLattice {
    group: FiniteGroup,
    classes: Vec<ClassRecord>,
    subconj: Vec<Vec<bool>>,
    marks: Vec<Vec<i64>>,
    class_by_members: HashMap<Vec<u16>, usize>,
    congruences: OnceLock<Vec<CongruenceRelation>>,
    perfection_memo: Mutex<HashMap<(usize, u64), (usize, usize)>>,
}

impl std::fmt::Debug for SubgroupLattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "SubgroupLattice({}, {} classes)",
            self.group.name(),
            self.classes.len()
        )
    }
}

impl SubgroupLattice {
    pub fn build(group: FiniteGroup) -> Result<Arc<SubgroupLattice>> {
        let raw = all_subgroup_classes(&group);
        Self::assemble(group, raw, None)
    }

    fn assemble(
        group: FiniteGroup,
        raw: Vec<SubgroupClass>,
        persisted_marks: Option<Vec<Vec<i64>>>,
    ) -> Result<Arc<SubgroupLattice>> {
        let count = raw.len();
        let order = group.order();
        let mut classes = Vec::with_capacity(count);
        let mut class_by_members = HashMap::new();
        for (i, c) in raw.into_iter().enumerate() {
            for m in &c.conjugates {
                class_by_members.insert(m.clone(), i);
            }
            let label = format!("c{}_o{}", i, c.representative.order());
            classes.push(ClassRecord {
                rep: c.representative,
                conjugates: c.conjugates,
                normalizer: c.normalizer,
                weyl_order: c.weyl_order,
                label,
            });
        }
        // subconj[i][j]: some conjugate of rep(i) lies inside rep(j).
        let mut subconj = vec![vec![false; count]; count];
        for i in 0..count {
            for (j, target) in classes.iter().enumerate() {
                subconj[i][j] = classes[i]
                    .conjugates
                    .iter()
                    .any(|c| members_subset(c, target.rep.members()));
            }
        }
        // marks[h][k] = |(G/H_h)^{K_k}|. Persisted marks (from the cache)
        // are accepted after the invariant validation below instead of
        // being recomputed; that validation is what makes a corrupt entry
        // detectable.
        let marks = match persisted_marks {
            Some(m) => {
                if m.len() != count || m.iter().any(|r| r.len() != count) {
                    return Err(Error::Internal("mark matrix shape mismatch".into()));
                }
                m
            }
            None => {
                let mut marks = vec![vec![0i64; count]; count];
                for (h, hcls) in classes.iter().enumerate() {
                    for (k, kcls) in classes.iter().enumerate() {
                        marks[h][k] = fixed_point_count_unchecked(
                            &group,
                            kcls.rep.generators(),
                            &hcls.rep,
                        );
                    }
                }
                marks
            }
        };
        let lattice = SubgroupLattice {
            group,
            classes,
            subconj,
            marks,
            class_by_members,
            congruences: OnceLock::new(),
            perfection_memo: Mutex::new(HashMap::new()),
        };
        lattice.validate(order)?;
        Ok(Arc::new(lattice))
    }

    /// Reassemble a lattice from persisted parts, re-deriving the
    /// subconjugacy relation and validating every mark-matrix invariant
    /// against it (triangularity, Weyl diagonals, divisibility, class
    /// order). Intended for persistence layers; any inconsistency is an
    /// error, so callers treat a failure as cache corruption.
    pub fn from_parts(
        group: FiniteGroup,
        classes: Vec<(Subgroup, Vec<Vec<u16>>, Subgroup, i64)>,
        marks: Vec<Vec<i64>>,
    ) -> Result<Arc<SubgroupLattice>> {
        let raw: Vec<SubgroupClass> = classes
            .into_iter()
            .map(|(representative, conjugates, normalizer, weyl_order)| SubgroupClass {
                representative,
                conjugates,
                normalizer,
                weyl_order,
            })
            .collect();
        Self::assemble(group, raw, Some(marks))
    }

    fn validate(&self, group_order: usize) -> Result<()> {
        let count = self.classes.len();
        let fail = |msg: String| Err(Error::Internal(msg));
        if count == 0 {
            return fail("empty lattice".into());
        }
        for (i, c) in self.classes.iter().enumerate() {
            c.rep.validate(&self.group)?;
            c.normalizer.validate(&self.group)?;
            if c.weyl_order * c.rep.order() as i64 != c.normalizer.order() as i64 {
                return fail(format!("class {i}: Weyl order inconsistent"));
            }
            if i > 0 {
                let prev = &self.classes[i - 1];
                if (prev.order(), prev.rep.members()) >= (c.order(), c.rep.members()) {
                    return fail("class order not canonical".into());
                }
            }
        }
        for h in 0..count {
            if self.marks[h][h] != self.classes[h].weyl_order || self.marks[h][h] == 0 {
                return fail(format!("diagonal mark of class {h} is not the Weyl order"));
            }
            for k in 0..count {
                if (self.marks[h][k] != 0) != self.subconj[k][h] {
                    return fail(format!("mark ({h},{k}) breaks triangularity"));
                }
                if self.marks[h][k] % self.classes[h].weyl_order != 0 {
                    return fail(format!("mark ({h},{k}) not divisible by the Weyl order"));
                }
                if k > h && self.marks[h][k] != 0 {
                    return fail(format!("mark ({h},{k}) above the diagonal"));
                }
            }
        }
        let total: usize = self.classes.iter().map(|c| c.conjugates_count()).sum();
        if self.classes[0].order() != 1
            || self.classes[count - 1].order() != group_order
            || total == 0
        {
            return fail("lattice endpoints malformed".into());
        }
        Ok(())
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[ClassRecord] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> Result<&ClassRecord> {
        self.classes.get(i).ok_or(Error::InvalidClass(i))
    }

    pub fn weyl_order(&self, i: usize) -> i64 {
        self.classes[i].weyl_order
    }

    /// Mark of the basis element [G/H_h] at the class K_k.
    pub fn mark(&self, h: usize, k: usize) -> i64 {
        self.marks[h][k]
    }

    pub fn mark_rows(&self) -> &[Vec<i64>] {
        &self.marks
    }

    /// Whether class `i` is subconjugate to class `j`.
    pub fn subconjugate(&self, i: usize, j: usize) -> bool {
        self.subconj[i][j]
    }

    /// Class index of the trivial subgroup (always first).
    pub fn trivial_class(&self) -> usize {
        0
    }

    /// Class index of the whole group (always last).
    pub fn full_class(&self) -> usize {
        self.classes.len() - 1
    }

    /// Class containing the subgroup with the given sorted member list.
    pub fn class_of_members(&self, members: &[u16]) -> Option<usize> {
        self.class_by_members.get(members).copied()
    }

    /// The per-class congruence relations, computed once per lattice.
    pub fn congruences(&self) -> &[CongruenceRelation] {
        self.congruences
            .get_or_init(|| crate::congruence::compute_all_congruences(self))
    }

    /// Memo table for p-perfection pairs keyed by (class, p).
    pub(crate) fn perfection_memo(
        &self,
        key: (usize, u64),
        compute: impl FnOnce() -> Result<(usize, usize)>,
    ) -> Result<(usize, usize)> {
        if let Some(&hit) = self
            .perfection_memo
            .lock()
            .expect("perfection memo poisoned")
            .get(&key)
        {
            return Ok(hit);
        }
        let value = compute()?;
        self.perfection_memo
            .lock()
            .expect("perfection memo poisoned")
            .insert(key, value);
        Ok(value)
    }

    /// Resolve a class label; `trivial` and `full` are accepted aliases.
    pub fn resolve_label(&self, s: &str) -> Option<usize> {
        match s {
            "trivial" => Some(self.trivial_class()),
            "full" => Some(self.full_class()),
            _ => self.classes.iter().position(|c| c.label == s),
        }
    }

    pub fn label(&self, i: usize) -> &str {
        &self.classes[i].label
    }

    /// Structural identity: same canonical group data implies the same
    /// deterministic lattice.
    pub fn same_as(&self, other: &SubgroupLattice) -> bool {
        std::ptr::eq(self, other) || self.group == other.group
    }
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

/// The square integer table of marks over the lattice's class order.
/// Row h lists the marks of the basis element [G/H_h].
#[derive(Debug, Clone)]
pub struct MarkMatrix {
    lattice: Arc<SubgroupLattice>,
    entries: Vec<Vec<i64>>,
}

impl MarkMatrix {
    pub fn lattice(&self) -> &Arc<SubgroupLattice> {
        &self.lattice
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn entry(&self, h: usize, k: usize) -> i64 {
        self.entries[h][k]
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }
}

/// The table of marks of a built lattice.
pub fn table_of_marks(lattice: &Arc<SubgroupLattice>) -> MarkMatrix {
    MarkMatrix {
        lattice: Arc::clone(lattice),
        entries: lattice.marks.clone(),
    }
}

/// Spec-facing constructor: build the lattice of a group.
pub fn build_lattice(group: FiniteGroup) -> Result<Arc<SubgroupLattice>> {
    SubgroupLattice::build(group)
}
