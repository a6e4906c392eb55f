//! Maps between Burnside rings: induction, restriction, the external
//! product map, and the alpha map from the cyclic group of order |G|.

use std::sync::Arc;

use crate::element::{element_from_ghost, BurnsideElement, GhostVector};
use crate::error::{Error, Result};
use crate::group::{
    double_coset_reps, intersect_members, realize_subgroup, Subgroup,
};
use crate::lattice::SubgroupLattice;

/// A subgroup H of G realized as a standalone group with its own lattice,
/// plus the translation tables between the two element and class indexings.
pub struct SubgroupEmbedding {
    ambient: Arc<SubgroupLattice>,
    sub: Arc<SubgroupLattice>,
    /// sub element index -> ambient element index (injective homomorphism).
    inclusion: Vec<u16>,
    /// sub class -> ambient class containing the image.
    class_transfer: Vec<usize>,
}

impl SubgroupEmbedding {
    /// Embed the representative subgroup of an ambient class.
    pub fn for_class(ambient: &Arc<SubgroupLattice>, class: usize) -> Result<Self> {
        let rep = ambient.class(class)?.rep.clone();
        Self::for_subgroup(ambient, &rep)
    }

    pub fn for_subgroup(ambient: &Arc<SubgroupLattice>, s: &Subgroup) -> Result<Self> {
        let (group, inclusion) = realize_subgroup(ambient.group(), s)?;
        let sub = SubgroupLattice::build(group)?;
        let mut class_transfer = Vec::with_capacity(sub.class_count());
        for c in sub.classes() {
            let ambient_members: Vec<u16> = {
                let mut v: Vec<u16> = c
                    .rep
                    .members()
                    .iter()
                    .map(|&i| inclusion[i as usize])
                    .collect();
                v.sort_unstable();
                v
            };
            let target = ambient
                .class_of_members(&ambient_members)
                .ok_or_else(|| {
                    Error::EmbeddingMismatch("image subgroup not in ambient lattice".into())
                })?;
            class_transfer.push(target);
        }
        Ok(SubgroupEmbedding {
            ambient: Arc::clone(ambient),
            sub,
            inclusion,
            class_transfer,
        })
    }

    pub fn ambient(&self) -> &Arc<SubgroupLattice> {
        &self.ambient
    }

    pub fn sub(&self) -> &Arc<SubgroupLattice> {
        &self.sub
    }

    pub fn inclusion(&self) -> &[u16] {
        &self.inclusion
    }

    pub fn class_transfer(&self) -> &[usize] {
        &self.class_transfer
    }

    /// Members of the embedded subgroup inside the ambient group.
    fn ambient_members(&self) -> &[u16] {
        &self.inclusion
    }

    fn sub_index_of_ambient(&self, ambient: u16) -> Option<u16> {
        self.inclusion.binary_search(&ambient).ok().map(|i| i as u16)
    }
}

/// Induction A(H) -> A(G): [H/K] maps to [G/K], extended additively. For
/// finite groups the finite-Weyl-group condition always holds.
pub fn induction(e: &SubgroupEmbedding, x: &BurnsideElement) -> Result<BurnsideElement> {
    if !x.lattice().same_as(e.sub()) {
        return Err(Error::EmbeddingMismatch(
            "element is not over the embedded subgroup".into(),
        ));
    }
    let coeffs = x
        .coeffs()
        .iter()
        .map(|(&c, &v)| (e.class_transfer[c], v));
    BurnsideElement::from_coeffs(e.ambient(), coeffs)
}

/// Restriction A(G) -> A(H) via double cosets:
/// [G/L] maps to the sum over H\G/L of [H/(H cap gLg^{-1})].
pub fn restriction(e: &SubgroupEmbedding, x: &BurnsideElement) -> Result<BurnsideElement> {
    if !x.lattice().same_as(e.ambient()) {
        return Err(Error::EmbeddingMismatch(
            "element is not over the ambient group".into(),
        ));
    }
    let g = e.ambient().group();
    let h_sub = Subgroup::from_members(g, e.ambient_members().to_vec())?;
    let mut acc = BurnsideElement::zero(e.sub());
    for (&l, &coeff) in x.coeffs() {
        let ls = &e.ambient().class(l)?.rep;
        for rep in double_coset_reps(g, &h_sub, ls)? {
            let conj: Vec<u16> = {
                let mut v: Vec<u16> = ls.members().iter().map(|&m| g.conjugate(rep, m)).collect();
                v.sort_unstable();
                v
            };
            let inter = intersect_members(e.ambient_members(), &conj);
            let local: Vec<u16> = inter
                .iter()
                .map(|&a| {
                    e.sub_index_of_ambient(a)
                        .expect("intersection stays inside the subgroup")
                })
                .collect();
            let class = e
                .sub()
                .class_of_members(&local)
                .ok_or_else(|| Error::Internal("intersection not in sub lattice".into()))?;
            acc = &acc + &BurnsideElement::from_coeffs(e.sub(), [(class, coeff)])?;
        }
    }
    Ok(acc)
}

/// Restriction along a normal subgroup H of G by the closed formula: the
/// H-orbit count of G/L is |G| |H cap L| / (|H| |L|), and the stabilizers
/// are exactly the G-conjugates of H cap L (all of which lie in H since H is
/// normal). Conjugation by G permutes the H-classes of those stabilizers
/// transitively and preserves orbit counts, so the total is distributed
/// evenly: [G/L] maps to (N/t) . sum of [H/c] over the t H-classes c in the
/// G-class of H cap L. When the G-class meets a single H-class this is the
/// plain single-term formula.
pub fn restriction_normal(e: &SubgroupEmbedding, x: &BurnsideElement) -> Result<BurnsideElement> {
    if !x.lattice().same_as(e.ambient()) {
        return Err(Error::EmbeddingMismatch(
            "element is not over the ambient group".into(),
        ));
    }
    let g = e.ambient().group();
    let h_members = e.ambient_members();
    let h_class = e
        .ambient()
        .class_of_members(h_members)
        .ok_or_else(|| Error::Internal("embedded subgroup not classified".into()))?;
    if e.ambient().class(h_class)?.conjugates_count() != 1 {
        return Err(Error::NotSubgroup("subgroup is not normal in G".into()));
    }
    let mut acc = BurnsideElement::zero(e.sub());
    for (&l, &coeff) in x.coeffs() {
        let ls = &e.ambient().class(l)?.rep;
        let inter = intersect_members(h_members, ls.members());
        let orbit_count = (g.order() * inter.len()) as i64;
        let den = (h_members.len() * ls.order()) as i64;
        if orbit_count % den != 0 {
            return Err(Error::Internal("normal restriction orbit count not integral".into()));
        }
        let orbit_count = orbit_count / den;
        let ambient_class_of_j = e
            .ambient()
            .class_of_members(&inter)
            .ok_or_else(|| Error::Internal("intersection not classified".into()))?;
        // H-classes inside the G-class of the intersection.
        let sub_classes: Vec<usize> = e
            .class_transfer
            .iter()
            .enumerate()
            .filter_map(|(sc, &ac)| (ac == ambient_class_of_j).then_some(sc))
            .collect();
        let t = sub_classes.len() as i64;
        if t == 0 || orbit_count % t != 0 {
            return Err(Error::Internal(
                "normal restriction distribution not integral".into(),
            ));
        }
        for sc in sub_classes {
            acc = &acc
                + &BurnsideElement::from_coeffs(e.sub(), [(sc, coeff * (orbit_count / t))])?;
        }
    }
    Ok(acc)
}

/// Validate that `target` is the lattice of the direct product of the groups
/// behind `left` and `right`, with the product element indexing
/// (i, j) -> i * |G2| + j.
fn check_product_structure(
    target: &Arc<SubgroupLattice>,
    left: &Arc<SubgroupLattice>,
    right: &Arc<SubgroupLattice>,
) -> Result<()> {
    let g1 = left.group();
    let g2 = right.group();
    let gp = target.group();
    let (n1, n2) = (g1.order(), g2.order());
    if gp.order() != n1 * n2 {
        return Err(Error::EmbeddingMismatch(
            "product lattice has the wrong order".into(),
        ));
    }
    let idx = |i: u16, j: u16| -> u16 { (i as usize * n2 + j as usize) as u16 };
    for i in 0..n1 as u16 {
        for k in 0..n1 as u16 {
            for j in 0..n2 as u16 {
                for l in 0..n2 as u16 {
                    if gp.mul(idx(i, j), idx(k, l)) != idx(g1.mul(i, k), g2.mul(j, l)) {
                        return Err(Error::EmbeddingMismatch(
                            "product lattice multiplication is not componentwise".into(),
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

/// The external product map p: A(G1) (x) A(G2) -> A(G1 x G2), sending
/// [G1/H1] (x) [G2/H2] to [G1 x G2 / H1 x H2]. The target lattice must be
/// built over the product group (`product:<spec1>,<spec2>`).
pub fn product_map(
    target: &Arc<SubgroupLattice>,
    x: &BurnsideElement,
    y: &BurnsideElement,
) -> Result<BurnsideElement> {
    check_product_structure(target, x.lattice(), y.lattice())?;
    let n2 = y.lattice().group().order();
    let mut acc = BurnsideElement::zero(target);
    for (&h1, &c1) in x.coeffs() {
        for (&h2, &c2) in y.coeffs() {
            let class = product_basis_class(target, x.lattice(), y.lattice(), n2, h1, h2)?;
            acc = &acc + &BurnsideElement::from_coeffs(target, [(class, c1 * c2)])?;
        }
    }
    Ok(acc)
}

/// Target class of [G1/H1] (x) [G2/H2].
pub fn product_basis_class(
    target: &Arc<SubgroupLattice>,
    left: &Arc<SubgroupLattice>,
    right: &Arc<SubgroupLattice>,
    n2: usize,
    h1: usize,
    h2: usize,
) -> Result<usize> {
    let m1 = left.class(h1)?.rep.members();
    let m2 = right.class(h2)?.rep.members();
    let mut members: Vec<u16> = Vec::with_capacity(m1.len() * m2.len());
    for &a in m1 {
        for &b in m2 {
            members.push((a as usize * n2 + b as usize) as u16);
        }
    }
    members.sort_unstable();
    target
        .class_of_members(&members)
        .ok_or_else(|| Error::Internal("product subgroup not in product lattice".into()))
}

/// The alpha map A(Z/|G|) -> A(G): the unique map with
/// phi_H(alpha(x)) = phi_{Z/|H|}(x); realized by transporting the ghost
/// vector and inverting marks. A non-integral result would contradict the
/// defining property, so it is reported as a hard failure.
pub fn alpha_map(
    target: &Arc<SubgroupLattice>,
    cyclic: &Arc<SubgroupLattice>,
    x: &BurnsideElement,
) -> Result<BurnsideElement> {
    if !x.lattice().same_as(cyclic) {
        return Err(Error::EmbeddingMismatch(
            "element is not over the cyclic lattice".into(),
        ));
    }
    let n = target.group().order();
    if cyclic.group().order() != n {
        return Err(Error::EmbeddingMismatch(format!(
            "cyclic lattice must have order {n}"
        )));
    }
    let cg = cyclic.group();
    if !(0..cg.order() as u16).any(|e| cg.element_order(e) == n) {
        return Err(Error::EmbeddingMismatch("source lattice is not cyclic".into()));
    }
    let marks = x.marks();
    let mut values = Vec::with_capacity(target.class_count());
    for record in target.classes() {
        let order = record.order();
        // The unique subgroup of that order in the cyclic lattice.
        let c = (0..cyclic.class_count())
            .find(|&i| cyclic.classes()[i].order() == order)
            .ok_or_else(|| {
                Error::Internal(format!("cyclic group missing a subgroup of order {order}"))
            })?;
        values.push(marks.value(c));
    }
    let ghost = GhostVector::new(target, values)?;
    if !crate::congruence::in_image(target, &ghost)? {
        return Err(Error::NonIntegral(
            "alpha image fails the congruence relations".into(),
        ));
    }
    element_from_ghost(&ghost)
}
