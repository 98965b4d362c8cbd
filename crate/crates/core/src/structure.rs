//! Subalgebras, ideals, centres, derived ideals and quotients.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use serde::{Serialize, Serializer};

use crate::algebra::{ElementId, FiniteMla, GroupTable, MlaTables};
use crate::error::{MlaError, Result};
use crate::morph::MlaMap;

/// Default bound on the order of algebras whose ideal lattice is enumerated.
pub const DEFAULT_IDEAL_BOUND: usize = 64;

/// A subset of the elements of some parent algebra, with lazily computed
/// closure flags.
#[derive(Clone)]
pub struct SubSet {
    mask: Vec<bool>,
    members: Vec<ElementId>,
    subgroup: OnceLock<bool>,
    subalgebra: OnceLock<bool>,
    ideal: OnceLock<bool>,
}

impl SubSet {
    pub fn new(parent_order: usize, members: impl IntoIterator<Item = ElementId>) -> Self {
        let mut mask = vec![false; parent_order];
        for x in members {
            mask[x.index()] = true;
        }
        Self::from_mask(mask)
    }

    pub fn from_mask(mask: Vec<bool>) -> Self {
        let members = mask
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| ElementId::new(i))
            .collect();
        SubSet {
            mask,
            members,
            subgroup: OnceLock::new(),
            subalgebra: OnceLock::new(),
            ideal: OnceLock::new(),
        }
    }

    pub fn trivial(parent_order: usize) -> Self {
        Self::new(parent_order, [ElementId::IDENTITY])
    }

    pub fn whole(parent_order: usize) -> Self {
        Self::from_mask(vec![true; parent_order])
    }

    fn known_ideal(self) -> Self {
        let _ = self.subgroup.set(true);
        let _ = self.subalgebra.set(true);
        let _ = self.ideal.set(true);
        self
    }

    fn known_subalgebra(self) -> Self {
        let _ = self.subgroup.set(true);
        let _ = self.subalgebra.set(true);
        self
    }

    pub fn parent_order(&self) -> usize {
        self.mask.len()
    }

    pub fn members(&self) -> &[ElementId] {
        &self.members
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    #[inline]
    pub fn contains(&self, x: ElementId) -> bool {
        self.mask[x.index()]
    }

    /// True when the subset is exactly `{1}`.
    pub fn is_trivial(&self) -> bool {
        self.members == [ElementId::IDENTITY]
    }

    pub fn is_subset_of(&self, other: &SubSet) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &SubSet) -> SubSet {
        SubSet::from_mask(
            self.mask
                .iter()
                .zip(&other.mask)
                .map(|(a, b)| *a && *b)
                .collect(),
        )
    }

    pub fn is_subgroup(&self, g: &FiniteMla) -> bool {
        *self.subgroup.get_or_init(|| {
            self.contains(ElementId::IDENTITY)
                && self
                    .members
                    .iter()
                    .all(|&x| self.members.iter().all(|&y| self.contains(g.mul(x, y))))
        })
    }

    pub fn is_subalgebra(&self, g: &FiniteMla) -> bool {
        *self.subalgebra.get_or_init(|| {
            self.is_subgroup(g)
                && self
                    .members
                    .iter()
                    .all(|&x| self.members.iter().all(|&y| self.contains(g.star(x, y))))
        })
    }

    /// Normal subalgebra with `x ⋆ h ∈ H` for all `x ∈ G`, `h ∈ H`.
    pub fn is_ideal(&self, g: &FiniteMla) -> bool {
        *self.ideal.get_or_init(|| {
            self.is_subalgebra(g)
                && g.elements().all(|x| {
                    self.members
                        .iter()
                        .all(|&h| self.contains(g.conj(x, h)) && self.contains(g.star(x, h)))
                })
        })
    }

    /// Whether `h ⋆ x ∈ H` for all `x ∈ G`, `h ∈ H` (the mirror of the
    /// absorption condition used by [`SubSet::is_ideal`]).
    pub fn absorbs_on_the_right(&self, g: &FiniteMla) -> bool {
        g.elements()
            .all(|x| self.members.iter().all(|&h| self.contains(g.star(h, x))))
    }
}

impl PartialEq for SubSet {
    fn eq(&self, other: &Self) -> bool {
        self.mask == other.mask
    }
}

impl Eq for SubSet {}

impl fmt::Debug for SubSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members.iter()).finish()
    }
}

impl fmt::Display for SubSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for SubSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.members.serialize(s)
    }
}

struct Closure<'a> {
    g: &'a FiniteMla,
    mask: Vec<bool>,
    members: Vec<ElementId>,
}

impl<'a> Closure<'a> {
    fn new(g: &'a FiniteMla) -> Self {
        let mut mask = vec![false; g.order()];
        mask[0] = true;
        Closure {
            g,
            mask,
            members: vec![ElementId::IDENTITY],
        }
    }

    fn add(&mut self, x: ElementId) {
        if !self.mask[x.index()] {
            self.mask[x.index()] = true;
            self.members.push(x);
        }
    }

    /// Runs to fixpoint. Every member is multiplied against every member
    /// processed before it; `normal` adds conjugation and `⋆` against the
    /// whole algebra.
    fn run(mut self, normal: bool) -> Vec<bool> {
        let g = self.g;
        let mut i = 0;
        while i < self.members.len() {
            let h = self.members[i];
            for j in 0..=i {
                let m = self.members[j];
                self.add(g.mul(h, m));
                self.add(g.mul(m, h));
                if !normal {
                    self.add(g.star(h, m));
                    self.add(g.star(m, h));
                }
            }
            if normal {
                for x in g.elements() {
                    self.add(g.conj(x, h));
                    self.add(g.star(x, h));
                    self.add(g.star(h, x));
                }
            }
            i += 1;
        }
        self.mask
    }
}

/// Least subalgebra containing `seed`.
pub fn closure_subalgebra(g: &FiniteMla, seed: impl IntoIterator<Item = ElementId>) -> SubSet {
    let mut c = Closure::new(g);
    for x in seed {
        c.add(x);
    }
    SubSet::from_mask(c.run(false)).known_subalgebra()
}

/// Least ideal containing `seed`: closure under products, conjugation by
/// `G` and `⋆` with arbitrary elements on either side.
pub fn closure_ideal(g: &FiniteMla, seed: impl IntoIterator<Item = ElementId>) -> SubSet {
    let mut c = Closure::new(g);
    for x in seed {
        c.add(x);
    }
    SubSet::from_mask(c.run(true)).known_ideal()
}

/// `Z(G) = {x : [x, y] = 1 for all y}`
pub fn group_center(g: &FiniteMla) -> SubSet {
    SubSet::from_mask(
        g.elements()
            .map(|x| g.elements().all(|y| g.comm(x, y).is_identity()))
            .collect(),
    )
}

/// `LZ(G) = {x : x ⋆ y = 1 for all y}`
pub fn lie_center(g: &FiniteMla) -> SubSet {
    SubSet::from_mask(
        g.elements()
            .map(|x| g.elements().all(|y| g.star(x, y).is_identity()))
            .collect(),
    )
}

/// `Z(G) ∩ LZ(G)`
pub fn joint_center(g: &FiniteMla) -> SubSet {
    group_center(g).intersection(&lie_center(g))
}

/// The ideal generated by all values `a ⋆ b`.
pub fn star_derived(g: &FiniteMla) -> SubSet {
    closure_ideal(g, all_values(g, |a, b| g.star(a, b)))
}

/// The ideal generated by all commutators `[a, b]`.
pub fn commutator_derived(g: &FiniteMla) -> SubSet {
    closure_ideal(g, all_values(g, |a, b| g.comm(a, b)))
}

/// The ideal generated by all `a ⋆ b` and all `[a, b]`.
pub fn m_derived(g: &FiniteMla) -> SubSet {
    let mut seed = all_values(g, |a, b| g.star(a, b));
    seed.extend(all_values(g, |a, b| g.comm(a, b)));
    closure_ideal(g, seed)
}

fn all_values(g: &FiniteMla, f: impl Fn(ElementId, ElementId) -> ElementId) -> BTreeSet<ElementId> {
    g.elements()
        .flat_map(|a| g.elements().map(move |b| (a, b)))
        .map(|(a, b)| f(a, b))
        .collect()
}

/// `G / I` with cosets numbered by least member (the coset of 1 is 0), and
/// the projection.
pub fn quotient(g: &FiniteMla, ideal: &SubSet) -> Result<(FiniteMla, MlaMap)> {
    if ideal.parent_order() != g.order() || !ideal.is_ideal(g) {
        return Err(MlaError::NotIdeal(ideal.to_string()));
    }
    let n = g.order();
    let mut coset = vec![u32::MAX; n];
    let mut reps = Vec::new();
    for x in g.elements() {
        if coset[x.index()] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(x);
        for &h in ideal.members() {
            coset[g.mul(x, h).index()] = id;
        }
    }
    let m = reps.len();
    let mut mul = Vec::with_capacity(m * m);
    let mut star = Vec::with_capacity(m * m);
    for &a in &reps {
        for &b in &reps {
            mul.push(coset[g.mul(a, b).index()]);
            star.push(coset[g.star(a, b).index()]);
        }
    }
    let group = GroupTable::from_flat(m, mul)?;
    let tables = MlaTables::new(group, star)?;
    let names = reps.iter().map(|&r| format!("{}I", g.label(r))).collect();
    let q = FiniteMla::from_trusted(format!("{}/{}", g.name(), ideal), tables, Some(names));
    let proj = MlaMap::new(coset.into_iter().map(ElementId).collect());
    Ok((q, proj))
}

/// The subalgebra `S` as a standalone algebra, renumbered in member order,
/// with its embedding into `G`.
pub fn restrict_to_subalgebra(g: &FiniteMla, s: &SubSet) -> Result<(FiniteMla, MlaMap)> {
    if s.parent_order() != g.order() || !s.is_subalgebra(g) {
        return Err(MlaError::NotSubalgebra(s.to_string()));
    }
    let mut local = vec![u32::MAX; g.order()];
    for (i, &x) in s.members().iter().enumerate() {
        local[x.index()] = i as u32;
    }
    let m = s.len();
    let mut mul = Vec::with_capacity(m * m);
    let mut star = Vec::with_capacity(m * m);
    for &a in s.members() {
        for &b in s.members() {
            mul.push(local[g.mul(a, b).index()]);
            star.push(local[g.star(a, b).index()]);
        }
    }
    let group = GroupTable::from_flat(m, mul)?;
    let tables = MlaTables::new(group, star)?;
    let names = s.members().iter().map(|&x| g.label(x)).collect();
    let sub = FiniteMla::from_trusted(format!("{}|{}", g.name(), s), tables, Some(names));
    Ok((sub, MlaMap::new(s.members().to_vec())))
}

fn sort_key(s: &SubSet) -> (usize, Vec<ElementId>) {
    (s.len(), s.members().to_vec())
}

/// All ideals of `G`, sorted by (size, member list).
///
/// Every ideal is the join of the principal ideals of its elements, so the
/// principal ideals are closed under pairwise joins until nothing new
/// appears.
pub fn enumerate_ideals(g: &FiniteMla) -> Result<Vec<SubSet>> {
    enumerate_ideals_bounded(g, DEFAULT_IDEAL_BOUND)
}

pub fn enumerate_ideals_bounded(g: &FiniteMla, bound: usize) -> Result<Vec<SubSet>> {
    if g.order() > bound {
        return Err(MlaError::BoundExceeded {
            what: "ideal enumeration",
            order: g.order(),
            bound,
        });
    }
    let mut found: BTreeSet<Vec<bool>> = BTreeSet::new();
    let mut all: Vec<SubSet> = Vec::new();
    let mut push = |s: SubSet, all: &mut Vec<SubSet>| {
        if found.insert(s.mask().to_vec()) {
            all.push(s);
            true
        } else {
            false
        }
    };
    for x in g.elements() {
        push(closure_ideal(g, [x]), &mut all);
    }
    let mut i = 0;
    while i < all.len() {
        for j in 0..i {
            let seed: Vec<ElementId> = all[i]
                .members()
                .iter()
                .chain(all[j].members())
                .copied()
                .collect();
            let joined = closure_ideal(g, seed);
            push(joined, &mut all);
        }
        i += 1;
    }
    all.sort_by_key(sort_key);
    Ok(all)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CenterKind {
    Group,
    Lie,
    Joint,
}

impl CenterKind {
    pub const ALL: [CenterKind; 3] = [CenterKind::Group, CenterKind::Lie, CenterKind::Joint];

    pub fn center(self, g: &FiniteMla) -> SubSet {
        match self {
            CenterKind::Group => group_center(g),
            CenterKind::Lie => lie_center(g),
            CenterKind::Joint => joint_center(g),
        }
    }

    /// The derived ideal paired with this centre in the quotient lemma.
    pub fn derived(self, g: &FiniteMla) -> SubSet {
        match self {
            CenterKind::Group => commutator_derived(g),
            CenterKind::Lie => star_derived(g),
            CenterKind::Joint => m_derived(g),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum ClauseOutcome {
    NotApplicable,
    Verified,
    /// A quotient element lying in exactly one of the two compared sets.
    Failed {
        witness: ElementId,
    },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ClauseReport {
    pub center: CenterKind,
    pub outcome: ClauseOutcome,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct QuotientCenterReport {
    pub ideal: Vec<ElementId>,
    pub clauses: Vec<ClauseReport>,
}

impl QuotientCenterReport {
    pub fn any_failed(&self) -> bool {
        self.clauses
            .iter()
            .any(|c| matches!(c.outcome, ClauseOutcome::Failed { .. }))
    }
}

/// For each centre kind whose derived ideal meets `I` trivially, checks that
/// the centre of `G/I` is the image of the centre of `G`.
pub fn check_quotient_center_lemma(g: &FiniteMla, ideal: &SubSet) -> Result<QuotientCenterReport> {
    let (q, proj) = quotient(g, ideal)?;
    let clauses = CenterKind::ALL
        .iter()
        .map(|&kind| {
            let derived = kind.derived(g);
            let outcome = if !ideal.intersection(&derived).is_trivial() {
                ClauseOutcome::NotApplicable
            } else {
                let image = SubSet::new(
                    q.order(),
                    kind.center(g).members().iter().map(|&x| proj.apply(x)),
                );
                let center_q = kind.center(&q);
                match q
                    .elements()
                    .find(|&c| image.contains(c) != center_q.contains(c))
                {
                    None => ClauseOutcome::Verified,
                    Some(witness) => ClauseOutcome::Failed { witness },
                }
            };
            ClauseReport {
                center: kind,
                outcome,
            }
        })
        .collect();
    Ok(QuotientCenterReport {
        ideal: ideal.members().to_vec(),
        clauses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn ids(v: &[u32]) -> Vec<ElementId> {
        v.iter().map(|&x| ElementId(x)).collect()
    }

    #[test]
    fn closure_edge_cases() {
        let d4 = fixtures::dihedral_trivial(4);
        assert_eq!(closure_subalgebra(&d4, []).members(), ids(&[0]));
        assert_eq!(closure_subalgebra(&d4, d4.elements()).len(), 8);
        assert_eq!(closure_ideal(&d4, []).members(), ids(&[0]));
    }

    #[test]
    fn rotation_subalgebra_of_d4() {
        let d4 = fixtures::dihedral_trivial(4);
        let r = closure_subalgebra(&d4, [ElementId(1)]);
        assert_eq!(r.members(), ids(&[0, 1, 2, 3]));
        assert!(r.is_subalgebra(&d4));
    }

    #[test]
    fn ideals_generated_in_d4() {
        let d4 = fixtures::dihedral_trivial(4);
        assert_eq!(closure_ideal(&d4, [ElementId(2)]).members(), ids(&[0, 2]));
        // s is conjugate to r²s
        assert_eq!(
            closure_ideal(&d4, [ElementId(4)]).members(),
            ids(&[0, 2, 4, 6])
        );
    }

    #[test]
    fn centers() {
        let d4 = fixtures::dihedral_trivial(4);
        assert_eq!(group_center(&d4).members(), ids(&[0, 2]));
        assert_eq!(lie_center(&d4).len(), 8);
        assert_eq!(joint_center(&d4).members(), ids(&[0, 2]));

        let s3 = fixtures::s3_commutator();
        assert!(joint_center(&s3).is_trivial());
        let s3t = fixtures::s3_trivial();
        assert_eq!(lie_center(&s3t).len(), 6);
    }

    #[test]
    fn derived_ideals() {
        let v4 = fixtures::klein_trivial();
        assert!(m_derived(&v4).is_trivial());
        let d4 = fixtures::dihedral_trivial(4);
        assert_eq!(m_derived(&d4).members(), ids(&[0, 2]));
        let s3 = fixtures::s3_commutator();
        let a3 = ids(&[0, 1, 2]);
        assert_eq!(star_derived(&s3).members(), a3);
        assert_eq!(commutator_derived(&s3).members(), a3);
        assert_eq!(m_derived(&s3).members(), a3);
    }

    #[test]
    fn quotient_edge_cases() {
        let d4 = fixtures::dihedral_trivial(4);
        let (q, p) = quotient(&d4, &SubSet::trivial(8)).unwrap();
        assert_eq!(q.order(), 8);
        assert!(p.is_bijective(8));
        let (q, _) = quotient(&d4, &SubSet::whole(8)).unwrap();
        assert_eq!(q.order(), 1);
        let (q, p) = quotient(&d4, &group_center(&d4)).unwrap();
        assert_eq!(q.order(), 4);
        assert!(q.is_abelian());
        assert_eq!(p.apply(ElementId(2)), ElementId::IDENTITY);
        assert!(q.elements().skip(1).all(|x| q.element_order(x) == 2));
    }

    #[test]
    fn quotient_rejects_non_ideal() {
        let d4 = fixtures::dihedral_trivial(4);
        let s = SubSet::new(8, ids(&[0, 4]));
        assert!(matches!(quotient(&d4, &s), Err(MlaError::NotIdeal(_))));
    }

    #[test]
    fn ideal_counts() {
        assert_eq!(
            enumerate_ideals(&fixtures::cyclic_trivial(7))
                .unwrap()
                .len(),
            2
        );
        assert_eq!(
            enumerate_ideals(&fixtures::klein_trivial()).unwrap().len(),
            5
        );
        assert_eq!(
            enumerate_ideals(&fixtures::dihedral_trivial(4))
                .unwrap()
                .len(),
            6
        );
    }

    #[test]
    fn ideal_enumeration_bound() {
        let g = fixtures::cyclic_trivial(9);
        assert!(matches!(
            enumerate_ideals_bounded(&g, 8),
            Err(MlaError::BoundExceeded {
                order: 9,
                bound: 8,
                ..
            })
        ));
    }

    #[test]
    fn quotient_center_lemma_examples() {
        let d4 = fixtures::dihedral_trivial(4);
        let r = check_quotient_center_lemma(&d4, &SubSet::trivial(8)).unwrap();
        assert!(r
            .clauses
            .iter()
            .all(|c| c.outcome == ClauseOutcome::Verified));

        let r = check_quotient_center_lemma(&d4, &group_center(&d4)).unwrap();
        assert_eq!(r.clauses[0].outcome, ClauseOutcome::NotApplicable);

        let v4 = fixtures::klein_trivial();
        let r = check_quotient_center_lemma(&v4, &SubSet::new(4, ids(&[0, 1]))).unwrap();
        assert_eq!(r.clauses[0].outcome, ClauseOutcome::Verified);
    }

    #[test]
    fn restriction_of_center() {
        let d4 = fixtures::dihedral_trivial(4);
        let (c, emb) = restrict_to_subalgebra(&d4, &group_center(&d4)).unwrap();
        assert_eq!(c.order(), 2);
        assert_eq!(emb.image(), &ids(&[0, 2])[..]);
        let (t, _) = restrict_to_subalgebra(&d4, &SubSet::trivial(8)).unwrap();
        assert_eq!(t.order(), 1);
        let err = restrict_to_subalgebra(&d4, &SubSet::new(8, ids(&[0, 1]))).unwrap_err();
        assert!(matches!(err, MlaError::NotSubalgebra(_)));
    }
}
