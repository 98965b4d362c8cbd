//! Homomorphism checks and isomorphism search between finite multiplicative
//! Lie algebras.
//!
//! The search assigns images to a greedily chosen generating sequence of the
//! source group (descending element order, then least id), trying candidate
//! images in ascending id order. Candidates must share the per-element
//! invariants of [`ElementInvariant`]; after each assignment the partial map
//! is extended over the subgroup generated so far and rejected on the first
//! inconsistency. Results come out ordered lexicographically by the tuple of
//! generator images.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::algebra::{ElementId, FiniteMla};
use crate::error::{MlaError, Result};
use crate::structure::{commutator_derived, group_center, lie_center, star_derived};

/// A total function between element-id sets.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MlaMap {
    image: Vec<ElementId>,
}

impl MlaMap {
    pub fn new(image: Vec<ElementId>) -> Self {
        MlaMap { image }
    }

    pub fn identity(n: usize) -> Self {
        MlaMap::new((0..n).map(ElementId::new).collect())
    }

    /// Sends everything to the identity.
    pub fn trivial(n: usize) -> Self {
        MlaMap::new(vec![ElementId::IDENTITY; n])
    }

    pub fn image(&self) -> &[ElementId] {
        &self.image
    }

    #[inline]
    pub fn apply(&self, x: ElementId) -> ElementId {
        self.image[x.index()]
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn is_injective(&self) -> bool {
        let set: BTreeSet<_> = self.image.iter().collect();
        set.len() == self.image.len()
    }

    pub fn is_bijective(&self, target_order: usize) -> bool {
        self.image.len() == target_order && self.is_injective()
    }

    /// Inverse of a bijection.
    pub fn inverse(&self) -> Option<MlaMap> {
        let n = self.image.len();
        let mut inv = vec![None; n];
        for (x, y) in self.image.iter().enumerate() {
            let slot = inv.get_mut(y.index())?;
            if slot.is_some() {
                return None;
            }
            *slot = Some(ElementId::new(x));
        }
        inv.into_iter().collect::<Option<Vec<_>>>().map(MlaMap::new)
    }

    /// `then ∘ self`
    pub fn then(&self, then: &MlaMap) -> MlaMap {
        MlaMap::new(self.image.iter().map(|&x| then.apply(x)).collect())
    }

    /// Elements mapped to the identity.
    pub fn kernel(&self) -> Vec<ElementId> {
        (0..self.image.len())
            .filter(|&x| self.image[x].is_identity())
            .map(ElementId::new)
            .collect()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Operation {
    Product,
    Star,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct HomViolation {
    pub operation: Operation,
    pub x: ElementId,
    pub y: ElementId,
}

/// Checks both operations over all pairs; returns the least failing pair.
pub fn is_homomorphism(
    source: &FiniteMla,
    target: &FiniteMla,
    f: &MlaMap,
) -> Result<std::result::Result<(), HomViolation>> {
    if f.len() != source.order() {
        return Err(MlaError::SizeMismatch(format!(
            "map has {} entries but the source has order {}",
            f.len(),
            source.order()
        )));
    }
    if let Some(bad) = f.image().iter().find(|y| y.index() >= target.order()) {
        return Err(MlaError::SizeMismatch(format!(
            "image {bad} outside a target of order {}",
            target.order()
        )));
    }
    for x in source.elements() {
        for y in source.elements() {
            let (fx, fy) = (f.apply(x), f.apply(y));
            if f.apply(source.mul(x, y)) != target.mul(fx, fy) {
                return Ok(Err(HomViolation {
                    operation: Operation::Product,
                    x,
                    y,
                }));
            }
            if f.apply(source.star(x, y)) != target.star(fx, fy) {
                return Ok(Err(HomViolation {
                    operation: Operation::Star,
                    x,
                    y,
                }));
            }
        }
    }
    Ok(Ok(()))
}

pub fn is_hom(source: &FiniteMla, target: &FiniteMla, f: &MlaMap) -> bool {
    matches!(is_homomorphism(source, target, f), Ok(Ok(())))
}

pub fn is_isomorphism(source: &FiniteMla, target: &FiniteMla, f: &MlaMap) -> bool {
    source.order() == target.order() && is_hom(source, target, f) && f.is_bijective(target.order())
}

/// Invariants of a single element preserved by every isomorphism.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct ElementInvariant {
    pub order: usize,
    /// `|{y : x ⋆ y = 1}|`
    pub star_annihilator: usize,
    pub class_size: usize,
}

pub fn element_invariants(g: &FiniteMla) -> Vec<ElementInvariant> {
    let n = g.order();
    let mut seen = vec![false; n];
    g.elements()
        .map(|x| {
            seen.iter_mut().for_each(|s| *s = false);
            let mut class_size = 0;
            for y in g.elements() {
                let c = g.conj(y, x);
                if !std::mem::replace(&mut seen[c.index()], true) {
                    class_size += 1;
                }
            }
            ElementInvariant {
                order: g.element_order(x),
                star_annihilator: g.elements().filter(|&y| g.star(x, y).is_identity()).count(),
                class_size,
            }
        })
        .collect()
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Fingerprint {
    pub order: usize,
    pub elements: Vec<ElementInvariant>,
    pub center: usize,
    pub lie_center: usize,
    pub star_derived: usize,
    pub commutator_derived: usize,
}

/// Isomorphism-invariant summary; unequal fingerprints certify
/// non-isomorphism.
pub fn fingerprint(g: &FiniteMla) -> Fingerprint {
    let mut elements = element_invariants(g);
    elements.sort();
    Fingerprint {
        order: g.order(),
        elements,
        center: group_center(g).len(),
        lie_center: lie_center(g).len(),
        star_derived: star_derived(g).len(),
        commutator_derived: commutator_derived(g).len(),
    }
}

/// Greedy generating sequence of the underlying group: descending element
/// order, ties by least id.
pub fn generating_sequence(g: &FiniteMla) -> Vec<ElementId> {
    let mut order: Vec<ElementId> = g.elements().collect();
    order.sort_by_key(|&x| (std::cmp::Reverse(g.element_order(x)), x));
    let mut inside = vec![false; g.order()];
    inside[0] = true;
    let mut members = vec![ElementId::IDENTITY];
    let mut gens = Vec::new();
    for x in order {
        if members.len() == g.order() {
            break;
        }
        if inside[x.index()] {
            continue;
        }
        gens.push(x);
        // right-multiplication closure by all generators so far
        let mut i = 0;
        while i < members.len() {
            let m = members[i];
            for &s in &gens {
                let y = g.mul(m, s);
                if !inside[y.index()] {
                    inside[y.index()] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
    }
    gens
}

struct IsoSearch<'a> {
    g1: &'a FiniteMla,
    g2: &'a FiniteMla,
    gens: Vec<ElementId>,
    candidates: Vec<Vec<ElementId>>,
    image: Vec<Option<ElementId>>,
    used: Vec<bool>,
    domain: Vec<ElementId>,
}

impl<'a> IsoSearch<'a> {
    fn new(g1: &'a FiniteMla, g2: &'a FiniteMla) -> Self {
        let gens = generating_sequence(g1);
        let inv1 = element_invariants(g1);
        let inv2 = element_invariants(g2);
        let candidates = gens
            .iter()
            .map(|&s| {
                g2.elements()
                    .filter(|y| inv2[y.index()] == inv1[s.index()])
                    .collect()
            })
            .collect();
        let mut image = vec![None; g1.order()];
        image[0] = Some(ElementId::IDENTITY);
        let mut used = vec![false; g2.order()];
        used[0] = true;
        IsoSearch {
            g1,
            g2,
            gens,
            candidates,
            image,
            used,
            domain: vec![ElementId::IDENTITY],
        }
    }

    fn truncate(&mut self, len: usize) {
        for x in self.domain.drain(len..) {
            let y = self.image[x.index()]
                .take()
                .expect("domain element has an image");
            self.used[y.index()] = false;
        }
    }

    fn assign(&mut self, x: ElementId, y: ElementId) -> bool {
        match self.image[x.index()] {
            Some(prev) => prev == y,
            None => {
                if self.used[y.index()] {
                    return false;
                }
                self.image[x.index()] = Some(y);
                self.used[y.index()] = true;
                self.domain.push(x);
                true
            }
        }
    }

    /// Extends the map over the subgroup generated by `gens[..=level]`,
    /// checking products and the `⋆` pairs that stay inside the domain.
    fn extend(&mut self, level: usize) -> bool {
        let (g1, g2) = (self.g1, self.g2);
        let start = self.domain.len() - 1;
        let mut i = 0;
        while i < self.domain.len() {
            let x = self.domain[i];
            let fx = self.image[x.index()].unwrap();
            let range = if i < start {
                level..level + 1
            } else {
                0..level + 1
            };
            for k in range {
                let s = self.gens[k];
                let fs = self.image[s.index()].unwrap();
                let xs = g1.mul(x, s);
                if !self.assign(xs, g2.mul(fx, fs)) {
                    return false;
                }
            }
            i += 1;
        }
        for i in start..self.domain.len() {
            let x = self.domain[i];
            let fx = self.image[x.index()].unwrap();
            for j in 0..self.domain.len() {
                let z = self.domain[j];
                let fz = self.image[z.index()].unwrap();
                for (a, b, fa, fb) in [(x, z, fx, fz), (z, x, fz, fx)] {
                    if let Some(fs) = self.image[g1.star(a, b).index()] {
                        if fs != g2.star(fa, fb) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn run(
        &mut self,
        level: usize,
        visit: &mut dyn FnMut(&MlaMap) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if level == self.gens.len() {
            if self.domain.len() != self.g1.order() {
                return ControlFlow::Continue(());
            }
            let map = MlaMap::new(self.image.iter().map(|y| y.unwrap()).collect());
            debug_assert!(is_isomorphism(self.g1, self.g2, &map));
            if !is_hom(self.g1, self.g2, &map) {
                return ControlFlow::Continue(());
            }
            return visit(&map);
        }
        let s = self.gens[level];
        let mark = self.domain.len();
        for k in 0..self.candidates[level].len() {
            let y = self.candidates[level][k];
            if self.assign(s, y) && self.extend(level) {
                self.run(level + 1, visit)?;
            }
            self.truncate(mark);
        }
        ControlFlow::Continue(())
    }
}

/// Calls `visit` on every isomorphism `g1 → g2` in canonical order until it
/// breaks. The search is exhaustive.
pub fn for_each_isomorphism(
    g1: &FiniteMla,
    g2: &FiniteMla,
    mut visit: impl FnMut(&MlaMap) -> ControlFlow<()>,
) {
    if g1.order() != g2.order() {
        return;
    }
    if fingerprint(g1) != fingerprint(g2) {
        return;
    }
    let mut search = IsoSearch::new(g1, g2);
    let _ = search.run(0, &mut visit);
}

/// Isomorphisms `g1 → g2` in canonical order, at most `limit` of them.
/// An empty result means none exist.
pub fn find_isomorphisms(g1: &FiniteMla, g2: &FiniteMla, limit: Option<usize>) -> Vec<MlaMap> {
    let mut out = Vec::new();
    if limit == Some(0) {
        return out;
    }
    for_each_isomorphism(g1, g2, |m| {
        out.push(m.clone());
        if Some(out.len()) == limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    out
}

pub fn find_isomorphism(g1: &FiniteMla, g2: &FiniteMla) -> Option<MlaMap> {
    find_isomorphisms(g1, g2, Some(1)).pop()
}

pub fn are_isomorphic(g1: &FiniteMla, g2: &FiniteMla) -> bool {
    find_isomorphism(g1, g2).is_some()
}
