//! Isoclinism search for algebras and for central extensions.
//!
//! Both notions compare a quotient `Q` (the central quotient `G/𝒵(G)` for
//! algebras, the base `K` for extensions) and the derived ideal
//! `D = ^M[G,G]` through the commutator map and the star map
//! `Q × Q → D`. Candidates for `λ: Q₁ → Q₂` are enumerated in canonical
//! order. The square forces `μ` on every commutator and star value, and
//! these values generate `D`, so each `λ` admits at most one `μ`; that `μ`
//! is built by extending along products and then verified as an
//! isomorphism.

use std::ops::ControlFlow;

use serde::Serialize;

use crate::algebra::{ElementId, FiniteMla};
use crate::error::{MlaError, Result};
use crate::morph::{for_each_isomorphism, is_isomorphism, MlaMap};
use crate::structure::{joint_center, m_derived, quotient, restrict_to_subalgebra, SubSet};

use super::extension::CentralExtension;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessKind {
    Algebra,
    Extension,
}

/// `λ` between the quotients and `μ` between the derived ideals, the latter
/// in the numbering of the restricted algebras.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct IsoclinismWitness {
    pub lambda: MlaMap,
    pub mu: MlaMap,
    pub kind: WitnessKind,
}

/// One side of an isoclinism problem.
#[derive(Clone, Debug)]
pub struct Frame {
    pub total: FiniteMla,
    pub quotient: FiniteMla,
    pub proj: MlaMap,
    /// Least preimage of each quotient element.
    pub lift: Vec<ElementId>,
    pub derived: SubSet,
    pub derived_algebra: FiniteMla,
    /// Restricted id to total id.
    pub embed: MlaMap,
    /// Total id to restricted id.
    index: Vec<Option<ElementId>>,
    /// `[lift a, lift b]` as a restricted id, indexed `a*|Q| + b`.
    comm: Vec<ElementId>,
    /// `lift a ⋆ lift b` as a restricted id.
    star: Vec<ElementId>,
}

impl Frame {
    fn new(total: &FiniteMla, quotient: FiniteMla, proj: MlaMap) -> Result<Frame> {
        let mut lift = vec![None; quotient.order()];
        for g in total.elements() {
            lift[proj.apply(g).index()].get_or_insert(g);
        }
        let lift: Vec<ElementId> = lift
            .into_iter()
            .map(|l| l.expect("projection is onto"))
            .collect();
        let derived = m_derived(total);
        let (derived_algebra, embed) = restrict_to_subalgebra(total, &derived)?;
        let mut index = vec![None; total.order()];
        for (i, &x) in embed.image().iter().enumerate() {
            index[x.index()] = Some(ElementId::new(i));
        }
        let q = quotient.order();
        let mut comm = Vec::with_capacity(q * q);
        let mut star = Vec::with_capacity(q * q);
        for &a in &lift {
            for &b in &lift {
                comm.push(
                    index[total.comm(a, b).index()].expect("commutators lie in the derived ideal"),
                );
                star.push(
                    index[total.star(a, b).index()].expect("star values lie in the derived ideal"),
                );
            }
        }
        let frame = Frame {
            total: total.clone(),
            quotient,
            proj,
            lift,
            derived,
            derived_algebra,
            embed,
            index,
            comm,
            star,
        };
        frame.check_well_defined()?;
        Ok(frame)
    }

    /// Frame of `G` with `Q = G/𝒵(G)`.
    pub fn for_algebra(g: &FiniteMla) -> Frame {
        let (q, proj) = quotient(g, &joint_center(g)).expect("joint centre is an ideal");
        Frame::new(g, q, proj).expect("joint centre gives well-defined maps")
    }

    /// Frame of an extension with `Q = K`. Fails if the commutator or star
    /// value depends on the choice of preimages.
    pub fn for_extension(e: &CentralExtension) -> Result<Frame> {
        Frame::new(&e.total, e.quotient.clone(), e.proj.clone())
    }

    /// Checks that `[g₁, g₂]` and `g₁ ⋆ g₂` depend only on the images in `Q`.
    fn check_well_defined(&self) -> Result<()> {
        let g = &self.total;
        for a in g.elements() {
            for b in g.elements() {
                let k = self.slot(self.proj.apply(a), self.proj.apply(b));
                if self.index[g.comm(a, b).index()] != Some(self.comm[k])
                    || self.index[g.star(a, b).index()] != Some(self.star[k])
                {
                    return Err(MlaError::NotCentral(format!(
                        "commutator or star of ({a}, {b}) depends on the preimage choice"
                    )));
                }
            }
        }
        Ok(())
    }

    #[inline]
    fn slot(&self, a: ElementId, b: ElementId) -> usize {
        a.index() * self.quotient.order() + b.index()
    }

    /// `[a, b]` for quotient elements, as a restricted id.
    pub fn comm_value(&self, a: ElementId, b: ElementId) -> ElementId {
        self.comm[self.slot(a, b)]
    }

    /// `a ⋆ b` for quotient elements, as a restricted id.
    pub fn star_value(&self, a: ElementId, b: ElementId) -> ElementId {
        self.star[self.slot(a, b)]
    }

    /// Restricted id of a total element of the derived ideal.
    pub fn derived_index(&self, x: ElementId) -> Option<ElementId> {
        self.index[x.index()]
    }
}

/// The unique `μ` compatible with `λ`, if it exists and is an isomorphism.
fn forced_mu(f1: &Frame, f2: &Frame, lambda: &MlaMap) -> Option<MlaMap> {
    let d1 = &f1.derived_algebra;
    let d2 = &f2.derived_algebra;
    let n = d1.order();
    let mut img: Vec<Option<ElementId>> = vec![None; n];
    img[0] = Some(ElementId::IDENTITY);
    let mut values = Vec::new();
    for a in f1.quotient.elements() {
        for b in f1.quotient.elements() {
            let (la, lb) = (lambda.apply(a), lambda.apply(b));
            for (v1, v2) in [
                (f1.comm_value(a, b), f2.comm_value(la, lb)),
                (f1.star_value(a, b), f2.star_value(la, lb)),
            ] {
                match img[v1.index()] {
                    Some(prev) if prev != v2 => return None,
                    Some(_) => {}
                    None => {
                        img[v1.index()] = Some(v2);
                        values.push(v1);
                    }
                }
            }
        }
    }
    // extend multiplicatively from the identity along the values
    let mut reached = vec![false; n];
    reached[0] = true;
    let mut order = vec![ElementId::IDENTITY];
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        let fx = img[x.index()].expect("reached elements have images");
        for &v in &values {
            let y = d1.mul(x, v);
            let fy = d2.mul(fx, img[v.index()].expect("values have images"));
            match img[y.index()] {
                Some(prev) if prev != fy => return None,
                _ => img[y.index()] = Some(fy),
            }
            if !std::mem::replace(&mut reached[y.index()], true) {
                order.push(y);
            }
        }
        i += 1;
    }
    if order.len() == n {
        let mu = MlaMap::new(img.into_iter().map(|x| x.expect("all reached")).collect());
        return is_isomorphism(d1, d2, &mu).then_some(mu);
    }
    // The values always generate the derived ideal; this path only guards
    // against that failing.
    let constraints: Vec<(ElementId, ElementId)> = (0..n)
        .filter_map(|x| img[x].map(|y| (ElementId::new(x), y)))
        .collect();
    let mut found = None;
    for_each_isomorphism(d1, d2, |mu| {
        if constraints.iter().all(|&(x, y)| mu.apply(x) == y) {
            found = Some(mu.clone());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    found
}

fn search(f1: &Frame, f2: &Frame, kind: WitnessKind) -> Option<IsoclinismWitness> {
    if f1.quotient.order() != f2.quotient.order() || f1.derived.len() != f2.derived.len() {
        return None;
    }
    let mut found = None;
    for_each_isomorphism(&f1.quotient, &f2.quotient, |lambda| {
        match forced_mu(f1, f2, lambda) {
            Some(mu) => {
                found = Some(IsoclinismWitness {
                    lambda: lambda.clone(),
                    mu,
                    kind,
                });
                ControlFlow::Break(())
            }
            None => ControlFlow::Continue(()),
        }
    });
    found
}

/// First isoclinism `G₁ ∼ G₂` in canonical order, or `None` after an
/// exhaustive search.
pub fn find_isoclinism(g1: &FiniteMla, g2: &FiniteMla) -> Option<IsoclinismWitness> {
    search(
        &Frame::for_algebra(g1),
        &Frame::for_algebra(g2),
        WitnessKind::Algebra,
    )
}

/// First isoclinism of central extensions in canonical order.
pub fn find_extension_isoclinism(
    e1: &CentralExtension,
    e2: &CentralExtension,
) -> Result<Option<IsoclinismWitness>> {
    Ok(search(
        &Frame::for_extension(e1)?,
        &Frame::for_extension(e2)?,
        WitnessKind::Extension,
    ))
}

/// Exhaustive re-check of a witness: both maps are isomorphisms and both
/// squares commute on every pair of quotient elements. Returns a
/// description of the first failure.
pub fn verify_frames(
    f1: &Frame,
    f2: &Frame,
    w: &IsoclinismWitness,
) -> std::result::Result<(), String> {
    if w.lambda.len() != f1.quotient.order() || w.mu.len() != f1.derived_algebra.order() {
        return Err("witness maps have the wrong length".into());
    }
    if !is_isomorphism(&f1.quotient, &f2.quotient, &w.lambda) {
        return Err("lambda is not an isomorphism".into());
    }
    if !is_isomorphism(&f1.derived_algebra, &f2.derived_algebra, &w.mu) {
        return Err("mu is not an isomorphism".into());
    }
    for a in f1.quotient.elements() {
        for b in f1.quotient.elements() {
            let (la, lb) = (w.lambda.apply(a), w.lambda.apply(b));
            if w.mu.apply(f1.comm_value(a, b)) != f2.comm_value(la, lb) {
                return Err(format!("commutator square fails at ({a}, {b})"));
            }
            if w.mu.apply(f1.star_value(a, b)) != f2.star_value(la, lb) {
                return Err(format!("star square fails at ({a}, {b})"));
            }
        }
    }
    Ok(())
}

pub fn verify_isoclinism(
    g1: &FiniteMla,
    g2: &FiniteMla,
    w: &IsoclinismWitness,
) -> std::result::Result<(), String> {
    verify_frames(&Frame::for_algebra(g1), &Frame::for_algebra(g2), w)
}

pub fn verify_extension_isoclinism(
    e1: &CentralExtension,
    e2: &CentralExtension,
    w: &IsoclinismWitness,
) -> Result<std::result::Result<(), String>> {
    Ok(verify_frames(
        &Frame::for_extension(e1)?,
        &Frame::for_extension(e2)?,
        w,
    ))
}

/// Inverse witness for the swapped pair.
pub fn invert_witness(w: &IsoclinismWitness) -> Option<IsoclinismWitness> {
    Some(IsoclinismWitness {
        lambda: w.lambda.inverse()?,
        mu: w.mu.inverse()?,
        kind: w.kind,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::isoclinism::extension::make_extension;

    #[test]
    fn self_isoclinism_is_the_identity() {
        for g in [
            fixtures::dihedral_commutator(4),
            fixtures::s3_commutator(),
            fixtures::c2_x_c4(),
        ] {
            let w = find_isoclinism(&g, &g).unwrap();
            let f = Frame::for_algebra(&g);
            assert_eq!(w.lambda, MlaMap::identity(f.quotient.order()));
            assert_eq!(w.mu, MlaMap::identity(f.derived_algebra.order()));
        }
    }

    #[test]
    fn abelian_trivial_algebras_are_isoclinic() {
        let w = find_isoclinism(&fixtures::cyclic_trivial(4), &fixtures::klein_trivial()).unwrap();
        assert_eq!(w.lambda.len(), 1);
        assert_eq!(w.mu.len(), 1);
    }

    #[test]
    fn d4_and_q8_are_isoclinic() {
        let d4 = fixtures::dihedral_trivial(4);
        let q8 = fixtures::quaternion_trivial();
        let w = find_isoclinism(&d4, &q8).unwrap();
        verify_isoclinism(&d4, &q8, &w).unwrap();
        let back = invert_witness(&w).unwrap();
        verify_isoclinism(&q8, &d4, &back).unwrap();
    }

    #[test]
    fn d4_and_c8_are_not_isoclinic() {
        assert!(
            find_isoclinism(&fixtures::dihedral_trivial(4), &fixtures::cyclic_trivial(8)).is_none()
        );
    }

    #[test]
    fn trivial_and_commutator_star_on_d4_differ() {
        // the star map is trivial on one side only
        assert!(find_isoclinism(
            &fixtures::dihedral_trivial(4),
            &fixtures::dihedral_commutator(4)
        )
        .is_none());
    }

    #[test]
    fn extension_witness_d4_q8() {
        let e1 =
            make_extension(&fixtures::dihedral_trivial(4), [ElementId(0), ElementId(2)]).unwrap();
        let e2 = make_extension(
            &fixtures::quaternion_trivial(),
            [ElementId(0), ElementId(2)],
        )
        .unwrap();
        let w = find_extension_isoclinism(&e1, &e2).unwrap().unwrap();
        assert_eq!(w.kind, WitnessKind::Extension);
        verify_extension_isoclinism(&e1, &e2, &w).unwrap().unwrap();
    }

    #[test]
    fn tampered_witness_is_rejected() {
        let d4 = fixtures::dihedral_trivial(4);
        let q8 = fixtures::quaternion_trivial();
        let mut w = find_isoclinism(&d4, &q8).unwrap();
        w.mu = MlaMap::trivial(w.mu.len());
        assert!(verify_isoclinism(&d4, &q8, &w).is_err());
    }
}
