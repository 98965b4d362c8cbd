//! Central extensions `1 → H → G → K → 1`, stem tests and pullbacks.

use serde::Serialize;

use crate::algebra::{direct_product, ElementId, FiniteMla, DEFAULT_MAX_ORDER};
use crate::error::{MlaError, Result};
use crate::morph::{is_hom, MlaMap};
use crate::structure::{
    enumerate_ideals_bounded, joint_center, m_derived, quotient, restrict_to_subalgebra, SubSet,
};

/// `1 → H → G → K → 1` with `H` inside the joint centre of `G` and `K = G/H`
/// numbered canonically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralExtension {
    pub total: FiniteMla,
    pub kernel: SubSet,
    pub quotient: FiniteMla,
    /// The projection `β: G → K`.
    pub proj: MlaMap,
}

impl CentralExtension {
    pub fn name(&self) -> String {
        format!("{} over {}", self.total.name(), self.quotient.name())
    }

    /// Least preimage of each element of `K`.
    pub fn lifts(&self) -> Vec<ElementId> {
        let mut lift = vec![None; self.quotient.order()];
        for g in self.total.elements() {
            lift[self.proj.apply(g).index()].get_or_insert(g);
        }
        lift.into_iter()
            .map(|l| l.expect("projection is onto"))
            .collect()
    }
}

/// Builds the central extension of `G` by the ideal `H`.
pub fn make_extension(
    g: &FiniteMla,
    kernel: impl IntoIterator<Item = ElementId>,
) -> Result<CentralExtension> {
    let h = SubSet::new(g.order(), kernel);
    if !h.members().first().is_some_and(|x| x.is_identity()) {
        return Err(MlaError::NotIdeal(format!(
            "{h} does not contain the identity"
        )));
    }
    if !h.is_ideal(g) {
        return Err(MlaError::NotIdeal(format!("{h} in {}", g.name())));
    }
    let z = joint_center(g);
    if !h.is_subset_of(&z) {
        return Err(MlaError::NotCentral(format!(
            "{h} is not inside the joint centre {z} of {}",
            g.name()
        )));
    }
    let (k, proj) = quotient(g, &h)?;
    Ok(CentralExtension {
        total: g.clone(),
        kernel: h,
        quotient: k,
        proj,
    })
}

/// `H ⊆ ^M[G,G]`
pub fn is_stem(e: &CentralExtension) -> bool {
    e.kernel.is_subset_of(&m_derived(&e.total))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct StemCriterion {
    /// Every non-trivial ideal inside the kernel meets `^M[G,G]`.
    pub holds: bool,
    /// The first non-trivial ideal inside the kernel that misses `^M[G,G]`.
    pub witness: Option<SubSet>,
    pub is_stem: bool,
    /// The ideal test and the containment test disagree.
    pub finding: bool,
}

/// Evaluates the ideal-intersection characterisation of stem extensions and
/// compares it with [`is_stem`].
pub fn stem_criterion(e: &CentralExtension, ideal_bound: usize) -> Result<StemCriterion> {
    let derived = m_derived(&e.total);
    let ideals = enumerate_ideals_bounded(&e.total, ideal_bound)?;
    let witness = ideals
        .into_iter()
        .filter(|i| !i.is_trivial() && i.is_subset_of(&e.kernel))
        .find(|i| i.intersection(&derived).is_trivial());
    let holds = witness.is_none();
    let stem = is_stem(e);
    Ok(StemCriterion {
        holds,
        witness,
        is_stem: stem,
        finding: holds != stem,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pullback {
    pub extension: CentralExtension,
    /// Pullback element `i` is the pair `pairs[i]`.
    pub pairs: Vec<(ElementId, ElementId)>,
    /// Kernel equals `H₁ × H₂`.
    pub kernel_matches: bool,
    /// `|G₁|·|H₂|` when `ν` is an isomorphism.
    pub expected_order: Option<usize>,
}

/// Forms `G₁ ×_{K₂} G₂ = {(g₁, g₂) : ν(β₁(g₁)) = β₂(g₂)}` as an extension
/// over `K₁` with projection `(g₁, g₂) ↦ β₁(g₁)`.
pub fn pullback_extension(
    e1: &CentralExtension,
    e2: &CentralExtension,
    nu: &MlaMap,
) -> Result<Pullback> {
    if nu.len() != e1.quotient.order() || !is_hom(&e1.quotient, &e2.quotient, nu) {
        return Err(MlaError::NotAMorphism(format!(
            "nu is not a homomorphism {} -> {}",
            e1.quotient.name(),
            e2.quotient.name()
        )));
    }
    let (g1, g2) = (&e1.total, &e2.total);
    let n2 = g2.order();
    let product = direct_product(g1, g2, DEFAULT_MAX_ORDER.max(g1.order() * n2))?;
    let members = g1.elements().flat_map(|a| {
        g2.elements()
            .filter(move |&b| nu.apply(e1.proj.apply(a)) == e2.proj.apply(b))
            .map(move |b| ElementId::new(a.index() * n2 + b.index()))
    });
    let set = SubSet::new(product.order(), members);
    assert!(
        set.is_subalgebra(&product),
        "fibre product of a homomorphism is a subalgebra"
    );
    let (p, embed) = restrict_to_subalgebra(&product, &set)?;
    let p = p.with_name(format!(
        "{}x_{}{}",
        g1.name(),
        e2.quotient.name(),
        g2.name()
    ));
    let pairs: Vec<(ElementId, ElementId)> = embed
        .image()
        .iter()
        .map(|&x| {
            (
                ElementId::new(x.index() / n2),
                ElementId::new(x.index() % n2),
            )
        })
        .collect();
    let kernel: Vec<ElementId> = (0..p.order())
        .filter(|&i| e1.proj.apply(pairs[i].0).is_identity())
        .map(ElementId::new)
        .collect();
    let kernel_matches = kernel.len() == e1.kernel.len() * e2.kernel.len()
        && kernel.iter().all(|&i| {
            e1.kernel.contains(pairs[i.index()].0) && e2.kernel.contains(pairs[i.index()].1)
        });
    let extension = make_extension(&p, kernel)?;
    let expected_order = nu
        .is_bijective(e2.quotient.order())
        .then(|| g1.order() * e2.kernel.len());
    Ok(Pullback {
        extension,
        pairs,
        kernel_matches,
        expected_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::morph::are_isomorphic;
    use crate::structure::DEFAULT_IDEAL_BOUND;

    fn ids(v: &[u32]) -> Vec<ElementId> {
        v.iter().map(|&x| ElementId(x)).collect()
    }

    #[test]
    fn trivial_kernel() {
        let d4 = fixtures::dihedral_trivial(4);
        let e = make_extension(&d4, ids(&[0])).unwrap();
        assert!(are_isomorphic(&e.quotient, &d4));
        assert!(is_stem(&e));
        let c = stem_criterion(&e, DEFAULT_IDEAL_BOUND).unwrap();
        assert!(c.holds && !c.finding);
    }

    #[test]
    fn d4_over_its_centre() {
        let d4 = fixtures::dihedral_trivial(4);
        let e = make_extension(&d4, ids(&[0, 2])).unwrap();
        assert!(are_isomorphic(&e.quotient, &fixtures::klein_trivial()));
        assert!(is_stem(&e));
        assert!(stem_criterion(&e, DEFAULT_IDEAL_BOUND).unwrap().holds);
    }

    #[test]
    fn non_normal_kernel_is_rejected() {
        let d4 = fixtures::dihedral_trivial(4);
        assert!(matches!(
            make_extension(&d4, ids(&[0, 4])).unwrap_err(),
            MlaError::NotIdeal(_)
        ));
    }

    #[test]
    fn non_central_kernel_is_rejected() {
        let d4 = fixtures::dihedral_trivial(4);
        assert!(matches!(
            make_extension(&d4, ids(&[0, 1, 2, 3])).unwrap_err(),
            MlaError::NotCentral(_)
        ));
    }

    #[test]
    fn klein_over_a_factor_is_not_stem() {
        let v4 = fixtures::klein_trivial();
        let e = make_extension(&v4, ids(&[0, 2])).unwrap();
        assert!(!is_stem(&e));
        let c = stem_criterion(&e, DEFAULT_IDEAL_BOUND).unwrap();
        assert!(!c.holds);
        assert_eq!(c.witness.unwrap(), e.kernel);
    }

    #[test]
    fn pullback_of_identity_contains_the_diagonal() {
        let d4 = fixtures::dihedral_trivial(4);
        let e = make_extension(&d4, ids(&[0, 2])).unwrap();
        let pb = pullback_extension(&e, &e, &MlaMap::identity(4)).unwrap();
        assert!(pb.kernel_matches);
        assert_eq!(pb.expected_order, Some(16));
        assert_eq!(pb.extension.total.order(), 16);
        for g in d4.elements() {
            assert!(pb.pairs.contains(&(g, g)));
        }
    }
}
