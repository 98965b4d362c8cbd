//! Morphisms of central extensions and the isoclinic-morphism test.
//!
//! A morphism `(λ, μ, ν): E₁ → E₂` has `λ: H₁ → H₂`, `μ: G₁ → G₂` and
//! `ν: K₁ → K₂` with `μ` extending `λ` and `β₂ ∘ μ = ν ∘ β₁`. It is
//! isoclinic when `(ν, μ|^M[G₁,G₁])` is an isoclinism. The criterion
//! "`ν` is an isomorphism and `ker μ ∩ ^M[G₁,G₁] = 1`" is evaluated next to
//! that definition and the two answers are compared.

use serde::Serialize;

use crate::algebra::ElementId;
use crate::error::{MlaError, Result};
use crate::morph::{is_hom, is_homomorphism, MlaMap};
use crate::structure::SubSet;

use super::extension::CentralExtension;
use super::search::{verify_frames, Frame, IsoclinismWitness, WitnessKind};

/// `λ` is given on the kernel members of `E₁` in increasing order, with
/// values in `G₂`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ExtensionMorphism {
    pub lambda: MlaMap,
    pub mu: MlaMap,
    pub nu: MlaMap,
}

impl ExtensionMorphism {
    /// The morphism determined by `μ`; `λ` and `ν` are induced.
    pub fn from_mu(e1: &CentralExtension, e2: &CentralExtension, mu: MlaMap) -> Result<Self> {
        let lambda = MlaMap::new(e1.kernel.members().iter().map(|&h| mu.apply(h)).collect());
        let mut nu = vec![None; e1.quotient.order()];
        for g in e1.total.elements() {
            let k = e1.proj.apply(g);
            let v = e2.proj.apply(mu.apply(g));
            match nu[k.index()] {
                Some(prev) if prev != v => {
                    return Err(MlaError::NotAMorphism(format!(
                        "mu does not descend to the quotients at {g}"
                    )))
                }
                _ => nu[k.index()] = Some(v),
            }
        }
        let nu = MlaMap::new(
            nu.into_iter()
                .map(|v| v.expect("projection is onto"))
                .collect(),
        );
        Ok(ExtensionMorphism { lambda, mu, nu })
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct IsoclinicMorphismReport {
    /// `ν` is an isomorphism and `ker μ ∩ ^M[G₁,G₁]` is trivial.
    pub criterion: bool,
    /// `(ν, μ|^M)` is an isoclinism, checked directly.
    pub direct: bool,
    pub agree: bool,
    pub nu_is_isomorphism: bool,
    pub kernel_meets_derived: SubSet,
    /// Why the morphism is not isoclinic.
    pub reason: Option<String>,
    /// `(Im μ)H₂ = G₂`, evaluated for isoclinic morphisms.
    pub image_times_kernel_is_total: Option<bool>,
}

fn check_morphism(
    e1: &CentralExtension,
    e2: &CentralExtension,
    m: &ExtensionMorphism,
) -> Result<()> {
    let bad = |what: String| Err(MlaError::NotAMorphism(what));
    if m.mu.len() != e1.total.order()
        || m.nu.len() != e1.quotient.order()
        || m.lambda.len() != e1.kernel.len()
    {
        return bad("map lengths do not match the extensions".into());
    }
    if m.mu.image().iter().any(|x| x.index() >= e2.total.order())
        || m.nu
            .image()
            .iter()
            .any(|x| x.index() >= e2.quotient.order())
        || m.lambda
            .image()
            .iter()
            .any(|x| x.index() >= e2.total.order())
    {
        return bad("map values outside the target".into());
    }
    if let Err(v) = is_homomorphism(&e1.total, &e2.total, &m.mu)? {
        return bad(format!("mu is not a homomorphism at ({}, {})", v.x, v.y));
    }
    if !is_hom(&e1.quotient, &e2.quotient, &m.nu) {
        return bad("nu is not a homomorphism".into());
    }
    for (i, &h) in e1.kernel.members().iter().enumerate() {
        let l = m.lambda.apply(ElementId::new(i));
        if !e2.kernel.contains(l) {
            return bad(format!("lambda sends {h} outside the kernel"));
        }
        if l != m.mu.apply(h) {
            return bad(format!("kernel square fails at {h}"));
        }
    }
    for g in e1.total.elements() {
        if e2.proj.apply(m.mu.apply(g)) != m.nu.apply(e1.proj.apply(g)) {
            return bad(format!("quotient square fails at {g}"));
        }
    }
    Ok(())
}

/// Decides whether a morphism of central extensions is isoclinic, by the
/// kernel criterion and by the definition.
pub fn is_isoclinic_morphism(
    e1: &CentralExtension,
    e2: &CentralExtension,
    m: &ExtensionMorphism,
) -> Result<IsoclinicMorphismReport> {
    check_morphism(e1, e2, m)?;
    let f1 = Frame::for_extension(e1)?;
    let f2 = Frame::for_extension(e2)?;

    let nu_is_isomorphism = m.nu.is_bijective(e2.quotient.order());
    let kernel_meets_derived = SubSet::new(
        e1.total.order(),
        f1.embed
            .image()
            .iter()
            .copied()
            .filter(|&x| m.mu.apply(x).is_identity()),
    );
    let criterion = nu_is_isomorphism && kernel_meets_derived.is_trivial();

    // μ restricted to the derived ideals, if it lands there bijectively
    let restricted: Option<MlaMap> = f1
        .embed
        .image()
        .iter()
        .map(|&x| f2.derived_index(m.mu.apply(x)))
        .collect::<Option<Vec<_>>>()
        .map(MlaMap::new);
    let direct = match restricted {
        Some(mu) if nu_is_isomorphism => {
            let w = IsoclinismWitness {
                lambda: m.nu.clone(),
                mu,
                kind: WitnessKind::Extension,
            };
            verify_frames(&f1, &f2, &w).is_ok()
        }
        _ => false,
    };

    let reason = if direct {
        None
    } else if !nu_is_isomorphism {
        Some("nu is not an isomorphism".to_string())
    } else if !kernel_meets_derived.is_trivial() {
        Some(format!(
            "ker mu ∩ ^M[G1,G1] = {kernel_meets_derived} is not trivial"
        ))
    } else {
        Some("mu does not restrict to an isomorphism of derived ideals".to_string())
    };

    let image_times_kernel_is_total = direct.then(|| {
        let g2 = &e2.total;
        let mut hit = vec![false; g2.order()];
        for g in e1.total.elements() {
            for &h in e2.kernel.members() {
                hit[g2.mul(m.mu.apply(g), h).index()] = true;
            }
        }
        hit.into_iter().all(|b| b)
    });

    Ok(IsoclinicMorphismReport {
        criterion,
        direct,
        agree: criterion == direct,
        nu_is_isomorphism,
        kernel_meets_derived,
        reason,
        image_times_kernel_is_total,
    })
}
