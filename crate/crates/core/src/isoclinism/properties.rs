//! Consequences of an extension isoclinism, checked on a concrete witness.

use serde::Serialize;

use crate::algebra::ElementId;
use crate::error::{MlaError, Result};
use crate::morph::MlaMap;
use crate::structure::joint_center;

use super::extension::CentralExtension;
use super::search::{verify_frames, Frame, IsoclinismWitness, WitnessKind};

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct WitnessProperties {
    /// `λ(β₁(x)) = β₂(μ(x))` for every `x ∈ ^M[G₁,G₁]`.
    pub projection_square: bool,
    /// `μ(^M[x, g₁]) = ^M[μ(x), g₂]` for every `x ∈ ^M[G₁,G₁]`, `g₁ ∈ G₁`,
    /// with `g₂` the least lift of `λ(β₁(g₁))`.
    pub bracket_transport: bool,
    /// `μ(H₁ ∩ ^M[G₁,G₁]) = H₂ ∩ ^M[G₂,G₂]`.
    pub kernel_intersection: bool,
    /// `λ` induces a well-defined map of central quotients.
    pub induced_well_defined: bool,
    /// The induced pair is an isoclinism of the total algebras.
    pub induced_isoclinism: bool,
    pub induced: Option<IsoclinismWitness>,
    /// `H₁ = 𝒵(G₁)` and `H₂ = 𝒵(G₂)` agree.
    pub center_biconditional: bool,
    /// Descriptions of every failed property.
    pub findings: Vec<String>,
}

impl WitnessProperties {
    pub fn all_hold(&self) -> bool {
        self.findings.is_empty()
    }
}

/// `^M[a, b] = (a ⋆ b)[a, b]`
fn m_bracket(g: &crate::algebra::FiniteMla, a: ElementId, b: ElementId) -> ElementId {
    g.mul(g.star(a, b), g.comm(a, b))
}

/// Checks the consequences of an extension isoclinism `(λ, μ)` between
/// `E₁` and `E₂`, including the induced isoclinism of the total algebras.
pub fn verify_witness_properties(
    e1: &CentralExtension,
    e2: &CentralExtension,
    w: &IsoclinismWitness,
) -> Result<WitnessProperties> {
    let f1 = Frame::for_extension(e1)?;
    let f2 = Frame::for_extension(e2)?;
    if w.kind != WitnessKind::Extension {
        return Err(MlaError::MalformedWitness(
            "expected an extension witness".into(),
        ));
    }
    if let Err(why) = verify_frames(&f1, &f2, w) {
        return Err(MlaError::MalformedWitness(why));
    }
    let (g1, g2) = (&e1.total, &e2.total);
    let mu_total = |x: ElementId| -> ElementId {
        let i = f1
            .derived_index(x)
            .expect("argument lies in the derived ideal");
        f2.embed.apply(w.mu.apply(i))
    };
    let mut findings = Vec::new();

    let projection_square = f1
        .embed
        .image()
        .iter()
        .all(|&x| w.lambda.apply(e1.proj.apply(x)) == e2.proj.apply(mu_total(x)));
    if !projection_square {
        findings.push("lambda . beta1 differs from beta2 . mu on the derived ideal".to_string());
    }

    let lift2 = &f2.lift;
    let mut bracket_transport = true;
    'outer: for &x in f1.embed.image() {
        for g in g1.elements() {
            let g2_lift = lift2[w.lambda.apply(e1.proj.apply(g)).index()];
            if mu_total(m_bracket(g1, x, g)) != m_bracket(g2, mu_total(x), g2_lift) {
                bracket_transport = false;
                findings.push(format!("bracket transport fails at ({x}, {g})"));
                break 'outer;
            }
        }
    }

    let image: Vec<ElementId> = {
        let mut v: Vec<ElementId> = f1
            .embed
            .image()
            .iter()
            .filter(|&&x| e1.kernel.contains(x))
            .map(|&x| mu_total(x))
            .collect();
        v.sort();
        v
    };
    let target: Vec<ElementId> = f2
        .embed
        .image()
        .iter()
        .copied()
        .filter(|&x| e2.kernel.contains(x))
        .collect();
    let kernel_intersection = image == target;
    if !kernel_intersection {
        findings.push("mu does not carry H1 ∩ ^M[G1,G1] onto H2 ∩ ^M[G2,G2]".to_string());
    }

    // λ̄(g₁𝒵(G₁)) = g₂𝒵(G₂) with β₂(g₂) = λ(β₁(g₁))
    let c1 = Frame::for_algebra(g1);
    let c2 = Frame::for_algebra(g2);
    let mut bar: Vec<Option<ElementId>> = vec![None; c1.quotient.order()];
    let mut induced_well_defined = true;
    for g in g1.elements() {
        let g2_lift = lift2[w.lambda.apply(e1.proj.apply(g)).index()];
        let value = c2.proj.apply(g2_lift);
        let slot = &mut bar[c1.proj.apply(g).index()];
        match slot {
            Some(prev) if *prev != value => {
                induced_well_defined = false;
                break;
            }
            _ => *slot = Some(value),
        }
    }
    let mut induced = None;
    let mut induced_isoclinism = false;
    if induced_well_defined && c1.quotient.order() == c2.quotient.order() {
        let lambda_bar = MlaMap::new(
            bar.into_iter()
                .map(|v| v.expect("every coset is hit"))
                .collect(),
        );
        // μ in the numbering of the algebra frames, which restrict the
        // same derived ideals
        let mu = MlaMap::new(
            c1.embed
                .image()
                .iter()
                .map(|&x| {
                    c2.derived_index(mu_total(x))
                        .expect("mu lands in the derived ideal")
                })
                .collect(),
        );
        let candidate = IsoclinismWitness {
            lambda: lambda_bar,
            mu,
            kind: WitnessKind::Algebra,
        };
        match verify_frames(&c1, &c2, &candidate) {
            Ok(()) => {
                induced_isoclinism = true;
                induced = Some(candidate);
            }
            Err(why) => findings.push(format!("induced algebra isoclinism fails: {why}")),
        }
    } else {
        findings.push("lambda does not induce a map of central quotients".to_string());
    }

    let center_biconditional = (e1.kernel == joint_center(g1)) == (e2.kernel == joint_center(g2));
    if !center_biconditional {
        findings
            .push("exactly one kernel equals the joint centre of its total algebra".to_string());
    }

    Ok(WitnessProperties {
        projection_square,
        bracket_transport,
        kernel_intersection,
        induced_well_defined,
        induced_isoclinism,
        induced,
        center_biconditional,
        findings,
    })
}
