//! Reduction of a central extension to an isoclinic one by factoring out a
//! kernel ideal that misses `^M[G,G]`.

use serde::Serialize;

use crate::error::{MlaError, Result};
use crate::structure::{enumerate_ideals_bounded, m_derived, SubSet};

use super::extension::{is_stem, make_extension, CentralExtension};
use super::search::{find_extension_isoclinism, verify_extension_isoclinism, IsoclinismWitness};

#[derive(Clone, Debug)]
pub struct StemReduction {
    /// The ideal `J ⊆ H` factored out.
    pub j: SubSet,
    /// `G/J` over the image of `H`.
    pub reduced: CentralExtension,
    pub witness: Option<IsoclinismWitness>,
    pub is_stem: bool,
    /// Failed expectations: the reduced extension is not stem, or no
    /// verified isoclinism to the original was found.
    pub findings: Vec<String>,
}

#[derive(Serialize)]
struct StemReductionSummary<'a> {
    j: &'a SubSet,
    reduced_order: usize,
    reduced_kernel: &'a SubSet,
    witness: &'a Option<IsoclinismWitness>,
    is_stem: bool,
    findings: &'a [String],
}

impl StemReduction {
    pub fn summary(&self) -> serde_json::Value {
        serde_json::to_value(StemReductionSummary {
            j: &self.j,
            reduced_order: self.reduced.total.order(),
            reduced_kernel: &self.reduced.kernel,
            witness: &self.witness,
            is_stem: self.is_stem,
            findings: &self.findings,
        })
        .expect("summary serializes")
    }
}

/// Picks the largest ideal `J ⊆ H` with `J ∩ ^M[G,G] = 1` (least member list
/// among those of maximal size) and forms `E_J: 1 → H/J → G/J → K → 1`.
pub fn stem_reduce(e: &CentralExtension, ideal_bound: usize) -> Result<StemReduction> {
    let derived = m_derived(&e.total);
    let ideals = enumerate_ideals_bounded(&e.total, ideal_bound)?;
    let mut j = SubSet::trivial(e.total.order());
    for i in ideals {
        if i.is_subset_of(&e.kernel) && i.intersection(&derived).is_trivial() && i.len() > j.len() {
            j = i;
        }
    }
    let (g_j, pi) = crate::structure::quotient(&e.total, &j)?;
    let g_j = g_j.with_name(format!("{}/J", e.total.name()));
    let reduced = make_extension(&g_j, e.kernel.members().iter().map(|&h| pi.apply(h)))?;
    let stem = is_stem(&reduced);
    let mut findings = Vec::new();
    if !stem {
        findings.push(format!(
            "reduced extension is not stem: kernel {} not inside ^M[G,G]",
            reduced.kernel
        ));
    }
    let witness = find_extension_isoclinism(e, &reduced)?;
    match &witness {
        Some(w) => {
            if let Err(why) = verify_extension_isoclinism(e, &reduced, w)? {
                return Err(MlaError::MalformedWitness(why));
            }
        }
        None => findings.push("no isoclinism between the extension and its reduction".to_string()),
    }
    Ok(StemReduction {
        j,
        reduced,
        witness,
        is_stem: stem,
        findings,
    })
}
