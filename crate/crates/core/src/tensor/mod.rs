//! Non-abelian tensor squares `G ⊗ G` for the conjugation self-action with
//! pairing `⋆`, and checks of their relationship to centres, quotients and
//! isoclinism.
//!
//! Two constructions are available. Enumeration runs coset enumeration on
//! the defining presentation (`n²` symbols, `4n³` relators) and extends `⋆`
//! from the symbols. The decomposition method handles abelian algebras with
//! trivial `⋆` through a cyclic decomposition.

pub mod enumerate;
pub mod extend;
pub mod presentation;
pub mod snf;

use serde::{Deserialize, Serialize};

use crate::algebra::{ElementId, FiniteMla, DEFAULT_MAX_ORDER};
use crate::error::{MlaError, Result};
use crate::isoclinism::{find_isoclinism, IsoclinismWitness};
use crate::morph::{find_isomorphism, MlaMap};
use crate::structure::{closure_ideal, joint_center, quotient, CenterKind, SubSet};

pub use enumerate::{enumerate_presented_group, EnumeratedGroup, DEFAULT_BUDGET};
pub use extend::extend_star;
pub use presentation::{
    tensor_presentation, Letter, Presentation, Word, DEFAULT_ENUMERATION_BOUND,
};
pub use snf::{
    abelian_tensor_square, cyclic_decomposition, CyclicDecomposition, DEFAULT_SNF_BOUND,
};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TensorMethod {
    Snf,
    Enumeration,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodChoice {
    #[default]
    Auto,
    Snf,
    Enumeration,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TensorOptions {
    pub method: MethodChoice,
    /// Maximum live rows during coset enumeration.
    pub budget: usize,
    pub enumeration_bound: usize,
    pub snf_bound: usize,
    pub max_order: usize,
}

impl Default for TensorOptions {
    fn default() -> Self {
        TensorOptions {
            method: MethodChoice::Auto,
            budget: DEFAULT_BUDGET,
            enumeration_bound: DEFAULT_ENUMERATION_BOUND,
            snf_bound: DEFAULT_SNF_BOUND,
            max_order: DEFAULT_MAX_ORDER,
        }
    }
}

impl TensorOptions {
    pub fn with_method(self, method: MethodChoice) -> Self {
        TensorOptions { method, ..self }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorSquare {
    pub algebra: FiniteMla,
    /// `gen_map[x][y]` realizes `x ⊗ y`.
    pub gen_map: Vec<Vec<ElementId>>,
    pub method: TensorMethod,
}

impl TensorSquare {
    #[inline]
    pub fn symbol(&self, x: ElementId, y: ElementId) -> ElementId {
        self.gen_map[x.index()][y.index()]
    }
}

fn snf_applies(g: &FiniteMla) -> bool {
    g.is_abelian() && g.star_is_trivial()
}

/// Computes `G ⊗ G`. `Auto` uses the decomposition method whenever `G` is
/// abelian with trivial `⋆`, and enumeration otherwise.
pub fn tensor_square(g: &FiniteMla, opts: &TensorOptions) -> Result<TensorSquare> {
    let method = match opts.method {
        MethodChoice::Snf => TensorMethod::Snf,
        MethodChoice::Enumeration => TensorMethod::Enumeration,
        MethodChoice::Auto if snf_applies(g) => TensorMethod::Snf,
        MethodChoice::Auto => TensorMethod::Enumeration,
    };
    let name = format!("{}⊗{}", g.name(), g.name());
    match method {
        TensorMethod::Snf => {
            let (algebra, gen_map) = abelian_tensor_square(g, opts.snf_bound, opts.max_order)?;
            Ok(TensorSquare {
                algebra: algebra.with_name(name),
                gen_map,
                method,
            })
        }
        TensorMethod::Enumeration => {
            let n = g.order();
            let p = tensor_presentation(g, opts.enumeration_bound)?;
            let e = enumerate_presented_group(&p, opts.budget)?;
            if e.order() > opts.max_order {
                return Err(MlaError::OrderTooLarge {
                    order: e.order(),
                    max: opts.max_order,
                });
            }
            let algebra = extend_star(name, &e, |i, j| e.evaluate(&p.star_on_generators[i][j]))?;
            let gen_map = (0..n)
                .map(|x| (0..n).map(|y| e.generator_images[x * n + y]).collect())
                .collect();
            Ok(TensorSquare {
                algebra,
                gen_map,
                method,
            })
        }
    }
}

/// A defining relation of the tensor square that fails in a computed table.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct RelationFailure {
    /// 0 for the identity-slot rule, 1 to 5 for the defining relations.
    pub relation: u8,
    pub tuple: Vec<ElementId>,
}

/// Re-checks the defining relations through the symbol table over all
/// tuples of the base algebra.
pub fn check_defining_relations(
    g: &FiniteMla,
    t: &TensorSquare,
) -> std::result::Result<(), RelationFailure> {
    let a = &t.algebra;
    let s = |x, y| t.symbol(x, y);
    let fail = |relation, tuple: &[ElementId]| {
        Err(RelationFailure {
            relation,
            tuple: tuple.to_vec(),
        })
    };
    for x in g.elements() {
        if !s(x, ElementId::IDENTITY).is_identity() || !s(ElementId::IDENTITY, x).is_identity() {
            return fail(0, &[x]);
        }
    }
    for x in g.elements() {
        for y in g.elements() {
            for z in g.elements() {
                if s(x, g.mul(y, z)) != a.mul(s(x, y), s(g.conj(y, x), g.conj(y, z))) {
                    return fail(1, &[x, y, z]);
                }
                if s(g.mul(x, z), y) != a.mul(s(g.conj(x, z), g.conj(x, y)), s(x, y)) {
                    return fail(2, &[x, z, y]);
                }
                let r3 = a.mul(
                    a.mul(
                        s(g.star(x, z), g.conj(z, y)),
                        a.inv(s(g.conj(y, x), g.star(z, y))),
                    ),
                    a.inv(s(g.conj(x, z), g.inv(g.star(x, y)))),
                );
                if !r3.is_identity() {
                    return fail(3, &[x, z, y]);
                }
                let r4 = a.mul(
                    a.mul(
                        s(g.conj(z, x), g.star(y, z)),
                        a.inv(s(g.inv(g.star(y, x)), g.conj(y, z))),
                    ),
                    a.inv(s(g.star(z, x), g.conj(x, y))),
                );
                if !r4.is_identity() {
                    return fail(4, &[x, y, z]);
                }
            }
        }
    }
    for x in g.elements() {
        for y in g.elements() {
            for x2 in g.elements() {
                for y2 in g.elements() {
                    let lhs = a.star(s(x, y), s(x2, y2));
                    let rhs = s(g.inv(g.star(y, x)), g.star(x2, y2));
                    if lhs != rhs {
                        return fail(5, &[x, y, x2, y2]);
                    }
                }
            }
        }
    }
    Ok(())
}

/// Checks `[x⊗y, x′⊗y′] = [x,y] ⊗ [x′,y′]` over all base tuples; returns the
/// least failing tuple.
pub fn check_commutator_identity(g: &FiniteMla, t: &TensorSquare) -> Option<[ElementId; 4]> {
    let a = &t.algebra;
    for x in g.elements() {
        for y in g.elements() {
            for x2 in g.elements() {
                for y2 in g.elements() {
                    let lhs = a.comm(t.symbol(x, y), t.symbol(x2, y2));
                    let rhs = t.symbol(g.comm(x, y), g.comm(x2, y2));
                    if lhs != rhs {
                        return Some([x, y, x2, y2]);
                    }
                }
            }
        }
    }
    None
}

/// The ideal `(I⊗G)(G⊗I)` of the tensor square.
pub fn pair_ideal(t: &TensorSquare, ideal: &SubSet) -> SubSet {
    let n = t.gen_map.len();
    let mut seed = Vec::new();
    for &i in ideal.members() {
        for g in 0..n {
            let g = ElementId::new(g);
            seed.push(t.symbol(i, g));
            seed.push(t.symbol(g, i));
        }
    }
    closure_ideal(&t.algebra, seed)
}

fn require_ideal(g: &FiniteMla, ideal: &SubSet) -> Result<()> {
    if ideal.parent_order() != g.order() || !ideal.is_ideal(g) {
        return Err(MlaError::NotIdeal(format!("{ideal} in {}", g.name())));
    }
    Ok(())
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct TensorQuotientReport {
    pub ideal: SubSet,
    /// `|G/I ⊗ G/I|`
    pub left_order: usize,
    /// `|(G⊗G)/((I⊗G)(G⊗I))|`
    pub right_order: usize,
    pub isomorphic: bool,
    pub witness: Option<MlaMap>,
}

/// Compares `G/I ⊗ G/I` with `(G⊗G)/((I⊗G)(G⊗I))` by isomorphism search.
pub fn check_tensor_quotient_iso(
    g: &FiniteMla,
    ideal: &SubSet,
    opts: &TensorOptions,
) -> Result<TensorQuotientReport> {
    require_ideal(g, ideal)?;
    let t = tensor_square(g, opts)?;
    let (q, _) = quotient(g, ideal)?;
    let tq = tensor_square(&q, opts)?;
    let p = pair_ideal(&t, ideal);
    let (right, _) = quotient(&t.algebra, &p)?;
    let witness = find_isomorphism(&tq.algebra, &right);
    Ok(TensorQuotientReport {
        ideal: ideal.clone(),
        left_order: tq.algebra.order(),
        right_order: right.order(),
        isomorphic: witness.is_some(),
        witness,
    })
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ContainmentClause {
    pub center: CenterKind,
    /// `(C⊗G)(G⊗C)` for the centre `C` of the base.
    pub pair_ideal: SubSet,
    /// The same kind of centre of the tensor square.
    pub tensor_center: SubSet,
    pub contained: bool,
    pub equal: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ContainmentReport {
    pub tensor_order: usize,
    pub method: TensorMethod,
    pub clauses: Vec<ContainmentClause>,
}

impl ContainmentReport {
    pub fn all_contained(&self) -> bool {
        self.clauses.iter().all(|c| c.contained)
    }
}

pub fn center_containments(g: &FiniteMla, t: &TensorSquare) -> ContainmentReport {
    let clauses = CenterKind::ALL
        .iter()
        .map(|&kind| {
            let p = pair_ideal(t, &kind.center(g));
            let c = kind.center(&t.algebra);
            ContainmentClause {
                center: kind,
                contained: p.is_subset_of(&c),
                equal: p == c,
                pair_ideal: p,
                tensor_center: c,
            }
        })
        .collect();
    ContainmentReport {
        tensor_order: t.algebra.order(),
        method: t.method,
        clauses,
    }
}

/// Checks that each centre pairs into the matching centre of `G ⊗ G`,
/// recording whether the containment is an equality.
pub fn check_center_containments(g: &FiniteMla, opts: &TensorOptions) -> Result<ContainmentReport> {
    let t = tensor_square(g, opts)?;
    Ok(center_containments(g, &t))
}

/// Whether `𝒵(G⊗G) = (𝒵(G)⊗G)(G⊗𝒵(G))`.
pub fn joint_center_equality(g: &FiniteMla, t: &TensorSquare) -> bool {
    pair_ideal(t, &joint_center(g)) == joint_center(&t.algebra)
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CapabilityReport {
    /// `𝒵(E⊗E) = (𝒵(E)⊗E)(E⊗𝒵(E))`
    pub premise: bool,
    pub tensor_order: usize,
    pub tensor_center_order: usize,
    /// `|E/𝒵(E)|`
    pub central_quotient_order: usize,
    /// Isomorphism `(E/𝒵(E)) ⊗ (E/𝒵(E)) → (E⊗E)/𝒵(E⊗E)` when the premise
    /// holds.
    pub witness: Option<MlaMap>,
    pub isomorphic: Option<bool>,
}

/// Evaluates the premise of the capability statement for `E` and, when it
/// holds, produces the isomorphism `G⊗G ≅ (E⊗E)/𝒵(E⊗E)` for `G = E/𝒵(E)`.
pub fn check_capability_condition(e: &FiniteMla, opts: &TensorOptions) -> Result<CapabilityReport> {
    let t = tensor_square(e, opts)?;
    let z = joint_center(e);
    let zt = joint_center(&t.algebra);
    let premise = pair_ideal(&t, &z) == zt;
    let (g, _) = quotient(e, &z)?;
    let (witness, isomorphic) = if premise {
        let tg = tensor_square(&g, opts)?;
        let (right, _) = quotient(&t.algebra, &zt)?;
        let w = find_isomorphism(&tg.algebra, &right);
        let found = w.is_some();
        (w, Some(found))
    } else {
        (None, None)
    };
    Ok(CapabilityReport {
        premise,
        tensor_order: t.algebra.order(),
        tensor_center_order: zt.len(),
        central_quotient_order: g.order(),
        witness,
        isomorphic,
    })
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct TensorIsoclinismReport {
    pub algebras_isoclinic: bool,
    /// The joint-centre equality for each of the two algebras.
    pub center_equality: [bool; 2],
    pub hypotheses_hold: bool,
    pub tensor_orders: [usize; 2],
    /// Set when the hypotheses hold.
    pub tensor_squares_isoclinic: Option<bool>,
    pub witness: Option<IsoclinismWitness>,
}

/// Checks the hypotheses (isoclinic algebras, joint-centre equality for
/// both) and, when they hold, searches for an isoclinism of the tensor
/// squares.
pub fn check_tensor_isoclinism(
    g1: &FiniteMla,
    g2: &FiniteMla,
    opts: &TensorOptions,
) -> Result<TensorIsoclinismReport> {
    let t1 = tensor_square(g1, opts)?;
    let t2 = tensor_square(g2, opts)?;
    Ok(tensor_isoclinism_report(g1, &t1, g2, &t2))
}

/// [`check_tensor_isoclinism`] on tensor squares computed beforehand.
pub fn tensor_isoclinism_report(
    g1: &FiniteMla,
    t1: &TensorSquare,
    g2: &FiniteMla,
    t2: &TensorSquare,
) -> TensorIsoclinismReport {
    let algebras_isoclinic = find_isoclinism(g1, g2).is_some();
    let center_equality = [joint_center_equality(g1, t1), joint_center_equality(g2, t2)];
    let hypotheses_hold = algebras_isoclinic && center_equality.iter().all(|&b| b);
    let (tensor_squares_isoclinic, witness) = if hypotheses_hold {
        let w = find_isoclinism(&t1.algebra, &t2.algebra);
        (Some(w.is_some()), w)
    } else {
        (None, None)
    };
    TensorIsoclinismReport {
        algebras_isoclinic,
        center_equality,
        hypotheses_hold,
        tensor_orders: [t1.algebra.order(), t2.algebra.order()],
        tensor_squares_isoclinic,
        witness,
    }
}
