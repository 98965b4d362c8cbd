//! Property suites run over a corpus. Each suite expands into a
//! deterministic list of cases, runs them in parallel and reports them in
//! case order.

use std::fmt::Write as _;
use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{commutator_star_of_group, trivial_star_of_group};
use crate::corpus::{Corpus, NamedExtension};
use crate::error::{MlaError, Result};
use crate::fixtures::cyclic_trivial;
use crate::isoclinism::{
    find_extension_isoclinism, is_isoclinic_morphism, is_stem, make_extension, pullback_extension,
    stem_criterion, stem_reduce, verify_extension_isoclinism, verify_witness_properties,
    ExtensionMorphism,
};
use crate::morph::{are_isomorphic, find_isomorphism, for_each_isomorphism, MlaMap};
use crate::structure::{check_quotient_center_lemma, enumerate_ideals, m_derived, quotient};
use crate::tensor::{
    check_capability_condition, check_center_containments, check_tensor_quotient_iso,
    tensor_isoclinism_report, tensor_square, TensorOptions, TensorSquare,
};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Axioms,
    QuotientCenter,
    TensorQuotient,
    CenterContainment,
    Capability,
    TensorIsoclinism,
    WitnessProperties,
    IsoclinicMorphism,
    StemCriterion,
    StemReduce,
    Covers,
    Pullback,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Axioms,
        Suite::QuotientCenter,
        Suite::TensorQuotient,
        Suite::CenterContainment,
        Suite::Capability,
        Suite::TensorIsoclinism,
        Suite::WitnessProperties,
        Suite::IsoclinicMorphism,
        Suite::StemCriterion,
        Suite::StemReduce,
        Suite::Covers,
        Suite::Pullback,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::QuotientCenter => "quotient-center",
            Suite::TensorQuotient => "tensor-quotient",
            Suite::CenterContainment => "center-containment",
            Suite::Capability => "capability",
            Suite::TensorIsoclinism => "tensor-isoclinism",
            Suite::WitnessProperties => "witness-properties",
            Suite::IsoclinicMorphism => "isoclinic-morphism",
            Suite::StemCriterion => "stem-criterion",
            Suite::StemReduce => "stem-reduce",
            Suite::Covers => "covers",
            Suite::Pullback => "pullback",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }

    pub fn description(self) -> &'static str {
        match self {
            Suite::Axioms => {
                "corpus algebras and the trivial and commutator structures on their groups validate"
            }
            Suite::QuotientCenter => {
                "centres of G/I are images of centres of G when I misses the derived ideal"
            }
            Suite::TensorQuotient => "G/I ⊗ G/I ≅ (G⊗G)/((I⊗G)(G⊗I))",
            Suite::CenterContainment => "each centre pairs into the matching centre of G⊗G",
            Suite::Capability => "𝒵-equality for E gives (E/𝒵(E))⊗(E/𝒵(E)) ≅ (E⊗E)/𝒵(E⊗E)",
            Suite::TensorIsoclinism => {
                "isoclinic algebras with 𝒵-equality have isoclinic tensor squares"
            }
            Suite::WitnessProperties => {
                "extension isoclinisms transport brackets, kernels and central quotients"
            }
            Suite::IsoclinicMorphism => {
                "kernel criterion agrees with the definition of isoclinic morphisms"
            }
            Suite::StemCriterion => "ideal-intersection test agrees with H ⊆ ^M[G,G]",
            Suite::StemReduce => "every central extension reduces to an isoclinic stem extension",
            Suite::Covers => "supplied stem covers of the same algebra are mutually isoclinic",
            Suite::Pullback => "pullbacks along isomorphisms have kernel H₁×H₂ and order |G₁|·|H₂|",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseStatus {
    Pass,
    Fail,
    NotApplicable,
    BudgetExceeded,
}

impl CaseStatus {
    pub fn label(self) -> &'static str {
        match self {
            CaseStatus::Pass => "pass",
            CaseStatus::Fail => "fail",
            CaseStatus::NotApplicable => "not-applicable",
            CaseStatus::BudgetExceeded => "budget-exceeded",
        }
    }
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct CaseReport {
    pub case: String,
    pub status: CaseStatus,
    pub detail: Value,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct StatusCounts {
    pub pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
    pub budget_exceeded: usize,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: bool,
    pub counts: StatusCounts,
    pub warnings: Vec<String>,
    pub cases: Vec<CaseReport>,
    /// Wall-clock time; kept out of the structured report.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SuiteReport {
    fn new(suite: Suite, cases: Vec<CaseReport>, elapsed: Duration) -> SuiteReport {
        let mut counts = StatusCounts::default();
        for c in &cases {
            match c.status {
                CaseStatus::Pass => counts.pass += 1,
                CaseStatus::Fail => counts.fail += 1,
                CaseStatus::NotApplicable => counts.not_applicable += 1,
                CaseStatus::BudgetExceeded => counts.budget_exceeded += 1,
            }
        }
        let mut warnings = Vec::new();
        if counts.pass + counts.fail == 0 {
            warnings.push("vacuous: no applicable cases".to_string());
        }
        if counts.budget_exceeded > 0 {
            warnings.push(format!(
                "{} case(s) exceeded a budget or bound",
                counts.budget_exceeded
            ));
        }
        SuiteReport {
            suite,
            passed: counts.fail == 0,
            counts,
            warnings,
            cases,
            elapsed,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseReport> {
        self.cases.iter().filter(|c| c.status == CaseStatus::Fail)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Human-readable summary. Timing appears only here.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let c = &self.counts;
        let _ = writeln!(
            out,
            "suite {}: {} ({} pass, {} fail, {} not-applicable, {} budget-exceeded) in {:.2?}",
            self.suite.name(),
            if self.passed { "PASS" } else { "FAIL" },
            c.pass,
            c.fail,
            c.not_applicable,
            c.budget_exceeded,
            self.elapsed
        );
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        for f in self.failures() {
            let _ = writeln!(out, "fail {}: {}", f.case, f.detail);
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub tensor: TensorOptions,
    /// Largest algebra order for the quotient-centre suite.
    pub quotient_center_order: usize,
    /// Largest algebra order for the tensor-quotient suite.
    pub tensor_quotient_order: usize,
    /// Largest total order for the stem suites.
    pub stem_order: usize,
    /// Largest total order for the pairwise extension suites.
    pub pair_order: usize,
    /// Automorphism twists per extension in the morphism corpus.
    pub twists: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            tensor: TensorOptions::default(),
            quotient_center_order: 8,
            tensor_quotient_order: 6,
            stem_order: 16,
            pair_order: 8,
            twists: 2,
        }
    }
}

struct Outcome {
    status: CaseStatus,
    detail: Value,
}

impl Outcome {
    fn new(ok: bool, detail: Value) -> Outcome {
        Outcome {
            status: if ok {
                CaseStatus::Pass
            } else {
                CaseStatus::Fail
            },
            detail,
        }
    }

    fn not_applicable(detail: Value) -> Outcome {
        Outcome {
            status: CaseStatus::NotApplicable,
            detail,
        }
    }
}

fn is_budget(e: &MlaError) -> bool {
    matches!(
        e,
        MlaError::BudgetExceeded { .. }
            | MlaError::BoundExceeded { .. }
            | MlaError::OrderTooLarge { .. }
    )
}

fn from_error(e: MlaError) -> Outcome {
    Outcome {
        status: if is_budget(&e) {
            CaseStatus::BudgetExceeded
        } else {
            CaseStatus::Fail
        },
        detail: json!({ "error": e.to_string() }),
    }
}

type CaseFn<'a> = Box<dyn Fn() -> Result<Outcome> + Send + Sync + 'a>;

struct Case<'a> {
    name: String,
    run: CaseFn<'a>,
}

fn case<'a>(
    name: impl Into<String>,
    run: impl Fn() -> Result<Outcome> + Send + Sync + 'a,
) -> Case<'a> {
    Case {
        name: name.into(),
        run: Box::new(run),
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

/// Runs a suite over a loaded corpus.
pub fn run_suite(suite: Suite, corpus: &Corpus, opts: &SuiteOptions) -> Result<SuiteReport> {
    let start = Instant::now();
    let extensions;
    let pair_extensions;
    let tensors;
    let cases: Vec<Case> = match suite {
        Suite::Axioms => axiom_cases(corpus),
        Suite::QuotientCenter => quotient_center_cases(corpus, opts)?,
        Suite::TensorQuotient => tensor_quotient_cases(corpus, opts)?,
        Suite::CenterContainment => corpus
            .algebras
            .iter()
            .map(|(name, g)| {
                case(name.clone(), move || {
                    let r = check_center_containments(g, &opts.tensor)?;
                    Ok(Outcome::new(r.all_contained(), to_value(&r)))
                })
            })
            .collect(),
        Suite::Capability => corpus
            .algebras
            .iter()
            .map(|(name, g)| {
                case(name.clone(), move || {
                    let r = check_capability_condition(g, &opts.tensor)?;
                    let detail = to_value(&r);
                    Ok(match r.isomorphic {
                        None => Outcome::not_applicable(detail),
                        Some(ok) => Outcome::new(ok, detail),
                    })
                })
            })
            .collect(),
        Suite::TensorIsoclinism => {
            tensors = corpus
                .algebras
                .par_iter()
                .map(|(_, g)| tensor_square(g, &opts.tensor))
                .collect::<Vec<Result<TensorSquare>>>();
            tensor_isoclinism_cases(corpus, &tensors)
        }
        Suite::WitnessProperties => {
            pair_extensions = corpus.central_extensions(opts.pair_order)?;
            witness_property_cases(&pair_extensions)
        }
        Suite::IsoclinicMorphism => {
            pair_extensions = corpus.central_extensions(opts.pair_order)?;
            morphism_cases(&pair_extensions, opts.twists)?
        }
        Suite::StemCriterion => {
            extensions = corpus.central_extensions(opts.stem_order)?;
            extensions
                .iter()
                .map(|e| {
                    case(e.name.clone(), move || {
                        let r = stem_criterion(
                            &e.extension,
                            opts.stem_order.max(crate::structure::DEFAULT_IDEAL_BOUND),
                        )?;
                        Ok(Outcome::new(!r.finding, to_value(&r)))
                    })
                })
                .collect()
        }
        Suite::StemReduce => {
            extensions = corpus.central_extensions(opts.stem_order)?;
            extensions
                .iter()
                .map(|e| {
                    case(e.name.clone(), move || {
                        let r = stem_reduce(
                            &e.extension,
                            opts.stem_order.max(crate::structure::DEFAULT_IDEAL_BOUND),
                        )?;
                        Ok(Outcome::new(r.findings.is_empty(), r.summary()))
                    })
                })
                .collect()
        }
        Suite::Covers => cover_cases(corpus),
        Suite::Pullback => {
            pair_extensions = corpus.central_extensions(opts.pair_order)?;
            pullback_cases(&pair_extensions)
        }
    };
    let reports: Vec<CaseReport> = cases
        .par_iter()
        .map(|c| {
            let outcome = (c.run)().unwrap_or_else(from_error);
            CaseReport {
                case: c.name.clone(),
                status: outcome.status,
                detail: outcome.detail,
            }
        })
        .collect();
    Ok(SuiteReport::new(suite, reports, start.elapsed()))
}

fn axiom_cases(corpus: &Corpus) -> Vec<Case<'_>> {
    corpus
        .algebras
        .iter()
        .map(|(name, g)| {
            case(name.clone(), move || {
                let own = g.to_unchecked().validate();
                let trivial = trivial_star_of_group(format!("{name}/trivial"), g.group()).is_ok();
                let commutator =
                    commutator_star_of_group(format!("{name}/commutator"), g.group()).is_ok();
                let ok = own.valid && trivial && commutator;
                Ok(Outcome::new(
                    ok,
                    json!({
                        "order": g.order(),
                        "own": own.valid,
                        "trivial_star": trivial,
                        "commutator_star": commutator,
                    }),
                ))
            })
        })
        .collect()
}

fn quotient_center_cases<'a>(corpus: &'a Corpus, opts: &SuiteOptions) -> Result<Vec<Case<'a>>> {
    let mut cases = Vec::new();
    for (name, g) in corpus
        .algebras
        .iter()
        .filter(|(_, g)| g.order() <= opts.quotient_center_order)
    {
        for ideal in enumerate_ideals(g)? {
            cases.push(case(format!("{name}{ideal}"), move || {
                let r = check_quotient_center_lemma(g, &ideal)?;
                // absorption is only required on one side; the other must follow
                let right_absorption = ideal.absorbs_on_the_right(g);
                let mut detail = to_value(&r);
                detail["right_absorption"] = json!(right_absorption);
                let applicable = r
                    .clauses
                    .iter()
                    .any(|c| c.outcome != crate::structure::ClauseOutcome::NotApplicable);
                Ok(if r.any_failed() || !right_absorption {
                    Outcome::new(false, detail)
                } else if applicable {
                    Outcome::new(true, detail)
                } else {
                    Outcome::not_applicable(detail)
                })
            }));
        }
    }
    Ok(cases)
}

fn tensor_quotient_cases<'a>(corpus: &'a Corpus, opts: &'a SuiteOptions) -> Result<Vec<Case<'a>>> {
    let mut cases = Vec::new();
    for (name, g) in corpus
        .algebras
        .iter()
        .filter(|(_, g)| g.order() <= opts.tensor_quotient_order)
    {
        for ideal in enumerate_ideals(g)? {
            cases.push(case(format!("{name}{ideal}"), move || {
                let r = check_tensor_quotient_iso(g, &ideal, &opts.tensor)?;
                Ok(Outcome::new(r.isomorphic, to_value(&r)))
            }));
        }
    }
    Ok(cases)
}

fn tensor_isoclinism_cases<'a>(
    corpus: &'a Corpus,
    tensors: &'a [Result<TensorSquare>],
) -> Vec<Case<'a>> {
    let mut cases = Vec::new();
    let n = corpus.algebras.len();
    for i in 0..n {
        for j in i..n {
            let (n1, g1) = &corpus.algebras[i];
            let (n2, g2) = &corpus.algebras[j];
            cases.push(case(format!("{n1} ~ {n2}"), move || {
                let t1 = tensors[i].as_ref().map_err(clone_error)?;
                let t2 = tensors[j].as_ref().map_err(clone_error)?;
                let r = tensor_isoclinism_report(g1, t1, g2, t2);
                let detail = to_value(&r);
                Ok(match r.tensor_squares_isoclinic {
                    None => Outcome::not_applicable(detail),
                    Some(ok) => Outcome::new(ok, detail),
                })
            }));
        }
    }
    cases
}

/// Budget errors are re-raised as themselves; anything else as a message.
fn clone_error(e: &MlaError) -> MlaError {
    match e {
        MlaError::BudgetExceeded { budget } => MlaError::BudgetExceeded { budget: *budget },
        MlaError::BoundExceeded { what, order, bound } => MlaError::BoundExceeded {
            what,
            order: *order,
            bound: *bound,
        },
        MlaError::OrderTooLarge { order, max } => MlaError::OrderTooLarge {
            order: *order,
            max: *max,
        },
        other => MlaError::Structure(other.to_string()),
    }
}

/// Pairs `i ≤ j` whose quotients and derived ideals have equal orders.
fn comparable_pairs(exts: &[NamedExtension]) -> Vec<(usize, usize)> {
    let derived: Vec<usize> = exts
        .iter()
        .map(|e| m_derived(&e.extension.total).len())
        .collect();
    let mut out = Vec::new();
    for i in 0..exts.len() {
        for j in i..exts.len() {
            if exts[i].extension.quotient.order() == exts[j].extension.quotient.order()
                && derived[i] == derived[j]
            {
                out.push((i, j));
            }
        }
    }
    out
}

fn witness_property_cases(exts: &[NamedExtension]) -> Vec<Case<'_>> {
    comparable_pairs(exts)
        .into_iter()
        .map(|(i, j)| {
            let (a, b) = (&exts[i], &exts[j]);
            case(format!("{} ~ {}", a.name, b.name), move || {
                let (e1, e2) = (&a.extension, &b.extension);
                let Some(w) = find_extension_isoclinism(e1, e2)? else {
                    return Ok(Outcome::not_applicable(json!({ "isoclinic": false })));
                };
                let p = verify_witness_properties(e1, e2, &w)?;
                let both_stem = is_stem(e1) && is_stem(e2);
                let (k1, _) = crate::structure::restrict_to_subalgebra(&e1.total, &e1.kernel)?;
                let (k2, _) = crate::structure::restrict_to_subalgebra(&e2.total, &e2.kernel)?;
                let stem_kernels_isomorphic = !both_stem || are_isomorphic(&k1, &k2);
                Ok(Outcome::new(
                    p.all_hold() && stem_kernels_isomorphic,
                    json!({
                        "witness": w,
                        "properties": p,
                        "both_stem": both_stem,
                        "stem_kernels_isomorphic": stem_kernels_isomorphic,
                    }),
                ))
            })
        })
        .collect()
}

/// One constructed morphism of central extensions.
pub struct ConstructedMorphism {
    pub name: String,
    pub source: usize,
    pub target: NamedExtension,
    pub morphism: ExtensionMorphism,
}

/// Identities, quotient maps by ideals inside and outside the kernel,
/// automorphism twists, and the zero map to the trivial extension, for each
/// of the given extensions.
pub fn constructed_morphisms(
    exts: &[NamedExtension],
    twists: usize,
) -> Result<Vec<ConstructedMorphism>> {
    let trivial = NamedExtension {
        name: "c1{0}".into(),
        extension: make_extension(&cyclic_trivial(1), [crate::algebra::ElementId(0)])?,
        cover_of: None,
    };
    let mut out = Vec::new();
    for (index, src) in exts.iter().enumerate() {
        let e = &src.extension;
        let g = &e.total;
        out.push(ConstructedMorphism {
            name: format!("{} identity", src.name),
            source: index,
            target: src.clone(),
            morphism: ExtensionMorphism::from_mu(e, e, MlaMap::identity(g.order()))?,
        });
        for n in enumerate_ideals(g)?.into_iter().filter(|n| !n.is_trivial()) {
            let (q, pi) = quotient(g, &n)?;
            let target = make_extension(&q, e.kernel.members().iter().map(|&h| pi.apply(h)))?;
            let inside = if n.is_subset_of(&e.kernel) {
                "inside"
            } else {
                "outside"
            };
            let morphism = ExtensionMorphism::from_mu(e, &target, pi)?;
            out.push(ConstructedMorphism {
                name: format!("{} mod {n} ({inside} kernel)", src.name),
                source: index,
                target: NamedExtension {
                    name: format!("{}/{n}", src.name),
                    extension: target,
                    cover_of: None,
                },
                morphism,
            });
        }
        let mut autos = Vec::new();
        for_each_isomorphism(g, g, |m| {
            let preserves = e
                .kernel
                .members()
                .iter()
                .all(|&h| e.kernel.contains(m.apply(h)));
            if preserves && *m != MlaMap::identity(g.order()) {
                autos.push(m.clone());
            }
            if autos.len() >= twists {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        for (k, a) in autos.into_iter().enumerate() {
            out.push(ConstructedMorphism {
                name: format!("{} twist {k}", src.name),
                source: index,
                target: src.clone(),
                morphism: ExtensionMorphism::from_mu(e, e, a)?,
            });
        }
        out.push(ConstructedMorphism {
            name: format!("{} zero", src.name),
            source: index,
            target: trivial.clone(),
            morphism: ExtensionMorphism::from_mu(
                e,
                &trivial.extension,
                MlaMap::trivial(g.order()),
            )?,
        });
    }
    Ok(out)
}

fn morphism_cases(exts: &[NamedExtension], twists: usize) -> Result<Vec<Case<'_>>> {
    Ok(constructed_morphisms(exts, twists)?
        .into_iter()
        .map(|m| {
            let name = m.name.clone();
            case(name, move || {
                let r = is_isoclinic_morphism(
                    &exts[m.source].extension,
                    &m.target.extension,
                    &m.morphism,
                )?;
                let corollary = r.image_times_kernel_is_total != Some(false);
                Ok(Outcome::new(r.agree && corollary, to_value(&r)))
            })
        })
        .collect())
}

fn cover_cases(corpus: &Corpus) -> Vec<Case<'_>> {
    let covers: Vec<&NamedExtension> = corpus
        .extensions
        .iter()
        .filter(|e| e.cover_of.is_some())
        .collect();
    let mut cases = Vec::new();
    for &c in &covers {
        cases.push(case(c.name.clone(), move || {
            let k = c.cover_of.as_deref().expect("filtered on cover_of");
            let Some(base) = corpus.algebra(k) else {
                return Ok(Outcome::new(
                    false,
                    json!({ "error": format!("no corpus algebra named {k}") }),
                ));
            };
            let stem = is_stem(&c.extension);
            let quotient_matches = are_isomorphic(&c.extension.quotient, base);
            Ok(Outcome::new(
                stem && quotient_matches,
                json!({ "cover_of": k, "is_stem": stem, "quotient_matches": quotient_matches }),
            ))
        }));
    }
    for (i, &a) in covers.iter().enumerate() {
        for &b in &covers[i + 1..] {
            if a.cover_of != b.cover_of {
                continue;
            }
            cases.push(case(format!("{} ~ {}", a.name, b.name), move || {
                let w = find_extension_isoclinism(&a.extension, &b.extension)?;
                let verified = match &w {
                    Some(w) => verify_extension_isoclinism(&a.extension, &b.extension, w)?.is_ok(),
                    None => false,
                };
                Ok(Outcome::new(verified, json!({ "witness": w })))
            }));
        }
    }
    cases
}

fn pullback_cases(exts: &[NamedExtension]) -> Vec<Case<'_>> {
    let mut cases = Vec::new();
    for i in 0..exts.len() {
        for j in i..exts.len() {
            let (a, b) = (&exts[i], &exts[j]);
            if a.extension.quotient.order() != b.extension.quotient.order() {
                continue;
            }
            cases.push(case(format!("{} x {}", a.name, b.name), move || {
                let (e1, e2) = (&a.extension, &b.extension);
                let Some(nu) = find_isomorphism(&e1.quotient, &e2.quotient) else {
                    return Ok(Outcome::not_applicable(
                        json!({ "quotients_isomorphic": false }),
                    ));
                };
                let pb = pullback_extension(e1, e2, &nu)?;
                let order = pb.extension.total.order();
                let order_matches = pb.expected_order == Some(order);
                Ok(Outcome::new(
                    pb.kernel_matches && order_matches,
                    json!({
                        "nu": nu,
                        "order": order,
                        "expected_order": pb.expected_order,
                        "kernel_matches": pb.kernel_matches,
                    }),
                ))
            }));
        }
    }
    cases
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::write_shipped_corpus;

    fn shipped() -> Corpus {
        let dir = std::env::temp_dir().join(format!("mlat-suite-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&dir);
        write_shipped_corpus(&dir).unwrap();
        let c = Corpus::load(&dir).unwrap();
        std::fs::remove_dir_all(&dir).unwrap();
        c
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::from_name(s.name()), Some(s));
        }
        assert_eq!(Suite::from_name("nope"), None);
    }

    #[test]
    fn empty_corpus_is_vacuous() {
        let r = run_suite(
            Suite::QuotientCenter,
            &Corpus::default(),
            &SuiteOptions::default(),
        )
        .unwrap();
        assert!(r.passed);
        assert!(r.warnings.iter().any(|w| w.starts_with("vacuous")));
    }

    #[test]
    fn covers_pass_on_shipped_corpus() {
        let r = run_suite(Suite::Covers, &shipped(), &SuiteOptions::default()).unwrap();
        assert!(r.passed, "{}", r.to_text());
        assert_eq!(r.counts.pass, 3);
    }

    #[test]
    fn morphism_corpus_covers_every_kind() {
        let c = shipped();
        let exts = c.central_extensions(8).unwrap();
        let ms = constructed_morphisms(&exts, 2).unwrap();
        assert!(ms.len() >= 20);
        for kind in [
            "identity",
            "inside kernel",
            "outside kernel",
            "twist",
            "zero",
        ] {
            assert!(ms.iter().any(|m| m.name.contains(kind)), "{kind}");
        }
    }
}
