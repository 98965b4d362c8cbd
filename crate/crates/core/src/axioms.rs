//! The five defining identities of a multiplicative Lie algebra, checked
//! exhaustively over a table.
//!
//! For every axiom the report carries the lexicographically least failing
//! tuple, so reports are deterministic and a parallel sweep merges to the
//! same bytes as a sequential one.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{ElementId, MlaTables};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Axiom {
    /// `x ⋆ x = 1`
    #[serde(rename = "1")]
    Alternating,
    /// `x ⋆ (yz) = (x ⋆ y) · ^y(x ⋆ z)`
    #[serde(rename = "2")]
    RightExpansion,
    /// `(xy) ⋆ z = ^x(y ⋆ z) · (x ⋆ z)`
    #[serde(rename = "3")]
    LeftExpansion,
    /// `((x⋆y)⋆^y z)((y⋆z)⋆^z x)((z⋆x)⋆^x y) = 1`
    #[serde(rename = "4")]
    Jacobi,
    /// `^z(x ⋆ y) = ^z x ⋆ ^z y`
    #[serde(rename = "5")]
    Equivariance,
}

impl Axiom {
    pub const ALL: [Axiom; 5] = [
        Axiom::Alternating,
        Axiom::RightExpansion,
        Axiom::LeftExpansion,
        Axiom::Jacobi,
        Axiom::Equivariance,
    ];

    pub fn number(self) -> u8 {
        self as u8 + 1
    }

    /// Number of elements in a witness tuple.
    pub fn arity(self) -> usize {
        match self {
            Axiom::Alternating => 1,
            _ => 3,
        }
    }

    /// Evaluates the identity on one tuple. Panics if the tuple has the
    /// wrong arity.
    pub fn holds(self, t: &MlaTables, w: &[ElementId]) -> bool {
        assert_eq!(
            w.len(),
            self.arity(),
            "witness arity for axiom {}",
            self.number()
        );
        match self {
            Axiom::Alternating => t.star(w[0], w[0]).is_identity(),
            Axiom::RightExpansion => right_expansion(t, w[0], w[1], w[2]),
            Axiom::LeftExpansion => left_expansion(t, w[0], w[1], w[2]),
            Axiom::Jacobi => jacobi(t, w[0], w[1], w[2]),
            Axiom::Equivariance => equivariance(t, w[0], w[1], w[2]),
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "axiom {}", self.number())
    }
}

#[inline]
fn right_expansion(t: &MlaTables, x: ElementId, y: ElementId, z: ElementId) -> bool {
    let lhs = t.star(x, t.mul(y, z));
    let rhs = t.mul(t.star(x, y), t.conj(y, t.star(x, z)));
    lhs == rhs
}

#[inline]
fn left_expansion(t: &MlaTables, x: ElementId, y: ElementId, z: ElementId) -> bool {
    let lhs = t.star(t.mul(x, y), z);
    let rhs = t.mul(t.conj(x, t.star(y, z)), t.star(x, z));
    lhs == rhs
}

#[inline]
fn jacobi(t: &MlaTables, x: ElementId, y: ElementId, z: ElementId) -> bool {
    let a = t.star(t.star(x, y), t.conj(y, z));
    let b = t.star(t.star(y, z), t.conj(z, x));
    let c = t.star(t.star(z, x), t.conj(x, y));
    t.mul(t.mul(a, b), c).is_identity()
}

#[inline]
fn equivariance(t: &MlaTables, x: ElementId, y: ElementId, z: ElementId) -> bool {
    t.conj(z, t.star(x, y)) == t.star(t.conj(z, x), t.conj(z, y))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<ElementId>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn from_least(least: [Option<Vec<ElementId>>; 5]) -> Self {
        let violations: Vec<Violation> = Axiom::ALL
            .iter()
            .zip(least)
            .filter_map(|(&axiom, w)| w.map(|witness| Violation { axiom, witness }))
            .collect();
        ValidationReport {
            valid: violations.is_empty(),
            violations,
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.valid {
            return write!(f, "valid");
        }
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|v| {
                let w: Vec<String> = v.witness.iter().map(ToString::to_string).collect();
                format!("{} fails at ({})", v.axiom, w.join(", "))
            })
            .collect();
        write!(f, "invalid: {}", parts.join("; "))
    }
}

/// Least failing tuples for all five axioms with first coordinate `x`.
fn sweep_row(t: &MlaTables, x: ElementId) -> [Option<Vec<ElementId>>; 5] {
    let mut least: [Option<Vec<ElementId>>; 5] = Default::default();
    if !t.star(x, x).is_identity() {
        least[0] = Some(vec![x]);
    }
    for y in t.elements() {
        for z in t.elements() {
            for (slot, axiom) in Axiom::ALL.iter().enumerate().skip(1) {
                if least[slot].is_some() {
                    continue;
                }
                let ok = match axiom {
                    Axiom::RightExpansion => right_expansion(t, x, y, z),
                    Axiom::LeftExpansion => left_expansion(t, x, y, z),
                    Axiom::Jacobi => jacobi(t, x, y, z),
                    Axiom::Equivariance => equivariance(t, x, y, z),
                    Axiom::Alternating => unreachable!(),
                };
                if !ok {
                    least[slot] = Some(vec![x, y, z]);
                }
            }
        }
    }
    least
}

fn merge(
    mut acc: [Option<Vec<ElementId>>; 5],
    other: [Option<Vec<ElementId>>; 5],
) -> [Option<Vec<ElementId>>; 5] {
    for (a, b) in acc.iter_mut().zip(other) {
        *a = match (a.take(), b) {
            (Some(p), Some(q)) => Some(p.min(q)),
            (p, q) => p.or(q),
        };
    }
    acc
}

/// Checks all five identities over every tuple; `O(n³)` lookups.
///
/// A constant-identity `⋆` satisfies every identity, so that case returns
/// immediately.
pub fn validate_axioms(t: &MlaTables) -> ValidationReport {
    if t.star_is_trivial() {
        return ValidationReport::from_least(Default::default());
    }
    let least = t
        .elements()
        .map(|x| sweep_row(t, x))
        .fold(Default::default(), merge);
    ValidationReport::from_least(least)
}

/// Same report as [`validate_axioms`], with rows of the tuple space swept on
/// the current rayon pool.
pub fn validate_axioms_parallel(t: &MlaTables) -> ValidationReport {
    if t.star_is_trivial() {
        return ValidationReport::from_least(Default::default());
    }
    let least = t
        .elements()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|x| sweep_row(t, x))
        .reduce(Default::default, merge);
    ValidationReport::from_least(least)
}
