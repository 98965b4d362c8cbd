//! Table representation of finite groups and finite multiplicative Lie
//! algebras.
//!
//! Elements are numbered `0..n` and `0` is always the group identity. Tables
//! are stored row-major: `mul[x][y]` is the product `x·y`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::axioms::{validate_axioms, ValidationReport};
use crate::error::{MlaError, Result};

/// Default upper bound on the order of any algebra the workbench builds.
pub const DEFAULT_MAX_ORDER: usize = 4096;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementId(pub u32);

impl ElementId {
    pub const IDENTITY: ElementId = ElementId(0);

    #[inline]
    pub fn new(index: usize) -> Self {
        ElementId(index as u32)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_identity(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub(crate) fn ids(
    n: usize,
) -> impl DoubleEndedIterator<Item = ElementId> + ExactSizeIterator + Clone {
    (0..n as u32).map(ElementId)
}

/// A checked finite group multiplication table with its inverse table.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupTable {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

impl GroupTable {
    /// Checks a square table for the group laws: entries in range, identity
    /// at 0, Latin-square rows and columns, associativity. Errors name the
    /// first offending cell.
    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(MlaError::Structure("empty multiplication table".into()));
        }
        for (x, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(MlaError::Structure(format!(
                    "row {x} has length {} but the table has {n} rows",
                    row.len()
                )));
            }
            if let Some(y) = row.iter().position(|&v| v as usize >= n) {
                return Err(MlaError::Structure(format!(
                    "entry mul[{x}][{y}] = {} out of range",
                    row[y]
                )));
            }
        }
        let mul: Vec<u32> = rows.iter().flatten().copied().collect();
        Self::from_flat(n, mul)
    }

    pub(crate) fn from_flat(n: usize, mul: Vec<u32>) -> Result<Self> {
        debug_assert_eq!(mul.len(), n * n);
        let at = |x: usize, y: usize| mul[x * n + y] as usize;

        for x in 0..n {
            if at(0, x) != x {
                return Err(MlaError::Structure(format!(
                    "no identity at 0: mul[0][{x}] = {}",
                    at(0, x)
                )));
            }
            if at(x, 0) != x {
                return Err(MlaError::Structure(format!(
                    "no identity at 0: mul[{x}][0] = {}",
                    at(x, 0)
                )));
            }
        }

        let mut seen = vec![false; n];
        for x in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for y in 0..n {
                let v = at(x, y);
                if std::mem::replace(&mut seen[v], true) {
                    return Err(MlaError::Structure(format!("row {x} not a permutation")));
                }
            }
        }
        for y in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for x in 0..n {
                let v = at(x, y);
                if std::mem::replace(&mut seen[v], true) {
                    return Err(MlaError::Structure(format!("column {y} not a permutation")));
                }
            }
        }

        // Light's test: the set of z with (xy)z = x(yz) for all x, y is closed
        // under multiplication, so it is enough to test a generating set.
        let gens = multiplicative_generators(n, &mul);
        for x in 0..n {
            for y in 0..n {
                let xy = at(x, y);
                for &g in &gens {
                    if at(xy, g) != at(x, at(y, g)) {
                        return Err(MlaError::Structure(format!(
                            "not associative at ({x}, {y}, {g})"
                        )));
                    }
                }
            }
        }

        let inv = (0..n)
            .map(|x| {
                let y = (0..n)
                    .find(|&y| at(x, y) == 0)
                    .expect("Latin row contains the identity");
                if at(y, x) != 0 {
                    return Err(MlaError::Structure(format!(
                        "element {x} has no two-sided inverse"
                    )));
                }
                Ok(y as u32)
            })
            .collect::<Result<Vec<u32>>>()?;

        Ok(GroupTable { order: n, mul, inv })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, x: ElementId, y: ElementId) -> ElementId {
        ElementId(self.mul[x.index() * self.order + y.index()])
    }

    #[inline]
    pub fn inv(&self, x: ElementId) -> ElementId {
        ElementId(self.inv[x.index()])
    }

    /// `x y x⁻¹`
    #[inline]
    pub fn conj(&self, x: ElementId, y: ElementId) -> ElementId {
        self.mul(self.mul(x, y), self.inv(x))
    }

    /// `x y x⁻¹ y⁻¹`
    #[inline]
    pub fn comm(&self, x: ElementId, y: ElementId) -> ElementId {
        self.mul(self.mul(self.mul(x, y), self.inv(x)), self.inv(y))
    }

    pub fn elements(
        &self,
    ) -> impl DoubleEndedIterator<Item = ElementId> + ExactSizeIterator + Clone {
        ids(self.order)
    }

    pub fn element_order(&self, x: ElementId) -> usize {
        let mut k = 1;
        let mut p = x;
        while !p.is_identity() {
            p = self.mul(p, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|x| self.elements().all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.mul.chunks(self.order).map(<[u32]>::to_vec).collect()
    }
}

/// Greedy generating set of a finite Latin square with identity, closed under
/// multiplication only.
fn multiplicative_generators(n: usize, mul: &[u32]) -> Vec<usize> {
    let mut inside = vec![false; n];
    inside[0] = true;
    let mut members = vec![0usize];
    let mut gens = Vec::new();
    for g in 1..n {
        if inside[g] {
            continue;
        }
        gens.push(g);
        let mut i = members.len();
        inside[g] = true;
        members.push(g);
        // each new member is multiplied against everything before it
        while i < members.len() {
            let a = members[i];
            for j in 0..=i {
                let b = members[j];
                for c in [mul[a * n + b] as usize, mul[b * n + a] as usize] {
                    if !inside[c] {
                        inside[c] = true;
                        members.push(c);
                    }
                }
            }
            i += 1;
        }
        if members.len() == n {
            break;
        }
    }
    gens
}

/// Group table plus a `⋆` table; the `⋆` table is not assumed to satisfy the
/// axioms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MlaTables {
    group: GroupTable,
    star: Vec<u32>,
}

impl MlaTables {
    pub fn new(group: GroupTable, star: Vec<u32>) -> Result<Self> {
        let n = group.order();
        if star.len() != n * n {
            return Err(MlaError::Structure(format!(
                "star table has {} entries, expected {}",
                star.len(),
                n * n
            )));
        }
        if let Some(pos) = star.iter().position(|&v| v as usize >= n) {
            return Err(MlaError::Structure(format!(
                "entry star[{}][{}] = {} out of range",
                pos / n,
                pos % n,
                star[pos]
            )));
        }
        Ok(MlaTables { group, star })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.group.order
    }

    #[inline]
    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    #[inline]
    pub fn mul(&self, x: ElementId, y: ElementId) -> ElementId {
        self.group.mul(x, y)
    }

    #[inline]
    pub fn inv(&self, x: ElementId) -> ElementId {
        self.group.inv(x)
    }

    #[inline]
    pub fn conj(&self, x: ElementId, y: ElementId) -> ElementId {
        self.group.conj(x, y)
    }

    #[inline]
    pub fn comm(&self, x: ElementId, y: ElementId) -> ElementId {
        self.group.comm(x, y)
    }

    #[inline]
    pub fn star(&self, x: ElementId, y: ElementId) -> ElementId {
        ElementId(self.star[x.index() * self.group.order + y.index()])
    }

    pub fn elements(
        &self,
    ) -> impl DoubleEndedIterator<Item = ElementId> + ExactSizeIterator + Clone {
        ids(self.order())
    }

    pub fn star_is_trivial(&self) -> bool {
        self.star.iter().all(|&v| v == 0)
    }

    pub fn star_rows(&self) -> Vec<Vec<u32>> {
        self.star
            .chunks(self.order())
            .map(<[u32]>::to_vec)
            .collect()
    }
}

/// A group with a `⋆` table that has not been checked against the axioms.
///
/// This is what loading a file produces. Call [`UncheckedMla::into_validated`]
/// to obtain a [`FiniteMla`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UncheckedMla {
    pub(crate) name: String,
    pub(crate) tables: MlaTables,
    pub(crate) names: Option<Vec<String>>,
}

impl UncheckedMla {
    pub fn new(
        name: impl Into<String>,
        tables: MlaTables,
        names: Option<Vec<String>>,
    ) -> Result<Self> {
        if let Some(names) = &names {
            if names.len() != tables.order() {
                return Err(MlaError::Structure(format!(
                    "names has {} entries, expected {}",
                    names.len(),
                    tables.order()
                )));
            }
        }
        Ok(UncheckedMla {
            name: name.into(),
            tables,
            names,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn tables(&self) -> &MlaTables {
        &self.tables
    }

    pub fn validate(&self) -> ValidationReport {
        validate_axioms(&self.tables)
    }

    pub fn into_validated(self) -> Result<FiniteMla> {
        let report = self.validate();
        if !report.valid {
            return Err(MlaError::AxiomFailure(report));
        }
        Ok(FiniteMla {
            name: self.name,
            tables: self.tables,
            names: self.names,
        })
    }
}

/// A finite multiplicative Lie algebra whose `⋆` table passed validation.
///
/// Immutable after construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteMla {
    name: String,
    tables: MlaTables,
    names: Option<Vec<String>>,
}

impl FiniteMla {
    /// Builds an algebra from tables that are valid by construction
    /// (quotients, restrictions, products of validated algebras).
    pub(crate) fn from_trusted(
        name: String,
        tables: MlaTables,
        names: Option<Vec<String>>,
    ) -> Self {
        FiniteMla {
            name,
            tables,
            names,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn label(&self, x: ElementId) -> String {
        match &self.names {
            Some(names) => names[x.index()].clone(),
            None => x.to_string(),
        }
    }

    pub fn tables(&self) -> &MlaTables {
        &self.tables
    }

    pub fn group(&self) -> &GroupTable {
        &self.tables.group
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.tables.order()
    }

    #[inline]
    pub fn mul(&self, x: ElementId, y: ElementId) -> ElementId {
        self.tables.mul(x, y)
    }

    #[inline]
    pub fn inv(&self, x: ElementId) -> ElementId {
        self.tables.inv(x)
    }

    #[inline]
    pub fn star(&self, x: ElementId, y: ElementId) -> ElementId {
        self.tables.star(x, y)
    }

    #[inline]
    pub fn conj(&self, x: ElementId, y: ElementId) -> ElementId {
        self.tables.conj(x, y)
    }

    #[inline]
    pub fn comm(&self, x: ElementId, y: ElementId) -> ElementId {
        self.tables.comm(x, y)
    }

    pub fn elements(
        &self,
    ) -> impl DoubleEndedIterator<Item = ElementId> + ExactSizeIterator + Clone {
        self.tables.elements()
    }

    pub fn star_is_trivial(&self) -> bool {
        self.tables.star_is_trivial()
    }

    pub fn is_abelian(&self) -> bool {
        self.tables.group.is_abelian()
    }

    pub fn element_order(&self, x: ElementId) -> usize {
        self.tables.group.element_order(x)
    }

    pub fn to_unchecked(&self) -> UncheckedMla {
        UncheckedMla {
            name: self.name.clone(),
            tables: self.tables.clone(),
            names: self.names.clone(),
        }
    }
}

/// `^x y = x y x⁻¹`
pub fn conjugate(g: &FiniteMla, x: ElementId, y: ElementId) -> ElementId {
    g.conj(x, y)
}

/// `[x, y] = x y x⁻¹ y⁻¹`
pub fn commutator(g: &FiniteMla, x: ElementId, y: ElementId) -> ElementId {
    g.comm(x, y)
}

/// The algebra on `group` with `x ⋆ y = 1` for all `x, y`.
pub fn trivial_star_of_group(name: impl Into<String>, group: &GroupTable) -> Result<FiniteMla> {
    let n = group.order();
    let tables = MlaTables::new(group.clone(), vec![0; n * n])?;
    UncheckedMla::new(name, tables, None)?.into_validated()
}

/// The algebra on `group` with `x ⋆ y = [x, y]`. The axioms are re-checked.
pub fn commutator_star_of_group(name: impl Into<String>, group: &GroupTable) -> Result<FiniteMla> {
    let n = group.order();
    let mut star = Vec::with_capacity(n * n);
    for x in group.elements() {
        for y in group.elements() {
            star.push(group.comm(x, y).0);
        }
    }
    let tables = MlaTables::new(group.clone(), star)?;
    UncheckedMla::new(name, tables, None)?.into_validated()
}

/// Componentwise product; `(a, b)` is numbered `a·|G2| + b`.
pub fn direct_product(g1: &FiniteMla, g2: &FiniteMla, max_order: usize) -> Result<FiniteMla> {
    let (n1, n2) = (g1.order(), g2.order());
    let n = n1
        .checked_mul(n2)
        .filter(|&n| n <= max_order)
        .ok_or(MlaError::OrderTooLarge {
            order: n1.saturating_mul(n2),
            max: max_order,
        })?;
    let split = |p: usize| (ElementId::new(p / n2), ElementId::new(p % n2));
    let join = |a: ElementId, b: ElementId| (a.index() * n2 + b.index()) as u32;
    let mut mul = Vec::with_capacity(n * n);
    let mut star = Vec::with_capacity(n * n);
    for p in 0..n {
        let (a, b) = split(p);
        for q in 0..n {
            let (c, d) = split(q);
            mul.push(join(g1.mul(a, c), g2.mul(b, d)));
            star.push(join(g1.star(a, c), g2.star(b, d)));
        }
    }
    let names = (0..n)
        .map(|p| {
            let (a, b) = split(p);
            format!("({},{})", g1.label(a), g2.label(b))
        })
        .collect();
    let group = GroupTable::from_flat(n, mul)?;
    let tables = MlaTables::new(group, star)?;
    Ok(FiniteMla::from_trusted(
        format!("{}x{}", g1.name(), g2.name()),
        tables,
        Some(names),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn latin_square_violation_names_row() {
        let err = GroupTable::from_rows(&[vec![0, 1], vec![1, 1]]).unwrap_err();
        assert_eq!(err.to_string(), "structure error: row 1 not a permutation");
    }

    #[test]
    fn identity_must_be_zero() {
        let err = GroupTable::from_rows(&[vec![1, 0], vec![0, 1]]).unwrap_err();
        assert!(err.to_string().contains("no identity at 0"), "{err}");
    }

    #[test]
    fn non_associative_loop_is_rejected() {
        // The smallest non-associative loop with a Latin table, order 5.
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = GroupTable::from_rows(&rows).unwrap_err();
        assert!(err.to_string().contains("not associative"), "{err}");
    }

    #[test]
    fn conjugation_and_commutator_in_d4() {
        let d4 = fixtures::dihedral_trivial(4);
        let (r, s) = (ElementId(1), ElementId(4));
        assert_eq!(conjugate(&d4, r, s), ElementId(6));
        assert_eq!(commutator(&d4, r, s), ElementId(2));
        for y in d4.elements() {
            assert_eq!(conjugate(&d4, ElementId::IDENTITY, y), y);
            assert_eq!(commutator(&d4, y, y), ElementId::IDENTITY);
        }
    }

    #[test]
    fn abelian_conjugation_is_trivial() {
        let c6 = fixtures::cyclic_trivial(6);
        for x in c6.elements() {
            for y in c6.elements() {
                assert_eq!(conjugate(&c6, x, y), y);
                assert_eq!(commutator(&c6, x, y), ElementId::IDENTITY);
            }
        }
    }

    #[test]
    fn commutator_star_of_abelian_group_is_trivial_star() {
        let group = fixtures::cyclic_group(5);
        let a = trivial_star_of_group("c5", &group).unwrap();
        let b = commutator_star_of_group("c5", &group).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn product_orders_and_stars() {
        let c2 = fixtures::cyclic_trivial(2);
        let v = direct_product(&c2, &c2, DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(v.order(), 4);
        assert!(v.star_is_trivial());
        assert!(v.to_unchecked().validate().valid);
        let err = direct_product(&v, &v, 8).unwrap_err();
        assert!(matches!(err, MlaError::OrderTooLarge { order: 16, max: 8 }));
    }

    #[test]
    fn product_of_commutator_algebras_validates() {
        let s3 = fixtures::s3_commutator();
        let c2 = fixtures::cyclic_trivial(2);
        let p = direct_product(&s3, &c2, DEFAULT_MAX_ORDER).unwrap();
        assert!(p.to_unchecked().validate().valid);
    }
}
