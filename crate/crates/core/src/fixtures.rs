//! Small groups used throughout the tests and in the shipped corpus.
//!
//! Numbering conventions:
//! * `C_n`: residue `k` is element `k`.
//! * `D_m` (order `2m`): `r^i s^j` is element `i + m·j`, so in `D_4` the
//!   rotation `r` is 1 and the reflection `s` is 4.
//! * `Q_8`: `x^a y^b` with `x⁴ = 1`, `y² = x²`, `y x y⁻¹ = x⁻¹` is element
//!   `a + 4·b`.

use crate::algebra::{
    commutator_star_of_group, direct_product, trivial_star_of_group, FiniteMla, GroupTable,
    DEFAULT_MAX_ORDER,
};
use crate::structure::{closure_ideal, quotient};

fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> GroupTable {
    let rows: Vec<Vec<u32>> = (0..n)
        .map(|x| (0..n).map(|y| f(x, y) as u32).collect())
        .collect();
    GroupTable::from_rows(&rows).expect("fixture is a group")
}

pub fn cyclic_group(n: usize) -> GroupTable {
    from_fn(n, |x, y| (x + y) % n)
}

pub fn dihedral_group(m: usize) -> GroupTable {
    from_fn(2 * m, |p, q| {
        let (a, b) = (p % m, p / m);
        let (c, d) = (q % m, q / m);
        let rot = if b == 0 { (a + c) % m } else { (a + m - c) % m };
        rot + m * ((b + d) % 2)
    })
}

pub fn quaternion_group() -> GroupTable {
    from_fn(8, |p, q| {
        let (a, b) = (p % 4, p / 4);
        let (c, d) = (q % 4, q / 4);
        // y x^c = x^{-c} y
        let a2 = if b == 0 { (a + c) % 4 } else { (a + 4 - c) % 4 };
        let b2 = b + d;
        if b2 == 2 {
            (a2 + 2) % 4
        } else {
            a2 + 4 * b2
        }
    })
}

fn dihedral_names(m: usize) -> Vec<String> {
    (0..2 * m)
        .map(|p| {
            let (i, j) = (p % m, p / m);
            let r = match i {
                0 => String::new(),
                1 => "r".to_string(),
                _ => format!("r^{i}"),
            };
            let s = if j == 1 { "s" } else { "" };
            let w = format!("{r}{s}");
            if w.is_empty() {
                "1".to_string()
            } else {
                w
            }
        })
        .collect()
}

fn quaternion_names() -> Vec<String> {
    ["1", "x", "x^2", "x^3", "y", "xy", "x^2y", "x^3y"]
        .iter()
        .map(ToString::to_string)
        .collect()
}

fn named(g: FiniteMla, names: Vec<String>) -> FiniteMla {
    let tables = g.tables().clone();
    FiniteMla::from_trusted(g.name().to_string(), tables, Some(names))
}

pub fn cyclic_trivial(n: usize) -> FiniteMla {
    trivial_star_of_group(format!("c{n}"), &cyclic_group(n)).expect("trivial star is valid")
}

pub fn klein_trivial() -> FiniteMla {
    let c2 = cyclic_trivial(2);
    direct_product(&c2, &c2, DEFAULT_MAX_ORDER)
        .expect("order 4")
        .with_name("v4")
}

pub fn dihedral_trivial(m: usize) -> FiniteMla {
    let g = trivial_star_of_group(format!("d{m}"), &dihedral_group(m)).expect("valid");
    named(g, dihedral_names(m))
}

pub fn dihedral_commutator(m: usize) -> FiniteMla {
    let g = commutator_star_of_group(format!("d{m}_comm"), &dihedral_group(m)).expect("valid");
    named(g, dihedral_names(m))
}

pub fn quaternion_trivial() -> FiniteMla {
    let g = trivial_star_of_group("q8", &quaternion_group()).expect("valid");
    named(g, quaternion_names())
}

pub fn quaternion_commutator() -> FiniteMla {
    let g = commutator_star_of_group("q8_comm", &quaternion_group()).expect("valid");
    named(g, quaternion_names())
}

pub fn s3_trivial() -> FiniteMla {
    dihedral_trivial(3).with_name("s3")
}

pub fn s3_commutator() -> FiniteMla {
    dihedral_commutator(3).with_name("s3_comm")
}

pub fn c2_x_c4() -> FiniteMla {
    direct_product(&cyclic_trivial(2), &cyclic_trivial(4), DEFAULT_MAX_ORDER)
        .expect("order 8")
        .with_name("c2xc4")
}

pub fn d4_x_c2() -> FiniteMla {
    direct_product(&dihedral_trivial(4), &cyclic_trivial(2), DEFAULT_MAX_ORDER)
        .expect("order 16")
        .with_name("d4xc2")
}

pub fn d4_x_c2_commutator() -> FiniteMla {
    direct_product(
        &dihedral_commutator(4),
        &cyclic_trivial(2),
        DEFAULT_MAX_ORDER,
    )
    .expect("order 16")
    .with_name("d4xc2_comm")
}

/// Central product `C_4 ∘ D_4` (order 16, trivial `⋆`): its centre is cyclic
/// of order 4 and meets the derived subgroup in the involution only.
pub fn pauli_trivial() -> FiniteMla {
    let c4 = cyclic_trivial(4);
    let d4 = dihedral_trivial(4);
    let p = direct_product(&c4, &d4, DEFAULT_MAX_ORDER).expect("order 32");
    // identify (2, 1) with (0, r²): element 2·8 + 2 = 18
    let ideal = closure_ideal(&p, [crate::algebra::ElementId(18)]);
    let (q, _) = quotient(&p, &ideal).expect("central subgroup is an ideal");
    q.with_name("pauli")
}

/// Every fixture of the shipped corpus, in catalog order.
pub fn corpus_algebras() -> Vec<FiniteMla> {
    let mut out: Vec<FiniteMla> = (1..=12).map(cyclic_trivial).collect();
    out.push(klein_trivial());
    out.push(c2_x_c4());
    out.push(s3_trivial());
    out.push(s3_commutator());
    out.push(dihedral_trivial(4));
    out.push(dihedral_commutator(4));
    out.push(quaternion_trivial());
    out.push(quaternion_commutator());
    out.push(d4_x_c2());
    out.push(d4_x_c2_commutator());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ElementId;

    #[test]
    fn fixture_orders() {
        assert_eq!(dihedral_group(4).order(), 8);
        assert_eq!(quaternion_group().order(), 8);
        assert_eq!(pauli_trivial().order(), 16);
        assert_eq!(d4_x_c2().order(), 16);
    }

    #[test]
    fn quaternion_has_single_involution() {
        let q = quaternion_group();
        let involutions = q.elements().filter(|&x| q.element_order(x) == 2).count();
        assert_eq!(involutions, 1);
        assert!(!q.is_abelian());
    }

    #[test]
    fn dihedral_relations() {
        let d = dihedral_group(4);
        let (r, s) = (ElementId(1), ElementId(4));
        assert_eq!(d.element_order(r), 4);
        assert_eq!(d.element_order(s), 2);
        // s r s⁻¹ = r⁻¹
        assert_eq!(d.conj(s, r), d.inv(r));
    }

    #[test]
    fn corpus_fixtures_validate() {
        for g in corpus_algebras() {
            assert!(g.to_unchecked().validate().valid, "{}", g.name());
        }
    }
}
