//! Tensor squares of abelian algebras with trivial `⋆` through a cyclic
//! decomposition.
//!
//! With trivial `⋆` and trivial conjugation the tensor square is the
//! integral tensor product `A ⊗_ℤ A`. Writing `A = ⊕ C_{d_s}` via a diagonal
//! form of the relation matrix of the multiplication table gives
//! `A ⊗ A = ⊕_{s,t} C_{gcd(d_s, d_t)}` with
//! `x ⊗ y ↦ (c_s(x)·c_t(y) mod gcd(d_s, d_t))_{s,t}`.

#![allow(clippy::needless_range_loop)]

use crate::algebra::{trivial_star_of_group, ElementId, FiniteMla, GroupTable};
use crate::error::{MlaError, Result};

pub const DEFAULT_SNF_BOUND: usize = 64;

/// Cyclic decomposition of a finite abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicDecomposition {
    /// Orders of the cyclic factors, all at least 2.
    pub orders: Vec<u64>,
    /// `coords[x][t]` is the coordinate of element `x` in factor `t`.
    pub coords: Vec<Vec<u64>>,
}

fn overflow() -> MlaError {
    MlaError::Precondition("integer overflow in the diagonal form".into())
}

/// Diagonalizes `a` by unimodular row and column operations, returning the
/// diagonal and the accumulated column transform `v` (so `a_original · v`
/// is row-equivalent to the diagonal form).
fn diagonalize(mut a: Vec<Vec<i64>>, cols: usize) -> Result<(Vec<i64>, Vec<Vec<i64>>)> {
    let mut v: Vec<Vec<i64>> = (0..cols)
        .map(|i| (0..cols).map(|j| i64::from(i == j)).collect())
        .collect();
    a.retain(|row| row.iter().any(|&e| e != 0));
    let rows = a.len();
    let mut diag = Vec::new();
    for t in 0..cols.min(rows) {
        // least nonzero |entry| in the trailing block
        let mut best: Option<(i64, usize, usize)> = None;
        for (r, row) in a.iter().enumerate().skip(t) {
            for (c, &e) in row.iter().enumerate().skip(t) {
                if e != 0 && best.is_none_or(|(b, _, _)| e.abs() < b) {
                    best = Some((e.abs(), r, c));
                }
            }
        }
        let Some((_, r0, c0)) = best else { break };
        a.swap(t, r0);
        swap_cols(&mut a, &mut v, t, c0);
        loop {
            let p = a[t][t];
            let mut clean = true;
            for r in t + 1..rows {
                let q = a[r][t] / p;
                if q != 0 {
                    for c in t..cols {
                        a[r][c] = a[r][c]
                            .checked_sub(q.checked_mul(a[t][c]).ok_or_else(overflow)?)
                            .ok_or_else(overflow)?;
                    }
                }
                clean &= a[r][t] == 0;
            }
            for c in t + 1..cols {
                let q = a[t][c] / p;
                if q != 0 {
                    for r in t..rows {
                        a[r][c] = a[r][c]
                            .checked_sub(q.checked_mul(a[r][t]).ok_or_else(overflow)?)
                            .ok_or_else(overflow)?;
                    }
                    for row in v.iter_mut() {
                        row[c] = row[c]
                            .checked_sub(q.checked_mul(row[t]).ok_or_else(overflow)?)
                            .ok_or_else(overflow)?;
                    }
                }
                clean &= a[t][c] == 0;
            }
            if clean {
                break;
            }
            // move the least nonzero remainder in row or column t to the pivot
            let mut best = (a[t][t].abs(), t, t);
            for r in t + 1..rows {
                if a[r][t] != 0 && a[r][t].abs() < best.0 {
                    best = (a[r][t].abs(), r, t);
                }
            }
            for c in t + 1..cols {
                if a[t][c] != 0 && a[t][c].abs() < best.0 {
                    best = (a[t][c].abs(), t, c);
                }
            }
            let (_, r1, c1) = best;
            a.swap(t, r1);
            swap_cols(&mut a, &mut v, t, c1);
        }
        diag.push(a[t][t].abs());
    }
    diag.resize(cols, 0);
    Ok((diag, v))
}

fn swap_cols(a: &mut [Vec<i64>], v: &mut [Vec<i64>], i: usize, j: usize) {
    if i == j {
        return;
    }
    for row in a.iter_mut() {
        row.swap(i, j);
    }
    for row in v.iter_mut() {
        row.swap(i, j);
    }
}

/// Decomposes an abelian group table into cyclic factors.
pub fn cyclic_decomposition(g: &GroupTable) -> Result<CyclicDecomposition> {
    if !g.is_abelian() {
        return Err(MlaError::Precondition("group is not abelian".into()));
    }
    let n = g.order();
    let m = n - 1;
    if m == 0 {
        return Ok(CyclicDecomposition {
            orders: Vec::new(),
            coords: vec![Vec::new()],
        });
    }
    // basis vector e_x for x ≠ 0; relation e_x + e_y − e_{xy}
    let mut rows = Vec::new();
    for x in 1..n {
        for y in x..n {
            let mut row = vec![0i64; m];
            let xy = g.mul(ElementId::new(x), ElementId::new(y)).index();
            row[x - 1] += 1;
            row[y - 1] += 1;
            if xy != 0 {
                row[xy - 1] -= 1;
            }
            rows.push(row);
        }
    }
    let (diag, v) = diagonalize(rows, m)?;
    if diag.contains(&0) {
        return Err(MlaError::Precondition("relation matrix is singular".into()));
    }
    let kept: Vec<usize> = (0..m).filter(|&t| diag[t] > 1).collect();
    let orders: Vec<u64> = kept.iter().map(|&t| diag[t] as u64).collect();
    let mut coords = vec![vec![0u64; kept.len()]];
    for x in 1..n {
        coords.push(
            kept.iter()
                .map(|&t| v[x - 1][t].rem_euclid(diag[t]) as u64)
                .collect(),
        );
    }
    let product: u64 = orders.iter().product();
    if product != n as u64 {
        return Err(MlaError::Precondition(format!(
            "cyclic factors {orders:?} do not multiply to the order {n}"
        )));
    }
    Ok(CyclicDecomposition { orders, coords })
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Abelian group `⊕ C_{radix[k]}` with elements numbered in mixed radix
/// (first factor most significant).
fn mixed_radix_group(radix: &[u64]) -> Result<GroupTable> {
    let n: usize = radix.iter().map(|&r| r as usize).product();
    let decode = |mut e: usize| -> Vec<u64> {
        let mut digits = vec![0u64; radix.len()];
        for k in (0..radix.len()).rev() {
            digits[k] = (e % radix[k] as usize) as u64;
            e /= radix[k] as usize;
        }
        digits
    };
    let digits: Vec<Vec<u64>> = (0..n).map(decode).collect();
    let rows: Vec<Vec<u32>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| encode(radix, digits[a].iter().zip(&digits[b]).map(|(x, y)| x + y)) as u32)
                .collect()
        })
        .collect();
    GroupTable::from_rows(&rows)
}

fn encode(radix: &[u64], digits: impl Iterator<Item = u64>) -> usize {
    digits
        .zip(radix)
        .fold(0usize, |acc, (d, &r)| acc * r as usize + (d % r) as usize)
}

/// Tensor square of an abelian algebra with trivial `⋆`: the algebra and
/// the symbol table `(x, y) ↦ x ⊗ y`.
pub fn abelian_tensor_square(
    g: &FiniteMla,
    bound: usize,
    max_order: usize,
) -> Result<(FiniteMla, Vec<Vec<ElementId>>)> {
    if !g.is_abelian() || !g.star_is_trivial() {
        return Err(MlaError::Precondition(format!(
            "the decomposition method needs an abelian algebra with trivial star; {} is not",
            g.name()
        )));
    }
    let n = g.order();
    if n > bound {
        return Err(MlaError::BoundExceeded {
            what: "tensor decomposition",
            order: n,
            bound,
        });
    }
    let dec = cyclic_decomposition(g.group())?;
    let k = dec.orders.len();
    let mut radix = Vec::with_capacity(k * k);
    for s in 0..k {
        for t in 0..k {
            radix.push(gcd(dec.orders[s], dec.orders[t]));
        }
    }
    let order: u128 = radix.iter().map(|&r| r as u128).product();
    if order > max_order as u128 {
        return Err(MlaError::OrderTooLarge {
            order: usize::try_from(order).unwrap_or(usize::MAX),
            max: max_order,
        });
    }
    let table = mixed_radix_group(&radix)?;
    let algebra = trivial_star_of_group(format!("{}⊗{}", g.name(), g.name()), &table)?;
    let gen_map = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    let digits = (0..k * k).map(|st| dec.coords[x][st / k] * dec.coords[y][st % k]);
                    ElementId::new(encode(&radix, digits))
                })
                .collect()
        })
        .collect();
    Ok((algebra, gen_map))
}
