//! Extending `⋆` from generators to a whole enumerated group.
//!
//! Every element has a tree word `b = parent(b)·letter(b)`. The expansion
//! rules `x⋆(yz) = (x⋆y)·ʸ(x⋆z)` and `(xy)⋆z = ˣ(y⋆z)·(x⋆z)` reduce `a⋆b`
//! along the tree words of `b` and then of `a` to values on letters, and
//! inverse letters are handled by `x⋆y⁻¹ = ʸ⁻¹((x⋆y)⁻¹)` and
//! `x⁻¹⋆z = ˣ⁻¹((x⋆z)⁻¹)`. The result is accepted only if it passes full
//! axiom validation.

use crate::algebra::{ElementId, FiniteMla, MlaTables, UncheckedMla};
use crate::error::{MlaError, Result};

use super::enumerate::EnumeratedGroup;
use super::presentation::Letter;

/// Builds the `⋆` table of `group` from `star_gen(i, j)`, the element
/// realizing `gᵢ ⋆ gⱼ`, and validates it.
pub fn extend_star(
    name: impl Into<String>,
    group: &EnumeratedGroup,
    star_gen: impl Fn(usize, usize) -> ElementId,
) -> Result<FiniteMla> {
    let t = &group.table;
    let n = t.order();
    let conj = |x: ElementId, y: ElementId| t.conj(x, y);

    // ⋆ on a pair of letters
    let on_letters = |m: Letter, l: Letter| -> ElementId {
        let base = |i: usize, l: Letter| -> ElementId {
            let j = l.generator as usize;
            let v = star_gen(i, j);
            if l.inverse {
                conj(t.inv(group.letter_image(Letter::gen(j))), t.inv(v))
            } else {
                v
            }
        };
        let i = m.generator as usize;
        if m.inverse {
            conj(t.inv(group.letter_image(Letter::gen(i))), t.inv(base(i, l)))
        } else {
            base(i, l)
        }
    };

    // Only letters that label tree edges are needed on the right.
    let mut used = vec![false; 2 * group.generator_images.len()];
    for l in group.letter.iter().skip(1) {
        used[l.column()] = true;
    }
    let columns: Vec<usize> = (0..used.len()).filter(|&c| used[c]).collect();
    let mut slot = vec![usize::MAX; used.len()];
    for (k, &c) in columns.iter().enumerate() {
        slot[c] = k;
    }

    // s[a][k] = a ⋆ letter(columns[k])
    let mut s = vec![ElementId::IDENTITY; n * columns.len()];
    for a in 1..n {
        let p = group.parent[a];
        let m = group.letter[a];
        for (k, &c) in columns.iter().enumerate() {
            let l = Letter::from_column(c);
            let sp = s[p.index() * columns.len() + k];
            s[a * columns.len() + k] = t.mul(conj(p, on_letters(m, l)), sp);
        }
    }

    let mut star = vec![0u32; n * n];
    for a in 0..n {
        for b in 1..n {
            let q = group.parent[b];
            let k = slot[group.letter[b].column()];
            let aq = ElementId(star[a * n + q.index()]);
            star[a * n + b] = t.mul(aq, conj(q, s[a * columns.len() + k])).0;
        }
    }

    let tables = MlaTables::new(t.clone(), star)?;
    let unchecked = UncheckedMla::new(name, tables, None)?;
    let report = unchecked.validate();
    if !report.valid {
        return Err(MlaError::AxiomFailure(report));
    }
    unchecked.into_validated()
}
