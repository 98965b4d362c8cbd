//! Group presentations and the defining presentation of a tensor square.

use std::fmt;

use serde::Serialize;

use crate::algebra::{ElementId, FiniteMla};
use crate::error::{MlaError, Result};

/// A generator or its inverse.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Letter {
    pub generator: u32,
    pub inverse: bool,
}

impl Letter {
    pub fn gen(generator: usize) -> Self {
        Letter {
            generator: generator as u32,
            inverse: false,
        }
    }

    pub fn inv(generator: usize) -> Self {
        Letter {
            generator: generator as u32,
            inverse: true,
        }
    }

    pub fn inverse(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    /// Coset-table column: `2g` for a generator, `2g + 1` for its inverse.
    pub fn column(self) -> usize {
        2 * self.generator as usize + self.inverse as usize
    }

    pub fn from_column(col: usize) -> Self {
        Letter {
            generator: (col / 2) as u32,
            inverse: col % 2 == 1,
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "-{}", self.generator)
        } else {
            write!(f, "+{}", self.generator)
        }
    }
}

pub type Word = Vec<Letter>;

pub fn inverse_word(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| l.inverse()).collect()
}

/// Cancels adjacent inverse pairs.
pub fn free_reduce(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Presentation {
    pub generator_count: usize,
    pub relators: Vec<Word>,
    /// `star_on_generators[i][j]` is a word for `gᵢ ⋆ gⱼ`.
    pub star_on_generators: Vec<Vec<Word>>,
}

impl Presentation {
    /// Builds a presentation, freely reducing relators, dropping empty ones
    /// and removing duplicates (sorted order).
    pub fn new(
        generator_count: usize,
        relators: Vec<Word>,
        star_on_generators: Vec<Vec<Word>>,
    ) -> Result<Self> {
        let in_range = |w: &Word| w.iter().all(|l| (l.generator as usize) < generator_count);
        if let Some(bad) = relators.iter().find(|w| !in_range(w)) {
            return Err(MlaError::Precondition(format!(
                "relator {bad:?} uses an unknown generator"
            )));
        }
        if !star_on_generators.is_empty()
            && (star_on_generators.len() != generator_count
                || star_on_generators
                    .iter()
                    .any(|row| row.len() != generator_count || !row.iter().all(in_range)))
        {
            return Err(MlaError::Precondition(
                "star_on_generators must be a g×g table of words".into(),
            ));
        }
        let mut relators: Vec<Word> = relators
            .iter()
            .map(|w| free_reduce(w))
            .filter(|w| !w.is_empty())
            .collect();
        relators.sort();
        relators.dedup();
        Ok(Presentation {
            generator_count,
            relators,
            star_on_generators,
        })
    }

    /// A presentation with no `⋆` data.
    pub fn group(generator_count: usize, relators: Vec<Word>) -> Result<Self> {
        Self::new(generator_count, relators, Vec::new())
    }
}

pub const DEFAULT_ENUMERATION_BOUND: usize = 12;

/// Index of the symbol `x ⊗ y` among the `n²` generators.
#[inline]
pub fn symbol(n: usize, x: ElementId, y: ElementId) -> usize {
    x.index() * n + y.index()
}

/// Raw relator count before reduction and deduplication: `4n³`.
pub fn raw_relator_count(n: usize) -> usize {
    4 * n * n * n
}

/// The defining presentation of `G ⊗ G` for the conjugation self-action with
/// pairing `⋆`. Generator `x*n + y` is the symbol `x ⊗ y`.
pub fn tensor_presentation(g: &FiniteMla, bound: usize) -> Result<Presentation> {
    let n = g.order();
    if n > bound {
        return Err(MlaError::BoundExceeded {
            what: "tensor enumeration",
            order: n,
            bound,
        });
    }
    let sym = |x: ElementId, y: ElementId| Letter::gen(symbol(n, x, y));
    let sym_inv = |x: ElementId, y: ElementId| Letter::inv(symbol(n, x, y));
    let mut relators = Vec::with_capacity(raw_relator_count(n));
    for x in g.elements() {
        for y in g.elements() {
            for z in g.elements() {
                // x ⊗ yz = (x ⊗ y)(ʸx ⊗ ʸz), with z playing y′
                relators.push(vec![
                    sym(x, y),
                    sym(g.conj(y, x), g.conj(y, z)),
                    sym_inv(x, g.mul(y, z)),
                ]);
                // xz ⊗ y = (ˣz ⊗ ˣy)(x ⊗ y), with z playing x′
                relators.push(vec![
                    sym(g.conj(x, z), g.conj(x, y)),
                    sym(x, y),
                    sym_inv(g.mul(x, z), y),
                ]);
                // ((x⋆z) ⊗ ᶻy)(ʸx ⊗ (z⋆y))⁻¹(ˣz ⊗ (x⋆y)⁻¹)⁻¹, with z playing x′
                relators.push(vec![
                    sym(g.star(x, z), g.conj(z, y)),
                    sym_inv(g.conj(y, x), g.star(z, y)),
                    sym_inv(g.conj(x, z), g.inv(g.star(x, y))),
                ]);
                // (ᶻx ⊗ (y⋆z))((y⋆x)⁻¹ ⊗ ʸz)⁻¹((z⋆x) ⊗ ˣy)⁻¹, with z playing y′
                relators.push(vec![
                    sym(g.conj(z, x), g.star(y, z)),
                    sym_inv(g.inv(g.star(y, x)), g.conj(y, z)),
                    sym_inv(g.star(z, x), g.conj(x, y)),
                ]);
            }
        }
    }
    let gens = n * n;
    let mut star_on_generators = vec![Vec::with_capacity(gens); gens];
    for (i, row) in star_on_generators.iter_mut().enumerate() {
        let (x, y) = (ElementId::new(i / n), ElementId::new(i % n));
        for j in 0..gens {
            let (x2, y2) = (ElementId::new(j / n), ElementId::new(j % n));
            row.push(vec![sym(g.inv(g.star(y, x)), g.star(x2, y2))]);
        }
    }
    Presentation::new(gens, relators, star_on_generators)
}
