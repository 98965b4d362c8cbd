//! Coset enumeration over the trivial subgroup.
//!
//! Felsch strategy: the least undefined table entry (rows in order, then
//! columns) is defined next, and each new entry is pushed through every
//! cyclic conjugate of every relator and its inverse that starts with the
//! entry's letter. Coincidences are processed with a union-find queue. When
//! the table is complete every relator is traced from every row once more;
//! anything learned there sends the enumeration back to the main loop.

use crate::algebra::{ElementId, GroupTable};
use crate::error::{MlaError, Result};

use super::presentation::{inverse_word, Letter, Presentation};

pub const DEFAULT_BUDGET: usize = 100_000;

const UNDEF: u32 = u32::MAX;

/// A finite group recovered from a presentation.
#[derive(Clone, Debug)]
pub struct EnumeratedGroup {
    pub table: GroupTable,
    /// Image of each generator.
    pub generator_images: Vec<ElementId>,
    /// Spanning tree of the Cayley graph: element `b > 0` equals
    /// `parent[b] · letter[b]` with `parent[b] < b`.
    pub parent: Vec<ElementId>,
    pub letter: Vec<Letter>,
}

impl EnumeratedGroup {
    pub fn order(&self) -> usize {
        self.table.order()
    }

    /// Element represented by a letter.
    pub fn letter_image(&self, l: Letter) -> ElementId {
        let g = self.generator_images[l.generator as usize];
        if l.inverse {
            self.table.inv(g)
        } else {
            g
        }
    }

    /// Element represented by a word.
    pub fn evaluate(&self, w: &[Letter]) -> ElementId {
        w.iter().fold(ElementId::IDENTITY, |acc, &l| {
            self.table.mul(acc, self.letter_image(l))
        })
    }
}

struct Enumerator {
    cols: usize,
    table: Vec<u32>,
    /// Union-find parent; `rep[a] == a` for live rows.
    rep: Vec<u32>,
    live: usize,
    budget: usize,
    relators: Vec<Vec<u32>>,
    /// Cyclic conjugates of relators and their inverses, bucketed by first
    /// column.
    by_first: Vec<Vec<Vec<u32>>>,
    deductions: Vec<(u32, u32)>,
    queue: Vec<u32>,
}

impl Enumerator {
    fn new(p: &Presentation, budget: usize) -> Self {
        let cols = 2 * p.generator_count;
        let as_cols = |w: &[Letter]| w.iter().map(|l| l.column() as u32).collect::<Vec<u32>>();
        let relators: Vec<Vec<u32>> = p.relators.iter().map(|w| as_cols(w)).collect();
        let mut conjugates: Vec<Vec<u32>> = Vec::new();
        for w in &p.relators {
            for v in [as_cols(w), as_cols(&inverse_word(w))] {
                for k in 0..v.len() {
                    let mut c = v[k..].to_vec();
                    c.extend_from_slice(&v[..k]);
                    conjugates.push(c);
                }
            }
        }
        conjugates.sort();
        conjugates.dedup();
        let mut by_first = vec![Vec::new(); cols];
        for c in conjugates {
            by_first[c[0] as usize].push(c);
        }
        let mut e = Enumerator {
            cols,
            table: Vec::new(),
            rep: Vec::new(),
            live: 0,
            budget,
            relators,
            by_first,
            deductions: Vec::new(),
            queue: Vec::new(),
        };
        e.new_row();
        e
    }

    #[inline]
    fn get(&self, row: u32, col: u32) -> u32 {
        self.table[row as usize * self.cols + col as usize]
    }

    #[inline]
    fn set(&mut self, row: u32, col: u32, v: u32) {
        self.table[row as usize * self.cols + col as usize] = v;
    }

    #[inline]
    fn is_live(&self, row: u32) -> bool {
        self.rep[row as usize] == row
    }

    fn new_row(&mut self) -> u32 {
        let row = self.rep.len() as u32;
        self.table.extend(std::iter::repeat_n(UNDEF, self.cols));
        self.rep.push(row);
        self.live += 1;
        row
    }

    fn find(&mut self, mut a: u32) -> u32 {
        let mut root = a;
        while self.rep[root as usize] != root {
            root = self.rep[root as usize];
        }
        while self.rep[a as usize] != root {
            let next = self.rep[a as usize];
            self.rep[a as usize] = root;
            a = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        let (keep, drop) = if a < b { (a, b) } else { (b, a) };
        self.rep[drop as usize] = keep;
        self.live -= 1;
        self.queue.push(drop);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let gamma = self.queue[i];
            i += 1;
            for x in 0..self.cols as u32 {
                let delta = self.get(gamma, x);
                if delta == UNDEF {
                    continue;
                }
                let xi = x ^ 1;
                self.set(delta, xi, UNDEF);
                let mu = self.find(gamma);
                let nu = self.find(delta);
                let at_mu = self.get(mu, x);
                if at_mu != UNDEF {
                    self.merge(nu, at_mu);
                } else {
                    let at_nu = self.get(nu, xi);
                    if at_nu != UNDEF {
                        self.merge(mu, at_nu);
                    } else {
                        self.set(mu, x, nu);
                        self.set(nu, xi, mu);
                        self.deductions.push((mu, x));
                    }
                }
            }
        }
        self.queue.clear();
    }

    /// Traces `w` from `row` in both directions; closes a one-letter gap as a
    /// deduction and reports a mismatch as a coincidence. Returns whether the
    /// table changed.
    fn scan(&mut self, row: u32, w: &[u32]) -> bool {
        let (mut f, mut b) = (row, row);
        let (mut i, mut j) = (0usize, w.len());
        while i < j {
            let v = self.get(f, w[i]);
            if v == UNDEF {
                break;
            }
            f = v;
            i += 1;
        }
        if i == j {
            if f != b {
                self.coincidence(f, b);
                return true;
            }
            return false;
        }
        while j > i {
            let v = self.get(b, w[j - 1] ^ 1);
            if v == UNDEF {
                break;
            }
            b = v;
            j -= 1;
        }
        if j == i {
            self.coincidence(f, b);
            true
        } else if j == i + 1 {
            self.set(f, w[i], b);
            self.set(b, w[i] ^ 1, f);
            self.deductions.push((f, w[i]));
            true
        } else {
            false
        }
    }

    fn process_deductions(&mut self) {
        while let Some((row, col)) = self.deductions.pop() {
            for side in 0..2 {
                let (start, c) = if side == 0 {
                    (row, col)
                } else {
                    if !self.is_live(row) {
                        break;
                    }
                    let t = self.get(row, col);
                    if t == UNDEF {
                        break;
                    }
                    (t, col ^ 1)
                };
                let bucket = std::mem::take(&mut self.by_first[c as usize]);
                for w in &bucket {
                    if !self.is_live(start) || self.get(start, c) == UNDEF {
                        break;
                    }
                    self.scan(start, w);
                }
                self.by_first[c as usize] = bucket;
            }
        }
    }

    /// Renumbers live rows consecutively, keeping their order.
    fn compact(&mut self, cursor: u32) -> u32 {
        let total = self.rep.len();
        let mut new_index = vec![UNDEF; total];
        let mut next = 0u32;
        for r in 0..total as u32 {
            if self.is_live(r) {
                new_index[r as usize] = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next as usize * self.cols);
        for r in 0..total {
            if new_index[r] == UNDEF {
                continue;
            }
            for &v in &self.table[r * self.cols..(r + 1) * self.cols] {
                table.push(if v == UNDEF {
                    UNDEF
                } else {
                    new_index[v as usize]
                });
            }
        }
        self.table = table;
        self.rep = (0..next).collect();
        self.deductions.clear();
        (0..cursor)
            .filter(|&r| new_index[r as usize] != UNDEF)
            .count() as u32
    }

    fn run(&mut self) -> Result<()> {
        let mut cursor = 0u32;
        loop {
            self.process_deductions();
            if self.live > self.budget {
                return Err(MlaError::BudgetExceeded {
                    budget: self.budget,
                });
            }
            if self.rep.len() > 2 * self.live + 1024 {
                cursor = self.compact(cursor);
            }
            let mut gap = None;
            while (cursor as usize) < self.rep.len() {
                if self.is_live(cursor) {
                    if let Some(c) = (0..self.cols as u32).find(|&c| self.get(cursor, c) == UNDEF) {
                        gap = Some(c);
                        break;
                    }
                }
                cursor += 1;
            }
            match gap {
                Some(col) => {
                    if self.live >= self.budget {
                        return Err(MlaError::BudgetExceeded {
                            budget: self.budget,
                        });
                    }
                    let row = self.new_row();
                    self.set(cursor, col, row);
                    self.set(row, col ^ 1, cursor);
                    self.deductions.push((cursor, col));
                }
                None => {
                    if !self.verify_complete() {
                        cursor = 0;
                        continue;
                    }
                    return Ok(());
                }
            }
        }
    }

    /// Traces every relator from every live row of the complete table.
    fn verify_complete(&mut self) -> bool {
        let relators = std::mem::take(&mut self.relators);
        let mut clean = true;
        for r in 0..self.rep.len() as u32 {
            for w in &relators {
                if !self.is_live(r) {
                    break;
                }
                if self.scan(r, w) {
                    clean = false;
                }
            }
        }
        self.relators = relators;
        clean
    }

    /// Breadth-first renumbering from row 0 with the resulting group.
    fn finish(mut self, generator_count: usize) -> EnumeratedGroup {
        let cursor = self.compact(0);
        debug_assert_eq!(cursor, 0);
        let n = self.rep.len();
        let mut number = vec![UNDEF; n];
        let mut order = vec![0u32];
        number[0] = 0;
        let mut parent = vec![ElementId::IDENTITY];
        let mut letter = vec![Letter::gen(0)];
        let mut i = 0;
        while i < order.len() {
            let r = order[i];
            for c in 0..self.cols as u32 {
                let t = self.get(r, c);
                if number[t as usize] == UNDEF {
                    number[t as usize] = order.len() as u32;
                    order.push(t);
                    parent.push(ElementId(number[r as usize]));
                    letter.push(Letter::from_column(c as usize));
                }
            }
            i += 1;
        }
        debug_assert_eq!(order.len(), n);
        // right multiplication by each column in the new numbering
        let right = |e: usize, c: usize| number[self.get(order[e], c as u32) as usize] as usize;
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            mul[a * n] = a as u32;
            for b in 1..n {
                let p = parent[b].index();
                let ap = mul[a * n + p] as usize;
                mul[a * n + b] = right(ap, letter[b].column()) as u32;
            }
        }
        let generator_images = (0..generator_count)
            .map(|g| ElementId::new(right(0, 2 * g)))
            .collect();
        let table = GroupTable::from_flat(n, mul).expect("complete coset table gives a group");
        EnumeratedGroup {
            table,
            generator_images,
            parent,
            letter,
        }
    }
}

/// Enumerates the group presented by `p` with at most `budget` live rows.
pub fn enumerate_presented_group(p: &Presentation, budget: usize) -> Result<EnumeratedGroup> {
    if budget == 0 {
        return Err(MlaError::Precondition("budget must be at least 1".into()));
    }
    if p.generator_count == 0 {
        let table = GroupTable::from_rows(&[vec![0]])?;
        return Ok(EnumeratedGroup {
            table,
            generator_images: Vec::new(),
            parent: vec![ElementId::IDENTITY],
            letter: vec![Letter::gen(0)],
        });
    }
    let mut e = Enumerator::new(p, budget);
    e.run()?;
    Ok(e.finish(p.generator_count))
}
