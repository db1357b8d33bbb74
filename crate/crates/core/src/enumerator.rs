//! Todd–Coxeter coset enumeration (HLT strategy with coincidence
//! processing), permutation actions, and group orders of finite Coxeter
//! groups via chains of maximal parabolics.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::diagram::{delete_node, finite_order, CoxeterMatrix};
use crate::presentation::{coxeter_presentation, Letter, Presentation, Word};

/// Cap on live cosets when no index prediction is available.
pub const DEFAULT_MAX_COSETS: usize = 1_000_000;

/// Limit for an enumeration whose index is predicted to be `predicted`.
pub fn default_limit(predicted: Option<u128>, fallback: usize) -> usize {
    match predicted {
        Some(p) => usize::try_from(p.saturating_mul(10)).unwrap_or(usize::MAX).max(100_000),
        None => fallback,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("coset enumeration exceeded {limit} live cosets (the index may be infinite)")]
    Exceeded { limit: usize },
    #[error("subgroup word uses generator {gen} but the presentation has {count}")]
    BadSubgroupWord { gen: usize, count: usize },
    #[error("permutation images are inconsistent: {0}")]
    BadAction(String),
}

/// Permutation images of each generator on points `0..degree`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PermutationAction {
    degree: usize,
    images: Vec<Vec<usize>>,
}

impl PermutationAction {
    /// Degree is taken from the first image (1 when there are no generators).
    pub fn new(images: Vec<Vec<usize>>) -> Result<Self, EnumerateError> {
        let degree = images.first().map_or(1, Vec::len);
        Self::with_degree(degree, images)
    }

    pub fn with_degree(degree: usize, images: Vec<Vec<usize>>) -> Result<Self, EnumerateError> {
        for (g, img) in images.iter().enumerate() {
            if img.len() != degree {
                return Err(EnumerateError::BadAction(format!("generator {} has wrong degree", g + 1)));
            }
            let mut seen = vec![false; degree];
            for &x in img {
                if x >= degree || std::mem::replace(&mut seen[x], true) {
                    return Err(EnumerateError::BadAction(format!("generator {} is not a bijection", g + 1)));
                }
            }
        }
        Ok(PermutationAction { degree, images })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generator_count(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, gen: usize, point: usize) -> usize {
        self.images[gen][point]
    }

    pub fn images(&self, gen: usize) -> &[usize] {
        &self.images[gen]
    }

    pub fn inverse_image(&self, gen: usize, point: usize) -> usize {
        self.images[gen].iter().position(|&x| x == point).expect("bijection")
    }

    /// Right action of a word: letters are applied left to right.
    pub fn apply_word(&self, point: usize, w: &Word) -> usize {
        w.letters().iter().fold(point, |p, l| if l.inv { self.inverse_image(l.gen, p) } else { self.image(l.gen, p) })
    }

    pub fn is_transitive(&self) -> bool {
        let mut seen = vec![false; self.degree];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(p) = stack.pop() {
            for img in &self.images {
                let q = img[p];
                if !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Copy with one generator's image replaced; used to build test fixtures.
    pub fn with_image(&self, gen: usize, image: Vec<usize>) -> Result<Self, EnumerateError> {
        let mut images = self.images.clone();
        images[gen] = image;
        Self::with_degree(self.degree, images)
    }
}

/// Complete coset table in standard form: coset 0 is the subgroup and
/// the remaining cosets are numbered in breadth-first order over the
/// generators in declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    generators: Vec<String>,
    /// `fwd[g][c]` is the coset `c·g`.
    fwd: Vec<Vec<usize>>,
    reps: Vec<Word>,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.reps.len()
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn image(&self, coset: usize, gen: usize) -> usize {
        self.fwd[gen][coset]
    }

    pub fn apply_letter(&self, coset: usize, l: Letter) -> usize {
        if l.inv {
            self.fwd[l.gen].iter().position(|&x| x == coset).expect("complete table")
        } else {
            self.fwd[l.gen][coset]
        }
    }

    pub fn apply_word(&self, coset: usize, w: &Word) -> usize {
        w.letters().iter().fold(coset, |c, &l| self.apply_letter(c, l))
    }

    /// Shortest-first representative word of each coset (`reps[0]` is empty).
    pub fn representative(&self, coset: usize) -> &Word {
        &self.reps[coset]
    }

    pub fn action(&self) -> PermutationAction {
        PermutationAction::with_degree(self.index(), self.fwd.clone()).expect("complete table")
    }

    /// Post-hoc check, independent of how the table was built: every
    /// relator fixes every coset and every subgroup word fixes coset 0.
    pub fn verify(&self, p: &Presentation, sub: &[Word]) -> bool {
        let act = self.action();
        p.relators().iter().all(|r| (0..self.index()).all(|c| act.apply_word(c, r) == c))
            && sub.iter().all(|w| act.apply_word(0, w) == 0)
    }

    /// Hex SHA-256 of the table entries.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.index() as u64).to_le_bytes());
        h.update((self.fwd.len() as u64).to_le_bytes());
        for col in &self.fwd {
            for &x in col {
                h.update((x as u64).to_le_bytes());
            }
        }
        h.finalize().iter().fold(String::new(), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
    }

    /// CSV dump: header of generator names, then one row per coset with
    /// one-based images.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("coset");
        for g in &self.generators {
            s.push(',');
            s.push_str(g);
        }
        s.push('\n');
        for c in 0..self.index() {
            let _ = write!(s, "{}", c + 1);
            for col in &self.fwd {
                let _ = write!(s, ",{}", col[c] + 1);
            }
            s.push('\n');
        }
        s
    }
}

const NONE: u32 = u32::MAX;

struct Enumerator {
    ncols: usize,
    inv: Vec<usize>,
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    limit: usize,
    queue: Vec<u32>,
}

impl Enumerator {
    fn rows(&self) -> usize {
        self.parent.len()
    }

    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.ncols + x]
    }

    fn set(&mut self, c: u32, x: usize, v: u32) {
        self.table[c as usize * self.ncols + x] = v;
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn new_coset(&mut self) -> Result<u32, EnumerateError> {
        if self.live >= self.limit {
            return Err(EnumerateError::Exceeded { limit: self.limit });
        }
        let c = self.rows() as u32;
        self.parent.push(c);
        self.table.extend(std::iter::repeat_n(NONE, self.ncols));
        self.live += 1;
        Ok(c)
    }

    fn define(&mut self, c: u32, x: usize) -> Result<u32, EnumerateError> {
        let d = self.new_coset()?;
        self.set(c, x, d);
        self.set(d, self.inv[x], c);
        Ok(d)
    }

    fn rep(&mut self, mut c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        while self.parent[c as usize] != root {
            let next = self.parent[c as usize];
            self.parent[c as usize] = root;
            c = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, kill) = if a < b { (a, b) } else { (b, a) };
        self.parent[kill as usize] = keep;
        self.live -= 1;
        self.queue.push(kill);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..self.ncols {
                let f = self.get(e, x);
                if f == NONE {
                    continue;
                }
                let xi = self.inv[x];
                self.set(f, xi, NONE);
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                let e1x = self.get(e1, x);
                if e1x != NONE {
                    self.merge(f1, e1x);
                } else {
                    let f1xi = self.get(f1, xi);
                    if f1xi != NONE {
                        self.merge(e1, f1xi);
                    } else {
                        self.set(e1, x, f1);
                        self.set(f1, xi, e1);
                    }
                }
            }
        }
    }

    /// HLT scan of `w` at `c`, defining cosets to complete it.
    fn scan_and_fill(&mut self, c: u32, w: &[usize]) -> Result<(), EnumerateError> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = c;
        let mut i = 0usize;
        let mut b = c;
        let mut j = w.len() - 1;
        loop {
            while i <= j {
                let n = self.get(f, w[i]);
                if n == NONE {
                    break;
                }
                f = n;
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i {
                let n = self.get(b, self.inv[w[j]]);
                if n == NONE {
                    break;
                }
                b = n;
                if j == 0 {
                    // Whole word traced backwards; i must be 0 as well.
                    if f != b {
                        self.coincidence(f, b);
                    }
                    return Ok(());
                }
                j -= 1;
            }
            if j < i {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            if i == j {
                self.set(f, w[i], b);
                self.set(b, self.inv[w[i]], f);
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    /// Renumbers live cosets in increasing order; returns the old→new map.
    fn compact(&mut self) -> Vec<u32> {
        let mut map = vec![NONE; self.rows()];
        let mut next = 0u32;
        for c in 0..self.rows() as u32 {
            if self.is_live(c) {
                map[c as usize] = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next as usize * self.ncols);
        for c in 0..self.rows() as u32 {
            if !self.is_live(c) {
                continue;
            }
            for x in 0..self.ncols {
                let v = self.get(c, x);
                table.push(if v == NONE { NONE } else { map[v as usize] });
            }
        }
        self.table = table;
        self.parent = (0..next).collect();
        map
    }
}

/// Enumerates the cosets of `⟨sub⟩` in the group presented by `p`,
/// failing once more than `max_cosets` cosets are live at one time.
///
/// Generators whose square is literally a relator share one column for
/// themselves and their inverse; every other generator gets two.
pub fn enumerate(p: &Presentation, sub: &[Word], max_cosets: usize) -> Result<CosetTable, EnumerateError> {
    let ngens = p.generators().len();
    for w in sub {
        if let Some(l) = w.letters().iter().find(|l| l.gen >= ngens) {
            return Err(EnumerateError::BadSubgroupWord { gen: l.gen + 1, count: ngens });
        }
    }
    let mut fwd_col = Vec::with_capacity(ngens);
    let mut inv_col = Vec::with_capacity(ngens);
    let mut inv = Vec::new();
    for g in 0..ngens {
        let c = inv.len();
        fwd_col.push(c);
        if p.is_involutory(g) {
            inv.push(c);
            inv_col.push(c);
        } else {
            inv.push(c + 1);
            inv.push(c);
            inv_col.push(c + 1);
        }
    }
    let col = |l: &Letter| if l.inv { inv_col[l.gen] } else { fwd_col[l.gen] };
    let to_cols = |w: &Word| -> Vec<usize> { w.letters().iter().map(col).collect() };
    let relators: Vec<Vec<usize>> = p.relators().iter().map(to_cols).collect();
    let subgens: Vec<Vec<usize>> = sub.iter().map(to_cols).collect();

    let ncols = inv.len();
    let mut e = Enumerator {
        ncols,
        inv,
        table: Vec::new(),
        parent: Vec::new(),
        live: 0,
        limit: max_cosets.max(1),
        queue: Vec::new(),
    };
    e.new_coset()?;
    for w in &subgens {
        e.scan_and_fill(0, w)?;
    }
    let mut c = 0u32;
    while (c as usize) < e.rows() {
        if e.is_live(c) {
            for r in &relators {
                e.scan_and_fill(c, r)?;
                if !e.is_live(c) {
                    break;
                }
            }
            for x in 0..ncols {
                if !e.is_live(c) {
                    break;
                }
                if e.get(c, x) == NONE {
                    e.define(c, x)?;
                }
            }
        }
        c += 1;
        let dead = e.rows() - e.live;
        if dead > 4096 && dead > e.live {
            let map = e.compact();
            // Resume at the first live coset after the old position.
            c = map[c as usize..].iter().copied().find(|&v| v != NONE).unwrap_or(e.rows() as u32);
        }
    }
    e.compact();

    // Standardize by breadth-first search over forward columns.
    let n = e.rows();
    let mut order = vec![NONE; n];
    let mut reps = vec![Word::identity()];
    let mut seen = vec![0u32];
    order[0] = 0;
    let mut q = VecDeque::from([0u32]);
    while let Some(old) = q.pop_front() {
        let word = reps[order[old as usize] as usize].clone();
        for (g, &col) in fwd_col.iter().enumerate() {
            let t = e.get(old, col);
            if order[t as usize] == NONE {
                order[t as usize] = seen.len() as u32;
                seen.push(t);
                reps.push(word.concat(&Word::gen(g)));
                q.push_back(t);
            }
        }
    }
    assert_eq!(seen.len(), n, "coset table is not connected");
    let fwd =
        (0..ngens).map(|g| seen.iter().map(|&old| order[e.get(old, fwd_col[g]) as usize] as usize).collect()).collect();
    Ok(CosetTable { generators: p.generators().to_vec(), fwd, reps })
}

/// Index of the parabolic on `nodes` in the Coxeter group of `m`.
pub fn parabolic_index(m: &CoxeterMatrix, nodes: &[usize], max_cosets: usize) -> Result<CosetTable, EnumerateError> {
    let p = coxeter_presentation(m);
    let sub: Vec<Word> = nodes.iter().map(|&i| Word::gen(i)).collect();
    enumerate(&p, &sub, max_cosets)
}

/// Order of a finite Coxeter group as a product of indices along the
/// chain obtained by repeatedly deleting the highest-numbered node.
pub fn order_via_parabolic_chain(m: &CoxeterMatrix) -> Result<u128, EnumerateError> {
    order_via_parabolic_chain_with(m, DEFAULT_MAX_COSETS)
}

pub fn order_via_parabolic_chain_with(m: &CoxeterMatrix, fallback: usize) -> Result<u128, EnumerateError> {
    let mut order = 1u128;
    let mut cur = m.clone();
    while cur.rank() > 0 {
        let last = cur.rank() - 1;
        let next = delete_node(&cur, last).expect("node in range").matrix;
        let predicted = finite_order(&cur).zip(finite_order(&next)).map(|(a, b)| a / b);
        let nodes: Vec<usize> = (0..last).collect();
        let t = parabolic_index(&cur, &nodes, default_limit(predicted, fallback))?;
        order *= t.index() as u128;
        cur = next;
    }
    Ok(order)
}

/// The regular representation of a finite Coxeter group: one coset of
/// the trivial subgroup per element.
#[derive(Clone, Debug)]
pub struct ElementTable {
    table: CosetTable,
}

/// Enumerates all elements of `W(m)` if its order is at most `cap`.
pub fn regular_elements(m: &CoxeterMatrix, cap: usize) -> Result<ElementTable, EnumerateError> {
    let predicted = finite_order(m);
    if predicted.is_some_and(|o| o > cap as u128) {
        return Err(EnumerateError::Exceeded { limit: cap });
    }
    let limit = default_limit(predicted, cap.saturating_mul(10));
    let table = enumerate(&coxeter_presentation(m), &[], limit)?;
    if table.index() > cap {
        return Err(EnumerateError::Exceeded { limit: cap });
    }
    Ok(ElementTable { table })
}

impl ElementTable {
    pub fn order(&self) -> usize {
        self.table.index()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn generator(&self, i: usize) -> usize {
        self.table.image(0, i)
    }

    pub fn word(&self, a: usize) -> &Word {
        self.table.representative(a)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table.apply_word(a, self.table.representative(b))
    }

    pub fn mul_gen(&self, a: usize, i: usize) -> usize {
        self.table.image(a, i)
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.table.apply_word(0, &self.table.representative(a).inverse())
    }

    pub fn element_of(&self, w: &Word) -> usize {
        self.table.apply_word(0, w)
    }

    /// Subgroup generated by `gens`, as a sorted element list.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(a) = stack.pop() {
            for &g in gens {
                let b = self.mul(a, g);
                if !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        (0..self.order()).filter(|&a| seen[a]).collect()
    }

    pub fn table(&self) -> &CosetTable {
        &self.table
    }
}
