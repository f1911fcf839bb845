//! Linear enumeration of the quotient of the braid group algebra by the
//! relation polynomials: a module-style coset enumeration over the field
//! of coefficients.
//!
//! Words over the positive generators are discovered breadth-first in the
//! action of right multiplication; every relation instance at every basis
//! word contributes a linear row, maintained in mutually reduced echelon
//! form with degree-lexicographically maximal pivots.  The loop repeats
//! until one full sweep adds no row, at which point right multiplication
//! by every generator maps the surviving (non-pivot) words into their own
//! span and the relations hold at every basis vector.  That final clean
//! sweep certifies the result: the span is a cyclic right module over the
//! quotient algebra on which all defining relations vanish, so its
//! dimension equals the algebra dimension.

use super::EnumerationParts;
use crate::braid::{deglex, BraidPresentation, RelationSet, Word};
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::poly::IntPoly;
use std::collections::{BTreeMap, HashMap};

type SparseVec = BTreeMap<usize, CycNum>;

fn add_scaled(dst: &mut SparseVec, src: &SparseVec, c: &CycNum) {
    if c.is_zero() {
        return;
    }
    for (w, x) in src {
        let entry = dst.entry(*w).or_insert_with(CycNum::zero);
        *entry = entry.add(&x.mul(c));
        if entry.is_zero() {
            dst.remove(w);
        }
    }
}

/// `e_pivot = body`, with `body` supported on non-pivot words strictly
/// smaller than the pivot in deglex.
struct Row {
    body: SparseVec,
}

struct Enumerator<'a> {
    pres: &'a BraidPresentation,
    rels: &'a RelationSet,
    k: usize,
    dim_cap: usize,
    words: Vec<Word>,
    parents: Vec<Option<(usize, u8)>>,
    word_ids: HashMap<Word, usize>,
    rows: Vec<Row>,
    pivot_of: HashMap<usize, usize>,
    version: u64,
    edge_cache: HashMap<(usize, u8), (u64, SparseVec)>,
}

impl<'a> Enumerator<'a> {
    fn new(pres: &'a BraidPresentation, rels: &'a RelationSet, dim_cap: usize) -> Self {
        let mut e = Enumerator {
            pres,
            rels,
            k: pres.generator_count(),
            dim_cap,
            words: Vec::new(),
            parents: Vec::new(),
            word_ids: HashMap::new(),
            rows: Vec::new(),
            pivot_of: HashMap::new(),
            version: 0,
            edge_cache: HashMap::new(),
        };
        e.register(Word::new(), None);
        e
    }

    fn register(&mut self, word: Word, parent: Option<(usize, u8)>) -> usize {
        if let Some(&id) = self.word_ids.get(&word) {
            return id;
        }
        let id = self.words.len();
        self.word_ids.insert(word.clone(), id);
        self.words.push(word);
        self.parents.push(parent);
        id
    }

    fn is_pivot(&self, w: usize) -> bool {
        self.pivot_of.contains_key(&w)
    }

    fn basis_count(&self) -> usize {
        self.words.len() - self.rows.len()
    }

    fn word_max(&self, v: &SparseVec) -> usize {
        *v.keys()
            .max_by(|&&a, &&b| deglex(&self.words[a], &self.words[b]))
            .expect("nonempty vector")
    }

    /// Eliminate every pivot word from the support.
    fn reduce(&self, v: &mut SparseVec) {
        loop {
            let hit: Vec<(usize, CycNum)> = v
                .iter()
                .filter(|(w, _)| self.is_pivot(**w))
                .map(|(w, c)| (*w, c.clone()))
                .collect();
            if hit.is_empty() {
                return;
            }
            for (w, c) in hit {
                v.remove(&w);
                let row = &self.rows[self.pivot_of[&w]];
                add_scaled(v, &row.body, &c);
            }
        }
    }

    /// Reduced form of a single word.
    fn red_word(&self, w: usize) -> SparseVec {
        match self.pivot_of.get(&w) {
            Some(&r) => self.rows[r].body.clone(),
            None => {
                let mut v = SparseVec::new();
                v.insert(w, CycNum::one());
                v
            }
        }
    }

    /// Reduced form of `[word(w)] * g`, memoized against the current row
    /// version (stale entries are re-reduced, which is sound because
    /// reduction only refines).
    fn act_word(&mut self, w: usize, g: u8) -> SparseVec {
        if let Some((ver, v)) = self.edge_cache.get(&(w, g)) {
            if *ver == self.version {
                return v.clone();
            }
            let mut v = v.clone();
            self.reduce(&mut v);
            self.edge_cache.insert((w, g), (self.version, v.clone()));
            return v;
        }
        let mut word = self.words[w].clone();
        word.push(g);
        let target = self.register(word, Some((w, g)));
        let v = self.red_word(target);
        self.edge_cache.insert((w, g), (self.version, v.clone()));
        v
    }

    fn act(&mut self, v: &SparseVec, g: u8) -> SparseVec {
        let mut out = SparseVec::new();
        for (w, c) in v {
            let image = self.act_word(*w, g);
            add_scaled(&mut out, &image, c);
        }
        out
    }

    fn walk(&mut self, start: &SparseVec, word: &Word) -> SparseVec {
        let mut v = start.clone();
        for &g in word {
            v = self.act(&v, g);
        }
        v
    }

    /// Apply `R(right-multiplication-by-g)` to a vector.
    fn poly_apply(&mut self, start: &SparseVec, poly: &IntPoly, g: u8) -> SparseVec {
        let mut out = SparseVec::new();
        let mut power = start.clone();
        let deg = poly.degree().expect("relation polynomial is nonzero");
        for kdeg in 0..=deg {
            let c = CycNum::from_rational(num_rational::BigRational::from_integer(
                poly.coeff(kdeg),
            ));
            add_scaled(&mut out, &power, &c);
            if kdeg < deg {
                power = self.act(&power, g);
            }
        }
        out
    }

    /// Insert a relation vector; returns whether a new row appeared.
    fn insert(&mut self, mut v: SparseVec) -> bool {
        self.reduce(&mut v);
        if v.is_empty() {
            return false;
        }
        let pivot = self.word_max(&v);
        let pivot_coeff = v.remove(&pivot).expect("pivot is in support");
        let scale = pivot_coeff.inv().expect("pivot coefficient nonzero").neg();
        let mut body = SparseVec::new();
        add_scaled(&mut body, &v, &scale);
        // back-substitute into existing rows
        let new_row = self.rows.len();
        for row in self.rows.iter_mut() {
            if let Some(c) = row.body.remove(&pivot) {
                add_scaled(&mut row.body, &body, &c);
            }
        }
        self.rows.push(Row { body });
        self.pivot_of.insert(pivot, new_row);
        self.version += 1;
        true
    }

    /// One full pass: every relation at every basis word, then parent
    /// repair (a word whose prefix was rewritten gets re-derived from the
    /// prefix's reduced value).
    fn sweep(&mut self) -> Result<bool> {
        let mut changed = false;
        let snapshot: Vec<usize> = (0..self.words.len()).collect();
        for b in snapshot {
            if self.is_pivot(b) {
                continue;
            }
            let e_b = self.red_word(b);
            for g in 0..self.k {
                let poly = self.rels.poly_for_generator(g).clone();
                let v = self.poly_apply(&e_b, &poly, g as u8);
                changed |= self.insert(v);
            }
            for (w1, w2) in self.pres.relations().to_vec() {
                let lhs = self.walk(&e_b, &w1);
                let rhs = self.walk(&e_b, &w2);
                let mut v = lhs;
                let minus_one = CycNum::from_i64(-1);
                add_scaled(&mut v, &rhs, &minus_one);
                changed |= self.insert(v);
            }
            if self.basis_count() > self.guard() {
                return Err(Error::DimCapExceeded(self.dim_cap));
            }
        }
        // parent repair, shortest words first
        let mut order: Vec<usize> = (0..self.words.len()).collect();
        order.sort_by(|&a, &b| deglex(&self.words[a], &self.words[b]));
        for w in order {
            if self.is_pivot(w) {
                continue;
            }
            let Some((p, g)) = self.parents[w] else { continue };
            if !self.is_pivot(p) {
                continue;
            }
            let from_parent = {
                let red_p = self.red_word(p);
                self.act(&red_p, g)
            };
            let mut v = SparseVec::new();
            v.insert(w, CycNum::one());
            let minus_one = CycNum::from_i64(-1);
            add_scaled(&mut v, &from_parent, &minus_one);
            changed |= self.insert(v);
        }
        Ok(changed)
    }

    fn guard(&self) -> usize {
        (2 * self.dim_cap).max(self.dim_cap + 64)
    }

    fn run(mut self) -> Result<EnumerationParts> {
        loop {
            let changed = self.sweep()?;
            if self.basis_count() > self.guard() {
                return Err(Error::DimCapExceeded(self.dim_cap));
            }
            if !changed {
                break;
            }
        }

        // collect the certified basis
        let mut basis_ids: Vec<usize> =
            (0..self.words.len()).filter(|w| !self.is_pivot(*w)).collect();
        basis_ids.sort_by(|&a, &b| deglex(&self.words[a], &self.words[b]));
        if basis_ids.is_empty() || !self.words[basis_ids[0]].is_empty() {
            return Err(Error::ZeroAlgebra);
        }
        let dim = basis_ids.len();
        if dim > self.dim_cap {
            return Err(Error::DimCapExceeded(self.dim_cap));
        }
        let index_of: HashMap<usize, usize> =
            basis_ids.iter().enumerate().map(|(i, w)| (*w, i)).collect();
        let to_column = |v: &SparseVec, index_of: &HashMap<usize, usize>| -> Vec<CycNum> {
            let mut col = vec![CycNum::zero(); dim];
            for (w, c) in v {
                col[index_of[w]] = c.clone();
            }
            col
        };

        // right multiplication matrices
        let mut right_mult = Vec::with_capacity(self.k);
        for g in 0..self.k {
            let mut m = Mat::zeros(dim, dim);
            for (j, &b) in basis_ids.iter().enumerate() {
                let v = self.act_word(b, g as u8);
                debug_assert!(v.keys().all(|w| !self.is_pivot(*w)));
                for (w, c) in &v {
                    m[(index_of[w], j)] = c.clone();
                }
            }
            right_mult.push(m);
        }

        // generator images (the reduced value of the one-letter words)
        let mut generator_images = Vec::with_capacity(self.k);
        for g in 0..self.k {
            let e = {
                let mut v = SparseVec::new();
                v.insert(0, CycNum::one());
                v
            };
            let img = self.act(&e, g as u8);
            generator_images.push(to_column(&img, &index_of));
        }

        let basis = basis_ids.iter().map(|&w| self.words[w].clone()).collect();
        Ok(EnumerationParts { basis, right_mult, generator_images })
    }
}

/// Run the enumeration; see the module documentation for the algorithm
/// and its termination certificate.
pub fn enumerate_quotient(
    pres: &BraidPresentation,
    rels: &RelationSet,
    dim_cap: usize,
) -> Result<EnumerationParts> {
    if rels.generator_orbits().len() != pres.generator_count() {
        return Err(Error::BadRelationSet(format!(
            "relation set covers {} generators, presentation has {}",
            rels.generator_orbits().len(),
            pres.generator_count()
        )));
    }
    Enumerator::new(pres, rels, dim_cap).run()
}
