//! The finite-dimensional quotient algebra `C[B_W] / <R_s(s_hat)>` and its
//! structural invariants.

mod enumerator;

pub use enumerator::enumerate_quotient;

use crate::braid::{word_to_string, BraidPresentation, NCPoly, RelationSet, Word};
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::linalg::{krylov_min_poly, Mat};
use crate::poly::CycPoly;
use num_rational::BigRational;
use serde::Serialize;

/// Raw output of the vector enumeration.
pub struct EnumerationParts {
    pub basis: Vec<Word>,
    pub right_mult: Vec<Mat>,
    pub generator_images: Vec<Vec<CycNum>>,
}

/// Basis words, generator action matrices and metadata of a quotient of a
/// braid group algebra. The basis starts with the empty word (the unit).
#[derive(Debug, Clone)]
pub struct FinDimAlgebra {
    presentation: BraidPresentation,
    relations: RelationSet,
    basis: Vec<Word>,
    /// Right multiplication by each generator: column `j` is `e_j * g`.
    right_mult: Vec<Mat>,
    /// Left multiplication by each generator: column `j` is `g * e_j`.
    left_mult: Vec<Mat>,
    generator_images: Vec<Vec<CycNum>>,
    /// Opposite algebras reinterpret products as `x o y = y x`.
    opposed: bool,
    fingerprint: u64,
}

/// Build the quotient algebra by vector enumeration and certify the
/// result (clean relation sweep, unit generators, reachable basis).
pub fn build_quotient_algebra(
    pres: &BraidPresentation,
    rels: &RelationSet,
    dim_cap: usize,
) -> Result<FinDimAlgebra> {
    let parts = enumerate_quotient(pres, rels, dim_cap)?;
    let alg = FinDimAlgebra::assemble(pres.clone(), rels.clone(), parts)?;
    alg.verify_generators_are_units()?;
    Ok(alg)
}

impl FinDimAlgebra {
    fn assemble(
        presentation: BraidPresentation,
        relations: RelationSet,
        parts: EnumerationParts,
    ) -> Result<Self> {
        let EnumerationParts { basis, right_mult, generator_images } = parts;
        let dim = basis.len();
        let k = presentation.generator_count();
        // left multiplication: g * e_j = (image of g) * e_j, folding the
        // right-multiplication letters of the basis word
        let mut left_mult = Vec::with_capacity(k);
        for g in 0..k {
            let mut m = Mat::zeros(dim, dim);
            for j in 0..dim {
                let col = fold_word_right(&right_mult, &generator_images[g], &basis[j]);
                for (i, c) in col.into_iter().enumerate() {
                    if !c.is_zero() {
                        m[(i, j)] = c;
                    }
                }
            }
            left_mult.push(m);
        }
        let mut h = crate::braid::Fnv::new();
        h.write(&presentation.fingerprint().to_le_bytes());
        h.write(&relations.fingerprint().to_le_bytes());
        let fingerprint = h.finish();
        Ok(FinDimAlgebra {
            presentation,
            relations,
            basis,
            right_mult,
            left_mult,
            generator_images,
            opposed: false,
            fingerprint,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn presentation(&self) -> &BraidPresentation {
        &self.presentation
    }

    pub fn relations(&self) -> &RelationSet {
        &self.relations
    }

    pub fn basis_words(&self) -> &[Word] {
        &self.basis
    }

    pub fn is_opposed(&self) -> bool {
        self.opposed
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn unit(&self) -> Vec<CycNum> {
        let mut v = vec![CycNum::zero(); self.dim()];
        v[0] = CycNum::one();
        v
    }

    /// The image of generator `g` in the algebra.
    pub fn generator(&self, g: usize) -> Vec<CycNum> {
        self.generator_images[g].clone()
    }

    /// `x o e_j` in this algebra's product (right multiplication by the
    /// j-th basis element).
    fn mul_basis_right(&self, x: &[CycNum], j: usize) -> Vec<CycNum> {
        if self.opposed {
            // x o e_j = e_j * x = (letters applied right-to-left on the left)
            fold_word_left(&self.left_mult(), x, &self.basis[j])
        } else {
            fold_word_right(&self.right_mult, x, &self.basis[j])
        }
    }

    fn left_mult(&self) -> &[Mat] {
        // in an opposed algebra the stored lists keep their original
        // meaning; the product methods reinterpret them
        &self.left_mult
    }

    /// Product of two coefficient vectors in this algebra.
    pub fn mul_vec(&self, x: &[CycNum], y: &[CycNum]) -> Vec<CycNum> {
        let mut acc = vec![CycNum::zero(); self.dim()];
        for (j, c) in y.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = self.mul_basis_right(x, j);
            for (a, t) in acc.iter_mut().zip(term.into_iter()) {
                if !t.is_zero() {
                    *a = a.add(&t.mul(c));
                }
            }
        }
        acc
    }

    /// Structure constants: the product `e_i o e_j` in the basis.
    pub fn product_of_basis(&self, i: usize, j: usize) -> Vec<CycNum> {
        let mut e_i = vec![CycNum::zero(); self.dim()];
        e_i[i] = CycNum::one();
        self.mul_basis_right(&e_i, j)
    }

    /// Reduce a noncommutative polynomial in the generators and their
    /// inverses to a coefficient vector.
    pub fn element(&self, x: &NCPoly) -> Result<Vec<CycNum>> {
        let mut acc = vec![CycNum::zero(); self.dim()];
        let inverses = self.generator_inverses()?;
        for (word, coeff) in x.terms() {
            let mut v = self.unit();
            for &letter in &word.0 {
                let factor = if letter > 0 {
                    &self.generator_images[(letter - 1) as usize]
                } else {
                    &inverses[(-letter - 1) as usize]
                };
                v = self.mul_vec(&v, factor);
            }
            for (a, t) in acc.iter_mut().zip(v.into_iter()) {
                *a = a.add(&t.mul(coeff));
            }
        }
        Ok(acc)
    }

    /// Inverse images of the generators, read off the relation polynomial:
    /// if `R(z) = z^n + c_{n-1} z^{n-1} + ... + c_0` with `c_0 != 0`, then
    /// `z^{-1} = -(z^{n-1} + c_{n-1} z^{n-2} + ... + c_1) / c_0`.
    pub fn generator_inverses(&self) -> Result<Vec<Vec<CycNum>>> {
        let k = self.presentation.generator_count();
        let mut out = Vec::with_capacity(k);
        for g in 0..k {
            let r = self.relations.poly_for_generator(g);
            let n = r.degree().expect("relation has positive degree");
            let c0 = CycNum::from_rational(BigRational::from_integer(r.coeff(0)));
            let neg_c0_inv = c0.inv()?.neg();
            // Horner: h = z^{n-1} + c_{n-1} z^{n-2} + ... + c_1
            let gen = &self.generator_images[g];
            let mut h = self.unit(); // coefficient of z^{n-1}
            for kdeg in (1..n).rev() {
                let mut next = self.mul_vec(&h, gen);
                let c = CycNum::from_rational(BigRational::from_integer(r.coeff(kdeg)));
                next[0] = next[0].add(&c);
                h = next;
            }
            let inv: Vec<CycNum> = h.iter().map(|x| x.mul(&neg_c0_inv)).collect();
            out.push(inv);
        }
        Ok(out)
    }

    fn verify_generators_are_units(&self) -> Result<()> {
        let inverses = self.generator_inverses()?;
        for (g, inv) in inverses.iter().enumerate() {
            let li = self.mul_vec(inv, &self.generator_images[g]);
            let ri = self.mul_vec(&self.generator_images[g], inv);
            if li != self.unit() || ri != self.unit() {
                return Err(Error::BadRelationSet(format!(
                    "generator {g} is not invertible via its relation polynomial"
                )));
            }
        }
        Ok(())
    }

    /// Minimal polynomial of an element (monic, over the coefficient
    /// field), by Krylov iteration from the unit.
    pub fn min_poly_of_vec(&self, x: &[CycNum]) -> Result<CycPoly> {
        let x = x.to_vec();
        krylov_min_poly(self.unit(), |v| self.mul_vec(v, &x))
    }

    pub fn min_poly(&self, x: &NCPoly) -> Result<CycPoly> {
        let v = self.element(x)?;
        self.min_poly_of_vec(&v)
    }

    pub fn generator_min_polys(&self) -> Result<Vec<CycPoly>> {
        (0..self.presentation.generator_count())
            .map(|g| self.min_poly_of_vec(&self.generator_images[g]))
            .collect()
    }

    /// Left regular representation matrix of an element.
    pub fn left_regular_matrix(&self, x: &[CycNum]) -> Mat {
        let dim = self.dim();
        let mut m = Mat::zeros(dim, dim);
        for j in 0..dim {
            let mut e_j = vec![CycNum::zero(); dim];
            e_j[j] = CycNum::one();
            let col = self.mul_vec(x, &e_j);
            for (i, c) in col.into_iter().enumerate() {
                if !c.is_zero() {
                    m[(i, j)] = c;
                }
            }
        }
        m
    }

    /// All pairwise basis products (the full structure-constant table).
    pub fn product_table(&self) -> Vec<Vec<Vec<CycNum>>> {
        let dim = self.dim();
        (0..dim).map(|i| (0..dim).map(|j| self.product_of_basis(i, j)).collect()).collect()
    }

    /// Trace bilinear form `T(a, b) = trace(L_a L_b)` on the basis, the
    /// semisimplicity verdict (nondegenerate trace form in characteristic
    /// zero) and the radical dimension (the nullity of `T`, which equals
    /// the Jacobson radical dimension over a perfect field).
    pub fn trace_form_analysis(&self) -> TraceFormAnalysis {
        let dim = self.dim();
        let table = self.product_table();
        // t_m = trace(L_{e_m}) = sum_j coefficient of e_j in e_m e_j
        let mut traces = vec![CycNum::zero(); dim];
        for m in 0..dim {
            let mut acc = CycNum::zero();
            for j in 0..dim {
                acc = acc.add(&table[m][j][j]);
            }
            traces[m] = acc;
        }
        // T_{ij} = trace(L_{e_i e_j}) = sum_m (e_i e_j)_m t_m
        let mut t = Mat::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                let mut acc = CycNum::zero();
                for (m, tm) in traces.iter().enumerate() {
                    let c = &table[i][j][m];
                    if !c.is_zero() && !tm.is_zero() {
                        acc = acc.add(&c.mul(tm));
                    }
                }
                t[(i, j)] = acc;
            }
        }
        let rank = t.rank();
        TraceFormAnalysis {
            semisimple: rank == dim,
            radical_dim: dim - rank,
        }
    }

    pub fn is_semisimple(&self) -> bool {
        self.trace_form_analysis().semisimple
    }

    /// Dimension of the center: elements commuting with every generator.
    pub fn center_dim(&self) -> usize {
        let dim = self.dim();
        let k = self.presentation.generator_count();
        let mut stacked = Vec::new();
        for g in 0..k {
            let l = self.left_regular_matrix(&self.generator_images[g]);
            let gen = self.generator_images[g].clone();
            // right regular matrix of the generator
            let mut r = Mat::zeros(dim, dim);
            for j in 0..dim {
                let mut e_j = vec![CycNum::zero(); dim];
                e_j[j] = CycNum::one();
                let col = self.mul_vec(&e_j, &gen);
                for (i, c) in col.into_iter().enumerate() {
                    if !c.is_zero() {
                        r[(i, j)] = c;
                    }
                }
            }
            let d = l.sub(&r);
            for i in 0..dim {
                stacked.push(d.row(i).to_vec());
            }
        }
        if stacked.is_empty() {
            return dim;
        }
        Mat::from_rows(stacked).kernel_basis().len()
    }

    pub fn is_commutative(&self) -> bool {
        self.center_dim() == self.dim()
    }

    /// The opposite algebra: same basis, products reversed (transposed
    /// structure constants).
    pub fn opposite(&self) -> FinDimAlgebra {
        FinDimAlgebra {
            presentation: self.presentation.clone(),
            relations: self.relations.clone(),
            basis: self.basis.clone(),
            right_mult: self.right_mult.clone(),
            left_mult: self.left_mult.clone(),
            generator_images: self.generator_images.clone(),
            opposed: !self.opposed,
            fingerprint: self.fingerprint,
        }
    }

    /// Exhaustive associativity check over all basis triples.
    pub fn verify_associativity(&self) -> bool {
        let dim = self.dim();
        let table = self.product_table();
        for i in 0..dim {
            for j in 0..dim {
                let ij = &table[i][j];
                for k in 0..dim {
                    // (e_i e_j) e_k
                    let mut lhs = vec![CycNum::zero(); dim];
                    for (m, c) in ij.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        for (x, t) in lhs.iter_mut().zip(table[m][k].iter()) {
                            if !t.is_zero() {
                                *x = x.add(&t.mul(c));
                            }
                        }
                    }
                    // e_i (e_j e_k)
                    let jk = &table[j][k];
                    let mut rhs = vec![CycNum::zero(); dim];
                    for (m, c) in jk.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        for (x, t) in rhs.iter_mut().zip(table[i][m].iter()) {
                            if !t.is_zero() {
                                *x = x.add(&t.mul(c));
                            }
                        }
                    }
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Check the defining relations columnwise in the regular
    /// representation (cheap certification; the builder's final clean
    /// sweep already guarantees this).
    pub fn verify_relations(&self) -> bool {
        let dim = self.dim();
        for j in 0..dim {
            let mut e_j = vec![CycNum::zero(); dim];
            e_j[j] = CycNum::one();
            for (w1, w2) in self.presentation.relations() {
                let a = fold_word_right(&self.right_mult, &e_j, w1);
                let b = fold_word_right(&self.right_mult, &e_j, w2);
                if a != b {
                    return false;
                }
            }
            for g in 0..self.presentation.generator_count() {
                let r = self.relations.poly_for_generator(g);
                let n = r.degree().unwrap();
                let mut acc = vec![CycNum::zero(); dim];
                let mut power = e_j.clone();
                for kdeg in 0..=n {
                    let c = CycNum::from_rational(BigRational::from_integer(r.coeff(kdeg)));
                    if !c.is_zero() {
                        for (a, p) in acc.iter_mut().zip(power.iter()) {
                            *a = a.add(&p.mul(&c));
                        }
                    }
                    if kdeg < n {
                        power = fold_word_right(&self.right_mult, &power, &[g as u8]);
                    }
                }
                if acc.iter().any(|c| !c.is_zero()) {
                    return false;
                }
            }
        }
        true
    }

    /// Human-readable basis words.
    pub fn basis_word_strings(&self) -> Vec<String> {
        self.basis
            .iter()
            .map(|w| word_to_string(w, self.presentation.generator_names()))
            .collect()
    }

    pub fn report(&self) -> Result<AlgebraReport> {
        let min_polys = self.generator_min_polys()?;
        let analysis = self.trace_form_analysis();
        Ok(AlgebraReport {
            dim: self.dim(),
            basis_words: self.basis_word_strings(),
            generator_min_polys: self
                .presentation
                .generator_names()
                .iter()
                .zip(min_polys.iter())
                .map(|(n, p)| (n.clone(), format_min_poly(p)))
                .collect(),
            semisimple: analysis.semisimple,
            radical_dim: analysis.radical_dim,
            center_dim: self.center_dim(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceFormAnalysis {
    pub semisimple: bool,
    pub radical_dim: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct AlgebraReport {
    pub dim: usize,
    pub basis_words: Vec<String>,
    pub generator_min_polys: Vec<(String, String)>,
    pub semisimple: bool,
    pub radical_dim: usize,
    pub center_dim: usize,
}

pub fn format_min_poly(p: &CycPoly) -> String {
    match p.to_int() {
        Some(ip) => ip.to_string(),
        None => p.to_string(),
    }
}

/// Fold right multiplication along the letters of a word.
fn fold_word_right(right_mult: &[Mat], start: &[CycNum], word: &[u8]) -> Vec<CycNum> {
    let mut v = start.to_vec();
    for &g in word {
        v = right_mult[g as usize].apply(&v);
    }
    v
}

/// Fold left multiplication along the reversed letters of a word:
/// computes `(word) * x` from left multiplication matrices.
fn fold_word_left(left_mult: &[Mat], start: &[CycNum], word: &[u8]) -> Vec<CycNum> {
    let mut v = start.to_vec();
    for &g in word.iter().rev() {
        v = left_mult[g as usize].apply(&v);
    }
    v
}

// ---------------------------------------------------------------------------
// comparison
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub enum IsoVerdict {
    /// Explicit isomorphism exhibited (commutative single-generated case).
    Isomorphic { witness: String },
    NotIsomorphic { reason: String },
    /// All computed invariants agree, but no isomorphism is claimed.
    InvariantsMatch,
    InvariantsDiffer { reason: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct CompareVerdict {
    pub dims: (usize, usize),
    pub dimension_equal: bool,
    pub center_dims: (usize, usize),
    pub radical_dims: (usize, usize),
    pub generator_min_polys_equal: bool,
    pub verdict: IsoVerdict,
}

/// Compare two algebras by exact invariants. For commutative algebras
/// generated by a single generator the verdict is decisive (factor the
/// minimal polynomial of the generator and compare local multiplicities);
/// for noncommutative pairs only invariant agreement is reported.
pub fn compare_algebras(a: &FinDimAlgebra, b: &FinDimAlgebra) -> Result<CompareVerdict> {
    let dims = (a.dim(), b.dim());
    let center_dims = (a.center_dim(), b.center_dim());
    let radical_dims = (a.trace_form_analysis().radical_dim, b.trace_form_analysis().radical_dim);
    let mut mp_a: Vec<String> =
        a.generator_min_polys()?.iter().map(format_min_poly).collect();
    let mut mp_b: Vec<String> =
        b.generator_min_polys()?.iter().map(format_min_poly).collect();
    mp_a.sort();
    mp_b.sort();
    let generator_min_polys_equal = mp_a == mp_b;

    let invariants_match = dims.0 == dims.1
        && center_dims.0 == center_dims.1
        && radical_dims.0 == radical_dims.1
        && generator_min_polys_equal;

    let verdict = if dims.0 != dims.1 {
        IsoVerdict::NotIsomorphic { reason: format!("dimensions differ: {} vs {}", dims.0, dims.1) }
    } else if radical_dims.0 != radical_dims.1 {
        IsoVerdict::NotIsomorphic {
            reason: format!("radical dimensions differ: {} vs {}", radical_dims.0, radical_dims.1),
        }
    } else if center_dims.0 != center_dims.1 {
        IsoVerdict::NotIsomorphic {
            reason: format!("center dimensions differ: {} vs {}", center_dims.0, center_dims.1),
        }
    } else if invariants_match
        && a.fingerprint() == b.fingerprint()
        && a.is_opposed() == b.is_opposed()
    {
        // identical presentation and relation set build the identical algebra
        IsoVerdict::Isomorphic { witness: "identical presentation and relation set".into() }
    } else if is_cyclic_commutative(a) && is_cyclic_commutative(b) {
        // both are C[z]/(m(z)) for the minimal polynomial of the generator;
        // compare the factored local multiplicities exactly
        let pa = a.min_poly_of_vec(&a.generator(0))?;
        let pb = b.min_poly_of_vec(&b.generator(0))?;
        let fa = factored_description(&pa);
        let fb = factored_description(&pb);
        if pa == pb {
            IsoVerdict::Isomorphic {
                witness: format!("generator -> generator, both algebras are C[z]/{fa}"),
            }
        } else {
            IsoVerdict::NotIsomorphic {
                reason: format!("local multiplicities differ: {fa} vs {fb}"),
            }
        }
    } else if invariants_match {
        IsoVerdict::InvariantsMatch
    } else {
        IsoVerdict::InvariantsDiffer { reason: "generator minimal polynomials differ".into() }
    };

    Ok(CompareVerdict {
        dims,
        dimension_equal: dims.0 == dims.1,
        center_dims,
        radical_dims,
        generator_min_polys_equal,
        verdict,
    })
}

fn is_cyclic_commutative(a: &FinDimAlgebra) -> bool {
    a.presentation().generator_count() == 1 && a.is_commutative() && {
        a.min_poly_of_vec(&a.generator(0))
            .map(|p| p.degree() == Some(a.dim()))
            .unwrap_or(false)
    }
}

fn factored_description(p: &CycPoly) -> String {
    match p.to_int() {
        None => format!("({p})"),
        Some(ip) => {
            let (factors, rest) = crate::poly::factor_cyclotomic(&ip);
            let mut parts: Vec<String> = factors
                .iter()
                .map(|(d, m)| {
                    let base = crate::poly::cyclotomic_poly(*d);
                    if *m == 1 {
                        format!("({base})")
                    } else {
                        format!("({base})^{m}")
                    }
                })
                .collect();
            if !rest.is_one() {
                parts.push(format!("({rest})"));
            }
            parts.join("")
        }
    }
}

#[cfg(test)]
mod tests;
