//! Explicit involution models: a semisimple Lie algebra with exact
//! rational structure constants, an involutive automorphism, and a Cartan
//! subspace of the (-1)-eigenspace.  The oracle computes restricted roots
//! by joint eigendecomposition of the adjoint action of the Cartan
//! subspace and reads off `s(i) = dim(centralizer of the i-th wall in the
//! fixed subalgebra) - dim(centralizer of the whole Cartan subspace)`.

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::linalg::{matrix_min_poly, Mat};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

#[derive(Debug, Clone)]
pub struct InvolutionModel {
    pub name: String,
    dim: usize,
    rank: usize,
    /// `bracket_table[i][j]` = `[b_i, b_j]` in basis coordinates.
    bracket_table: Vec<Vec<Vec<CycNum>>>,
    /// Matrix of the involution on the basis.
    theta: Mat,
    /// Cartan subspace basis vectors (coordinates in the algebra basis).
    cartan: Vec<Vec<CycNum>>,
}

/// Data of one simple restricted root as computed by the oracle.
#[derive(Debug, Clone)]
pub struct SimpleRestrictedRoot {
    /// The functional on the Cartan subspace, in coordinates dual to the
    /// model's Cartan basis.
    pub weight: Vec<BigRational>,
    /// `dim g^+_i - dim g^+_c` for the wall of this root.
    pub s: usize,
    /// `m(alpha)`: dimension of the root space.
    pub multiplicity: usize,
    /// `m(2 alpha)`: dimension of the doubled root space (0 if absent).
    pub double_multiplicity: usize,
    /// Squared length under the trace form (for the long-roots-first
    /// node convention).
    pub length_sq: BigRational,
}

#[derive(Debug, Clone)]
pub struct OracleOutcome {
    pub s_values: Vec<u32>,
    pub simples: Vec<SimpleRestrictedRoot>,
    pub fixed_dim: usize,
    pub cartan_centralizer_dim: usize,
}

/// Coordinate solver for a fixed matrix-space basis.
struct MatrixCoords {
    /// Flattened basis matrix augmented for solving.
    columns: Mat,
}

impl MatrixCoords {
    fn new(basis: &[Mat]) -> Result<Self> {
        let r = basis[0].nrows();
        let c = basis[0].ncols();
        let mut columns = Mat::zeros(r * c, basis.len());
        for (j, b) in basis.iter().enumerate() {
            if b.nrows() != r || b.ncols() != c {
                return Err(Error::ModelInconsistent("ragged matrix basis".into()));
            }
            for i in 0..r {
                for k in 0..c {
                    columns[(i * c + k, j)] = b[(i, k)].clone();
                }
            }
        }
        if columns.rank() != basis.len() {
            return Err(Error::ModelInconsistent("matrix basis is linearly dependent".into()));
        }
        Ok(MatrixCoords { columns })
    }

    fn express(&self, m: &Mat) -> Result<Vec<CycNum>> {
        let r = m.nrows();
        let c = m.ncols();
        let mut flat = Vec::with_capacity(r * c);
        for i in 0..r {
            for k in 0..c {
                flat.push(m[(i, k)].clone());
            }
        }
        self.columns.solve(&flat).ok_or_else(|| {
            Error::ModelInconsistent("matrix does not lie in the span of the basis".into())
        })
    }
}

impl InvolutionModel {
    /// Build from explicit matrices: a basis of the algebra, the
    /// involution as a map on matrices, and Cartan subspace elements.
    pub fn from_matrices(
        name: &str,
        basis: Vec<Mat>,
        theta: impl Fn(&Mat) -> Mat,
        cartan: Vec<Mat>,
    ) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::ModelInconsistent("empty basis".into()));
        }
        let coords = MatrixCoords::new(&basis)?;
        let dim = basis.len();
        let mut bracket_table = vec![vec![Vec::new(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let lie = basis[i].mul(&basis[j]).sub(&basis[j].mul(&basis[i]));
                bracket_table[i][j] = coords.express(&lie)?;
            }
        }
        let mut theta_mat = Mat::zeros(dim, dim);
        for (j, b) in basis.iter().enumerate() {
            let col = coords.express(&theta(b))?;
            for (i, c) in col.into_iter().enumerate() {
                theta_mat[(i, j)] = c;
            }
        }
        let cartan_coords = cartan
            .iter()
            .map(|v| coords.express(v))
            .collect::<Result<Vec<_>>>()?;
        let rank = cartan_coords.len();
        let model = InvolutionModel {
            name: name.to_string(),
            dim,
            rank,
            bracket_table,
            theta: theta_mat,
            cartan: cartan_coords,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn from_parts(
        name: &str,
        bracket_table: Vec<Vec<Vec<CycNum>>>,
        theta: Mat,
        cartan: Vec<Vec<CycNum>>,
    ) -> Result<Self> {
        let dim = bracket_table.len();
        let rank = cartan.len();
        let model =
            InvolutionModel { name: name.to_string(), dim, rank, bracket_table, theta, cartan };
        model.validate()?;
        Ok(model)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn theta(&self) -> &Mat {
        &self.theta
    }

    pub fn cartan(&self) -> &[Vec<CycNum>] {
        &self.cartan
    }

    pub fn bracket_table(&self) -> &Vec<Vec<Vec<CycNum>>> {
        &self.bracket_table
    }

    /// `[x, y]` for coordinate vectors.
    pub fn bracket(&self, x: &[CycNum], y: &[CycNum]) -> Vec<CycNum> {
        let mut out = vec![CycNum::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi.mul(yj);
                for (o, b) in out.iter_mut().zip(self.bracket_table[i][j].iter()) {
                    if !b.is_zero() {
                        *o = o.add(&b.mul(&c));
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad(v): x -> [v, x]`.
    pub fn ad(&self, v: &[CycNum]) -> Mat {
        let mut m = Mat::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            let mut e_j = vec![CycNum::zero(); self.dim];
            e_j[j] = CycNum::one();
            let col = self.bracket(v, &e_j);
            for (i, c) in col.into_iter().enumerate() {
                if !c.is_zero() {
                    m[(i, j)] = c;
                }
            }
        }
        m
    }

    fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::ModelInconsistent(msg));
        let dim = self.dim;
        if self.theta.nrows() != dim || self.theta.ncols() != dim {
            return fail("theta has the wrong size".into());
        }
        if !self.theta.mul(&self.theta).is_identity() {
            return fail("theta is not an involution".into());
        }
        // theta is a Lie algebra automorphism: check on basis pairs
        for i in 0..dim {
            let mut e_i = vec![CycNum::zero(); dim];
            e_i[i] = CycNum::one();
            let ti = self.theta.apply(&e_i);
            for j in i + 1..dim {
                let mut e_j = vec![CycNum::zero(); dim];
                e_j[j] = CycNum::one();
                let tj = self.theta.apply(&e_j);
                let lhs = self.theta.apply(&self.bracket(&e_i, &e_j));
                let rhs = self.bracket(&ti, &tj);
                if lhs != rhs {
                    return fail(format!("theta is not bracket-compatible at ({i}, {j})"));
                }
            }
        }
        // Killing form nondegenerate (semisimplicity)
        let ads: Vec<Mat> = (0..dim)
            .map(|i| {
                let mut e_i = vec![CycNum::zero(); dim];
                e_i[i] = CycNum::one();
                self.ad(&e_i)
            })
            .collect();
        let mut killing = Mat::zeros(dim, dim);
        for i in 0..dim {
            for j in i..dim {
                let prod = ads[i].mul(&ads[j]);
                let mut tr = CycNum::zero();
                for k in 0..dim {
                    tr = tr.add(&prod[(k, k)]);
                }
                killing[(i, j)] = tr.clone();
                killing[(j, i)] = tr;
            }
        }
        if killing.rank() != dim {
            return fail("Killing form is degenerate; the algebra is not semisimple".into());
        }
        // Cartan subspace: inside g^-, abelian, and maximal abelian there
        for v in &self.cartan {
            let tv = self.theta.apply(v);
            let neg: Vec<CycNum> = v.iter().map(|c| c.neg()).collect();
            if tv != neg {
                return fail("a Cartan vector is not in the (-1)-eigenspace".into());
            }
        }
        for (a, va) in self.cartan.iter().enumerate() {
            for vb in self.cartan.iter().skip(a + 1) {
                if self.bracket(va, vb).iter().any(|c| !c.is_zero()) {
                    return fail("the Cartan subspace is not abelian".into());
                }
            }
        }
        let minus_basis = self.eigenspace_basis(false);
        let centralizer = self.centralizer_within(&minus_basis, &self.cartan);
        if centralizer != self.rank {
            return fail(format!(
                "Cartan subspace is not maximal abelian in g^-: centralizer has dimension \
                 {centralizer}, expected {}",
                self.rank
            ));
        }
        Ok(())
    }

    /// Basis of the (+1) or (-1) eigenspace of theta.
    fn eigenspace_basis(&self, plus: bool) -> Vec<Vec<CycNum>> {
        let id = Mat::identity(self.dim);
        let m = if plus { self.theta.sub(&id) } else { self.theta.sub(&id.mul_scalar(-1)) };
        m.kernel_basis()
    }

    /// Dimension of `{x in span(space) : [x, v] = 0 for all v in vs}`.
    fn centralizer_within(&self, space: &[Vec<CycNum>], vs: &[Vec<CycNum>]) -> usize {
        if space.is_empty() {
            return 0;
        }
        if vs.is_empty() {
            return space.len();
        }
        let mut rows: Vec<Vec<CycNum>> = Vec::new();
        // columns: space basis; rows: each coordinate of each bracket
        let images: Vec<Vec<Vec<CycNum>>> = space
            .iter()
            .map(|b| vs.iter().map(|v| self.bracket(b, v)).collect())
            .collect();
        for vi in 0..vs.len() {
            for coord in 0..self.dim {
                rows.push(images.iter().map(|img| img[vi][coord].clone()).collect());
            }
        }
        Mat::from_rows(rows).kernel_basis().len()
    }

    /// The oracle: restricted roots, simple walls, and s-values, sorted
    /// with longer roots first (ties by weight, lexicographically).
    pub fn s_values_oracle(&self) -> Result<OracleOutcome> {
        let plus_basis = self.eigenspace_basis(true);
        let fixed_dim = plus_basis.len();
        let cartan_centralizer_dim = self.centralizer_within(&plus_basis, &self.cartan);

        // joint eigendecomposition of ad(v_1..v_r) over the whole algebra
        let mut spaces: Vec<(Vec<BigRational>, Vec<Vec<CycNum>>)> = vec![(
            vec![],
            (0..self.dim)
                .map(|i| {
                    let mut e = vec![CycNum::zero(); self.dim];
                    e[i] = CycNum::one();
                    e
                })
                .collect(),
        )];
        for v in &self.cartan {
            let ad_v = self.ad(v);
            let mut next = Vec::new();
            for (weight, basis) in spaces {
                for (eigenvalue, sub) in split_eigenspaces(&ad_v, &basis)? {
                    let mut w = weight.clone();
                    w.push(eigenvalue);
                    next.push((w, sub));
                }
            }
            spaces = next;
        }

        // nonzero weights are the restricted roots
        let mut roots: Vec<(Vec<BigRational>, usize)> = spaces
            .iter()
            .filter(|(w, _)| w.iter().any(|c| !c.is_zero()))
            .map(|(w, b)| (w.clone(), b.len()))
            .collect();
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        if roots.is_empty() {
            return Err(Error::ModelInconsistent("no restricted roots found".into()));
        }
        let multiplicity = |w: &[BigRational]| -> usize {
            roots.iter().find(|(r, _)| r == w).map(|(_, m)| *m).unwrap_or(0)
        };

        // simple positive roots: positive (lex) and not a sum of two
        // positive roots
        let positive: Vec<Vec<BigRational>> = roots
            .iter()
            .map(|(w, _)| w.clone())
            .filter(|w| {
                w.iter().find(|c| !c.is_zero()).map(|c| c.is_positive()).unwrap_or(false)
            })
            .collect();
        let is_root = |w: &[BigRational]| positive.iter().any(|r| r.as_slice() == w);
        let mut simples: Vec<Vec<BigRational>> = positive
            .iter()
            .filter(|w| {
                !positive.iter().any(|a| {
                    let rest: Vec<BigRational> =
                        w.iter().zip(a.iter()).map(|(x, y)| x - y).collect();
                    is_root(&rest)
                })
            })
            .cloned()
            .collect();

        // trace form on the Cartan subspace, for root lengths
        let r = self.rank;
        let mut form = Mat::zeros(r, r);
        let ads: Vec<Mat> = self.cartan.iter().map(|v| self.ad(v)).collect();
        for i in 0..r {
            for j in i..r {
                let prod = ads[i].mul(&ads[j]);
                let mut tr = CycNum::zero();
                for k in 0..self.dim {
                    tr = tr.add(&prod[(k, k)]);
                }
                form[(i, j)] = tr.clone();
                form[(j, i)] = tr;
            }
        }
        let form_inv = form
            .inverse()
            .ok_or_else(|| Error::ModelInconsistent("trace form degenerate on Cartan".into()))?;
        let length_sq = |w: &[BigRational]| -> BigRational {
            let wc: Vec<CycNum> = w.iter().map(|c| CycNum::from_rational(c.clone())).collect();
            let fw = form_inv.apply(&wc);
            let mut acc = CycNum::zero();
            for (a, b) in wc.iter().zip(fw.iter()) {
                acc = acc.add(&a.mul(b));
            }
            acc.as_rational().expect("rational length")
        };

        // longer roots first, ties by weight
        simples.sort_by(|a, b| {
            length_sq(b).cmp(&length_sq(a)).then_with(|| a.cmp(b))
        });

        let mut outcome = Vec::new();
        for alpha in &simples {
            // wall = kernel of alpha inside the Cartan coordinate space
            let row: Vec<CycNum> =
                alpha.iter().map(|c| CycNum::from_rational(c.clone())).collect();
            let wall_coords = Mat::from_rows(vec![row]).kernel_basis();
            let wall_vectors: Vec<Vec<CycNum>> = wall_coords
                .iter()
                .map(|t| {
                    let mut v = vec![CycNum::zero(); self.dim];
                    for (ti, cv) in t.iter().zip(self.cartan.iter()) {
                        for (x, c) in v.iter_mut().zip(cv.iter()) {
                            *x = x.add(&c.mul(ti));
                        }
                    }
                    v
                })
                .collect();
            let wall_centralizer = self.centralizer_within(&plus_basis, &wall_vectors);
            let s = wall_centralizer - cartan_centralizer_dim;
            let doubled: Vec<BigRational> = alpha.iter().map(|c| c + c).collect();
            outcome.push(SimpleRestrictedRoot {
                weight: alpha.clone(),
                s,
                multiplicity: multiplicity(alpha),
                double_multiplicity: multiplicity(&doubled),
                length_sq: length_sq(alpha),
            });
        }

        Ok(OracleOutcome {
            s_values: outcome.iter().map(|x| x.s as u32).collect(),
            simples: outcome,
            fixed_dim,
            cartan_centralizer_dim,
        })
    }
}

/// Split a subspace (invariant under `op`) into eigenspaces; fails if the
/// restricted operator does not split over the rationals.
fn split_eigenspaces(
    op: &Mat,
    basis: &[Vec<CycNum>],
) -> Result<Vec<(BigRational, Vec<Vec<CycNum>>)>> {
    let k = basis.len();
    let dim = basis[0].len();
    // columns = basis vectors
    let mut s = Mat::zeros(dim, k);
    for (j, b) in basis.iter().enumerate() {
        for (i, c) in b.iter().enumerate() {
            s[(i, j)] = c.clone();
        }
    }
    // restriction matrix m: op * basis_j = sum_i m_ij basis_i
    let mut m = Mat::zeros(k, k);
    for (j, b) in basis.iter().enumerate() {
        let img = op.apply(b);
        let coords = s.solve(&img).ok_or_else(|| {
            Error::ModelInconsistent("subspace is not invariant under the adjoint action".into())
        })?;
        for (i, c) in coords.into_iter().enumerate() {
            m[(i, j)] = c;
        }
    }
    let min_poly = matrix_min_poly(&m)?;
    let rat = min_poly
        .to_rat()
        .ok_or_else(|| Error::ModelInconsistent("irrational minimal polynomial".into()))?;
    let roots = rational_roots(&rat).ok_or_else(|| {
        Error::ModelInconsistent(
            "adjoint action does not split over the rationals; rescale the Cartan basis".into(),
        )
    })?;
    let mut out = Vec::new();
    for lambda in roots {
        let lam = CycNum::from_rational(lambda.clone());
        let mut shifted = m.clone();
        for i in 0..k {
            shifted[(i, i)] = shifted[(i, i)].sub(&lam);
        }
        let kernel = shifted.kernel_basis();
        let vectors: Vec<Vec<CycNum>> = kernel.iter().map(|t| s.apply(t)).collect();
        if !vectors.is_empty() {
            out.push((lambda, vectors));
        }
    }
    let total: usize = out.iter().map(|(_, v)| v.len()).sum();
    if total != k {
        return Err(Error::ModelInconsistent(
            "eigenspaces do not fill the space; the adjoint action is not semisimple here".into(),
        ));
    }
    Ok(out)
}

/// All rational roots of a rational polynomial, with multiplicity,
/// provided the polynomial splits completely; `None` otherwise.
fn rational_roots(p: &crate::poly::RatPoly) -> Option<Vec<BigRational>> {
    let mut p = p.monic();
    let mut roots = Vec::new();
    // strip powers of z
    while p.degree() > Some(0) && p.coeff(0).is_zero() {
        let coeffs = p.coeffs()[1..].to_vec();
        p = crate::poly::RatPoly::new(coeffs);
        roots.push(BigRational::zero());
    }
    while p.degree() > Some(0) {
        // candidates p/q: numerators divide the constant, denominators
        // divide the lcm of denominators (monic => integer candidates
        // after scaling; try divisors of the constant term numerator and
        // denominator combinations)
        let c0 = p.coeff(0);
        let num = c0.numer().abs();
        let den = c0.denom().abs();
        let mut found = None;
        'search: for n in divisors(&num) {
            for d in divisors(&den) {
                for sign in [1i64, -1] {
                    let cand = BigRational::new(n.clone() * BigInt::from(sign), d.clone());
                    if eval_rat(&p, &cand).is_zero() {
                        found = Some(cand);
                        break 'search;
                    }
                }
            }
        }
        let root = found?;
        // deflate by (z - root)
        let divisor = crate::poly::RatPoly::new(vec![-root.clone(), BigRational::from_integer(
            BigInt::from(1),
        )]);
        let (q, r) = p.divrem(&divisor);
        debug_assert!(r.is_zero());
        p = q;
        roots.push(root);
    }
    roots.sort();
    Some(roots)
}

fn eval_rat(p: &crate::poly::RatPoly, x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    if n.is_zero() {
        return vec![BigInt::from(1)];
    }
    // small systems only: trial division
    let mut out = Vec::new();
    let mut d = BigInt::from(1);
    while &d * &d <= n.abs() {
        if (n % &d).is_zero() {
            out.push(d.clone());
            out.push(n.abs() / &d);
        }
        d += 1;
    }
    out.sort();
    out.dedup();
    out
}
