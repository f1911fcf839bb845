//! Symmetric-space recipe: from restricted-root data of a real form,
//! derive `s(i)`, the relation set `(s_hat_i - 1)(s_hat_i + (-1)^{s(i)})`,
//! the sign twist of the holonomy model, and the hybrid classification.
//! A matrix-level Lie algebra oracle validates every bundled datum.

pub mod lie;

pub use lie::{InvolutionModel, OracleOutcome, SimpleRestrictedRoot};

use crate::algebra::{build_quotient_algebra, FinDimAlgebra};
use crate::braid::{BraidPresentation, RelationSet};
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::poly::IntPoly;
use crate::reflection::{coxeter_matrix, CoxeterFamily};
use serde::{Deserialize, Serialize};

/// Restricted-root multiplicities at one node of the small Weyl group's
/// diagram: `m(alpha)` and `m(2 alpha)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictedRootNode {
    pub m_alpha: u32,
    pub m_2alpha: u32,
}

impl RestrictedRootNode {
    pub fn s(&self) -> u32 {
        self.m_alpha + self.m_2alpha
    }
}

/// Restricted-root datum of a real form: the small Weyl group as a
/// Coxeter spec and the root multiplicities per simple reflection.
/// Nodes are listed with longer restricted roots first, ties broken by
/// weight (the oracle uses the same convention).
#[derive(Debug, Clone)]
pub struct RestrictedRootDatum {
    pub name: String,
    pub family: CoxeterFamily,
    pub rank: usize,
    pub nodes: Vec<RestrictedRootNode>,
}

impl RestrictedRootDatum {
    pub fn new(
        name: &str,
        family: CoxeterFamily,
        rank: usize,
        nodes: Vec<RestrictedRootNode>,
    ) -> Result<Self> {
        let datum = RestrictedRootDatum { name: name.to_string(), family, rank, nodes };
        datum.validate()?;
        Ok(datum)
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::BadRootDatum(msg));
        if self.rank == 0 {
            return fail("rank must be at least 1".into());
        }
        if self.nodes.len() != self.rank {
            return fail(format!(
                "{} nodes supplied for rank {}",
                self.nodes.len(),
                self.rank
            ));
        }
        for (i, n) in self.nodes.iter().enumerate() {
            if n.s() == 0 {
                return fail(format!("node {i} has s = 0; every wall carries a root space"));
            }
        }
        // s must be constant on conjugacy classes of simple reflections
        // (connected components through odd bonds)
        let classes = self.conjugacy_classes()?;
        for class in &classes {
            let s0 = self.nodes[class[0]].s();
            for &i in class {
                if self.nodes[i].s() != s0 {
                    return fail(format!(
                        "s is not constant on the conjugacy class {class:?} of simple \
                         reflections"
                    ));
                }
            }
        }
        Ok(())
    }

    /// Conjugacy classes of simple reflections: connected components of
    /// the diagram through odd-order bonds.
    pub fn conjugacy_classes(&self) -> Result<Vec<Vec<usize>>> {
        let cox = coxeter_matrix(self.family, self.rank)?;
        let r = self.rank;
        let mut class_of: Vec<usize> = (0..r).collect();
        // union-find by repeated sweeps (r is tiny)
        loop {
            let mut changed = false;
            for i in 0..r {
                for j in 0..r {
                    if i != j && cox[i][j] % 2 == 1 {
                        let (a, b) = (class_of[i], class_of[j]);
                        if a != b {
                            let m = a.min(b);
                            class_of[i] = m;
                            class_of[j] = m;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut reps: Vec<usize> = class_of.clone();
        reps.sort_unstable();
        reps.dedup();
        for rep in reps {
            classes.push((0..r).filter(|&i| class_of[i] == rep).collect());
        }
        Ok(classes)
    }

    /// `s(i) = m(alpha_i) + m(2 alpha_i)` per simple reflection.
    pub fn s_values(&self) -> Vec<u32> {
        self.nodes.iter().map(|n| n.s()).collect()
    }

    pub fn weyl_order(&self) -> Option<usize> {
        crate::reflection::coxeter_order(self.family, self.rank)
    }

    /// The relation set `(z - 1)(z + (-1)^{s(i)})` keyed per conjugacy
    /// class of simple reflections.
    pub fn relation_set(&self, pres: &BraidPresentation) -> Result<RelationSet> {
        let classes = self.conjugacy_classes()?;
        let mut by_orbit = std::collections::BTreeMap::new();
        let mut orbit_of_gen = vec![String::new(); self.rank];
        for class in &classes {
            let label = format!("class{}", class[0] + 1);
            let s = self.nodes[class[0]].s();
            let poly = if s % 2 == 0 {
                // (z - 1)(z + 1) = z^2 - 1
                IntPoly::from_i64(&[-1, 0, 1])
            } else {
                // (z - 1)^2 = z^2 - 2z + 1
                IntPoly::from_i64(&[1, -2, 1])
            };
            by_orbit.insert(label.clone(), poly);
            for &i in class {
                orbit_of_gen[i] = label.clone();
            }
        }
        if pres.generator_count() != self.rank {
            return Err(Error::BadRootDatum(format!(
                "presentation has {} generators, datum rank is {}",
                pres.generator_count(),
                self.rank
            )));
        }
        RelationSet::new(by_orbit, orbit_of_gen)
    }
}

/// Build the endomorphism algebra of the datum's symmetric space:
/// the braid presentation of the small Weyl group modulo
/// `(s_hat_i - 1)(s_hat_i + (-1)^{s(i)})`.
pub fn build_symmetric_space_algebra(
    datum: &RestrictedRootDatum,
    dim_cap: usize,
) -> Result<FinDimAlgebra> {
    datum.validate()?;
    let spec = crate::reflection::ReflectionGroupSpec::Coxeter {
        family: datum.family,
        rank: datum.rank,
    };
    let pres = BraidPresentation::for_group_spec(&spec)?;
    let rels = datum.relation_set(&pres)?;
    build_quotient_algebra(&pres, &rels, dim_cap)
}

/// The sign map `alpha: s_hat_i -> (-1)^{s(i) - 1} s_hat_i` of the
/// holonomy model in the opposite algebra.
pub fn rho_twist(datum: &RestrictedRootDatum) -> Vec<i8> {
    datum.nodes.iter().map(|n| if n.s() % 2 == 1 { 1 } else { -1 }).collect()
}

/// Check that the sign-twisted generators still satisfy the braid
/// relations in the built algebra (relation words have equal sign
/// products because odd bonds connect conjugate reflections with equal
/// `s`).
pub fn verify_twist(alg: &FinDimAlgebra, signs: &[i8]) -> bool {
    let dim = alg.dim();
    let k = alg.presentation().generator_count();
    if signs.len() != k {
        return false;
    }
    let twisted: Vec<Vec<CycNum>> = (0..k)
        .map(|g| {
            let v = alg.generator(g);
            if signs[g] == 1 {
                v
            } else {
                v.iter().map(|c| c.neg()).collect()
            }
        })
        .collect();
    for (w1, w2) in alg.presentation().relations() {
        for j in 0..dim {
            let mut e_j = vec![CycNum::zero(); dim];
            e_j[j] = CycNum::one();
            let mut a = e_j.clone();
            for &g in w1 {
                a = alg.mul_vec(&a, &twisted[g as usize]);
            }
            let mut b = e_j;
            for &g in w2 {
                b = alg.mul_vec(&b, &twisted[g as usize]);
            }
            if a != b {
                return false;
            }
        }
    }
    true
}

/// Hybrid classification of the symmetric-space algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HybridClass {
    /// All `s(i)` even: the group algebra of the small Weyl group.
    GroupAlgebra,
    /// All `s(i)` odd: the Hecke algebra specialized at `q = -1`.
    HeckeMinusOne,
    /// Mixed parities.
    Hybrid,
}

pub fn classify_hybrid(datum: &RestrictedRootDatum) -> HybridClass {
    let evens = datum.nodes.iter().filter(|n| n.s() % 2 == 0).count();
    if evens == datum.nodes.len() {
        HybridClass::GroupAlgebra
    } else if evens == 0 {
        HybridClass::HeckeMinusOne
    } else {
        HybridClass::Hybrid
    }
}

// ---------------------------------------------------------------------------
// bundled data
// ---------------------------------------------------------------------------

/// One bundled real form: the datum plus its explicit involution model.
pub struct BundledSymmetricSpace {
    pub datum: RestrictedRootDatum,
    pub model: InvolutionModel,
}

/// All bundled symmetric spaces, each with an involution model so the
/// oracle can confirm the multiplicities.
pub fn bundled_symmetric_spaces() -> Result<Vec<BundledSymmetricSpace>> {
    let node = |m_alpha: u32, m_2alpha: u32| RestrictedRootNode { m_alpha, m_2alpha };
    let mut out = Vec::new();

    // sl(n, R) for n = 2, 3, 4: split, all multiplicities 1
    for n in 2..=4usize {
        let datum = RestrictedRootDatum::new(
            &format!("sl({n},R)"),
            CoxeterFamily::A,
            n - 1,
            vec![node(1, 0); n - 1],
        )?;
        let model = sl_n_split_model(n)?;
        out.push(BundledSymmetricSpace { datum, model });
    }

    // group case: sl2 + sl2 with the swap involution
    {
        let datum = RestrictedRootDatum::new(
            "group case sl2+sl2",
            CoxeterFamily::A,
            1,
            vec![node(2, 0)],
        )?;
        let model = group_case_sl2_model()?;
        out.push(BundledSymmetricSpace { datum, model });
    }

    // su(2,1): restricted BC1, m(alpha) = 2, m(2 alpha) = 1
    {
        let datum =
            RestrictedRootDatum::new("su(2,1)", CoxeterFamily::A, 1, vec![node(2, 1)])?;
        let model = su_p_q_model(2, 1)?;
        out.push(BundledSymmetricSpace { datum, model });
    }

    // su(2,2): restricted C2; long roots 2e_i have m = 1, short roots
    // e_i - e_j have m = 2 (long-first node order)
    {
        let datum = RestrictedRootDatum::new(
            "su(2,2)",
            CoxeterFamily::B,
            2,
            vec![node(1, 0), node(2, 0)],
        )?;
        let model = su_p_q_model(2, 2)?;
        out.push(BundledSymmetricSpace { datum, model });
    }

    // so(2,3): split B2, all multiplicities 1
    {
        let datum = RestrictedRootDatum::new(
            "so(2,3)",
            CoxeterFamily::B,
            2,
            vec![node(1, 0), node(1, 0)],
        )?;
        let model = so_2_3_model()?;
        out.push(BundledSymmetricSpace { datum, model });
    }

    Ok(out)
}

fn unit_matrix_entry(n: usize, i: usize, j: usize) -> Mat {
    let mut m = Mat::zeros(n, n);
    m[(i, j)] = CycNum::one();
    m
}

/// Basis of sl_n: off-diagonal units then diagonal differences.
fn sl_basis(n: usize) -> Vec<Mat> {
    let mut basis = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                basis.push(unit_matrix_entry(n, i, j));
            }
        }
    }
    for i in 0..n - 1 {
        let mut h = Mat::zeros(n, n);
        h[(i, i)] = CycNum::one();
        h[(i + 1, i + 1)] = CycNum::from_i64(-1);
        basis.push(h);
    }
    basis
}

/// sl(n, R): theta(X) = -X^T, Cartan subspace the diagonal differences.
fn sl_n_split_model(n: usize) -> Result<InvolutionModel> {
    let basis = sl_basis(n);
    let cartan: Vec<Mat> = (0..n - 1)
        .map(|i| {
            let mut h = Mat::zeros(n, n);
            h[(i, i)] = CycNum::one();
            h[(i + 1, i + 1)] = CycNum::from_i64(-1);
            h
        })
        .collect();
    InvolutionModel::from_matrices(
        &format!("sl({n},R)"),
        basis,
        |x| x.transpose().mul_scalar(-1),
        cartan,
    )
}

/// The group case g + g with the swap involution, for g = sl2.
fn group_case_sl2_model() -> Result<InvolutionModel> {
    let sl2 = sl_basis(2);
    let n = 2;
    let embed = |m: &Mat, first: bool| -> Mat {
        let mut out = Mat::zeros(2 * n, 2 * n);
        let off = if first { 0 } else { n };
        for i in 0..n {
            for j in 0..n {
                out[(off + i, off + j)] = m[(i, j)].clone();
            }
        }
        out
    };
    let mut basis = Vec::new();
    for m in &sl2 {
        basis.push(embed(m, true));
    }
    for m in &sl2 {
        basis.push(embed(m, false));
    }
    // swap: exchange the two blocks
    let swap = |x: &Mat| -> Mat {
        let mut out = Mat::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = x[(n + i, n + j)].clone();
                out[(n + i, n + j)] = x[(i, j)].clone();
            }
        }
        out
    };
    // Cartan: (h, -h)
    let mut h = Mat::zeros(2 * n, 2 * n);
    h[(0, 0)] = CycNum::one();
    h[(1, 1)] = CycNum::from_i64(-1);
    h[(2, 2)] = CycNum::from_i64(-1);
    h[(3, 3)] = CycNum::one();
    InvolutionModel::from_matrices("group case sl2+sl2", basis, swap, vec![h])
}

/// su(p, q) complexified: g = sl_{p+q}, theta = Ad(diag(1_p, -1_q)),
/// Cartan subspace spanned by E_{k, p+k} + E_{p+k, k}.
fn su_p_q_model(p: usize, q: usize) -> Result<InvolutionModel> {
    let n = p + q;
    let basis = sl_basis(n);
    let theta = move |x: &Mat| -> Mat {
        let mut out = x.clone();
        for i in 0..n {
            for j in 0..n {
                let sign = (i < p) != (j < p);
                if sign {
                    out[(i, j)] = out[(i, j)].neg();
                }
            }
        }
        out
    };
    let r = p.min(q);
    let cartan: Vec<Mat> = (0..r)
        .map(|k| {
            let mut v = Mat::zeros(n, n);
            v[(k, p + k)] = CycNum::one();
            v[(p + k, k)] = CycNum::one();
            v
        })
        .collect();
    InvolutionModel::from_matrices(&format!("su({p},{q})"), basis, theta, cartan)
}

/// so(2,3) complexified: g = so_5 for the split symmetric form
/// (antidiagonal ones), theta = Ad(antidiag), Cartan subspace the
/// hyperbolic diagonal pairs.
fn so_2_3_model() -> Result<InvolutionModel> {
    let n = 5usize;
    // basis of so(Q): kernel of X -> X^T Q + Q X on gl_n
    let mut condition = Vec::new();
    for a in 0..n {
        for b in 0..n {
            // entry (a, b) of X^T Q + Q X: X[n-1-b... with Q = antidiag,
            // (X^T Q)[a][b] = X[n-1-b][a], (Q X)[a][b] = X[n-1-a][b]
            let mut row = vec![CycNum::zero(); n * n];
            row[(n - 1 - b) * n + a] = row[(n - 1 - b) * n + a].add(&CycNum::one());
            row[(n - 1 - a) * n + b] = row[(n - 1 - a) * n + b].add(&CycNum::one());
            condition.push(row);
        }
    }
    let kernel = Mat::from_rows(condition).kernel_basis();
    let basis: Vec<Mat> = kernel
        .iter()
        .map(|flat| {
            let mut m = Mat::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    m[(i, j)] = flat[i * n + j].clone();
                }
            }
            m
        })
        .collect();
    let theta = move |x: &Mat| -> Mat {
        // Q X Q for Q = antidiag(1,...,1)
        let mut out = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = x[(n - 1 - i, n - 1 - j)].clone();
            }
        }
        out
    };
    let mut v1 = Mat::zeros(n, n);
    v1[(0, 0)] = CycNum::one();
    v1[(4, 4)] = CycNum::from_i64(-1);
    let mut v2 = Mat::zeros(n, n);
    v2[(1, 1)] = CycNum::one();
    v2[(3, 3)] = CycNum::from_i64(-1);
    InvolutionModel::from_matrices("so(2,3)", basis, theta, vec![v1, v2])
}
