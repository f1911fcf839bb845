//! Finite complex reflection groups: construction from a spec, closure
//! enumeration, reflection classification and Molien-series invariants.

mod classify;
mod coxeter;
mod enumerate;
mod molien;

pub use classify::{find_reflections, HyperplaneOrbit, Reflection, ReflectionTable};
pub use coxeter::{coxeter_matrix, coxeter_order, CoxeterFamily};
pub use molien::{invariant_degrees, molien_series, rank_of_action, MolienResult};

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::linalg::Mat;
use std::collections::HashMap;
use std::fmt;

/// How a group is described on input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReflectionGroupSpec {
    /// A finite Coxeter group in its reflection representation. Types
    /// `A`, `B` (= `C`), `D` and `F4` use integer Cartan-matrix
    /// realizations; `I2(m)`, `H3` and `H4` use the symmetric geometric
    /// realization with entries `2 cos(pi / m_ij)`.
    Coxeter { family: CoxeterFamily, rank: usize },
    /// The cyclic group of order `n` acting on `C^1` by roots of unity.
    Cyclic { order: u32 },
    /// `G(m, 1, n)`: diagonal `m`-th roots of unity extended by the
    /// symmetric group on `n` coordinates.
    Imprimitive { m: u32, n: usize },
    /// Explicit invertible matrices over a cyclotomic field.
    Explicit { generators: Vec<Mat> },
}

impl ReflectionGroupSpec {
    /// Generator matrices in the canonical order of the spec.
    pub fn generators(&self) -> Result<Vec<Mat>> {
        match self {
            ReflectionGroupSpec::Coxeter { family, rank } => coxeter::generators(*family, *rank),
            ReflectionGroupSpec::Cyclic { order } => {
                if *order == 0 {
                    return Err(Error::BadGroupSpec("cyclic group order must be positive".into()));
                }
                let z = CycNum::root_of_unity(*order)?;
                Ok(vec![Mat::from_rows(vec![vec![z]])])
            }
            ReflectionGroupSpec::Imprimitive { m, n } => imprimitive_generators(*m, *n),
            ReflectionGroupSpec::Explicit { generators } => {
                if generators.is_empty() {
                    return Err(Error::BadGroupSpec("no generators supplied".into()));
                }
                let dim = generators[0].nrows();
                for g in generators {
                    if g.nrows() != g.ncols() || g.nrows() != dim {
                        return Err(Error::BadGroupSpec(
                            "generators must be square matrices of equal size".into(),
                        ));
                    }
                }
                Ok(generators.clone())
            }
        }
    }

    /// Known group order, when the spec determines it without enumeration.
    pub fn expected_order(&self) -> Option<usize> {
        match self {
            ReflectionGroupSpec::Coxeter { family, rank } => coxeter_order(*family, *rank),
            ReflectionGroupSpec::Cyclic { order } => Some(*order as usize),
            ReflectionGroupSpec::Imprimitive { m, n } => {
                let mut acc = 1usize;
                for k in 1..=*n {
                    acc = acc.checked_mul(k)?;
                }
                for _ in 0..*n {
                    acc = acc.checked_mul(*m as usize)?;
                }
                Some(acc)
            }
            ReflectionGroupSpec::Explicit { .. } => None,
        }
    }
}

impl fmt::Display for ReflectionGroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReflectionGroupSpec::Coxeter { family, rank } => write!(f, "{family}{rank}"),
            ReflectionGroupSpec::Cyclic { order } => write!(f, "Cyclic({order})"),
            ReflectionGroupSpec::Imprimitive { m, n } => write!(f, "G({m},1,{n})"),
            ReflectionGroupSpec::Explicit { generators } => {
                write!(f, "Explicit({} generators)", generators.len())
            }
        }
    }
}

fn imprimitive_generators(m: u32, n: usize) -> Result<Vec<Mat>> {
    if m == 0 || n == 0 {
        return Err(Error::BadGroupSpec("G(m,1,n) needs m >= 1 and n >= 1".into()));
    }
    let mut gens = Vec::new();
    if m >= 2 {
        let mut tau = Mat::identity(n);
        tau[(0, 0)] = CycNum::root_of_unity(m)?;
        gens.push(tau);
    }
    for i in 0..n.saturating_sub(1) {
        let mut s = Mat::identity(n);
        s[(i, i)] = CycNum::zero();
        s[(i + 1, i + 1)] = CycNum::zero();
        s[(i, i + 1)] = CycNum::one();
        s[(i + 1, i)] = CycNum::one();
        gens.push(s);
    }
    if gens.is_empty() {
        // G(1,1,1) is the trivial group on C^1
        gens.push(Mat::identity(1));
    }
    Ok(gens)
}

/// A fully enumerated finite matrix group, elements in a deterministic
/// order (lexicographic on canonical matrix entries).
#[derive(Debug, Clone)]
pub struct ReflectionGroup {
    spec: ReflectionGroupSpec,
    dim: usize,
    elements: Vec<Mat>,
    index: HashMap<Mat, usize>,
    generator_indices: Vec<usize>,
    identity_index: usize,
}

impl ReflectionGroup {
    /// Enumerate the group generated by the spec's matrices, failing if
    /// the closure exceeds `order_cap`.
    pub fn enumerate(spec: &ReflectionGroupSpec, order_cap: usize) -> Result<Self> {
        let generators = spec.generators()?;
        enumerate::closure(spec.clone(), generators, order_cap)
    }

    pub(crate) fn from_parts(
        spec: ReflectionGroupSpec,
        dim: usize,
        elements: Vec<Mat>,
        generator_indices: Vec<usize>,
    ) -> Self {
        let index: HashMap<Mat, usize> =
            elements.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let identity_index = index[&Mat::identity(dim)];
        ReflectionGroup { spec, dim, elements, index, generator_indices, identity_index }
    }

    pub fn spec(&self) -> &ReflectionGroupSpec {
        &self.spec
    }

    /// Dimension of the reflection representation (the Cartan subspace).
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Mat] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Mat {
        &self.elements[i]
    }

    pub fn identity_index(&self) -> usize {
        self.identity_index
    }

    /// Indices of the spec's generators within the element list.
    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    pub fn index_of(&self, m: &Mat) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Index of the product `elements[a] * elements[b]`.
    pub fn mul_indices(&self, a: usize, b: usize) -> usize {
        let prod = self.elements[a].mul(&self.elements[b]);
        self.index[&prod]
    }

    /// Closure check: every pairwise product lands in the element list.
    /// Quadratic; intended for tests and small groups.
    pub fn verify_closure(&self) -> bool {
        for a in &self.elements {
            for b in &self.elements {
                if !self.index.contains_key(&a.mul(b)) {
                    return false;
                }
            }
        }
        true
    }
}
