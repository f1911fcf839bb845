//! Shared test support: an independent Iwahori-Hecke multiplication
//! oracle for symmetric groups at `q = -1`, built directly from the
//! `T_w`-basis rules on permutations, with its own small rational linear
//! algebra (nothing here goes through the quotient-algebra enumerator).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Perm = Vec<usize>;

fn identity(n: usize) -> Perm {
    (0..n).collect()
}

fn apply_transposition(w: &Perm, i: usize) -> Perm {
    // right multiplication by the simple transposition s_i swaps the
    // values at positions i, i+1
    let mut out = w.clone();
    out.swap(i, i + 1);
    out
}

fn length(w: &Perm) -> usize {
    let mut inv = 0;
    for a in 0..w.len() {
        for b in a + 1..w.len() {
            if w[a] > w[b] {
                inv += 1;
            }
        }
    }
    inv
}

/// All permutations of `n` in a deterministic order.
fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = vec![identity(n)];
    let mut frontier = vec![identity(n)];
    while let Some(w) = frontier.pop() {
        for i in 0..n - 1 {
            let next = apply_transposition(&w, i);
            if !out.contains(&next) {
                out.push(next.clone());
                frontier.push(next);
            }
        }
    }
    out.sort();
    out
}

/// The Hecke algebra of the symmetric group on `n` letters at `q = -1`
/// in the `T_w` basis: left multiplication matrices of the generators
/// `T_{s_i}`, over exact rationals.
pub struct HeckeOracle {
    pub dim: usize,
    pub perms: Vec<Perm>,
    /// `left_mult[i][a][b]` = coefficient of `T_{perms[a]}` in
    /// `T_{s_i} T_{perms[b]}`.
    pub left_mult: Vec<Vec<Vec<BigRational>>>,
}

impl HeckeOracle {
    pub fn symmetric_group(n: usize) -> Self {
        assert!(n >= 2);
        let q = BigRational::from_integer(BigInt::from(-1));
        let perms = all_perms(n);
        let dim = perms.len();
        let index = |w: &Perm| perms.binary_search(w).expect("permutation listed");
        let mut left_mult = Vec::new();
        for i in 0..n - 1 {
            let mut m = vec![vec![BigRational::zero(); dim]; dim];
            for (b, w) in perms.iter().enumerate() {
                // s_i * w: left multiplication swaps the VALUES i, i+1
                let sw: Perm = w
                    .iter()
                    .map(|&v| {
                        if v == i {
                            i + 1
                        } else if v == i + 1 {
                            i
                        } else {
                            v
                        }
                    })
                    .collect();
                if length(&sw) > length(w) {
                    m[index(&sw)][b] = BigRational::one();
                } else {
                    // T_s T_w = q T_{sw} + (q - 1) T_w
                    m[index(&sw)][b] = q.clone();
                    m[b][b] = &q - BigRational::one();
                }
            }
            left_mult.push(m);
        }
        HeckeOracle { dim, perms, left_mult }
    }

    /// The full multiplication table in the `T_w` basis, by expanding
    /// `T_u T_w` along a reduced word for `u`.
    pub fn product_table(&self) -> Vec<Vec<Vec<BigRational>>> {
        let dim = self.dim;
        let reduced  = self.reduced_words();
        let mut table = vec![vec![vec![BigRational::zero(); dim]; dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                let mut vec = vec![BigRational::zero(); dim];
                vec[b] = BigRational::one();
                for &s in reduced[a].iter().rev() {
                    vec = mat_apply(&self.left_mult[s], &vec);
                }
                table[a][b] = vec;
            }
        }
        table
    }

    fn reduced_words(&self) -> Vec<Vec<usize>> {
        // left peeling: l(s_j w) < l(w) iff the value j+1 appears before
        // the value j; each swap removes one inversion, so the word is
        // reduced and w = s_{j_1} s_{j_2} ... left to right
        self.perms
            .iter()
            .map(|w| {
                let n = w.len();
                let mut w = w.clone();
                let mut word = Vec::new();
                loop {
                    let pos = |w: &Perm, v: usize| w.iter().position(|&x| x == v).unwrap();
                    let Some(j) = (0..n - 1).find(|&j| pos(&w, j + 1) < pos(&w, j)) else {
                        break;
                    };
                    w = w
                        .iter()
                        .map(|&v| {
                            if v == j {
                                j + 1
                            } else if v == j + 1 {
                                j
                            } else {
                                v
                            }
                        })
                        .collect();
                    word.push(j);
                }
                word
            })
            .collect()
    }

    /// Rank of the trace bilinear form `T(a, b) = trace(L_a L_b)`,
    /// computed from the product table (semisimple iff full rank).
    pub fn trace_form_rank(&self) -> usize {
        let dim = self.dim;
        let table = self.product_table();
        let mut traces = vec![BigRational::zero(); dim];
        for m in 0..dim {
            let mut acc = BigRational::zero();
            for j in 0..dim {
                acc += &table[m][j][j];
            }
            traces[m] = acc;
        }
        let mut gram = vec![vec![BigRational::zero(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let mut acc = BigRational::zero();
                for m in 0..dim {
                    if !table[i][j][m].is_zero() {
                        acc += &table[i][j][m] * &traces[m];
                    }
                }
                gram[i][j] = acc;
            }
        }
        rational_rank(gram)
    }

    /// Minimal polynomial of `-T_{s_0}` acting on the algebra, as exact
    /// rational coefficients (constant first).
    pub fn min_poly_of_negated_generator(&self) -> Vec<BigRational> {
        let dim = self.dim;
        let neg: Vec<Vec<BigRational>> = self.left_mult[0]
            .iter()
            .map(|row| row.iter().map(|c| -c).collect())
            .collect();
        // Krylov from the identity element T_e
        let e = self
            .perms
            .binary_search(&identity(self.perms[0].len()))
            .expect("identity permutation listed");
        let mut v = vec![BigRational::zero(); dim];
        v[e] = BigRational::one();
        let mut krylov: Vec<Vec<BigRational>> = vec![v.clone()];
        loop {
            let next = mat_apply(&neg, krylov.last().unwrap());
            // test dependency of [krylov..., next]
            let mut rows = krylov.clone();
            rows.push(next.clone());
            if rational_rank(rows.clone()) < rows.len() {
                // solve sum c_k krylov_k = next
                let combo = solve_dependency(&krylov, &next);
                let mut coeffs: Vec<BigRational> = combo.into_iter().map(|c| -c).collect();
                coeffs.push(BigRational::one());
                return coeffs;
            }
            krylov.push(next);
        }
    }
}

fn mat_apply(m: &[Vec<BigRational>], v: &[BigRational]) -> Vec<BigRational> {
    let n = v.len();
    let mut out = vec![BigRational::zero(); n];
    for (row, o) in m.iter().zip(out.iter_mut()) {
        for (a, x) in row.iter().zip(v.iter()) {
            if !a.is_zero() && !x.is_zero() {
                *o += a * x;
            }
        }
    }
    out
}

pub fn rational_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].clone().recip();
        for x in rows[rank].iter_mut() {
            *x *= &inv;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let c = rows[r][col].clone();
                for k in 0..cols {
                    let delta = &c * &rows[rank][k];
                    rows[r][k] -= delta;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn solve_dependency(basis: &[Vec<BigRational>], target: &[BigRational]) -> Vec<BigRational> {
    // least-structure exact solve: echelonize [basis^T | target]
    let n = target.len();
    let k = basis.len();
    let mut rows: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = basis.iter().map(|b| b[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..k {
        let Some(p) = (rank..n).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(rank, p);
        let inv = rows[rank][col].clone().recip();
        for x in rows[rank].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != rank && !rows[r][col].is_zero() {
                let c = rows[r][col].clone();
                for j in 0..=k {
                    let delta = &c * &rows[rank][j];
                    rows[r][j] -= delta;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    let mut x = vec![BigRational::zero(); k];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = rows[r][k].clone();
    }
    x
}

/// `(z-1)^2` as rational coefficients, for oracle comparisons.
pub fn z_minus_one_squared() -> Vec<BigRational> {
    vec![
        BigRational::one(),
        BigRational::from_integer(BigInt::from(-2)),
        BigRational::one(),
    ]
}
