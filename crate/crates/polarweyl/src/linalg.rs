//! Dense exact linear algebra over [`CycNum`]: products, reduced echelon
//! forms, kernels, determinants, and determinants of polynomial matrices
//! (for Molien series).

use crate::cyclotomic::CycNum;
use crate::error::Result;
use crate::poly::CycPoly;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<CycNum>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![CycNum::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = CycNum::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<CycNum>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| CycNum::from_i64(x)).collect())
                .collect(),
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[CycNum] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    out[(i, j)] = out[(i, j)].add(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a = a.sub(b);
        }
        out
    }

    pub fn mul_scalar(&self, s: i64) -> Mat {
        let c = CycNum::from_i64(s);
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = a.mul(&c);
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn apply(&self, v: &[CycNum]) -> Vec<CycNum> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = CycNum::zero();
                for (a, x) in self.row(i).iter().zip(v.iter()) {
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc.add(&a.mul(x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> Mat {
        assert_eq!(self.rows, self.cols);
        let mut base = self.clone();
        let mut acc = Mat::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// In-place reduced row echelon form. Returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(sel) = (row..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(row, sel);
            let inv = self[(row, col)].inv().expect("pivot is nonzero");
            for j in col..self.cols {
                self[(row, j)] = self[(row, j)].mul(&inv);
            }
            for r in 0..self.rows {
                if r == row || self[(r, col)].is_zero() {
                    continue;
                }
                let factor = self[(r, col)].clone();
                for j in col..self.cols {
                    let delta = factor.mul(&self[(row, j)]);
                    self[(r, j)] = self[(r, j)].sub(&delta);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel, deterministic: one vector per free
    /// column, with a 1 in that column.
    pub fn kernel_basis(&self) -> Vec<Vec<CycNum>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![CycNum::zero(); self.cols];
            v[free] = CycNum::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = m[(r, free)].neg();
            }
            basis.push(v);
        }
        basis
    }

    /// Solve `self * x = b`; `None` if inconsistent. When the solution is
    /// not unique the free coordinates are set to zero.
    pub fn solve(&self, b: &[CycNum]) -> Option<Vec<CycNum>> {
        assert_eq!(self.rows, b.len());
        let mut aug = Mat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None; // pivot in the augmented column
        }
        let mut x = vec![CycNum::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[(r, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = CycNum::one();
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots.iter().take(n).any(|&c| c >= n) {
            return None;
        }
        let mut out = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Some(out)
    }

    pub fn det(&self) -> CycNum {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let n = self.rows;
        let mut det = CycNum::one();
        for col in 0..n {
            let Some(sel) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return CycNum::zero();
            };
            if sel != col {
                m.swap_rows(col, sel);
                det = det.neg();
            }
            let pivot = m[(col, col)].clone();
            det = det.mul(&pivot);
            let inv = pivot.inv().expect("pivot nonzero");
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].mul(&inv);
                for j in col..n {
                    let delta = factor.mul(&m[(col, j)]);
                    m[(r, j)] = m[(r, j)].sub(&delta);
                }
            }
        }
        det
    }

    /// `det(I - t * self)` as an exact polynomial in `t`, by expansion
    /// along the first column (group ranks are small).
    pub fn det_one_minus_t(&self) -> CycPoly {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let entries: Vec<Vec<CycPoly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mt = self[(i, j)].neg();
                        let c0 = if i == j { CycNum::one() } else { CycNum::zero() };
                        CycPoly::new(vec![c0, mt])
                    })
                    .collect()
            })
            .collect();
        poly_det(&entries)
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = CycNum;
    fn index(&self, (i, j): (usize, usize)) -> &CycNum {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut CycNum {
        &mut self.data[i * self.cols + j]
    }
}

/// Determinant of a small polynomial matrix by cofactor expansion.
fn poly_det(m: &[Vec<CycPoly>]) -> CycPoly {
    let n = m.len();
    if n == 0 {
        return CycPoly::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = CycPoly::zero();
    for i in 0..n {
        if m[i][0].is_zero() {
            continue;
        }
        let minor: Vec<Vec<CycPoly>> = (0..n)
            .filter(|&r| r != i)
            .map(|r| m[r][1..].to_vec())
            .collect();
        let term = m[i][0].mul(&poly_det(&minor));
        acc = if i % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Minimal polynomial of a square matrix: the lcm over the standard basis
/// vectors of the minimal polynomial of the cyclic subspace each spans.
pub fn matrix_min_poly(m: &Mat) -> Result<CycPoly> {
    assert_eq!(m.nrows(), m.ncols());
    let n = m.nrows();
    let mut acc: Option<CycPoly> = None;
    for start in 0..n {
        let mut e = vec![CycNum::zero(); n];
        e[start] = CycNum::one();
        let p = cyclic_min_poly(m, &e)?;
        acc = Some(match acc {
            None => p,
            Some(q) => poly_lcm(&q, &p)?,
        });
        if acc.as_ref().and_then(|p| p.degree()) == Some(n) {
            break; // cannot grow beyond the matrix size
        }
    }
    Ok(acc.unwrap_or_else(CycPoly::one))
}

/// Minimal monic `p` with `p(m) v = 0`, via Krylov iteration and exact
/// elimination.
pub fn cyclic_min_poly(m: &Mat, v: &[CycNum]) -> Result<CycPoly> {
    krylov_min_poly(v.to_vec(), |x| m.apply(x))
}

/// Minimal monic `p` with `p(T) v = 0` for the linear map computed by
/// `next`, via Krylov iteration and exact elimination.
pub fn krylov_min_poly(
    v: Vec<CycNum>,
    mut next: impl FnMut(&[CycNum]) -> Vec<CycNum>,
) -> Result<CycPoly> {
    let n = v.len();
    // rows of the growing Krylov matrix, kept in echelon form along with
    // the coordinates of each reduced vector in terms of m^k v
    let mut echelon: Vec<(usize, Vec<CycNum>, Vec<CycNum>)> = Vec::new(); // (pivot, row, combo)
    let mut cur = v;
    for k in 0..=n {
        let mut row = cur.clone();
        let mut combo = vec![CycNum::zero(); k + 1];
        combo[k] = CycNum::one();
        for (p, erow, ecombo) in &echelon {
            if row[*p].is_zero() {
                continue;
            }
            let c = row[*p].clone();
            for (a, b) in row.iter_mut().zip(erow.iter()) {
                if !b.is_zero() {
                    *a = a.sub(&c.mul(b));
                }
            }
            for (i, b) in ecombo.iter().enumerate() {
                if !b.is_zero() {
                    let delta = c.mul(b);
                    combo[i] = combo[i].sub(&delta);
                }
            }
        }
        match row.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                let inv = row[p].inv()?;
                let row: Vec<CycNum> = row.iter().map(|x| x.mul(&inv)).collect();
                let combo: Vec<CycNum> = combo.iter().map(|x| x.mul(&inv)).collect();
                echelon.push((p, row, combo));
            }
            None => {
                // m^k v is a combination of lower powers: -combo gives the
                // dependency, normalized so the top coefficient is 1
                let top = combo[k].clone();
                debug_assert!(top.is_one());
                return Ok(CycPoly::new(combo).monic()?);
            }
        }
        cur = next(&cur);
    }
    unreachable!("a dependency must appear by degree n")
}

fn poly_lcm(a: &CycPoly, b: &CycPoly) -> Result<CycPoly> {
    // Euclidean gcd over the field, then lcm = a*b/gcd
    let (mut r0, mut r1) = (a.clone(), b.clone());
    while !r1.is_zero() {
        let r = poly_rem(&r0, &r1)?;
        r0 = std::mem::replace(&mut r1, r);
    }
    let g = r0.monic()?;
    let prod = a.mul(b);
    let q = poly_exact_div(&prod, &g)?;
    q.monic()
}

fn poly_rem(a: &CycPoly, b: &CycPoly) -> Result<CycPoly> {
    let d = b.degree().expect("division by zero polynomial");
    let lead_inv = b.coeff(d).inv()?;
    let mut rem: Vec<CycNum> = a.coeffs().to_vec();
    while rem.len() > d {
        let k = rem.len() - 1;
        let c = rem[k].mul(&lead_inv);
        if !c.is_zero() {
            for j in 0..d {
                let delta = c.mul(&b.coeff(j));
                rem[k - d + j] = rem[k - d + j].sub(&delta);
            }
        }
        rem.pop();
        while rem.last().map_or(false, |x| x.is_zero()) {
            rem.pop();
        }
        if rem.len() <= d {
            break;
        }
    }
    Ok(CycPoly::new(rem))
}

pub fn poly_exact_div(a: &CycPoly, b: &CycPoly) -> Result<CycPoly> {
    let d = b.degree().expect("division by zero polynomial");
    let lead_inv = b.coeff(d).inv()?;
    let mut rem: Vec<CycNum> = a.coeffs().to_vec();
    if rem.len() <= d {
        assert!(a.is_zero(), "division is not exact");
        return Ok(CycPoly::zero());
    }
    let mut quot = vec![CycNum::zero(); rem.len() - d];
    for k in (d..rem.len()).rev() {
        let c = rem[k].mul(&lead_inv);
        rem[k] = CycNum::zero();
        if !c.is_zero() {
            for j in 0..d {
                let delta = c.mul(&b.coeff(j));
                rem[k - d + j] = rem[k - d + j].sub(&delta);
            }
        }
        quot[k - d] = c;
    }
    assert!(rem.iter().all(|x| x.is_zero()), "division is not exact");
    Ok(CycPoly::new(quot))
}
