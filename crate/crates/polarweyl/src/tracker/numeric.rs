//! Small dense complex linear algebra for the path tracker.

use num_complex::Complex64;

/// Solve `a x = b` by Gaussian elimination with partial pivoting;
/// `None` when the pivot falls below roundoff scale.
pub fn solve(a: &[Vec<Complex64>], b: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = b.len();
    let mut m: Vec<Vec<Complex64>> = a.iter().map(|r| r.clone()).collect();
    let mut rhs = b.to_vec();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| {
            m[i][col].norm().partial_cmp(&m[j][col].norm()).unwrap()
        })?;
        if m[pivot][col].norm() < 1e-300 {
            return None;
        }
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = 1.0 / m[col][col];
        for r in col + 1..n {
            let factor = m[r][col] * inv;
            if factor.norm() == 0.0 {
                continue;
            }
            for k in col..n {
                let delta = factor * m[col][k];
                m[r][k] -= delta;
            }
            let delta_rhs = factor * rhs[col];
            rhs[r] -= delta_rhs;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for row in (0..n).rev() {
        let mut acc = rhs[row];
        for k in row + 1..n {
            acc -= m[row][k] * x[k];
        }
        x[row] = acc / m[row][row];
    }
    Some(x)
}

pub fn det(a: &[Vec<Complex64>]) -> Complex64 {
    let n = a.len();
    let mut m: Vec<Vec<Complex64>> = a.iter().map(|r| r.clone()).collect();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| m[i][col].norm().partial_cmp(&m[j][col].norm()).unwrap())
            .unwrap();
        if m[pivot][col].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            m.swap(col, pivot);
            det = -det;
        }
        det *= m[col][col];
        let inv = 1.0 / m[col][col];
        for r in col + 1..n {
            let factor = m[r][col] * inv;
            for k in col..n {
                let delta = factor * m[col][k];
                m[r][k] -= delta;
            }
        }
    }
    det
}

pub fn norm_inf(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

pub fn dist_inf(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
