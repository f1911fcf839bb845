//! Rank-one data: inflation of a slice relation `Rt` through
//! `R(z) = Rt(z^m)`, the block carousel matrix realizing the inflated
//! monodromy, and the all-roots-of-unity check.

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::linalg::{matrix_min_poly, Mat};
use crate::poly::{factor_cyclotomic, IntPoly};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

/// Whether the slice Weyl group is trivial (`global`, forcing `m = n` and
/// `Rt = z - 1`) or cyclic of order `n / m` (`local`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RankOneType {
    Local,
    Global,
}

/// Slice data attached to one hyperplane orbit: the primitive reflection
/// order `n`, the divisor `m` generating the slice Weyl group, and the
/// slice relation polynomial `Rt` of degree `n / m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankOneDatum {
    pub orbit: String,
    pub n: u32,
    pub m: u32,
    pub rtilde: IntPoly,
    pub kind: RankOneType,
}

impl RankOneDatum {
    pub fn new(orbit: &str, n: u32, m: u32, rtilde: IntPoly, kind: RankOneType) -> Result<Self> {
        let datum = RankOneDatum { orbit: orbit.to_string(), n, m, rtilde, kind };
        datum.validate()?;
        Ok(datum)
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::BadRankOneDatum(msg));
        if self.n == 0 || self.m == 0 || self.n % self.m != 0 {
            return fail(format!("m = {} must divide n = {}", self.m, self.n));
        }
        if !self.rtilde.is_monic() {
            return fail("Rt must be monic".into());
        }
        if self.rtilde.degree() != Some((self.n / self.m) as usize) {
            return fail(format!(
                "deg Rt = {:?} but n/m = {}",
                self.rtilde.degree(),
                self.n / self.m
            ));
        }
        if self.kind == RankOneType::Global {
            if self.m != self.n {
                return fail("global type forces m = n".into());
            }
            if self.rtilde != IntPoly::from_i64(&[-1, 1]) {
                return fail("global type forces Rt = z - 1".into());
            }
        }
        Ok(())
    }
}

/// `R(z) = Rt(z^m)`: monic of degree `n`, integer coefficients.
pub fn inflate_relation(datum: &RankOneDatum) -> Result<IntPoly> {
    datum.validate()?;
    Ok(datum.rtilde.inflate(datum.m as usize))
}

/// The `m x m` block matrix with identity blocks on the subdiagonal and
/// the companion matrix of `Rt` in the top-right corner, together with
/// its exact minimal polynomial. The matrix realizes the monodromy of the
/// inflated relation: its minimal polynomial is `Rt(z^m)`.
pub fn carousel_matrix(datum: &RankOneDatum) -> Result<(Mat, IntPoly)> {
    datum.validate()?;
    let d = (datum.n / datum.m) as usize;
    let m = datum.m as usize;
    let size = m * d;
    let companion = companion_matrix(&datum.rtilde);
    let mut out = Mat::zeros(size, size);
    // top-right corner block: the companion matrix of Rt
    for i in 0..d {
        for j in 0..d {
            out[(i, (m - 1) * d + j)] = companion[(i, j)].clone();
        }
    }
    // identity blocks on the subdiagonal
    for blk in 1..m {
        for i in 0..d {
            out[(blk * d + i, (blk - 1) * d + i)] = CycNum::one();
        }
    }
    let min_poly = matrix_min_poly(&out)?;
    let min_poly = min_poly
        .to_int()
        .expect("minimal polynomial of an integer matrix has integer coefficients here");
    Ok((out, min_poly))
}

fn companion_matrix(p: &IntPoly) -> Mat {
    let d = p.degree().expect("companion of a nonzero polynomial");
    let mut m = Mat::zeros(d, d);
    for i in 1..d {
        m[(i, i - 1)] = CycNum::one();
    }
    for i in 0..d {
        let c = CycNum::from_rational(BigRational::from_integer(p.coeff(i)));
        m[(i, d - 1)] = c.neg();
    }
    m
}

/// Outcome of the roots-of-unity factor check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootsOfUnityCheck {
    pub all_roots_of_unity: bool,
    /// Root orders with multiplicity: `phi(d) * e` copies of `d` for each
    /// factor `Phi_d^e`.
    pub orders: Vec<u32>,
    /// The cyclotomic-free part, if any (as a display string).
    pub non_cyclotomic_part: Option<String>,
}

/// True iff every irreducible rational factor is cyclotomic, by trial
/// division against `Phi_d` for the finitely many `d` with
/// `phi(d) <= deg R`.
pub fn roots_of_unity_check(r: &IntPoly) -> Result<RootsOfUnityCheck> {
    if !r.is_monic() {
        return Err(Error::BadRankOneDatum("roots-of-unity check expects a monic R".into()));
    }
    let (factors, rest) = factor_cyclotomic(r);
    let mut orders = Vec::new();
    for (d, mult) in &factors {
        let copies = crate::poly::euler_phi(*d) as usize * mult;
        orders.extend(std::iter::repeat(*d).take(copies));
    }
    orders.sort_unstable();
    let all = rest.is_one();
    Ok(RootsOfUnityCheck {
        all_roots_of_unity: all,
        orders,
        non_cyclotomic_part: if all { None } else { Some(rest.to_string()) },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn local(orbit: &str, n: u32, m: u32, rt: &[i64]) -> RankOneDatum {
        RankOneDatum::new(orbit, n, m, IntPoly::from_i64(rt), RankOneType::Local).unwrap()
    }

    #[test]
    fn global_type_inflation() {
        let d = RankOneDatum::new("o", 3, 3, IntPoly::from_i64(&[-1, 1]), RankOneType::Global)
            .unwrap();
        assert_eq!(inflate_relation(&d).unwrap(), IntPoly::from_i64(&[-1, 0, 0, 1]));
    }

    #[test]
    fn identity_inflation() {
        let d = local("o", 2, 1, &[-1, 0, 1]); // (w-1)(w+1), m = 1
        assert_eq!(inflate_relation(&d).unwrap(), IntPoly::from_i64(&[-1, 0, 1]));
    }

    #[test]
    fn tau_orbit_inflation() {
        // Rt = (w-1)^2 with m = 2 gives (z^2-1)^2
        let d = local("tau", 4, 2, &[1, -2, 1]);
        assert_eq!(inflate_relation(&d).unwrap(), IntPoly::from_i64(&[1, 0, -2, 0, 1]));
    }

    #[test]
    fn swap_carousel() {
        let d = local("o", 2, 2, &[-1, 1]); // m = 2, Rt = w - 1
        let (m, mp) = carousel_matrix(&d).unwrap();
        assert_eq!(m, Mat::from_i64_rows(&[&[0, 1], &[1, 0]]));
        assert_eq!(mp, IntPoly::from_i64(&[-1, 0, 1]));
    }

    #[test]
    fn m_one_is_companion() {
        let d = local("o", 3, 1, &[-1, 3, -3, 1]); // (w-1)^3
        let (m, mp) = carousel_matrix(&d).unwrap();
        assert_eq!(m, companion_matrix(&IntPoly::from_i64(&[-1, 3, -3, 1])));
        assert_eq!(mp, IntPoly::from_i64(&[-1, 3, -3, 1]));
    }

    #[test]
    fn four_by_four_block() {
        // m = 2, Rt = (w-1)^2: minimal polynomial (z^2-1)^2
        let d = local("tau", 4, 2, &[1, -2, 1]);
        let (m, mp) = carousel_matrix(&d).unwrap();
        assert_eq!(m.nrows(), 4);
        assert_eq!(mp, IntPoly::from_i64(&[1, 0, -2, 0, 1]));
        assert_eq!(mp, inflate_relation(&d).unwrap());
    }

    #[test]
    fn roots_of_unity_examples() {
        // (z-1)(z+1)^2
        let r = IntPoly::from_i64(&[-1, -1, 1, 1]);
        let check = roots_of_unity_check(&r).unwrap();
        assert!(check.all_roots_of_unity);
        assert_eq!(check.orders, vec![1, 2, 2]);

        // (z^2-1)^2
        let r = IntPoly::from_i64(&[1, 0, -2, 0, 1]);
        let check = roots_of_unity_check(&r).unwrap();
        assert!(check.all_roots_of_unity);
        assert_eq!(check.orders, vec![1, 1, 2, 2]);

        // z^2 - z - 1: golden ratio roots
        let r = IntPoly::from_i64(&[-1, -1, 1]);
        let check = roots_of_unity_check(&r).unwrap();
        assert!(!check.all_roots_of_unity);
        assert!(check.non_cyclotomic_part.is_some());
    }

    #[test]
    fn validation_rejects_bad_data() {
        assert!(RankOneDatum::new("o", 4, 3, IntPoly::from_i64(&[-1, 1]), RankOneType::Local)
            .is_err());
        assert!(RankOneDatum::new("o", 4, 2, IntPoly::from_i64(&[-1, 1]), RankOneType::Local)
            .is_err());
        assert!(RankOneDatum::new("o", 4, 4, IntPoly::from_i64(&[1, 1]), RankOneType::Global)
            .is_err());
    }

    #[test]
    fn carousel_min_poly_equals_inflation_up_to_n_12() {
        // every divisor split of n <= 12 with a few slice polynomials
        for n in 1..=12u32 {
            for m in 1..=n {
                if n % m != 0 {
                    continue;
                }
                let d = (n / m) as usize;
                for rt in candidate_slices(d) {
                    let datum =
                        RankOneDatum::new("o", n, m, rt.clone(), RankOneType::Local).unwrap();
                    let inflated = inflate_relation(&datum).unwrap();
                    let (_, mp) = carousel_matrix(&datum).unwrap();
                    assert_eq!(mp, inflated, "n = {n}, m = {m}, Rt = {rt}");
                }
            }
        }
    }

    /// A few monic integer slice polynomials of the exact degree, with
    /// nonzero constant term (the slice monodromy is invertible).
    fn candidate_slices(d: usize) -> Vec<IntPoly> {
        let mut out = Vec::new();
        // (w - 1)^d
        let mut p = IntPoly::one();
        for _ in 0..d {
            p = p.mul(&IntPoly::from_i64(&[-1, 1]));
        }
        out.push(p);
        // (w + 1)^d
        let mut p = IntPoly::one();
        for _ in 0..d {
            p = p.mul(&IntPoly::from_i64(&[1, 1]));
        }
        out.push(p);
        // w^d - 1
        let mut coeffs = vec![0i64; d + 1];
        coeffs[0] = -1;
        coeffs[d] = 1;
        out.push(IntPoly::from_i64(&coeffs));
        // a mixed one with distinct structure when possible
        if d >= 2 {
            // (w - 1)^{d-1} (w + 1)
            let mut p = IntPoly::from_i64(&[1, 1]);
            for _ in 0..d - 1 {
                p = p.mul(&IntPoly::from_i64(&[-1, 1]));
            }
            out.push(p);
        }
        out
    }
}
