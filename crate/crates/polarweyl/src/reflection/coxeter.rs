//! Coxeter family data: Coxeter matrices, reflection representations and
//! closed-form orders.

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::linalg::Mat;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoxeterFamily {
    A,
    B,
    D,
    I2(u32),
    H3,
    H4,
    F4,
}

impl fmt::Display for CoxeterFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoxeterFamily::A => write!(f, "A"),
            CoxeterFamily::B => write!(f, "B"),
            CoxeterFamily::D => write!(f, "D"),
            CoxeterFamily::I2(m) => write!(f, "I2({m})"),
            CoxeterFamily::H3 => write!(f, "H3"),
            CoxeterFamily::H4 => write!(f, "H4"),
            CoxeterFamily::F4 => write!(f, "F4"),
        }
    }
}

fn check_rank(family: CoxeterFamily, rank: usize) -> Result<()> {
    let ok = match family {
        CoxeterFamily::A => rank >= 1,
        CoxeterFamily::B => rank >= 2,
        CoxeterFamily::D => rank >= 2,
        CoxeterFamily::I2(m) => rank == 2 && m >= 2,
        CoxeterFamily::H3 => rank == 3,
        CoxeterFamily::H4 => rank == 4,
        CoxeterFamily::F4 => rank == 4,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::BadGroupSpec(format!("invalid rank {rank} for family {family}")))
    }
}

/// The Coxeter matrix `(m_ij)` of the family at the given rank, with the
/// conventional node numbering (`B`: the 4-bond at the far end; `D`: the
/// fork at the far end; `F4`: 3-4-3; `H3`/`H4`: the 5-bond first).
pub fn coxeter_matrix(family: CoxeterFamily, rank: usize) -> Result<Vec<Vec<u32>>> {
    check_rank(family, rank)?;
    let mut m = vec![vec![2u32; rank]; rank];
    for i in 0..rank {
        m[i][i] = 1;
    }
    let bond = |i: usize, j: usize, v: u32, m: &mut Vec<Vec<u32>>| {
        m[i][j] = v;
        m[j][i] = v;
    };
    match family {
        CoxeterFamily::A => {
            for i in 0..rank.saturating_sub(1) {
                bond(i, i + 1, 3, &mut m);
            }
        }
        CoxeterFamily::B => {
            for i in 0..rank - 2 {
                bond(i, i + 1, 3, &mut m);
            }
            bond(rank - 2, rank - 1, 4, &mut m);
        }
        CoxeterFamily::D => {
            // chain on 0..rank-2, fork node rank-1 attached to rank-3
            if rank == 2 {
                // D2 = A1 x A1: no bonds
            } else {
                for i in 0..rank - 2 {
                    bond(i, i + 1, 3, &mut m);
                }
                bond(rank - 3, rank - 1, 3, &mut m);
                m[rank - 2][rank - 1] = 2;
                m[rank - 1][rank - 2] = 2;
            }
        }
        CoxeterFamily::I2(order) => bond(0, 1, order, &mut m),
        CoxeterFamily::H3 => {
            bond(0, 1, 5, &mut m);
            bond(1, 2, 3, &mut m);
        }
        CoxeterFamily::H4 => {
            bond(0, 1, 5, &mut m);
            bond(1, 2, 3, &mut m);
            bond(2, 3, 3, &mut m);
        }
        CoxeterFamily::F4 => {
            bond(0, 1, 3, &mut m);
            bond(1, 2, 4, &mut m);
            bond(2, 3, 3, &mut m);
        }
    }
    Ok(m)
}

/// Order of the Coxeter group, by the classical product formulas.
pub fn coxeter_order(family: CoxeterFamily, rank: usize) -> Option<usize> {
    check_rank(family, rank).ok()?;
    let factorial = |n: usize| (1..=n).product::<usize>();
    Some(match family {
        CoxeterFamily::A => factorial(rank + 1),
        CoxeterFamily::B => (1usize << rank) * factorial(rank),
        CoxeterFamily::D => (1usize << (rank - 1)) * factorial(rank),
        CoxeterFamily::I2(m) => 2 * m as usize,
        CoxeterFamily::H3 => 120,
        CoxeterFamily::H4 => 14400,
        CoxeterFamily::F4 => 1152,
    })
}

/// Simple-reflection matrices. Crystallographic families use the integer
/// Cartan-matrix realization `s_j(a_i) = a_i - a_{ij} a_j`; the others use
/// the symmetric geometric realization with entries `2 cos(pi/m_ij)`.
pub fn generators(family: CoxeterFamily, rank: usize) -> Result<Vec<Mat>> {
    check_rank(family, rank)?;
    match family {
        CoxeterFamily::A | CoxeterFamily::B | CoxeterFamily::D | CoxeterFamily::F4 => {
            let cartan = cartan_matrix(family, rank);
            let mut gens = Vec::with_capacity(rank);
            for j in 0..rank {
                let mut s = Mat::identity(rank);
                for i in 0..rank {
                    s[(j, i)] = CycNum::from_i64(if i == j { -1 } else { -cartan[i][j] });
                }
                gens.push(s);
            }
            Ok(gens)
        }
        _ => {
            let cox = coxeter_matrix(family, rank)?;
            let mut gens = Vec::with_capacity(rank);
            for i in 0..rank {
                let mut s = Mat::identity(rank);
                for j in 0..rank {
                    s[(i, j)] = if i == j {
                        CycNum::from_i64(-1)
                    } else {
                        two_cos_pi_over(cox[i][j])
                    };
                }
                gens.push(s);
            }
            Ok(gens)
        }
    }
}

/// `2 cos(pi / m) = zeta_{2m} + zeta_{2m}^{-1}` as an exact cyclotomic
/// number; canonicalization drops it into the smallest containing field.
fn two_cos_pi_over(m: u32) -> CycNum {
    CycNum::root_of_unity(2 * m)
        .map(|z| z.add(&z.pow((2 * m - 1) as u64)))
        .unwrap_or_else(|_| panic!("conductor cap too small for a bond of order {m}"))
}

/// Cartan integers `a_ij` for the crystallographic families.
fn cartan_matrix(family: CoxeterFamily, rank: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; rank]; rank];
    for i in 0..rank {
        a[i][i] = 2;
    }
    let bond = |i: usize, j: usize, aij: i64, aji: i64, a: &mut Vec<Vec<i64>>| {
        a[i][j] = aij;
        a[j][i] = aji;
    };
    match family {
        CoxeterFamily::A => {
            for i in 0..rank.saturating_sub(1) {
                bond(i, i + 1, -1, -1, &mut a);
            }
        }
        CoxeterFamily::B => {
            for i in 0..rank - 2 {
                bond(i, i + 1, -1, -1, &mut a);
            }
            // last simple root short: <a_{r-2}, a_{r-1}^v> = -2
            bond(rank - 2, rank - 1, -2, -1, &mut a);
        }
        CoxeterFamily::D => {
            if rank > 2 {
                for i in 0..rank - 2 {
                    bond(i, i + 1, -1, -1, &mut a);
                }
                bond(rank - 3, rank - 1, -1, -1, &mut a);
            }
        }
        CoxeterFamily::F4 => {
            bond(0, 1, -1, -1, &mut a);
            bond(1, 2, -2, -1, &mut a);
            bond(2, 3, -1, -1, &mut a);
        }
        _ => unreachable!("not a crystallographic family"),
    }
    a
}
