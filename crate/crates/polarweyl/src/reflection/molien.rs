//! Molien series and invariant degrees.

use super::ReflectionGroup;
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::poly::CycPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone)]
pub struct MolienResult {
    /// Power series coefficients of `M(t)` up to the requested precision.
    pub series: Vec<BigRational>,
    /// Invariant degrees `d_1 <= ... <= d_r`.
    pub degrees: Vec<u32>,
}

/// `M(t) = (1/|W|) sum_g 1/det(1 - t g)` to the given precision, with the
/// degrees extracted by iterated division against `prod 1/(1 - t^{d_i})`.
/// Verifies `prod d_i = |W|` and that the series is exhausted.
pub fn molien_series(group: &ReflectionGroup, precision: usize) -> Result<MolienResult> {
    let dim = group.dim();
    let mut sum = CycPoly::zero();
    for g in group.elements() {
        let det = g.det_one_minus_t();
        let inv = det.series_inverse(precision)?;
        sum = sum.add(&inv);
    }
    let order_inv = CycNum::from_ratio(1, group.order() as i64);
    let series_poly = sum.scale(&order_inv);
    let mut series = Vec::with_capacity(precision);
    for k in 0..precision {
        let c = series_poly.coeff(k).as_rational().ok_or_else(|| {
            Error::DegreeExtraction("Molien coefficient is not rational".into())
        })?;
        series.push(c);
    }

    // peel off one factor 1/(1 - t^d) per degree
    let mut work = series.clone();
    let mut degrees = Vec::with_capacity(dim);
    for _ in 0..dim {
        let d = (1..precision).find(|&k| !work[k].is_zero()).ok_or_else(|| {
            Error::DegreeExtraction(format!(
                "ran out of series terms at precision {precision}; not a reflection group \
                 on this space, or precision too small"
            ))
        })?;
        if work[d].is_negative() {
            return Err(Error::DegreeExtraction(format!(
                "negative coefficient at degree {d}; not a reflection group on this space"
            )));
        }
        degrees.push(d as u32);
        // multiply the series by (1 - t^d)
        for k in (d..precision).rev() {
            let lower = work[k - d].clone();
            work[k] -= lower;
        }
    }
    let leftovers = (1..precision).any(|k| !work[k].is_zero());
    if leftovers {
        return Err(Error::DegreeExtraction(
            "series does not factor into the expected product; not a reflection group \
             on this space"
                .into(),
        ));
    }
    let mut prod = BigInt::one();
    for &d in &degrees {
        prod *= BigInt::from(d);
    }
    if prod != BigInt::from(group.order()) {
        return Err(Error::DegreeExtraction(format!(
            "degree product {prod} does not equal the group order {}",
            group.order()
        )));
    }
    degrees.sort_unstable();
    Ok(MolienResult { series, degrees })
}

/// Degrees with an automatically sufficient precision: the largest degree
/// is at most (number of reflections) + 1 since `sum (d_i - 1)` counts the
/// reflections.
pub fn invariant_degrees(group: &ReflectionGroup) -> Result<Vec<u32>> {
    let reflections = super::find_reflections(group).reflections.len();
    let precision = reflections + group.dim() + 2;
    Ok(molien_series(group, precision)?.degrees)
}

/// `rank = dim - dim(fixed subspace of the whole group)`.
pub fn rank_of_action(group: &ReflectionGroup) -> usize {
    let dim = group.dim();
    let gens = group.generator_indices();
    if gens.is_empty() {
        return 0;
    }
    let mut stacked = Vec::new();
    for &gi in gens {
        let m = group.element(gi).sub(&Mat::identity(dim));
        for i in 0..dim {
            stacked.push(m.row(i).to_vec());
        }
    }
    let fixed_dim = Mat::from_rows(stacked).kernel_basis().len();
    dim - fixed_dim
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reflection::{CoxeterFamily, ReflectionGroupSpec};

    fn group(spec: ReflectionGroupSpec) -> ReflectionGroup {
        ReflectionGroup::enumerate(&spec, 20_000).unwrap()
    }

    #[test]
    fn cyclic_degrees() {
        for n in [2u32, 3, 5] {
            let g = group(ReflectionGroupSpec::Cyclic { order: n });
            assert_eq!(invariant_degrees(&g).unwrap(), vec![n]);
        }
    }

    #[test]
    fn coxeter_degrees() {
        let a2 = group(ReflectionGroupSpec::Coxeter { family: CoxeterFamily::A, rank: 2 });
        assert_eq!(invariant_degrees(&a2).unwrap(), vec![2, 3]);
        let b2 = group(ReflectionGroupSpec::Coxeter { family: CoxeterFamily::B, rank: 2 });
        assert_eq!(invariant_degrees(&b2).unwrap(), vec![2, 4]);
        let a3 = group(ReflectionGroupSpec::Coxeter { family: CoxeterFamily::A, rank: 3 });
        assert_eq!(invariant_degrees(&a3).unwrap(), vec![2, 3, 4]);
        let i25 = group(ReflectionGroupSpec::Coxeter { family: CoxeterFamily::I2(5), rank: 2 });
        assert_eq!(invariant_degrees(&i25).unwrap(), vec![2, 5]);
    }

    #[test]
    fn imprimitive_degrees() {
        let g = group(ReflectionGroupSpec::Imprimitive { m: 4, n: 2 });
        assert_eq!(invariant_degrees(&g).unwrap(), vec![4, 8]);
        // the permutation representation of S3 includes the trivial degree
        let s3 = group(ReflectionGroupSpec::Imprimitive { m: 1, n: 3 });
        assert_eq!(invariant_degrees(&s3).unwrap(), vec![1, 2, 3]);
    }

    #[test]
    fn degree_identities() {
        // prod d_i = |W| is checked internally; also check
        // sum (d_i - 1) = number of reflections
        for spec in [
            ReflectionGroupSpec::Coxeter { family: CoxeterFamily::A, rank: 3 },
            ReflectionGroupSpec::Coxeter { family: CoxeterFamily::B, rank: 3 },
            ReflectionGroupSpec::Coxeter { family: CoxeterFamily::D, rank: 4 },
            ReflectionGroupSpec::Imprimitive { m: 3, n: 2 },
            ReflectionGroupSpec::Imprimitive { m: 4, n: 2 },
            ReflectionGroupSpec::Cyclic { order: 6 },
        ] {
            let g = group(spec.clone());
            let t = crate::reflection::find_reflections(&g);
            let degrees = invariant_degrees(&g).unwrap();
            let sum: u32 = degrees.iter().map(|d| d - 1).sum();
            assert_eq!(sum as usize, t.reflections.len(), "{spec}");
            // hyperplane count with multiplicity n_H - 1 equals the same sum
            let hyper_sum: u32 = t
                .orbits
                .iter()
                .map(|o| {
                    o.hyperplanes.len() as u32
                        * (t.by_hyperplane(o.hyperplanes[0]).len() as u32)
                })
                .sum();
            assert_eq!(hyper_sum as usize, t.reflections.len(), "{spec}");
        }
    }

    #[test]
    fn rank_values() {
        let a2 = group(ReflectionGroupSpec::Coxeter { family: CoxeterFamily::A, rank: 2 });
        assert_eq!(rank_of_action(&a2), 2);
        let c3 = group(ReflectionGroupSpec::Cyclic { order: 3 });
        assert_eq!(rank_of_action(&c3), 1);
        // permutation rep of S3 fixes the diagonal line
        let s3 = group(ReflectionGroupSpec::Imprimitive { m: 1, n: 3 });
        assert_eq!(rank_of_action(&s3), 2);
        // trivial group on C^1
        let triv = group(ReflectionGroupSpec::Imprimitive { m: 1, n: 1 });
        assert_eq!(rank_of_action(&triv), 0);
    }

    #[test]
    fn degree_extraction_rejects_non_reflection_groups() {
        // Z/2 acting by -1 on C^2 is not a reflection group
        let spec = ReflectionGroupSpec::Explicit {
            generators: vec![Mat::from_i64_rows(&[&[-1, 0], &[0, -1]])],
        };
        let g = group(spec);
        assert!(matches!(molien_series(&g, 12), Err(Error::DegreeExtraction(_))));
    }
}
