//! Parametrized arcs and loops in the space of regular values: polynomial
//! curves `t in [0,1] -> C^r` with exact cyclotomic coefficients,
//! evaluated in floating point during tracking.

use crate::cyclotomic::CycNum;
use crate::poly::CycPoly;
use num_complex::Complex64;
use serde::Serialize;

/// One polynomial arc; coordinate `i` is the exact polynomial
/// `coords[i](t)` for `t in [0, 1]`.
#[derive(Debug, Clone)]
pub struct Arc {
    coords: Vec<CycPoly>,
    numeric: Vec<Vec<Complex64>>,
}

impl Arc {
    pub fn new(coords: Vec<CycPoly>) -> Self {
        let numeric = coords
            .iter()
            .map(|p| p.coeffs().iter().map(|c| c.embed()).collect())
            .collect();
        Arc { coords, numeric }
    }

    /// The straight segment between two exact points.
    pub fn segment(from: &[CycNum], to: &[CycNum]) -> Self {
        let coords = from
            .iter()
            .zip(to.iter())
            .map(|(a, b)| CycPoly::new(vec![a.clone(), b.sub(a)]))
            .collect();
        Self::new(coords)
    }

    pub fn constant(point: &[CycNum]) -> Self {
        Self::new(point.iter().map(|c| CycPoly::new(vec![c.clone()])).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[CycPoly] {
        &self.coords
    }

    pub fn start_exact(&self) -> Vec<CycNum> {
        self.coords.iter().map(|p| p.coeff(0)).collect()
    }

    pub fn end_exact(&self) -> Vec<CycNum> {
        self.coords.iter().map(|p| p.eval(&CycNum::one())).collect()
    }

    pub fn value(&self, t: f64) -> Vec<Complex64> {
        self.numeric
            .iter()
            .map(|coeffs| {
                let mut acc = Complex64::new(0.0, 0.0);
                for c in coeffs.iter().rev() {
                    acc = acc * t + c;
                }
                acc
            })
            .collect()
    }

    pub fn derivative(&self, t: f64) -> Vec<Complex64> {
        self.numeric
            .iter()
            .map(|coeffs| {
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, c) in coeffs.iter().enumerate().skip(1).rev() {
                    acc = acc * t + c * (k as f64);
                }
                acc
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LoopIntent {
    FullTurn,
    WallHalfTurn { wall: usize },
    Custom,
}

/// A piecewise-polynomial loop of regular values, with its basepoint.
#[derive(Debug, Clone)]
pub struct LoopSpec {
    pub arcs: Vec<Arc>,
    pub intent: LoopIntent,
}

impl LoopSpec {
    pub fn new(arcs: Vec<Arc>, intent: LoopIntent) -> crate::error::Result<Self> {
        use crate::error::Error;
        if arcs.is_empty() {
            return Err(Error::BadPolarModel("a loop needs at least one arc".into()));
        }
        // exact closure and continuity checks
        for w in arcs.windows(2) {
            if w[0].end_exact() != w[1].start_exact() {
                return Err(Error::BadPolarModel("loop arcs are not contiguous".into()));
            }
        }
        let start = arcs.first().unwrap().start_exact();
        let end = arcs.last().unwrap().end_exact();
        if start != end {
            return Err(Error::BadPolarModel("loop does not close up".into()));
        }
        Ok(LoopSpec { arcs, intent })
    }

    pub fn basepoint_exact(&self) -> Vec<CycNum> {
        self.arcs[0].start_exact()
    }

    pub fn basepoint(&self) -> Vec<Complex64> {
        self.basepoint_exact().iter().map(|c| c.embed()).collect()
    }

    /// Concatenation `self * other` (run `self` first); basepoints must
    /// agree exactly.
    pub fn concat(&self, other: &LoopSpec) -> crate::error::Result<LoopSpec> {
        let mut arcs = self.arcs.clone();
        arcs.extend(other.arcs.iter().cloned());
        LoopSpec::new(arcs, LoopIntent::Custom)
    }

    /// The reversed loop (each arc reparametrized by `t -> 1 - t`).
    pub fn reverse(&self) -> LoopSpec {
        let arcs: Vec<Arc> = self
            .arcs
            .iter()
            .rev()
            .map(|arc| {
                let coords = arc
                    .coords()
                    .iter()
                    .map(|p| {
                        // p(1 - t)
                        let mut acc = CycPoly::zero();
                        let one_minus_t = CycPoly::new(vec![
                            CycNum::one(),
                            CycNum::from_i64(-1),
                        ]);
                        for c in p.coeffs().iter().rev() {
                            acc = acc.mul(&one_minus_t).add(&CycPoly::new(vec![c.clone()]));
                        }
                        acc
                    })
                    .collect();
                Arc::new(coords)
            })
            .collect();
        LoopSpec { arcs, intent: LoopIntent::Custom }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: i64) -> CycNum {
        CycNum::from_i64(n)
    }

    #[test]
    fn segment_interpolates() {
        let arc = Arc::segment(&[cyc(1), cyc(3)], &[cyc(2), cyc(7)]);
        let mid = arc.value(0.5);
        assert!((mid[0] - Complex64::new(1.5, 0.0)).norm() < 1e-15);
        assert!((mid[1] - Complex64::new(5.0, 0.0)).norm() < 1e-15);
        let d = arc.derivative(0.25);
        assert!((d[0] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((d[1] - Complex64::new(4.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn loop_closure_checked_exactly() {
        let a = Arc::segment(&[cyc(1)], &[cyc(2)]);
        let b = Arc::segment(&[cyc(2)], &[cyc(1)]);
        assert!(LoopSpec::new(vec![a.clone(), b], LoopIntent::Custom).is_ok());
        let open = Arc::segment(&[cyc(2)], &[cyc(3)]);
        assert!(LoopSpec::new(vec![a, open], LoopIntent::Custom).is_err());
    }

    #[test]
    fn reverse_runs_backwards() {
        let a = Arc::segment(&[cyc(1)], &[cyc(2)]);
        let b = Arc::segment(&[cyc(2)], &[cyc(1)]);
        let l = LoopSpec::new(vec![a, b], LoopIntent::Custom).unwrap();
        let r = l.reverse();
        assert_eq!(r.basepoint_exact(), l.basepoint_exact());
        // the reversed loop starts along the backwards second arc
        let v = r.arcs[0].value(0.25);
        assert!((v[0] - Complex64::new(1.25, 0.0)).norm() < 1e-15);
    }
}
