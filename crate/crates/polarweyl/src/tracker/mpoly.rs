//! Sparse multivariate polynomials with exact cyclotomic coefficients:
//! the invariants of a polar model, their restriction to the Cartan
//! subspace, partial derivatives, and exact composition with polynomial
//! curves (for loop construction).

use crate::cyclotomic::CycNum;
use crate::poly::CycPoly;
use num_complex::Complex64;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    vars: usize,
    terms: BTreeMap<Vec<u32>, CycNum>,
}

impl MPoly {
    pub fn zero(vars: usize) -> Self {
        MPoly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: usize, c: CycNum) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars], c);
        }
        p
    }

    pub fn var(vars: usize, i: usize) -> Self {
        assert!(i < vars);
        let mut exps = vec![0; vars];
        exps[i] = 1;
        let mut p = Self::zero(vars);
        p.terms.insert(exps, CycNum::one());
        p
    }

    pub fn from_terms(vars: usize, terms: Vec<(Vec<u32>, CycNum)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars);
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exps: Vec<u32>, c: CycNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(entry) => {
                *entry = entry.add(&c);
                if entry.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &CycNum)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.neg());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars);
        let mut out = Self::zero(self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let exps: Vec<u32> = e1.iter().zip(e2.iter()).map(|(a, b)| a + b).collect();
                out.add_term(exps, c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &CycNum) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars);
        }
        MPoly {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x.mul(c))).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.vars, CycNum::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.vars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut exps = e.clone();
            exps[i] -= 1;
            out.add_term(exps, c.mul(&CycNum::from_i64(e[i] as i64)));
        }
        out
    }

    pub fn eval_exact(&self, point: &[CycNum]) -> CycNum {
        assert_eq!(point.len(), self.vars);
        let mut acc = CycNum::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e.iter()) {
                if k > 0 {
                    term = term.mul(&x.pow(k as u64));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.vars);
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut term = c.embed();
            for (x, &k) in point.iter().zip(e.iter()) {
                for _ in 0..k {
                    term *= x;
                }
            }
            acc += term;
        }
        acc
    }

    /// Substitute `x_k = sum_i basis[i][k] t_i`: restriction to the span
    /// of the given vectors, as a polynomial in `t_1..t_r`.
    pub fn restrict_to_span(&self, basis: &[Vec<CycNum>]) -> MPoly {
        let r = basis.len();
        let linear_forms: Vec<MPoly> = (0..self.vars)
            .map(|k| {
                let mut form = MPoly::zero(r);
                for (i, b) in basis.iter().enumerate() {
                    form.add_term(
                        {
                            let mut e = vec![0; r];
                            e[i] = 1;
                            e
                        },
                        b[k].clone(),
                    );
                }
                form
            })
            .collect();
        self.compose(&linear_forms)
    }

    /// Substitute each variable by a polynomial in a common variable set.
    pub fn compose(&self, images: &[MPoly]) -> MPoly {
        assert_eq!(images.len(), self.vars);
        let out_vars = images.first().map_or(0, |p| p.vars);
        let mut acc = MPoly::zero(out_vars);
        for (e, c) in &self.terms {
            let mut term = MPoly::constant(out_vars, c.clone());
            for (img, &k) in images.iter().zip(e.iter()) {
                if k > 0 {
                    term = term.mul(&img.pow(k));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Substitute univariate polynomial curves `x_i = p_i(t)`: the exact
    /// composition along a parametrized path.
    pub fn compose_curve(&self, curves: &[CycPoly]) -> CycPoly {
        assert_eq!(curves.len(), self.vars);
        let mut acc = CycPoly::zero();
        for (e, c) in &self.terms {
            let mut term = CycPoly::new(vec![c.clone()]);
            for (curve, &k) in curves.iter().zip(e.iter()) {
                for _ in 0..k {
                    term = term.mul(curve);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }
}
