//! Dense univariate polynomials over the exact coefficient rings used in
//! this crate: `BigInt` (relation polynomials), `BigRational` (linear
//! algebra, minimal polynomials of rational matrices) and [`CycNum`]
//! (Molien series, minimal polynomials inside a quotient algebra).
//!
//! Coefficient vectors are stored lowest degree first and kept trimmed of
//! trailing zeros; the zero polynomial is the empty vector.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use crate::cyclotomic::CycNum;

// ---------------------------------------------------------------------------
// integer polynomials
// ---------------------------------------------------------------------------

/// Monic integer polynomials are the contract for every relation
/// polynomial `R` in the crate, so this type is deliberately small.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// The monomial `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        IntPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree of the polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, |c| c.is_one())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + other.coeff(k));
        }
        Self::new(out)
    }

    pub fn neg(&self) -> Self {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Division with remainder by a monic divisor. Panics if `divisor` is
    /// not monic (every divisor in this crate is a monic relation or a
    /// cyclotomic polynomial).
    pub fn divrem_monic(&self, divisor: &Self) -> (Self, Self) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let d = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for k in (d..rem.len()).rev() {
            let c = std::mem::replace(&mut rem[k], BigInt::zero());
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate().take(d) {
                rem[k - d + j] -= &c * b;
            }
            quot[k - d] = c;
        }
        rem.truncate(d);
        (Self::new(quot), Self::new(rem))
    }

    /// Substitute `x -> x^m`, spreading the coefficients with stride `m`.
    pub fn inflate(&self, m: usize) -> Self {
        assert!(m >= 1);
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); (self.coeffs.len() - 1) * m + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k * m] = c.clone();
        }
        Self::new(out)
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn to_cyc(&self) -> CycPoly {
        CycPoly::new(
            self.coeffs
                .iter()
                .map(|c| CycNum::from_rational(BigRational::from_integer(c.clone())))
                .collect(),
        )
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match k {
                0 => write!(f, "{}", a)?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{}*", a)?;
                    }
                    if k == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{}", k)?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

/// `n`-th cyclotomic polynomial, computed by exact division
/// `(x^n - 1) / prod_{d | n, d < n} Phi_d` and cached per `n`.
pub fn cyclotomic_poly(n: u32) -> IntPoly {
    static CACHE: Lazy<Mutex<HashMap<u32, IntPoly>>> = Lazy::new(|| Mutex::new(HashMap::new()));
    if let Some(p) = CACHE.lock().unwrap().get(&n) {
        return p.clone();
    }
    assert!(n >= 1);
    let mut num = IntPoly::monomial(n as usize).sub(&IntPoly::one());
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_poly(d);
            let (q, r) = num.divrem_monic(&phi_d);
            debug_assert!(r.is_zero());
            num = q;
        }
    }
    CACHE.lock().unwrap().insert(n, num.clone());
    num
}

/// Divide out every cyclotomic factor of a monic integer polynomial by
/// trial division against `Phi_d` for all `d` with `phi(d) <= deg`.
/// Returns the factors as `(order, multiplicity)` pairs sorted by order,
/// together with the (monic) cyclotomic-free remainder.
pub fn factor_cyclotomic(p: &IntPoly) -> (Vec<(u32, usize)>, IntPoly) {
    assert!(p.is_monic(), "cyclotomic factorization expects a monic polynomial");
    let mut rest = p.clone();
    let mut factors = Vec::new();
    let deg0 = rest.degree().unwrap_or(0) as u32;
    // phi(d) >= sqrt(d/2), so phi(d) <= n forces d <= 2 n^2
    let bound = 2 * deg0 * deg0 + 1;
    for d in 1..=bound {
        let deg = rest.degree().unwrap_or(0) as u32;
        if deg == 0 {
            break;
        }
        if euler_phi(d) > deg {
            continue;
        }
        let phi_d = cyclotomic_poly(d);
        let mut mult = 0usize;
        loop {
            let (q, r) = rest.divrem_monic(&phi_d);
            if r.is_zero() {
                rest = q;
                mult += 1;
            } else {
                break;
            }
        }
        if mult > 0 {
            factors.push((d, mult));
        }
    }
    (factors, rest)
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

// ---------------------------------------------------------------------------
// rational polynomials
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        RatPoly {
            coeffs: vec![BigRational::one()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        let lead = divisor.leading().expect("division by zero polynomial");
        let d = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - d];
        for k in (d..rem.len()).rev() {
            let c = std::mem::replace(&mut rem[k], BigRational::zero()) / lead;
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate().take(d) {
                rem[k - d + j] -= &c * b;
            }
            quot[k - d] = c;
        }
        rem.truncate(d);
        (Self::new(quot), Self::new(rem))
    }

    /// Normalize to leading coefficient 1.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(other);
        let (q, r) = self.mul(other).divrem(&g);
        debug_assert!(r.is_zero());
        q.monic()
    }

    /// Exact conversion to an integer polynomial; `None` if any
    /// coefficient has a nontrivial denominator.
    pub fn to_int(&self) -> Option<IntPoly> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if !c.denom().is_one() {
                return None;
            }
            out.push(c.numer().clone());
        }
        Some(IntPoly::new(out))
    }
}

// ---------------------------------------------------------------------------
// polynomials over a cyclotomic field
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycPoly {
    coeffs: Vec<CycNum>,
}

impl CycPoly {
    pub fn new(mut coeffs: Vec<CycNum>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        CycPoly { coeffs }
    }

    pub fn zero() -> Self {
        CycPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        CycPoly {
            coeffs: vec![CycNum::one()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> CycNum {
        self.coeffs.get(k).cloned().unwrap_or_else(CycNum::zero)
    }

    pub fn coeffs(&self) -> &[CycNum] {
        &self.coeffs
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, |c| c.is_one())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k).add(&other.coeff(k))).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k).sub(&other.coeff(k))).collect())
    }

    pub fn scale(&self, c: &CycNum) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![CycNum::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out)
    }

    /// Truncated product, keeping only terms of degree `< prec`.
    pub fn mul_trunc(&self, other: &Self, prec: usize) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![CycNum::zero(); prec.min(self.coeffs.len() + other.coeffs.len() - 1)];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= prec {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= prec {
                    break;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out)
    }

    /// Power-series inverse modulo `t^prec`; requires a nonzero constant
    /// coefficient.
    pub fn series_inverse(&self, prec: usize) -> crate::error::Result<Self> {
        let c0 = self.coeff(0);
        let c0_inv = c0.inv()?;
        let mut out = vec![CycNum::zero(); prec];
        out[0] = c0_inv.clone();
        for k in 1..prec {
            // coefficient of t^k in self * out must vanish
            let mut acc = CycNum::zero();
            for j in 0..k {
                let a = self.coeff(k - j);
                if a.is_zero() {
                    continue;
                }
                acc = acc.add(&a.mul(&out[j]));
            }
            out[k] = acc.neg().mul(&c0_inv);
        }
        Ok(Self::new(out))
    }

    pub fn eval(&self, x: &CycNum) -> CycNum {
        let mut acc = CycNum::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn monic(&self) -> crate::error::Result<Self> {
        match self.coeffs.last() {
            None => Ok(Self::zero()),
            Some(l) => {
                let li = l.inv()?;
                Ok(self.scale(&li))
            }
        }
    }

    /// Exact conversion to a rational polynomial; `None` if any
    /// coefficient is irrational.
    pub fn to_rat(&self) -> Option<RatPoly> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.as_rational()?);
        }
        Some(RatPoly::new(out))
    }

    pub fn to_int(&self) -> Option<IntPoly> {
        self.to_rat().and_then(|p| p.to_int())
    }
}

impl fmt::Display for CycPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "({})", c)?,
                1 => write!(f, "({})*z", c)?,
                _ => write!(f, "({})*z^{}", c, k)?,
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polys_small() {
        assert_eq!(cyclotomic_poly(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_poly(2), IntPoly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic_poly(3), IntPoly::from_i64(&[1, 1, 1]));
        assert_eq!(cyclotomic_poly(4), IntPoly::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly(6), IntPoly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(12), IntPoly::from_i64(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn phi_matches_degree() {
        for n in 1..=40 {
            assert_eq!(
                cyclotomic_poly(n).degree(),
                Some(euler_phi(n) as usize),
                "n = {n}"
            );
        }
    }

    #[test]
    fn int_divrem() {
        // (z^2 - 1)^2 / (z^2 - 1)
        let p = IntPoly::from_i64(&[1, 0, -2, 0, 1]);
        let d = IntPoly::from_i64(&[-1, 0, 1]);
        let (q, r) = p.divrem_monic(&d);
        assert!(r.is_zero());
        assert_eq!(q, d);
    }

    #[test]
    fn inflate_spreads() {
        // (w - 1)^2 inflated by 2 is (z^2 - 1)^2
        let p = IntPoly::from_i64(&[1, -2, 1]);
        assert_eq!(p.inflate(2), IntPoly::from_i64(&[1, 0, -2, 0, 1]));
    }

    #[test]
    fn rat_gcd_lcm() {
        let a = IntPoly::from_i64(&[-1, 1]).to_rat(); // z - 1
        let b = IntPoly::from_i64(&[1, 1]).to_rat(); // z + 1
        let ab = a.mul(&b);
        assert_eq!(a.gcd(&ab), a.monic());
        assert_eq!(a.lcm(&b), ab.monic());
    }
}
