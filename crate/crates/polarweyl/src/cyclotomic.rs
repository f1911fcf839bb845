//! Exact arithmetic in cyclotomic fields `Q(zeta_N)`.
//!
//! A [`CycNum`] is stored in canonical form: the conductor is the smallest
//! `N` whose field contains the value (and is never `2 mod 4`, since
//! `Q(zeta_2m) = Q(zeta_m)` for odd `m`), and the coefficient vector has
//! length `phi(N)` over the power basis `{zeta_N^k}` reduced modulo the
//! `N`-th cyclotomic polynomial.  Equality and hashing are therefore plain
//! component comparisons.
//!
//! Conductors are capped (default 120) to keep `phi(N)` small.  The cap is
//! enforced by the fallible constructors and parsers; once every input
//! value of a computation has been admitted, all arithmetic stays inside
//! the compositum of the input fields, so the in-place operators can only
//! hit the cap on unvalidated data (they panic with a clear message, and
//! [`CycNum::try_merge_conductor`] is available for upfront validation).

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU32, Ordering as AtomicOrdering};
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::poly::{cyclotomic_poly, euler_phi, RatPoly};

pub const DEFAULT_CONDUCTOR_LIMIT: u32 = 120;

static CONDUCTOR_LIMIT: AtomicU32 = AtomicU32::new(DEFAULT_CONDUCTOR_LIMIT);

/// Adjust the global conductor cap (mainly a CLI affordance).
pub fn set_conductor_limit(limit: u32) {
    CONDUCTOR_LIMIT.store(limit.max(1), AtomicOrdering::SeqCst);
}

pub fn conductor_limit() -> u32 {
    CONDUCTOR_LIMIT.load(AtomicOrdering::SeqCst)
}

// ---------------------------------------------------------------------------
// per-conductor precomputed data
// ---------------------------------------------------------------------------

struct SubfieldSolver {
    m: u32,
    phi_m: usize,
    /// Row transform `T` such that `T * B` is the reduced echelon form of
    /// the basis-embedding matrix `B` (columns: `zeta_m^i` in the
    /// `zeta_n` power basis). `B` has full column rank, so a solution of
    /// `B x = a` exists iff `(T a)[phi_m..]` vanishes, and then
    /// `x = (T a)[..phi_m]`.
    transform: Vec<Vec<BigRational>>,
}

struct FieldData {
    phi: usize,
    /// `power_reps[k]` is `zeta_n^k` reduced modulo `Phi_n`, for `k < n`.
    power_reps: Vec<Vec<BigRational>>,
    /// Solvers for the proper subfields `Q(zeta_m)`, ascending in `m`.
    subfields: Vec<SubfieldSolver>,
}

impl FieldData {
    fn build(n: u32) -> FieldData {
        assert!(n == 1 || n % 4 == 0 || n % 2 == 1, "illegal stored conductor {n}");
        let phi = euler_phi(n) as usize;
        let phi_poly = cyclotomic_poly(n);
        // x^k mod Phi_n for k < n, by iterated multiplication by x
        let mut power_reps: Vec<Vec<BigRational>> = Vec::with_capacity(n as usize);
        let mut cur = vec![BigRational::zero(); phi];
        cur[0] = BigRational::one();
        power_reps.push(cur.clone());
        for _k in 1..n {
            let mut next = vec![BigRational::zero(); phi];
            // multiply by x: shift, then reduce the overflow term
            let top = cur[phi - 1].clone();
            for i in (1..phi).rev() {
                next[i] = cur[i - 1].clone();
            }
            next[0] = BigRational::zero();
            if !top.is_zero() {
                // x^phi = -(c_0 + c_1 x + ... + c_{phi-1} x^{phi-1})
                for i in 0..phi {
                    let c = BigRational::from_integer(phi_poly.coeff(i));
                    next[i] -= &top * c;
                }
            }
            power_reps.push(next.clone());
            cur = next;
        }

        let mut subfields = Vec::new();
        for m in 1..n {
            if n % m != 0 || (m % 4 == 2) {
                continue;
            }
            let phi_m = euler_phi(m) as usize;
            let stride = (n / m) as usize;
            // embed basis of Q(zeta_m) and row-reduce [B | I]
            let mut rows: Vec<(Vec<BigRational>, Vec<BigRational>)> = (0..phi)
                .map(|r| {
                    let b_row: Vec<BigRational> =
                        (0..phi_m).map(|i| power_reps[i * stride][r].clone()).collect();
                    let mut t_row = vec![BigRational::zero(); phi];
                    t_row[r] = BigRational::one();
                    (b_row, t_row)
                })
                .collect();
            let mut pivot_row = 0usize;
            for col in 0..phi_m {
                let Some(sel) = (pivot_row..phi).find(|&r| !rows[r].0[col].is_zero()) else {
                    unreachable!("embedding matrix has full column rank");
                };
                rows.swap(pivot_row, sel);
                let inv = rows[pivot_row].0[col].recip();
                for v in rows[pivot_row].0.iter_mut() {
                    *v *= &inv;
                }
                for v in rows[pivot_row].1.iter_mut() {
                    *v *= &inv;
                }
                let pivot = rows[pivot_row].clone();
                for (r, row) in rows.iter_mut().enumerate() {
                    if r == pivot_row || row.0[col].is_zero() {
                        continue;
                    }
                    let c = row.0[col].clone();
                    for (v, p) in row.0.iter_mut().zip(pivot.0.iter()) {
                        *v -= &c * p;
                    }
                    for (v, p) in row.1.iter_mut().zip(pivot.1.iter()) {
                        *v -= &c * p;
                    }
                }
                pivot_row += 1;
            }
            let transform = rows.into_iter().map(|(_, t)| t).collect();
            subfields.push(SubfieldSolver { m, phi_m, transform });
        }

        FieldData { phi, power_reps, subfields }
    }
}

fn field_data(n: u32) -> Arc<FieldData> {
    static CACHE: Lazy<Mutex<HashMap<u32, Arc<FieldData>>>> =
        Lazy::new(|| Mutex::new(HashMap::new()));
    let mut cache = CACHE.lock().unwrap();
    cache
        .entry(n)
        .or_insert_with(|| Arc::new(FieldData::build(n)))
        .clone()
}

// ---------------------------------------------------------------------------
// CycNum
// ---------------------------------------------------------------------------

/// An exact element of a cyclotomic field, in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

impl CycNum {
    pub fn zero() -> Self {
        CycNum { conductor: 1, coeffs: vec![BigRational::zero()] }
    }

    pub fn one() -> Self {
        CycNum { conductor: 1, coeffs: vec![BigRational::one()] }
    }

    pub fn from_rational(q: BigRational) -> Self {
        CycNum { conductor: 1, coeffs: vec![q] }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0);
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The primitive root of unity `zeta_n = e^{2 pi i / n}`.
    pub fn root_of_unity(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::CycParse(format!("z({n})"), "order must be positive".into()));
        }
        if n > conductor_limit() {
            return Err(Error::ConductorLimit(n, conductor_limit()));
        }
        Ok(Self::from_power_sum(n, &[(1, BigRational::one())]))
    }

    /// `sum c_k zeta_n^{e_k}` for arbitrary exponents; handles conductor
    /// demotion and canonicalization.
    fn from_power_sum(n: u32, terms: &[(u32, BigRational)]) -> Self {
        if n % 4 == 2 {
            // zeta_{2m}^k = zeta_m^{k/2} (k even) or -zeta_m^{(k+m)/2} (k odd)
            let m = n / 2;
            let demoted: Vec<(u32, BigRational)> = terms
                .iter()
                .map(|(k, c)| {
                    let k = k % n;
                    if k % 2 == 0 {
                        ((k / 2) % m, c.clone())
                    } else {
                        (((k + m) / 2) % m, -c.clone())
                    }
                })
                .collect();
            return Self::from_power_sum(m, &demoted);
        }
        let fd = field_data(n);
        let mut coeffs = vec![BigRational::zero(); fd.phi];
        for (k, c) in terms {
            if c.is_zero() {
                continue;
            }
            let rep = &fd.power_reps[(*k % n) as usize];
            for (a, b) in coeffs.iter_mut().zip(rep.iter()) {
                *a += c * b;
            }
        }
        Self::canonicalize(n, coeffs)
    }

    /// Reduce an already mod-`Phi_n` coefficient vector to its minimal
    /// subfield representation.
    fn canonicalize(n: u32, coeffs: Vec<BigRational>) -> Self {
        if n == 1 {
            return CycNum { conductor: 1, coeffs };
        }
        let fd = field_data(n);
        debug_assert_eq!(coeffs.len(), fd.phi);
        'subfield: for solver in &fd.subfields {
            // y = T a
            let mut x = Vec::with_capacity(solver.phi_m);
            for (r, t_row) in solver.transform.iter().enumerate() {
                let mut y = BigRational::zero();
                for (t, a) in t_row.iter().zip(coeffs.iter()) {
                    if !t.is_zero() && !a.is_zero() {
                        y += t * a;
                    }
                }
                if r < solver.phi_m {
                    x.push(y);
                } else if !y.is_zero() {
                    continue 'subfield;
                }
            }
            return CycNum { conductor: solver.m, coeffs: x };
        }
        CycNum { conductor: n, coeffs }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_one()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.conductor == 1 {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Smallest legal common conductor of `a` and `b`, checked against the
    /// global cap. Parsers call this over all values of an input file;
    /// afterwards arithmetic cannot leave the compositum field.
    pub fn try_merge_conductor(a: u32, b: u32) -> Result<u32> {
        let l = num_integer::lcm(a, b);
        let l = if l % 4 == 2 { l / 2 } else { l };
        if l > conductor_limit() {
            return Err(Error::ConductorLimit(l, conductor_limit()));
        }
        Ok(l)
    }

    fn merged_conductor(a: u32, b: u32) -> u32 {
        Self::try_merge_conductor(a, b).unwrap_or_else(|e| panic!("{e}"))
    }

    /// Coefficients re-expressed in the power basis of `Q(zeta_n)`
    /// (`self.conductor` must divide `n`).
    fn upcast_coeffs(&self, n: u32) -> Vec<BigRational> {
        if self.conductor == n {
            return self.coeffs.clone();
        }
        debug_assert_eq!(n % self.conductor, 0);
        let fd = field_data(n);
        let stride = n / self.conductor;
        let mut out = vec![BigRational::zero(); fd.phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let rep = &fd.power_reps[(i as u32 * stride) as usize % n as usize];
            for (a, b) in out.iter_mut().zip(rep.iter()) {
                *a += c * b;
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.conductor == 1 && other.conductor == 1 {
            return CycNum::from_rational(&self.coeffs[0] + &other.coeffs[0]);
        }
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let n = Self::merged_conductor(self.conductor, other.conductor);
        let mut a = self.upcast_coeffs(n);
        let b = other.upcast_coeffs(n);
        for (x, y) in a.iter_mut().zip(b.iter()) {
            *x += y;
        }
        Self::canonicalize(n, a)
    }

    pub fn neg(&self) -> Self {
        CycNum {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.conductor == 1 && other.conductor == 1 {
            return CycNum::from_rational(&self.coeffs[0] * &other.coeffs[0]);
        }
        // scalar fast paths: scaling by a nonzero rational preserves the
        // minimal conductor
        if self.conductor == 1 {
            let q = &self.coeffs[0];
            if q.is_zero() {
                return CycNum::zero();
            }
            return CycNum {
                conductor: other.conductor,
                coeffs: other.coeffs.iter().map(|c| c * q).collect(),
            };
        }
        if other.conductor == 1 {
            return other.mul(self);
        }
        let n = Self::merged_conductor(self.conductor, other.conductor);
        let a = self.upcast_coeffs(n);
        let b = other.upcast_coeffs(n);
        let fd = field_data(n);
        let mut acc = vec![BigRational::zero(); fd.phi];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let rep = &fd.power_reps[(i + j) % n as usize];
                let xy = x * y;
                for (t, r) in acc.iter_mut().zip(rep.iter()) {
                    if !r.is_zero() {
                        *t += &xy * r;
                    }
                }
            }
        }
        Self::canonicalize(n, acc)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        if self.conductor == 1 {
            return Ok(CycNum::from_rational(self.coeffs[0].recip()));
        }
        // extended Euclid against Phi_n in Q[x]
        let phi_n = cyclotomic_poly(self.conductor).to_rat();
        let a = RatPoly::new(self.coeffs.clone());
        let (g, u) = half_ext_gcd(&a, &phi_n);
        debug_assert_eq!(g.degree(), Some(0), "Phi_n is irreducible");
        let g0 = g.coeff(0);
        let u = u.scale(&g0.recip());
        let mut coeffs = u.coeffs().to_vec();
        coeffs.resize(euler_phi(self.conductor) as usize, BigRational::zero());
        Ok(Self::canonicalize(self.conductor, coeffs))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = CycNum::one();
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

    /// Multiplicative order if this is a root of unity, else `None`.
    /// The roots of unity in `Q(zeta_N)` form the cyclic group of order
    /// `N` (even `N`) or `2N` (odd `N`), which bounds the search.
    pub fn root_of_unity_order(&self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let m = if self.conductor % 2 == 0 { self.conductor } else { 2 * self.conductor };
        if !self.pow(m as u64).is_one() {
            return None;
        }
        let mut order = m;
        let mut rem = m;
        let mut p = 2;
        while p * p <= rem {
            if rem % p == 0 {
                while rem % p == 0 {
                    rem /= p;
                }
                while order % p == 0 && self.pow((order / p) as u64).is_one() {
                    order /= p;
                }
            }
            p += 1;
        }
        if rem > 1 {
            let p = rem;
            while order % p == 0 && self.pow((order / p) as u64).is_one() {
                order /= p;
            }
        }
        Some(order)
    }

    /// Numerical evaluation at `zeta_N = e^{2 pi i / N}`.
    pub fn embed(&self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let angle = 2.0 * std::f64::consts::PI * (k as f64) / (self.conductor as f64);
            let c = c.to_f64().expect("rational out of f64 range");
            acc += Complex64::new(angle.cos(), angle.sin()) * c;
        }
        acc
    }
}

/// Half-extended gcd: returns `(g, u)` with `g = gcd(a, b)` and
/// `u a = g (mod b)`.
fn half_ext_gcd(a: &RatPoly, b: &RatPoly) -> (RatPoly, RatPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut u0, mut u1) = (RatPoly::one(), RatPoly::zero());
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1);
        let u = u0.sub(&q.mul(&u1));
        r0 = std::mem::replace(&mut r1, r);
        u0 = std::mem::replace(&mut u1, u);
    }
    (r0, u0)
}

impl PartialOrd for CycNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A total order used only for deterministic sorting (conductor first,
/// then coefficients lexicographically); it has no arithmetic meaning.
impl Ord for CycNum {
    fn cmp(&self, other: &Self) -> Ordering {
        self.conductor
            .cmp(&other.conductor)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.conductor == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            if k == 0 {
                write!(f, "{}", c)?;
            } else if c.is_one() {
                write!(f, "z({})^{}", self.conductor, k)?;
            } else {
                write!(f, "{}*z({})^{}", c, self.conductor, k)?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl FromStr for CycNum {
    type Err = Error;

    /// Parses the report serialization, e.g. `"1/2 + -3/4*z(12)^2 + z(4)^1"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::CycParse(s.to_string(), msg.to_string());
        let mut acc = CycNum::zero();
        for term in s.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(bad("empty term"));
            }
            let (coeff_str, root_str) = match term.split_once('*') {
                Some((c, r)) => (c.trim(), Some(r.trim())),
                None => {
                    if term.contains('z') {
                        let (sign, rest) = if let Some(r) = term.strip_prefix('-') {
                            ("-1", r.trim())
                        } else {
                            ("1", term)
                        };
                        (sign, Some(rest))
                    } else {
                        (term, None)
                    }
                }
            };
            let coeff = BigRational::from_str(coeff_str)
                .map_err(|e| bad(&format!("bad rational {coeff_str:?}: {e}")))?;
            let term_val = match root_str {
                None => CycNum::from_rational(coeff),
                Some(r) => {
                    let r = r.strip_prefix('z').ok_or_else(|| bad("expected z(N)"))?;
                    let r = r.trim();
                    let (n_str, k_str) = match r.split_once(')') {
                        Some((n, rest)) => {
                            let n = n.strip_prefix('(').ok_or_else(|| bad("expected z(N)"))?;
                            let k = rest.trim();
                            let k = k.strip_prefix('^').unwrap_or("1").trim();
                            (n.trim(), k)
                        }
                        None => return Err(bad("expected z(N)")),
                    };
                    let n: u32 = n_str.parse().map_err(|_| bad("bad conductor"))?;
                    let k: u32 = k_str.parse().map_err(|_| bad("bad exponent"))?;
                    if n == 0 {
                        return Err(bad("conductor must be positive"));
                    }
                    if n > conductor_limit() {
                        return Err(Error::ConductorLimit(n, conductor_limit()));
                    }
                    CycNum::from_power_sum(n, &[(k, coeff)])
                }
            };
            acc = acc.add(&term_val);
        }
        Ok(acc)
    }
}
