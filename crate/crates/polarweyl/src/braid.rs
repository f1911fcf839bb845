//! Braid presentations, relation sets, and noncommutative polynomials in
//! the braid generators.

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::reflection::{coxeter_matrix, CoxeterFamily, ReflectionGroupSpec};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// A positive word in the braid generators, by generator index.
pub type Word = Vec<u8>;

/// Degree-lexicographic comparison with a fixed generator order.
pub fn deglex(a: &Word, b: &Word) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

pub fn word_to_string(word: &Word, names: &[String]) -> String {
    if word.is_empty() {
        return "1".to_string();
    }
    word.iter().map(|&g| names[g as usize].as_str()).collect::<Vec<_>>().join(" ")
}

/// Generators and defining positive-word relations of a braid group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidPresentation {
    names: Vec<String>,
    relations: Vec<(Word, Word)>,
}

impl BraidPresentation {
    pub fn new(names: Vec<String>, relations: Vec<(Word, Word)>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::BadPresentation("generator set is empty".into()));
        }
        let k = names.len();
        for (lhs, rhs) in &relations {
            if lhs.is_empty() || rhs.is_empty() {
                return Err(Error::BadPresentation(
                    "relation words must be nonempty positive words".into(),
                ));
            }
            if lhs.iter().chain(rhs.iter()).any(|&g| g as usize >= k) {
                return Err(Error::BadPresentation("relation uses an unknown generator".into()));
            }
        }
        Ok(BraidPresentation { names, relations })
    }

    /// Artin presentation from a Coxeter matrix: for `i < j`, the two
    /// alternating words of length `m_ij` are equal.
    pub fn from_coxeter_matrix(names: Vec<String>, cox: &[Vec<u32>]) -> Result<Self> {
        let k = names.len();
        if cox.len() != k || cox.iter().any(|row| row.len() != k) {
            return Err(Error::BadPresentation("Coxeter matrix size mismatch".into()));
        }
        let mut relations = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                let m = cox[i][j];
                if m < 2 {
                    return Err(Error::BadPresentation(format!("m[{i}][{j}] must be >= 2")));
                }
                let alternating = |a: u8, b: u8| -> Word {
                    (0..m).map(|t| if t % 2 == 0 { a } else { b }).collect()
                };
                relations.push((alternating(i as u8, j as u8), alternating(j as u8, i as u8)));
            }
        }
        Self::new(names, relations)
    }

    /// The standard braid presentation attached to a group spec:
    /// Artin relations for Coxeter types, a free generator for cyclic
    /// groups, and for `G(m,1,n)` the generators `t, s_1..s_{n-1}` with
    /// `t s_1 t s_1 = s_1 t s_1 t`, `t s_i = s_i t` for `i >= 2`, and
    /// Artin relations among the `s_i`.
    pub fn for_group_spec(spec: &ReflectionGroupSpec) -> Result<Self> {
        match spec {
            ReflectionGroupSpec::Coxeter { family, rank } => {
                let names = coxeter_generator_names(*family, *rank);
                let cox = coxeter_matrix(*family, *rank)?;
                Self::from_coxeter_matrix(names, &cox)
            }
            ReflectionGroupSpec::Cyclic { .. } => Self::new(vec!["z".into()], vec![]),
            ReflectionGroupSpec::Imprimitive { m, n } => {
                if *m >= 2 {
                    let mut names = vec!["t".to_string()];
                    names.extend((1..*n).map(|i| format!("s{i}")));
                    let mut relations = Vec::new();
                    if *n >= 2 {
                        // t s1 t s1 = s1 t s1 t
                        relations.push((vec![0, 1, 0, 1], vec![1, 0, 1, 0]));
                    }
                    for i in 2..*n {
                        relations.push((vec![0, i as u8], vec![i as u8, 0]));
                    }
                    for i in 1..n.saturating_sub(1) {
                        let (a, b) = (i as u8, (i + 1) as u8);
                        relations.push((vec![a, b, a], vec![b, a, b]));
                    }
                    for i in 1..*n {
                        for j in i + 2..*n {
                            relations.push((vec![i as u8, j as u8], vec![j as u8, i as u8]));
                        }
                    }
                    Self::new(names, relations)
                } else {
                    // G(1,1,n) is the symmetric group
                    if *n == 1 {
                        return Err(Error::BadPresentation(
                            "the trivial group G(1,1,1) has no braid generators".into(),
                        ));
                    }
                    let names = (1..*n).map(|i| format!("s{i}")).collect();
                    let cox = coxeter_matrix(CoxeterFamily::A, n - 1)?;
                    Self::from_coxeter_matrix(names, &cox)
                }
            }
            ReflectionGroupSpec::Explicit { .. } => Err(Error::BadPresentation(
                "no canonical braid presentation for explicit generators".into(),
            )),
        }
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn relations(&self) -> &[(Word, Word)] {
        &self.relations
    }

    /// A stable fingerprint of the presentation (FNV-1a over a canonical
    /// encoding).
    pub fn fingerprint(&self) -> u64 {
        let mut h = Fnv::new();
        for n in &self.names {
            h.write(n.as_bytes());
            h.write(b";");
        }
        for (a, b) in &self.relations {
            h.write(a);
            h.write(b"=");
            h.write(b);
            h.write(b";");
        }
        h.finish()
    }
}

fn coxeter_generator_names(family: CoxeterFamily, rank: usize) -> Vec<String> {
    let _ = family;
    (1..=rank).map(|i| format!("s{i}")).collect()
}

pub(crate) struct Fnv(u64);

impl Fnv {
    pub(crate) fn new() -> Self {
        Fnv(0xcbf29ce484222325)
    }
    pub(crate) fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 ^= b as u64;
            self.0 = self.0.wrapping_mul(0x100000001b3);
        }
    }
    pub(crate) fn finish(&self) -> u64 {
        self.0
    }
}

/// One monic integer relation polynomial per hyperplane orbit, plus the
/// orbit label of each generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationSet {
    by_orbit: BTreeMap<String, IntPoly>,
    generator_orbits: Vec<String>,
}

impl RelationSet {
    pub fn new(by_orbit: BTreeMap<String, IntPoly>, generator_orbits: Vec<String>) -> Result<Self> {
        for (orbit, poly) in &by_orbit {
            if !poly.is_monic() {
                return Err(Error::BadRelationSet(format!("R[{orbit}] is not monic")));
            }
            if poly.degree().unwrap_or(0) == 0 {
                return Err(Error::BadRelationSet(format!("R[{orbit}] must have degree >= 1")));
            }
            if poly.coeff(0).is_zero() {
                return Err(Error::BadRelationSet(format!(
                    "R[{orbit}] has zero constant term, so the generator would not be a unit"
                )));
            }
        }
        for orbit in &generator_orbits {
            if !by_orbit.contains_key(orbit) {
                return Err(Error::BadRelationSet(format!(
                    "generator assigned to unknown orbit {orbit:?}"
                )));
            }
        }
        Ok(RelationSet { by_orbit, generator_orbits })
    }

    /// All generators in one orbit with a common relation polynomial.
    pub fn uniform(pres: &BraidPresentation, poly: IntPoly) -> Result<Self> {
        let mut by_orbit = BTreeMap::new();
        by_orbit.insert("all".to_string(), poly);
        Self::new(by_orbit, vec!["all".to_string(); pres.generator_count()])
    }

    pub fn orbit_of_generator(&self, g: usize) -> &str {
        &self.generator_orbits[g]
    }

    pub fn poly_for_generator(&self, g: usize) -> &IntPoly {
        &self.by_orbit[&self.generator_orbits[g]]
    }

    pub fn orbits(&self) -> impl Iterator<Item = (&String, &IntPoly)> {
        self.by_orbit.iter()
    }

    pub fn generator_orbits(&self) -> &[String] {
        &self.generator_orbits
    }

    pub fn fingerprint(&self) -> u64 {
        let mut h = Fnv::new();
        for (orbit, poly) in &self.by_orbit {
            h.write(orbit.as_bytes());
            h.write(b":");
            h.write(poly.to_string().as_bytes());
            h.write(b";");
        }
        for o in &self.generator_orbits {
            h.write(o.as_bytes());
            h.write(b",");
        }
        h.finish()
    }
}

// ---------------------------------------------------------------------------
// noncommutative polynomials
// ---------------------------------------------------------------------------

/// A word in the generators and their inverses; letter `+(g+1)` is
/// generator `g`, letter `-(g+1)` its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedWord(pub Vec<i16>);

impl SignedWord {
    pub fn unit() -> Self {
        SignedWord(vec![])
    }
    pub fn gen(g: usize) -> Self {
        SignedWord(vec![(g as i16) + 1])
    }
    pub fn gen_inv(g: usize) -> Self {
        SignedWord(vec![-((g as i16) + 1)])
    }
    pub fn concat(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        SignedWord(v)
    }
}

impl PartialOrd for SignedWord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SignedWord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

/// Formal linear combination of signed words with cyclotomic
/// coefficients, kept in canonical sorted-merged form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NCPoly {
    terms: BTreeMap<SignedWord, CycNum>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly { terms: BTreeMap::new() }
    }

    pub fn unit() -> Self {
        Self::from_terms(vec![(SignedWord::unit(), CycNum::one())])
    }

    pub fn gen(g: usize) -> Self {
        Self::from_terms(vec![(SignedWord::gen(g), CycNum::one())])
    }

    pub fn gen_inv(g: usize) -> Self {
        Self::from_terms(vec![(SignedWord::gen_inv(g), CycNum::one())])
    }

    pub fn from_terms(terms: Vec<(SignedWord, CycNum)>) -> Self {
        let mut map = BTreeMap::new();
        for (w, c) in terms {
            if c.is_zero() {
                continue;
            }
            let entry = map.entry(w).or_insert_with(CycNum::zero);
            *entry = entry.add(&c);
        }
        map.retain(|_, c| !c.is_zero());
        NCPoly { terms: map }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SignedWord, &CycNum)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut map = self.terms.clone();
        for (w, c) in &other.terms {
            let entry = map.entry(w.clone()).or_insert_with(CycNum::zero);
            *entry = entry.add(c);
        }
        map.retain(|_, c| !c.is_zero());
        NCPoly { terms: map }
    }

    pub fn scale(&self, c: &CycNum) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        NCPoly { terms: self.terms.iter().map(|(w, x)| (w.clone(), x.mul(c))).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = Vec::new();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                terms.push((w1.concat(w2), c1.mul(c2)));
            }
        }
        Self::from_terms(terms)
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({})", c)?;
            for &l in &w.0 {
                if l > 0 {
                    write!(f, " g{}", l - 1)?;
                } else {
                    write!(f, " g{}^-1", -l - 1)?;
                }
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
    fn coxeter_presentation_a2() {
        let spec = ReflectionGroupSpec::Coxeter { family: CoxeterFamily::A, rank: 2 };
        let pres = BraidPresentation::for_group_spec(&spec).unwrap();
        assert_eq!(pres.generator_count(), 2);
        assert_eq!(pres.relations(), &[(vec![0, 1, 0], vec![1, 0, 1])]);
    }

    #[test]
    fn imprimitive_presentation_g413() {
        let spec = ReflectionGroupSpec::Imprimitive { m: 4, n: 3 };
        let pres = BraidPresentation::for_group_spec(&spec).unwrap();
        assert_eq!(pres.generator_names(), &["t", "s1", "s2"]);
        assert_eq!(
            pres.relations(),
            &[
                (vec![0, 1, 0, 1], vec![1, 0, 1, 0]),
                (vec![0, 2], vec![2, 0]),
                (vec![1, 2, 1], vec![2, 1, 2]),
            ]
        );
    }

    #[test]
    fn cyclic_presentation_is_free() {
        let spec = ReflectionGroupSpec::Cyclic { order: 5 };
        let pres = BraidPresentation::for_group_spec(&spec).unwrap();
        assert_eq!(pres.generator_count(), 1);
        assert!(pres.relations().is_empty());
    }

    #[test]
    fn relation_set_validation() {
        let pres = BraidPresentation::new(vec!["z".into()], vec![]).unwrap();
        // non-monic rejected
        assert!(RelationSet::uniform(&pres, IntPoly::from_i64(&[1, 2])).is_err());
        // zero constant term rejected
        assert!(RelationSet::uniform(&pres, IntPoly::from_i64(&[0, 1])).is_err());
        // (z - 1)^2 accepted
        assert!(RelationSet::uniform(&pres, IntPoly::from_i64(&[1, -2, 1])).is_ok());
    }

    #[test]
    fn ncpoly_canonical_merge() {
        let x = NCPoly::gen(0);
        let sum = x.add(&x).add(&NCPoly::unit());
        let expected = NCPoly::from_terms(vec![
            (SignedWord::unit(), CycNum::one()),
            (SignedWord::gen(0), CycNum::from_i64(2)),
        ]);
        assert_eq!(sum, expected);
        let cancel = x.add(&x.scale(&CycNum::from_i64(-1)));
        assert_eq!(cancel, NCPoly::zero());
    }

    #[test]
    fn deglex_ordering() {
        let a: Word = vec![1];
        let b: Word = vec![0, 1];
        let c: Word = vec![1, 0];
        assert_eq!(deglex(&a, &b), std::cmp::Ordering::Less);
        assert_eq!(deglex(&b, &c), std::cmp::Ordering::Less);
    }
}
