//! Input file formats (JSON): group specs, presentations with relation
//! sets, rank-one data, restricted-root data, involution models, and
//! polar models. All numeric entries are exact: rationals or cyclotomic
//! numbers in the `c0 + c1*z(N)^1 + ...` string form.

use crate::braid::{BraidPresentation, RelationSet, Word};
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::poly::IntPoly;
use crate::rank_one::{RankOneDatum, RankOneType};
use crate::reflection::{CoxeterFamily, ReflectionGroupSpec};
use crate::symspace::{InvolutionModel, RestrictedRootDatum, RestrictedRootNode};
use crate::tracker::{MPoly, PolarModel, WallSpec};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub fn parse_cyc(s: &str) -> Result<CycNum> {
    s.parse()
}

fn parse_cyc_vec(v: &[String]) -> Result<Vec<CycNum>> {
    v.iter().map(|s| parse_cyc(s)).collect()
}

fn cyc_vec_to_strings(v: &[CycNum]) -> Vec<String> {
    v.iter().map(|c| c.to_string()).collect()
}

// ---------------------------------------------------------------------------
// group specs
// ---------------------------------------------------------------------------

/// Group specification: `{"family": "A", "rank": 2}`,
/// `{"family": "cyclic", "order": 4}`, `{"family": "imprimitive",
/// "m": 4, "n": 2}`, or `{"family": "explicit", "generators": [...]}`
/// with matrices given row-wise as cyclotomic strings.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GroupSpecFile {
    pub family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<Vec<String>>>>,
}

impl GroupSpecFile {
    pub fn to_spec(&self) -> Result<ReflectionGroupSpec> {
        let fam = self.family.trim();
        let need_rank = |o: Option<usize>| {
            o.ok_or_else(|| Error::BadGroupSpec(format!("family {fam} needs a rank")))
        };
        let family = match fam {
            "A" | "a" => Some(CoxeterFamily::A),
            "B" | "b" | "C" | "c" => Some(CoxeterFamily::B),
            "D" | "d" => Some(CoxeterFamily::D),
            "H3" | "h3" => Some(CoxeterFamily::H3),
            "H4" | "h4" => Some(CoxeterFamily::H4),
            "F4" | "f4" => Some(CoxeterFamily::F4),
            _ => None,
        };
        if let Some(family) = family {
            return Ok(ReflectionGroupSpec::Coxeter { family, rank: need_rank(self.rank)? });
        }
        if let Some(rest) = fam.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
            let m: u32 = rest
                .parse()
                .map_err(|_| Error::BadGroupSpec(format!("bad dihedral order in {fam}")))?;
            return Ok(ReflectionGroupSpec::Coxeter { family: CoxeterFamily::I2(m), rank: 2 });
        }
        match fam {
            "cyclic" => {
                let order = self
                    .order
                    .ok_or_else(|| Error::BadGroupSpec("cyclic needs an order".into()))?;
                Ok(ReflectionGroupSpec::Cyclic { order })
            }
            "imprimitive" | "G(m,1,n)" => {
                let m = self
                    .m
                    .ok_or_else(|| Error::BadGroupSpec("imprimitive needs m".into()))?;
                let n = self
                    .n
                    .ok_or_else(|| Error::BadGroupSpec("imprimitive needs n".into()))?;
                Ok(ReflectionGroupSpec::Imprimitive { m, n })
            }
            "explicit" => {
                let gens = self
                    .generators
                    .as_ref()
                    .ok_or_else(|| Error::BadGroupSpec("explicit needs generators".into()))?;
                let mut mats = Vec::new();
                for g in gens {
                    let rows: Result<Vec<Vec<CycNum>>> =
                        g.iter().map(|row| parse_cyc_vec(row)).collect();
                    mats.push(Mat::from_rows(rows?));
                }
                validate_conductor_compatibility(&mats)?;
                Ok(ReflectionGroupSpec::Explicit { generators: mats })
            }
            other => Err(Error::BadGroupSpec(format!("unknown family {other:?}"))),
        }
    }
}

/// Every pair of conductors appearing in one input must merge under the
/// cap; afterwards arithmetic stays inside the compositum field.
fn validate_conductor_compatibility(mats: &[Mat]) -> Result<()> {
    let mut merged = 1u32;
    for m in mats {
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                merged = CycNum::try_merge_conductor(merged, m[(i, j)].conductor())?;
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// presentations and relation sets
// ---------------------------------------------------------------------------

/// Presentation plus relation polynomials:
/// `{"generators": ["t", "s1"], "braid_relations": [[["t","s1","t","s1"],
/// ["s1","t","s1","t"]]], "relations": {"tau": [1, 0, -2, 0, 1]},
/// "generator_orbits": {"t": "tau", "s1": "sigma"}}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct PresentationFile {
    pub generators: Vec<String>,
    #[serde(default)]
    pub braid_relations: Vec<(Vec<String>, Vec<String>)>,
    /// Monic integer coefficient lists (constant term first) per orbit.
    pub relations: BTreeMap<String, Vec<i64>>,
    pub generator_orbits: BTreeMap<String, String>,
}

impl PresentationFile {
    pub fn build(&self) -> Result<(BraidPresentation, RelationSet)> {
        let index: BTreeMap<&str, u8> = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i as u8))
            .collect();
        let to_word = |names: &[String]| -> Result<Word> {
            names
                .iter()
                .map(|n| {
                    index.get(n.as_str()).copied().ok_or_else(|| {
                        Error::BadPresentation(format!("unknown generator {n:?} in a relation"))
                    })
                })
                .collect()
        };
        let mut relations = Vec::new();
        for (lhs, rhs) in &self.braid_relations {
            relations.push((to_word(lhs)?, to_word(rhs)?));
        }
        let pres = BraidPresentation::new(self.generators.clone(), relations)?;
        let by_orbit: BTreeMap<String, IntPoly> = self
            .relations
            .iter()
            .map(|(orbit, coeffs)| (orbit.clone(), IntPoly::from_i64(coeffs)))
            .collect();
        let mut orbits = Vec::new();
        for name in &self.generators {
            let orbit = self.generator_orbits.get(name).ok_or_else(|| {
                Error::BadRelationSet(format!("generator {name:?} has no orbit assignment"))
            })?;
            orbits.push(orbit.clone());
        }
        let rels = RelationSet::new(by_orbit, orbits)?;
        Ok((pres, rels))
    }
}

// ---------------------------------------------------------------------------
// rank-one data
// ---------------------------------------------------------------------------

/// `{"orbit": "tau", "n": 4, "m": 2, "rtilde": [1, -2, 1],
///   "type": "local"}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RankOneFile {
    pub orbit: String,
    pub n: u32,
    pub m: u32,
    pub rtilde: Vec<i64>,
    #[serde(rename = "type")]
    pub kind: RankOneType,
}

impl RankOneFile {
    pub fn build(&self) -> Result<RankOneDatum> {
        RankOneDatum::new(&self.orbit, self.n, self.m, IntPoly::from_i64(&self.rtilde), self.kind)
    }
}

// ---------------------------------------------------------------------------
// restricted-root data
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct WeylFile {
    pub family: String,
    pub rank: usize,
}

/// `{"name": "sl(3,R)", "weyl": {"family": "A", "rank": 2},
///   "nodes": [{"m_alpha": 1, "m_2alpha": 0}, ...]}`
/// Nodes are listed with longer restricted roots first.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RootDatumFile {
    pub name: String,
    pub weyl: WeylFile,
    pub nodes: Vec<NodeFile>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct NodeFile {
    pub m_alpha: u32,
    pub m_2alpha: u32,
}

impl RootDatumFile {
    pub fn build(&self) -> Result<RestrictedRootDatum> {
        let spec = GroupSpecFile {
            family: self.weyl.family.clone(),
            rank: Some(self.weyl.rank),
            order: None,
            m: None,
            n: None,
            generators: None,
        }
        .to_spec()?;
        let ReflectionGroupSpec::Coxeter { family, rank } = spec else {
            return Err(Error::BadRootDatum(
                "the small Weyl group of a symmetric space is a Coxeter group".into(),
            ));
        };
        let nodes = self
            .nodes
            .iter()
            .map(|n| RestrictedRootNode { m_alpha: n.m_alpha, m_2alpha: n.m_2alpha })
            .collect();
        RestrictedRootDatum::new(&self.name, family, rank, nodes)
    }

    pub fn from_datum(datum: &RestrictedRootDatum) -> Self {
        RootDatumFile {
            name: datum.name.clone(),
            weyl: WeylFile { family: datum.family.to_string(), rank: datum.rank },
            nodes: datum
                .nodes
                .iter()
                .map(|n| NodeFile { m_alpha: n.m_alpha, m_2alpha: n.m_2alpha })
                .collect(),
        }
    }
}

// ---------------------------------------------------------------------------
// involution models
// ---------------------------------------------------------------------------

/// `{"name": ..., "dim": k, "structure_constants": [[i, j, [[k, "c"]]]],
///   "theta": [["1", ...]], "cartan_subspace": [["0", ...]]}`
/// Structure constants list `[b_i, b_j]` sparsely for `i < j`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InvolutionModelFile {
    pub name: String,
    pub dim: usize,
    pub structure_constants: Vec<(usize, usize, Vec<(usize, String)>)>,
    pub theta: Vec<Vec<String>>,
    pub cartan_subspace: Vec<Vec<String>>,
}

impl InvolutionModelFile {
    pub fn build(&self) -> Result<InvolutionModel> {
        let dim = self.dim;
        let mut table = vec![vec![vec![CycNum::zero(); dim]; dim]; dim];
        for (i, j, entries) in &self.structure_constants {
            if *i >= dim || *j >= dim {
                return Err(Error::ModelInconsistent("bracket index out of range".into()));
            }
            for (k, c) in entries {
                if *k >= dim {
                    return Err(Error::ModelInconsistent("bracket target out of range".into()));
                }
                let c = parse_cyc(c)?;
                table[*i][*j][*k] = c.clone();
                table[*j][*i][*k] = c.neg();
            }
        }
        let theta_rows: Result<Vec<Vec<CycNum>>> =
            self.theta.iter().map(|r| parse_cyc_vec(r)).collect();
        let theta = Mat::from_rows(theta_rows?);
        let cartan: Result<Vec<Vec<CycNum>>> =
            self.cartan_subspace.iter().map(|v| parse_cyc_vec(v)).collect();
        InvolutionModel::from_parts(&self.name, table, theta, cartan?)
    }

    pub fn from_model(model: &InvolutionModel) -> Self {
        let dim = model.dim();
        let table = model.bracket_table();
        let mut structure_constants = Vec::new();
        for i in 0..dim {
            for j in i + 1..dim {
                let entries: Vec<(usize, String)> = table[i][j]
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k, c.to_string()))
                    .collect();
                if !entries.is_empty() {
                    structure_constants.push((i, j, entries));
                }
            }
        }
        let theta = (0..dim)
            .map(|i| cyc_vec_to_strings(model.theta().row(i)))
            .collect();
        let cartan_subspace =
            model.cartan().iter().map(|v| cyc_vec_to_strings(v)).collect();
        InvolutionModelFile {
            name: model_name(model),
            dim,
            structure_constants,
            theta,
            cartan_subspace,
        }
    }
}

fn model_name(model: &InvolutionModel) -> String {
    model.name.clone()
}

// ---------------------------------------------------------------------------
// polar models
// ---------------------------------------------------------------------------

/// Sparse monomial: coefficient and one exponent per ambient variable.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MonomialFile {
    pub coeff: String,
    pub exps: Vec<u32>,
}

/// `{"name": ..., "d": 3, "invariants": [[{coeff, exps}]],
///   "cartan_basis": [...], "weyl": {...}, "l": [...],
///   "basepoint_v0": [...], "walls": [{"orbit": 0, "v1": [...]}]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolarModelFile {
    pub name: String,
    pub d: usize,
    pub invariants: Vec<Vec<MonomialFile>>,
    pub cartan_basis: Vec<Vec<String>>,
    pub weyl: GroupSpecFile,
    pub l: Vec<String>,
    pub basepoint_v0: Vec<String>,
    pub walls: Vec<WallFile>,
    #[serde(default = "default_order_cap")]
    pub order_cap: usize,
}

fn default_order_cap() -> usize {
    20_000
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WallFile {
    pub orbit: usize,
    pub v1: Vec<String>,
}

impl PolarModelFile {
    pub fn build(&self) -> Result<PolarModel> {
        let invariants: Result<Vec<MPoly>> = self
            .invariants
            .iter()
            .map(|terms| {
                let parsed: Result<Vec<(Vec<u32>, CycNum)>> = terms
                    .iter()
                    .map(|m| {
                        if m.exps.len() != self.d {
                            return Err(Error::BadPolarModel(format!(
                                "monomial exponent vector of length {} for ambient dimension {}",
                                m.exps.len(),
                                self.d
                            )));
                        }
                        Ok((m.exps.clone(), parse_cyc(&m.coeff)?))
                    })
                    .collect();
                Ok(MPoly::from_terms(self.d, parsed?))
            })
            .collect();
        let spec = self.weyl.to_spec()?;
        let group = crate::reflection::ReflectionGroup::enumerate(&spec, self.order_cap)?;
        let cartan_basis: Result<Vec<Vec<CycNum>>> =
            self.cartan_basis.iter().map(|v| parse_cyc_vec(v)).collect();
        let walls: Result<Vec<WallSpec>> = self
            .walls
            .iter()
            .map(|w| Ok(WallSpec { orbit: w.orbit, v1: parse_cyc_vec(&w.v1)? }))
            .collect();
        PolarModel::new(
            &self.name,
            self.d,
            invariants?,
            cartan_basis?,
            group,
            parse_cyc_vec(&self.l)?,
            parse_cyc_vec(&self.basepoint_v0)?,
            walls?,
        )
    }

    pub fn from_model(model: &PolarModel) -> Result<Self> {
        let spec = match model.group.spec() {
            ReflectionGroupSpec::Coxeter { family, rank } => GroupSpecFile {
                family: family.to_string(),
                rank: Some(*rank),
                order: None,
                m: None,
                n: None,
                generators: None,
            },
            ReflectionGroupSpec::Cyclic { order } => GroupSpecFile {
                family: "cyclic".into(),
                rank: None,
                order: Some(*order),
                m: None,
                n: None,
                generators: None,
            },
            ReflectionGroupSpec::Imprimitive { m, n } => GroupSpecFile {
                family: "imprimitive".into(),
                rank: None,
                order: None,
                m: Some(*m),
                n: Some(*n),
                generators: None,
            },
            ReflectionGroupSpec::Explicit { generators } => GroupSpecFile {
                family: "explicit".into(),
                rank: None,
                order: None,
                m: None,
                n: None,
                generators: Some(
                    generators
                        .iter()
                        .map(|g| {
                            (0..g.nrows()).map(|i| cyc_vec_to_strings(g.row(i))).collect()
                        })
                        .collect(),
                ),
            },
        };
        Ok(PolarModelFile {
            name: model.name.clone(),
            d: model.ambient_dim,
            invariants: model
                .invariants
                .iter()
                .map(|f| {
                    f.terms()
                        .map(|(e, c)| MonomialFile { coeff: c.to_string(), exps: e.clone() })
                        .collect()
                })
                .collect(),
            cartan_basis: model.cartan_basis.iter().map(|v| cyc_vec_to_strings(v)).collect(),
            weyl: spec,
            l: cyc_vec_to_strings(&model.functional),
            basepoint_v0: cyc_vec_to_strings(&model.basepoint),
            walls: model
                .walls
                .iter()
                .map(|w| WallFile { orbit: w.orbit, v1: cyc_vec_to_strings(&w.v1) })
                .collect(),
            order_cap: 20_000,
        })
    }
}

// ---------------------------------------------------------------------------
// file loading
// ---------------------------------------------------------------------------

pub fn read_json<T: serde::de::DeserializeOwned>(path: &str) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io { path: path.to_string(), source: e })?;
    serde_json::from_str(&text)
        .map_err(|e| Error::Parse { path: path.to_string(), msg: e.to_string() })
}

pub fn parse_json<T: serde::de::DeserializeOwned>(text: &str, origin: &str) -> Result<T> {
    serde_json::from_str(text)
        .map_err(|e| Error::Parse { path: origin.to_string(), msg: e.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_spec_parsing() {
        let spec: GroupSpecFile =
            serde_json::from_str(r#"{"family": "A", "rank": 2}"#).unwrap();
        assert_eq!(
            spec.to_spec().unwrap(),
            ReflectionGroupSpec::Coxeter { family: CoxeterFamily::A, rank: 2 }
        );
        let spec: GroupSpecFile =
            serde_json::from_str(r#"{"family": "cyclic", "order": 5}"#).unwrap();
        assert_eq!(spec.to_spec().unwrap(), ReflectionGroupSpec::Cyclic { order: 5 });
        let spec: GroupSpecFile =
            serde_json::from_str(r#"{"family": "imprimitive", "m": 4, "n": 2}"#).unwrap();
        assert_eq!(spec.to_spec().unwrap(), ReflectionGroupSpec::Imprimitive { m: 4, n: 2 });
        let spec: GroupSpecFile = serde_json::from_str(r#"{"family": "I2(7)"}"#).unwrap();
        assert_eq!(
            spec.to_spec().unwrap(),
            ReflectionGroupSpec::Coxeter { family: CoxeterFamily::I2(7), rank: 2 }
        );
        let spec: GroupSpecFile = serde_json::from_str(r#"{"family": "nope"}"#).unwrap();
        assert!(spec.to_spec().is_err());
    }

    #[test]
    fn explicit_generators_with_cyclotomic_entries() {
        let spec: GroupSpecFile = serde_json::from_str(
            r#"{"family": "explicit", "generators": [[["z(4)", "0"], ["0", "1"]]]}"#,
        )
        .unwrap();
        let parsed = spec.to_spec().unwrap();
        let ReflectionGroupSpec::Explicit { generators } = parsed else {
            panic!("expected explicit spec");
        };
        assert_eq!(generators[0][(0, 0)], CycNum::root_of_unity(4).unwrap());
    }

    #[test]
    fn presentation_file_roundtrip() {
        let text = r#"{
            "generators": ["t", "s1"],
            "braid_relations": [[["t","s1","t","s1"], ["s1","t","s1","t"]]],
            "relations": {"tau": [1, 0, -2, 0, 1], "sigma": [-1, 0, 1]},
            "generator_orbits": {"t": "tau", "s1": "sigma"}
        }"#;
        let file: PresentationFile = serde_json::from_str(text).unwrap();
        let (pres, rels) = file.build().unwrap();
        assert_eq!(pres.generator_count(), 2);
        assert_eq!(rels.poly_for_generator(0), &IntPoly::from_i64(&[1, 0, -2, 0, 1]));
        assert_eq!(rels.poly_for_generator(1), &IntPoly::from_i64(&[-1, 0, 1]));
    }

    #[test]
    fn involution_model_file_roundtrip() {
        for bundled in crate::symspace::bundled_symmetric_spaces().unwrap() {
            let file = InvolutionModelFile::from_model(&bundled.model);
            let text = serde_json::to_string(&file).unwrap();
            let parsed: InvolutionModelFile = serde_json::from_str(&text).unwrap();
            let rebuilt = parsed.build().unwrap();
            assert_eq!(rebuilt.dim(), bundled.model.dim());
            assert_eq!(rebuilt.theta(), bundled.model.theta());
            assert_eq!(
                rebuilt.s_values_oracle().unwrap().s_values,
                bundled.datum.s_values(),
                "{}",
                bundled.datum.name
            );
        }
    }

    #[test]
    fn polar_model_file_roundtrip() {
        let model = crate::tracker::quadric_model(3).unwrap();
        let file = PolarModelFile::from_model(&model).unwrap();
        let text = serde_json::to_string_pretty(&file).unwrap();
        let parsed: PolarModelFile = serde_json::from_str(&text).unwrap();
        let rebuilt = parsed.build().unwrap();
        assert_eq!(rebuilt.ambient_dim, 3);
        assert_eq!(rebuilt.group.order(), 2);
    }

    #[test]
    fn conductor_cap_checked_at_parse_time() {
        let spec: GroupSpecFile = serde_json::from_str(
            r#"{"family": "explicit", "generators": [[["z(113)"]], [["z(8)"]]]}"#,
        )
        .unwrap();
        assert!(matches!(spec.to_spec(), Err(Error::ConductorLimit(..))));
    }
}
