//! The bundled catalog: machine-checkable worked examples pairing a group
//! and relation set with the expected algebra, plus the symmetric-space
//! instances. Each entry is verified by rebuilding the quotient algebra
//! and comparing dimension, per-orbit minimal polynomials and structural
//! flags; expected values are stored verbatim and never auto-corrected.

use crate::algebra::{build_quotient_algebra, format_min_poly};
use crate::braid::{BraidPresentation, RelationSet};
use crate::error::{Error, Result};
use crate::io::{GroupSpecFile, PresentationFile};
use crate::poly::IntPoly;
use crate::rank_one::roots_of_unity_check;
use crate::reflection::{find_reflections, CoxeterFamily, ReflectionGroup, ReflectionGroupSpec};
use crate::symspace::{bundled_symmetric_spaces, classify_hybrid, HybridClass, RestrictedRootDatum};
use crate::tracker::{critical_points, PolarModel, TrackerParams};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub id: String,
    pub description: String,
    pub tags: Vec<String>,
    /// Which classical family of polar representations the entry encodes.
    pub source: String,
    pub group: Option<ReflectionGroupSpec>,
    pub presentation: BraidPresentation,
    pub relations: RelationSet,
    pub expected_dim: usize,
    /// Expected minimal polynomial per orbit label, verbatim.
    pub expected_min_polys: BTreeMap<String, IntPoly>,
    pub expected_semisimple: Option<bool>,
    pub expected_hybrid: Option<HybridClass>,
    /// True when the Weyl group is neither a Coxeter group nor cyclic,
    /// so the quotient is the model of the endomorphism algebra rather
    /// than a proven equality.
    pub model_algebra: bool,
    /// Name of a bundled tracker model exercised when tracking is on.
    pub polar_model: Option<String>,
    pub symspace: Option<RestrictedRootDatum>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EntryOutcome {
    pub id: String,
    pub description: String,
    pub model_algebra: bool,
    pub checks: Vec<CheckResult>,
    pub pass: bool,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogSummary {
    pub entries: Vec<EntryOutcome>,
    pub total: usize,
    pub passed: usize,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    pub with_tracker: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { with_tracker: false }
    }
}

fn check(name: &str, expected: impl ToString, computed: impl ToString, pass: bool) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        expected: expected.to_string(),
        computed: computed.to_string(),
        pass,
    }
}

/// Execute one entry: enumerate the group, build the algebra, compare
/// all expected values. Build failures become failed checks rather than
/// panics.
pub fn run_entry(entry: &CatalogEntry, opts: &RunOptions) -> EntryOutcome {
    let start = std::time::Instant::now();
    let mut checks = Vec::new();
    let mut group: Option<ReflectionGroup> = None;

    if let Some(spec) = &entry.group {
        match ReflectionGroup::enumerate(spec, entry.expected_dim.max(4) * 2) {
            Ok(g) => {
                checks.push(check(
                    "group order equals expected dimension",
                    entry.expected_dim,
                    g.order(),
                    g.order() == entry.expected_dim,
                ));
                let table = find_reflections(&g);
                if !table.reflections.is_empty() {
                    let mut expected_degs: Vec<usize> = entry
                        .expected_min_polys
                        .values()
                        .map(|p| p.degree().unwrap_or(0))
                        .collect();
                    expected_degs.sort_unstable();
                    let mut orbit_orders: Vec<usize> =
                        table.orbits.iter().map(|o| o.order as usize).collect();
                    orbit_orders.sort_unstable();
                    checks.push(check(
                        "relation degrees equal primitive reflection orders",
                        format!("{expected_degs:?}"),
                        format!("{orbit_orders:?}"),
                        expected_degs == orbit_orders,
                    ));
                }
                group = Some(g);
            }
            Err(e) => checks.push(check("group enumeration", "success", e, false)),
        }
    }

    match build_quotient_algebra(&entry.presentation, &entry.relations, entry.expected_dim) {
        Ok(alg) => {
            checks.push(check(
                "algebra dimension equals |W|",
                entry.expected_dim,
                alg.dim(),
                alg.dim() == entry.expected_dim,
            ));
            match alg.generator_min_polys() {
                Ok(mps) => {
                    for (g, mp) in mps.iter().enumerate() {
                        let orbit = entry.relations.orbit_of_generator(g).to_string();
                        let expected = &entry.expected_min_polys[&orbit];
                        let computed = mp.to_int();
                        let pass = computed.as_ref() == Some(expected);
                        checks.push(check(
                            &format!(
                                "min poly of {} equals R[{orbit}]",
                                entry.presentation.generator_names()[g]
                            ),
                            expected,
                            format_min_poly(mp),
                            pass,
                        ));
                    }
                }
                Err(e) => checks.push(check("generator minimal polynomials", "computed", e, false)),
            }
            if let Some(expected_ss) = entry.expected_semisimple {
                let analysis = alg.trace_form_analysis();
                checks.push(check(
                    "trace-form semisimplicity",
                    expected_ss,
                    format!("{} (radical dim {})", analysis.semisimple, analysis.radical_dim),
                    analysis.semisimple == expected_ss,
                ));
            }
        }
        Err(e) => checks.push(check("algebra build", "success", e, false)),
    }

    for (orbit, poly) in entry.expected_min_polys.iter() {
        match roots_of_unity_check(poly) {
            Ok(r) => checks.push(check(
                &format!("R[{orbit}] factors into cyclotomics"),
                "true",
                format!("{} (orders {:?})", r.all_roots_of_unity, r.orders),
                r.all_roots_of_unity,
            )),
            Err(e) => checks.push(check("roots-of-unity check", "runs", e, false)),
        }
    }

    if let (Some(datum), Some(expected_class)) = (&entry.symspace, entry.expected_hybrid) {
        let class = classify_hybrid(datum);
        checks.push(check(
            "hybrid classification",
            format!("{expected_class:?}"),
            format!("{class:?}"),
            class == expected_class,
        ));
    }

    if opts.with_tracker {
        if let Some(model_name) = &entry.polar_model {
            match tracker_model_by_name(model_name) {
                Ok(model) => {
                    let params = TrackerParams::default();
                    let bp: Vec<num_complex::Complex64> =
                        model.basepoint.iter().map(|c| c.embed()).collect();
                    let lambda = model.eval_restricted(&bp);
                    match critical_points(&model, &lambda, &bp, &params) {
                        Ok(z) => checks.push(check(
                            "critical point count equals |W|",
                            model.group.order(),
                            z.len(),
                            z.len() == model.group.order(),
                        )),
                        Err(e) => checks.push(check("critical points", "solved", e, false)),
                    }
                }
                Err(e) => checks.push(check("tracker model", "loads", e, false)),
            }
        }
    }

    let _ = group;
    let pass = checks.iter().all(|c| c.pass);
    EntryOutcome {
        id: entry.id.clone(),
        description: entry.description.clone(),
        model_algebra: entry.model_algebra,
        checks,
        pass,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

/// Run every entry whose id, tags or description contains the filter.
pub fn run_all(filter: Option<&str>, opts: &RunOptions) -> Result<CatalogSummary> {
    let start = std::time::Instant::now();
    let entries = bundled_entries()?;
    let selected: Vec<&CatalogEntry> = entries
        .iter()
        .filter(|e| match filter {
            None => true,
            Some(f) => {
                e.id.contains(f)
                    || e.description.contains(f)
                    || e.tags.iter().any(|t| t.contains(f))
            }
        })
        .collect();
    let outcomes: Vec<EntryOutcome> = selected.iter().map(|e| run_entry(e, opts)).collect();
    let passed = outcomes.iter().filter(|o| o.pass).count();
    Ok(CatalogSummary {
        total: outcomes.len(),
        passed,
        entries: outcomes,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Bundled tracker models, addressed as `name:parameter`.
pub fn tracker_model_by_name(name: &str) -> Result<PolarModel> {
    let (base, param) = match name.split_once(':') {
        Some((b, p)) => (b, Some(p)),
        None => (name, None),
    };
    let n: usize = param.map(|p| p.parse()).transpose().map_err(|_| {
        Error::BadPolarModel(format!("bad model parameter in {name:?}"))
    })?.unwrap_or(3);
    match base {
        "quadric" => crate::tracker::quadric_model(n),
        "normal-crossings" => crate::tracker::normal_crossings_model(n),
        "symmetric-matrices" => {
            if n != 3 {
                return Err(Error::BadPolarModel(
                    "the symmetric-matrices model is bundled at n = 3".into(),
                ));
            }
            crate::tracker::symmetric_matrices_model()
        }
        other => Err(Error::BadPolarModel(format!("unknown tracker model {other:?}"))),
    }
}

// ---------------------------------------------------------------------------
// the bundled entries
// ---------------------------------------------------------------------------

fn free_presentation(gen: &str) -> Result<BraidPresentation> {
    BraidPresentation::new(vec![gen.to_string()], vec![])
}

fn single_orbit(pres: &BraidPresentation, orbit: &str, poly: IntPoly) -> Result<RelationSet> {
    let mut by_orbit = BTreeMap::new();
    by_orbit.insert(orbit.to_string(), poly);
    RelationSet::new(by_orbit, vec![orbit.to_string(); pres.generator_count()])
}

/// `(z-1)^a (z+1)^b`.
fn plus_minus_poly(a: usize, b: usize) -> IntPoly {
    let mut p = IntPoly::one();
    for _ in 0..a {
        p = p.mul(&IntPoly::from_i64(&[-1, 1]));
    }
    for _ in 0..b {
        p = p.mul(&IntPoly::from_i64(&[1, 1]));
    }
    p
}

pub fn bundled_entries() -> Result<Vec<CatalogEntry>> {
    let mut entries = Vec::new();

    // quadrics: SO_n on C^n; W = Z/2; the relation depends on the parity
    for n in 2..=4usize {
        let pres = free_presentation("z")?;
        let poly =
            if n % 2 == 0 { plus_minus_poly(2, 0) } else { IntPoly::from_i64(&[-1, 0, 1]) };
        let rels = single_orbit(&pres, "refl", poly.clone())?;
        entries.push(CatalogEntry {
            id: format!("quadric-n{n}"),
            description: format!("SO_{n} on C^{n}, the standard quadric"),
            tags: vec!["quadric".into()],
            source: "quadrics".into(),
            group: Some(ReflectionGroupSpec::Cyclic { order: 2 }),
            presentation: pres,
            relations: rels,
            expected_dim: 2,
            expected_min_polys: BTreeMap::from([("refl".to_string(), poly)]),
            expected_semisimple: Some(n % 2 == 1),
            expected_hybrid: None,
            model_algebra: false,
            polar_model: if n <= 3 { Some(format!("quadric:{n}")) } else { None },
            symspace: None,
        });
    }

    // normal crossings and the determinant: W = Z/n, relation (z-1)^n
    for (family, source, with_model) in
        [("normal-crossings", "torus scaling with product invariant", true),
         ("determinant", "SL_n on n x n matrices by left multiplication", false)]
    {
        for n in 1..=4usize {
            let pres = free_presentation("z")?;
            let poly = plus_minus_poly(n, 0);
            let rels = single_orbit(&pres, "full", poly.clone())?;
            entries.push(CatalogEntry {
                id: format!("{family}-n{n}"),
                description: match family {
                    "normal-crossings" => {
                        format!("torus on C^{n} with invariant x_1 ... x_{n}")
                    }
                    _ => format!("SL_{n} on Mat_{n} with the determinant invariant"),
                },
                tags: vec![family.to_string()],
                source: source.into(),
                group: Some(ReflectionGroupSpec::Cyclic { order: n as u32 }),
                presentation: pres,
                relations: rels,
                expected_dim: n,
                expected_min_polys: BTreeMap::from([("full".to_string(), poly)]),
                expected_semisimple: Some(n == 1),
                expected_hybrid: None,
                model_algebra: false,
                polar_model: if with_model && n == 3 {
                    Some("normal-crossings:3".into())
                } else {
                    None
                },
                symspace: None,
            });
        }
    }

    // symmetric matrices under g x g^t: W = Z/n, (z-1)^ceil(n/2) (z+1)^floor(n/2)
    for n in 1..=4usize {
        let pres = free_presentation("z")?;
        let poly = plus_minus_poly(n.div_ceil(2), n / 2);
        let rels = single_orbit(&pres, "full", poly.clone())?;
        entries.push(CatalogEntry {
            id: format!("symmetric-det-n{n}"),
            description: format!(
                "SL_{n} on symmetric matrices by congruence, determinant invariant"
            ),
            tags: vec!["symmetric-det".into()],
            source: "symmetric matrices under congruence".into(),
            group: Some(ReflectionGroupSpec::Cyclic { order: n as u32 }),
            presentation: pres,
            relations: rels,
            expected_dim: n,
            expected_min_polys: BTreeMap::from([("full".to_string(), poly)]),
            expected_semisimple: Some(n <= 2),
            expected_hybrid: None,
            model_algebra: false,
            polar_model: None,
            symspace: None,
        });
    }

    // SO_n conjugating symmetric matrices: W = S_n, all relations (z-1)^2
    for n in 2..=4usize {
        let spec = ReflectionGroupSpec::Coxeter { family: CoxeterFamily::A, rank: n - 1 };
        let pres = BraidPresentation::for_group_spec(&spec)?;
        let poly = plus_minus_poly(2, 0);
        let rels = single_orbit(&pres, "refl", poly.clone())?;
        entries.push(CatalogEntry {
            id: format!("sym-conj-n{n}"),
            description: format!(
                "SO_{n} conjugating symmetric {n} x {n} matrices (Hecke at q = -1)"
            ),
            tags: vec!["sym-conj".into(), "hecke".into()],
            source: "symmetric matrices under conjugation".into(),
            group: Some(spec),
            presentation: pres,
            relations: rels,
            expected_dim: (1..=n).product(),
            expected_min_polys: BTreeMap::from([("refl".to_string(), poly)]),
            expected_semisimple: Some(false),
            expected_hybrid: None,
            model_algebra: false,
            polar_model: if n == 3 { Some("symmetric-matrices:3".into()) } else { None },
            symspace: None,
        });
    }

    // maps from an orthogonal to a symplectic space: W = G(4,1,n),
    // relations (s^2 - 1) and (t^2 - 1)^2
    for n in 1..=3usize {
        let spec = ReflectionGroupSpec::Imprimitive { m: 4, n };
        let pres = BraidPresentation::for_group_spec(&spec)?;
        let tau_poly = IntPoly::from_i64(&[1, 0, -2, 0, 1]);
        let sigma_poly = IntPoly::from_i64(&[-1, 0, 1]);
        let mut by_orbit = BTreeMap::from([("tau".to_string(), tau_poly.clone())]);
        let mut orbits = vec!["tau".to_string()];
        if n >= 2 {
            by_orbit.insert("sigma".to_string(), sigma_poly.clone());
            orbits.extend(std::iter::repeat("sigma".to_string()).take(n - 1));
        }
        let rels = RelationSet::new(by_orbit.clone(), orbits)?;
        let mut expected_min_polys = BTreeMap::from([("tau".to_string(), tau_poly)]);
        if n >= 2 {
            expected_min_polys.insert("sigma".to_string(), sigma_poly);
        }
        entries.push(CatalogEntry {
            id: format!("orth-symp-n{n}"),
            description: format!(
                "Sp_{} x SO_{} on Hom spaces; W = G(4,1,{n})",
                2 * n,
                2 * n + 1
            ),
            tags: vec!["orth-symp".into()],
            source: "orthogonal-to-symplectic maps".into(),
            group: Some(spec),
            presentation: pres,
            relations: rels,
            expected_dim: 4usize.pow(n as u32) * (1..=n).product::<usize>(),
            expected_min_polys,
            expected_semisimple: if n == 1 { Some(false) } else { None },
            expected_hybrid: None,
            model_algebra: n >= 2,
            polar_model: None,
            symspace: None,
        });
    }

    // the evaluation map: W = Z/3, relation (z-1)^3
    {
        let pres = free_presentation("z")?;
        let poly = plus_minus_poly(3, 0);
        let rels = single_orbit(&pres, "full", poly.clone())?;
        entries.push(CatalogEntry {
            id: "evaluation-map".into(),
            description: "GL(U) on bivectors plus two vectors; evaluation invariant".into(),
            tags: vec!["evaluation-map".into()],
            source: "an evaluation map".into(),
            group: Some(ReflectionGroupSpec::Cyclic { order: 3 }),
            presentation: pres,
            relations: rels,
            expected_dim: 3,
            expected_min_polys: BTreeMap::from([("full".to_string(), poly)]),
            expected_semisimple: Some(false),
            expected_hybrid: None,
            model_algebra: false,
            polar_model: None,
            symspace: None,
        });
    }

    // symmetric spaces
    for bundled in bundled_symmetric_spaces()? {
        let datum = bundled.datum;
        let spec =
            ReflectionGroupSpec::Coxeter { family: datum.family, rank: datum.rank };
        let pres = BraidPresentation::for_group_spec(&spec)?;
        let rels = datum.relation_set(&pres)?;
        let expected_min_polys: BTreeMap<String, IntPoly> =
            rels.orbits().map(|(k, v)| (k.clone(), v.clone())).collect();
        let expected_semisimple = match classify_hybrid(&datum) {
            HybridClass::GroupAlgebra => Some(true),
            // all-odd cases are Hecke algebras at q = -1, never semisimple
            // in rank >= 1 (the quadratic factor 1 + q vanishes)
            HybridClass::HeckeMinusOne => Some(false),
            HybridClass::Hybrid => None,
        };
        let id = format!(
            "symspace-{}",
            datum
                .name
                .replace(['(', ')', ',', ' '], "")
                .replace('+', "-")
        );
        entries.push(CatalogEntry {
            id,
            description: format!("symmetric space of {}", datum.name),
            tags: vec!["symspace".into()],
            source: format!("symmetric space {}", datum.name),
            group: Some(spec),
            presentation: pres,
            relations: rels,
            expected_dim: datum.weyl_order().expect("Coxeter order known"),
            expected_min_polys,
            expected_semisimple,
            expected_hybrid: Some(classify_hybrid(&datum)),
            model_algebra: false,
            polar_model: None,
            symspace: Some(datum),
        });
    }

    Ok(entries)
}

// ---------------------------------------------------------------------------
// data-file form
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CatalogFile {
    pub entries: Vec<CatalogEntryFile>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CatalogEntryFile {
    pub id: String,
    pub description: String,
    pub tags: Vec<String>,
    pub source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpecFile>,
    pub presentation: PresentationFile,
    pub expected_dim: usize,
    pub expected_min_polys: BTreeMap<String, Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_semisimple: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_hybrid: Option<HybridClass>,
    pub model_algebra: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polar_model: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symspace: Option<crate::io::RootDatumFile>,
}

impl CatalogEntry {
    pub fn to_file(&self) -> CatalogEntryFile {
        let group = self.group.as_ref().map(spec_to_file);
        let presentation = PresentationFile {
            generators: self.presentation.generator_names().to_vec(),
            braid_relations: self
                .presentation
                .relations()
                .iter()
                .map(|(a, b)| {
                    let names = self.presentation.generator_names();
                    (
                        a.iter().map(|&g| names[g as usize].clone()).collect(),
                        b.iter().map(|&g| names[g as usize].clone()).collect(),
                    )
                })
                .collect(),
            relations: self
                .relations
                .orbits()
                .map(|(k, p)| (k.clone(), int_poly_coeffs(p)))
                .collect(),
            generator_orbits: self
                .presentation
                .generator_names()
                .iter()
                .enumerate()
                .map(|(g, n)| (n.clone(), self.relations.orbit_of_generator(g).to_string()))
                .collect(),
        };
        CatalogEntryFile {
            id: self.id.clone(),
            description: self.description.clone(),
            tags: self.tags.clone(),
            source: self.source.clone(),
            group,
            presentation,
            expected_dim: self.expected_dim,
            expected_min_polys: self
                .expected_min_polys
                .iter()
                .map(|(k, p)| (k.clone(), int_poly_coeffs(p)))
                .collect(),
            expected_semisimple: self.expected_semisimple,
            expected_hybrid: self.expected_hybrid,
            model_algebra: self.model_algebra,
            polar_model: self.polar_model.clone(),
            symspace: self.symspace.as_ref().map(crate::io::RootDatumFile::from_datum),
        }
    }
}

impl CatalogEntryFile {
    pub fn build(&self) -> Result<CatalogEntry> {
        let (presentation, relations) = self.presentation.build()?;
        Ok(CatalogEntry {
            id: self.id.clone(),
            description: self.description.clone(),
            tags: self.tags.clone(),
            source: self.source.clone(),
            group: self.group.as_ref().map(|g| g.to_spec()).transpose()?,
            presentation,
            relations,
            expected_dim: self.expected_dim,
            expected_min_polys: self
                .expected_min_polys
                .iter()
                .map(|(k, v)| (k.clone(), IntPoly::from_i64(v)))
                .collect(),
            expected_semisimple: self.expected_semisimple,
            expected_hybrid: self.expected_hybrid,
            model_algebra: self.model_algebra,
            polar_model: self.polar_model.clone(),
            symspace: self.symspace.as_ref().map(|d| d.build()).transpose()?,
        })
    }
}

fn int_poly_coeffs(p: &IntPoly) -> Vec<i64> {
    p.coeffs()
        .iter()
        .map(|c| {
            use num_traits::ToPrimitive;
            c.to_i64().expect("catalog coefficients are small")
        })
        .collect()
}

fn spec_to_file(spec: &ReflectionGroupSpec) -> GroupSpecFile {
    match spec {
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
        ReflectionGroupSpec::Explicit { .. } => GroupSpecFile {
            family: "explicit".into(),
            rank: None,
            order: None,
            m: None,
            n: None,
            generators: Some(vec![]),
        },
    }
}

/// The catalog as shipped in the repository's data directory.
pub fn shipped_catalog_file() -> Result<CatalogFile> {
    crate::io::parse_json(include_str!("../data/catalog.json"), "data/catalog.json")
}
