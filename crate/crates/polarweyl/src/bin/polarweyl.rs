//! Command-line front end: build groups and quotient algebras from spec
//! files, run rank-one and symmetric-space recipes, track monodromy
//! loops, and execute the bundled catalog.
//!
//! Exit codes: 0 all checks pass, 1 mathematical mismatch, 2 input error,
//! 3 resource cap exceeded.

use clap::{Args, Parser, Subcommand};
use polarweyl::algebra::{build_quotient_algebra, format_min_poly};
use polarweyl::catalog::{run_all, RunOptions};
use polarweyl::cyclotomic::{set_conductor_limit, CycNum};
use polarweyl::error::Error;
use polarweyl::io;
use polarweyl::rank_one::{carousel_matrix, inflate_relation, roots_of_unity_check};
use polarweyl::reflection::{find_reflections, invariant_degrees, rank_of_action, ReflectionGroup};
use polarweyl::report::{hash_bytes, Report};
use polarweyl::symspace::{
    build_symmetric_space_algebra, classify_hybrid, rho_twist, verify_twist,
};
use polarweyl::tracker::{carousel_report, track_loop, TrackerParams};
use serde_json::json;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "polarweyl",
    version,
    about = "Weyl groups of polar representations: exact braid-quotient algebras and numeric monodromy"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON report to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
    /// Conductor cap for cyclotomic arithmetic.
    #[arg(long, global = true, default_value_t = 120)]
    conductor_limit: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate a reflection group: order, reflections, invariant degrees.
    Group {
        /// Group spec file (JSON).
        specfile: String,
        #[arg(long, default_value_t = 20_000)]
        order_cap: usize,
        /// Molien series precision (defaults to an automatic bound).
        #[arg(long)]
        precision: Option<usize>,
    },
    /// Build the quotient algebra of a presentation + relation set file.
    Algebra {
        specfile: String,
        #[arg(long, default_value_t = 4096)]
        dim_cap: usize,
        /// Include generator minimal polynomials in the report.
        #[arg(long)]
        min_polys: bool,
        /// Include the trace-form semisimplicity analysis.
        #[arg(long)]
        semisimple: bool,
    },
    /// Inflate a rank-one datum and check the carousel matrix.
    Rankone { datumfile: String },
    /// Run the symmetric-space recipe on a restricted-root datum.
    Symspace {
        datumfile: String,
        #[arg(long, default_value_t = 4096)]
        dim_cap: usize,
        /// Optional involution model file; its oracle is compared with
        /// the datum's multiplicities.
        #[arg(long)]
        model: Option<String>,
    },
    /// Track loops of regular values on a polar model.
    Track {
        modelfile: String,
        /// Loop to track: "trivial", "full-turn", or "wall:<index>".
        #[arg(long, default_value = "full-turn")]
        r#loop: String,
        /// Wall approach scale as an exact rational.
        #[arg(long, default_value = "1/10")]
        epsilon: String,
        #[command(flatten)]
        tolerances: ToleranceArgs,
    },
    /// Run the bundled catalog of worked examples.
    Catalog {
        /// Only entries whose id, tags or description contain this string.
        #[arg(long)]
        filter: Option<String>,
        /// Also run the attached tracker models.
        #[arg(long)]
        with_tracker: bool,
    },
}

#[derive(Args)]
struct ToleranceArgs {
    #[arg(long, default_value_t = 1e-12)]
    newton_tol: f64,
    #[arg(long, default_value_t = 1e-10)]
    accept_residual: f64,
    #[arg(long, default_value_t = 1e-6)]
    match_radius: f64,
    #[arg(long, default_value_t = 1e-8)]
    separation: f64,
    #[arg(long, default_value_t = 5.0)]
    cluster_gap: f64,
    #[arg(long, default_value_t = 0.1)]
    initial_step: f64,
    #[arg(long, default_value_t = 100_000)]
    max_steps: usize,
    #[arg(long, default_value_t = 1e-8)]
    min_det_jacobian: f64,
}

impl ToleranceArgs {
    fn to_params(&self) -> TrackerParams {
        TrackerParams {
            newton_tol: self.newton_tol,
            accept_residual: self.accept_residual,
            match_radius: self.match_radius,
            separation: self.separation,
            cluster_gap: self.cluster_gap,
            initial_step: self.initial_step,
            max_steps: self.max_steps,
            min_det_jacobian: self.min_det_jacobian,
        }
    }
}

fn main() {
    let cli = Cli::parse();
    set_conductor_limit(cli.conductor_limit);
    let command_echo = std::env::args().collect::<Vec<_>>().join(" ");
    let start = Instant::now();
    match run(&cli, command_echo, start) {
        Ok(pass) => std::process::exit(if pass { 0 } else { 1 }),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}

fn read_input(path: &str) -> Result<(String, String), Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io { path: path.to_string(), source: e })?;
    let hash = hash_bytes(text.as_bytes());
    Ok((text, hash))
}

fn emit(cli: &Cli, report: &Report) -> Result<(), Error> {
    let text = report.to_json();
    match &cli.out {
        Some(path) => std::fs::write(path, text + "\n")
            .map_err(|e| Error::Io { path: path.clone(), source: e }),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli, command_echo: String, start: Instant) -> Result<bool, Error> {
    let (results, input_hash, pass) = match &cli.command {
        Command::Group { specfile, order_cap, precision } => {
            let (text, hash) = read_input(specfile)?;
            let spec_file: io::GroupSpecFile = io::parse_json(&text, specfile)?;
            let spec = spec_file.to_spec()?;
            let group = ReflectionGroup::enumerate(&spec, *order_cap)?;
            let table = find_reflections(&group);
            let degrees = match precision {
                Some(p) => polarweyl::reflection::molien_series(&group, *p)?.degrees,
                None => invariant_degrees(&group)?,
            };
            let reflections: Vec<_> = table
                .reflections
                .iter()
                .map(|r| {
                    json!({
                        "element": r.element,
                        "order": r.order,
                        "eigenvalue": r.eigenvalue.to_string(),
                        "primitive": r.primitive,
                        "hyperplane_orbit": r.orbit,
                    })
                })
                .collect();
            let orbits: Vec<_> = table
                .orbits
                .iter()
                .map(|o| {
                    json!({
                        "id": o.id,
                        "hyperplanes": o.hyperplanes.len(),
                        "primitive_order": o.order,
                        "reflections": o.reflections.len(),
                    })
                })
                .collect();
            (
                json!({
                    "spec": spec.to_string(),
                    "order": group.order(),
                    "rank_of_action": rank_of_action(&group),
                    "invariant_degrees": degrees,
                    "reflections": reflections,
                    "hyperplane_orbits": orbits,
                }),
                hash,
                true,
            )
        }
        Command::Algebra { specfile, dim_cap, min_polys, semisimple } => {
            let (text, hash) = read_input(specfile)?;
            let pres_file: io::PresentationFile = io::parse_json(&text, specfile)?;
            let (pres, rels) = pres_file.build()?;
            let alg = build_quotient_algebra(&pres, &rels, *dim_cap)?;
            let mut results = json!({
                "dim": alg.dim(),
                "basis_words": alg.basis_word_strings(),
                "presentation_fingerprint": format!("{:016x}", alg.fingerprint()),
            });
            if *min_polys {
                let mps: Vec<String> =
                    alg.generator_min_polys()?.iter().map(format_min_poly).collect();
                results["generator_min_polys"] = json!(pres
                    .generator_names()
                    .iter()
                    .cloned()
                    .zip(mps)
                    .collect::<Vec<(String, String)>>());
            }
            if *semisimple {
                let analysis = alg.trace_form_analysis();
                results["semisimple"] = json!(analysis.semisimple);
                results["radical_dim"] = json!(analysis.radical_dim);
                results["center_dim"] = json!(alg.center_dim());
            }
            (results, hash, true)
        }
        Command::Rankone { datumfile } => {
            let (text, hash) = read_input(datumfile)?;
            let file: io::RankOneFile = io::parse_json(&text, datumfile)?;
            let datum = file.build()?;
            let inflated = inflate_relation(&datum)?;
            let (matrix, min_poly) = carousel_matrix(&datum)?;
            let unity = roots_of_unity_check(&inflated)?;
            let matches = min_poly == inflated;
            (
                json!({
                    "orbit": datum.orbit,
                    "inflated_relation": inflated.to_string(),
                    "carousel_size": matrix.nrows(),
                    "carousel_min_poly": min_poly.to_string(),
                    "min_poly_equals_inflation": matches,
                    "all_roots_of_unity": unity.all_roots_of_unity,
                    "root_orders": unity.orders,
                }),
                hash,
                matches && unity.all_roots_of_unity,
            )
        }
        Command::Symspace { datumfile, dim_cap, model } => {
            let (text, hash) = read_input(datumfile)?;
            let file: io::RootDatumFile = io::parse_json(&text, datumfile)?;
            let datum = file.build()?;
            let alg = build_symmetric_space_algebra(&datum, *dim_cap)?;
            let signs = rho_twist(&datum);
            let twist_ok = verify_twist(&alg, &signs);
            let analysis = alg.trace_form_analysis();
            let mps: Vec<String> =
                alg.generator_min_polys()?.iter().map(format_min_poly).collect();
            let mut pass = twist_ok && alg.dim() == datum.weyl_order().unwrap_or(alg.dim());
            let mut results = json!({
                "name": datum.name,
                "s_values": datum.s_values(),
                "hybrid_class": classify_hybrid(&datum),
                "dim": alg.dim(),
                "weyl_order": datum.weyl_order(),
                "generator_min_polys": mps,
                "semisimple": analysis.semisimple,
                "radical_dim": analysis.radical_dim,
                "twist_signs": signs,
                "twist_preserves_braid_relations": twist_ok,
            });
            if let Some(model_path) = model {
                let (mtext, _) = read_input(model_path)?;
                let mfile: io::InvolutionModelFile = io::parse_json(&mtext, model_path)?;
                let model = mfile.build()?;
                let oracle = model.s_values_oracle()?;
                let agree = oracle.s_values == datum.s_values();
                results["oracle_s_values"] = json!(oracle.s_values);
                results["oracle_agrees"] = json!(agree);
                pass = pass && agree;
            }
            (results, hash, pass)
        }
        Command::Track { modelfile, r#loop, epsilon, tolerances } => {
            let (text, hash) = read_input(modelfile)?;
            let file: io::PolarModelFile = io::parse_json(&text, modelfile)?;
            let model = file.build()?;
            let params = tolerances.to_params();
            let eps: CycNum = epsilon
                .parse()
                .map_err(|e: Error| Error::Parse { path: "epsilon".into(), msg: e.to_string() })?;
            let results = match r#loop.as_str() {
                "trivial" | "full-turn" => {
                    let z = model.base_critical_set(&params)?;
                    let spec = if r#loop == "trivial" {
                        model.trivial_loop()?
                    } else {
                        model.full_turn_loop()?
                    };
                    let outcome = track_loop(&model, &z, &spec, &params)?;
                    json!({
                        "model": model.name,
                        "loop": r#loop,
                        "critical_points": z.len(),
                        "permutation": outcome.permutation,
                        "steps": outcome.logs.iter().map(|l| l.steps).collect::<Vec<_>>(),
                        "max_residual": outcome.logs.iter().map(|l| l.max_residual).fold(0.0, f64::max),
                        "min_abs_det_jacobian": outcome.logs.iter().map(|l| l.min_abs_det_jacobian).fold(f64::INFINITY, f64::min),
                        "diagnostics": model.diagnostics(),
                    })
                }
                other => {
                    let idx: usize = other
                        .strip_prefix("wall:")
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| Error::Parse {
                            path: "--loop".into(),
                            msg: format!(
                                "expected trivial, full-turn or wall:<index>, got {other:?}"
                            ),
                        })?;
                    let report = carousel_report(&model, idx, &eps, &params)?;
                    serde_json::to_value(&report).expect("serializable")
                }
            };
            (results, hash, true)
        }
        Command::Catalog { filter, with_tracker } => {
            let summary = run_all(filter.as_deref(), &RunOptions { with_tracker: *with_tracker })?;
            let pass = summary.passed == summary.total && summary.total > 0;
            for entry in &summary.entries {
                eprintln!(
                    "{}: {} ({:.0} ms)",
                    entry.id,
                    if entry.pass { "pass" } else { "FAIL" },
                    entry.elapsed_ms
                );
            }
            (serde_json::to_value(&summary).expect("serializable"), String::new(), pass)
        }
    };

    let report = Report::new(
        command_echo,
        input_hash,
        results,
        start.elapsed().as_secs_f64() * 1e3,
        pass,
    );
    emit(cli, &report)?;
    Ok(pass)
}
