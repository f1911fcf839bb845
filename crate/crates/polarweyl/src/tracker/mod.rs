//! Numeric monodromy tracking on desk-scale polar models: critical points
//! of a generic linear functional on a regular fiber form one orbit of
//! the Weyl group on the Cartan subspace; loops of regular values are
//! lifted through the quotient map restricted to the Cartan subspace
//! (an |W|-fold covering over the regular values), and the induced
//! permutations of the critical points realize the braid monodromy.

mod arcs;
mod mpoly;
mod numeric;

pub use arcs::{Arc, LoopIntent, LoopSpec};
pub use mpoly::MPoly;

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::reflection::{find_reflections, ReflectionGroup, ReflectionGroupSpec};
use num_complex::Complex64;
use serde::Serialize;

/// Numeric tolerances of the tracker, surfaced as CLI flags.
#[derive(Debug, Clone, Copy)]
pub struct TrackerParams {
    /// Newton corrector convergence tolerance.
    pub newton_tol: f64,
    /// Residual bound that every accepted step must satisfy.
    pub accept_residual: f64,
    /// Endpoint matching radius.
    pub match_radius: f64,
    /// Minimal pairwise separation of critical points.
    pub separation: f64,
    /// Required single-linkage gap ratio for carousel clustering.
    pub cluster_gap: f64,
    /// Initial tracking step in the arc parameter.
    pub initial_step: f64,
    /// Step cap per tracked path.
    pub max_steps: usize,
    /// Abort when |det J| falls below this along a path.
    pub min_det_jacobian: f64,
}

impl Default for TrackerParams {
    fn default() -> Self {
        TrackerParams {
            newton_tol: 1e-12,
            accept_residual: 1e-10,
            match_radius: 1e-6,
            separation: 1e-8,
            cluster_gap: 5.0,
            initial_step: 0.1,
            max_steps: 100_000,
            min_det_jacobian: 1e-8,
        }
    }
}

/// A wall of the Weyl action: a point of one reflection hyperplane whose
/// stabilizer is the cyclic group of that hyperplane.
#[derive(Debug, Clone)]
pub struct WallSpec {
    /// Hyperplane orbit id (in the model group's reflection table).
    pub orbit: usize,
    /// Wall point in Cartan coordinates.
    pub v1: Vec<CycNum>,
}

/// An explicit polar quotient model: exact invariants, a Cartan subspace,
/// the Weyl action on its coordinates, a generic linear functional and a
/// regular basepoint.
pub struct PolarModel {
    pub name: String,
    pub ambient_dim: usize,
    pub invariants: Vec<MPoly>,
    pub cartan_basis: Vec<Vec<CycNum>>,
    pub group: ReflectionGroup,
    /// Linear functional on the ambient space (coefficient vector).
    pub functional: Vec<CycNum>,
    /// Regular basepoint, in Cartan coordinates.
    pub basepoint: Vec<CycNum>,
    pub walls: Vec<WallSpec>,
    // derived
    restricted: Vec<MPoly>,
    jacobian: Vec<Vec<MPoly>>,
    functional_on_cartan: Vec<CycNum>,
    group_numeric: Vec<Vec<Vec<Complex64>>>,
}

/// Validation summary of a model (reported, not asserted).
#[derive(Debug, Clone, Serialize)]
pub struct ModelDiagnostics {
    pub rank: usize,
    pub weyl_order: usize,
    pub basepoint_jacobian_det: (f64, f64),
    pub basepoint_condition_estimate: f64,
}

impl PolarModel {
    pub fn new(
        name: &str,
        ambient_dim: usize,
        invariants: Vec<MPoly>,
        cartan_basis: Vec<Vec<CycNum>>,
        group: ReflectionGroup,
        functional: Vec<CycNum>,
        basepoint: Vec<CycNum>,
        walls: Vec<WallSpec>,
    ) -> Result<Self> {
        let fail = |msg: String| Err(Error::BadPolarModel(msg));
        let r = cartan_basis.len();
        if group.dim() != r {
            return fail(format!(
                "group acts on C^{} but the Cartan subspace has dimension {r}",
                group.dim()
            ));
        }
        if invariants.len() != r {
            return fail(format!("{} invariants for rank {r}", invariants.len()));
        }
        for f in &invariants {
            if f.vars() != ambient_dim {
                return fail("invariant has the wrong variable count".into());
            }
        }
        for b in &cartan_basis {
            if b.len() != ambient_dim {
                return fail("Cartan basis vector has the wrong length".into());
            }
        }
        if functional.len() != ambient_dim {
            return fail("functional has the wrong length".into());
        }
        if basepoint.len() != r {
            return fail("basepoint must be given in Cartan coordinates".into());
        }

        // restriction to the Cartan subspace and exact W-invariance
        let restricted: Vec<MPoly> =
            invariants.iter().map(|f| f.restrict_to_span(&cartan_basis)).collect();
        for &gi in group.generator_indices() {
            let g = group.element(gi);
            let images: Vec<MPoly> = (0..r)
                .map(|row| {
                    let mut form = MPoly::zero(r);
                    for col in 0..r {
                        let mut e = vec![0u32; r];
                        e[col] = 1;
                        form = form.add(&MPoly::from_terms(r, vec![(e, g[(row, col)].clone())]));
                    }
                    form
                })
                .collect();
            for f in &restricted {
                if f.compose(&images) != *f {
                    return fail(format!(
                        "invariants are not Weyl-invariant on the Cartan subspace \
                         (generator {gi})"
                    ));
                }
            }
        }

        let jacobian: Vec<Vec<MPoly>> = restricted
            .iter()
            .map(|f| (0..r).map(|i| f.partial(i)).collect())
            .collect();
        let functional_on_cartan: Vec<CycNum> = cartan_basis
            .iter()
            .map(|b| {
                let mut acc = CycNum::zero();
                for (l, x) in functional.iter().zip(b.iter()) {
                    acc = acc.add(&l.mul(x));
                }
                acc
            })
            .collect();
        let group_numeric = group
            .elements()
            .iter()
            .map(|m| {
                (0..r)
                    .map(|i| (0..r).map(|j| m[(i, j)].embed()).collect())
                    .collect()
            })
            .collect();

        let model = PolarModel {
            name: name.to_string(),
            ambient_dim,
            invariants,
            cartan_basis,
            group,
            functional,
            basepoint,
            walls,
            restricted,
            jacobian,
            functional_on_cartan,
            group_numeric,
        };
        // basepoint regularity
        let bp: Vec<Complex64> = model.basepoint.iter().map(|c| c.embed()).collect();
        let j = model.jacobian_at(&bp);
        let det = numeric::det(&j);
        if det.norm() < 1e-10 {
            return Err(Error::BadPolarModel(format!(
                "the basepoint is not regular: |det J| = {:.3e}",
                det.norm()
            )));
        }
        Ok(model)
    }

    pub fn rank(&self) -> usize {
        self.cartan_basis.len()
    }

    pub fn diagnostics(&self) -> ModelDiagnostics {
        let bp: Vec<Complex64> = self.basepoint.iter().map(|c| c.embed()).collect();
        let j = self.jacobian_at(&bp);
        let det = numeric::det(&j);
        // crude condition estimate: product of row inf-norms over |det|
        let mut prod = 1.0;
        for row in &j {
            prod *= row.iter().map(|c| c.norm()).sum::<f64>().max(1e-300);
        }
        ModelDiagnostics {
            rank: self.rank(),
            weyl_order: self.group.order(),
            basepoint_jacobian_det: (det.re, det.im),
            basepoint_condition_estimate: prod / det.norm(),
        }
    }

    pub fn eval_restricted(&self, t: &[Complex64]) -> Vec<Complex64> {
        self.restricted.iter().map(|f| f.eval_complex(t)).collect()
    }

    pub fn eval_restricted_exact(&self, t: &[CycNum]) -> Vec<CycNum> {
        self.restricted.iter().map(|f| f.eval_exact(t)).collect()
    }

    pub fn jacobian_at(&self, t: &[Complex64]) -> Vec<Vec<Complex64>> {
        self.jacobian
            .iter()
            .map(|row| row.iter().map(|p| p.eval_complex(t)).collect())
            .collect()
    }

    /// `l` evaluated at a point of the Cartan subspace.
    pub fn functional_value(&self, t: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (l, x) in self.functional_on_cartan.iter().zip(t.iter()) {
            acc += l.embed() * x;
        }
        acc
    }

    fn apply_group_numeric(&self, w: usize, t: &[Complex64]) -> Vec<Complex64> {
        self.group_numeric[w]
            .iter()
            .map(|row| row.iter().zip(t.iter()).map(|(a, x)| a * x).sum())
            .collect()
    }

    /// Newton's method for `f|_c(t) = target` from a seed.
    fn newton(
        &self,
        seed: &[Complex64],
        target: &[Complex64],
        params: &TrackerParams,
        max_iter: usize,
    ) -> Result<Vec<Complex64>> {
        let mut t = seed.to_vec();
        for _ in 0..max_iter {
            let val = self.eval_restricted(&t);
            let res: Vec<Complex64> =
                target.iter().zip(val.iter()).map(|(a, b)| a - b).collect();
            if numeric::norm_inf(&res) <= params.newton_tol {
                return Ok(t);
            }
            let j = self.jacobian_at(&t);
            let delta = numeric::solve(&j, &res).ok_or_else(|| {
                Error::NewtonDiverged(format!("singular Jacobian near {:?}", t))
            })?;
            for (x, d) in t.iter_mut().zip(delta.iter()) {
                *x += d;
            }
        }
        let val = self.eval_restricted(&t);
        let res: Vec<Complex64> = target.iter().zip(val.iter()).map(|(a, b)| a - b).collect();
        if numeric::norm_inf(&res) <= params.newton_tol {
            Ok(t)
        } else {
            Err(Error::NewtonDiverged(format!(
                "residual {:.3e} after {max_iter} iterations",
                numeric::norm_inf(&res)
            )))
        }
    }
}

/// The critical points `Z = W . e_0` of the functional on the fiber over
/// `lambda`, labeled by group element index: `points[w] = w(e_0)`.
#[derive(Debug, Clone)]
pub struct CriticalSet {
    pub lambda: Vec<Complex64>,
    pub points: Vec<Vec<Complex64>>,
    pub values: Vec<Complex64>,
}

impl CriticalSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Solve `f|_c = lambda` by Newton from the seed, complete to the Weyl
/// orbit, and validate count, separation, and residuals.
pub fn critical_points(
    model: &PolarModel,
    lambda: &[Complex64],
    seed: &[Complex64],
    params: &TrackerParams,
) -> Result<CriticalSet> {
    let e0 = model.newton(seed, lambda, params, 128)?;
    let order = model.group.order();
    let mut points = Vec::with_capacity(order);
    for w in 0..order {
        let moved = model.apply_group_numeric(w, &e0);
        // polish: Weyl invariance preserves the fiber exactly, Newton
        // removes the roundoff of the matrix application
        let polished = model.newton(&moved, lambda, params, 64)?;
        if numeric::dist_inf(&polished, &moved) > 1e-6 {
            return Err(Error::OrbitIncomplete(format!(
                "group element {w} left the fiber; polished point moved by {:.3e}",
                numeric::dist_inf(&polished, &moved)
            )));
        }
        points.push(polished);
    }
    for a in 0..order {
        for b in a + 1..order {
            let d = numeric::dist_inf(&points[a], &points[b]);
            if d <= params.separation {
                return Err(Error::OrbitIncomplete(format!(
                    "points {a} and {b} collide (distance {d:.3e}); lambda is too close to \
                     the discriminant"
                )));
            }
        }
    }
    let values = points.iter().map(|p| model.functional_value(p)).collect();
    Ok(CriticalSet { lambda: lambda.to_vec(), points, values })
}

/// Per-path tracking log.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PathLog {
    pub steps: usize,
    pub min_abs_det_jacobian: f64,
    pub max_residual: f64,
}

/// Result of tracking a loop: the permutation of the critical set
/// (`permutation[i] = j` when the lift starting at point `i` ends at
/// point `j`) and the per-path logs.
#[derive(Debug, Clone)]
pub struct TrackOutcome {
    pub permutation: Vec<usize>,
    pub logs: Vec<PathLog>,
}

/// Continue every critical point along the loop by an Euler predictor and
/// Newton corrector with adaptive step halving.
pub fn track_loop(
    model: &PolarModel,
    z: &CriticalSet,
    loop_spec: &LoopSpec,
    params: &TrackerParams,
) -> Result<TrackOutcome> {
    let base = loop_spec.basepoint();
    if numeric::dist_inf(&base, &z.lambda) > 1e-9 {
        return Err(Error::BadPolarModel(
            "loop basepoint does not match the critical set's regular value".into(),
        ));
    }
    let mut endpoints = Vec::with_capacity(z.len());
    let mut logs = Vec::with_capacity(z.len());
    for start in &z.points {
        let (end, log) = track_one(model, start, loop_spec, params)?;
        endpoints.push(end);
        logs.push(log);
    }
    // nearest-neighbor matching with ambiguity detection
    let mut permutation = vec![usize::MAX; z.len()];
    let mut taken = vec![false; z.len()];
    for (i, end) in endpoints.iter().enumerate() {
        let mut within: Vec<usize> = (0..z.len())
            .filter(|&j| numeric::dist_inf(end, &z.points[j]) <= params.match_radius)
            .collect();
        if within.len() > 1 {
            return Err(Error::AmbiguousMatch);
        }
        let j = within.pop().ok_or_else(|| {
            Error::OrbitIncomplete(format!(
                "endpoint of path {i} matches no critical point within {:.1e}",
                params.match_radius
            ))
        })?;
        if taken[j] {
            return Err(Error::AmbiguousMatch);
        }
        taken[j] = true;
        permutation[i] = j;
    }
    Ok(TrackOutcome { permutation, logs })
}

fn track_one(
    model: &PolarModel,
    start: &[Complex64],
    loop_spec: &LoopSpec,
    params: &TrackerParams,
) -> Result<(Vec<Complex64>, PathLog)> {
    let mut v = start.to_vec();
    let mut steps = 0usize;
    let mut min_det = f64::INFINITY;
    let mut max_residual: f64 = 0.0;
    for arc in &loop_spec.arcs {
        let mut t = 0.0f64;
        let mut h = params.initial_step;
        while t < 1.0 {
            if steps >= params.max_steps {
                return Err(Error::StepCapExceeded(params.max_steps));
            }
            let t_next = (t + h).min(1.0);
            // Euler predictor: J dv = gamma'(t) dt
            let j = model.jacobian_at(&v);
            let det = numeric::det(&j).norm();
            if det < params.min_det_jacobian {
                return Err(Error::DiscriminantTooClose(det));
            }
            min_det = min_det.min(det);
            let gdot = arc.derivative(t);
            let predicted = match numeric::solve(&j, &gdot) {
                Some(dv) => {
                    let dt = t_next - t;
                    v.iter().zip(dv.iter()).map(|(x, d)| x + d * dt).collect::<Vec<_>>()
                }
                None => v.clone(),
            };
            // Newton corrector onto gamma(t_next)
            let target = arc.value(t_next);
            match model.newton(&predicted, &target, params, 8) {
                Ok(corrected) => {
                    // reject wild corrector jumps (path crossing)
                    let jump = numeric::dist_inf(&corrected, &v);
                    let scale = numeric::norm_inf(&v).max(1.0);
                    if jump > 0.5 * scale && h > 1e-6 {
                        h *= 0.5;
                        steps += 1;
                        continue;
                    }
                    let res_vec: Vec<Complex64> = model
                        .eval_restricted(&corrected)
                        .iter()
                        .zip(target.iter())
                        .map(|(a, b)| a - b)
                        .collect();
                    max_residual = max_residual.max(numeric::norm_inf(&res_vec));
                    v = corrected;
                    t = t_next;
                    steps += 1;
                    h = (h * 1.5).min(0.25);
                }
                Err(_) => {
                    if h < 1e-12 {
                        return Err(Error::NewtonDiverged(format!(
                            "corrector failed at arc parameter {t} with step {h:.3e}"
                        )));
                    }
                    h *= 0.5;
                    steps += 1;
                }
            }
        }
    }
    if max_residual > params.accept_residual {
        return Err(Error::NewtonDiverged(format!(
            "accepted residual {max_residual:.3e} exceeds {:.1e}",
            params.accept_residual
        )));
    }
    Ok((v, PathLog { steps, min_abs_det_jacobian: min_det, max_residual }))
}

// ---------------------------------------------------------------------------
// wall data and loop constructors
// ---------------------------------------------------------------------------

/// The exact data of a wall needed for loop construction: the preferred
/// stabilizer generator (eigenvalue exactly `zeta_n`), its order, the
/// wall point, and the normal component of the approach vector.
pub struct WallFrame {
    pub wall_index: usize,
    /// Group element index of the stabilizer generator whose normal
    /// eigenvalue is exactly `e^{2 pi i / n}`.
    pub sigma: usize,
    pub order: u32,
    pub v1: Vec<CycNum>,
    /// Normal component of `from - v1` (exact, nonzero).
    pub normal: Vec<CycNum>,
    /// Wall-parallel component of `from - v1`.
    pub parallel: Vec<CycNum>,
}

impl PolarModel {
    /// Resolve a wall against the group's reflection classification: find
    /// the stabilizer, check it is cyclic of the orbit's primitive order,
    /// select the counterclockwise generator, and split `from - v1` into
    /// wall-parallel and normal parts.
    pub fn wall_frame(&self, wall_index: usize, from: &[CycNum]) -> Result<WallFrame> {
        let wall = self
            .walls
            .get(wall_index)
            .ok_or_else(|| Error::BadPolarModel(format!("no wall {wall_index}")))?;
        let r = self.rank();
        let table = find_reflections(&self.group);
        // stabilizer of v1
        let stab: Vec<usize> = (0..self.group.order())
            .filter(|&w| {
                let moved = self.group.element(w).apply(&wall.v1);
                moved == wall.v1
            })
            .collect();
        let orbit = table
            .orbits
            .get(wall.orbit)
            .ok_or_else(|| Error::BadPolarModel(format!("no hyperplane orbit {}", wall.orbit)))?;
        let n = orbit.order;
        if stab.len() != n as usize {
            return Err(Error::BadPolarModel(format!(
                "wall point stabilizer has order {}, expected n_sigma = {n}",
                stab.len()
            )));
        }
        // the preferred generator: eigenvalue exactly zeta_n
        let zeta = CycNum::root_of_unity(n)?;
        let sigma = *stab
            .iter()
            .find(|&&w| {
                table
                    .reflections
                    .iter()
                    .any(|refl| refl.element == w && refl.orbit == wall.orbit && {
                        refl.eigenvalue == zeta
                    })
            })
            .ok_or_else(|| {
                Error::BadPolarModel(
                    "no stabilizer generator with counterclockwise primitive eigenvalue".into(),
                )
            })?;
        let sigma_mat = self.group.element(sigma);
        // eigenspaces of sigma on the Cartan coordinates
        let id = Mat::identity(r);
        let wall_basis = sigma_mat.sub(&id).kernel_basis();
        let mut shifted = sigma_mat.clone();
        for i in 0..r {
            shifted[(i, i)] = shifted[(i, i)].sub(&zeta);
        }
        let normal_basis = shifted.kernel_basis();
        if wall_basis.len() != r - 1 || normal_basis.len() != 1 {
            return Err(Error::BadPolarModel(
                "stabilizer generator is not a reflection on the Cartan coordinates".into(),
            ));
        }
        // decompose from - v1 = parallel + c * normal
        let u: Vec<CycNum> =
            from.iter().zip(wall.v1.iter()).map(|(a, b)| a.sub(b)).collect();
        let mut columns = Mat::zeros(r, r);
        for (j, wv) in wall_basis.iter().enumerate() {
            for i in 0..r {
                columns[(i, j)] = wv[i].clone();
            }
        }
        for i in 0..r {
            columns[(i, r - 1)] = normal_basis[0][i].clone();
        }
        let coords = columns
            .solve(&u)
            .ok_or_else(|| Error::BadPolarModel("eigenbasis is degenerate".into()))?;
        let c_normal = coords[r - 1].clone();
        if c_normal.is_zero() {
            return Err(Error::BadPolarModel(
                "the approach point lies on the wall; no normal component".into(),
            ));
        }
        let normal: Vec<CycNum> =
            normal_basis[0].iter().map(|x| x.mul(&c_normal)).collect();
        let parallel: Vec<CycNum> = u.iter().zip(normal.iter()).map(|(a, b)| a.sub(b)).collect();
        Ok(WallFrame {
            wall_index,
            sigma,
            order: n,
            v1: wall.v1.clone(),
            normal,
            parallel,
        })
    }

    /// Arcs in the Cartan subspace rotating the normal offset once around
    /// the wall by the angle `2 pi / n`, as two exact chords through the
    /// waypoint `zeta_{2n}` (the image under `f` goes once around the
    /// discriminant).
    fn rotation_chords(&self, frame: &WallFrame, radius: &CycNum) -> Result<Vec<Arc>> {
        let n = frame.order;
        let zeta_2n = CycNum::root_of_unity(2 * n)?;
        let zeta_n = zeta_2n.mul(&zeta_2n);
        let offset: Vec<CycNum> = frame.normal.iter().map(|x| x.mul(radius)).collect();
        let point = |factor: &CycNum| -> Vec<CycNum> {
            frame
                .v1
                .iter()
                .zip(offset.iter())
                .map(|(a, b)| a.add(&b.mul(factor)))
                .collect()
        };
        let p0 = point(&CycNum::one());
        let p1 = point(&zeta_2n);
        let p2 = point(&zeta_n);
        Ok(vec![Arc::segment(&p0, &p1), Arc::segment(&p1, &p2)])
    }

    /// Push a path in the Cartan subspace down to the space of regular
    /// values by exact composition with the restricted invariants.
    fn push_down(&self, path: &[Arc], intent: LoopIntent) -> Result<LoopSpec> {
        let arcs: Vec<Arc> = path
            .iter()
            .map(|arc| {
                Arc::new(
                    self.restricted
                        .iter()
                        .map(|f| f.compose_curve(arc.coords()))
                        .collect(),
                )
            })
            .collect();
        LoopSpec::new(arcs, intent)
    }

    /// The braid-generator loop of a wall: from the basepoint, approach
    /// the wall along the normal direction, rotate once around it, and
    /// return to the reflected basepoint; the image under `f` is a closed
    /// loop around the wall's discriminant component.
    pub fn braid_generator_loop(&self, wall_index: usize, epsilon: &CycNum) -> Result<LoopSpec> {
        let frame = self.wall_frame(wall_index, &self.basepoint)?;
        let x0: Vec<CycNum> = frame
            .v1
            .iter()
            .zip(frame.normal.iter())
            .map(|(a, b)| a.add(&b.mul(epsilon)))
            .collect();
        let sigma = self.group.element(frame.sigma).clone();
        let sigma_b = sigma.apply(&self.basepoint);
        let sigma_x0 = sigma.apply(&x0);
        let mut path = vec![Arc::segment(&self.basepoint, &x0)];
        path.extend(self.rotation_chords(&frame, epsilon)?);
        path.push(Arc::segment(&sigma_x0, &sigma_b));
        self.push_down(&path, LoopIntent::WallHalfTurn { wall: wall_index })
    }

    /// The around-the-wall loop based at the near-wall point itself
    /// (used by the carousel report).
    pub fn wall_turn_loop(&self, wall_index: usize, epsilon: &CycNum) -> Result<(LoopSpec, Vec<CycNum>)> {
        let frame = self.wall_frame(wall_index, &self.basepoint)?;
        let x0: Vec<CycNum> = frame
            .v1
            .iter()
            .zip(frame.normal.iter())
            .map(|(a, b)| a.add(&b.mul(epsilon)))
            .collect();
        let path = self.rotation_chords(&frame, epsilon)?;
        let spec = self.push_down(&path, LoopIntent::WallHalfTurn { wall: wall_index })?;
        Ok((spec, x0))
    }

    /// A polygonal full turn of the regular value around the origin
    /// (rank-one models): the square through `lambda, i lambda, -lambda,
    /// -i lambda`.
    pub fn full_turn_loop(&self) -> Result<LoopSpec> {
        if self.rank() != 1 {
            return Err(Error::BadPolarModel(
                "the full-turn loop is defined for rank-one models".into(),
            ));
        }
        let lambda = self.eval_restricted_exact(&self.basepoint);
        let i = CycNum::root_of_unity(4)?;
        let corners = [
            lambda.clone(),
            vec![lambda[0].mul(&i)],
            vec![lambda[0].neg()],
            vec![lambda[0].mul(&i).neg()],
            lambda.clone(),
        ];
        let arcs = corners.windows(2).map(|w| Arc::segment(&w[0], &w[1])).collect();
        LoopSpec::new(arcs, LoopIntent::FullTurn)
    }

    /// The constant loop at the basepoint's value.
    pub fn trivial_loop(&self) -> Result<LoopSpec> {
        let lambda = self.eval_restricted_exact(&self.basepoint);
        LoopSpec::new(vec![Arc::constant(&lambda)], LoopIntent::Custom)
    }

    /// Critical set over the value of the model basepoint.
    pub fn base_critical_set(&self, params: &TrackerParams) -> Result<CriticalSet> {
        let bp: Vec<Complex64> = self.basepoint.iter().map(|c| c.embed()).collect();
        let lambda = self.eval_restricted(&bp);
        critical_points(self, &lambda, &bp, params)
    }

    /// The permutation of the critical labels induced by multiplying on
    /// the right by group element `w` (the monodromy action commutes with
    /// the deck transformations, which act on the left).
    pub fn right_translation(&self, w: usize) -> Vec<usize> {
        (0..self.group.order()).map(|i| self.group.mul_indices(i, w)).collect()
    }
}

// ---------------------------------------------------------------------------
// carousel
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct CarouselReport {
    pub wall_index: usize,
    pub orbit: usize,
    pub n_sigma: u32,
    pub cluster_count: usize,
    pub cluster_size: u32,
    /// Critical-point indices per cluster.
    pub clusters: Vec<Vec<usize>>,
    /// max intra-cluster linkage over min inter-cluster distance.
    pub observed_gap_ratio: f64,
    pub permutation: Vec<usize>,
    /// The tracked permutation cyclically permutes every cluster.
    pub cyclic_on_clusters: bool,
    /// The tracked permutation equals right translation by the wall's
    /// stabilizer generator.
    pub matches_sigma: bool,
}

/// Cluster structure of the functional values near a wall, and the
/// tracked wall-turn permutation.
pub fn carousel_report(
    model: &PolarModel,
    wall_index: usize,
    epsilon: &CycNum,
    params: &TrackerParams,
) -> Result<CarouselReport> {
    let (loop_spec, x0) = model.wall_turn_loop(wall_index, epsilon)?;
    let frame = model.wall_frame(wall_index, &model.basepoint)?;
    let x0_num: Vec<Complex64> = x0.iter().map(|c| c.embed()).collect();
    let lambda = model.eval_restricted(&x0_num);
    let z = critical_points(model, &lambda, &x0_num, params)?;

    let order = model.group.order();
    let n_sigma = frame.order;
    let target = order / n_sigma as usize;
    let values = &z.values;

    // single-linkage clustering down to the target cluster count
    let mut parent: Vec<usize> = (0..order).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let root = find(parent, parent[i]);
            parent[i] = root;
        }
        parent[i]
    }
    let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
    for a in 0..order {
        for b in a + 1..order {
            pairs.push(((values[a] - values[b]).norm(), a, b));
        }
    }
    pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    let mut cluster_count = order;
    let mut max_intra: f64 = 0.0;
    let mut min_inter = f64::INFINITY;
    for (d, a, b) in pairs {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            continue;
        }
        if cluster_count > target {
            parent[ra.max(rb)] = ra.min(rb);
            cluster_count -= 1;
            max_intra = max_intra.max(d);
        } else {
            min_inter = min_inter.min(d);
        }
    }
    let observed_gap_ratio =
        if max_intra == 0.0 { f64::INFINITY } else { min_inter / max_intra };
    if target > 1 && observed_gap_ratio < params.cluster_gap {
        return Err(Error::ClusterGapNotFound(format!(
            "gap ratio {observed_gap_ratio:.2} below {}; move the basepoint closer to the wall",
            params.cluster_gap
        )));
    }
    let mut cluster_map: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..order {
        let root = find(&mut parent, i);
        cluster_map.entry(root).or_default().push(i);
    }
    let clusters: Vec<Vec<usize>> = cluster_map.into_values().collect();
    for c in &clusters {
        if c.len() != n_sigma as usize {
            return Err(Error::ClusterGapNotFound(format!(
                "cluster of size {} (expected n_sigma = {n_sigma})",
                c.len()
            )));
        }
    }

    // track the wall turn and verify the cyclic action
    let outcome = track_loop(model, &z, &loop_spec, params)?;
    let permutation = outcome.permutation;
    let mut cyclic = true;
    for cluster in &clusters {
        let set: std::collections::HashSet<usize> = cluster.iter().copied().collect();
        // the cluster must be preserved and traversed in one cycle
        let mut seen = std::collections::HashSet::new();
        let mut cur = cluster[0];
        for _ in 0..cluster.len() {
            if !set.contains(&cur) || !seen.insert(cur) {
                cyclic = false;
                break;
            }
            cur = permutation[cur];
        }
        if cur != cluster[0] {
            cyclic = false;
        }
    }
    let expected = model.right_translation(frame.sigma);
    let matches_sigma = permutation == expected;

    Ok(CarouselReport {
        wall_index,
        orbit: model.walls[wall_index].orbit,
        n_sigma,
        cluster_count: clusters.len(),
        cluster_size: n_sigma,
        clusters,
        observed_gap_ratio,
        permutation,
        cyclic_on_clusters: cyclic,
        matches_sigma,
    })
}

/// Closure of a set of permutations (as index maps) under composition.
pub fn permutation_group_closure(generators: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = generators.first().map_or(0, |p| p.len());
    let identity: Vec<usize> = (0..n).collect();
    let mut seen = std::collections::BTreeSet::new();
    seen.insert(identity.clone());
    let mut frontier = vec![identity];
    while let Some(p) = frontier.pop() {
        for g in generators {
            let composed: Vec<usize> = (0..n).map(|i| g[p[i]]).collect();
            if seen.insert(composed.clone()) {
                frontier.push(composed);
            }
        }
    }
    seen.into_iter().collect()
}

// ---------------------------------------------------------------------------
// bundled models
// ---------------------------------------------------------------------------

/// `SO_n` on `C^n` restricted to essentials: `f = x_1^2 + ... + x_n^2`,
/// Cartan subspace the first coordinate line, Weyl group {+1, -1}.
pub fn quadric_model(n: usize) -> Result<PolarModel> {
    assert!(n >= 1);
    let mut f = MPoly::zero(n);
    for k in 0..n {
        f = f.add(&MPoly::var(n, k).pow(2));
    }
    let mut basis_vec = vec![CycNum::zero(); n];
    basis_vec[0] = CycNum::one();
    let group = ReflectionGroup::enumerate(&ReflectionGroupSpec::Cyclic { order: 2 }, 8)?;
    let mut functional = vec![CycNum::zero(); n];
    functional[0] = CycNum::one();
    PolarModel::new(
        &format!("quadric SO_{n}"),
        n,
        vec![f],
        vec![basis_vec],
        group,
        functional,
        vec![CycNum::one()],
        vec![WallSpec { orbit: 0, v1: vec![CycNum::zero()] }],
    )
}

/// The torus action with invariant `f = x_1 ... x_n`, Cartan subspace the
/// diagonal, Weyl group `Z/n`.
pub fn normal_crossings_model(n: usize) -> Result<PolarModel> {
    assert!(n >= 1);
    let mut f = MPoly::constant(n, CycNum::one());
    for k in 0..n {
        f = f.mul(&MPoly::var(n, k));
    }
    let basis_vec = vec![CycNum::one(); n];
    let group =
        ReflectionGroup::enumerate(&ReflectionGroupSpec::Cyclic { order: n as u32 }, 4 * n)?;
    let mut functional = vec![CycNum::zero(); n];
    functional[0] = CycNum::one();
    PolarModel::new(
        &format!("normal crossings n={n}"),
        n,
        vec![f],
        vec![basis_vec],
        group,
        functional,
        vec![CycNum::one()],
        vec![WallSpec { orbit: 0, v1: vec![CycNum::zero()] }],
    )
}

/// `SO_3` conjugating symmetric 3x3 matrices: coordinates
/// `(x11, x22, x33, x12, x13, x23)`, invariants the characteristic
/// polynomial coefficients, Cartan subspace the diagonals, Weyl group the
/// symmetric group permuting the diagonal.
pub fn symmetric_matrices_model() -> Result<PolarModel> {
    let d = 6usize;
    let x = |i: usize| MPoly::var(d, i);
    let (x11, x22, x33, x12, x13, x23) = (x(0), x(1), x(2), x(3), x(4), x(5));
    // e1 = trace
    let e1 = x11.add(&x22).add(&x33);
    // e2 = sum of principal 2x2 minors
    let e2 = x11
        .mul(&x22)
        .sub(&x12.pow(2))
        .add(&x11.mul(&x33))
        .sub(&x13.pow(2))
        .add(&x22.mul(&x33))
        .sub(&x23.pow(2));
    // e3 = determinant
    let e3 = x11
        .mul(&x22)
        .mul(&x33)
        .add(&x12.mul(&x23).mul(&x13).scale(&CycNum::from_i64(2)))
        .sub(&x11.mul(&x23.pow(2)))
        .sub(&x22.mul(&x13.pow(2)))
        .sub(&x33.mul(&x12.pow(2)));
    let unit = |i: usize| {
        let mut v = vec![CycNum::zero(); d];
        v[i] = CycNum::one();
        v
    };
    let cartan = vec![unit(0), unit(1), unit(2)];
    let group = ReflectionGroup::enumerate(&ReflectionGroupSpec::Imprimitive { m: 1, n: 3 }, 24)?;
    // l = x11 + 3 x22 + 9 x33: separates the diagonal entries generically
    let mut functional = vec![CycNum::zero(); d];
    functional[0] = CycNum::one();
    functional[1] = CycNum::from_i64(3);
    functional[2] = CycNum::from_i64(9);
    // basepoint diag(3, 4, -2): regular, adjacent to both bundled walls
    let basepoint = vec![CycNum::from_i64(3), CycNum::from_i64(4), CycNum::from_i64(-2)];
    PolarModel::new(
        "symmetric 3x3 matrices under SO_3",
        d,
        vec![e1, e2, e3],
        cartan,
        group,
        functional,
        basepoint,
        vec![
            WallSpec {
                orbit: 0,
                v1: vec![CycNum::from_i64(1), CycNum::from_i64(1), CycNum::from_i64(-2)],
            },
            WallSpec {
                orbit: 0,
                v1: vec![CycNum::from_i64(1), CycNum::from_i64(3), CycNum::from_i64(1)],
            },
        ],
    )
}

#[cfg(test)]
mod tests;
