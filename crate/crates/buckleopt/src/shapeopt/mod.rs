//! Objectives over domains and the derivative-free shape optimizer.
//!
//! The constrained problem (smallest buckling eigenvalue under a perimeter
//! bound) is explored through its equivalent formulations: the
//! scale-invariant objective `P^(2/(d-1)) Λ₁`, and the penalized objective
//! `Λ₁ + β P` whose stationarity in the dilation parameter pins
//! `β = 2 Λ₁ / ((d-1) P)`. The optimizer enforces the perimeter constraint
//! by exact rescaling of every candidate (optimal shapes saturate the
//! constraint), so the feasible search is a section of the scale-invariant
//! problem.

mod nelder_mead;

pub use nelder_mead::{NelderMeadParams, SimplexOutcome};

use serde::{Deserialize, Serialize};

use crate::eigensolve::{generalized_smallest, DEFAULT_TOL};
use crate::geometry::{hausdorff_distance, DomainSpec, Point2};
use crate::operators::{assemble_biharmonic, assemble_laplacian};
use crate::raster::{rasterize_common, GridEmbedding};
use crate::{Error, Result};

/// One evaluated domain: eigenvalues, measures and the objective.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ObjectiveRecord {
    pub domain: DomainSpec,
    pub grid_h: f64,
    /// Ascending eigenvalues Λ₁..Λ_k.
    pub lambda: Vec<f64>,
    pub perimeter: f64,
    pub area: f64,
    /// `perimeter² · Λ_k` (the scale-invariant objective for the highest
    /// requested index); recomputable from the other fields.
    pub objective_value: f64,
    pub extrapolated: bool,
}

/// Rasterize, assemble and solve for the smallest `eigen_count` buckling
/// eigenvalues of `domain`. With `extrapolate`, solves at `grid_h` and
/// `grid_h/2` and reports the Richardson combination `2Λ(h/2) − Λ(h)`
/// per eigenvalue (first-order error model), re-sorted ascending.
pub fn buckling_of_domain(
    domain: &DomainSpec,
    grid_h: f64,
    eigen_count: usize,
    extrapolate: bool,
) -> Result<ObjectiveRecord> {
    buckling_of_domain_tol(domain, grid_h, eigen_count, extrapolate, DEFAULT_TOL)
}

/// [`buckling_of_domain`] with an explicit solver tolerance.
pub fn buckling_of_domain_tol(
    domain: &DomainSpec,
    grid_h: f64,
    eigen_count: usize,
    extrapolate: bool,
    tol: f64,
) -> Result<ObjectiveRecord> {
    let coarse = solve_lambdas(domain, grid_h, eigen_count, tol)?;
    let lambda = if extrapolate {
        let fine = solve_lambdas(domain, grid_h / 2.0, eigen_count, tol)?;
        let mut combined: Vec<f64> = fine
            .iter()
            .zip(&coarse)
            .map(|(f, c)| 2.0 * f - c)
            .collect();
        // extrapolation of a nearly degenerate pair can swap by a hair
        combined.sort_by(|a, b| a.partial_cmp(b).unwrap());
        combined
    } else {
        coarse
    };
    let perimeter = domain.perimeter()?;
    let area = domain.area()?;
    let objective_value = perimeter * perimeter * lambda[lambda.len() - 1];
    Ok(ObjectiveRecord {
        domain: domain.clone(),
        grid_h,
        lambda,
        perimeter,
        area,
        objective_value,
        extrapolated: extrapolate,
    })
}

fn solve_lambdas(domain: &DomainSpec, h: f64, k: usize, tol: f64) -> Result<Vec<f64>> {
    let grid = GridEmbedding::rasterize(domain, h)?;
    let a = assemble_biharmonic(&grid);
    let b = assemble_laplacian(&grid);
    Ok(generalized_smallest(&a, &b, k, tol)?.values)
}

/// Scale-invariant objective `P^(2/(d-1)) · Λ₁` of a record.
pub fn objective_scale_invariant(record: &ObjectiveRecord, d_param: usize) -> f64 {
    record.perimeter.powf(2.0 / (d_param as f64 - 1.0)) * record.lambda[0]
}

/// The penalization weight at which the dilation profile of a saturated
/// optimum is stationary at t = 1: `β = 2 Λ₁ / ((d-1) P)`.
pub fn beta_star(lambda1: f64, perimeter: f64, d_param: usize) -> Result<f64> {
    if !(lambda1 > 0.0 && perimeter > 0.0) {
        return Err(Error::InvalidArgument(
            "beta_star needs positive eigenvalue and perimeter".into(),
        ));
    }
    if d_param < 2 {
        return Err(Error::InvalidArgument(
            "beta_star needs dimension >= 2".into(),
        ));
    }
    Ok(2.0 * lambda1 / ((d_param as f64 - 1.0) * perimeter))
}

/// Closed-form dilation profile `F(t) = t⁻² Λ₁ + β t^(d-1) P` evaluated from
/// one base record; no re-solve is needed because both terms scale exactly.
pub fn penalized_profile(
    domain: &DomainSpec,
    beta: f64,
    t_grid: &[f64],
    grid_h: f64,
) -> Result<Vec<(f64, f64)>> {
    if t_grid.iter().any(|&t| !(t > 0.0)) {
        return Err(Error::InvalidArgument(
            "dilation grid must be positive".into(),
        ));
    }
    let record = buckling_of_domain(domain, grid_h, 1, false)?;
    Ok(penalized_profile_from(&record, beta, t_grid, 2))
}

/// Profile from an existing record (d_param kept symbolic for the formula).
pub fn penalized_profile_from(
    record: &ObjectiveRecord,
    beta: f64,
    t_grid: &[f64],
    d_param: usize,
) -> Vec<(f64, f64)> {
    let lambda1 = record.lambda[0];
    let p = record.perimeter;
    let d = d_param as f64;
    t_grid
        .iter()
        .map(|&t| (t, lambda1 / (t * t) + beta * t.powf(d - 1.0) * p))
        .collect()
}

/// Λ₁ of a domain and of its convex hull on one common lattice; the hull
/// value cannot exceed the original because the masks nest.
pub fn convexification_gain(domain: &DomainSpec, grid_h: f64) -> Result<(f64, f64)> {
    let hull = DomainSpec::from(domain.convex_hull()?);
    let grids = rasterize_common(&[domain, &hull], grid_h)?;
    let lam = |g: &GridEmbedding| -> Result<f64> {
        let a = assemble_biharmonic(g);
        let b = assemble_laplacian(g);
        Ok(generalized_smallest(&a, &b, 1, DEFAULT_TOL)?.values[0])
    };
    Ok((lam(&grids[0])?, lam(&grids[1])?))
}

/// Shape family searched by the optimizer.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ShapeFamily {
    /// Fourier star boundary about the origin with `k` harmonics; parameters
    /// are the 2k coefficients (a_1, b_1, .., a_k, b_k) of the unit-mean
    /// star, rescaled to the target perimeter per candidate.
    Star {
        k: usize,
        #[serde(default)]
        start_coeffs: Vec<[f64; 2]>,
    },
    /// Free polygon vertices; parameters are per-vertex offsets from the
    /// base polygon.
    Polygon { base: Vec<[f64; 2]> },
}

impl ShapeFamily {
    /// Number of optimization parameters.
    pub fn dim(&self) -> usize {
        match self {
            ShapeFamily::Star { k, .. } => 2 * k,
            ShapeFamily::Polygon { base } => 2 * base.len(),
        }
    }

    fn start_params(&self) -> Result<Vec<f64>> {
        match self {
            ShapeFamily::Star { k, start_coeffs } => {
                if start_coeffs.len() > *k {
                    return Err(Error::InvalidArgument(format!(
                        "{} start coefficients for {k} harmonics",
                        start_coeffs.len()
                    )));
                }
                let mut params = vec![0.0; 2 * k];
                for (i, c) in start_coeffs.iter().enumerate() {
                    params[2 * i] = c[0];
                    params[2 * i + 1] = c[1];
                }
                Ok(params)
            }
            ShapeFamily::Polygon { base } => {
                // offsets start at zero; base polygon must be valid
                DomainSpec::polygon(base.clone()).validate()?;
                Ok(vec![0.0; 2 * base.len()])
            }
        }
    }

    /// Builds the raw (unsaturated) domain from a parameter vector.
    fn domain_from_params(&self, params: &[f64]) -> Result<DomainSpec> {
        match self {
            ShapeFamily::Star { k, .. } => {
                let coeffs: Vec<[f64; 2]> = (0..*k)
                    .map(|i| [params[2 * i], params[2 * i + 1]])
                    .collect();
                let d = DomainSpec::star([0.0, 0.0], 1.0, coeffs);
                d.validate()?;
                Ok(d)
            }
            ShapeFamily::Polygon { base } => {
                let vertices: Vec<[f64; 2]> = base
                    .iter()
                    .enumerate()
                    .map(|(i, v)| [v[0] + params[2 * i], v[1] + params[2 * i + 1]])
                    .collect();
                let d = DomainSpec::polygon(vertices);
                d.validate()?;
                Ok(d)
            }
        }
    }
}

/// Configuration of one optimization run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub family: ShapeFamily,
    /// Perimeter every candidate is rescaled to.
    pub target_perimeter: f64,
    /// Index of the minimized eigenvalue (1 = lowest).
    pub eigen_index: usize,
    /// Project every candidate onto its convex hull first.
    #[serde(default)]
    pub convexify: bool,
    /// Grid spacing during the search; `None` picks diameter/96 of the
    /// saturated start domain.
    #[serde(default)]
    pub grid_h: Option<f64>,
    /// Richardson-extrapolate each candidate evaluation (slow; the final
    /// report is always extrapolated at half the search spacing).
    #[serde(default)]
    pub extrapolate: bool,
    #[serde(default)]
    pub simplex: NelderMeadParams,
    /// Initial simplex step per coordinate.
    #[serde(default = "default_simplex_step")]
    pub simplex_step: f64,
    pub max_evals: usize,
    #[serde(default)]
    pub seed: u64,
    /// Relative objective spread of the simplex at which the search stops.
    #[serde(default = "default_stop_tol")]
    pub stop_tol: f64,
    /// Eigensolver residual tolerance.
    #[serde(default = "default_eig_tol")]
    pub eig_tol: f64,
}

fn default_simplex_step() -> f64 {
    0.1
}

fn default_stop_tol() -> f64 {
    1e-6
}

fn default_eig_tol() -> f64 {
    DEFAULT_TOL
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.target_perimeter > 0.0 && self.target_perimeter.is_finite()) {
            return Err(Error::InvalidArgument(
                "target perimeter must be > 0".into(),
            ));
        }
        if self.eigen_index < 1 {
            return Err(Error::InvalidArgument("eigen index must be >= 1".into()));
        }
        match &self.family {
            ShapeFamily::Star { k, .. } => {
                if *k < 1 || *k > 32 {
                    return Err(Error::InvalidArgument(format!(
                        "star family supports 1..=32 harmonics, got {k}"
                    )));
                }
            }
            ShapeFamily::Polygon { base } => {
                if base.len() < 3 || base.len() > 256 {
                    return Err(Error::InvalidArgument(format!(
                        "polygon family supports 3..=256 vertices, got {}",
                        base.len()
                    )));
                }
            }
        }
        if self.max_evals == 0 {
            return Err(Error::InvalidArgument("max_evals must be >= 1".into()));
        }
        if !(self.stop_tol >= 0.0) || !(self.simplex_step > 0.0) || !(self.eig_tol > 0.0) {
            return Err(Error::InvalidArgument(
                "tolerances and simplex step must be positive".into(),
            ));
        }
        self.family.start_params().map(|_| ())
    }
}

/// Iteration history of a run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OptTrace {
    /// (evaluation count, best record so far) — one entry per evaluation,
    /// objective non-increasing.
    pub iterations: Vec<(usize, ObjectiveRecord)>,
    /// Best domain re-evaluated with Richardson extrapolation (search
    /// spacing paired with its half).
    pub final_record: ObjectiveRecord,
    pub converged: bool,
    /// Hausdorff distance from the final saturated domain to the disk of the
    /// same perimeter centered at the domain's centroid.
    pub hausdorff_to_disk: f64,
}

/// Nelder–Mead simplex search over the family's parameters. Every candidate
/// is (optionally) convexified, exactly rescaled to the target perimeter and
/// evaluated; infeasible candidates cost +∞ and never abort the run.
pub fn optimize(config: &OptimizerConfig) -> Result<OptTrace> {
    config.validate()?;
    let start = config.family.start_params()?;
    let start_domain = candidate_domain(config, &start)?.ok_or_else(|| {
        Error::InvalidDomain("start parameters do not describe a valid domain".into())
    })?;
    let grid_h = match config.grid_h {
        Some(h) => h,
        None => start_domain.diameter()? / 96.0,
    };

    let mut trace: Vec<(usize, ObjectiveRecord)> = Vec::new();
    let mut eval_count = 0usize;
    let mut best: Option<ObjectiveRecord> = None;

    let outcome = {
        let mut evaluate = |params: &[f64]| -> f64 {
            if eval_count >= config.max_evals {
                return f64::INFINITY;
            }
            eval_count += 1;
            let record = match candidate_domain(config, params) {
                Ok(Some(domain)) => match buckling_of_domain_tol(
                    &domain,
                    grid_h,
                    config.eigen_index,
                    config.extrapolate,
                    config.eig_tol,
                ) {
                    Ok(r) => r,
                    Err(_) => {
                        record_trace(&mut trace, eval_count, &best);
                        return f64::INFINITY;
                    }
                },
                _ => {
                    record_trace(&mut trace, eval_count, &best);
                    return f64::INFINITY;
                }
            };
            let objective = record.objective_value;
            if best
                .as_ref()
                .map(|b| objective < b.objective_value)
                .unwrap_or(true)
            {
                best = Some(record);
            }
            record_trace(&mut trace, eval_count, &best);
            objective
        };
        nelder_mead::minimize(
            &start,
            config.simplex_step,
            &config.simplex,
            config.max_evals,
            config.stop_tol,
            &mut evaluate,
        )
    };

    let best = best.ok_or_else(|| Error::InvalidDomain("no feasible candidate found".into()))?;

    // final report: Richardson extrapolation from the search spacing and
    // its half (one extra solve at half spacing)
    let final_record = buckling_of_domain_tol(
        &best.domain,
        grid_h,
        config.eigen_index,
        true,
        config.eig_tol,
    )?;
    let centroid = final_record.domain.centroid()?;
    let disk = DomainSpec::disk(
        [centroid.x, centroid.y],
        config.target_perimeter / (2.0 * std::f64::consts::PI),
    );
    let hausdorff_to_disk = hausdorff_distance(&final_record.domain, &disk)?;
    Ok(OptTrace {
        iterations: trace,
        final_record,
        converged: matches!(outcome, SimplexOutcome::SpreadBelowTolerance),
        hausdorff_to_disk,
    })
}

fn record_trace(
    trace: &mut Vec<(usize, ObjectiveRecord)>,
    eval_count: usize,
    best: &Option<ObjectiveRecord>,
) {
    if let Some(b) = best {
        trace.push((eval_count, b.clone()));
    }
}

/// Builds the evaluated domain for a parameter vector: family shape,
/// optional hull projection, exact perimeter saturation. `Ok(None)` marks an
/// infeasible candidate.
pub fn candidate_domain(config: &OptimizerConfig, params: &[f64]) -> Result<Option<DomainSpec>> {
    let raw = match config.family.domain_from_params(params) {
        Ok(d) => d,
        Err(_) => return Ok(None),
    };
    let shaped = if config.convexify {
        match raw.convex_hull() {
            Ok(hull) => DomainSpec::from(hull),
            Err(_) => return Ok(None),
        }
    } else {
        raw
    };
    match shaped.saturate_perimeter(config.target_perimeter) {
        Ok(d) => Ok(Some(d)),
        Err(_) => Ok(None),
    }
}

/// Centroid helper shared with the CLI.
pub fn domain_centroid(domain: &DomainSpec) -> Result<Point2> {
    domain.centroid()
}
