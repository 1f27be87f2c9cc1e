use std::fs;
use std::path::{Path, PathBuf};

use clap::Subcommand;
use serde::Serialize;

use poinc_core::intertwiner::{bridge, bridge_tangent_rank, elementary_self_intertwiners, invariant_field_dimension};
use poinc_core::kirillov::{orbit_invariants, orbit_label_from_invariants, su2_flux, su2_tensor_decompose};
use poinc_core::rep::{
    elementary_tensor_with, make_irrep, orbit_stabilizer, quadrilateral_shape_space, triangle_fiber, MeasureTag,
    TensorOutcome,
};
use poinc_core::statesum::{
    evaluate_z_with, load_labels, load_triangulation, parse_config, sphericity_sweep, time_ordered_labelling,
    Integrator,
};
use poinc_core::{AmplitudeConfig, CausalClass, Irrep, Labelling, MinkowskiOrbit, StabilizerGroup, Triangulation};

use crate::report::Report;
use crate::Common;

pub enum Failure {
    /// Bad arguments; exit code 2.
    Usage(String),
    /// The computation itself failed; exit code 1.
    Compute(String),
}

impl From<poinc_core::Error> for Failure {
    fn from(e: poinc_core::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

type Outcome = Result<(Report, u64), Failure>;

#[derive(Subcommand, Debug, Serialize)]
pub enum OrbitCmd {
    /// Spins in the decomposition of V_j ⊗ V_l.
    Su2Tensor {
        #[arg(long)]
        j: f64,
        #[arg(long)]
        l: f64,
    },
    /// Orbit label (n, ρ) of a point of sl(2,C)* given as six reals x1,x2,x3,y1,y2,y3.
    Sl2cLabel {
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Symplectic flux through the su(2) orbit of radius j.
    Flux {
        #[arg(long)]
        j: f64,
        #[arg(long, default_value_t = 10_000)]
        resolution: usize,
    },
}

#[derive(Subcommand, Debug, Serialize)]
pub enum RepCmd {
    /// Decomposition of E_r1 ⊗ E_r2.
    Tensor {
        #[arg(long)]
        r1: f64,
        #[arg(long)]
        r2: f64,
        /// Measure on the continuum parameter.
        #[arg(long, default_value = "lebesgue")]
        measure: String,
    },
    /// Fiber of pairs (u1, u2) on the r1, r2 orbits with u1 + u2 = (r, 0, 0, 0).
    Triangle {
        #[arg(long)]
        r1: f64,
        #[arg(long)]
        r2: f64,
        #[arg(long)]
        r: f64,
        #[arg(long, default_value_t = 256)]
        samples: usize,
    },
    /// Shape space of closed quadrilaterals with three timelike edges.
    Quad {
        /// Edge radii `a,b,c`.
        #[arg(long)]
        edges: String,
        #[arg(long)]
        total: f64,
        #[arg(long, default_value_t = 256)]
        samples: usize,
    },
}

#[derive(Subcommand, Debug, Serialize)]
pub enum IntwCmd {
    /// The bridge G/(H1 ∩ H2).
    Bridge {
        #[arg(long)]
        group: String,
        #[arg(long)]
        h1: String,
        #[arg(long)]
        h2: String,
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
    /// Dimension of the invariant cocycle solution space of an irrep.
    CocycleDim {
        /// `elementary:R`, or `CLASS:R[:SUBGROUP]` with CLASS one of
        /// future, past, spacelike, null-future, null-past, zero.
        #[arg(long)]
        irrep: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

#[derive(Subcommand, Debug, Serialize)]
pub enum StatesumCmd {
    /// Regularized partition function.
    Eval {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        labels: Option<PathBuf>,
    },
    /// Plus/minus 5j residuals over a resolution sweep.
    Sphericity {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        labels: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', default_value = "128,256,512,1024")]
        resolutions: Vec<usize>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
}

impl OrbitCmd {
    pub fn name(&self) -> &'static str {
        match self {
            OrbitCmd::Su2Tensor { .. } => "su2-tensor",
            OrbitCmd::Sl2cLabel { .. } => "sl2c-label",
            OrbitCmd::Flux { .. } => "flux",
        }
    }
}

impl RepCmd {
    pub fn name(&self) -> &'static str {
        match self {
            RepCmd::Tensor { .. } => "tensor",
            RepCmd::Triangle { .. } => "triangle",
            RepCmd::Quad { .. } => "quad",
        }
    }
}

impl IntwCmd {
    pub fn name(&self) -> &'static str {
        match self {
            IntwCmd::Bridge { .. } => "bridge",
            IntwCmd::CocycleDim { .. } => "cocycle-dim",
        }
    }
}

impl StatesumCmd {
    pub fn name(&self) -> &'static str {
        match self {
            StatesumCmd::Eval { .. } => "eval",
            StatesumCmd::Sphericity { .. } => "sphericity",
        }
    }
}

fn no_config(c: &Common) -> Result<(), Failure> {
    match &c.config {
        Some(p) => Err(Failure::Usage(format!("--config {} only applies to statesum commands", p.display()))),
        None => Ok(()),
    }
}

fn reals(s: &str, n: usize, what: &str) -> Result<Vec<f64>, Failure> {
    let v: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::Usage(format!("{what}: {e}")))?;
    if v.len() != n {
        return Err(Failure::Usage(format!("{what}: expected {n} comma-separated numbers, got {}", v.len())));
    }
    Ok(v)
}

fn spins(js: &[f64]) -> String {
    js.iter().map(f64::to_string).collect::<Vec<_>>().join(" ")
}

pub fn orbit(cmd: &OrbitCmd, c: &Common) -> Outcome {
    no_config(c)?;
    let mut r = Report::default();
    match cmd {
        OrbitCmd::Su2Tensor { j, l } => {
            let parts = su2_tensor_decompose(*j, *l)?;
            let js: Vec<f64> = parts.iter().map(|p| p.j()).collect();
            let dims: Vec<String> = parts.iter().map(|p| p.dim().to_string()).collect();
            r.line(spins(&js));
            r.row("j", j).row("l", l).row("components", spins(&js)).row("dims", dims.join(" "));
        }
        OrbitCmd::Sl2cLabel { point } => {
            let p = reals(point, 6, "--point")?;
            let p: [f64; 6] = std::array::from_fn(|i| p[i]);
            let (i1, i2) = orbit_invariants(&p);
            let label = orbit_label_from_invariants(i1, i2)?;
            r.line(format!("invariants |x|²−|y|² = {i1}, x·y = {i2}"));
            r.line(format!("orbit label {label}"));
            r.row("i1", i1).row("i2", i2).row("n", label.n()).row("rho", label.rho());
        }
        OrbitCmd::Flux { j, resolution } => {
            let f = su2_flux(*j, *resolution)?;
            r.line(format!("flux through the radius-{j} orbit: {} ({} nodes)", f.flux, f.nodes));
            r.line(format!("flux / 2π = {}", f.flux / std::f64::consts::TAU));
            r.row("j", j)
                .row("nodes", f.nodes)
                .row("flux", f.flux)
                .row("coarse_flux", f.coarse_flux)
                .row("converged", f.converged);
        }
    }
    Ok((r, c.seed.unwrap_or(0)))
}

pub fn rep(cmd: &RepCmd, c: &Common) -> Outcome {
    no_config(c)?;
    let seed = c.seed.unwrap_or(0);
    let mut r = Report::default();
    match cmd {
        RepCmd::Tensor { r1, r2, measure } => {
            let measure = match measure.as_str() {
                "lebesgue" => MeasureTag::Lebesgue,
                other => MeasureTag::Custom(other.to_string()),
            };
            let out = elementary_tensor_with(&Irrep::elementary(*r1)?, &Irrep::elementary(*r2)?, measure, seed)?;
            r.row("r1", r1).row("r2", r2);
            match out {
                TensorOutcome::Decomposition(d) => {
                    let range = d.radius_range();
                    r.line(d.to_string());
                    r.row("decomposition", &d)
                        .row("continuum_families", d.continuum_families.len())
                        .row("discrete_terms", d.discrete_terms.len())
                        .row("min_radius", range.min)
                        .row("min_attained", range.min_attained);
                }
                TensorOutcome::NotImplemented { reason, .. } => {
                    r.line(format!("not implemented: {reason}"));
                    r.row("decomposition", "not_implemented").row("reason", reason);
                }
            }
        }
        RepCmd::Triangle { r1, r2, r: total, samples } => {
            let f = triangle_fiber(*r1, *r2, *total, *samples, seed)?;
            r.line(format!("fiber geometry: {:?}", f.geometry));
            r.line(format!("tangent rank: {}", opt(f.tangent_rank)));
            r.line(format!("transitive: {}", opt(f.transitive)));
            r.row("r1", r1)
                .row("r2", r2)
                .row("r", total)
                .row("geometry", format!("{:?}", f.geometry))
                .row("tangent_rank", opt(f.tangent_rank))
                .row("transitive", opt(f.transitive))
                .row("samples", f.samples.len())
                .row("max_constraint_residual", f.max_constraint_residual);
            let mut csv = String::from("t,x1,x2,x3\n");
            for u in &f.samples {
                csv.push_str(&format!("{u}\n"));
            }
            r.files.push(("fiber.csv".into(), csv));
        }
        RepCmd::Quad { edges, total, samples } => {
            let e = reals(edges, 3, "--edges")?;
            let q = quadrilateral_shape_space(e[0], e[1], e[2], *total, *samples, seed)?;
            if q.is_empty() {
                r.line("shape space is empty");
            }
            for (iso, n) in &q.counts {
                r.line(format!("{iso:?}: {n} samples"));
                r.row(format!("count_{iso:?}"), n);
            }
            r.row("samples", q.samples.len()).row("max_constraint_residual", q.max_constraint_residual);
            let mut csv = String::from("isotropy,u1,u2,u3\n");
            for s in &q.samples {
                csv.push_str(&format!("{:?},\"{}\",\"{}\",\"{}\"\n", s.isotropy, s.edges[0], s.edges[1], s.edges[2]));
            }
            r.files.push(("quad.csv".into(), csv));
        }
    }
    Ok((r, seed))
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "none".into(), |x| x.to_string())
}

fn group(s: &str) -> Result<StabilizerGroup, Failure> {
    s.parse().map_err(|e: poinc_core::Error| Failure::Usage(e.to_string()))
}

/// `elementary:R` or `CLASS:R[:SUBGROUP]`; `zero` alone is the origin.
pub fn parse_irrep(s: &str) -> Result<Irrep, Failure> {
    let usage = |m: String| Failure::Usage(format!("--irrep {s:?}: {m}"));
    let parts: Vec<&str> = s.split(':').collect();
    let radius = |p: Option<&&str>| -> Result<f64, Failure> {
        p.ok_or_else(|| usage("missing radius".into()))?
            .parse::<f64>()
            .map_err(|e| usage(e.to_string()))
    };
    if parts[0] == "elementary" {
        return Ok(Irrep::elementary(radius(parts.get(1))?)?);
    }
    let class: CausalClass = parts[0].parse().map_err(|e: poinc_core::Error| usage(e.to_string()))?;
    let base = if class == CausalClass::Zero {
        MinkowskiOrbit::zero()
    } else {
        MinkowskiOrbit::new(class, radius(parts.get(1))?)?
    };
    let sub_at = if class == CausalClass::Zero { 1 } else { 2 };
    let h = match parts.get(sub_at) {
        Some(h) => group(h)?,
        None => orbit_stabilizer(&base),
    };
    Ok(make_irrep(base, h)?)
}

pub fn intw(cmd: &IntwCmd, c: &Common) -> Outcome {
    no_config(c)?;
    let seed = c.seed.unwrap_or(0);
    let mut r = Report::default();
    match cmd {
        IntwCmd::Bridge { group: g, h1, h2, samples } => {
            let b = bridge(&group(g)?, &group(h1)?, &group(h2)?)?;
            r.line(format!("bridge {}/({} ∩ {}) = {}/{}, dimension {}", b.group, b.h1, b.h2, b.group, b.intersection, b.dim));
            r.row("group", &b.group).row("h1", &b.h1).row("h2", &b.h2).row("intersection", &b.intersection).row("dim", b.dim);
            if b.group == StabilizerGroup::SU2 {
                let rank = bridge_tangent_rank(&b, *samples, seed)?;
                r.line(format!("sampled tangent rank {rank}"));
                r.row("tangent_rank", rank);
            }
        }
        IntwCmd::CocycleDim { irrep, samples } => {
            let i = parse_irrep(irrep)?;
            let dim = invariant_field_dimension(&i.base, *samples, seed)?;
            r.line(format!("{i}"));
            r.line(format!("invariant cocycle solution space: dimension {dim}"));
            r.row("irrep", &i).row("solution_dim", dim);
            if i.kind == poinc_core::IrrepKind::Elementary && i.base.class != CausalClass::Zero {
                let e = elementary_self_intertwiners(&i, seed)?;
                r.line(format!(
                    "normalized constant {} passes the cocycle identity: {} (residual {:e})",
                    e.normalized_constant, e.report.passed, e.report.max_residual
                ));
                r.row("normalized_constant", e.normalized_constant).row("cocycle_residual", e.report.max_residual);
            }
        }
    }
    Ok((r, seed))
}

fn read(p: &Path) -> Result<String, Failure> {
    fs::read_to_string(p).map_err(|e| Failure::Compute(format!("{}: {e}", p.display())))
}

fn load_inputs(complex: &Path, labels: Option<&PathBuf>) -> Result<(Triangulation, Option<Labelling>), Failure> {
    let t = load_triangulation(&read(complex)?).map_err(|e| Failure::Compute(format!("{}: {e}", complex.display())))?;
    let l = match labels {
        Some(p) => Some(load_labels(&read(p)?).map_err(|e| Failure::Compute(format!("{}: {e}", p.display())))?),
        None => None,
    };
    Ok((t, l))
}

fn load_config(c: &Common) -> Result<AmplitudeConfig, Failure> {
    match &c.config {
        Some(p) => parse_config(&read(p)?).map_err(|e| Failure::Compute(format!("{}: {e}", p.display()))),
        None => Ok(AmplitudeConfig::default()),
    }
}

pub fn statesum(cmd: &StatesumCmd, c: &Common) -> Outcome {
    let mut r = Report::default();
    match cmd {
        StatesumCmd::Eval { complex, labels } => {
            let (t, l) = load_inputs(complex, labels.as_ref())?;
            let mut cfg = load_config(c)?;
            if let (Integrator::MonteCarlo { seed, .. }, Some(s)) = (&mut cfg.integrator, c.seed) {
                *seed = s;
            }
            let seed = match cfg.integrator {
                Integrator::MonteCarlo { seed, .. } => seed,
                Integrator::Grid { .. } => c.seed.unwrap_or(0),
            };
            let z = evaluate_z_with(&t, &l.unwrap_or_default(), &cfg)?;
            let [v, e, f, te, s] = t.counts();
            r.line(format!("complex: {v} vertices, {e} edges, {f} triangles, {te} tetrahedra, {s} simplices"));
            r.line(format!("integrator: {}", z.integrator));
            match z.standard_error {
                Some(se) => r.line(format!("Z = {:e} ± {:e}", z.value, se)),
                None => r.line(format!("Z = {:e}", z.value)),
            };
            r.line(format!("admissible points: {} of {}", z.admissible_points, z.points));
            r.row("value", z.value)
                .row("standard_error", opt(z.standard_error))
                .row("cutoff", z.cutoff)
                .row("integrator", z.integrator)
                .row("points", z.points)
                .row("admissible_points", z.admissible_points)
                .row("color_volume", z.color_volume)
                .row("constant_factor", z.constant_factor)
                .row("normalization", z.normalization);
            for (k, f) in z.five_j.iter().enumerate() {
                r.row(format!("five_j_{k}"), f);
            }
            Ok((r, seed))
        }
        StatesumCmd::Sphericity { complex, labels, resolutions, trials } => {
            if c.config.is_some() {
                return Err(Failure::Usage("--config does not apply to statesum sphericity".into()));
            }
            if resolutions.is_empty() {
                return Err(Failure::Usage("--resolutions needs at least one value".into()));
            }
            let seed = c.seed.unwrap_or(0);
            let (t, l) = load_inputs(complex, labels.as_ref())?;
            let l = match l {
                Some(l) => l,
                None => time_ordered_labelling(&t, |v| v as f64)?,
            };
            let sweep = sphericity_sweep(&t, &l, resolutions, *trials, seed)?;
            for s in &sweep {
                r.line(format!("{:>6} nodes: max |plus − minus| = {:e}", s.nodes, s.max_residual));
                r.row(format!("residual_{}", s.nodes), s.max_residual);
            }
            let monotone = sweep.windows(2).all(|w| w[1].max_residual < w[0].max_residual);
            r.line(format!("monotone: {monotone}"));
            r.row("trials", trials).row("monotone", monotone);
            Ok((r, seed))
        }
    }
}
