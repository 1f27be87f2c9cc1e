//! Amplitude strategies, cutoff and integrator for the state sum.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum FaceAmplitude {
    Unit,
    /// `ρ_f² + n²`, with `ρ_f` the radius of the triangle fiber of the face.
    BcWeight { n: f64 },
    /// Step function of the largest face color: `(threshold, value)` pairs
    /// sorted by threshold; colors below the first threshold get 0.
    Table(Vec<(f64, f64)>),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum TetraAmplitude {
    Unit,
    Constant(f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeWeight {
    Rho,
    Unit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Integrator {
    MonteCarlo { samples: usize, seed: u64 },
    /// Midpoint rule with `resolution` cells per edge.
    Grid { resolution: usize },
}

impl fmt::Display for Integrator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Integrator::MonteCarlo { samples, seed } => write!(f, "monte_carlo(samples={samples},seed={seed})"),
            Integrator::Grid { resolution } => write!(f, "grid(resolution={resolution})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeConfig {
    pub face_amplitude: FaceAmplitude,
    pub tetra_amplitude: TetraAmplitude,
    pub edge_weight: EdgeWeight,
    /// Upper limit `Λ` of every edge color.
    pub cutoff: f64,
    pub integrator: Integrator,
    pub normalization: f64,
    /// Sphere nodes for the 5j traces.
    pub five_j_nodes: usize,
}

impl Default for AmplitudeConfig {
    fn default() -> Self {
        Self {
            face_amplitude: FaceAmplitude::Unit,
            tetra_amplitude: TetraAmplitude::Unit,
            edge_weight: EdgeWeight::Rho,
            cutoff: 1.0,
            integrator: Integrator::Grid { resolution: 4 },
            normalization: 1.0,
            five_j_nodes: 256,
        }
    }
}

pub const CONFIG_KEYS: &[&str] = &[
    "face_amplitude",
    "face_n",
    "face_table",
    "tetra_amplitude",
    "tetra_constant",
    "edge_weight",
    "cutoff",
    "integrator",
    "resolution",
    "samples",
    "seed",
    "normalization",
    "five_j_nodes",
];

impl AmplitudeConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.cutoff > 0.0 && self.cutoff.is_finite()) {
            return Err(Error::InvalidInput(format!("cutoff must be positive, got {}", self.cutoff)));
        }
        let n = match self.integrator {
            Integrator::MonteCarlo { samples, .. } => samples,
            Integrator::Grid { resolution } => resolution,
        };
        if n == 0 {
            return Err(Error::InvalidInput("samples and resolution must be ≥ 1".into()));
        }
        if self.five_j_nodes == 0 || !self.normalization.is_finite() {
            return Err(Error::InvalidInput("five_j_nodes must be ≥ 1 and normalization finite".into()));
        }
        if let FaceAmplitude::Table(t) = &self.face_amplitude {
            if t.is_empty() || t.windows(2).any(|w| w[0].0 >= w[1].0) {
                return Err(Error::InvalidInput("face table needs increasing thresholds".into()));
            }
        }
        Ok(())
    }

    /// Flat `key = value` text accepted by [`parse_config`].
    pub fn to_text(&self) -> String {
        let mut out = Vec::new();
        match &self.face_amplitude {
            FaceAmplitude::Unit => out.push("face_amplitude = unit".to_string()),
            FaceAmplitude::BcWeight { n } => {
                out.push("face_amplitude = bc_weight".into());
                out.push(format!("face_n = {n:e}"));
            }
            FaceAmplitude::Table(t) => {
                out.push("face_amplitude = table".into());
                let cells: Vec<String> = t.iter().map(|(a, b)| format!("{a:e}:{b:e}")).collect();
                out.push(format!("face_table = {}", cells.join(", ")));
            }
        }
        match self.tetra_amplitude {
            TetraAmplitude::Unit => out.push("tetra_amplitude = unit".into()),
            TetraAmplitude::Constant(c) => {
                out.push("tetra_amplitude = constant".into());
                out.push(format!("tetra_constant = {c:e}"));
            }
        }
        out.push(format!(
            "edge_weight = {}",
            match self.edge_weight {
                EdgeWeight::Rho => "rho",
                EdgeWeight::Unit => "unit",
            }
        ));
        out.push(format!("cutoff = {:e}", self.cutoff));
        match self.integrator {
            Integrator::MonteCarlo { samples, seed } => {
                out.push("integrator = monte_carlo".into());
                out.push(format!("samples = {samples}"));
                out.push(format!("seed = {seed}"));
            }
            Integrator::Grid { resolution } => {
                out.push("integrator = grid".into());
                out.push(format!("resolution = {resolution}"));
            }
        }
        out.push(format!("normalization = {:e}", self.normalization));
        out.push(format!("five_j_nodes = {}", self.five_j_nodes));
        out.join("\n") + "\n"
    }
}

/// Parses `key = value` lines (`#` comments); missing keys keep their
/// defaults.
pub fn parse_config(text: &str) -> Result<AmplitudeConfig> {
    let mut cfg = AmplitudeConfig::default();
    let mut face = None::<String>;
    let mut face_n = 0.0;
    let mut table = None::<Vec<(f64, f64)>>;
    let mut tetra = None::<String>;
    let mut tetra_c = 1.0;
    let mut integrator = None::<String>;
    let (mut resolution, mut samples, mut seed) = (4usize, 100_000usize, 0u64);
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: i + 1, msg };
        let (k, v) = line.split_once('=').ok_or_else(|| err(format!("expected `key = value`, got {line:?}")))?;
        let (k, v) = (k.trim(), v.trim());
        let real = |v: &str| v.parse::<f64>().map_err(|e| err(format!("{k}: {e}")));
        let count = |v: &str| v.parse::<usize>().map_err(|e| err(format!("{k}: {e}")));
        match k {
            "face_amplitude" => face = Some(v.to_string()),
            "face_n" => face_n = real(v)?,
            "face_table" => {
                let cells = v
                    .split(',')
                    .map(|c| {
                        let (a, b) = c.split_once(':').ok_or_else(|| err(format!("table cell {c:?} needs `threshold:value`")))?;
                        Ok((real(a.trim())?, real(b.trim())?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                table = Some(cells);
            }
            "tetra_amplitude" => tetra = Some(v.to_string()),
            "tetra_constant" => tetra_c = real(v)?,
            "edge_weight" => {
                cfg.edge_weight = match v {
                    "rho" => EdgeWeight::Rho,
                    "unit" => EdgeWeight::Unit,
                    _ => return Err(err(format!("edge_weight must be rho or unit, got {v:?}"))),
                }
            }
            "cutoff" => cfg.cutoff = real(v)?,
            "integrator" => integrator = Some(v.to_string()),
            "resolution" => resolution = count(v)?,
            "samples" => samples = count(v)?,
            "seed" => seed = v.parse().map_err(|e| err(format!("seed: {e}")))?,
            "normalization" => cfg.normalization = real(v)?,
            "five_j_nodes" => cfg.five_j_nodes = count(v)?,
            _ => return Err(err(format!("unknown key {k:?}; known keys: {}", CONFIG_KEYS.join(", ")))),
        }
    }
    let bad = |what: &str, v: &str| Error::InvalidInput(format!("unknown {what} {v:?}"));
    cfg.face_amplitude = match face.as_deref() {
        None | Some("unit") => FaceAmplitude::Unit,
        Some("bc_weight") => FaceAmplitude::BcWeight { n: face_n },
        Some("table") => FaceAmplitude::Table(table.ok_or_else(|| Error::InvalidInput("face_amplitude = table needs face_table".into()))?),
        Some(v) => return Err(bad("face_amplitude", v)),
    };
    cfg.tetra_amplitude = match tetra.as_deref() {
        None | Some("unit") => TetraAmplitude::Unit,
        Some("constant") => TetraAmplitude::Constant(tetra_c),
        Some(v) => return Err(bad("tetra_amplitude", v)),
    };
    cfg.integrator = match integrator.as_deref() {
        None | Some("grid") => Integrator::Grid { resolution },
        Some("monte_carlo") => Integrator::MonteCarlo { samples, seed },
        Some(v) => return Err(bad("integrator", v)),
    };
    cfg.validate()?;
    Ok(cfg)
}
