//! Fixtures shared by the benchmarks.

use poinc_core::rng::stream_rng;
use poinc_core::statesum::{time_ordered_labelling, TetraField};
use poinc_core::{AmplitudeConfig, Labelling, Triangulation};
use poinc_core::statesum::Integrator;

/// The single 4-simplex with colors `|t_a − t_b|`, `t_v = v`.
pub fn labelled_simplex() -> (Triangulation, Labelling) {
    let t = Triangulation::single_simplex();
    let l = time_ordered_labelling(&t, |v| v as f64).expect("time ordering is admissible");
    (t, l)
}

pub fn ridge_fields(seed: u64) -> [TetraField; 5] {
    let mut rng = stream_rng(seed, 0);
    std::array::from_fn(|_| TetraField::random_ridge(&mut rng))
}

pub fn grid_config(resolution: usize) -> AmplitudeConfig {
    AmplitudeConfig {
        integrator: Integrator::Grid { resolution },
        ..Default::default()
    }
}

pub fn monte_carlo_config(samples: usize) -> AmplitudeConfig {
    AmplitudeConfig {
        integrator: Integrator::MonteCarlo { samples, seed: 1 },
        ..Default::default()
    }
}
