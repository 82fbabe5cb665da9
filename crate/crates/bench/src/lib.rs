//! Shared fixtures for the criterion benchmarks.

use minimax_core::problems::resolve_preset;
use minimax_core::{Point, SaddleProblem};

/// The two benchmark presets with their starting points.
pub fn benchmark_problems() -> Vec<(String, SaddleProblem, Point)> {
    ["huber-default", "ouyang-200"]
        .into_iter()
        .map(|name| {
            let p = resolve_preset(name).expect("built-in preset");
            (p.name, p.problem, p.z0)
        })
        .collect()
}
