use std::path::Path;

use minimax_core::lowerbound::HardInstance;
use minimax_core::problems::{resolve_preset, StepDefaults};
use minimax_core::{Point, SaddleProblem};

use crate::error::{CliError, CliResult};

/// A resolved `--problem` argument.
pub struct LoadedProblem {
    pub name: String,
    pub problem: SaddleProblem,
    pub z0: Point,
    pub steps: StepDefaults,
    pub notes: Vec<String>,
}

/// Resolves a preset name, `random-monotone:<n>` with the global seed, or a
/// hard-instance file written by `lowerbound --save`.
pub fn load_problem(spec: &str, seed: u64) -> CliResult<LoadedProblem> {
    let spec = spec.trim();
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path)?;
        let h = HardInstance::from_text(&text)?;
        let problem = h.saddle_problem()?;
        let r = problem.lipschitz();
        return Ok(LoadedProblem {
            name: format!("file:{spec}"),
            z0: Point::zeros(h.n, h.n),
            steps: StepDefaults {
                eag_c: 0.125 / r,
                eag_v: 0.618 / r,
                eg: 0.5 / r,
                popov: 0.3 / r,
                other: 0.1 / r,
            },
            notes: vec![format!("hard instance k={} n={} R={} D={} z0=0", h.k, h.n, h.r, h.d)],
            problem,
        });
    }
    let name = match spec.strip_prefix("random-monotone:") {
        Some(rest) if !rest.contains(':') => format!("{spec}:{seed}"),
        _ => spec.to_string(),
    };
    let p = resolve_preset(&name).map_err(|e| {
        CliError::Usage(format!("{e} (presets: huber-default, ouyang-200, bilinear-unit, random-monotone:<n>[:<seed>], or a hard-instance file)"))
    })?;
    Ok(LoadedProblem {
        name: p.name,
        problem: p.problem,
        z0: p.z0,
        steps: p.steps,
        notes: p.notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_preset_takes_global_seed() {
        let a = load_problem("random-monotone:3", 5).unwrap();
        let b = load_problem("random-monotone:3:5", 0).unwrap();
        assert_eq!(a.name, "random-monotone:3:5");
        let z = Point::new(vec![0.1, 0.2, 0.3, 0.4, 0.5, 0.6], 3).unwrap();
        assert_eq!(a.problem.eval(&z).unwrap(), b.problem.eval(&z).unwrap());
    }

    #[test]
    fn unknown_name_is_usage_error() {
        assert_eq!(load_problem("nope", 0).err().unwrap().exit_code(), 2);
    }
}
