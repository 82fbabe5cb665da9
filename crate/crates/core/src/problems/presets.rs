//! Named problem configurations with their starting points and step sizes.

use crate::algorithms::AlgoKind;
use crate::error::{Error, Result};
use crate::saddle::{Point, SaddleProblem};

use super::{make_bilinear, make_huber_saddle, make_ouyang_qp, make_random_monotone, HuberSaddleParams};

pub const PRESET_NAMES: [&str; 4] = [
    "huber-default",
    "ouyang-200",
    "bilinear-unit",
    "random-monotone:<n>:<seed>",
];

/// Default step sizes (`α`, or `α₀` for EAG-V) per method.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepDefaults {
    pub eag_c: f64,
    pub eag_v: f64,
    pub eg: f64,
    pub popov: f64,
    pub other: f64,
}

impl StepDefaults {
    pub fn for_kind(&self, kind: AlgoKind) -> f64 {
        match kind {
            AlgoKind::EagC => self.eag_c,
            AlgoKind::EagV => self.eag_v,
            AlgoKind::Eg => self.eg,
            AlgoKind::Popov => self.popov,
            _ => self.other,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Preset {
    pub name: String,
    pub problem: SaddleProblem,
    pub z0: Point,
    pub steps: StepDefaults,
    /// Choices recorded alongside outputs.
    pub notes: Vec<String>,
}

impl Preset {
    pub fn default_step(&self, kind: AlgoKind) -> f64 {
        self.steps.for_kind(kind)
    }
}

/// Looks up a preset by name.
pub fn resolve_preset(name: &str) -> Result<Preset> {
    let name = name.trim();
    match name {
        "huber-default" => {
            let s = std::f64::consts::FRAC_1_SQRT_2;
            Ok(Preset {
                name: name.into(),
                problem: make_huber_saddle(HuberSaddleParams::DEFAULT)?,
                z0: Point::from_blocks(&[s], &[s])?,
                steps: StepDefaults {
                    eag_c: 0.1,
                    eag_v: 0.1,
                    eg: 0.1,
                    popov: 0.1,
                    other: 0.1,
                },
                notes: vec![
                    "delta=1e-2 epsilon=5e-5".into(),
                    "z0=(1,1)/sqrt(2), unit norm".into(),
                ],
            })
        }
        "ouyang-200" => Ok(Preset {
            name: name.into(),
            problem: make_ouyang_qp(200)?,
            z0: Point::zeros(200, 200),
            steps: StepDefaults {
                eag_c: 0.1265,
                eag_v: 0.618,
                eg: 0.5,
                popov: 0.5,
                other: 0.1,
            },
            notes: vec!["n=200 z0=0".into()],
        }),
        "bilinear-unit" => Ok(Preset {
            name: name.into(),
            problem: make_bilinear(1.0)?,
            z0: Point::from_blocks(&[1.0], &[0.0])?,
            steps: StepDefaults {
                eag_c: 0.125,
                eag_v: 0.618,
                eg: 0.1,
                popov: 0.1,
                other: 0.1,
            },
            notes: vec!["L(x,y)=xy z0=(1,0)".into()],
        }),
        _ => {
            if let Some(rest) = name.strip_prefix("random-monotone:") {
                let mut parts = rest.split(':');
                let n = parts.next().and_then(|s| s.parse::<usize>().ok());
                let seed = parts.next().and_then(|s| s.parse::<u64>().ok());
                if let (Some(n), Some(seed), None) = (n, seed, parts.next()) {
                    return Ok(Preset {
                        name: name.into(),
                        problem: make_random_monotone(n, 1.0, seed)?,
                        z0: Point::zeros(n, n),
                        steps: StepDefaults {
                            eag_c: 0.125,
                            eag_v: 0.618,
                            eg: 0.5,
                            popov: 0.3,
                            other: 0.1,
                        },
                        notes: vec![format!("R=1 n={n} seed={seed} z0=0")],
                    });
                }
            }
            Err(Error::UnknownPreset(name.into()))
        }
    }
}
