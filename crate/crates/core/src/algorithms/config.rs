use std::fmt;
use std::str::FromStr;

use log::warn;

use crate::certificates::check_eag_c_stepsize;
use crate::error::{Error, Result};

use super::trace::StoragePolicy;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgoKind {
    /// Extra anchored gradient with a constant step.
    EagC,
    /// Extra anchored gradient with the decreasing step recurrence.
    EagV,
    /// Extragradient.
    Eg,
    /// Popov's method (optimistic descent).
    Popov,
    /// Simultaneous gradient descent with anchoring.
    SimGdA,
    /// Alternating gradient descent-ascent.
    AltGda,
    /// Simultaneous gradient descent.
    SimGd,
}

impl AlgoKind {
    pub const ALL: [AlgoKind; 7] = [
        AlgoKind::EagC,
        AlgoKind::EagV,
        AlgoKind::Eg,
        AlgoKind::Popov,
        AlgoKind::SimGdA,
        AlgoKind::AltGda,
        AlgoKind::SimGd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgoKind::EagC => "eag-c",
            AlgoKind::EagV => "eag-v",
            AlgoKind::Eg => "eg",
            AlgoKind::Popov => "popov",
            AlgoKind::SimGdA => "simgd-a",
            AlgoKind::AltGda => "alt-gda",
            AlgoKind::SimGd => "simgd",
        }
    }

    /// Counted operator calls per iteration.
    pub fn evals_per_iter(self) -> u64 {
        match self {
            AlgoKind::EagC | AlgoKind::EagV | AlgoKind::Eg | AlgoKind::AltGda => 2,
            AlgoKind::Popov | AlgoKind::SimGdA | AlgoKind::SimGd => 1,
        }
    }

    pub fn is_anchored_extragradient(self) -> bool {
        matches!(self, AlgoKind::EagC | AlgoKind::EagV)
    }

    /// Methods that produce half-iterates `z^{k+1/2}`.
    pub fn has_half_iterates(self) -> bool {
        matches!(self, AlgoKind::EagC | AlgoKind::EagV | AlgoKind::Eg)
    }
}

impl fmt::Display for AlgoKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgoKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        AlgoKind::ALL
            .into_iter()
            .find(|k| k.name() == key)
            .or(match key.as_str() {
                "eagc" => Some(AlgoKind::EagC),
                "eagv" => Some(AlgoKind::EagV),
                "extragradient" => Some(AlgoKind::Eg),
                "simgda" => Some(AlgoKind::SimGdA),
                "altgda" => Some(AlgoKind::AltGda),
                "gd" | "sim-gd" => Some(AlgoKind::SimGd),
                _ => None,
            })
            .ok_or_else(|| Error::Parse(format!("unknown algorithm `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgoConfig {
    pub kind: AlgoKind,
    /// Step size `α`, or the initial step `α₀` for EAG-V.
    pub alpha0: f64,
    /// Anchoring offset `δ` in `β_k = 1/(k+δ)`.
    pub anchor_delta: f64,
    /// SimGD-A exponent `p`.
    pub simgd_p: f64,
    /// SimGD-A anchoring weight `γ`.
    pub simgd_gamma: f64,
    pub iters: usize,
    pub storage: StoragePolicy,
}

impl AlgoConfig {
    pub const DEFAULT_ANCHOR_DELTA: f64 = 2.0;
    pub const DEFAULT_SIMGD_P: f64 = 0.51;
    pub const DEFAULT_SIMGD_GAMMA: f64 = 1.0;

    pub fn new(kind: AlgoKind, alpha0: f64, iters: usize) -> Self {
        Self {
            kind,
            alpha0,
            anchor_delta: Self::DEFAULT_ANCHOR_DELTA,
            simgd_p: Self::DEFAULT_SIMGD_P,
            simgd_gamma: Self::DEFAULT_SIMGD_GAMMA,
            iters,
            storage: StoragePolicy::default(),
        }
    }

    pub fn with_anchor_delta(mut self, delta: f64) -> Self {
        self.anchor_delta = delta;
        self
    }

    pub fn with_simgd(mut self, p: f64, gamma: f64) -> Self {
        self.simgd_p = p;
        self.simgd_gamma = gamma;
        self
    }

    pub fn with_storage(mut self, storage: StoragePolicy) -> Self {
        self.storage = storage;
        self
    }

    /// `β_k = 1/(k+δ)`
    pub fn beta(&self, k: usize) -> f64 {
        1.0 / (k as f64 + self.anchor_delta)
    }

    /// Checks the configuration against a problem with smoothness `R`.
    pub fn validate(&self, lipschitz: f64) -> Result<()> {
        if self.iters == 0 {
            return Err(Error::Domain("iters must be at least 1".into()));
        }
        let uses_alpha = self.kind != AlgoKind::SimGdA;
        if uses_alpha && !(self.alpha0 > 0.0 && self.alpha0.is_finite()) {
            return Err(Error::Domain(format!("step size must be positive, got {}", self.alpha0)));
        }
        let a = self.alpha0 * lipschitz;
        match self.kind {
            AlgoKind::EagC | AlgoKind::EagV => {
                if !(self.anchor_delta > 1.0 && self.anchor_delta.is_finite()) {
                    return Err(Error::Domain(format!(
                        "anchor offset must exceed 1, got {}",
                        self.anchor_delta
                    )));
                }
                if self.kind == AlgoKind::EagV && !(a < 0.75) {
                    return Err(Error::Domain(format!(
                        "EAG-V needs alpha0*R in (0, 3/4), got {a}"
                    )));
                }
                if self.kind == AlgoKind::EagC && !check_eag_c_stepsize(a) {
                    warn!("EAG-C step alpha*R = {a} violates the step-size condition; no rate is certified");
                }
            }
            AlgoKind::SimGdA => {
                if !(self.simgd_p > 0.5 && self.simgd_p < 1.0) {
                    return Err(Error::Domain(format!("SimGD-A p must lie in (1/2, 1), got {}", self.simgd_p)));
                }
                if !(self.simgd_gamma > 0.0 && self.simgd_gamma.is_finite()) {
                    return Err(Error::Domain(format!(
                        "SimGD-A gamma must be positive, got {}",
                        self.simgd_gamma
                    )));
                }
            }
            _ => {}
        }
        self.storage.validate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for k in AlgoKind::ALL {
            assert_eq!(k.name().parse::<AlgoKind>().unwrap(), k);
        }
        assert_eq!("EAG_V".parse::<AlgoKind>().unwrap(), AlgoKind::EagV);
        assert!("adam".parse::<AlgoKind>().is_err());
    }

    #[test]
    fn validation() {
        assert!(AlgoConfig::new(AlgoKind::EagV, 0.618, 10).validate(1.0).is_ok());
        assert!(AlgoConfig::new(AlgoKind::EagV, 0.75, 10).validate(1.0).is_err());
        assert!(AlgoConfig::new(AlgoKind::EagV, 0.5, 10).validate(2.0).is_err());
        assert!(AlgoConfig::new(AlgoKind::Eg, 0.1, 0).validate(1.0).is_err());
        assert!(AlgoConfig::new(AlgoKind::EagC, 0.1, 5)
            .with_anchor_delta(1.0)
            .validate(1.0)
            .is_err());
        assert!(AlgoConfig::new(AlgoKind::SimGdA, 0.0, 5).validate(1.0).is_ok());
        assert!(AlgoConfig::new(AlgoKind::SimGdA, 0.0, 5)
            .with_simgd(0.4, 1.0)
            .validate(1.0)
            .is_err());
        // permitted with a warning
        assert!(AlgoConfig::new(AlgoKind::EagC, 0.2, 5).validate(1.0).is_ok());
    }

    #[test]
    fn default_beta() {
        let c = AlgoConfig::new(AlgoKind::EagC, 0.1, 1);
        assert_eq!(c.beta(0), 0.5);
        assert_eq!(c.beta(3), 0.2);
    }
}
