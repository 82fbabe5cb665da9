//! Benchmark problems and reference flows.

mod affine;
mod bilinear;
mod flow;
mod huber;
mod ouyang;
mod presets;
mod random;

pub use affine::AffineSaddle;
pub use bilinear::{make_bilinear, Bilinear};
pub use flow::{flow_closed_form, integrate_flow, max_flow_deviation, FlowKind, FlowSpec, FlowTrajectory};
pub use huber::{huber, huber_derivative, make_huber_saddle, HuberSaddle, HuberSaddleParams};
pub use ouyang::{make_ouyang_qp, OuyangQp};
pub use presets::{resolve_preset, Preset, StepDefaults, PRESET_NAMES};
pub use random::{make_random_monotone, make_random_monotone_with, RandomMonotoneOptions};
