mod certify;
mod flow;
mod lowerbound;
mod problem;
mod run;

pub use certify::{cmd_eagc, cmd_lyapunov, cmd_stepsize};
pub use flow::cmd_flow;
pub use lowerbound::cmd_lowerbound;
pub use run::cmd_run;
