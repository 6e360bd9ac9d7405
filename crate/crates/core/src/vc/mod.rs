//! Vanishing experiments `Lambda^m P^{m+k}`, their characteristic-p variant
//! and the generator of Hessian-nilpotent examples.

mod charp;
mod generate;
mod reduce;
mod run;

pub use charp::{is_degree_decreasing, run_charp};
pub use generate::{generate_hn, FrameShape, HnExample};
pub use reduce::{essential_reduction, Reduction};
pub use run::{predict_delta_power, run_vc, VcEntry, VcExperiment, VcMode, VcReport};
