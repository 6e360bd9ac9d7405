pub mod algebra;
pub mod cli;
pub mod deformation;
pub mod diffops;
pub mod error;
pub mod isotropy;
pub mod laurent_vc;
pub mod nilpotency;
pub mod poly;
pub mod rodrigues;
pub mod sample;
pub mod vc;

pub use error::{Error, Result};
