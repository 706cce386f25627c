pub mod angle;
pub mod classifier;
pub mod coxeter;
pub mod error;
pub mod field;
pub mod fusion;
pub mod ghj;
pub mod linalg;
pub mod scalar;
pub mod tower;

pub use error::{Error, Result};
pub use field::CycNumber;
pub use scalar::{Float64, Scalar};
pub use tower::{ExactTower, FloatTower};
