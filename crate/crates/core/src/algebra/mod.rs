//! Exact arithmetic shared by the numeric modules.

pub mod gauss;
pub mod matrix;
pub mod poly;
pub mod ring;

pub use gauss::{GaussInt, GaussRat};
pub use matrix::Matrix;
pub use poly::Poly;
pub use ring::{Field, Ring};
