pub mod connection;
pub mod error;
pub mod expr;
pub mod families;
pub mod hyper;
pub mod pochhammer;
pub mod scalar;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::{ExactScalar, FieldKind, FieldTag, NumericScalar, Scalar, Tolerance};
