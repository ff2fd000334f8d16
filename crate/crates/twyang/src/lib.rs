//! Exact computer algebra for twisted Yangians of types B, C and D.

pub mod classify;
pub mod error;
pub mod exact;
#[doc(hidden)]
pub mod guide;
pub mod io;
pub mod reps;
pub mod rk;
pub mod tensor;

pub use error::TwError;
