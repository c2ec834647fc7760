//! Bordered Floer computations on torus-boundary knot complements.

pub mod algebra;
pub mod cfk;
pub mod error;
pub mod f2;
pub mod io;
pub mod iso;
pub mod ktd;
pub mod morphism;
pub mod type_d;
pub mod type_da;

pub use algebra::{AlgebraElement, Idempotent};
pub use cfk::{KnotArrow, KnotComplex, KnotGenerator};
pub use error::{Error, Result};
pub use type_d::{DArrow, TypeDModule};
pub use type_da::{DAAction, TypeDAModule};
