//! Exact computations with modular vertex algebras: the divided-power Hopf
//! algebra of sl2 over F_p, truncated affine and Virasoro vacuum algebras,
//! contragredient duals and invariant bilinear forms.

pub mod dual;
pub mod error;
pub mod field;
pub mod forms;
pub mod hopf;
pub mod identity;
pub mod lie;
pub mod linalg;
pub mod series;
pub mod vacuum;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Fp, PrimeField};
