pub mod algebra;
pub mod bimodule;
pub mod corollaries;
pub mod engel;
pub mod error;
pub mod families;
pub mod field;
pub mod io;
pub mod linalg;
pub mod report;

pub use algebra::{Element, Ideal, LeibnizAlgebra, LieSet};
pub use bimodule::{Bimodule, Submodule};
pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use linalg::{Matrix, Subspace, Vector};
