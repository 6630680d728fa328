//! Exact computations on finite complex reflection groups.

pub mod abelian;
pub mod braid;
pub mod cyclo;
pub mod error;
pub mod group;
pub mod invariants;
pub mod matrix;
pub mod modp;
pub mod reflection;

pub use abelian::{AbelianInvariants, ExactnessReport, LinearFormProduct};
pub use braid::{BraidRank, ExtensionReport, OrbitCharacter};
pub use cyclo::Cyclotomic;
pub use error::{Error, Result};
pub use group::{
    ExceptionalRecord, Family, GroupElement, MonomialElement, ReflectionGroup, Subgroup,
};
pub use matrix::Matrix;
pub use reflection::{Arrangement, Hyperplane, HyperplaneRecord, StabilizerData};
