//! Certified lower bounds on the number of generators of profinite
//! completions of free products of finite groups, by counting homomorphisms
//! into explicitly constructed finite targets.

mod bigstr;
pub mod bounds;
pub mod constructions;
pub mod error;
pub mod format;
pub mod group;
pub mod homcount;
pub mod library;
pub mod matrix;
pub mod numtheory;
pub mod perm;
pub mod permgroup;
pub mod presentation;
pub mod selfcheck;
pub mod subgroup;

pub use error::{Error, Result};
pub use group::{CayleyTable, FiniteGroup, Realization};
pub use matrix::FpMatrix;
pub use perm::Permutation;
pub use homcount::{count_homs, HomCountResult};
pub use presentation::Presentation;
pub use bounds::{BoundCertificate, ProofKind};
