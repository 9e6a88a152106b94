//! Explicit targets and witness families.

pub mod modules;
pub mod solsol;
pub mod theorem1;
pub mod theorem3;
pub mod theorem4;

pub use modules::{find_simple_module, is_irreducible, ModuleAction};
pub use solsol::solsol_construct;
pub use theorem1::{min_m_for_conclusion, theorem1_target, SemidirectTarget};
pub use theorem3::theorem3_decompose;
pub use theorem4::{theorem4_construct, Theorem4Instance};
