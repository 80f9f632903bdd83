//! Finite loops given by Cayley tables, their autotopism and isomorphism
//! searches, and the Bryant-Schneider group together with its Smarandache
//! analogue relative to a chosen S-subgroup.
//!
//! Maps act on the right throughout: `xθ` is `theta.apply(x)` and `θφ`
//! means "first `θ`, then `φ`".
//!
//! ```
//! use loopforge_core::{fixtures, sbs, SLoopContext, SearchCap};
//!
//! let ctx = SLoopContext::with_elements(fixtures::cyclic(4), vec![0, 2]).unwrap();
//! let sbs = sbs::sbs_group(&ctx, SearchCap::default()).unwrap();
//! assert_eq!(sbs.len(), 4);
//! ```

pub mod catalog;
pub mod error;
pub mod fixtures;
pub mod group;
pub mod isotopy;
pub mod loops;
pub mod perm;
pub mod sbs;
mod search;

pub use catalog::{
    generate_catalog, generate_loops, normalize, read_table, write_table, CatalogEntry,
    GenerateOptions,
};
pub use error::{Error, Result};
pub use isotopy::{
    automorphism_group, autotopism_group, isomorphisms, principal_isotope, s_isomorphisms,
    smarandache_principal_isotope, Autotopism, PrincipalIsotope, SIsoSemantics,
};
pub use loops::{LoopTable, SLoopContext, SubgroupSet};
pub use perm::Perm;
pub use sbs::{
    CardinalityReport, GroupOfPerms, LoopReport, OmegaElement, SpecialMapWitness, TheoremId,
};
pub use search::SearchCap;
