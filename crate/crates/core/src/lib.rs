//! Finite generalized closure spaces: arbitrary closure functions on small
//! carriers, their separation relations, maps between them, and a harness
//! that checks claims about them exhaustively.

pub mod enumerate;
pub mod error;
pub mod io;
pub mod maps;
pub mod separation;
pub mod space;
pub mod subset;

pub use enumerate::{GeneratorClass, Instance, VerificationReport, VerifyOptions};
pub use error::{Error, Result};
pub use maps::{MapProfile, SpaceMap};
pub use separation::{
    check_relation_conditions, closure_from_relation, separated_pairs, AxiomCriteria,
    ConditionReport, SeparationRelation,
};
pub use space::{AxiomProfile, Space, SymmetryProfile};
pub use subset::{GroundSet, SubsetMask, MAX_ELEMENTS};

#[cfg(test)]
#[path = "../tests/common/oracle.rs"]
mod oracle;
