//! Desk-scale universes of spaces, relations and maps, the claim catalog,
//! and the sweep/hunt harness that checks claims over those universes.

mod claims;
mod generate;
mod verify;

pub use claims::{
    catalog, find_claim, Atom, Claim, Formula, MapProp, Polarity, RelationProp, SpaceProp, Universe,
};
pub use generate::{
    all_relations, class_size, enumerate_maps, enumerate_spaces, sample_relations, sample_spaces,
    MapStream, RelationStream, SpaceSampler, SpaceStream,
};
pub use verify::{
    hunt_counterexample, universe_cost, verify_claim, HuntOutcome, Instance, VerificationReport,
    VerifyOptions, DEFAULT_BUDGET, DEFAULT_SAMPLE_CAP,
};

use crate::space::Space;

/// Hypothesis classes that spaces can be generated from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorClass {
    All,
    Isotonic,
    IsotonicPointwiseSymmetric,
    ExteriorSeparated,
    EnlargingIsotonic,
}

impl GeneratorClass {
    pub const ALL: [GeneratorClass; 5] = [
        GeneratorClass::All,
        GeneratorClass::Isotonic,
        GeneratorClass::IsotonicPointwiseSymmetric,
        GeneratorClass::ExteriorSeparated,
        GeneratorClass::EnlargingIsotonic,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            GeneratorClass::All => "all",
            GeneratorClass::Isotonic => "isotonic",
            GeneratorClass::IsotonicPointwiseSymmetric => "isotonic_pointwise_symmetric",
            GeneratorClass::ExteriorSeparated => "exterior_separated",
            GeneratorClass::EnlargingIsotonic => "enlarging_isotonic",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.tag() == tag)
    }

    /// Membership, decided by the definitional predicates.
    pub fn contains(self, space: &Space) -> bool {
        match self {
            GeneratorClass::All => true,
            GeneratorClass::Isotonic => space.is_isotonic(),
            GeneratorClass::IsotonicPointwiseSymmetric => {
                space.is_isotonic() && space.is_pointwise_symmetric()
            }
            GeneratorClass::ExteriorSeparated => space.is_exterior_separated(),
            GeneratorClass::EnlargingIsotonic => space.is_isotonic() && space.is_enlarging(),
        }
    }
}
