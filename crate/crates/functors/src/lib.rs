//! Sheaf-theoretic readouts of diagram objects: stalk cohomology and the
//! maps induced on it, supports, nearby/vanishing cycles with monodromy,
//! canonical isolating maps, and characteristic cycles.

pub mod cc;
pub mod cycles;
pub mod location;
pub mod stalk;
pub mod support;

pub use cc::{characteristic_cycle, CharacteristicCycle};
pub use cycles::{
    isolating_map, nearby_and_vanishing, nearby_and_vanishing_maps, NearbyVanishing,
    NearbyVanishingMaps,
};
pub use location::Location;
pub use stalk::{induced_stalk_maps, stalk_cohomology, StalkMaps, StalkReport};
pub use support::{support, SupportSet};
