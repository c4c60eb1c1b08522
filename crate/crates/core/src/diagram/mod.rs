//! Tangle diagrams, planar matchings, cleaved links, resolutions and states.

mod cleaved;
mod matching;
mod state;
mod tangle;

pub use cleaved::{Bridge, BridgeKind, BridgeRelation, CleavedLink, Decorated, Side};
pub use matching::{Arc, Matching};
pub use state::{ArcTerms, Circles, Resolved, State, StateSpace};
pub use tangle::{parse_tangle, Slice, TangleDiagram, TangleSide};
