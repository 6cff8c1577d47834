//! Distance magic and `(a, d)`-distance antimagic labelings.
//!
//! Builds Harary graphs, cycle powers and their join, lexicographic and
//! direct products; produces closed-form labelings for those families;
//! performs the replacement and `+K_1` surgeries; evaluates analytic
//! feasibility criteria; and cross-checks all of it with an exact search
//! oracle.

pub mod constructions;
pub mod criteria;
pub mod error;
pub mod families;
pub mod graph;
pub mod products;
pub mod recipes;
pub mod report;
pub mod search;

pub use error::{Error, Result};
pub use families::FamilySpec;
pub use graph::{classify, Graph, Labeling, WeightKind, WeightProfile};
pub use products::GraphSpec;
pub use search::{count_labelings, search, search_progression, Mode, Outcome, SearchSpec, Target};
