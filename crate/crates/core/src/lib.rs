//! Route planning over weighted hexagonal grids built from marine obstacle
//! charts.
//!
//! The pipeline runs chart → [`envmodel::EnvModel`] → [`search::plan`] →
//! [`smoothing`] → [`tour`]: a chart is rasterized into navigable cells with
//! safety weights, point-to-point routes minimise sailing cost with A*, raw
//! cell paths are thinned into waypoints with turn annotations, and an ant
//! colony orders several task points into one tour.

pub mod envmodel;
pub mod error;
mod geom;
pub mod hexgrid;
pub mod search;
pub mod smoothing;
pub mod squaregrid;
pub mod tour;

pub use envmodel::{potential_hazards, BBox, BuildOptions, Cell, EnvModel, Lattice, ObstacleChart, Polygon};
pub use error::{Error, Result};
pub use hexgrid::{CubeCoord, GeoPoint, HexLayout, OffsetCoord};
pub use search::{build_model, plan, GridMode, HeuristicMode, RawPath, SearchOutcome, SearchRequest, SearchStats};
pub use smoothing::{build_route, Route, Turn, TurnCase, TurnSpec, Waypoint};
pub use tour::{brute_force, build_network, solve, AcoConfig, TaskNetwork, TourResult};

/// Nautical miles per degree, applied to both axes of the flat chart model.
pub const NMI_PER_DEGREE: f64 = 60.0;
