//! Waypoint reduction and turn annotation for raw cell paths.
//!
//! Smoothing walks the path three nodes at a time and drops the middle node
//! when the straight corridor from the anchor to the node after it is fully
//! navigable and no less safe (its highest grid weight does not exceed the
//! highest weight along the two legs it replaces). Passes repeat until
//! nothing more can be removed.
//!
//! Turn geometry works in a local planar frame measured in nautical miles.
//! At every interior waypoint the interior angle θ between the two legs is
//! compared against the critical angle `2·atan(r_min / r_arrived)`:
//!
//! * θ ≥ critical: an inside fillet of radius `r_min` tangent to both legs,
//!   whose tangent points sit `r_min / tan(θ/2)` from the waypoint, which
//!   is never more than the arrived radius.
//! * θ < critical: the fillet would not fit inside the arrived circle. The
//!   turn instead uses an arc of radius `r_min` through the two points where
//!   the legs cross the arrived circle, with its center on the bisector on
//!   the far side of the waypoint (when `r_min` exceeds the arrived radius).
//!   This outside construction is a reconstruction, not a closed-form result.

use serde::{Deserialize, Serialize};

use crate::envmodel::EnvModel;
use crate::error::{Error, Result};
use crate::hexgrid::{GeoPoint, OffsetCoord};
use crate::search::{polyline_length, RawPath};
use crate::NMI_PER_DEGREE;

/// Interior angles this close to π are treated as straight.
const STRAIGHT_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TurnSpec {
    min_turn_radius: f64,
    arrived_radius: f64,
}

impl TurnSpec {
    /// Both radii in nautical miles.
    pub fn new(min_turn_radius: f64, arrived_radius: f64) -> Result<Self> {
        for (name, v) in [
            ("minimum turning radius", min_turn_radius),
            ("arrived radius", arrived_radius),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidTurnSpec(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(TurnSpec {
            min_turn_radius,
            arrived_radius,
        })
    }

    /// Defaults for a grid with hexagon side `size` degrees: arrived radius of
    /// two sides, minimum turning radius of one side.
    pub fn for_cell_size(size: f64) -> Result<Self> {
        let side_nmi = size * NMI_PER_DEGREE;
        TurnSpec::new(side_nmi, 2.0 * side_nmi)
    }

    pub fn min_turn_radius(&self) -> f64 {
        self.min_turn_radius
    }

    pub fn arrived_radius(&self) -> f64 {
        self.arrived_radius
    }

    /// `2·atan(min_turn_radius / arrived_radius)`, in radians.
    pub fn critical_angle(&self) -> f64 {
        2.0 * (self.min_turn_radius / self.arrived_radius).atan()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TurnCase {
    Inside,
    Outside,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Turn {
    pub center: GeoPoint,
    /// Nautical miles.
    pub radius: f64,
    pub case: TurnCase,
    /// Interior angle at the waypoint, radians.
    pub angle: f64,
    /// Distance from the waypoint to each tangent point, nautical miles.
    pub tangent_offset: f64,
    /// Tangent point on the incoming leg.
    pub entry: GeoPoint,
    /// Tangent point on the outgoing leg.
    pub exit: GeoPoint,
    /// Set when a leg was too short and the tangent offset was clamped.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Waypoint {
    pub position: GeoPoint,
    /// Nautical miles.
    pub arrived_radius: f64,
    pub turn: Option<Turn>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Route {
    pub waypoints: Vec<Waypoint>,
    /// Nautical miles along the waypoint polyline.
    pub total_distance: f64,
    /// Sailing cost of the raw path before smoothing.
    pub source_cost: f64,
    /// Highest grid weight along the smoothed corridors.
    pub max_weight: f64,
}

impl Route {
    pub fn positions(&self) -> Vec<GeoPoint> {
        self.waypoints.iter().map(|w| w.position).collect()
    }
}

/// Cells swept by the leg between two waypoints. A single lattice step is
/// its own corridor.
pub fn corridor(model: &EnvModel, a: OffsetCoord, b: OffsetCoord) -> Vec<OffsetCoord> {
    if a == b {
        vec![a]
    } else if model.lattice().adjacent(a, b) {
        vec![a, b]
    } else {
        model.lattice().line_cells(a, b)
    }
}

/// Highest weight over all leg corridors; `None` if any corridor cell is unnavigable.
pub fn corridor_max_weight(model: &EnvModel, cells: &[OffsetCoord]) -> Option<f64> {
    if cells.len() == 1 {
        return model.weight(cells[0]);
    }
    cells.windows(2).try_fold(0.0f64, |acc, w| {
        model.max_weight(&corridor(model, w[0], w[1])).map(|m| acc.max(m))
    })
}

fn smooth_pass(model: &EnvModel, cells: &[OffsetCoord]) -> Vec<OffsetCoord> {
    if cells.len() <= 2 {
        return cells.to_vec();
    }
    let mut kept = vec![cells[0]];
    for k in 1..cells.len() - 1 {
        let anchor = *kept.last().unwrap();
        let (mid, next) = (cells[k], cells[k + 1]);
        let shortcut = model.max_weight(&corridor(model, anchor, next));
        let detour = model
            .max_weight(&corridor(model, anchor, mid))
            .zip(model.max_weight(&corridor(model, mid, next)))
            .map(|(a, b)| a.max(b));
        let removable = match (shortcut, detour) {
            (Some(new), Some(old)) => new <= old,
            _ => false,
        };
        if !removable {
            kept.push(mid);
        }
    }
    kept.push(cells[cells.len() - 1]);
    kept
}

/// Drops redundant waypoints until a pass removes nothing.
pub fn smooth_cells(model: &EnvModel, cells: &[OffsetCoord]) -> Vec<OffsetCoord> {
    let mut current: Vec<OffsetCoord> = cells.to_vec();
    current.dedup();
    loop {
        let next = smooth_pass(model, &current);
        if next.len() == current.len() {
            return next;
        }
        current = next;
    }
}

/// Smoothed waypoint positions for a raw path.
pub fn smooth(model: &EnvModel, path: &RawPath) -> Vec<GeoPoint> {
    smooth_cells(model, &path.cells)
        .into_iter()
        .map(|o| model.center(o))
        .collect()
}

type V2 = (f64, f64);

fn to_nmi(p: GeoPoint) -> V2 {
    (p.lon * NMI_PER_DEGREE, p.lat * NMI_PER_DEGREE)
}

fn to_geo(v: V2) -> GeoPoint {
    GeoPoint::new(v.0 / NMI_PER_DEGREE, v.1 / NMI_PER_DEGREE)
}

fn sub(a: V2, b: V2) -> V2 {
    (a.0 - b.0, a.1 - b.1)
}

fn add_scaled(a: V2, d: V2, k: f64) -> V2 {
    (a.0 + d.0 * k, a.1 + d.1 * k)
}

fn norm(a: V2) -> f64 {
    a.0.hypot(a.1)
}

fn unit(a: V2) -> V2 {
    let n = norm(a);
    (a.0 / n, a.1 / n)
}

/// Turn geometry at `corner`, between the legs from `prev` and to `next`.
///
/// Returns `None` for a straight pass-through.
pub fn corner_turn(prev: GeoPoint, corner: GeoPoint, next: GeoPoint, spec: &TurnSpec) -> Option<Turn> {
    let (a, p, b) = (to_nmi(prev), to_nmi(corner), to_nmi(next));
    let (leg_in, leg_out) = (sub(a, p), sub(b, p));
    let (u, v) = (unit(leg_in), unit(leg_out));
    let cos = (u.0 * v.0 + u.1 * v.1).clamp(-1.0, 1.0);
    let theta = cos.acos();
    if theta >= std::f64::consts::PI - STRAIGHT_EPS {
        return None;
    }
    let bisector = {
        let s = (u.0 + v.0, u.1 + v.1);
        if norm(s) < 1e-12 {
            u
        } else {
            unit(s)
        }
    };
    let r = spec.min_turn_radius;
    let half = theta / 2.0;
    let shortest = norm(leg_in).min(norm(leg_out));
    let (case, wanted) = if theta >= spec.critical_angle() {
        (TurnCase::Inside, r / half.tan())
    } else {
        (TurnCase::Outside, spec.arrived_radius)
    };
    let degenerate = shortest < wanted;
    let offset = if degenerate { shortest / 2.0 } else { wanted };
    let center = match case {
        TurnCase::Inside => add_scaled(p, bisector, r / half.sin()),
        TurnCase::Outside => {
            let half_chord = offset * half.sin();
            let along = offset * half.cos() - (r * r - half_chord * half_chord).max(0.0).sqrt();
            add_scaled(p, bisector, along)
        }
    };
    Some(Turn {
        center: to_geo(center),
        radius: r,
        case,
        angle: theta,
        tangent_offset: offset,
        entry: to_geo(add_scaled(p, u, offset)),
        exit: to_geo(add_scaled(p, v, offset)),
        degenerate,
    })
}

/// Attaches the arrived radius to every waypoint and turn geometry to every
/// interior one.
pub fn annotate_turns(points: &[GeoPoint], spec: &TurnSpec) -> Result<Vec<Waypoint>> {
    if points.is_empty() {
        return Err(Error::InvalidPath("cannot annotate an empty waypoint list".into()));
    }
    if points.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidPath("consecutive waypoints coincide".into()));
    }
    let n = points.len();
    Ok(points
        .iter()
        .enumerate()
        .map(|(i, &position)| Waypoint {
            position,
            arrived_radius: spec.arrived_radius,
            turn: if i == 0 || i + 1 == n {
                None
            } else {
                corner_turn(points[i - 1], position, points[i + 1], spec)
            },
        })
        .collect())
}

/// Smooths a raw path and annotates the result.
pub fn build_route(model: &EnvModel, path: &RawPath, spec: &TurnSpec) -> Result<Route> {
    let cells = smooth_cells(model, &path.cells);
    let points: Vec<GeoPoint> = cells.iter().map(|&o| model.center(o)).collect();
    let max_weight = corridor_max_weight(model, &cells)
        .ok_or_else(|| Error::InvalidPath("raw path crosses unnavigable cells".into()))?;
    Ok(Route {
        waypoints: annotate_turns(&points, spec)?,
        total_distance: polyline_length(&points) * NMI_PER_DEGREE,
        source_cost: path.sailing_cost,
        max_weight,
    })
}
