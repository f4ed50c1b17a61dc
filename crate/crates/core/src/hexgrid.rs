//! Hexagonal lattice geometry for the "even-r" horizontal (pointy-top) layout.
//!
//! Cells are stored by [`OffsetCoord`] (`col`, `row`) and reasoned about in
//! [`CubeCoord`]s, where distance, adjacency and line traversal are uniform.
//! Row `z` grows southwards; even rows sit half a cell east of odd rows.
//!
//! Geometry that does not depend on a particular chart ("lattice space") uses
//! the hexagon side as the unit length: the center of cube `(x, _, z)` sits at
//! `(√3·(x + z/2), 1.5·z)`, with the second axis pointing south.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// Sampling step along a segment, in hexagon sides.
pub const LINE_SAMPLE_STEP: f64 = 0.25;

/// Distances within this many lattice units of the minimum count as ties.
const TIE_EPS: f64 = 1e-9;

/// Cube coordinate; `x + y + z == 0` is enforced on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[i32; 3]", into = "[i32; 3]")]
pub struct CubeCoord {
    x: i32,
    y: i32,
    z: i32,
}

/// Unit directions, east first then counterclockwise (NE, NW, W, SW, SE).
pub const DIRECTIONS: [CubeCoord; 6] = [
    CubeCoord { x: 1, y: -1, z: 0 },
    CubeCoord { x: 1, y: 0, z: -1 },
    CubeCoord { x: 0, y: 1, z: -1 },
    CubeCoord { x: -1, y: 1, z: 0 },
    CubeCoord { x: -1, y: 0, z: 1 },
    CubeCoord { x: 0, y: -1, z: 1 },
];

impl CubeCoord {
    pub const ORIGIN: CubeCoord = CubeCoord { x: 0, y: 0, z: 0 };

    pub fn new(x: i32, y: i32, z: i32) -> Result<Self> {
        if x as i64 + y as i64 + z as i64 != 0 {
            return Err(Error::InvalidCube { x, y, z });
        }
        Ok(CubeCoord { x, y, z })
    }

    /// Builds a coordinate from its `x` and `z` axes; `y` is implied.
    pub fn from_xz(x: i32, z: i32) -> Self {
        CubeCoord { x, y: -x - z, z }
    }

    pub fn x(self) -> i32 {
        self.x
    }

    pub fn y(self) -> i32 {
        self.y
    }

    pub fn z(self) -> i32 {
        self.z
    }

    /// Lattice distance: half the sum of the absolute axis differences.
    pub fn distance(self, other: CubeCoord) -> u32 {
        let sum =
            (self.x - other.x).unsigned_abs() + (self.y - other.y).unsigned_abs() + (self.z - other.z).unsigned_abs();
        sum / 2
    }

    pub fn neighbors(self) -> [CubeCoord; 6] {
        DIRECTIONS.map(|d| self + d)
    }

    pub fn to_offset(self) -> OffsetCoord {
        cube_to_offset(self)
    }

    /// Center in lattice space (hexagon side = 1, second axis southwards).
    pub fn center(self) -> (f64, f64) {
        (SQRT_3 * (self.x as f64 + self.z as f64 / 2.0), 1.5 * self.z as f64)
    }

    /// The cell whose center is nearest a lattice-space point.
    ///
    /// Exact ties go to the smaller row, then the smaller column.
    pub fn nearest(px: f64, py: f64) -> CubeCoord {
        let mut tied = nearest_tied(px, py);
        tied.sort_by_key(|c| {
            let o = c.to_offset();
            (o.row, o.col)
        });
        tied[0]
    }
}

impl std::ops::Add for CubeCoord {
    type Output = CubeCoord;

    fn add(self, rhs: CubeCoord) -> CubeCoord {
        CubeCoord {
            x: self.x + rhs.x,
            y: self.y + rhs.y,
            z: self.z + rhs.z,
        }
    }
}

impl std::ops::Sub for CubeCoord {
    type Output = CubeCoord;

    fn sub(self, rhs: CubeCoord) -> CubeCoord {
        CubeCoord {
            x: self.x - rhs.x,
            y: self.y - rhs.y,
            z: self.z - rhs.z,
        }
    }
}

impl TryFrom<[i32; 3]> for CubeCoord {
    type Error = Error;

    fn try_from([x, y, z]: [i32; 3]) -> Result<Self> {
        CubeCoord::new(x, y, z)
    }
}

impl From<CubeCoord> for [i32; 3] {
    fn from(c: CubeCoord) -> Self {
        [c.x, c.y, c.z]
    }
}

impl fmt::Display for CubeCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// Storage address of a cell: column and row indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OffsetCoord {
    pub col: i32,
    pub row: i32,
}

impl OffsetCoord {
    pub const fn new(col: i32, row: i32) -> Self {
        OffsetCoord { col, row }
    }

    pub fn to_cube(self) -> CubeCoord {
        offset_to_cube(self)
    }
}

impl fmt::Display for OffsetCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(col {}, row {})", self.col, self.row)
    }
}

/// `col = x + (z + (z & 1)) / 2`, `row = z`.
pub fn cube_to_offset(c: CubeCoord) -> OffsetCoord {
    OffsetCoord {
        col: c.x + (c.z + (c.z & 1)) / 2,
        row: c.z,
    }
}

/// `x = col - (row + (row & 1)) / 2`, `z = row`, `y = -x - z`.
pub fn offset_to_cube(o: OffsetCoord) -> CubeCoord {
    let x = o.col - (o.row + (o.row & 1)) / 2;
    CubeCoord::from_xz(x, o.row)
}

pub fn cube_distance(u: CubeCoord, v: CubeCoord) -> u32 {
    u.distance(v)
}

pub fn neighbors(c: CubeCoord) -> [CubeCoord; 6] {
    c.neighbors()
}

/// A longitude/latitude pair in decimal degrees, treated as a flat plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct GeoPoint {
    pub lon: f64,
    pub lat: f64,
}

impl GeoPoint {
    pub const fn new(lon: f64, lat: f64) -> Self {
        GeoPoint { lon, lat }
    }

    pub fn is_finite(&self) -> bool {
        self.lon.is_finite() && self.lat.is_finite()
    }

    /// Planar distance in degrees.
    pub fn distance(&self, other: &GeoPoint) -> f64 {
        (self.lon - other.lon).hypot(self.lat - other.lat)
    }
}

impl From<[f64; 2]> for GeoPoint {
    fn from([lon, lat]: [f64; 2]) -> Self {
        GeoPoint { lon, lat }
    }
}

impl From<GeoPoint> for [f64; 2] {
    fn from(p: GeoPoint) -> Self {
        [p.lon, p.lat]
    }
}

/// Placement of the even-r lattice over a chart.
///
/// `origin_*` is the chart's upper-left corner; `size` is the hexagon side in
/// degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HexLayout {
    pub origin_lon: f64,
    pub origin_lat: f64,
    pub size: f64,
}

impl HexLayout {
    pub fn new(origin_lon: f64, origin_lat: f64, size: f64) -> Result<Self> {
        if !(size > 0.0 && size.is_finite()) {
            return Err(Error::InvalidChart(format!(
                "hexagon size must be positive and finite, got {size}"
            )));
        }
        if !(origin_lon.is_finite() && origin_lat.is_finite()) {
            return Err(Error::InvalidChart("layout origin must be finite".into()));
        }
        Ok(HexLayout {
            origin_lon,
            origin_lat,
            size,
        })
    }

    /// Column pitch, `√3·size`.
    pub fn e_x(&self) -> f64 {
        SQRT_3 * self.size
    }

    /// Row pitch, `1.5·size`.
    pub fn e_y(&self) -> f64 {
        1.5 * self.size
    }

    /// Center of a cell.
    ///
    /// Row 0 column 0 sits at `(x_o + √3/2·size, y_o − size)`; each column
    /// adds `e_x` and each row subtracts `e_y`. Odd rows are drawn half a
    /// column west of even rows so that geometric adjacency agrees with the
    /// even-r cube conversion.
    pub fn grid_to_geo(&self, o: OffsetCoord) -> GeoPoint {
        let (x, y) = o.to_cube().center();
        self.lattice_to_geo(x, y)
    }

    pub fn cube_to_geo(&self, c: CubeCoord) -> GeoPoint {
        let (x, y) = c.center();
        self.lattice_to_geo(x, y)
    }

    /// Offset coordinate of the hexagon whose center is nearest `p`.
    pub fn geo_to_grid(&self, p: GeoPoint) -> OffsetCoord {
        let (x, y) = self.geo_to_lattice(p);
        CubeCoord::nearest(x, y).to_offset()
    }

    pub fn lattice_to_geo(&self, x: f64, y: f64) -> GeoPoint {
        GeoPoint {
            lon: self.origin_lon + SQRT_3 / 2.0 * self.size + x * self.size,
            lat: self.origin_lat - self.size - y * self.size,
        }
    }

    pub fn geo_to_lattice(&self, p: GeoPoint) -> (f64, f64) {
        (
            (p.lon - self.origin_lon - SQRT_3 / 2.0 * self.size) / self.size,
            (self.origin_lat - self.size - p.lat) / self.size,
        )
    }

    /// The six corners of a cell's hexagon, counterclockwise from the east-north-east one.
    pub fn hex_corners(&self, o: OffsetCoord) -> [GeoPoint; 6] {
        let c = self.grid_to_geo(o);
        std::array::from_fn(|k| {
            let angle = std::f64::consts::PI / 6.0 + std::f64::consts::PI / 3.0 * k as f64;
            GeoPoint::new(c.lon + self.size * angle.cos(), c.lat + self.size * angle.sin())
        })
    }
}

pub fn grid_to_geo(layout: &HexLayout, o: OffsetCoord) -> GeoPoint {
    layout.grid_to_geo(o)
}

pub fn geo_to_grid(layout: &HexLayout, p: GeoPoint) -> OffsetCoord {
    layout.geo_to_grid(p)
}

fn cube_round(fx: f64, fz: f64) -> CubeCoord {
    let fy = -fx - fz;
    let (rx, ry, rz) = (fx.round(), fy.round(), fz.round());
    let (dx, dy, dz) = ((rx - fx).abs(), (ry - fy).abs(), (rz - fz).abs());
    if dx > dy && dx > dz {
        CubeCoord::from_xz((-ry - rz) as i32, rz as i32)
    } else if dy > dz {
        CubeCoord::from_xz(rx as i32, rz as i32)
    } else {
        CubeCoord::from_xz(rx as i32, (-rx - ry) as i32)
    }
}

/// All cells whose centers are (within rounding) nearest to a lattice point.
fn nearest_tied(px: f64, py: f64) -> Vec<CubeCoord> {
    let fz = py / 1.5;
    let fx = px / SQRT_3 - fz / 2.0;
    let guess = cube_round(fx, fz);
    let dist = |c: CubeCoord| {
        let (cx, cy) = c.center();
        (cx - px).hypot(cy - py)
    };
    let mut candidates: Vec<(CubeCoord, f64)> = std::iter::once(guess)
        .chain(guess.neighbors())
        .map(|c| (c, dist(c)))
        .collect();
    let best = candidates.iter().map(|&(_, d)| d).fold(f64::INFINITY, f64::min);
    candidates.retain(|&(_, d)| d - best <= TIE_EPS);
    candidates.into_iter().map(|(c, _)| c).collect()
}

/// Cells crossed by the straight segment between two cell centers.
///
/// The segment is sampled every [`LINE_SAMPLE_STEP`] sides; each sample
/// contributes its nearest cell, or every tied cell when it falls on a
/// boundary. The result starts at `a`, ends at `b` and holds no duplicates.
pub fn line_cells(a: CubeCoord, b: CubeCoord) -> Vec<CubeCoord> {
    let (ax, ay) = a.center();
    let (bx, by) = b.center();
    sample_segment(ax, ay, bx, by, LINE_SAMPLE_STEP, |x, y| {
        let mut tied = nearest_tied(x, y);
        tied.sort_by_key(|c| {
            let o = c.to_offset();
            (o.row, o.col)
        });
        tied
    })
}

pub(crate) fn sample_segment<C, F>(ax: f64, ay: f64, bx: f64, by: f64, step: f64, cells_at: F) -> Vec<C>
where
    C: Copy + Eq + std::hash::Hash,
    F: Fn(f64, f64) -> Vec<C>,
{
    let len = (bx - ax).hypot(by - ay);
    let samples = ((len / step).ceil() as usize).max(1);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for i in 0..=samples {
        let t = i as f64 / samples as f64;
        let (x, y) = if i == samples {
            (bx, by)
        } else {
            (ax + (bx - ax) * t, ay + (by - ay) * t)
        };
        for c in cells_at(x, y) {
            if seen.insert(c) {
                out.push(c);
            }
        }
    }
    out
}
