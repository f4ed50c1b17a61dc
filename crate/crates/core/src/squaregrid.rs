//! Square lattice used as the comparison baseline for the hexagonal model.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hexgrid::{sample_segment, GeoPoint, OffsetCoord, LINE_SAMPLE_STEP};

/// Orthogonal steps: east, north, west, south.
pub const ORTHOGONAL: [(i32, i32); 4] = [(1, 0), (0, -1), (-1, 0), (0, 1)];

/// Diagonal steps: north-east, north-west, south-west, south-east.
pub const DIAGONAL: [(i32, i32); 4] = [(1, -1), (-1, -1), (-1, 1), (1, 1)];

const EDGE_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SquareLayout {
    pub origin_lon: f64,
    pub origin_lat: f64,
    pub side: f64,
}

impl SquareLayout {
    pub fn new(origin_lon: f64, origin_lat: f64, side: f64) -> Result<Self> {
        if !(side > 0.0 && side.is_finite()) {
            return Err(Error::InvalidChart(format!(
                "square side must be positive and finite, got {side}"
            )));
        }
        Ok(SquareLayout {
            origin_lon,
            origin_lat,
            side,
        })
    }

    pub fn grid_to_geo(&self, o: OffsetCoord) -> GeoPoint {
        GeoPoint::new(
            self.origin_lon + self.side * (o.col as f64 + 0.5),
            self.origin_lat - self.side * (o.row as f64 + 0.5),
        )
    }

    pub fn geo_to_grid(&self, p: GeoPoint) -> OffsetCoord {
        OffsetCoord::new(
            ((p.lon - self.origin_lon) / self.side).floor() as i32,
            ((self.origin_lat - p.lat) / self.side).floor() as i32,
        )
    }

    pub fn corners(&self, o: OffsetCoord) -> [GeoPoint; 4] {
        let west = self.origin_lon + self.side * o.col as f64;
        let north = self.origin_lat - self.side * o.row as f64;
        let (east, south) = (west + self.side, north - self.side);
        [
            GeoPoint::new(east, north),
            GeoPoint::new(west, north),
            GeoPoint::new(west, south),
            GeoPoint::new(east, south),
        ]
    }
}

/// Side of the square whose area equals that of a hexagon with side `hex_size`.
pub fn equal_area_side(hex_size: f64) -> f64 {
    hex_size * (1.5 * 3f64.sqrt()).sqrt()
}

/// Cells crossed by the segment between two cell centers, sampled like the
/// hexagonal version; samples on a cell edge or corner keep every touching cell.
pub fn line_cells(a: OffsetCoord, b: OffsetCoord) -> Vec<OffsetCoord> {
    let center = |o: OffsetCoord| (o.col as f64 + 0.5, o.row as f64 + 0.5);
    let (ax, ay) = center(a);
    let (bx, by) = center(b);
    sample_segment(ax, ay, bx, by, LINE_SAMPLE_STEP, |x, y| {
        let cols = span(x);
        let rows = span(y);
        let mut out = Vec::with_capacity(4);
        for &row in &rows {
            for &col in &cols {
                out.push(OffsetCoord::new(col, row));
            }
        }
        out
    })
}

fn span(v: f64) -> Vec<i32> {
    let lo = (v - EDGE_EPS).floor() as i32;
    let hi = (v + EDGE_EPS).floor() as i32;
    if lo == hi {
        vec![lo]
    } else {
        vec![lo, hi]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_area_matches_hexagon() {
        let s = 0.002;
        let hex_area = 1.5 * 3f64.sqrt() * s * s;
        let side = equal_area_side(s);
        assert!((side * side - hex_area).abs() < 1e-15);
        assert!((side - 0.0032).abs() < 5e-5);
    }

    #[test]
    fn geo_roundtrip() {
        let l = SquareLayout::new(10.0, 5.0, 0.25).unwrap();
        for row in 0..20 {
            for col in 0..20 {
                let o = OffsetCoord::new(col, row);
                assert_eq!(l.geo_to_grid(l.grid_to_geo(o)), o);
            }
        }
    }

    #[test]
    fn diagonal_line_touches_corner_cells() {
        let cells = line_cells(OffsetCoord::new(0, 0), OffsetCoord::new(1, 1));
        assert_eq!(cells.len(), 4);
        let straight = line_cells(OffsetCoord::new(0, 0), OffsetCoord::new(4, 0));
        assert_eq!(straight.len(), 5);
    }
}
