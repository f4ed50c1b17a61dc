//! Planar predicates on [`GeoPoint`] rings.

use crate::hexgrid::GeoPoint;

fn cross(o: GeoPoint, a: GeoPoint, b: GeoPoint) -> f64 {
    (a.lon - o.lon) * (b.lat - o.lat) - (a.lat - o.lat) * (b.lon - o.lon)
}

fn on_segment(p: GeoPoint, a: GeoPoint, b: GeoPoint) -> bool {
    p.lon >= a.lon.min(b.lon) && p.lon <= a.lon.max(b.lon) && p.lat >= a.lat.min(b.lat) && p.lat <= a.lat.max(b.lat)
}

/// True when the closed segments `ab` and `cd` share at least one point.
pub fn segments_intersect(a: GeoPoint, b: GeoPoint, c: GeoPoint, d: GeoPoint) -> bool {
    let d1 = cross(c, d, a);
    let d2 = cross(c, d, b);
    let d3 = cross(a, b, c);
    let d4 = cross(a, b, d);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    (d1 == 0.0 && on_segment(a, c, d))
        || (d2 == 0.0 && on_segment(b, c, d))
        || (d3 == 0.0 && on_segment(c, a, b))
        || (d4 == 0.0 && on_segment(d, a, b))
}

/// Even-odd ray casting; points exactly on the boundary may go either way.
pub fn point_in_polygon(p: GeoPoint, ring: &[GeoPoint]) -> bool {
    let mut inside = false;
    let n = ring.len();
    let mut j = n - 1;
    for i in 0..n {
        let (a, b) = (ring[i], ring[j]);
        if (a.lat > p.lat) != (b.lat > p.lat) {
            let x = a.lon + (p.lat - a.lat) / (b.lat - a.lat) * (b.lon - a.lon);
            if p.lon < x {
                inside = !inside;
            }
        }
        j = i;
    }
    inside
}

/// Containment in a convex ring of either orientation, boundary included.
pub fn point_in_convex(p: GeoPoint, ring: &[GeoPoint]) -> bool {
    let mut sign = 0.0f64;
    for i in 0..ring.len() {
        let c = cross(ring[i], ring[(i + 1) % ring.len()], p);
        if c != 0.0 {
            if sign != 0.0 && c.signum() != sign {
                return false;
            }
            sign = c.signum();
        }
    }
    true
}

fn edges(ring: &[GeoPoint]) -> impl Iterator<Item = (GeoPoint, GeoPoint)> + '_ {
    (0..ring.len()).map(move |i| (ring[i], ring[(i + 1) % ring.len()]))
}

/// Whether a convex cell outline and a simple polygon overlap.
///
/// Checks polygon vertices inside the cell, cell corners or center inside the
/// polygon, and any pair of crossing edges.
pub fn cell_intersects_polygon(cell: &[GeoPoint], center: GeoPoint, polygon: &[GeoPoint]) -> bool {
    if polygon.iter().any(|&v| point_in_convex(v, cell)) {
        return true;
    }
    if point_in_polygon(center, polygon) || cell.iter().any(|&v| point_in_polygon(v, polygon)) {
        return true;
    }
    edges(cell).any(|(a, b)| edges(polygon).any(|(c, d)| segments_intersect(a, b, c, d)))
}

/// True when two non-adjacent edges of the ring touch or cross.
pub fn ring_self_intersects(ring: &[GeoPoint]) -> bool {
    let n = ring.len();
    for i in 0..n {
        let (a, b) = (ring[i], ring[(i + 1) % n]);
        for j in (i + 1)..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                continue;
            }
            let (c, d) = (ring[j], ring[(j + 1) % n]);
            if segments_intersect(a, b, c, d) {
                return true;
            }
        }
    }
    false
}
