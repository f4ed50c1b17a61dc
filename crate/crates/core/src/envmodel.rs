//! Weighted environment model built from an obstacle chart.
//!
//! Every cell is either unnavigable or carries a grid weight
//! `w = 1 + n²/4`, where `n` counts unnavigable neighbors. Cells beyond the
//! map border count as unnavigable neighbors.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom;
use crate::hexgrid::{self, CubeCoord, GeoPoint, HexLayout, OffsetCoord};
use crate::squaregrid::{self, SquareLayout, DIAGONAL, ORTHOGONAL};

/// Default ceiling on the number of cells a chart may produce.
pub const DEFAULT_MAX_CELLS: usize = 4_000_000;

/// Grid weight of a navigable cell with `n` unnavigable neighbors.
pub fn grid_weight(n: usize) -> f64 {
    1.0 + (n * n) as f64 / 4.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 4]", into = "[f64; 4]")]
pub struct BBox {
    pub min_lon: f64,
    pub min_lat: f64,
    pub max_lon: f64,
    pub max_lat: f64,
}

impl BBox {
    pub fn new(min_lon: f64, min_lat: f64, max_lon: f64, max_lat: f64) -> Result<Self> {
        let finite = [min_lon, min_lat, max_lon, max_lat].iter().all(|v| v.is_finite());
        if !finite || min_lon >= max_lon || min_lat >= max_lat {
            return Err(Error::InvalidChart(format!(
                "bbox [{min_lon}, {min_lat}, {max_lon}, {max_lat}] is empty or degenerate"
            )));
        }
        Ok(BBox {
            min_lon,
            min_lat,
            max_lon,
            max_lat,
        })
    }

    pub fn width(&self) -> f64 {
        self.max_lon - self.min_lon
    }

    pub fn height(&self) -> f64 {
        self.max_lat - self.min_lat
    }

    pub fn contains(&self, p: GeoPoint) -> bool {
        p.lon >= self.min_lon && p.lon <= self.max_lon && p.lat >= self.min_lat && p.lat <= self.max_lat
    }
}

impl TryFrom<[f64; 4]> for BBox {
    type Error = Error;

    fn try_from(v: [f64; 4]) -> Result<Self> {
        BBox::new(v[0], v[1], v[2], v[3])
    }
}

impl From<BBox> for [f64; 4] {
    fn from(b: BBox) -> Self {
        [b.min_lon, b.min_lat, b.max_lon, b.max_lat]
    }
}

/// A simple polygon stored as an open ring (no repeated closing vertex).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<GeoPoint>", into = "Vec<GeoPoint>")]
pub struct Polygon {
    ring: Vec<GeoPoint>,
}

impl Polygon {
    pub fn new(mut ring: Vec<GeoPoint>) -> Result<Self> {
        if ring.len() > 1 && ring.first() == ring.last() {
            ring.pop();
        }
        if ring.len() < 3 {
            return Err(Error::InvalidChart(format!(
                "obstacle polygon has {} vertices, need at least 3",
                ring.len()
            )));
        }
        if !ring.iter().all(GeoPoint::is_finite) {
            return Err(Error::InvalidChart("obstacle vertex is not finite".into()));
        }
        if geom::ring_self_intersects(&ring) {
            return Err(Error::InvalidChart("obstacle polygon is self-intersecting".into()));
        }
        Ok(Polygon { ring })
    }

    pub fn ring(&self) -> &[GeoPoint] {
        &self.ring
    }

    fn bounds(&self) -> (f64, f64, f64, f64) {
        self.ring.iter().fold(
            (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY),
            |(a, b, c, d), p| (a.min(p.lon), b.min(p.lat), c.max(p.lon), d.max(p.lat)),
        )
    }
}

impl TryFrom<Vec<GeoPoint>> for Polygon {
    type Error = Error;

    fn try_from(ring: Vec<GeoPoint>) -> Result<Self> {
        Polygon::new(ring)
    }
}

impl From<Polygon> for Vec<GeoPoint> {
    fn from(p: Polygon) -> Self {
        p.ring
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObstacleChart {
    pub bbox: BBox,
    #[serde(default)]
    pub obstacles: Vec<Polygon>,
}

impl ObstacleChart {
    pub fn new(bbox: BBox, obstacles: Vec<Polygon>) -> Self {
        ObstacleChart { bbox, obstacles }
    }
}

/// Lattice geometry of a model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Lattice {
    Hex(HexLayout),
    Square(SquareLayout),
}

impl Lattice {
    pub fn is_hex(&self) -> bool {
        matches!(self, Lattice::Hex(_))
    }

    pub fn center(&self, o: OffsetCoord) -> GeoPoint {
        match self {
            Lattice::Hex(l) => l.grid_to_geo(o),
            Lattice::Square(l) => l.grid_to_geo(o),
        }
    }

    pub fn locate(&self, p: GeoPoint) -> OffsetCoord {
        match self {
            Lattice::Hex(l) => l.geo_to_grid(p),
            Lattice::Square(l) => l.geo_to_grid(p),
        }
    }

    /// Cell outline, counterclockwise.
    pub fn outline(&self, o: OffsetCoord) -> Vec<GeoPoint> {
        match self {
            Lattice::Hex(l) => l.hex_corners(o).to_vec(),
            Lattice::Square(l) => l.corners(o).to_vec(),
        }
    }

    /// Cell center in lattice units (cell side = 1, second axis southwards).
    pub fn lattice_center(&self, o: OffsetCoord) -> (f64, f64) {
        match self {
            Lattice::Hex(_) => o.to_cube().center(),
            Lattice::Square(_) => (o.col as f64 + 0.5, o.row as f64 + 0.5),
        }
    }

    /// Hexagon side or square side, in degrees.
    pub fn cell_size(&self) -> f64 {
        match self {
            Lattice::Hex(l) => l.size,
            Lattice::Square(l) => l.side,
        }
    }

    /// All cells touching `o`: 6 for hexagons, 8 for squares. May leave the grid.
    pub fn ring(&self, o: OffsetCoord) -> Vec<OffsetCoord> {
        match self {
            Lattice::Hex(_) => o.to_cube().neighbors().iter().map(|c| c.to_offset()).collect(),
            Lattice::Square(_) => ORTHOGONAL
                .iter()
                .chain(DIAGONAL.iter())
                .map(|&(dc, dr)| OffsetCoord::new(o.col + dc, o.row + dr))
                .collect(),
        }
    }

    pub fn adjacent(&self, a: OffsetCoord, b: OffsetCoord) -> bool {
        match self {
            Lattice::Hex(_) => a.to_cube().distance(b.to_cube()) == 1,
            Lattice::Square(_) => {
                let (dc, dr) = ((a.col - b.col).abs(), (a.row - b.row).abs());
                dc.max(dr) == 1
            }
        }
    }

    pub fn line_cells(&self, a: OffsetCoord, b: OffsetCoord) -> Vec<OffsetCoord> {
        match self {
            Lattice::Hex(_) => hexgrid::line_cells(a.to_cube(), b.to_cube())
                .into_iter()
                .map(CubeCoord::to_offset)
                .collect(),
            Lattice::Square(_) => squaregrid::line_cells(a, b),
        }
    }
}

/// A cell's navigability label and grid weight.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub navigable: bool,
    pub weight: Option<f64>,
}

impl Cell {
    pub const BLOCKED: Cell = Cell {
        navigable: false,
        weight: None,
    };

    pub fn open(weight: f64) -> Cell {
        Cell {
            navigable: true,
            weight: Some(weight),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct BuildOptions {
    pub max_cells: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            max_cells: DEFAULT_MAX_CELLS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ModelDoc", into = "ModelDoc")]
pub struct EnvModel {
    lattice: Lattice,
    n_rows: usize,
    n_cols: usize,
    cells: Vec<Cell>,
}

impl EnvModel {
    /// Hexagonal model with the default cell budget.
    pub fn build(chart: &ObstacleChart, size: f64) -> Result<Self> {
        Self::build_hex(chart, size, &BuildOptions::default())
    }

    pub fn build_hex(chart: &ObstacleChart, size: f64, opts: &BuildOptions) -> Result<Self> {
        let layout = HexLayout::new(chart.bbox.min_lon, chart.bbox.max_lat, size)?;
        let n_cols = (chart.bbox.width() / layout.e_x()).ceil().max(1.0);
        let n_rows = (chart.bbox.height() / layout.e_y()).ceil().max(1.0);
        Self::rasterize(chart, Lattice::Hex(layout), n_rows, n_cols, opts)
    }

    pub fn build_square(chart: &ObstacleChart, side: f64, opts: &BuildOptions) -> Result<Self> {
        let layout = SquareLayout::new(chart.bbox.min_lon, chart.bbox.max_lat, side)?;
        let n_cols = (chart.bbox.width() / side).ceil().max(1.0);
        let n_rows = (chart.bbox.height() / side).ceil().max(1.0);
        Self::rasterize(chart, Lattice::Square(layout), n_rows, n_cols, opts)
    }

    fn rasterize(
        chart: &ObstacleChart,
        lattice: Lattice,
        n_rows: f64,
        n_cols: f64,
        opts: &BuildOptions,
    ) -> Result<Self> {
        let cells = n_rows * n_cols;
        if !cells.is_finite() || cells > opts.max_cells as f64 {
            return Err(Error::Capacity {
                cells: if cells.is_finite() { cells as usize } else { usize::MAX },
                max: opts.max_cells,
            });
        }
        let (n_rows, n_cols) = (n_rows as usize, n_cols as usize);
        let mut blocked = vec![false; n_rows * n_cols];
        let (pitch_x, pitch_y) = match lattice {
            Lattice::Hex(l) => (l.e_x(), l.e_y()),
            Lattice::Square(l) => (l.side, l.side),
        };
        let (origin_lon, origin_lat) = (chart.bbox.min_lon, chart.bbox.max_lat);
        for polygon in &chart.obstacles {
            let (lo_lon, lo_lat, hi_lon, hi_lat) = polygon.bounds();
            // candidate window with 2 cells of slack on every side
            let col_lo = ((lo_lon - origin_lon) / pitch_x).floor() as i64;
            let col_hi = ((hi_lon - origin_lon) / pitch_x).ceil() as i64;
            let row_lo = ((origin_lat - hi_lat) / pitch_y).floor() as i64;
            let row_hi = ((origin_lat - lo_lat) / pitch_y).ceil() as i64;
            let rows = (row_lo - 2).max(0)..=(row_hi + 2).min(n_rows as i64 - 1);
            let cols = (col_lo - 2).max(0)..=(col_hi + 2).min(n_cols as i64 - 1);
            for row in rows {
                for col in cols.clone() {
                    let idx = row as usize * n_cols + col as usize;
                    if blocked[idx] {
                        continue;
                    }
                    let o = OffsetCoord::new(col as i32, row as i32);
                    let outline = lattice.outline(o);
                    if geom::cell_intersects_polygon(&outline, lattice.center(o), polygon.ring()) {
                        blocked[idx] = true;
                    }
                }
            }
        }
        Self::from_labels(lattice, n_rows, n_cols, &blocked)
    }

    /// Model from explicit navigability labels (`true` = unnavigable), row-major.
    pub fn from_labels(lattice: Lattice, n_rows: usize, n_cols: usize, blocked: &[bool]) -> Result<Self> {
        if n_rows == 0 || n_cols == 0 {
            return Err(Error::InvalidChart("grid must have at least one row and column".into()));
        }
        if blocked.len() != n_rows * n_cols {
            return Err(Error::InvalidChart(format!(
                "expected {} labels, got {}",
                n_rows * n_cols,
                blocked.len()
            )));
        }
        let cells = blocked
            .iter()
            .map(|&b| if b { Cell::BLOCKED } else { Cell::open(1.0) })
            .collect();
        let model = EnvModel {
            lattice,
            n_rows,
            n_cols,
            cells,
        };
        Ok(model.assign_weights())
    }

    /// Recomputes every navigable cell's weight from the current labels.
    pub fn assign_weights(mut self) -> Self {
        let weights: Vec<Option<f64>> = (0..self.cells.len())
            .map(|idx| {
                let o = self.coord(idx);
                if !self.cells[idx].navigable {
                    return None;
                }
                let n = self
                    .lattice
                    .ring(o)
                    .into_iter()
                    .filter(|&nb| !self.is_navigable(nb))
                    .count();
                Some(grid_weight(n))
            })
            .collect();
        for (cell, w) in self.cells.iter_mut().zip(weights) {
            cell.weight = w;
        }
        self
    }

    /// Overrides the weight of one navigable cell. `assign_weights` undoes it.
    pub fn set_weight(&mut self, o: OffsetCoord, weight: f64) -> Result<()> {
        if !(weight >= 1.0 && weight.is_finite()) {
            return Err(Error::InvalidRequest(format!(
                "weight {weight} must be finite and >= 1"
            )));
        }
        match self.index(o) {
            Some(idx) if self.cells[idx].navigable => {
                self.cells[idx].weight = Some(weight);
                Ok(())
            }
            _ => Err(Error::InvalidRequest(format!(
                "cell {o} is not a navigable in-bounds cell"
            ))),
        }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn in_bounds(&self, o: OffsetCoord) -> bool {
        o.col >= 0 && o.row >= 0 && (o.col as usize) < self.n_cols && (o.row as usize) < self.n_rows
    }

    pub fn index(&self, o: OffsetCoord) -> Option<usize> {
        self.in_bounds(o).then(|| o.row as usize * self.n_cols + o.col as usize)
    }

    pub fn coord(&self, idx: usize) -> OffsetCoord {
        OffsetCoord::new((idx % self.n_cols) as i32, (idx / self.n_cols) as i32)
    }

    pub fn cell(&self, o: OffsetCoord) -> Option<&Cell> {
        self.index(o).map(|i| &self.cells[i])
    }

    /// False for unnavigable and out-of-bounds cells.
    pub fn is_navigable(&self, o: OffsetCoord) -> bool {
        self.cell(o).is_some_and(|c| c.navigable)
    }

    /// Weight of a navigable in-bounds cell.
    pub fn weight(&self, o: OffsetCoord) -> Option<f64> {
        self.cell(o).and_then(|c| c.weight)
    }

    pub fn center(&self, o: OffsetCoord) -> GeoPoint {
        self.lattice.center(o)
    }

    /// In-bounds cell containing a geographic point.
    pub fn locate(&self, p: GeoPoint) -> Option<OffsetCoord> {
        let o = self.lattice.locate(p);
        self.in_bounds(o).then_some(o)
    }

    pub fn navigable_count(&self) -> usize {
        self.cells.iter().filter(|c| c.navigable).count()
    }

    /// Highest weight along a set of cells; `None` if any is unnavigable.
    pub fn max_weight<'a>(&self, cells: impl IntoIterator<Item = &'a OffsetCoord>) -> Option<f64> {
        cells
            .into_iter()
            .try_fold(0.0f64, |acc, &o| self.weight(o).map(|w| acc.max(w)))
    }
}

/// Number of distinct unnavigable cells touching a path.
///
/// Only in-bounds cells count; the map border is not a hazard here.
pub fn potential_hazards(model: &EnvModel, path: &[OffsetCoord]) -> Result<usize> {
    let mut hazards = BTreeSet::new();
    for &o in path {
        if !model.is_navigable(o) {
            return Err(Error::InvalidPath(format!("path cell {o} is not navigable")));
        }
        for nb in model.lattice().ring(o) {
            if model.in_bounds(nb) && !model.is_navigable(nb) {
                hazards.insert(nb);
            }
        }
    }
    Ok(hazards.len())
}

/// Export shape: dimensions plus one row of cells per grid row.
#[derive(Serialize, Deserialize)]
struct ModelDoc {
    lattice: Lattice,
    n_rows: usize,
    n_cols: usize,
    rows: Vec<Vec<Cell>>,
}

impl From<EnvModel> for ModelDoc {
    fn from(m: EnvModel) -> Self {
        let rows = m.cells.chunks(m.n_cols).map(<[Cell]>::to_vec).collect();
        ModelDoc {
            lattice: m.lattice,
            n_rows: m.n_rows,
            n_cols: m.n_cols,
            rows,
        }
    }
}

impl TryFrom<ModelDoc> for EnvModel {
    type Error = Error;

    fn try_from(doc: ModelDoc) -> Result<Self> {
        if doc.n_rows == 0 || doc.n_cols == 0 || doc.rows.len() != doc.n_rows {
            return Err(Error::InvalidChart("model dimensions do not match its rows".into()));
        }
        let mut cells = Vec::with_capacity(doc.n_rows * doc.n_cols);
        for row in doc.rows {
            if row.len() != doc.n_cols {
                return Err(Error::InvalidChart("model row has the wrong length".into()));
            }
            for cell in row {
                let ok = match (cell.navigable, cell.weight) {
                    (true, Some(w)) => w >= 1.0 && w.is_finite(),
                    (false, None) => true,
                    _ => false,
                };
                if !ok {
                    return Err(Error::InvalidChart(format!("inconsistent cell {cell:?}")));
                }
                cells.push(cell);
            }
        }
        Ok(EnvModel {
            lattice: doc.lattice,
            n_rows: doc.n_rows,
            n_cols: doc.n_cols,
            cells,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chart(obstacles: Vec<Vec<(f64, f64)>>) -> ObstacleChart {
        let obstacles = obstacles
            .into_iter()
            .map(|r| Polygon::new(r.into_iter().map(|(x, y)| GeoPoint::new(x, y)).collect()).unwrap())
            .collect();
        ObstacleChart::new(BBox::new(0.0, 0.0, 1.0, 1.0).unwrap(), obstacles)
    }

    #[test]
    fn weight_formula_values() {
        let expected = [1.0, 1.25, 2.0, 3.25, 5.0, 7.25, 10.0];
        for (n, w) in expected.iter().enumerate() {
            assert_eq!(grid_weight(n), *w);
        }
    }

    #[test]
    fn rejects_degenerate_inputs() {
        assert!(BBox::new(1.0, 0.0, 1.0, 1.0).is_err());
        assert!(Polygon::new(vec![GeoPoint::new(0., 0.), GeoPoint::new(1., 0.)]).is_err());
        let closed = vec![
            GeoPoint::new(0., 0.),
            GeoPoint::new(1., 0.),
            GeoPoint::new(1., 1.),
            GeoPoint::new(0., 0.),
        ];
        assert_eq!(Polygon::new(closed).unwrap().ring().len(), 3);
    }

    #[test]
    fn empty_chart_is_open_water() {
        let m = EnvModel::build(&chart(vec![]), 0.05).unwrap();
        assert_eq!(m.navigable_count(), m.len());
        for idx in 0..m.len() {
            let o = m.coord(idx);
            let interior =
                o.row > 0 && o.col > 0 && (o.row as usize) < m.n_rows() - 1 && (o.col as usize) < m.n_cols() - 1;
            if interior {
                assert_eq!(m.weight(o), Some(1.0));
            } else {
                assert!(m.weight(o).unwrap() > 1.0, "border cells see the map edge");
            }
        }
    }

    #[test]
    fn full_cover_blocks_everything() {
        let m = EnvModel::build(&chart(vec![vec![(-1., -1.), (2., -1.), (2., 2.), (-1., 2.)]]), 0.05).unwrap();
        assert_eq!(m.navigable_count(), 0);
    }

    #[test]
    fn capacity_is_enforced() {
        let err = EnvModel::build_hex(&chart(vec![]), 0.001, &BuildOptions { max_cells: 1000 });
        assert!(matches!(err, Err(Error::Capacity { .. })));
    }

    #[test]
    fn hazards_definition() {
        let lattice = Lattice::Hex(HexLayout::new(0.0, 1.0, 0.01).unwrap());
        let center = OffsetCoord::new(3, 3);
        let mut blocked = vec![false; 49];
        let ring = lattice.ring(center);
        for nb in &ring[..3] {
            blocked[nb.row as usize * 7 + nb.col as usize] = true;
        }
        let m = EnvModel::from_labels(lattice, 7, 7, &blocked).unwrap();
        assert_eq!(potential_hazards(&m, &[center]).unwrap(), 3);
        assert!(potential_hazards(&m, &[ring[0]]).is_err());
    }

    #[test]
    fn model_json_rejects_inconsistent_cells() {
        let m = EnvModel::build(&chart(vec![]), 0.2).unwrap();
        let mut v = serde_json::to_value(&m).unwrap();
        v["rows"][0][0]["weight"] = serde_json::Value::Null;
        assert!(serde_json::from_value::<EnvModel>(v).is_err());
    }
}
