//! Minimum-sailing-cost search between two cells.
//!
//! Stepping into cell `v` costs `step_length · w(v)`: one lattice step on
//! hexagons and orthogonal squares, `√2` on square diagonals. The start
//! cell's weight is never charged.
//!
//! The A* evaluation is `f = g + h` with `h = D(i, goal)` (plain) or
//! `h = D(i, goal) · p(i)` (guided), where the guidance value
//! `p = 3 / (4 − sinθ)` shrinks the estimate for cells near the start–goal
//! line. `p ≤ 1` and every step costs at least one lattice unit, so both
//! heuristics are admissible.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::envmodel::{BuildOptions, EnvModel, Lattice, ObstacleChart};
use crate::error::{Error, Result};
use crate::hexgrid::{GeoPoint, OffsetCoord};
use crate::squaregrid::{equal_area_side, DIAGONAL, ORTHOGONAL};
use crate::NMI_PER_DEGREE;

const SQRT_2: f64 = std::f64::consts::SQRT_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GridMode {
    Hex,
    Square4,
    Square8,
}

impl GridMode {
    pub fn is_hex(self) -> bool {
        self == GridMode::Hex
    }

    /// Whether closed cells are re-evaluated by default. Hexagonal search
    /// never needs to reopen a closed cell; square search must recheck.
    pub fn reopens_by_default(self) -> bool {
        !self.is_hex()
    }
}

impl FromStr for GridMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hex" => Ok(GridMode::Hex),
            "square4" => Ok(GridMode::Square4),
            "square8" => Ok(GridMode::Square8),
            other => Err(Error::InvalidRequest(format!("unknown grid mode `{other}`"))),
        }
    }
}

impl fmt::Display for GridMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GridMode::Hex => "hex",
            GridMode::Square4 => "square4",
            GridMode::Square8 => "square8",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HeuristicMode {
    Guided,
    Plain,
}

impl FromStr for HeuristicMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "guided" => Ok(HeuristicMode::Guided),
            "plain" => Ok(HeuristicMode::Plain),
            other => Err(Error::InvalidRequest(format!("unknown heuristic mode `{other}`"))),
        }
    }
}

impl fmt::Display for HeuristicMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HeuristicMode::Guided => "guided",
            HeuristicMode::Plain => "plain",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchRequest {
    pub start: GeoPoint,
    pub goal: GeoPoint,
    pub grid_mode: GridMode,
    pub heuristic_mode: HeuristicMode,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct PlanOptions {
    /// Overrides [`GridMode::reopens_by_default`].
    pub reopen: Option<bool>,
}

/// Sailing cost split into orthogonal and diagonal parts.
///
/// Weights are multiples of 1/4, so each part sums exactly and
/// [`Cost::value`] is a pure function of the path's multiset of steps.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Cost {
    pub straight: f64,
    pub diagonal: f64,
}

impl Cost {
    pub const ZERO: Cost = Cost {
        straight: 0.0,
        diagonal: 0.0,
    };

    pub fn value(self) -> f64 {
        self.straight + self.diagonal * SQRT_2
    }

    pub fn plus(self, step: Step) -> Cost {
        if step.diagonal {
            Cost {
                straight: self.straight,
                diagonal: self.diagonal + step.weight,
            }
        } else {
            Cost {
                straight: self.straight + step.weight,
                diagonal: self.diagonal,
            }
        }
    }
}

/// A move into a cell of weight `weight`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Step {
    pub weight: f64,
    pub diagonal: bool,
}

impl Step {
    pub fn cost(self) -> f64 {
        if self.diagonal {
            SQRT_2 * self.weight
        } else {
            self.weight
        }
    }
}

/// The cell-to-cell path found by [`plan`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawPath {
    pub cells: Vec<OffsetCoord>,
    /// Cell centers, one per cell.
    pub points: Vec<GeoPoint>,
    pub sailing_cost: f64,
    /// Center-to-center length in nautical miles.
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Number of evaluation-function computations.
    pub traversed_times: u64,
    /// Number of cells expanded (moved to the closed set).
    pub extended_nodes: u64,
    pub average_times: f64,
    #[serde(skip)]
    pub elapsed: f64,
    /// Heading changes along the raw path.
    pub turning_times: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    /// `None` when the goal is unreachable.
    pub path: Option<RawPath>,
    pub stats: SearchStats,
}

/// Cost of stepping from `u` into `v`, or `None` if no such edge exists.
pub fn sailing_cost_step(model: &EnvModel, mode: GridMode, u: OffsetCoord, v: OffsetCoord) -> Option<f64> {
    step_between(model, mode, u, v).map(Step::cost)
}

fn step_between(model: &EnvModel, mode: GridMode, u: OffsetCoord, v: OffsetCoord) -> Option<Step> {
    let weight = model.weight(v)?;
    let diagonal = match mode {
        GridMode::Hex => {
            if u.to_cube().distance(v.to_cube()) != 1 {
                return None;
            }
            false
        }
        GridMode::Square4 | GridMode::Square8 => {
            let (dc, dr) = ((v.col - u.col).abs(), (v.row - u.row).abs());
            match (dc, dr) {
                (1, 0) | (0, 1) => false,
                (1, 1) if mode == GridMode::Square8 => true,
                _ => return None,
            }
        }
    };
    Some(Step { weight, diagonal })
}

/// Navigable successors of `u` with their step descriptions.
pub fn successors(model: &EnvModel, mode: GridMode, u: OffsetCoord) -> Vec<(OffsetCoord, Step)> {
    let mut out = Vec::with_capacity(8);
    let mut push = |v: OffsetCoord, diagonal: bool| {
        if let Some(weight) = model.weight(v) {
            out.push((v, Step { weight, diagonal }));
        }
    };
    match mode {
        GridMode::Hex => {
            for n in u.to_cube().neighbors() {
                push(n.to_offset(), false);
            }
        }
        GridMode::Square4 | GridMode::Square8 => {
            for (dc, dr) in ORTHOGONAL {
                push(OffsetCoord::new(u.col + dc, u.row + dr), false);
            }
            if mode == GridMode::Square8 {
                for (dc, dr) in DIAGONAL {
                    push(OffsetCoord::new(u.col + dc, u.row + dr), true);
                }
            }
        }
    }
    out
}

/// Lower bound on the number of unit-weight lattice steps between two cells.
pub fn lattice_distance(mode: GridMode, a: OffsetCoord, b: OffsetCoord) -> f64 {
    match mode {
        GridMode::Hex => a.to_cube().distance(b.to_cube()) as f64,
        GridMode::Square4 => ((a.col - b.col).abs() + (a.row - b.row).abs()) as f64,
        GridMode::Square8 => {
            let (dc, dr) = ((a.col - b.col).abs(), (a.row - b.row).abs());
            let (lo, hi) = (dc.min(dr) as f64, dc.max(dr) as f64);
            hi - lo + lo * SQRT_2
        }
    }
}

/// Guidance value `3 / (4 − sinθ)` from lattice-space centers.
///
/// θ is the angle between `cell → goal` and `start → goal`; degenerate
/// directions give sinθ = 0.
pub fn guidance_value(start: (f64, f64), goal: (f64, f64), cell: (f64, f64)) -> f64 {
    let l1 = (goal.0 - cell.0, goal.1 - cell.1);
    let l2 = (goal.0 - start.0, goal.1 - start.1);
    let n1 = l1.0.hypot(l1.1);
    let n2 = l2.0.hypot(l2.1);
    let sin = if n1 == 0.0 || n2 == 0.0 {
        0.0
    } else {
        ((l1.0 * l2.1 - l1.1 * l2.0).abs() / (n1 * n2)).min(1.0)
    };
    3.0 / (4.0 - sin)
}

/// Heuristic estimate of the remaining sailing cost from `cell`.
pub fn heuristic(
    model: &EnvModel,
    cell: OffsetCoord,
    start: OffsetCoord,
    goal: OffsetCoord,
    grid: GridMode,
    mode: HeuristicMode,
) -> f64 {
    let d = lattice_distance(grid, cell, goal);
    match mode {
        HeuristicMode::Plain => d,
        HeuristicMode::Guided => {
            let l = model.lattice();
            d * guidance_value(l.lattice_center(start), l.lattice_center(goal), l.lattice_center(cell))
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct OpenEntry {
    f: f64,
    h: f64,
    row: i32,
    col: i32,
    idx: usize,
    g: f64,
}

impl PartialEq for OpenEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for OpenEntry {}

impl PartialOrd for OpenEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OpenEntry {
    // reversed: BinaryHeap is a max-heap and we pop the smallest (f, h, row, col)
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .f
            .total_cmp(&self.f)
            .then_with(|| other.h.total_cmp(&self.h))
            .then_with(|| other.row.cmp(&self.row))
            .then_with(|| other.col.cmp(&self.col))
    }
}

/// Rasterizes `chart` on the lattice `mode` searches: hexagons of side
/// `size`, or squares of equal cell area.
pub fn build_model(chart: &ObstacleChart, size: f64, mode: GridMode, opts: &BuildOptions) -> Result<EnvModel> {
    match mode {
        GridMode::Hex => EnvModel::build_hex(chart, size, opts),
        GridMode::Square4 | GridMode::Square8 => EnvModel::build_square(chart, equal_area_side(size), opts),
    }
}

fn check_mode(model: &EnvModel, mode: GridMode) -> Result<()> {
    match (model.lattice(), mode) {
        (Lattice::Hex(_), GridMode::Hex) => Ok(()),
        (Lattice::Square(_), GridMode::Square4 | GridMode::Square8) => Ok(()),
        _ => Err(Error::InvalidRequest(format!(
            "grid mode {mode} does not match the model's lattice"
        ))),
    }
}

fn endpoint(model: &EnvModel, p: GeoPoint, what: &str) -> Result<OffsetCoord> {
    if !p.is_finite() {
        return Err(Error::InvalidRequest(format!("{what} is not a finite point")));
    }
    let o = model
        .locate(p)
        .ok_or_else(|| Error::InvalidRequest(format!("{what} ({}, {}) lies outside the grid", p.lon, p.lat)))?;
    if !model.is_navigable(o) {
        return Err(Error::InvalidRequest(format!(
            "{what} ({}, {}) falls in unnavigable cell {o}",
            p.lon, p.lat
        )));
    }
    Ok(o)
}

/// Plans between two geographic points.
pub fn plan(model: &EnvModel, request: &SearchRequest) -> Result<SearchOutcome> {
    plan_with(model, request, &PlanOptions::default())
}

pub fn plan_with(model: &EnvModel, request: &SearchRequest, opts: &PlanOptions) -> Result<SearchOutcome> {
    check_mode(model, request.grid_mode)?;
    let start = endpoint(model, request.start, "start")?;
    let goal = endpoint(model, request.goal, "goal")?;
    plan_cells(model, start, goal, request.grid_mode, request.heuristic_mode, opts)
}

/// A* between two cells.
pub fn plan_cells(
    model: &EnvModel,
    start: OffsetCoord,
    goal: OffsetCoord,
    grid: GridMode,
    heuristic_mode: HeuristicMode,
    opts: &PlanOptions,
) -> Result<SearchOutcome> {
    check_mode(model, grid)?;
    for (o, what) in [(start, "start"), (goal, "goal")] {
        if !model.is_navigable(o) {
            return Err(Error::InvalidRequest(format!("{what} cell {o} is not navigable")));
        }
    }
    let reopen = opts.reopen.unwrap_or(grid.reopens_by_default());
    let began = Instant::now();

    const NEW: u8 = 0;
    const OPEN: u8 = 1;
    const CLOSED: u8 = 2;
    let n = model.len();
    let mut state = vec![NEW; n];
    let mut g = vec![Cost::ZERO; n];
    let mut g_val = vec![f64::INFINITY; n];
    let mut h_cache = vec![f64::NAN; n];
    let mut parent = vec![usize::MAX; n];
    let mut open = BinaryHeap::new();
    let mut traversed = 0u64;
    let mut extended = 0u64;

    let idx_of = |o: OffsetCoord| model.index(o).expect("navigable cells are in bounds");
    let mut h_of = |idx: usize, o: OffsetCoord| {
        if h_cache[idx].is_nan() {
            h_cache[idx] = heuristic(model, o, start, goal, grid, heuristic_mode);
        }
        h_cache[idx]
    };

    let s = idx_of(start);
    let goal_idx = idx_of(goal);
    g_val[s] = 0.0;
    let h0 = h_of(s, start);
    traversed += 1;
    state[s] = OPEN;
    open.push(OpenEntry {
        f: h0,
        h: h0,
        row: start.row,
        col: start.col,
        idx: s,
        g: 0.0,
    });

    let mut found = false;
    while let Some(entry) = open.pop() {
        let u = entry.idx;
        if state[u] == CLOSED || entry.g != g_val[u] {
            continue;
        }
        state[u] = CLOSED;
        extended += 1;
        if u == goal_idx {
            found = true;
            break;
        }
        let uo = model.coord(u);
        for (vo, step) in successors(model, grid, uo) {
            let v = idx_of(vo);
            if state[v] == CLOSED && !reopen {
                continue;
            }
            let candidate = g[u].plus(step);
            let cand_val = candidate.value();
            let h = h_of(v, vo);
            traversed += 1;
            if cand_val < g_val[v] {
                g[v] = candidate;
                g_val[v] = cand_val;
                parent[v] = u;
                state[v] = OPEN;
                open.push(OpenEntry {
                    f: cand_val + h,
                    h,
                    row: vo.row,
                    col: vo.col,
                    idx: v,
                    g: cand_val,
                });
            }
        }
    }

    let path = found.then(|| {
        let mut cells = vec![goal];
        let mut cur = goal_idx;
        while cur != s {
            cur = parent[cur];
            cells.push(model.coord(cur));
        }
        cells.reverse();
        raw_path(model, cells, g_val[goal_idx])
    });
    let turning_times = path.as_ref().map_or(0, |p| turning_times(model, &p.cells));
    let stats = SearchStats {
        traversed_times: traversed,
        extended_nodes: extended.max(1),
        average_times: traversed as f64 / extended.max(1) as f64,
        elapsed: began.elapsed().as_secs_f64(),
        turning_times,
    };
    Ok(SearchOutcome { path, stats })
}

fn raw_path(model: &EnvModel, cells: Vec<OffsetCoord>, sailing_cost: f64) -> RawPath {
    let points: Vec<GeoPoint> = cells.iter().map(|&o| model.center(o)).collect();
    let distance = polyline_length(&points) * NMI_PER_DEGREE;
    RawPath {
        cells,
        points,
        sailing_cost,
        distance,
    }
}

/// Planar length of a polyline in degrees.
pub fn polyline_length(points: &[GeoPoint]) -> f64 {
    points.windows(2).map(|w| w[0].distance(&w[1])).sum()
}

/// Number of interior cells where the heading changes.
pub fn turning_times(model: &EnvModel, cells: &[OffsetCoord]) -> usize {
    let heading = |a: OffsetCoord, b: OffsetCoord| match model.lattice() {
        Lattice::Hex(_) => {
            let d = b.to_cube() - a.to_cube();
            (d.x(), d.z())
        }
        Lattice::Square(_) => (b.col - a.col, b.row - a.row),
    };
    cells
        .windows(3)
        .filter(|w| heading(w[0], w[1]) != heading(w[1], w[2]))
        .count()
}

/// Straight start–goal distance divided by path length; 1 for a straight path.
pub fn kappa(path: &RawPath) -> f64 {
    let total = polyline_length(&path.points);
    if total == 0.0 {
        return 1.0;
    }
    let (first, last) = (path.points[0], path.points[path.points.len() - 1]);
    first.distance(&last) / total
}

/// Plain uniform-cost search; returns the optimal sailing cost, if any.
///
/// Independent of [`plan_cells`]: no heuristic, no closed-set shortcut.
pub fn uniform_cost(model: &EnvModel, start: OffsetCoord, goal: OffsetCoord, grid: GridMode) -> Option<f64> {
    let s = model.index(start)?;
    let t = model.index(goal)?;
    if !model.is_navigable(start) || !model.is_navigable(goal) {
        return None;
    }
    let dist = dijkstra(model, s, |u| {
        successors(model, grid, model.coord(u))
            .into_iter()
            .map(|(v, step)| (model.index(v).unwrap(), step))
            .collect()
    });
    dist[t].map(Cost::value)
}

/// Optimal remaining cost from every cell to `goal` (`None` if unreachable).
pub fn cost_to_go(model: &EnvModel, goal: OffsetCoord, grid: GridMode) -> Vec<Option<f64>> {
    let Some(t) = model.index(goal).filter(|_| model.is_navigable(goal)) else {
        return vec![None; model.len()];
    };
    // Walking backwards from v to u prices the forward step u -> v, which
    // charges v's weight.
    let dist = dijkstra(model, t, |v| {
        let vo = model.coord(v);
        successors(model, grid, vo)
            .into_iter()
            .filter_map(|(u, _)| step_between(model, grid, u, vo).map(|step| (model.index(u).unwrap(), step)))
            .collect()
    });
    dist.into_iter().map(|d| d.map(Cost::value)).collect()
}

fn dijkstra<F>(model: &EnvModel, source: usize, edges: F) -> Vec<Option<Cost>>
where
    F: Fn(usize) -> Vec<(usize, Step)>,
{
    #[derive(PartialEq)]
    struct Item(f64, usize);
    impl Eq for Item {}
    impl PartialOrd for Item {
        fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
            Some(self.cmp(o))
        }
    }
    impl Ord for Item {
        fn cmp(&self, o: &Self) -> Ordering {
            o.0.total_cmp(&self.0).then_with(|| o.1.cmp(&self.1))
        }
    }

    let mut best: Vec<Option<Cost>> = vec![None; model.len()];
    let mut done = vec![false; model.len()];
    let mut heap = BinaryHeap::new();
    best[source] = Some(Cost::ZERO);
    heap.push(Item(0.0, source));
    while let Some(Item(d, u)) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        let du = best[u].unwrap();
        debug_assert_eq!(d, du.value());
        for (v, step) in edges(u) {
            let cand = du.plus(step);
            if best[v].is_none_or(|b| cand.value() < b.value()) {
                best[v] = Some(cand);
                heap.push(Item(cand.value(), v));
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envmodel::{BBox, ObstacleChart};
    use crate::hexgrid::HexLayout;
    use crate::squaregrid::SquareLayout;

    fn open_hex(rows: usize, cols: usize) -> EnvModel {
        let lattice = Lattice::Hex(HexLayout::new(0.0, 1.0, 0.01).unwrap());
        EnvModel::from_labels(lattice, rows, cols, &vec![false; rows * cols]).unwrap()
    }

    fn open_square(rows: usize, cols: usize) -> EnvModel {
        let lattice = Lattice::Square(SquareLayout::new(0.0, 1.0, 0.01).unwrap());
        EnvModel::from_labels(lattice, rows, cols, &vec![false; rows * cols]).unwrap()
    }

    #[test]
    fn step_cost_examples() {
        let mut m = open_hex(6, 6);
        let u = OffsetCoord::new(2, 2);
        let v = u.to_cube().neighbors()[0].to_offset();
        assert_eq!(sailing_cost_step(&m, GridMode::Hex, u, v), Some(1.0));
        m.set_weight(v, 2.0).unwrap();
        assert_eq!(sailing_cost_step(&m, GridMode::Hex, u, v), Some(2.0));
        assert_eq!(sailing_cost_step(&m, GridMode::Hex, u, OffsetCoord::new(5, 5)), None);

        let sq = open_square(6, 6);
        let d = sailing_cost_step(&sq, GridMode::Square8, u, OffsetCoord::new(3, 3)).unwrap();
        assert_eq!(d, SQRT_2);
        assert_eq!(
            sailing_cost_step(&sq, GridMode::Square4, u, OffsetCoord::new(3, 3)),
            None
        );
    }

    #[test]
    fn guidance_examples() {
        let s = (0.0, 0.0);
        let g = (10.0, 0.0);
        assert_eq!(guidance_value(s, g, (5.0, 0.0)), 0.75);
        assert_eq!(guidance_value(s, g, (10.0, -5.0)), 1.0);
        assert_eq!(guidance_value(s, g, g), 0.75);
        assert_eq!(guidance_value(g, g, (1.0, 1.0)), 0.75);
        for k in 0..=100 {
            let a = k as f64 * std::f64::consts::PI / 100.0;
            let p = guidance_value(s, g, (10.0 - a.cos(), a.sin()));
            assert!((0.75..=1.0).contains(&p));
        }
    }

    #[test]
    fn heuristic_at_goal_is_zero_and_guided_below_plain() {
        let m = open_hex(10, 10);
        let (s, g) = (OffsetCoord::new(1, 1), OffsetCoord::new(8, 7));
        for mode in [HeuristicMode::Guided, HeuristicMode::Plain] {
            assert_eq!(heuristic(&m, g, s, g, GridMode::Hex, mode), 0.0);
        }
        for idx in 0..m.len() {
            let o = m.coord(idx);
            let guided = heuristic(&m, o, s, g, GridMode::Hex, HeuristicMode::Guided);
            let plain = heuristic(&m, o, s, g, GridMode::Hex, HeuristicMode::Plain);
            assert!(guided <= plain);
        }
    }

    #[test]
    fn start_equals_goal() {
        let m = open_hex(5, 5);
        let c = OffsetCoord::new(2, 2);
        let out = plan_cells(&m, c, c, GridMode::Hex, HeuristicMode::Guided, &PlanOptions::default()).unwrap();
        let path = out.path.unwrap();
        assert_eq!(path.cells, vec![c]);
        assert_eq!(path.sailing_cost, 0.0);
        assert_eq!(out.stats.extended_nodes, 1);
        assert_eq!(out.stats.turning_times, 0);
    }

    #[test]
    fn open_water_cost_is_lattice_distance() {
        let m = open_hex(30, 30);
        let (s, g) = (OffsetCoord::new(3, 4), OffsetCoord::new(22, 25));
        let out = plan_cells(&m, s, g, GridMode::Hex, HeuristicMode::Guided, &PlanOptions::default()).unwrap();
        let path = out.path.unwrap();
        assert_eq!(path.sailing_cost, s.to_cube().distance(g.to_cube()) as f64);
        assert_eq!(path.cells.len() as u32, s.to_cube().distance(g.to_cube()) + 1);
        let stats = out.stats;
        assert_eq!(
            stats.average_times,
            stats.traversed_times as f64 / stats.extended_nodes as f64
        );
    }

    #[test]
    fn unreachable_goal_is_not_an_error() {
        let lattice = Lattice::Hex(HexLayout::new(0.0, 1.0, 0.01).unwrap());
        let mut blocked = vec![false; 100];
        for row in 0..10 {
            blocked[row * 10 + 5] = true;
        }
        let m = EnvModel::from_labels(lattice, 10, 10, &blocked).unwrap();
        let out = plan_cells(
            &m,
            OffsetCoord::new(1, 1),
            OffsetCoord::new(8, 8),
            GridMode::Hex,
            HeuristicMode::Plain,
            &PlanOptions::default(),
        )
        .unwrap();
        assert!(out.path.is_none());
        assert!(uniform_cost(&m, OffsetCoord::new(1, 1), OffsetCoord::new(8, 8), GridMode::Hex).is_none());
    }

    #[test]
    fn request_validation() {
        let chart = ObstacleChart::new(BBox::new(0.0, 0.0, 0.1, 0.1).unwrap(), vec![]);
        let m = EnvModel::build(&chart, 0.005).unwrap();
        let req = SearchRequest {
            start: GeoPoint::new(0.01, 0.01),
            goal: GeoPoint::new(0.5, 0.5),
            grid_mode: GridMode::Hex,
            heuristic_mode: HeuristicMode::Guided,
        };
        assert!(matches!(plan(&m, &req), Err(Error::InvalidRequest(_))));
        let wrong_mode = SearchRequest {
            goal: GeoPoint::new(0.05, 0.05),
            grid_mode: GridMode::Square8,
            ..req
        };
        assert!(matches!(plan(&m, &wrong_mode), Err(Error::InvalidRequest(_))));
    }

    #[test]
    fn kappa_of_straight_path_is_one() {
        let m = open_hex(5, 12);
        let out = plan_cells(
            &m,
            OffsetCoord::new(1, 2),
            OffsetCoord::new(10, 2),
            GridMode::Hex,
            HeuristicMode::Guided,
            &PlanOptions::default(),
        )
        .unwrap();
        assert!((kappa(&out.path.unwrap()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn turning_times_counts_heading_changes() {
        let m = open_square(5, 5);
        let cells = [
            OffsetCoord::new(0, 0),
            OffsetCoord::new(1, 0),
            OffsetCoord::new(2, 0),
            OffsetCoord::new(2, 1),
            OffsetCoord::new(3, 2),
        ];
        assert_eq!(turning_times(&m, &cells), 2);
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("square8".parse::<GridMode>().unwrap(), GridMode::Square8);
        assert!("octo".parse::<GridMode>().is_err());
        assert_eq!("plain".parse::<HeuristicMode>().unwrap(), HeuristicMode::Plain);
    }
}
