//! Python bindings for the hexroute planner.

use hexroute_core::hexgrid::{self, CubeCoord, OffsetCoord};
use hexroute_core::tour::{self, AcoConfig, TourResult};
use hexroute_core::{
    build_model, build_route, envmodel, plan, potential_hazards, BuildOptions, Error, GeoPoint, GridMode,
    HeuristicMode, ObstacleChart, Route, SearchRequest, TurnCase, TurnSpec,
};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Infeasible(_) | Error::DeadEnd { .. } | Error::Capacity { .. } | Error::EnumerationBudget { .. } => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn cube(x: i32, y: i32, z: i32) -> PyResult<CubeCoord> {
    CubeCoord::new(x, y, z).map_err(py_err)
}

#[pyfunction]
fn cube_to_offset(x: i32, y: i32, z: i32) -> PyResult<(i32, i32)> {
    let o = hexgrid::cube_to_offset(cube(x, y, z)?);
    Ok((o.col, o.row))
}

#[pyfunction]
fn offset_to_cube(col: i32, row: i32) -> (i32, i32, i32) {
    let c = hexgrid::offset_to_cube(OffsetCoord::new(col, row));
    (c.x(), c.y(), c.z())
}

#[pyfunction]
fn cube_distance(a: (i32, i32, i32), b: (i32, i32, i32)) -> PyResult<u32> {
    Ok(hexgrid::cube_distance(cube(a.0, a.1, a.2)?, cube(b.0, b.1, b.2)?))
}

/// The six neighbors, east first and counterclockwise.
#[pyfunction]
fn neighbors(x: i32, y: i32, z: i32) -> PyResult<Vec<(i32, i32, i32)>> {
    Ok(cube(x, y, z)?
        .neighbors()
        .iter()
        .map(|c| (c.x(), c.y(), c.z()))
        .collect())
}

#[pyfunction]
fn grid_weight(n: usize) -> f64 {
    envmodel::grid_weight(n)
}

#[pyclass(frozen)]
struct HexLayout(hexgrid::HexLayout);

#[pymethods]
impl HexLayout {
    #[new]
    fn new(origin_lon: f64, origin_lat: f64, size: f64) -> PyResult<Self> {
        hexgrid::HexLayout::new(origin_lon, origin_lat, size)
            .map(HexLayout)
            .map_err(py_err)
    }

    fn grid_to_geo(&self, col: i32, row: i32) -> (f64, f64) {
        let p = self.0.grid_to_geo(OffsetCoord::new(col, row));
        (p.lon, p.lat)
    }

    fn geo_to_grid(&self, lon: f64, lat: f64) -> (i32, i32) {
        let o = self.0.geo_to_grid(GeoPoint::new(lon, lat));
        (o.col, o.row)
    }

    #[getter]
    fn size(&self) -> f64 {
        self.0.size
    }
}

fn route_dict<'py>(py: Python<'py>, route: &Route) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    let points: Vec<(f64, f64)> = route
        .waypoints
        .iter()
        .map(|w| (w.position.lon, w.position.lat))
        .collect();
    d.set_item("waypoints", points)?;
    d.set_item("total_distance", route.total_distance)?;
    d.set_item("source_cost", route.source_cost)?;
    d.set_item("max_weight", route.max_weight)?;
    let turns = PyList::empty(py);
    for w in &route.waypoints {
        match &w.turn {
            Some(t) => {
                let turn = PyDict::new(py);
                let case = match t.case {
                    TurnCase::Inside => "inside",
                    TurnCase::Outside => "outside",
                };
                turn.set_item("case", case)?;
                turn.set_item("radius", t.radius)?;
                turn.set_item("center", (t.center.lon, t.center.lat))?;
                turn.set_item("tangent_offset", t.tangent_offset)?;
                turns.append(turn)?;
            }
            None => turns.append(py.None())?,
        }
    }
    d.set_item("turns", turns)?;
    Ok(d)
}

/// A weighted grid built from an obstacle chart.
#[pyclass(frozen)]
struct EnvModel(hexroute_core::EnvModel);

#[pymethods]
impl EnvModel {
    /// Builds from chart JSON (`bbox`, `obstacles`), hexagon side `size` in
    /// degrees, on the lattice `grid` searches.
    #[staticmethod]
    #[pyo3(signature = (chart_json, size, grid="hex"))]
    fn from_chart(chart_json: &str, size: f64, grid: &str) -> PyResult<Self> {
        let chart: ObstacleChart =
            serde_json::from_str(chart_json).map_err(|e| PyValueError::new_err(e.to_string()))?;
        let grid: GridMode = grid.parse().map_err(py_err)?;
        build_model(&chart, size, grid, &BuildOptions::default())
            .map(EnvModel)
            .map_err(py_err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text)
            .map(EnvModel)
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("models always serialize")
    }

    #[getter]
    fn n_rows(&self) -> usize {
        self.0.n_rows()
    }

    #[getter]
    fn n_cols(&self) -> usize {
        self.0.n_cols()
    }

    fn navigable_count(&self) -> usize {
        self.0.navigable_count()
    }

    fn is_navigable(&self, col: i32, row: i32) -> bool {
        self.0.is_navigable(OffsetCoord::new(col, row))
    }

    fn weight(&self, col: i32, row: i32) -> Option<f64> {
        self.0.weight(OffsetCoord::new(col, row))
    }

    /// Plans and smooths a route; `None` when the goal is unreachable.
    #[pyo3(signature = (start, goal, grid="hex", heuristic="guided"))]
    fn plan<'py>(
        &self,
        py: Python<'py>,
        start: (f64, f64),
        goal: (f64, f64),
        grid: &str,
        heuristic: &str,
    ) -> PyResult<Option<Bound<'py, PyDict>>> {
        let request = SearchRequest {
            start: GeoPoint::new(start.0, start.1),
            goal: GeoPoint::new(goal.0, goal.1),
            grid_mode: grid.parse().map_err(py_err)?,
            heuristic_mode: heuristic.parse::<HeuristicMode>().map_err(py_err)?,
        };
        let outcome = plan(&self.0, &request).map_err(py_err)?;
        let Some(raw) = outcome.path else {
            return Ok(None);
        };
        let size = self.0.lattice().cell_size();
        let spec = TurnSpec::for_cell_size(size).map_err(py_err)?;
        let route = build_route(&self.0, &raw, &spec).map_err(py_err)?;
        let d = route_dict(py, &route)?;
        let cells: Vec<(i32, i32)> = raw.cells.iter().map(|o| (o.col, o.row)).collect();
        d.set_item("cells", cells)?;
        d.set_item("sailing_cost", raw.sailing_cost)?;
        d.set_item("raw_distance", raw.distance)?;
        d.set_item(
            "potential_hazards",
            potential_hazards(&self.0, &raw.cells).map_err(py_err)?,
        )?;
        let stats = PyDict::new(py);
        stats.set_item("traversed_times", outcome.stats.traversed_times)?;
        stats.set_item("extended_nodes", outcome.stats.extended_nodes)?;
        stats.set_item("average_times", outcome.stats.average_times)?;
        stats.set_item("turning_times", outcome.stats.turning_times)?;
        d.set_item("stats", stats)?;
        Ok(Some(d))
    }
}

fn tour_dict<'py>(py: Python<'py>, r: &TourResult) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("order", r.order.clone())?;
    d.set_item("length", r.length)?;
    d.set_item("iterations_to_best", r.iterations_to_best)?;
    d.set_item("converged", r.converged)?;
    d.set_item("history", r.history.clone())?;
    d.set_item("rho_trace", r.rho_trace.clone())?;
    d.set_item("restarts", r.restarts)?;
    Ok(d)
}

/// Pairwise costs among start, task points and target.
#[pyclass(frozen)]
struct TaskNetwork(tour::TaskNetwork);

#[pymethods]
impl TaskNetwork {
    #[new]
    fn new(labels: Vec<String>, matrix: Vec<Vec<Option<f64>>>) -> PyResult<Self> {
        tour::TaskNetwork::new(labels, matrix).map(TaskNetwork).map_err(py_err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text)
            .map(TaskNetwork)
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("networks always serialize")
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.0.labels().to_vec()
    }

    fn tour_length(&self, order: Vec<usize>) -> Option<f64> {
        self.0.tour_length(&order)
    }

    #[pyo3(signature = (seed=0, max_iterations=500, alpha=1.0, beta=5.0))]
    fn solve<'py>(
        &self,
        py: Python<'py>,
        seed: u64,
        max_iterations: usize,
        alpha: f64,
        beta: f64,
    ) -> PyResult<Bound<'py, PyDict>> {
        let config = AcoConfig {
            seed,
            max_iterations,
            alpha,
            beta,
            ..AcoConfig::default()
        };
        let result = py.detach(|| tour::solve(&self.0, &config)).map_err(py_err)?;
        tour_dict(py, &result)
    }

    fn brute_force<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let result = tour::brute_force(&self.0).map_err(py_err)?;
        tour_dict(py, &result)
    }
}

#[pymodule]
fn hexroute(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(cube_to_offset, m)?)?;
    m.add_function(wrap_pyfunction!(offset_to_cube, m)?)?;
    m.add_function(wrap_pyfunction!(cube_distance, m)?)?;
    m.add_function(wrap_pyfunction!(neighbors, m)?)?;
    m.add_function(wrap_pyfunction!(grid_weight, m)?)?;
    m.add_class::<HexLayout>()?;
    m.add_class::<EnvModel>()?;
    m.add_class::<TaskNetwork>()?;
    Ok(())
}
