//! Ordering several task points into one tour.
//!
//! Nodes are `[start, task_1, …, task_n, target]`. Pairwise costs come from
//! planned and smoothed routes. The tour is an open path from start to
//! target through every task; the start–target link is a virtual border
//! that closes the loop at zero cost and is never travelled.
//!
//! The solver is an ant colony in the Ant-Cycle style with ants placed one
//! per node on that closed loop. Two parameters move at runtime: the
//! deposit intensity `Q(t)` steps down on a fixed schedule, and the
//! evaporation rate `ρ` decays by 2% (to a floor) whenever the best tour has
//! not improved for a number of cycles.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::envmodel::EnvModel;
use crate::error::{Error, Result};
use crate::hexgrid::GeoPoint;
use crate::search::{plan, GridMode, HeuristicMode, SearchRequest};
use crate::smoothing::{build_route, Route, TurnSpec};

/// Largest task count [`brute_force`] will enumerate.
pub const MAX_BRUTE_FORCE_TASKS: usize = 11;

/// Pheromone never drops below this, so every edge stays selectable.
pub const TAU_FLOOR: f64 = 1e-100;

const SYMMETRY_TOL: f64 = 1e-9;
const MAX_RESTARTS_PER_ANT: usize = 100;

/// Pairwise travel costs among start, task points and target.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "NetworkDoc", into = "NetworkDoc")]
pub struct TaskNetwork {
    labels: Vec<String>,
    cost: Vec<Vec<Option<f64>>>,
}

/// File shape: node labels plus the full matrix; `null` marks a missing
/// edge, including the start–target virtual border.
#[derive(Serialize, Deserialize)]
struct NetworkDoc {
    labels: Vec<String>,
    matrix: Vec<Vec<Option<f64>>>,
}

impl TryFrom<NetworkDoc> for TaskNetwork {
    type Error = Error;

    fn try_from(doc: NetworkDoc) -> Result<Self> {
        TaskNetwork::new(doc.labels, doc.matrix)
    }
}

impl From<TaskNetwork> for NetworkDoc {
    fn from(n: TaskNetwork) -> Self {
        NetworkDoc {
            labels: n.labels,
            matrix: n.cost,
        }
    }
}

impl TaskNetwork {
    /// Validates a square, symmetric matrix over at least one task point.
    ///
    /// Diagonal entries and the start–target entry are ignored and stored as
    /// `None`.
    pub fn new(labels: Vec<String>, mut cost: Vec<Vec<Option<f64>>>) -> Result<Self> {
        let n = labels.len();
        if n < 3 {
            return Err(Error::InvalidNetwork(format!(
                "need start, target and at least one task point, got {n} nodes"
            )));
        }
        if cost.len() != n || cost.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidNetwork(format!("matrix must be {n}×{n}")));
        }
        for i in 0..n {
            cost[i][i] = None;
            for j in 0..n {
                if let Some(c) = cost[i][j] {
                    if !(c >= 0.0 && c.is_finite()) {
                        return Err(Error::InvalidNetwork(format!(
                            "cost {c} between {} and {} is not a finite non-negative number",
                            labels[i], labels[j]
                        )));
                    }
                }
                let symmetric = match (cost[i][j], cost[j][i]) {
                    (Some(a), Some(b)) => (a - b).abs() <= SYMMETRY_TOL * a.abs().max(1.0),
                    (None, None) => true,
                    _ => i == j,
                };
                if !symmetric {
                    return Err(Error::InvalidNetwork(format!(
                        "matrix is not symmetric between {} and {}",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        cost[0][n - 1] = None;
        cost[n - 1][0] = None;
        Ok(TaskNetwork { labels, cost })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn task_count(&self) -> usize {
        self.labels.len() - 2
    }

    pub fn start(&self) -> usize {
        0
    }

    pub fn target(&self) -> usize {
        self.labels.len() - 1
    }

    pub fn tasks(&self) -> std::ops::Range<usize> {
        1..self.labels.len() - 1
    }

    /// Travel cost between two nodes, `None` if unreachable or virtual.
    pub fn cost(&self, i: usize, j: usize) -> Option<f64> {
        self.cost[i][j]
    }

    pub fn is_virtual_border(&self, i: usize, j: usize) -> bool {
        (i, j) == (0, self.target()) || (j, i) == (0, self.target())
    }

    pub fn reachable(&self, i: usize, j: usize) -> bool {
        self.cost[i][j].is_some()
    }

    pub fn matrix(&self) -> &[Vec<Option<f64>>] {
        &self.cost
    }

    /// Length of start → `order` → target; `None` if a leg is missing.
    pub fn tour_length(&self, order: &[usize]) -> Option<f64> {
        let mut total = 0.0;
        let mut prev = self.start();
        for &next in order.iter().chain(std::iter::once(&self.target())) {
            total += self.cost(prev, next)?;
            prev = next;
        }
        Some(total)
    }

    /// Task nodes that have no reachable neighbor at all.
    pub fn isolated_tasks(&self) -> Vec<usize> {
        self.tasks()
            .filter(|&t| (0..self.node_count()).all(|j| !self.reachable(t, j)))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QStep {
    /// Last iteration (inclusive) this intensity applies to.
    pub until: u32,
    pub q: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AcoConfig {
    pub alpha: f64,
    pub beta: f64,
    /// Ant count; `None` uses one ant per node.
    pub ants: Option<usize>,
    pub rho0: f64,
    pub rho_min: f64,
    /// Cycles without improvement before ρ decays.
    pub stagnation_n: usize,
    pub q_schedule: [QStep; 3],
    pub max_iterations: usize,
    pub seed: u64,
}

impl Default for AcoConfig {
    fn default() -> Self {
        AcoConfig {
            alpha: 1.0,
            beta: 5.0,
            ants: None,
            rho0: 0.5,
            rho_min: 0.1,
            stagnation_n: 20,
            q_schedule: [
                QStep { until: 50, q: 100.0 },
                QStep { until: 150, q: 50.0 },
                QStep { until: 300, q: 25.0 },
            ],
            max_iterations: 500,
            seed: 0,
        }
    }
}

impl AcoConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if !(self.alpha >= 0.0 && self.beta >= 0.0) {
            return bad(format!("alpha ({}) and beta ({}) must be >= 0", self.alpha, self.beta));
        }
        if !(0.0 < self.rho_min && self.rho_min <= self.rho0 && self.rho0 <= 1.0) {
            return bad(format!(
                "need 0 < rho_min ({}) <= rho0 ({}) <= 1",
                self.rho_min, self.rho0
            ));
        }
        if self.ants == Some(0) {
            return bad("ant count must be at least 1".into());
        }
        if self.stagnation_n == 0 {
            return bad("stagnation_n must be at least 1".into());
        }
        let [a, b, c] = self.q_schedule;
        if !(a.until < b.until && b.until < c.until) {
            return bad("Q schedule thresholds must increase".into());
        }
        if self.q_schedule.iter().any(|s| !(s.q > 0.0 && s.q.is_finite())) {
            return bad("Q intensities must be positive".into());
        }
        Ok(())
    }

    pub fn ant_count(&self, network: &TaskNetwork) -> usize {
        self.ants.unwrap_or(network.node_count())
    }
}

/// Piecewise-constant deposit intensity; the last level holds after the
/// final threshold.
pub fn pheromone_intensity(t: usize, config: &AcoConfig) -> f64 {
    config
        .q_schedule
        .iter()
        .find(|s| t <= s.until as usize)
        .unwrap_or(&config.q_schedule[2])
        .q
}

#[derive(Debug, Clone, PartialEq)]
pub struct PheromoneState {
    pub tau: Vec<Vec<f64>>,
    pub rho: f64,
    /// Best task order so far and its length.
    pub best: Option<(Vec<usize>, f64)>,
    pub iteration: usize,
    /// Best length after each completed cycle.
    pub history: Vec<f64>,
    /// Consecutive cycles without improvement.
    pub stagnation: usize,
}

impl PheromoneState {
    pub fn new(network: &TaskNetwork, config: &AcoConfig) -> Self {
        let n = network.node_count();
        PheromoneState {
            tau: vec![vec![1.0; n]; n],
            rho: config.rho0,
            best: None,
            iteration: 0,
            history: Vec::new(),
            stagnation: 0,
        }
    }

    pub fn best_length(&self) -> Option<f64> {
        self.best.as_ref().map(|(_, l)| *l)
    }
}

/// Probability of moving from `current` to each node of `allowed`.
///
/// Unreachable candidates get zero mass. Errors when none is reachable.
pub fn transition_probabilities(
    state: &PheromoneState,
    config: &AcoConfig,
    network: &TaskNetwork,
    current: usize,
    allowed: &[usize],
) -> Result<Vec<f64>> {
    let scores: Vec<f64> = allowed
        .iter()
        .map(|&j| match network.cost(current, j) {
            Some(d) => {
                let eta = 1.0 / d.max(1e-12);
                state.tau[current][j].powf(config.alpha) * eta.powf(config.beta)
            }
            None => 0.0,
        })
        .collect();
    let total: f64 = scores.iter().sum();
    if !(total > 0.0 && total.is_finite()) {
        return Err(Error::DeadEnd { node: current });
    }
    Ok(scores.into_iter().map(|s| s / total).collect())
}

/// One full node sequence (start … target) and its length.
#[derive(Debug, Clone, PartialEq)]
pub struct AntTour {
    pub nodes: Vec<usize>,
    pub length: f64,
}

/// Evaporates every edge by `1 − ρ`, then adds `Q(t)/L_k` on each edge
/// ant `k` used. Keeps τ symmetric and above [`TAU_FLOOR`].
pub fn deposit_and_evaporate(state: &mut PheromoneState, tours: &[AntTour], config: &AcoConfig) {
    let q = pheromone_intensity(state.iteration, config);
    let n = state.tau.len();
    let mut delta = vec![vec![0.0; n]; n];
    for tour in tours {
        let amount = q / tour.length.max(1e-12);
        for w in tour.nodes.windows(2) {
            delta[w[0]][w[1]] += amount;
            delta[w[1]][w[0]] += amount;
        }
    }
    let keep = 1.0 - state.rho;
    for (row, add) in state.tau.iter_mut().zip(&delta) {
        for (t, d) in row.iter_mut().zip(add) {
            *t = (keep * *t + d).max(TAU_FLOOR);
        }
    }
}

/// Tracks stagnation and decays ρ by 2% (floored at `rho_min`) after
/// `stagnation_n` cycles without improvement.
pub fn adapt_rho(state: &mut PheromoneState, improved: bool, config: &AcoConfig) {
    if improved {
        state.stagnation = 0;
        return;
    }
    state.stagnation += 1;
    if state.stagnation >= config.stagnation_n {
        state.rho = (0.98 * state.rho).max(config.rho_min);
        state.stagnation = 0;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TourResult {
    /// Task node indices in visiting order.
    pub order: Vec<usize>,
    pub length: f64,
    pub iterations_to_best: usize,
    /// The incumbent held for at least `stagnation_n` final cycles.
    pub converged: bool,
    #[serde(default)]
    pub history: Vec<f64>,
    #[serde(default)]
    pub rho_trace: Vec<f64>,
    #[serde(default)]
    pub restarts: usize,
}

/// Hooks into the solver loop, mainly for diagnostics and tests.
pub trait SolveObserver {
    fn on_transition(&mut self, _probabilities: &[f64]) {}
    fn on_cycle(&mut self, _state: &PheromoneState, _tours: &[AntTour]) {}
}

impl SolveObserver for () {}

fn sample(probs: &[f64], rng: &mut ChaCha8Rng) -> usize {
    let draw: f64 = rng.random();
    let mut acc = 0.0;
    let mut pick = probs.len() - 1;
    for (k, p) in probs.iter().enumerate() {
        acc += p;
        if draw < acc {
            pick = k;
            break;
        }
    }
    // rounding can land on a zero-probability tail entry
    while probs[pick] == 0.0 {
        pick -= 1;
    }
    pick
}

/// Unrolls a closed loop containing the virtual border into the open node
/// sequence start … target.
fn unroll(cycle: &[usize], network: &TaskNetwork) -> Vec<usize> {
    let n = cycle.len();
    let s = cycle
        .iter()
        .position(|&v| v == network.start())
        .expect("loop visits start");
    let forward = cycle[(s + 1) % n] != network.target();
    (0..n)
        .map(|k| {
            if forward {
                cycle[(s + k) % n]
            } else {
                cycle[(s + n - k) % n]
            }
        })
        .collect()
}

/// One ant walks a closed loop from `origin` over every node. Stepping onto
/// the start or the target forces the zero-cost border hop to the other.
fn construct_tour(
    state: &PheromoneState,
    config: &AcoConfig,
    network: &TaskNetwork,
    origin: usize,
    rng: &mut ChaCha8Rng,
    observer: &mut dyn SolveObserver,
) -> Result<AntTour> {
    let (start, target) = (network.start(), network.target());
    let mut cycle = vec![origin];
    let mut allowed: Vec<usize> = (0..network.node_count()).filter(|&v| v != origin).collect();
    while !allowed.is_empty() {
        let current = *cycle.last().unwrap();
        let partner = match current {
            c if c == start => Some(target),
            c if c == target => Some(start),
            _ => None,
        };
        let next = match partner.and_then(|p| allowed.iter().position(|&v| v == p)) {
            Some(k) => allowed.remove(k),
            None => {
                let probs = transition_probabilities(state, config, network, current, &allowed)?;
                observer.on_transition(&probs);
                allowed.remove(sample(&probs, rng))
            }
        };
        cycle.push(next);
    }
    let last = *cycle.last().unwrap();
    if !network.is_virtual_border(last, origin) && !network.reachable(last, origin) {
        return Err(Error::DeadEnd { node: last });
    }
    let nodes = unroll(&cycle, network);
    // summed from the start so equal tours give bit-identical lengths
    let length = network
        .tour_length(&nodes[1..nodes.len() - 1])
        .expect("every leg of a completed loop is reachable");
    Ok(AntTour { nodes, length })
}

pub fn solve(network: &TaskNetwork, config: &AcoConfig) -> Result<TourResult> {
    solve_observed(network, config, &mut ())
}

pub fn solve_observed(
    network: &TaskNetwork,
    config: &AcoConfig,
    observer: &mut dyn SolveObserver,
) -> Result<TourResult> {
    config.validate()?;
    let isolated = network.isolated_tasks();
    if !isolated.is_empty() {
        let names: Vec<&str> = isolated.iter().map(|&i| network.labels[i].as_str()).collect();
        return Err(Error::Infeasible(format!(
            "unreachable task points: {}",
            names.join(", ")
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut state = PheromoneState::new(network, config);
    let ants = config.ant_count(network);
    let mut restarts = 0;
    let mut iterations_to_best = 0;
    let mut rho_trace = Vec::with_capacity(config.max_iterations);

    for t in 0..config.max_iterations {
        state.iteration = t;
        let mut tours = Vec::with_capacity(ants);
        for k in 0..ants {
            let origin = k % network.node_count();
            let mut attempts = 0;
            loop {
                match construct_tour(&state, config, network, origin, &mut rng, observer) {
                    Ok(tour) => {
                        tours.push(tour);
                        break;
                    }
                    Err(Error::DeadEnd { .. }) if attempts < MAX_RESTARTS_PER_ANT => {
                        attempts += 1;
                        restarts += 1;
                    }
                    Err(Error::DeadEnd { .. }) => break,
                    Err(e) => return Err(e),
                }
            }
        }
        let cycle_best = tours.iter().min_by(|a, b| a.length.total_cmp(&b.length)).cloned();
        let improved = match (&cycle_best, state.best_length()) {
            (Some(c), Some(best)) => c.length < best,
            (Some(_), None) => true,
            _ => false,
        };
        if improved {
            let c = cycle_best.unwrap();
            let order = c.nodes[1..c.nodes.len() - 1].to_vec();
            state.best = Some((order, c.length));
            iterations_to_best = t;
        }
        deposit_and_evaporate(&mut state, &tours, config);
        rho_trace.push(state.rho);
        adapt_rho(&mut state, improved, config);
        if let Some(best) = state.best_length() {
            state.history.push(best);
        }
        observer.on_cycle(&state, &tours);
    }

    let (order, length) = state
        .best
        .clone()
        .ok_or_else(|| Error::Infeasible("no ant completed a tour through every task point".into()))?;
    Ok(TourResult {
        order,
        length,
        iterations_to_best,
        converged: config.max_iterations - iterations_to_best > config.stagnation_n,
        history: state.history,
        rho_trace,
        restarts,
    })
}

/// Exact optimum by enumerating visiting orders in lexicographic order;
/// the first optimal order wins ties.
pub fn brute_force(network: &TaskNetwork) -> Result<TourResult> {
    let tasks = network.task_count();
    if tasks > MAX_BRUTE_FORCE_TASKS {
        return Err(Error::EnumerationBudget {
            tasks,
            max: MAX_BRUTE_FORCE_TASKS,
        });
    }

    struct Search<'a> {
        network: &'a TaskNetwork,
        order: Vec<usize>,
        used: Vec<bool>,
        best: Option<(Vec<usize>, f64)>,
    }

    impl Search<'_> {
        fn descend(&mut self, current: usize, partial: f64) {
            if let Some((_, best)) = &self.best {
                if partial >= *best {
                    return;
                }
            }
            if self.order.len() == self.network.task_count() {
                if let Some(close) = self.network.cost(current, self.network.target()) {
                    let total = partial + close;
                    if self.best.as_ref().is_none_or(|(_, b)| total < *b) {
                        self.best = Some((self.order.clone(), total));
                    }
                }
                return;
            }
            for next in self.network.tasks() {
                if self.used[next] {
                    continue;
                }
                let Some(step) = self.network.cost(current, next) else {
                    continue;
                };
                self.used[next] = true;
                self.order.push(next);
                self.descend(next, partial + step);
                self.order.pop();
                self.used[next] = false;
            }
        }
    }

    let mut search = Search {
        network,
        order: Vec::with_capacity(tasks),
        used: vec![false; network.node_count()],
        best: None,
    };
    search.descend(network.start(), 0.0);
    let (order, length) = search
        .best
        .ok_or_else(|| Error::Infeasible("no order visits every task point".into()))?;
    Ok(TourResult {
        order,
        length,
        iterations_to_best: 0,
        converged: true,
        history: Vec::new(),
        rho_trace: Vec::new(),
        restarts: 0,
    })
}

#[derive(Debug, Clone, Copy)]
pub struct NetworkOptions {
    pub grid_mode: GridMode,
    pub heuristic_mode: HeuristicMode,
    pub turn: TurnSpec,
}

/// A network together with the routes behind its finite entries.
#[derive(Debug, Clone)]
pub struct NetworkBuild {
    pub network: TaskNetwork,
    /// Route for each reachable pair `(i, j)` with `i < j`.
    pub routes: Vec<((usize, usize), Route)>,
    /// Task points with no route to any other node.
    pub isolated: Vec<usize>,
}

/// Plans and smooths a route for every unordered pair of points (except the
/// start–target virtual border) and records the smoothed distances.
///
/// `points` is `[start, task_1, …, task_n, target]`.
pub fn build_network(
    model: &EnvModel,
    points: &[GeoPoint],
    labels: Vec<String>,
    opts: &NetworkOptions,
) -> Result<NetworkBuild> {
    let n = points.len();
    if n < 3 || labels.len() != n {
        return Err(Error::InvalidRequest(
            "need start, target, at least one task point and one label per point".into(),
        ));
    }
    for (p, label) in points.iter().zip(&labels) {
        match model.locate(*p) {
            Some(o) if model.is_navigable(o) => {}
            _ => {
                return Err(Error::InvalidRequest(format!(
                    "{label} ({}, {}) is not in navigable water",
                    p.lon, p.lat
                )))
            }
        }
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .filter(|&(i, j)| (i, j) != (0, n - 1))
        .collect();
    let planned: Vec<Result<Option<Route>>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let request = SearchRequest {
                start: points[i],
                goal: points[j],
                grid_mode: opts.grid_mode,
                heuristic_mode: opts.heuristic_mode,
            };
            let outcome = plan(model, &request)?;
            outcome
                .path
                .map(|path| build_route(model, &path, &opts.turn))
                .transpose()
        })
        .collect();
    let mut cost = vec![vec![None; n]; n];
    let mut routes = Vec::new();
    for (&(i, j), result) in pairs.iter().zip(planned) {
        if let Some(route) = result? {
            cost[i][j] = Some(route.total_distance);
            cost[j][i] = Some(route.total_distance);
            routes.push(((i, j), route));
        }
    }
    let network = TaskNetwork::new(labels, cost)?;
    let isolated = network.isolated_tasks();
    Ok(NetworkBuild {
        network,
        routes,
        isolated,
    })
}

/// Labels `S0`, `1` … `n`, `G0` for a start, `n` tasks and a target.
pub fn default_labels(task_count: usize) -> Vec<String> {
    std::iter::once("S0".to_string())
        .chain((1..=task_count).map(|i| i.to_string()))
        .chain(std::iter::once("G0".to_string()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn network(matrix: Vec<Vec<Option<f64>>>) -> TaskNetwork {
        let tasks = matrix.len() - 2;
        TaskNetwork::new(default_labels(tasks), matrix).unwrap()
    }

    fn uniform(n: usize, c: f64) -> TaskNetwork {
        network(vec![vec![Some(c); n]; n])
    }

    #[test]
    fn intensity_schedule_boundaries() {
        let cfg = AcoConfig::default();
        assert_eq!(pheromone_intensity(0, &cfg), 100.0);
        assert_eq!(pheromone_intensity(50, &cfg), 100.0);
        assert_eq!(pheromone_intensity(51, &cfg), 50.0);
        assert_eq!(pheromone_intensity(150, &cfg), 50.0);
        assert_eq!(pheromone_intensity(151, &cfg), 25.0);
        assert_eq!(pheromone_intensity(10_000, &cfg), 25.0);
    }

    #[test]
    fn transition_examples() {
        let net = network(vec![
            vec![None, Some(2.0), Some(1.0), None],
            vec![Some(2.0), None, Some(1.0), Some(1.0)],
            vec![Some(1.0), Some(1.0), None, Some(1.0)],
            vec![None, Some(1.0), Some(1.0), None],
        ]);
        let mut cfg = AcoConfig::default();
        let state = PheromoneState::new(&net, &cfg);
        let one = transition_probabilities(&state, &cfg, &net, 0, &[2]).unwrap();
        assert_eq!(one, vec![1.0]);
        cfg.alpha = 0.0;
        cfg.beta = 0.0;
        let flat = transition_probabilities(&state, &cfg, &net, 0, &[1, 2]).unwrap();
        assert_eq!(flat, vec![0.5, 0.5]);
        cfg.beta = 1.0;
        let p = transition_probabilities(&state, &cfg, &net, 0, &[1, 2]).unwrap();
        assert!((p[0] - 1.0 / 3.0).abs() < 1e-15 && (p[1] - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn dead_end_is_reported() {
        let net = network(vec![
            vec![None, None, Some(1.0), None],
            vec![None, None, Some(1.0), Some(1.0)],
            vec![Some(1.0), Some(1.0), None, Some(1.0)],
            vec![None, Some(1.0), Some(1.0), None],
        ]);
        let cfg = AcoConfig::default();
        let state = PheromoneState::new(&net, &cfg);
        assert!(matches!(
            transition_probabilities(&state, &cfg, &net, 0, &[1]),
            Err(Error::DeadEnd { node: 0 })
        ));
    }

    #[test]
    fn deposit_examples() {
        let net = uniform(4, 1.0);
        let cfg = AcoConfig::default();
        let mut state = PheromoneState::new(&net, &cfg);
        let tour = AntTour {
            nodes: vec![0, 1, 3],
            length: 10.0,
        };
        deposit_and_evaporate(&mut state, &[tour], &cfg);
        assert_eq!(state.tau[0][1], 0.5 + 10.0);
        assert_eq!(state.tau[1][0], 0.5 + 10.0);
        assert_eq!(state.tau[0][2], 0.5);
        assert_eq!(state.tau[2][3], 0.5);
    }

    #[test]
    fn pheromone_survives_long_evaporation() {
        let net = uniform(5, 1.0);
        let cfg = AcoConfig {
            rho0: 0.1,
            rho_min: 0.1,
            ..AcoConfig::default()
        };
        let mut state = PheromoneState::new(&net, &cfg);
        let tour = AntTour {
            nodes: vec![0, 1, 2, 3, 4],
            length: 4.0,
        };
        for _ in 0..10_000 {
            deposit_and_evaporate(&mut state, std::slice::from_ref(&tour), &cfg);
        }
        assert!(state.tau.iter().flatten().all(|&t| t > 0.0));
    }

    #[test]
    fn rho_adaptation() {
        let net = uniform(4, 1.0);
        let cfg = AcoConfig {
            stagnation_n: 3,
            ..AcoConfig::default()
        };
        let mut state = PheromoneState::new(&net, &cfg);
        for _ in 0..10 {
            adapt_rho(&mut state, true, &cfg);
        }
        assert_eq!(state.rho, 0.5);
        for _ in 0..3 {
            adapt_rho(&mut state, false, &cfg);
        }
        assert_eq!(state.rho, 0.49);
        for _ in 0..3000 {
            adapt_rho(&mut state, false, &cfg);
        }
        assert_eq!(state.rho, cfg.rho_min);
    }

    #[test]
    fn single_task_is_forced() {
        let net = network(vec![
            vec![None, Some(3.0), None],
            vec![Some(3.0), None, Some(4.5)],
            vec![None, Some(4.5), None],
        ]);
        let aco = solve(&net, &AcoConfig::default()).unwrap();
        let exact = brute_force(&net).unwrap();
        assert_eq!(aco.order, vec![1]);
        assert_eq!(aco.length, 7.5);
        assert_eq!(exact.order, vec![1]);
        assert_eq!(exact.length, 7.5);
    }

    #[test]
    fn ties_resolve_lexicographically() {
        let exact = brute_force(&uniform(5, 2.0)).unwrap();
        assert_eq!(exact.order, vec![1, 2, 3]);
        assert_eq!(exact.length, 8.0);
    }

    #[test]
    fn enumeration_budget() {
        let net = uniform(MAX_BRUTE_FORCE_TASKS + 3, 1.0);
        assert!(matches!(brute_force(&net), Err(Error::EnumerationBudget { .. })));
    }

    #[test]
    fn network_validation() {
        assert!(TaskNetwork::new(default_labels(0), vec![vec![None; 2]; 2]).is_err());
        let asym = vec![
            vec![None, Some(1.0), None],
            vec![Some(2.0), None, Some(1.0)],
            vec![None, Some(1.0), None],
        ];
        assert!(TaskNetwork::new(default_labels(1), asym).is_err());
        let net = uniform(4, 1.0);
        assert_eq!(net.cost(0, 3), None, "virtual border never carries a cost");
        assert!(net.is_virtual_border(3, 0));
    }

    #[test]
    fn config_validation() {
        let mut cfg = AcoConfig::default();
        assert!(cfg.validate().is_ok());
        cfg.rho_min = 0.6;
        assert!(cfg.validate().is_err());
        let cfg = AcoConfig {
            q_schedule: [
                QStep { until: 10, q: 1.0 },
                QStep { until: 5, q: 1.0 },
                QStep { until: 20, q: 1.0 },
            ],
            ..AcoConfig::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn isolated_task_is_infeasible() {
        let net = network(vec![
            vec![None, None, Some(1.0), None],
            vec![None, None, None, None],
            vec![Some(1.0), None, None, Some(1.0)],
            vec![None, None, Some(1.0), None],
        ]);
        assert!(matches!(solve(&net, &AcoConfig::default()), Err(Error::Infeasible(_))));
        assert!(matches!(brute_force(&net), Err(Error::Infeasible(_))));
    }
}
