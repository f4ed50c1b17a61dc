use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use hexroute_core::search::SearchStats;
use hexroute_core::tour::{build_network, default_labels, NetworkOptions, MAX_BRUTE_FORCE_TASKS};
use hexroute_core::{
    brute_force, build_model, build_route, plan, potential_hazards, solve, BuildOptions, EnvModel, Error, GeoPoint,
    GridMode, HeuristicMode, RawPath, Route, SearchRequest, TaskNetwork, TourResult,
};
use serde::Serialize;

mod render;
mod scenario;

use scenario::{parse_point, parse_points, ChartFile, ScenarioConfig};

#[derive(Parser)]
#[command(name = "hexroute", version, about = "Hexagonal-grid marine route planner")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rasterize a chart into a weighted grid model.
    Model(Common),
    /// Plan a route between two points.
    Plan(Common),
    /// Order several task points into one tour.
    Tour(Common),
}

#[derive(Args)]
struct Common {
    /// Scenario config (JSON); flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Obstacle chart (JSON).
    #[arg(long)]
    chart: Option<PathBuf>,
    /// Hexagon side in degrees.
    #[arg(long)]
    size: Option<f64>,
    /// Start point `lon,lat`.
    #[arg(long, allow_hyphen_values = true)]
    start: Option<String>,
    /// Goal or tour target `lon,lat`.
    #[arg(long, allow_hyphen_values = true)]
    goal: Option<String>,
    /// Task points `lon,lat;lon,lat;…`.
    #[arg(long, allow_hyphen_values = true)]
    tasks: Option<String>,
    /// hex, square4 or square8.
    #[arg(long)]
    grid: Option<String>,
    /// guided or plain.
    #[arg(long)]
    heuristic: Option<String>,
    /// Cost matrix (JSON) for tours without a chart.
    #[arg(long)]
    matrix: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A failure with the process exit code it maps to.
#[derive(Debug)]
struct Exit {
    code: u8,
    message: String,
}

impl fmt::Display for Exit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Exit {}

const EXIT_INPUT: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;
const EXIT_CAPACITY: u8 = 4;

fn exit_code(err: &anyhow::Error) -> u8 {
    if let Some(e) = err.downcast_ref::<Exit>() {
        return e.code;
    }
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<Error>() {
            return match e {
                Error::Infeasible(_) | Error::DeadEnd { .. } => EXIT_INFEASIBLE,
                Error::Capacity { .. } | Error::EnumerationBudget { .. } => EXIT_CAPACITY,
                _ => EXIT_INPUT,
            };
        }
    }
    EXIT_INPUT
}

/// Everything a command needs after merging config and flags.
struct Scenario {
    cfg: ScenarioConfig,
    grid: GridMode,
    heuristic: HeuristicMode,
    out: PathBuf,
}

impl Scenario {
    fn resolve(c: Common) -> anyhow::Result<Scenario> {
        let mut cfg = match &c.config {
            Some(p) => ScenarioConfig::read(p)?,
            None => ScenarioConfig::default(),
        };
        cfg.chart = c.chart.or(cfg.chart);
        cfg.matrix = c.matrix.or(cfg.matrix);
        cfg.size = c.size.or(cfg.size);
        cfg.seed = c.seed.or(cfg.seed);
        if let Some(s) = &c.start {
            cfg.start = Some(parse_point(s).context("--start")?);
        }
        if let Some(s) = &c.goal {
            cfg.goal = Some(parse_point(s).context("--goal")?);
        }
        if let Some(s) = &c.tasks {
            cfg.tasks = parse_points(s).context("--tasks")?;
        }
        let grid = match &c.grid {
            Some(g) => g.parse()?,
            None => cfg.grid_mode.unwrap_or(GridMode::Hex),
        };
        let heuristic = match &c.heuristic {
            Some(h) => h.parse()?,
            None => cfg.heuristic_mode.unwrap_or(HeuristicMode::Guided),
        };
        let out = c.out.or(cfg.out.take()).unwrap_or_else(|| PathBuf::from("."));
        Ok(Scenario {
            cfg,
            grid,
            heuristic,
            out,
        })
    }

    /// Chart file plus the effective hexagon side.
    fn chart(&self) -> anyhow::Result<(ChartFile, f64)> {
        let path = self.cfg.chart.as_ref().ok_or_else(|| anyhow!("--chart is required"))?;
        let file = ChartFile::read(path)?;
        let size = self
            .cfg
            .size
            .or(file.size)
            .ok_or_else(|| anyhow!("grid size missing: pass --size or set `size` in the chart"))?;
        Ok((file, size))
    }

    fn model(&self) -> anyhow::Result<(EnvModel, f64)> {
        let (file, size) = self.chart()?;
        let model = build_model(&file.chart(), size, self.grid, &BuildOptions::default())?;
        for (name, p) in [("start", self.cfg.start), ("goal", self.cfg.goal)] {
            if let Some(p) = p {
                if !file.bbox.contains(p) {
                    bail!("{name} ({}, {}) lies outside the chart bbox", p.lon, p.lat);
                }
            }
        }
        if let Some(p) = self.cfg.tasks.iter().find(|p| !file.bbox.contains(**p)) {
            bail!("task point ({}, {}) lies outside the chart bbox", p.lon, p.lat);
        }
        Ok((model, size))
    }

    fn write(&self, name: &str, contents: &str) -> anyhow::Result<()> {
        fs::create_dir_all(&self.out).with_context(|| format!("creating {}", self.out.display()))?;
        let path = self.out.join(name);
        fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))
    }

    fn write_json<T: Serialize>(&self, name: &str, value: &T) -> anyhow::Result<()> {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        self.write(name, &text)
    }
}

fn cmd_model(s: Scenario) -> anyhow::Result<()> {
    let started = Instant::now();
    let (model, _) = s.model()?;
    s.write_json("model.json", &model)?;
    s.write("model.svg", &render::model_svg(&model))?;
    println!(
        "{} grid: {} cols x {} rows, {} navigable of {} cells ({:.3} s)",
        s.grid,
        model.n_cols(),
        model.n_rows(),
        model.navigable_count(),
        model.len(),
        started.elapsed().as_secs_f64()
    );
    Ok(())
}

#[derive(Serialize)]
struct PlanReport<'a> {
    grid_mode: GridMode,
    heuristic_mode: HeuristicMode,
    start: GeoPoint,
    goal: GeoPoint,
    raw: &'a RawPath,
    route: &'a Route,
    stats: &'a SearchStats,
    potential_hazards: usize,
}

fn stats_row(route: &Route, stats: &SearchStats, hazards: usize) {
    println!("distance_nmi\twaypoints\ttraversed_times\textended_nodes\taverage_times\tcomputation_s\tpotential_hazards\tturning_times");
    println!(
        "{:.3}\t{}\t{}\t{}\t{:.3}\t{:.4}\t{}\t{}",
        route.total_distance,
        route.waypoints.len(),
        stats.traversed_times,
        stats.extended_nodes,
        stats.average_times,
        stats.elapsed,
        hazards,
        stats.turning_times
    );
}

fn cmd_plan(s: Scenario) -> anyhow::Result<()> {
    let start = s.cfg.start.ok_or_else(|| anyhow!("--start is required"))?;
    let goal = s.cfg.goal.ok_or_else(|| anyhow!("--goal is required"))?;
    let (model, size) = s.model()?;
    let spec = s.cfg.turn_spec(size)?;
    let request = SearchRequest {
        start,
        goal,
        grid_mode: s.grid,
        heuristic_mode: s.heuristic,
    };
    let outcome = plan(&model, &request)?;
    let Some(raw) = outcome.path else {
        return Err(Exit {
            code: EXIT_INFEASIBLE,
            message: format!(
                "no path from ({}, {}) to ({}, {}): {} cells expanded",
                start.lon, start.lat, goal.lon, goal.lat, outcome.stats.extended_nodes
            ),
        }
        .into());
    };
    let route = build_route(&model, &raw, &spec)?;
    let hazards = potential_hazards(&model, &raw.cells)?;
    s.write_json(
        "route.json",
        &PlanReport {
            grid_mode: s.grid,
            heuristic_mode: s.heuristic,
            start,
            goal,
            raw: &raw,
            route: &route,
            stats: &outcome.stats,
            potential_hazards: hazards,
        },
    )?;
    s.write("route.svg", &render::plan_svg(&model, &raw.points, &route))?;
    stats_row(&route, &outcome.stats, hazards);
    Ok(())
}

#[derive(Serialize)]
struct Oracle {
    order: Vec<usize>,
    length: f64,
    matches: bool,
}

#[derive(Serialize)]
struct TourReport<'a> {
    labels: &'a [String],
    /// Labels from start to target.
    sequence: Vec<&'a str>,
    #[serde(flatten)]
    result: &'a TourResult,
    seed: u64,
    brute_force: Option<&'a Oracle>,
}

fn network_from_chart(s: &Scenario) -> anyhow::Result<(TaskNetwork, Option<TourPicture>)> {
    let start = s.cfg.start.ok_or_else(|| anyhow!("--start is required"))?;
    let goal = s.cfg.goal.ok_or_else(|| anyhow!("--goal is required"))?;
    if s.cfg.tasks.is_empty() {
        bail!("--tasks needs at least one task point");
    }
    let (model, size) = s.model()?;
    let mut points = vec![start];
    points.extend(&s.cfg.tasks);
    points.push(goal);
    let labels = default_labels(s.cfg.tasks.len());
    let opts = NetworkOptions {
        grid_mode: s.grid,
        heuristic_mode: s.heuristic,
        turn: s.cfg.turn_spec(size)?,
    };
    let build = build_network(&model, &points, labels, &opts)?;
    let net = &build.network;
    let missing: Vec<String> = (0..net.node_count())
        .flat_map(|i| ((i + 1)..net.node_count()).map(move |j| (i, j)))
        .filter(|&(i, j)| !net.is_virtual_border(i, j) && !net.reachable(i, j))
        .map(|(i, j)| format!("{}-{}", net.labels()[i], net.labels()[j]))
        .collect();
    for pair in &missing {
        eprintln!("unreachable pair: {pair}");
    }
    if !build.isolated.is_empty() {
        return Err(Exit {
            code: EXIT_INFEASIBLE,
            message: format!(
                "{} task point(s) cannot be reached from any other point",
                build.isolated.len()
            ),
        }
        .into());
    }
    let picture = TourPicture {
        model,
        points,
        routes: build.routes,
    };
    Ok((build.network, Some(picture)))
}

struct TourPicture {
    model: EnvModel,
    points: Vec<GeoPoint>,
    routes: Vec<((usize, usize), Route)>,
}

fn cmd_tour(s: Scenario) -> anyhow::Result<()> {
    let (network, picture) = match &s.cfg.matrix {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading matrix {}", path.display()))?;
            let net: TaskNetwork =
                serde_json::from_str(&text).with_context(|| format!("invalid matrix {}", path.display()))?;
            (net, None)
        }
        None => network_from_chart(&s)?,
    };
    let mut config = s.cfg.aco.clone().unwrap_or_default();
    if let Some(seed) = s.cfg.seed {
        config.seed = seed;
    }
    let started = Instant::now();
    let result = solve(&network, &config)?;
    let elapsed = started.elapsed().as_secs_f64();
    let oracle = if network.task_count() <= MAX_BRUTE_FORCE_TASKS {
        let exact = brute_force(&network)?;
        Some(Oracle {
            matches: exact.order == result.order,
            order: exact.order,
            length: exact.length,
        })
    } else {
        None
    };

    let labels = network.labels();
    let mut nodes = vec![network.start()];
    nodes.extend(&result.order);
    nodes.push(network.target());
    let sequence: Vec<&str> = nodes.iter().map(|&i| labels[i].as_str()).collect();

    s.write_json("matrix.json", &network)?;
    s.write_json(
        "tour.json",
        &TourReport {
            labels,
            sequence: sequence.clone(),
            result: &result,
            seed: config.seed,
            brute_force: oracle.as_ref(),
        },
    )?;
    s.write("convergence.svg", &render::convergence_svg(&result.history))?;
    if let Some(pic) = &picture {
        let legs: Vec<&Route> = nodes
            .windows(2)
            .filter_map(|w| {
                let key = (w[0].min(w[1]), w[0].max(w[1]));
                pic.routes.iter().find(|(k, _)| *k == key).map(|(_, r)| r)
            })
            .collect();
        s.write("tour.svg", &render::tour_svg(&pic.model, &legs, &pic.points, labels))?;
    }

    println!("order: {}", sequence.join(" -> "));
    println!(
        "length: {:.2} nmi, best at iteration {}, {:.3} s",
        result.length, result.iterations_to_best, elapsed
    );
    if let Some(o) = &oracle {
        println!(
            "brute force: {:.2} nmi ({})",
            o.length,
            if o.matches { "match" } else { "differs" }
        );
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Model(c) => cmd_model(Scenario::resolve(c)?),
        Command::Plan(c) => cmd_plan(Scenario::resolve(c)?),
        Command::Tour(c) => cmd_tour(Scenario::resolve(c)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
