//! Scenario inputs: a JSON config file merged with command-line flags.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use hexroute_core::{AcoConfig, BBox, GeoPoint, GridMode, HeuristicMode, ObstacleChart, Polygon, TurnSpec};
use serde::Deserialize;

/// Chart file: bounding box, obstacle polygons and the hexagon side.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartFile {
    pub bbox: BBox,
    #[serde(default)]
    pub obstacles: Vec<Polygon>,
    pub size: Option<f64>,
}

impl ChartFile {
    pub fn read(path: &Path) -> anyhow::Result<ChartFile> {
        let text = fs::read_to_string(path).with_context(|| format!("reading chart {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("invalid chart {}", path.display()))
    }

    pub fn chart(&self) -> ObstacleChart {
        ObstacleChart::new(self.bbox, self.obstacles.clone())
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TurnConfig {
    pub min_turn_radius: f64,
    pub arrived_radius: f64,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub chart: Option<PathBuf>,
    pub size: Option<f64>,
    pub start: Option<GeoPoint>,
    pub goal: Option<GeoPoint>,
    pub tasks: Vec<GeoPoint>,
    pub grid_mode: Option<GridMode>,
    pub heuristic_mode: Option<HeuristicMode>,
    pub turn: Option<TurnConfig>,
    pub aco: Option<AcoConfig>,
    pub matrix: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
}

impl ScenarioConfig {
    /// Reads a config; relative paths inside it resolve against its folder.
    pub fn read(path: &Path) -> anyhow::Result<ScenarioConfig> {
        let text = fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        let mut cfg: ScenarioConfig =
            serde_json::from_str(&text).with_context(|| format!("invalid config {}", path.display()))?;
        let base = path.parent().unwrap_or(Path::new("."));
        for p in [&mut cfg.chart, &mut cfg.matrix, &mut cfg.out].into_iter().flatten() {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(cfg)
    }

    pub fn turn_spec(&self, size: f64) -> anyhow::Result<TurnSpec> {
        Ok(match self.turn {
            Some(t) => TurnSpec::new(t.min_turn_radius, t.arrived_radius)?,
            None => TurnSpec::for_cell_size(size)?,
        })
    }
}

/// Parses `lon,lat`.
pub fn parse_point(s: &str) -> anyhow::Result<GeoPoint> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [lon, lat] = parts.as_slice() else {
        bail!("expected `lon,lat`, got `{s}`");
    };
    let p = GeoPoint::new(
        lon.parse().with_context(|| format!("bad longitude `{lon}`"))?,
        lat.parse().with_context(|| format!("bad latitude `{lat}`"))?,
    );
    if !p.is_finite() {
        bail!("coordinates must be finite, got `{s}`");
    }
    Ok(p)
}

/// Parses `lon,lat;lon,lat;…`.
pub fn parse_points(s: &str) -> anyhow::Result<Vec<GeoPoint>> {
    s.split(';').filter(|p| !p.trim().is_empty()).map(parse_point).collect()
}
