use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid cube coordinate ({x}, {y}, {z}): components must sum to zero")]
    InvalidCube { x: i32, y: i32, z: i32 },

    #[error("invalid chart: {0}")]
    InvalidChart(String),

    #[error("grid of {cells} cells exceeds the budget of {max} cells")]
    Capacity { cells: usize, max: usize },

    #[error("invalid request: {0}")]
    InvalidRequest(String),

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("invalid turn parameters: {0}")]
    InvalidTurnSpec(String),

    #[error("invalid ACO configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid task network: {0}")]
    InvalidNetwork(String),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("{tasks} task points exceed the enumeration budget of {max}")]
    EnumerationBudget { tasks: usize, max: usize },

    #[error("dead end at node {node}: no reachable unvisited node")]
    DeadEnd { node: usize },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
