//! Test helpers that deliberately avoid the library's own neighbor, weight
//! and search code, so they can serve as oracles.

#![allow(dead_code)]

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use hexroute_core::squaregrid::SquareLayout;
use hexroute_core::{EnvModel, GridMode, HexLayout, Lattice, OffsetCoord};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Even-r neighbors: even rows sit half a cell right of odd rows.
pub fn hex_neighbors(col: i32, row: i32) -> [(i32, i32); 6] {
    if row.rem_euclid(2) == 0 {
        [
            (col + 1, row),
            (col - 1, row),
            (col, row - 1),
            (col + 1, row - 1),
            (col, row + 1),
            (col + 1, row + 1),
        ]
    } else {
        [
            (col + 1, row),
            (col - 1, row),
            (col - 1, row - 1),
            (col, row - 1),
            (col - 1, row + 1),
            (col, row + 1),
        ]
    }
}

pub fn square_neighbors(col: i32, row: i32, diagonal: bool) -> Vec<((i32, i32), bool)> {
    let mut out = vec![
        ((col + 1, row), false),
        ((col - 1, row), false),
        ((col, row + 1), false),
        ((col, row - 1), false),
    ];
    if diagonal {
        for (dc, dr) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            out.push(((col + dc, row + dr), true));
        }
    }
    out
}

/// Row-major obstacle labels.
#[derive(Clone, Debug)]
pub struct Labels {
    pub rows: usize,
    pub cols: usize,
    pub blocked: Vec<bool>,
}

impl Labels {
    pub fn random(rng: &mut ChaCha8Rng, rows: usize, cols: usize, density: f64) -> Labels {
        Labels {
            rows,
            cols,
            blocked: (0..rows * cols).map(|_| rng.random::<f64>() < density).collect(),
        }
    }

    pub fn open_field(rows: usize, cols: usize) -> Labels {
        Labels {
            rows,
            cols,
            blocked: vec![false; rows * cols],
        }
    }

    pub fn get(&self, col: i32, row: i32) -> Option<bool> {
        if col < 0 || row < 0 || col as usize >= self.cols || row as usize >= self.rows {
            None
        } else {
            Some(self.blocked[row as usize * self.cols + col as usize])
        }
    }

    /// `1 + n²/4`, with `n` counting blocked or off-grid neighbors.
    pub fn weight(&self, col: i32, row: i32, hex: bool) -> Option<f64> {
        if self.get(col, row) != Some(false) {
            return None;
        }
        let around: Vec<(i32, i32)> = if hex {
            hex_neighbors(col, row).to_vec()
        } else {
            square_neighbors(col, row, true).into_iter().map(|(c, _)| c).collect()
        };
        let n = around.iter().filter(|&&(c, r)| self.get(c, r) != Some(false)).count() as f64;
        Some(1.0 + n * n / 4.0)
    }

    pub fn model(&self, hex: bool) -> EnvModel {
        let lattice = if hex {
            Lattice::Hex(HexLayout::new(0.0, 0.0, 0.01).unwrap())
        } else {
            Lattice::Square(SquareLayout::new(0.0, 0.0, 0.01).unwrap())
        };
        EnvModel::from_labels(lattice, self.rows, self.cols, &self.blocked)
            .unwrap()
            .assign_weights()
    }

    pub fn random_open_cell(&self, rng: &mut ChaCha8Rng) -> OffsetCoord {
        loop {
            let col = rng.random_range(0..self.cols as i32);
            let row = rng.random_range(0..self.rows as i32);
            if self.get(col, row) == Some(false) {
                return OffsetCoord::new(col, row);
            }
        }
    }
}

/// Dijkstra over the labels with costs kept as (orthogonal, diagonal)
/// weight sums, evaluated as `straight + √2·diagonal`.
pub fn oracle_cost(labels: &Labels, start: OffsetCoord, goal: OffsetCoord, mode: GridMode) -> Option<f64> {
    let value = |c: (f64, f64)| c.0 + c.1 * std::f64::consts::SQRT_2;
    let idx = |c: i32, r: i32| r as usize * labels.cols + c as usize;
    let mut best: Vec<Option<(f64, f64)>> = vec![None; labels.rows * labels.cols];
    let mut done = vec![false; labels.rows * labels.cols];
    let mut heap = BinaryHeap::new();
    best[idx(start.col, start.row)] = Some((0.0, 0.0));
    heap.push(Reverse((Key(0.0), start.col, start.row)));
    while let Some(Reverse((Key(d), c, r))) = heap.pop() {
        let i = idx(c, r);
        if done[i] {
            continue;
        }
        done[i] = true;
        let here = best[i].unwrap();
        debug_assert_eq!(value(here), d);
        if (c, r) == (goal.col, goal.row) {
            return Some(d);
        }
        let steps: Vec<((i32, i32), bool)> = match mode {
            GridMode::Hex => hex_neighbors(c, r).iter().map(|&n| (n, false)).collect(),
            GridMode::Square4 => square_neighbors(c, r, false),
            GridMode::Square8 => square_neighbors(c, r, true),
        };
        for ((nc, nr), diagonal) in steps {
            let Some(w) = labels.weight(nc, nr, mode == GridMode::Hex) else {
                continue;
            };
            let cand = if diagonal {
                (here.0, here.1 + w)
            } else {
                (here.0 + w, here.1)
            };
            let j = idx(nc, nr);
            if best[j].is_none_or(|b| value(cand) < value(b)) {
                best[j] = Some(cand);
                heap.push(Reverse((Key(value(cand)), nc, nr)));
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Key(pub f64);

impl Eq for Key {}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

pub const ALL_MODES: [GridMode; 3] = [GridMode::Hex, GridMode::Square4, GridMode::Square8];
