mod common;

use common::{oracle_cost, Labels, ALL_MODES};
use hexroute_core::hexgrid::{cube_distance, cube_to_offset, line_cells, offset_to_cube, DIRECTIONS};
use hexroute_core::search::{plan_cells, PlanOptions};
use hexroute_core::smoothing::{annotate_turns, corridor_max_weight, smooth_cells};
use hexroute_core::tour::{default_labels, transition_probabilities, PheromoneState};
use hexroute_core::{
    brute_force, solve, AcoConfig, CubeCoord, EnvModel, GeoPoint, HeuristicMode, HexLayout, OffsetCoord, TaskNetwork,
    TurnSpec,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn offset() -> impl Strategy<Value = OffsetCoord> {
    (-100_000i32..100_000, -100_000i32..100_000).prop_map(|(c, r)| OffsetCoord::new(c, r))
}

fn cube() -> impl Strategy<Value = CubeCoord> {
    (-1000i32..1000, -1000i32..1000).prop_map(|(x, z)| CubeCoord::from_xz(x, z))
}

fn network(max_tasks: usize) -> impl Strategy<Value = TaskNetwork> {
    (1..=max_tasks).prop_flat_map(|tasks| {
        let n = tasks + 2;
        proptest::collection::vec(0.5f64..40.0, n * n).prop_map(move |raw| {
            let mut m = vec![vec![None; n]; n];
            for i in 0..n {
                for j in (i + 1)..n {
                    m[i][j] = Some(raw[i * n + j]);
                    m[j][i] = m[i][j];
                }
            }
            TaskNetwork::new(default_labels(n - 2), m).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn offset_cube_roundtrip(o in offset()) {
        let c = offset_to_cube(o);
        prop_assert_eq!(c.x() + c.y() + c.z(), 0);
        prop_assert_eq!(cube_to_offset(c), o);
    }

    #[test]
    fn distance_is_a_metric(a in cube(), b in cube(), c in cube()) {
        prop_assert_eq!(cube_distance(a, b), cube_distance(b, a));
        prop_assert_eq!(cube_distance(a, a), 0);
        prop_assert!(cube_distance(a, c) <= cube_distance(a, b) + cube_distance(b, c));
    }

    #[test]
    fn neighbors_are_one_step_and_match_offsets(a in cube()) {
        let o = cube_to_offset(a);
        let mut from_offsets: Vec<OffsetCoord> = common::hex_neighbors(o.col, o.row)
            .iter()
            .map(|&(c, r)| OffsetCoord::new(c, r))
            .collect();
        let mut from_cube: Vec<OffsetCoord> = a.neighbors().iter().map(|n| n.to_offset()).collect();
        prop_assert!(a.neighbors().iter().all(|&n| cube_distance(a, n) == 1));
        from_offsets.sort();
        from_cube.sort();
        prop_assert_eq!(from_offsets, from_cube);
        prop_assert_eq!(a.neighbors()[0], a + DIRECTIONS[0]);
    }

    #[test]
    fn geo_roundtrip(o in (0i32..2000, 0i32..2000), size in 0.0005f64..0.05) {
        let layout = HexLayout::new(112.5, 22.0, size).unwrap();
        let o = OffsetCoord::new(o.0, o.1);
        prop_assert_eq!(layout.geo_to_grid(layout.grid_to_geo(o)), o);
    }

    #[test]
    fn geo_to_grid_picks_the_nearest_center(lon in 0.0f64..1.0, lat in -1.0f64..0.0) {
        let layout = HexLayout::new(0.0, 0.0, 0.01).unwrap();
        let p = GeoPoint::new(lon, lat);
        let o = layout.geo_to_grid(p);
        let d = p.distance(&layout.grid_to_geo(o));
        for n in o.to_cube().neighbors() {
            prop_assert!(d <= p.distance(&layout.grid_to_geo(n.to_offset())) + 1e-12);
        }
    }

    #[test]
    fn line_cells_connect_endpoints(a in cube(), b in cube()) {
        let cells = line_cells(a, b);
        prop_assert_eq!(cells.first(), Some(&a));
        prop_assert!(cells.contains(&b));
        prop_assert!(cells.len() as u32 > cube_distance(a, b));
        let mut sorted = cells.clone();
        sorted.sort_by_key(|c| (c.x(), c.z()));
        sorted.dedup();
        prop_assert_eq!(sorted.len(), cells.len());
    }

    #[test]
    fn weights_follow_neighbor_count(seed in any::<u64>(), hex in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let labels = Labels::random(&mut rng, 12, 9, 0.35);
        let model = labels.model(hex);
        for r in 0..12 {
            for c in 0..9 {
                prop_assert_eq!(model.weight(OffsetCoord::new(c, r)), labels.weight(c, r, hex));
            }
        }
    }

    #[test]
    fn model_json_roundtrip(seed in any::<u64>(), hex in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let model = Labels::random(&mut rng, 7, 11, 0.3).model(hex);
        let text = serde_json::to_string(&model).unwrap();
        let back: EnvModel = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, model);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn plan_matches_oracle(seed in any::<u64>(), density in 0.0f64..0.45) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let labels = Labels::random(&mut rng, 24, 24, density);
        let (s, g) = (labels.random_open_cell(&mut rng), labels.random_open_cell(&mut rng));
        for grid in ALL_MODES {
            let model = labels.model(grid.is_hex());
            let expected = oracle_cost(&labels, s, g, grid);
            for h in [HeuristicMode::Guided, HeuristicMode::Plain] {
                let out = plan_cells(&model, s, g, grid, h, &PlanOptions::default()).unwrap();
                if let Some(p) = &out.path {
                    prop_assert_eq!(p.cells.first(), Some(&s));
                    prop_assert_eq!(p.cells.last(), Some(&g));
                    prop_assert!(p.cells.iter().all(|&c| model.is_navigable(c)));
                    prop_assert!(p.cells.windows(2).all(|w| model.lattice().adjacent(w[0], w[1])));
                }
                prop_assert_eq!(out.path.map(|p| p.sailing_cost), expected);
            }
        }
    }

    #[test]
    fn smoothing_invariants(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let labels = Labels::random(&mut rng, 30, 30, 0.2);
        let model = labels.model(true);
        let (s, g) = (labels.random_open_cell(&mut rng), labels.random_open_cell(&mut rng));
        let out = plan_cells(&model, s, g, hexroute_core::GridMode::Hex, HeuristicMode::Guided, &PlanOptions::default()).unwrap();
        if let Some(raw) = out.path {
            let smoothed = smooth_cells(&model, &raw.cells);
            prop_assert!(smoothed.len() <= raw.cells.len());
            prop_assert_eq!(smoothed.first(), raw.cells.first());
            prop_assert_eq!(smoothed.last(), raw.cells.last());
            prop_assert!(corridor_max_weight(&model, &smoothed).unwrap() <= model.max_weight(&raw.cells).unwrap());
            prop_assert_eq!(smooth_cells(&model, &smoothed), smoothed.clone());
            if smoothed.len() > 1 {
                let points: Vec<GeoPoint> = smoothed.iter().map(|&o| model.center(o)).collect();
                let spec = TurnSpec::for_cell_size(0.01).unwrap();
                let waypoints = annotate_turns(&points, &spec).unwrap();
                prop_assert!(waypoints.first().unwrap().turn.is_none());
                prop_assert!(waypoints.last().unwrap().turn.is_none());
            }
        }
    }

    #[test]
    fn transition_probabilities_form_a_distribution(net in network(7), alpha in 0.0f64..3.0, beta in 0.0f64..6.0) {
        let cfg = AcoConfig { alpha, beta, ..AcoConfig::default() };
        let state = PheromoneState::new(&net, &cfg);
        let allowed: Vec<usize> = net.tasks().collect();
        let p = transition_probabilities(&state, &cfg, &net, net.start(), &allowed).unwrap();
        prop_assert!((p.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        prop_assert!(p.iter().all(|&x| (0.0..=1.0).contains(&x)));
    }

    #[test]
    fn aco_never_beats_the_oracle(net in network(6), seed in any::<u64>()) {
        let cfg = AcoConfig { seed, max_iterations: 60, ..AcoConfig::default() };
        let aco = solve(&net, &cfg).unwrap();
        let exact = brute_force(&net).unwrap();
        prop_assert!(aco.length >= exact.length);
        let mut visited = aco.order.clone();
        visited.sort();
        prop_assert_eq!(visited, net.tasks().collect::<Vec<_>>());
        prop_assert_eq!(net.tour_length(&aco.order), Some(aco.length));
        prop_assert!(aco.history.windows(2).all(|w| w[1] <= w[0]));
        prop_assert_eq!(solve(&net, &cfg).unwrap(), aco);
    }

    #[test]
    fn network_json_roundtrip(net in network(5)) {
        let text = serde_json::to_string(&net).unwrap();
        let back: TaskNetwork = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, net);
    }
}
