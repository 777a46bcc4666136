// Copyright 2026 The ftcb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

mod common;

use ftcb_core::circuit::normalize_to_clifford_rz;
use ftcb_core::generators::gen_qft;
use ftcb_core::metrics::{build_ct_graph, degree_stats, louvain, modularity, InteractionGraph};
use ftcb_core::oracle::exhaustive_modularity;
use rand::Rng;

fn random_graph(rng: &mut impl Rng) -> InteractionGraph {
    let n = rng.random_range(2..=8);
    let mut g = InteractionGraph::new(n);
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(0.45) {
                g.add_weight(a, b, rng.random_range(1..=5)).unwrap();
            }
        }
    }
    g
}

#[test]
fn louvain_never_beats_exhaustive() {
    let mut rng = common::rng(6);
    for _ in 0..50 {
        let g = random_graph(&mut rng);
        let (best, _) = exhaustive_modularity(&g).unwrap();
        for seed in [0, 1, 2] {
            let r = louvain(&g, seed);
            assert!(r.q <= best + 1e-12, "{} > {best}", r.q);
            assert!((modularity(&g, &r.assignment) - r.q).abs() < 1e-12);
        }
    }
}

#[test]
fn two_triangles_with_bridge() {
    let mut g = InteractionGraph::new(6);
    for (a, b) in [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)] {
        g.add_weight(a, b, 1).unwrap();
    }
    let (best, _) = exhaustive_modularity(&g).unwrap();
    let r = louvain(&g, 0);
    assert!((best - 5.0 / 14.0).abs() < 1e-12);
    assert!((r.q - 5.0 / 14.0).abs() < 1e-12);
    assert_eq!(r.community_count, 2);
}

#[test]
fn uniform_complete_graph_is_one_community() {
    let mut g = InteractionGraph::new(5);
    for a in 0..5 {
        for b in a + 1..5 {
            g.add_weight(a, b, 3).unwrap();
        }
    }
    let r = louvain(&g, 0);
    assert!(r.q.abs() < 1e-12);
    assert_eq!(r.community_count, 1);
}

#[test]
fn small_qft_graph_is_complete() {
    for n in [2, 5, 9] {
        let c = normalize_to_clifford_rz(&gen_qft(n, false));
        let g = build_ct_graph(&c);
        assert!(g.is_complete());
        let d = degree_stats(&g);
        assert_eq!(d.unweighted.mean, (n - 1) as f64);
        assert_eq!(d.unweighted.std, 0.0);
    }
}
