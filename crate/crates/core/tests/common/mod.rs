#![allow(dead_code)]

use std::collections::BTreeSet;

use pendnet::graph::{self, MatchedPartition};
use pendnet::Graph;
use rand::Rng;

/// Every connected labelled graph on `n` nodes.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    (0u64..1 << pairs.len())
        .filter_map(|mask| {
            let edges = pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e);
            Graph::new(n, edges).ok().filter(Graph::is_connected)
        })
        .collect()
}

/// `{-1, 0, 1}` vectors carrying both signs, first non-zero entry -1.
pub fn canonical_sign_patterns(n: usize) -> Vec<Vec<i8>> {
    (0..3usize.pow(n as u32))
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let e = (code % 3) as i8 - 1;
                    code /= 3;
                    e
                })
                .collect::<Vec<i8>>()
        })
        .filter(|v| v.contains(&1) && v.contains(&-1) && v.iter().find(|&&e| e != 0) == Some(&-1))
        .collect()
}

pub fn partition_of(v: &[i8]) -> MatchedPartition {
    let pick = |s: i8| v.iter().enumerate().filter(|(_, &e)| e == s).map(|(i, _)| i).collect();
    MatchedPartition::single(v.len(), pick(0), pick(1), pick(-1)).unwrap()
}

/// Sign patterns whose single-letter partition is odd-balanced.
pub fn balanced_patterns(g: &Graph) -> BTreeSet<Vec<i8>> {
    canonical_sign_patterns(g.node_count())
        .into_iter()
        .filter(|v| graph::verify_odd_balanced(g, &partition_of(v)).unwrap().balanced)
        .collect()
}

/// Sign eigenvectors pushed through the induced partition and read back as
/// canonical sign patterns.
pub fn eigenvector_patterns(g: &Graph) -> BTreeSet<Vec<i8>> {
    graph::find_sign_eigenvectors(g, true)
        .unwrap()
        .into_iter()
        .map(|v| {
            let p = graph::sign_vector_to_partition(&v);
            let mut e = vec![0i8; g.node_count()];
            for &i in &p.classes()[1] {
                e[i] = 1;
            }
            for &i in &p.classes()[2] {
                e[i] = -1;
            }
            if e.iter().find(|&&x| x != 0) == Some(&1) {
                e.iter_mut().for_each(|x| *x = -*x);
            }
            e
        })
        .collect()
}

/// Erdos-Renyi graphs with `n` in `[2, 10]` and edge probability in
/// `[0.2, 0.9]`, keeping only connected draws.
pub fn random_connected(rng: &mut impl Rng, count: usize) -> Vec<Graph> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(2..=10);
        let p = rng.gen_range(0.2..=0.9);
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(p) {
                    edges.push((i, j));
                }
            }
        }
        let g = Graph::new(n, edges).unwrap();
        if g.is_connected() {
            out.push(g);
        }
    }
    out
}
