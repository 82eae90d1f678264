#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rigidity::Graph;

/// Random connected graph: a random spanning tree plus each remaining pair
/// with probability `density`.
pub fn random_connected<R: Rng>(v: usize, density: f64, rng: &mut R) -> Graph {
    let mut order: Vec<usize> = (0..v).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 1..v {
        let parent = order[rng.random_range(0..i)];
        edges.push((order[i], parent));
    }
    let tree = Graph::new(v, edges.clone()).unwrap();
    for u in 0..v {
        for w in u + 1..v {
            if !tree.has_edge(u, w) && rng.random_bool(density) {
                edges.push((u, w));
            }
        }
    }
    Graph::new(v, edges).unwrap()
}
