//! Exact vertex connectivity via Menger's theorem.
//!
//! Each vertex `x` is split into `x_in -> x_out` with capacity one, and each
//! edge becomes a pair of unbounded arcs between the split halves. The number
//! of internally vertex-disjoint `a`-`b` paths is then the max flow from
//! `a_out` to `b_in`.

use std::collections::VecDeque;

use crate::graph::Graph;

struct FlowNet {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u32>,
}

impl FlowNet {
    fn new(nodes: usize) -> Self {
        FlowNet {
            head: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    fn arc(&mut self, a: usize, b: usize, c: u32) {
        self.head[a].push(self.to.len());
        self.to.push(b);
        self.cap.push(c);
        self.head[b].push(self.to.len());
        self.to.push(a);
        self.cap.push(0);
    }

    /// Augments along BFS paths until `limit` units flow or none remain.
    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut flow = 0;
        while flow < limit {
            let mut via = vec![usize::MAX; self.head.len()];
            let mut seen = vec![false; self.head.len()];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                if x == t {
                    break;
                }
                for &a in &self.head[x] {
                    let y = self.to[a];
                    if self.cap[a] > 0 && !seen[y] {
                        seen[y] = true;
                        via[y] = a;
                        queue.push_back(y);
                    }
                }
            }
            if !seen[t] {
                break;
            }
            let mut y = t;
            while y != s {
                let a = via[y];
                self.cap[a] -= 1;
                self.cap[a ^ 1] += 1;
                y = self.to[a ^ 1];
            }
            flow += 1;
        }
        flow
    }
}

/// Number of internally vertex-disjoint paths between two non-adjacent
/// vertices, capped at `limit`.
pub fn local_connectivity(g: &Graph, a: usize, b: usize, limit: usize) -> usize {
    let v = g.vertex_count();
    let inn = |x: usize| 2 * x;
    let out = |x: usize| 2 * x + 1;
    let big = v as u32 + 1;
    let mut net = FlowNet::new(2 * v);
    for x in 0..v {
        net.arc(inn(x), out(x), 1);
    }
    for &(u, w) in g.edges() {
        net.arc(out(u), inn(w), big);
        net.arc(out(w), inn(u), big);
    }
    net.max_flow(out(a), inn(b), limit)
}

/// True iff `g` has more than `k` vertices and no set of fewer than `k`
/// vertices disconnects it.
pub fn vertex_connectivity_at_least(g: &Graph, k: usize) -> bool {
    let v = g.vertex_count();
    if v <= k {
        return false;
    }
    if k == 0 {
        return true;
    }
    // A minimum separator S misses some vertex among any k of them, and that
    // vertex has a non-neighbour across S, so sources 0..k suffice.
    for a in 0..k {
        for b in 0..v {
            if a == b || g.has_edge(a, b) || (b < k && b < a) {
                continue;
            }
            if local_connectivity(g, a, b, k) < k {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, generate, Family};
    use proptest::prelude::*;

    /// Brute force: delete every vertex subset of size < k.
    fn brute_force(g: &Graph, k: usize) -> bool {
        let v = g.vertex_count();
        if v <= k {
            return false;
        }
        for mask in 0u32..(1 << v) {
            if (mask.count_ones() as usize) >= k {
                continue;
            }
            let mut h = g.clone();
            for x in (0..v).rev() {
                if mask & (1 << x) != 0 {
                    h = h.delete_vertex(x);
                }
            }
            if !h.is_connected() {
                return false;
            }
        }
        true
    }

    #[test]
    fn named_examples() {
        let k55 = generate(Family::CompleteBipartite, &[5, 5]).unwrap();
        assert!(vertex_connectivity_at_least(&k55, 4));
        assert!(vertex_connectivity_at_least(&k55, 5));
        assert!(!vertex_connectivity_at_least(&k55, 6));
        let p3 = generate(Family::Path, &[3]).unwrap();
        assert!(!vertex_connectivity_at_least(&p3, 2));
        assert!(vertex_connectivity_at_least(&complete(4), 3));
        assert!(!vertex_connectivity_at_least(&complete(4), 4));
    }

    #[test]
    fn prism_is_three_connected() {
        let g = generate(Family::Prism, &[]).unwrap();
        assert!(vertex_connectivity_at_least(&g, 3));
        assert!(!vertex_connectivity_at_least(&g, 4));
    }

    #[test]
    fn disconnected_graph() {
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert!(vertex_connectivity_at_least(&g, 0));
        assert!(!vertex_connectivity_at_least(&g, 1));
    }

    fn small_graph() -> impl Strategy<Value = Graph> {
        (1usize..=8).prop_flat_map(|v| {
            let pairs: Vec<(usize, usize)> = (0..v)
                .flat_map(|u| (u + 1..v).map(move |w| (u, w)))
                .collect();
            let n = pairs.len();
            proptest::collection::vec(any::<bool>(), n).prop_map(move |keep| {
                let edges = pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| *e);
                Graph::new(v, edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn agrees_with_brute_force(g in small_graph(), k in 1usize..5) {
            prop_assert_eq!(vertex_connectivity_at_least(&g, k), brute_force(&g, k));
        }
    }
}
