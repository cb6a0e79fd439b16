//! Undirected graph with edge ids, plus the shortest-path machinery shared by
//! the optimizer, the baselines and the metrics.

use alloc::collections::{BinaryHeap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    adj: Vec<Vec<(usize, usize)>>,
    ends: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph on `n` nodes. Adjacency lists are sorted by neighbour id
    /// so every traversal is deterministic.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Graph {
        let mut adj = vec![Vec::new(); n];
        for (id, &(a, b)) in edges.iter().enumerate() {
            adj[a].push((b, id));
            adj[b].push((a, id));
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        Graph {
            adj,
            ends: edges.to_vec(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    /// `(neighbour, edge id)` pairs.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.ends[e]
    }

    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        self.adj[a].iter().find(|&&(w, _)| w == b).map(|&(_, e)| e)
    }

    /// Nodes reachable from `s`.
    pub fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.node_count()];
        let mut queue = VecDeque::new();
        seen[s] = true;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for &(w, _) in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.node_count() == 0 || self.reachable(0).iter().all(|&r| r)
    }
}

/// Nodes and edges excluded from a search.
#[derive(Clone, Copy, Debug, Default)]
pub struct Mask<'a> {
    pub nodes: Option<&'a [bool]>,
    pub edges: Option<&'a [bool]>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct HeapItem {
    cost: f64,
    node: usize,
}

impl Eq for HeapItem {}

impl Ord for HeapItem {
    // min-heap on (cost, node)
    fn cmp(&self, o: &Self) -> Ordering {
        o.cost.total_cmp(&self.cost).then_with(|| o.node.cmp(&self.node))
    }
}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Dijkstra from `s`, stopping once `target` is settled. Returns distances
/// (infinite when unreached) and predecessor nodes.
pub fn dijkstra(
    g: &Graph,
    weights: &[f64],
    s: usize,
    target: Option<usize>,
    mask: Mask<'_>,
) -> (Vec<f64>, Vec<Option<usize>>) {
    let n = g.node_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut pred = vec![None; n];
    let mut done = vec![false; n];
    let banned_node = |v: usize| mask.nodes.is_some_and(|m| m[v]);
    let banned_edge = |e: usize| mask.edges.is_some_and(|m| m[e]);
    if banned_node(s) {
        return (dist, pred);
    }
    dist[s] = 0.0;
    let mut heap = BinaryHeap::new();
    heap.push(HeapItem { cost: 0.0, node: s });
    while let Some(HeapItem { cost, node }) = heap.pop() {
        if done[node] {
            continue;
        }
        done[node] = true;
        if Some(node) == target {
            break;
        }
        for &(w, e) in g.neighbors(node) {
            if done[w] || banned_node(w) || banned_edge(e) {
                continue;
            }
            let c = cost + weights[e];
            if c < dist[w] {
                dist[w] = c;
                pred[w] = Some(node);
                heap.push(HeapItem { cost: c, node: w });
            }
        }
    }
    (dist, pred)
}

/// Shortest `s`-`t` path as `(cost, nodes)`.
pub fn shortest_path(
    g: &Graph,
    weights: &[f64],
    s: usize,
    t: usize,
    mask: Mask<'_>,
) -> Option<(f64, Vec<usize>)> {
    let (dist, pred) = dijkstra(g, weights, s, Some(t), mask);
    if !dist[t].is_finite() {
        return None;
    }
    let mut path = vec![t];
    let mut v = t;
    while let Some(p) = pred[v] {
        path.push(p);
        v = p;
    }
    path.reverse();
    Some((dist[t], path))
}

/// Edge ids along a node path; `None` if two consecutive nodes are not
/// adjacent.
pub fn path_edges(g: &Graph, path: &[usize]) -> Option<Vec<usize>> {
    path.windows(2).map(|w| g.edge_between(w[0], w[1])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shortest_path_prefers_lighter_route() {
        let g = Graph::new(4, &[(0, 1), (1, 3), (0, 2), (2, 3)]);
        let w = [1.0, 1.0, 0.5, 1.0];
        let (c, p) = shortest_path(&g, &w, 0, 3, Mask::default()).unwrap();
        assert_eq!(p, vec![0, 2, 3]);
        assert_eq!(c, 1.5);

        let banned = [false, false, true, false];
        let (_, p) = shortest_path(&g, &w, 0, 3, Mask { nodes: Some(&banned), edges: None }).unwrap();
        assert_eq!(p, vec![0, 1, 3]);
    }

    #[test]
    fn unreachable_is_none() {
        let g = Graph::new(3, &[(0, 1)]);
        assert!(shortest_path(&g, &[1.0], 0, 2, Mask::default()).is_none());
        assert!(!g.is_connected());
    }
}
