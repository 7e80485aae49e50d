//! Monotone geodesic chains and the concentric-ball Hausdorff constant.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::space::bfs::{bfs_distances, bfs_layers};
use crate::space::Graph;

/// A chain `x_0 = x, ..., x_m = y` whose distance from `x` grows by at least
/// one per step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeodesicChain {
    pub points: Vec<usize>,
    /// Largest distance between consecutive points.
    pub step_bound: u32,
}

impl GeodesicChain {
    /// Checks `d(x_i, x) <= d(x_{i+1}, x) - 1` and the recorded step bound
    /// against fresh BFS distances.
    pub fn verify(&self, graph: &Graph) -> Result<bool> {
        let Some(&x) = self.points.first() else {
            return Ok(false);
        };
        let from_x = bfs_distances(graph, x, u32::MAX - 1)?;
        let mut max_step = 0;
        for w in self.points.windows(2) {
            let (a, b) = (w[0], w[1]);
            let (Some(da), Some(db)) = (from_x.get(a), from_x.get(b)) else {
                return Ok(false);
            };
            if da + 1 > db {
                return Ok(false);
            }
            let step = bfs_distances(graph, a, u32::MAX - 1)?
                .get(b)
                .ok_or(Error::Disconnected { from: a, to: b })?;
            max_step = max_step.max(step);
        }
        Ok(max_step == self.step_bound)
    }
}

/// Builds a monotone chain from `x` to `y`.
///
/// From the current point the walk moves to the smallest-index point within
/// one step whose distance to `y` drops by at least one, so each step has
/// length one and the chain is a shortest path. Shortest paths are monotone
/// as seen from `x`.
pub fn monotone_geodesic(graph: &Graph, x: usize, y: usize) -> Result<GeodesicChain> {
    graph.check_vertex(x)?;
    graph.check_vertex(y)?;
    let to_y = bfs_distances(graph, y, u32::MAX - 1)?;
    let Some(mut remaining) = to_y.get(x) else {
        return Err(Error::Disconnected { from: x, to: y });
    };
    let mut points = vec![x];
    let mut current = x;
    while remaining > 0 {
        let next = graph
            .neighbors(current)
            .find(|&v| to_y.get(v).is_some_and(|d| d < remaining))
            .expect("a vertex at positive distance has a neighbor closer to the target");
        remaining = to_y.get(next).unwrap();
        points.push(next);
        current = next;
    }
    let step_bound = u32::from(points.len() > 1);
    Ok(GeodesicChain { points, step_bound })
}

/// Chains for many pairs, computed in parallel; output order follows input.
pub fn monotone_geodesics(graph: &Graph, pairs: &[(usize, usize)]) -> Result<Vec<GeodesicChain>> {
    pairs
        .par_iter()
        .map(|&(x, y)| monotone_geodesic(graph, x, y))
        .collect()
}

/// Largest `d(y, B(x, r))` over sampled centers `x`, radii `0 <= r <= R`
/// and points `y` in `B(x, r + 1)`.
///
/// Points already inside `B(x, r)` contribute zero, so only the shell at
/// distance exactly `r + 1` is searched, each by a local BFS that stops at
/// the first point of `B(x, r)`.
pub fn property_m_constant(graph: &Graph, centers: &[usize], max_radius: u32) -> Result<u32> {
    if centers.is_empty() {
        return Err(Error::InvalidParameter("center sample is empty".into()));
    }
    for &c in centers {
        graph.check_vertex(c)?;
    }
    let per_center: Vec<u32> = centers
        .par_iter()
        .map(|&x| {
            let layers = bfs_layers(graph, x, max_radius.saturating_add(1));
            let mut worst = 0;
            for r in 0..=max_radius as usize {
                if r + 1 >= layers.layer_end.len() {
                    break;
                }
                let shell = &layers.order[layers.layer_end[r]..layers.layer_end[r + 1]];
                for &y in shell {
                    worst = worst.max(distance_to_ball(graph, &layers.dist, y as usize, r as u32));
                }
            }
            worst
        })
        .collect();
    Ok(per_center.into_iter().max().unwrap_or(0))
}

fn distance_to_ball(graph: &Graph, dist_from_x: &[u32], y: usize, r: u32) -> u32 {
    if dist_from_x[y] <= r {
        return 0;
    }
    let mut seen = rustc_hash::FxHashSet::default();
    seen.insert(y);
    let mut frontier = vec![y];
    let mut depth = 0;
    loop {
        depth += 1;
        let mut next = Vec::new();
        for &u in &frontier {
            for v in graph.neighbors(u) {
                if dist_from_x[v] <= r {
                    return depth;
                }
                if seen.insert(v) {
                    next.push(v);
                }
            }
        }
        assert!(!next.is_empty(), "ball B(x, r) is reachable from y");
        frontier = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn trivial_chain() {
        let g = path(3);
        let c = monotone_geodesic(&g, 1, 1).unwrap();
        assert_eq!(c.points, vec![1]);
        assert_eq!(c.step_bound, 0);
        assert!(c.verify(&g).unwrap());
    }

    #[test]
    fn path_chain() {
        let g = path(4);
        let c = monotone_geodesic(&g, 0, 3).unwrap();
        assert_eq!(c.points, vec![0, 1, 2, 3]);
        assert_eq!(c.step_bound, 1);
        assert!(c.verify(&g).unwrap());
    }

    #[test]
    fn disconnected_pair_rejected() {
        // Graphs are connected by construction; an out-of-range target errors.
        let g = path(3);
        assert!(monotone_geodesic(&g, 0, 9).is_err());
    }

    #[test]
    fn property_m_on_path_and_single_vertex() {
        let g = path(6);
        assert_eq!(property_m_constant(&g, &[0, 2], 4).unwrap(), 1);
        let single = Graph::from_edges(1, &[]).unwrap();
        assert_eq!(property_m_constant(&single, &[0], 3).unwrap(), 0);
        assert!(property_m_constant(&g, &[], 3).is_err());
    }
}
