//! Maximal k-separated families inside annuli.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::space::bfs::bfs_layers;
use crate::space::Graph;

/// The annulus `{y : r_lo < d(center, y) <= r_hi}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Annulus {
    pub center: usize,
    pub r_lo: u32,
    pub r_hi: u32,
}

impl Annulus {
    pub fn new(center: usize, r_lo: u32, r_hi: u32) -> Self {
        Self { center, r_lo, r_hi }
    }

    /// Annulus members in ascending vertex order.
    pub fn members(&self, graph: &Graph) -> Result<Vec<usize>> {
        graph.check_vertex(self.center)?;
        if self.r_hi <= self.r_lo {
            return Ok(Vec::new());
        }
        let layers = bfs_layers(graph, self.center, self.r_hi);
        let mut out: Vec<usize> = layers
            .order
            .iter()
            .map(|&v| v as usize)
            .filter(|&v| layers.dist[v] > self.r_lo)
            .collect();
        out.sort_unstable();
        Ok(out)
    }
}

/// Greedy maximal `k`-separated subset of an annulus.
///
/// Vertices are scanned in ascending index order; a vertex joins the net when
/// no earlier net point lies within graph distance `k` of it. The result is
/// pairwise more than `k` apart and every annulus vertex is within `k` of a
/// net point. Distances are taken in the whole graph.
pub fn separated_net(graph: &Graph, annulus: Annulus, k: u32) -> Result<Vec<usize>> {
    if k == 0 {
        return Err(Error::InvalidParameter("separation k must be >= 1".into()));
    }
    let members = annulus.members(graph)?;
    let mut covered = vec![false; graph.vertex_count()];
    let mut net = Vec::new();
    for v in members {
        if covered[v] {
            continue;
        }
        net.push(v);
        let layers = bfs_layers(graph, v, k);
        for &u in &layers.order {
            covered[u as usize] = true;
        }
    }
    Ok(net)
}

/// Nets for several annuli, computed in parallel; output order follows input.
pub fn separated_nets(graph: &Graph, annuli: &[Annulus], k: u32) -> Result<Vec<Vec<usize>>> {
    annuli
        .par_iter()
        .map(|&a| separated_net(graph, a, k))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn empty_annulus() {
        let g = path(5);
        assert!(separated_net(&g, Annulus::new(0, 3, 3), 1).unwrap().is_empty());
        assert!(separated_net(&g, Annulus::new(0, 10, 12), 1).unwrap().is_empty());
    }

    #[test]
    fn zero_separation_rejected() {
        let g = path(5);
        assert!(separated_net(&g, Annulus::new(0, 0, 3), 0).is_err());
    }

    #[test]
    fn large_k_gives_one_point() {
        let g = path(20);
        let net = separated_net(&g, Annulus::new(0, 4, 15), 30).unwrap();
        assert_eq!(net, vec![5]);
    }
}
