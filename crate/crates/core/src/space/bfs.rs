//! Breadth-first distances and ball/sphere volume profiles.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::space::Graph;

const UNREACHED: u32 = u32::MAX;

/// Exact shortest-path distances from one center, truncated at a cutoff.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distances {
    center: usize,
    cutoff: u32,
    dist: Vec<u32>,
    reached: usize,
}

impl Distances {
    pub fn center(&self) -> usize {
        self.center
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    /// Distance to `v`, or `None` when `v` lies beyond the cutoff.
    #[inline]
    pub fn get(&self, v: usize) -> Option<u32> {
        match self.dist.get(v) {
            Some(&d) if d != UNREACHED => Some(d),
            _ => None,
        }
    }

    /// Number of vertices within the cutoff.
    pub fn len(&self) -> usize {
        self.reached
    }

    pub fn is_empty(&self) -> bool {
        self.reached == 0
    }

    /// `(vertex, distance)` pairs in ascending vertex order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.dist
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != UNREACHED)
            .map(|(v, &d)| (v, d))
    }
}

/// Layered BFS output: vertices in visiting order plus layer end offsets.
pub(crate) struct Layers {
    pub dist: Vec<u32>,
    pub order: Vec<u32>,
    /// `layer_end[r]` is the number of vertices at distance `<= r`.
    pub layer_end: Vec<usize>,
    /// True when the frontier emptied before reaching the cutoff.
    pub exhausted: bool,
}

pub(crate) fn bfs_layers(graph: &Graph, center: usize, cutoff: u32) -> Layers {
    let n = graph.vertex_count();
    let mut dist = vec![UNREACHED; n];
    let mut order = Vec::new();
    let mut layer_end = Vec::new();
    dist[center] = 0;
    order.push(center as u32);
    layer_end.push(1);
    let mut start = 0;
    let mut depth = 0u32;
    let mut exhausted = false;
    while depth < cutoff {
        let end = order.len();
        for i in start..end {
            let u = order[i] as usize;
            for &v in graph.neighbor_slice(u) {
                let slot = &mut dist[v as usize];
                if *slot == UNREACHED {
                    *slot = depth + 1;
                    order.push(v);
                }
            }
        }
        if order.len() == end {
            exhausted = true;
            break;
        }
        start = end;
        depth += 1;
        layer_end.push(order.len());
    }
    if !exhausted && depth == cutoff {
        // Peek one layer further without recording it.
        let last_start = if layer_end.len() >= 2 {
            layer_end[layer_end.len() - 2]
        } else {
            0
        };
        exhausted = order[last_start..]
            .iter()
            .all(|&u| graph.neighbor_slice(u as usize).iter().all(|&v| dist[v as usize] != UNREACHED));
    }
    Layers {
        dist,
        order,
        layer_end,
        exhausted,
    }
}

pub(crate) fn component_size(graph: &Graph, center: usize) -> usize {
    bfs_layers(graph, center, u32::MAX - 1).order.len()
}

/// Shortest-path distances from `center` for every vertex within `cutoff`.
pub fn bfs_distances(graph: &Graph, center: usize, cutoff: u32) -> Result<Distances> {
    graph.check_vertex(center)?;
    let layers = bfs_layers(graph, center, cutoff);
    Ok(Distances {
        center,
        cutoff,
        reached: layers.order.len(),
        dist: layers.dist,
    })
}

/// Ball and sphere volumes around one center for radii `0..=R`.
///
/// `ball[r] = |B(x, r)|` with closed balls and `sphere[r] = ball[r+1] - ball[r]`
/// for `r < R`, i.e. the points at distance exactly `r + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VolumeProfile {
    center: usize,
    ball: Vec<u64>,
    sphere: Vec<u64>,
    exhausted: bool,
}

impl VolumeProfile {
    /// Builds a profile from ball volumes `ball[0..=R]`. When `exhausted` is
    /// set, balls beyond `R` are taken to equal `ball[R]`.
    pub fn from_balls(center: usize, ball: Vec<u64>, exhausted: bool) -> Result<Self> {
        if ball.is_empty() {
            return Err(Error::Degenerate("empty ball sequence".into()));
        }
        if ball[0] < 1 {
            return Err(Error::Degenerate("ball[0] must contain the center".into()));
        }
        if ball.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::Degenerate("ball volumes must be nondecreasing".into()));
        }
        let sphere = ball.windows(2).map(|w| w[1] - w[0]).collect();
        Ok(Self {
            center,
            ball,
            sphere,
            exhausted,
        })
    }

    pub fn center(&self) -> usize {
        self.center
    }

    pub fn max_radius(&self) -> usize {
        self.ball.len() - 1
    }

    pub fn balls(&self) -> &[u64] {
        &self.ball
    }

    pub fn spheres(&self) -> &[u64] {
        &self.sphere
    }

    /// True when the center's whole component fits within `max_radius`.
    pub fn is_exhausted(&self) -> bool {
        self.exhausted
    }

    /// `|B(x, r)|`, extended past `max_radius` only for exhausted profiles.
    pub fn ball(&self, r: usize) -> Option<u64> {
        match self.ball.get(r) {
            Some(&b) => Some(b),
            None if self.exhausted => self.ball.last().copied(),
            None => None,
        }
    }

    /// `|S(x, r)| = |B(x, r+1)| - |B(x, r)|`.
    pub fn sphere(&self, r: usize) -> Option<u64> {
        Some(self.ball(r + 1)? - self.ball(r)?)
    }

    /// `|B(x, hi) \ B(x, lo)|` for `lo <= hi`.
    pub fn shell(&self, lo: usize, hi: usize) -> Option<u64> {
        debug_assert!(lo <= hi);
        Some(self.ball(hi)? - self.ball(lo)?)
    }

    /// Largest radius `r` for which `ball(r)` is defined, or `None` when unbounded.
    pub fn depth_limit(&self) -> Option<usize> {
        (!self.exhausted).then_some(self.max_radius())
    }

    pub(crate) fn require_depth(&self, need: usize) -> Result<()> {
        if self.exhausted || self.max_radius() >= need {
            Ok(())
        } else {
            Err(Error::InsufficientDepth {
                have: self.max_radius(),
                need,
            })
        }
    }
}

/// Volume profile of `graph` around `center` up to radius `max_radius`.
pub fn volume_profile(graph: &Graph, center: usize, max_radius: usize) -> Result<VolumeProfile> {
    graph.check_vertex(center)?;
    let cutoff = u32::try_from(max_radius)
        .map_err(|_| Error::InvalidParameter(format!("radius {max_radius} too large")))?;
    let layers = bfs_layers(graph, center, cutoff);
    let mut ball: Vec<u64> = layers.layer_end.iter().map(|&e| e as u64).collect();
    let total = *ball.last().unwrap();
    ball.resize(max_radius + 1, total);
    VolumeProfile::from_balls(center, ball, layers.exhausted)
}

/// Profiles for many centers, computed in parallel. Output order follows `centers`.
pub fn volume_profiles(
    graph: &Graph,
    centers: &[usize],
    max_radius: usize,
) -> Result<Vec<VolumeProfile>> {
    centers
        .par_iter()
        .map(|&c| volume_profile(graph, c, max_radius))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::GraphBuilder;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn path_distances() {
        let g = path(3);
        let d = bfs_distances(&g, 0, 2).unwrap();
        assert_eq!(d.iter().collect::<Vec<_>>(), vec![(0, 0), (1, 1), (2, 2)]);
        let d = bfs_distances(&g, 0, 1).unwrap();
        assert_eq!(d.get(2), None);
        assert_eq!(d.len(), 2);
    }

    #[test]
    fn radius_zero_is_center_only() {
        let g = path(5);
        let d = bfs_distances(&g, 3, 0).unwrap();
        assert_eq!(d.iter().collect::<Vec<_>>(), vec![(3, 0)]);
    }

    #[test]
    fn invalid_center() {
        let g = path(3);
        assert!(matches!(
            bfs_distances(&g, 7, 1),
            Err(Error::InvalidVertex { vertex: 7, count: 3 })
        ));
        assert!(volume_profile(&g, 3, 1).is_err());
    }

    #[test]
    fn profile_exhaustion() {
        let g = path(4);
        let p = volume_profile(&g, 0, 10).unwrap();
        assert!(p.is_exhausted());
        assert_eq!(p.balls()[..5], [1, 2, 3, 4, 4]);
        assert_eq!(p.ball(50), Some(4));
        let p = volume_profile(&g, 0, 3).unwrap();
        assert!(p.is_exhausted());
        let p = volume_profile(&g, 0, 2).unwrap();
        assert!(!p.is_exhausted());
        assert_eq!(p.ball(3), None);
        assert_eq!(p.sphere(1), Some(1));
        assert_eq!(p.sphere(2), None);
    }

    #[test]
    fn star_profile() {
        let mut b = GraphBuilder::with_vertices(1);
        for _ in 0..4 {
            b.add_path(0, 2, None, None);
        }
        let g = b.build().unwrap();
        let p = volume_profile(&g, 0, 2).unwrap();
        assert_eq!(p.balls(), &[1, 5, 9]);
        assert_eq!(p.spheres(), &[4, 4]);
    }

    #[test]
    fn from_balls_rejects_decreasing() {
        assert!(VolumeProfile::from_balls(0, vec![1, 3, 2], false).is_err());
        assert!(VolumeProfile::from_balls(0, vec![0, 3], false).is_err());
        assert!(VolumeProfile::from_balls(0, vec![], false).is_err());
    }
}
