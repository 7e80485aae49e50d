//! Metric measure spaces beyond the plain path metric.
//!
//! Two cases show up: a subset of a graph carrying the distance of the host
//! graph (not a graph itself, e.g. even points of a subdivided line), and a
//! planar point set carrying the Euclidean distance of the plane.

use crate::error::{Error, Result};
use crate::space::bfs::{bfs_distances, bfs_layers};
use crate::space::{Graph, VolumeProfile};

/// A finite metric space with counting measure.
pub trait MetricSpace: Sync {
    fn point_count(&self) -> usize;

    /// Distances from `from` to every point.
    fn distance_row(&self, from: usize) -> Result<Vec<f64>>;

    /// `ceil(d(from, y))` for every point, so that `d <= r` iff `level <= r`
    /// for integer `r`.
    fn level_row(&self, from: usize) -> Result<Vec<u64>> {
        Ok(self
            .distance_row(from)?
            .into_iter()
            .map(|d| d.ceil() as u64)
            .collect())
    }
}

impl MetricSpace for Graph {
    fn point_count(&self) -> usize {
        self.vertex_count()
    }

    fn distance_row(&self, from: usize) -> Result<Vec<f64>> {
        let d = bfs_distances(self, from, u32::MAX - 1)?;
        Ok((0..self.vertex_count())
            .map(|v| d.get(v).map_or(f64::INFINITY, f64::from))
            .collect())
    }
}

/// A subset of a graph's vertices with the distance inherited from the graph.
#[derive(Debug, Clone)]
pub struct RestrictedPathMetric<'g> {
    host: &'g Graph,
    points: Vec<usize>,
}

impl<'g> RestrictedPathMetric<'g> {
    pub fn new(host: &'g Graph, points: Vec<usize>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidParameter("restricted metric needs points".into()));
        }
        for &p in &points {
            host.check_vertex(p)?;
        }
        Ok(Self { host, points })
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }
}

impl MetricSpace for RestrictedPathMetric<'_> {
    fn point_count(&self) -> usize {
        self.points.len()
    }

    fn distance_row(&self, from: usize) -> Result<Vec<f64>> {
        let origin = *self.points.get(from).ok_or(Error::InvalidVertex {
            vertex: from,
            count: self.points.len(),
        })?;
        let layers = bfs_layers(self.host, origin, u32::MAX - 1);
        Ok(self
            .points
            .iter()
            .map(|&p| match layers.dist[p] {
                u32::MAX => f64::INFINITY,
                d => f64::from(d),
            })
            .collect())
    }
}

/// Planar integer points with the Euclidean distance of the plane.
#[derive(Debug, Clone)]
pub struct EuclideanSubset {
    coords: Vec<[i64; 2]>,
}

impl EuclideanSubset {
    pub fn new(coords: Vec<[i64; 2]>) -> Self {
        Self { coords }
    }

    /// Uses the planar coordinates attached to a grid graph.
    pub fn from_graph(graph: &Graph) -> Result<Self> {
        graph
            .coords()
            .map(|c| Self::new(c.to_vec()))
            .ok_or_else(|| Error::InvalidParameter("graph has no planar coordinates".into()))
    }

    fn squared(&self, a: usize, b: usize) -> u64 {
        let (p, q) = (self.coords[a], self.coords[b]);
        let dx = (p[0] - q[0]).unsigned_abs();
        let dy = (p[1] - q[1]).unsigned_abs();
        dx * dx + dy * dy
    }

    fn check(&self, v: usize) -> Result<()> {
        if v < self.coords.len() {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: v,
                count: self.coords.len(),
            })
        }
    }
}

/// Smallest `l` with `l * l >= s`.
fn ceil_sqrt(s: u64) -> u64 {
    let mut l = (s as f64).sqrt() as u64;
    while l * l < s {
        l += 1;
    }
    while l > 0 && (l - 1) * (l - 1) >= s {
        l -= 1;
    }
    l
}

impl MetricSpace for EuclideanSubset {
    fn point_count(&self) -> usize {
        self.coords.len()
    }

    fn distance_row(&self, from: usize) -> Result<Vec<f64>> {
        self.check(from)?;
        Ok((0..self.coords.len())
            .map(|b| (self.squared(from, b) as f64).sqrt())
            .collect())
    }

    fn level_row(&self, from: usize) -> Result<Vec<u64>> {
        self.check(from)?;
        Ok((0..self.coords.len())
            .map(|b| ceil_sqrt(self.squared(from, b)))
            .collect())
    }
}

/// Volume profile of an arbitrary metric space with counting measure.
pub fn metric_volume_profile<M: MetricSpace + ?Sized>(
    space: &M,
    center: usize,
    max_radius: usize,
) -> Result<VolumeProfile> {
    let levels = space.level_row(center)?;
    let mut counts = vec![0u64; max_radius + 1];
    let mut beyond = 0u64;
    for l in levels {
        if l == u64::MAX {
            continue;
        }
        match counts.get_mut(l as usize) {
            Some(c) => *c += 1,
            None => beyond += 1,
        }
    }
    let mut acc = 0;
    let ball: Vec<u64> = counts
        .into_iter()
        .map(|c| {
            acc += c;
            acc
        })
        .collect();
    VolumeProfile::from_balls(center, ball, beyond == 0)
}

/// Largest `d(y, B(x, r))` over sampled `x`, `0 <= r <= R`, `y` in `B(x, r+1)`,
/// computed by brute force over distance rows.
pub fn hausdorff_ball_constant<M: MetricSpace + ?Sized>(
    space: &M,
    centers: &[usize],
    max_radius: u64,
) -> Result<f64> {
    if centers.is_empty() {
        return Err(Error::InvalidParameter("center sample is empty".into()));
    }
    let mut worst: f64 = 0.0;
    for &x in centers {
        let levels = space.level_row(x)?;
        for y in 0..levels.len() {
            let ly = levels[y];
            if ly == 0 || ly > max_radius + 1 {
                continue;
            }
            let row = space.distance_row(y)?;
            // y is in B(x, r+1) for every r >= ly - 1; the gap to B(x, r) is
            // largest at the smallest such r.
            let r = ly - 1;
            let gap = row
                .iter()
                .zip(&levels)
                .filter(|(_, &l)| l <= r)
                .map(|(&d, _)| d)
                .fold(f64::INFINITY, f64::min);
            worst = worst.max(gap);
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::volume_profile;

    #[test]
    fn ceil_sqrt_exact() {
        for s in 0..2000u64 {
            let l = ceil_sqrt(s);
            assert!(l * l >= s);
            assert!(l == 0 || (l - 1) * (l - 1) < s);
        }
    }

    #[test]
    fn graph_metric_profile_matches_bfs_profile() {
        let edges: Vec<_> = (1..9).map(|i| (i - 1, i)).chain([(0, 8)]).collect();
        let g = Graph::from_edges(9, &edges).unwrap();
        for c in 0..9 {
            assert_eq!(
                metric_volume_profile(&g, c, 6).unwrap(),
                volume_profile(&g, c, 6).unwrap()
            );
        }
    }

    #[test]
    fn euclidean_levels() {
        let s = EuclideanSubset::new(vec![[0, 0], [3, 4], [1, 1]]);
        assert_eq!(s.level_row(0).unwrap(), vec![0, 5, 2]);
        let p = metric_volume_profile(&s, 0, 5).unwrap();
        assert_eq!(p.balls(), &[1, 1, 2, 2, 2, 3]);
        assert!(p.is_exhausted());
    }
}
