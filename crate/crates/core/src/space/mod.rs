//! Graphs as metric measure spaces: BFS volumes, nets, monotone geodesics
//! and the concentric-ball Hausdorff constant.

pub mod bfs;
pub mod geodesic;
pub mod graph;
pub mod metric;
pub mod net;
pub mod sample;

pub use bfs::{bfs_distances, volume_profile, volume_profiles, Distances, VolumeProfile};
pub use geodesic::{monotone_geodesic, monotone_geodesics, property_m_constant, GeodesicChain};
pub use graph::{Graph, GraphBuilder};
pub use metric::{
    hausdorff_ball_constant, metric_volume_profile, EuclideanSubset, MetricSpace,
    RestrictedPathMetric,
};
pub use net::{separated_net, separated_nets, Annulus};
pub use sample::sample_centers;
