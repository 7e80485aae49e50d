//! A planar strip around a stairway curve made of half-circles of radius
//! `2^k`, k = 0..=K.
//!
//! Even `k` uses the upper half-circle, odd `k` the lower one, so the curve
//! alternates sides. Consecutive half-circles are joined by a straight run on
//! the x-axis from radius `2^k` to `2^(k+1)`, and the curve starts with the
//! run from `(0,0)` to `(1,0)`. The strip is the set of grid points within
//! sup-distance 1 of a rasterized curve point, with 4-neighbor edges.

use std::collections::BTreeSet;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::space::{Graph, GraphBuilder};

pub const MAX_STAIRWAY_LEVEL: u32 = 16;

/// Midpoint-circle rasterization of the full circle of radius `r`.
pub fn midpoint_circle(r: i64) -> BTreeSet<[i64; 2]> {
    let mut pts = BTreeSet::new();
    let (mut x, mut y, mut err) = (r, 0i64, 1 - r);
    while x >= y {
        for p in [
            [x, y],
            [y, x],
            [-y, x],
            [-x, y],
            [-x, -y],
            [-y, -x],
            [y, -x],
            [x, -y],
        ] {
            pts.insert(p);
        }
        y += 1;
        if err < 0 {
            err += 2 * y + 1;
        } else {
            x -= 1;
            err += 2 * (y - x) + 1;
        }
    }
    pts
}

/// Rasterized curve points, before thickening.
pub fn stairway_curve(levels: u32) -> BTreeSet<[i64; 2]> {
    let mut curve: BTreeSet<[i64; 2]> = [[0, 0], [1, 0]].into_iter().collect();
    for k in 0..=levels {
        let r = 1i64 << k;
        let upper = k % 2 == 0;
        curve.extend(
            midpoint_circle(r)
                .into_iter()
                .filter(|p| if upper { p[1] >= 0 } else { p[1] <= 0 }),
        );
        if k < levels {
            // Upper halves end at (-r, 0), lower halves at (r, 0).
            let s = if upper { -1 } else { 1 };
            curve.extend((r..=2 * r).map(|x| [s * x, 0]));
        }
    }
    curve
}

/// The thickened strip as a grid graph with planar coordinates and the
/// basepoint `origin` at `(0,0)`. Vertices are ordered by coordinates.
pub fn stairway_strip(levels: u32) -> Result<Graph> {
    if levels > MAX_STAIRWAY_LEVEL {
        return Err(Error::InvalidParameter(format!(
            "stairway level {levels} exceeds {MAX_STAIRWAY_LEVEL}"
        )));
    }
    let mut pts = BTreeSet::new();
    for [x, y] in stairway_curve(levels) {
        for dx in -1..=1 {
            for dy in -1..=1 {
                pts.insert([x + dx, y + dy]);
            }
        }
    }
    let coords: Vec<[i64; 2]> = pts.into_iter().collect();
    let index: FxHashMap<[i64; 2], usize> =
        coords.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut g = GraphBuilder::with_vertices(coords.len());
    for (u, &[x, y]) in coords.iter().enumerate() {
        for q in [[x + 1, y], [x, y + 1]] {
            if let Some(&v) = index.get(&q) {
                g.add_edge(u, v);
            }
        }
    }
    g.set_basepoint("origin", index[&[0, 0]]);
    g.set_coords(coords);
    g.build()
}
