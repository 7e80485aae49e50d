use crate::error::{Error, Result};
use crate::space::{Graph, GraphBuilder, RestrictedPathMetric};

/// Path on `2 * half_len + 1` vertices standing for `[-half_len, half_len]`
/// with every unit edge subdivided in two. Vertex `i` is the point `i - half_len`
/// halved; the basepoint `origin` is the middle vertex.
pub fn subdivided_line(half_len: usize) -> Result<Graph> {
    if half_len == 0 {
        return Err(Error::InvalidParameter("line needs half_len >= 1".into()));
    }
    let n = 4 * half_len + 1;
    let mut g = GraphBuilder::with_vertices(n);
    for i in 1..n {
        g.add_edge(i - 1, i);
    }
    g.set_basepoint("origin", 2 * half_len);
    g.build()
}

/// The even vertices of [`subdivided_line`], i.e. the integers with every
/// distance doubled.
pub fn doubled_integers(line: &Graph) -> Result<RestrictedPathMetric<'_>> {
    RestrictedPathMetric::new(line, (0..line.vertex_count()).step_by(2).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::MetricSpace;

    #[test]
    fn even_points_are_twice_as_far() {
        let g = subdivided_line(3).unwrap();
        let m = doubled_integers(&g).unwrap();
        assert_eq!(m.point_count(), 7);
        assert_eq!(m.distance_row(0).unwrap(), vec![0.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0]);
    }
}
