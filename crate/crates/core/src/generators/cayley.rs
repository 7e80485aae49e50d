use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::generators::group::{Element, GroupModel};
use crate::space::{Graph, GraphBuilder, VolumeProfile};

/// Word ball of a group realized as a graph, with the element behind each vertex.
#[derive(Debug, Clone)]
pub struct CayleyBall {
    pub graph: Graph,
    /// `elements[v]` is the group element at vertex `v`, in BFS order.
    pub elements: Vec<Element>,
    /// Word length of each vertex.
    pub lengths: Vec<u32>,
}

impl CayleyBall {
    /// Vertex of the identity, always 0.
    pub fn origin(&self) -> usize {
        0
    }

    pub fn vertex_of(&self, e: &Element) -> Option<usize> {
        self.elements.iter().position(|x| x == e)
    }

    /// Word-length profile at the identity. The ball is a truncation of an
    /// infinite group, so the profile is never marked exhausted.
    pub fn origin_profile(&self) -> Result<VolumeProfile> {
        let radius = self.lengths.last().copied().unwrap_or(0) as usize;
        let mut counts = vec![0u64; radius + 1];
        for &l in &self.lengths {
            counts[l as usize] += 1;
        }
        let balls = counts
            .iter()
            .scan(0, |acc, &c| {
                *acc += c;
                Some(*acc)
            })
            .collect();
        VolumeProfile::from_balls(0, balls, false)
    }
}

/// Ball of radius `radius` in the Cayley graph of `model` for the symmetrized
/// set `gens ∪ gens^{-1}`. Vertex 0 is the identity and carries the
/// basepoint `origin`; edges join `g` and `g s` for every generator `s`.
pub fn cayley_ball(
    model: &GroupModel,
    gens: &[Element],
    radius: u32,
    max_vertices: usize,
) -> Result<CayleyBall> {
    let steps = model.symmetrize(gens);
    if steps.is_empty() {
        return Err(Error::NonGenerating {
            group: model.name().to_string(),
            reason: "generating set has no non-identity element".into(),
        });
    }
    let id = model.identity();
    let mut index: FxHashMap<Element, u32> = FxHashMap::default();
    index.insert(id, 0);
    let mut elements = vec![id];
    let mut lengths = vec![0u32];
    let mut start = 0;
    for r in 1..=radius {
        let end = elements.len();
        for v in start..end {
            let g = elements[v];
            for s in &steps {
                let h = model.multiply(&g, s);
                if !index.contains_key(&h) {
                    index.insert(h, elements.len() as u32);
                    elements.push(h);
                    lengths.push(r);
                }
            }
        }
        if elements.len() > max_vertices {
            return Err(Error::BudgetExceeded {
                module: "generators",
                limit: max_vertices,
                reached: elements.len(),
                step: r as usize,
            });
        }
        start = end;
    }
    let mut builder = GraphBuilder::with_vertices(elements.len());
    for (u, g) in elements.iter().enumerate() {
        for s in &steps {
            if let Some(&v) = index.get(&model.multiply(g, s)) {
                if u < v as usize {
                    builder.add_edge(u, v as usize);
                }
            }
        }
    }
    builder.set_basepoint("origin", 0);
    Ok(CayleyBall {
        graph: builder.build()?,
        elements,
        lengths,
    })
}

/// Word ball of radius `radius` in `Z^rank` as a graph. The span of `gens`
/// must be all of `Z^rank`.
pub fn lattice_graph(
    rank: usize,
    gens: &[Element],
    radius: u32,
    max_vertices: usize,
) -> Result<Graph> {
    if radius == 0 {
        return Err(Error::InvalidParameter("lattice radius must be >= 1".into()));
    }
    let model = GroupModel::lattice(rank)?;
    model.check_generates(gens)?;
    Ok(cayley_ball(&model, gens, radius, max_vertices)?.graph)
}

/// Word ball of radius `radius` in the discrete Heisenberg group.
pub fn heisenberg_graph(gens: &[Element], radius: u32, max_vertices: usize) -> Result<Graph> {
    let model = GroupModel::heisenberg();
    model.check_generates(gens)?;
    Ok(cayley_ball(&model, gens, radius, max_vertices)?.graph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::volume_profile;

    #[test]
    fn small_lattice_balls() {
        let g = lattice_graph(
            1,
            &[Element::new(&[-1]), Element::new(&[0]), Element::new(&[1])],
            5,
            1000,
        )
        .unwrap();
        assert_eq!(g.vertex_count(), 11);
        assert_eq!(g.edge_count(), 10);
        let z2 = GroupModel::lattice(2).unwrap();
        let g = lattice_graph(2, &z2.with_identity(z2.generating_set("standard").unwrap()), 2, 1000)
            .unwrap();
        assert_eq!(g.vertex_count(), 13);
    }

    #[test]
    fn heisenberg_small_balls() {
        let h = GroupModel::heisenberg();
        let g = heisenberg_graph(h.generating_set("standard").unwrap(), 2, 1000).unwrap();
        assert_eq!(volume_profile(&g, 0, 2).unwrap().balls(), &[1, 5, 17]);
        let ball = cayley_ball(&h, h.generating_set("standard").unwrap(), 3, 1000).unwrap();
        let p = ball.origin_profile().unwrap();
        assert_eq!(p.balls(), &[1, 5, 17, 53]);
        assert!(!p.is_exhausted());
    }

    #[test]
    fn budget_and_generation_errors() {
        let z2 = GroupModel::lattice(2).unwrap();
        let std = z2.generating_set("standard").unwrap();
        assert!(matches!(
            lattice_graph(2, std, 50, 100),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(matches!(
            lattice_graph(2, &[Element::new(&[1, 0])], 3, 100),
            Err(Error::NonGenerating { .. })
        ));
    }
}
