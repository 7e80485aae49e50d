//! Chains of doubled stretched trees.
//!
//! `G_n` is a rooted `b`-ary tree of depth `n` whose generation-`k` edges are
//! paths of `a^(n-k)` unit edges. `G'_n` is two copies of `G_n` with their
//! leaves identified by address; its roots are `r_n` and `r'_n`. Block `n+1`
//! is attached by identifying `r_{n+1}` with `r'_n`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::{Graph, GraphBuilder};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeChainSpec {
    /// Edge-stretch base.
    pub a: u64,
    /// Tree valence.
    pub b: u64,
    /// Number of blocks `G'_1 .. G'_N`.
    pub blocks: u32,
}

impl TreeChainSpec {
    pub fn new(a: u64, b: u64, blocks: u32) -> Result<Self> {
        let spec = Self { a, b, blocks };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.a < 2 || self.b < 2 || self.blocks < 1 {
            return Err(Error::InvalidParameter(format!(
                "tree chain needs a >= 2, b >= 2, blocks >= 1 (got a={}, b={}, blocks={})",
                self.a, self.b, self.blocks
            )));
        }
        Ok(())
    }

    /// `|G_n| = 1 + sum_{k=1}^{n} b^k a^(n-k)`.
    pub fn tree_vertices(&self, n: u32) -> Option<u64> {
        (1..=n).try_fold(1u64, |acc, k| {
            let term = self.b.checked_pow(k)?.checked_mul(self.a.checked_pow(n - k)?)?;
            acc.checked_add(term)
        })
    }

    /// `|G'_n| = 2 |G_n| - b^n`.
    pub fn block_vertices(&self, n: u32) -> Option<u64> {
        self.tree_vertices(n)?
            .checked_mul(2)?
            .checked_sub(self.b.checked_pow(n)?)
    }

    /// Total vertex count of the chain (consecutive blocks share one vertex).
    pub fn total_vertices(&self) -> Option<u64> {
        (1..=self.blocks).try_fold(0u64, |acc, n| acc.checked_add(self.block_vertices(n)?))
            .map(|t| t - u64::from(self.blocks - 1))
    }

    /// Root-to-leaf distance in `G_n`: `sum_{k=1}^{n} a^(n-k) = (a^n - 1)/(a - 1)`.
    pub fn depth(&self, n: u32) -> u64 {
        (self.a.pow(n) - 1) / (self.a - 1)
    }
}

/// Per-block bookkeeping of a built chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockInfo {
    pub root: usize,
    pub root_prime: usize,
    /// Identified last-generation vertices, in address order.
    pub leaves: Vec<usize>,
    /// Fresh vertices of the first child arm below `root`, nearest first.
    pub first_arm: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct TreeChain {
    pub spec: TreeChainSpec,
    pub graph: Graph,
    /// `blocks[n - 1]` describes `G'_n`.
    pub blocks: Vec<BlockInfo>,
}

impl TreeChain {
    pub fn block(&self, n: u32) -> Result<&BlockInfo> {
        self.blocks
            .get((n as usize).wrapping_sub(1))
            .ok_or_else(|| Error::InvalidParameter(format!("block {n} does not exist")))
    }

    /// A point `x` with `|S(x, a^n)| >= b^n`: on the first arm of block `n+1`,
    /// at distance `a^n + 1 - depth(n)` from `r_{n+1}`, so that every leaf of
    /// block `n` sits at distance exactly `a^n + 1`.
    pub fn witness_center(&self, n: u32) -> Result<usize> {
        let next = self.block(n + 1)?;
        let t = self.spec.a.pow(n) + 1 - self.spec.depth(n);
        next.first_arm
            .get(t as usize - 1)
            .copied()
            .ok_or_else(|| Error::InvalidParameter(format!("arm of block {} too short", n + 1)))
    }
}

/// Builds the chain, checking the vertex count against `max_vertices` first.
pub fn build_tree_chain(spec: TreeChainSpec, max_vertices: usize) -> Result<TreeChain> {
    spec.validate()?;
    let total = spec.total_vertices().unwrap_or(u64::MAX);
    if total > max_vertices as u64 {
        return Err(Error::BudgetExceeded {
            module: "generators",
            limit: max_vertices,
            reached: usize::try_from(total).unwrap_or(usize::MAX),
            step: 0,
        });
    }
    let mut g = GraphBuilder::new();
    let mut blocks = Vec::with_capacity(spec.blocks as usize);
    let mut prev_prime = None;
    for n in 1..=spec.blocks {
        let root = prev_prime.unwrap_or_else(|| g.add_vertex());
        let mut first_arm = Vec::new();
        let leaves = grow_tree(&mut g, &spec, n, root, None, Some(&mut first_arm));
        let root_prime = g.add_vertex();
        grow_tree(&mut g, &spec, n, root_prime, Some(&leaves), None);
        g.set_basepoint(&format!("r_{n}"), root);
        g.set_basepoint(&format!("r'_{n}"), root_prime);
        blocks.push(BlockInfo {
            root,
            root_prime,
            leaves,
            first_arm,
        });
        prev_prime = Some(root_prime);
    }
    let graph = g.build()?;
    debug_assert_eq!(graph.vertex_count() as u64, total);
    Ok(TreeChain {
        spec,
        graph,
        blocks,
    })
}

/// Convenience wrapper returning only the graph.
pub fn stretched_tree_chain(spec: TreeChainSpec, max_vertices: usize) -> Result<Graph> {
    Ok(build_tree_chain(spec, max_vertices)?.graph)
}

/// Grows `G_n` below `root`. With `glue`, last-generation arms end on the
/// given leaves (same address order) instead of fresh vertices. Returns the
/// last generation in address order.
fn grow_tree(
    g: &mut GraphBuilder,
    spec: &TreeChainSpec,
    n: u32,
    root: usize,
    glue: Option<&[usize]>,
    mut first_arm: Option<&mut Vec<usize>>,
) -> Vec<usize> {
    let mut level = vec![root];
    for k in 1..=n {
        let len = spec.a.pow(n - k) as usize;
        let mut next = Vec::with_capacity(level.len() * spec.b as usize);
        for &v in &level {
            for _ in 0..spec.b {
                let end = match glue {
                    Some(leaves) if k == n => Some(leaves[next.len()]),
                    _ => None,
                };
                let arm = if k == 1 && next.is_empty() {
                    first_arm.take()
                } else {
                    None
                };
                next.push(g.add_path(v, len, end, arm));
            }
        }
        level = next;
    }
    level
}
