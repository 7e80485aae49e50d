//! Set-theoretic checks of two shell inclusions in a Cayley graph.
//!
//! With `C_{a,b} = {g : a < |g| <= b}` for the word length of a symmetric
//! set `U` containing the identity, and `h = floor(k/2)`:
//!
//! * outer: `C_{n,n+k} ⊂ C_{n-h,n-h+1} U^{2k}`
//! * inner: `C_{n-h,n-h+1} U^{floor(k/4)} ⊂ C_{n-k,n}`

use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::{cayley_ball, Element, GroupModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ShellClaim {
    Outer,
    Inner,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimCheck {
    pub claim: ShellClaim,
    pub n: usize,
    pub k: usize,
    /// Size of the set that must be contained.
    pub subset_size: usize,
    /// Size of the containing set.
    pub superset_size: usize,
    pub holds: bool,
    pub counterexample: Option<Element>,
}

/// Word lengths on a ball large enough for every check up to `radius`.
#[derive(Debug, Clone)]
pub struct ClaimContext<'m> {
    model: &'m GroupModel,
    steps: Vec<Element>,
    lengths: FxHashMap<Element, u32>,
    by_length: Vec<Vec<Element>>,
    radius: usize,
    max_elements: usize,
}

impl<'m> ClaimContext<'m> {
    /// Prepares checks for all `n + k <= radius`.
    pub fn new(model: &'m GroupModel, gens: &[Element], radius: usize, max_elements: usize) -> Result<Self> {
        model.check_generates(gens)?;
        let ball = cayley_ball(model, gens, radius as u32, max_elements)?;
        let mut by_length = vec![Vec::new(); radius + 1];
        let mut lengths = FxHashMap::default();
        for (e, &l) in ball.elements.iter().zip(&ball.lengths) {
            by_length[l as usize].push(*e);
            lengths.insert(*e, l);
        }
        Ok(Self {
            model,
            steps: model.symmetrize(gens),
            lengths,
            by_length,
            radius,
            max_elements,
        })
    }

    /// `start U^m` by frontier expansion in the group.
    fn expand(&self, start: &[Element], m: usize) -> Result<FxHashSet<Element>> {
        let mut all: FxHashSet<Element> = start.iter().copied().collect();
        let mut frontier = start.to_vec();
        for step in 1..=m {
            let mut next = Vec::new();
            for a in &frontier {
                for s in &self.steps {
                    let p = self.model.multiply(a, s);
                    if all.insert(p) {
                        next.push(p);
                    }
                }
            }
            if all.len() > self.max_elements {
                return Err(Error::BudgetExceeded {
                    module: "group-walk",
                    limit: self.max_elements,
                    reached: all.len(),
                    step,
                });
            }
            frontier = next;
        }
        Ok(all)
    }

    fn shell(&self, lo: usize, hi: usize) -> Vec<Element> {
        self.by_length[lo + 1..=hi].iter().flatten().copied().collect()
    }

    /// Both inclusions for one `(n, k)` with `4 <= k <= n`.
    pub fn check(&self, n: usize, k: usize) -> Result<[ClaimCheck; 2]> {
        if k < 4 || k > n {
            return Err(Error::InvalidParameter(format!("need 4 <= k <= n, got n={n}, k={k}")));
        }
        if n + k > self.radius {
            return Err(Error::InsufficientDepth {
                have: self.radius,
                need: n + k,
            });
        }
        let h = k / 2;
        let sphere = self.shell(n - h, n - h + 1);

        let outer_sub = self.shell(n, n + k);
        let reach = self.expand(&sphere, 2 * k)?;
        let outer_bad = outer_sub.iter().find(|g| !reach.contains(g)).copied();

        let inner_sup = self.expand(&sphere, k / 4)?;
        let inner_bad = inner_sup
            .iter()
            .filter(|g| {
                let l = self.lengths.get(g).map_or(usize::MAX, |&l| l as usize);
                !(n - k < l && l <= n)
            })
            .min()
            .copied();
        let target = self.shell(n - k, n);

        Ok([
            ClaimCheck {
                claim: ShellClaim::Outer,
                n,
                k,
                subset_size: outer_sub.len(),
                superset_size: reach.len(),
                holds: outer_bad.is_none(),
                counterexample: outer_bad,
            },
            ClaimCheck {
                claim: ShellClaim::Inner,
                n,
                k,
                subset_size: inner_sup.len(),
                superset_size: target.len(),
                holds: inner_bad.is_none(),
                counterexample: inner_bad,
            },
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_claims_hold() {
        let z2 = GroupModel::lattice(2).unwrap();
        let ctx = ClaimContext::new(&z2, z2.generating_set("standard").unwrap(), 16, 1 << 20).unwrap();
        for c in ctx.check(8, 8).unwrap() {
            assert!(c.holds, "{c:?}");
        }
        assert!(ctx.check(3, 4).is_err());
        assert!(ctx.check(12, 8).is_err());
    }
}
