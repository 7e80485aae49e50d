//! Enumerable groups with canonical integer-tuple elements: `Z^d` and the
//! discrete Heisenberg group.

use std::collections::BTreeMap;
use std::fmt;

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported coordinate count.
pub const MAX_RANK: usize = 4;

/// A group element as a fixed-width integer tuple. Unused trailing
/// coordinates are zero, so equality of codes is equality of elements.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct Element(pub [i64; MAX_RANK]);

impl Element {
    pub fn new(coords: &[i64]) -> Self {
        assert!(coords.len() <= MAX_RANK, "too many coordinates");
        let mut c = [0; MAX_RANK];
        c[..coords.len()].copy_from_slice(coords);
        Element(c)
    }

    pub fn coords(&self, rank: usize) -> &[i64] {
        &self.0[..rank]
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupKind {
    /// `Z^rank` under addition.
    Lattice { rank: usize },
    /// `H_3(Z)`: `(x,y,z)(x',y',z') = (x+x', y+y', z+z'+x y')`.
    Heisenberg,
}

/// A group together with named finite generating sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupModel {
    name: String,
    kind: GroupKind,
    generating_sets: BTreeMap<String, Vec<Element>>,
}

fn unit(rank: usize, i: usize, sign: i64) -> Element {
    let mut c = [0; MAX_RANK];
    debug_assert!(i < rank);
    c[i] = sign;
    Element(c)
}

impl GroupModel {
    /// `Z^rank` with the sets `standard` (`±e_i`) and, for rank 2,
    /// `triangle` (`e1, e2, -e1-e2`) and `hexagonal` (`±e1, ±e2, ±(e1+e2)`).
    pub fn lattice(rank: usize) -> Result<Self> {
        if rank == 0 || rank > MAX_RANK {
            return Err(Error::InvalidParameter(format!(
                "lattice rank must be in 1..={MAX_RANK}, got {rank}"
            )));
        }
        let mut sets = BTreeMap::new();
        let standard: Vec<Element> = (0..rank)
            .flat_map(|i| [unit(rank, i, 1), unit(rank, i, -1)])
            .collect();
        sets.insert("standard".to_string(), standard);
        if rank == 2 {
            sets.insert(
                "triangle".to_string(),
                vec![Element::new(&[1, 0]), Element::new(&[0, 1]), Element::new(&[-1, -1])],
            );
            sets.insert(
                "hexagonal".to_string(),
                vec![
                    Element::new(&[1, 0]),
                    Element::new(&[-1, 0]),
                    Element::new(&[0, 1]),
                    Element::new(&[0, -1]),
                    Element::new(&[1, 1]),
                    Element::new(&[-1, -1]),
                ],
            );
        }
        Ok(Self {
            name: format!("Z^{rank}"),
            kind: GroupKind::Lattice { rank },
            generating_sets: sets,
        })
    }

    /// The discrete Heisenberg group with the set `standard` (`x^±1, y^±1`).
    pub fn heisenberg() -> Self {
        let mut sets = BTreeMap::new();
        sets.insert(
            "standard".to_string(),
            vec![
                Element::new(&[1, 0, 0]),
                Element::new(&[-1, 0, 0]),
                Element::new(&[0, 1, 0]),
                Element::new(&[0, -1, 0]),
            ],
        );
        Self {
            name: "H3(Z)".to_string(),
            kind: GroupKind::Heisenberg,
            generating_sets: sets,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    /// Number of coordinates in an element code.
    pub fn rank(&self) -> usize {
        match self.kind {
            GroupKind::Lattice { rank } => rank,
            GroupKind::Heisenberg => 3,
        }
    }

    pub fn is_abelian(&self) -> bool {
        matches!(self.kind, GroupKind::Lattice { .. })
    }

    pub fn identity(&self) -> Element {
        Element::default()
    }

    #[inline]
    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        let (a, b) = (&a.0, &b.0);
        match self.kind {
            GroupKind::Lattice { .. } => {
                Element([a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]])
            }
            GroupKind::Heisenberg => {
                Element([a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1], 0])
            }
        }
    }

    #[inline]
    pub fn invert(&self, a: &Element) -> Element {
        let a = &a.0;
        match self.kind {
            GroupKind::Lattice { .. } => Element([-a[0], -a[1], -a[2], -a[3]]),
            GroupKind::Heisenberg => Element([-a[0], -a[1], -a[2] + a[0] * a[1], 0]),
        }
    }

    pub fn generating_set(&self, label: &str) -> Result<&[Element]> {
        self.generating_sets
            .get(label)
            .map(Vec::as_slice)
            .ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "{} has no generating set `{label}` (known: {})",
                    self.name,
                    self.generating_sets.keys().cloned().collect::<Vec<_>>().join(", ")
                ))
            })
    }

    pub fn generating_set_labels(&self) -> impl Iterator<Item = &str> {
        self.generating_sets.keys().map(String::as_str)
    }

    pub fn add_generating_set(&mut self, label: &str, set: Vec<Element>) -> Result<()> {
        for e in &set {
            self.check_element(e)?;
        }
        self.generating_sets.insert(label.to_string(), set);
        Ok(())
    }

    /// Converts a coordinate tuple into an element, checking its length.
    pub fn element(&self, coords: &[i64]) -> Result<Element> {
        if coords.len() != self.rank() {
            return Err(Error::InvalidParameter(format!(
                "{} elements have {} coordinates, got {:?}",
                self.name,
                self.rank(),
                coords
            )));
        }
        Ok(Element::new(coords))
    }

    fn check_element(&self, e: &Element) -> Result<()> {
        if e.0[self.rank()..].iter().any(|&c| c != 0) {
            return Err(Error::InvalidParameter(format!(
                "element {e} has nonzero coordinates beyond rank {}",
                self.rank()
            )));
        }
        Ok(())
    }

    /// Deduplicated, sorted copy of `set` with the identity adjoined.
    pub fn with_identity(&self, set: &[Element]) -> Vec<Element> {
        let mut out: Vec<Element> = set.to_vec();
        out.push(self.identity());
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `set ∪ set^{-1}` without the identity, sorted.
    pub fn symmetrize(&self, set: &[Element]) -> Vec<Element> {
        let id = self.identity();
        let mut out: Vec<Element> = set
            .iter()
            .flat_map(|g| [*g, self.invert(g)])
            .filter(|g| *g != id)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Checks that `set` generates the whole group as a group.
    ///
    /// For `Z^d` the integer span is computed exactly by echelon reduction.
    /// A subset of `H_3(Z)` generates iff its image in the abelianization
    /// `Z^2` does, which reduces to the lattice case.
    pub fn check_generates(&self, set: &[Element]) -> Result<()> {
        for e in set {
            self.check_element(e)?;
        }
        let (rows, dim): (Vec<Vec<i128>>, usize) = match self.kind {
            GroupKind::Lattice { rank } => (
                set.iter()
                    .map(|e| e.coords(rank).iter().map(|&c| c as i128).collect())
                    .collect(),
                rank,
            ),
            GroupKind::Heisenberg => (
                set.iter().map(|e| vec![e.0[0] as i128, e.0[1] as i128]).collect(),
                2,
            ),
        };
        let index = lattice_index(rows, dim);
        match index {
            Some(1) => Ok(()),
            Some(i) => Err(Error::NonGenerating {
                group: self.name.clone(),
                reason: format!("span has index {i}"),
            }),
            None => Err(Error::NonGenerating {
                group: self.name.clone(),
                reason: "span has lower rank".into(),
            }),
        }
    }

    /// Checks that the products of `set ∪ {1}` exhaust the group: the set
    /// generates as a group and every element's inverse appears in some power
    /// `(set ∪ {1})^m` with `m <= horizon`. Failure within the horizon is
    /// reported as non-generating, which is a heuristic verdict.
    pub fn check_semigroup_generates(
        &self,
        set: &[Element],
        horizon: usize,
        max_elements: usize,
    ) -> Result<()> {
        self.check_generates(set)?;
        let id = self.identity();
        let mut missing: Vec<Element> = set
            .iter()
            .filter(|g| **g != id)
            .map(|g| self.invert(g))
            .collect();
        missing.sort_unstable();
        missing.dedup();
        let factor = self.with_identity(set);
        let mut seen: FxHashSet<Element> = factor.iter().copied().collect();
        let mut frontier: Vec<Element> = factor.clone();
        missing.retain(|g| !seen.contains(g));
        let mut m = 1;
        while !missing.is_empty() && m < horizon {
            let mut next = Vec::new();
            for a in &frontier {
                for b in &factor {
                    let p = self.multiply(a, b);
                    if seen.insert(p) {
                        next.push(p);
                    }
                }
            }
            if seen.len() > max_elements {
                return Err(Error::BudgetExceeded {
                    module: "group-walk",
                    limit: max_elements,
                    reached: seen.len(),
                    step: m,
                });
            }
            frontier = next;
            m += 1;
            missing.retain(|g| !seen.contains(g));
        }
        match missing.first() {
            None => Ok(()),
            Some(g) => Err(Error::NonGenerating {
                group: self.name.clone(),
                reason: format!("{g} is not reached by products of length <= {horizon}"),
            }),
        }
    }
}

/// Index of the integer span of `rows` in `Z^dim`, or `None` when the span
/// has rank below `dim`.
fn lattice_index(mut rows: Vec<Vec<i128>>, dim: usize) -> Option<i128> {
    let mut pivot_row = 0;
    let mut index: i128 = 1;
    for col in 0..dim {
        // Euclid on column `col` among rows >= pivot_row.
        loop {
            let nonzero: Vec<usize> = (pivot_row..rows.len()).filter(|&r| rows[r][col] != 0).collect();
            if nonzero.len() <= 1 {
                break;
            }
            let min_r = *nonzero.iter().min_by_key(|&&r| rows[r][col].abs()).unwrap();
            for &r in &nonzero {
                if r != min_r {
                    let q = rows[r][col] / rows[min_r][col];
                    for c in 0..dim {
                        rows[r][c] -= q * rows[min_r][c];
                    }
                }
            }
        }
        let Some(r) = (pivot_row..rows.len()).find(|&r| rows[r][col] != 0) else {
            return None;
        };
        rows.swap(pivot_row, r);
        index *= rows[pivot_row][col].abs();
        pivot_row += 1;
    }
    Some(index)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(x: i64, y: i64, z: i64) -> Element {
        Element::new(&[x, y, z])
    }

    #[test]
    fn heisenberg_law() {
        let g = GroupModel::heisenberg();
        let x = h(1, 0, 0);
        let y = h(0, 1, 0);
        assert_eq!(g.multiply(&x, &y), h(1, 1, 1));
        assert_eq!(g.multiply(&y, &x), h(1, 1, 0));
        let a = h(3, -2, 5);
        assert_eq!(g.multiply(&a, &g.invert(&a)), g.identity());
        assert_eq!(g.multiply(&g.invert(&a), &a), g.identity());
        // Commutator [x, y] = x y x^-1 y^-1 is the central generator.
        let c = g.multiply(&g.multiply(&g.multiply(&x, &y), &g.invert(&x)), &g.invert(&y));
        assert_eq!(c, h(0, 0, 1));
    }

    #[test]
    fn span_checks() {
        let z2 = GroupModel::lattice(2).unwrap();
        assert!(z2.check_generates(z2.generating_set("standard").unwrap()).is_ok());
        assert!(z2.check_generates(&[Element::new(&[2, 0]), Element::new(&[0, 1])]).is_err());
        assert!(z2.check_generates(&[Element::new(&[1, 1])]).is_err());
        assert!(z2
            .check_generates(&[Element::new(&[2, 1]), Element::new(&[3, 2])])
            .is_ok());
        let heis = GroupModel::heisenberg();
        assert!(heis.check_generates(heis.generating_set("standard").unwrap()).is_ok());
        assert!(heis.check_generates(&[h(1, 0, 0), h(0, 0, 1)]).is_err());
    }

    #[test]
    fn semigroup_check() {
        let z2 = GroupModel::lattice(2).unwrap();
        let tri = z2.generating_set("triangle").unwrap().to_vec();
        assert!(z2.check_semigroup_generates(&tri, 64, 1 << 20).is_ok());
        let cone = vec![Element::new(&[1, 0]), Element::new(&[0, 1])];
        let err = z2.check_semigroup_generates(&cone, 64, 1 << 20).unwrap_err();
        assert!(matches!(err, Error::NonGenerating { .. }));
    }

    #[test]
    fn element_rank_checked() {
        let z2 = GroupModel::lattice(2).unwrap();
        assert!(z2.element(&[1, 2, 3]).is_err());
        assert!(GroupModel::lattice(0).is_err());
        assert!(GroupModel::lattice(5).is_err());
        let mut z = z2.clone();
        assert!(z.add_generating_set("bad", vec![Element::new(&[0, 0, 1])]).is_err());
    }
}
