use rustc_hash::FxHashSet;

use crate::error::{Error, Result};
use crate::generators::{Element, GroupModel};

/// Smallest `m` in `1..=m_max` with `V ⊂ U^m`, where `U` is first normalized
/// to contain the identity so that its powers are nested.
///
/// Running out of `m_max` or of the element budget is reported as an error;
/// neither proves that no larger power contains `V`.
pub fn generating_containment(
    model: &GroupModel,
    u: &[Element],
    v: &[Element],
    m_max: usize,
    max_elements: usize,
) -> Result<usize> {
    let factor = model.with_identity(u);
    let mut all: FxHashSet<Element> = factor.iter().copied().collect();
    let mut missing: Vec<Element> = v.iter().filter(|g| !all.contains(g)).copied().collect();
    let mut frontier = factor.clone();
    let mut m = 1;
    while !missing.is_empty() {
        if m >= m_max {
            return Err(Error::ContainmentNotFound { m_max });
        }
        let mut next = Vec::new();
        for a in &frontier {
            for b in &factor {
                let p = model.multiply(a, b);
                if all.insert(p) {
                    next.push(p);
                }
            }
        }
        m += 1;
        if all.len() > max_elements {
            return Err(Error::BudgetExceeded {
                module: "group-walk",
                limit: max_elements,
                reached: all.len(),
                step: m,
            });
        }
        frontier = next;
        missing.retain(|g| !all.contains(g));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_diagonal_needs_two() {
        let z2 = GroupModel::lattice(2).unwrap();
        let u = z2.generating_set("standard").unwrap();
        let v = [Element::new(&[1, 1]), Element::new(&[-1, -1])];
        assert_eq!(generating_containment(&z2, u, &v, 10, 1 << 20).unwrap(), 2);
        assert_eq!(generating_containment(&z2, u, u, 10, 1 << 20).unwrap(), 1);
    }

    #[test]
    fn commutator_needs_four() {
        let h = GroupModel::heisenberg();
        let u = h.generating_set("standard").unwrap();
        let z = [Element::new(&[0, 0, 1])];
        assert_eq!(generating_containment(&h, u, &z, 10, 1 << 20).unwrap(), 4);
        assert!(matches!(
            generating_containment(&h, u, &z, 3, 1 << 20),
            Err(Error::ContainmentNotFound { m_max: 3 })
        ));
    }
}
