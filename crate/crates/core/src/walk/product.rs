//! Exact product sets `U^n` and `U_0 U_1 ... U_n` in enumerable groups.

use rayon::prelude::*;
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{Element, GroupModel};
use crate::Rational;

/// Frontier elements handled per parallel task.
const CHUNK: usize = 4096;

/// Default number of steps the semigroup generation check may take.
pub const SEMIGROUP_HORIZON: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductOptions {
    /// Hard cap on the size of any product set.
    pub max_elements: usize,
}

impl Default for ProductOptions {
    fn default() -> Self {
        Self {
            max_elements: 20_000_000,
        }
    }
}

/// Sizes of a nested product sequence together with what is needed to
/// rebuild its sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductSequence {
    group: String,
    factor_labels: Vec<String>,
    /// Identity-normalized factor cycle.
    factors: Vec<Vec<Element>>,
    /// Whether normalization had to adjoin the identity to each factor.
    identity_adjoined: Vec<bool>,
    start: Vec<Element>,
    /// Factor index used at step 1; later steps advance cyclically.
    first_step: usize,
    sizes: Vec<u64>,
}

impl ProductSequence {
    pub fn group(&self) -> &str {
        &self.group
    }

    pub fn factor_labels(&self) -> &[String] {
        &self.factor_labels
    }

    pub fn factors(&self) -> &[Vec<Element>] {
        &self.factors
    }

    pub fn identity_adjoined(&self) -> &[bool] {
        &self.identity_adjoined
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    /// The set `N_0`.
    pub fn start(&self) -> &[Element] {
        &self.start
    }

    /// Factor multiplied on the right at step `j >= 1`.
    pub fn step_factor(&self, j: usize) -> &[Element] {
        &self.factors[(self.first_step + j - 1) % self.factors.len()]
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        self.factor_labels = labels;
        self
    }

    /// `(sizes[n+1] - sizes[n]) / sizes[n]`.
    pub fn folner_ratios(&self) -> Result<Vec<Rational>> {
        folner_ratios(&self.sizes)
    }
}

/// `ratio[n] = (sizes[n+1] - sizes[n]) / sizes[n]` for a nondecreasing sequence.
pub fn folner_ratios(sizes: &[u64]) -> Result<Vec<Rational>> {
    if sizes.len() < 2 {
        return Err(Error::Degenerate("Folner ratios need at least two sizes".into()));
    }
    sizes
        .windows(2)
        .map(|w| {
            if w[0] == 0 || w[1] < w[0] {
                Err(Error::Degenerate(format!("sizes {} -> {} not nested", w[0], w[1])))
            } else {
                Ok(Rational::new(w[1] - w[0], w[0]))
            }
        })
        .collect()
}

fn normalize(model: &GroupModel, set: &[Element]) -> (Vec<Element>, bool) {
    let id = model.identity();
    let adjoined = !set.contains(&id);
    (model.with_identity(set), adjoined)
}

fn budget(limit: usize, reached: usize, step: usize) -> Error {
    Error::BudgetExceeded {
        module: "group-walk",
        limit,
        reached,
        step,
    }
}

/// Elements of `left * right` not already in `known`, in a deterministic
/// order (chunks in order, first occurrence within a chunk).
fn new_products(
    model: &GroupModel,
    left: &[Element],
    right: &[Element],
    known: &FxHashSet<Element>,
) -> Vec<Element> {
    let chunks: Vec<Vec<Element>> = left
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut local = FxHashSet::default();
            let mut out = Vec::new();
            for a in chunk {
                for b in right {
                    let p = model.multiply(a, b);
                    if !known.contains(&p) && local.insert(p) {
                        out.push(p);
                    }
                }
            }
            out
        })
        .collect();
    let mut seen = FxHashSet::default();
    chunks
        .into_iter()
        .flatten()
        .filter(|p| seen.insert(*p))
        .collect()
}

/// `left * right` as a sorted vector.
pub fn set_product(
    model: &GroupModel,
    left: &[Element],
    right: &[Element],
    max_elements: usize,
) -> Result<Vec<Element>> {
    let mut out = new_products(model, left, right, &FxHashSet::default());
    if out.len() > max_elements {
        return Err(budget(max_elements, out.len(), 0));
    }
    out.sort_unstable();
    Ok(out)
}

/// `|U^n|` for `n = 0..=n_max`, with `U` normalized to contain the identity.
///
/// `U` must generate the group as a semigroup; see
/// [`GroupModel::check_semigroup_generates`]. Growth uses the frontier:
/// `U^n = U^(n-1) ∪ (U^(n-1) \ U^(n-2)) U`.
pub fn product_powers(
    model: &GroupModel,
    u: &[Element],
    n_max: usize,
    opts: &ProductOptions,
) -> Result<ProductSequence> {
    model.check_semigroup_generates(u, SEMIGROUP_HORIZON, opts.max_elements)?;
    let (factor, adjoined) = normalize(model, u);
    let id = model.identity();
    let mut all: FxHashSet<Element> = FxHashSet::default();
    all.insert(id);
    let mut frontier = vec![id];
    let mut sizes = vec![1u64];
    for n in 1..=n_max {
        let fresh = new_products(model, &frontier, &factor, &all);
        all.extend(fresh.iter().copied());
        if all.len() > opts.max_elements {
            return Err(budget(opts.max_elements, all.len(), n));
        }
        sizes.push(all.len() as u64);
        frontier = fresh;
    }
    Ok(ProductSequence {
        group: model.name().to_string(),
        factor_labels: vec!["U".into()],
        factors: vec![factor],
        identity_adjoined: vec![adjoined],
        start: vec![id],
        first_step: 0,
        sizes,
    })
}

/// Checks `K ⊂ U_i ⊂ K'` for every factor, before identity normalization.
pub fn certify_factors(factors: &[Vec<Element>], k: &[Element], k_prime: &[Element]) -> Result<()> {
    let outer: FxHashSet<&Element> = k_prime.iter().collect();
    for (i, f) in factors.iter().enumerate() {
        let inner: FxHashSet<&Element> = f.iter().collect();
        if let Some(g) = k.iter().find(|g| !inner.contains(g)) {
            return Err(Error::Certification {
                index: i,
                reason: format!("missing {g} from K"),
            });
        }
        if let Some(g) = f.iter().find(|g| !outer.contains(g)) {
            return Err(Error::Certification {
                index: i,
                reason: format!("{g} lies outside K'"),
            });
        }
    }
    Ok(())
}

/// `|U_0 U_1 ... U_n|` for `n = 0..=n_max`, cycling through `factors`.
///
/// Every factor is certified to satisfy `K ⊂ U_i ⊂ K'` and `K` must generate
/// the group as a semigroup. Factors are then normalized to contain the
/// identity, so the sequence is nested.
pub fn varying_products(
    model: &GroupModel,
    factors: &[Vec<Element>],
    k: &[Element],
    k_prime: &[Element],
    n_max: usize,
    opts: &ProductOptions,
) -> Result<ProductSequence> {
    if factors.is_empty() {
        return Err(Error::InvalidParameter("at least one factor is required".into()));
    }
    certify_factors(factors, k, k_prime)?;
    model.check_semigroup_generates(k, SEMIGROUP_HORIZON, opts.max_elements)?;
    let (normalized, adjoined): (Vec<_>, Vec<_>) =
        factors.iter().map(|f| normalize(model, f)).unzip();
    let start = normalized[0].clone();
    let mut current: FxHashSet<Element> = start.iter().copied().collect();
    let mut members: Vec<Element> = start.clone();
    let mut sizes = vec![current.len() as u64];
    for n in 1..=n_max {
        let factor = &normalized[n % normalized.len()];
        // Nested because 1 lies in every factor.
        let fresh = new_products(model, &members, factor, &current);
        current.extend(fresh.iter().copied());
        if current.len() > opts.max_elements {
            return Err(budget(opts.max_elements, current.len(), n));
        }
        members.extend(fresh);
        sizes.push(current.len() as u64);
    }
    Ok(ProductSequence {
        group: model.name().to_string(),
        factor_labels: (0..factors.len()).map(|i| format!("U_{i}")).collect(),
        factors: normalized,
        identity_adjoined: adjoined,
        start,
        first_step: 1,
        sizes,
    })
}

/// `|N_n^{-1} N_n| / |N_n|`.
///
/// With `N_n = N_0 F_1 ... F_n` the difference set is
/// `F_n^{-1} ... F_1^{-1} (N_0^{-1} N_0) F_1 ... F_n`, built inside out.
pub fn regularity_constant(
    model: &GroupModel,
    seq: &ProductSequence,
    n: usize,
    opts: &ProductOptions,
) -> Result<Rational> {
    let size = *seq.sizes.get(n).ok_or_else(|| {
        Error::InvalidParameter(format!("sequence has no step {n} (max {})", seq.sizes.len() - 1))
    })?;
    let inv = |s: &[Element]| -> Vec<Element> { s.iter().map(|g| model.invert(g)).collect() };
    let mut x = set_product(model, &inv(&seq.start), &seq.start, opts.max_elements)?;
    for j in 1..=n {
        let f = seq.step_factor(j);
        let left = set_product(model, &inv(f), &x, opts.max_elements)
            .map_err(|e| restep(e, j))?;
        x = set_product(model, &left, f, opts.max_elements).map_err(|e| restep(e, j))?;
    }
    Ok(Rational::new(x.len() as u64, size))
}

fn restep(e: Error, j: usize) -> Error {
    match e {
        Error::BudgetExceeded {
            module,
            limit,
            reached,
            ..
        } => Error::BudgetExceeded {
            module,
            limit,
            reached,
            step: j,
        },
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z1() -> (GroupModel, Vec<Element>) {
        let m = GroupModel::lattice(1).unwrap();
        let u = m.with_identity(m.generating_set("standard").unwrap());
        (m, u)
    }

    #[test]
    fn interval_powers() {
        let (m, u) = z1();
        let seq = product_powers(&m, &u, 10, &ProductOptions::default()).unwrap();
        for (n, &s) in seq.sizes().iter().enumerate() {
            assert_eq!(s, 2 * n as u64 + 1);
        }
        assert_eq!(seq.identity_adjoined(), &[false]);
        let ratios = seq.folner_ratios().unwrap();
        assert_eq!(ratios[3], Rational::new(2, 7));
    }

    #[test]
    fn interval_regularity() {
        let (m, u) = z1();
        let seq = product_powers(&m, &u, 6, &ProductOptions::default()).unwrap();
        for n in 0..=6u64 {
            let c = regularity_constant(&m, &seq, n as usize, &ProductOptions::default()).unwrap();
            assert_eq!(c, Rational::new(4 * n + 1, 2 * n + 1));
        }
    }

    #[test]
    fn cone_is_rejected() {
        let m = GroupModel::lattice(2).unwrap();
        let u = vec![Element::new(&[0, 0]), Element::new(&[1, 0]), Element::new(&[0, 1])];
        assert!(matches!(
            product_powers(&m, &u, 3, &ProductOptions::default()),
            Err(Error::NonGenerating { .. })
        ));
    }

    #[test]
    fn budget_reports_step() {
        let (m, u) = z1();
        let err = product_powers(&m, &u, 100, &ProductOptions { max_elements: 50 }).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { step: 25, .. }), "{err:?}");
    }

    #[test]
    fn certification_failures() {
        let (m, u) = z1();
        let k = u.clone();
        let small = vec![Element::new(&[1])];
        assert!(matches!(
            varying_products(&m, &[u.clone(), small], &k, &u, 3, &ProductOptions::default()),
            Err(Error::Certification { index: 1, .. })
        ));
        let big = vec![Element::new(&[5]), Element::new(&[0]), Element::new(&[1]), Element::new(&[-1])];
        assert!(matches!(
            varying_products(&m, &[big], &k, &u, 3, &ProductOptions::default()),
            Err(Error::Certification { index: 0, .. })
        ));
    }

    #[test]
    fn constant_factors_shift_powers() {
        let (m, u) = z1();
        let opts = ProductOptions::default();
        let p = product_powers(&m, &u, 8, &opts).unwrap();
        let v = varying_products(&m, &[u.clone()], &u, &u, 7, &opts).unwrap();
        assert_eq!(v.sizes(), &p.sizes()[1..]);
    }
}
