//! Ball averages of a `Z^2` rotation action on the 2-torus.

use std::f64::consts::TAU;

use rayon::prelude::*;
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{Element, GroupModel};
use crate::walk::{folner_ratios, product_powers, regularity_constant, ProductOptions};

pub const GOLDEN: f64 = 0.618_033_988_749_894_8;
pub const SILVER: f64 = std::f64::consts::SQRT_2 - 1.0;

/// `(m, n)` acts on `[0,1)^2` by `(x + m t1, y + n t2) mod 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TorusAction {
    pub theta: [f64; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum RotationPreset {
    /// `((sqrt 5 - 1)/2, sqrt 2 - 1)`.
    #[default]
    Golden,
    /// `(sqrt 2 - 1, (sqrt 5 - 1)/2)`.
    Silver,
}

impl TorusAction {
    pub fn new(theta: [f64; 2]) -> Result<Self> {
        if theta.iter().any(|t| !(0.0 < *t && *t < 1.0)) {
            return Err(Error::InvalidParameter(format!(
                "rotation numbers must lie in (0,1), got {theta:?}"
            )));
        }
        Ok(Self { theta })
    }

    pub fn preset(p: RotationPreset) -> Self {
        match p {
            RotationPreset::Golden => Self { theta: [GOLDEN, SILVER] },
            RotationPreset::Silver => Self { theta: [SILVER, GOLDEN] },
        }
    }

    /// Image of `p` under `(m, n)`.
    pub fn act(&self, g: [i64; 2], p: [f64; 2]) -> [f64; 2] {
        [
            (p[0] + g[0] as f64 * self.theta[0]).rem_euclid(1.0),
            (p[1] + g[1] as f64 * self.theta[1]).rem_euclid(1.0),
        ]
    }
}

/// Observables with closed-form integrals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Observable {
    Constant { value: f64 },
    /// `cos 2 pi (kx x + ky y)`.
    Cos { kx: i64, ky: i64 },
    /// `sin 2 pi (kx x + ky y)`.
    Sin { kx: i64, ky: i64 },
    /// Indicator of `[x0,x1) x [y0,y1)` inside the unit square.
    Rect { x0: f64, x1: f64, y0: f64, y1: f64 },
    /// Linear combination.
    Sum { terms: Vec<(f64, Observable)> },
}

impl Observable {
    /// Catalog names accepted by [`Observable::named`].
    pub const NAMES: [&'static str; 6] = ["constant", "cos-x", "cos-y", "cos-xy", "sin-x", "rect-quarter"];

    pub fn named(name: &str) -> Result<Self> {
        Ok(match name {
            "constant" => Observable::Constant { value: 1.0 },
            "cos-x" => Observable::Cos { kx: 1, ky: 0 },
            "cos-y" => Observable::Cos { kx: 0, ky: 1 },
            "cos-xy" => Observable::Cos { kx: 1, ky: 1 },
            "sin-x" => Observable::Sin { kx: 1, ky: 0 },
            "rect-quarter" => Observable::Rect {
                x0: 0.0,
                x1: 0.25,
                y0: 0.0,
                y1: 0.25,
            },
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown observable `{other}` (known: {})",
                    Self::NAMES.join(", ")
                )))
            }
        })
    }

    pub fn eval(&self, p: [f64; 2]) -> f64 {
        match self {
            Observable::Constant { value } => *value,
            Observable::Cos { kx, ky } => (TAU * (*kx as f64 * p[0] + *ky as f64 * p[1])).cos(),
            Observable::Sin { kx, ky } => (TAU * (*kx as f64 * p[0] + *ky as f64 * p[1])).sin(),
            Observable::Rect { x0, x1, y0, y1 } => {
                f64::from(u8::from(*x0 <= p[0] && p[0] < *x1 && *y0 <= p[1] && p[1] < *y1))
            }
            Observable::Sum { terms } => terms.iter().map(|(c, f)| c * f.eval(p)).sum(),
        }
    }

    /// Lebesgue integral over the torus.
    pub fn integral(&self) -> f64 {
        match self {
            Observable::Constant { value } => *value,
            Observable::Cos { kx: 0, ky: 0 } => 1.0,
            Observable::Cos { .. } | Observable::Sin { .. } => 0.0,
            Observable::Rect { x0, x1, y0, y1 } => {
                let w = (x1.min(1.0) - x0.max(0.0)).max(0.0);
                let h = (y1.min(1.0) - y0.max(0.0)).max(0.0);
                w * h
            }
            Observable::Sum { terms } => terms.iter().map(|(c, f)| c * f.integral()).sum(),
        }
    }
}

/// Shells `U^n \ U^(n-1)` of a `Z^2` generating set, `n = 0..=n_max`.
#[derive(Debug, Clone)]
pub struct AveragingBalls {
    shells: Vec<Vec<[i64; 2]>>,
}

impl AveragingBalls {
    /// Balls of the named `Z^2` generating set, identity adjoined.
    pub fn new(label: &str, n_max: usize, max_elements: usize) -> Result<Self> {
        let z2 = GroupModel::lattice(2)?;
        let u = z2.with_identity(z2.generating_set(label)?);
        z2.check_semigroup_generates(&u, crate::walk::SEMIGROUP_HORIZON, max_elements)?;
        let id = z2.identity();
        let mut seen: FxHashSet<Element> = FxHashSet::default();
        seen.insert(id);
        let mut shells = vec![vec![[0, 0]]];
        let mut frontier = vec![id];
        for n in 1..=n_max {
            let mut next = Vec::new();
            for a in &frontier {
                for b in &u {
                    let p = z2.multiply(a, b);
                    if seen.insert(p) {
                        next.push(p);
                    }
                }
            }
            if seen.len() > max_elements {
                return Err(Error::BudgetExceeded {
                    module: "ergodic",
                    limit: max_elements,
                    reached: seen.len(),
                    step: n,
                });
            }
            shells.push(next.iter().map(|e| [e.0[0], e.0[1]]).collect());
            frontier = next;
        }
        Ok(Self { shells })
    }

    pub fn n_max(&self) -> usize {
        self.shells.len() - 1
    }

    pub fn ball_size(&self, n: usize) -> usize {
        self.shells[..=n].iter().map(Vec::len).sum()
    }

    /// Sums of `f(g^{-1} x)` over each shell.
    fn shell_sums(&self, action: &TorusAction, f: &Observable, x: [f64; 2]) -> Vec<f64> {
        self.shells
            .iter()
            .map(|shell| shell.iter().map(|g| f.eval(action.act([-g[0], -g[1]], x))).sum())
            .collect()
    }
}

/// `(1/|B_n|) sum_{g in B_n} f(g^{-1} x)`.
pub fn ball_average(
    action: &TorusAction,
    f: &Observable,
    x: [f64; 2],
    balls: &AveragingBalls,
    n: usize,
) -> Result<f64> {
    if n > balls.n_max() {
        return Err(Error::InvalidParameter(format!(
            "radius {n} exceeds the prepared {}",
            balls.n_max()
        )));
    }
    let sums = balls.shell_sums(action, f, x);
    Ok(sums[..=n].iter().sum::<f64>() / balls.ball_size(n) as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErgodicTrace {
    pub observable: Observable,
    pub start: [f64; 2],
    pub target: f64,
    /// `values[n-1] = A_n f(x)` for `n = 1..=N`.
    pub values: Vec<f64>,
    pub errors: Vec<f64>,
    /// Largest error over the top quartile of radii.
    pub tail_error: f64,
}

/// `A_n f(x)` for `n = 1..=N` from incremental shell sums.
pub fn ergodic_trace(
    action: &TorusAction,
    f: &Observable,
    x: [f64; 2],
    balls: &AveragingBalls,
) -> Result<ErgodicTrace> {
    let n_max = balls.n_max();
    if n_max == 0 {
        return Err(Error::InvalidParameter("trace needs N >= 1".into()));
    }
    let sums = balls.shell_sums(action, f, x);
    let target = f.integral();
    let (mut acc, mut count) = (sums[0], balls.shells[0].len());
    let mut values = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        acc += sums[n];
        count += balls.shells[n].len();
        values.push(acc / count as f64);
    }
    let errors: Vec<f64> = values.iter().map(|v| (v - target).abs()).collect();
    let q = n_max - n_max.div_ceil(4);
    let tail_error = errors[q..].iter().copied().fold(0.0, f64::max);
    Ok(ErgodicTrace {
        observable: f.clone(),
        start: x,
        target,
        values,
        errors,
        tail_error,
    })
}

/// Traces for several `(f, x)` pairs in parallel; output order follows input.
pub fn ergodic_traces(
    action: &TorusAction,
    jobs: &[(Observable, [f64; 2])],
    balls: &AveragingBalls,
) -> Result<Vec<ErgodicTrace>> {
    jobs.par_iter()
        .map(|(f, x)| ergodic_trace(action, f, *x, balls))
        .collect()
}

/// `(mean over grid points x of |A_n f(x) - integral|^p)^(1/p)` on a
/// `grid x grid` lattice of start points.
pub fn lp_error(
    action: &TorusAction,
    f: &Observable,
    balls: &AveragingBalls,
    n: usize,
    grid: usize,
    p: f64,
) -> Result<f64> {
    if grid == 0 || !(p >= 1.0) {
        return Err(Error::InvalidParameter("need grid >= 1 and p >= 1".into()));
    }
    let target = f.integral();
    let pts: Vec<[f64; 2]> = (0..grid * grid)
        .map(|i| [(i / grid) as f64 / grid as f64, (i % grid) as f64 / grid as f64])
        .collect();
    let errs: Vec<f64> = pts
        .par_iter()
        .map(|&x| ball_average(action, f, x, balls, n).map(|a| (a - target).abs().powf(p)))
        .collect::<Result<_>>()?;
    Ok((errs.iter().sum::<f64>() / errs.len() as f64).powf(1.0 / p))
}

/// Machine check of the averaging hypotheses for the standard balls of `Z^2`:
/// Folner ratios decrease along `1..=n_max` and the regularity constant
/// `|B_n^{-1} B_n| / |B_n|` stays at most `regularity_cap`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HypothesisReport {
    pub last_folner: f64,
    pub folner_decreasing: bool,
    pub max_regularity: f64,
    pub pass: bool,
}

pub fn check_hypotheses(n_max: usize, regularity_n: usize, regularity_cap: f64) -> Result<HypothesisReport> {
    use num_traits::ToPrimitive;
    let z2 = GroupModel::lattice(2)?;
    let u = z2.generating_set("standard")?.to_vec();
    let opts = ProductOptions::default();
    let seq = product_powers(&z2, &u, n_max, &opts)?;
    let ratios: Vec<f64> = folner_ratios(seq.sizes())?
        .iter()
        .map(|q| q.to_f64().unwrap())
        .collect();
    let folner_decreasing = ratios.windows(2).all(|w| w[1] <= w[0]);
    let mut max_regularity: f64 = 0.0;
    for n in 0..=regularity_n.min(n_max) {
        let c = regularity_constant(&z2, &seq, n, &opts)?;
        max_regularity = max_regularity.max(c.to_f64().unwrap());
    }
    let last_folner = *ratios.last().unwrap();
    Ok(HypothesisReport {
        last_folner,
        folner_decreasing,
        max_regularity,
        pass: folner_decreasing && max_regularity <= regularity_cap,
    })
}
