//! Shell-doubling constant and the dyadic shell recursion.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::space::VolumeProfile;
use crate::Rational;

/// One comparison of the inner shell `C_{n-k,n}` with the outer `C_{n,n+k}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShellRecord {
    pub center: usize,
    pub n: usize,
    pub k: usize,
    pub c_lo: u64,
    pub c_hi: u64,
    /// `c_lo / c_hi`, absent when the outer shell is empty.
    pub ratio: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShellReport {
    pub records: Vec<ShellRecord>,
    pub k_min: usize,
    pub n_max: usize,
    /// Infimum of the admitted ratios.
    pub alpha: Rational,
    /// Record achieving `alpha`.
    pub argmin: (usize, usize, usize),
    /// `log2(1 + alpha)`.
    pub delta: f64,
    /// Per-center infimum, in input order.
    pub per_center: Vec<(usize, Rational)>,
    /// Filled in by sphere-bound verification.
    pub fitted_c: Option<f64>,
}

/// `log2(1 + alpha)`.
pub fn delta_from_alpha(alpha: f64) -> Result<f64> {
    if !(alpha >= 0.0) || !alpha.is_finite() {
        return Err(Error::InvalidParameter(format!("alpha must be >= 0, got {alpha}")));
    }
    Ok((1.0 + alpha).log2())
}

pub(crate) fn ratio_f64(q: Rational) -> f64 {
    q.to_f64().expect("u64 ratios convert to f64")
}

fn records_for(p: &VolumeProfile, k_min: usize, n_max: usize) -> Vec<ShellRecord> {
    let mut out = Vec::new();
    for n in k_min..=n_max {
        for k in k_min..=n {
            let (Some(c_lo), Some(c_hi)) = (p.shell(n - k, n), p.shell(n, n + k)) else {
                continue;
            };
            out.push(ShellRecord {
                center: p.center(),
                n,
                k,
                c_lo,
                c_hi,
                ratio: (c_hi > 0).then(|| Rational::new(c_lo, c_hi)),
            });
        }
    }
    out
}

/// Shell ratios `c_{n-k,n} / c_{n,n+k}` for `k_min <= k <= n <= n_max`,
/// restricted to pairs the profiles reach (`n + k` within depth), pooled
/// over all profiles.
pub fn shell_alpha_all(profiles: &[VolumeProfile], k_min: usize, n_max: usize) -> Result<ShellReport> {
    if k_min == 0 {
        return Err(Error::InvalidParameter("k_min must be >= 1".into()));
    }
    if profiles.is_empty() {
        return Err(Error::InvalidParameter("no profiles given".into()));
    }
    for p in profiles {
        p.require_depth(n_max + k_min)?;
    }
    let per: Vec<Vec<ShellRecord>> = profiles
        .par_iter()
        .map(|p| records_for(p, k_min, n_max))
        .collect();
    let mut per_center = Vec::new();
    let mut best: Option<(Rational, (usize, usize, usize))> = None;
    for recs in &per {
        let local = recs
            .iter()
            .filter_map(|r| r.ratio.map(|q| (q, (r.center, r.n, r.k))))
            .min_by(|a, b| a.0.cmp(&b.0));
        if let Some((q, at)) = local {
            per_center.push((at.0, q));
            if best.is_none_or(|b| q < b.0) {
                best = Some((q, at));
            }
        }
    }
    let (alpha, argmin) =
        best.ok_or_else(|| Error::Degenerate("every shell ratio is inadmissible".into()))?;
    Ok(ShellReport {
        records: per.into_iter().flatten().collect(),
        k_min,
        n_max,
        alpha,
        argmin,
        delta: delta_from_alpha(ratio_f64(alpha))?,
        per_center,
        fitted_c: None,
    })
}

/// Single-profile form of [`shell_alpha_all`].
pub fn shell_alpha(profile: &VolumeProfile, k_min: usize, n_max: usize) -> Result<ShellReport> {
    shell_alpha_all(std::slice::from_ref(profile), k_min, n_max)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditTerm {
    pub label: String,
    pub holds: bool,
}

/// Term-by-term check of the dyadic shell recursion at radius `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct AuditRecord {
    pub center: usize,
    pub n: usize,
    pub alpha: Rational,
    /// `i_n = floor(log2 n)`.
    pub i_n: usize,
    /// `b_i = |B(x,n)| - |B(x, n - 2^i)|` for `i = 0..=i_n`.
    pub b: Vec<u64>,
    pub terms: Vec<AuditTerm>,
    pub first_violation: Option<usize>,
}

impl AuditRecord {
    pub fn holds(&self) -> bool {
        self.first_violation.is_none()
    }

    /// Turns a violation into [`Error::ChainViolation`].
    pub fn check(self) -> Result<Self> {
        match self.first_violation {
            None => Ok(self),
            Some(index) => Err(Error::ChainViolation { n: self.n, index }),
        }
    }
}

/// Recomputes `b_i` and checks `b_i >= (1+alpha) b_{i-1}` for `1 <= i <= i_n`,
/// then the chain
/// `|B(x,n)| >= b_{i_n} >= (1+alpha)^{i_n} b_0 >= n^delta b_0 / (1+alpha)`.
/// All but the last comparison are exact.
pub fn lemma_recursion_audit(profile: &VolumeProfile, n: usize, alpha: Rational) -> Result<AuditRecord> {
    if n == 0 {
        return Err(Error::InvalidParameter("audit radius must be >= 1".into()));
    }
    profile.require_depth(n)?;
    let i_n = n.ilog2() as usize;
    let ball_n = profile.ball(n).unwrap();
    let b: Vec<u64> = (0..=i_n)
        .map(|i| ball_n - profile.ball(n - (1usize << i)).unwrap())
        .collect();
    let (num, den) = (u128::from(*alpha.numer()), u128::from(*alpha.denom()));
    let mut terms = Vec::new();
    for i in 1..=i_n {
        terms.push(AuditTerm {
            label: format!("b_{i} >= (1+alpha) b_{}", i - 1),
            holds: u128::from(b[i]) * den >= (den + num) * u128::from(b[i - 1]),
        });
    }
    terms.push(AuditTerm {
        label: format!("|B(n)| >= b_{i_n}"),
        holds: ball_n >= b[i_n],
    });
    let lhs = BigUint::from(b[i_n]) * BigUint::from(den).pow(i_n as u32);
    let rhs = BigUint::from(den + num).pow(i_n as u32) * BigUint::from(b[0]);
    terms.push(AuditTerm {
        label: format!("b_{i_n} >= (1+alpha)^{i_n} b_0"),
        holds: lhs >= rhs,
    });
    let a = ratio_f64(alpha);
    let delta = delta_from_alpha(a)?;
    let power = (1.0 + a).powi(i_n as i32);
    let floor = (n as f64).powf(delta) / (1.0 + a);
    terms.push(AuditTerm {
        label: "(1+alpha)^i_n >= n^delta / (1+alpha)".into(),
        holds: power * (1.0 + 1e-12) >= floor,
    });
    let first_violation = terms.iter().position(|t| !t.holds);
    Ok(AuditRecord {
        center: profile.center(),
        n,
        alpha,
        i_n,
        b,
        terms,
        first_violation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn interval() -> VolumeProfile {
        VolumeProfile::from_balls(0, (0..=80).map(|r| 2 * r + 1).collect(), false).unwrap()
    }

    #[test]
    fn deltas() {
        assert_eq!(delta_from_alpha(1.0).unwrap(), 1.0);
        assert_eq!(delta_from_alpha(0.0).unwrap(), 0.0);
        assert_eq!(delta_from_alpha(3.0).unwrap(), 2.0);
        assert!(delta_from_alpha(-0.5).is_err());
        assert!(delta_from_alpha(f64::NAN).is_err());
    }

    #[test]
    fn interval_shells() {
        let r = shell_alpha(&interval(), 5, 30).unwrap();
        assert_eq!(r.alpha, Rational::from_integer(1));
        assert_eq!(r.delta, 1.0);
        assert!(r.records.iter().all(|x| x.c_lo == 2 * x.k as u64 && x.c_hi == x.c_lo));
    }

    #[test]
    fn interval_audit() {
        let a = lemma_recursion_audit(&interval(), 8, Rational::from_integer(1)).unwrap();
        assert_eq!(a.b, vec![2, 4, 8, 16]);
        assert!(a.holds());
        let bad = lemma_recursion_audit(&interval(), 8, Rational::from_integer(2)).unwrap();
        assert_eq!(bad.first_violation, Some(0));
        assert!(matches!(bad.check(), Err(Error::ChainViolation { n: 8, index: 0 })));
    }

    #[test]
    fn empty_outer_shells_are_skipped() {
        let p = VolumeProfile::from_balls(0, vec![1, 3, 5, 7, 9, 11, 11], true).unwrap();
        assert!(matches!(shell_alpha(&p, 5, 5), Err(Error::Degenerate(_))));
    }
}
