//! Sphere-to-ball decay checks.

use crate::analysis::fit::log_trend_slope;
use crate::analysis::shell::ratio_f64;
use crate::error::{Error, Result};
use crate::space::VolumeProfile;
use crate::Rational;

/// Largest admissible least-squares slope of `ln C(n)` over the top half.
pub const TREND_TOLERANCE: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundRow {
    pub center: usize,
    pub n: usize,
    pub sphere: u64,
    pub ball: u64,
    /// `|S(x,n)| n^delta / |B(x,n)|`.
    pub c: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub delta: f64,
    pub rows: Vec<BoundRow>,
    pub fitted_c: f64,
    /// Largest per-center trend slope.
    pub trend_slope: f64,
    pub pass: bool,
}

fn center_rows(p: &VolumeProfile, delta: f64, radii: &[usize]) -> Result<Vec<BoundRow>> {
    radii
        .iter()
        .map(|&n| {
            if n == 0 {
                return Err(Error::InvalidParameter("radii must be >= 1".into()));
            }
            let sphere = p.sphere(n).ok_or(Error::InsufficientDepth {
                have: p.max_radius(),
                need: n + 1,
            })?;
            let ball = p.ball(n).unwrap();
            Ok(BoundRow {
                center: p.center(),
                n,
                sphere,
                ball,
                c: sphere as f64 * (n as f64).powf(delta) / ball as f64,
            })
        })
        .collect()
}

fn trend(rows: &[BoundRow]) -> Result<f64> {
    let xs: Vec<f64> = rows.iter().map(|r| r.n as f64).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.c).collect();
    if ys.iter().filter(|&&y| y > 0.0).count() < 4 {
        // Spheres vanish: the bound holds trivially.
        return Ok(f64::NEG_INFINITY);
    }
    log_trend_slope(&xs, &ys)
}

/// Computes `C(n) = |S(x,n)| n^delta / |B(x,n)|` at the given radii for
/// every profile. Passes when the maximum is finite and no center shows a
/// trend slope of `ln C` above [`TREND_TOLERANCE`] over the later half of
/// `radii`.
pub fn verify_sphere_bound(profiles: &[VolumeProfile], delta: f64, radii: &[usize]) -> Result<BoundReport> {
    if profiles.is_empty() || radii.is_empty() {
        return Err(Error::InvalidParameter("need profiles and radii".into()));
    }
    let mut rows = Vec::new();
    let mut slope = f64::NEG_INFINITY;
    for p in profiles {
        let r = center_rows(p, delta, radii)?;
        slope = slope.max(trend(&r)?);
        rows.extend(r);
    }
    let fitted_c = rows.iter().map(|r| r.c).fold(0.0, f64::max);
    Ok(BoundReport {
        delta,
        rows,
        fitted_c,
        trend_slope: slope,
        pass: fitted_c.is_finite() && slope <= TREND_TOLERANCE,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct AbelianReport {
    /// `max_n n |S(0,n)| / |B(0,n)|`.
    pub constant: Rational,
    pub argmax: usize,
    pub trend_slope: f64,
    pub pass: bool,
}

/// `max_{1 <= n <= n_max} n |S(n)| / |B(n)|` with a flat-trend test on
/// `n = 1..=n_max`.
pub fn abelian_isop_check(profile: &VolumeProfile, n_max: usize) -> Result<AbelianReport> {
    if n_max < 8 {
        return Err(Error::InvalidParameter("abelian check needs n_max >= 8".into()));
    }
    profile.require_depth(n_max + 1)?;
    let values: Vec<Rational> = (1..=n_max)
        .map(|n| Rational::new(n as u64 * profile.sphere(n).unwrap(), profile.ball(n).unwrap()))
        .collect();
    let (i, &constant) = values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        .unwrap();
    let xs: Vec<f64> = (1..=n_max).map(|n| n as f64).collect();
    let ys: Vec<f64> = values.iter().map(|&q| ratio_f64(q)).collect();
    let trend_slope = log_trend_slope(&xs, &ys)?;
    Ok(AbelianReport {
        constant,
        argmax: i + 1,
        trend_slope,
        pass: trend_slope <= TREND_TOLERANCE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_bound() {
        let p = VolumeProfile::from_balls(0, (0..=65).map(|r| 2 * r + 1).collect(), false).unwrap();
        let radii: Vec<usize> = (1..=64).collect();
        let r = verify_sphere_bound(&[p.clone()], 1.0, &radii).unwrap();
        assert!(r.fitted_c < 1.0);
        assert!(r.pass);
        let a = abelian_isop_check(&p, 64).unwrap();
        assert_eq!(a.constant, Rational::new(128, 129));
        assert!(a.pass);
    }

    #[test]
    fn growing_spheres_fail() {
        // |S(n)| = n, |B(n)| ~ n^2 / 2 with delta = 2 makes C(n) grow linearly.
        let balls: Vec<u64> = (0..=65u64).map(|r| 1 + r * (r + 1) / 2).collect();
        let p = VolumeProfile::from_balls(0, balls, false).unwrap();
        let radii: Vec<usize> = (1..=64).collect();
        assert!(!verify_sphere_bound(&[p], 2.0, &radii).unwrap().pass);
    }
}
