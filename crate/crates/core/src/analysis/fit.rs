use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Least-squares line `y = slope * x + intercept`.
pub fn ls_line(xs: &[f64], ys: &[f64]) -> Result<(f64, f64)> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::Degenerate("a line fit needs at least two points".into()));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::Degenerate("all abscissae are equal".into()));
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    Ok((slope, my - slope * mx))
}

/// Slope of `ln y` against `ln x` over the positional top half of the points
/// (the later half of the list). Points with `y <= 0` are dropped first.
pub fn log_trend_slope(xs: &[f64], ys: &[f64]) -> Result<f64> {
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys)
        .filter(|(&x, &y)| x > 0.0 && y > 0.0)
        .map(|(&x, &y)| (x.ln(), y.ln()))
        .collect();
    let top = &pts[pts.len() / 2..];
    let (lx, ly): (Vec<f64>, Vec<f64>) = top.iter().copied().unzip();
    Ok(ls_line(&lx, &ly)?.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum FitWindow {
    /// Radii in the upper half of `[lo, hi]`.
    #[default]
    TopHalf,
    /// Every radius in `[lo, hi]`.
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthFit {
    pub exponent: f64,
    pub intercept: f64,
    pub rms_residual: f64,
    pub lo: usize,
    pub hi: usize,
    pub points: usize,
}

/// Fits `ln |B(n)| ~ d ln n + c` over radii `n` selected from `[lo, hi]`.
/// `balls[n]` is the volume at radius `n`.
pub fn growth_exponent_fit(balls: &[u64], lo: usize, hi: usize, window: FitWindow) -> Result<GrowthFit> {
    let lo = lo.max(1);
    if hi >= balls.len() || lo > hi {
        return Err(Error::InvalidParameter(format!(
            "fit range [{lo}, {hi}] outside data of length {}",
            balls.len()
        )));
    }
    let start = match window {
        FitWindow::TopHalf => (lo + hi).div_ceil(2),
        FitWindow::Full => lo,
    };
    let radii: Vec<usize> = (start..=hi).collect();
    if radii.len() < 8 {
        return Err(Error::Degenerate(format!(
            "growth fit needs at least 8 points, window has {}",
            radii.len()
        )));
    }
    if radii.iter().all(|&n| balls[n] == balls[start]) {
        return Err(Error::Degenerate("ball volumes are constant on the window".into()));
    }
    let xs: Vec<f64> = radii.iter().map(|&n| (n as f64).ln()).collect();
    let ys: Vec<f64> = radii.iter().map(|&n| (balls[n] as f64).ln()).collect();
    let (slope, intercept) = ls_line(&xs, &ys)?;
    let ss: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - slope * x - intercept).powi(2))
        .sum();
    Ok(GrowthFit {
        exponent: slope,
        intercept,
        rms_residual: (ss / xs.len() as f64).sqrt(),
        lo: start,
        hi,
        points: radii.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law() {
        let balls: Vec<u64> = (0..40u64).map(|n| 3 * n * n * n).collect();
        let f = growth_exponent_fit(&balls, 1, 39, FitWindow::Full).unwrap();
        assert!((f.exponent - 3.0).abs() < 1e-9);
        assert!(f.rms_residual < 1e-9);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(growth_exponent_fit(&[1; 20], 1, 19, FitWindow::Full).is_err());
        assert!(growth_exponent_fit(&[1, 2, 3, 4, 5], 1, 4, FitWindow::Full).is_err());
        assert!(ls_line(&[1.0, 1.0], &[2.0, 3.0]).is_err());
    }

    #[test]
    fn trend_uses_later_half() {
        let xs: Vec<f64> = (1..=10).map(f64::from).collect();
        let mut ys = vec![100.0; 10];
        for y in ys.iter_mut().skip(5) {
            *y = 1.0;
        }
        assert!(log_trend_slope(&xs, &ys).unwrap().abs() < 1e-12);
    }
}
