use crate::error::{Error, Result};
use crate::space::VolumeProfile;
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DoublingReport {
    /// `max |B(x,2r)| / |B(x,r)|` over the sample and `1 <= r <= r_max`.
    pub constant: Rational,
    pub center: usize,
    pub radius: usize,
}

/// Measured doubling constant. Every profile must reach radius `2 r_max`.
pub fn doubling_constant(profiles: &[VolumeProfile], r_max: usize) -> Result<DoublingReport> {
    if profiles.is_empty() || r_max == 0 {
        return Err(Error::InvalidParameter(
            "doubling constant needs profiles and r_max >= 1".into(),
        ));
    }
    let mut best: Option<DoublingReport> = None;
    for p in profiles {
        p.require_depth(2 * r_max)?;
        for r in 1..=r_max {
            let q = Rational::new(p.ball(2 * r).unwrap(), p.ball(r).unwrap());
            if best.is_none_or(|b| q > b.constant) {
                best = Some(DoublingReport {
                    constant: q,
                    center: p.center(),
                    radius: r,
                });
            }
        }
    }
    Ok(best.unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_doubling() {
        let balls: Vec<u64> = (0..=40).map(|r| 2 * r + 1).collect();
        let p = VolumeProfile::from_balls(0, balls, false).unwrap();
        let d = doubling_constant(&[p.clone()], 20).unwrap();
        assert_eq!(d.constant, Rational::new(81, 41));
        assert_eq!(d.radius, 20);
        assert!(matches!(
            doubling_constant(&[p], 21),
            Err(Error::InsufficientDepth { .. })
        ));
    }
}
