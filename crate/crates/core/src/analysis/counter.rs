//! Measurements on the stretched tree chains.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::generators::TreeChain;
use crate::space::{volume_profile, VolumeProfile};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnnulusRatio {
    pub center: usize,
    pub r: usize,
    /// `|B(x,r) \ B(x,r/2)|`.
    pub annulus: u64,
    pub ball: u64,
    pub ratio: Rational,
}

/// Share of `B(x,r)` lying outside `B(x, r/2)`.
pub fn annulus_ratio(profile: &VolumeProfile, r: usize) -> Result<AnnulusRatio> {
    if r == 0 {
        return Err(Error::InvalidParameter("radius must be >= 1".into()));
    }
    profile.require_depth(r)?;
    let ball = profile.ball(r).unwrap();
    let annulus = profile.shell(r / 2, r).unwrap();
    Ok(AnnulusRatio {
        center: profile.center(),
        r,
        annulus,
        ball,
        ratio: Rational::new(annulus, ball),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WitnessRow {
    pub n: u32,
    pub center: usize,
    pub radius: u64,
    /// `|S(x, a^n)|`.
    pub sphere: u64,
    /// `b^n`.
    pub floor: u64,
    /// `sphere / b^n`.
    pub c: Rational,
}

/// Sphere at radius `a^n` around the witness center of block `n`, for each
/// requested `n` (which must be below the block count).
pub fn witness_spheres(chain: &TreeChain, ns: &[u32]) -> Result<Vec<WitnessRow>> {
    ns.par_iter()
        .map(|&n| {
            let center = chain.witness_center(n)?;
            let radius = chain.spec.a.pow(n);
            let p = volume_profile(&chain.graph, center, radius as usize + 1)?;
            let sphere = p.sphere(radius as usize).unwrap();
            let floor = chain.spec.b.pow(n);
            Ok(WitnessRow {
                n,
                center,
                radius,
                sphere,
                floor,
                c: Rational::new(sphere, floor),
            })
        })
        .collect()
}

/// Fitted constant `c = min_n sphere / b^n` and whether the ratios stay within
/// a factor 2 of each other.
pub fn witness_constant(rows: &[WitnessRow]) -> Option<(Rational, bool)> {
    let lo = rows.iter().map(|r| r.c).min()?;
    let hi = rows.iter().map(|r| r.c).max()?;
    let stable = lo > Rational::from_integer(0) && hi <= lo * Rational::from_integer(2);
    Some((lo, stable))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{build_tree_chain, TreeChainSpec};

    #[test]
    fn witness_reaches_previous_leaves() {
        let chain = build_tree_chain(TreeChainSpec::new(3, 2, 4).unwrap(), 1 << 20).unwrap();
        let rows = witness_spheres(&chain, &[1, 2, 3]).unwrap();
        for r in &rows {
            assert!(r.sphere >= r.floor, "{r:?}");
        }
        assert!(witness_spheres(&chain, &[4]).is_err());
    }

    #[test]
    fn annulus_on_interval() {
        let p = VolumeProfile::from_balls(0, (0..=16).map(|r| 2 * r + 1).collect(), false).unwrap();
        let a = annulus_ratio(&p, 16).unwrap();
        assert_eq!((a.annulus, a.ball), (16, 33));
    }
}
