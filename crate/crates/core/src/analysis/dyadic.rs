use crate::error::{Error, Result};
use crate::space::VolumeProfile;
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DyadicEntry {
    pub i: u32,
    /// Sphere minimizer over `(2^i, 2^(i+1)]`, smallest on ties.
    pub radius: usize,
    pub sphere: u64,
    pub ball: u64,
    /// `C_D |B(x,r_i)| / 2^i`.
    pub bound: Rational,
    /// `2 C_D |B(x,r_i)| / r_i`.
    pub bound_r: Rational,
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyadicSelection {
    pub center: usize,
    pub doubling: Rational,
    pub entries: Vec<DyadicEntry>,
}

impl DyadicSelection {
    pub fn all_certified(&self) -> bool {
        self.entries.iter().all(|e| e.certified)
    }
}

/// Picks a quiet radius in every dyadic window `(2^i, 2^(i+1)]`, `i <= i_max`,
/// and certifies `|S(x,r_i)| <= C_D |B(x,r_i)| / 2^i` and
/// `|S(x,r_i)| <= 2 C_D |B(x,r_i)| / r_i` exactly.
///
/// The certificate relies on `C_D` bounding `|B(x,2r)|/|B(x,r)|` at
/// `r = 2^i + 1`.
pub fn dyadic_subsequence(profile: &VolumeProfile, doubling: Rational, i_max: u32) -> Result<DyadicSelection> {
    let need = (1usize << (i_max + 1)) + 1;
    profile.require_depth(need)?;
    let (cn, cd) = (u128::from(*doubling.numer()), u128::from(*doubling.denom()));
    let mut entries = Vec::new();
    for i in 0..=i_max {
        let lo = (1usize << i) + 1;
        let hi = 1usize << (i + 1);
        let (radius, sphere) = (lo..=hi)
            .map(|r| (r, profile.sphere(r).unwrap()))
            .min_by_key(|&(r, s)| (s, r))
            .unwrap();
        let ball = profile.ball(radius).unwrap();
        let lhs = u128::from(sphere) * cd;
        let ok_2i = lhs << i <= cn * u128::from(ball);
        let ok_r = lhs * radius as u128 <= 2 * cn * u128::from(ball);
        let to_rat = |num: u128, den: u128| -> Result<Rational> {
            let g = gcd(num, den);
            let (n, d) = (num / g, den / g);
            Ok(Rational::new(
                u64::try_from(n).map_err(|_| Error::Degenerate("bound overflows u64".into()))?,
                u64::try_from(d).map_err(|_| Error::Degenerate("bound overflows u64".into()))?,
            ))
        };
        entries.push(DyadicEntry {
            i,
            radius,
            sphere,
            ball,
            bound: to_rat(cn * u128::from(ball), cd << i)?,
            bound_r: to_rat(2 * cn * u128::from(ball), cd * radius as u128)?,
            certified: ok_2i && ok_r,
        });
    }
    Ok(DyadicSelection {
        center: profile.center(),
        doubling,
        entries,
    })
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_picks_first_radius() {
        let p = VolumeProfile::from_balls(0, (0..=300).map(|r| 2 * r + 1).collect(), false).unwrap();
        let sel = dyadic_subsequence(&p, Rational::new(2, 1), 6).unwrap();
        for e in &sel.entries {
            assert_eq!(e.radius, (1 << e.i) + 1);
            assert_eq!(e.sphere, 2);
        }
        assert!(sel.all_certified());
    }

    #[test]
    fn depth_required() {
        let p = VolumeProfile::from_balls(0, (0..=20).map(|r| 2 * r + 1).collect(), false).unwrap();
        assert!(dyadic_subsequence(&p, Rational::new(2, 1), 4).is_err());
    }
}
