use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::analysis::FitWindow;
use crate::ergodic::RotationPreset;
use crate::error::{Error, Result};
use crate::generators::{Element, GroupModel};

fn config_err(field: &str, message: impl Into<String>) -> Error {
    Error::Config {
        field: field.into(),
        message: message.into(),
    }
}

/// Which space an experiment runs on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SpaceSpec {
    /// Word ball of `Z^rank`, analysed at the origin.
    Lattice {
        rank: usize,
        #[serde(default = "standard")]
        generators: String,
    },
    /// Word ball of the Heisenberg group, analysed at the origin.
    Heisenberg {
        #[serde(default = "standard")]
        generators: String,
    },
    TreeChain { a: u64, b: u64, blocks: u32 },
    /// Stairway strip with the Euclidean distance of the plane.
    Stairway { levels: u32 },
    /// Graph in the text format.
    File { path: String },
}

fn standard() -> String {
    "standard".into()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum GroupSpec {
    Lattice { rank: usize },
    Heisenberg,
}

impl GroupSpec {
    pub fn model(&self) -> Result<GroupModel> {
        match self {
            GroupSpec::Lattice { rank } => GroupModel::lattice(*rank),
            GroupSpec::Heisenberg => Ok(GroupModel::heisenberg()),
        }
    }
}

/// A factor set: a named generating set or explicit integer tuples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FactorSpec {
    Label(String),
    Elements(Vec<Vec<i64>>),
}

impl FactorSpec {
    pub fn resolve(&self, model: &GroupModel) -> Result<Vec<Element>> {
        match self {
            FactorSpec::Label(l) => Ok(model.generating_set(l)?.to_vec()),
            FactorSpec::Elements(v) => v.iter().map(|c| model.element(c)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct CenterSpec {
    #[serde(default)]
    pub basepoints: Vec<String>,
    /// Number of seeded random centers.
    #[serde(default)]
    pub sample: usize,
    /// Tree-chain witness centers, by block index.
    #[serde(default)]
    pub witnesses: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct Budget {
    pub vertices: usize,
    pub elements: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            vertices: 5_000_000,
            elements: 20_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct Analyses {
    #[serde(default)]
    pub doubling: bool,
    #[serde(default)]
    pub shell: bool,
    #[serde(default)]
    pub verify: bool,
    #[serde(default)]
    pub dyadic: bool,
    #[serde(default)]
    pub abelian: bool,
    #[serde(default)]
    pub fit: bool,
    /// Annulus shares `|B(r) \ B(r/2)| / |B(r)|` at dyadic radii.
    #[serde(default)]
    pub annulus: bool,
    #[serde(default)]
    pub witness: bool,
    /// Sphere sizes at dyadic radii compared with the radius.
    #[serde(default)]
    pub spikes: bool,
    #[serde(default)]
    pub property_m: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct Params {
    /// Doubling constant over `r <= doubling_r_max` (default radius / 2).
    pub doubling_r_max: Option<usize>,
    /// Second doubling radius; checks `C_D(r_max) <= 2 C_D(compare)`.
    pub doubling_compare: Option<usize>,
    /// Largest `n` for shell ratios (default radius / 2).
    pub shell_n_max: Option<usize>,
    /// Upper bound required of the measured delta.
    pub delta_ceiling: Option<f64>,
    /// Delta used by `verify` when `shell` is off.
    pub delta: Option<f64>,
    /// Radii for `verify` (default `1..=verify_n_max`).
    pub verify_radii: Option<Vec<usize>>,
    /// Default `radius - 1`.
    pub verify_n_max: Option<usize>,
    /// Largest dyadic window index (default: deepest the radius allows).
    pub dyadic_i_max: Option<u32>,
    /// Upper bound for the abelian constant (default 3).
    pub abelian_max: Option<f64>,
    pub fit_lo: Option<usize>,
    pub fit_hi: Option<usize>,
    #[serde(default)]
    pub fit_window: FitWindow,
    /// Accepted exponent interval `[lo, hi]`.
    pub fit_expect: Option<[f64; 2]>,
    /// Blocks whose leaf balls are checked against `8 * 3^k`.
    pub leaf_ball_k: Option<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct ProductsSpec {
    pub group: GroupSpec,
    /// Powers `U^n` of a single factor, or varying products cycling through
    /// several.
    pub factors: Vec<FactorSpec>,
    /// Certified lower and upper sets for varying products.
    pub lower: Option<FactorSpec>,
    pub upper: Option<FactorSpec>,
    pub n_max: usize,
    /// Regularity constants for `n <= regularity_n`.
    pub regularity_n: Option<usize>,
    /// Run the abelian check on the sizes.
    #[serde(default)]
    pub abelian: bool,
    /// Fit of the Folner ratios on `[lo, hi]`; the decay exponent must exceed
    /// `min_decay`.
    pub decay_fit: Option<[usize; 2]>,
    pub min_decay: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct ErgodicSpec {
    pub observable: String,
    pub start: [f64; 2],
    pub n_max: usize,
    #[serde(default)]
    pub preset: RotationPreset,
    #[serde(default = "standard")]
    pub generators: String,
    /// Largest accepted error at `n_max`.
    pub tolerance: Option<f64>,
    /// Check the Folner and regularity hypotheses on `n <= hypotheses_n`.
    pub hypotheses_n: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct ClaimsSpec {
    pub group: GroupSpec,
    #[serde(default = "standard")]
    pub generators: String,
    pub n_max: usize,
    pub ks: Vec<usize>,
}

/// A complete experiment. Unknown keys are rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub name: String,
    pub space: Option<SpaceSpec>,
    #[serde(default)]
    pub centers: CenterSpec,
    /// Profile radius.
    #[serde(default)]
    pub radius: usize,
    #[serde(default)]
    pub analyses: Analyses,
    #[serde(default)]
    pub params: Params,
    #[serde(default = "default_k_min")]
    pub k_min: usize,
    pub seed: Option<u64>,
    #[serde(default)]
    pub budget: Budget,
    pub products: Option<ProductsSpec>,
    pub ergodic: Option<ErgodicSpec>,
    pub claims: Option<ClaimsSpec>,
    /// Expected outcome per check; checks not listed are expected to hold.
    #[serde(default)]
    pub expect: BTreeMap<String, bool>,
}

fn default_k_min() -> usize {
    5
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("configs serialize")
    }

    /// SHA-256 of the compact JSON form, as lowercase hex.
    pub fn hash(&self) -> String {
        let compact = serde_json::to_string(self).expect("configs serialize");
        Sha256::digest(compact.as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    /// Static checks; checks that need the built space happen at run time.
    pub fn validate(&self) -> Result<()> {
        if self.budget.vertices == 0 {
            return Err(config_err("budget.vertices", "must be positive"));
        }
        if self.budget.elements == 0 {
            return Err(config_err("budget.elements", "must be positive"));
        }
        if self.centers.sample > 0 && self.seed.is_none() {
            return Err(config_err("seed", "required when centers.sample > 0"));
        }
        if self.k_min == 0 {
            return Err(config_err("k-min", "must be >= 1"));
        }
        let a = &self.analyses;
        let needs_space = a.doubling
            || a.shell
            || a.verify
            || a.dyadic
            || a.abelian
            || a.fit
            || a.annulus
            || a.witness
            || a.spikes
            || a.property_m;
        match &self.space {
            None if needs_space => {
                return Err(config_err("space", "analyses on a space need a space"))
            }
            Some(space) => {
                if self.radius == 0 {
                    return Err(config_err("radius", "must be positive"));
                }
                let group_space = matches!(space, SpaceSpec::Lattice { .. } | SpaceSpec::Heisenberg { .. });
                if group_space
                    && (self.centers.sample > 0
                        || self.centers.basepoints.iter().any(|b| b != "origin"))
                {
                    return Err(config_err(
                        "centers",
                        "group spaces are homogeneous; only the basepoint `origin` is used",
                    ));
                }
                let tree = matches!(space, SpaceSpec::TreeChain { .. });
                if !tree && (a.witness || !self.centers.witnesses.is_empty()) {
                    return Err(config_err("centers.witnesses", "witnesses exist only on tree chains"));
                }
                if a.abelian && !matches!(space, SpaceSpec::Lattice { .. }) {
                    return Err(config_err("analyses.abelian", "the abelian check needs a lattice space"));
                }
                if a.verify && !a.shell && self.params.delta.is_none() {
                    return Err(config_err("params.delta", "verify without shell needs a delta"));
                }
            }
            None => {}
        }
        if let Some(p) = &self.products {
            if p.factors.is_empty() {
                return Err(config_err("products.factors", "at least one factor is required"));
            }
            if p.factors.len() > 1 && (p.lower.is_none() || p.upper.is_none()) {
                return Err(config_err(
                    "products.lower",
                    "varying products need certified lower and upper sets",
                ));
            }
        }
        if let Some(e) = &self.ergodic {
            if e.n_max == 0 {
                return Err(config_err("ergodic.n-max", "must be positive"));
            }
        }
        if let Some(c) = &self.claims {
            if c.ks.is_empty() {
                return Err(config_err("claims.ks", "at least one k is required"));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_keys_rejected() {
        let bad = r#"{"space": {"family": "lattice", "rank": 2}, "radius": 4, "radious": 3}"#;
        assert!(ExperimentConfig::from_json(bad).is_err());
        let bad_inner = r#"{"space": {"family": "lattice", "rank": 2, "rnak": 1}, "radius": 4}"#;
        assert!(ExperimentConfig::from_json(bad_inner).is_err());
        let ok = r#"{"space": {"family": "lattice", "rank": 2}, "radius": 4}"#;
        assert!(ExperimentConfig::from_json(ok).is_ok());
    }

    #[test]
    fn sampling_needs_seed() {
        let cfg = r#"{"space": {"family": "tree-chain", "a": 2, "b": 3, "blocks": 2},
                      "radius": 4, "centers": {"sample": 3}}"#;
        match ExperimentConfig::from_json(cfg) {
            Err(Error::Config { field, .. }) => assert_eq!(field, "seed"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn hash_is_stable() {
        let cfg = ExperimentConfig::from_json(r#"{"space": {"family": "stairway", "levels": 3}, "radius": 5}"#).unwrap();
        assert_eq!(cfg.hash(), cfg.clone().hash());
        assert_eq!(cfg.hash().len(), 64);
    }
}
