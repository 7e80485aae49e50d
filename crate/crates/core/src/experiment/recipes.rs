use crate::error::{Error, Result};
use crate::experiment::config::ExperimentConfig;
use crate::experiment::run::{run_experiment, ExperimentOutcome};

struct Recipe {
    name: &'static str,
    config: &'static str,
}

const RECIPES: &[Recipe] = &[
    // Sphere bound S(n) <= C n^-delta B(n) on Z^2 with delta from the shell
    // ratio, the audit of the recursion behind it, the dyadic selection, and
    // Folner decay of alternating standard/hexagonal products.
    Recipe {
        name: "theorem-zd",
        config: r#"{
            "name": "theorem-zd",
            "space": {"family": "lattice", "rank": 2},
            "radius": 128,
            "analyses": {"doubling": true, "shell": true, "verify": true, "dyadic": true},
            "params": {"shell-n-max": 64, "verify-n-max": 64},
            "products": {
                "group": {"kind": "lattice", "rank": 2},
                "factors": ["standard", "hexagonal"],
                "lower": "standard",
                "upper": "hexagonal",
                "n-max": 65,
                "regularity-n": 16,
                "decay-fit": [16, 64],
                "min-decay": 0.5
            }
        }"#,
    },
    // The same sphere bound on the Heisenberg group, plus its degree-4 growth.
    Recipe {
        name: "theorem-heisenberg",
        config: r#"{
            "name": "theorem-heisenberg",
            "space": {"family": "heisenberg"},
            "radius": 32,
            "analyses": {"shell": true, "verify": true, "fit": true},
            "params": {"shell-n-max": 27, "fit-lo": 10, "fit-hi": 32, "fit-window": "full", "fit-expect": [3.7, 4.3]}
        }"#,
    },
    // Tree chain (2,3,8): annulus share at least 1/8 at block roots, leaf
    // balls at most 8 * 3^k, and doubling. The uniform sphere bound fails.
    Recipe {
        name: "counterexample-tree",
        config: r#"{
            "name": "counterexample-tree",
            "space": {"family": "tree-chain", "a": 2, "b": 3, "blocks": 8},
            "radius": 258,
            "centers": {"basepoints": ["r_3", "r_4", "r_5", "r_6", "r_7"]},
            "analyses": {"doubling": true, "annulus": true, "dyadic": true},
            "params": {"leaf-ball-k": [3, 4, 5, 6, 7], "dyadic-i-max": 7}
        }"#,
    },
    // Tree chain (3,2,7): doubling stays bounded, witness centers carry
    // spheres of order 2^n at radius 3^n, and delta stays below
    // 1 - log 2 / log 3 + 0.1.
    Recipe {
        name: "counterexample-remark-ab",
        config: r#"{
            "name": "counterexample-remark-ab",
            "space": {"family": "tree-chain", "a": 3, "b": 2, "blocks": 7},
            "radius": 1460,
            "centers": {"basepoints": ["r_1", "r_2", "r_3", "r_4", "r_5", "r_6", "r_7"], "witnesses": [3, 4, 5, 6]},
            "analyses": {"doubling": true, "shell": true, "witness": true},
            "params": {"doubling-r-max": 729, "doubling-compare": 81, "shell-n-max": 243, "delta-ceiling": 0.469}
        }"#,
    },
    // Stairway strip with the plane metric: linear growth, yet spheres at
    // 2^k hold at least 2^k points, so the sphere bound fails.
    Recipe {
        name: "counterexample-stairway",
        config: r#"{
            "name": "counterexample-stairway",
            "space": {"family": "stairway", "levels": 10},
            "radius": 1025,
            "analyses": {"fit": true, "spikes": true, "verify": true},
            "params": {"fit-lo": 8, "fit-hi": 1024, "fit-window": "full", "fit-expect": [0.85, 1.15],
                       "delta": 0.5, "verify-radii": [16, 32, 64, 128, 256, 512]},
            "expect": {"verify": false}
        }"#,
    },
    // Dyadic selection S(r_i) <= 2 C_D B(r_i) / 2^i on every block root of
    // the (2,3,8) tree chain, i <= 7.
    Recipe {
        name: "dyadic",
        config: r#"{
            "name": "dyadic",
            "space": {"family": "tree-chain", "a": 2, "b": 3, "blocks": 8},
            "radius": 258,
            "centers": {"basepoints": ["r_1", "r_2", "r_3", "r_4", "r_5", "r_6", "r_7", "r_8"]},
            "analyses": {"dyadic": true},
            "params": {"dyadic-i-max": 7}
        }"#,
    },
    // n S(n) / B(n) <= 3 on Z^2 for n <= 128, and for powers of the
    // non-symmetric triangle set.
    Recipe {
        name: "abelian",
        config: r#"{
            "name": "abelian",
            "space": {"family": "lattice", "rank": 2},
            "radius": 129,
            "analyses": {"abelian": true},
            "products": {
                "group": {"kind": "lattice", "rank": 2},
                "factors": ["triangle"],
                "n-max": 129,
                "abelian": true
            }
        }"#,
    },
    // Ball averages of cos 2 pi x under the golden rotation action of Z^2
    // converge to the integral 0.
    Recipe {
        name: "ergodic",
        config: r#"{
            "name": "ergodic",
            "ergodic": {"observable": "cos-x", "start": [0.1, 0.2], "n-max": 200, "preset": "golden",
                        "tolerance": 0.05, "hypotheses-n": 32}
        }"#,
    },
    // Shell inclusions between C_{n,n+k}, C_{n-k,n} and a thin sphere times
    // powers of U, on Z^2 for n <= 20 and k in {4, 8, 12}.
    Recipe {
        name: "claims-5-3",
        config: r#"{
            "name": "claims-5-3",
            "claims": {"group": {"kind": "lattice", "rank": 2}, "n-max": 20, "ks": [4, 8, 12]}
        }"#,
    },
];

pub fn recipe_names() -> Vec<&'static str> {
    RECIPES.iter().map(|r| r.name).collect()
}

/// The bundled config named `name`.
pub fn recipe(name: &str) -> Result<ExperimentConfig> {
    let r = RECIPES
        .iter()
        .find(|r| r.name == name)
        .ok_or_else(|| Error::UnknownRecipe(name.to_string()))?;
    ExperimentConfig::from_json(r.config)
}

/// Runs the bundled config named `name`.
pub fn reproduce(name: &str) -> Result<ExperimentOutcome> {
    run_experiment(&recipe(name)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_recipes_parse() {
        for name in recipe_names() {
            let cfg = recipe(name).unwrap();
            assert_eq!(cfg.name, name);
        }
        assert!(matches!(recipe("nope"), Err(Error::UnknownRecipe(_))));
    }
}
