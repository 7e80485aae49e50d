//! JSON-configured experiments: build a space, run analyses, emit CSV tables
//! and a summary.

mod config;
mod recipes;
mod run;
mod table;

pub use config::{
    Analyses, Budget, CenterSpec, ClaimsSpec, ErgodicSpec, ExperimentConfig, FactorSpec,
    GroupSpec, Params, ProductsSpec, SpaceSpec,
};
pub use recipes::{recipe, recipe_names, reproduce};
pub use run::{folner_decay, run_experiment, sizes_table, Artifact, ExperimentOutcome};
pub use table::{fmt_f64, fmt_ratio, Table};
