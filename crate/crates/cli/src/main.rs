use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use polygrowth::experiment::{
    recipe, recipe_names, run_experiment, ExperimentConfig, ExperimentOutcome,
};
use polygrowth::generators::{
    build_tree_chain, cayley_ball, stairway_strip, subdivided_line, GroupModel, TreeChainSpec,
};

#[derive(Parser)]
#[command(name = "polygrowth", version, about = "Growth and sphere-decay experiments on graphs and groups")]
struct Cli {
    /// Seed for sampled centers.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    budget_vertices: Option<usize>,
    #[arg(long, global = true)]
    budget_elements: Option<usize>,
    /// Output directory (a file for `generate`). Without it the main table
    /// goes to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated graph in the text format.
    Generate {
        #[command(flatten)]
        space: SpaceArgs,
        /// Half length of a subdivided line; overrides --family.
        #[arg(long)]
        line: Option<usize>,
    },
    /// Ball and sphere sizes at the chosen centers.
    Profile(SpaceArgs),
    /// Sizes of the powers `U^n`.
    Powers {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value = "standard")]
        factor: String,
        #[arg(long)]
        n_max: usize,
        /// Also compute `|U^-n U^n| / |U^n|` up to this n.
        #[arg(long)]
        regularity_n: Option<usize>,
    },
    /// Sizes of products `U_0 U_1 ... U_n` cycling through several factors.
    Nprod {
        #[command(flatten)]
        group: GroupArgs,
        /// Factor labels, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        factors: Vec<String>,
        /// Certified set contained in every factor.
        #[arg(long)]
        lower: String,
        /// Certified set containing every factor.
        #[arg(long)]
        upper: String,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        regularity_n: Option<usize>,
    },
    /// Shell ratios, alpha, delta and the recursion audit.
    ShellReport {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long, default_value_t = 5)]
        k_min: usize,
    },
    /// Sphere bound with delta from the shell ratio, or a given delta.
    Verify {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long, default_value_t = 5)]
        k_min: usize,
    },
    /// Dyadic radius selection with exact certificates.
    Dyadic {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        i_max: Option<u32>,
    },
    /// Log-log growth exponent of the ball sizes.
    Fit {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        lo: Option<usize>,
        #[arg(long)]
        hi: Option<usize>,
        #[arg(long, value_enum, default_value_t = Window::TopHalf)]
        window: Window,
    },
    /// Ball averages of an observable under a rotation action of Z^2.
    Ergodic {
        #[arg(long, default_value = "cos-x")]
        observable: String,
        #[arg(long, num_args = 2, default_values_t = [0.1, 0.2])]
        start: Vec<f64>,
        #[arg(long, default_value_t = 200)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Preset::Golden)]
        preset: Preset,
    },
    /// Run a bundled recipe.
    Reproduce {
        name: Option<String>,
        #[arg(long)]
        list: bool,
    },
    /// Run a JSON config file.
    Run { config: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Lattice,
    Heisenberg,
    TreeChain,
    Stairway,
    File,
}

#[derive(Clone, Copy, ValueEnum)]
enum Window {
    TopHalf,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    Golden,
    Silver,
}

#[derive(Args)]
struct SpaceArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long, default_value_t = 2)]
    rank: usize,
    #[arg(long, default_value = "standard")]
    generators: String,
    #[arg(long)]
    a: Option<u64>,
    #[arg(long)]
    b: Option<u64>,
    #[arg(long)]
    blocks: Option<u32>,
    #[arg(long)]
    levels: Option<u32>,
    /// Graph file for `--family file`.
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long)]
    radius: usize,
    /// Basepoint labels to use as centers.
    #[arg(long = "center")]
    centers: Vec<String>,
    /// Number of seeded random centers.
    #[arg(long, default_value_t = 0)]
    sample: usize,
}

#[derive(Args)]
struct GroupArgs {
    /// `lattice` or `heisenberg`.
    #[arg(long, default_value = "lattice")]
    group: String,
    #[arg(long, default_value_t = 2)]
    rank: usize,
}

fn missing(flag: &str) -> String {
    format!("--{flag} is required for this family")
}

impl SpaceArgs {
    fn spec(&self) -> Result<Value, String> {
        Ok(match self.family {
            Family::Lattice => json!({"family": "lattice", "rank": self.rank, "generators": self.generators}),
            Family::Heisenberg => json!({"family": "heisenberg", "generators": self.generators}),
            Family::TreeChain => json!({
                "family": "tree-chain",
                "a": self.a.ok_or_else(|| missing("a"))?,
                "b": self.b.ok_or_else(|| missing("b"))?,
                "blocks": self.blocks.ok_or_else(|| missing("blocks"))?,
            }),
            Family::Stairway => json!({"family": "stairway", "levels": self.levels.ok_or_else(|| missing("levels"))?}),
            Family::File => json!({"family": "file", "path": self.graph.as_ref().ok_or_else(|| missing("graph"))?}),
        })
    }

    /// Config skeleton with the space, radius and centers filled in.
    fn config(&self, analyses: Value, params: Value) -> Result<Value, String> {
        let mut centers = Map::new();
        if !self.centers.is_empty() {
            centers.insert("basepoints".into(), json!(self.centers));
        }
        if self.sample > 0 {
            centers.insert("sample".into(), json!(self.sample));
        }
        Ok(json!({
            "space": self.spec()?,
            "radius": self.radius,
            "centers": centers,
            "analyses": analyses,
            "params": params,
        }))
    }
}

impl GroupArgs {
    fn spec(&self) -> Value {
        match self.group.as_str() {
            "heisenberg" => json!({"kind": "heisenberg"}),
            _ => json!({"kind": "lattice", "rank": self.rank}),
        }
    }
}

/// Drops null entries so that unset options fall back to config defaults.
fn compact(v: Value) -> Value {
    match v {
        Value::Object(m) => Value::Object(
            m.into_iter()
                .filter(|(_, v)| !v.is_null())
                .map(|(k, v)| (k, compact(v)))
                .collect(),
        ),
        other => other,
    }
}

fn apply_globals(cli: &Cli, cfg: &mut ExperimentConfig) {
    if cli.seed.is_some() {
        cfg.seed = cli.seed;
    }
    if let Some(v) = cli.budget_vertices {
        cfg.budget.vertices = v;
    }
    if let Some(e) = cli.budget_elements {
        cfg.budget.elements = e;
    }
}

fn emit(cli: &Cli, out: &ExperimentOutcome, main: &str) -> Result<ExitCode, String> {
    match &cli.out {
        Some(dir) => {
            out.write_to(dir).map_err(|e| e.to_string())?;
            eprintln!("wrote {} files to {}", out.artifacts.len() + 1, dir.display());
        }
        None => match out.artifact(main) {
            Some(text) => print!("{text}"),
            None => println!("{}", serde_json::to_string_pretty(&out.summary).unwrap()),
        },
    }
    for (name, ok) in &out.checks {
        eprintln!("{name}: {}", if *ok { "holds" } else { "fails" });
    }
    Ok(if out.pass { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn run_value(cli: &Cli, v: Value, main: &str) -> Result<ExitCode, String> {
    let mut cfg: ExperimentConfig = serde_json::from_value(compact(v)).map_err(|e| e.to_string())?;
    apply_globals(cli, &mut cfg);
    // Validation happens here, after the global flags are in.
    let out = run_experiment(&cfg).map_err(|e| e.to_string())?;
    emit(cli, &out, main)
}

fn write_text(path: Option<&Path>, text: &str) -> Result<(), String> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn generate(cli: &Cli, space: &SpaceArgs, line: Option<usize>) -> Result<ExitCode, String> {
    let vmax = cli.budget_vertices.unwrap_or(5_000_000);
    let err = |e: polygrowth::Error| e.to_string();
    let graph = if let Some(half) = line {
        subdivided_line(half).map_err(err)?
    } else {
        match space.family {
            Family::Lattice | Family::Heisenberg => {
                let model = match space.family {
                    Family::Lattice => GroupModel::lattice(space.rank).map_err(err)?,
                    _ => GroupModel::heisenberg(),
                };
                let gens = model.generating_set(&space.generators).map_err(err)?;
                model.check_generates(gens).map_err(err)?;
                let radius = u32::try_from(space.radius).map_err(|_| "radius too large".to_string())?;
                cayley_ball(&model, gens, radius, vmax).map_err(err)?.graph
            }
            Family::TreeChain => {
                let spec = TreeChainSpec::new(
                    space.a.ok_or_else(|| missing("a"))?,
                    space.b.ok_or_else(|| missing("b"))?,
                    space.blocks.ok_or_else(|| missing("blocks"))?,
                )
                .map_err(err)?;
                build_tree_chain(spec, vmax).map_err(err)?.graph
            }
            Family::Stairway => stairway_strip(space.levels.ok_or_else(|| missing("levels"))?).map_err(err)?,
            Family::File => return Err("nothing to generate for --family file".into()),
        }
    };
    write_text(cli.out.as_deref(), &graph.to_text())?;
    Ok(ExitCode::SUCCESS)
}

fn dispatch(cli: &Cli) -> Result<ExitCode, String> {
    match &cli.command {
        Command::Generate { space, line } => generate(cli, space, *line),
        Command::Profile(space) => run_value(cli, space.config(json!({}), json!({}))?, "profile.csv"),
        Command::Powers { group, factor, n_max, regularity_n } => run_value(
            cli,
            json!({"products": {"group": group.spec(), "factors": [factor], "n-max": n_max, "regularity-n": regularity_n}}),
            "products.csv",
        ),
        Command::Nprod { group, factors, lower, upper, n_max, regularity_n } => run_value(
            cli,
            json!({"products": {
                "group": group.spec(), "factors": factors, "lower": lower, "upper": upper,
                "n-max": n_max, "regularity-n": regularity_n,
            }}),
            "products.csv",
        ),
        Command::ShellReport { space, n_max, k_min } => {
            let mut v = space.config(json!({"shell": true}), json!({"shell-n-max": n_max}))?;
            v["k-min"] = json!(k_min);
            run_value(cli, v, "shell.csv")
        }
        Command::Verify { space, delta, n_max, k_min } => {
            let analyses = json!({"shell": delta.is_none(), "verify": true});
            let mut v = space.config(analyses, json!({"shell-n-max": n_max, "delta": delta}))?;
            v["k-min"] = json!(k_min);
            run_value(cli, v, "verify.csv")
        }
        Command::Dyadic { space, i_max } => run_value(
            cli,
            space.config(json!({"dyadic": true}), json!({"dyadic-i-max": i_max}))?,
            "dyadic.csv",
        ),
        Command::Fit { space, lo, hi, window } => {
            let window = match window {
                Window::TopHalf => "top-half",
                Window::Full => "full",
            };
            let params = json!({"fit-lo": lo, "fit-hi": hi, "fit-window": window});
            run_value(cli, space.config(json!({"fit": true}), params)?, "summary")
        }
        Command::Ergodic { observable, start, n_max, preset } => {
            let preset = match preset {
                Preset::Golden => "golden",
                Preset::Silver => "silver",
            };
            run_value(
                cli,
                json!({"ergodic": {"observable": observable, "start": start, "n-max": n_max, "preset": preset}}),
                "ergodic.csv",
            )
        }
        Command::Reproduce { name, list } => {
            if *list || name.is_none() {
                for n in recipe_names() {
                    println!("{n}");
                }
                return Ok(ExitCode::SUCCESS);
            }
            let mut cfg = recipe(name.as_deref().unwrap()).map_err(|e| e.to_string())?;
            apply_globals(cli, &mut cfg);
            let out = run_experiment(&cfg).map_err(|e| e.to_string())?;
            emit(cli, &out, "summary")
        }
        Command::Run { config } => {
            let text = std::fs::read_to_string(config).map_err(|e| format!("{}: {e}", config.display()))?;
            let v: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
            run_value(cli, v, "summary")
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
