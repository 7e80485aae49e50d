use std::collections::BTreeMap;
use std::path::Path;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::analysis::{
    abelian_isop_check, annulus_ratio, doubling_constant, dyadic_subsequence, growth_exponent_fit,
    lemma_recursion_audit, ls_line, shell_alpha_all, verify_sphere_bound, witness_constant,
    witness_spheres,
};
use crate::ergodic::{check_hypotheses, ergodic_trace, AveragingBalls, Observable, TorusAction};
use crate::error::{Error, Result};
use crate::experiment::config::{ExperimentConfig, SpaceSpec};
use crate::experiment::table::{fmt_f64, fmt_ratio, Table};
use crate::generators::{
    build_tree_chain, cayley_ball, stairway_strip, CayleyBall, GroupModel, TreeChain, TreeChainSpec,
};
use crate::space::{
    metric_volume_profile, property_m_constant, sample_centers, volume_profile, volume_profiles,
    EuclideanSubset, Graph, VolumeProfile,
};
use crate::walk::{
    product_powers, regularity_constant, varying_products, ClaimContext, ProductOptions,
};
use crate::Rational;

/// Named CSV output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Artifact {
    pub name: String,
    pub contents: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentOutcome {
    pub config_hash: String,
    pub summary: Value,
    pub checks: BTreeMap<String, bool>,
    /// Every check matched its expected outcome.
    pub pass: bool,
    pub artifacts: Vec<Artifact>,
}

impl ExperimentOutcome {
    /// Writes `summary.json` and every CSV into `dir`.
    pub fn write_to(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        let mut summary = serde_json::to_string_pretty(&self.summary)?;
        summary.push('\n');
        std::fs::write(dir.join("summary.json"), summary)?;
        for a in &self.artifacts {
            std::fs::write(dir.join(&a.name), &a.contents)?;
        }
        Ok(())
    }

    pub fn artifact(&self, name: &str) -> Option<&str> {
        self.artifacts
            .iter()
            .find(|a| a.name == name)
            .map(|a| a.contents.as_str())
    }
}

enum Realized {
    Group(CayleyBall),
    Graph(Graph, Option<TreeChain>),
    Plane(Graph, EuclideanSubset),
}

impl Realized {
    fn graph(&self) -> &Graph {
        match self {
            Realized::Group(b) => &b.graph,
            Realized::Graph(g, _) | Realized::Plane(g, _) => g,
        }
    }
}

fn realize(cfg: &ExperimentConfig, space: &SpaceSpec) -> Result<Realized> {
    let vmax = cfg.budget.vertices;
    let radius = u32::try_from(cfg.radius)
        .map_err(|_| Error::InvalidParameter("radius too large".into()))?;
    Ok(match space {
        SpaceSpec::Lattice { rank, generators } => {
            let m = GroupModel::lattice(*rank)?;
            let gens = m.generating_set(generators)?;
            m.check_generates(gens)?;
            Realized::Group(cayley_ball(&m, gens, radius, vmax)?)
        }
        SpaceSpec::Heisenberg { generators } => {
            let m = GroupModel::heisenberg();
            let gens = m.generating_set(generators)?;
            m.check_generates(gens)?;
            Realized::Group(cayley_ball(&m, gens, radius, vmax)?)
        }
        SpaceSpec::TreeChain { a, b, blocks } => {
            let chain = build_tree_chain(TreeChainSpec::new(*a, *b, *blocks)?, vmax)?;
            Realized::Graph(chain.graph.clone(), Some(chain))
        }
        SpaceSpec::Stairway { levels } => {
            let g = stairway_strip(*levels)?;
            let e = EuclideanSubset::from_graph(&g)?;
            Realized::Plane(g, e)
        }
        SpaceSpec::File { path } => {
            let text = std::fs::read_to_string(path)?;
            let g = Graph::parse(&text)?;
            if g.vertex_count() > vmax {
                return Err(Error::BudgetExceeded {
                    module: "space-core",
                    limit: vmax,
                    reached: g.vertex_count(),
                    step: 0,
                });
            }
            Realized::Graph(g, None)
        }
    })
}

fn centers(cfg: &ExperimentConfig, space: &Realized) -> Result<Vec<usize>> {
    if let Realized::Group(_) = space {
        return Ok(vec![0]);
    }
    let g = space.graph();
    let mut out = if cfg.centers.basepoints.is_empty() && cfg.centers.sample == 0 {
        sample_centers(g, &[], 0, None)?
    } else {
        sample_centers(g, &cfg.centers.basepoints, cfg.centers.sample, cfg.seed)?
    };
    if let Realized::Graph(_, Some(chain)) = space {
        for &n in &cfg.centers.witnesses {
            let w = chain.witness_center(n).map_err(|e| Error::Config {
                field: "centers.witnesses".into(),
                message: e.to_string(),
            })?;
            if !out.contains(&w) {
                out.push(w);
            }
        }
    }
    if out.is_empty() {
        if let Some((_, &v)) = g.basepoints().iter().next() {
            out.push(v);
        } else {
            out.push(0);
        }
    }
    Ok(out)
}

fn profiles(space: &Realized, centers: &[usize], radius: usize) -> Result<Vec<VolumeProfile>> {
    match space {
        Realized::Group(ball) => Ok(vec![ball.origin_profile()?]),
        Realized::Graph(g, _) => volume_profiles(g, centers, radius),
        Realized::Plane(_, e) => centers
            .par_iter()
            .map(|&c| metric_volume_profile(e, c, radius))
            .collect(),
    }
}

struct Run<'c> {
    cfg: &'c ExperimentConfig,
    hash: String,
    checks: BTreeMap<String, bool>,
    details: Map<String, Value>,
    artifacts: Vec<Artifact>,
    alpha: Option<Rational>,
    delta: Option<f64>,
    fitted_c: Option<f64>,
}

impl Run<'_> {
    fn check(&mut self, name: &str, ok: bool) {
        self.checks.insert(name.to_string(), ok);
    }

    fn emit(&mut self, name: &str, table: Table) {
        self.artifacts.push(Artifact {
            name: name.to_string(),
            contents: table.render(&self.hash),
        });
    }

    fn detail(&mut self, key: &str, v: Value) {
        self.details.insert(key.to_string(), v);
    }
}

/// Runs every enabled analysis of `cfg`. Outputs depend only on the config
/// (and its seed).
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutcome> {
    cfg.validate()?;
    let mut run = Run {
        cfg,
        hash: cfg.hash(),
        checks: BTreeMap::new(),
        details: Map::new(),
        artifacts: Vec::new(),
        alpha: None,
        delta: None,
        fitted_c: None,
    };
    if let Some(space) = &cfg.space {
        let realized = realize(cfg, space)?;
        space_analyses(&mut run, &realized)?;
    }
    products(&mut run)?;
    ergodic(&mut run)?;
    claims(&mut run)?;

    let expected = |name: &str| cfg.expect.get(name).copied().unwrap_or(true);
    for name in cfg.expect.keys() {
        if !run.checks.contains_key(name) {
            return Err(Error::Config {
                field: "expect".into(),
                message: format!("no check named `{name}` ran"),
            });
        }
    }
    let pass = run.checks.iter().all(|(k, &v)| v == expected(k));
    let summary = json!({
        "name": cfg.name,
        "config_sha256": run.hash,
        "alpha": run.alpha.map(fmt_ratio),
        "delta": run.delta,
        "fitted_C": run.fitted_c,
        "pass": pass,
        "checks": run.checks,
        "expected": cfg.expect,
        "details": Value::Object(run.details),
    });
    Ok(ExperimentOutcome {
        config_hash: run.hash,
        summary,
        checks: run.checks,
        pass,
        artifacts: run.artifacts,
    })
}

fn space_analyses(run: &mut Run, space: &Realized) -> Result<()> {
    let cfg = run.cfg;
    let a = &cfg.analyses;
    let p = &cfg.params;
    let radius = cfg.radius;
    let centers = centers(cfg, space)?;
    let profs = profiles(space, &centers, radius)?;
    run.detail("centers", json!(centers));

    let mut t = Table::new(&["center", "r", "ball", "sphere"]);
    for pr in &profs {
        for r in 0..=pr.max_radius() {
            t.push(vec![
                pr.center().to_string(),
                r.to_string(),
                pr.balls()[r].to_string(),
                pr.sphere(r).map_or(String::new(), |s| s.to_string()),
            ]);
        }
    }
    run.emit("profile.csv", t);

    if a.doubling {
        let r_max = p.doubling_r_max.unwrap_or(radius / 2);
        let d = doubling_constant(&profs, r_max)?;
        run.detail(
            "doubling",
            json!({"constant": fmt_ratio(d.constant), "center": d.center, "radius": d.radius, "r_max": r_max}),
        );
        if let Some(small) = p.doubling_compare {
            let ds = doubling_constant(&profs, small)?;
            run.detail("doubling_compare", json!({"constant": fmt_ratio(ds.constant), "r_max": small}));
            run.check("doubling-bounded", d.constant <= ds.constant * Rational::from_integer(2));
        }
    }

    if a.shell {
        let n_max = p.shell_n_max.unwrap_or(radius / 2);
        let rep = shell_alpha_all(&profs, cfg.k_min, n_max)?;
        let mut t = Table::new(&["center", "n", "k", "c_lo", "c_hi", "ratio"]);
        for r in &rep.records {
            t.push(vec![
                r.center.to_string(),
                r.n.to_string(),
                r.k.to_string(),
                r.c_lo.to_string(),
                r.c_hi.to_string(),
                r.ratio.map_or(String::new(), fmt_ratio),
            ]);
        }
        run.emit("shell.csv", t);
        run.check("shell", rep.alpha > Rational::from_integer(0));
        if let Some(ceiling) = p.delta_ceiling {
            run.check("delta-ceiling", rep.delta <= ceiling);
        }
        run.detail(
            "shell",
            json!({
                "k_min": rep.k_min,
                "n_max": n_max,
                "argmin": rep.argmin,
                "per_center": rep.per_center.iter().map(|(c, q)| json!([c, fmt_ratio(*q)])).collect::<Vec<_>>(),
            }),
        );
        let mut t = Table::new(&["center", "n", "i_n", "first_violation"]);
        let mut violations = 0;
        for pr in &profs {
            let top = pr.depth_limit().unwrap_or(n_max).min(n_max);
            for n in 1..=top {
                let audit = lemma_recursion_audit(pr, n, rep.alpha)?;
                violations += usize::from(!audit.holds());
                t.push(vec![
                    pr.center().to_string(),
                    n.to_string(),
                    audit.i_n.to_string(),
                    audit.first_violation.map_or(String::new(), |i| i.to_string()),
                ]);
            }
        }
        run.emit("audit.csv", t);
        run.check("audit", violations == 0);
        run.alpha = Some(rep.alpha);
        run.delta = Some(rep.delta);
    }

    if a.verify {
        let delta = run.delta.or(p.delta).expect("validated");
        if run.delta.is_none() {
            run.delta = Some(delta);
        }
        let radii = p
            .verify_radii
            .clone()
            .unwrap_or_else(|| (1..=p.verify_n_max.unwrap_or(radius - 1)).collect());
        let rep = verify_sphere_bound(&profs, delta, &radii)?;
        let mut t = Table::new(&["center", "n", "sphere", "ball", "C"]);
        for r in &rep.rows {
            t.push(vec![
                r.center.to_string(),
                r.n.to_string(),
                r.sphere.to_string(),
                r.ball.to_string(),
                fmt_f64(r.c),
            ]);
        }
        run.emit("verify.csv", t);
        run.check("verify", rep.pass);
        run.fitted_c = Some(rep.fitted_c);
        run.detail("verify", json!({"trend_slope": rep.trend_slope, "radii": radii.len()}));
    }

    if a.dyadic {
        let i_max = match p.dyadic_i_max {
            Some(i) => i,
            None => (0..32u32)
                .take_while(|&i| (1usize << (i + 1)) + 2 <= radius)
                .last()
                .ok_or(Error::InsufficientDepth { have: radius, need: 4 })?,
        };
        let cd = doubling_constant(&profs, (1usize << i_max) + 1)?;
        let mut t = Table::new(&["center", "i", "radius", "sphere", "ball", "bound", "bound_r", "certified"]);
        let mut all = true;
        for pr in &profs {
            let sel = dyadic_subsequence(pr, cd.constant, i_max)?;
            all &= sel.all_certified();
            for e in &sel.entries {
                t.push(vec![
                    pr.center().to_string(),
                    e.i.to_string(),
                    e.radius.to_string(),
                    e.sphere.to_string(),
                    e.ball.to_string(),
                    fmt_ratio(e.bound),
                    fmt_ratio(e.bound_r),
                    e.certified.to_string(),
                ]);
            }
        }
        run.emit("dyadic.csv", t);
        run.check("dyadic", all);
        run.detail("dyadic", json!({"i_max": i_max, "doubling": fmt_ratio(cd.constant)}));
    }

    if a.abelian {
        let rep = abelian_isop_check(&profs[0], radius - 1)?;
        let cap = p.abelian_max.unwrap_or(3.0);
        run.check("abelian", rep.pass && rep.constant.to_f64().unwrap() <= cap);
        run.detail(
            "abelian",
            json!({"constant": fmt_ratio(rep.constant), "argmax": rep.argmax, "trend_slope": rep.trend_slope}),
        );
    }

    if a.fit {
        let lo = p.fit_lo.unwrap_or(1);
        let hi = p.fit_hi.unwrap_or(radius);
        let f = growth_exponent_fit(profs[0].balls(), lo, hi, p.fit_window)?;
        if let Some([elo, ehi]) = p.fit_expect {
            run.check("fit", elo <= f.exponent && f.exponent <= ehi);
        }
        run.detail(
            "fit",
            json!({"exponent": f.exponent, "rms_residual": f.rms_residual, "lo": f.lo, "hi": f.hi}),
        );
    }

    if a.annulus {
        annulus(run, space, &profs)?;
    }

    if a.witness {
        let Realized::Graph(_, Some(chain)) = space else {
            unreachable!("validated");
        };
        let ns: Vec<u32> = if cfg.centers.witnesses.is_empty() {
            (1..chain.spec.blocks).collect()
        } else {
            cfg.centers.witnesses.clone()
        };
        let rows = witness_spheres(chain, &ns)?;
        let mut t = Table::new(&["n", "center", "radius", "sphere", "floor", "c"]);
        for r in &rows {
            t.push(vec![
                r.n.to_string(),
                r.center.to_string(),
                r.radius.to_string(),
                r.sphere.to_string(),
                r.floor.to_string(),
                fmt_ratio(r.c),
            ]);
        }
        run.emit("witness.csv", t);
        let (c, stable) = witness_constant(&rows).ok_or(Error::Degenerate("no witnesses".into()))?;
        run.check("witness", stable);
        run.detail("witness", json!({"c": fmt_ratio(c)}));
    }

    if a.spikes {
        let pr = &profs[0];
        let mut t = Table::new(&["center", "r", "sphere", "ball"]);
        let mut ok = true;
        let mut any = false;
        for k in 4..32 {
            let r = 1usize << k;
            if r >= radius {
                break;
            }
            let s = pr.sphere(r).unwrap();
            any = true;
            ok &= s >= r as u64;
            t.push(vec![pr.center().to_string(), r.to_string(), s.to_string(), pr.ball(r).unwrap().to_string()]);
        }
        run.emit("spikes.csv", t);
        run.check("spikes", any && ok);
    }

    if a.property_m {
        let c = match space {
            Realized::Plane(..) => {
                return Err(Error::Config {
                    field: "analyses.property-m".into(),
                    message: "only graph metrics are supported".into(),
                })
            }
            Realized::Group(_) => property_m_constant(space.graph(), &[0], (radius - 1) as u32)?,
            Realized::Graph(g, _) => property_m_constant(g, &centers, radius as u32)?,
        };
        run.check("property-m", c == 1);
        run.detail("property_m", json!(c));
    }
    Ok(())
}

fn annulus(run: &mut Run, space: &Realized, profs: &[VolumeProfile]) -> Result<()> {
    let radius = run.cfg.radius;
    let g = space.graph();
    let mut labels: BTreeMap<usize, Vec<&str>> = BTreeMap::new();
    for (l, &v) in g.basepoints() {
        labels.entry(v).or_default().push(l);
    }
    let mut t = Table::new(&["center", "label", "r", "annulus", "ball", "ratio"]);
    let mut eighth_ok = true;
    let mut eighth_any = false;
    let eighth = Rational::new(1, 8);
    for pr in profs {
        let names = labels.get(&pr.center()).cloned().unwrap_or_default();
        // Blocks whose root is this center.
        let roots: Vec<u32> = names
            .iter()
            .filter_map(|l| l.strip_prefix("r_")?.parse().ok())
            .collect();
        let mut r = 2;
        while r <= radius {
            let a = annulus_ratio(pr, r)?;
            t.push(vec![
                pr.center().to_string(),
                names.join(" "),
                r.to_string(),
                a.annulus.to_string(),
                a.ball.to_string(),
                fmt_ratio(a.ratio),
            ]);
            if roots.iter().any(|&k| k < 32 && 1usize << k == r) {
                eighth_any = true;
                eighth_ok &= a.ratio >= eighth;
            }
            r *= 2;
        }
    }
    run.emit("annulus.csv", t);
    if let Realized::Graph(_, Some(chain)) = space {
        if eighth_any {
            run.check("annulus", eighth_ok);
        }
        if let Some(ks) = run.cfg.params.leaf_ball_k.clone() {
            let mut t = Table::new(&["block", "leaf", "k", "radius", "ball", "bound"]);
            let mut ok = true;
            for &k in &ks {
                let r = chain.spec.a.pow(k) as usize;
                let bound = 8 * chain.spec.b.pow(k);
                for n in k..=chain.spec.blocks {
                    for &leaf in chain.block(n)?.leaves.iter().take(3) {
                        let ball = volume_profile(g, leaf, r)?.ball(r).unwrap();
                        ok &= ball <= bound;
                        t.push(vec![
                            n.to_string(),
                            leaf.to_string(),
                            k.to_string(),
                            r.to_string(),
                            ball.to_string(),
                            bound.to_string(),
                        ]);
                    }
                }
            }
            run.emit("leaf_ball.csv", t);
            run.check("leaf-ball", ok);
        }
    }
    Ok(())
}

fn products(run: &mut Run) -> Result<()> {
    let Some(spec) = &run.cfg.products else {
        return Ok(());
    };
    let model = spec.group.model()?;
    let opts = ProductOptions {
        max_elements: run.cfg.budget.elements,
    };
    let factors: Vec<_> = spec
        .factors
        .iter()
        .map(|f| f.resolve(&model))
        .collect::<Result<_>>()?;
    let seq = if factors.len() == 1 {
        product_powers(&model, &factors[0], spec.n_max, &opts)?
    } else {
        let lower = spec.lower.as_ref().expect("validated").resolve(&model)?;
        let upper = spec.upper.as_ref().expect("validated").resolve(&model)?;
        varying_products(&model, &factors, &lower, &upper, spec.n_max, &opts)?
    };
    run.emit("products.csv", sizes_table(seq.sizes()));
    let ratios = seq.folner_ratios()?;
    run.detail(
        "products",
        json!({
            "group": seq.group(),
            "identity_adjoined": seq.identity_adjoined(),
            "last_folner": fmt_ratio(*ratios.last().unwrap()),
        }),
    );
    if let Some(n) = spec.regularity_n {
        let mut t = Table::new(&["n", "ratio"]);
        for j in 0..=n.min(spec.n_max) {
            t.push(vec![j.to_string(), fmt_ratio(regularity_constant(&model, &seq, j, &opts)?)]);
        }
        run.emit("regularity.csv", t);
    }
    if spec.abelian {
        let p = VolumeProfile::from_balls(0, seq.sizes().to_vec(), false)?;
        let rep = abelian_isop_check(&p, spec.n_max - 1)?;
        let cap = run.cfg.params.abelian_max.unwrap_or(3.0);
        run.check("products-abelian", rep.pass && rep.constant.to_f64().unwrap() <= cap);
        run.detail("products_abelian", json!({"constant": fmt_ratio(rep.constant)}));
    }
    if let Some([lo, hi]) = spec.decay_fit {
        let decay = folner_decay(&ratios, lo, hi)?;
        run.check("products-decay", decay > spec.min_decay.unwrap_or(0.0));
        run.detail("products_decay", json!({"exponent": decay, "lo": lo, "hi": hi}));
    }
    Ok(())
}

/// CSV rows `n, size, delta_size, folner_ratio` for a nested size sequence.
pub fn sizes_table(sizes: &[u64]) -> Table {
    let mut t = Table::new(&["n", "size", "delta_size", "folner_ratio"]);
    for (n, &s) in sizes.iter().enumerate() {
        let (d, q) = match sizes.get(n + 1) {
            Some(&next) => (
                (next - s).to_string(),
                fmt_ratio(Rational::new(next - s, s)),
            ),
            None => (String::new(), String::new()),
        };
        t.push(vec![n.to_string(), s.to_string(), d, q]);
    }
    t
}

/// `delta` with `ratio[n] ~ C n^(-delta)`, fitted on `lo..=hi`.
pub fn folner_decay(ratios: &[Rational], lo: usize, hi: usize) -> Result<f64> {
    if lo == 0 || hi >= ratios.len() || hi < lo + 1 {
        return Err(Error::InvalidParameter(format!("decay window [{lo}, {hi}] is invalid")));
    }
    let xs: Vec<f64> = (lo..=hi).map(|n| (n as f64).ln()).collect();
    let ys: Vec<f64> = (lo..=hi)
        .map(|n| ratios[n].to_f64().unwrap().ln())
        .collect();
    Ok(-ls_line(&xs, &ys)?.0)
}

fn ergodic(run: &mut Run) -> Result<()> {
    let Some(spec) = &run.cfg.ergodic else {
        return Ok(());
    };
    let action = TorusAction::preset(spec.preset);
    let f = Observable::named(&spec.observable)?;
    let balls = AveragingBalls::new(&spec.generators, spec.n_max, run.cfg.budget.elements)?;
    let trace = ergodic_trace(&action, &f, spec.start, &balls)?;
    let mut t = Table::new(&["n", "average", "error"]);
    for (i, (v, e)) in trace.values.iter().zip(&trace.errors).enumerate() {
        t.push(vec![(i + 1).to_string(), fmt_f64(*v), fmt_f64(*e)]);
    }
    run.emit("ergodic.csv", t);
    let last = *trace.errors.last().unwrap();
    run.check("ergodic", last <= spec.tolerance.unwrap_or(0.05));
    run.detail(
        "ergodic",
        json!({"target": trace.target, "final_error": last, "tail_error": trace.tail_error}),
    );
    if let Some(n) = spec.hypotheses_n {
        let h = check_hypotheses(n, n.min(8), 4.0)?;
        run.check("ergodic-hypotheses", h.pass);
        run.detail(
            "ergodic_hypotheses",
            json!({"last_folner": h.last_folner, "max_regularity": h.max_regularity}),
        );
    }
    Ok(())
}

fn claims(run: &mut Run) -> Result<()> {
    let Some(spec) = &run.cfg.claims else {
        return Ok(());
    };
    let model = spec.group.model()?;
    let gens = model.generating_set(&spec.generators)?.to_vec();
    let k_top = *spec.ks.iter().max().unwrap();
    let ctx = ClaimContext::new(&model, &gens, spec.n_max + k_top, run.cfg.budget.elements)?;
    let mut t = Table::new(&["claim", "n", "k", "subset_size", "superset_size", "holds"]);
    let mut ok = true;
    let mut count = 0;
    for n in 1..=spec.n_max {
        for &k in &spec.ks {
            if k < 4 || k > n {
                continue;
            }
            for c in ctx.check(n, k)? {
                ok &= c.holds;
                count += 1;
                t.push(vec![
                    format!("{:?}", c.claim).to_lowercase(),
                    n.to_string(),
                    k.to_string(),
                    c.subset_size.to_string(),
                    c.superset_size.to_string(),
                    c.holds.to_string(),
                ]);
            }
        }
    }
    run.emit("claims.csv", t);
    run.check("claims", ok && count > 0);
    run.detail("claims", json!({"checked": count}));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_end_to_end() {
        let cfg = ExperimentConfig::from_json(
            r#"{"space": {"family": "lattice", "rank": 2}, "radius": 64,
                "analyses": {"shell": true, "verify": true}}"#,
        )
        .unwrap();
        let out = run_experiment(&cfg).unwrap();
        assert!(out.pass, "{:#}", out.summary);
        assert!(out.artifact("shell.csv").unwrap().starts_with("# config-sha256="));
    }

    #[test]
    fn missing_basepoint_names_the_field() {
        let cfg = ExperimentConfig::from_json(
            r#"{"space": {"family": "tree-chain", "a": 2, "b": 3, "blocks": 2}, "radius": 4,
                "centers": {"basepoints": ["r_9"]}}"#,
        )
        .unwrap();
        match run_experiment(&cfg) {
            Err(Error::Config { field, message }) => {
                assert_eq!(field, "centers.basepoints");
                assert!(message.contains("r_9"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_expectation_rejected() {
        let cfg = ExperimentConfig::from_json(
            r#"{"space": {"family": "lattice", "rank": 1}, "radius": 8, "expect": {"nope": true}}"#,
        )
        .unwrap();
        assert!(run_experiment(&cfg).is_err());
    }
}
