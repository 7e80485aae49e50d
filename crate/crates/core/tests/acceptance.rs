//! Acceptance gate. Prints one PASS/FAIL line per criterion and fails if any
//! criterion fails.

mod common;

use std::time::{Duration, Instant};

use rayon::ThreadPoolBuilder;

use common::{csv_rows, heisenberg_word_balls, kernel_average, l1_ball_counts, parse_ratio};
use polygrowth::analysis::{doubling_constant, dyadic_subsequence};
use polygrowth::ergodic::{
    ergodic_trace, AveragingBalls, Observable, RotationPreset, TorusAction, GOLDEN,
};
use polygrowth::experiment::{reproduce, run_experiment, ExperimentConfig, ExperimentOutcome};
use polygrowth::generators::{
    build_tree_chain, cayley_ball, heisenberg_graph, lattice_graph, stairway_strip,
    subdivided_line, GroupModel, TreeChainSpec,
};
use polygrowth::space::{
    metric_volume_profile, monotone_geodesics, separated_nets, volume_profile, volume_profiles,
    Annulus, EuclideanSubset, VolumeProfile,
};

type Outcome = (bool, String);

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let t = Instant::now();
    let (ok, detail) = f();
    let el = t.elapsed();
    (ok && el <= limit, format!("{detail}; {:.2}s", el.as_secs_f64()))
}

fn checks_hold(out: &ExperimentOutcome, names: &[&str]) -> bool {
    out.pass && names.iter().all(|n| out.checks.get(*n) == Some(&true))
}

fn detail<'a>(out: &'a ExperimentOutcome, path: &[&str]) -> &'a serde_json::Value {
    path.iter().fold(&out.summary["details"], |v, k| &v[*k])
}

fn tree_chain() -> Outcome {
    let out = reproduce("counterexample-tree").unwrap();
    let chain = build_tree_chain(TreeChainSpec::new(2, 3, 8).unwrap(), 1 << 22).unwrap();
    // Independent reading of the annulus table: ratio >= 1/8 at (r_k, 2^k).
    let rows = csv_rows(out.artifact("annulus.csv").unwrap());
    let mut seen = 0;
    let mut ok = true;
    for k in 3..=7u32 {
        let root = chain.graph.basepoint(&format!("r_{k}")).unwrap().to_string();
        let radius = (1u64 << k).to_string();
        for row in rows.iter().filter(|r| r["center"] == root && r["r"] == radius) {
            let (annulus, ball) = (row["annulus"].parse::<u64>().unwrap(), row["ball"].parse::<u64>().unwrap());
            let (p, q) = parse_ratio(&row["ratio"]);
            ok &= 8 * annulus >= ball && p * ball == q * annulus;
            seen += 1;
        }
    }
    let leaf_rows = csv_rows(out.artifact("leaf_ball.csv").unwrap());
    let leaf_ok = leaf_rows.iter().all(|r| {
        let k: u32 = r["k"].parse().unwrap();
        r["ball"].parse::<u64>().unwrap() <= 8 * 3u64.pow(k)
    });
    (
        ok && seen == 5 && leaf_ok && !leaf_rows.is_empty() && checks_hold(&out, &["annulus", "leaf-ball"]),
        format!("{seen} annulus rows >= 1/8, {} leaf balls <= 8*3^k", leaf_rows.len()),
    )
}

fn remark_regime() -> Outcome {
    let out = reproduce("counterexample-remark-ab").unwrap();
    let delta = out.summary["delta"].as_f64().unwrap();
    let ceiling = 1.0 - 2f64.ln() / 3f64.ln() + 0.1;
    let rows = csv_rows(out.artifact("witness.csv").unwrap());
    let ns: Vec<u32> = rows.iter().map(|r| r["n"].parse().unwrap()).collect();
    (
        checks_hold(&out, &["doubling-bounded", "witness", "shell"]) && delta <= ceiling && ns == [3, 4, 5, 6],
        format!(
            "C_D {} vs {} at r<=81, c = {}, delta = {delta:.3} <= {ceiling:.3}",
            detail(&out, &["doubling", "constant"]),
            detail(&out, &["doubling_compare", "constant"]),
            detail(&out, &["witness", "c"]),
        ),
    )
}

fn main_theorem() -> Outcome {
    let zd = reproduce("theorem-zd").unwrap();
    let heis = reproduce("theorem-heisenberg").unwrap();
    let names = ["shell", "verify", "audit"];
    let alpha_pos = |o: &ExperimentOutcome| {
        let (p, _) = parse_ratio(o.summary["alpha"].as_str().unwrap());
        p > 0 && o.summary["delta"].as_f64().unwrap() > 0.0
    };
    (
        checks_hold(&zd, &names) && checks_hold(&heis, &names) && alpha_pos(&zd) && alpha_pos(&heis),
        format!(
            "Z^2 alpha {} slope {:.3}; Heisenberg alpha {} slope {:.3}",
            zd.summary["alpha"].as_str().unwrap(),
            detail(&zd, &["verify", "trend_slope"]).as_f64().unwrap(),
            heis.summary["alpha"].as_str().unwrap(),
            detail(&heis, &["verify", "trend_slope"]).as_f64().unwrap(),
        ),
    )
}

fn exact_oracles() -> Outcome {
    let mut ok = true;
    for d in 1..=3 {
        let model = GroupModel::lattice(d).unwrap();
        let g = lattice_graph(d, model.generating_set("standard").unwrap(), 10, 1 << 22).unwrap();
        ok &= volume_profile(&g, 0, 10).unwrap().balls() == l1_ball_counts(d, 10).as_slice();
    }
    let h = GroupModel::heisenberg();
    let g = heisenberg_graph(h.generating_set("standard").unwrap(), 5, 1 << 20).unwrap();
    ok &= volume_profile(&g, 0, 5).unwrap().balls() == heisenberg_word_balls(5).as_slice();
    let z2 = GroupModel::lattice(2).unwrap();
    let p = cayley_ball(&z2, z2.generating_set("standard").unwrap(), 64, 1 << 22)
        .unwrap()
        .origin_profile()
        .unwrap();
    ok &= (0..=64u64).all(|n| p.ball(n as usize) == Some(2 * n * n + 2 * n + 1));
    (ok, "l1 cube scan d<=3 R=10, Heisenberg words R=5, 2n^2+2n+1 n<=64".into())
}

fn shell_claims() -> Outcome {
    let out = reproduce("claims-5-3").unwrap();
    let rows = csv_rows(out.artifact("claims.csv").unwrap());
    let expected: usize = [4, 8, 12].iter().map(|&k| 2 * (20 - k + 1)).sum();
    let all = rows.iter().all(|r| r["holds"] == "true");
    (
        checks_hold(&out, &["claims"]) && all && rows.len() == expected,
        format!("{} containments checked", rows.len()),
    )
}

fn varying_products() -> Outcome {
    let out = reproduce("theorem-zd").unwrap();
    let e = detail(&out, &["products_decay", "exponent"]).as_f64().unwrap();
    (checks_hold(&out, &["products-decay"]) && e > 0.5, format!("decay exponent {e:.3} on 16..64"))
}

fn all_certified(profiles: &[VolumeProfile], i_max: u32) -> bool {
    let cd = doubling_constant(profiles, (1 << i_max) + 1).unwrap();
    profiles
        .iter()
        .all(|p| dyadic_subsequence(p, cd.constant, i_max).unwrap().all_certified())
}

fn dyadic() -> Outcome {
    let mut ok = checks_hold(&reproduce("dyadic").unwrap(), &["dyadic"]);
    let mut spaces = vec!["tree chain (2,3,8)"];
    let z2 = GroupModel::lattice(2).unwrap();
    for label in ["standard", "hexagonal", "triangle"] {
        let p = cayley_ball(&z2, z2.generating_set(label).unwrap(), 258, 1 << 22)
            .unwrap()
            .origin_profile()
            .unwrap();
        ok &= all_certified(&[p], 7);
        spaces.push(label);
    }
    let z3 = GroupModel::lattice(3).unwrap();
    let p = cayley_ball(&z3, z3.generating_set("standard").unwrap(), 66, 1 << 22)
        .unwrap()
        .origin_profile()
        .unwrap();
    ok &= all_certified(&[p], 4);
    let h = GroupModel::heisenberg();
    let p = cayley_ball(&h, h.generating_set("standard").unwrap(), 34, 1 << 22)
        .unwrap()
        .origin_profile()
        .unwrap();
    ok &= all_certified(&[p], 4);
    let line = subdivided_line(300).unwrap();
    ok &= all_certified(&[volume_profile(&line, line.basepoint("origin").unwrap(), 258).unwrap()], 7);
    let chain = build_tree_chain(TreeChainSpec::new(3, 2, 7).unwrap(), 1 << 22).unwrap();
    let roots: Vec<usize> = (1..=7).map(|n| chain.graph.basepoint(&format!("r_{n}")).unwrap()).collect();
    ok &= all_certified(&volume_profiles(&chain.graph, &roots, 258).unwrap(), 7);
    let strip = stairway_strip(10).unwrap();
    let plane = EuclideanSubset::from_graph(&strip).unwrap();
    let p = metric_volume_profile(&plane, strip.basepoint("origin").unwrap(), 258).unwrap();
    ok &= all_certified(&[p], 7);
    spaces.extend(["Z^3", "Heisenberg", "line", "tree chain (3,2,7)", "stairway"]);
    (ok, format!("certified on {}", spaces.join(", ")))
}

fn abelian() -> Outcome {
    let out = reproduce("abelian").unwrap();
    let c = |key: &str| {
        let (p, q) = parse_ratio(detail(&out, &[key, "constant"]).as_str().unwrap());
        p as f64 / q as f64
    };
    let (zc, tc) = (c("abelian"), c("products_abelian"));
    (
        checks_hold(&out, &["abelian", "products-abelian"]) && zc <= 3.0 && tc <= 3.0,
        format!("Z^2 max {zc:.4}, triangle powers max {tc:.4}"),
    )
}

fn stairway() -> Outcome {
    let out = reproduce("counterexample-stairway").unwrap();
    let e = detail(&out, &["fit", "exponent"]).as_f64().unwrap();
    let rows = csv_rows(out.artifact("spikes.csv").unwrap());
    let spikes = (4..=9).all(|k| {
        rows.iter().any(|r| {
            r["r"] == (1u64 << k).to_string() && r["sphere"].parse::<u64>().unwrap() >= 1 << k
        })
    });
    (
        checks_hold(&out, &["fit", "spikes"]) && (e - 1.0).abs() <= 0.15 && spikes,
        format!("growth exponent {e:.3}, S(2^k) >= 2^k for k = 4..9"),
    )
}

fn ergodic() -> Outcome {
    let out = reproduce("ergodic").unwrap();
    let err200 = detail(&out, &["ergodic", "final_error"]).as_f64().unwrap();
    let action = TorusAction::preset(RotationPreset::Golden);
    let balls = AveragingBalls::new("standard", 100, 1 << 22).unwrap();
    let cos = ergodic_trace(&action, &Observable::named("cos-x").unwrap(), [0.1, 0.2], &balls).unwrap();
    let worst = (1..=100)
        .map(|n| (cos.values[n - 1] - kernel_average(GOLDEN, 0.1, n)).abs())
        .fold(0.0, f64::max);
    let constant = ergodic_trace(&action, &Observable::named("constant").unwrap(), [0.1, 0.2], &balls).unwrap();
    let exact = constant.errors.iter().all(|&e| e == 0.0);
    (
        checks_hold(&out, &["ergodic"]) && err200 < 0.05 && worst < 1e-8 && exact,
        format!("error at n=200 {err200:.2e}, kernel oracle gap {worst:.1e}, constant exact"),
    )
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(f)
}

fn determinism() -> Outcome {
    let mut ok = true;
    for name in polygrowth::experiment::recipe_names() {
        let a = in_pool(1, || reproduce(name).unwrap());
        let b = in_pool(4, || reproduce(name).unwrap());
        ok &= a.artifacts == b.artifacts && a.summary.to_string() == b.summary.to_string();
    }
    let sampled = ExperimentConfig::from_json(
        r#"{"space": {"family": "tree-chain", "a": 2, "b": 3, "blocks": 5}, "radius": 40, "seed": 7,
            "centers": {"sample": 12}, "analyses": {"doubling": true, "shell": true}}"#,
    )
    .unwrap();
    let a = in_pool(1, || run_experiment(&sampled).unwrap());
    let b = in_pool(4, || run_experiment(&sampled).unwrap());
    ok &= a.artifacts == b.artifacts;
    let chain = build_tree_chain(TreeChainSpec::new(2, 3, 6).unwrap(), 1 << 22).unwrap();
    let g = &chain.graph;
    let annuli: Vec<Annulus> = (0..g.vertex_count()).step_by(97).map(|c| Annulus::new(c, 2, 9)).collect();
    let pairs: Vec<(usize, usize)> = (0..g.vertex_count()).step_by(53).map(|x| (x, g.vertex_count() - 1 - x)).collect();
    let nets1 = in_pool(1, || separated_nets(g, &annuli, 3).unwrap());
    let nets4 = in_pool(4, || separated_nets(g, &annuli, 3).unwrap());
    let geo1 = in_pool(1, || monotone_geodesics(g, &pairs).unwrap());
    let geo4 = in_pool(4, || monotone_geodesics(g, &pairs).unwrap());
    ok &= nets1 == nets4 && geo1 == geo4;
    (
        ok,
        format!(
            "{} recipes, sampled config, {} nets, {} geodesics identical on 1 and 4 threads",
            polygrowth::experiment::recipe_names().len(),
            annuli.len(),
            pairs.len()
        ),
    )
}

#[test]
fn acceptance() {
    let criteria: [(&str, Duration, fn() -> Outcome); 11] = [
        ("tree chain annulus and leaf balls", Duration::from_secs(60), tree_chain),
        ("(3,2) chain doubling, witnesses, delta", Duration::from_secs(600), remark_regime),
        ("sphere bound on Z^2 and Heisenberg", Duration::from_secs(300), main_theorem),
        ("exact ball oracles", Duration::from_secs(600), exact_oracles),
        ("shell containments on Z^2", Duration::from_secs(600), shell_claims),
        ("varying products Folner decay", Duration::from_secs(600), varying_products),
        ("dyadic selection certified", Duration::from_secs(600), dyadic),
        ("abelian isoperimetric constant", Duration::from_secs(600), abelian),
        ("stairway growth and spikes", Duration::from_secs(600), stairway),
        ("ergodic averages", Duration::from_secs(120), ergodic),
        ("determinism", Duration::from_secs(600), determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, limit, f)) in criteria.into_iter().enumerate() {
        let (ok, detail) = timed(limit, f);
        println!("{} {:>2} {name}: {detail}", if ok { "PASS" } else { "FAIL" }, i + 1);
        if !ok {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
