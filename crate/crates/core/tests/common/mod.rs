//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashSet;
use std::f64::consts::TAU;

/// Cumulative counts of `{x in Z^d : |x|_1 <= r}` for `r = 0..=r_max`, by
/// scanning the whole cube.
pub fn l1_ball_counts(d: usize, r_max: i64) -> Vec<u64> {
    let mut counts = vec![0u64; r_max as usize + 1];
    let side = 2 * r_max + 1;
    for idx in 0..side.pow(d as u32) {
        let mut rest = idx;
        let mut norm = 0;
        for _ in 0..d {
            norm += (rest % side - r_max).abs();
            rest /= side;
        }
        if norm <= r_max {
            counts[norm as usize] += 1;
        }
    }
    counts
        .iter()
        .scan(0, |acc, c| {
            *acc += c;
            Some(*acc)
        })
        .collect()
}

pub type Mat = [[i64; 3]; 3];

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let mut c = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

/// Heisenberg ball sizes from all unreduced words in `x^±1, y^±1` as
/// unitriangular integer matrices.
pub fn heisenberg_word_balls(r_max: usize) -> Vec<u64> {
    let id: Mat = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let gens: [Mat; 4] = [
        [[1, 1, 0], [0, 1, 0], [0, 0, 1]],
        [[1, -1, 0], [0, 1, 0], [0, 0, 1]],
        [[1, 0, 0], [0, 1, 1], [0, 0, 1]],
        [[1, 0, 0], [0, 1, -1], [0, 0, 1]],
    ];
    let mut seen: HashSet<Mat> = [id].into_iter().collect();
    let mut words = vec![id];
    let mut balls = vec![1u64];
    for _ in 0..r_max {
        let mut next = Vec::with_capacity(words.len() * 4);
        for w in &words {
            for g in &gens {
                let p = mat_mul(w, g);
                seen.insert(p);
                next.push(p);
            }
        }
        words = next;
        balls.push(seen.len() as u64);
    }
    balls
}

/// Average of `cos 2 pi x` over the l1 ball of radius `n` under the rotation
/// by `theta` in the first coordinate. Rows `|a| <= n` carry `2(n - |a|) + 1`
/// points, giving the kernel `2 F_n(t) + D_n(t)` (Fejer and Dirichlet) at
/// `t = 2 pi theta`.
pub fn kernel_average(theta: f64, x: f64, n: usize) -> f64 {
    let t = TAU * theta;
    let nf = n as f64;
    let s = (t / 2.0).sin();
    let fejer = ((nf * t / 2.0).sin() / s).powi(2);
    let dirichlet = ((nf + 0.5) * t).sin() / s;
    (TAU * x).cos() * (2.0 * fejer + dirichlet) / (2.0 * nf * nf + 2.0 * nf + 1.0)
}

/// Parses an exact `p/q` cell.
pub fn parse_ratio(cell: &str) -> (u64, u64) {
    let (p, q) = cell.split_once('/').expect("p/q");
    (p.parse().unwrap(), q.parse().unwrap())
}

/// Data rows of a rendered table as column-name lookups.
pub fn csv_rows(text: &str) -> Vec<std::collections::HashMap<String, String>> {
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header: Vec<&str> = lines.next().expect("header").split(',').collect();
    lines
        .map(|l| {
            header
                .iter()
                .map(|h| h.to_string())
                .zip(l.split(',').map(str::to_string))
                .collect()
        })
        .collect()
}
