#![allow(clippy::needless_range_loop)]

#![allow(dead_code)]

use rand::Rng;
use t237::exact_algebra::{rat, Rational};
use t237::intersection_calc::{CurveConfig, QDivisor};
use t237::weierstrass::BrieskornParams;

/// Runs `(first, last, value)` of the plurigenera of the canonical surface.
pub const CANONICAL_RUNS: [(usize, usize, i64); 24] = [
    (1, 10, 1),
    (11, 21, 2),
    (22, 25, 3),
    (26, 32, 4),
    (33, 36, 5),
    (37, 38, 6),
    (39, 43, 7),
    (44, 47, 8),
    (48, 49, 9),
    (50, 51, 10),
    (52, 54, 11),
    (55, 58, 12),
    (59, 60, 13),
    (61, 62, 14),
    (63, 64, 15),
    (65, 65, 16),
    (66, 69, 17),
    (70, 71, 18),
    (72, 73, 19),
    (74, 75, 20),
    (76, 76, 21),
    (77, 77, 22),
    (78, 80, 23),
    (81, 82, 24),
];

/// Same for the pair. Note the jump from 21 straight to 23.
pub const PAIR_RUNS: [(usize, usize, i64); 24] = [
    (1, 5, 1),
    (6, 11, 2),
    (12, 13, 3),
    (14, 17, 4),
    (18, 19, 5),
    (20, 20, 6),
    (21, 23, 7),
    (24, 25, 8),
    (26, 26, 9),
    (27, 27, 10),
    (28, 29, 11),
    (30, 31, 12),
    (32, 32, 13),
    (33, 33, 14),
    (34, 34, 15),
    (35, 35, 16),
    (36, 37, 17),
    (38, 38, 18),
    (39, 39, 19),
    (40, 40, 20),
    (41, 41, 21),
    (42, 43, 23),
    (44, 44, 24),
    (45, 45, 25),
];

pub fn expand_runs(runs: &[(usize, usize, i64)]) -> Vec<(usize, i64)> {
    runs.iter()
        .flat_map(|&(lo, hi, v)| (lo..=hi).map(move |n| (n, v)))
        .collect()
}

/// Number of `x in N^k` with `Σ e_i x_i = n`, by plain recursion.
pub fn count_solutions(exps: &[u32], n: u32) -> u64 {
    match exps.split_first() {
        None => u64::from(n == 0),
        Some((&e, rest)) => (0..=n / e).map(|k| count_solutions(rest, n - k * e)).sum(),
    }
}

pub fn small_rational(rng: &mut impl Rng) -> Rational {
    rat(rng.gen_range(-20..=20), rng.gen_range(1..=9))
}

pub fn random_params(rng: &mut impl Rng) -> BrieskornParams {
    BrieskornParams::from_values(std::array::from_fn(|_| small_rational(rng)))
}

/// A random configuration: `k` curves to contract, made negative definite by
/// strict diagonal dominance, plus up to three extra curves meeting them.
/// Returns the configuration, the contracted labels and a divisor on the extras.
pub fn random_contraction(rng: &mut impl Rng, max_rank: usize) -> (CurveConfig, Vec<String>, QDivisor) {
    let extra = rng.gen_range(1..=3.min(max_rank - 1));
    let k = rng.gen_range(1..=max_rank - extra);
    let n = k + extra;
    let mut adjacency = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.3) {
                let m = rng.gen_range(1..=2);
                adjacency[i][j] = m;
                adjacency[j][i] = m;
            }
        }
    }
    let mut selfint = Vec::with_capacity(n);
    for (i, row) in adjacency.iter().enumerate() {
        if i < k {
            let inner: i64 = row[..k].iter().sum();
            selfint.push(-(inner + 1 + rng.gen_range(0..3)));
        } else {
            selfint.push(rng.gen_range(-3..=3));
        }
    }
    let names: Vec<String> = (0..n).map(|i| format!("C{i}")).collect();
    let config = CurveConfig::new(names.clone(), selfint, adjacency).expect("valid configuration");
    let strict = QDivisor::from_pairs((k..n).map(|i| (names[i].clone(), small_rational(rng))));
    (config, names[..k].to_vec(), strict)
}
