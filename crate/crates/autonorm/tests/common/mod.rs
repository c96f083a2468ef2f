#![allow(dead_code)]

use std::fmt::Write as _;
use std::path::Path;
use std::process::{Command, Output};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn normal(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.sample(StandardNormal)).collect()
}

pub fn lognormal(n: usize, seed: u64) -> Vec<f64> {
    normal(n, seed).into_iter().map(f64::exp).collect()
}

pub fn uniform(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.gen::<f64>()).collect()
}

/// Features as columns, header line with the names.
pub fn write_csv(path: &Path, features: &[(&str, Vec<f64>)]) {
    let mut s = String::new();
    let names: Vec<&str> = features.iter().map(|f| f.0).collect();
    s.push_str(&names.join(","));
    s.push('\n');
    for i in 0..features[0].1.len() {
        let row: Vec<String> = features.iter().map(|f| f.1[i].to_string()).collect();
        let _ = writeln!(s, "{}", row.join(","));
    }
    std::fs::write(path, s).unwrap();
}

pub fn autonorm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_autonorm"))
        .args(args)
        .output()
        .expect("binary runs")
}
