//! Acceptance criteria, one line per criterion. Exits non-zero if any fails.

mod common;

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::time::{Duration, Instant};

use autonorm_core::adstat::anderson_darling;
use autonorm_core::diagnostics::{qq_max_deviation, qq_points};
use autonorm_core::search::{select_beta, transform_matrix};
use autonorm_core::stats::{gumbel_quantile, sample_skewness};
use autonorm_core::transform::{
    gumbel_threshold, pipeline_single_beta, shifted_log_transform, standardize_median_mad,
    winsorise,
};
use autonorm_core::{FeatureMatrix, Orientation, TransformConfig};
use common::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn neg(x: &[f64]) -> Vec<f64> {
    x.iter().map(|v| -v).collect()
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn zscore(x: &[f64]) -> Vec<f64> {
    let n = x.len() as f64;
    let m = x.iter().sum::<f64>() / n;
    let sd = (x.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
    x.iter().map(|v| (v - m) / sd).collect()
}

/// Written from the order-statistic formula before the library version:
/// single-index form, Φ and 1 - Φ straight from `erfc`, no tail handling.
fn naive_anderson_darling(z: &[f64]) -> f64 {
    let mut s = z.to_vec();
    s.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = s.len() as f64;
    let mut total = 0.0;
    for (k, &v) in s.iter().enumerate() {
        let i = (k + 1) as f64;
        let cdf = 0.5 * libm::erfc(-v / std::f64::consts::SQRT_2);
        let sf = 0.5 * libm::erfc(v / std::f64::consts::SQRT_2);
        total += (2.0 * i - 1.0) * cdf.ln() + (2.0 * n + 1.0 - 2.0 * i) * sf.ln();
    }
    -n - total / n
}

/// Two-component Gaussian mixture with modes at -2 and +2.
fn bimodal(n: usize, seed: u64) -> Vec<f64> {
    normal(n, seed)
        .into_iter()
        .enumerate()
        .map(|(i, v)| v + if i % 2 == 0 { -2.0 } else { 2.0 })
        .collect()
}

fn mixed_feature(k: u64, n: usize) -> Vec<f64> {
    let seed = 9000 + k;
    match k % 6 {
        0 => lognormal(n, seed),
        1 => neg(&lognormal(n, seed)),
        2 => normal(n, seed),
        3 => uniform(n, seed),
        4 => bimodal(n, seed),
        _ => normal(n, seed).into_iter().map(|v| v * v).collect(),
    }
}

fn ac1_ad_oracle() -> Outcome {
    let start = Instant::now();
    let sizes = [1, 2, 10, 100, 1000];
    let mut worst: f64 = 0.0;
    for k in 0..200u64 {
        let n = sizes[(k % 5) as usize];
        let z = match (k / 5) % 3 {
            0 => normal(n, k),
            1 => uniform(n, k),
            _ if n > 1 => zscore(&lognormal(n, k)),
            _ => lognormal(n, k),
        };
        let d = (anderson_darling(&z) - naive_anderson_darling(&z)).abs();
        check(
            d.is_finite() && d < 1e-10,
            format!("vector {k} (n = {n}): |diff| = {d:e}"),
        )?;
        worst = worst.max(d);
    }
    let elapsed = start.elapsed();
    check(
        elapsed < Duration::from_secs(5),
        format!("took {elapsed:?}"),
    )?;
    Ok(format!(
        "200 vectors, max |diff| = {worst:.2e}, {elapsed:.2?}"
    ))
}

fn ac2_hand_values() -> Outcome {
    let checks = [
        ("A2((0))", anderson_darling(&[0.0]), 0.386294, 1e-6),
        ("A2((-1,1))", anderson_darling(&[-1.0, 1.0]), 0.359283, 1e-6),
        (
            "L(100,0.95)",
            gumbel_threshold(100, 0.95).unwrap(),
            2.676349,
            1e-5,
        ),
        ("G^-1(0.95)", gumbel_quantile(0.95).unwrap(), 2.970195, 1e-6),
    ];
    let mut parts = Vec::new();
    for (name, got, want, tol) in checks {
        check(
            (got - want).abs() <= tol,
            format!("{name} = {got}, want {want} ± {tol}"),
        )?;
        parts.push(format!("{name} = {got:.6}"));
    }
    Ok(parts.join(", "))
}

fn ac3_mirror() -> Outcome {
    let cfg = TransformConfig::default();
    let mut worst_vec: f64 = 0.0;
    let mut worst_ad: f64 = 0.0;
    for k in 0..50 {
        let x = mixed_feature(k, 100 + 20 * k as usize);
        let (r, v) = select_beta("x", &x, &cfg);
        let (rn, vn) = select_beta("x", &neg(&x), &cfg);
        check(
            rn.chosen_beta == -r.chosen_beta,
            format!(
                "feature {k}: beta {} vs mirrored {}",
                r.chosen_beta, rn.chosen_beta
            ),
        )?;
        let dv = v
            .iter()
            .zip(&vn)
            .map(|(a, b)| (a + b).abs())
            .fold(0.0, f64::max);
        let da = (r.ad_after - rn.ad_after).abs();
        check(
            dv <= 1e-10 && da <= 1e-10,
            format!("feature {k}: vector diff {dv:e}, AD diff {da:e}"),
        )?;
        worst_vec = worst_vec.max(dv);
        worst_ad = worst_ad.max(da);
    }
    Ok(format!(
        "50 features, max vector diff {worst_vec:.1e}, max AD diff {worst_ad:.1e}"
    ))
}

fn ac4_skewed() -> Outcome {
    let cfg = TransformConfig::default();
    let x = lognormal(1000, 2024);
    let mut parts = Vec::new();
    for (label, data, right) in [("right", x.clone(), true), ("left", neg(&x), false)] {
        let start = Instant::now();
        let (r, _) = select_beta(label, &data, &cfg);
        let elapsed = start.elapsed();
        let before = r.skewness_before.unwrap();
        let after = r.skewness_after.unwrap();
        let side_ok = if right {
            r.chosen_beta > 0.0
        } else {
            r.chosen_beta < 0.0
        };
        let skew_ok = if right { before > 3.0 } else { before < -3.0 };
        check(side_ok, format!("{label}: chosen beta {}", r.chosen_beta))?;
        check(
            r.ad_after < r.ad_before,
            format!("{label}: AD {} -> {}", r.ad_before, r.ad_after),
        )?;
        check(
            skew_ok && after.abs() < 0.5,
            format!("{label}: skewness {before} -> {after}"),
        )?;
        check(
            elapsed < Duration::from_secs(1),
            format!("{label}: took {elapsed:?}"),
        )?;
        parts.push(format!(
            "{label}: beta {}, AD {:.2} -> {:.3}, skew {before:.2} -> {after:.3}, {elapsed:.0?}",
            r.chosen_beta, r.ad_before, r.ad_after
        ));
    }
    Ok(parts.join("; "))
}

fn ac5_dominance() -> Outcome {
    let n = 500;
    let mut features = Vec::new();
    for k in 0..50u64 {
        let seed = 7000 + k;
        let values = match k % 5 {
            0 => normal(n, seed),
            1 => uniform(n, seed),
            2 => lognormal(n, seed),
            3 => bimodal(n, seed),
            _ => vec![k as f64 - 20.0; n],
        };
        features.push((format!("f{k}"), values));
    }
    let m = FeatureMatrix::new(features, Orientation::FeaturesAsRows).unwrap();
    let (out, reports) = transform_matrix(&m, &TransformConfig::default());
    for (i, r) in reports.iter().enumerate() {
        check(
            r.ad_after <= r.ad_before,
            format!("{}: AD {} -> {}", r.feature_name, r.ad_before, r.ad_after),
        )?;
        if i % 5 == 4 {
            check(
                r.degenerate && r.chosen_beta == 0.0 && out.row(i).iter().all(|&v| v == 0.0),
                format!("{}: constant row not flagged/zeroed", r.feature_name),
            )?;
        } else {
            check(
                !r.degenerate,
                format!("{}: unexpected degenerate flag", r.feature_name),
            )?;
        }
    }
    Ok("50 features, ad_after <= ad_before everywhere, 10 constant rows zeroed and flagged".into())
}

fn ac6_pipeline_invariants() -> Outcome {
    let cfg = TransformConfig::default();
    let grid = cfg.beta_grid().to_vec();
    for k in 0..20u64 {
        let x = mixed_feature(k, 60);
        for &b in &grid {
            let phi = shifted_log_transform(&x, b).unwrap();
            let dag = standardize_median_mad(&phi);
            let limit = gumbel_threshold(x.len(), cfg.gumbel_percentile()).unwrap();
            let (clipped, _) = winsorise(&dag, limit);
            let out = pipeline_single_beta(&x, b, &cfg).transformed;
            check(
                clipped.iter().all(|v| v.abs() <= limit),
                format!("vector {k}, beta {b}: clipped value above L"),
            )?;
            for i in 0..x.len() {
                for j in 0..x.len() {
                    if x[i] < x[j] {
                        check(
                            phi[i] < phi[j],
                            format!("vector {k}, beta {b}: transform not strictly increasing"),
                        )?;
                        check(
                            dag[i] <= dag[j] && clipped[i] <= clipped[j] && out[i] <= out[j],
                            format!("vector {k}, beta {b}: order broken"),
                        )?;
                    }
                }
            }
        }
    }

    let x = lognormal(1000, 6006);
    let at_zero = pipeline_single_beta(&x, 0.0, &cfg).transformed;
    let mut cont: f64 = 0.0;
    for b in [0.01, -0.01] {
        cont = cont.max(max_abs_diff(
            &pipeline_single_beta(&x, b, &cfg).transformed,
            &at_zero,
        ));
    }
    check(cont <= 0.05, format!("continuity: max diff {cont}"))?;

    let mut affine: f64 = 0.0;
    for k in 0..20u64 {
        let x = mixed_feature(k, 200);
        let y: Vec<f64> = x.iter().map(|v| 2.5 * v + 7.0).collect();
        let (rx, vx) = select_beta("x", &x, &cfg);
        let (ry, vy) = select_beta("y", &y, &cfg);
        check(
            rx.chosen_beta == ry.chosen_beta,
            format!(
                "affine: feature {k} beta {} vs {}",
                rx.chosen_beta, ry.chosen_beta
            ),
        )?;
        affine = affine.max(max_abs_diff(&vx, &vy));
    }
    check(affine <= 1e-9, format!("affine: max diff {affine:e}"))?;
    Ok(format!(
        "ranks kept at 27 betas x 20 vectors, |x| <= L, continuity {cont:.4}, affine diff {affine:.1e}"
    ))
}

fn ac7_qq() -> Outcome {
    let cfg = TransformConfig::default();
    let x = lognormal(1000, 2024);
    let (_, after) = select_beta("x", &x, &cfg);
    let baseline = pipeline_single_beta(&x, 0.0, &cfg).transformed;
    let d_before = qq_max_deviation(&qq_points(&baseline, x.len(), 0, "before").unwrap());
    let d_after = qq_max_deviation(&qq_points(&after, x.len(), 0, "after").unwrap());
    let reduction = 1.0 - d_after / d_before;
    check(
        reduction >= 0.5,
        format!("max QQ deviation {d_before:.3} -> {d_after:.3}"),
    )?;
    // sanity: the after-vector is roughly symmetric
    check(
        sample_skewness(&after).unwrap().abs() < 0.5,
        "after-vector skewed",
    )?;
    Ok(format!(
        "max QQ deviation {d_before:.3} -> {d_after:.3} ({:.0}% reduction)",
        100.0 * reduction
    ))
}

fn read_tree(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    for entry in fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.is_dir() {
            for (k, v) in read_tree(&path) {
                out.insert(
                    format!("{}/{k}", path.file_name().unwrap().to_string_lossy()),
                    v,
                );
            }
        } else {
            out.insert(
                path.file_name().unwrap().to_string_lossy().into_owned(),
                fs::read(&path).unwrap(),
            );
        }
    }
    out
}

fn ac8_cli_determinism() -> Outcome {
    let tmp = tempfile::tempdir().unwrap();
    let input = tmp.path().join("input.csv");
    let feats: Vec<(String, Vec<f64>)> = (0..6u64)
        .map(|k| (format!("g{k}"), mixed_feature(k, 1500)))
        .collect();
    let refs: Vec<(&str, Vec<f64>)> = feats.iter().map(|(n, v)| (n.as_str(), v.clone())).collect();
    write_csv(&input, &refs);

    let mut trees = Vec::new();
    for threads in ["1", "4"] {
        let dir = tmp.path().join(format!("run{threads}"));
        fs::create_dir_all(&dir).unwrap();
        let out = autonorm(&[
            "diagnose",
            "--input",
            input.to_str().unwrap(),
            "--output",
            dir.join("out.csv").to_str().unwrap(),
            "--report",
            dir.join("report.json").to_str().unwrap(),
            "--diagnostics-dir",
            dir.join("plots").to_str().unwrap(),
            "--scatter",
            "g0,g1",
            "--seed",
            "17",
            "--threads",
            threads,
        ]);
        check(
            out.status.success(),
            format!(
                "threads {threads}: {}",
                String::from_utf8_lossy(&out.stderr)
            ),
        )?;
        trees.push(read_tree(&dir));
    }
    check(
        trees[0].len() > 20,
        format!("only {} files written", trees[0].len()),
    )?;
    check(
        trees[0].keys().eq(trees[1].keys()),
        "different file sets for --threads 1 and --threads 4",
    )?;
    for (name, bytes) in &trees[0] {
        check(
            &trees[1][name] == bytes,
            format!("{name} differs between thread counts"),
        )?;
    }
    Ok(format!(
        "{} files byte-identical for --threads 1 and 4",
        trees[0].len()
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("AC1 AD oracle equivalence", ac1_ad_oracle),
        ("AC2 hand-value checks", ac2_hand_values),
        ("AC3 mirror suite", ac3_mirror),
        ("AC4 improvement on skewed data", ac4_skewed),
        ("AC5 dominance invariant", ac5_dominance),
        ("AC6 pipeline invariants", ac6_pipeline_invariants),
        ("AC7 QQ sanity", ac7_qq),
        ("AC8 CLI determinism", ac8_cli_determinism),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        match f() {
            Ok(detail) => println!("[PASS] {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {name}: {why}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
