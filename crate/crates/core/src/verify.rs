//! The runnable invariant suite behind the `verify` subcommand: every check
//! returns a measured error against a pinned tolerance so regressions show
//! up as numbers, not just booleans.

use num::{BigInt, ToPrimitive, Zero};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::characters::{char_transposition, character, dimension};
use crate::partition::{factorial, CycleType, Partition};
use crate::report::{CheckResult, VerifyReport};
use crate::spectral::{dense, OverlapModel};
use crate::symgroup::Permutation;
use crate::szegedy::{WalkOperator, WalkState};

/// Sizing of a verify run.
#[derive(Clone, Debug)]
pub struct VerifyProfile {
    /// Group sizes exercised by the walk checks.
    pub ns: Vec<usize>,
    /// Adds the n = 6 reconciliation and dense spectrum check.
    pub extended: bool,
    /// Seed for the randomized unitarity check.
    pub seed: u64,
    /// Steps of unitarity stress.
    pub unitarity_steps: usize,
}

impl Default for VerifyProfile {
    fn default() -> Self {
        VerifyProfile {
            ns: vec![3, 4, 5],
            extended: false,
            seed: 7,
            unitarity_steps: 1000,
        }
    }
}

impl VerifyProfile {
    pub fn extended() -> Self {
        VerifyProfile {
            extended: true,
            ..Default::default()
        }
    }

    fn walk_ns(&self) -> Vec<usize> {
        let mut ns = self.ns.clone();
        if self.extended && !ns.contains(&6) {
            ns.push(6);
        }
        ns
    }
}

fn random_state(n: usize, seed: u64) -> WalkState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = WalkState::zero(n);
    for a in s.amplitudes_mut() {
        *a = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    }
    s.normalize();
    s
}

/// Runs the whole suite and collects one result per named invariant.
pub fn run(profile: &VerifyProfile) -> VerifyReport {
    let checks = vec![
        orthogonality_check(profile),
        dimension_check(profile),
        closed_forms_check(profile),
        spectrum_check(profile),
        unitarity_check(profile),
        normalization_check(profile),
        mixing_row_check(profile),
        reconciliation_check(profile),
        null_projection_check(profile),
        class_invariance_check(profile),
    ];

    let all_pass = checks.iter().all(|c| c.pass);
    VerifyReport {
        extended: profile.extended,
        seed: profile.seed,
        checks,
        all_pass,
    }
}

fn orthogonality_check(profile: &VerifyProfile) -> CheckResult {
    let n_max = profile.ns.iter().copied().max().unwrap_or(5).max(5);
    for n in 2..=n_max {
        let partitions = Partition::all(n);
        let sizes: Vec<BigInt> = partitions.iter().map(|c| c.class_size()).collect();
        let table: Vec<Vec<BigInt>> = partitions
            .iter()
            .map(|l| {
                partitions
                    .iter()
                    .map(|c| character(l, c).unwrap())
                    .collect()
            })
            .collect();
        let order = factorial(n);
        for a in 0..partitions.len() {
            for b in 0..partitions.len() {
                let dot: BigInt = (0..partitions.len())
                    .map(|c| &table[a][c] * &table[b][c] * &sizes[c])
                    .sum();
                let want = if a == b {
                    order.clone()
                } else {
                    BigInt::zero()
                };
                if dot != want {
                    return CheckResult::new(
                        "character_row_orthogonality",
                        1.0,
                        0.0,
                        format!("violated at n={n}, rows {a},{b}"),
                    );
                }
            }
        }
    }
    CheckResult::new(
        "character_row_orthogonality",
        0.0,
        0.0,
        format!("exact over all n <= {n_max}"),
    )
}

fn dimension_check(profile: &VerifyProfile) -> CheckResult {
    let n_max = profile.ns.iter().copied().max().unwrap_or(5).max(6);
    for n in 1..=n_max {
        let total: BigInt = Partition::all(n)
            .iter()
            .map(|l| {
                let d = dimension(l);
                &d * &d
            })
            .sum();
        if total != factorial(n) {
            return CheckResult::new(
                "dimension_sum_rule",
                1.0,
                0.0,
                format!("Σ dim² ≠ n! at n={n}"),
            );
        }
        let id = CycleType::new(vec![1; n]);
        for l in Partition::all(n) {
            if dimension(&l) != character(&l, &id).unwrap() {
                return CheckResult::new(
                    "dimension_sum_rule",
                    1.0,
                    0.0,
                    format!("hook-length vs recursion mismatch at {l}"),
                );
            }
        }
    }
    CheckResult::new(
        "dimension_sum_rule",
        0.0,
        0.0,
        format!("exact over all n <= {n_max}"),
    )
}

fn closed_forms_check(profile: &VerifyProfile) -> CheckResult {
    let n_max = profile.ns.iter().copied().max().unwrap_or(5).max(6);
    for n in 2..=n_max {
        let sigma = {
            let mut v = vec![1usize; n - 2];
            v.insert(0, 2);
            CycleType::new(v)
        };
        for mu in Partition::all(n) {
            if char_transposition(&mu) != character(&mu, &sigma).unwrap() {
                return CheckResult::new(
                    "closed_forms_vs_recursion",
                    1.0,
                    0.0,
                    format!("transposition closed form off at {mu}"),
                );
            }
            if crate::characters::char_ncycle(&mu)
                != character(&mu, &CycleType::new(vec![n])).unwrap()
            {
                return CheckResult::new(
                    "closed_forms_vs_recursion",
                    1.0,
                    0.0,
                    format!("full-cycle closed form off at {mu}"),
                );
            }
            for l in 1..=n / 2 {
                if crate::characters::char_two_cycle_class(&mu, l).unwrap()
                    != character(&mu, &CycleType::new(vec![n - l, l])).unwrap()
                {
                    return CheckResult::new(
                        "closed_forms_vs_recursion",
                        1.0,
                        0.0,
                        format!("two-cycle closed form off at {mu}, l={l}"),
                    );
                }
            }
        }
    }
    CheckResult::new(
        "closed_forms_vs_recursion",
        0.0,
        0.0,
        format!("exact over all n <= {n_max}"),
    )
}

fn spectrum_check(profile: &VerifyProfile) -> CheckResult {
    let tol = 1e-9;
    let n_max = if profile.extended { 6 } else { 5 };
    let mut worst: f64 = 0.0;
    for n in 3..=n_max {
        worst = worst.max(dense::spectrum_check(n).expect("dense range"));
    }
    CheckResult::new(
        "spectrum_vs_dense_eigensolver",
        worst,
        tol,
        format!("numerical eigendecomposition up to n = {n_max}"),
    )
}

fn unitarity_check(profile: &VerifyProfile) -> CheckResult {
    let tol = 1e-10;
    let mut worst: f64 = 0.0;
    for &n in &profile.walk_ns() {
        let op = WalkOperator::new(n).expect("guarded n");
        let mut s = random_state(n, profile.seed ^ n as u64);
        for _ in 0..profile.unitarity_steps {
            op.step_in_place(&mut s);
        }
        worst = worst.max((s.norm() - 1.0).abs());
    }
    CheckResult::new(
        "walk_unitarity_drift",
        worst,
        tol,
        format!(
            "random normalized state, {} steps, seed {}",
            profile.unitarity_steps, profile.seed
        ),
    )
}

fn normalization_check(profile: &VerifyProfile) -> CheckResult {
    let tol = 1e-10;
    let mut worst: f64 = 0.0;
    for &n in &profile.walk_ns() {
        let op = WalkOperator::new(n).expect("guarded n");
        let mut s = op.phi_identity();
        for _ in 0..50 {
            op.step_in_place(&mut s);
        }
        worst = worst.max((op.instantaneous_distribution(&s).total() - 1.0).abs());
        let avg = op.averaged_distribution(&op.phi_identity(), 100);
        worst = worst.max((avg.total() - 1.0).abs());
    }
    CheckResult::new(
        "distribution_normalization",
        worst,
        tol,
        "instantaneous after 50 steps and Cesàro average, T = 100".to_string(),
    )
}

fn mixing_row_check(profile: &VerifyProfile) -> CheckResult {
    let tol = 1e-9;
    let mut worst: f64 = 0.0;
    for &n in &profile.walk_ns() {
        if n > 5 {
            continue;
        }
        let op = WalkOperator::new(n).expect("guarded n");
        let y = Permutation::unrank(n, (factorial(n).to_u64().unwrap() - 1) / 2).unwrap();
        let row = op.average_mixing_row(&y, 200).expect("degree matches");
        worst = worst.max((row.total() - 1.0).abs());
    }
    CheckResult::new(
        "average_mixing_row_sum",
        worst,
        tol,
        "row of the average mixing matrix, T = 200".to_string(),
    )
}

fn reconciliation_check(profile: &VerifyProfile) -> CheckResult {
    let tol = 1e-9;
    let mut worst: f64 = 0.0;
    let mut detail = String::new();
    for &n in &profile.walk_ns() {
        if n < 4 {
            continue;
        }
        let op = WalkOperator::new(n).expect("guarded n");
        let sim = op.overlap_series(50);
        let model = OverlapModel::new(n).expect("n >= 2");
        let dev = sim
            .iter()
            .enumerate()
            .map(|(t, v)| (v.re - model.evaluate(t)).abs().max(v.im.abs()))
            .fold(0.0, f64::max);
        detail.push_str(&format!("n={n}: {dev:.2e}; "));
        worst = worst.max(dev);
    }
    CheckResult::new("overlap_reconciliation", worst, tol, detail)
}

fn null_projection_check(profile: &VerifyProfile) -> CheckResult {
    // The ±1 eigenspaces contribute nothing beyond the model's flat part;
    // n = 3 is reported here too, where the rotation sum is empty and the
    // whole overlap is flat.
    let tol = 1e-10;
    let mut worst: f64 = 0.0;
    let mut detail = String::new();
    for &n in &profile.walk_ns() {
        let op = WalkOperator::new(n).expect("guarded n");
        let sim = op.overlap_series(50);
        let model = OverlapModel::new(n).expect("n >= 2");
        let dev = sim
            .iter()
            .enumerate()
            .map(|(t, v)| (v.re - model.rotation_part(t) - model.flat_part(t)).abs())
            .fold(0.0, f64::max);
        let (c, a) = model.flat_coefficients();
        if !c.is_zero() || !a.is_zero() {
            detail.push_str(&format!(
                "n={n}: flat residual (const {c}, alternating {a}) / √((n−1)!); "
            ));
        }
        worst = worst.max(dev);
    }
    CheckResult::new("null_projection_residual", worst, tol, detail)
}

fn class_invariance_check(profile: &VerifyProfile) -> CheckResult {
    let tol = 1e-10;
    let mut worst: f64 = 0.0;
    for &n in &profile.walk_ns() {
        if n > 5 {
            continue;
        }
        let op = WalkOperator::new(n).expect("guarded n");
        let mut s = op.phi_identity();
        for _ in 0..20 {
            op.step_in_place(&mut s);
        }
        let d = op.instantaneous_distribution(&s);
        let mut spread: std::collections::BTreeMap<Partition, (f64, f64)> = Default::default();
        for (rank, &p) in d.probs().iter().enumerate() {
            let ct = Permutation::unrank(n, rank as u64).unwrap().cycle_type();
            let e = spread
                .entry(ct)
                .or_insert((f64::INFINITY, f64::NEG_INFINITY));
            e.0 = e.0.min(p);
            e.1 = e.1.max(p);
        }
        for (_, (lo, hi)) in spread {
            worst = worst.max(hi - lo);
        }
    }
    CheckResult::new(
        "distribution_class_invariance",
        worst,
        tol,
        "first-register marginal constant on conjugacy classes, t = 20".to_string(),
    )
}
