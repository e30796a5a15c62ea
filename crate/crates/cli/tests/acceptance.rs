//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines are always printed; exits non-zero if any
//! criterion fails.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use hra_core::cases::{self, HydrogenConvention};
use hra_core::classify::{empirical_check, CheckModel, DofParameter, FockKind, TABULATED_CASES};
use hra_core::dimension::{
    binary_entropy, bose_dimension, bose_dimension_variable, fermi_dimension, mode_entropy,
};
use hra_core::oracle::{verify_formulas, EnumerationLimits};
use hra_core::solver::{self, IntFunction, ModeSolveKind, ParticleSolveKind, DEFAULT_SEARCH_CAP};
use hra_core::spec::RawSpec;
use hra_core::{GrowthClass, PhysicalConstants, SystemSpec};
use num_bigint::BigUint;

const CASE_TABLE: &str = include_str!("../../core/tests/data/case_table.json");

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn within(elapsed: Duration, limit_s: f64) -> bool {
    elapsed.as_secs_f64() < limit_s
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let report = match verify_formulas(8, 8, &EnumerationLimits::default()) {
        Ok(r) => r,
        Err(e) => return outcome(false, format!("enumeration failed: {e}")),
    };
    let t = start.elapsed();
    outcome(
        report.all_pass && within(t, 10.0),
        format!(
            "{} specs, {} configurations, all match = {}, {:.2} s (limit 10 s)",
            report.specs_checked,
            report.configurations,
            report.all_pass,
            t.as_secs_f64()
        ),
    )
}

fn symmetry_suite() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let v = |r: hra_core::Result<hra_core::ExactCount>| r.unwrap().into_value();
    for m in 1..=30u128 {
        for l in 0..=30u128 {
            if v(bose_dimension(m, l)) != v(bose_dimension(l + 1, m - 1)) {
                failures.push(format!("bose M={m} L={l}"));
            }
            if l >= 1 && v(bose_dimension_variable(m, l)) != v(bose_dimension_variable(l, m)) {
                failures.push(format!("variable M={m} Lmax={l}"));
            }
            if v(bose_dimension_variable(m, l)) != v(bose_dimension(m + 1, l)) {
                failures.push(format!("phantom M={m} Lmax={l}"));
            }
            if l <= m && v(fermi_dimension(m, l)) != v(fermi_dimension(m, m - l)) {
                failures.push(format!("fermi M={m} L={l}"));
            }
        }
    }
    let t = start.elapsed();
    outcome(
        failures.is_empty() && within(t, 1.0),
        format!("{} failures, {:.3} s (limit 1 s){}", failures.len(), t.as_secs_f64(), first(&failures)),
    )
}

fn first(failures: &[String]) -> String {
    failures.first().map(|f| format!("; first: {f}")).unwrap_or_default()
}

fn entropy_asymptotics() -> Outcome {
    let m = 10_000u128;
    let bose = SystemSpec::BoseFixed { modes: m, particles: m }.log2_lgamma::<f64>().unwrap() / m as f64;
    let fermi = SystemSpec::Fermi { modes: m, particles: m / 2 }.log2_lgamma::<f64>().unwrap() / m as f64;
    let (s1, h_half) = (mode_entropy(1.0f64).unwrap(), binary_entropy(0.5f64).unwrap());
    let (db, df) = ((bose - s1).abs(), (fermi - h_half).abs());
    outcome(
        db <= 0.01 && df <= 0.01,
        format!("bose {bose:.6} vs S(1) = {s1}, |Δ| = {db:.2e}; fermi {fermi:.6} vs H(1/2) = {h_half}, |Δ| = {df:.2e} (tol 0.01)"),
    )
}

fn hydrogen_case() -> Outcome {
    let c = PhysicalConstants::default();
    let asymptotic = cases::hydrogen_for_qubits(100.0, HydrogenConvention::Asymptotic, &c).unwrap();
    let exact = cases::hydrogen_for_qubits(100.0, HydrogenConvention::ExactCount, &c).unwrap();
    let ratio = exact.radius_km / asymptotic.radius_km;
    let pass = (5e6..=7e6).contains(&asymptotic.radius_km)
        && (4.0..=5.5).contains(&asymptotic.sun_diameters)
        && ratio <= 2.2
        && ratio >= 1.0 / 2.2;
    outcome(
        pass,
        format!(
            "asymptotic r = {:.4e} km (want [5e6, 7e6]), sun ratio {:.3} (want [4, 5.5]); exact n = {}, r = {:.4e} km, ratio {:.4} (want within 2.2x)",
            asymptotic.radius_km,
            asymptotic.sun_diameters,
            exact.levels.as_ref().map(|n| n.to_string()).unwrap_or_default(),
            exact.radius_km,
            ratio
        ),
    )
}

fn hydrogen_formula() -> Outcome {
    let mut bad = Vec::new();
    for n in 1..=200u64 {
        let brute: u64 = (1..=n).map(|k| (0..k).map(|l| 2 * l + 1).sum::<u64>()).sum();
        if cases::cumulative_hydrogen_dimension(&BigUint::from(n)) != BigUint::from(brute) {
            bad.push(format!("n={n}"));
        }
    }
    let at100 = 100.0f64 * 101.0 * 201.0 / 6.0;
    let rel = (at100 - 1e6 / 3.0).abs() / at100;
    outcome(
        bad.is_empty() && rel < 0.02,
        format!("{} mismatches for n ≤ 200{}; n³/3 relative error at n = 100: {rel:.4} (limit 0.02)", bad.len(), first(&bad)),
    )
}

fn nmr_case() -> Outcome {
    let max = cases::nmr_max_qubits(2e-5f64, 1e20).unwrap();
    let worst = (1..=60u32)
        .map(|n| {
            let p = cases::nmr_pseudopure(2e-5f64, n).unwrap();
            (p.repetitions * p.epsilon * p.epsilon - 1.0).abs()
        })
        .fold(0.0f64, f64::max);
    outcome(
        max == 22 && max.abs_diff(20) <= 3 && worst <= 1e-12,
        format!("max qubits {max} (want 22, and within 3 of 20); max |reps·ε² - 1| over N = 1..60: {worst:.1e} (tol 1e-12)"),
    )
}

fn classical_wave_case() -> Outcome {
    let n = cases::classical_wave_min_qubits(8.8e26f64, 5e-7).unwrap();
    outcome(n == 221 && n.abs_diff(220) <= 10, format!("min N = {n} (want 221, and within 10 of 220)"))
}

fn classifier_fidelity() -> Outcome {
    let start = Instant::now();
    let rows: Vec<serde_json::Value> = serde_json::from_str(CASE_TABLE).expect("case table parses");
    let mut bad = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for row in &rows {
        let verdict = RawSpec::parse(&row["spec"].to_string())
            .and_then(|r| r.growth())
            .and_then(|g| g.classify());
        let v = match verdict {
            Ok(v) => v,
            Err(e) => {
                bad.push(format!("{}: {e}", row["spec"]));
                continue;
            }
        };
        let complement_ok = match (row["complement"].as_str().unwrap_or(""), v.complement_growth) {
            ("linear:*", Some(GrowthClass::Linear(c))) => c > 0.0,
            (s, Some(g)) => s.parse::<GrowthClass>().is_ok_and(|e| e == g),
            _ => false,
        };
        if v.case_label != row["case"].as_str().unwrap_or("")
            || format!("{:?}", v.verdict) != row["verdict"].as_str().unwrap_or("")
            || !complement_ok
        {
            bad.push(format!("{}: got {} {:?} {:?}", row["spec"], v.case_label, v.verdict, v.complement_growth));
        }
        seen.insert(v.case_label);
    }
    let missing: Vec<&str> = TABULATED_CASES.iter().copied().filter(|c| !seen.contains(*c)).collect();

    let big = vec![16.0, 32.0, 48.0, 64.0, 80.0];
    let fixtures = [
        (CheckModel::Fock(FockKind::Bose, DofParameter::Particles), IntFunction::Constant(2), vec![4.0, 8.0, 12.0, 16.0]),
        (CheckModel::Fock(FockKind::Bose, DofParameter::Modes), IntFunction::Linear { num: 1, den: 2 }, big.clone()),
        (CheckModel::DegreesOfFreedom, IntFunction::Linear { num: 1, den: 1 }, vec![2.0, 4.0, 6.0, 8.0]),
        (CheckModel::Fock(FockKind::Fermi, DofParameter::Particles), IntFunction::Linear { num: 1, den: 2 }, big.clone()),
        (
            CheckModel::Fock(FockKind::Distinguishable { internal: 2 }, DofParameter::Particles),
            IntFunction::Linear { num: 1, den: 1 },
            big,
        ),
    ];
    let mut agreeing = 0;
    for (model, f, ns) in fixtures {
        match empirical_check(model, f, &ns) {
            Ok(c) if c.agrees => agreeing += 1,
            Ok(c) => bad.push(format!("fixture {model:?} {f}: fit {:?}", c.fit.measured)),
            Err(e) => bad.push(format!("fixture {model:?} {f}: {e}")),
        }
    }
    let t = start.elapsed();
    outcome(
        bad.is_empty() && missing.is_empty() && within(t, 30.0),
        format!(
            "{} table rows, {} of {} case labels covered, {agreeing}/5 fixtures agree, {:.2} s (limit 30 s){}",
            rows.len(),
            seen.len(),
            TABULATED_CASES.len(),
            t.as_secs_f64(),
            first(&bad)
        ),
    )
}

fn solver_exactness() -> Outcome {
    let mut bad = Vec::new();
    let mut minimal_checks = 0;
    let mut check = |label: String, r: hra_core::Result<solver::ResourceRequirement>, expected: Option<u128>| match r {
        Ok(req) => {
            if expected.is_some_and(|e| e != req.solved.value) {
                bad.push(format!("{label}: got {}", req.solved.value));
            }
            minimal_checks += 1;
            if !req.is_minimal().unwrap_or(false) {
                bad.push(format!("{label}: {} - 1 also reaches the target", req.solved.value));
            }
        }
        Err(e) => bad.push(format!("{label}: {e}")),
    };
    for n in 0..=60u32 {
        let target = n as f64;
        check(
            format!("min_modes(bose, L=1, N={n})"),
            solver::min_modes(ModeSolveKind::BoseFixed, 1, target, DEFAULT_SEARCH_CAP),
            Some(1u128 << n),
        );
        check(
            format!("min_particles(bose-variable, M=1, N={n})"),
            solver::min_particles(ParticleSolveKind::BoseVariable { modes: 1 }, target, DEFAULT_SEARCH_CAP),
            Some((1u128 << n) - 1),
        );
    }
    for n in [1.0, 3.5, 7.0, 12.0, 20.0] {
        for fixed in 1..=6u128 {
            let kinds = [
                ModeSolveKind::BoseFixed,
                ModeSolveKind::BoseVariable,
                ModeSolveKind::Fermi,
                ModeSolveKind::Distinguishable { internal: 3 },
            ];
            for kind in kinds {
                check(format!("min_modes({kind:?}, {fixed}, N={n})"), solver::min_modes(kind, fixed, n, DEFAULT_SEARCH_CAP), None);
            }
            check(
                format!("min_levels_per_dof(T={fixed}, N={n})"),
                solver::min_levels_per_dof(fixed, n, DEFAULT_SEARCH_CAP),
                None,
            );
            let kinds = [
                ParticleSolveKind::BoseFixed { modes: fixed + 1 },
                ParticleSolveKind::BoseVariable { modes: fixed },
            ];
            for kind in kinds {
                check(format!("min_particles({kind:?}, N={n})"), solver::min_particles(kind, n, DEFAULT_SEARCH_CAP), None);
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("powers of two exact for N ≤ 60; {minimal_checks} minimality re-checks, {} failures{}", bad.len(), first(&bad)),
    )
}

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn corpus_invocations() -> Vec<(i32, Vec<String>)> {
    let text = std::fs::read_to_string(corpus_dir().join("invocations.txt")).expect("corpus invocation list");
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut parts = l.split_whitespace();
            let code = parts.next().and_then(|c| c.parse().ok()).expect("exit status column");
            (code, parts.map(str::to_owned).collect())
        })
        .collect()
}

fn run_corpus() -> Vec<(Option<i32>, Vec<u8>, Vec<u8>)> {
    corpus_invocations()
        .into_iter()
        .map(|(_, args)| {
            let out = Command::new(env!("CARGO_BIN_EXE_hra"))
                .args(&args)
                .current_dir(corpus_dir())
                .env_remove("HRA_CONSTANTS")
                .env_remove("RUST_LOG")
                .output()
                .expect("binary runs");
            (out.status.code(), out.stdout, out.stderr)
        })
        .collect()
}

fn determinism() -> Outcome {
    let first_run = run_corpus();
    let second_run = run_corpus();
    let expected: Vec<i32> = corpus_invocations().into_iter().map(|(c, _)| c).collect();
    let differing = first_run.iter().zip(&second_run).filter(|(a, b)| a != b).count();
    let wrong_status = first_run.iter().zip(&expected).filter(|((s, _, _), e)| *s != Some(**e)).count();
    outcome(
        differing == 0 && wrong_status == 0,
        format!(
            "{} invocations run twice: {differing} differ byte-wise, {wrong_status} with unexpected exit status",
            first_run.len()
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("oracle equivalence", oracle_equivalence),
        ("symmetry suite", symmetry_suite),
        ("entropy asymptotics", entropy_asymptotics),
        ("hydrogen case study", hydrogen_case),
        ("hydrogen dimension formula", hydrogen_formula),
        ("NMR case study", nmr_case),
        ("classical-wave case study", classical_wave_case),
        ("classifier table fidelity", classifier_fidelity),
        ("solver exactness", solver_exactness),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        if !o.pass {
            failed += 1;
        }
        println!("{} criterion {} ({name}): {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
