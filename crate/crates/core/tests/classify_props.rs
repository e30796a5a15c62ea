//! Classifier verdicts against the checked-in case table, the ordering and
//! symmetry invariants, and the numerical cross-check fixtures.

use hra_core::classify::{
    classify_dof, classify_fock, empirical_check, CheckModel, DofParameter, FockKind, Verdict, TABULATED_CASES,
};
use hra_core::growth::dominates;
use hra_core::solver::IntFunction;
use hra_core::spec::RawSpec;
use hra_core::GrowthClass;
use proptest::prelude::*;
use std::cmp::Ordering;

const TABLE: &str = include_str!("data/case_table.json");

#[test]
fn verdicts_match_case_table() {
    let rows: Vec<serde_json::Value> = serde_json::from_str(TABLE).unwrap();
    let mut seen = std::collections::BTreeSet::new();
    for row in &rows {
        let spec = RawSpec::parse(&row["spec"].to_string()).unwrap().growth().unwrap();
        let v = spec.classify().unwrap();
        assert_eq!(v.case_label, row["case"].as_str().unwrap(), "{row}");
        assert_eq!(format!("{:?}", v.verdict), row["verdict"].as_str().unwrap(), "{row}");
        let expected = row["complement"].as_str().unwrap();
        match (expected, v.complement_growth) {
            ("linear:*", Some(GrowthClass::Linear(c))) => assert!(c > 0.0),
            (s, Some(g)) => assert_eq!(g, s.parse::<GrowthClass>().unwrap(), "{row}"),
            (s, None) => panic!("missing complement, expected {s}"),
        }
        seen.insert(v.case_label);
    }
    let all: std::collections::BTreeSet<String> = TABULATED_CASES.iter().map(|s| s.to_string()).collect();
    assert_eq!(seen, all);
}

#[test]
fn bose_particle_mode_symmetry() {
    let swap = |label: &str| {
        label
            .replace("bose-1", "X")
            .replace("bose-2", "bose-1")
            .replace('X', "bose-2")
            .replace("(ii)", "(Y)")
            .replace("(i)", "(ii)")
            .replace("(Y)", "(i)")
    };
    for g in all_classes() {
        let p = classify_fock(FockKind::Bose, DofParameter::Particles, &g).unwrap();
        let m = classify_fock(FockKind::Bose, DofParameter::Modes, &g).unwrap();
        assert_eq!(p.verdict, m.verdict);
        assert_eq!(p.complement_growth, m.complement_growth);
        if !p.case_label.contains("(iii)") {
            assert_eq!(swap(&p.case_label), m.case_label, "{g}");
        }
    }
}

fn all_classes() -> Vec<GrowthClass> {
    use GrowthClass::*;
    vec![
        Constant,
        Logarithmic,
        SublinearPoly(0.25),
        SublinearPoly(0.75),
        Quasilinear(1),
        Quasilinear(3),
        Linear(0.5),
        Linear(1.0),
        Linear(2.0),
        SuperlinearPoly(1.5),
        Exponential(2.0),
    ]
}

fn kinds() -> Vec<(FockKind, DofParameter)> {
    let mut out = Vec::new();
    for kind in [FockKind::Bose, FockKind::Fermi, FockKind::Distinguishable { internal: 2 }] {
        for p in [DofParameter::Particles, DofParameter::Modes] {
            out.push((kind, p));
        }
    }
    out
}

#[test]
fn linear_is_strict_and_constant_never_is() {
    for c in [0.5, 1.0, 1.5, 3.0] {
        assert_eq!(classify_dof(&GrowthClass::Linear(c)).unwrap().verdict, Verdict::StrictlyScalable);
        for (kind, p) in kinds() {
            if let Ok(v) = classify_fock(kind, p, &GrowthClass::Linear(c)) {
                assert_eq!(v.verdict, Verdict::StrictlyScalable);
            }
        }
    }
    assert_ne!(classify_dof(&GrowthClass::Constant).unwrap().verdict, Verdict::StrictlyScalable);
    for (kind, p) in kinds() {
        if let Ok(v) = classify_fock(kind, p, &GrowthClass::Constant) {
            assert_ne!(v.verdict, Verdict::StrictlyScalable);
        }
    }
}

#[test]
fn verdict_invariants() {
    let mut verdicts = Vec::new();
    for g in all_classes() {
        verdicts.push(classify_dof(&g).unwrap());
        for (kind, p) in kinds() {
            if let Ok(v) = classify_fock(kind, p, &g) {
                verdicts.push(v);
            }
        }
    }
    for v in verdicts {
        match v.verdict {
            Verdict::StrictlyScalable => assert!(matches!(
                v.complement_growth,
                Some(GrowthClass::Constant | GrowthClass::Linear(_))
            )),
            Verdict::NonScalable => assert!(matches!(v.complement_growth, Some(GrowthClass::Exponential(_)))),
            _ => {}
        }
    }
}

fn growth_strategy() -> impl Strategy<Value = GrowthClass> {
    prop_oneof![
        Just(GrowthClass::Constant),
        Just(GrowthClass::Logarithmic),
        (0.01f64..0.99).prop_map(GrowthClass::SublinearPoly),
        (1u32..6).prop_map(GrowthClass::Quasilinear),
        (0.1f64..4.0).prop_map(GrowthClass::Linear),
    ]
}

proptest! {
    #[test]
    fn verdicts_monotone_in_growth(a in growth_strategy(), b in growth_strategy()) {
        let rank = |v: Verdict| v.rank().unwrap();
        if dominates(&a, &b) == Ordering::Greater {
            let (va, vb) = (classify_dof(&a).unwrap(), classify_dof(&b).unwrap());
            prop_assert!(rank(va.verdict) >= rank(vb.verdict));
            for (kind, p) in kinds() {
                if let (Ok(va), Ok(vb)) = (classify_fock(kind, p, &a), classify_fock(kind, p, &b)) {
                    prop_assert!(rank(va.verdict) >= rank(vb.verdict), "{:?} {:?}", va, vb);
                }
            }
        }
    }

    #[test]
    fn domination_is_antisymmetric(a in growth_strategy(), b in growth_strategy()) {
        prop_assert_eq!(dominates(&a, &b), dominates(&b, &a).reverse());
    }
}

#[test]
fn empirical_fixtures_agree() {
    let big = [16.0, 32.0, 48.0, 64.0, 80.0];
    let fixtures = [
        (
            CheckModel::Fock(FockKind::Bose, DofParameter::Particles),
            IntFunction::Constant(2),
            vec![4.0, 8.0, 12.0, 16.0],
        ),
        // M = N/2: one particle per mode on average
        (
            CheckModel::Fock(FockKind::Bose, DofParameter::Modes),
            IntFunction::Linear { num: 1, den: 2 },
            big.to_vec(),
        ),
        (CheckModel::DegreesOfFreedom, IntFunction::Linear { num: 1, den: 1 }, vec![2.0, 4.0, 6.0, 8.0]),
        // L = N/2: half filling
        (
            CheckModel::Fock(FockKind::Fermi, DofParameter::Particles),
            IntFunction::Linear { num: 1, den: 2 },
            big.to_vec(),
        ),
        // D = 2, L = N: full filling, K = L
        (
            CheckModel::Fock(FockKind::Distinguishable { internal: 2 }, DofParameter::Particles),
            IntFunction::Linear { num: 1, den: 1 },
            big.to_vec(),
        ),
    ];
    for (model, f, ns) in fixtures {
        let check = empirical_check(model, f, &ns).unwrap();
        assert!(check.agrees, "{model:?} {f}: {:?}", check.fit);
    }
}
