//! Case-study invariants with independent oracles (brute-force sums,
//! direct big-integer arithmetic).

use hra_core::cases::{
    classical_wave_waist, cumulative_hydrogen_dimension, hydrogen_for_qubits, nmr_max_qubits, nmr_pseudopure,
    unary_control_parameters, HydrogenConvention,
};
use hra_core::PhysicalConstants;
use num_bigint::BigUint;
use proptest::prelude::*;

#[test]
fn hydrogen_closed_form_matches_double_sum() {
    for n in 1..=200u64 {
        // Σ_{k=1}^{n} Σ_{l=0}^{k-1} (2l+1)
        let brute: u64 = (1..=n).map(|k| (0..k).map(|l| 2 * l + 1).sum::<u64>()).sum();
        assert_eq!(cumulative_hydrogen_dimension(&BigUint::from(n)), BigUint::from(brute));
    }
}

#[test]
fn exact_radius_ratio_tends_to_cube_root_nine() {
    let c = PhysicalConstants::default();
    let limit = 3f64.powf(2.0 / 3.0);
    for n in (60..=400).step_by(17) {
        let asymptotic = hydrogen_for_qubits(n as f64, HydrogenConvention::Asymptotic, &c).unwrap();
        let exact = hydrogen_for_qubits(n as f64, HydrogenConvention::ExactCount, &c).unwrap();
        let ratio = exact.radius_a0 / asymptotic.radius_a0;
        assert!((ratio / limit - 1.0).abs() < 0.01, "N={n}: {ratio}");
    }
}

#[test]
fn exact_levels_are_minimal() {
    for n in 0..=120u32 {
        let c = PhysicalConstants::default();
        let levels = hydrogen_for_qubits(n as f64, HydrogenConvention::ExactCount, &c)
            .unwrap()
            .levels
            .unwrap();
        let target = BigUint::from(1u32) << n;
        assert!(cumulative_hydrogen_dimension(&levels) >= target);
        if levels > BigUint::from(1u32) {
            assert!(cumulative_hydrogen_dimension(&(&levels - 1u32)) < target);
        }
    }
}

#[test]
fn nmr_product_is_one() {
    for n in 1..=60u32 {
        for alpha in [1.0f64, 0.3, 2e-5] {
            let p = nmr_pseudopure(alpha, n).unwrap();
            assert!((p.repetitions * p.epsilon * p.epsilon - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn waist_doubles_every_two_qubits() {
    for lambda in [5e-7f64, 1.3e-6, 3.0] {
        for n in 0..400u32 {
            let w = classical_wave_waist(n, lambda).unwrap();
            assert_eq!(classical_wave_waist(n + 2, lambda).unwrap(), 2.0 * w);
        }
    }
}

#[test]
fn unary_totals_closed_form() {
    for n in 1..=64u32 {
        let u = unary_control_parameters(n).unwrap();
        let pow = BigUint::from(1u32) << n;
        assert_eq!(u.total, (BigUint::from(1u32) << (n - 1)) * (pow + 1u32));
    }
}

proptest! {
    #[test]
    fn nmr_capacity_monotone(a in 1e-6f64..1.0, b in 1.0f64..1e30, scale in 1.0f64..100.0) {
        let base = nmr_max_qubits(a, b).unwrap();
        prop_assert!(nmr_max_qubits(a, b * scale).unwrap() >= base);
        prop_assert!(nmr_max_qubits((a * scale).min(1.0), b).unwrap() >= base);
    }
}
