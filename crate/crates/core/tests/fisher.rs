use biscv_core::fisher::{check_fisher_chain, fisher_exact_spherical, fisher_info, hardy_integrals};
use biscv_core::shape::CheckSettings;
use biscv_core::{ConcavityIndex, DistributionSpec};

fn finite_members() -> Vec<DistributionSpec> {
    vec![
        DistributionSpec::standard_normal(),
        DistributionSpec::student_t(1.0).unwrap(),
        DistributionSpec::student_t(5.0).unwrap(),
        DistributionSpec::spherical_power(4.0).unwrap(),
        DistributionSpec::spherical_power(8.0).unwrap(),
        DistributionSpec::normal_mixture(0.8).unwrap(),
    ]
}

#[test]
fn symmetric_members_have_equal_hardy_integrals() {
    for d in finite_members() {
        let (l, r) = hardy_integrals(&d, 1e-9).unwrap();
        assert!((l - r).abs() <= 1e-7 * l, "{d}: {l} vs {r}");
    }
}

#[test]
fn hardy_bounded_by_four_times_information() {
    for d in finite_members() {
        let i = fisher_info(&d, 1e-9).unwrap();
        let (l, r) = hardy_integrals(&d, 1e-9).unwrap();
        assert!(l.max(r) <= 4.0 * i * (1.0 + 1e-8), "{d}: hardy {l}, {r}, I = {i}");
    }
}

#[test]
fn location_invariance_and_scale_law() {
    let base = fisher_info(&DistributionSpec::standard_normal(), 1e-10).unwrap();
    for (mu, sigma) in [(3.0, 1.0), (-7.5, 1.0), (0.0, 0.5), (2.0, 3.0)] {
        let d = DistributionSpec::normal(mu, sigma).unwrap();
        let i = fisher_info(&d, 1e-10).unwrap();
        assert!((i * sigma * sigma - base).abs() < 1e-8, "{d}: {i}");
        let (l, _) = hardy_integrals(&d, 1e-10).unwrap();
        let (l0, _) = hardy_integrals(&DistributionSpec::standard_normal(), 1e-10).unwrap();
        assert!((l * sigma * sigma - l0).abs() < 1e-7, "{d}: {l}");
    }
}

#[test]
fn spherical_power_quadrature_matches_exact() {
    for r in [3.5, 4.0, 6.0, 10.0, 25.0] {
        let d = DistributionSpec::spherical_power(r).unwrap();
        let q = fisher_info(&d, 1e-9).unwrap();
        let e = fisher_exact_spherical(r).unwrap();
        assert!((q / e - 1.0).abs() < 1e-7, "r = {r}: {q} vs {e}");
    }
}

#[test]
fn chain_holds_at_maximal_index() {
    let cases = [
        (DistributionSpec::student_t(3.0).unwrap(), -0.25),
        (DistributionSpec::spherical_power(6.0).unwrap(), 1.0 / 3.0),
        (DistributionSpec::normal_mixture(0.5).unwrap(), 0.0),
    ];
    for (d, s) in cases {
        let idx = ConcavityIndex::to_index(s).unwrap();
        let rep = check_fisher_chain(&d, idx, 1e-8, &CheckSettings::default()).unwrap();
        assert!(rep.holds, "{d}: {rep:?}");
        assert_eq!(rep.chain_lo, rep.i_f);
    }
}

#[test]
fn report_serializes_with_infinite_fields() {
    let d = DistributionSpec::spherical_power(2.0).unwrap();
    let idx = ConcavityIndex::to_index(1.0).unwrap();
    let rep = check_fisher_chain(&d, idx, 1e-8, &CheckSettings::default()).unwrap();
    let v = serde_json::to_value(&rep).unwrap();
    assert_eq!(v["I_f"], "inf");
    assert_eq!(v["all_infinite"], true);
}
