use norden_core::algebra::{rat, ParameterSpace, Poly};
use norden_core::family::{build_family, expected_tables, isotropic_flags, verify_family, FamilyParams, IsotropicFlag};
use norden_core::geometry::WeylConvention;
use norden_core::report::{Status, Value};

fn poly(s: &str) -> Poly {
    Poly::parse(&ParameterSpace::family(), s).unwrap()
}

fn constant(n: i64) -> Value {
    Value::Poly(Poly::from_int(&ParameterSpace::family(), n))
}

#[test]
fn symbolic_run_passes_with_errata() {
    let r = verify_family(&FamilyParams::Symbolic, WeylConvention::Standard).unwrap();
    assert!(r.passed(), "{}", r.render_text());
    assert_eq!(r.check("R_1441").unwrap().status, Status::ErratumMatch);
    assert_eq!(r.check("R_1221").unwrap().status, Status::Match);
    assert_eq!(r.check("tau").unwrap().status, Status::Match);
    assert_eq!(r.check("norm_tilde").unwrap().status, Status::Match);
    let erratum_ids: std::collections::BTreeSet<String> = r
        .checks
        .iter()
        .filter(|c| c.status == Status::ErratumMatch)
        .map(|c| c.erratum.as_ref().unwrap().id.clone())
        .collect();
    let want: std::collections::BTreeSet<String> = ["E1", "E2", "E4", "E5", "E6", "E7"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    assert_eq!(erratum_ids, want);
}

#[test]
fn printed_convention_is_recorded_and_fails() {
    let r = verify_family(&FamilyParams::Symbolic, WeylConvention::Printed).unwrap();
    assert!(!r.passed());
    assert_eq!(r.check("weyl").unwrap().status, Status::Mismatch);
    assert!(r
        .notes
        .iter()
        .any(|n| n.starts_with("weyl convention standard: W = 0 holds; tW table reproduced")));
    assert!(r
        .notes
        .iter()
        .any(|n| n.starts_with("weyl convention printed: W = 0 fails")));
}

#[test]
fn remark_scenarios() {
    // (λ, isotropic g, isotropic g~, ‖∇J‖, ‖∇~J‖)
    let cases = [
        ([1, 2, 2, -1], true, true, 0, 0),
        ([1, 0, 1, 0], true, false, 0, -8),
        ([1, 1, 2, -2], false, true, -24, 0),
    ];
    for (l, iso_g, iso_t, norm, norm_t) in cases {
        let params = FamilyParams::numeric(l);
        assert_eq!(
            isotropic_flags(&params),
            (IsotropicFlag::Decided(iso_g), IsotropicFlag::Decided(iso_t))
        );
        let r = verify_family(&params, WeylConvention::Standard).unwrap();
        assert!(r.passed(), "{l:?}\n{}", r.render_text());
        assert_eq!(r.check("norm").unwrap().computed, constant(norm));
        assert_eq!(r.check("norm_tilde").unwrap().computed, constant(norm_t));
    }
}

#[test]
fn lambda_one_zero_one_zero_scalars() {
    let r = verify_family(&FamilyParams::numeric([1, 0, 1, 0]), WeylConvention::Standard).unwrap();
    assert_eq!(r.check("tau").unwrap().computed, constant(0));
    let t = r.check("tau_tilde").unwrap();
    assert_eq!(t.status, Status::ErratumMatch);
    assert_eq!(t.computed, constant(-5));
    assert_eq!(t.expected, constant(5));
}

#[test]
fn zero_parameters_are_kaehler() {
    let params = FamilyParams::numeric([0, 0, 0, 0]);
    let (alg, _, _) = build_family(&params);
    assert!(alg.structure().is_zero());
    assert_eq!(
        isotropic_flags(&params),
        (IsotropicFlag::Decided(true), IsotropicFlag::Decided(true))
    );
    let r = verify_family(&params, WeylConvention::Standard).unwrap();
    let w0 = r.quantities.iter().find(|q| q.name == "w0").unwrap();
    assert_eq!(w0.value, Value::Flag(true));
}

#[test]
fn symbolic_isotropic_conditions() {
    let (g, t) = isotropic_flags(&FamilyParams::Symbolic);
    assert_eq!(g, IsotropicFlag::Condition(poly("l1^2 + l2^2 - l3^2 - l4^2")));
    assert_eq!(t, IsotropicFlag::Condition(poly("l1*l3 + l2*l4")));
}

#[test]
fn rational_parameters() {
    let params = FamilyParams::Numeric([rat(1, 2), rat(-3, 1), rat(0, 1), rat(2, 1)]);
    let r = verify_family(&params, WeylConvention::Standard).unwrap();
    assert!(r.passed());
    // ‖∇J‖ = 4(1/4 + 9 - 0 - 4)
    assert_eq!(r.check("norm").unwrap().computed, constant(21));
}

#[test]
fn expected_table_examples() {
    let t = expected_tables();
    assert_eq!(t.f_tilde.lookup(&[3, 2, 2]), Some(&poly("-l1")));
    assert_eq!(t.r_tilde.lookup(&[1, 3, 3, 1]), Some(&poly("-1/2*l2*l4")));
    assert_eq!(t.r.lookup(&[1, 4, 4, 1]), Some(&poly("-1/4*l1^2 + 1/4*l4^2")));
    assert_eq!(t.r.errata[&vec![0, 3, 3, 0]].corrected, poly("1/4*l1^2 - 1/4*l4^2"));
}
