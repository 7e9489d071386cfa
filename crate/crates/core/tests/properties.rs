use norden_core::algebra::{rat, ParameterSpace, Rational};
use norden_core::family::{build_family, FamilyParams};
use norden_core::geometry::samples::{change_basis, norden_projection, semidirect, su2_plus_line};
use norden_core::geometry::*;
use norden_core::tensor::{matrix, Metric};
use proptest::prelude::*;

fn small() -> impl Strategy<Value = Rational> {
    (-2i64..=2).prop_map(|n| rat(n, 1))
}

fn square(n: usize) -> impl Strategy<Value = matrix::Matrix> {
    prop::collection::vec(prop::collection::vec(small(), n), n)
}

fn split_metric(s: &ParameterSpace) -> Metric {
    Metric::diagonal(s, &[rat(1, 1), rat(1, 1), rat(-1, 1), rat(-1, 1)]).unwrap()
}

fn invertible() -> impl Strategy<Value = matrix::Matrix> {
    square(4).prop_filter("singular basis", |m| matrix::invert(m).is_ok())
}

fn pair_properties(alg: &LieAlgebra, g: &Metric, j: &AlmostComplexStructure) {
    assert!(alg.jacobi_residual().is_zero());
    let p = PairGeometry::compute(alg, g, j, WeylConvention::Standard).unwrap();
    for side in [&p.base, &p.tilde] {
        assert!(side.connection.torsion_residual(alg).unwrap().is_zero());
        assert!(side
            .connection
            .covariant_derivative(side.metric.tensor())
            .unwrap()
            .is_zero());
        let (sym, jj) = f_prop_residuals(&side.f, j).unwrap();
        assert!(sym.is_zero() && jj.is_zero());
        for (name, r) in curvature_symmetry_residuals(&side.curvature04).unwrap() {
            assert!(r.is_zero(), "{name}");
        }
    }
    assert_eq!(p.base.flags.w3, p.tilde.flags.w3);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn semidirect_products(a in prop::array::uniform3(prop::array::uniform3(small()))) {
        let s = ParameterSpace::new::<&str>(&[]).unwrap();
        let j = AlmostComplexStructure::standard(&s, 4).unwrap();
        pair_properties(&semidirect(&s, &a), &split_metric(&s), &j);
    }

    #[test]
    fn random_norden_metrics(a in prop::array::uniform3(prop::array::uniform3(small())), rows in square(4), basis in invertible()) {
        let s = ParameterSpace::new::<&str>(&[]).unwrap();
        let j = AlmostComplexStructure::standard(&s, 4).unwrap();
        let Ok(g) = norden_projection(&rows, &j) else { return Ok(()) };
        let (alg, g, j) = change_basis(&semidirect(&s, &a), &g, &j, &basis).unwrap();
        pair_properties(&alg, &g, &j);
    }

    #[test]
    fn family_under_basis_change(l in prop::array::uniform4(-3i64..=3), basis in invertible()) {
        let (alg, g, j) = build_family(&FamilyParams::numeric(l));
        let (alg, g, j) = change_basis(&alg, &g, &j, &basis).unwrap();
        pair_properties(&alg, &g, &j);
        let p = PairGeometry::compute(&alg, &g, &j, WeylConvention::Standard).unwrap();
        prop_assert!(p.base.flags.w3 && p.tilde.flags.w3);
    }
}

#[test]
fn su2_with_family_metric() {
    let s = ParameterSpace::family();
    let j = AlmostComplexStructure::standard(&s, 4).unwrap();
    pair_properties(&su2_plus_line(&s), &split_metric(&s), &j);
}
