//! Acceptance suite: one PASS/FAIL line per criterion, exact arithmetic
//! throughout. Exits nonzero when any criterion fails.

use std::process::Command as Process;

use norden_core::algebra::{rat, ParameterSpace, Poly, Rational};
use norden_core::family::{
    build_family, expected_tables, isotropic_flags, verify_family, FamilyParams, IsotropicFlag, Table,
};
use norden_core::geometry::samples::{change_basis, norden_projection, semidirect};
use norden_core::geometry::{
    associated_metric, curvature_symmetry_residuals, f_prop_residuals, ftilde_w3_rhs, lower04, pi1, ricci_and_scalar,
    weyl, AlmostComplexStructure, LieAlgebra, PairGeometry, WeylConvention,
};
use norden_core::report::Status;
use norden_core::tensor::{matrix, Metric, Tensor};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn space() -> ParameterSpace {
    ParameterSpace::family()
}

fn poly(s: &str) -> Poly {
    Poly::parse(&space(), s).unwrap()
}

fn symbolic_pair() -> PairGeometry {
    let (alg, g, j) = build_family(&FamilyParams::Symbolic);
    PairGeometry::compute(&alg, &g, &j, WeylConvention::Standard).unwrap()
}

fn digits(idx: &[usize]) -> String {
    idx.iter().map(|i| (i + 1).to_string()).collect()
}

/// Components where `computed` differs from the printed table (unlisted
/// components must vanish).
fn table_diff(table: &Table, computed: &Tensor, skip: &[Vec<usize>]) -> Vec<String> {
    computed
        .indices()
        .filter(|i| !skip.contains(i))
        .filter_map(|i| {
            let want = table
                .entries
                .get(&i)
                .cloned()
                .unwrap_or_else(|| Poly::zero(computed.space()));
            let got = computed.get(&i);
            (*got != want).then(|| format!("{}_{}: computed {got}, printed {want}", table.name, digits(&i)))
        })
        .collect()
}

fn verdict(failures: Vec<String>, pass: String) -> Outcome {
    if failures.is_empty() {
        Ok(pass)
    } else {
        Err(failures.join("; "))
    }
}

fn criterion_1() -> Outcome {
    let (alg, g, j) = build_family(&FamilyParams::Symbolic);
    let mut fails = Vec::new();
    if !alg.jacobi_residual().is_zero() {
        fails.push("Jacobi residual nonzero".to_string());
    }
    if !alg.ad_invariance_residual(&g).unwrap().is_zero() {
        fails.push("ad-invariance residual nonzero".to_string());
    }
    let gt = associated_metric(&g, &j).unwrap();
    for (name, m) in [("g", &g), ("g~", &gt)] {
        let sig = m.signature();
        if !m.is_norden(j.tensor()).unwrap() || (sig.plus, sig.minus) != (2, 2) {
            fails.push(format!("{name} is not Norden of signature (2,2)"));
        }
    }
    verdict(
        fails,
        "Jacobi and ad-invariance vanish in l; g and g~ are Norden".into(),
    )
}

fn criterion_2() -> Outcome {
    let p = symbolic_pair();
    let t = expected_tables();
    let mut fails = table_diff(&t.f, &p.base.f, &[]);
    fails.extend(
        table_diff(&t.f_tilde, &p.tilde.f, &[])
            .into_iter()
            .map(|s| format!("{s} (definition)")),
    );
    let via_j = ftilde_w3_rhs(&p.base.f, &p.j).unwrap();
    fails.extend(
        table_diff(&t.f_tilde, &via_j, &[])
            .into_iter()
            .map(|s| format!("{s} (via -F(Jx,y,z))")),
    );
    verdict(fails, "F and F~ equal the printed tables on all 64 components".into())
}

fn criterion_3() -> Outcome {
    let p = symbolic_pair();
    let mut fails = Vec::new();
    for (name, side) in [("g", &p.base), ("g~", &p.tilde)] {
        if !side.flags.w3 || side.flags.w0 {
            fails.push(format!("{name}: expected quasi-Kaehler and not Kaehler"));
        }
        if !side.theta.is_zero() {
            fails.push(format!("{name}: theta nonzero"));
        }
    }
    let (alg, g, j) = build_family(&FamilyParams::numeric([0, 0, 0, 0]));
    let zero = PairGeometry::compute(&alg, &g, &j, WeylConvention::Standard).unwrap();
    let f = &zero.base.flags;
    if !(f.w0 && f.w1 && f.w2 && f.w3) {
        fails.push("l = 0 is not in W0".into());
    }
    verdict(fails, "g and g~ in W3 with theta = 0; l = 0 in W0".into())
}

fn criterion_4() -> Outcome {
    let p = symbolic_pair();
    let t = expected_tables();
    let erratum: Vec<Vec<usize>> = t.r.errata.keys().cloned().collect();
    let mut fails = table_diff(&t.r, &p.base.curvature04, &erratum);
    if *p.base.curvature04.get(&[0, 3, 3, 0]) != poly("1/4*l1^2 - 1/4*l4^2") {
        fails.push(format!("R_1441 = {}", p.base.curvature04.get(&[0, 3, 3, 0])));
    }
    let report = verify_family(&FamilyParams::Symbolic, WeylConvention::Standard).unwrap();
    if report.check("R_1441").map(|c| c.status) != Some(Status::ErratumMatch) {
        fails.push("R_1441 not reported as erratum-match".into());
    }
    // the corrected printed table must reproduce the printed scalar curvature
    let corrected = Tensor::from_fn(&space(), 4, p.base.curvature04.valence(), |i| {
        t.r.corrected(&i.iter().map(|x| x + 1).collect::<Vec<_>>())
            .cloned()
            .unwrap_or_else(|| Poly::zero(&space()))
    });
    let (_, tau) = ricci_and_scalar(&corrected, &p.base.metric).unwrap();
    let printed_tau = &t.closed_form("tau").unwrap().printed;
    if tau != *printed_tau || p.base.scalar != *printed_tau {
        fails.push(format!("tau from corrected table {tau}, computed {}", p.base.scalar));
    }
    verdict(
        fails,
        "R matches; R_1441 = +1/4(l1^2 - l4^2) as erratum-match; tau reproduced".into(),
    )
}

fn criterion_5() -> Outcome {
    let p = symbolic_pair();
    let t = expected_tables();
    let direct = &p.tilde.curvature04;
    let via_q = lower04(&p.base.curvature.checked_add(&p.base.q).unwrap(), &p.tilde.metric).unwrap();
    let mut fails = Vec::new();
    if *direct != via_q {
        fails.push("R~ direct differs from R + Q".into());
    }
    if *direct != p.curvature_rhs {
        fails.push("R~ direct differs from the transfer identity right-hand side".into());
    }
    fails.extend(table_diff(&t.r_tilde, direct, &[]));
    verdict(fails, "R~ direct = R + Q = transfer identity = printed table".into())
}

fn criterion_6() -> Outcome {
    let p = symbolic_pair();
    let mut fails = Vec::new();
    if p.s != p.s_tilde {
        fails.push("S differs".to_string());
    }
    if p.p != p.p_tilde {
        fails.push("P differs".to_string());
    }
    if p.tilde.transfer != -&p.base.transfer {
        fails.push("T~ != -T".to_string());
    }
    if p.tilde.q != -&p.base.q {
        fails.push("Q~ != -Q".to_string());
    }
    verdict(fails, "S and P invariant; T~ = -T; Q~ = -Q".into())
}

fn criterion_7() -> Outcome {
    let p = symbolic_pair();
    let (norm, norm_t, tau, tau_t) = (&p.base.norm, &p.tilde.norm, &p.base.scalar, &p.tilde.scalar);
    let lam = space().vars();
    let r = |n, d| rat(n, d);
    let checks: Vec<(&str, Poly, Poly)> = vec![
        (
            "|nabla J| = 4(l1^2+l2^2-l3^2-l4^2)",
            norm.clone(),
            poly("4*l1^2 + 4*l2^2 - 4*l3^2 - 4*l4^2"),
        ),
        (
            "|nabla~ J| = -8(l1 l3 + l2 l4)",
            norm_t.clone(),
            poly("-8*l1*l3 - 8*l2*l4"),
        ),
        ("tau~ = 5(l1 l3 + l2 l4)", tau_t.clone(), poly("5*l1*l3 + 5*l2*l4")),
        ("tau = -3/8 |nabla J|", tau.clone(), norm.scale(&r(-3, 8))),
        ("tau~ = -5/8 |nabla~ J|", tau_t.clone(), norm_t.scale(&r(-5, 8))),
        (
            "g(L,L) = 1/4 |nabla J|",
            p.base.metric.inner(&lam, &lam),
            norm.scale(&r(1, 4)),
        ),
        (
            "g~(L,L) = 1/4 |nabla~ J|",
            p.tilde.metric.inner(&lam, &lam),
            norm_t.scale(&r(1, 4)),
        ),
    ];
    let fails = checks
        .into_iter()
        .filter(|(_, a, b)| a != b)
        .map(|(name, a, b)| format!("{name}: computed {a}, stated {b}"))
        .collect();
    verdict(
        fails,
        "norms, scalar curvatures and isotropic-cone identities hold".into(),
    )
}

fn criterion_8() -> Outcome {
    let p = symbolic_pair();
    let t = expected_tables();
    let s = poly("l1*l3 + l2*l4");
    let mut notes = Vec::new();
    let mut any_ok = false;
    for convention in [WeylConvention::Standard, WeylConvention::Printed] {
        let w_of = |side: &norden_core::geometry::SideGeometry| {
            weyl(&side.curvature04, &side.ricci, &side.scalar, &side.metric, convention).unwrap()
        };
        let (w, wt) = (w_of(&p.base), w_of(&p.tilde));
        let proportional = wt
            .data()
            .iter()
            .all(|x| x.is_zero() || x.rational_multiple_of(&s).is_some());
        let mismatched = table_diff(&t.w_tilde, &wt, &[]).len();
        notes.push(format!(
            "{}: W = 0 {}, W~ entries proportional {}, W~ table {}",
            convention.name(),
            w.is_zero(),
            proportional,
            if mismatched == 0 {
                "match".to_string()
            } else {
                format!("mismatch in {mismatched}")
            }
        ));
        any_ok |= w.is_zero() && proportional;
    }
    // constant curvature sanity input: R = c * pi1 has zero Weyl tensor
    let g = Metric::diagonal(&space(), &[rat(1, 1), rat(1, 1), rat(-1, 1), rat(-1, 1)]).unwrap();
    let c = poly("l1");
    let r = pi1(&g).map(|x| x * &c);
    let (rho, tau) = ricci_and_scalar(&r, &g).unwrap();
    let constant_ok = weyl(&r, &rho, &tau, &g, WeylConvention::Standard).unwrap().is_zero();
    notes.push(format!("constant curvature -> 0: {constant_ok}"));
    let standard_w_zero = p.base.weyl.as_ref().is_some_and(Tensor::is_zero);
    if any_ok && constant_ok && standard_w_zero {
        Ok(notes.join("; "))
    } else {
        Err(notes.join("; "))
    }
}

fn criterion_9() -> Outcome {
    let mut fails = Vec::new();
    let mut seen = Vec::new();
    for (l, expect) in [
        ([1, 2, 2, -1], (true, true)),
        ([1, 0, 1, 0], (true, false)),
        ([1, 1, 2, -2], (false, true)),
    ] {
        let params = FamilyParams::numeric(l);
        let flags = isotropic_flags(&params);
        if flags != (IsotropicFlag::Decided(expect.0), IsotropicFlag::Decided(expect.1)) {
            fails.push(format!("{l:?}: flags {flags:?}"));
        }
        if !verify_family(&params, WeylConvention::Standard).unwrap().passed() {
            fails.push(format!("{l:?}: verify_family reports a mismatch"));
        }
        let arg = l.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        let status = Process::new(env!("CARGO_BIN_EXE_norden"))
            .args(["verify", "--lambda", &arg])
            .output()
            .unwrap()
            .status
            .code();
        if status != Some(0) {
            fails.push(format!("{l:?}: norden verify exit {status:?}"));
        }
        seen.push(format!("{l:?} -> {expect:?}"));
    }
    verdict(fails, format!("{}; all exit 0", seen.join(", ")))
}

fn small() -> impl Strategy<Value = Rational> {
    (-2i64..=2).prop_map(|n| rat(n, 1))
}

fn square() -> impl Strategy<Value = matrix::Matrix> {
    prop::collection::vec(prop::collection::vec(small(), 4), 4)
}

fn invertible() -> impl Strategy<Value = matrix::Matrix> {
    square().prop_filter("singular basis", |m| matrix::invert(m).is_ok())
}

/// Check the universal properties on one input; returns whether both sides
/// are quasi-Kaehler.
fn properties(alg: &LieAlgebra, g: &Metric, j: &AlmostComplexStructure) -> Result<bool, TestCaseError> {
    prop_assert!(alg.jacobi_residual().is_zero(), "generated algebra fails Jacobi");
    let p =
        PairGeometry::compute(alg, g, j, WeylConvention::Standard).map_err(|e| TestCaseError::fail(e.to_string()))?;
    for (name, side) in [("g", &p.base), ("g~", &p.tilde)] {
        prop_assert!(
            side.connection.torsion_residual(alg).unwrap().is_zero(),
            "{} connection has torsion",
            name
        );
        prop_assert!(
            side.connection
                .covariant_derivative(side.metric.tensor())
                .unwrap()
                .is_zero(),
            "{} connection is not metric",
            name
        );
        let (sym, jj) = f_prop_residuals(&side.f, j).unwrap();
        prop_assert!(sym.is_zero() && jj.is_zero(), "{} F violates its symmetries", name);
        for (identity, r) in curvature_symmetry_residuals(&side.curvature04).unwrap() {
            prop_assert!(r.is_zero(), "{} curvature violates {}", name, identity);
        }
    }
    prop_assert_eq!(
        p.base.flags.w3,
        p.tilde.flags.w3,
        "W3 membership differs between g and g~"
    );
    Ok(p.base.flags.w3)
}

fn criterion_10() -> Outcome {
    let config = Config {
        cases: 48,
        failure_persistence: None,
        ..Config::default()
    };
    let empty = ParameterSpace::new::<&str>(&[]).unwrap();
    let std_j = AlmostComplexStructure::standard(&empty, 4).unwrap();
    let w3_random = std::cell::Cell::new(0usize);
    let mut runner = TestRunner::new(config.clone());
    let random = runner.run(
        &(
            prop::array::uniform3(prop::array::uniform3(small())),
            square(),
            invertible(),
        ),
        |(a, rows, basis)| {
            let Ok(g) = norden_projection(&rows, &std_j) else {
                return Ok(());
            };
            let (alg, g, j) = change_basis(&semidirect(&empty, &a), &g, &std_j, &basis).unwrap();
            if properties(&alg, &g, &j)? {
                w3_random.set(w3_random.get() + 1);
            }
            Ok(())
        },
    );
    let mut runner = TestRunner::new(config);
    let family = runner.run(&(prop::array::uniform4(-3i64..=3), invertible()), |(l, basis)| {
        let (alg, g, j) = build_family(&FamilyParams::numeric(l));
        let (alg, g, j) = change_basis(&alg, &g, &j, &basis).unwrap();
        prop_assert!(
            properties(&alg, &g, &j)?,
            "family instance not quasi-Kaehler after basis change"
        );
        Ok(())
    });
    match (random, family) {
        (Ok(()), Ok(())) => Ok(format!(
            "48 random semidirect/Norden inputs ({} in W3) and 48 family inputs under basis change",
            w3_random.get()
        )),
        (r, f) => Err(format!("random: {r:?}; family: {f:?}")),
    }
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("family validity", criterion_1),
        ("F and F~ tables", criterion_2),
        ("classification", criterion_3),
        ("curvature table", criterion_4),
        ("transformation theorems", criterion_5),
        ("invariance", criterion_6),
        ("norms and scalar curvatures", criterion_7),
        ("Weyl tensors", criterion_8),
        ("isotropic scenarios", criterion_9),
        ("property suites", criterion_10),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail}", n + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {detail}", n + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
