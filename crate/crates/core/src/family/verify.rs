use crate::algebra::{Poly, Rational};
use crate::error::Result;
use crate::geometry::{
    connection_difference, curvature_symmetry_residuals, cyclic_sum, difference_identity_rhs, f_prop_residuals,
    ftilde_general_rhs, ftilde_w3_rhs, nablatilde_rhs, tilde_printed_bracket_formula, transfer_lowered, weyl,
    with_j_on_slot, AlmostComplexStructure, LieAlgebra, PairGeometry, SideGeometry, WeylConvention,
};
use crate::report::{Check, Topic, Value, VerificationReport};
use crate::tensor::{Metric, Tensor, Valence};

use super::tables::{expected_tables, Table};
use super::{build_family, g_condition, gtilde_condition, FamilyParams};

/// Run the pipeline on an arbitrary Norden pair and check every identity
/// that holds in general (or under the quasi-Kähler condition when it is
/// met). Computed scalars and flags are reported as quantities.
pub fn verify_model(
    algebra: &LieAlgebra,
    g: &Metric,
    j: &AlmostComplexStructure,
    convention: WeylConvention,
) -> Result<(VerificationReport, PairGeometry)> {
    let pair = PairGeometry::compute(algebra, g, j, convention)?;
    let mut report = VerificationReport::new("model", algebra.space());
    report.convention = Some(convention.name().into());
    model_checks(&pair, &mut report)?;
    model_quantities(&pair, &mut report);
    Ok((report, pair))
}

fn sides(pair: &PairGeometry) -> [(&'static str, &SideGeometry); 2] {
    [("", &pair.base), ("_tilde", &pair.tilde)]
}

fn model_checks(pair: &PairGeometry, r: &mut VerificationReport) -> Result<()> {
    let (alg, j) = (&pair.algebra, &pair.j);
    let (base, tilde) = (&pair.base, &pair.tilde);
    let n = alg.dim() / 2;

    r.push(Check::zero("jacobi", Topic::Validity, alg.jacobi_residual()));
    for (suffix, side) in sides(pair) {
        r.push(Check::zero(
            format!("norden{suffix}"),
            Topic::Validity,
            side.metric.norden_residual(j.tensor())?,
        ));
        let sig = side.metric.signature();
        r.push(Check::compare(
            format!("signature{suffix}"),
            Topic::Validity,
            sig.plus == n && sig.minus == n,
            true,
        ));
    }

    for (suffix, side) in sides(pair) {
        r.push(Check::zero(
            format!("torsion_free{suffix}"),
            Topic::Connection,
            side.connection.torsion_residual(alg)?,
        ));
        r.push(Check::zero(
            format!("metric_parallel{suffix}"),
            Topic::Connection,
            side.connection.covariant_derivative(side.metric.tensor())?,
        ));
        let (sym, jj) = f_prop_residuals(&side.f, j)?;
        r.push(Check::zero(format!("f_symmetric{suffix}"), Topic::Classification, sym));
        r.push(Check::zero(format!("f_j_invariant{suffix}"), Topic::Classification, jj));
    }

    let koszul = pair.paths.koszul.coefficients();
    if let Some(c) = &pair.paths.via_transfer {
        r.push(Check::compare(
            "tilde_connection_via_transfer",
            Topic::Connection,
            c.coefficients().clone(),
            koszul.clone(),
        ));
    }
    if let Some(c) = &pair.paths.via_brackets {
        let printed = tilde_printed_bracket_formula(alg, j)?;
        r.push(Check::compare(
            "tilde_connection_via_brackets",
            Topic::Connection,
            c.coefficients().clone(),
            koszul.clone(),
        ));
        r.push(Check::with_erratum(
            "tilde_connection_bracket_formula",
            Topic::Connection,
            koszul.clone(),
            "E2",
            printed,
            c.coefficients().clone(),
        ));
    }
    let rhs = difference_identity_rhs(&base.f, j)?;
    r.push(Check::with_erratum(
        "connection_difference",
        Topic::Connection,
        connection_difference(&base.connection, &tilde.connection, &base.metric)?,
        "E7",
        rhs.clone(),
        -&rhs,
    ));
    r.push(Check::compare(
        "ftilde_general",
        Topic::Connection,
        tilde.f.clone(),
        ftilde_general_rhs(&base.f, j)?,
    ));
    r.push(Check::compare(
        "cyclic_ftilde",
        Topic::Classification,
        cyclic_sum(&tilde.f)?,
        cyclic_sum(&with_j_on_slot(&base.f, 0, j)?)?,
    ));
    r.push(Check::compare(
        "w3_closure",
        Topic::Classification,
        tilde.flags.w3,
        base.flags.w3,
    ));

    let quasi_kaehler = base.flags.w3;
    if quasi_kaehler {
        r.push(Check::compare(
            "ftilde_quasi_kaehler",
            Topic::Connection,
            tilde.f.clone(),
            ftilde_w3_rhs(&base.f, j)?,
        ));
        r.push(Check::compare(
            "nablatilde_j",
            Topic::Connection,
            tilde.nabla_j.clone(),
            nablatilde_rhs(&base.nabla_j, j)?,
        ));
        // T(y,z,u) = F(Ju,y,z): F with J on its first slot is [u,y,z]
        let fj = with_j_on_slot(&base.f, 0, j)?;
        let rotated = Tensor::from_fn(fj.space(), fj.dim(), Valence::new(0, 3), |i| {
            fj.get(&[i[2], i[0], i[1]]).clone()
        });
        r.push(Check::compare(
            "transfer_lowered",
            Topic::Connection,
            transfer_lowered(&base.transfer, &base.metric)?,
            rotated,
        ));
    }
    r.push(Check::compare(
        "transfer_symmetric",
        Topic::Connection,
        base.transfer.permuted(&[1, 0, 2])?,
        base.transfer.clone(),
    ));

    for (suffix, side) in sides(pair) {
        for (name, res) in curvature_symmetry_residuals(&side.curvature04)? {
            r.push(Check::zero(format!("{name}{suffix}"), Topic::Curvature, res));
        }
    }
    if quasi_kaehler {
        r.push(Check::compare(
            "rtilde_r_plus_q",
            Topic::Curvature,
            tilde.curvature.clone(),
            base.curvature.checked_add(&base.q)?,
        ));
    }
    if quasi_kaehler && tilde.flags.w3 {
        r.push(Check::compare(
            "rtilde_transfer_identity",
            Topic::Curvature,
            tilde.curvature04.clone(),
            pair.curvature_rhs.clone(),
        ));
    }
    if pair.convention == WeylConvention::Standard {
        for (suffix, side) in sides(pair) {
            if let Some(w) = &side.weyl {
                let trace = w.metric_contract(0, 3, side.metric.inverse())?;
                r.push(Check::zero(format!("weyl_traceless{suffix}"), Topic::Curvature, trace));
            }
        }
    }

    if quasi_kaehler {
        r.push(Check::compare(
            "transfer_tilde",
            Topic::Invariants,
            tilde.transfer.clone(),
            -&base.transfer,
        ));
        r.push(Check::compare("q_tilde", Topic::Invariants, tilde.q.clone(), -&base.q));
        r.push(Check::compare(
            "s_invariant",
            Topic::Invariants,
            pair.s_tilde.clone(),
            pair.s.clone(),
        ));
        r.push(Check::compare(
            "p_invariant",
            Topic::Invariants,
            pair.p_tilde.clone(),
            pair.p.clone(),
        ));
    }
    Ok(())
}

fn model_quantities(pair: &PairGeometry, r: &mut VerificationReport) {
    for (suffix, side) in sides(pair) {
        let f = &side.flags;
        for (cls, flag) in [("w0", f.w0), ("w1", f.w1), ("w2", f.w2), ("w3", f.w3)] {
            r.quantity(format!("{cls}{suffix}"), Topic::Classification, flag);
        }
        r.quantity(format!("theta{suffix}"), Topic::Classification, side.theta.clone());
        r.quantity(format!("norm{suffix}"), Topic::Norms, side.norm.clone());
        r.quantity(format!("tau{suffix}"), Topic::Norms, side.scalar.clone());
        r.quantity(format!("R{suffix}"), Topic::Curvature, side.curvature04.clone());
        r.quantity(format!("rho{suffix}"), Topic::Curvature, side.ricci.clone());
        if let Some(w) = &side.weyl {
            r.quantity(format!("W{suffix}"), Topic::Curvature, w.clone());
        }
    }
    r.quantity("T", Topic::Invariants, pair.base.transfer.clone());
    r.quantity("S", Topic::Invariants, pair.s.clone());
    r.quantity("P", Topic::Invariants, pair.p.clone());
}

/// Compare a computed tensor with a printed table: one check per listed
/// component, and one check that every unlisted component vanishes.
fn table_checks(r: &mut VerificationReport, table: &Table, computed: &Tensor, params: &FamilyParams, suffix: &str) {
    for (idx, printed) in &table.entries {
        let name = format!("{}{}", table.component_name(idx), suffix);
        let value = computed.get(idx).clone();
        let printed = params.apply(printed);
        match table.errata.get(idx) {
            Some(e) => {
                r.push(Check::with_erratum(
                    name,
                    Topic::Tables,
                    value,
                    e.id,
                    printed,
                    params.apply(&e.corrected),
                ));
            }
            None => r.push(Check::compare(name, Topic::Tables, value, printed)),
        }
    }
    let stray = Tensor::from_fn(computed.space(), computed.dim(), computed.valence(), |i| {
        if table.entries.contains_key(i) {
            Poly::zero(computed.space())
        } else {
            computed.get(i).clone()
        }
    });
    r.push(Check::zero(
        format!("{}_unlisted{}", table.name, suffix),
        Topic::Tables,
        stray,
    ));
}

/// Whether a scalar vanishes exactly when `s` does: an exact rational
/// multiple of `s` in symbolic mode, equal zero-ness in numeric mode.
fn vanishes_with(p: &Poly, s: &Poly, params: &FamilyParams) -> bool {
    match params {
        FamilyParams::Symbolic => p
            .rational_multiple_of(s)
            .is_some_and(|c| c != Rational::from_integer(0.into())),
        FamilyParams::Numeric(_) => p.is_zero() == s.is_zero(),
    }
}

/// End-to-end run of the family: printed tables, closed forms, every
/// general identity, and the equivalences for the associated metric.
pub fn verify_family(params: &FamilyParams, convention: WeylConvention) -> Result<VerificationReport> {
    let (alg, g, j) = build_family(params);
    let pair = PairGeometry::compute(&alg, &g, &j, convention)?;
    let expected = expected_tables();
    let space = alg.space().clone();
    let mut r = VerificationReport::new("quasi-Kaehler family", &space);
    r.params = Some(params.describe());
    r.convention = Some(convention.name().into());
    let (base, tilde) = (&pair.base, &pair.tilde);

    table_checks(&mut r, &expected.f, &base.f, params, "");
    table_checks(&mut r, &expected.f_tilde, &tilde.f, params, "");
    table_checks(
        &mut r,
        &expected.f_tilde,
        &ftilde_w3_rhs(&base.f, &j)?,
        params,
        "/-F(Jx,y,z)",
    );
    table_checks(&mut r, &expected.r, &base.curvature04, params, "");
    table_checks(&mut r, &expected.r_tilde, &tilde.curvature04, params, "");
    let w_tilde = tilde.weyl.clone().expect("dimension 4");
    table_checks(&mut r, &expected.w_tilde, &w_tilde, params, "");

    let computed_scalars = [
        ("tau", &base.scalar),
        ("tau_tilde", &tilde.scalar),
        ("norm", &base.norm),
        ("norm_tilde", &tilde.norm),
    ];
    for (name, value) in computed_scalars {
        let cf = expected.closed_form(name).expect("closed form listed");
        let printed = params.apply(&cf.printed);
        match &cf.erratum {
            Some(e) => r.push(Check::with_erratum(
                name,
                Topic::ClosedForms,
                value.clone(),
                e.id,
                printed,
                params.apply(&e.corrected),
            )),
            None => r.push(Check::compare(name, Topic::ClosedForms, value.clone(), printed)),
        }
    }
    let ratio = |a: &Poly, b: &Poly| -> Value {
        match a.rational_multiple_of(b) {
            Some(c) => Value::Poly(Poly::constant(&space, c)),
            None => Value::Poly(a.clone()),
        }
    };
    if matches!(params, FamilyParams::Symbolic) {
        let c = |n: i64, d: i64| Poly::constant(&space, Rational::new(n.into(), d.into()));
        r.push(Check::compare(
            "tau/norm",
            Topic::ClosedForms,
            ratio(&base.scalar, &base.norm),
            c(-3, 8),
        ));
        r.push(Check::with_erratum(
            "tau_tilde/norm_tilde",
            Topic::ClosedForms,
            ratio(&tilde.scalar, &tilde.norm),
            "E4",
            c(-5, 8),
            c(5, 8),
        ));
    }

    // g(Λ,Λ) and g~(Λ,Λ) with Λ = l1 X1 + ... + l4 X4
    let lam = params.polys(&space);
    let quarter = Rational::new(1.into(), 4.into());
    r.push(Check::compare(
        "isotropic_cone",
        Topic::Norms,
        g.inner(&lam, &lam),
        base.norm.scale(&quarter),
    ));
    r.push(Check::compare(
        "isotropic_cone_tilde",
        Topic::Norms,
        tilde.metric.inner(&lam, &lam),
        tilde.norm.scale(&quarter),
    ));

    r.push(Check::zero(
        "ad_invariance",
        Topic::Validity,
        alg.ad_invariance_residual(&g)?,
    ));
    r.push(Check::compare(
        "half_bracket_connection",
        Topic::Connection,
        base.connection.coefficients().clone(),
        alg.structure().scale(&Rational::new(1.into(), 2.into())),
    ));
    for (suffix, side) in sides(&pair) {
        r.push(Check::compare(
            format!("quasi_kaehler{suffix}"),
            Topic::Classification,
            side.flags.w3,
            true,
        ));
        r.push(Check::zero(
            format!("theta{suffix}"),
            Topic::Classification,
            side.theta.clone(),
        ));
    }
    let weyl_g = base.weyl.clone().expect("dimension 4");
    r.push(Check::zero("weyl", Topic::Curvature, weyl_g));
    model_checks(&pair, &mut r)?;

    let s = params.apply(&gtilde_condition(&space));
    let q = params.apply(&g_condition(&space));
    r.push(Check::compare(
        "isotropic_g",
        Topic::Norms,
        base.norm.is_zero(),
        q.is_zero(),
    ));
    r.push(Check::compare(
        "isotropic_g_tilde",
        Topic::Norms,
        tilde.norm.is_zero(),
        s.is_zero(),
    ));
    r.push(Check::compare(
        "scalar_flat_iff_isotropic",
        Topic::Norms,
        base.scalar.is_zero(),
        base.norm.is_zero(),
    ));
    r.push(Check::compare(
        "scalar_flat_iff_isotropic_tilde",
        Topic::Norms,
        tilde.scalar.is_zero(),
        tilde.norm.is_zero(),
    ));
    let w_multiple = match params {
        FamilyParams::Symbolic => {
            w_tilde
                .data()
                .iter()
                .all(|p| p.is_zero() || p.rational_multiple_of(&s).is_some())
                && !w_tilde.is_zero()
        }
        FamilyParams::Numeric(_) => w_tilde.is_zero() == s.is_zero(),
    };
    r.push(Check::compare(
        "weyl_tilde_vanishes_with_condition",
        Topic::Curvature,
        w_multiple,
        true,
    ));
    r.push(Check::compare(
        "tau_tilde_vanishes_with_condition",
        Topic::Norms,
        vanishes_with(&tilde.scalar, &s, params),
        true,
    ));
    r.push(Check::compare(
        "norm_tilde_vanishes_with_condition",
        Topic::Norms,
        vanishes_with(&tilde.norm, &s, params),
        true,
    ));
    if matches!(params, FamilyParams::Symbolic) {
        let independent = q.rational_multiple_of(&s).is_none() && s.rational_multiple_of(&q).is_none();
        r.push(Check::compare(
            "scalar_flat_independent",
            Topic::Norms,
            independent,
            true,
        ));
    }

    model_quantities(&pair, &mut r);
    r.quantity("isotropic_condition", Topic::Norms, q);
    r.quantity("isotropic_condition_tilde", Topic::Norms, s);

    for other in [WeylConvention::Standard, WeylConvention::Printed] {
        r.notes.push(weyl_note(&pair, &expected.w_tilde, params, other)?);
    }
    Ok(r)
}

fn weyl_note(pair: &PairGeometry, table: &Table, params: &FamilyParams, convention: WeylConvention) -> Result<String> {
    let w_of = |side: &SideGeometry| weyl(&side.curvature04, &side.ricci, &side.scalar, &side.metric, convention);
    let w = w_of(&pair.base)?;
    let wt = w_of(&pair.tilde)?;
    let bad = wt
        .indices()
        .filter(|i| {
            let want = table
                .entries
                .get(i)
                .map_or_else(|| Poly::zero(wt.space()), |p| params.apply(p));
            *wt.get(i) != want
        })
        .count();
    Ok(format!(
        "weyl convention {}: W = 0 {}; tW table {}",
        convention.name(),
        if w.is_zero() { "holds" } else { "fails" },
        if bad == 0 {
            "reproduced".to_string()
        } else {
            format!("differs in {bad} components")
        }
    ))
}
