//! Tabulated Born probabilities for spin measurements in a plane, and a
//! structural report on a variable system loaded from a document.

use serde_json::json;

use crate::born::{born_simple, data_expectation, LikelihoodModel};
use crate::document::{group_elements, LoadedSystem};
use crate::error::{Error, Result};
use crate::groupaction::counting_measure;
use crate::hilbert::{
    spectral_decompose, spin_in_plane, DensityOperator, SpectralDecomposition, StateVector,
};
use crate::report::Report;
use crate::varlattice::{
    check_theorem3, equivalent, is_maximal, is_related, less_or_equal, Theorem3Status,
};

const TABLE_TOL: f64 = 1e-10;

fn spin_basis(angle_deg: f64) -> Result<(SpectralDecomposition, StateVector, StateVector)> {
    let d = spectral_decompose(&spin_in_plane(angle_deg.to_radians()))?;
    let down = d.eigenvectors()[0][0].clone();
    let up = d.eigenvectors()[1][0].clone();
    Ok((d, up, down))
}

/// `P(±)` of the spin component at each outcome angle, for the `+1` state of
/// the component at `prepared_deg`. With a likelihood model over `{−1, +1}`
/// the expected noisy reading is also tabulated.
pub fn born_table(
    prepared_deg: f64,
    outcome_degs: &[f64],
    model: Option<&LikelihoodModel>,
) -> Result<Report> {
    if outcome_degs.is_empty() {
        return Err(Error::InvalidSetting("no outcome angles".into()));
    }
    let mut report = Report::new("born_table");
    report
        .input("prepared_deg", prepared_deg)
        .input("outcome_deg", outcome_degs);
    if let Some(m) = model {
        report.input("likelihood", m);
    }

    let (_, prepared, _) = spin_basis(prepared_deg)?;
    let rho = DensityOperator::pure(&prepared);
    let mut worst_sum: f64 = 0.0;
    let mut worst_law: f64 = 0.0;
    let mut worst_data: f64 = 0.0;
    let mut table = Vec::with_capacity(outcome_degs.len());
    for &b in outcome_degs {
        let (decomposition, up, down) = spin_basis(b)?;
        let p_up = born_simple(&prepared, &up)?;
        let p_down = born_simple(&prepared, &down)?;
        let law = ((b - prepared_deg).to_radians() / 2.0).cos().powi(2);
        worst_sum = worst_sum.max((p_up + p_down - 1.0).abs());
        worst_law = worst_law.max((p_up - law).abs());
        let setting = format!("outcome={b}");
        report
            .row(&setting, "P(+)", p_up)
            .row(&setting, "P(-)", p_down);
        let mut entry = json!({ "outcome_deg": b, "p_plus": p_up, "p_minus": p_down });
        if let Some(m) = model {
            let e = data_expectation(&rho, m, &decomposition)?;
            let mut oracle = 0.0;
            for (j, &u) in m.theta_values().iter().enumerate() {
                let p = if u > 0.0 { p_up } else { p_down };
                let mean: f64 = m
                    .data_values()
                    .iter()
                    .enumerate()
                    .map(|(i, z)| z * m.probability(i, j))
                    .sum();
                oracle += p * mean;
            }
            worst_data = worst_data.max((e - oracle).abs());
            report.row(&setting, "E(z)", e);
            entry["data_expectation"] = json!(e);
        }
        table.push(entry);
    }
    report.check(
        "outcome probabilities sum to 1",
        worst_sum <= TABLE_TOL,
        format!("largest deviation {worst_sum:e}"),
    );
    report.check(
        "P(+) follows cos^2 of half the angle",
        worst_law <= TABLE_TOL,
        format!("largest deviation {worst_law:e}"),
    );
    if model.is_some() {
        report.check(
            "data expectation matches the double sum",
            worst_data <= TABLE_TOL,
            format!("largest deviation {worst_data:e}"),
        );
    }
    report.result("table", table);
    Ok(report)
}

/// Names of `(theta, eta, lambda)` for the theorem check.
pub type TheoremTriple<'a> = (&'a str, &'a str, &'a str);

/// Orders, maximality and relatedness of the declared variables, group
/// properties, and optionally the theorem check on a named triple.
pub fn variable_system_check(
    loaded: &LoadedSystem,
    theorem: Option<TheoremTriple<'_>>,
) -> Result<Report> {
    let system = &loaded.system;
    let group = system.group();
    let vars = &loaded.variables;
    let mut report = Report::new("variable_system_check");
    report
        .input("points", system.phi().points())
        .input(
            "variables",
            vars.iter()
                .map(|v| json!({ "name": v.name(), "values": v.labels(), "accessible": v.is_accessible() }))
                .collect::<Vec<_>>(),
        )
        .input("group", group_elements(group));

    // partial order over the declared variables and phi itself
    let mut pool = vars.clone();
    pool.push(system.phi_variable());
    let mut order_ok = true;
    for a in &pool {
        order_ok &= less_or_equal(a, a)?;
        for b in &pool {
            let ab = less_or_equal(a, b)?;
            let ba = less_or_equal(b, a)?;
            order_ok &= !(ab && ba) || equivalent(a, b)?;
            for c in &pool {
                if ab && less_or_equal(b, c)? {
                    order_ok &= less_or_equal(a, c)?;
                }
            }
        }
    }
    report.check(
        "ordering is reflexive, antisymmetric and transitive",
        order_ok,
        format!("{} variables", pool.len()),
    );

    let phi = system.phi_variable();
    let mut bounded = true;
    for v in vars {
        bounded &= less_or_equal(v, &phi)?;
    }
    report.check("phi refines every variable", bounded, "");

    let measure = counting_measure(system.phi().len());
    report.check(
        "counting measure is invariant",
        measure.is_invariant_under(group),
        format!("group order {}", group.order()),
    );

    let mut summary = Vec::with_capacity(vars.len());
    for v in vars {
        let accessible = system.is_accessible(v)?;
        let maximal = accessible && is_maximal(v, system)?;
        report.row(v.name(), "blocks", v.block_count() as f64);
        report.row(v.name(), "maximal", if maximal { 1.0 } else { 0.0 });
        summary.push(json!({
            "name": v.name(),
            "blocks": v.block_count(),
            "accessible": accessible,
            "maximal": maximal,
        }));
    }
    let mut related = Vec::new();
    for (i, a) in vars.iter().enumerate() {
        for b in &vars[i + 1..] {
            if let Some(k) = is_related(a, b, group)? {
                related.push(json!({
                    "from": a.name(),
                    "to": b.name(),
                    "witness": group.element(k).as_slice(),
                }));
            }
        }
    }
    report
        .result("variables", summary)
        .result("related_pairs", related)
        .result("group_order", group.order())
        .result("orbits", group.orbits())
        .result("transitive", group.is_transitive())
        .result("trivial_isotropy", group.has_trivial_isotropy());
    if system.phi().len() <= crate::varlattice::MAX_CLOSURE_POINTS {
        report.result(
            "accessible_partitions",
            system.accessible_partitions()?.len(),
        );
    }

    if let Some((t, e, l)) = theorem {
        let find = |name: &str| {
            loaded
                .variable(name)
                .ok_or_else(|| Error::InvalidSetting(format!("unknown variable `{name}`")))
        };
        let verdict = check_theorem3(system, find(t)?, find(e)?, find(l)?)?;
        report.check(
            "theorem check finds no counterexample",
            verdict.status != Theorem3Status::Counterexample,
            format!("{:?}", verdict.status),
        );
        report.result("theorem3", verdict);
    }
    Ok(report)
}
