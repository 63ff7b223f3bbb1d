//! The Bell-experiment variables on a finite phi-space of sign tuples
//! `(A, A', B, B') ∈ {±1}⁴`, with `θ = (A, B)`, `η = (A, B')`, `λ = (A', B)`.

use std::sync::Arc;

use serde_json::json;

use crate::error::Result;
use crate::groupaction::{close_generators, GroupAction, Permutation};
use crate::report::Report;
use crate::varlattice::{
    check_theorem3, is_maximal, is_related, PhiSpace, Theorem3Status, Variable, VariableSystem,
};

const COORDS: [&str; 4] = ["A", "A'", "B", "B'"];

#[derive(Debug, Clone)]
pub struct BellVariables {
    pub phi: Arc<PhiSpace>,
    tuples: Vec<[i8; 4]>,
    pub theta: Variable,
    pub eta: Variable,
    pub lambda: Variable,
    /// Exchanges `B` and `B'` ("rotate b onto b'").
    pub swap_b: Permutation,
    /// Exchanges `A` and `A'`.
    pub swap_a: Permutation,
}

fn sign_str(s: i8) -> char {
    if s > 0 {
        '+'
    } else {
        '-'
    }
}

impl BellVariables {
    pub fn new() -> Self {
        let mut tuples = Vec::with_capacity(16);
        for a in [1i8, -1] {
            for a2 in [1i8, -1] {
                for b in [1i8, -1] {
                    for b2 in [1i8, -1] {
                        tuples.push([a, a2, b, b2]);
                    }
                }
            }
        }
        let names: Vec<String> = tuples
            .iter()
            .map(|t| t.iter().map(|&s| sign_str(s)).collect())
            .collect();
        let phi = Arc::new(PhiSpace::new(names).expect("distinct tuples"));
        let pair = |name: &str, i: usize, j: usize| {
            Variable::from_fn(name, &phi, |p, _| {
                format!("({:+},{:+})", tuples[p][i], tuples[p][j])
            })
        };
        let theta = pair("theta", 0, 2);
        let eta = pair("eta", 0, 3);
        let lambda = pair("lambda", 1, 2);
        let index_of = |t: [i8; 4]| tuples.iter().position(|u| *u == t).expect("tuple exists");
        let swap = |i: usize, j: usize| {
            let image = tuples
                .iter()
                .map(|t| {
                    let mut u = *t;
                    u.swap(i, j);
                    index_of(u)
                })
                .collect();
            Permutation::new(image).expect("coordinate swap is a bijection")
        };
        let swap_b = swap(2, 3);
        let swap_a = swap(0, 1);
        Self {
            phi,
            tuples,
            theta,
            eta,
            lambda,
            swap_b,
            swap_a,
        }
    }

    /// The coordinate variable `A`, `A'`, `B` or `B'`.
    pub fn coordinate(&self, index: usize) -> Variable {
        Variable::from_fn(COORDS[index], &self.phi, |p, _| {
            format!("{:+}", self.tuples[p][index])
        })
    }

    /// The group generated by the `B ↔ B'` exchange.
    pub fn declared_group(&self) -> GroupAction {
        close_generators(16, std::slice::from_ref(&self.swap_b)).expect("order 2")
    }

    /// The group generated by both exchanges.
    pub fn extended_group(&self) -> GroupAction {
        close_generators(16, &[self.swap_a.clone(), self.swap_b.clone()]).expect("order 4")
    }

    /// Accessible generators `θ` and `η` with the declared group.
    pub fn system(&self) -> VariableSystem {
        VariableSystem::new(
            Arc::clone(&self.phi),
            vec![self.theta.clone(), self.eta.clone()],
            Some(Arc::new(self.declared_group())),
        )
        .expect("same phi-space")
    }
}

impl Default for BellVariables {
    fn default() -> Self {
        Self::new()
    }
}

fn witness(group: &GroupAction, k: Option<usize>) -> serde_json::Value {
    match k {
        Some(i) => json!(group.element(i).as_slice()),
        None => serde_json::Value::Null,
    }
}

/// Builds the sign-tuple system, searches relatedness witnesses in the
/// declared group, and runs the related-variables check on `(θ, η, λ)`.
pub fn theorem3_demo() -> Result<Report> {
    let bell = BellVariables::new();
    let system = bell.system();
    let group = system.group();
    let mut report = Report::new("theorem3_demo");
    report
        .input("phi_points", bell.phi.points())
        .input("generators", ["theta=(A,B)", "eta=(A,B')"])
        .input("group_generators", [bell.swap_b.as_slice()]);

    let theta_max = is_maximal(&bell.theta, &system)?;
    let eta_max = is_maximal(&bell.eta, &system)?;
    report.check(
        "theta is maximal",
        theta_max,
        "no generator strictly refines (A,B)",
    );
    report.check(
        "eta is maximal",
        eta_max,
        "no generator strictly refines (A,B')",
    );

    let theta_eta = is_related(&bell.theta, &bell.eta, group)?;
    report.check(
        "theta and eta are related by the B<->B' exchange",
        theta_eta.map(|k| group.element(k)) == Some(&bell.swap_b),
        format!(
            "witness {:?}",
            theta_eta.map(|k| group.element(k).as_slice())
        ),
    );

    let eta_lambda = is_related(&bell.eta, &bell.lambda, group)?;
    report.check(
        "lambda is unrelated to eta in the declared group",
        eta_lambda.is_none(),
        format!("searched {} elements", group.order()),
    );

    let theorem = check_theorem3(&system, &bell.theta, &bell.eta, &bell.lambda)?;
    report.check(
        "lambda is not a maximal accessible variable",
        !theorem.lambda_maximal,
        format!(
            "accessible: {}, maximal: {}",
            theorem.lambda_accessible, theorem.lambda_maximal
        ),
    );
    report.check(
        "checker reports no counterexample",
        theorem.status != Theorem3Status::Counterexample,
        format!("{:?}", theorem.status),
    );

    // relatedness across the group generated by both exchanges
    let extended = bell.extended_group();
    let theta_lambda_ext = is_related(&bell.theta, &bell.lambda, &extended)?;
    let eta_lambda_ext = is_related(&bell.eta, &bell.lambda, &extended)?;
    let with_lambda = VariableSystem::new(
        Arc::clone(&bell.phi),
        vec![bell.theta.clone(), bell.eta.clone(), bell.lambda.clone()],
        Some(Arc::new(extended.clone())),
    )?;

    report
        .result("theorem3", &theorem)
        .result(
            "witnesses_declared_group",
            json!({
                "theta->eta": witness(group, theta_eta),
                "theta->lambda": witness(group, is_related(&bell.theta, &bell.lambda, group)?),
                "eta->lambda": witness(group, eta_lambda),
            }),
        )
        .result(
            "witnesses_extended_group",
            json!({
                "order": extended.order(),
                "theta->lambda": witness(&extended, theta_lambda_ext),
                "eta->lambda": witness(&extended, eta_lambda_ext),
            }),
        )
        .result(
            "lambda_maximal_if_declared_accessible",
            is_maximal(&bell.lambda, &with_lambda)?,
        );
    for (name, v) in [
        ("theta", theta_max),
        ("eta", eta_max),
        ("lambda", theorem.lambda_maximal),
    ] {
        report.row("maximal", name, if v { 1.0 } else { 0.0 });
    }
    Ok(report)
}
