//! Theoretical variables over a finite phi-space.
//!
//! A variable is a total labeling of the phi-points; its information content
//! is the partition it induces. `alpha <= beta` holds exactly when `alpha` is
//! a function of `beta`, i.e. when `beta`'s partition refines `alpha`'s. The
//! accessible variables of a [`VariableSystem`] are its generators together
//! with every coarsening of them.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groupaction::GroupAction;
use crate::partition;

const EMBEDDING_NORM_TOL: f64 = 1e-12;

/// Largest phi-space for which the accessible closure is enumerated.
pub const MAX_CLOSURE_POINTS: usize = 12;

/// The finite range of the inaccessible variable phi.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiSpace {
    points: Vec<String>,
    embedding: Option<Vec<Vec<f64>>>,
}

impl PhiSpace {
    pub fn new<S: Into<String>>(points: impl IntoIterator<Item = S>) -> Result<Self> {
        let points: Vec<String> = points.into_iter().map(Into::into).collect();
        let mut seen = HashMap::new();
        for (i, p) in points.iter().enumerate() {
            if let Some(j) = seen.insert(p.as_str(), i) {
                return Err(Error::InvalidPhiSpace(format!(
                    "point `{p}` appears at positions {j} and {i}"
                )));
            }
        }
        Ok(Self {
            points,
            embedding: None,
        })
    }

    /// Attaches one unit vector (in R^2 or R^3) per point.
    pub fn with_embedding(mut self, vectors: Vec<Vec<f64>>) -> Result<Self> {
        if vectors.len() != self.points.len() {
            return Err(Error::InvalidPhiSpace(format!(
                "{} embedding vectors for {} points",
                vectors.len(),
                self.points.len()
            )));
        }
        let dim = vectors.first().map_or(2, Vec::len);
        for (p, v) in self.points.iter().zip(&vectors) {
            if v.len() != dim || !(2..=3).contains(&v.len()) {
                return Err(Error::InvalidPhiSpace(format!(
                    "embedding of `{p}` must have dimension 2 or 3, consistently"
                )));
            }
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > EMBEDDING_NORM_TOL {
                return Err(Error::InvalidPhiSpace(format!(
                    "embedding of `{p}` has norm {norm}"
                )));
            }
        }
        self.embedding = Some(vectors);
        Ok(self)
    }

    /// Points on the unit circle at the given angles (degrees).
    pub fn from_angles_deg<S: Into<String>>(
        points: impl IntoIterator<Item = S>,
        angles: &[f64],
    ) -> Result<Self> {
        let vectors = angles
            .iter()
            .map(|a| {
                let r = a.to_radians();
                vec![r.cos(), r.sin()]
            })
            .collect();
        Self::new(points)?.with_embedding(vectors)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn index_of(&self, point: &str) -> Option<usize> {
        self.points.iter().position(|p| p == point)
    }

    pub fn embedding(&self) -> Option<&[Vec<f64>]> {
        self.embedding.as_deref()
    }
}

/// A theoretical variable: a total map from phi-points to value labels.
#[derive(Debug, Clone)]
pub struct Variable {
    name: String,
    phi: Arc<PhiSpace>,
    labels: Vec<String>,
    accessible: bool,
    blocks: Vec<usize>,
}

impl PartialEq for Variable {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.labels == other.labels
            && self.accessible == other.accessible
            && same_space(&self.phi, &other.phi)
    }
}

fn same_space(a: &Arc<PhiSpace>, b: &Arc<PhiSpace>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Variable {
    /// Builds an accessible variable from one label per point, in point order.
    pub fn new<S: Into<String>>(
        name: impl Into<String>,
        phi: &Arc<PhiSpace>,
        labels: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let name = name.into();
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() != phi.len() {
            return Err(Error::InvalidVariable {
                name,
                reason: format!("{} labels for {} points", labels.len(), phi.len()),
            });
        }
        let blocks = partition::canonical(&labels);
        Ok(Self {
            name,
            phi: Arc::clone(phi),
            labels,
            accessible: true,
            blocks,
        })
    }

    pub fn from_fn(
        name: impl Into<String>,
        phi: &Arc<PhiSpace>,
        f: impl Fn(usize, &str) -> String,
    ) -> Self {
        let labels: Vec<String> = phi
            .points()
            .iter()
            .enumerate()
            .map(|(i, p)| f(i, p))
            .collect();
        Self::new(name, phi, labels).expect("one label per point")
    }

    /// The identity variable phi: each point its own value. Inaccessible.
    pub fn identity(phi: &Arc<PhiSpace>) -> Self {
        Self::new("phi", phi, phi.points().to_vec())
            .expect("one label per point")
            .with_accessible(false)
    }

    pub fn constant(name: impl Into<String>, phi: &Arc<PhiSpace>, label: &str) -> Self {
        Self::new(name, phi, vec![label; phi.len()]).expect("one label per point")
    }

    pub fn with_accessible(mut self, accessible: bool) -> Self {
        self.accessible = accessible;
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn phi(&self) -> &Arc<PhiSpace> {
        &self.phi
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn value_at(&self, point: usize) -> &str {
        &self.labels[point]
    }

    pub fn is_accessible(&self) -> bool {
        self.accessible
    }

    /// Canonical block index per point.
    pub fn partition(&self) -> &[usize] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        partition::block_count(&self.blocks)
    }

    /// Distinct values in order of first appearance.
    pub fn values(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for (l, &b) in self.labels.iter().zip(&self.blocks) {
            if b == out.len() {
                out.push(l);
            }
        }
        out
    }

    pub fn is_constant(&self) -> bool {
        self.block_count() <= 1
    }

    /// `g ∘ self` for a relabeling `g` of the value set.
    pub fn map_values(&self, name: impl Into<String>, g: impl Fn(&str) -> String) -> Variable {
        let labels: Vec<String> = self.labels.iter().map(|l| g(l)).collect();
        Self::new(name, &self.phi, labels)
            .expect("same point count")
            .with_accessible(self.accessible)
    }

    /// `self ∘ k`: the variable `p ↦ self(k·p)`.
    pub fn precompose(
        &self,
        name: impl Into<String>,
        k: &crate::groupaction::Permutation,
    ) -> Variable {
        let labels: Vec<String> = (0..self.labels.len())
            .map(|p| self.labels[k.apply(p)].clone())
            .collect();
        Self::new(name, &self.phi, labels).expect("same point count")
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {{", self.name)?;
        for (i, (p, l)) in self.phi.points().iter().zip(&self.labels).enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{p}→{l}")?;
        }
        write!(f, "}}")
    }
}

fn check_domain(a: &Variable, b: &Variable) -> Result<()> {
    if same_space(&a.phi, &b.phi) {
        Ok(())
    } else {
        Err(Error::DomainMismatch)
    }
}

/// `alpha <= beta`: alpha is a function of beta.
pub fn less_or_equal(alpha: &Variable, beta: &Variable) -> Result<bool> {
    check_domain(alpha, beta)?;
    Ok(partition::refines(&beta.blocks, &alpha.blocks))
}

/// Same partition, labels ignored.
pub fn equivalent(alpha: &Variable, beta: &Variable) -> Result<bool> {
    check_domain(alpha, beta)?;
    Ok(alpha.blocks == beta.blocks)
}

/// `alpha < beta`: alpha is a non-invertible function of beta.
pub fn strictly_less(alpha: &Variable, beta: &Variable) -> Result<bool> {
    check_domain(alpha, beta)?;
    Ok(partition::refines(&beta.blocks, &alpha.blocks) && alpha.blocks != beta.blocks)
}

/// How value labels are compared when searching for a relating element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RelatedMode {
    /// `eta(p) == theta(k·p)` label for label.
    #[default]
    Strict,
    /// Extension: `eta(p) == g(theta(k·p))` for some bijection `g` of labels.
    UpToRelabeling,
}

/// Finds a group element `k` with `eta(p) == theta(k·p)` for every point.
/// Returns the lowest matching element index.
pub fn is_related(theta: &Variable, eta: &Variable, group: &GroupAction) -> Result<Option<usize>> {
    is_related_with(theta, eta, group, RelatedMode::Strict)
}

pub fn is_related_with(
    theta: &Variable,
    eta: &Variable,
    group: &GroupAction,
    mode: RelatedMode,
) -> Result<Option<usize>> {
    check_domain(theta, eta)?;
    if group.points() != theta.phi.len() {
        return Err(Error::DomainMismatch);
    }
    if partition::block_profile(&theta.blocks) != partition::block_profile(&eta.blocks) {
        return Ok(None);
    }
    let n = theta.labels.len();
    let found = group.elements().iter().position(|k| match mode {
        RelatedMode::Strict => (0..n).all(|p| eta.labels[p] == theta.labels[k.apply(p)]),
        RelatedMode::UpToRelabeling => {
            let moved: Vec<usize> = (0..n).map(|p| theta.blocks[k.apply(p)]).collect();
            partition::canonical(&moved) == eta.blocks
        }
    });
    Ok(found)
}

/// A phi-space with its accessible generators and group.
#[derive(Debug, Clone)]
pub struct VariableSystem {
    phi: Arc<PhiSpace>,
    generators: Vec<Variable>,
    group: Arc<GroupAction>,
    phi_accessible: bool,
}

impl VariableSystem {
    /// Generators are marked accessible. Without a group the trivial one is used.
    pub fn new(
        phi: Arc<PhiSpace>,
        generators: Vec<Variable>,
        group: Option<Arc<GroupAction>>,
    ) -> Result<Self> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if !same_space(&phi, &g.phi) {
                return Err(Error::DomainMismatch);
            }
            gens.push(g.with_accessible(true));
        }
        let group = group.unwrap_or_else(|| Arc::new(GroupAction::trivial(phi.len())));
        if group.points() != phi.len() {
            return Err(Error::DomainMismatch);
        }
        Ok(Self {
            phi,
            generators: gens,
            group,
            phi_accessible: false,
        })
    }

    /// Declares phi itself accessible, which makes every variable accessible.
    pub fn with_phi_accessible(mut self, accessible: bool) -> Self {
        self.phi_accessible = accessible;
        self
    }

    pub fn phi(&self) -> &Arc<PhiSpace> {
        &self.phi
    }

    pub fn generators(&self) -> &[Variable] {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Option<&Variable> {
        self.generators.iter().find(|g| g.name == name)
    }

    pub fn group(&self) -> &GroupAction {
        &self.group
    }

    pub fn phi_variable(&self) -> Variable {
        Variable::identity(&self.phi).with_accessible(self.phi_accessible)
    }

    /// Accessible iff a function of some generator (constants always are).
    pub fn is_accessible(&self, v: &Variable) -> Result<bool> {
        if !same_space(&self.phi, &v.phi) {
            return Err(Error::DomainMismatch);
        }
        if self.phi_accessible || v.is_constant() {
            return Ok(true);
        }
        Ok(self
            .generators
            .iter()
            .any(|g| partition::refines(&g.blocks, &v.blocks)))
    }

    /// The first generator whose partition strictly refines `theta`, if any.
    pub fn refinement_witness(&self, theta: &Variable) -> Result<Option<&Variable>> {
        if !self.is_accessible(theta)? {
            return Err(Error::NotAccessible(theta.name.clone()));
        }
        Ok(self
            .generators
            .iter()
            .find(|g| partition::refines(&g.blocks, &theta.blocks) && g.blocks != theta.blocks))
    }

    /// Canonical partitions of every accessible variable, for phi-spaces of
    /// at most [`MAX_CLOSURE_POINTS`] points.
    pub fn accessible_partitions(&self) -> Result<Vec<Vec<usize>>> {
        let n = self.phi.len();
        if n > MAX_CLOSURE_POINTS {
            return Err(Error::InvalidPhiSpace(format!(
                "closure enumeration is limited to {MAX_CLOSURE_POINTS} points, got {n}"
            )));
        }
        let mut out: Vec<Vec<usize>> = if self.phi_accessible {
            partition::SetPartitions::new(n).collect()
        } else {
            let mut all = vec![vec![0; n]];
            for g in &self.generators {
                all.extend(partition::coarsenings(&g.blocks));
            }
            all
        };
        out.sort();
        out.dedup();
        Ok(out)
    }
}

/// No accessible variable strictly refines `theta`.
pub fn is_maximal(theta: &Variable, system: &VariableSystem) -> Result<bool> {
    if system.phi_accessible {
        return Ok(theta.blocks == Variable::identity(&system.phi).blocks);
    }
    Ok(system.refinement_witness(theta)?.is_none())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PreconditionCheck {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "failed", rename_all = "snake_case")]
pub enum Theorem3Status {
    /// Hypotheses hold and lambda is not a maximal accessible variable.
    Confirmed,
    /// At least one hypothesis fails; lists the failing checks.
    PreconditionFailed(Vec<String>),
    /// Hypotheses hold yet lambda is maximal.
    Counterexample,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Theorem3Report {
    pub theta: String,
    pub eta: String,
    pub lambda: String,
    pub preconditions: Vec<PreconditionCheck>,
    pub lambda_accessible: bool,
    pub lambda_maximal: bool,
    /// Generator strictly refining lambda, when lambda is accessible but not maximal.
    pub refinement_witness: Option<String>,
    pub status: Theorem3Status,
}

impl Theorem3Report {
    pub fn hypotheses_hold(&self) -> bool {
        self.preconditions.iter().all(|c| c.holds)
    }
}

fn maximal_check(name: &str, v: &Variable, system: &VariableSystem) -> Result<PreconditionCheck> {
    let (holds, detail) = if !system.is_accessible(v)? {
        (false, format!("{} is not accessible", v.name))
    } else {
        match system.refinement_witness(v)? {
            None => (
                true,
                format!("no accessible variable strictly refines {}", v.name),
            ),
            Some(w) => (false, format!("{} strictly refines {}", w.name, v.name)),
        }
    };
    Ok(PreconditionCheck {
        name: name.to_owned(),
        holds,
        detail,
    })
}

fn relation_check(
    name: &str,
    from: &Variable,
    to: &Variable,
    group: &GroupAction,
    want_related: bool,
) -> Result<PreconditionCheck> {
    let witness = is_related(from, to, group)?;
    let detail = match witness {
        Some(k) => format!(
            "{}(p) = {}(k·p) with k = element {} {:?}",
            to.name,
            from.name,
            k,
            group.element(k).as_slice()
        ),
        None => format!("no group element relates {} to {}", from.name, to.name),
    };
    Ok(PreconditionCheck {
        name: name.to_owned(),
        holds: witness.is_some() == want_related,
        detail,
    })
}

/// Checks the claim that a variable related to one of two related maximal
/// accessible variables, but unrelated to the other, is not maximal.
///
/// Relatedness is searched in the system's group. The verdict on `lambda` is
/// always computed; the status only asserts it when every hypothesis holds.
pub fn check_theorem3(
    system: &VariableSystem,
    theta: &Variable,
    eta: &Variable,
    lambda: &Variable,
) -> Result<Theorem3Report> {
    for v in [theta, eta, lambda] {
        if !same_space(&system.phi, &v.phi) {
            return Err(Error::DomainMismatch);
        }
    }
    let group = system.group();
    let preconditions = vec![
        maximal_check("theta maximal", theta, system)?,
        maximal_check("eta maximal", eta, system)?,
        relation_check("theta related to eta", theta, eta, group, true)?,
        relation_check("lambda related to theta", theta, lambda, group, true)?,
        relation_check("lambda unrelated to eta", eta, lambda, group, false)?,
    ];

    let lambda_accessible = system.is_accessible(lambda)?;
    let (lambda_maximal, refinement_witness) = if lambda_accessible {
        let w = system.refinement_witness(lambda)?.map(|g| g.name.clone());
        (w.is_none(), w)
    } else {
        (false, None)
    };

    let failed: Vec<String> = preconditions
        .iter()
        .filter(|c| !c.holds)
        .map(|c| c.name.clone())
        .collect();
    let status = if !failed.is_empty() {
        Theorem3Status::PreconditionFailed(failed)
    } else if lambda_maximal {
        Theorem3Status::Counterexample
    } else {
        Theorem3Status::Confirmed
    };

    Ok(Theorem3Report {
        theta: theta.name.clone(),
        eta: eta.name.clone(),
        lambda: lambda.name.clone(),
        preconditions,
        lambda_accessible,
        lambda_maximal,
        refinement_witness,
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupaction::{close_generators, verify_group, Permutation};

    fn abcd() -> Arc<PhiSpace> {
        Arc::new(PhiSpace::new(["a", "b", "c", "d"]).unwrap())
    }

    fn var(phi: &Arc<PhiSpace>, name: &str, labels: &[&str]) -> Variable {
        Variable::new(name, phi, labels.iter().copied()).unwrap()
    }

    #[test]
    fn phi_space_rejects_duplicates_and_bad_embeddings() {
        assert!(PhiSpace::new(["a", "a"]).is_err());
        let p = PhiSpace::new(["a", "b"]).unwrap();
        assert!(p
            .clone()
            .with_embedding(vec![vec![1.0, 0.0], vec![0.5, 0.5]])
            .is_err());
        assert!(p.clone().with_embedding(vec![vec![1.0, 0.0]]).is_err());
        assert!(p
            .with_embedding(vec![vec![1.0, 0.0], vec![0.0, 0.0, 1.0]])
            .is_err());
        let q = PhiSpace::from_angles_deg(["x", "y"], &[30.0, 200.0]).unwrap();
        assert_eq!(q.embedding().unwrap().len(), 2);
    }

    #[test]
    fn variable_must_be_total() {
        let phi = abcd();
        assert!(Variable::new("t", &phi, ["0", "1"]).is_err());
    }

    #[test]
    fn ordering_examples() {
        let phi = abcd();
        let alpha = var(&phi, "alpha", &["0", "0", "1", "1"]);
        let beta = var(&phi, "beta", &["x", "y", "z", "z"]);
        assert!(less_or_equal(&alpha, &beta).unwrap());
        assert!(!less_or_equal(&beta, &alpha).unwrap());

        let c = Variable::constant("c", &phi, "k");
        assert!(less_or_equal(&c, &beta).unwrap());
        assert!(less_or_equal(&alpha, &Variable::identity(&phi)).unwrap());
    }

    #[test]
    fn ordering_matches_function_enumeration() {
        // alpha <= beta iff some map f: values(beta) -> values(alpha) has alpha = f ∘ beta.
        let phi = abcd();
        let alpha = var(&phi, "alpha", &["0", "0", "1", "1"]);
        let beta = var(&phi, "beta", &["x", "y", "z", "z"]);
        let exists_fn = |a: &Variable, b: &Variable| {
            let bv = b.values();
            let av = a.values();
            let total = av.len().pow(bv.len() as u32);
            (0..total).any(|mut code| {
                let mut f = HashMap::new();
                for v in &bv {
                    f.insert(*v, av[code % av.len()]);
                    code /= av.len();
                }
                (0..4).all(|p| f[b.value_at(p)] == a.value_at(p))
            })
        };
        assert!(exists_fn(&alpha, &beta));
        assert!(!exists_fn(&beta, &alpha));
    }

    #[test]
    fn equivalence_examples() {
        let phi = abcd();
        let alpha = var(&phi, "alpha", &["0", "0", "1", "1"]);
        let relabeled = alpha.map_values("alpha2", |l| {
            if l == "0" {
                "one".into()
            } else {
                "zero".into()
            }
        });
        assert!(equivalent(&alpha, &relabeled).unwrap());
        let fine = var(&phi, "beta", &["0", "1", "2", "3"]);
        assert!(!equivalent(&alpha, &fine).unwrap());
        let other = var(&phi, "gamma", &["0", "1", "0", "1"]);
        assert!(!equivalent(&alpha, &other).unwrap());
    }

    #[test]
    fn domain_mismatch_detected() {
        let a = var(&abcd(), "a", &["0", "0", "1", "1"]);
        let other = Arc::new(PhiSpace::new(["w", "x", "y", "z"]).unwrap());
        let b = var(&other, "b", &["0", "0", "1", "1"]);
        assert_eq!(less_or_equal(&a, &b).unwrap_err(), Error::DomainMismatch);
        // structurally equal spaces are the same domain
        let c = var(&abcd(), "c", &["0", "1", "1", "1"]);
        assert!(less_or_equal(&a, &c).is_ok());
    }

    #[test]
    fn maximality_examples() {
        let phi = abcd();
        let theta = var(&phi, "theta", &["0", "0", "1", "1"]);
        let sys = VariableSystem::new(phi.clone(), vec![theta.clone()], None).unwrap();
        assert!(is_maximal(&theta, &sys).unwrap());

        let lambda = var(&phi, "lambda", &["0", "1", "2", "2"]);
        let sys = VariableSystem::new(phi.clone(), vec![lambda.clone()], None).unwrap();
        assert!(!is_maximal(&theta, &sys).unwrap());
        assert_eq!(
            sys.refinement_witness(&theta).unwrap().unwrap().name(),
            "lambda"
        );
        assert!(is_maximal(&lambda, &sys).unwrap());

        let outsider = var(&phi, "o", &["0", "1", "0", "1"]);
        assert_eq!(
            is_maximal(&outsider, &sys).unwrap_err(),
            Error::NotAccessible("o".into())
        );
    }

    #[test]
    fn constants_are_accessible_but_not_maximal() {
        let phi = abcd();
        let c = Variable::constant("c", &phi, "k");
        let empty = VariableSystem::new(phi.clone(), vec![], None).unwrap();
        assert!(empty.is_accessible(&c).unwrap());
        assert!(is_maximal(&c, &empty).unwrap());
        let theta = var(&phi, "theta", &["0", "0", "1", "1"]);
        let sys = VariableSystem::new(phi, vec![theta], None).unwrap();
        assert!(!is_maximal(&c, &sys).unwrap());
    }

    #[test]
    fn phi_is_inaccessible_upper_bound() {
        let phi = abcd();
        let theta = var(&phi, "theta", &["0", "0", "1", "1"]);
        let sys = VariableSystem::new(phi.clone(), vec![theta.clone()], None).unwrap();
        let phi_var = sys.phi_variable();
        assert!(!phi_var.is_accessible());
        assert!(!sys.is_accessible(&phi_var).unwrap());
        assert!(less_or_equal(&theta, &phi_var).unwrap());

        let open = sys.with_phi_accessible(true);
        assert!(!is_maximal(&theta, &open).unwrap());
        assert_eq!(open.accessible_partitions().unwrap().len(), 15);
    }

    #[test]
    fn closure_enumeration_counts_coarsenings() {
        let phi = abcd();
        let g1 = var(&phi, "g1", &["0", "1", "2", "2"]);
        let g2 = var(&phi, "g2", &["0", "0", "1", "2"]);
        let sys = VariableSystem::new(phi, vec![g1, g2], None).unwrap();
        let parts = sys.accessible_partitions().unwrap();
        for p in &parts {
            assert!(sys
                .generators()
                .iter()
                .any(|g| partition::refines(g.partition(), p)));
        }
        // g1 coarsenings: a|b|cd, ab|cd, acd|b, a|bcd, abcd. g2: ab|c|d, abc|d, abd|c, ab|cd, abcd.
        assert_eq!(parts.len(), 8);
    }

    #[test]
    fn relatedness_on_the_spin_plane() {
        // points at 45°, 135°, 225°, 315°
        let phi = Arc::new(
            PhiSpace::from_angles_deg(
                ["p45", "p135", "p225", "p315"],
                &[45.0, 135.0, 225.0, 315.0],
            )
            .unwrap(),
        );
        let sign_cos = |offset: f64| {
            let e = phi.embedding().unwrap().to_vec();
            move |i: usize, _: &str| {
                let r = offset.to_radians();
                let d = e[i][0] * r.cos() + e[i][1] * r.sin();
                if d >= 0.0 {
                    "+1".to_string()
                } else {
                    "-1".to_string()
                }
            }
        };
        let theta = Variable::from_fn("theta", &phi, sign_cos(0.0));
        let eta = Variable::from_fn("eta", &phi, sign_cos(90.0));
        // angle -> 90° - angle: 45↔45, 135↔-45=315, 225↔-135=225
        let reflect = vec![0, 3, 2, 1];
        let group = verify_group(vec![vec![0, 1, 2, 3], reflect.clone()]).unwrap();
        let k = is_related(&theta, &eta, &group).unwrap().unwrap();
        assert_eq!(group.element(k).as_slice(), reflect.as_slice());
        for p in 0..4 {
            assert_eq!(eta.value_at(p), theta.value_at(group.element(k).apply(p)));
        }
        assert_eq!(
            is_related(&theta, &theta, &group).unwrap(),
            Some(group.identity_index())
        );
    }

    #[test]
    fn relatedness_needs_matching_block_profile() {
        let phi = abcd();
        let theta = var(&phi, "theta", &["0", "0", "1", "1"]);
        let odd = var(&phi, "odd", &["0", "0", "0", "1"]);
        let s4 = close_generators(
            4,
            &[
                Permutation::from_cycles(4, &[&[0, 1]]).unwrap(),
                Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(is_related(&theta, &odd, &s4).unwrap(), None);
    }

    #[test]
    fn relaxed_mode_ignores_labels() {
        let phi = abcd();
        let theta = var(&phi, "theta", &["0", "0", "1", "1"]);
        let eta = var(&phi, "eta", &["x", "y", "x", "y"]);
        let s4 = close_generators(
            4,
            &[
                Permutation::from_cycles(4, &[&[0, 1]]).unwrap(),
                Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(is_related(&theta, &eta, &s4).unwrap(), None);
        assert!(
            is_related_with(&theta, &eta, &s4, RelatedMode::UpToRelabeling)
                .unwrap()
                .is_some()
        );
    }

    #[test]
    fn theorem3_reports_failed_hypothesis_for_lambda_equal_theta() {
        let phi = abcd();
        let theta = var(&phi, "theta", &["0", "0", "1", "1"]);
        let eta = var(&phi, "eta", &["0", "1", "0", "1"]);
        let group =
            close_generators(4, &[Permutation::from_cycles(4, &[&[1, 2]]).unwrap()]).unwrap();
        let sys = VariableSystem::new(phi, vec![theta.clone(), eta.clone()], Some(Arc::new(group)))
            .unwrap();
        let lambda = theta.clone().renamed("lambda");
        let report = check_theorem3(&sys, &theta, &eta, &lambda).unwrap();
        assert!(report.preconditions[2].holds, "{:?}", report.preconditions);
        match &report.status {
            Theorem3Status::PreconditionFailed(f) => {
                assert_eq!(f, &vec!["lambda unrelated to eta".to_string()])
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn theorem3_reports_refinement_witness() {
        let phi = abcd();
        let theta = var(&phi, "theta", &["0", "0", "1", "1"]);
        let fine = var(&phi, "fine", &["0", "0", "1", "2"]);
        let lambda = var(&phi, "lambda", &["0", "1", "1", "1"]);
        let sys = VariableSystem::new(phi, vec![theta.clone(), fine.clone()], None).unwrap();
        let lambda = lambda.renamed("lambda");
        let coarse = var(sys.phi(), "coarse", &["0", "0", "0", "1"]);
        let report = check_theorem3(&sys, &theta, &fine, &coarse).unwrap();
        assert!(report.lambda_accessible);
        assert!(!report.lambda_maximal);
        assert_eq!(report.refinement_witness.as_deref(), Some("fine"));
        assert!(matches!(
            report.status,
            Theorem3Status::PreconditionFailed(_)
        ));
        let report = check_theorem3(&sys, &theta, &fine, &lambda).unwrap();
        assert!(!report.lambda_accessible);
    }
}
