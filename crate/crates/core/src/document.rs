//! Text form of a variable system.
//!
//! ```toml
//! points = ["p0", "p1", "p2", "p3"]
//! # optional unit vectors, one per point
//! embedding = [[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]]
//! phi_accessible = false
//!
//! [[variables]]
//! name = "theta"
//! values = ["a", "a", "b", "b"]
//! accessible = true          # default; false keeps it out of the generators
//!
//! # either every element of the group ...
//! group = [[0, 1, 2, 3], [1, 2, 3, 0], [2, 3, 0, 1], [3, 0, 1, 2]]
//! # ... or generators closed under composition
//! group_generators = [[1, 2, 3, 0]]
//! ```

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groupaction::{close_generators, verify_group, GroupAction, Permutation};
use crate::varlattice::{PhiSpace, Variable, VariableSystem};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariableEntry {
    pub name: String,
    pub values: Vec<String>,
    #[serde(default = "yes")]
    pub accessible: bool,
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDocument {
    pub points: Vec<String>,
    #[serde(default)]
    pub embedding: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    pub phi_accessible: bool,
    #[serde(default)]
    pub variables: Vec<VariableEntry>,
    #[serde(default)]
    pub group: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub group_generators: Option<Vec<Vec<usize>>>,
}

/// A built system plus every declared variable, accessible or not.
#[derive(Debug, Clone)]
pub struct LoadedSystem {
    pub system: VariableSystem,
    pub variables: Vec<Variable>,
}

impl LoadedSystem {
    pub fn variable(&self, name: &str) -> Option<&Variable> {
        self.variables.iter().find(|v| v.name() == name)
    }
}

impl SystemDocument {
    pub fn from_toml(text: &str) -> std::result::Result<Self, toml::de::Error> {
        toml::from_str(text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("document serializes")
    }

    pub fn build(&self) -> Result<LoadedSystem> {
        let mut phi = PhiSpace::new(self.points.iter().cloned())?;
        if let Some(e) = &self.embedding {
            phi = phi.with_embedding(e.clone())?;
        }
        let phi = Arc::new(phi);
        let mut variables = Vec::with_capacity(self.variables.len());
        for entry in &self.variables {
            if variables.iter().any(|v: &Variable| v.name() == entry.name) {
                return Err(Error::InvalidVariable {
                    name: entry.name.clone(),
                    reason: "declared twice".into(),
                });
            }
            variables.push(
                Variable::new(&entry.name, &phi, entry.values.iter().cloned())?
                    .with_accessible(entry.accessible),
            );
        }
        let group = match (&self.group, &self.group_generators) {
            (Some(_), Some(_)) => {
                return Err(Error::InvalidPhiSpace(
                    "give either group or group_generators, not both".into(),
                ))
            }
            (Some(elements), None) => Some(verify_group(elements.clone())?),
            (None, Some(gens)) => {
                let gens = gens
                    .iter()
                    .map(|g| Permutation::new(g.clone()))
                    .collect::<Result<Vec<_>>>()?;
                Some(close_generators(phi.len(), &gens)?)
            }
            (None, None) => None,
        };
        if let Some(g) = &group {
            if g.points() != phi.len() {
                return Err(Error::DimensionMismatch {
                    expected: phi.len(),
                    found: g.points(),
                });
            }
        }
        let generators = variables
            .iter()
            .filter(|v| v.is_accessible())
            .cloned()
            .collect();
        let system = VariableSystem::new(Arc::clone(&phi), generators, group.map(Arc::new))?
            .with_phi_accessible(self.phi_accessible);
        Ok(LoadedSystem { system, variables })
    }
}

/// `GroupAction` back to its element list.
pub fn group_elements(group: &GroupAction) -> Vec<Vec<usize>> {
    group
        .elements()
        .iter()
        .map(|p| p.as_slice().to_vec())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const CYCLE: &str = r#"
points = ["n", "e", "s", "w"]
group_generators = [[1, 2, 3, 0]]

[[variables]]
name = "axis"
values = ["ns", "ew", "ns", "ew"]

[[variables]]
name = "hidden"
values = ["n", "e", "s", "w"]
accessible = false
"#;

    #[test]
    fn builds_cycle_system() {
        let loaded = SystemDocument::from_toml(CYCLE).unwrap().build().unwrap();
        assert_eq!(loaded.system.group().order(), 4);
        assert_eq!(loaded.system.generators().len(), 1);
        assert!(!loaded.variable("hidden").unwrap().is_accessible());
    }

    #[test]
    fn round_trips() {
        let doc = SystemDocument::from_toml(CYCLE).unwrap();
        assert_eq!(SystemDocument::from_toml(&doc.to_toml()).unwrap(), doc);
    }

    #[test]
    fn rejects_bad_groups_and_fields() {
        let bad = CYCLE.replace(
            "group_generators = [[1, 2, 3, 0]]",
            "group = [[0, 1, 2, 3], [1, 2, 3, 0]]",
        );
        assert!(matches!(
            SystemDocument::from_toml(&bad).unwrap().build(),
            Err(Error::NotClosed { .. })
        ));
        assert!(SystemDocument::from_toml("points = []\nextra = 1").is_err());
        let short = CYCLE.replace("\"ns\", \"ew\", \"ns\", \"ew\"", "\"ns\"");
        assert!(SystemDocument::from_toml(&short).unwrap().build().is_err());
    }
}
