//! Finite permutation groups acting on the points of a phi-space.
//!
//! Groups are held extensionally: every element is listed, together with a
//! full composition table. [`close_generators`] builds such a list from a
//! generating set.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Cap on the number of elements produced by [`close_generators`].
pub const MAX_GROUP_ORDER: usize = 10_000;

/// A permutation of point indices; `image[p]` is `k·p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut hit = vec![false; n];
        for &i in &image {
            if i >= n || hit[i] {
                return Err(Error::NotABijection {
                    index: 0,
                    points: n,
                });
            }
            hit[i] = true;
        }
        Ok(Self(image))
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    /// Builds a permutation from disjoint cycles over `n` points.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut image: Vec<usize> = (0..n).collect();
        for cycle in cycles {
            for (i, &p) in cycle.iter().enumerate() {
                let q = cycle[(i + 1) % cycle.len()];
                if p >= n || q >= n {
                    return Err(Error::NotABijection {
                        index: 0,
                        points: n,
                    });
                }
                image[p] = q;
            }
        }
        Self::new(image)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.0[point]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&p| self.0[p]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }
}

/// A validated finite group of point permutations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    points: usize,
    elements: Vec<Permutation>,
    identity_index: usize,
    // table[i][j] = index of elements[i] ∘ elements[j]
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
}

/// Validates an explicit element list as a group.
///
/// Checks, in order: every element is a bijection on the same point set, the
/// identity is present, the composition of every ordered pair is present, and
/// every element has its inverse in the list. Duplicate entries are dropped.
pub fn verify_group(elements: Vec<Vec<usize>>) -> Result<GroupAction> {
    let points = elements.first().map_or(0, Vec::len);
    if elements.is_empty() {
        return Err(Error::MissingIdentity);
    }
    let mut perms: Vec<Permutation> = Vec::with_capacity(elements.len());
    let mut index: HashMap<Permutation, usize> = HashMap::new();
    for (i, image) in elements.into_iter().enumerate() {
        if image.len() != points {
            return Err(Error::NotABijection { index: i, points });
        }
        let perm =
            Permutation::new(image).map_err(|_| Error::NotABijection { index: i, points })?;
        if !index.contains_key(&perm) {
            index.insert(perm.clone(), perms.len());
            perms.push(perm);
        }
    }
    let identity_index = *index
        .get(&Permutation::identity(points))
        .ok_or(Error::MissingIdentity)?;

    let mut table = vec![vec![0usize; perms.len()]; perms.len()];
    for (i, a) in perms.iter().enumerate() {
        for (j, b) in perms.iter().enumerate() {
            table[i][j] = *index
                .get(&a.compose(b))
                .ok_or(Error::NotClosed { left: i, right: j })?;
        }
    }
    let mut inverses = Vec::with_capacity(perms.len());
    for (i, p) in perms.iter().enumerate() {
        inverses.push(*index.get(&p.inverse()).ok_or(Error::MissingInverse(i))?);
    }
    Ok(GroupAction {
        points,
        elements: perms,
        identity_index,
        table,
        inverses,
    })
}

/// Closes a generating set under composition (breadth first), capped at
/// [`MAX_GROUP_ORDER`] elements.
pub fn close_generators(points: usize, generators: &[Permutation]) -> Result<GroupAction> {
    for (i, g) in generators.iter().enumerate() {
        if g.len() != points {
            return Err(Error::NotABijection { index: i, points });
        }
    }
    let identity = Permutation::identity(points);
    let mut seen: HashMap<Permutation, ()> = HashMap::new();
    let mut order = vec![identity.clone()];
    seen.insert(identity.clone(), ());
    let mut queue = VecDeque::from([identity]);
    while let Some(current) = queue.pop_front() {
        for g in generators {
            let next = g.compose(&current);
            if seen.insert(next.clone(), ()).is_none() {
                if order.len() >= MAX_GROUP_ORDER {
                    return Err(Error::GroupTooLarge(MAX_GROUP_ORDER));
                }
                order.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    verify_group(order.into_iter().map(|p| p.0).collect())
}

impl GroupAction {
    /// The one-element group on `points` points.
    pub fn trivial(points: usize) -> Self {
        verify_group(vec![(0..points).collect()]).expect("identity is a group")
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, index: usize) -> &Permutation {
        &self.elements[index]
    }

    pub fn identity_index(&self) -> usize {
        self.identity_index
    }

    /// Index of `elements[left] ∘ elements[right]`.
    pub fn compose(&self, left: usize, right: usize) -> usize {
        self.table[left][right]
    }

    pub fn inverse(&self, index: usize) -> usize {
        self.inverses[index]
    }

    pub fn index_of(&self, perm: &Permutation) -> Option<usize> {
        self.elements.iter().position(|e| e == perm)
    }

    /// Orbits in order of their smallest point; each orbit is sorted.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut assigned = vec![false; self.points];
        let mut orbits = Vec::new();
        for start in 0..self.points {
            if assigned[start] {
                continue;
            }
            let mut orbit = vec![start];
            assigned[start] = true;
            let mut stack = vec![start];
            while let Some(p) = stack.pop() {
                for e in &self.elements {
                    let q = e.apply(p);
                    if !assigned[q] {
                        assigned[q] = true;
                        orbit.push(q);
                        stack.push(q);
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    /// Indices of the elements fixing `point`.
    pub fn stabilizer(&self, point: usize) -> Vec<usize> {
        (0..self.elements.len())
            .filter(|&i| self.elements[i].apply(point) == point)
            .collect()
    }

    /// Transitive action whose isotropy group at the first point is trivial.
    /// For a transitive action all stabilizers are conjugate, so the base
    /// point does not matter.
    pub fn has_trivial_isotropy(&self) -> bool {
        self.points > 0 && self.is_transitive() && self.stabilizer(0).len() == 1
    }
}

/// Point weights invariant under a group action.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantMeasure {
    weights: Vec<f64>,
}

impl InvariantMeasure {
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn total(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Exact check `weight(k·p) == weight(p)` for every element and point.
    pub fn is_invariant_under(&self, group: &GroupAction) -> bool {
        group.points() == self.weights.len()
            && group.elements().iter().all(|k| {
                (0..self.weights.len()).all(|p| self.weights[k.apply(p)] == self.weights[p])
            })
    }
}

/// Counting measure: weight 1 per point.
pub fn counting_measure(points: usize) -> InvariantMeasure {
    InvariantMeasure {
        weights: vec![1.0; points],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rotation4() -> Vec<Vec<usize>> {
        vec![
            vec![0, 1, 2, 3],
            vec![1, 2, 3, 0],
            vec![2, 3, 0, 1],
            vec![3, 0, 1, 2],
        ]
    }

    #[test]
    fn trivial_group_is_valid() {
        let g = verify_group(vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(g.order(), 1);
        assert!(!g.is_transitive());
        assert_eq!(g.orbits(), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn cyclic_group_of_order_four() {
        let g = verify_group(rotation4()).unwrap();
        assert_eq!(g.order(), 4);
        // 90° ∘ 90° = 180°
        assert_eq!(g.compose(1, 1), 2);
        assert_eq!(g.compose(1, 3), g.identity_index());
        assert_eq!(g.inverse(1), 3);
        assert!(g.is_transitive());
        assert!(g.has_trivial_isotropy());
    }

    #[test]
    fn lone_three_cycle_is_not_closed() {
        let err = verify_group(vec![vec![0, 1, 2], vec![1, 2, 0]]).unwrap_err();
        assert!(matches!(err, Error::NotClosed { .. }), "{err:?}");
    }

    #[test]
    fn missing_identity_and_bad_bijection() {
        assert_eq!(
            verify_group(vec![vec![1, 0]]).unwrap_err(),
            Error::MissingIdentity
        );
        assert!(matches!(
            verify_group(vec![vec![0, 1], vec![0, 0]]).unwrap_err(),
            Error::NotABijection { index: 1, .. }
        ));
        assert!(matches!(
            verify_group(vec![vec![0, 1], vec![0, 1, 2]]).unwrap_err(),
            Error::NotABijection { index: 1, .. }
        ));
    }

    #[test]
    fn disjoint_cycles_give_two_orbits() {
        let a = Permutation::from_cycles(5, &[&[0, 1]]).unwrap();
        let b = Permutation::from_cycles(5, &[&[2, 3, 4]]).unwrap();
        let g = close_generators(5, &[a, b]).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.orbits(), vec![vec![0, 1], vec![2, 3, 4]]);
        assert!(!g.is_transitive());
        assert!(!g.has_trivial_isotropy());
    }

    #[test]
    fn symmetric_group_closure() {
        let swap = Permutation::from_cycles(4, &[&[0, 1]]).unwrap();
        let cycle = Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        let s4 = close_generators(4, &[swap, cycle]).unwrap();
        assert_eq!(s4.order(), 24);
        assert!(s4.is_transitive());
        // |Stab| = 24 / 4
        assert_eq!(s4.stabilizer(2).len(), 6);
        assert!(!s4.has_trivial_isotropy());
    }

    #[test]
    fn counting_measure_is_invariant() {
        let m = counting_measure(4);
        assert_eq!(m.total(), 4.0);
        assert!(m.weights().iter().all(|&w| w == 1.0));
        assert!(m.is_invariant_under(&verify_group(rotation4()).unwrap()));
        assert!(!m.is_invariant_under(&GroupAction::trivial(3)));
    }

    #[test]
    fn nonuniform_measure_can_fail_invariance() {
        let m = InvariantMeasure {
            weights: vec![1.0, 2.0, 1.0, 2.0],
        };
        let g = verify_group(rotation4()).unwrap();
        assert!(!m.is_invariant_under(&g));
        let half = verify_group(vec![vec![0, 1, 2, 3], vec![2, 3, 0, 1]]).unwrap();
        assert!(m.is_invariant_under(&half));
    }
}
