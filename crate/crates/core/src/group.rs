//! Explicit group-axiom checks for finite sets of group elements.

use std::collections::HashSet;
use std::fmt::Debug;
use std::hash::Hash;

use crate::perm::Perm;

/// Element of a finite permutation-like group.
pub trait GroupElement: Clone + Eq + Hash + Debug {
    fn identity_of(&self) -> Self;
    fn product(&self, other: &Self) -> Self;
    fn inverted(&self) -> Self;
}

impl GroupElement for Perm {
    fn identity_of(&self) -> Self {
        Perm::identity(self.degree())
    }
    fn product(&self, other: &Self) -> Self {
        self.then(other)
    }
    fn inverted(&self) -> Self {
        self.inverse()
    }
}

/// Why a set failed to be a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupViolation<T> {
    Empty,
    MissingIdentity,
    MissingInverse(T),
    NotClosed(T, T),
}

impl<T: Debug> std::fmt::Display for GroupViolation<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupViolation::Empty => write!(f, "empty set"),
            GroupViolation::MissingIdentity => write!(f, "identity missing"),
            GroupViolation::MissingInverse(a) => write!(f, "inverse of {a:?} missing"),
            GroupViolation::NotClosed(a, b) => write!(f, "product of {a:?} and {b:?} missing"),
        }
    }
}

// Above this size the all-pairs table is replaced by closure of a generating set.
const PAIRWISE_LIMIT: usize = 1024;

/// Checks identity, inverses and closure of `members`.
///
/// Small sets get the full product table. Larger sets are checked by
/// picking a generating set greedily and confirming that the subgroup it
/// generates is exactly `members`, which is equivalent and far cheaper.
pub fn check_group<T: GroupElement>(members: &[T]) -> Result<(), GroupViolation<T>> {
    let Some(first) = members.first() else {
        return Err(GroupViolation::Empty);
    };
    let set: HashSet<&T> = members.iter().collect();
    if !set.contains(&first.identity_of()) {
        return Err(GroupViolation::MissingIdentity);
    }
    for a in members {
        if !set.contains(&a.inverted()) {
            return Err(GroupViolation::MissingInverse(a.clone()));
        }
    }
    if members.len() <= PAIRWISE_LIMIT {
        for a in members {
            for b in members {
                if !set.contains(&a.product(b)) {
                    return Err(GroupViolation::NotClosed(a.clone(), b.clone()));
                }
            }
        }
        return Ok(());
    }

    let mut generated: HashSet<T> = HashSet::new();
    generated.insert(first.identity_of());
    let mut gens: Vec<T> = Vec::new();
    for a in members {
        if generated.contains(a) {
            continue;
        }
        gens.push(a.clone());
        // Re-close from scratch under the enlarged generating set.
        let mut frontier: Vec<T> = generated.iter().cloned().collect();
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let y = x.product(g);
                if !set.contains(&y) {
                    return Err(GroupViolation::NotClosed(x.clone(), g.clone()));
                }
                if generated.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
    }
    debug_assert_eq!(generated.len(), set.len());
    Ok(())
}

/// True when every member of `sub` lies in `sup`.
pub fn is_subset<T: Eq + Hash>(sub: &[T], sup: &[T]) -> bool {
    let sup: HashSet<&T> = sup.iter().collect();
    sub.iter().all(|x| sup.contains(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Perm {
        Perm::from_images(v.iter().copied()).unwrap()
    }

    #[test]
    fn cyclic_group_passes() {
        let g = vec![p(&[0, 1, 2]), p(&[1, 2, 0]), p(&[2, 0, 1])];
        assert_eq!(check_group(&g), Ok(()));
    }

    #[test]
    fn detects_each_violation() {
        assert_eq!(check_group::<Perm>(&[]), Err(GroupViolation::Empty));
        assert_eq!(
            check_group(&[p(&[1, 2, 0])]),
            Err(GroupViolation::MissingIdentity)
        );
        assert!(matches!(
            check_group(&[p(&[0, 1, 2]), p(&[1, 2, 0])]),
            Err(GroupViolation::MissingInverse(_))
        ));
        assert!(matches!(
            check_group(&[p(&[0, 1, 2]), p(&[1, 0, 2]), p(&[0, 2, 1])]),
            Err(GroupViolation::NotClosed(_, _))
        ));
    }

    #[test]
    fn large_symmetric_group_uses_generator_closure() {
        use itertools::Itertools;
        let all: Vec<Perm> = (0..7)
            .permutations(7)
            .map(|v| Perm::from_images(v).unwrap())
            .collect();
        assert!(all.len() > PAIRWISE_LIMIT);
        assert_eq!(check_group(&all), Ok(()));
        // drop one non-identity element; closure must now fail
        let broken: Vec<Perm> = all
            .iter()
            .filter(|q| **q != p(&[1, 0, 2, 3, 4, 5, 6]))
            .cloned()
            .collect();
        assert!(check_group(&broken).is_err());
    }
}
