use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::Configuration;
use crate::bitset::combinations;
use crate::error::Result;
use crate::lattice::{definiteness, Definiteness};

/// Lanner enumeration default cap on subset size.
pub const DEFAULT_MAX_SUBSET: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubsetVerdict {
    /// Negative definite.
    Elliptic,
    /// Negative semidefinite with a kernel.
    Parabolic,
    /// Minimal among subsets with a positive direction.
    Lanner,
    /// Has a positive direction and contains a smaller such subset.
    HyperbolicNonMinimal,
}

impl SubsetVerdict {
    pub fn is_hyperbolic(self) -> bool {
        matches!(self, SubsetVerdict::Lanner | SubsetVerdict::HyperbolicNonMinimal)
    }
}

impl fmt::Display for SubsetVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SubsetVerdict::Elliptic => "elliptic",
            SubsetVerdict::Parabolic => "parabolic",
            SubsetVerdict::Lanner => "lanner",
            SubsetVerdict::HyperbolicNonMinimal => "hyperbolic-non-minimal",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetClassification {
    pub subset: Vec<usize>,
    pub verdict: SubsetVerdict,
    pub connected: bool,
    /// For hyperbolic subsets: the maximal proper subsets whose definiteness
    /// decided minimality. Having a positive direction is inherited by
    /// supersets, so these are the only proper subsets that need checking.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<Vec<usize>>,
}

fn has_positive_direction(c: &Configuration, subset: &[usize]) -> bool {
    definiteness(&c.gram().principal(subset)) == Definiteness::HasPositiveDirection
}

fn drop_one(subset: &[usize]) -> Vec<Vec<usize>> {
    (0..subset.len())
        .map(|k| subset.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &v)| v).collect())
        .collect()
}

pub fn classify_subset(c: &Configuration, subset: &[usize]) -> Result<SubsetClassification> {
    let subset = c.check_subset(subset)?;
    let connected = c.graph().is_connected(&subset);
    let (verdict, witness) = match definiteness(&c.gram().principal(&subset)) {
        Definiteness::NegativeDefinite => (SubsetVerdict::Elliptic, Vec::new()),
        Definiteness::NegativeSemidefiniteDegenerate => (SubsetVerdict::Parabolic, Vec::new()),
        Definiteness::HasPositiveDirection => {
            let smaller = if subset.len() > 1 { drop_one(&subset) } else { Vec::new() };
            let minimal = smaller.iter().all(|s| !has_positive_direction(c, s));
            let v = if minimal { SubsetVerdict::Lanner } else { SubsetVerdict::HyperbolicNonMinimal };
            (v, smaller)
        }
    };
    Ok(SubsetClassification { subset, verdict, connected, witness })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetInventory {
    pub max_size: usize,
    /// Every subset of the configuration was examined.
    pub complete: bool,
    pub subsets: Vec<SubsetClassification>,
}

/// All subsets of size `<= max_size` whose verdict passes `filter`, ordered by
/// size and then lexicographically.
pub fn enumerate_subsets(c: &Configuration, filter: Option<SubsetVerdict>, max_size: usize) -> SubsetInventory {
    let n = c.len();
    let max_size = max_size.min(n);
    let graph = c.graph();
    let mut subsets = Vec::new();
    let mut hyperbolic_prev: HashSet<Vec<usize>> = HashSet::new();
    for k in 1..=max_size {
        let mut hyperbolic_now = HashSet::new();
        for s in combinations(n, k) {
            let (verdict, witness) = match definiteness(&c.gram().principal(&s)) {
                Definiteness::NegativeDefinite => (SubsetVerdict::Elliptic, Vec::new()),
                Definiteness::NegativeSemidefiniteDegenerate => (SubsetVerdict::Parabolic, Vec::new()),
                Definiteness::HasPositiveDirection => {
                    let smaller = if k > 1 { drop_one(&s) } else { Vec::new() };
                    let minimal = smaller.iter().all(|t| !hyperbolic_prev.contains(t));
                    hyperbolic_now.insert(s.clone());
                    let v = if minimal { SubsetVerdict::Lanner } else { SubsetVerdict::HyperbolicNonMinimal };
                    (v, smaller)
                }
            };
            if filter.is_none_or(|f| f == verdict) {
                let connected = graph.is_connected(&s);
                subsets.push(SubsetClassification { subset: s, verdict, connected, witness });
            }
        }
        hyperbolic_prev = hyperbolic_now;
    }
    SubsetInventory { max_size, complete: max_size == n, subsets }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::GramMatrix;

    fn config(rows: &[&[i64]]) -> Configuration {
        Configuration::unlabeled(GramMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()).unwrap()
    }

    #[test]
    fn verdicts_from_examples() {
        let c = config(&[&[-1]]);
        assert_eq!(classify_subset(&c, &[0]).unwrap().verdict, SubsetVerdict::Elliptic);
        let c = config(&[&[-2, 2], &[2, -2]]);
        assert_eq!(classify_subset(&c, &[0, 1]).unwrap().verdict, SubsetVerdict::Parabolic);
        let c = config(&[&[-2, 3], &[3, -2]]);
        let cl = classify_subset(&c, &[1, 0]).unwrap();
        assert_eq!(cl.verdict, SubsetVerdict::Lanner);
        assert_eq!(cl.subset, vec![0, 1]);
        assert_eq!(cl.witness, vec![vec![1], vec![0]]);
        assert!(cl.connected);
    }

    #[test]
    fn errors() {
        let c = config(&[&[-1]]);
        assert!(classify_subset(&c, &[]).is_err());
        assert!(classify_subset(&c, &[1]).is_err());
        assert!(classify_subset(&c, &[0, 0]).is_err());
    }

    #[test]
    fn non_minimal_hyperbolic() {
        let c = config(&[&[-2, 3, 0], &[3, -2, 0], &[0, 0, -1]]);
        assert_eq!(classify_subset(&c, &[0, 1, 2]).unwrap().verdict, SubsetVerdict::HyperbolicNonMinimal);
    }

    #[test]
    fn a3_chain_is_elliptic() {
        let c = config(&[&[-2, 1, 0], &[1, -2, 1], &[0, 1, -2]]);
        let inv = enumerate_subsets(&c, Some(SubsetVerdict::Elliptic), 3);
        assert!(inv.complete);
        assert_eq!(inv.subsets.len(), 7);
        let singles = enumerate_subsets(&c, Some(SubsetVerdict::Elliptic), 1);
        assert_eq!(singles.subsets.len(), 3);
        assert!(!singles.complete);
    }
}
