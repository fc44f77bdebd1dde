//! Exceptional-curve configurations on surfaces.

mod classify;
mod graph;
mod narrow;

pub use classify::{
    classify_subset, enumerate_subsets, SubsetClassification, SubsetInventory, SubsetVerdict,
    DEFAULT_MAX_SUBSET,
};
pub use graph::{CurveGraph, DistanceMode};
pub use narrow::max_pair_ratio;
pub use narrow::{
    build_ample_candidate, narrow_parts_search, ratio_bound, AmpleCandidate, NarrowClause,
    NarrowPartsResult, NARROW_SEARCH_LIMIT,
};

use std::collections::BTreeSet;

use num_integer::Integer as _;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{self, Int, Rational};
use crate::lattice::{self, GramMatrix, RayVector, Signature};

/// Labeled curve classes with their intersection matrix.
///
/// Diagonal entries are negative and off-diagonal entries nonnegative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    labels: Vec<String>,
    gram: GramMatrix,
    canonical: Option<Vec<i64>>,
    k_squared: Option<i64>,
}

impl Configuration {
    pub fn new(labels: Vec<String>, gram: GramMatrix, canonical: Option<Vec<i64>>) -> Result<Self> {
        let n = gram.dim();
        if labels.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: labels.len() });
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        for i in 0..n {
            let e2 = gram.get(i, i);
            if e2 >= 0 {
                return Err(Error::NonNegativeSelfIntersection { index: i, value: e2 });
            }
            for j in 0..n {
                if i != j && gram.get(i, j) < 0 {
                    return Err(Error::NegativePairing { i, j, value: gram.get(i, j) });
                }
            }
        }
        if let Some(k) = &canonical {
            if k.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: k.len() });
            }
            for (i, &ke) in k.iter().enumerate() {
                let numerator = gram.get(i, i) + ke;
                if numerator.is_odd() || numerator / 2 + 1 < 0 {
                    return Err(Error::BadGenus { index: i, numerator });
                }
            }
        }
        Ok(Self { labels, gram, canonical, k_squared: None })
    }

    /// Curves labeled `E1..En`.
    pub fn unlabeled(gram: GramMatrix) -> Result<Self> {
        let labels = (1..=gram.dim()).map(|i| format!("E{i}")).collect();
        Self::new(labels, gram, None)
    }

    pub fn with_k_squared(mut self, k_squared: Option<i64>) -> Self {
        self.k_squared = k_squared;
        self
    }

    pub fn len(&self) -> usize {
        self.gram.dim()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gram(&self) -> &GramMatrix {
        &self.gram
    }

    pub fn canonical(&self) -> Option<&[i64]> {
        self.canonical.as_deref()
    }

    pub fn k_squared(&self) -> Option<i64> {
        self.k_squared
    }

    pub fn self_intersection(&self, i: usize) -> i64 {
        self.gram.get(i, i)
    }

    pub fn pairing(&self, i: usize, j: usize) -> i64 {
        self.gram.get(i, j)
    }

    pub fn graph(&self) -> CurveGraph {
        CurveGraph::from_configuration(self)
    }

    /// Rank of the span of the curve classes modulo numerical equivalence.
    pub fn rank(&self) -> usize {
        self.gram.rank()
    }

    pub fn gram_signature(&self) -> Signature {
        lattice::signature(&self.gram)
    }

    /// Signature of the lattice spanned by the curves: the Gram form with its
    /// radical (linear relations among the classes) divided out.
    pub fn lattice_signature(&self) -> Signature {
        self.gram_signature().nondegenerate_part()
    }

    /// Adds a curve, keeping existing indices.
    pub fn with_curve(&self, label: String, pairings: &[i64], self_intersection: i64, k: Option<i64>) -> Result<Self> {
        let n = self.len();
        if pairings.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: pairings.len() });
        }
        let mut rows = self.gram.rows();
        for (row, &p) in rows.iter_mut().zip(pairings) {
            row.push(p);
        }
        let mut last = pairings.to_vec();
        last.push(self_intersection);
        rows.push(last);
        let mut labels = self.labels.clone();
        labels.push(label);
        let canonical = match (&self.canonical, k) {
            (Some(c), Some(k)) => Some(c.iter().copied().chain([k]).collect()),
            _ => None,
        };
        Configuration::new(labels, GramMatrix::new(rows)?, canonical)
    }

    pub(crate) fn check_subset(&self, subset: &[usize]) -> Result<Vec<usize>> {
        check_subset(subset, self.len())
    }

    /// A basis of the numerical lattice and the coordinates of every curve in it.
    pub fn numerical_lattice(&self) -> NumericalLattice {
        let rows = self.gram.rational_rows();
        let basis = exact::independent_rows(&rows);
        let form = self.gram.principal(&basis);
        let form_rows = form.rational_rows();
        let coords = (0..self.len())
            .map(|j| {
                let rhs: Vec<Rational> = basis.iter().map(|&b| rows[b][j].clone()).collect();
                RayVector(exact::solve(&form_rows, &rhs).expect("basis Gram is nondegenerate"))
            })
            .collect();
        NumericalLattice { basis, form, coords }
    }
}

pub fn check_subset(subset: &[usize], len: usize) -> Result<Vec<usize>> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(Error::DuplicateIndex(w[0]));
        }
    }
    if let Some(&last) = sorted.last() {
        if last >= len {
            return Err(Error::IndexOutOfRange { index: last, len });
        }
    }
    Ok(sorted)
}

/// Coordinates of the curve classes in a basis of curves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericalLattice {
    /// Curve indices forming the basis.
    pub basis: Vec<usize>,
    /// Intersection form restricted to the basis (nondegenerate).
    pub form: GramMatrix,
    /// Coordinates of every curve in the basis.
    pub coords: Vec<RayVector>,
}

impl NumericalLattice {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceInvariants {
    pub rho: usize,
    pub delta: i64,
    pub p: Option<i64>,
    pub per_curve_genus: Option<Vec<i64>>,
}

/// `p_a(E) = (E^2 + K.E)/2 + 1` for every curve.
pub fn arithmetic_genera(c: &Configuration) -> Result<Vec<i64>> {
    let k = c.canonical().ok_or(Error::MissingCanonical)?;
    Ok((0..c.len()).map(|i| (c.self_intersection(i) + k[i]) / 2 + 1).collect())
}

pub fn surface_invariants(c: &Configuration) -> SurfaceInvariants {
    let delta = (0..c.len()).map(|i| -c.self_intersection(i)).max().unwrap_or(0);
    let genera = arithmetic_genera(c).ok();
    SurfaceInvariants {
        rho: c.rank(),
        delta,
        p: genera.as_ref().and_then(|g| g.iter().copied().max()),
        per_curve_genus: genera,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Epsilon {
    pub value: Rational,
    /// Set when the minimum exceeds 1.
    pub warning: Option<String>,
}

/// Minimum of `-E . pi^* K` over the curves of the first kind.
pub fn epsilon_invariant(c: &Configuration, first_kind: &[usize], pullback_k_pairings: &[Rational]) -> Result<Epsilon> {
    if first_kind.is_empty() {
        return Err(Error::EmptySubset);
    }
    check_subset(first_kind, c.len())?;
    if first_kind.len() != pullback_k_pairings.len() {
        return Err(Error::DimensionMismatch { expected: first_kind.len(), got: pullback_k_pairings.len() });
    }
    epsilon_of_values(pullback_k_pairings)
}

pub fn epsilon_of_values(values: &[Rational]) -> Result<Epsilon> {
    if values.is_empty() {
        return Err(Error::EmptySubset);
    }
    for (index, v) in values.iter().enumerate() {
        if !v.is_positive() {
            return Err(Error::NonPositiveValue { index, value: exact::format_rational(v) });
        }
    }
    let value = values.iter().min().cloned().expect("nonempty");
    let warning = (value > exact::rat(1, 1))
        .then(|| format!("epsilon = {} exceeds 1, outside the expected range (0, 1]", exact::format_rational(&value)));
    Ok(Epsilon { value, warning })
}

/// Writes `k = r h` with `r > 0` and `h` primitive.
pub fn fractional_index(k_vector: &[Int]) -> Result<(Rational, Vec<Int>)> {
    let g = exact::content(k_vector);
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    let h = k_vector.iter().map(|x| x / &g).collect();
    Ok((Rational::from_integer(g), h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn config(rows: &[&[i64]], k: Option<&[i64]>) -> Configuration {
        let g = GramMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap();
        let labels = (1..=g.dim()).map(|i| format!("E{i}")).collect();
        Configuration::new(labels, g, k.map(|k| k.to_vec())).unwrap()
    }

    #[test]
    fn validation() {
        let g = GramMatrix::new(vec![vec![-2, -1], vec![-1, -2]]).unwrap();
        assert!(matches!(Configuration::unlabeled(g), Err(Error::NegativePairing { .. })));
        let g = GramMatrix::new(vec![vec![0]]).unwrap();
        assert!(matches!(Configuration::unlabeled(g), Err(Error::NonNegativeSelfIntersection { .. })));
        let g = GramMatrix::new(vec![vec![-2]]).unwrap();
        assert!(matches!(
            Configuration::new(vec!["E".into()], g, Some(vec![1])),
            Err(Error::BadGenus { index: 0, numerator: -1 })
        ));
    }

    #[test]
    fn invariants_by_adjunction() {
        let c = config(&[&[-2]], Some(&[0]));
        let inv = surface_invariants(&c);
        assert_eq!((inv.delta, inv.p, inv.rho), (2, Some(0), 1));
        let c = config(&[&[-4]], Some(&[2]));
        assert_eq!(arithmetic_genera(&c).unwrap(), vec![0]);
        let c = config(&[&[-1]], None);
        assert_eq!(arithmetic_genera(&c), Err(Error::MissingCanonical));
        assert_eq!(surface_invariants(&c).p, None);
    }

    #[test]
    fn epsilon_cases() {
        assert_eq!(epsilon_of_values(&[rat(1, 1)]).unwrap().value, rat(1, 1));
        assert_eq!(epsilon_of_values(&[rat(1, 1), rat(1, 3), rat(2, 3)]).unwrap().value, rat(1, 3));
        assert!(matches!(epsilon_of_values(&[rat(1, 2), rat(-1, 1)]), Err(Error::NonPositiveValue { index: 1, .. })));
        assert!(epsilon_of_values(&[rat(3, 2)]).unwrap().warning.is_some());
        let c = config(&[&[-1]], None);
        assert_eq!(epsilon_invariant(&c, &[], &[]), Err(Error::EmptySubset));
    }

    #[test]
    fn fractional_index_cases() {
        let v = |x: &[i64]| x.iter().map(|&a| int(a)).collect::<Vec<_>>();
        assert_eq!(fractional_index(&v(&[2, 4, 6])).unwrap(), (rat(2, 1), v(&[1, 2, 3])));
        assert_eq!(fractional_index(&v(&[1, 0, 0])).unwrap(), (rat(1, 1), v(&[1, 0, 0])));
        assert_eq!(fractional_index(&v(&[-3, -6])).unwrap(), (rat(3, 1), v(&[-1, -2])));
        assert_eq!(fractional_index(&v(&[0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn numerical_lattice_expresses_relations() {
        // Two curves with identical pairings are numerically equivalent.
        let c = config(&[&[-1, 1, 1], &[1, -1, 1], &[1, 1, -1]], None);
        let nl = c.numerical_lattice();
        assert_eq!(nl.rank(), 3);
        let c = config(&[&[-2, 2], &[2, -2]], None);
        let nl = c.numerical_lattice();
        assert_eq!(nl.basis, vec![0]);
        assert_eq!(nl.coords[1], RayVector::from_ints(&[-1]));
    }
}
