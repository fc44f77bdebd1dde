//! Narrow-parts search and the integral ample-candidate construction.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::Configuration;
use crate::bitset::{binomial, combinations};
use crate::cone::dd;
use crate::error::{Error, Result};
use crate::exact::{self, Int, Rational};

/// `62^2`: upper bound for `4 (E_i.E_j)^2 / (E_i^2 E_j^2)` over a narrow part.
pub fn ratio_bound() -> Rational {
    exact::rat(3844, 1)
}

/// Largest number of candidate subsets the search will examine.
pub const NARROW_SEARCH_LIMIT: u128 = 2_000_000;

/// The three certificate clauses of a narrow part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NarrowClause {
    /// The chosen curves generate the numerical lattice.
    Spanning,
    /// Every pairwise ratio is below `62^2`.
    RatioBound,
    /// The diagram of the chosen curves is connected.
    Connected,
}

impl fmt::Display for NarrowClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NarrowClause::Spanning => "curves generate the lattice",
            NarrowClause::RatioBound => "4(Ei.Ej)^2/(Ei^2 Ej^2) < 62^2",
            NarrowClause::Connected => "diagram is connected",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NarrowPartsResult {
    pub success: bool,
    pub rho: usize,
    pub chosen: Vec<usize>,
    #[serde(with = "crate::exact::serde_exact::rational")]
    pub max_ratio: Rational,
    pub connected: bool,
    pub spans: bool,
    /// Clauses the reported subset violates (empty on success).
    pub failed_clauses: Vec<NarrowClause>,
    pub candidates_examined: u128,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

/// `max_{i<j} 4 (E_i.E_j)^2 / (E_i^2 E_j^2)` over the subset; zero for singletons.
pub fn max_pair_ratio(c: &Configuration, subset: &[usize]) -> Rational {
    let mut best = Rational::zero();
    for (a, &i) in subset.iter().enumerate() {
        for &j in &subset[a + 1..] {
            let p = c.pairing(i, j);
            let q = exact::rat(4 * p * p, c.self_intersection(i) * c.self_intersection(j));
            if q > best {
                best = q;
            }
        }
    }
    best
}

fn spans(c: &Configuration, subset: &[usize]) -> bool {
    !c.gram().principal(subset).determinant().is_zero()
}

/// Searches the `rho`-subsets in lexicographic order for one that spans, is
/// connected and has every pair ratio below `62^2`; among those the smallest
/// `(max_ratio, indices)` wins. On failure the best spanning subset is
/// reported with the clauses it violates.
pub fn narrow_parts_search(c: &Configuration) -> Result<NarrowPartsResult> {
    let rho = c.rank();
    let m = c.len();
    let count = binomial(m, rho);
    if count > NARROW_SEARCH_LIMIT {
        return Err(Error::SearchTooLarge { count, limit: NARROW_SEARCH_LIMIT });
    }
    let warning = (rho < 3).then(|| format!("rank {rho} < 3: narrow parts are only meaningful from rank 3 on"));
    let graph = c.graph();
    let bound = ratio_bound();
    let mut success: Option<(Rational, Vec<usize>)> = None;
    let mut fallback: Option<((bool, bool, Rational), Vec<usize>)> = None;
    let mut examined = 0u128;
    for s in combinations(m, rho) {
        examined += 1;
        if !spans(c, &s) {
            continue;
        }
        let connected = graph.is_connected(&s);
        let ratio = max_pair_ratio(c, &s);
        if connected && ratio < bound {
            if success.as_ref().is_none_or(|(r, _)| ratio < *r) {
                success = Some((ratio, s));
            }
        } else {
            let key = (!connected, ratio >= bound, ratio);
            if fallback.as_ref().is_none_or(|(k, _)| key < *k) {
                fallback = Some((key, s));
            }
        }
    }
    if let Some((max_ratio, chosen)) = success {
        return Ok(NarrowPartsResult {
            success: true,
            rho,
            chosen,
            max_ratio,
            connected: true,
            spans: true,
            failed_clauses: Vec::new(),
            candidates_examined: examined,
            warning,
        });
    }
    let Some(((disconnected, over, max_ratio), chosen)) = fallback else {
        return Err(Error::NoSpanningSubset { rank: rho, actual: c.rank() });
    };
    let mut failed_clauses = Vec::new();
    if over {
        failed_clauses.push(NarrowClause::RatioBound);
    }
    if disconnected {
        failed_clauses.push(NarrowClause::Connected);
    }
    Ok(NarrowPartsResult {
        success: false,
        rho,
        chosen,
        max_ratio,
        connected: !disconnected,
        spans: true,
        failed_clauses,
        candidates_examined: examined,
        warning,
    })
}

/// `H = sum a_i E_{basis_i}` with positive integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmpleCandidate {
    pub basis: Vec<usize>,
    #[serde(with = "crate::exact::serde_exact::int_vec")]
    pub coefficients: Vec<Int>,
    #[serde(with = "crate::exact::serde_exact::int")]
    pub h_squared: Int,
    /// `H . E` for every curve of the configuration.
    #[serde(with = "crate::exact::serde_exact::int_vec")]
    pub pairings: Vec<Int>,
}

/// Builds an integral `H` over a spanning basis pairing positively with every
/// curve.
///
/// The feasible region `{a >= 0, (sum a_i E_i) . E >= 0 for all E}` is a
/// polyhedral cone; the sum of its extreme rays is interior whenever the
/// strict problem is feasible, and is scaled to a primitive integer vector.
/// Only numerical positivity against the listed curves is certified.
pub fn build_ample_candidate(c: &Configuration, basis: &[usize]) -> Result<AmpleCandidate> {
    c.check_subset(basis)?;
    let rho = c.rank();
    if basis.len() != rho || !spans(c, basis) {
        return Err(Error::BasisNotSpanning { len: basis.len(), rank: rho });
    }
    let mut constraints: Vec<Vec<Int>> = (0..rho)
        .map(|i| (0..rho).map(|k| Int::from((i == k) as i64)).collect())
        .collect();
    for j in 0..c.len() {
        constraints.push(basis.iter().map(|&b| Int::from(c.pairing(j, b))).collect());
    }
    let cone = dd::extreme_rays(&constraints, rho);
    if cone.rays.is_empty() {
        return Err(Error::Infeasible);
    }
    let sum: Vec<Int> = (0..rho).map(|k| cone.rays.iter().map(|r| &r[k]).sum()).collect();
    let coefficients = exact::primitive(sum);
    let pairings: Vec<Int> = (0..c.len())
        .map(|j| basis.iter().zip(&coefficients).map(|(&b, a)| a * c.pairing(j, b)).sum())
        .collect();
    if coefficients.iter().chain(&pairings).any(|x| !x.is_positive()) {
        return Err(Error::Infeasible);
    }
    let form = c.gram().principal(basis);
    let h_squared = form.pair_int(&coefficients, &coefficients);
    if !h_squared.is_positive() {
        return Err(Error::NonPositiveSquare(h_squared.to_string()));
    }
    Ok(AmpleCandidate { basis: basis.to_vec(), coefficients, h_squared, pairings })
}
