//! Diagram-Method constants `d`, `C1`, `C2` and the Picard-number bounds they
//! feed.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::config::{enumerate_subsets, Configuration, DistanceMode, SubsetVerdict};
use crate::error::{Error, Result};
use crate::exact::{self, Rational};

/// Published constants used as reference values.
pub mod reference {
    /// `62^2`, the narrow-parts ratio bound.
    pub const NARROW_PARTS_RATIO_BOUND: i64 = 3844;
    /// Picard-number bound for Fano 3-folds with terminal singularities.
    pub const FANO3FOLD_RHO_BOUND: u32 = 7;
    /// Picard-number bound for Calabi-Yau 3-folds.
    pub const CY3_RHO_BOUND: u32 = 40;
    /// Picard-number bound for log del Pezzo surfaces with Du Val singularities.
    pub const DELPEZZO_DUVAL_RHO_BOUND: u32 = 9;
    /// Counts of K3 lattices with finite polyhedral Mori cone and `rho >= 3`,
    /// for `rho = 3, ..., 19` and then `rho >= 20`.
    pub const K3_COUNTS: [u32; 18] = [27, 17, 10, 10, 9, 12, 10, 9, 4, 4, 3, 3, 1, 1, 1, 1, 1, 0];
    /// `C . D(R) = -k` for some curve `C` of a divisorial ray, with `k` in this range.
    pub const SHOKUROV_K_MIN: i64 = 1;
    pub const SHOKUROV_K_MAX: i64 = 3;

    /// `(rho label, count)` rows of the K3 table.
    pub fn k3_rows() -> Vec<(String, u32)> {
        K3_COUNTS
            .iter()
            .enumerate()
            .map(|(i, &c)| (if i + 3 < 20 { (i + 3).to_string() } else { ">=20".to_string() }, c))
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReferenceConstants {
    pub narrow_parts_ratio_bound: i64,
    pub fano3fold_rho_bound: u32,
    pub cy3_rho_bound: u32,
    pub delpezzo_duval_rho_bound: u32,
    pub k3_counts: Vec<(String, u32)>,
    pub shokurov_k_range: (i64, i64),
}

pub fn reference_constants() -> ReferenceConstants {
    use reference::*;
    ReferenceConstants {
        narrow_parts_ratio_bound: NARROW_PARTS_RATIO_BOUND,
        fano3fold_rho_bound: FANO3FOLD_RHO_BOUND,
        cy3_rho_bound: CY3_RHO_BOUND,
        delpezzo_duval_rho_bound: DELPEZZO_DUVAL_RHO_BOUND,
        k3_counts: k3_rows(),
        shokurov_k_range: (SHOKUROV_K_MIN, SHOKUROV_K_MAX),
    }
}

/// Surface configurations count unordered pairs; 3-fold diagrams count
/// ordered pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundMode {
    Surface,
    Cy3,
}

impl fmt::Display for BoundMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundMode::Surface => "surface",
            BoundMode::Cy3 => "cy3",
        })
    }
}

/// Distances between members of a subset, indexed by position; `None` is
/// unreachable. Tables may be asymmetric.
pub type DistanceTable = Vec<Vec<Option<usize>>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiameterSummary {
    pub d: usize,
    /// No subset was available, so `d = 0` carries no information.
    pub vacuous: bool,
    /// Subset with the largest diameter.
    pub witness: Option<Vec<usize>>,
    /// Subsets with an unreachable pair; they do not contribute to `d`.
    pub unbounded: Vec<Vec<usize>>,
}

/// Largest diameter over the given subsets.
pub fn max_diameter(subsets: &[(Vec<usize>, DistanceTable)]) -> DiameterSummary {
    let mut d = 0;
    let mut witness = None;
    let mut unbounded = Vec::new();
    for (s, table) in subsets {
        let diam = table.iter().flatten().try_fold(0usize, |m, x| x.map(|x| m.max(x)));
        match diam {
            Some(x) if witness.is_none() || x > d => {
                d = x;
                witness = Some(s.clone());
            }
            Some(_) => {}
            None => unbounded.push(s.clone()),
        }
    }
    DiameterSummary { d, vacuous: subsets.is_empty(), witness, unbounded }
}

/// `d` for a surface configuration: the largest diameter of a Lanner subset
/// of size at most `max_subset`.
pub fn compute_d(c: &Configuration, max_subset: usize, mode: DistanceMode) -> (DiameterSummary, bool) {
    let inv = enumerate_subsets(c, Some(SubsetVerdict::Lanner), max_subset);
    let graph = c.graph();
    let tables: Vec<_> = inv.subsets.iter().map(|s| (s.subset.clone(), graph.distance_table(&s.subset, mode))).collect();
    (max_diameter(&tables), inv.complete)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountingConstants {
    #[serde(with = "exact::serde_exact::rational")]
    pub c1: Rational,
    #[serde(with = "exact::serde_exact::rational")]
    pub c2: Rational,
    /// Subsets attaining `c1` and `c2` (first in enumeration order).
    pub c1_witness: Option<Vec<usize>>,
    pub c2_witness: Option<Vec<usize>>,
    /// No elliptic subset was available.
    pub vacuous: bool,
}

/// Pairs at distance in `[lo, hi]`: unordered when `ordered` is false.
pub fn count_pairs(table: &DistanceTable, lo: usize, hi: usize, ordered: bool) -> usize {
    let n = table.len();
    let mut count = 0;
    for i in 0..n {
        for j in 0..n {
            if i == j || (!ordered && j < i) {
                continue;
            }
            if table[i][j].is_some_and(|x| lo <= x && x <= hi) {
                count += 1;
            }
        }
    }
    count
}

/// Smallest `C1`, `C2` with `#{pairs at distance in [1,d]} <= C1 #E` and
/// `#{pairs at distance in [d+1, 2d+1]} <= C2 #E` over every given subset.
pub fn counting_constants(subsets: &[(Vec<usize>, DistanceTable)], d: usize, mode: BoundMode) -> CountingConstants {
    let ordered = mode == BoundMode::Cy3;
    let mut c1 = Rational::zero();
    let mut c2 = Rational::zero();
    let mut c1_witness = None;
    let mut c2_witness = None;
    for (s, table) in subsets {
        let size = s.len() as i64;
        let r1 = exact::rat(count_pairs(table, 1, d, ordered) as i64, size);
        let r2 = exact::rat(count_pairs(table, d + 1, 2 * d + 1, ordered) as i64, size);
        if c1_witness.is_none() || r1 > c1 {
            c1 = r1;
            c1_witness = Some(s.clone());
        }
        if c2_witness.is_none() || r2 > c2 {
            c2 = r2;
            c2_witness = Some(s.clone());
        }
    }
    CountingConstants { c1, c2, c1_witness, c2_witness, vacuous: subsets.is_empty() }
}

/// Counting constants of a surface configuration over its elliptic subsets of
/// size at most `max_subset`. The flag reports exhaustive enumeration.
pub fn compute_counting_constants(
    c: &Configuration,
    d: usize,
    max_subset: usize,
    mode: DistanceMode,
) -> (CountingConstants, bool) {
    let inv = enumerate_subsets(c, Some(SubsetVerdict::Elliptic), max_subset);
    let graph = c.graph();
    let tables: Vec<_> = inv.subsets.iter().map(|s| (s.subset.clone(), graph.distance_table(&s.subset, mode))).collect();
    (counting_constants(&tables, d, BoundMode::Surface), inv.complete)
}

fn check_nonnegative(c1: &Rational, c2: &Rational) -> Result<()> {
    for v in [c1, c2] {
        if v.is_negative() {
            return Err(Error::NegativeConstant(exact::format_rational(v)));
        }
    }
    Ok(())
}

/// `96 (C1 + C2/3) + 68`, a strict upper bound for the Picard number of the
/// right resolution of a surface.
pub fn surface_rank_bound(c1: &Rational, c2: &Rational) -> Result<Rational> {
    check_nonnegative(c1, c2)?;
    Ok(exact::rat(96, 1) * (c1 + c2 / exact::rat(3, 1)) + exact::rat(68, 1))
}

/// `(16/3) C1 + 4 C2 + 6`, an upper bound for the Picard number of a 3-fold.
pub fn threefold_rank_bound(c1: &Rational, c2: &Rational) -> Result<Rational> {
    check_nonnegative(c1, c2)?;
    Ok(exact::rat(16, 3) * c1 + exact::rat(4, 1) * c2 + exact::rat(6, 1))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundOptions {
    pub max_subset: usize,
    pub d: Option<usize>,
    pub c1: Option<Rational>,
    pub c2: Option<Rational>,
    pub distance_mode: DistanceMode,
}

impl Default for BoundOptions {
    fn default() -> Self {
        Self {
            max_subset: crate::config::DEFAULT_MAX_SUBSET,
            d: None,
            c1: None,
            c2: None,
            distance_mode: DistanceMode::Induced,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub mode: BoundMode,
    /// Rank of the configuration, when known.
    pub rho: Option<usize>,
    pub max_subset: usize,
    pub distance_mode: DistanceMode,
    /// Where the minimal non-elliptic subsets came from.
    pub nonelliptic_source: String,
    pub nonelliptic_count: usize,
    pub elliptic_count: usize,
    pub enumeration_complete: bool,
    pub d: usize,
    pub d_overridden: bool,
    pub d_vacuous: bool,
    #[serde(with = "exact::serde_exact::rational")]
    pub c1: Rational,
    #[serde(with = "exact::serde_exact::rational")]
    pub c2: Rational,
    pub c1_overridden: bool,
    pub c2_overridden: bool,
    pub counting_vacuous: bool,
    #[serde(with = "exact::serde_exact::rational")]
    pub surface_bound: Rational,
    #[serde(with = "exact::serde_exact::rational")]
    pub threefold_bound: Rational,
    /// `rho < surface_bound` (surface) or `rho <= threefold_bound` (cy3).
    pub consistent: Option<bool>,
    pub caveats: Vec<String>,
}

impl BoundReport {
    /// The bound that applies to the report's mode.
    pub fn applicable_bound(&self) -> &Rational {
        match self.mode {
            BoundMode::Surface => &self.surface_bound,
            BoundMode::Cy3 => &self.threefold_bound,
        }
    }
}

/// Inputs gathered by a mode-specific driver.
pub struct BoundInputs {
    pub mode: BoundMode,
    pub rho: Option<usize>,
    pub nonelliptic_source: String,
    pub nonelliptic: Vec<(Vec<usize>, DistanceTable)>,
    pub elliptic: Vec<(Vec<usize>, DistanceTable)>,
    pub enumeration_complete: bool,
    pub extra_caveats: Vec<String>,
}

/// Combines enumerated subsets and overrides into a report.
pub fn assemble_report(inputs: BoundInputs, opts: &BoundOptions) -> Result<BoundReport> {
    let diam = max_diameter(&inputs.nonelliptic);
    let d = opts.d.unwrap_or(diam.d);
    let counting = counting_constants(&inputs.elliptic, d, inputs.mode);
    let c1 = opts.c1.clone().unwrap_or(counting.c1.clone());
    let c2 = opts.c2.clone().unwrap_or(counting.c2.clone());
    let surface_bound = surface_rank_bound(&c1, &c2)?;
    let threefold_bound = threefold_rank_bound(&c1, &c2)?;
    let consistent = inputs.rho.map(|rho| {
        let r = exact::rat(rho as i64, 1);
        match inputs.mode {
            BoundMode::Surface => r < surface_bound,
            BoundMode::Cy3 => r <= threefold_bound,
        }
    });
    let mut caveats = Vec::new();
    if !inputs.enumeration_complete {
        caveats.push(format!(
            "subsets enumerated only up to size {}: d, C1, C2 are lower estimates of the true constants",
            opts.max_subset
        ));
    }
    if opts.d.is_none() && diam.vacuous {
        caveats.push(format!("no {} found: d = 0 is vacuous", inputs.nonelliptic_source));
    }
    if !diam.unbounded.is_empty() && opts.d.is_none() {
        caveats.push(format!("{} subsets with unreachable pairs were left out of d", diam.unbounded.len()));
    }
    if counting.vacuous && (opts.c1.is_none() || opts.c2.is_none()) {
        caveats.push("no elliptic subsets found: C1 = C2 = 0 is vacuous".into());
    }
    for (flag, name) in [(opts.d.is_some(), "d"), (opts.c1.is_some(), "C1"), (opts.c2.is_some(), "C2")] {
        if flag {
            caveats.push(format!("{name} overridden by the caller"));
        }
    }
    caveats.push(match inputs.mode {
        BoundMode::Surface => "surface mode counts unordered pairs {E1,E2}; cy3 mode counts ordered pairs".into(),
        BoundMode::Cy3 => "cy3 mode counts ordered pairs (R1,R2); surface mode counts unordered pairs".into(),
    });
    caveats.extend(inputs.extra_caveats);
    Ok(BoundReport {
        mode: inputs.mode,
        rho: inputs.rho,
        max_subset: opts.max_subset,
        distance_mode: opts.distance_mode,
        nonelliptic_source: inputs.nonelliptic_source,
        nonelliptic_count: inputs.nonelliptic.len(),
        elliptic_count: inputs.elliptic.len(),
        enumeration_complete: inputs.enumeration_complete,
        d,
        d_overridden: opts.d.is_some(),
        d_vacuous: diam.vacuous,
        c1,
        c2,
        c1_overridden: opts.c1.is_some(),
        c2_overridden: opts.c2.is_some(),
        counting_vacuous: counting.vacuous,
        surface_bound,
        threefold_bound,
        consistent,
        caveats,
    })
}

/// Bound report for a surface configuration: Lanner subsets give `d`,
/// elliptic subsets give `C1` and `C2`.
pub fn bound_report_surface(c: &Configuration, opts: &BoundOptions) -> Result<BoundReport> {
    let inv = enumerate_subsets(c, None, opts.max_subset);
    let graph = c.graph();
    let table = |s: &[usize]| graph.distance_table(s, opts.distance_mode);
    let mut lanner = Vec::new();
    let mut elliptic = Vec::new();
    for s in &inv.subsets {
        match s.verdict {
            SubsetVerdict::Lanner => lanner.push((s.subset.clone(), table(&s.subset))),
            SubsetVerdict::Elliptic => elliptic.push((s.subset.clone(), table(&s.subset))),
            _ => {}
        }
    }
    let inputs = BoundInputs {
        mode: BoundMode::Surface,
        rho: Some(c.rank()),
        nonelliptic_source: "Lanner subsets".into(),
        nonelliptic: lanner,
        elliptic,
        enumeration_complete: inv.complete,
        extra_caveats: vec![format!("distances measured in {} mode", opts.distance_mode)],
    };
    assemble_report(inputs, opts)
}
