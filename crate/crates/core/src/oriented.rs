//! Oriented diagrams of divisorial extremal rays on 3-folds.
//!
//! `t[i][j] = R_i . D(R_j)`; an arrow `R_i -> R_j` exists iff `t[i][j] > 0`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::bitset::combinations;
use crate::bounds::{self, BoundInputs, BoundMode, BoundOptions, BoundReport, DistanceTable};
use crate::cone::{self, ConeDescription};
use crate::config::{check_subset, DistanceMode};
use crate::error::{Error, Result};
use crate::exact::{self, Int, Rational};
use crate::lattice::GramMatrix;

/// Ray classes realizing a diagram inside a rational cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    pub vectors: Vec<Vec<Int>>,
    pub form: GramMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedDiagram {
    labels: Vec<String>,
    divisor_ids: Vec<String>,
    t: Vec<Vec<Rational>>,
    self_k: Vec<i64>,
    realization: Option<Realization>,
}

impl OrientedDiagram {
    /// Validates shapes, `t[i][j] >= 0` off the diagonal and `self_k` in
    /// `1..=3`. Diagonal entries of `t` are not used.
    pub fn new(
        labels: Vec<String>,
        divisor_ids: Vec<String>,
        t: Vec<Vec<Rational>>,
        self_k: Vec<i64>,
        realization: Option<Realization>,
    ) -> Result<Self> {
        let m = labels.len();
        if m == 0 {
            return Err(Error::EmptyMatrix);
        }
        for len in [divisor_ids.len(), t.len(), self_k.len()] {
            if len != m {
                return Err(Error::DimensionMismatch { expected: m, got: len });
            }
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        for (i, row) in t.iter().enumerate() {
            if row.len() != m {
                return Err(Error::NotSquare { row: i, len: row.len(), dim: m });
            }
            for (j, x) in row.iter().enumerate() {
                if i != j && x.is_negative() {
                    return Err(Error::NegativeWeight { i, j, value: exact::format_rational(x) });
                }
            }
        }
        for (index, &k) in self_k.iter().enumerate() {
            if !(bounds::reference::SHOKUROV_K_MIN..=bounds::reference::SHOKUROV_K_MAX).contains(&k) {
                return Err(Error::SelfKOutOfRange { index, value: k });
            }
            let diag = &t[index][index];
            if !diag.is_zero() && *diag != exact::rat(-k, 1) {
                return Err(Error::Invalid(format!(
                    "t[{index}][{index}] = {} must be 0 or -self_k = {}",
                    exact::format_rational(diag),
                    -k
                )));
            }
        }
        if let Some(r) = &realization {
            if r.vectors.len() != m {
                return Err(Error::DimensionMismatch { expected: m, got: r.vectors.len() });
            }
            for v in &r.vectors {
                if v.len() != r.form.dim() {
                    return Err(Error::DimensionMismatch { expected: r.form.dim(), got: v.len() });
                }
                if v.iter().all(Zero::is_zero) {
                    return Err(Error::ZeroVector);
                }
            }
        }
        Ok(Self { labels, divisor_ids, t, self_k, realization })
    }

    /// Rays `R1..Rm` with distinct divisors `D1..Dm` and `self_k = 1`.
    pub fn from_weights(t: Vec<Vec<Rational>>) -> Result<Self> {
        let m = t.len();
        let labels = (1..=m).map(|i| format!("R{i}")).collect();
        let divisors = (1..=m).map(|i| format!("D{i}")).collect();
        Self::new(labels, divisors, t, vec![1; m], None)
    }

    pub fn with_realization(self, realization: Option<Realization>) -> Result<Self> {
        Self::new(self.labels, self.divisor_ids, self.t, self.self_k, realization)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn divisor_ids(&self) -> &[String] {
        &self.divisor_ids
    }

    pub fn weights(&self) -> &[Vec<Rational>] {
        &self.t
    }

    pub fn self_k(&self) -> &[i64] {
        &self.self_k
    }

    pub fn realization(&self) -> Option<&Realization> {
        self.realization.as_ref()
    }

    pub fn t(&self, i: usize, j: usize) -> &Rational {
        &self.t[i][j]
    }

    pub fn arrow(&self, i: usize, j: usize) -> bool {
        i != j && self.t[i][j].is_positive()
    }

    /// `t[i][j] t[j][i]`.
    pub fn product(&self, i: usize, j: usize) -> Rational {
        &self.t[i][j] * &self.t[j][i]
    }

    /// Arrows `i -> j` without a return arrow.
    pub fn single_arrows(&self) -> Vec<(usize, usize)> {
        let m = self.len();
        (0..m)
            .flat_map(|i| (0..m).map(move |j| (i, j)))
            .filter(|&(i, j)| self.arrow(i, j) && !self.arrow(j, i))
            .collect()
    }

    /// Sub-diagram on the given rays, in sorted index order.
    pub fn restrict(&self, subset: &[usize]) -> Result<Self> {
        let s = check_subset(subset, self.len())?;
        let pick = |v: &[String]| s.iter().map(|&i| v[i].clone()).collect::<Vec<_>>();
        Ok(Self {
            labels: pick(&self.labels),
            divisor_ids: pick(&self.divisor_ids),
            t: s.iter().map(|&i| s.iter().map(|&j| self.t[i][j].clone()).collect()).collect(),
            self_k: s.iter().map(|&i| self.self_k[i]).collect(),
            realization: self.realization.as_ref().map(|r| Realization {
                vectors: s.iter().map(|&i| r.vectors[i].clone()).collect(),
                form: r.form.clone(),
            }),
        })
    }

    /// Reorders rays: ray `i` of the result is ray `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let m = self.len();
        if perm.len() != m || check_subset(perm, m)?.len() != m {
            return Err(Error::DimensionMismatch { expected: m, got: perm.len() });
        }
        Ok(Self {
            labels: perm.iter().map(|&i| self.labels[i].clone()).collect(),
            divisor_ids: perm.iter().map(|&i| self.divisor_ids[i].clone()).collect(),
            t: perm.iter().map(|&i| perm.iter().map(|&j| self.t[i][j].clone()).collect()).collect(),
            self_k: perm.iter().map(|&i| self.self_k[i]).collect(),
            realization: self.realization.as_ref().map(|r| Realization {
                vectors: perm.iter().map(|&i| r.vectors[i].clone()).collect(),
                form: r.form.clone(),
            }),
        })
    }

    /// Components of the graph of mutual arrows, each sorted.
    fn mutual_components(&self) -> Vec<Vec<usize>> {
        let m = self.len();
        let mut seen = vec![false; m];
        let mut out = Vec::new();
        for s in 0..m {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for w in 0..m {
                    if !seen[w] && (self.arrow(u, w) || self.arrow(w, u)) {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepACheck {
    pub injective: bool,
    /// Pairs `(i, j)`, `i < j`, sharing a divisor.
    pub collisions: Vec<(usize, usize)>,
}

/// Distinct extremal rays must have distinct divisors.
pub fn step_a_check(d: &OrientedDiagram) -> StepACheck {
    let ids = d.divisor_ids();
    let collisions: Vec<(usize, usize)> = (0..ids.len())
        .flat_map(|i| (i + 1..ids.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| ids[i] == ids[j])
        .collect();
    StepACheck { injective: collisions.is_empty(), collisions }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrientedDistances {
    /// `table[i][j]`: shortest directed path from `i` to `j`; `None` when unreachable.
    pub table: DistanceTable,
    /// Largest finite entry.
    pub diameter: usize,
    pub strongly_connected: bool,
    pub unreachable: Vec<(usize, usize)>,
}

fn directed_table(d: &OrientedDiagram, allowed: &[usize], sources: &[usize]) -> DistanceTable {
    let m = d.len();
    let mut ok = vec![false; m];
    for &a in allowed {
        ok[a] = true;
    }
    sources
        .iter()
        .map(|&s| {
            let mut dist = vec![None; m];
            dist[s] = Some(0usize);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let du = dist[u].expect("queued");
                for w in 0..m {
                    if ok[w] && dist[w].is_none() && d.arrow(u, w) {
                        dist[w] = Some(du + 1);
                        queue.push_back(w);
                    }
                }
            }
            sources.iter().map(|&b| dist[b]).collect()
        })
        .collect()
}

pub fn oriented_distance(d: &OrientedDiagram) -> OrientedDistances {
    let all: Vec<usize> = (0..d.len()).collect();
    let table = directed_table(d, &all, &all);
    let mut diameter = 0;
    let mut unreachable = Vec::new();
    for (i, row) in table.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            match x {
                Some(x) => diameter = diameter.max(*x),
                None => unreachable.push((i, j)),
            }
        }
    }
    OrientedDistances { strongly_connected: unreachable.is_empty(), table, diameter, unreachable }
}

/// Directed distances between members of `subset`, through the subset
/// (induced) or through every ray (ambient).
pub fn subset_distance_table(d: &OrientedDiagram, subset: &[usize], mode: DistanceMode) -> DistanceTable {
    match mode {
        DistanceMode::Induced => directed_table(d, subset, subset),
        DistanceMode::Ambient => directed_table(d, &(0..d.len()).collect::<Vec<_>>(), subset),
    }
}

/// Connected elliptic (Dynkin) types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DynkinType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::B(n) => write!(f, "B{n}"),
            DynkinType::C(n) => write!(f, "C{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E6 => f.write_str("E6"),
            DynkinType::E7 => f.write_str("E7"),
            DynkinType::E8 => f.write_str("E8"),
            DynkinType::F4 => f.write_str("F4"),
            DynkinType::G2 => f.write_str("G2"),
        }
    }
}

impl Serialize for DynkinType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Connected minimal non-elliptic shapes without single arrows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ESetPattern {
    /// Two rays with `t12 t21 > 4`.
    Pair,
    /// Chain of three rays, both products in `(0,4)` and summing to more than 4.
    Chain3,
    /// Triangle, all products in `(0,4)` and summing to more than 3.
    Triangle3,
    /// Square of unit products except one edge with product 2.
    SquareOneDouble,
    /// Square with two opposite product-2 edges whose heavier arrows point the
    /// same way across the square.
    SquareTwoParallel,
    /// Square with two opposite product-2 edges whose heavier arrows both run
    /// around the cycle in the same sense.
    SquareTwoCyclic,
    /// Pentagon of unit products except one edge with product 2.
    PentagonOneDouble,
}

impl fmt::Display for ESetPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ESetPattern::Pair => "pair",
            ESetPattern::Chain3 => "chain3",
            ESetPattern::Triangle3 => "triangle3",
            ESetPattern::SquareOneDouble => "square-one-double",
            ESetPattern::SquareTwoParallel => "square-two-parallel",
            ESetPattern::SquareTwoCyclic => "square-two-cyclic",
            ESetPattern::PentagonOneDouble => "pentagon-one-double",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyComponent {
    pub family: DynkinType,
    pub rays: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum DiagramVerdict {
    /// Every mutual-arrow component is a classical Dynkin shape.
    EllipticFamily { name: String, components: Vec<FamilyComponent> },
    ESet { pattern: ESetPattern },
    Unclassified { reason: String },
}

impl DiagramVerdict {
    fn unclassified(reason: impl Into<String>) -> Self {
        DiagramVerdict::Unclassified { reason: reason.into() }
    }

    pub fn is_elliptic(&self) -> bool {
        matches!(self, DiagramVerdict::EllipticFamily { .. })
    }

    pub fn is_e_set(&self) -> bool {
        matches!(self, DiagramVerdict::ESet { .. })
    }

    /// Family name of a connected elliptic diagram.
    pub fn family(&self) -> Option<DynkinType> {
        match self {
            DiagramVerdict::EllipticFamily { components, .. } if components.len() == 1 => Some(components[0].family),
            _ => None,
        }
    }
}

impl fmt::Display for DiagramVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagramVerdict::EllipticFamily { name, .. } => write!(f, "elliptic-family({name})"),
            DiagramVerdict::ESet { pattern } => write!(f, "e-set({pattern})"),
            DiagramVerdict::Unclassified { reason } => write!(f, "unclassified ({reason})"),
        }
    }
}

/// Undirected view of a connected component: edges with their products.
struct Shape {
    verts: Vec<usize>,
    edges: Vec<(usize, usize, Rational)>,
    adj: BTreeMap<usize, Vec<usize>>,
}

impl Shape {
    fn new(d: &OrientedDiagram, verts: &[usize]) -> Self {
        let mut edges = Vec::new();
        let mut adj: BTreeMap<usize, Vec<usize>> = verts.iter().map(|&v| (v, Vec::new())).collect();
        for (a, &i) in verts.iter().enumerate() {
            for &j in &verts[a + 1..] {
                if d.arrow(i, j) {
                    edges.push((i, j, d.product(i, j)));
                    adj.get_mut(&i).expect("vertex").push(j);
                    adj.get_mut(&j).expect("vertex").push(i);
                }
            }
        }
        Self { verts: verts.to_vec(), edges, adj }
    }

    fn degree(&self, v: usize) -> usize {
        self.adj[&v].len()
    }

    /// Vertices of a cycle in traversal order, when the shape is one cycle.
    fn cycle_order(&self) -> Option<Vec<usize>> {
        if self.verts.len() < 3 || self.edges.len() != self.verts.len() || self.verts.iter().any(|&v| self.degree(v) != 2)
        {
            return None;
        }
        let start = self.verts[0];
        let mut order = vec![start];
        let mut prev = start;
        let mut cur = self.adj[&start][0];
        while cur != start {
            order.push(cur);
            let next = *self.adj[&cur].iter().find(|&&w| w != prev).expect("degree two");
            prev = cur;
            cur = next;
        }
        (order.len() == self.verts.len()).then_some(order)
    }
}

fn int_product(p: &Rational) -> Option<i64> {
    if p.is_integer() {
        p.to_integer().try_into().ok()
    } else {
        None
    }
}

fn recognize_component(d: &OrientedDiagram, verts: &[usize]) -> std::result::Result<DynkinType, String> {
    let k = verts.len();
    if k == 1 {
        return Ok(DynkinType::A(1));
    }
    let shape = Shape::new(d, verts);
    if shape.edges.len() != k - 1 {
        return Err("component contains a cycle".into());
    }
    let mut heavy = Vec::new();
    for (i, j, p) in &shape.edges {
        match int_product(p) {
            Some(1) => {}
            Some(2) | Some(3) => heavy.push((*i, *j, int_product(p).expect("integer"))),
            _ => return Err(format!("edge product {} not in {{1,2,3}}", exact::format_rational(p))),
        }
    }
    let max_deg = verts.iter().map(|&v| shape.degree(v)).max().unwrap_or(0);
    if max_deg <= 2 {
        return match heavy.as_slice() {
            [] => Ok(DynkinType::A(k)),
            [(_, _, 3)] if k == 2 => Ok(DynkinType::G2),
            [(_, _, 3)] => Err("product 3 outside a pair".into()),
            [(_, _, _)] if k == 2 => Ok(DynkinType::B(2)),
            [(i, j, _)] => {
                let (leaf, inner) = match (shape.degree(*i), shape.degree(*j)) {
                    (1, _) => (*i, *j),
                    (_, 1) => (*j, *i),
                    _ if k == 4 => return Ok(DynkinType::F4),
                    _ => return Err("product-2 edge inside a chain longer than 4".into()),
                };
                if d.t(inner, leaf) > d.t(leaf, inner) {
                    Ok(DynkinType::B(k))
                } else {
                    Ok(DynkinType::C(k))
                }
            }
            _ => Err("more than one heavy edge".into()),
        };
    }
    if max_deg > 3 || !heavy.is_empty() {
        return Err("branching shape outside the classical list".into());
    }
    let branch: Vec<usize> = verts.iter().copied().filter(|&v| shape.degree(v) == 3).collect();
    if branch.len() != 1 {
        return Err("more than one branch vertex".into());
    }
    let center = branch[0];
    let mut arms: Vec<usize> = shape.adj[&center]
        .iter()
        .map(|&start| {
            let (mut prev, mut cur, mut len) = (center, start, 1);
            while shape.degree(cur) == 2 {
                let next = *shape.adj[&cur].iter().find(|&&w| w != prev).expect("degree two");
                prev = cur;
                cur = next;
                len += 1;
            }
            len
        })
        .collect();
    arms.sort_unstable();
    match arms.as_slice() {
        [1, 1, c] => Ok(DynkinType::D(c + 3)),
        [1, 2, 2] => Ok(DynkinType::E6),
        [1, 2, 3] => Ok(DynkinType::E7),
        [1, 2, 4] => Ok(DynkinType::E8),
        _ => Err(format!("branch arms {arms:?} outside the classical list")),
    }
}

/// Matches the diagram against the classical Dynkin shapes component by
/// component. Unlabeled arrows are read as weight 1 and the products
/// `t_ij t_ji` decide edge multiplicities.
pub fn recognize_elliptic_family(d: &OrientedDiagram) -> DiagramVerdict {
    if !d.single_arrows().is_empty() {
        return DiagramVerdict::unclassified("single arrow present");
    }
    let mut components = Vec::new();
    for comp in d.mutual_components() {
        match recognize_component(d, &comp) {
            Ok(family) => components.push(FamilyComponent { family, rays: comp }),
            Err(reason) => return DiagramVerdict::unclassified(reason),
        }
    }
    let mut names: Vec<String> = components.iter().map(|c| c.family.to_string()).collect();
    names.sort();
    DiagramVerdict::EllipticFamily { name: names.join("+"), components }
}

fn in_open_0_4(p: &Rational) -> bool {
    p.is_positive() && *p < exact::rat(4, 1)
}

/// Matches the whole diagram against the classical Lanner shapes, using the
/// printed strict inequalities.
pub fn recognize_e_set(d: &OrientedDiagram) -> DiagramVerdict {
    if !d.single_arrows().is_empty() {
        return DiagramVerdict::unclassified("single arrow present");
    }
    if d.mutual_components().len() != 1 {
        return DiagramVerdict::unclassified("diagram is disconnected");
    }
    let verts: Vec<usize> = (0..d.len()).collect();
    let shape = Shape::new(d, &verts);
    let products: Vec<&Rational> = shape.edges.iter().map(|e| &e.2).collect();
    let sum: Rational = products.iter().fold(Rational::zero(), |a, p| a + *p);
    let four = exact::rat(4, 1);
    let found = match (d.len(), shape.edges.len()) {
        (2, 1) => (*products[0] > four).then_some(ESetPattern::Pair),
        (3, 2) => (products.iter().all(|p| in_open_0_4(p)) && sum > four).then_some(ESetPattern::Chain3),
        (3, 3) => (products.iter().all(|p| in_open_0_4(p)) && sum > exact::rat(3, 1)).then_some(ESetPattern::Triangle3),
        (4, 4) | (5, 5) => cycle_pattern(d, &shape),
        _ => None,
    };
    match found {
        Some(pattern) => DiagramVerdict::ESet { pattern },
        None => DiagramVerdict::unclassified("no E-set pattern matches"),
    }
}

fn cycle_pattern(d: &OrientedDiagram, shape: &Shape) -> Option<ESetPattern> {
    let order = shape.cycle_order()?;
    let k = order.len();
    let two = exact::rat(2, 1);
    let mut heavy = Vec::new();
    for pos in 0..k {
        let (a, b) = (order[pos], order[(pos + 1) % k]);
        let p = d.product(a, b);
        if p == two {
            heavy.push(pos);
        } else if !p.is_one() {
            return None;
        }
    }
    match (k, heavy.as_slice()) {
        (4, [_]) => Some(ESetPattern::SquareOneDouble),
        (5, [_]) => Some(ESetPattern::PentagonOneDouble),
        (4, [p, q]) if q - p == 2 => {
            let along = |pos: usize| {
                let (a, b) = (order[pos], order[(pos + 1) % k]);
                d.t(a, b) > d.t(b, a)
            };
            if along(*p) == along(*q) {
                Some(ESetPattern::SquareTwoCyclic)
            } else {
                Some(ESetPattern::SquareTwoParallel)
            }
        }
        _ => None,
    }
}

/// NE spanned by the realization vectors.
pub fn realized_mori_cone(d: &OrientedDiagram) -> Result<ConeDescription> {
    let r = d.realization().ok_or(Error::MissingRealization)?;
    ConeDescription::from_generators(&r.vectors, &r.form)
}

/// A subset is elliptic when its rays lie on a proper face of NE.
pub fn elliptic_by_face(d: &OrientedDiagram, ne: &ConeDescription, subset: &[usize]) -> Result<bool> {
    let r = d.realization().ok_or(Error::MissingRealization)?;
    let subset = check_subset(subset, d.len())?;
    let vectors: Vec<Vec<Int>> = subset.iter().map(|&i| r.vectors[i].clone()).collect();
    Ok(cone::vectors_in_proper_face(ne, &vectors))
}

/// Which definition classified a subset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EllipticityRule {
    /// Containment in a proper face of the realized cone.
    FaceContainment,
    /// Classical Dynkin and Lanner shapes of the weights.
    DiagramPatterns,
}

impl fmt::Display for EllipticityRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EllipticityRule::FaceContainment => "face containment",
            EllipticityRule::DiagramPatterns => "diagram patterns",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrientedInventory {
    pub rule: EllipticityRule,
    pub max_size: usize,
    pub complete: bool,
    pub elliptic: Vec<Vec<usize>>,
    pub e_sets: Vec<Vec<usize>>,
}

fn maximal_proper(s: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (0..s.len()).map(move |k| s.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &v)| v).collect())
}

/// Elliptic subsets and E-sets of size at most `max_size`, in (size,
/// lexicographic) order. With a realization, E-sets are the minimal subsets
/// not on a proper face; otherwise both come from the diagram patterns.
pub fn oriented_inventory(d: &OrientedDiagram, max_size: usize) -> Result<OrientedInventory> {
    let m = d.len();
    let max_size = max_size.min(m);
    let mut elliptic = Vec::new();
    let mut e_sets = Vec::new();
    let rule = if d.realization().is_some() { EllipticityRule::FaceContainment } else { EllipticityRule::DiagramPatterns };
    match rule {
        EllipticityRule::FaceContainment => {
            let ne = realized_mori_cone(d)?;
            let mut prev: BTreeSet<Vec<usize>> = BTreeSet::new();
            for k in 1..=max_size {
                let mut now = BTreeSet::new();
                for s in combinations(m, k) {
                    if elliptic_by_face(d, &ne, &s)? {
                        now.insert(s.clone());
                        elliptic.push(s);
                    } else if k == 1 || maximal_proper(&s).all(|t| prev.contains(&t)) {
                        e_sets.push(s);
                    }
                }
                prev = now;
            }
        }
        EllipticityRule::DiagramPatterns => {
            for k in 1..=max_size {
                for s in combinations(m, k) {
                    let sub = d.restrict(&s)?;
                    if recognize_elliptic_family(&sub).is_elliptic() {
                        elliptic.push(s);
                    } else if recognize_e_set(&sub).is_e_set() {
                        e_sets.push(s);
                    }
                }
            }
        }
    }
    Ok(OrientedInventory { rule, max_size, complete: max_size == m, elliptic, e_sets })
}

/// Bound report for an oriented diagram: E-sets give `d`, elliptic subsets
/// give `C1` and `C2`, pairs are ordered.
pub fn bound_report_cy3(d: &OrientedDiagram, opts: &BoundOptions) -> Result<BoundReport> {
    let inv = oriented_inventory(d, opts.max_subset)?;
    let table = |s: &Vec<usize>| (s.clone(), subset_distance_table(d, s, opts.distance_mode));
    let rho = d.realization().map(|r| exact::rank_int(&r.vectors));
    let mut extra = vec![
        format!("subsets classified by {}", inv.rule),
        format!("distances measured along arrows in {} mode", opts.distance_mode),
    ];
    if rho.is_none() {
        extra.push("no realization: Picard number unknown, consistency not checked".into());
    }
    let inputs = BoundInputs {
        mode: BoundMode::Cy3,
        rho,
        nonelliptic_source: format!("E-sets ({})", inv.rule),
        nonelliptic: inv.e_sets.iter().map(table).collect(),
        elliptic: inv.elliptic.iter().map(table).collect(),
        enumeration_complete: inv.complete,
        extra_caveats: extra,
    };
    bounds::assemble_report(inputs, opts)
}

/// Geometric facts that decide whether the 3-fold Picard-number bounds apply.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ThreefoldFlags {
    pub has_small_ray: bool,
    pub has_low_kodaira_face: bool,
    pub has_nef_d_with_d3_zero: bool,
    pub cone_finite: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundApplicability {
    pub bound: u32,
    pub applicable: bool,
    /// Exceptions that fired, numbered as in the statement of the bound.
    pub exceptions: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThreefoldApplicability {
    pub fano: BoundApplicability,
    pub calabi_yau: BoundApplicability,
}

/// `rho <= 7` for terminal Q-factorial Fano 3-folds unless some face of NE
/// has Kodaira dimension at most 2 or a small ray exists; `rho <= 40` for
/// Calabi-Yau 3-folds unless there is a nef `D` with `D^3 = 0`, a small ray,
/// or a Mori cone that is not finite polyhedral.
pub fn threefold_bound_applicability(flags: ThreefoldFlags) -> ThreefoldApplicability {
    let mut fano = Vec::new();
    if flags.has_low_kodaira_face {
        fano.push("(1) NE has a face of Kodaira dimension <= 2".to_string());
    }
    if flags.has_small_ray {
        fano.push("(2) there is a small extremal ray".to_string());
    }
    let mut cy = Vec::new();
    if flags.has_nef_d_with_d3_zero {
        cy.push("(1) there is a rational nef D with D^3 = 0".to_string());
    }
    if flags.has_small_ray {
        cy.push("(2) there is a small extremal ray".to_string());
    }
    if !flags.cone_finite {
        cy.push("(3) the Mori cone is not finite polyhedral".to_string());
    }
    ThreefoldApplicability {
        fano: BoundApplicability {
            bound: bounds::reference::FANO3FOLD_RHO_BOUND,
            applicable: fano.is_empty(),
            exceptions: fano,
        },
        calabi_yau: BoundApplicability {
            bound: bounds::reference::CY3_RHO_BOUND,
            applicable: cy.is_empty(),
            exceptions: cy,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn diagram(w: &[&[i64]]) -> OrientedDiagram {
        OrientedDiagram::from_weights(w.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect()).unwrap()
    }

    fn chain(weights: &[(i64, i64)]) -> OrientedDiagram {
        let m = weights.len() + 1;
        let mut t = vec![vec![0; m]; m];
        for (i, &(a, b)) in weights.iter().enumerate() {
            t[i][i + 1] = a;
            t[i + 1][i] = b;
        }
        let rows: Vec<&[i64]> = t.iter().map(|r| r.as_slice()).collect();
        diagram(&rows)
    }

    #[test]
    fn step_a() {
        let mut d = diagram(&[&[0, 1], &[1, 0]]);
        assert!(step_a_check(&d).injective);
        d.divisor_ids = vec!["D".into(), "D".into()];
        assert_eq!(step_a_check(&d).collisions, vec![(0, 1)]);
        let mut d = diagram(&[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
        d.divisor_ids = vec!["D1".into(), "D2".into(), "D1".into()];
        assert_eq!(step_a_check(&d).collisions, vec![(0, 2)]);
    }

    #[test]
    fn distances() {
        let d = diagram(&[&[0, 1], &[0, 0]]);
        let o = oriented_distance(&d);
        assert_eq!(o.table[0][1], Some(1));
        assert_eq!(o.table[1][0], None);
        assert!(!o.strongly_connected);
        let o = oriented_distance(&chain(&[(1, 1), (1, 1)]));
        assert_eq!(o.diameter, 2);
    }

    #[test]
    fn validation() {
        let t = vec![vec![rat(0, 1), rat(-1, 1)], vec![rat(1, 1), rat(0, 1)]];
        assert!(matches!(OrientedDiagram::from_weights(t), Err(Error::NegativeWeight { i: 0, j: 1, .. })));
        let t = vec![vec![rat(0, 1)]];
        let r = OrientedDiagram::new(vec!["R".into()], vec!["D".into()], t, vec![4], None);
        assert_eq!(r, Err(Error::SelfKOutOfRange { index: 0, value: 4 }));
    }

    #[test]
    fn families() {
        assert_eq!(recognize_elliptic_family(&chain(&[(1, 1)])).family(), Some(DynkinType::A(2)));
        assert_eq!(recognize_elliptic_family(&chain(&[(3, 1)])).family(), Some(DynkinType::G2));
        assert_eq!(recognize_elliptic_family(&chain(&[(1, 1), (2, 1), (1, 1)])).family(), Some(DynkinType::F4));
        assert_eq!(recognize_elliptic_family(&chain(&[(1, 2), (1, 1), (1, 1)])).family(), Some(DynkinType::B(4)));
        assert_eq!(recognize_elliptic_family(&chain(&[(2, 1), (1, 1), (1, 1)])).family(), Some(DynkinType::C(4)));
        let single = diagram(&[&[0, 1], &[0, 0]]);
        assert_eq!(recognize_elliptic_family(&single), DiagramVerdict::unclassified("single arrow present"));
        let two = diagram(&[&[0, 0], &[0, 0]]);
        assert!(matches!(recognize_elliptic_family(&two), DiagramVerdict::EllipticFamily { ref name, .. } if name == "A1+A1"));
    }

    #[test]
    fn branched_families() {
        // Star with arms (1,1,c) and (1,2,k).
        let star = |arms: &[usize]| {
            let m = 1 + arms.iter().sum::<usize>();
            let mut t = vec![vec![0i64; m]; m];
            let mut next = 1;
            for &a in arms {
                let mut prev = 0;
                for _ in 0..a {
                    t[prev][next] = 1;
                    t[next][prev] = 1;
                    prev = next;
                    next += 1;
                }
            }
            let rows: Vec<&[i64]> = t.iter().map(|r| r.as_slice()).collect();
            recognize_elliptic_family(&diagram(&rows)).family()
        };
        assert_eq!(star(&[1, 1, 1]), Some(DynkinType::D(4)));
        assert_eq!(star(&[1, 1, 2]), Some(DynkinType::D(5)));
        assert_eq!(star(&[1, 2, 2]), Some(DynkinType::E6));
        assert_eq!(star(&[1, 2, 3]), Some(DynkinType::E7));
        assert_eq!(star(&[1, 2, 4]), Some(DynkinType::E8));
        assert_eq!(star(&[2, 2, 2]), None);
    }

    #[test]
    fn e_set_boundaries() {
        assert!(recognize_e_set(&chain(&[(5, 1)])).is_e_set());
        assert!(!recognize_e_set(&chain(&[(2, 2)])).is_e_set());
        let tri = diagram(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]);
        assert!(!recognize_e_set(&tri).is_e_set());
        let tri = diagram(&[&[0, 2, 1], &[1, 0, 1], &[1, 1, 0]]);
        assert_eq!(recognize_e_set(&tri), DiagramVerdict::ESet { pattern: ESetPattern::Triangle3 });
        assert_eq!(recognize_e_set(&chain(&[(3, 1), (2, 1)])), DiagramVerdict::ESet { pattern: ESetPattern::Chain3 });
    }

    #[test]
    fn squares() {
        // Cycle 0-1-2-3-0; heavy edges 0-1 and 2-3.
        let square = |a: (i64, i64), b: (i64, i64)| {
            let mut t = vec![vec![0i64; 4]; 4];
            for (i, j) in [(1, 2), (3, 0)] {
                t[i][j] = 1;
                t[j][i] = 1;
            }
            t[0][1] = a.0;
            t[1][0] = a.1;
            t[2][3] = b.0;
            t[3][2] = b.1;
            let rows: Vec<&[i64]> = t.iter().map(|r| r.as_slice()).collect();
            recognize_e_set(&diagram(&rows))
        };
        assert_eq!(square((2, 1), (1, 1)), DiagramVerdict::ESet { pattern: ESetPattern::SquareOneDouble });
        assert_eq!(square((2, 1), (2, 1)), DiagramVerdict::ESet { pattern: ESetPattern::SquareTwoCyclic });
        assert_eq!(square((2, 1), (1, 2)), DiagramVerdict::ESet { pattern: ESetPattern::SquareTwoParallel });
    }

    #[test]
    fn face_ellipticity() {
        let id = GramMatrix::identity(3);
        let vectors = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
        let r = Realization { vectors: vectors.iter().map(|v| v.iter().map(|&x| Int::from(x)).collect()).collect(), form: id };
        let d = diagram(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]).with_realization(Some(r)).unwrap();
        let ne = realized_mori_cone(&d).unwrap();
        assert!(elliptic_by_face(&d, &ne, &[0]).unwrap());
        assert!(elliptic_by_face(&d, &ne, &[0, 1]).unwrap());
        assert!(!elliptic_by_face(&d, &ne, &[0, 1, 2]).unwrap());
        let inv = oriented_inventory(&d, 3).unwrap();
        assert_eq!(inv.e_sets, vec![vec![0, 1, 2]]);
        assert_eq!(inv.elliptic.len(), 6);
        let bare = diagram(&[&[0, 1], &[1, 0]]);
        assert!(matches!(realized_mori_cone(&bare), Err(Error::MissingRealization)));
    }

    #[test]
    fn applicability() {
        let all_clear = ThreefoldFlags { cone_finite: true, ..Default::default() };
        let a = threefold_bound_applicability(all_clear);
        assert!(a.fano.applicable && a.calabi_yau.applicable);
        assert_eq!((a.fano.bound, a.calabi_yau.bound), (7, 40));
        let a = threefold_bound_applicability(ThreefoldFlags { has_small_ray: true, ..all_clear });
        assert!(!a.fano.applicable && !a.calabi_yau.applicable);
        assert!(a.fano.exceptions[0].starts_with("(2)"));
        let a = threefold_bound_applicability(ThreefoldFlags { has_nef_d_with_d3_zero: true, ..all_clear });
        assert!(a.fano.applicable && !a.calabi_yau.applicable);
        assert!(a.calabi_yau.exceptions[0].starts_with("(1)"));
    }

    #[test]
    fn a3_contributes_ordered_pairs() {
        let d = chain(&[(1, 1), (1, 1)]);
        let opts = BoundOptions { d: Some(1), ..Default::default() };
        let r = bound_report_cy3(&d, &opts).unwrap();
        assert_eq!(r.c1, rat(4, 3));
        assert_eq!(r.mode, BoundMode::Cy3);
    }
}
