use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::ConeDescription;
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::exact::{self, Int, Rational};

/// Largest cone dimension accepted by [`face_lattice`].
pub const DEFAULT_FACE_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Face {
    /// Extreme rays on the face.
    pub rays: Vec<usize>,
    /// Facets containing the face.
    pub facets: Vec<usize>,
    /// Dimension as a cone; the projective face has one less.
    pub dim: usize,
}

/// All faces of a pointed cone, from the apex to the cone itself, sorted by
/// dimension and then by ray set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceLattice {
    /// Dimension of the cone.
    pub dim: usize,
    pub faces: Vec<Face>,
}

impl FaceLattice {
    /// Dimension `n` of the projectivized polyhedron.
    pub fn n(&self) -> usize {
        self.dim.saturating_sub(1)
    }

    /// Number of faces of each cone dimension `0..=dim`.
    pub fn cone_face_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.dim + 1];
        for f in &self.faces {
            counts[f.dim] += 1;
        }
        counts
    }

    /// `alpha_i`, the number of `i`-dimensional faces of the polyhedron, for
    /// `i = 0..n-1`.
    pub fn alpha(&self) -> Vec<usize> {
        let counts = self.cone_face_counts();
        (0..self.n()).map(|i| counts[i + 1]).collect()
    }

    pub fn faces_of_dim(&self, dim: usize) -> impl Iterator<Item = &Face> + '_ {
        self.faces.iter().filter(move |f| f.dim == dim)
    }

    /// Covering pairs `(lower, upper)` of face indices.
    pub fn incidences(&self) -> Vec<(usize, usize)> {
        let sets: Vec<BTreeSet<usize>> = self.faces.iter().map(|f| f.rays.iter().copied().collect()).collect();
        let mut out = Vec::new();
        for (i, lo) in self.faces.iter().enumerate() {
            for (j, hi) in self.faces.iter().enumerate() {
                if hi.dim == lo.dim + 1 && sets[i].is_subset(&sets[j]) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

pub fn face_lattice(cone: &ConeDescription, cap: usize) -> Result<FaceLattice> {
    if !cone.is_pointed() {
        return Err(Error::NotPointed(cone.lineality.len()));
    }
    let dim = cone.dimension();
    if dim > cap {
        return Err(Error::DimensionCap { dim, cap });
    }
    let m = cone.generators.len();
    let facet_sets: Vec<BitSet> =
        cone.facet_ray_sets().into_iter().map(|s| BitSet::from_indices(m, s)).collect();
    let mut found: BTreeSet<BitSet> = BTreeSet::new();
    found.insert(BitSet::full(m));
    found.insert(BitSet::new(m));
    let mut frontier: Vec<BitSet> = Vec::new();
    for f in &facet_sets {
        if found.insert(f.clone()) {
            frontier.push(f.clone());
        }
    }
    while let Some(face) = frontier.pop() {
        for f in &facet_sets {
            let meet = face.intersection(f);
            if found.insert(meet.clone()) {
                frontier.push(meet);
            }
        }
    }
    let mut faces: Vec<Face> = found
        .into_iter()
        .map(|rays| {
            let vectors: Vec<Vec<Int>> = rays.iter().map(|r| cone.generators[r].clone()).collect();
            let facets = (0..facet_sets.len()).filter(|&k| rays.is_subset(&facet_sets[k])).collect();
            Face { dim: exact::rank_int(&vectors), rays: rays.to_vec(), facets }
        })
        .collect();
    faces.sort_by(|a, b| (a.dim, &a.rays).cmp(&(b.dim, &b.rays)));
    Ok(FaceLattice { dim, faces })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SimplicialityReport {
    /// Every vertex lies on exactly `n` facets.
    pub simple_at_vertices: bool,
    /// Every edge lies on exactly `n - 1` facets.
    pub simplicial_in_edges: bool,
    /// Distinct facet normals pair nonnegatively.
    pub acute: bool,
}

pub fn simpliciality_report(fl: &FaceLattice, cone: &ConeDescription) -> SimplicialityReport {
    let n = fl.n();
    let simple_at_vertices = fl.faces_of_dim(1).all(|f| f.facets.len() == n);
    let simplicial_in_edges = fl.faces_of_dim(2).all(|f| n >= 1 && f.facets.len() == n - 1);
    let normals = &cone.facet_normals;
    let acute = (0..normals.len())
        .all(|i| (i + 1..normals.len()).all(|j| !cone.form.pair_int(&normals[i], &normals[j]).is_negative()));
    SimplicialityReport { simple_at_vertices, simplicial_in_edges, acute }
}

/// `R(s) = alpha_0 + alpha_1 (s-1) + ... + alpha_{n-1} (s-1)^{n-1} + (s-1)^n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FacePolynomial {
    pub n: usize,
    /// Monomial coefficients, constant term first.
    #[serde(with = "exact::serde_exact::int_vec")]
    pub coefficients: Vec<Int>,
    pub reversible: bool,
    pub positive_coeffs: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub advisory: Option<String>,
}

impl FacePolynomial {
    pub fn from_face_vector(alpha: &[Int]) -> Self {
        let n = alpha.len();
        let mut coefficients = vec![Int::zero(); n + 1];
        let one = Int::one();
        for (i, a) in alpha.iter().chain(std::iter::once(&one)).enumerate() {
            // a (s - 1)^i = a sum_k C(i,k) s^k (-1)^(i-k)
            let mut binom = Int::one();
            for k in 0..=i {
                let term = a * &binom;
                if (i - k) % 2 == 0 {
                    coefficients[k] += term;
                } else {
                    coefficients[k] -= term;
                }
                binom = binom * Int::from(i - k) / Int::from(k + 1);
            }
        }
        let reversible = coefficients.iter().eq(coefficients.iter().rev());
        let positive_coeffs = coefficients.iter().all(Signed::is_positive);
        Self { n, coefficients, reversible, positive_coeffs, advisory: None }
    }

    /// `c_n s^n + ... + c_0`.
    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        for (k, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let coeff = if mag.is_one() && k > 0 { String::new() } else { mag.to_string() };
            let mono = match k {
                0 => String::new(),
                1 => "s".to_string(),
                _ => format!("s^{k}"),
            };
            let sign = if c.is_negative() { "-" } else { "+" };
            parts.push((sign, format!("{coeff}{mono}")));
        }
        if parts.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (sign, body)) in parts.into_iter().enumerate() {
            match (i, sign) {
                (0, "-") => out.push('-'),
                (0, _) => {}
                (_, s) => out.push_str(&format!(" {s} ")),
            }
            out.push_str(&body);
        }
        out
    }
}

/// Face polynomial of the lattice. Pass `all_vertices_finite = false` to mark
/// the result advisory.
pub fn face_polynomial(fl: &FaceLattice, all_vertices_finite: bool) -> FacePolynomial {
    let alpha: Vec<Int> = fl.alpha().into_iter().map(Int::from).collect();
    let mut p = FacePolynomial::from_face_vector(&alpha);
    if !all_vertices_finite {
        p.advisory = Some("polyhedron has vertices that are not finite; reversibility is not expected".into());
    }
    p
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceAverages {
    pub n: usize,
    /// Average number of vertices of a 2-face.
    #[serde(with = "exact::serde_exact::rational")]
    pub a02: Rational,
    /// `4 + 4/(n-2)`.
    #[serde(with = "exact::serde_exact::rational")]
    pub a02_bound: Rational,
    pub a02_satisfied: bool,
    /// Average number of 2-faces of a 3-face; present for `n >= 4`.
    #[serde(with = "exact::serde_exact::option_rational")]
    pub a23: Option<Rational>,
    #[serde(with = "exact::serde_exact::option_rational")]
    pub a23_bound: Option<Rational>,
    pub a23_satisfied: Option<bool>,
}

fn average(total: usize, count: usize) -> Rational {
    if count == 0 {
        Rational::zero()
    } else {
        exact::rat(total as i64, count as i64)
    }
}

pub fn face_averages(fl: &FaceLattice) -> Result<FaceAverages> {
    let n = fl.n();
    if n < 3 {
        return Err(Error::DimensionTooSmall { what: "A^{0,2}", n, min: 3 });
    }
    let two_faces: Vec<&Face> = fl.faces_of_dim(3).collect();
    let a02 = average(two_faces.iter().map(|f| f.rays.len()).sum(), two_faces.len());
    let a02_bound = exact::rat(4, 1) + exact::rat(4, n as i64 - 2);
    let (a23, a23_bound) = if n >= 4 {
        let sets: Vec<BTreeSet<usize>> = two_faces.iter().map(|f| f.rays.iter().copied().collect()).collect();
        let three_faces: Vec<&Face> = fl.faces_of_dim(4).collect();
        let total = three_faces
            .iter()
            .map(|g| {
                let gs: BTreeSet<usize> = g.rays.iter().copied().collect();
                sets.iter().filter(|s| s.is_subset(&gs)).count()
            })
            .sum();
        (Some(average(total, three_faces.len())), Some(exact::rat(6, 1) + exact::rat(12, n as i64 - 2)))
    } else {
        (None, None)
    };
    Ok(FaceAverages {
        n,
        a02_satisfied: a02 <= a02_bound,
        a02,
        a02_bound,
        a23_satisfied: a23.as_ref().zip(a23_bound.as_ref()).map(|(a, b)| a <= b),
        a23,
        a23_bound,
    })
}
