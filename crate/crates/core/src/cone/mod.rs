//! Exact polyhedral cones under an intersection form: NE, its dual NEF and
//! the face structure of the projectivized nef polyhedron.

pub mod dd;
mod faces;

pub use faces::{
    face_averages, face_lattice, face_polynomial, simpliciality_report, Face, FaceAverages, FaceLattice,
    FacePolynomial, SimplicialityReport, DEFAULT_FACE_CAP,
};

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::config::{self, Configuration, DistanceMode, SubsetVerdict};
use crate::error::{Error, Result};
use crate::exact::{self, Int};
use crate::lattice::GramMatrix;

/// A polyhedral cone together with its dual description.
///
/// Generators and facet normals live in the same coordinates and pair through
/// `form`: the pairing of `a` and `b` is `a^T G b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConeDescription {
    pub ambient_dim: usize,
    #[serde(skip)]
    pub form: GramMatrix,
    #[serde(with = "exact::serde_exact::int_matrix")]
    pub generators: Vec<Vec<Int>>,
    #[serde(with = "exact::serde_exact::int_matrix")]
    pub facet_normals: Vec<Vec<Int>>,
    /// Basis of the largest linear subspace inside the cone.
    #[serde(with = "exact::serde_exact::int_matrix")]
    pub lineality: Vec<Vec<Int>>,
    /// For a cone cut out by normals: the input index of each facet normal.
    /// For a cone built from generators: the input index of each generator.
    pub sources: Vec<usize>,
    /// Inputs that were dropped (redundant normals or repeated generators).
    pub redundant_inputs: Vec<usize>,
}

fn check_dims(vectors: &[Vec<Int>], form: &GramMatrix) -> Result<()> {
    for v in vectors {
        if v.len() != form.dim() {
            return Err(Error::DimensionMismatch { expected: form.dim(), got: v.len() });
        }
    }
    if vectors.iter().all(|v| v.iter().all(Zero::is_zero)) {
        return Err(Error::Degenerate);
    }
    Ok(())
}

impl ConeDescription {
    /// The cone generated by `generators`. Zero vectors and repeated rays are
    /// dropped; the survivors keep their input order.
    pub fn from_generators(generators: &[Vec<Int>], form: &GramMatrix) -> Result<Self> {
        check_dims(generators, form)?;
        let mut kept = Vec::new();
        let mut sources = Vec::new();
        let mut redundant_inputs = Vec::new();
        let mut seen = BTreeSet::new();
        for (i, g) in generators.iter().enumerate() {
            let p = exact::primitive(g.clone());
            if p.iter().all(Zero::is_zero) || !seen.insert(p.clone()) {
                redundant_inputs.push(i);
                continue;
            }
            kept.push(p);
            sources.push(i);
        }
        let rows: Vec<Vec<Int>> = kept.iter().map(|g| form.apply_int(g)).collect();
        let dual = dd::extreme_rays(&rows, form.dim());
        let mut span_of_dual: Vec<Vec<Int>> = dual.rays.iter().chain(&dual.lineality).map(|f| form.apply_int(f)).collect();
        if span_of_dual.is_empty() {
            span_of_dual.push(vec![Int::zero(); form.dim()]);
        }
        let rational: Vec<_> = span_of_dual.iter().map(|r| exact::to_rational_vec(r)).collect();
        let lineality = exact::kernel_basis(&rational, form.dim());
        Ok(Self {
            ambient_dim: form.dim(),
            form: form.clone(),
            generators: kept,
            facet_normals: dual.rays,
            lineality,
            sources,
            redundant_inputs,
        })
    }

    /// Dimension of the linear span of the cone.
    pub fn dimension(&self) -> usize {
        let all: Vec<Vec<Int>> = self.generators.iter().chain(&self.lineality).cloned().collect();
        exact::rank_int(&all)
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    /// `generator_i^T G normal_k`.
    pub fn pairing(&self, generator: usize, normal: usize) -> Int {
        self.form.pair_int(&self.generators[generator], &self.facet_normals[normal])
    }

    /// Rays lying on each facet normal's hyperplane.
    pub fn facet_ray_sets(&self) -> Vec<Vec<usize>> {
        (0..self.facet_normals.len())
            .map(|k| (0..self.generators.len()).filter(|&r| self.pairing(r, k).is_zero()).collect())
            .collect()
    }
}

/// `{x : n_j^T G x >= 0 for all j}` described by extreme rays, with the
/// irredundant normals as facets.
pub fn dual_cone(normals: &[Vec<Int>], form: &GramMatrix) -> Result<ConeDescription> {
    check_dims(normals, form)?;
    let rows: Vec<Vec<Int>> = normals.iter().map(|n| form.apply_int(n)).collect();
    let cone = dd::extreme_rays(&rows, form.dim());
    let span: Vec<Vec<Int>> = cone.rays.iter().chain(&cone.lineality).cloned().collect();
    let full = exact::rank_int(&span);
    let mut facet_normals = Vec::new();
    let mut sources = Vec::new();
    let mut redundant_inputs = Vec::new();
    let mut seen_faces = BTreeSet::new();
    for (j, row) in rows.iter().enumerate() {
        let zeros: Vec<usize> = (0..cone.rays.len()).filter(|&r| exact::dot(row, &cone.rays[r]).is_zero()).collect();
        let mut face: Vec<Vec<Int>> = zeros.iter().map(|&r| cone.rays[r].clone()).collect();
        face.extend(cone.lineality.iter().cloned());
        let is_facet = full > 0 && exact::rank_int(&face) == full - 1 && seen_faces.insert(zeros);
        if is_facet {
            facet_normals.push(exact::primitive(normals[j].clone()));
            sources.push(j);
        } else {
            redundant_inputs.push(j);
        }
    }
    Ok(ConeDescription {
        ambient_dim: form.dim(),
        form: form.clone(),
        generators: cone.rays,
        facet_normals,
        lineality: cone.lineality,
        sources,
        redundant_inputs,
    })
}

/// NEF of a configuration in the coordinates of its numerical lattice; facet
/// sources are curve indices.
pub fn nef_cone(c: &Configuration) -> Result<ConeDescription> {
    let nl = c.numerical_lattice();
    let normals: Vec<Vec<Int>> = nl.coords.iter().map(|v| v.primitive()).collect();
    dual_cone(&normals, &nl.form)
}

/// NE of a configuration in the coordinates of its numerical lattice;
/// generator sources are curve indices.
pub fn mori_cone(c: &Configuration) -> Result<ConeDescription> {
    let nl = c.numerical_lattice();
    let gens: Vec<Vec<Int>> = nl.coords.iter().map(|v| v.primitive()).collect();
    ConeDescription::from_generators(&gens, &nl.form)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VertexKind {
    /// `v^2 > 0`.
    Finite,
    /// `v^2 = 0`: a vertex at infinity.
    Infinite,
    /// `v^2 < 0`: outside the hyperbolic model.
    Outside,
}

impl fmt::Display for VertexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VertexKind::Finite => "finite",
            VertexKind::Infinite => "infinite",
            VertexKind::Outside => "outside",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexKinds {
    pub kinds: Vec<VertexKind>,
    #[serde(with = "exact::serde_exact::int_vec")]
    pub squares: Vec<Int>,
    /// No ray has `v^2 < 0`.
    pub finite_volume: bool,
    /// Every ray has `v^2 > 0`.
    pub all_finite: bool,
}

pub fn vertex_kinds(nef: &ConeDescription) -> VertexKinds {
    let squares: Vec<Int> = nef.generators.iter().map(|v| nef.form.pair_int(v, v)).collect();
    let kinds: Vec<VertexKind> = squares
        .iter()
        .map(|s| {
            if s.is_positive() {
                VertexKind::Finite
            } else if s.is_zero() {
                VertexKind::Infinite
            } else {
                VertexKind::Outside
            }
        })
        .collect();
    VertexKinds {
        finite_volume: kinds.iter().all(|k| *k != VertexKind::Outside),
        all_finite: kinds.iter().all(|k| *k == VertexKind::Finite),
        kinds,
        squares,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlaneAngle {
    pub subset: Vec<usize>,
    pub pair: (usize, usize),
    /// Distance between the pair; `None` when unreachable.
    pub distance: Option<usize>,
    pub threshold: usize,
    pub mode: DistanceMode,
    pub combinatorially_right: bool,
}

/// A plane angle given by an elliptic subset and two of its members is
/// combinatorially right when the pair lies at distance `> 2d + 1`.
pub fn plane_angle_classification(
    c: &Configuration,
    subset: &[usize],
    e1: usize,
    e2: usize,
    d: usize,
    mode: DistanceMode,
) -> Result<PlaneAngle> {
    let subset = c.check_subset(subset)?;
    if e1 == e2 || !subset.contains(&e1) || !subset.contains(&e2) {
        return Err(Error::PairNotInSubset(e1, e2));
    }
    if config::classify_subset(c, &subset)?.verdict != SubsetVerdict::Elliptic {
        return Err(Error::NotElliptic);
    }
    let distance = c.graph().distance(e1, e2, &subset, mode);
    let threshold = 2 * d + 1;
    Ok(PlaneAngle {
        combinatorially_right: distance.is_none_or(|x| x > threshold),
        subset,
        pair: (e1, e2),
        distance,
        threshold,
        mode,
    })
}

/// Whether the given generators lie on a common proper face: some facet
/// normal vanishes on all of them. Facet normals are extreme rays of the dual
/// taken in the span of the pairings, so each is positive on some generator.
pub fn subset_in_proper_face(ne: &ConeDescription, subset: &[usize]) -> Result<bool> {
    let subset = config::check_subset(subset, ne.generators.len())?;
    Ok((0..ne.facet_normals.len()).any(|k| subset.iter().all(|&g| ne.pairing(g, k).is_zero())))
}

/// Same test for arbitrary vectors of the cone.
pub fn vectors_in_proper_face(ne: &ConeDescription, vectors: &[Vec<Int>]) -> bool {
    ne.facet_normals.iter().any(|f| vectors.iter().all(|v| ne.form.pair_int(v, f).is_zero()))
}
