//! Symmetric integer bilinear forms: inertia, definiteness and the
//! squared-cosh distance surrogate of the hyperbolic model.

use std::fmt;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{self, Int, Rational};

/// Exact symmetric intersection matrix, entry `(i, j)` = `E_i . E_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GramMatrix {
    dim: usize,
    entries: Vec<i64>,
}

impl GramMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::EmptyMatrix);
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != dim {
                return Err(Error::NotSquare { row, len: r.len(), dim });
            }
        }
        for i in 0..dim {
            for j in i + 1..dim {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::NotSymmetric { i, j, a: rows[i][j], b: rows[j][i] });
                }
            }
        }
        Ok(Self { dim, entries: rows.into_iter().flatten().collect() })
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1;
        }
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.dim).map(|c| c.to_vec()).collect()
    }

    pub fn int_rows(&self) -> Vec<Vec<Int>> {
        self.entries.chunks(self.dim).map(|c| c.iter().map(|&x| Int::from(x)).collect()).collect()
    }

    pub fn rational_rows(&self) -> Vec<Vec<Rational>> {
        self.entries
            .chunks(self.dim)
            .map(|c| c.iter().map(|&x| exact::rat(x, 1)).collect())
            .collect()
    }

    /// Principal submatrix on `indices` (in the given order).
    pub fn principal(&self, indices: &[usize]) -> GramMatrix {
        let dim = indices.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for &i in indices {
            for &j in indices {
                entries.push(self.get(i, j));
            }
        }
        GramMatrix { dim, entries }
    }

    pub fn rank(&self) -> usize {
        exact::rank(&self.rational_rows())
    }

    pub fn determinant(&self) -> Int {
        exact::determinant(&self.int_rows())
    }

    /// `x^T G y` over rationals; the caller guarantees matching lengths.
    pub fn pair(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            let mut row = Rational::zero();
            for j in 0..self.dim {
                let g = self.get(i, j);
                if g != 0 && !y[j].is_zero() {
                    row += &y[j] * exact::rat(g, 1);
                }
            }
            acc += &x[i] * row;
        }
        acc
    }

    /// `x^T G y` for integer vectors.
    pub fn pair_int(&self, x: &[Int], y: &[Int]) -> Int {
        let mut acc = Int::zero();
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            let mut row = Int::zero();
            for j in 0..self.dim {
                let g = self.get(i, j);
                if g != 0 {
                    row += &y[j] * g;
                }
            }
            acc += &x[i] * row;
        }
        acc
    }

    /// `G v` for an integer vector.
    pub fn apply_int(&self, v: &[Int]) -> Vec<Int> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| &v[j] * self.get(i, j)).sum())
            .collect()
    }
}

/// Inertia `(n_plus, n_zero, n_minus)` of a symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub n_plus: usize,
    pub n_zero: usize,
    pub n_minus: usize,
}

impl Signature {
    pub fn new(n_plus: usize, n_zero: usize, n_minus: usize) -> Self {
        Self { n_plus, n_zero, n_minus }
    }

    pub fn dim(&self) -> usize {
        self.n_plus + self.n_zero + self.n_minus
    }

    pub fn rank(&self) -> usize {
        self.n_plus + self.n_minus
    }

    /// Signature of the nondegenerate quotient by the radical.
    pub fn nondegenerate_part(&self) -> Signature {
        Signature::new(self.n_plus, 0, self.n_minus)
    }

    /// Signature `(1, rank - 1)` of a hyperbolic lattice.
    pub fn is_hyperbolic(&self) -> bool {
        self.n_plus == 1
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.n_plus, self.n_zero, self.n_minus)
    }
}

/// Inertia by exact symmetric congruence reduction.
///
/// A nonzero diagonal entry is eliminated as a 1x1 pivot. When every
/// remaining diagonal entry vanishes but some off-diagonal entry `b` does not,
/// the 2x2 block `[[0, b], [b, 0]]` contributes one positive and one negative
/// square and is eliminated as a block. Only rational arithmetic is used.
pub fn signature(g: &GramMatrix) -> Signature {
    let mut a = g.rational_rows();
    let (mut plus, mut minus) = (0, 0);
    loop {
        let n = a.len();
        if n == 0 {
            break;
        }
        if let Some(p) = (0..n).find(|&i| !a[i][i].is_zero()) {
            if a[p][p].is_positive() {
                plus += 1;
            } else {
                minus += 1;
            }
            a = eliminate(&a, &[p]);
            continue;
        }
        let off = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero());
        match off {
            Some((i, j)) => {
                plus += 1;
                minus += 1;
                a = eliminate(&a, &[i, j]);
            }
            None => break,
        }
    }
    let dim = g.dim();
    Signature::new(plus, dim - plus - minus, minus)
}

/// Schur complement of the block on `pivots` (size 1 or 2, invertible).
fn eliminate(a: &[Vec<Rational>], pivots: &[usize]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let rest: Vec<usize> = (0..n).filter(|i| !pivots.contains(i)).collect();
    let inv: Vec<Vec<Rational>> = match pivots {
        [p] => vec![vec![a[*p][*p].recip()]],
        [p, q] => {
            let (x, y, z) = (&a[*p][*p], &a[*p][*q], &a[*q][*q]);
            let det = x * z - y * y;
            vec![vec![z / &det, -y / &det], vec![-y / &det, x / &det]]
        }
        _ => unreachable!("pivot blocks have size 1 or 2"),
    };
    rest.iter()
        .map(|&i| {
            rest.iter()
                .map(|&j| {
                    let mut v = a[i][j].clone();
                    for (s, &ps) in pivots.iter().enumerate() {
                        for (t, &pt) in pivots.iter().enumerate() {
                            if !a[i][ps].is_zero() && !a[pt][j].is_zero() {
                                v -= &a[i][ps] * &inv[s][t] * &a[pt][j];
                            }
                        }
                    }
                    v
                })
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Definiteness {
    NegativeDefinite,
    NegativeSemidefiniteDegenerate,
    HasPositiveDirection,
}

impl Definiteness {
    pub fn of_signature(s: Signature) -> Self {
        if s.n_plus > 0 {
            Definiteness::HasPositiveDirection
        } else if s.n_zero > 0 {
            Definiteness::NegativeSemidefiniteDegenerate
        } else {
            Definiteness::NegativeDefinite
        }
    }
}

impl fmt::Display for Definiteness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Definiteness::NegativeDefinite => "negative-definite",
            Definiteness::NegativeSemidefiniteDegenerate => "negative-semidefinite-degenerate",
            Definiteness::HasPositiveDirection => "has-positive-direction",
        })
    }
}

pub fn definiteness(g: &GramMatrix) -> Definiteness {
    Definiteness::of_signature(signature(g))
}

/// Exact rational coordinates of a class in a fixed basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RayVector(pub Vec<Rational>);

impl RayVector {
    pub fn from_ints(v: &[i64]) -> Self {
        RayVector(v.iter().map(|&x| exact::rat(x, 1)).collect())
    }

    pub fn from_big(v: &[Int]) -> Self {
        RayVector(exact::to_rational_vec(v))
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = vec![0; dim];
        v[i] = 1;
        Self::from_ints(&v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    /// Primitive integer vector on the same ray (positive rescaling).
    pub fn primitive(&self) -> Vec<Int> {
        exact::primitive_from_rational(&self.0)
    }
}

impl fmt::Display for RayVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(exact::format_rational).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `(x^2, x.y, y^2)` under a form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pairings {
    pub x_sq: Rational,
    pub xy: Rational,
    pub y_sq: Rational,
}

impl Pairings {
    /// `x^2 > 0`: the class lies in the light cone.
    pub fn x_in_light_cone(&self) -> bool {
        self.x_sq.is_positive()
    }
}

pub fn norm_and_pairing(x: &RayVector, y: &RayVector, g: &GramMatrix) -> Result<Pairings> {
    for v in [x, y] {
        if v.dim() != g.dim() {
            return Err(Error::DimensionMismatch { expected: g.dim(), got: v.dim() });
        }
    }
    Ok(Pairings { x_sq: g.pair(&x.0, &x.0), xy: g.pair(&x.0, &y.0), y_sq: g.pair(&y.0, &y.0) })
}

/// `(x.y)^2 / (x^2 y^2)`, the square of the hyperbolic cosh distance.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DistanceSurrogate {
    pub value: Rational,
}

impl DistanceSurrogate {
    pub fn from_pairings(x_sq: &Rational, xy: &Rational, y_sq: &Rational) -> Result<Self> {
        if x_sq.is_zero() || y_sq.is_zero() {
            return Err(Error::ZeroNorm);
        }
        Ok(Self { value: xy * xy / (x_sq * y_sq) })
    }

    /// `cosh` of the distance as a float. Reporting only.
    pub fn cosh_distance(&self) -> f64 {
        self.value.to_f64().unwrap_or(f64::NAN).abs().sqrt()
    }

    /// Hyperbolic distance `arccosh(sqrt(value))` as a float, when the
    /// surrogate is at least 1. Reporting only.
    pub fn hyperbolic_distance(&self) -> Option<f64> {
        let c = self.cosh_distance();
        (c >= 1.0).then(|| c.acosh())
    }
}

pub fn distance_surrogate(x: &RayVector, y: &RayVector, g: &GramMatrix) -> Result<DistanceSurrogate> {
    let p = norm_and_pairing(x, y, g)?;
    DistanceSurrogate::from_pairings(&p.x_sq, &p.xy, &p.y_sq)
}
