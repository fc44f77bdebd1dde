//! Brute-force reference routines for the test suites.
//!
//! They share no code with the production algorithms beyond integer types:
//! determinants use cofactor expansion, kernels use generalized cross
//! products, and every enumeration is exhaustive.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::config::{Configuration, SubsetVerdict};
use crate::exact::{Int, Rational};
use crate::lattice::{GramMatrix, Signature};
use crate::oriented::OrientedDiagram;

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_determinant(m: &[Vec<Int>]) -> Int {
    let n = m.len();
    match n {
        0 => Int::from(1),
        1 => m[0][0].clone(),
        2 => &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0],
        _ => {
            let mut total = Int::zero();
            for col in 0..n {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Int>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(j, _)| j != col).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = &m[0][col] * cofactor_determinant(&minor);
                if col % 2 == 0 {
                    total += term;
                } else {
                    total -= term;
                }
            }
            total
        }
    }
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u64..(1u64 << n)).map(move |mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
}

fn principal(g: &[Vec<Int>], idx: &[usize]) -> Vec<Vec<Int>> {
    idx.iter().map(|&i| idx.iter().map(|&j| g[i][j].clone()).collect()).collect()
}

/// `E_k`, the sum of all k x k principal minors, for k = 0..=n.
pub fn principal_minor_sums(g: &[Vec<Int>]) -> Vec<Int> {
    let n = g.len();
    let mut e = vec![Int::zero(); n + 1];
    for s in subsets(n) {
        e[s.len()] += cofactor_determinant(&principal(g, &s));
    }
    e
}

fn sign_changes(coeffs: &[Int]) -> usize {
    let signs: Vec<bool> = coeffs.iter().filter(|c| !c.is_zero()).map(|c| c.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Inertia of a symmetric integer matrix from its characteristic polynomial.
///
/// `det(xI - A) = sum_k (-1)^k E_k x^(n-k)` has only real roots, so
/// Descartes' rule of signs counts the positive and negative roots exactly.
pub fn signature_by_descartes(g: &GramMatrix) -> Signature {
    let rows = g.int_rows();
    let n = rows.len();
    let e = principal_minor_sums(&rows);
    // Coefficients of x^n, x^(n-1), ..., x^0.
    let p: Vec<Int> = (0..=n).map(|k| if k % 2 == 0 { e[k].clone() } else { -e[k].clone() }).collect();
    // p(-x): coefficient of x^(n-k) picks up (-1)^(n-k).
    let q: Vec<Int> = p.iter().enumerate().map(|(k, c)| if (n - k) % 2 == 0 { c.clone() } else { -c.clone() }).collect();
    let rank = (0..=n).rev().find(|&k| !e[k].is_zero()).unwrap_or(0);
    Signature::new(sign_changes(&p), n - rank, sign_changes(&q))
}

/// Subset verdict by brute force: signatures of every principal minor and a
/// scan of every proper subset for minimality.
pub fn verdict_by_minors(c: &Configuration, subset: &[usize]) -> SubsetVerdict {
    let sig = |s: &[usize]| signature_by_descartes(&c.gram().principal(s));
    let own = sig(subset);
    if own.n_plus == 0 {
        return if own.n_zero == 0 { SubsetVerdict::Elliptic } else { SubsetVerdict::Parabolic };
    }
    let k = subset.len();
    let minimal = subsets(k)
        .filter(|s| !s.is_empty() && s.len() < k)
        .all(|s| sig(&s.iter().map(|&i| subset[i]).collect::<Vec<_>>()).n_plus == 0);
    if minimal {
        SubsetVerdict::Lanner
    } else {
        SubsetVerdict::HyperbolicNonMinimal
    }
}

fn primitive(mut v: Vec<Int>) -> Vec<Int> {
    let mut g = Int::zero();
    for x in &v {
        g = num_integer::Integer::gcd(&g, x);
    }
    if !g.is_zero() {
        for x in &mut v {
            *x /= &g;
        }
    }
    v
}

/// Generalized cross product of `dim - 1` rows: zero when they are dependent.
pub fn cross(rows: &[Vec<Int>], dim: usize) -> Vec<Int> {
    (0..dim)
        .map(|k| {
            let minor: Vec<Vec<Int>> = rows
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, x)| x.clone()).collect())
                .collect();
            let d = cofactor_determinant(&minor);
            if k % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn matrix_rank(rows: &[Vec<Int>], dim: usize) -> usize {
    // Largest k with a nonzero k x k minor.
    let n = rows.len();
    (1..=n.min(dim))
        .rev()
        .find(|&k| {
            subsets(n).filter(|r| r.len() == k).any(|r| {
                subsets(dim).filter(|c| c.len() == k).any(|c| {
                    let m: Vec<Vec<Int>> = r.iter().map(|&i| c.iter().map(|&j| rows[i][j].clone()).collect()).collect();
                    !cofactor_determinant(&m).is_zero()
                })
            })
        })
        .unwrap_or(0)
}

/// Extreme rays of `{x : (G n_j)^T x >= 0}` by vertex enumeration over every
/// `(dim - 1)`-subset of constraint rows. `None` when the cone is not pointed.
pub fn dual_cone_rays_brute(normals: &[Vec<Int>], form: &GramMatrix) -> Option<Vec<Vec<Int>>> {
    let dim = form.dim();
    let g = form.int_rows();
    let rows: Vec<Vec<Int>> = normals.iter().map(|n| (0..dim).map(|i| dot(&g[i], n)).collect()).collect();
    if matrix_rank(&rows, dim) < dim {
        return None;
    }
    let mut out = BTreeSet::new();
    if dim == 1 {
        for s in [Int::from(1), Int::from(-1)] {
            if rows.iter().all(|r| !(&r[0] * &s).is_negative()) {
                out.insert(vec![s]);
            }
        }
        return Some(out.into_iter().collect());
    }
    for sel in subsets(rows.len()).filter(|s| s.len() == dim - 1) {
        let chosen: Vec<Vec<Int>> = sel.iter().map(|&i| rows[i].clone()).collect();
        let v = cross(&chosen, dim);
        if v.iter().all(Zero::is_zero) {
            continue;
        }
        for cand in [v.clone(), v.iter().map(|x| -x).collect()] {
            if rows.iter().all(|r| !dot(r, &cand).is_negative()) {
                out.insert(primitive(cand));
            }
        }
    }
    Some(out.into_iter().collect())
}

/// Whether `vectors` lie on a common proper face of the full-dimensional cone
/// spanned by `generators`, by scanning every hyperplane through `dim - 1`
/// generators that supports the cone.
pub fn proper_face_brute(generators: &[Vec<Int>], vectors: &[Vec<Int>]) -> Option<bool> {
    let dim = generators.first()?.len();
    if matrix_rank(generators, dim) < dim {
        return None;
    }
    if dim == 1 {
        return None;
    }
    for sel in subsets(generators.len()).filter(|s| s.len() == dim - 1) {
        let chosen: Vec<Vec<Int>> = sel.iter().map(|&i| generators[i].clone()).collect();
        let h = cross(&chosen, dim);
        if h.iter().all(Zero::is_zero) {
            continue;
        }
        let values: Vec<Int> = generators.iter().map(|g| dot(&h, g)).collect();
        let supports = values.iter().all(|v| !v.is_negative()) || values.iter().all(|v| !v.is_positive());
        if supports && vectors.iter().all(|v| dot(&h, v).is_zero()) {
            return Some(true);
        }
    }
    Some(false)
}

/// Finite type of the generalized Cartan matrix `2` on the diagonal and
/// `-t_ij` off it: every principal minor is positive.
pub fn cartan_finite_type(d: &OrientedDiagram) -> bool {
    let m = d.len();
    let a: Vec<Vec<Rational>> = (0..m)
        .map(|i| (0..m).map(|j| if i == j { Rational::from_integer(2.into()) } else { -d.t(i, j).clone() }).collect())
        .collect();
    subsets(m).filter(|s| !s.is_empty()).all(|s| {
        let minor: Vec<Vec<Rational>> = s.iter().map(|&i| s.iter().map(|&j| a[i][j].clone()).collect()).collect();
        rational_determinant(&minor).is_positive()
    })
}

fn rational_determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return Rational::from_integer(1.into());
    }
    let mut total = Rational::zero();
    for col in 0..n {
        if m[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(j, _)| j != col).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][col] * rational_determinant(&minor);
        if col % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn descartes_on_small_forms() {
        let g = GramMatrix::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(signature_by_descartes(&g), Signature::new(1, 0, 1));
        let g = GramMatrix::new(vec![vec![-2, 1, 0], vec![1, -2, 1], vec![0, 1, -2]]).unwrap();
        assert_eq!(signature_by_descartes(&g), Signature::new(0, 0, 3));
        let g = GramMatrix::new(vec![vec![-1, 1], vec![1, -1]]).unwrap();
        assert_eq!(signature_by_descartes(&g), Signature::new(0, 1, 1));
    }

    #[test]
    fn cross_product_is_orthogonal() {
        let rows = vec![vec![int(1), int(2), int(3)], vec![int(0), int(1), int(4)]];
        let v = cross(&rows, 3);
        assert!(rows.iter().all(|r| dot(r, &v).is_zero()));
    }
}
