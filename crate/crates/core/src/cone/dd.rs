//! Exact double description for cones `{x : a_j . x >= 0}`.
//!
//! The cone splits as `ker A + P`, where `P` is the pointed part inside the
//! row space of `A`. Rays of `P` are produced by the incremental method with
//! the combinatorial adjacency test; all arithmetic is on primitive integer
//! vectors.

use num_traits::{Signed, Zero};

use crate::bitset::BitSet;
use crate::exact::{self, Int, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleDescription {
    /// Extreme rays of the pointed part, primitive and sorted.
    pub rays: Vec<Vec<Int>>,
    /// Basis of the lineality space `ker A`.
    pub lineality: Vec<Vec<Int>>,
}

struct Ray {
    v: Vec<Int>,
    zeros: BitSet,
}

pub fn extreme_rays(constraints: &[Vec<Int>], dim: usize) -> DoubleDescription {
    let rows: Vec<Vec<Int>> = constraints
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .map(|r| exact::primitive(r.clone()))
        .collect();
    if rows.is_empty() {
        let lineality = (0..dim)
            .map(|i| (0..dim).map(|j| Int::from((i == j) as i64)).collect())
            .collect();
        return DoubleDescription { rays: Vec::new(), lineality };
    }
    let m = rows.len();
    let rational: Vec<Vec<Rational>> = rows.iter().map(|r| exact::to_rational_vec(r)).collect();
    let lineality = exact::kernel_basis(&rational, dim);
    let basis = exact::independent_rows(&rational);
    let r = basis.len();

    // Initial simplicial cone inside the row space: x_k = M^T w with M M^T w = e_k.
    let mmt: Vec<Vec<Rational>> = basis
        .iter()
        .map(|&i| basis.iter().map(|&j| exact::dot_rat(&rational[i], &rational[j])).collect())
        .collect();
    let mut rays: Vec<Ray> = Vec::with_capacity(r);
    for k in 0..r {
        let mut e = vec![Rational::zero(); r];
        e[k] = Rational::from_integer(Int::from(1));
        let w = exact::solve(&mmt, &e).expect("independent rows give an invertible Gram matrix");
        let x: Vec<Rational> = (0..dim)
            .map(|c| basis.iter().zip(&w).fold(Rational::zero(), |acc, (&i, wi)| acc + wi * &rational[i][c]))
            .collect();
        let zeros = BitSet::from_indices(m, basis.iter().enumerate().filter(|&(t, _)| t != k).map(|(_, &i)| i));
        rays.push(Ray { v: exact::primitive_from_rational(&x), zeros });
    }

    for j in (0..m).filter(|j| !basis.contains(j)) {
        let a = &rows[j];
        let values: Vec<Int> = rays.iter().map(|ray| exact::dot(a, &ray.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        if neg.is_empty() {
            for (ray, val) in rays.iter_mut().zip(&values) {
                if val.is_zero() {
                    ray.zeros.insert(j);
                }
            }
            continue;
        }
        let mut created = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = rays[p].zeros.intersection(&rays[n].zeros);
                if r >= 2 && common.len() < r - 2 {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(q, ray)| q == p || q == n || !common.is_subset(&ray.zeros));
                if !adjacent {
                    continue;
                }
                let sp = &values[p];
                let sn = -&values[n];
                let v: Vec<Int> = rays[n].v.iter().zip(&rays[p].v).map(|(xn, xp)| sp * xn + &sn * xp).collect();
                let mut zeros = common;
                zeros.insert(j);
                created.push(Ray { v: exact::primitive(v), zeros });
            }
        }
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + created.len());
        for (mut ray, val) in rays.into_iter().zip(values) {
            if val.is_negative() {
                continue;
            }
            if val.is_zero() {
                ray.zeros.insert(j);
            }
            next.push(ray);
        }
        next.extend(created);
        rays = next;
    }

    let mut out: Vec<Vec<Int>> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    DoubleDescription { rays: out, lineality }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn v(x: &[i64]) -> Vec<Int> {
        x.iter().map(|&a| int(a)).collect()
    }

    #[test]
    fn orthant_is_self_dual() {
        let dd = extreme_rays(&[v(&[1, 0]), v(&[0, 1])], 2);
        assert_eq!(dd.rays, vec![v(&[0, 1]), v(&[1, 0])]);
        assert!(dd.lineality.is_empty());
    }

    #[test]
    fn half_plane_has_lineality() {
        let dd = extreme_rays(&[v(&[1, 0])], 2);
        assert_eq!(dd.rays, vec![v(&[1, 0])]);
        assert_eq!(dd.lineality, vec![v(&[0, 1])]);
    }

    #[test]
    fn square_cone() {
        // x +- y >= 0, x +- z >= 0: cone over a square.
        let cons = [v(&[1, 1, 0]), v(&[1, -1, 0]), v(&[1, 0, 1]), v(&[1, 0, -1])];
        let dd = extreme_rays(&cons, 3);
        assert_eq!(
            dd.rays,
            vec![v(&[1, -1, -1]), v(&[1, -1, 1]), v(&[1, 1, -1]), v(&[1, 1, 1])]
        );
    }

    #[test]
    fn infeasible_collapses_to_apex() {
        let dd = extreme_rays(&[v(&[1]), v(&[-1])], 1);
        assert!(dd.rays.is_empty());
        assert!(dd.lineality.is_empty());
    }
}
