//! Exact integer and rational helpers shared by every module.
//!
//! Everything here works on `BigInt`/`BigRational`; there is no floating
//! point anywhere in the computational paths.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rational = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(Int::from(n), Int::from(d))
}

pub fn rat_int(v: &Int) -> Rational {
    Rational::from_integer(v.clone())
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: Int = n.trim().parse().ok()?;
            let d: Int = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => text.parse::<Int>().ok().map(Rational::from_integer),
    }
}

pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

/// Greatest common divisor of all entries (nonnegative; zero for the zero vector).
pub fn content(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |g, x| g.gcd(x))
}

/// Divides out the content; the zero vector is returned unchanged.
pub fn primitive(v: Vec<Int>) -> Vec<Int> {
    let g = content(&v);
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|x| x / &g).collect()
}

/// Positive rescaling of a rational vector to a primitive integer vector.
pub fn primitive_from_rational(v: &[Rational]) -> Vec<Int> {
    let lcm = v.iter().fold(Int::one(), |l, x| l.lcm(x.denom()));
    let scaled: Vec<Int> = v.iter().map(|x| (x * rat_int(&lcm)).to_integer()).collect();
    primitive(scaled)
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_rat(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn to_rational_vec(v: &[Int]) -> Vec<Rational> {
    v.iter().map(rat_int).collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<Rational>]) -> usize {
    let mut work = m.to_vec();
    rref(&mut work).len()
}

pub fn rank_int(m: &[Vec<Int>]) -> usize {
    let rows: Vec<Vec<Rational>> = m.iter().map(|r| to_rational_vec(r)).collect();
    rank(&rows)
}

/// Basis of the right kernel `{x : m x = 0}` as primitive integer vectors,
/// in the canonical order given by the free columns of the RREF.
pub fn kernel_basis(m: &[Vec<Rational>], cols: usize) -> Vec<Vec<Int>> {
    let mut work = m.to_vec();
    let pivots = rref(&mut work);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -work[row][f].clone();
            }
            primitive_from_rational(&v)
        })
        .collect()
}

/// Indices of a maximal linearly independent subset of rows, chosen greedily
/// in order.
pub fn independent_rows(m: &[Vec<Rational>]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    for (i, row) in m.iter().enumerate() {
        let mut trial = basis.clone();
        trial.push(row.clone());
        if rank(&trial) > basis.len() {
            basis.push(row.clone());
            chosen.push(i);
        }
    }
    chosen
}

/// Solves the square system `a x = b`; `None` when `a` is singular.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots.iter().any(|&p| p >= n) {
        return None;
    }
    Some(aug.iter().map(|r| r[n].clone()).collect())
}

/// Fraction-free (Bareiss) determinant of a square integer matrix.
pub fn determinant(m: &[Vec<Int>]) -> Int {
    let n = m.len();
    if n == 0 {
        return Int::one();
    }
    let mut a = m.to_vec();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Int::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

pub fn lex_cmp(a: &[Int], b: &[Int]) -> std::cmp::Ordering {
    a.cmp(b)
}

pub fn is_nonnegative(q: &Rational) -> bool {
    !q.is_negative()
}

/// Serde adapters that encode exact numbers as decimal strings (`"p/q"`).
pub mod serde_exact {
    use super::{format_rational, parse_rational, Int, Rational};
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub mod rational {
        use super::*;
        pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
            s.serialize_str(&format_rational(q))
        }
        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
            let text = String::deserialize(d)?;
            parse_rational(&text).ok_or_else(|| D::Error::custom(format!("bad rational {text:?}")))
        }
    }

    pub mod option_rational {
        use super::*;
        pub fn serialize<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match q {
                Some(q) => s.serialize_some(&format_rational(q)),
                None => s.serialize_none(),
            }
        }
        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
            let text = Option::<String>::deserialize(d)?;
            text.map(|t| {
                parse_rational(&t).ok_or_else(|| D::Error::custom(format!("bad rational {t:?}")))
            })
            .transpose()
        }
    }

    pub mod rational_vec {
        use super::*;
        use serde::ser::SerializeSeq;
        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for q in v {
                seq.serialize_element(&format_rational(q))?;
            }
            seq.end()
        }
        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            let texts = Vec::<String>::deserialize(d)?;
            texts
                .iter()
                .map(|t| parse_rational(t).ok_or_else(|| D::Error::custom(format!("bad rational {t:?}"))))
                .collect()
        }
    }

    pub mod int {
        use super::*;
        pub fn serialize<S: Serializer>(v: &Int, s: S) -> Result<S::Ok, S::Error> {
            s.serialize_str(&v.to_string())
        }
        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
            let text = String::deserialize(d)?;
            text.parse().map_err(|_| D::Error::custom(format!("bad integer {text:?}")))
        }
    }

    pub mod int_vec {
        use super::*;
        use serde::ser::SerializeSeq;
        pub fn serialize<S: Serializer>(v: &[Int], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for x in v {
                seq.serialize_element(&x.to_string())?;
            }
            seq.end()
        }
        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Int>, D::Error> {
            let texts = Vec::<String>::deserialize(d)?;
            texts
                .iter()
                .map(|t| t.parse().map_err(|_| D::Error::custom(format!("bad integer {t:?}"))))
                .collect()
        }
    }

    pub mod int_matrix {
        use super::*;
        use serde::ser::SerializeSeq;
        pub fn serialize<S: Serializer>(m: &[Vec<Int>], s: S) -> Result<S::Ok, S::Error> {
            let rows: Vec<Vec<String>> =
                m.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
            let mut seq = s.serialize_seq(Some(rows.len()))?;
            for r in &rows {
                seq.serialize_element(r)?;
            }
            seq.end()
        }
        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Int>>, D::Error> {
            let rows = Vec::<Vec<String>>::deserialize(d)?;
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|t| t.parse().map_err(|_| D::Error::custom(format!("bad integer {t:?}"))))
                        .collect()
                })
                .collect()
        }
    }
}
