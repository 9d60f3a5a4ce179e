//! Exact rational PL geometry in `Q^3` and `Q^4`. No floating point is used
//! for any decision; floats only appear in exported approximations.

mod embed;
mod export;
mod intersect;
mod join;
mod link;
mod realize;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

pub use embed::{verify_embedding, EmbeddingMode, EmbeddingReport, Violation};
pub use export::{curve_to_json, to_off};
pub use intersect::{intersection_vertices, simplex_intersect, Intersection};
pub use join::{join_sphere, JoinSphere};
pub use link::{build_link_curves, pl_linking_number, LinkCurves};
pub use realize::{realize_h, RealizedH, SHRINK_ROUNDS};

use crate::complex::Complex2;

pub type Q = BigRational;

pub fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

pub fn ratio(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalPoint(pub Vec<Q>);

impl RationalPoint {
    pub fn from_ints(v: &[i64]) -> RationalPoint {
        RationalPoint(v.iter().map(|&x| q(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn sub(&self, other: &RationalPoint) -> Vec<Q> {
        self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()
    }

    pub fn add_scaled(&self, v: &[Q], s: &Q) -> RationalPoint {
        RationalPoint(self.0.iter().zip(v).map(|(a, b)| a + b * s).collect())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// Coordinates as `p/q` strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(|x| x.to_string()).collect()
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

impl Serialize for RationalPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

/// Closed polygon in `Q^3`; the last point connects back to the first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PLCurve {
    pub points: Vec<RationalPoint>,
}

impl PLCurve {
    pub fn segments(&self) -> impl Iterator<Item = (&RationalPoint, &RationalPoint)> {
        let n = self.points.len();
        (0..n).map(move |i| (&self.points[i], &self.points[(i + 1) % n]))
    }

    pub fn reversed(&self) -> PLCurve {
        PLCurve { points: self.points.iter().rev().cloned().collect() }
    }

    pub fn translated(&self, by: &[Q]) -> PLCurve {
        PLCurve { points: self.points.iter().map(|p| p.add_scaled(by, &q(1))).collect() }
    }
}

/// A complex with a vertex placement; `placement[i]` is the image of vertex `i`
/// of the flattened complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeometricComplex {
    pub complex: Complex2,
    pub placement: Vec<RationalPoint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("no generic apex found after {0} candidates")]
    NoGenericApex(usize),
    #[error("curves intersect")]
    CurvesIntersect,
    #[error("realization failed after {0} shrink rounds")]
    RealizationFailed(usize),
    #[error(transparent)]
    Complex(#[from] crate::complex::ComplexError),
}

/// Outcome of exact Gaussian elimination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Linear {
    Inconsistent,
    Unique(Vec<Q>),
    Underdetermined,
}

/// Solves `a x = b` exactly; also returns the rank of `a`.
pub(crate) fn solve_linear(a: &[Vec<Q>], b: &[Q]) -> (Linear, usize) {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Q>> =
        a.iter().zip(b).map(|(r, v)| r.iter().cloned().chain(std::iter::once(v.clone())).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut().skip(c) {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=cols {
                    let delta = &m[r][j] * &f;
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let rank = pivots.len();
    if m[rank..].iter().any(|row| !row[cols].is_zero()) {
        return (Linear::Inconsistent, rank);
    }
    if rank < cols {
        return (Linear::Underdetermined, rank);
    }
    let mut x = vec![Q::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    (Linear::Unique(x), rank)
}

/// Rank of a set of vectors.
pub(crate) fn rank(vectors: &[Vec<Q>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let zero = vec![Q::zero(); vectors.len()];
    solve_linear(vectors, &zero).1
}

/// Determinant of a square matrix given by rows.
pub(crate) fn det(rows: &[Vec<Q>]) -> Q {
    let n = rows.len();
    let mut m = rows.to_vec();
    let mut d = q(1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= &m[c][c];
        for i in c + 1..n {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &m[c][c];
                for j in c..n {
                    let delta = &m[c][j] * &f;
                    m[i][j] -= delta;
                }
            }
        }
    }
    d
}
