use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use super::{det, q, solve_linear, Linear, RationalPoint, Q};

/// Classification of the intersection of two closed simplices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Intersection {
    Empty,
    /// A single common point with its barycentric coordinates on both
    /// simplices. `sign` is set for complementary-dimension hits interior to
    /// both simplices.
    Point {
        point: RationalPoint,
        bary_first: Vec<Q>,
        bary_second: Vec<Q>,
        sign: Option<i32>,
    },
    /// The simplices overlap in a positive-dimensional set.
    Degenerate,
}

/// Vertices of the polytope of barycentric pairs `(λ, μ)` with
/// `Σ λ_i s_i = Σ μ_j t_j`. Each vertex is a point of `s ∩ t`, and the
/// intersection is their convex hull.
pub fn intersection_vertices(s: &[RationalPoint], t: &[RationalPoint]) -> Vec<(Vec<Q>, Vec<Q>)> {
    let d = s[0].dim();
    let (ns, nt) = (s.len(), t.len());
    let n = ns + nt;
    let mut rows: Vec<Vec<Q>> = (0..d)
        .map(|k| {
            s.iter().map(|p| p.0[k].clone()).chain(t.iter().map(|p| -p.0[k].clone())).collect()
        })
        .collect();
    rows.push((0..n).map(|i| if i < ns { q(1) } else { q(0) }).collect());
    rows.push((0..n).map(|i| if i < ns { q(0) } else { q(1) }).collect());
    let mut rhs = vec![Q::zero(); d];
    rhs.extend([q(1), q(1)]);

    let split = |x: Vec<Q>| {
        let second = x[ns..].to_vec();
        let mut first = x;
        first.truncate(ns);
        (first, second)
    };
    let (full, r) = solve_linear(&rows, &rhs);
    match full {
        Linear::Inconsistent => return Vec::new(),
        Linear::Unique(x) => {
            return if x.iter().all(|v| !v.is_negative()) { vec![split(x)] } else { Vec::new() };
        }
        Linear::Underdetermined => {}
    }
    // basic feasible solutions: r basic columns, the rest zero
    let mut out: Vec<(Vec<Q>, Vec<Q>)> = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != r {
            continue;
        }
        let cols: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let sub: Vec<Vec<Q>> = rows.iter().map(|row| cols.iter().map(|&c| row[c].clone()).collect()).collect();
        if let (Linear::Unique(xb), _) = solve_linear(&sub, &rhs) {
            if xb.iter().any(|v| v.is_negative()) {
                continue;
            }
            let mut x = vec![Q::zero(); n];
            for (&c, v) in cols.iter().zip(xb) {
                x[c] = v;
            }
            let v = split(x);
            if !out.contains(&v) {
                out.push(v);
            }
        }
    }
    out
}

fn combine(points: &[RationalPoint], weights: &[Q]) -> RationalPoint {
    let d = points[0].dim();
    RationalPoint(
        (0..d)
            .map(|k| points.iter().zip(weights).fold(Q::zero(), |acc, (p, w)| acc + &p.0[k] * w))
            .collect(),
    )
}

/// Exact intersection of two nondegenerate simplices of dimension at most 2
/// (any dimension works) in `Q^d`.
pub fn simplex_intersect(s: &[RationalPoint], t: &[RationalPoint]) -> Intersection {
    let mut verts = intersection_vertices(s, t);
    match verts.len() {
        0 => Intersection::Empty,
        1 => {
            let (bary_first, bary_second) = verts.pop().unwrap();
            let point = combine(s, &bary_first);
            let d = point.dim();
            let interior = bary_first.iter().chain(&bary_second).all(|v| v.is_positive());
            let sign = if interior && (s.len() - 1) + (t.len() - 1) == d {
                let rows: Vec<Vec<Q>> = s[1..]
                    .iter()
                    .map(|p| p.sub(&s[0]))
                    .chain(t[1..].iter().map(|p| p.sub(&t[0])))
                    .collect();
                match det(&rows).cmp(&Q::zero()) {
                    Ordering::Greater => Some(1),
                    Ordering::Less => Some(-1),
                    Ordering::Equal => None,
                }
            } else {
                None
            };
            Intersection::Point { point, bary_first, bary_second, sign }
        }
        _ => Intersection::Degenerate,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> RationalPoint {
        RationalPoint::from_ints(v)
    }

    #[test]
    fn crossing_segments() {
        let s = [p(&[-1, 0, 0]), p(&[1, 0, 0])];
        let t = [p(&[0, -1, 0]), p(&[0, 1, 0])];
        match simplex_intersect(&s, &t) {
            Intersection::Point { point, bary_first, sign, .. } => {
                assert_eq!(point, p(&[0, 0, 0]));
                assert_eq!(bary_first, vec![super::super::ratio(1, 2), super::super::ratio(1, 2)]);
                assert_eq!(sign, None);
            }
            other => panic!("expected point, got {other:?}"),
        }
    }

    #[test]
    fn far_triangles() {
        let s = [p(&[0, 0, 0, 0]), p(&[1, 0, 0, 0]), p(&[0, 1, 0, 0])];
        let t = [p(&[9, 9, 9, 9]), p(&[10, 9, 9, 9]), p(&[9, 10, 9, 9])];
        assert_eq!(simplex_intersect(&s, &t), Intersection::Empty);
    }

    #[test]
    fn shared_edge_is_degenerate() {
        let s = [p(&[0, 0, 0]), p(&[1, 0, 0]), p(&[0, 1, 0])];
        let t = [p(&[0, 0, 0]), p(&[1, 0, 0]), p(&[0, 0, 1])];
        assert_eq!(simplex_intersect(&s, &t), Intersection::Degenerate);
    }

    #[test]
    fn transversal_signs() {
        let tri = [p(&[-1, -1, 0]), p(&[2, -1, 0]), p(&[-1, 2, 0])];
        let down = [p(&[0, 0, 1]), p(&[0, 0, -1])];
        let up = [p(&[0, 0, -1]), p(&[0, 0, 1])];
        let sign = |s: &[RationalPoint], t: &[RationalPoint]| match simplex_intersect(s, t) {
            Intersection::Point { sign, .. } => sign,
            _ => None,
        };
        assert_eq!(sign(&tri, &up), Some(1));
        assert_eq!(sign(&tri, &down), Some(-1));
        // hit on the triangle's edge: point, but no sign
        let edge_hit = [p(&[0, -1, 1]), p(&[0, -1, -1])];
        assert!(matches!(simplex_intersect(&tri, &edge_hit), Intersection::Point { sign: None, .. }));
    }

    #[test]
    fn complementary_planes_in_q4() {
        let s = [p(&[2, 0, 0, 0]), p(&[-1, 2, 0, 0]), p(&[-1, -2, 0, 0])];
        let t = [p(&[0, 0, 2, 0]), p(&[0, 0, -1, 2]), p(&[0, 0, -1, -2])];
        match simplex_intersect(&s, &t) {
            Intersection::Point { point, sign, .. } => {
                assert_eq!(point, p(&[0, 0, 0, 0]));
                assert!(sign.is_some());
            }
            other => panic!("expected point, got {other:?}"),
        }
    }
}
