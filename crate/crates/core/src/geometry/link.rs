//! Link curves read from a word, and exact PL linking numbers in `Q^3`.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::intersect::{simplex_intersect, Intersection};
use super::{det, q, ratio, GeometryError, PLCurve, RationalPoint, Q};
use crate::word::{Generator, Word};

/// Apex candidates tried before giving up.
pub const APEX_BUDGET: usize = 256;
const APEX_SEED: u64 = 0x11_4b;

/// γ1 and γ2 bound the two removed triangles; γ3 reads the attaching word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkCurves {
    pub g1: PLCurve,
    pub g2: PLCurve,
    pub g3: PLCurve,
}

/// x-offset of the second triangle.
const SECOND_CENTER: i64 = 20;
/// x-offset of the return strand of a meridian, past the triangle.
const RETURN_OFFSET: i64 = 5;

fn triangle_around(cx: i64) -> PLCurve {
    // oriented so that a downward pass through the disk counts +1
    PLCurve {
        points: vec![
            RationalPoint::from_ints(&[cx - 3, -3, 0]),
            RationalPoint::from_ints(&[cx, 6, 0]),
            RationalPoint::from_ints(&[cx + 3, -3, 0]),
        ],
    }
}

/// Builds γ1, γ2 (triangles in the plane `z = 0`, far apart) and γ3, which
/// for each letter drops from the height `z = 3` and threads a meridian of
/// γ1 (for `a`) or γ2 (for `b`): down through the disk and up outside it for
/// a positive letter, the reverse for an inverse one. Letter `k` uses its own
/// `y` offset so that consecutive strands stay apart.
pub fn build_link_curves(phi: &Word) -> LinkCurves {
    let g1 = triangle_around(0);
    let g2 = triangle_around(SECOND_CENTER);
    let n = phi.len() as i64;
    let mut points = Vec::new();
    for (k, l) in phi.letters().iter().enumerate() {
        let y = ratio(k as i64 + 1, n + 1) - ratio(1, 2);
        let cx = match l.generator {
            Generator::A => 0,
            Generator::B => SECOND_CENTER,
        };
        let at = |x: i64, z: i64| RationalPoint(vec![q(x), y.clone(), q(z)]);
        let mut strand =
            vec![at(cx, 1), at(cx, -1), at(cx + RETURN_OFFSET, -1), at(cx + RETURN_OFFSET, 1)];
        if l.inverse {
            strand.reverse();
        }
        let first_x = strand[0].0[0].clone();
        let last_x = strand[3].0[0].clone();
        points.push(RationalPoint(vec![first_x, y.clone(), q(3)]));
        points.extend(strand);
        points.push(RationalPoint(vec![last_x, y.clone(), q(3)]));
    }
    if points.is_empty() {
        points = vec![
            RationalPoint::from_ints(&[0, 0, 10]),
            RationalPoint::from_ints(&[1, 0, 10]),
            RationalPoint::from_ints(&[0, 1, 10]),
        ];
    }
    LinkCurves { g1, g2, g3: PLCurve { points } }
}

enum ConeHit {
    Miss,
    Hit(i64),
    /// Touches an edge of the cone triangle or an endpoint of the segment, or
    /// meets the triangle inside its plane.
    NotGeneric,
}

/// Segment `p0 p1` against the cone triangle `(apex, a, b)`.
fn cone_hit(apex: &RationalPoint, a: &RationalPoint, b: &RationalPoint, p0: &RationalPoint, p1: &RationalPoint) -> ConeHit {
    let u1 = a.sub(apex);
    let u2 = b.sub(apex);
    let v = p1.sub(p0);
    let w = p0.sub(apex);
    let d = det(&[u1.clone(), u2.clone(), v.clone()]);
    if d.is_zero() {
        if !det(&[u1, u2, w]).is_zero() {
            return ConeHit::Miss;
        }
        let triangle = [apex.clone(), a.clone(), b.clone()];
        return match simplex_intersect(&triangle, &[p0.clone(), p1.clone()]) {
            Intersection::Empty => ConeHit::Miss,
            _ => ConeHit::NotGeneric,
        };
    }
    // apex + α u1 + β u2 = p0 + γ v
    let nv: Vec<Q> = v.iter().map(|x| -x).collect();
    let m = [u1.clone(), u2.clone(), nv.clone()];
    let solve_col = |c: usize| {
        let mut cols = m.clone();
        cols[c] = w.clone();
        det(&cols)
    };
    let dm = det(&m);
    let alpha = solve_col(0) / &dm;
    let beta = solve_col(1) / &dm;
    let gamma = solve_col(2) / &dm;
    let one = q(1);
    let sum = &alpha + &beta;
    let zero = Q::zero();
    let closed = alpha >= zero && beta >= zero && sum <= one && gamma >= zero && gamma <= one;
    if !closed {
        return ConeHit::Miss;
    }
    let open = alpha > zero && beta > zero && sum < one && gamma > zero && gamma < one;
    if !open {
        return ConeHit::NotGeneric;
    }
    ConeHit::Hit(if d.is_positive() { 1 } else { -1 })
}

fn curves_meet(c1: &PLCurve, c2: &PLCurve) -> bool {
    c1.segments().any(|(a0, a1)| {
        c2.segments().any(|(b0, b1)| {
            simplex_intersect(&[a0.clone(), a1.clone()], &[b0.clone(), b1.clone()]) != Intersection::Empty
        })
    })
}

/// Signed count of crossings of `c2` through the cone over `c1` from an apex
/// for which every crossing is transversal and interior.
pub fn pl_linking_number(c1: &PLCurve, c2: &PLCurve) -> Result<i64, GeometryError> {
    if curves_meet(c1, c2) {
        return Err(GeometryError::CurvesIntersect);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(APEX_SEED);
    'candidates: for _ in 0..APEX_BUDGET {
        let apex = RationalPoint(
            (0..3).map(|_| ratio(rng.random_range(-4000..=4000), rng.random_range(7..=97))).collect(),
        );
        let mut total = 0;
        for (a, b) in c1.segments().filter(|(a, b)| a != b) {
            // apex collinear with the segment gives a flat cone triangle
            let (u, w) = (a.sub(&apex), b.sub(&apex));
            let cross = [
                &u[1] * &w[2] - &u[2] * &w[1],
                &u[2] * &w[0] - &u[0] * &w[2],
                &u[0] * &w[1] - &u[1] * &w[0],
            ];
            if cross.iter().all(|x| x.is_zero()) {
                continue 'candidates;
            }
            for (p0, p1) in c2.segments().filter(|(p, q)| p != q) {
                match cone_hit(&apex, a, b, p0, p1) {
                    ConeHit::Miss => {}
                    ConeHit::Hit(s) => total += s,
                    ConeHit::NotGeneric => continue 'candidates,
                }
            }
        }
        return Ok(total);
    }
    Err(GeometryError::NoGenericApex(APEX_BUDGET))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::exponent_sums;

    fn poly(points: &[[i64; 3]]) -> PLCurve {
        PLCurve { points: points.iter().map(|p| RationalPoint::from_ints(p)).collect() }
    }

    #[test]
    fn split_triangles() {
        let a = poly(&[[0, 0, 0], [1, 0, 0], [0, 1, 0]]);
        let b = poly(&[[10, 10, 10], [11, 10, 10], [10, 11, 10]]);
        assert_eq!(pl_linking_number(&a, &b).unwrap(), 0);
    }

    #[test]
    fn repeated_points_are_ignored() {
        let a = poly(&[[0, 0, 1], [0, 0, 1], [0, 0, -1], [6, 0, -1], [6, 0, 1]]);
        let tri = poly(&[[-2, -2, 0], [4, -2, 0], [4, -2, 0], [-2, 4, 0]]);
        let lk = pl_linking_number(&tri, &a).unwrap();
        assert_eq!(lk.abs(), 1);
        assert_eq!(pl_linking_number(&a, &tri).unwrap(), lk);
    }

    #[test]
    fn threaded_rectangle() {
        let tri = poly(&[[-2, -2, 0], [4, -2, 0], [-2, 4, 0]]);
        // rectangle in the plane y = 0, one vertical side through the disk
        let rect = poly(&[[0, 0, 1], [0, 0, -1], [6, 0, -1], [6, 0, 1]]);
        let lk = pl_linking_number(&tri, &rect).unwrap();
        assert_eq!(lk.abs(), 1);
        assert_eq!(pl_linking_number(&rect, &tri).unwrap(), lk);
        assert_eq!(pl_linking_number(&tri.reversed(), &rect).unwrap(), -lk);
        assert_eq!(pl_linking_number(&tri, &rect.reversed()).unwrap(), -lk);
    }

    #[test]
    fn intersecting_curves_rejected() {
        let a = poly(&[[0, 0, 0], [2, 0, 0], [0, 2, 0]]);
        let b = poly(&[[1, 0, 0], [1, 5, 5], [1, -5, 5]]);
        assert_eq!(pl_linking_number(&a, &b), Err(GeometryError::CurvesIntersect));
    }

    #[test]
    fn single_meridian() {
        let c = build_link_curves(&Word::parse("a").unwrap());
        assert_eq!(pl_linking_number(&c.g3, &c.g1).unwrap(), 1);
        assert_eq!(pl_linking_number(&c.g3, &c.g2).unwrap(), 0);
        assert_eq!(pl_linking_number(&c.g1, &c.g2).unwrap(), 0);
    }

    #[test]
    fn commutator_unlinks_pairwise() {
        for s in ["[a,b]", "[a,[a,b]]", "aaBAb"] {
            let w = Word::parse(s).unwrap();
            let c = build_link_curves(&w);
            let (ea, eb) = exponent_sums(&w);
            assert_eq!(pl_linking_number(&c.g3, &c.g1).unwrap(), ea, "{s}");
            assert_eq!(pl_linking_number(&c.g3, &c.g2).unwrap(), eb, "{s}");
            assert_eq!(pl_linking_number(&c.g1, &c.g2).unwrap(), 0);
        }
    }
}
