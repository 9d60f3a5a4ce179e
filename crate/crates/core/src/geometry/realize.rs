//! Explicit embedding of `H = K_φ − (D ∪ x1x2x3 ∪ y1y2y3)` in `Q^4`.
//!
//! `X̂` sits on the boundary of the convex hull `P` of the two placed circles
//! of the join sphere, with `x6 = o` a vertex of `P` and `x0` the origin
//! inside `P`. `Ŷ` is the point reflection of that copy through `o`, so the
//! two convex hulls meet only at `o`. Both cones over the copies stay inside
//! their own hull.

use serde::Serialize;

use super::embed::{verify_embedding, EmbeddingMode, EmbeddingReport};
use super::join::{FIRST_CIRCLE, SECOND_CIRCLE};
use super::{GeometricComplex, GeometryError, RationalPoint, Q};
use crate::complex::{attach_disk, build_z, named_subcomplex, NamedSubcomplex};
use crate::word::Word;

/// Shrink-and-retry rounds before giving up.
pub const SHRINK_ROUNDS: usize = 16;

#[derive(Debug, Clone, Serialize)]
pub struct RealizedH {
    #[serde(skip)]
    pub geometry: GeometricComplex,
    pub report: EmbeddingReport,
    /// Number of halvings applied before verification passed.
    pub shrink_round: usize,
    pub note: &'static str,
}

const NOTE: &str = "H is realized directly in Q^4 as two reflected copies of the join-sphere \
skeleton meeting only at x6 = y6, with cone apexes x0, y0 inside the two convex hulls";

/// Unscaled position of a vertex of the `x` half relative to `o`.
fn x_half(index: usize) -> [i64; 4] {
    match index {
        0 => [0, 0, 0, 0],
        1..=3 => FIRST_CIRCLE[index - 1],
        4..=6 => SECOND_CIRCLE[index - 4],
        _ => unreachable!(),
    }
}

pub fn realize_h(phi: &Word) -> Result<RealizedH, GeometryError> {
    let k = attach_disk(&build_z(), phi).complex;
    let h = named_subcomplex(&k, NamedSubcomplex::H)?;
    let o = RationalPoint::from_ints(&x_half(6));
    for round in 0..SHRINK_ROUNDS {
        let scale = Q::new(1.into(), num_bigint::BigInt::from(1u64 << round));
        let place = |name: &str| -> RationalPoint {
            let (side, idx) = if name == "o" {
                ('x', 6)
            } else {
                (name.chars().next().unwrap(), name[1..].parse::<usize>().unwrap())
            };
            let offset = RationalPoint::from_ints(&x_half(idx)).sub(&o);
            let s = if side == 'x' { scale.clone() } else { -scale.clone() };
            o.add_scaled(&offset, &s)
        };
        let placement: Vec<RationalPoint> = h.vertices.iter().map(|v| place(v)).collect();
        let geometry = GeometricComplex { complex: h.clone(), placement };
        let report = verify_embedding(&geometry, EmbeddingMode::Embedding);
        if report.ok {
            return Ok(RealizedH { geometry, report, shrink_round: round, note: NOTE });
        }
    }
    Err(GeometryError::RealizationFailed(SHRINK_ROUNDS))
}
