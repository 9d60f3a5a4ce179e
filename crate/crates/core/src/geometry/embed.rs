use num_traits::Zero;
use serde::Serialize;

use super::intersect::intersection_vertices;
use super::{rank, GeometricComplex, RationalPoint, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EmbeddingMode {
    /// Any two simplices meet exactly in their common face.
    Embedding,
    /// Only vertex-disjoint simplices need disjoint images.
    AlmostEmbedding,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub first: Vec<String>,
    pub second: Vec<String>,
    pub kind: String,
    pub witness: RationalPoint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub mode: EmbeddingMode,
    pub ok: bool,
    pub simplices: usize,
    pub pairs_checked: usize,
    pub violations: Vec<Violation>,
}

fn bbox_disjoint(points: &[RationalPoint], a: &[usize], b: &[usize]) -> bool {
    let d = points[a[0]].dim();
    (0..d).any(|k| {
        let lo = |s: &[usize]| s.iter().map(|&i| &points[i].0[k]).min().unwrap().clone();
        let hi = |s: &[usize]| s.iter().map(|&i| &points[i].0[k]).max().unwrap().clone();
        hi(a) < lo(b) || hi(b) < lo(a)
    })
}

/// Checks a list of simplices (vertex index lists, any dimension) placed by
/// `points`.
pub(crate) fn verify_simplices(
    points: &[RationalPoint],
    simplices: &[Vec<usize>],
    names: &[String],
    mode: EmbeddingMode,
) -> EmbeddingReport {
    let label = |s: &[usize]| s.iter().map(|&i| names[i].clone()).collect::<Vec<_>>();
    let mut violations = Vec::new();
    for s in simplices {
        let base = &points[s[0]];
        let diffs: Vec<Vec<Q>> = s[1..].iter().map(|&i| points[i].sub(base)).collect();
        if rank(&diffs) != diffs.len() {
            violations.push(Violation {
                first: label(s),
                second: Vec::new(),
                kind: "degenerate simplex".to_string(),
                witness: base.clone(),
            });
        }
    }
    let mut pairs_checked = 0;
    for (i, a) in simplices.iter().enumerate() {
        for b in &simplices[i + 1..] {
            let shared: Vec<usize> = a.iter().copied().filter(|v| b.contains(v)).collect();
            if mode == EmbeddingMode::AlmostEmbedding && !shared.is_empty() {
                continue;
            }
            // a face of the other simplex meets it in itself
            if shared.len() == a.len() || shared.len() == b.len() {
                continue;
            }
            pairs_checked += 1;
            if shared.is_empty() && bbox_disjoint(points, a, b) {
                continue;
            }
            let pa: Vec<RationalPoint> = a.iter().map(|&v| points[v].clone()).collect();
            let pb: Vec<RationalPoint> = b.iter().map(|&v| points[v].clone()).collect();
            let outside = |s: &[usize], w: &[Q]| {
                s.iter().zip(w).any(|(v, x)| !shared.contains(v) && !x.is_zero())
            };
            if let Some((la, _)) = intersection_vertices(&pa, &pb)
                .into_iter()
                .find(|(la, lb)| outside(a, la) || outside(b, lb))
            {
                let d = pa[0].dim();
                let witness = RationalPoint(
                    (0..d)
                        .map(|k| pa.iter().zip(&la).fold(Q::zero(), |acc, (p, w)| acc + &p.0[k] * w))
                        .collect(),
                );
                violations.push(Violation {
                    first: label(a),
                    second: label(b),
                    kind: if shared.is_empty() {
                        "disjoint simplices meet".to_string()
                    } else {
                        "simplices meet outside their common face".to_string()
                    },
                    witness,
                });
            }
        }
    }
    EmbeddingReport {
        mode,
        ok: violations.is_empty(),
        simplices: simplices.len(),
        pairs_checked,
        violations,
    }
}

/// Exhaustive exact check of every simplex pair of the (flattened) complex.
pub fn verify_embedding(g: &GeometricComplex, mode: EmbeddingMode) -> EmbeddingReport {
    let flat = g.complex.flatten();
    assert_eq!(flat.vertices.len(), g.placement.len(), "placement must cover every vertex");
    let simplices: Vec<Vec<usize>> = (0..flat.vertices.len())
        .map(|v| vec![v])
        .chain(flat.edges.iter().map(|e| e.to_vec()))
        .chain(flat.triangles.iter().map(|t| t.to_vec()))
        .collect();
    verify_simplices(&g.placement, &simplices, &flat.vertices, mode)
}
