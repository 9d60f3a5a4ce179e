use super::embed::{verify_simplices, EmbeddingMode, EmbeddingReport};
use super::{GeometricComplex, RationalPoint};
use crate::complex::Complex2;

/// The join of two triangle boundaries, a triangulated 3-sphere, placed as
/// the boundary of the convex hull of two triangles lying in complementary
/// coordinate planes with the origin inside both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinSphere {
    /// `x1 x2 x3` span the first circle, `x4 x5 x6` the second.
    pub vertices: Vec<String>,
    pub edges: Vec<Vec<usize>>,
    pub triangles: Vec<Vec<usize>>,
    pub tetrahedra: Vec<Vec<usize>>,
    pub placement: Vec<RationalPoint>,
}

/// First circle: the (e1, e2) triangle. Second circle: the (e3, e4) triangle.
pub(crate) const FIRST_CIRCLE: [[i64; 4]; 3] = [[2, 0, 0, 0], [-1, 1, 0, 0], [-1, -1, 0, 0]];
pub(crate) const SECOND_CIRCLE: [[i64; 4]; 3] = [[0, 0, 2, 0], [0, 0, -1, 1], [0, 0, -1, -1]];

pub fn join_sphere() -> JoinSphere {
    let placement: Vec<RationalPoint> =
        FIRST_CIRCLE.iter().chain(&SECOND_CIRCLE).map(|p| RationalPoint::from_ints(p)).collect();
    // proper faces of each circle: vertices and edges (and the empty face)
    let faces = |offset: usize| -> Vec<Vec<usize>> {
        let mut f = vec![vec![]];
        f.extend((0..3).map(|i| vec![offset + i]));
        f.extend([[0, 1], [0, 2], [1, 2]].iter().map(|e| vec![offset + e[0], offset + e[1]]));
        f
    };
    let mut by_dim: [Vec<Vec<usize>>; 4] = Default::default();
    for a in faces(0) {
        for b in faces(3) {
            let s: Vec<usize> = a.iter().chain(&b).copied().collect();
            if !s.is_empty() {
                by_dim[s.len() - 1].push(s);
            }
        }
    }
    for d in by_dim.iter_mut() {
        d.sort();
    }
    let [_, edges, triangles, tetrahedra] = by_dim;
    JoinSphere {
        vertices: (1..=6).map(|i| format!("x{i}")).collect(),
        edges,
        triangles,
        tetrahedra,
        placement,
    }
}

impl JoinSphere {
    pub fn face_vector(&self) -> (usize, usize, usize, usize) {
        (self.vertices.len(), self.edges.len(), self.triangles.len(), self.tetrahedra.len())
    }

    pub fn euler_characteristic(&self) -> i64 {
        let (v, e, t, k) = self.face_vector();
        v as i64 - e as i64 + t as i64 - k as i64
    }

    pub fn two_skeleton(&self) -> GeometricComplex {
        let mut complex = Complex2 { vertices: self.vertices.clone(), ..Default::default() };
        for e in &self.edges {
            complex.edges.insert([e[0], e[1]]);
        }
        for t in &self.triangles {
            complex.insert_triangle([t[0], t[1], t[2]]);
        }
        GeometricComplex { complex, placement: self.placement.clone() }
    }

    /// Exact check over all simplices including the tetrahedra.
    pub fn verify(&self) -> EmbeddingReport {
        let simplices: Vec<Vec<usize>> = (0..self.vertices.len())
            .map(|v| vec![v])
            .chain(self.edges.iter().cloned())
            .chain(self.triangles.iter().cloned())
            .chain(self.tetrahedra.iter().cloned())
            .collect();
        verify_simplices(&self.placement, &simplices, &self.vertices, EmbeddingMode::Embedding)
    }
}
