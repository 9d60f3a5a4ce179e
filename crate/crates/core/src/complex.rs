//! Simplicial 2-complexes with attached polygonal 2-cells, and the builders
//! for the base blocks `X`, `Y`, their wedge `Z` and the complexes `K_φ`.
//!
//! Simplices are sorted index tuples; increasing index order is the positive
//! orientation. An attached cell indexes its interior vertices after the base
//! vertices: in a complex with `n` vertices, interior vertex `j` of a cell has
//! index `n + j` inside that cell's `interior_triangles`.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::word::{exponent_sums, free_reduce, Generator, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttachedCell {
    /// Cyclic vertex sequence; consecutive entries (and last/first) span base edges.
    pub boundary: Vec<usize>,
    pub interior_vertices: Vec<String>,
    pub interior_triangles: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Complex2 {
    pub vertices: Vec<String>,
    pub edges: BTreeSet<[usize; 2]>,
    pub triangles: BTreeSet<[usize; 3]>,
    #[serde(default)]
    pub cells: Vec<AttachedCell>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("unknown vertex '{0}'")]
    UnknownVertex(String),
    #[error("cannot identify a vertex with itself")]
    SameVertex,
    #[error("identification creates degenerate simplex: {0} and {1} span an edge")]
    DegenerateIdentification(String, String),
    #[error("not a K_phi complex: {0}")]
    NotKPhi(String),
    #[error("invalid complex: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error("malformed complex JSON: {0}")]
    Json(String),
}

pub(crate) fn sorted2(a: usize, b: usize) -> [usize; 2] {
    if a < b {
        [a, b]
    } else {
        [b, a]
    }
}

pub(crate) fn sorted3(a: usize, b: usize, c: usize) -> [usize; 3] {
    let mut t = [a, b, c];
    t.sort_unstable();
    t
}

pub(crate) fn triangle_edges(t: [usize; 3]) -> [[usize; 2]; 3] {
    [[t[1], t[2]], [t[0], t[2]], [t[0], t[1]]]
}

impl Complex2 {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Looks a vertex up by name. A merged vertex `p~q` answers to `p` and `q`.
    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .or_else(|| self.vertices.iter().position(|v| v.split('~').any(|part| part == name)))
    }

    fn require(&self, name: &str) -> Result<usize, ComplexError> {
        self.vertex_index(name).ok_or_else(|| ComplexError::UnknownVertex(name.to_string()))
    }

    /// `V - E + F` of the simplicial complex obtained by [`Complex2::flatten`].
    pub fn euler_characteristic(&self) -> i64 {
        let flat = self.flatten();
        flat.vertices.len() as i64 - flat.edges.len() as i64 + flat.triangles.len() as i64
    }

    /// Adds a triangle together with its edges.
    pub fn insert_triangle(&mut self, t: [usize; 3]) {
        let t = sorted3(t[0], t[1], t[2]);
        for e in triangle_edges(t) {
            self.edges.insert(e);
        }
        self.triangles.insert(t);
    }

    /// The plain simplicial complex: every cell's interior vertices and
    /// triangles become ordinary simplices.
    pub fn flatten(&self) -> Complex2 {
        let mut out = Complex2 {
            vertices: self.vertices.clone(),
            edges: self.edges.clone(),
            triangles: self.triangles.clone(),
            cells: Vec::new(),
        };
        let n = self.vertices.len();
        for cell in &self.cells {
            let offset = out.vertices.len();
            out.vertices.extend(cell.interior_vertices.iter().cloned());
            let global = |i: usize| if i < n { i } else { offset + (i - n) };
            for t in &cell.interior_triangles {
                out.insert_triangle([global(t[0]), global(t[1]), global(t[2])]);
            }
        }
        out
    }

    /// Full subcomplex spanned by `keep`, vertex order preserved. Cells are dropped.
    pub fn induced(&self, keep: &BTreeSet<usize>) -> Complex2 {
        let map: BTreeMap<usize, usize> =
            keep.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        Complex2 {
            vertices: keep.iter().map(|&i| self.vertices[i].clone()).collect(),
            edges: self
                .edges
                .iter()
                .filter_map(|e| Some(sorted2(*map.get(&e[0])?, *map.get(&e[1])?)))
                .collect(),
            triangles: self
                .triangles
                .iter()
                .filter_map(|t| Some(sorted3(*map.get(&t[0])?, *map.get(&t[1])?, *map.get(&t[2])?)))
                .collect(),
            cells: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("complex serializes")
    }

    /// Parses the complex JSON format, normalizes simplex orientation and validates.
    pub fn from_json(text: &str) -> Result<Complex2, ComplexError> {
        let raw: Complex2 = serde_json::from_str(text).map_err(|e| ComplexError::Json(e.to_string()))?;
        let mut problems = Vec::new();
        for e in &raw.edges {
            if e[0] == e[1] {
                problems.push(format!("degenerate edge {e:?}"));
            }
        }
        for t in &raw.triangles {
            if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                problems.push(format!("degenerate triangle {t:?}"));
            }
        }
        if !problems.is_empty() {
            return Err(ComplexError::Invalid(problems));
        }
        let k = Complex2 {
            vertices: raw.vertices,
            edges: raw.edges.into_iter().map(|e| sorted2(e[0], e[1])).collect(),
            triangles: raw.triangles.into_iter().map(|t| sorted3(t[0], t[1], t[2])).collect(),
            cells: raw
                .cells
                .into_iter()
                .map(|c| AttachedCell {
                    interior_triangles: c
                        .interior_triangles
                        .into_iter()
                        .map(|t| sorted3(t[0], t[1], t[2]))
                        .collect(),
                    ..c
                })
                .collect(),
        };
        let violations = validate(&k);
        if violations.is_empty() {
            Ok(k)
        } else {
            Err(ComplexError::Invalid(violations))
        }
    }
}

/// All triangles on `n` vertices named `{prefix}0..`, with every edge.
pub fn full_skeleton(prefix: &str, n: usize) -> Complex2 {
    let mut k = Complex2 {
        vertices: (0..n).map(|i| format!("{prefix}{i}")).collect(),
        ..Default::default()
    };
    for i in 0..n {
        for j in i + 1..n {
            k.edges.insert([i, j]);
            for l in j + 1..n {
                k.triangles.insert([i, j, l]);
            }
        }
    }
    k
}

/// Every triangle on `{v0..v6}` except `{v4, v5, v6}`; all 21 edges.
pub fn build_base_block(prefix: &str) -> Complex2 {
    let mut k = full_skeleton(prefix, 7);
    k.triangles.remove(&[4, 5, 6]);
    k
}

/// A closed directed edge path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LoopPath {
    pub edges: Vec<(usize, usize)>,
}

impl LoopPath {
    pub fn reversed(&self) -> LoopPath {
        LoopPath { edges: self.edges.iter().rev().map(|&(u, v)| (v, u)).collect() }
    }

    /// Tail vertices in order.
    pub fn vertices(&self) -> Vec<usize> {
        self.edges.iter().map(|&(u, _)| u).collect()
    }
}

/// `Z = X ∨ Y` with its basepoint and the two generating loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wedge {
    pub complex: Complex2,
    pub basepoint: usize,
    pub loop_a: LoopPath,
    pub loop_b: LoopPath,
}

/// Vertex layout: `x0..x5`, `o` (= x6 ~ y6), `y0..y5`.
pub fn build_z() -> Wedge {
    let mut vertices: Vec<String> = (0..6).map(|i| format!("x{i}")).collect();
    vertices.push("o".to_string());
    vertices.extend((0..6).map(|i| format!("y{i}")));
    let x = |i: usize| i; // x6 lands on o = 6
    let y = |i: usize| if i == 6 { 6 } else { 7 + i };
    let block = build_base_block("v");
    let mut complex = Complex2 { vertices, ..Default::default() };
    for relabel in [&x as &dyn Fn(usize) -> usize, &y] {
        for e in &block.edges {
            complex.edges.insert(sorted2(relabel(e[0]), relabel(e[1])));
        }
        for t in &block.triangles {
            complex.triangles.insert(sorted3(relabel(t[0]), relabel(t[1]), relabel(t[2])));
        }
    }
    let o = 6;
    Wedge {
        complex,
        basepoint: o,
        loop_a: LoopPath { edges: vec![(o, x(4)), (x(4), x(5)), (x(5), o)] },
        loop_b: LoopPath { edges: vec![(o, y(4)), (y(4), y(5)), (y(5), o)] },
    }
}

impl Wedge {
    fn letter_path(&self, l: Letter) -> LoopPath {
        let base = match l.generator {
            Generator::A => &self.loop_a,
            Generator::B => &self.loop_b,
        };
        if l.inverse {
            base.reversed()
        } else {
            base.clone()
        }
    }

    /// Reads a closed vertex path back as a word in the loops `a`, `b`.
    /// Returns `None` if the path is not a concatenation of letter loops.
    pub fn decode_boundary(&self, boundary: &[usize]) -> Option<Word> {
        if !boundary.len().is_multiple_of(3) {
            return None;
        }
        let letters = [Letter::A, Letter::A_INV, Letter::B, Letter::B_INV];
        let mut out = Vec::new();
        for chunk in boundary.chunks(3) {
            let l = letters.iter().copied().find(|&l| self.letter_path(l).vertices() == chunk)?;
            out.push(l);
        }
        let w = free_reduce(out.iter().copied());
        (w.len() == out.len()).then_some(w)
    }
}

/// Result of attaching the 2-cell: the complex plus any hypothesis warnings.
#[derive(Debug, Clone)]
pub struct KPhi {
    pub complex: Complex2,
    pub warnings: Vec<String>,
}

/// Attaches a disk along `phi`. The interior is triangulated with the
/// boundary ring, a middle ring of fresh vertices, and a central apex.
pub fn attach_disk(z: &Wedge, phi: &Word) -> KPhi {
    let mut warnings = Vec::new();
    let mut complex = z.complex.clone();
    if phi.is_identity() {
        warnings.push("phi = 1 is excluded for K_phi; no cell attached".to_string());
        return KPhi { complex, warnings };
    }
    if exponent_sums(phi) != (0, 0) {
        warnings.push(format!("phi = {phi} is not in the commutator subgroup [F,F]"));
    }
    let boundary: Vec<usize> =
        phi.letters().iter().flat_map(|&l| z.letter_path(l).vertices()).collect();
    let n = boundary.len();
    let base = complex.vertices.len();
    let cell_index = complex.cells.len();
    let middle = |i: usize| base + i;
    let apex = base + n;
    let mut interior_vertices: Vec<String> =
        (0..n).map(|i| format!("D{cell_index}:m{i}")).collect();
    interior_vertices.push(format!("D{cell_index}:c"));
    let mut interior_triangles = Vec::with_capacity(3 * n);
    for i in 0..n {
        let j = (i + 1) % n;
        interior_triangles.push(sorted3(boundary[i], boundary[j], middle(i)));
        interior_triangles.push(sorted3(boundary[j], middle(i), middle(j)));
        interior_triangles.push(sorted3(middle(i), middle(j), apex));
    }
    complex.cells.push(AttachedCell { boundary, interior_vertices, interior_triangles });
    KPhi { complex, warnings }
}

/// Identifies `p` with `q`. The merged vertex takes `p`'s slot and the name `p~q`.
pub fn quotient_points(k: &Complex2, p: &str, q: &str) -> Result<Complex2, ComplexError> {
    let pi = k.require(p)?;
    let qi = k.require(q)?;
    if pi == qi {
        return Err(ComplexError::SameVertex);
    }
    if k.edges.contains(&sorted2(pi, qi)) {
        return Err(ComplexError::DegenerateIdentification(p.to_string(), q.to_string()));
    }
    let n = k.vertices.len();
    let shift = |i: usize| if i > qi { i - 1 } else { i };
    let relabel = |i: usize| if i == qi { shift(pi) } else { shift(i) };
    let mut vertices = k.vertices.clone();
    vertices[pi] = format!("{}~{}", k.vertices[pi], k.vertices[qi]);
    vertices.remove(qi);
    let cells = k
        .cells
        .iter()
        .map(|c| AttachedCell {
            boundary: c.boundary.iter().map(|&v| relabel(v)).collect(),
            interior_vertices: c.interior_vertices.clone(),
            interior_triangles: c
                .interior_triangles
                .iter()
                .map(|t| {
                    let r = |i: usize| if i < n { relabel(i) } else { i - 1 };
                    sorted3(r(t[0]), r(t[1]), r(t[2]))
                })
                .collect(),
        })
        .collect();
    Ok(Complex2 {
        vertices,
        edges: k.edges.iter().map(|e| sorted2(relabel(e[0]), relabel(e[1]))).collect(),
        triangles: k
            .triangles
            .iter()
            .map(|t| sorted3(relabel(t[0]), relabel(t[1]), relabel(t[2])))
            .collect(),
        cells,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedSubcomplex {
    /// `K_φ` minus the open cells `D`, `x1x2x3`, `y1y2y3`.
    H,
    /// Full subcomplex of `H` on `x1..x6`.
    HatX,
    /// Full subcomplex of `H` on `y1..y6`.
    HatY,
}

fn basepoint_alias(k: &Complex2, side: char) -> Option<usize> {
    k.vertex_index(&format!("{side}6")).or_else(|| k.vertex_index("o"))
}

pub fn named_subcomplex(k: &Complex2, which: NamedSubcomplex) -> Result<Complex2, ComplexError> {
    let find = |name: &str| {
        k.vertex_index(name).ok_or_else(|| ComplexError::NotKPhi(format!("missing vertex {name}")))
    };
    let tx = sorted3(find("x1")?, find("x2")?, find("x3")?);
    let ty = sorted3(find("y1")?, find("y2")?, find("y3")?);
    for (t, name) in [(tx, "x1x2x3"), (ty, "y1y2y3")] {
        if !k.triangles.contains(&t) {
            return Err(ComplexError::NotKPhi(format!("missing triangle {name}")));
        }
    }
    let mut h = k.clone();
    h.cells.clear();
    h.triangles.remove(&tx);
    h.triangles.remove(&ty);
    let side = match which {
        NamedSubcomplex::H => return Ok(h),
        NamedSubcomplex::HatX => 'x',
        NamedSubcomplex::HatY => 'y',
    };
    let mut keep = BTreeSet::new();
    for i in 1..=5 {
        keep.insert(find(&format!("{side}{i}"))?);
    }
    keep.insert(
        basepoint_alias(k, side)
            .ok_or_else(|| ComplexError::NotKPhi(format!("missing vertex {side}6")))?,
    );
    Ok(h.induced(&keep))
}

fn names(k: &Complex2, simplex: &[usize]) -> String {
    simplex
        .iter()
        .map(|&i| k.vertices.get(i).map_or_else(|| format!("#{i}"), Clone::clone))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Lists every broken invariant; empty means the complex is well formed.
pub fn validate(k: &Complex2) -> Vec<String> {
    let mut out = Vec::new();
    let n = k.vertices.len();
    let mut seen = HashSet::new();
    for v in &k.vertices {
        if v.is_empty() {
            out.push("empty vertex name".to_string());
        }
        if !seen.insert(v.as_str()) {
            out.push(format!("duplicate vertex name {v}"));
        }
    }
    for e in &k.edges {
        if e[0] >= e[1] || e[1] >= n {
            out.push(format!("malformed edge {e:?}"));
        }
    }
    for t in &k.triangles {
        if t[0] >= t[1] || t[1] >= t[2] || t[2] >= n {
            out.push(format!("malformed triangle {t:?}"));
            continue;
        }
        for e in triangle_edges(*t) {
            if !k.edges.contains(&e) {
                out.push(format!("triangle {} missing face {}", names(k, t), names(k, &e)));
            }
        }
    }
    for (ci, cell) in k.cells.iter().enumerate() {
        validate_cell(k, ci, cell, &seen, &mut out);
    }
    out
}

fn validate_cell(
    k: &Complex2,
    ci: usize,
    cell: &AttachedCell,
    base_names: &HashSet<&str>,
    out: &mut Vec<String>,
) {
    let n = k.vertices.len();
    let b = &cell.boundary;
    if b.len() < 3 {
        out.push(format!("cell {ci}: boundary shorter than 3"));
        return;
    }
    let mut path_edges: BTreeMap<[usize; 2], i64> = BTreeMap::new();
    for i in 0..b.len() {
        let (u, v) = (b[i], b[(i + 1) % b.len()]);
        if u >= n || v >= n {
            out.push(format!("cell {ci}: boundary vertex out of range"));
            return;
        }
        if u == v || !k.edges.contains(&sorted2(u, v)) {
            out.push(format!("cell {ci}: boundary step {} is not a stored edge", names(k, &[u, v])));
        }
        *path_edges.entry(sorted2(u, v)).or_default() += 1;
    }
    let mut local = HashSet::new();
    for name in &cell.interior_vertices {
        if base_names.contains(name.as_str()) {
            out.push(format!("cell {ci}: interior vertex {name} collides with a base vertex"));
        }
        if !local.insert(name.as_str()) {
            out.push(format!("cell {ci}: duplicate interior vertex {name}"));
        }
    }
    let total = n + cell.interior_vertices.len();
    let mut interior_edges: BTreeMap<[usize; 2], usize> = BTreeMap::new();
    let mut rim: BTreeMap<[usize; 2], i64> = BTreeMap::new();
    let mut used = BTreeSet::new();
    let mut tris = BTreeSet::new();
    for t in &cell.interior_triangles {
        if t[0] >= t[1] || t[1] >= t[2] || t[2] >= total {
            out.push(format!("cell {ci}: malformed interior triangle {t:?}"));
            return;
        }
        if t[2] < n {
            out.push(format!("cell {ci}: interior triangle {t:?} has no interior vertex"));
        }
        if !tris.insert(*t) {
            out.push(format!("cell {ci}: repeated interior triangle {t:?}"));
        }
        for &v in t.iter().filter(|&&v| v >= n) {
            used.insert(v);
        }
        for e in triangle_edges(*t) {
            if e[1] < n {
                *rim.entry(e).or_default() += 1;
            } else {
                *interior_edges.entry(e).or_default() += 1;
            }
        }
    }
    if used.len() != cell.interior_vertices.len() {
        out.push(format!("cell {ci}: unused interior vertices"));
    }
    if let Some((e, d)) = interior_edges.iter().find(|(_, &d)| d != 2) {
        out.push(format!("cell {ci}: interior edge {e:?} lies on {d} triangles, expected 2"));
    }
    if rim != path_edges {
        out.push(format!("cell {ci}: triangulation rim does not match the boundary path"));
    }
    let chi = cell.interior_vertices.len() as i64 - interior_edges.len() as i64
        + cell.interior_triangles.len() as i64;
    if chi != 1 {
        out.push(format!("cell {ci}: disk Euler characteristic {chi}, expected 1"));
    }
}
