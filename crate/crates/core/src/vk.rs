//! Van Kampen obstruction of a simplicial 2-complex in `R^4`.
//!
//! A generic simplexwise-linear map with exact coordinates gives an
//! intersection number for every pair of vertex-disjoint triangles. The
//! obstruction vanishes when this cochain is an integer combination of the
//! finger-move coboundaries indexed by (triangle, disjoint edge) pairs.
//!
//! Pairs are unordered: for two 2-simplices in `R^4` swapping the factors
//! does not change the intersection sign, so the unordered system over `Z`
//! is equivalent to the equivariant one.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::complex::{triangle_edges, Complex2};
use crate::geometry::RationalPoint;
use crate::solver::{solve_integer_system, Refutation, Ring, Solution, SolveError, SparseMatrix};

/// Coordinates are drawn from `[-COORD_RANGE, COORD_RANGE]`.
pub const COORD_RANGE: i64 = 10_000;
/// Re-draws allowed before giving up on genericity.
pub const RETRY_BUDGET: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PairDims {
    /// Two triangles.
    TwoTwo,
    /// A triangle and an edge.
    TwoOne,
}

/// Two vertex-disjoint simplices, by id. For `TwoTwo` both ids index the
/// triangle list and `first < second`; for `TwoOne` `first` is a triangle id
/// and `second` an edge id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DeletedPair {
    pub first: usize,
    pub second: usize,
    pub dims: PairDims,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObstructionError {
    #[error("genericity not reached after {0} re-draws")]
    GenericityNotReached(usize),
    #[error("degenerate configuration for triangles {0:?} and {1:?}")]
    Degenerate([usize; 3], [usize; 3]),
    #[error("map has {got} points, complex has {expected} vertices")]
    MapSize { expected: usize, got: usize },
    #[error("map coordinates must lie in Q^4")]
    Dimension,
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Sorted simplex lists of a complex with its cells flattened in.
#[derive(Debug, Clone)]
pub struct Simplices {
    pub vertex_count: usize,
    pub triangles: Vec<[usize; 3]>,
    pub edges: Vec<[usize; 2]>,
}

impl Simplices {
    pub fn of(k: &Complex2) -> Simplices {
        let flat = if k.cells.is_empty() { k.clone() } else { k.flatten() };
        Simplices {
            vertex_count: flat.vertices.len(),
            triangles: flat.triangles.into_iter().collect(),
            edges: flat.edges.into_iter().collect(),
        }
    }
}

fn disjoint(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|v| !b.contains(v))
}

pub fn deleted_pairs(k: &Complex2, dims: PairDims) -> Vec<DeletedPair> {
    pairs_of(&Simplices::of(k), dims)
}

fn pairs_of(s: &Simplices, dims: PairDims) -> Vec<DeletedPair> {
    let mut out = Vec::new();
    match dims {
        PairDims::TwoTwo => {
            for (i, a) in s.triangles.iter().enumerate() {
                for (j, b) in s.triangles.iter().enumerate().skip(i + 1) {
                    if disjoint(a, b) {
                        out.push(DeletedPair { first: i, second: j, dims });
                    }
                }
            }
        }
        PairDims::TwoOne => {
            for (i, a) in s.triangles.iter().enumerate() {
                for (j, e) in s.edges.iter().enumerate() {
                    if disjoint(a, e) {
                        out.push(DeletedPair { first: i, second: j, dims });
                    }
                }
            }
        }
    }
    out
}

/// Exact vertex positions in `Q^4`, indexed like the flattened complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMap {
    pub coordinates: Vec<RationalPoint>,
}

/// Integer coordinates after clearing denominators. Scaling by a positive
/// constant preserves every intersection number.
enum Lattice {
    Small(Vec<[i128; 4]>),
    Big(Vec<[BigInt; 4]>),
}

/// Magnitude bound under which every 4x4 determinant of coordinate
/// differences fits in `i128`.
const SMALL_BOUND: i64 = 1 << 27;

impl RationalMap {
    pub fn from_integers(points: &[[i64; 4]]) -> RationalMap {
        RationalMap { coordinates: points.iter().map(|p| RationalPoint::from_ints(p)).collect() }
    }

    fn lattice(&self) -> Result<Lattice, ObstructionError> {
        if self.coordinates.iter().any(|p| p.dim() != 4) {
            return Err(ObstructionError::Dimension);
        }
        let lcm = self
            .coordinates
            .iter()
            .flat_map(|p| p.0.iter())
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let scaled: Vec<[BigInt; 4]> = self
            .coordinates
            .iter()
            .map(|p| std::array::from_fn(|i| (&p.0[i] * &lcm).to_integer()))
            .collect();
        let small = scaled.iter().flatten().all(|v| v.abs() < BigInt::from(SMALL_BOUND));
        Ok(if small {
            Lattice::Small(
                scaled.iter().map(|p| std::array::from_fn(|i| p[i].to_i128().unwrap())).collect(),
            )
        } else {
            Lattice::Big(scaled)
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PairOutcome {
    Disjoint,
    Transversal(i64),
    Degenerate,
}

trait Exact: Clone + Signed + PartialOrd {}
impl<T: Clone + Signed + PartialOrd> Exact for T {}

fn minor2<T: Exact>(a: &[T; 4], b: &[T; 4], i: usize, j: usize) -> T {
    a[i].clone() * b[j].clone() - a[j].clone() * b[i].clone()
}

/// Determinant of the matrix with the given columns.
fn det4<T: Exact>(c: [&[T; 4]; 4]) -> T {
    let s = |i, j| minor2(c[0], c[1], i, j);
    let t = |i, j| minor2(c[2], c[3], i, j);
    s(0, 1) * t(2, 3) - s(0, 2) * t(1, 3) + s(0, 3) * t(1, 2) + s(1, 2) * t(0, 3) - s(1, 3) * t(0, 2)
        + s(2, 3) * t(0, 1)
}

fn diff<T: Exact>(a: &[T; 4], b: &[T; 4]) -> [T; 4] {
    std::array::from_fn(|i| a[i].clone() - b[i].clone())
}

/// Intersection of two closed triangles in general position in `R^4`.
fn triangle_pair<T: Exact>(p: [&[T; 4]; 3], q: [&[T; 4]; 3]) -> PairOutcome {
    let u1 = diff(p[1], p[0]);
    let u2 = diff(p[2], p[0]);
    let v1 = diff(q[1], q[0]);
    let v2 = diff(q[2], q[0]);
    let rhs = diff(q[0], p[0]);
    let d = det4([&u1, &u2, &v1, &v2]);
    if d.is_zero() {
        return PairOutcome::Degenerate;
    }
    // columns (u1, u2, -v1, -v2) solve s1 u1 + s2 u2 - t1 v1 - t2 v2 = q0 - p0
    let nv1: [T; 4] = std::array::from_fn(|i| -v1[i].clone());
    let nv2: [T; 4] = std::array::from_fn(|i| -v2[i].clone());
    let flip = if d.is_negative() { -T::one() } else { T::one() };
    let n = [
        det4([&rhs, &u2, &nv1, &nv2]),
        det4([&u1, &rhs, &nv1, &nv2]),
        det4([&u1, &u2, &rhs, &nv2]),
        det4([&u1, &u2, &nv1, &rhs]),
    ]
    .map(|x| x * flip.clone());
    let dd = d.abs();
    let first = n[0].clone() + n[1].clone();
    let second = n[2].clone() + n[3].clone();
    let zero = T::zero();
    let closed = n.iter().all(|x| *x >= zero) && first <= dd && second <= dd;
    if !closed {
        return PairOutcome::Disjoint;
    }
    let open = n.iter().all(|x| *x > zero) && first < dd && second < dd;
    if !open {
        return PairOutcome::Degenerate;
    }
    PairOutcome::Transversal(if d.is_negative() { -1 } else { 1 })
}

fn outcome(lattice: &Lattice, a: [usize; 3], b: [usize; 3]) -> PairOutcome {
    match lattice {
        Lattice::Small(pts) => {
            triangle_pair(a.map(|i| &pts[i]), b.map(|i| &pts[i]))
        }
        Lattice::Big(pts) => triangle_pair(a.map(|i| &pts[i]), b.map(|i| &pts[i])),
    }
}

/// Signed intersection count of two vertex-disjoint triangles under `f`.
/// The sign is that of `det(a1-a0, a2-a0, b1-b0, b2-b0)`, which is symmetric
/// in the two triangles.
pub fn pair_intersection_number(
    f: &RationalMap,
    first: [usize; 3],
    second: [usize; 3],
) -> Result<i64, ObstructionError> {
    match outcome(&f.lattice()?, first, second) {
        PairOutcome::Disjoint => Ok(0),
        PairOutcome::Transversal(s) => Ok(s),
        PairOutcome::Degenerate => Err(ObstructionError::Degenerate(first, second)),
    }
}

/// Vertices involved in a genericity failure; empty means `f` is generic.
fn offending_vertices(s: &Simplices, f: &RationalMap) -> Result<BTreeSet<usize>, ObstructionError> {
    if f.coordinates.len() != s.vertex_count {
        return Err(ObstructionError::MapSize { expected: s.vertex_count, got: f.coordinates.len() });
    }
    let lattice = f.lattice()?;
    let mut bad = BTreeSet::new();
    let mut seen: HashMap<&RationalPoint, usize> = HashMap::new();
    for (i, p) in f.coordinates.iter().enumerate() {
        if let Some(&j) = seen.get(p) {
            bad.insert(i);
            bad.insert(j);
        } else {
            seen.insert(p, i);
        }
    }
    for pair in pairs_of(s, PairDims::TwoTwo) {
        let (a, b) = (s.triangles[pair.first], s.triangles[pair.second]);
        if outcome(&lattice, a, b) == PairOutcome::Degenerate {
            bad.extend(a);
            bad.extend(b);
        }
    }
    Ok(bad)
}

/// Checks that all vertex images are distinct and every disjoint triangle
/// pair meets transversally in interior points or not at all.
pub fn is_generic(k: &Complex2, f: &RationalMap) -> Result<bool, ObstructionError> {
    Ok(offending_vertices(&Simplices::of(k), f)?.is_empty())
}

pub fn sample_generic_map(k: &Complex2, seed: u64) -> Result<RationalMap, ObstructionError> {
    sample_for(&Simplices::of(k), seed)
}

fn sample_for(s: &Simplices, seed: u64) -> Result<RationalMap, ObstructionError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| -> RationalPoint {
        let p: [i64; 4] = std::array::from_fn(|_| rng.random_range(-COORD_RANGE..=COORD_RANGE));
        RationalPoint::from_ints(&p)
    };
    let mut f = RationalMap { coordinates: (0..s.vertex_count).map(|_| draw(&mut rng)).collect() };
    for _ in 0..=RETRY_BUDGET {
        let bad = offending_vertices(s, &f)?;
        if bad.is_empty() {
            return Ok(f);
        }
        for v in bad {
            f.coordinates[v] = draw(&mut rng);
        }
    }
    Err(ObstructionError::GenericityNotReached(RETRY_BUDGET))
}

/// Intersection numbers on `(2,2)` deleted pairs; zero values are not stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Cochain4 {
    pub values: BTreeMap<DeletedPair, i64>,
}

impl Cochain4 {
    pub fn to_vector(&self, rows: &[DeletedPair]) -> Vec<i64> {
        rows.iter().map(|p| self.values.get(p).copied().unwrap_or(0)).collect()
    }

    pub fn total(&self) -> i64 {
        self.values.values().sum()
    }
}

pub fn vk_cocycle(f: &RationalMap, k: &Complex2) -> Result<Cochain4, ObstructionError> {
    cocycle_for(&Simplices::of(k), f)
}

fn cocycle_for(s: &Simplices, f: &RationalMap) -> Result<Cochain4, ObstructionError> {
    if f.coordinates.len() != s.vertex_count {
        return Err(ObstructionError::MapSize { expected: s.vertex_count, got: f.coordinates.len() });
    }
    let lattice = f.lattice()?;
    let mut values = BTreeMap::new();
    for pair in pairs_of(s, PairDims::TwoTwo) {
        let (a, b) = (s.triangles[pair.first], s.triangles[pair.second]);
        match outcome(&lattice, a, b) {
            PairOutcome::Disjoint => {}
            PairOutcome::Transversal(v) => {
                values.insert(pair, v);
            }
            PairOutcome::Degenerate => return Err(ObstructionError::Degenerate(a, b)),
        }
    }
    Ok(Cochain4 { values })
}

/// Finger-move coboundaries: rows are `(2,2)` pairs, columns `(2,1)` pairs.
/// Column `(σ, e)` has entry `[e : ∂τ]` in row `{σ, τ}` for every triangle
/// `τ ⊃ e` disjoint from `σ`.
#[derive(Debug, Clone)]
pub struct CoboundaryMatrix {
    pub rows: Vec<DeletedPair>,
    pub columns: Vec<DeletedPair>,
    pub matrix: SparseMatrix,
}

pub fn coboundary_matrix(k: &Complex2) -> CoboundaryMatrix {
    coboundary_for(&Simplices::of(k))
}

fn coboundary_for(s: &Simplices) -> CoboundaryMatrix {
    let rows = pairs_of(s, PairDims::TwoTwo);
    let columns = pairs_of(s, PairDims::TwoOne);
    let row_of: HashMap<(usize, usize), usize> =
        rows.iter().enumerate().map(|(i, p)| ((p.first, p.second), i)).collect();
    let edge_id: HashMap<[usize; 2], usize> =
        s.edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    // edge id -> (triangle id, incidence sign)
    let mut cofaces: Vec<Vec<(usize, i64)>> = vec![Vec::new(); s.edges.len()];
    for (t, &tri) in s.triangles.iter().enumerate() {
        for (pos, e) in triangle_edges(tri).into_iter().enumerate() {
            let sign = if pos % 2 == 0 { 1 } else { -1 };
            cofaces[edge_id[&e]].push((t, sign));
        }
    }
    let mut matrix = SparseMatrix::new(rows.len(), columns.len());
    for (c, col) in columns.iter().enumerate() {
        let sigma = s.triangles[col.first];
        for &(tau, sign) in &cofaces[col.second] {
            if !disjoint(&sigma, &s.triangles[tau]) {
                continue;
            }
            let key = if col.first < tau { (col.first, tau) } else { (tau, col.first) };
            matrix.push(row_of[&key], c, sign);
        }
    }
    CoboundaryMatrix { rows, columns, matrix }
}

#[derive(Debug, Clone)]
pub struct ObstructionVerdict {
    pub vanishes_over_z: bool,
    pub vanishes_mod_2: bool,
    /// Coefficients over the coboundary columns reproducing the cocycle.
    pub witness: Option<Vec<i64>>,
    pub refutation: Option<Refutation>,
    pub cocycle: Cochain4,
    pub map_seed: u64,
    pub pairs_22: usize,
    pub pairs_21: usize,
}

impl ObstructionVerdict {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "vanishes_Z": self.vanishes_over_z,
            "vanishes_mod2": self.vanishes_mod_2,
            "pairs_22": self.pairs_22,
            "pairs_21": self.pairs_21,
            "seed": self.map_seed,
            "witness": self.witness,
            "refutation_row": self.refutation.as_ref().map(|r| r.row),
        })
    }

    /// Like `to_json`, with the witness and cocycle reduced to support sizes.
    pub fn summary(&self) -> serde_json::Value {
        json!({
            "vanishes_Z": self.vanishes_over_z,
            "vanishes_mod2": self.vanishes_mod_2,
            "pairs_22": self.pairs_22,
            "pairs_21": self.pairs_21,
            "seed": self.map_seed,
            "cocycle_support": self.cocycle.values.len(),
            "witness_support": self.witness.as_ref().map(|w| w.iter().filter(|&&x| x != 0).count()),
            "refutation_row": self.refutation.as_ref().map(|r| r.row),
        })
    }
}

pub fn obstruction_verdict(k: &Complex2, seed: u64) -> Result<ObstructionVerdict, ObstructionError> {
    let s = Simplices::of(k);
    let f = sample_for(&s, seed)?;
    let cocycle = cocycle_for(&s, &f)?;
    let cob = coboundary_for(&s);
    let c = cocycle.to_vector(&cob.rows);
    let over_z = solve_integer_system(&cob.matrix, &c, Ring::Integers)?;
    let mod2 = solve_integer_system(&cob.matrix, &c, Ring::Mod2)?;
    let (witness, refutation) = match over_z {
        Solution::Witness(w) => (Some(w), None),
        Solution::Refutation(r) => (None, Some(r)),
    };
    Ok(ObstructionVerdict {
        vanishes_over_z: witness.is_some(),
        vanishes_mod_2: mod2.is_witness(),
        witness,
        refutation,
        cocycle,
        map_seed: seed,
        pairs_22: cob.rows.len(),
        pairs_21: cob.columns.len(),
    })
}

/// Sum of all cocycle values mod 2 for the map drawn from `seed`.
pub fn total_mod2(k: &Complex2, seed: u64) -> Result<u8, ObstructionError> {
    let s = Simplices::of(k);
    if s.triangles.is_empty() {
        return Ok(0);
    }
    let f = sample_for(&s, seed)?;
    Ok(cocycle_for(&s, &f)?.total().rem_euclid(2) as u8)
}
