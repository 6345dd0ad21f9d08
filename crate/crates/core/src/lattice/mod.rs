//! Resolution graphs, cycles and the intersection lattice `(H, p_a)`.

mod blowup;
mod cycle;

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{self, IntMatrix};
use crate::{Error, Result};

pub use blowup::MinimalModel;
pub use cycle::{Cycle, RationalCycle};

/// An irreducible exceptional curve `E_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub id: String,
    /// `E_i · E_i`.
    pub self_int: i64,
    /// Arithmetic genus `p_a(E_i)`; nodes and cusps are folded in here.
    pub genus: i64,
}

/// Weighted dual graph of an exceptional divisor.
///
/// Edges carry the total intersection number `E_i · E_j`; there is at most one
/// record per unordered pair and never a loop. Self-intersections are not
/// restricted here so that fibre configurations (which may contain curves of
/// self-intersection `0`) share the same machinery.
#[derive(Debug, Clone, Default)]
pub struct ResolutionGraph {
    vertices: Vec<Vertex>,
    edges: BTreeMap<(usize, usize), i64>,
    index: HashMap<String, usize>,
}

impl PartialEq for ResolutionGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for ResolutionGraph {}

fn key(i: usize, j: usize) -> (usize, usize) {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

impl ResolutionGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, id: impl Into<String>, self_int: i64, genus: i64) -> Result<usize> {
        let id = id.into();
        if self.index.contains_key(&id) {
            return Err(Error::DuplicateVertex(id));
        }
        if genus < 0 {
            return Err(Error::NegativeGenus(id, genus));
        }
        let i = self.vertices.len();
        self.index.insert(id.clone(), i);
        self.vertices.push(Vertex { id, self_int, genus });
        Ok(i)
    }

    /// Adds the edge `a -- b` with intersection number `mult`. A second record
    /// for the same unordered pair is rejected.
    pub fn add_edge(&mut self, a: &str, b: &str, mult: i64) -> Result<()> {
        let i = self.require(a)?;
        let j = self.require(b)?;
        if i == j {
            return Err(Error::SelfEdge(a.to_string()));
        }
        if mult < 1 {
            return Err(Error::InvalidMultiplicity(a.to_string(), b.to_string(), mult));
        }
        if self.edges.contains_key(&key(i, j)) {
            return Err(Error::DuplicateEdge(a.to_string(), b.to_string()));
        }
        self.edges.insert(key(i, j), mult);
        Ok(())
    }

    /// Builds a graph from `(id, self_int, genus)` triples and `(a, b, mult)` edges.
    pub fn from_parts<V, E>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator<Item = (String, i64, i64)>,
        E: IntoIterator<Item = (String, String, i64)>,
    {
        let mut g = Self::new();
        for (id, s, genus) in vertices {
            g.add_vertex(id, s, genus)?;
        }
        for (a, b, m) in edges {
            g.add_edge(&a, &b, m)?;
        }
        Ok(g)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Vertex {
        &self.vertices[i]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub(crate) fn require(&self, id: &str) -> Result<usize> {
        self.index_of(id).ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    /// Edges as `(i, j, mult)` with `i < j`, in index order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.edges.iter().map(|(&(i, j), &m)| (i, j, m))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `E_i · E_j` for `i != j`.
    pub fn mult(&self, i: usize, j: usize) -> i64 {
        if i == j {
            return 0;
        }
        self.edges.get(&key(i, j)).copied().unwrap_or(0)
    }

    pub fn neighbours(&self, i: usize) -> Vec<(usize, i64)> {
        self.edges
            .iter()
            .filter_map(|(&(a, b), &m)| {
                if a == i {
                    Some((b, m))
                } else if b == i {
                    Some((a, m))
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.edges.keys().filter(|&&(a, b)| a == i || b == i).count()
    }

    /// The matrix `(E_i · E_j)`.
    pub fn intersection_matrix(&self) -> IntMatrix {
        let n = self.len();
        let mut m = vec![vec![0; n]; n];
        for (i, v) in self.vertices.iter().enumerate() {
            m[i][i] = v.self_int;
        }
        for (&(i, j), &k) in &self.edges {
            m[i][j] = k;
            m[j][i] = k;
        }
        m
    }

    pub fn is_connected(&self) -> bool {
        let n = self.len();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for (j, _) in self.neighbours(i) {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        if self.is_empty() {
            return Err(Error::EmptyGraph);
        }
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(())
    }

    pub(crate) fn require_definite(&self) -> Result<()> {
        self.require_connected()?;
        if !self.is_negative_definite() {
            return Err(Error::NotNegativeDefinite);
        }
        Ok(())
    }

    /// A vertex id of the form `{prefix}{n}` not yet in use.
    pub fn fresh_id(&self, prefix: &str) -> String {
        (1..)
            .map(|n| format!("{prefix}{n}"))
            .find(|id| !self.index.contains_key(id))
            .expect("unbounded id supply")
    }

    /// Induced subgraph on `keep` (vertex indices, in the given order).
    pub fn induced(&self, keep: &[usize]) -> ResolutionGraph {
        let mut g = ResolutionGraph::new();
        for &i in keep {
            let v = &self.vertices[i];
            g.add_vertex(v.id.clone(), v.self_int, v.genus)
                .expect("ids are unique in the parent graph");
        }
        for (a, &i) in keep.iter().enumerate() {
            for &j in &keep[a + 1..] {
                let m = self.mult(i, j);
                if m > 0 {
                    g.edges.insert(key(g.index[&self.vertices[i].id], g.index[&self.vertices[j].id]), m);
                }
            }
        }
        g
    }

    /// Connected components as sorted lists of vertex indices.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let c = out.len();
            let mut members = vec![s];
            comp[s] = c;
            let mut k = 0;
            while k < members.len() {
                for (j, _) in self.neighbours(members[k]) {
                    if comp[j] == usize::MAX {
                        comp[j] = c;
                        members.push(j);
                    }
                }
                k += 1;
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    // ---- intersection theory -------------------------------------------------

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.len() {
            return Err(Error::VertexSetMismatch { expected: self.len(), got: len });
        }
        Ok(())
    }

    /// `A · B` for rational cycles.
    pub fn intersect(&self, a: &RationalCycle, b: &RationalCycle) -> Result<BigRational> {
        self.check_len(a.len())?;
        self.check_len(b.len())?;
        let mut acc = BigRational::zero();
        for (i, v) in self.vertices.iter().enumerate() {
            acc += &a[i] * &b[i] * BigRational::from_integer(v.self_int.into());
        }
        for (&(i, j), &m) in &self.edges {
            let m = BigRational::from_integer(m.into());
            acc += (&a[i] * &b[j] + &a[j] * &b[i]) * m;
        }
        Ok(acc)
    }

    /// `A · B` for integral cycles.
    pub fn dot(&self, a: &Cycle, b: &Cycle) -> Result<i64> {
        self.check_len(a.len())?;
        self.check_len(b.len())?;
        let mut acc = 0i64;
        for (i, v) in self.vertices.iter().enumerate() {
            acc += a[i] * b[i] * v.self_int;
        }
        for (&(i, j), &m) in &self.edges {
            acc += (a[i] * b[j] + a[j] * b[i]) * m;
        }
        Ok(acc)
    }

    /// `(A · E_i)_i`.
    pub fn dot_vector(&self, a: &Cycle) -> Result<Vec<i64>> {
        self.check_len(a.len())?;
        let mut out: Vec<i64> = (0..self.len()).map(|i| a[i] * self.vertices[i].self_int).collect();
        for (&(i, j), &m) in &self.edges {
            out[i] += a[j] * m;
            out[j] += a[i] * m;
        }
        Ok(out)
    }

    /// `E_i · K` from adjunction, `E_i·(E_i + K) = 2 p_a(E_i) − 2`.
    pub fn canonical_degrees(&self) -> Vec<i64> {
        self.vertices
            .iter()
            .map(|v| 2 * v.genus - 2 - v.self_int)
            .collect()
    }

    /// `p_a(A) = 1 + ½(A·A + A·K)`.
    ///
    /// `A·K` is read off the adjunction equations, so this is defined on any
    /// graph, including semidefinite fibre configurations. On a negative
    /// definite graph it agrees with pairing against `K = −Z_K`.
    pub fn genus_of_cycle(&self, a: &Cycle) -> Result<i64> {
        let aa = self.dot(a, a)?;
        let ak: i64 = self
            .canonical_degrees()
            .iter()
            .zip(a.coeffs())
            .map(|(k, c)| k * c)
            .sum();
        let twice = aa + ak;
        if twice % 2 != 0 {
            return Err(Error::NonIntegralGenus);
        }
        Ok(1 + twice / 2)
    }

    /// The canonical cycle `Z_K`: the rational cycle with
    /// `E_i · Z_K = E_i² + 2 − 2 p_a(E_i)` for every `i`.
    pub fn canonical_cycle(&self) -> Result<RationalCycle> {
        self.require_definite()?;
        let rhs: Vec<i64> = self
            .vertices
            .iter()
            .map(|v| v.self_int + 2 - 2 * v.genus)
            .collect();
        let z = arith::solve(&self.intersection_matrix(), &rhs).ok_or(Error::NotNegativeDefinite)?;
        Ok(RationalCycle::new(z))
    }

    /// Integrality of `Z_K`.
    pub fn is_numerically_gorenstein(&self) -> Result<bool> {
        Ok(self.canonical_cycle()?.to_integral().is_some())
    }

    pub fn is_negative_definite(&self) -> bool {
        !self.is_empty() && arith::is_negative_definite(&self.intersection_matrix())
    }

    /// Negative semidefinite with the given cycle spanning the radical:
    /// `M · radical = 0`, and the form restricted to the complement of one
    /// vertex in the support of `radical` is negative definite.
    pub fn is_negative_semidefinite_with_radical(&self, radical: &RationalCycle) -> bool {
        if radical.len() != self.len() {
            return false;
        }
        let Some(k) = (0..self.len()).find(|&i| !radical[i].is_zero()) else {
            return false;
        };
        let m = self.intersection_matrix();
        let kills = m.iter().all(|row| {
            row.iter()
                .zip(radical.coeffs())
                .map(|(&x, r)| BigRational::from_integer(x.into()) * r)
                .sum::<BigRational>()
                .is_zero()
        });
        if !kills {
            return false;
        }
        let minor: IntMatrix = m
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(_, row)| {
                row.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != k)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        arith::is_negative_definite(&minor)
    }

    /// `det (E_i · E_j)`.
    pub fn det_intersection(&self) -> BigInt {
        if self.is_empty() {
            return BigInt::one();
        }
        arith::determinant(&self.intersection_matrix())
    }

    pub(crate) fn vertices_mut(&mut self) -> &mut Vec<Vertex> {
        &mut self.vertices
    }

    pub(crate) fn set_mult(&mut self, i: usize, j: usize, m: i64) {
        if m == 0 {
            self.edges.remove(&key(i, j));
        } else {
            self.edges.insert(key(i, j), m);
        }
    }

    /// Drops vertex `v` and all incident edges, shifting later indices down.
    pub(crate) fn remove_vertex(&mut self, v: usize) {
        let id = self.vertices.remove(v).id;
        self.index.remove(&id);
        for i in self.index.values_mut() {
            if *i > v {
                *i -= 1;
            }
        }
        let shift = |i: usize| if i > v { i - 1 } else { i };
        self.edges = std::mem::take(&mut self.edges)
            .into_iter()
            .filter(|&((a, b), _)| a != v && b != v)
            .map(|((a, b), m)| ((shift(a), shift(b)), m))
            .collect();
    }
}
