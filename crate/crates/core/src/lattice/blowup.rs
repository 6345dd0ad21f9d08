//! Blow-up and blow-down at the level of the lattice.

use std::collections::BTreeMap;

use super::{Cycle, ResolutionGraph, Vertex};
use crate::{Error, Result};

/// The result of a minimalisation: the minimal graph, the ids that were
/// contracted in order, and the graph just before each contraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalModel {
    pub graph: ResolutionGraph,
    pub contracted: Vec<String>,
    history: Vec<ResolutionGraph>,
}

impl MinimalModel {
    pub fn applied(&self) -> bool {
        !self.contracted.is_empty()
    }

    /// Total transform of a cycle on the minimal graph, as a cycle on the
    /// graph the model was computed from. Contracting `E_v` pulls `E_i` back
    /// to `E_i + (E_i · E_v) E_v`.
    pub fn pullback(&self, d: &Cycle) -> Result<Cycle> {
        if d.len() != self.graph.len() {
            return Err(Error::VertexSetMismatch { expected: self.graph.len(), got: d.len() });
        }
        let mut coeffs: BTreeMap<String, i64> = d.to_map(&self.graph);
        for (g, v) in self.history.iter().zip(&self.contracted).rev() {
            let k = g.require(v)?;
            let c: i64 = g
                .neighbours(k)
                .into_iter()
                .map(|(i, m)| m * coeffs.get(&g.vertex(i).id).copied().unwrap_or(0))
                .sum();
            coeffs.insert(v.clone(), c);
        }
        let original = self.history.first().unwrap_or(&self.graph);
        Cycle::from_map(original, &coeffs)
    }
}

impl ResolutionGraph {
    /// Blows up a smooth point of `v` that lies on no other component. Returns
    /// the new graph and the index of the new `(−1)`-curve (always the last).
    pub fn blow_up_smooth(&self, v: &str) -> Result<(ResolutionGraph, usize)> {
        let i = self.require(v)?;
        let mut g = self.clone();
        g.vertices_mut()[i].self_int -= 1;
        let id = g.fresh_id("e");
        let new = g.add_vertex(id.clone(), -1, 0)?;
        g.add_edge(v, &id, 1)?;
        Ok((g, new))
    }

    /// Blows up one intersection point of `a` and `b`.
    pub fn blow_up_edge(&self, a: &str, b: &str) -> Result<(ResolutionGraph, usize)> {
        let i = self.require(a)?;
        let j = self.require(b)?;
        let m = self.mult(i, j);
        if m < 1 {
            return Err(Error::UnknownEdge(a.to_string(), b.to_string()));
        }
        let mut g = self.clone();
        g.vertices_mut()[i].self_int -= 1;
        g.vertices_mut()[j].self_int -= 1;
        g.set_mult(i, j, m - 1);
        let id = g.fresh_id("e");
        let new = g.add_vertex(id.clone(), -1, 0)?;
        g.add_edge(a, &id, 1)?;
        g.add_edge(b, &id, 1)?;
        Ok((g, new))
    }

    /// Contracts the smooth rational `(−1)`-curve `v`.
    ///
    /// With `m_i = E_i · E_v`, the image of `E_i` has
    /// `E_i² + m_i²`, genus `p_a(E_i) + m_i(m_i − 1)/2`, and meets the image of
    /// `E_j` with multiplicity `E_i·E_j + m_i m_j`.
    pub fn contract(&self, v: &str) -> Result<ResolutionGraph> {
        let k = self.require(v)?;
        let Vertex { self_int, genus, .. } = *self.vertex(k);
        if self_int != -1 || genus != 0 {
            return Err(Error::NotContractible(v.to_string()));
        }
        let nbrs = self.neighbours(k);
        let mut g = self.clone();
        for (a, &(i, mi)) in nbrs.iter().enumerate() {
            let vi = &mut g.vertices_mut()[i];
            vi.self_int += mi * mi;
            vi.genus += mi * (mi - 1) / 2;
            for &(j, mj) in &nbrs[a + 1..] {
                let m = g.mult(i, j) + mi * mj;
                g.set_mult(i, j, m);
            }
        }
        g.remove_vertex(k);
        Ok(g)
    }

    /// Indices of smooth rational `(−1)`-curves.
    pub fn contractible(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| {
                let v = self.vertex(i);
                v.self_int == -1 && v.genus == 0
            })
            .collect()
    }

    /// Repeatedly contracts rational `(−1)`-curves, lowest index first.
    pub fn minimal_model(&self) -> Result<MinimalModel> {
        self.minimal_model_by(|candidates| candidates[0])
    }

    /// Like [`minimal_model`](Self::minimal_model) with a caller-chosen
    /// contraction order; `pick` receives the current candidates.
    ///
    /// A lone rational `(−1)`-curve is kept: contracting it would leave the
    /// empty graph of a smooth point.
    pub fn minimal_model_by(&self, mut pick: impl FnMut(&[usize]) -> usize) -> Result<MinimalModel> {
        self.require_definite()?;
        let mut g = self.clone();
        let mut contracted = Vec::new();
        let mut history = Vec::new();
        loop {
            let candidates = g.contractible();
            if candidates.is_empty() || g.len() == 1 {
                break;
            }
            let v = g.vertex(pick(&candidates)).id.clone();
            let next = g.contract(&v)?;
            history.push(std::mem::replace(&mut g, next));
            contracted.push(v);
        }
        Ok(MinimalModel { graph: g, contracted, history })
    }

    /// Contracts every rational `(−1)`-curve without any definiteness
    /// requirement (used for fibre configurations).
    pub fn contract_all(&self) -> Result<(ResolutionGraph, Vec<String>)> {
        let mut g = self.clone();
        let mut contracted = Vec::new();
        while let Some(&i) = g.contractible().first() {
            if g.len() == 1 {
                break;
            }
            let v = g.vertex(i).id.clone();
            g = g.contract(&v)?;
            contracted.push(v);
        }
        Ok((g, contracted))
    }
}
