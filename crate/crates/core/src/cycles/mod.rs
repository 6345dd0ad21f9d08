//! Laufer's fundamental cycle, fundamental and arithmetic genus, the
//! characteristic cycle, and the numerical rationality and Kulikov tests.

mod search;

use crate::lattice::{Cycle, ResolutionGraph};
use crate::Result;

pub use search::{
    arithmetic_genus_sup, box_cap, characteristic_cycle, level_set, maximizer_set,
    CharacteristicResult, DEFAULT_BOX_CAP,
};

/// A computation sequence `Z_j = Z_{j−1} + E_{i_j}` starting from `E_{start}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComputationSequence {
    pub start: usize,
    pub steps: Vec<usize>,
    n: usize,
}

impl ComputationSequence {
    /// `Z_0, Z_1, …, Z_k`.
    pub fn partial_cycles(&self) -> Vec<Cycle> {
        let mut z = Cycle::unit(self.n, self.start);
        let mut out = vec![z.clone()];
        for &i in &self.steps {
            z.coeffs_mut()[i] += 1;
            out.push(z.clone());
        }
        out
    }
}

/// Laufer's algorithm with lowest-index tie-breaking.
pub fn fundamental_cycle(g: &ResolutionGraph) -> Result<(Cycle, ComputationSequence)> {
    let order: Vec<usize> = (0..g.len()).collect();
    fundamental_cycle_with_order(g, &order)
}

/// Laufer's algorithm where `priority` lists vertex indices from most to least
/// preferred: the start vertex is `priority[0]`, and each step adds the first
/// `E_j` in `priority` with `Z · E_j > 0`.
pub fn fundamental_cycle_with_order(
    g: &ResolutionGraph,
    priority: &[usize],
) -> Result<(Cycle, ComputationSequence)> {
    g.require_definite()?;
    let n = g.len();
    assert_eq!(priority.len(), n, "priority must list every vertex");
    let start = priority[0];
    let mut z = Cycle::unit(n, start);
    // (Z · E_j)_j, updated incrementally.
    let mut zdot = g.dot_vector(&z)?;
    let mut steps = Vec::new();
    while let Some(&j) = priority.iter().find(|&&j| zdot[j] > 0) {
        z.coeffs_mut()[j] += 1;
        zdot[j] += g.vertex(j).self_int;
        for (k, m) in g.neighbours(j) {
            zdot[k] += m;
        }
        steps.push(j);
    }
    Ok((z, ComputationSequence { start, steps, n }))
}

/// `p_f = p_a(Z)`.
pub fn fundamental_genus(g: &ResolutionGraph) -> Result<i64> {
    let (z, _) = fundamental_cycle(g)?;
    g.genus_of_cycle(&z)
}

/// Artin's criterion: `p_a(Z) = 0`.
pub fn is_rational_graph(g: &ResolutionGraph) -> Result<bool> {
    Ok(fundamental_genus(g)? == 0)
}

/// Outcome of the numerical Kulikov test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KulikovCheck {
    /// Every `E_i` with `Z · E_i < 0` has coefficient one in `Z`.
    pub holds: bool,
    /// The test ran on the minimal model rather than the input graph.
    pub minimal_model_applied: bool,
    /// `Z` of the minimal model has all coefficients in `{0, 1}`.
    pub reduced_fundamental_cycle: bool,
}

/// Numerical shadow of the Kulikov condition, evaluated on the minimal model:
/// a function with divisor `Z + X̃` whose strict transform `X̃` only meets
/// multiplicity-one components forces `Z_i = 1` wherever `Z · E_i < 0`.
pub fn is_numerically_kulikov(g: &ResolutionGraph) -> Result<KulikovCheck> {
    let model = g.minimal_model()?;
    let m = &model.graph;
    let (z, _) = fundamental_cycle(m)?;
    let zdot = m.dot_vector(&z)?;
    let holds = (0..m.len()).all(|i| zdot[i] >= 0 || z[i] == 1);
    Ok(KulikovCheck {
        holds,
        minimal_model_applied: model.applied(),
        reduced_fundamental_cycle: z.is_reduced(),
    })
}
