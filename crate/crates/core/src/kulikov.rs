//! Graph-level simulation of the Kulikov construction.
//!
//! Start from the special fibre `W₀ = Σ n_i C_i` of a degenerating family of
//! curves, blow up smooth points on multiplicity-one components (possibly on
//! curves created by earlier steps), then remove the final `(−1)`-curves `X̃`.
//! What remains is the resolution graph of a Kulikov singularity, and the
//! strict transform `Y = Σ n_i E_i` of the fibre is its fundamental cycle.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::cycles::{characteristic_cycle, fundamental_cycle, is_numerically_kulikov};
use crate::iso;
use crate::lattice::{Cycle, RationalCycle, ResolutionGraph};
use crate::{Error, Result};

/// A curve configuration with fibre multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibreGraph {
    pub graph: ResolutionGraph,
    pub mult: Vec<i64>,
}

impl FibreGraph {
    pub fn new(graph: ResolutionGraph, mult: Vec<i64>) -> Result<Self> {
        if mult.len() != graph.len() {
            return Err(Error::VertexSetMismatch { expected: graph.len(), got: mult.len() });
        }
        if let Some(i) = mult.iter().position(|&m| m < 1) {
            return Err(Error::InvalidFibre(format!(
                "`{}` has multiplicity {}",
                graph.vertex(i).id,
                mult[i]
            )));
        }
        Ok(Self { graph, mult })
    }

    /// `F = Σ n_i C_i`.
    pub fn fibre_cycle(&self) -> Cycle {
        Cycle::new(self.mult.clone())
    }

    pub fn mult_of(&self, id: &str) -> Option<i64> {
        self.graph.index_of(id).map(|i| self.mult[i])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibreDiagnostics {
    pub connected: bool,
    /// `F · C_i = 0` for every component.
    pub fibre_orthogonal: bool,
    /// Negative semidefinite with radical spanned by `F`.
    pub semidefinite_with_radical: bool,
}

impl FibreDiagnostics {
    pub fn passed(&self) -> bool {
        self.connected && self.fibre_orthogonal && self.semidefinite_with_radical
    }
}

pub fn validate_fibre(f: &FibreGraph) -> FibreDiagnostics {
    let connected = f.graph.is_connected();
    let fibre = f.fibre_cycle();
    let fibre_orthogonal = f
        .graph
        .dot_vector(&fibre)
        .map(|v| v.iter().all(|&x| x == 0))
        .unwrap_or(false);
    let radical = RationalCycle::new(
        f.mult
            .iter()
            .map(|&m| BigRational::from_integer(m.into()))
            .collect(),
    );
    FibreDiagnostics {
        connected,
        fibre_orthogonal,
        semidefinite_with_radical: f.graph.is_negative_semidefinite_with_radical(&radical),
    }
}

fn require_valid(f: &FibreGraph) -> Result<()> {
    let d = validate_fibre(f);
    if d.passed() {
        Ok(())
    } else {
        Err(Error::InvalidFibre(format!(
            "connected={} orthogonal={} semidefinite={}",
            d.connected, d.fibre_orthogonal, d.semidefinite_with_radical
        )))
    }
}

/// Genus of the curves in the family, `p_a(F)`; here `F·F = 0` so
/// `p_a(F) = 1 + ½ F·K`.
pub fn fibre_genus(f: &FibreGraph) -> Result<i64> {
    require_valid(f)?;
    f.graph.genus_of_cycle(&f.fibre_cycle())
}

/// No smooth rational `(−1)`-curve in the fibre.
pub fn is_minimal_family(f: &FibreGraph) -> bool {
    f.graph.contractible().is_empty()
}

/// Contracts rational `(−1)`-curves until none is left. Multiplicities of the
/// surviving components are kept; those of contracted curves are dropped.
pub fn minimalize_family(f: &FibreGraph) -> Result<FibreGraph> {
    let (g, _) = f.graph.contract_all()?;
    let mult = g
        .vertices()
        .iter()
        .map(|v| f.mult_of(&v.id).expect("contraction keeps ids"))
        .collect();
    FibreGraph::new(g, mult)
}

/// One blow-up instruction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScriptStep {
    /// A smooth point on the named component.
    On(String),
    /// A smooth point on the curve created at the given (1-based) step.
    OnCreated(usize),
    /// An intersection point of two components; always rejected.
    Intersection(String, String),
}

/// Ordered blow-ups of smooth points on multiplicity-one components.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupScript {
    pub steps: Vec<ScriptStep>,
}

impl BlowupScript {
    pub fn new(steps: Vec<ScriptStep>) -> Self {
        Self { steps }
    }

    /// Steps that each blow up the named original component.
    pub fn on(ids: &[&str]) -> Self {
        Self::new(ids.iter().map(|s| ScriptStep::On(s.to_string())).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionResult {
    /// The resolution graph with `X̃` removed.
    pub graph: ResolutionGraph,
    /// The blown-up fibre including `X̃`.
    pub total: FibreGraph,
    pub x_tilde: Vec<String>,
    /// `Y = Σ n_i E_i` over all surviving components.
    pub strict_transform: Cycle,
    /// Strict transform of the original fibre only (created curves get `0`).
    pub fibre_image: Cycle,
    pub r: i64,
    pub fibre_genus: i64,
    /// `2g + r − 1`.
    pub milnor_mu: i64,
    /// The fundamental cycle of `graph` equals `strict_transform`.
    pub fundamental_cycle_is_strict_transform: bool,
    pub fundamental_cycle: Cycle,
}

/// Runs the construction. Fails on steps that name a component of
/// multiplicity `≥ 2` or an intersection point.
pub fn kulikov_construct(f: &FibreGraph, script: &BlowupScript) -> Result<ConstructionResult> {
    require_valid(f)?;
    if script.steps.is_empty() {
        return Err(Error::EmptyScript);
    }
    let g0 = fibre_genus(f)?;
    let mut g = f.graph.clone();
    let mut mult = f.mult.clone();
    let mut created: Vec<String> = Vec::new();
    for (k, step) in script.steps.iter().enumerate() {
        let step_no = k + 1;
        let target = match step {
            ScriptStep::On(id) => id.clone(),
            ScriptStep::OnCreated(j) => created
                .get(j.wrapping_sub(1))
                .filter(|_| *j >= 1 && *j < step_no)
                .cloned()
                .ok_or_else(|| Error::BadStepReference { step: step_no, reference: j.to_string() })?,
            ScriptStep::Intersection(a, b) => {
                return Err(Error::IntersectionPointBlowup { step: step_no, pair: (a.clone(), b.clone()) })
            }
        };
        let i = g.require(&target)?;
        if mult[i] != 1 {
            return Err(Error::MultiplicityNotOne { step: step_no, vertex: target, mult: mult[i] });
        }
        let (next, new) = g.blow_up_smooth(&target)?;
        created.push(next.vertex(new).id.clone());
        mult.push(1);
        g = next;
    }
    let total = FibreGraph::new(g.clone(), mult.clone())?;
    let x_tilde: Vec<String> = created
        .iter()
        .filter(|id| {
            let v = g.vertex(g.index_of(id).expect("created id"));
            v.self_int == -1 && v.genus == 0
        })
        .cloned()
        .collect();
    for id in &x_tilde {
        if g.degree(g.index_of(id).expect("created id")) != 1 {
            return Err(Error::Internal(format!("(−1)-curve `{id}` is not an end of the fibre")));
        }
    }
    let keep: Vec<usize> = (0..g.len())
        .filter(|&i| !x_tilde.contains(&g.vertex(i).id))
        .collect();
    let graph = g.induced(&keep);
    graph.require_definite()?;
    let strict_transform = Cycle::new(keep.iter().map(|&i| mult[i]).collect());
    let fibre_image = Cycle::new(
        graph
            .vertices()
            .iter()
            .map(|v| f.mult_of(&v.id).unwrap_or(0))
            .collect(),
    );
    let (z, _) = fundamental_cycle(&graph)?;
    let r = x_tilde.len() as i64;
    Ok(ConstructionResult {
        fundamental_cycle_is_strict_transform: z == strict_transform,
        fundamental_cycle: z,
        graph,
        total,
        x_tilde,
        strict_transform,
        fibre_image,
        r,
        fibre_genus: g0,
        milnor_mu: 2 * g0 + r - 1,
    })
}

/// Properties of a construction from a minimal family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KulikovReport {
    pub fibre_genus: i64,
    pub fundamental_genus: i64,
    pub r: i64,
    pub milnor_mu: i64,
    pub x_tilde: Vec<String>,
    pub strict_transform: BTreeMap<String, i64>,
    pub fundamental_cycle: BTreeMap<String, i64>,
    pub fibre_image: BTreeMap<String, i64>,
    /// `None` when the fibre is rational.
    pub characteristic_cycle: Option<BTreeMap<String, i64>>,
    /// `Z = Y`.
    pub fundamental_cycle_is_strict_transform: bool,
    /// `p_f = g`.
    pub genus_matches: bool,
    /// `C` = image of the minimal fibre; `None` when rational.
    pub characteristic_is_fibre_image: Option<bool>,
    /// Every `E_i` with `Z · E_i < 0` has `Z_i = 1`.
    pub numerically_kulikov: bool,
    /// `Y · E_i < 0` exactly at the components that met `X̃`.
    pub negativity_at_x_tilde: bool,
    /// The maximal ideal cycle equals `Z` for Kulikov singularities; this is a
    /// stated consequence, not computed from the lattice.
    pub maximal_ideal_cycle_is_fundamental: bool,
}

impl KulikovReport {
    pub fn passed(&self) -> bool {
        self.fundamental_cycle_is_strict_transform
            && self.genus_matches
            && self.characteristic_is_fibre_image != Some(false)
            && self.numerically_kulikov
            && self.negativity_at_x_tilde
            && self.milnor_mu == 2 * self.fibre_genus + self.r - 1
    }
}

/// Runs the construction on a minimal family and checks that the fundamental
/// genus is the fibre genus and that the characteristic cycle is the strict
/// transform of the fibre.
pub fn verify_kulikov_properties(f: &FibreGraph, script: &BlowupScript) -> Result<KulikovReport> {
    if !is_minimal_family(f) {
        return Err(Error::InvalidFibre("family is not minimal".into()));
    }
    let res = kulikov_construct(f, script)?;
    let g = &res.graph;
    let p_f = g.genus_of_cycle(&res.fundamental_cycle)?;
    let characteristic = if p_f == 0 { None } else { Some(characteristic_cycle(g)?.cycle) };
    let ydot = g.dot_vector(&res.strict_transform)?;
    let total = &res.total.graph;
    let touches_x = |id: &str| {
        let i = total.index_of(id).expect("surviving id");
        total
            .neighbours(i)
            .iter()
            .any(|(j, _)| res.x_tilde.contains(&total.vertex(*j).id))
    };
    let negativity_at_x_tilde = g
        .vertices()
        .iter()
        .zip(&ydot)
        .all(|(v, &y)| y <= 0 && ((y < 0) == touches_x(&v.id)));
    Ok(KulikovReport {
        fibre_genus: res.fibre_genus,
        fundamental_genus: p_f,
        r: res.r,
        milnor_mu: res.milnor_mu,
        x_tilde: res.x_tilde.clone(),
        strict_transform: res.strict_transform.to_map(g),
        fundamental_cycle: res.fundamental_cycle.to_map(g),
        fibre_image: res.fibre_image.to_map(g),
        characteristic_cycle: characteristic.as_ref().map(|c| c.to_map(g)),
        fundamental_cycle_is_strict_transform: res.fundamental_cycle_is_strict_transform,
        genus_matches: p_f == res.fibre_genus,
        characteristic_is_fibre_image: characteristic.as_ref().map(|c| *c == res.fibre_image),
        numerically_kulikov: is_numerically_kulikov(g)?.holds,
        negativity_at_x_tilde,
        maximal_ideal_cycle_is_fundamental: true,
    })
}

/// Minimalising the blown-up fibre recovers the starting family (up to
/// relabelling) when that family was minimal.
pub fn round_trips(f: &FibreGraph, res: &ConstructionResult) -> Result<bool> {
    let back = minimalize_family(&res.total)?;
    Ok(iso::is_isomorphic_with_cycles(
        &back.graph,
        &back.fibre_cycle(),
        &f.graph,
        &f.fibre_cycle(),
    ))
}
