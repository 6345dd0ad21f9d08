//! Analysis reports and their canonical JSON form.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cycles::{arithmetic_genus_sup, characteristic_cycle, fundamental_cycle, is_numerically_kulikov};
use crate::lattice::ResolutionGraph;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub id: String,
    pub self_int: i64,
    pub genus: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub a: String,
    pub b: String,
    pub mult: i64,
}

/// Plain listing of a graph for reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphRecord {
    pub vertices: Vec<VertexRecord>,
    pub edges: Vec<EdgeRecord>,
}

impl GraphRecord {
    pub fn of(g: &ResolutionGraph) -> Self {
        Self {
            vertices: g
                .vertices()
                .iter()
                .map(|v| VertexRecord { id: v.id.clone(), self_int: v.self_int, genus: v.genus })
                .collect(),
            edges: g
                .edges()
                .map(|(i, j, m)| EdgeRecord {
                    a: g.vertex(i).id.clone(),
                    b: g.vertex(j).id.clone(),
                    mult: m,
                })
                .collect(),
        }
    }

    pub fn to_graph(&self) -> Result<ResolutionGraph> {
        ResolutionGraph::from_parts(
            self.vertices.iter().map(|v| (v.id.clone(), v.self_int, v.genus)),
            self.edges.iter().map(|e| (e.a.clone(), e.b.clone(), e.mult)),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArithmeticGenus {
    pub value: i64,
    pub witness: BTreeMap<String, i64>,
}

/// Invariants of a resolution graph. Fields that need a connected negative
/// definite graph are `None` otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub graph: GraphRecord,
    pub connected: bool,
    pub negative_definite: bool,
    pub determinant: String,
    #[serde(rename = "Z_K")]
    pub canonical_cycle: Option<BTreeMap<String, String>>,
    pub fundamental_cycle: Option<BTreeMap<String, i64>>,
    pub p_f: Option<i64>,
    pub numerically_gorenstein: Option<bool>,
    pub numerically_kulikov: Option<bool>,
    pub reduced_fundamental_cycle: Option<bool>,
    pub rational: Option<bool>,
    pub characteristic_cycle: Option<BTreeMap<String, i64>>,
    pub characteristic_cycle_reason: Option<String>,
    pub arithmetic_genus: Option<ArithmeticGenus>,
    pub minimal_model: Option<GraphRecord>,
    pub minimal_model_applied: bool,
}

impl AnalysisReport {
    /// Whether the graph was a valid input for the invariants.
    pub fn is_resolution_graph(&self) -> bool {
        self.connected && self.negative_definite
    }
}

/// Computes the report. `with_arithmetic_genus` adds the supremum of `p_a`
/// over positive cycles with a witness.
pub fn analyze(g: &ResolutionGraph, with_arithmetic_genus: bool) -> Result<AnalysisReport> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let connected = g.is_connected();
    let negative_definite = g.is_negative_definite();
    let mut rep = AnalysisReport {
        graph: GraphRecord::of(g),
        connected,
        negative_definite,
        determinant: g.det_intersection().to_string(),
        canonical_cycle: None,
        fundamental_cycle: None,
        p_f: None,
        numerically_gorenstein: None,
        numerically_kulikov: None,
        reduced_fundamental_cycle: None,
        rational: None,
        characteristic_cycle: None,
        characteristic_cycle_reason: None,
        arithmetic_genus: None,
        minimal_model: None,
        minimal_model_applied: false,
    };
    if !rep.is_resolution_graph() {
        rep.characteristic_cycle_reason = Some(
            if connected { "not negative definite" } else { "disconnected" }.into(),
        );
        return Ok(rep);
    }
    rep.canonical_cycle = Some(g.canonical_cycle()?.to_string_map(g)?);
    let (z, _) = fundamental_cycle(g)?;
    let p_f = g.genus_of_cycle(&z)?;
    rep.fundamental_cycle = Some(z.to_map(g));
    rep.p_f = Some(p_f);
    rep.numerically_gorenstein = Some(g.is_numerically_gorenstein()?);
    let kul = is_numerically_kulikov(g)?;
    rep.numerically_kulikov = Some(kul.holds);
    rep.reduced_fundamental_cycle = Some(kul.reduced_fundamental_cycle);
    rep.minimal_model_applied = kul.minimal_model_applied;
    rep.rational = Some(p_f == 0);
    rep.minimal_model = Some(GraphRecord::of(&g.minimal_model()?.graph));
    if p_f == 0 {
        rep.characteristic_cycle_reason = Some("rational".into());
    } else {
        match characteristic_cycle(g) {
            Ok(c) => rep.characteristic_cycle = Some(c.cycle.to_map(g)),
            Err(e @ Error::BoxTooLarge { .. }) => rep.characteristic_cycle_reason = Some(e.to_string()),
            Err(e) => return Err(e),
        }
    }
    if with_arithmetic_genus {
        let (value, w) = arithmetic_genus_sup(g)?;
        rep.arithmetic_genus = Some(ArithmeticGenus { value, witness: w.to_map(g) });
    }
    Ok(rep)
}

/// Canonical JSON of any serialisable value: keys sorted, two-space indent.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("reports serialise");
    let mut s = serde_json::to_string_pretty(&v).expect("values serialise");
    s.push('\n');
    s
}

pub fn emit_report(report: &AnalysisReport) -> String {
    to_canonical_json(report)
}

pub fn parse_report(text: &str) -> Result<AnalysisReport> {
    serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })
}
