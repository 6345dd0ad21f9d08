//! Canonical forms for weighted graphs, used to compare graphs up to
//! relabelling of vertices.
//!
//! Vertices carry `(self_int, genus)` plus an optional integer decoration
//! (typically a cycle coefficient); edges carry their multiplicity. Trees get
//! an AHU encoding rooted at the centre. Other graphs are small in practice and
//! are handled by colour refinement followed by a search over orderings that
//! respect the refined colours.

use std::collections::BTreeMap;

use crate::lattice::{Cycle, ResolutionGraph};

type Label = (i64, i64, i64);

fn labels(g: &ResolutionGraph, deco: Option<&[i64]>) -> Vec<Label> {
    g.vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| (v.self_int, v.genus, deco.map_or(0, |d| d[i])))
        .collect()
}

/// Canonical string of `g` with optional per-vertex decoration. Two decorated
/// graphs are isomorphic iff their canonical forms are equal.
pub fn canonical_form(g: &ResolutionGraph, deco: Option<&[i64]>) -> String {
    if g.is_empty() {
        return "empty".into();
    }
    let lab = labels(g, deco);
    if g.is_connected() && g.edge_count() + 1 == g.len() {
        tree_form(g, &lab)
    } else {
        general_form(g, &lab)
    }
}

pub fn is_isomorphic(g: &ResolutionGraph, h: &ResolutionGraph) -> bool {
    g.len() == h.len()
        && g.edge_count() == h.edge_count()
        && canonical_form(g, None) == canonical_form(h, None)
}

/// Is there an isomorphism `g → h` carrying the cycle `a` to the cycle `b`?
pub fn is_isomorphic_with_cycles(g: &ResolutionGraph, a: &Cycle, h: &ResolutionGraph, b: &Cycle) -> bool {
    g.len() == h.len()
        && g.edge_count() == h.edge_count()
        && canonical_form(g, Some(a.coeffs())) == canonical_form(h, Some(b.coeffs()))
}

fn tree_centres(g: &ResolutionGraph) -> Vec<usize> {
    let n = g.len();
    let mut deg: Vec<usize> = (0..n).map(|i| g.degree(i)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&i| deg[i] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            for (j, _) in g.neighbours(leaf) {
                if deg[j] > 1 {
                    deg[j] -= 1;
                    if deg[j] == 1 {
                        next.push(j);
                    }
                }
            }
            deg[leaf] = 0;
        }
        layer = next;
    }
    layer
}

fn rooted(g: &ResolutionGraph, lab: &[Label], v: usize, parent: Option<usize>) -> String {
    let mut children: Vec<String> = g
        .neighbours(v)
        .into_iter()
        .filter(|&(j, _)| Some(j) != parent)
        .map(|(j, m)| format!("{m}:{}", rooted(g, lab, j, Some(v))))
        .collect();
    children.sort();
    let (s, genus, d) = lab[v];
    format!("({s},{genus},{d}[{}])", children.join(""))
}

fn tree_form(g: &ResolutionGraph, lab: &[Label]) -> String {
    tree_centres(g)
        .into_iter()
        .map(|c| format!("T{}", rooted(g, lab, c, None)))
        .min()
        .expect("a nonempty tree has a centre")
}

/// Stable colour refinement. Colours are ranks of sorted signatures, so they
/// do not depend on the input vertex order.
fn refine(g: &ResolutionGraph, lab: &[Label]) -> Vec<usize> {
    let n = g.len();
    let rank = |sigs: &[String]| -> Vec<usize> {
        let mut uniq: Vec<&String> = sigs.iter().collect();
        uniq.sort();
        uniq.dedup();
        sigs.iter().map(|s| uniq.binary_search(&s).unwrap()).collect()
    };
    let mut colour = rank(&lab.iter().map(|l| format!("{l:?}")).collect::<Vec<_>>());
    loop {
        let sigs: Vec<String> = (0..n)
            .map(|i| {
                let mut nb: Vec<(usize, i64)> =
                    g.neighbours(i).into_iter().map(|(j, m)| (colour[j], m)).collect();
                nb.sort_unstable();
                format!("{}|{nb:?}", colour[i])
            })
            .collect();
        let next = rank(&sigs);
        let classes = |c: &[usize]| c.iter().max().map_or(0, |m| m + 1);
        if classes(&next) == classes(&colour) {
            return next;
        }
        colour = next;
    }
}

fn encode(g: &ResolutionGraph, lab: &[Label], order: &[usize]) -> Vec<i64> {
    let mut out = Vec::with_capacity(order.len() * (order.len() + 3));
    for &i in order {
        out.extend([lab[i].0, lab[i].1, lab[i].2]);
    }
    for (a, &i) in order.iter().enumerate() {
        for &j in &order[a + 1..] {
            out.push(g.mult(i, j));
        }
    }
    out
}

fn general_form(g: &ResolutionGraph, lab: &[Label]) -> String {
    let colour = refine(g, lab);
    let mut cells: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &c) in colour.iter().enumerate() {
        cells.entry(c).or_default().push(i);
    }
    let cells: Vec<Vec<usize>> = cells.into_values().collect();
    let mut best: Option<Vec<i64>> = None;
    let mut order = Vec::with_capacity(g.len());
    search(g, lab, &cells, 0, &mut order, &mut best);
    format!("G{:?}", best.expect("at least one ordering"))
}

fn search(
    g: &ResolutionGraph,
    lab: &[Label],
    cells: &[Vec<usize>],
    cell: usize,
    order: &mut Vec<usize>,
    best: &mut Option<Vec<i64>>,
) {
    if cell == cells.len() {
        let code = encode(g, lab, order);
        if best.as_ref().is_none_or(|b| code < *b) {
            *best = Some(code);
        }
        return;
    }
    permute(g, lab, cells, cell, &mut cells[cell].clone(), 0, order, best);
}

#[allow(clippy::too_many_arguments)]
fn permute(
    g: &ResolutionGraph,
    lab: &[Label],
    cells: &[Vec<usize>],
    cell: usize,
    items: &mut Vec<usize>,
    k: usize,
    order: &mut Vec<usize>,
    best: &mut Option<Vec<i64>>,
) {
    if k == items.len() {
        let base = order.len();
        order.extend_from_slice(items);
        search(g, lab, cells, cell + 1, order, best);
        order.truncate(base);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(g, lab, cells, cell, items, k + 1, order, best);
        items.swap(k, i);
    }
}
