//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use singlat::{Cycle, ResolutionGraph};

pub fn graph(vs: &[(&str, i64, i64)], es: &[(&str, &str, i64)]) -> ResolutionGraph {
    ResolutionGraph::from_parts(
        vs.iter().map(|&(id, s, g)| (id.to_string(), s, g)),
        es.iter().map(|&(a, b, m)| (a.to_string(), b.to_string(), m)),
    )
    .unwrap()
}

/// Laplace expansion along the first row.
pub fn det_cofactor(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0] as i128,
        _ => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] as i128 * det_cofactor(&minor)
            })
            .sum(),
    }
}

/// Sylvester on `−M` with cofactor determinants.
pub fn negative_definite_oracle(g: &ResolutionGraph) -> bool {
    let m = g.intersection_matrix();
    (1..=m.len()).all(|k| {
        let lead: Vec<Vec<i64>> = m[..k].iter().map(|r| r[..k].iter().map(|x| -x).collect()).collect();
        det_cofactor(&lead) > 0
    })
}

pub fn dot_oracle(g: &ResolutionGraph, a: &[i64], b: &[i64]) -> i64 {
    let m = g.intersection_matrix();
    let mut s = 0;
    for i in 0..a.len() {
        for j in 0..b.len() {
            s += a[i] * b[j] * m[i][j];
        }
    }
    s
}

/// `p_a` by walking from `0` (where `p_a = 1`) one unit at a time with
/// `p_a(A + E_i) = p_a(A) + p_a(E_i) + A·E_i − 1`.
pub fn genus_recursive(g: &ResolutionGraph, coeffs: &[i64]) -> i64 {
    let n = coeffs.len();
    let mut a = vec![0i64; n];
    let mut p = 1;
    for i in 0..n {
        let e: Vec<i64> = (0..n).map(|k| i64::from(k == i)).collect();
        let gi = g.vertex(i).genus;
        while a[i] < coeffs[i] {
            p += gi + dot_oracle(g, &a, &e) - 1;
            a[i] += 1;
        }
        while a[i] > coeffs[i] {
            a[i] -= 1;
            p -= gi + dot_oracle(g, &a, &e) - 1;
        }
    }
    p
}

/// Every cycle `0 ≤ D ≤ top`, in mixed-radix order.
pub fn box_cycles(top: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![0; top.len()]];
    for (i, &t) in top.iter().enumerate() {
        let mut next = Vec::new();
        for d in &out {
            for v in 0..=t {
                let mut e = d.clone();
                e[i] = v;
                next.push(e);
            }
        }
        out = next;
    }
    out
}

pub fn is_anti_nef(g: &ResolutionGraph, d: &[i64]) -> bool {
    (0..d.len()).all(|i| {
        let e: Vec<i64> = (0..d.len()).map(|k| i64::from(k == i)).collect();
        dot_oracle(g, d, &e) <= 0
    })
}

/// Positive anti-nef cycles below `top`.
pub fn anti_nef_below(g: &ResolutionGraph, top: &[i64]) -> Vec<Vec<i64>> {
    box_cycles(top)
        .into_iter()
        .filter(|d| d.iter().any(|&x| x > 0) && is_anti_nef(g, d))
        .collect()
}

/// Maximum of `p_a` on `(0, top]` and all maximisers.
pub fn brute_maximizers(g: &ResolutionGraph, top: &[i64]) -> (i64, Vec<Vec<i64>>) {
    let mut best = i64::MIN;
    let mut arg = Vec::new();
    for d in box_cycles(top) {
        if d.iter().all(|&x| x == 0) {
            continue;
        }
        let p = genus_recursive(g, &d);
        if p > best {
            best = p;
            arg.clear();
        }
        if p == best {
            arg.push(d);
        }
    }
    (best, arg)
}

pub fn coordinatewise_min(cs: &[Vec<i64>]) -> Vec<i64> {
    let mut m = cs[0].clone();
    for c in cs {
        for (x, y) in m.iter_mut().zip(c) {
            *x = (*x).min(*y);
        }
    }
    m
}

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            for (x, y) in [(a, b), (b, a)] {
                if x == v && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.iter().all(|&s| s)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

/// Connected simple graphs on `n` vertices, one per isomorphism class.
pub fn connected_shapes(n: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let perms = permutations(n);
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> =
            (0..pairs.len()).filter(|&k| mask >> k & 1 == 1).map(|k| pairs[k]).collect();
        if !connected(n, &edges) {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                let mut e: Vec<(usize, usize)> = edges
                    .iter()
                    .map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b])))
                    .collect();
                e.sort();
                e
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            out.push(edges);
        }
    }
    out
}

pub fn build_indexed(weights: &[i64], genera: &[i64], edges: &[(usize, usize, i64)]) -> ResolutionGraph {
    let mut g = ResolutionGraph::new();
    for (i, (&w, &p)) in weights.iter().zip(genera).enumerate() {
        g.add_vertex(format!("v{i}"), w, p).unwrap();
    }
    for &(a, b, m) in edges {
        g.add_edge(&format!("v{a}"), &format!("v{b}"), m).unwrap();
    }
    g
}

/// A connected negative definite graph with up to `max_n` vertices.
pub fn random_definite_graph(rng: &mut StdRng, max_n: usize) -> ResolutionGraph {
    loop {
        let n = rng.gen_range(1..=max_n);
        let weights: Vec<i64> = (0..n).map(|_| -rng.gen_range(1..=5)).collect();
        let genera: Vec<i64> = (0..n).map(|_| if rng.gen_bool(0.7) { 0 } else { rng.gen_range(1..=2) }).collect();
        let mut edges = Vec::new();
        for i in 1..n {
            let m = if rng.gen_bool(0.1) { 2 } else { 1 };
            edges.push((rng.gen_range(0..i), i, m));
        }
        for a in 0..n {
            for b in a + 1..n {
                if rng.gen_bool(0.1) && !edges.iter().any(|&(x, y, _)| (x, y) == (a, b)) {
                    edges.push((a, b, 1));
                }
            }
        }
        let g = build_indexed(&weights, &genera, &edges);
        if negative_definite_oracle(&g) {
            return g;
        }
    }
}

/// A random definite graph blown up a few times, so that it has curves to
/// contract.
pub fn random_blown_up_graph(rng: &mut StdRng, max_n: usize, blowups: usize) -> ResolutionGraph {
    let mut g = random_definite_graph(rng, max_n);
    for _ in 0..rng.gen_range(1..=blowups) {
        let edges: Vec<(usize, usize, i64)> = g.edges().collect();
        if !edges.is_empty() && rng.gen_bool(0.5) {
            let &(a, b, _) = edges.choose(rng).unwrap();
            let (ia, ib) = (g.vertex(a).id.clone(), g.vertex(b).id.clone());
            g = g.blow_up_edge(&ia, &ib).unwrap().0;
        } else {
            let v = g.vertex(rng.gen_range(0..g.len())).id.clone();
            g = g.blow_up_smooth(&v).unwrap().0;
        }
    }
    g
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn cycle(v: &[i64]) -> Cycle {
    Cycle::new(v.to_vec())
}

/// Minimal DOT checker for the subset the exporter writes: one undirected
/// `graph "name" { … }` with node and edge statements whose attribute lists
/// hold `key=value` pairs; identifiers are quoted strings or bare words.
pub fn dot_is_valid(text: &str) -> Result<(), String> {
    let toks = dot_tokens(text)?;
    let mut p = 0;
    let expect = |p: &mut usize, want: &str| -> Result<(), String> {
        if toks.get(*p).map(String::as_str) == Some(want) {
            *p += 1;
            Ok(())
        } else {
            Err(format!("expected `{want}` at token {p}, got {:?}", toks.get(*p)))
        }
    };
    let is_id = |t: &str| t.starts_with('"') || t.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    let mut nodes = std::collections::HashSet::new();
    expect(&mut p, "graph")?;
    if !toks.get(p).is_some_and(|t| is_id(t)) {
        return Err("graph name".into());
    }
    p += 1;
    expect(&mut p, "{")?;
    while toks.get(p).map(String::as_str) != Some("}") {
        let a = toks.get(p).ok_or("unterminated body")?.clone();
        if !is_id(&a) {
            return Err(format!("bad id {a}"));
        }
        p += 1;
        if toks.get(p).map(String::as_str) == Some("--") {
            p += 1;
            let b = toks.get(p).ok_or("edge end")?.clone();
            if !is_id(&b) {
                return Err(format!("bad id {b}"));
            }
            if !nodes.contains(&a) || !nodes.contains(&b) {
                return Err(format!("edge {a} -- {b} before its nodes"));
            }
            p += 1;
        } else {
            nodes.insert(a);
        }
        if toks.get(p).map(String::as_str) == Some("[") {
            p += 1;
            loop {
                let k = toks.get(p).ok_or("attr key")?;
                if !is_id(k) {
                    return Err(format!("bad key {k}"));
                }
                if toks.get(p + 1).map(String::as_str) != Some("=") {
                    return Err("missing =".into());
                }
                let v = toks.get(p + 2).ok_or("attr value")?;
                if !is_id(v) && v.parse::<i64>().is_err() {
                    return Err(format!("bad value {v}"));
                }
                p += 3;
                match toks.get(p).map(String::as_str) {
                    Some(",") => p += 1,
                    Some("]") => {
                        p += 1;
                        break;
                    }
                    other => return Err(format!("attr list: {other:?}")),
                }
            }
        }
        expect(&mut p, ";")?;
    }
    p += 1;
    if p != toks.len() {
        return Err("trailing tokens".into());
    }
    Ok(())
}

fn dot_tokens(text: &str) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    let mut it = text.chars().peekable();
    while let Some(&c) = it.peek() {
        if c.is_whitespace() {
            it.next();
        } else if c == '"' {
            let mut s = String::from('"');
            it.next();
            loop {
                match it.next() {
                    Some('\\') => {
                        s.push('\\');
                        s.push(it.next().ok_or("dangling escape")?);
                    }
                    Some('"') => break,
                    Some(ch) => s.push(ch),
                    None => return Err("unterminated string".into()),
                }
            }
            s.push('"');
            out.push(s);
        } else if c == '-' {
            it.next();
            match it.peek() {
                Some('-') => {
                    it.next();
                    out.push("--".into());
                }
                _ => {
                    let mut s = String::from('-');
                    while let Some(&d) = it.peek().filter(|d| d.is_ascii_digit()) {
                        s.push(d);
                        it.next();
                    }
                    out.push(s);
                }
            }
        } else if "{}[];=,".contains(c) {
            out.push(c.to_string());
            it.next();
        } else if c.is_ascii_alphanumeric() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = it.peek().filter(|d| d.is_ascii_alphanumeric() || **d == '_') {
                s.push(d);
                it.next();
            }
            out.push(s);
        } else {
            return Err(format!("unexpected character {c:?}"));
        }
    }
    Ok(out)
}

/// Shuffled copies of `0..n`.
pub fn random_order(rng: &mut StdRng, n: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    v
}
