//! Brieskorn–Pham resolution graphs `x^a + y^b + t^c` from Seifert invariants,
//! and checks of the genus formula and of the characteristic-cycle
//! proposition on them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cycles::{self, characteristic_cycle, fundamental_cycle};
use crate::iso;
use crate::lattice::{Cycle, ResolutionGraph};
use crate::{Error, Result};

/// Exponents `2 ≤ a ≤ b ≤ c` of `x^a + y^b + t^c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BpExponents {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl BpExponents {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        if !(2 <= a && a <= b && b <= c) {
            return Err(Error::InvalidExponents(a, b, c));
        }
        Ok(Self { a, b, c })
    }

    /// `d = lcm(a, b)`.
    pub fn d(&self) -> i64 {
        self.a.lcm(&self.b)
    }

    /// Number of branches `r = gcd(a, b)` of `x^a + y^b`.
    pub fn r(&self) -> i64 {
        self.a.gcd(&self.b)
    }

    /// Milnor number `(a − 1)(b − 1)` of `x^a + y^b`.
    pub fn mu(&self) -> i64 {
        (self.a - 1) * (self.b - 1)
    }

    /// `(μ − r + 1) / 2`; `μ ≡ r − 1 (mod 2)` so this is exact.
    pub fn curve_genus(&self) -> i64 {
        (self.mu() - self.r() + 1) / 2
    }

    /// `(c₀, c₁)` with `c = c₀ + c₁ d`, `0 ≤ c₀ < d`.
    pub fn split_c(&self) -> (i64, i64) {
        let d = self.d();
        (self.c.rem_euclid(d), self.c.div_euclid(d))
    }
}

/// `s` copies of an arm with Seifert pair `(α, β)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arm {
    pub alpha: i64,
    pub beta: i64,
    pub count: i64,
    /// Prefix for the arm's vertex ids.
    pub label: String,
}

/// A star-shaped graph given by Seifert invariants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeifertStar {
    pub central_genus: i64,
    /// `b₀`; the centre has self-intersection `−b₀`.
    pub central_weight: i64,
    pub arms: Vec<Arm>,
}

impl SeifertStar {
    /// `e = −b₀ + Σ s·β/α`.
    pub fn euler_number(&self) -> BigRational {
        let mut e = -BigRational::from_integer(self.central_weight.into());
        for arm in &self.arms {
            e += BigRational::new((arm.count * arm.beta).into(), arm.alpha.into());
        }
        e
    }
}

/// Hirzebruch–Jung expansion `α/β = b₁ − 1/(b₂ − … − 1/b_k)`, all `b_i ≥ 2`.
pub fn hj_expansion(alpha: i64, beta: i64) -> Result<Vec<i64>> {
    if alpha < 2 || beta < 1 || beta >= alpha || alpha.gcd(&beta) != 1 {
        return Err(Error::InvalidHjPair { alpha, beta });
    }
    let (mut p, mut q) = (alpha, beta);
    let mut out = Vec::new();
    while q > 0 {
        // ceil(p / q)
        let b = (p + q - 1) / q;
        out.push(b);
        let r = b * q - p;
        p = q;
        q = r;
    }
    Ok(out)
}

/// Value of `b₁ − 1/(b₂ − … − 1/b_k)`.
pub fn hj_evaluate(bs: &[i64]) -> BigRational {
    let mut acc: Option<BigRational> = None;
    for &b in bs.iter().rev() {
        let b = BigRational::from_integer(b.into());
        acc = Some(match acc {
            None => b,
            Some(x) => b - x.recip(),
        });
    }
    acc.unwrap_or_else(BigRational::zero)
}

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

fn small(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::Internal("Seifert invariant overflows i64".into()))
}

/// Seifert invariants of the link of `x^a + y^b + t^c`.
///
/// With `ℓ = lcm(a, b, c)` and `{i, j, k} = {1, 2, 3}`: arm `i` has
/// `α_i = ℓ / lcm(a_j, a_k)`, multiplicity `s_i = gcd(a_j, a_k)` and
/// `β_i (ℓ / a_i) ≡ −1 (mod α_i)`; the centre has genus
/// `½(2 + abc/ℓ − Σ s_i)` and weight `b₀ = abc/ℓ² + Σ s_i β_i / α_i`.
pub fn seifert_data(e: &BpExponents) -> Result<SeifertStar> {
    let ex = [e.a, e.b, e.c];
    let ex_big = ex.map(big);
    let ell = ex_big[0].lcm(&ex_big[1]).lcm(&ex_big[2]);
    let prod = &ex_big[0] * &ex_big[1] * &ex_big[2];
    let mut arms = Vec::new();
    let mut s_sum = BigInt::zero();
    let mut b0 = BigRational::new(prod.clone(), &ell * &ell);
    for (i, label) in ["x", "y", "t"].into_iter().enumerate() {
        let (j, k) = match i {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let alpha = &ell / ex_big[j].lcm(&ex_big[k]);
        let s = ex_big[j].gcd(&ex_big[k]);
        s_sum += &s;
        if alpha.is_one() {
            continue;
        }
        let unit = (&ell / &ex_big[i]).mod_floor(&alpha);
        let g = unit.extended_gcd(&alpha);
        if !g.gcd.is_one() {
            return Err(Error::Internal(format!("ℓ/a_{} not invertible mod α", i + 1)));
        }
        let beta = (-g.x).mod_floor(&alpha);
        b0 += BigRational::new(&s * &beta, alpha.clone());
        arms.push(Arm { alpha: small(&alpha)?, beta: small(&beta)?, count: small(&s)?, label: label.into() });
    }
    let twice_genus = big(2) + &prod / &ell - s_sum;
    if twice_genus.is_odd() || twice_genus.is_negative() {
        return Err(Error::Internal(format!("central genus ½({twice_genus}) is not a natural number")));
    }
    if !b0.is_integer() {
        return Err(Error::Internal(format!("central weight {b0} is not integral")));
    }
    Ok(SeifertStar {
        central_genus: small(&(twice_genus / 2))?,
        central_weight: small(&b0.to_integer())?,
        arms,
    })
}

/// Id of vertex `pos` (1-based, from the centre) on copy `copy` of an arm.
pub fn arm_vertex_id(label: &str, copy: i64, pos: usize) -> String {
    format!("{label}{copy}_{pos}")
}

pub const CENTRE_ID: &str = "o";

/// The star: centre `(−b₀, central_genus)` and, per arm, `s` chains with the
/// Hirzebruch–Jung weights of `α/β`, `b₁` adjacent to the centre.
pub fn assemble_star(s: &SeifertStar) -> Result<ResolutionGraph> {
    if s.central_genus < 0 || s.central_weight < 1 {
        return Err(Error::InvalidStar(format!(
            "centre genus {} weight {}",
            s.central_genus, s.central_weight
        )));
    }
    if !s.euler_number().is_negative() {
        return Err(Error::InvalidStar(format!("Euler number {} is not negative", s.euler_number())));
    }
    let mut g = ResolutionGraph::new();
    g.add_vertex(CENTRE_ID, -s.central_weight, s.central_genus)?;
    for arm in &s.arms {
        if arm.count < 1 {
            return Err(Error::InvalidStar(format!("arm `{}` has count {}", arm.label, arm.count)));
        }
        let weights = hj_expansion(arm.alpha, arm.beta)?;
        for copy in 1..=arm.count {
            let mut prev = CENTRE_ID.to_string();
            for (k, &w) in weights.iter().enumerate() {
                let id = arm_vertex_id(&arm.label, copy, k + 1);
                g.add_vertex(id.clone(), -w, 0)?;
                g.add_edge(&prev, &id, 1)?;
                prev = id;
            }
        }
    }
    if !g.is_negative_definite() {
        return Err(Error::Internal("assembled star is not negative definite".into()));
    }
    Ok(g)
}

/// Resolution graph of `x^a + y^b + t^c`.
pub fn bp_graph(a: i64, b: i64, c: i64) -> Result<ResolutionGraph> {
    assemble_star(&seifert_data(&BpExponents::new(a, b, c)?)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusCheck {
    pub exponents: BpExponents,
    pub d: i64,
    pub r: i64,
    pub mu: i64,
    pub expected_genus: i64,
    pub fundamental_genus: i64,
    pub genus_matches: bool,
    pub numerically_kulikov: bool,
    pub passed: bool,
}

/// For `c ≥ lcm(a, b)`: `p_f = (μ − r + 1)/2` and the graph is numerically
/// Kulikov.
pub fn bp_kulikov_genus_check(a: i64, b: i64, c: i64) -> Result<GenusCheck> {
    let e = BpExponents::new(a, b, c)?;
    if c < e.d() {
        return Err(Error::ExponentBelowLcm { c, d: e.d() });
    }
    let g = bp_graph(a, b, c)?;
    let p_f = cycles::fundamental_genus(&g)?;
    let kulikov = cycles::is_numerically_kulikov(&g)?.holds;
    let expected = e.curve_genus();
    Ok(GenusCheck {
        exponents: e,
        d: e.d(),
        r: e.r(),
        mu: e.mu(),
        expected_genus: expected,
        fundamental_genus: p_f,
        genus_matches: p_f == expected,
        numerically_kulikov: kulikov,
        passed: p_f == expected && kulikov,
    })
}

/// Verdicts on one triple. Verdict fields are `None` when the graph is
/// rational and the statement is vacuous.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TomaruReport {
    pub exponents: BpExponents,
    pub d: i64,
    pub r: i64,
    pub c0: i64,
    pub c1: i64,
    pub fundamental_genus: i64,
    pub vacuous: bool,
    /// Induced subgraph on `supp(C)` is isomorphic to the graph for `c₀ + d`.
    pub support_matches: Option<bool>,
    /// Under such an isomorphism `C` is the fundamental cycle of that graph.
    pub cycle_matches_reference_z: Option<bool>,
    /// `C = Z`.
    pub equality_holds: Option<bool>,
    /// `d ≤ c < 2d`.
    pub equality_predicted: bool,
    /// The complement of `supp(C)` is `r` chains of `c₁ − 1` rational
    /// `(−2)`-curves at the ends of the `t`-arms.
    pub chains_found: Option<bool>,
    pub characteristic_cycle: Option<BTreeMap<String, i64>>,
    pub fundamental_cycle: BTreeMap<String, i64>,
    pub chains: Vec<Vec<String>>,
}

impl TomaruReport {
    pub fn passed(&self) -> bool {
        self.vacuous
            || (self.support_matches == Some(true)
                && self.cycle_matches_reference_z == Some(true)
                && self.equality_holds == Some(self.equality_predicted)
                && self.chains_found == Some(true))
    }
}

fn check_chains(g: &ResolutionGraph, support: &[usize], r: i64, c1: i64) -> (bool, Vec<Vec<String>>) {
    let inside: Vec<bool> = (0..g.len()).map(|i| support.contains(&i)).collect();
    let rest: Vec<usize> = (0..g.len()).filter(|&i| !inside[i]).collect();
    let sub = g.induced(&rest);
    let comps: Vec<Vec<usize>> = sub
        .components()
        .into_iter()
        .map(|c| c.into_iter().map(|k| rest[k]).collect())
        .collect();
    let names = comps
        .iter()
        .map(|c| c.iter().map(|&i| g.vertex(i).id.clone()).collect())
        .collect();
    if rest.is_empty() {
        return (c1 == 1, names);
    }
    let want_len = (c1 - 1) as usize;
    let ok = comps.len() as i64 == r
        && comps.iter().all(|comp| {
            let is_path = comp.iter().all(|&i| {
                let inner = g.neighbours(i).iter().filter(|(j, _)| !inside[*j]).count();
                inner <= 2
            });
            let weights_ok = comp.iter().all(|&i| {
                let v = g.vertex(i);
                v.self_int == -2 && v.genus == 0 && v.id.starts_with('t')
            });
            let attachments: usize = comp
                .iter()
                .map(|&i| g.neighbours(i).iter().filter(|(j, _)| inside[*j]).count())
                .sum();
            let has_leaf = comp.iter().any(|&i| g.degree(i) == 1);
            comp.len() == want_len && is_path && weights_ok && attachments == 1 && has_leaf
        });
    (ok, names)
}

/// Checks the characteristic-cycle proposition for `x^a + y^b + t^c`,
/// `c ≥ lcm(a, b)`.
///
/// `C` is computed on the minimal resolution and reported as its total
/// transform on the star-shaped graph, where supports and chains are read off.
pub fn tomaru_check(a: i64, b: i64, c: i64) -> Result<TomaruReport> {
    let e = BpExponents::new(a, b, c)?;
    let d = e.d();
    if c < d {
        return Err(Error::ExponentBelowLcm { c, d });
    }
    let (c0, c1) = e.split_c();
    let big_g = bp_graph(a, b, c)?;
    let (z, _) = fundamental_cycle(&big_g)?;
    let p_f = big_g.genus_of_cycle(&z)?;
    let mut report = TomaruReport {
        exponents: e,
        d,
        r: e.r(),
        c0,
        c1,
        fundamental_genus: p_f,
        vacuous: p_f == 0,
        support_matches: None,
        cycle_matches_reference_z: None,
        equality_holds: None,
        equality_predicted: d <= c && c < 2 * d,
        chains_found: None,
        characteristic_cycle: None,
        fundamental_cycle: z.to_map(&big_g),
        chains: Vec::new(),
    };
    if p_f == 0 {
        return Ok(report);
    }
    // The characteristic cycle is an invariant of the minimal resolution; the
    // star is the minimal good resolution, so compute there and pull back.
    let model = big_g.minimal_model()?;
    let ch = characteristic_cycle(&model.graph)?;
    let c_big = model.pullback(&ch.cycle)?;
    let support = c_big.support();
    let sub = big_g.induced(&support);
    let sub_c = Cycle::new(support.iter().map(|&i| c_big[i]).collect());
    let ref_g = bp_graph(a, b, c0 + d)?;
    let (ref_z, _) = fundamental_cycle(&ref_g)?;
    report.support_matches = Some(iso::is_isomorphic(&sub, &ref_g));
    report.cycle_matches_reference_z = Some(iso::is_isomorphic_with_cycles(&sub, &sub_c, &ref_g, &ref_z));
    report.equality_holds = Some(c_big == z);
    let (chains_ok, chains) = check_chains(&big_g, &support, e.r(), c1);
    report.chains_found = Some(chains_ok);
    report.chains = chains;
    report.characteristic_cycle = Some(c_big.to_map(&big_g));
    Ok(report)
}

/// One row of a scan; errors are recorded rather than aborting the scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub exponents: (i64, i64, i64),
    pub report: Option<TomaruReport>,
    pub error: Option<String>,
}

impl ScanRow {
    pub fn passed(&self) -> bool {
        self.report.as_ref().is_some_and(TomaruReport::passed)
    }
}

/// All `2 ≤ a ≤ a_max`, `a ≤ b ≤ b_max`, `d ≤ c ≤ c1_max · d`, in that order.
pub fn scan_triples(a_max: i64, b_max: i64, c1_max: i64) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    for a in 2..=a_max {
        for b in a..=b_max {
            let d = a.lcm(&b);
            for c in d..=c1_max * d {
                out.push((a, b, c));
            }
        }
    }
    out
}

/// Runs [`tomaru_check`] on every triple of [`scan_triples`], in parallel;
/// rows come back in triple order.
pub fn tomaru_scan(a_max: i64, b_max: i64, c1_max: i64) -> Vec<ScanRow> {
    scan_triples(a_max, b_max, c1_max)
        .into_par_iter()
        .map(|(a, b, c)| match tomaru_check(a, b, c) {
            Ok(r) => ScanRow { exponents: (a, b, c), report: Some(r), error: None },
            Err(e) => ScanRow { exponents: (a, b, c), report: None, error: Some(e.to_string()) },
        })
        .collect()
}
