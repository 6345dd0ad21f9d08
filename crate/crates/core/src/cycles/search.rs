//! Searches over cycles: level sets of `p_a`, the characteristic cycle and the
//! arithmetic genus.
//!
//! Writing `c = Z_K / 2` and `q(y) = −y·y` (positive definite),
//! `p_a(D) = 1 + ½(q(c) − q(D − c))`. The set `{p_a ≥ t}` is therefore the
//! ellipsoid `q(D − c) ≤ q(c) − 2(t − 1)`, and its lattice points are
//! enumerated exactly by fixing coordinates one at a time against an LDLᵀ
//! factorisation of `q` (Fincke–Pohst), intersected with the orthant `D ≥ 0`
//! and an optional upper box.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::fundamental_cycle;
use crate::arith::{self, Ldl};
use crate::lattice::{Cycle, ResolutionGraph};
use crate::{Error, Result};

pub const DEFAULT_BOX_CAP: u128 = 10_000_000;

/// Search budget: `SINGLAT_BOX_CAP` if set to a positive integer, otherwise
/// [`DEFAULT_BOX_CAP`].
pub fn box_cap() -> u128 {
    std::env::var("SINGLAT_BOX_CAP")
        .ok()
        .and_then(|s| s.trim().parse::<u128>().ok())
        .filter(|&c| c > 0)
        .unwrap_or(DEFAULT_BOX_CAP)
}

struct Enumerator<'a> {
    g: &'a ResolutionGraph,
    ldl: Ldl,
    centre: Vec<BigRational>,
    radius: BigRational,
    upper: Option<&'a [i64]>,
    level: i64,
    x: Vec<i64>,
    y: Vec<BigRational>,
    nodes: u128,
    cap: u128,
    found: Vec<(Cycle, i64)>,
}

impl Enumerator<'_> {
    fn run(&mut self) -> Result<()> {
        let n = self.x.len();
        self.descend(n, BigRational::zero())
    }

    /// Coordinates `k..n` are fixed; choose coordinate `k − 1`.
    fn descend(&mut self, k: usize, partial: BigRational) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(Error::BoxTooLarge { volume: self.nodes, cap: self.cap });
        }
        if k == 0 {
            let d = Cycle::new(self.x.clone());
            if d.is_zero() {
                return Ok(());
            }
            let pa = self.g.genus_of_cycle(&d)?;
            debug_assert!(pa >= self.level, "ellipsoid point below level");
            if pa >= self.level {
                self.found.push((d, pa));
            }
            return Ok(());
        }
        let i = k - 1;
        let mut shift = BigRational::zero();
        for j in k..self.x.len() {
            shift += &self.ldl.u[i][j] * &self.y[j];
        }
        let mu = &self.centre[i] - &shift;
        let slack = (&self.radius - &partial) / &self.ldl.d[i];
        if slack.is_negative() {
            return Ok(());
        }
        let r0 = arith::floor_sqrt(&slack);
        let lo_f: BigInt = mu.floor().to_integer() - &r0 - 1;
        let hi_f: BigInt = mu.ceil().to_integer() + &r0 + 1;
        let mut lo = lo_f.max(BigInt::zero());
        let mut hi = hi_f;
        if let Some(up) = self.upper {
            hi = hi.min(BigInt::from(up[i]));
        }
        while lo <= hi {
            let xv = BigRational::from_integer(lo.clone());
            let dev = &xv - &mu;
            if &dev * &dev <= slack {
                let val = lo.to_i64().ok_or_else(|| Error::Internal("coefficient overflow".into()))?;
                self.x[i] = val;
                self.y[i] = &xv - &self.centre[i];
                let next = &partial + &self.ldl.d[i] * &dev * &dev;
                self.descend(i, next)?;
            } else if xv > mu {
                break;
            }
            lo += 1;
        }
        self.x[i] = 0;
        self.y[i] = BigRational::zero();
        Ok(())
    }
}

/// All nonzero cycles `D ≥ 0` (and `D ≤ upper` when given) with
/// `p_a(D) ≥ level`, paired with `p_a(D)`. At most `cap` search nodes are
/// visited.
pub fn level_set(
    g: &ResolutionGraph,
    level: i64,
    upper: Option<&Cycle>,
    cap: u128,
) -> Result<Vec<(Cycle, i64)>> {
    let zk = g.canonical_cycle()?;
    let n = g.len();
    let two = BigRational::from_integer(2.into());
    let centre: Vec<BigRational> = zk.coeffs().iter().map(|z| z / &two).collect();
    let neg: Vec<Vec<i64>> = g
        .intersection_matrix()
        .into_iter()
        .map(|r| r.into_iter().map(|x| -x).collect())
        .collect();
    let ldl = arith::ldl(&neg).ok_or(Error::NotNegativeDefinite)?;
    let mut qc = BigRational::zero();
    for i in 0..n {
        for j in 0..n {
            qc += BigRational::from_integer(neg[i][j].into()) * &centre[i] * &centre[j];
        }
    }
    let radius = qc - BigRational::from_integer((2 * (level - 1)).into());
    if radius.is_negative() {
        return Ok(Vec::new());
    }
    let mut e = Enumerator {
        g,
        ldl,
        centre,
        radius,
        upper: upper.map(|c| c.coeffs()),
        level,
        x: vec![0; n],
        y: vec![BigRational::zero(); n],
        nodes: 0,
        cap,
        found: Vec::new(),
    };
    e.run()?;
    Ok(e.found)
}

/// The characteristic cycle together with the data certifying it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacteristicResult {
    pub cycle: Cycle,
    pub p_f: i64,
    pub fundamental_cycle: Cycle,
    /// Number of cycles `0 < D ≤ Z` with `p_a(D) = p_f`.
    pub maximizers: usize,
    pub certified_minimal: bool,
}

/// The smallest cycle `C ≤ Z` with `p_a(C) = p_f`.
///
/// Every maximiser of `p_a` on the box `(0, Z]` is enumerated; the result is
/// their coefficientwise minimum, which is checked to be a maximiser itself.
pub fn characteristic_cycle(g: &ResolutionGraph) -> Result<CharacteristicResult> {
    let (z, _) = fundamental_cycle(g)?;
    let p_f = g.genus_of_cycle(&z)?;
    if p_f == 0 {
        return Err(Error::RationalSingularity);
    }
    let set = level_set(g, p_f, Some(&z), box_cap())?;
    if let Some((d, pa)) = set.iter().find(|(_, pa)| *pa != p_f) {
        return Err(Error::Internal(format!(
            "cycle {:?} below Z has genus {pa} > p_f = {p_f}",
            d.coeffs()
        )));
    }
    let cycles: Vec<Cycle> = set.into_iter().map(|(d, _)| d).collect();
    let min = cycles
        .iter()
        .skip(1)
        .fold(cycles[0].clone(), |acc, d| acc.meet(d));
    if !cycles.contains(&min) {
        return Err(Error::Internal("maximiser set is not closed under minimum".into()));
    }
    if cycles.len() <= 400 {
        for a in &cycles {
            for b in &cycles {
                if !cycles.contains(&a.meet(b)) {
                    return Err(Error::Internal("maximiser set is not closed under minimum".into()));
                }
            }
        }
    }
    Ok(CharacteristicResult {
        cycle: min,
        p_f,
        fundamental_cycle: z,
        maximizers: cycles.len(),
        certified_minimal: true,
    })
}

fn witness_key(c: &Cycle) -> (i64, Vec<i64>) {
    (c.degree(), c.coeffs().to_vec())
}

/// `max_{D > 0} p_a(D)` with a maximising witness of least total degree.
pub fn arithmetic_genus_sup(g: &ResolutionGraph) -> Result<(i64, Cycle)> {
    let (z, _) = fundamental_cycle(g)?;
    let n = g.len();
    let p_f = g.genus_of_cycle(&z)?;
    let mut best = (p_f, z.clone());
    for i in 0..n {
        let e = Cycle::unit(n, i);
        let pa = g.genus_of_cycle(&e)?;
        if pa > best.0 || (pa == best.0 && witness_key(&e) < witness_key(&best.1)) {
            best = (pa, e);
        }
    }
    if p_f == 0 {
        // Artin: p_a(D) <= 0 for every D > 0 on a rational graph.
        return Ok(best);
    }
    for (d, pa) in level_set(g, best.0, None, box_cap())? {
        if pa > best.0 || (pa == best.0 && witness_key(&d) < witness_key(&best.1)) {
            best = (pa, d);
        }
    }
    Ok(best)
}

/// Every `0 < D ≤ Z` with `p_a(D) = p_f`, by exhaustive enumeration of the box.
/// Independent of the ellipsoid search; used to cross-check it.
pub fn maximizer_set(g: &ResolutionGraph) -> Result<Vec<Cycle>> {
    let (z, _) = fundamental_cycle(g)?;
    let p_f = g.genus_of_cycle(&z)?;
    if p_f == 0 {
        return Err(Error::RationalSingularity);
    }
    let volume = z
        .coeffs()
        .iter()
        .try_fold(1u128, |acc, &c| acc.checked_mul(c as u128 + 1))
        .unwrap_or(u128::MAX);
    let cap = box_cap();
    if volume > cap {
        return Err(Error::BoxTooLarge { volume, cap });
    }
    let n = g.len();
    let mut d = Cycle::zero(n);
    let mut out = Vec::new();
    loop {
        // mixed-radix increment
        let mut i = 0;
        while i < n && d[i] == z[i] {
            d.coeffs_mut()[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        d.coeffs_mut()[i] += 1;
        if g.genus_of_cycle(&d)? == p_f {
            out.push(d.clone());
        }
    }
    out.sort_by_key(witness_key);
    Ok(out)
}
