use std::collections::BTreeMap;
use std::ops::{Add, Index, Sub};

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::ResolutionGraph;
use crate::{Error, Result};

/// An integral cycle `Σ c_i E_i`, indexed like the vertices of its graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    coeffs: Vec<i64>,
}

impl Cycle {
    pub fn new(coeffs: Vec<i64>) -> Self {
        Self { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        Self { coeffs: vec![0; n] }
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut c = Self::zero(n);
        c.coeffs[i] = 1;
        c
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [i64] {
        &mut self.coeffs
    }

    /// All coefficients `≥ 0` and at least one `> 0`.
    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0) && self.coeffs.iter().any(|&c| c > 0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Coefficientwise `self ≤ other`.
    pub fn le(&self, other: &Cycle) -> bool {
        self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a <= b)
    }

    pub fn meet(&self, other: &Cycle) -> Cycle {
        Cycle::new(self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| a.min(b)).collect())
    }

    pub fn join(&self, other: &Cycle) -> Cycle {
        Cycle::new(self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| a.max(b)).collect())
    }

    /// `Σ c_i`.
    pub fn degree(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// Indices with nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.coeffs[i] != 0).collect()
    }

    /// Every coefficient is `0` or `1`.
    pub fn is_reduced(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0 || c == 1)
    }

    pub fn to_rational(&self) -> RationalCycle {
        RationalCycle::new(
            self.coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn to_map(&self, g: &ResolutionGraph) -> BTreeMap<String, i64> {
        g.vertices()
            .iter()
            .zip(&self.coeffs)
            .map(|(v, &c)| (v.id.clone(), c))
            .collect()
    }

    /// Builds a cycle from `id → coefficient`; missing ids read as `0`.
    pub fn from_map(g: &ResolutionGraph, map: &BTreeMap<String, i64>) -> Result<Cycle> {
        let mut c = Cycle::zero(g.len());
        for (id, &v) in map {
            c.coeffs[g.require(id)?] = v;
        }
        Ok(c)
    }
}

impl Index<usize> for Cycle {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.coeffs[i]
    }
}

impl Add for &Cycle {
    type Output = Cycle;
    fn add(self, rhs: &Cycle) -> Cycle {
        Cycle::new(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Cycle {
    type Output = Cycle;
    fn sub(self, rhs: &Cycle) -> Cycle {
        Cycle::new(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect())
    }
}

/// A cycle with exact rational coefficients, an element of `H ⊗ Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalCycle {
    coeffs: Vec<BigRational>,
}

impl RationalCycle {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        Self { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        Self { coeffs: vec![BigRational::zero(); n] }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// The integral cycle with the same coefficients, if there is one.
    pub fn to_integral(&self) -> Option<Cycle> {
        self.coeffs
            .iter()
            .map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None })
            .collect::<Option<Vec<_>>>()
            .map(Cycle::new)
    }

    /// `id → "p/q"` (or `"p"` for integers).
    pub fn to_string_map(&self, g: &ResolutionGraph) -> Result<BTreeMap<String, String>> {
        if self.len() != g.len() {
            return Err(Error::VertexSetMismatch { expected: g.len(), got: self.len() });
        }
        Ok(g.vertices()
            .iter()
            .zip(&self.coeffs)
            .map(|(v, c)| (v.id.clone(), c.to_string()))
            .collect())
    }
}

impl Index<usize> for RationalCycle {
    type Output = BigRational;
    fn index(&self, i: usize) -> &BigRational {
        &self.coeffs[i]
    }
}
