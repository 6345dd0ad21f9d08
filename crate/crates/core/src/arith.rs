//! Exact integer linear algebra for small symmetric matrices.
//!
//! Elimination is fraction-free (Bareiss): every intermediate entry is a minor
//! of the input, so all divisions are exact and entries stay integral. Rationals
//! only appear in back-substitution and in the LDLᵀ factorisation used by the
//! ellipsoid enumerator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<i64>>;

fn to_big(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Forward Bareiss elimination with row pivoting over the first `cols` columns.
/// Returns the sign of the applied row permutation, or `None` when the leading
/// `cols` columns are rank deficient.
fn bareiss_forward(a: &mut [Vec<BigInt>], cols: usize) -> Option<i32> {
    let n = a.len();
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..cols.min(n) {
        if a[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !a[i][k].is_zero())?;
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..a[i].len() {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    Some(sign)
}

/// Determinant of a square integer matrix.
pub fn determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = to_big(m);
    match bareiss_forward(&mut a, n) {
        Some(sign) => &a[n - 1][n - 1] * sign,
        None => BigInt::zero(),
    }
}

/// Leading principal minors `Δ_1, …, Δ_k` of `m`, computed by Bareiss
/// elimination without pivoting. Stops after the first vanishing minor, since
/// the later pivots are then undefined; the returned vector is shorter than
/// `m` exactly in that case.
pub fn leading_minors(m: &[Vec<i64>]) -> Vec<BigInt> {
    let n = m.len();
    let mut a = to_big(m);
    let mut minors = Vec::with_capacity(n);
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = a[k][k].clone();
        minors.push(pivot.clone());
        if pivot.is_zero() {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &pivot - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = pivot;
    }
    minors
}

/// Sylvester's criterion: all leading principal minors positive.
pub fn is_positive_definite(m: &[Vec<i64>]) -> bool {
    let minors = leading_minors(m);
    minors.len() == m.len() && minors.iter().all(|d| d.is_positive())
}

/// A symmetric matrix `m` is negative definite iff `-m` is positive definite.
pub fn is_negative_definite(m: &[Vec<i64>]) -> bool {
    let neg: IntMatrix = m.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
    is_positive_definite(&neg)
}

/// Solves `m · x = rhs` exactly. Returns `None` for singular `m`.
pub fn solve(m: &[Vec<i64>], rhs: &[i64]) -> Option<Vec<BigRational>> {
    let n = m.len();
    assert_eq!(rhs.len(), n, "right-hand side length");
    if n == 0 {
        return Some(Vec::new());
    }
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .zip(rhs)
        .map(|(row, &b)| {
            row.iter()
                .map(|&x| BigInt::from(x))
                .chain(std::iter::once(BigInt::from(b)))
                .collect()
        })
        .collect();
    bareiss_forward(&mut a, n)?;
    if a[n - 1][n - 1].is_zero() {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = BigRational::from_integer(a[i][n].clone());
        for j in i + 1..n {
            acc -= BigRational::from_integer(a[i][j].clone()) * &x[j];
        }
        x[i] = acc / BigRational::from_integer(a[i][i].clone());
    }
    Some(x)
}

/// Exact inverse, column by column. Returns `None` for singular `m`.
pub fn inverse(m: &[Vec<i64>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<i64> = (0..n).map(|i| i64::from(i == j)).collect();
        cols.push(solve(m, &e)?);
    }
    Some(
        (0..n)
            .map(|i| (0..n).map(|j| cols[j][i].clone()).collect())
            .collect(),
    )
}

/// `q(x) = Σ_k d_k (x_k + Σ_{j>k} u[k][j] x_j)²` for a positive definite `a`.
#[derive(Debug, Clone)]
pub struct Ldl {
    pub d: Vec<BigRational>,
    pub u: Vec<Vec<BigRational>>,
}

/// LDLᵀ factorisation of a positive definite integer matrix, eliminating the
/// last coordinate first so that enumeration can fix coordinates from the end.
pub fn ldl(a: &[Vec<i64>]) -> Option<Ldl> {
    let n = a.len();
    let mut q: Vec<Vec<BigRational>> = a
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let mut d = vec![BigRational::zero(); n];
    let mut u = vec![vec![BigRational::zero(); n]; n];
    // Complete the square in x_0, then x_1, …; each step removes one variable
    // from the residual form.
    for k in 0..n {
        let dk = q[k][k].clone();
        if !dk.is_positive() {
            return None;
        }
        for j in k + 1..n {
            u[k][j] = &q[k][j] / &dk;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &q[i][j] - &dk * &u[k][i] * &u[k][j];
                q[i][j] = v;
            }
        }
        d[k] = dk;
    }
    Some(Ldl { d, u })
}

/// Largest integer `x` with `x ≤ r`.
pub fn floor(r: &BigRational) -> BigInt {
    r.floor().to_integer()
}

/// Largest integer `s` with `s² ≤ r` for `r ≥ 0`.
pub fn floor_sqrt(r: &BigRational) -> BigInt {
    if !r.is_positive() {
        return BigInt::zero();
    }
    // floor(sqrt(p/q)) = floor(sqrt(floor(p/q))) for p/q >= 0.
    floor(r).sqrt()
}
