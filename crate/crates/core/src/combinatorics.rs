//! Exact counting on the bigraded ring `S = k[x_0..x_n, y_0..y_m]`.
//!
//! Everything here is a pure function of shapes and bidegrees and returns
//! arbitrary-precision integers. Binomials follow the dimension convention
//! `C(t, k) = 0` whenever `t < k`, so graded pieces in negative degree vanish.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::regions::{v_point, w_point, RegionSpec};

/// A point of Z². Negative coordinates are legal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct Bidegree {
    pub a: i64,
    pub b: i64,
}

impl Bidegree {
    pub const ZERO: Bidegree = Bidegree { a: 0, b: 0 };

    pub const fn new(a: i64, b: i64) -> Self {
        Bidegree { a, b }
    }

    /// Componentwise `self >= other`.
    pub fn dominates(&self, other: &Bidegree) -> bool {
        self.a >= other.a && self.b >= other.b
    }

    pub fn is_nonnegative(&self) -> bool {
        self.a >= 0 && self.b >= 0
    }

    pub fn max(self, other: Bidegree) -> Bidegree {
        Bidegree::new(self.a.max(other.a), self.b.max(other.b))
    }

    pub fn min(self, other: Bidegree) -> Bidegree {
        Bidegree::new(self.a.min(other.a), self.b.min(other.b))
    }
}

impl From<[i64; 2]> for Bidegree {
    fn from(v: [i64; 2]) -> Self {
        Bidegree::new(v[0], v[1])
    }
}

impl From<Bidegree> for [i64; 2] {
    fn from(d: Bidegree) -> Self {
        [d.a, d.b]
    }
}

impl From<(i64, i64)> for Bidegree {
    fn from((a, b): (i64, i64)) -> Self {
        Bidegree::new(a, b)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl Add for Bidegree {
    type Output = Bidegree;
    fn add(self, rhs: Bidegree) -> Bidegree {
        Bidegree::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl Sub for Bidegree {
    type Output = Bidegree;
    fn sub(self, rhs: Bidegree) -> Bidegree {
        Bidegree::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl Neg for Bidegree {
    type Output = Bidegree;
    fn neg(self) -> Bidegree {
        Bidegree::new(-self.a, -self.b)
    }
}

impl Mul<Bidegree> for i64 {
    type Output = Bidegree;
    fn mul(self, rhs: Bidegree) -> Bidegree {
        Bidegree::new(self * rhs.a, self * rhs.b)
    }
}

/// The pair `(n, m)` fixing `P^n x P^m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Shape {
    n: u32,
    m: u32,
}

impl Shape {
    pub fn new(n: i64, m: i64) -> Result<Self> {
        if n < 1 || m < 1 || n > 64 || m > 64 {
            return Err(Error::InvalidShape { n, m });
        }
        Ok(Shape {
            n: n as u32,
            m: m as u32,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Number of generators of a complete intersection of points, `n + m`.
    pub fn r(&self) -> usize {
        (self.n + self.m) as usize
    }

    pub fn swapped(&self) -> Shape {
        Shape {
            n: self.m,
            m: self.n,
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P^{} x P^{}", self.n, self.m)
    }
}

/// Generator bidegrees `(d_i, e_i)`, each at least `(1,1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DegreeList(Vec<Bidegree>);

impl DegreeList {
    pub fn new(degrees: Vec<Bidegree>) -> Result<Self> {
        if let Some(bad) = degrees.iter().find(|d| d.a < 1 || d.b < 1) {
            return Err(Error::InvalidDegree(*bad));
        }
        Ok(DegreeList(degrees))
    }

    pub fn constant(d: Bidegree, r: usize) -> Result<Self> {
        Self::new(vec![d; r])
    }

    pub fn as_slice(&self) -> &[Bidegree] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> Bidegree {
        self.0.iter().fold(Bidegree::ZERO, |acc, &d| acc + d)
    }
}

/// Largest generator count accepted by [`chi_general`].
pub const SUBSET_LIMIT: usize = 24;

/// `C(t, k)` for `t >= k`, else 0.
pub fn binom(t: i64, k: u32) -> BigUint {
    let k = k as i64;
    if t < k {
        return BigUint::zero();
    }
    let k = k.min(t - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= BigUint::from((t - i) as u64);
        acc /= BigUint::from((i + 1) as u64);
    }
    acc
}

/// `dim_k S_(a,b) = C(n+a, n) * C(m+b, m)`.
pub fn dim_s(shape: Shape, mu: Bidegree) -> BigUint {
    if !mu.is_nonnegative() {
        return BigUint::zero();
    }
    binom(shape.n as i64 + mu.a, shape.n) * binom(shape.m as i64 + mu.b, shape.m)
}

/// Euler characteristic of the Koszul complex on `n+m` forms of equal bidegree `d`.
pub fn chi_equal(shape: Shape, d: Bidegree, mu: Bidegree) -> BigInt {
    let r = shape.r() as u32;
    let mut total = BigInt::zero();
    for i in 0..=r {
        let term = binom(r as i64, i)
            * binom(shape.n as i64 + mu.a - i as i64 * d.a, shape.n)
            * binom(shape.m as i64 + mu.b - i as i64 * d.b, shape.m);
        if i % 2 == 0 {
            total += BigInt::from(term);
        } else {
            total -= BigInt::from(term);
        }
    }
    total
}

/// Euler characteristic `sum_T (-1)^|T| dim S_(mu - d_T)` for arbitrary degrees.
///
/// Subsets are enumerated per distinct degree, so repeated degrees collapse
/// into binomial weights.
pub fn chi_general(shape: Shape, degrees: &DegreeList, mu: Bidegree) -> Result<BigInt> {
    if degrees.len() > SUBSET_LIMIT {
        return Err(Error::SubsetLimitExceeded {
            got: degrees.len(),
            limit: SUBSET_LIMIT,
        });
    }
    let mut groups: Vec<(Bidegree, u32)> = Vec::new();
    for &d in degrees.as_slice() {
        match groups.iter_mut().find(|(g, _)| *g == d) {
            Some((_, c)) => *c += 1,
            None => groups.push((d, 1)),
        }
    }

    fn walk(
        shape: Shape,
        groups: &[(Bidegree, u32)],
        shift: Bidegree,
        parity: u32,
        weight: BigUint,
        total: &mut BigInt,
    ) {
        let Some(((d, count), rest)) = groups.split_first() else {
            let term = BigInt::from(weight * dim_s(shape, shift));
            if parity.is_multiple_of(2) {
                *total += term;
            } else {
                *total -= term;
            }
            return;
        };
        for j in 0..=*count {
            let shifted = shift - (j as i64) * *d;
            walk(
                shape,
                rest,
                shifted,
                parity + j,
                &weight * binom(*count as i64, j),
                total,
            );
        }
    }

    let mut total = BigInt::zero();
    walk(shape, &groups, mu, 0, BigUint::one(), &mut total);
    Ok(total)
}

/// Degree of the complete intersection cut out by `n+m` forms of the given bidegrees.
///
/// This is the coefficient of `X^n` in `prod_i (d_i X + e_i)`, which sums
/// `d_{i_1}..d_{i_n} e_{j_1}..e_{j_m}` over all ways to split the generators.
pub fn degree_ci(shape: Shape, degrees: &DegreeList) -> Result<BigUint> {
    if degrees.len() != shape.r() {
        return Err(Error::LengthMismatch {
            expected: shape.r(),
            got: degrees.len(),
        });
    }
    let first = degrees.as_slice()[0];
    if degrees.as_slice().iter().all(|&d| d == first) {
        return Ok(binom(shape.r() as i64, shape.n)
            * BigUint::from(first.a as u64).pow(shape.n)
            * BigUint::from(first.b as u64).pow(shape.m));
    }
    // coeffs[k] = coefficient of X^k
    let mut coeffs = vec![BigUint::one()];
    for d in degrees.as_slice() {
        let mut next = vec![BigUint::zero(); coeffs.len() + 1];
        for (k, c) in coeffs.iter().enumerate() {
            next[k] += c * BigUint::from(d.b as u64);
            next[k + 1] += c * BigUint::from(d.a as u64);
        }
        coeffs = next;
    }
    Ok(coeffs.swap_remove(shape.n as usize))
}

/// Correction term of the duality on `Gamma_0 \ (Gamma_-1 u Gamma_1)`.
///
/// Sum of the graded-piece dimensions of the top local cohomology of the two
/// Koszul modules `K_n` and `K_m`, one summand each.
pub fn epsilon(shape: Shape, d: Bidegree, mu: Bidegree) -> BigUint {
    let spec = RegionSpec::unchecked(shape, d);
    let v = v_point(&spec, shape.n as i64);
    let w = w_point(&spec, shape.m as i64);
    let dv = mu - v;
    let dw = mu - w;
    dim_s(shape, Bidegree::new(-dv.a, dv.b)) + dim_s(shape, Bidegree::new(dw.a, -dw.b))
}

/// Which irrelevant ideal the local cohomology is taken against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Support {
    /// `B_1 = (x_0..x_n)`; cohomology lives in degree `n+1`.
    B1,
    /// `B_2 = (y_0..y_m)`; cohomology lives in degree `m+1`.
    B2,
    /// `m = B_1 + B_2`; cohomology lives in degree `n+m+2`.
    MaxIdeal,
}

/// Dimension at `mu` of the only nonvanishing local cohomology of `S(-twist)`.
pub fn hloc_free_dim(shape: Shape, which: Support, twist: Bidegree, mu: Bidegree) -> BigUint {
    let (n, m) = (shape.n as i64, shape.m as i64);
    // C(t - a - 1, n) counts monomials of (x_0..x_n)^-1 k[x^-1] in degree a - t.
    let neg_x = || binom(twist.a - mu.a - 1, shape.n);
    let neg_y = || binom(twist.b - mu.b - 1, shape.m);
    let pos_x = || binom(mu.a - twist.a + n, shape.n);
    let pos_y = || binom(mu.b - twist.b + m, shape.m);
    match which {
        Support::B1 => neg_x() * pos_y(),
        Support::B2 => pos_x() * neg_y(),
        Support::MaxIdeal => neg_x() * neg_y(),
    }
}
