//! Lattice geometry of the equal-degree point case.
//!
//! `Gamma_i` is the union of two half-strips: `v_{n+i} + (-N, N)` when the
//! Koszul index `n+i` lies in `0..=n+m`, and `w_{m+i} + (N, -N)` when `m+i`
//! does. The definition is applied literally, so `Gamma_{max(n,m)}` is
//! nonempty (it comes from the top Koszul module).

use serde::{Deserialize, Serialize};

use crate::combinatorics::{Bidegree, Shape};
use crate::error::{Error, Result};

/// A shape together with the common bidegree `(d, e)` of its `n+m` generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RegionSpec {
    shape: Shape,
    d: Bidegree,
}

impl RegionSpec {
    pub fn new(shape: Shape, d: Bidegree) -> Result<Self> {
        if d.a < 1 || d.b < 1 {
            return Err(Error::InvalidDegree(d));
        }
        Ok(RegionSpec { shape, d })
    }

    pub(crate) fn unchecked(shape: Shape, d: Bidegree) -> Self {
        RegionSpec { shape, d }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn d(&self) -> Bidegree {
        self.d
    }

    pub fn r(&self) -> usize {
        self.shape.r()
    }

    fn n(&self) -> i64 {
        self.shape.n() as i64
    }

    fn m(&self) -> i64 {
        self.shape.m() as i64
    }

    /// Largest `|i|` for which `Gamma_i` can be nonempty.
    pub fn max_index(&self) -> i64 {
        self.n().max(self.m())
    }
}

/// `v_i = i*d - (n+1, 0)`.
pub fn v_point(spec: &RegionSpec, i: i64) -> Bidegree {
    i * spec.d - Bidegree::new(spec.n() + 1, 0)
}

/// `w_i = i*d - (0, m+1)`.
pub fn w_point(spec: &RegionSpec, i: i64) -> Bidegree {
    i * spec.d - Bidegree::new(0, spec.m() + 1)
}

/// Duality center `(n+m)*d - (n+1, m+1)`.
pub fn sigma(spec: &RegionSpec) -> Bidegree {
    spec.r() as i64 * spec.d - Bidegree::new(spec.n() + 1, spec.m() + 1)
}

pub fn in_gamma(spec: &RegionSpec, i: i64, mu: Bidegree) -> bool {
    let r = spec.r() as i64;
    let kv = spec.n() + i;
    let kw = spec.m() + i;
    let on_v = (0..=r).contains(&kv) && {
        let v = v_point(spec, kv);
        mu.a <= v.a && mu.b >= v.b
    };
    let on_w = (0..=r).contains(&kw) && {
        let w = w_point(spec, kw);
        mu.a >= w.a && mu.b <= w.b
    };
    on_v || on_w
}

/// `mu` lies in `Gamma_i` for some `i >= 1`.
pub fn in_gamma_union_pos(spec: &RegionSpec, mu: Bidegree) -> bool {
    (1..=spec.max_index()).any(|i| in_gamma(spec, i, mu))
}

/// Which rule of the closed-form decision tree applies at a bidegree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    /// Outside every positive strip: the Hilbert function is the Euler characteristic.
    ChiRule,
    /// In a positive strip but off `Gamma_0`: determined by duality through `sigma`.
    DualRule,
    /// `Gamma_0` meets a positive strip: depends on the generators.
    InstanceDependent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub mu: Bidegree,
    pub in_gamma0: bool,
    pub in_gamma_pos: bool,
    pub in_gamma_neg1: bool,
    pub verdict: Verdict,
    /// Every `i` with `mu` in `Gamma_i`, ascending.
    pub memberships: Vec<i64>,
}

pub fn classify(spec: &RegionSpec, mu: Bidegree) -> Classification {
    let k = spec.max_index();
    let memberships: Vec<i64> = (-k..=k).filter(|&i| in_gamma(spec, i, mu)).collect();
    let in_gamma0 = memberships.contains(&0);
    let in_gamma_pos = memberships.iter().any(|&i| i >= 1);
    let in_gamma_neg1 = memberships.contains(&-1);
    let verdict = match (in_gamma_pos, in_gamma0) {
        (false, _) => Verdict::ChiRule,
        (true, false) => Verdict::DualRule,
        (true, true) => Verdict::InstanceDependent,
    };
    Classification {
        mu,
        in_gamma0,
        in_gamma_pos,
        in_gamma_neg1,
        verdict,
        memberships,
    }
}

/// The two corners `(nd-n, (n+m)e-m)` and `((n+m)d-n, me-m)` beyond which
/// the Hilbert function of any such complete intersection equals its degree.
pub fn guaranteed_corners(spec: &RegionSpec) -> [Bidegree; 2] {
    let (n, m, r) = (spec.n(), spec.m(), spec.r() as i64);
    let Bidegree { a: d, b: e } = spec.d;
    [
        Bidegree::new(n * d - n, r * e - m),
        Bidegree::new(r * d - n, m * e - m),
    ]
}

pub fn guaranteed_regular(spec: &RegionSpec, mu: Bidegree) -> bool {
    guaranteed_corners(spec).iter().any(|c| mu.dominates(c))
}

/// An up-closed subset of Z², stored as its antichain of minimal corners.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Staircase {
    corners: Vec<Bidegree>,
}

impl Staircase {
    /// Reduce any finite generating set to its minimal antichain.
    pub fn from_points<I: IntoIterator<Item = Bidegree>>(points: I) -> Self {
        let mut pts: Vec<Bidegree> = points.into_iter().collect();
        pts.sort();
        pts.dedup();
        // sorted by (a, b): a point is minimal iff its b is below every b seen so far
        let mut corners: Vec<Bidegree> = Vec::new();
        for p in pts {
            if corners.last().is_none_or(|last| p.b < last.b) {
                corners.push(p);
            }
        }
        Staircase { corners }
    }

    pub fn empty() -> Self {
        Staircase::default()
    }

    /// Corners sorted by increasing `a` (hence decreasing `b`).
    pub fn corners(&self) -> &[Bidegree] {
        &self.corners
    }

    pub fn is_empty(&self) -> bool {
        self.corners.is_empty()
    }

    pub fn contains(&self, mu: Bidegree) -> bool {
        self.corners.iter().any(|c| mu.dominates(c))
    }

    /// Whether every point of `other` lies in `self`.
    pub fn contains_staircase(&self, other: &Staircase) -> bool {
        other.corners.iter().all(|&c| self.contains(c))
    }
}

pub fn staircase_membership(st: &Staircase, mu: Bidegree) -> bool {
    st.contains(mu)
}

pub fn staircase_from_points<I: IntoIterator<Item = Bidegree>>(points: I) -> Staircase {
    Staircase::from_points(points)
}
