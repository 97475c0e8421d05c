//! Closed-form Hilbert function of a complete intersection of points cut out
//! by `n+m` forms of equal bidegree.
//!
//! The decision tree is total:
//!
//! * negative coordinates give 0;
//! * off every positive strip `Gamma_i, i >= 1`, the value is `chi(mu)`;
//! * on a positive strip but off `Gamma_0`, it is `deg(V) - chi(sigma - mu)`;
//! * on `Gamma_0` intersected with a positive strip it depends on the forms.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binom, chi_equal, degree_ci, dim_s, Bidegree, DegreeList};
use crate::error::{Error, Result};
use crate::regions::{
    classify, guaranteed_corners, in_gamma, in_gamma_union_pos, sigma, v_point, w_point,
    Classification, RegionSpec, Staircase,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    ChiRule,
    DualRule,
    Part3Stable,
}

impl Rule {
    /// Short tag used in CSV output.
    pub fn tag(&self) -> &'static str {
        match self {
            Rule::ChiRule => "chi",
            Rule::DualRule => "dual",
            Rule::Part3Stable => "stable",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum HFResult {
    Known { value: BigUint, rule: Rule },
    InstanceDependent,
}

impl HFResult {
    pub fn value(&self) -> Option<&BigUint> {
        match self {
            HFResult::Known { value, .. } => Some(value),
            HFResult::InstanceDependent => None,
        }
    }

    pub fn rule(&self) -> Option<Rule> {
        match self {
            HFResult::Known { rule, .. } => Some(*rule),
            HFResult::InstanceDependent => None,
        }
    }

    pub fn is_known(&self) -> bool {
        matches!(self, HFResult::Known { .. })
    }
}

/// Inclusive rectangle of bidegrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    pub lower: Bidegree,
    pub upper: Bidegree,
}

impl Window {
    pub fn new(lower: Bidegree, upper: Bidegree) -> Result<Self> {
        if !upper.dominates(&lower) {
            return Err(Error::WindowInvalid { lower, upper });
        }
        Ok(Window { lower, upper })
    }

    pub fn width(&self) -> usize {
        (self.upper.a - self.lower.a + 1) as usize
    }

    pub fn height(&self) -> usize {
        (self.upper.b - self.lower.b + 1) as usize
    }

    pub fn len(&self) -> usize {
        self.width() * self.height()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, mu: Bidegree) -> bool {
        mu.dominates(&self.lower) && self.upper.dominates(&mu)
    }

    /// Row-major position: `b` is the slow index, `a` the fast one.
    pub fn index_of(&self, mu: Bidegree) -> Option<usize> {
        self.contains(mu).then(|| {
            (mu.b - self.lower.b) as usize * self.width() + (mu.a - self.lower.a) as usize
        })
    }

    /// Cells in row-major order starting at the lower corner.
    pub fn points(&self) -> impl Iterator<Item = Bidegree> + '_ {
        (self.lower.b..=self.upper.b)
            .flat_map(move |b| (self.lower.a..=self.upper.a).map(move |a| Bidegree::new(a, b)))
    }

    /// Smallest window containing both.
    pub fn hull(&self, other: &Window) -> Window {
        Window {
            lower: self.lower.min(other.lower),
            upper: self.upper.max(other.upper),
        }
    }
}

/// Default window `(0,0)..=sigma+(2,2)`, large enough to hold duality pairs.
pub fn default_window(spec: &RegionSpec) -> Window {
    let upper = (sigma(spec) + Bidegree::new(2, 2)).max(Bidegree::ZERO);
    Window {
        lower: Bidegree::ZERO,
        upper,
    }
}

pub fn degree_of(spec: &RegionSpec) -> BigUint {
    let degrees = DegreeList::constant(spec.d(), spec.r()).expect("spec degrees are >= (1,1)");
    degree_ci(spec.shape(), &degrees).expect("constant list has length n+m")
}

fn nonneg(v: BigInt) -> BigUint {
    match v.sign() {
        Sign::Minus => panic!("negative Hilbert function value {v}"),
        _ => v.magnitude().clone(),
    }
}

pub fn hf_ci_points(spec: &RegionSpec, mu: Bidegree) -> HFResult {
    if !mu.is_nonnegative() {
        return HFResult::Known {
            value: BigUint::zero(),
            rule: Rule::ChiRule,
        };
    }
    if !in_gamma_union_pos(spec, mu) {
        return HFResult::Known {
            value: nonneg(chi_equal(spec.shape(), spec.d(), mu)),
            rule: Rule::ChiRule,
        };
    }
    if !in_gamma(spec, 0, mu) {
        let dual = chi_equal(spec.shape(), spec.d(), sigma(spec) - mu);
        return HFResult::Known {
            value: nonneg(BigInt::from(degree_of(spec)) - dual),
            rule: Rule::DualRule,
        };
    }
    HFResult::InstanceDependent
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HFTable {
    pub spec: RegionSpec,
    pub window: Window,
    /// Row-major, see [`Window::index_of`].
    pub cells: Vec<HFResult>,
    pub classifications: Vec<Classification>,
}

impl HFTable {
    pub fn get(&self, mu: Bidegree) -> Option<&HFResult> {
        self.window.index_of(mu).map(|i| &self.cells[i])
    }

    pub fn classification(&self, mu: Bidegree) -> Option<&Classification> {
        self.window.index_of(mu).map(|i| &self.classifications[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (Bidegree, &HFResult, &Classification)> + '_ {
        self.window
            .points()
            .zip(self.cells.iter().zip(self.classifications.iter()))
            .map(|(mu, (c, k))| (mu, c, k))
    }
}

pub fn hf_table(spec: &RegionSpec, window: Window) -> Result<HFTable> {
    let window = Window::new(window.lower, window.upper)?;
    if !window.lower.is_nonnegative() {
        return Err(Error::WindowInvalid {
            lower: window.lower,
            upper: window.upper,
        });
    }
    let points: Vec<Bidegree> = window.points().collect();
    let (cells, classifications) = points
        .par_iter()
        .map(|&mu| (hf_ci_points(spec, mu), classify(spec, mu)))
        .unzip();
    Ok(HFTable {
        spec: *spec,
        window,
        cells,
        classifications,
    })
}

/// `dim (I_V / I)_mu` where it is forced by the degrees.
///
/// The `Part3Stable` rule never occurs here; known values carry `ChiRule`
/// off `Gamma_1` (the quotient vanishes) and `DualRule` on the clean part of
/// `Gamma_1`.
pub fn dim_iv_mod_i(spec: &RegionSpec, mu: Bidegree) -> HFResult {
    if !in_gamma(spec, 1, mu) {
        return HFResult::Known {
            value: BigUint::zero(),
            rule: Rule::ChiRule,
        };
    }
    if in_gamma(spec, 0, mu) || in_gamma(spec, 2, mu) {
        return HFResult::InstanceDependent;
    }
    let shape = spec.shape();
    let (n, m, r) = (shape.n(), shape.m(), shape.r() as i64);
    let dv = mu - v_point(spec, n as i64 + 1);
    let dw = mu - w_point(spec, m as i64 + 1);
    let value = binom(r, n + 1) * dim_s(shape, Bidegree::new(-dv.a, dv.b))
        + binom(r, m + 1) * dim_s(shape, Bidegree::new(dw.a, -dw.b));
    HFResult::Known {
        value,
        rule: Rule::DualRule,
    }
}

/// Certified part of the regularity region: the two quadrants on which the
/// Hilbert function already equals the degree.
pub fn guaranteed_regularity_staircase(spec: &RegionSpec) -> Staircase {
    Staircase::from_points(guaranteed_corners(spec))
}

/// Like [`hf_ci_points`], but tags cells in the guaranteed quadrants as `Part3Stable`.
pub fn hf_with_stability(spec: &RegionSpec, mu: Bidegree) -> HFResult {
    match hf_ci_points(spec, mu) {
        HFResult::Known { value, .. } if guaranteed_corners(spec).iter().any(|c| mu.dominates(c)) => {
            HFResult::Known {
                value,
                rule: Rule::Part3Stable,
            }
        }
        other => other,
    }
}
