//! Harnesses comparing the closed forms with the oracle, the projection
//! experiment and the two-prime consistency check.

use std::fmt::Write as _;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{Bidegree, Shape};
use crate::error::{Error, Result};
use crate::hilbert::{degree_of, hf_table, HFResult, Window};
use crate::linalg::PrimeField;
use crate::oracle::{
    hf_v_oracle, random_instance, stabilization_staircase, stream_instance, validated_hf_v, Grid, Instance,
};
use crate::regions::{guaranteed_corners, RegionSpec, Staircase};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub mu: Bidegree,
    pub formula: BigUint,
    pub oracle: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Phase {
    pub name: String,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub spec: RegionSpec,
    pub window: Window,
    /// `"paper"`, `"seed=<s>,prime=<p>"` or a caller-supplied label.
    pub instance: String,
    pub compared: usize,
    pub matched: usize,
    pub mismatches: Vec<Mismatch>,
    /// Oracle values at the cells the closed form leaves open.
    pub informational: Vec<(Bidegree, u64)>,
    pub oracle_grid: Grid,
    pub staircase: Staircase,
    pub phases: Vec<Phase>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "instance: {}", self.instance);
        let _ = writeln!(out, "window: {} .. {}", self.window.lower, self.window.upper);
        let _ = writeln!(out, "compared: {}  matched: {}", self.compared, self.matched);
        for m in &self.mismatches {
            let _ = writeln!(out, "mismatch at {}: formula {} oracle {}", m.mu, m.formula, m.oracle);
        }
        if !self.informational.is_empty() {
            let cells: Vec<String> = self.informational.iter().map(|(mu, v)| format!("{mu}={v}")).collect();
            let _ = writeln!(out, "instance-dependent: {}", cells.join(" "));
        }
        let corners: Vec<String> = self.staircase.corners().iter().map(|c| c.to_string()).collect();
        let _ = writeln!(out, "stabilization corners: {}", corners.join(" "));
        for p in &self.phases {
            let _ = writeln!(out, "{}: {:.3}s", p.name, p.seconds);
        }
        out
    }
}

fn timed<T>(phases: &mut Vec<Phase>, name: &str, f: impl FnOnce() -> Result<T>) -> Result<T> {
    let t = Instant::now();
    let out = f();
    phases.push(Phase {
        name: name.to_string(),
        seconds: t.elapsed().as_secs_f64(),
    });
    out
}

fn degree_u64(spec: &RegionSpec) -> Result<u64> {
    degree_of(spec)
        .to_u64()
        .ok_or_else(|| Error::DimensionMismatch("degree exceeds 64 bits".into()))
}

/// Compares every cell the closed form determines with the oracle, exactly.
/// The instance must be a complete intersection of points for `spec`.
pub fn verify_formula_vs_oracle(
    spec: &RegionSpec,
    window: Window,
    instance: &Instance,
    label: &str,
) -> Result<VerifyReport> {
    let mut phases = Vec::new();
    let degree = degree_u64(spec)?;
    let table = timed(&mut phases, "formula", || hf_table(spec, window))?;
    let grid = timed(&mut phases, "oracle", || validated_hf_v(instance, spec, window, degree))?;
    let mut compared = 0;
    let mut mismatches = Vec::new();
    let mut informational = Vec::new();
    for (mu, res, _) in table.iter() {
        let oracle = grid.get(mu).expect("same window");
        match res {
            HFResult::Known { value, .. } => {
                compared += 1;
                if *value != BigUint::from(oracle) {
                    mismatches.push(Mismatch {
                        mu,
                        formula: value.clone(),
                        oracle,
                    });
                }
            }
            HFResult::InstanceDependent => informational.push((mu, oracle)),
        }
    }
    let staircase = stabilization_staircase(&grid, degree, &[])?;
    Ok(VerifyReport {
        spec: *spec,
        window,
        instance: label.to_string(),
        compared,
        matched: compared - mismatches.len(),
        mismatches,
        informational,
        oracle_grid: grid,
        staircase,
        phases,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericReport {
    pub spec: RegionSpec,
    pub prime: u64,
    /// `None` for a supplied instance.
    pub seed: Option<u64>,
    pub degree: u64,
    pub bound: i64,
    /// `HF_V(a, 0)` for `0 <= a <= bound`.
    pub profile_a: Vec<u64>,
    /// `HF_V(0, b)` for `0 <= b <= bound`.
    pub profile_b: Vec<u64>,
    /// First index where the profile reaches the degree.
    pub stabilization_a: Option<usize>,
    pub stabilization_b: Option<usize>,
    /// Profile cells (over both axes, origin counted once) below the degree.
    pub cells_below_degree: usize,
    /// Both projections are injective on the points.
    pub generic: bool,
}

impl GenericReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let show = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        let idx = |i: Option<usize>| i.map_or("never".to_string(), |i| i.to_string());
        let mut out = String::new();
        let _ = writeln!(out, "degree: {}", self.degree);
        let _ = writeln!(out, "HF(a,0): {}", show(&self.profile_a));
        let _ = writeln!(out, "HF(0,b): {}", show(&self.profile_b));
        let _ = writeln!(out, "reaches degree at a={} b={}", idx(self.stabilization_a), idx(self.stabilization_b));
        let _ = writeln!(out, "axis cells below degree: {}", self.cells_below_degree);
        let _ = writeln!(out, "generic: {}", self.generic);
        out
    }
}

/// Axis profiles of a given complete intersection.
pub fn projection_profiles(
    spec: &RegionSpec,
    instance: &Instance,
    seed: Option<u64>,
    bound: i64,
) -> Result<GenericReport> {
    let corners = guaranteed_corners(spec);
    let need = corners.iter().map(|c| c.a.max(c.b)).max().unwrap_or(0);
    if bound < need {
        return Err(Error::WindowTooSmall {
            upper: Bidegree::new(bound, bound),
            required: Bidegree::new(need, need),
        });
    }
    let degree = degree_u64(spec)?;
    let hull = Window::new(corners[0].min(corners[1]), corners[0].max(corners[1]))?;
    validated_hf_v(instance, spec, hull, degree)?;
    let profile_a = hf_v_oracle(instance, Window::new(Bidegree::ZERO, Bidegree::new(bound, 0))?)?
        .values()
        .to_vec();
    let profile_b = hf_v_oracle(instance, Window::new(Bidegree::ZERO, Bidegree::new(0, bound))?)?
        .values()
        .to_vec();
    let first = |v: &[u64]| v.iter().position(|&x| x == degree);
    let below = profile_a.iter().filter(|&&x| x < degree).count()
        + profile_b.iter().skip(1).filter(|&&x| x < degree).count();
    let (stabilization_a, stabilization_b) = (first(&profile_a), first(&profile_b));
    Ok(GenericReport {
        spec: *spec,
        prime: instance.field().modulus(),
        seed,
        degree,
        bound,
        profile_a,
        profile_b,
        stabilization_a,
        stabilization_b,
        cells_below_degree: below,
        generic: stabilization_a.is_some() && stabilization_b.is_some(),
    })
}

/// Random instance, then its axis profiles up to `bound`.
pub fn generic_projection_experiment(
    shape: Shape,
    d: Bidegree,
    prime: u64,
    seed: u64,
    bound: i64,
) -> Result<GenericReport> {
    let spec = RegionSpec::new(shape, d)?;
    let inst = random_instance(shape, d, PrimeField::new(prime)?, seed)?;
    projection_profiles(&spec, &inst, Some(seed), bound)
}

/// Outcome of running the oracle on the same integer ideal modulo two primes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoublePrimeOutcome {
    pub agree: bool,
    /// Why a side produced no grid (a generator vanished, say).
    pub errors: Vec<String>,
}

/// Runs `build` for both primes and compares the oracle grids. A side that
/// fails counts as a disagreement, never as a crash.
pub fn double_prime_with<F>(window: Window, p1: u64, p2: u64, build: F) -> Result<DoublePrimeOutcome>
where
    F: Fn(PrimeField) -> Result<Instance>,
{
    if p1 == p2 {
        return Err(Error::SamePrime(p1));
    }
    let run = |p: u64| -> Result<Grid> {
        let inst = build(PrimeField::new(p)?)?;
        hf_v_oracle(&inst, window)
    };
    let (g1, g2) = (run(p1), run(p2));
    let errors = [&g1, &g2]
        .iter()
        .filter_map(|g| g.as_ref().err().map(|e| e.to_string()))
        .collect::<Vec<_>>();
    let agree = matches!((&g1, &g2), (Ok(a), Ok(b)) if a == b);
    Ok(DoublePrimeOutcome { agree, errors })
}

/// Same seeded integer coefficient stream reduced modulo `p1` and `p2`.
pub fn double_prime_check(spec: &RegionSpec, window: Window, seed: u64, p1: u64, p2: u64) -> Result<bool> {
    let (shape, d) = (spec.shape(), spec.d());
    Ok(double_prime_with(window, p1, p2, |f| stream_instance(shape, d, f, seed))?.agree)
}
