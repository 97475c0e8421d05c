//! Graded pieces of the saturation `J = I : B^inf` on a finite window.
//!
//! For a reference bidegree `nu` the chain of quotient maps
//! `pi_mu : S_mu -> S_mu / J'_mu` with `J'_mu = I_nu : S_{nu - mu}` is built
//! downward from `pi_nu` (the normal form modulo `I_nu`): `f` lies in `J'_mu`
//! exactly when `x_i f` (or `y_j f`) lies in `J'` one step up. Hence
//! `pi_mu` is the row-reduced stack of the maps `u -> pi_{mu+e}(z u)` over the
//! variables `z` of that step.
//!
//! Once `nu` lies beyond the support of `H^0_B(S/I)` in both directions,
//! `J'_mu = J_mu` on the whole box `[lower, nu]`. The reference is moved up
//! until the chain no longer changes when `nu` is pushed further by one
//! generator degree along either axis; the padding bounds how far past the
//! window this search may go.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::ideal::Oracle;
use super::instance::Instance;
use crate::combinatorics::Bidegree;
use crate::error::{Error, Result};
use crate::hilbert::Window;
use crate::linalg::FpMatrix;
use crate::regions::{guaranteed_corners, RegionSpec, Staircase};

/// Padding ceiling for the doubling retry.
pub const MAX_PADDING: usize = 64;

/// Graded pieces of an ideal on a window, each an RREF basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreewiseIdeal {
    window: Window,
    pieces: Vec<FpMatrix>,
}

impl DegreewiseIdeal {
    pub fn window(&self) -> Window {
        self.window
    }

    pub fn piece(&self, mu: Bidegree) -> Option<&FpMatrix> {
        self.window.index_of(mu).map(|i| &self.pieces[i])
    }

    pub fn dim(&self, mu: Bidegree) -> Option<usize> {
        self.piece(mu).map(FpMatrix::rows)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Bidegree, &FpMatrix)> + '_ {
        self.window.points().zip(self.pieces.iter())
    }
}

/// Integer values on a window, stored in the window's row-major order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    window: Window,
    values: Vec<u64>,
}

impl Grid {
    pub fn new(window: Window, values: Vec<u64>) -> Result<Self> {
        if values.len() != window.len() {
            return Err(Error::LengthMismatch {
                expected: window.len(),
                got: values.len(),
            });
        }
        Ok(Grid { window, values })
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn get(&self, mu: Bidegree) -> Option<u64> {
        self.window.index_of(mu).map(|i| self.values[i])
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (Bidegree, u64)> + '_ {
        self.window.points().zip(self.values.iter().copied())
    }

    /// The sub-grid on `window`, which must lie inside this one.
    pub fn restrict(&self, window: Window) -> Result<Grid> {
        let values = window
            .points()
            .map(|mu| {
                self.get(mu).ok_or_else(|| {
                    Error::DimensionMismatch(format!("{mu} is outside the grid window"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Grid::new(window, values)
    }

    /// `a,b,value,status,rule` rows with status `oracle` and rule `-`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("a,b,value,status,rule\n");
        for (mu, v) in self.iter() {
            let _ = writeln!(out, "{},{},{},oracle,-", mu.a, mu.b, v);
        }
        out
    }

    /// Rows from the top `b` down, as the tables are usually printed.
    pub fn to_text(&self) -> String {
        let w = self.values.iter().map(|v| v.to_string().len()).max().unwrap_or(1);
        let mut out = String::new();
        for b in (self.window.lower.b..=self.window.upper.b).rev() {
            let row: Vec<String> = (self.window.lower.a..=self.window.upper.a)
                .map(|a| format!("{:>w$}", self.get(Bidegree::new(a, b)).unwrap_or(0)))
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Initial padding: `max(sigma.a, sigma.b) - min(upper.a, upper.b)`, at least 4.
pub fn default_padding(inst: &Instance, window: &Window) -> usize {
    let sh = inst.shape();
    let total = inst.forms().iter().fold(Bidegree::ZERO, |acc, f| acc + f.bidegree());
    let sigma = total - Bidegree::new(sh.n() as i64 + 1, sh.m() as i64 + 1);
    let p = sigma.a.max(sigma.b) - window.upper.a.min(window.upper.b);
    p.max(4) as usize
}

fn generator_degree(inst: &Instance) -> Bidegree {
    inst.forms()
        .iter()
        .fold(Bidegree::new(1, 1), |acc, f| acc.max(f.bidegree()))
}

/// First reference tried: past the strips carrying `B`-torsion for a complete
/// intersection, i.e. `a >= (sum of the n+1 largest d_i) - n` and likewise for `b`.
/// Only a starting point; the stability test decides.
fn initial_reference(inst: &Instance, upper: Bidegree) -> Bidegree {
    let sh = inst.shape();
    let top = |mut v: Vec<i64>, k: usize| {
        v.sort_unstable_by(|x, y| y.cmp(x));
        v.iter().take(k).sum::<i64>()
    };
    let da = top(inst.forms().iter().map(|f| f.bidegree().a).collect(), sh.n() as usize + 1) - sh.n() as i64;
    let db = top(inst.forms().iter().map(|f| f.bidegree().b).collect(), sh.m() as usize + 1) - sh.m() as i64;
    upper.max(generator_degree(inst)).max(Bidegree::new(da, db))
}

/// Normal-form map `S_nu -> S_nu / I_nu`, one column per monomial.
fn normal_form_map(oracle: &Oracle, nu: Bidegree) -> FpMatrix {
    let field = oracle.field();
    let dim = oracle.dim(nu);
    let (pivots, free, block) = oracle.ideal_generators(nu).rref_free_block();
    let mut pi = FpMatrix::zeros(field, free.len(), dim);
    for (k, &c) in free.iter().enumerate() {
        pi.set(k, c, 1);
    }
    for (r, &c) in pivots.iter().enumerate() {
        for k in 0..free.len() {
            pi.set(k, c, field.neg(block.get(r, k)));
        }
    }
    pi
}

/// One step down the chain: `pi_mu` from `pi_{mu+e}` where `e` is `(1,0)` if
/// `along_x`, else `(0,1)`.
fn step_down(oracle: &Oracle, mu: Bidegree, along_x: bool, upper: &FpMatrix) -> FpMatrix {
    let field = oracle.field();
    let space = oracle.space();
    let src = space.piece(mu).expect("chain stays in the nonnegative quadrant");
    let up = mu + if along_x { Bidegree::new(1, 0) } else { Bidegree::new(0, 1) };
    let dst = space.piece(up).expect("nonnegative");
    let h = upper.rows();
    let dim = src.len();
    if h == 0 {
        return FpMatrix::zeros(field, 0, dim);
    }
    let (block, up_block) = if along_x { (&src.x, &dst.x) } else { (&src.y, &dst.y) };
    let nvars = block.exps().first().map_or(0, Vec::len);
    // shift[v][k]: index of z_v * (k-th exponent vector) in the block one degree up
    let shift: Vec<Vec<usize>> = (0..nvars)
        .map(|v| {
            block
                .exps()
                .iter()
                .map(|e| {
                    let mut e = e.clone();
                    e[v] += 1;
                    up_block.index_of(&e)
                })
                .collect()
        })
        .collect();
    let ny = src.y.len();
    let up_ny = dst.y.len();
    let mut stacked = FpMatrix::zeros(field, nvars * h, dim);
    for v in 0..nvars {
        let target: Vec<usize> = (0..dim)
            .map(|j| {
                let (xi, yi) = (j / ny, j % ny);
                if along_x {
                    shift[v][xi] * up_ny + yi
                } else {
                    xi * up_ny + shift[v][yi]
                }
            })
            .collect();
        for q in 0..h {
            let from = upper.row(q);
            let to = stacked.row_mut(v * h + q);
            for (j, &t) in target.iter().enumerate() {
                to[j] = from[t];
            }
        }
    }
    stacked.rref_in_place();
    stacked
}

/// Quotient maps for every point of `[lower, nu]` (row-major), relative to `I_nu`.
/// `lower` must be nonnegative.
fn quotient_chain(oracle: &Oracle, lower: Bidegree, nu: Bidegree) -> Vec<FpMatrix> {
    let bx = Window::new(lower, nu).expect("reference dominates the box corner");
    let mut maps: Vec<Option<FpMatrix>> = vec![None; bx.len()];
    let top = bx.index_of(nu).expect("corner");
    maps[top] = Some(normal_form_map(oracle, nu));
    for b in (lower.b..=nu.b).rev() {
        for a in (lower.a..=nu.a).rev() {
            let mu = Bidegree::new(a, b);
            if mu == nu {
                continue;
            }
            let along_x = a < nu.a;
            let up = mu + if along_x { Bidegree::new(1, 0) } else { Bidegree::new(0, 1) };
            let upper = maps[bx.index_of(up).expect("in box")].as_ref().expect("computed above");
            let pi = step_down(oracle, mu, along_x, upper);
            maps[bx.index_of(mu).expect("in box")] = Some(pi);
        }
    }
    maps.into_iter().map(|m| m.expect("filled")).collect()
}

fn chain_dims(maps: &[FpMatrix], from: &Window, to: &Window) -> Vec<usize> {
    to.points()
        .map(|mu| maps[from.index_of(mu).expect("sub-box")].rows())
        .collect()
}

/// Quotient maps `S_mu -> (S/J)_mu` on `window` (clamped to the nonnegative quadrant),
/// searching references at most `padding` past the upper corner.
fn saturated_maps(oracle: &Oracle, window: &Window, padding: usize) -> Result<(Window, Vec<FpMatrix>)> {
    let lower = window.lower.max(Bidegree::ZERO);
    let upper = window.upper.max(lower);
    let step = generator_degree(oracle.instance());
    let mut nu = initial_reference(oracle.instance(), upper);
    loop {
        let over = (nu - upper).a.max((nu - upper).b);
        if over > padding as i64 {
            return Err(Error::PaddingExhausted { padding });
        }
        let bx = Window::new(lower, nu)?;
        let nu_x = nu + Bidegree::new(step.a, 0);
        let nu_y = nu + Bidegree::new(0, step.b);
        let (base, (gx, gy)) = rayon::join(
            || quotient_chain(oracle, lower, nu),
            || {
                rayon::join(
                    || quotient_chain(oracle, lower, nu_x),
                    || quotient_chain(oracle, lower, nu_y),
                )
            },
        );
        let base_dims = chain_dims(&base, &bx, &bx);
        let same_x = base_dims == chain_dims(&gx, &Window::new(lower, nu_x)?, &bx);
        let same_y = base_dims == chain_dims(&gy, &Window::new(lower, nu_y)?, &bx);
        if same_x && same_y {
            let inner = Window::new(lower, upper)?;
            let maps = inner
                .points()
                .map(|mu| base[bx.index_of(mu).expect("sub-box")].clone())
                .collect();
            return Ok((inner, maps));
        }
        if !same_x {
            nu.a += 1;
        }
        if !same_y {
            nu.b += 1;
        }
    }
}

/// `J_mu` for every `mu` in `window` (zero pieces at negative coordinates).
pub fn saturate_window(inst: &Instance, window: Window, padding: usize) -> Result<DegreewiseIdeal> {
    if padding == 0 {
        return Err(Error::PaddingExhausted { padding });
    }
    let oracle = Oracle::new(inst);
    let field = inst.field();
    let (inner, maps) = saturated_maps(&oracle, &window, padding)?;
    let pieces = window
        .points()
        .map(|mu| match inner.index_of(mu) {
            Some(i) => {
                let mut j = maps[i].nullspace_basis().transpose();
                j.rref_in_place();
                if j.cols() == 0 {
                    FpMatrix::zeros(field, 0, oracle.dim(mu))
                } else {
                    j
                }
            }
            None => FpMatrix::zeros(field, 0, oracle.dim(mu)),
        })
        .collect();
    Ok(DegreewiseIdeal { window, pieces })
}

fn hf_v_with_padding(oracle: &Oracle, window: &Window, padding: usize) -> Result<Grid> {
    let (inner, maps) = saturated_maps(oracle, window, padding)?;
    let values = window
        .points()
        .map(|mu| inner.index_of(mu).map_or(0, |i| maps[i].rows() as u64))
        .collect();
    Grid::new(*window, values)
}

/// `HF_{S/J}` on `window`, doubling the padding on exhaustion up to [`MAX_PADDING`].
pub fn hf_v_oracle(inst: &Instance, window: Window) -> Result<Grid> {
    let oracle = Oracle::new(inst);
    let mut padding = default_padding(inst, &window).min(MAX_PADDING);
    loop {
        match hf_v_with_padding(&oracle, &window, padding) {
            Err(Error::PaddingExhausted { .. }) if padding < MAX_PADDING => {
                padding = (2 * padding).min(MAX_PADDING);
            }
            other => return other,
        }
    }
}

/// Minimal window points `mu` with value `degree` at every window point `>= mu`.
/// The upper corner must dominate each of `required`.
pub fn stabilization_staircase(grid: &Grid, degree: u64, required: &[Bidegree]) -> Result<Staircase> {
    let w = grid.window();
    if let Some(&c) = required.iter().find(|c| !w.upper.dominates(c)) {
        return Err(Error::WindowTooSmall {
            upper: w.upper,
            required: c,
        });
    }
    let mut stable = vec![false; w.len()];
    for b in (w.lower.b..=w.upper.b).rev() {
        for a in (w.lower.a..=w.upper.a).rev() {
            let mu = Bidegree::new(a, b);
            let i = w.index_of(mu).expect("in window");
            let right = w.index_of(mu + Bidegree::new(1, 0)).is_none_or(|j| stable[j]);
            let above = w.index_of(mu + Bidegree::new(0, 1)).is_none_or(|j| stable[j]);
            stable[i] = grid.values[i] == degree && right && above;
        }
    }
    Ok(Staircase::from_points(
        w.points().zip(stable).filter(|(_, s)| *s).map(|(mu, _)| mu),
    ))
}

/// The oracle grid on `window` for an instance that must be a complete
/// intersection of points for `spec`: `n+m` forms of bidegree `spec.d()`
/// whose Hilbert function equals the degree at both guaranteed corners and
/// their upper neighbours.
pub fn validated_hf_v(inst: &Instance, spec: &RegionSpec, window: Window, degree: u64) -> Result<Grid> {
    if inst.shape() != spec.shape() {
        return Err(Error::ShapeMismatch(format!(
            "instance shape ({}, {}) differs from ({}, {})",
            inst.shape().n(),
            inst.shape().m(),
            spec.shape().n(),
            spec.shape().m()
        )));
    }
    if inst.forms().len() != spec.r() || inst.common_degree() != Some(spec.d()) {
        return Err(Error::ShapeMismatch(format!(
            "expected {} forms of bidegree {}",
            spec.r(),
            spec.d()
        )));
    }
    // the corners and their two upper neighbours: a positive-dimensional
    // scheme cannot be constant on all of them
    let probes: Vec<Bidegree> = guaranteed_corners(spec)
        .iter()
        .flat_map(|&c| [c, c + Bidegree::new(1, 0), c + Bidegree::new(0, 1)])
        .collect();
    let hull = probes.iter().fold(window, |w, &c| w.hull(&Window::new(c, c).expect("point")));
    let grid = hf_v_oracle(inst, hull)?;
    for c in probes {
        let got = grid.get(c).expect("probe in hull");
        if got != degree {
            return Err(Error::NotCompleteIntersection(format!(
                "HF_V{c} = {got}, expected {degree}"
            )));
        }
    }
    grid.restrict(window)
}
