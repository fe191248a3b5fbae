//! One-degree-of-freedom dynamics on an anti-synchrony subspace `q = x v`,
//! `p = y v` spanned by a sign eigenvector `v`, and the tools built on it:
//! axis equilibria, pitchfork detection, transversal stability and the
//! double-cusp level sets.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::dynamics::{CoupledSystem, InteractionPotential, SystemState};
use crate::error::{Error, Result};
use crate::graph::{jacobi_eigen, partition_counts, SignVector};
use crate::integrator::OdeSystem;

pub const AXIS_GRID_STEP: f64 = PI / 200.0;
const BISECTION_TOL: f64 = 1e-12;
const ROOT_ZERO: f64 = 1e-14;
const UNSTABLE_RE: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct ReducedSystem {
    pub d_pm: usize,
    pub d_0: usize,
    pub potential: InteractionPotential,
    pub kappa: f64,
}

impl ReducedSystem {
    pub fn new(d_pm: usize, d_0: usize, potential: InteractionPotential, kappa: f64) -> Result<Self> {
        if d_pm == 0 && d_0 == 0 {
            return Err(Error::Domain("d_pm and d_0 cannot both vanish".into()));
        }
        if !kappa.is_finite() {
            return Err(Error::Domain(format!("coupling must be finite, got {kappa}")));
        }
        Ok(Self { d_pm, d_0, potential, kappa })
    }

    pub fn lambda(&self) -> usize {
        2 * self.d_pm + self.d_0
    }

    pub fn with_kappa(&self, kappa: f64) -> Self {
        Self { kappa, ..self.clone() }
    }

    /// `(x', y')` at `(x, y)`.
    pub fn field(&self, x: f64, y: f64) -> (f64, f64) {
        let g = &self.potential;
        let (a, b) = (self.kappa * self.d_pm as f64, self.kappa * self.d_0 as f64);
        let dx = y + a * g.eval(2.0 * x, 2.0 * y, 0, 1) + b * g.eval(x, y, 0, 1);
        let dy = -x.sin() - a * g.eval(2.0 * x, 2.0 * y, 1, 0) - b * g.eval(x, y, 1, 0);
        (dx, dy)
    }

    /// Reduced Hamiltonian `K`, with `x' = dK/dy` and `y' = -dK/dx`.
    pub fn hamiltonian(&self, x: f64, y: f64) -> f64 {
        let g = &self.potential;
        0.5 * y * y - x.cos()
            + self.kappa * 0.5 * self.d_pm as f64 * g.eval(2.0 * x, 2.0 * y, 0, 0)
            + self.kappa * self.d_0 as f64 * g.eval(x, y, 0, 0)
    }

    /// `(x^2, y^2)` coefficients of `K` at the origin:
    /// `1/2 + k l c10` and `1/2 + k l c01`.
    pub fn quadratic_coefficients(&self) -> (f64, f64) {
        let kl = self.kappa * self.lambda() as f64;
        (0.5 + kl * self.potential.c10(), 0.5 + kl * self.potential.c01())
    }

    fn jacobian(&self, x: f64, y: f64) -> [[f64; 2]; 2] {
        let g = &self.potential;
        let (a, b) = (self.kappa * self.d_pm as f64, self.kappa * self.d_0 as f64);
        let (x2, y2) = (2.0 * x, 2.0 * y);
        let fxx = 2.0 * a * g.eval(x2, y2, 1, 1) + b * g.eval(x, y, 1, 1);
        let fxy = 1.0 + 2.0 * a * g.eval(x2, y2, 0, 2) + b * g.eval(x, y, 0, 2);
        let fyx = -x.cos() - 2.0 * a * g.eval(x2, y2, 2, 0) - b * g.eval(x, y, 2, 0);
        [[fxx, fxy], [fyx, -fxx]]
    }

    /// Embeds `(x, y)` as `q = x v`, `p = y v`.
    pub fn embed(v: &SignVector, x: f64, y: f64, t: f64) -> SystemState {
        SystemState {
            q: v.entries.iter().map(|&e| e as f64 * x).collect(),
            p: v.entries.iter().map(|&e| e as f64 * y).collect(),
            t,
        }
    }
}

impl OdeSystem for ReducedSystem {
    fn dim(&self) -> usize {
        2
    }

    fn rhs(&self, y: &[f64], dy: &mut [f64]) {
        let (a, b) = self.field(y[0], y[1]);
        dy[0] = a;
        dy[1] = b;
    }
}

/// Reduced system of `sys` on the subspace spanned by `v`.
pub fn reduce(sys: &CoupledSystem, v: &SignVector) -> Result<ReducedSystem> {
    let v = SignVector::new(&sys.graph, v.entries.clone())?;
    let (d_pm, d_0) = partition_counts(&v, &sys.graph)?;
    ReducedSystem::new(d_pm, d_0, sys.potential.clone(), sys.kappa)
}

fn axis_roots(f: impl Fn(f64) -> f64) -> Vec<f64> {
    let n = (2.0 * PI / AXIS_GRID_STEP).round() as usize;
    // symmetric about 0 so the origin is an exact grid point
    let half = n / 2;
    let xs: Vec<f64> = (0..=n)
        .map(|k| match k {
            0 => -PI,
            k if k == n => PI,
            k => (k as f64 - half as f64) * AXIS_GRID_STEP,
        })
        .collect();
    let fs: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let mut roots: Vec<f64> = Vec::new();
    for k in 0..=n {
        if fs[k].abs() <= ROOT_ZERO {
            roots.push(xs[k]);
        }
    }
    let nudge = AXIS_GRID_STEP * 1e-6;
    for k in 0..n {
        let (mut a, mut b) = (xs[k], xs[k + 1]);
        let (mut fa, mut fb) = (fs[k], fs[k + 1]);
        // step off zeros at the ends so a root hiding next to one is still bracketed
        if fa.abs() <= ROOT_ZERO {
            a += nudge;
            fa = f(a);
        }
        if fb.abs() <= ROOT_ZERO {
            b -= nudge;
            fb = f(b);
        }
        if fa * fb >= 0.0 {
            continue;
        }
        while b - a > BISECTION_TOL {
            let m = 0.5 * (a + b);
            let fm = f(m);
            if fm == 0.0 {
                a = m;
                b = m;
                break;
            }
            if (fm < 0.0) == (fa < 0.0) {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        roots.push(0.5 * (a + b));
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-9);
    roots
}

/// Roots of `y'(x, 0)` in `[-pi, pi]`: grid bracketing with step `pi/200`,
/// then bisection.
pub fn equilibria_on_axis(rs: &ReducedSystem) -> Vec<f64> {
    axis_roots(|x| rs.field(x, 0.0).1)
}

/// Roots of `x'(0, y)` in `[-pi, pi]`.
pub fn equilibria_on_y_axis(rs: &ReducedSystem) -> Vec<f64> {
    axis_roots(|y| rs.field(0.0, y).0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquilibriumClass {
    Center,
    Saddle,
    Degenerate,
}

impl std::fmt::Display for EquilibriumClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EquilibriumClass::Center => "center",
            EquilibriumClass::Saddle => "saddle",
            EquilibriumClass::Degenerate => "degenerate",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Equilibrium {
    pub x: f64,
    pub y: f64,
    pub class: EquilibriumClass,
    pub residual: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

/// A change in the number of axis equilibria with `|coordinate| < pi/2`
/// between consecutive grid couplings.
#[derive(Clone, Debug, PartialEq)]
pub struct Bifurcation {
    pub axis: Axis,
    /// Midpoint of the bracketing grid interval.
    pub kappa: f64,
    /// Coupling where the linear coefficient at the origin vanishes,
    /// from the bracketing grid values.
    pub kappa_refined: f64,
    pub count_before: usize,
    pub count_after: usize,
    /// Third derivative of the axis function at the origin, by finite
    /// differences at `kappa_refined`, and its closed form.
    pub third_derivative: f64,
    pub third_derivative_closed: f64,
    /// Mixed derivative with respect to coupling and coordinate.
    pub mixed_derivative: f64,
    pub mixed_derivative_closed: f64,
}

impl Bifurcation {
    pub fn is_pitchfork(&self) -> bool {
        matches!((self.count_before, self.count_after), (1, 3) | (3, 1))
    }
}

#[derive(Clone, Debug)]
pub struct BranchDiagram {
    pub kappas: Vec<f64>,
    pub equilibria: Vec<Vec<Equilibrium>>,
    pub bifurcations: Vec<Bifurcation>,
    pub warnings: Vec<String>,
}

impl BranchDiagram {
    pub fn pitchforks(&self, axis: Axis) -> impl Iterator<Item = &Bifurcation> {
        self.bifurcations.iter().filter(move |b| b.axis == axis && b.is_pitchfork())
    }
}

fn classify(rs: &ReducedSystem, x: f64, y: f64) -> Equilibrium {
    let j = rs.jacobian(x, y);
    let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    let scale = j.iter().flatten().map(|v| v * v).sum::<f64>().max(1e-300);
    let class = if det.abs() <= 1e-12 * scale {
        EquilibriumClass::Degenerate
    } else if det > 0.0 {
        EquilibriumClass::Center
    } else {
        EquilibriumClass::Saddle
    };
    let (fx, fy) = rs.field(x, y);
    Equilibrium { x, y, class, residual: fx.abs().max(fy.abs()) }
}

/// Axis function along `axis`, as a function of coordinate and coupling.
fn axis_fn(rs: &ReducedSystem, axis: Axis) -> impl Fn(f64, f64) -> f64 + '_ {
    move |s, kappa| {
        let r = rs.with_kappa(kappa);
        match axis {
            Axis::X => r.field(s, 0.0).1,
            Axis::Y => r.field(0.0, s).0,
        }
    }
}

fn nondegeneracy(rs: &ReducedSystem, axis: Axis, lo: f64, hi: f64) -> (f64, f64, f64) {
    let g = axis_fn(rs, axis);
    let h1 = 1e-3;
    let slope = |k: f64| (8.0 * (g(h1, k) - g(-h1, k)) - (g(2.0 * h1, k) - g(-2.0 * h1, k))) / (12.0 * h1);
    // the field is affine in the coupling, so the secant root is exact
    let (sl, sh) = (slope(lo), slope(hi));
    let kc = if sh != sl { lo - sl * (hi - lo) / (sh - sl) } else { 0.5 * (lo + hi) };
    let h = 1e-2;
    let third = (g(2.0 * h, kc) - 2.0 * g(h, kc) + 2.0 * g(-h, kc) - g(-2.0 * h, kc)) / (2.0 * h.powi(3));
    let (hx, hk) = (1e-4, 1e-4);
    let mixed = (g(hx, kc + hk) - g(-hx, kc + hk) - g(hx, kc - hk) + g(-hx, kc - hk)) / (4.0 * hx * hk);
    (kc, third, mixed)
}

/// Closed-form non-degeneracy values at the predicted critical coupling.
/// On the x-axis: `1 + 12 c20 (8 d_pm + d_0) / (l c10)` and `-2 l c10`.
/// On the y-axis: `-12 c02 (8 d_pm + d_0) / (l c01)` and `2 l c01`.
pub fn closed_form_nondegeneracy(rs: &ReducedSystem, axis: Axis) -> Option<(f64, f64)> {
    let l = rs.lambda() as f64;
    let w = (8 * rs.d_pm + rs.d_0) as f64;
    let g = &rs.potential;
    match axis {
        Axis::X if g.c10() != 0.0 => Some((1.0 + 12.0 * g.coefficient(2, 0) * w / (l * g.c10()), -2.0 * l * g.c10())),
        Axis::Y if g.c01() != 0.0 => Some((-12.0 * g.coefficient(0, 2) * w / (l * g.c01()), 2.0 * l * g.c01())),
        _ => None,
    }
}

/// Predicted critical coupling `-1/(2 l c)` on an axis, when `c < 0`.
pub fn predicted_critical(rs: &ReducedSystem, axis: Axis) -> Option<f64> {
    let c = match axis {
        Axis::X => rs.potential.c10(),
        Axis::Y => rs.potential.c01(),
    };
    (c < 0.0).then(|| -1.0 / (2.0 * rs.lambda() as f64 * c))
}

/// Sweeps the coupling grid, records all axis equilibria and detects
/// changes in the number of equilibria near the origin.
pub fn detect_pitchfork(rs: &ReducedSystem, kappas: &[f64]) -> Result<BranchDiagram> {
    if kappas.len() < 2 || kappas.iter().any(|k| !k.is_finite()) || kappas.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Config("coupling grid must hold at least two increasing finite values".into()));
    }
    let rows: Vec<(Vec<Equilibrium>, usize, usize)> = kappas
        .par_iter()
        .map(|&k| {
            let r = rs.with_kappa(k);
            let xs = equilibria_on_axis(&r);
            let ys = equilibria_on_y_axis(&r);
            let near = |v: &[f64]| v.iter().filter(|s| s.abs() < PI / 2.0).count();
            let (nx, ny) = (near(&xs), near(&ys));
            let mut eq: Vec<Equilibrium> = xs.iter().map(|&x| classify(&r, x, 0.0)).collect();
            eq.extend(ys.iter().filter(|&&y| y != 0.0).map(|&y| classify(&r, 0.0, y)));
            (eq, nx, ny)
        })
        .collect();

    let mut bifurcations = Vec::new();
    for axis in [Axis::X, Axis::Y] {
        let count = |row: &(Vec<Equilibrium>, usize, usize)| if axis == Axis::X { row.1 } else { row.2 };
        for k in 1..kappas.len() {
            let (before, after) = (count(&rows[k - 1]), count(&rows[k]));
            if before == after {
                continue;
            }
            let (kc, third, mixed) = nondegeneracy(rs, axis, kappas[k - 1], kappas[k]);
            let (third_closed, mixed_closed) =
                closed_form_nondegeneracy(rs, axis).unwrap_or((f64::NAN, f64::NAN));
            bifurcations.push(Bifurcation {
                axis,
                kappa: 0.5 * (kappas[k - 1] + kappas[k]),
                kappa_refined: kc,
                count_before: before,
                count_after: after,
                third_derivative: third,
                third_derivative_closed: third_closed,
                mixed_derivative: mixed,
                mixed_derivative_closed: mixed_closed,
            });
        }
    }

    let mut warnings = Vec::new();
    let (lo, hi) = (kappas[0], kappas[kappas.len() - 1]);
    for axis in [Axis::X, Axis::Y] {
        if let Some(kc) = predicted_critical(rs, axis) {
            let name = if axis == Axis::X { "x" } else { "y" };
            if kc < lo || kc > hi {
                warnings.push(format!(
                    "predicted critical coupling {kc:.6} on the {name}-axis lies outside the grid [{lo}, {hi}]; extend or refine the grid"
                ));
            } else if !bifurcations.iter().any(|b| b.axis == axis && b.is_pitchfork()) {
                warnings.push(format!(
                    "no pitchfork detected on the {name}-axis near the predicted {kc:.6}; refine the grid"
                ));
            }
        }
    }
    let worst = rows.iter().flat_map(|r| &r.0).map(|e| e.residual).fold(0.0, f64::max);
    if worst > 1e-10 {
        warnings.push(format!("largest equilibrium residual {worst:e} exceeds 1e-10"));
    }
    Ok(BranchDiagram { kappas: kappas.to_vec(), equilibria: rows.into_iter().map(|r| r.0).collect(), bifurcations, warnings })
}

#[derive(Clone, Debug, PartialEq)]
pub struct StabilityCell {
    pub x: f64,
    pub kappa: f64,
    pub stable: bool,
    pub eigenvalues: Vec<nalgebra::Complex<f64>>,
}

/// Orthonormal basis of the complement of `v` in `R^N`, as columns.
fn complement_basis(v: &SignVector) -> Result<DMatrix<f64>> {
    let n = v.len();
    let u = v.as_f64().normalize();
    let proj = DMatrix::identity(n, n) - &u * u.transpose();
    let (vals, vecs) = jacobi_eigen(proj)?;
    let cols: Vec<usize> = (0..n).filter(|&k| vals[k] > 0.5).collect();
    Ok(DMatrix::from_fn(n, cols.len(), |r, c| vecs[(r, cols[c])]))
}

/// Linear stability transverse to the subspace of `v` at embedded points
/// `(x v, 0)`, for every `(x, kappa)` pair of the grids (x varies fastest
/// within each coupling).
pub fn transversal_stability_map(
    sys: &CoupledSystem,
    v: &SignVector,
    xs: &[f64],
    kappas: &[f64],
) -> Result<Vec<StabilityCell>> {
    let v = SignVector::new(&sys.graph, v.entries.clone())?;
    let c = complement_basis(&v)?;
    let (n, m) = (c.nrows(), c.ncols());
    let mut b = DMatrix::zeros(2 * n, 2 * m);
    b.view_mut((0, 0), (n, m)).copy_from(&c);
    b.view_mut((n, m), (n, m)).copy_from(&c);
    let cells: Vec<(f64, f64)> = kappas.iter().flat_map(|&k| xs.iter().map(move |&x| (x, k))).collect();
    cells
        .par_iter()
        .map(|&(x, kappa)| {
            let s = sys.with_kappa(kappa)?;
            let j = s.jacobian(&ReducedSystem::embed(&v, x, 0.0, 0.0))?;
            let t = b.transpose() * j * &b;
            let eigenvalues: Vec<_> = t.complex_eigenvalues().iter().copied().collect();
            let stable = eigenvalues.iter().all(|z| z.re.abs() <= UNSTABLE_RE);
            Ok(StabilityCell { x, kappa, stable, eigenvalues })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CriticalKind {
    Minimum,
    Maximum,
    Saddle,
    Degenerate,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CriticalPoint {
    pub x: f64,
    pub y: f64,
    pub value: f64,
    pub kind: CriticalKind,
}

/// Double-cusp unfolding `F = x^4 + y^4 + a x^2 y^2 + alpha x^2 + beta y^2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DoubleCusp {
    pub a: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl DoubleCusp {
    pub fn value(&self, x: f64, y: f64) -> f64 {
        let (x2, y2) = (x * x, y * y);
        x2 * x2 + y2 * y2 + self.a * x2 * y2 + self.alpha * x2 + self.beta * y2
    }

    pub fn gradient(&self, x: f64, y: f64) -> [f64; 2] {
        [
            4.0 * x.powi(3) + 2.0 * self.a * x * y * y + 2.0 * self.alpha * x,
            4.0 * y.powi(3) + 2.0 * self.a * x * x * y + 2.0 * self.beta * y,
        ]
    }

    pub fn hessian(&self, x: f64, y: f64) -> [[f64; 2]; 2] {
        let xy = 4.0 * self.a * x * y;
        [
            [12.0 * x * x + 2.0 * self.a * y * y + 2.0 * self.alpha, xy],
            [xy, 12.0 * y * y + 2.0 * self.a * x * x + 2.0 * self.beta],
        ]
    }

    fn newton(&self, mut x: f64, mut y: f64) -> Option<(f64, f64)> {
        for _ in 0..500 {
            let g = self.gradient(x, y);
            if g == [0.0, 0.0] {
                return Some((x, y));
            }
            let h = self.hessian(x, y);
            let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
            if det == 0.0 || !det.is_finite() {
                return None;
            }
            let dx = (h[1][1] * g[0] - h[0][1] * g[1]) / det;
            let dy = (h[0][0] * g[1] - h[1][0] * g[0]) / det;
            x -= dx;
            y -= dy;
            if !(x.is_finite() && y.is_finite()) || x.abs() > 1e6 || y.abs() > 1e6 {
                return None;
            }
            // step-based stop: Newton is only linear at degenerate points
            if dx.abs().max(dy.abs()) <= 1e-15 * x.abs().max(y.abs()).max(1.0) {
                return Some((x, y));
            }
        }
        let g = self.gradient(x, y);
        (g[0].abs().max(g[1].abs()) <= 1e-10).then_some((x, y))
    }

    /// Critical points from multi-start Newton over `[-r, r]^2`, classified
    /// by the Hessian.
    pub fn critical_points(&self, r: f64) -> Vec<CriticalPoint> {
        let starts = 24;
        let mut found: Vec<(f64, f64)> = Vec::new();
        for i in 0..=starts {
            for j in 0..=starts {
                // offset so no start sits exactly on a symmetry axis
                let sx = -r + 2.0 * r * (i as f64 + 0.37) / (starts as f64 + 0.74);
                let sy = -r + 2.0 * r * (j as f64 + 0.37) / (starts as f64 + 0.74);
                if let Some((x, y)) = self.newton(sx, sy) {
                    if x.abs() <= r && y.abs() <= r && !found.iter().any(|p| (p.0 - x).hypot(p.1 - y) <= 1e-6) {
                        found.push((x, y));
                    }
                }
            }
        }
        found.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        found
            .into_iter()
            .map(|(x, y)| {
                let h = self.hessian(x, y);
                let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
                let kind = if det.abs() <= 1e-9 {
                    CriticalKind::Degenerate
                } else if det < 0.0 {
                    CriticalKind::Saddle
                } else if h[0][0] > 0.0 {
                    CriticalKind::Minimum
                } else {
                    CriticalKind::Maximum
                };
                CriticalPoint { x, y, value: self.value(x, y), kind }
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct LevelSet {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    /// `values[j * xs.len() + i] = F(xs[i], ys[j])`.
    pub values: Vec<f64>,
    pub level: f64,
    /// Sign of `F - level` per grid point.
    pub signs: Vec<i8>,
    pub critical_points: Vec<CriticalPoint>,
    pub warning: Option<String>,
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect()
}

/// Samples `F` on an `n x n` grid over `[-r, r]^2` and locates its
/// critical points.
pub fn double_cusp_levelset(cusp: DoubleCusp, r: f64, n: usize, level: f64) -> Result<LevelSet> {
    if !(r.is_finite() && r > 0.0) || n < 2 {
        return Err(Error::Config("level-set grid needs r > 0 and at least 2 points per side".into()));
    }
    let xs = linspace(-r, r, n);
    let ys = xs.clone();
    let values: Vec<f64> = ys.iter().flat_map(|&y| xs.iter().map(move |&x| cusp.value(x, y))).collect();
    let signs = values.iter().map(|&f| (f - level).signum() as i8 * ((f - level) != 0.0) as i8).collect();
    let warning = ((cusp.a * cusp.a - 4.0).abs() <= 1e-12)
        .then(|| format!("a = {} gives a^2 = 4: degenerate double cusp", cusp.a));
    Ok(LevelSet { xs, ys, values, level, signs, critical_points: cusp.critical_points(r), warning })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::integrator::{integrate, IntegratorConfig, Stepper};

    fn sys(g: Graph, kappa: f64) -> CoupledSystem {
        CoupledSystem::new(g, InteractionPotential::double_well(), kappa).unwrap()
    }

    fn sv(g: &Graph, e: &[i8]) -> SignVector {
        SignVector::new(g, e.to_vec()).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let k2 = Graph::complete(2).unwrap();
        let r = reduce(&sys(k2.clone(), 0.2), &sv(&k2, &[1, -1])).unwrap();
        assert_eq!((r.d_pm, r.d_0, r.lambda()), (1, 0, 2));
        let p3 = Graph::path(3).unwrap();
        let r = reduce(&sys(p3.clone(), 0.2), &sv(&p3, &[-1, 0, 1])).unwrap();
        assert_eq!((r.d_pm, r.d_0, r.lambda()), (0, 1, 1));
        let k3 = Graph::complete(3).unwrap();
        let r = reduce(&sys(k3.clone(), 0.2), &sv(&k3, &[-1, 0, 1])).unwrap();
        assert_eq!((r.d_pm, r.d_0, r.lambda()), (1, 1, 3));
        assert!(ReducedSystem::new(0, 0, InteractionPotential::double_well(), 0.1).is_err());
    }

    #[test]
    fn hamiltonian_generates_field() {
        let pot = InteractionPotential::new([((1, 0), -1.0), ((2, 0), 1.0), ((0, 1), -0.3), ((0, 2), 0.5), ((1, 1), 0.2)]);
        let rs = ReducedSystem::new(1, 2, pot, 0.35).unwrap();
        let h = 1e-6;
        for &(x, y) in &[(0.3, -0.2), (1.1, 0.7), (-2.0, 0.4)] {
            let (fx, fy) = rs.field(x, y);
            let ky = (rs.hamiltonian(x, y + h) - rs.hamiltonian(x, y - h)) / (2.0 * h);
            let kx = (rs.hamiltonian(x + h, y) - rs.hamiltonian(x - h, y)) / (2.0 * h);
            assert!((fx - ky).abs() < 1e-7 && (fy + kx).abs() < 1e-7);
        }
        let k = ReducedSystem::new(1, 0, InteractionPotential::double_well(), 0.0).unwrap();
        assert!(k.hamiltonian(PI / 2.0, 0.0).abs() < 1e-15);
    }

    #[test]
    fn quadratic_coefficients_match_second_derivatives() {
        let pot = InteractionPotential::new([((1, 0), -1.0), ((2, 0), 1.0), ((0, 1), -0.3), ((0, 2), 0.5)]);
        let rs = ReducedSystem::new(1, 1, pot, 0.4).unwrap();
        // five-point stencil, halved to give the Taylor coefficient
        let h = 1e-2;
        let second = |f: &dyn Fn(f64) -> f64| {
            (-f(2.0 * h) + 16.0 * f(h) - 30.0 * f(0.0) + 16.0 * f(-h) - f(-2.0 * h)) / (24.0 * h * h)
        };
        let cx = second(&|s| rs.hamiltonian(s, 0.0));
        let cy = second(&|s| rs.hamiltonian(0.0, s));
        let (ex, ey) = rs.quadratic_coefficients();
        assert!((cx - ex).abs() <= 1e-8 && (cy - ey).abs() <= 1e-8, "{cx} {ex} {cy} {ey}");
        let crit = rs.with_kappa(1.0 / (2.0 * 3.0));
        assert!(crit.quadratic_coefficients().0.abs() <= 1e-10);
    }

    #[test]
    fn axis_equilibria_examples() {
        let k2 = ReducedSystem::new(1, 0, InteractionPotential::double_well(), 0.2).unwrap();
        let near: Vec<f64> = equilibria_on_axis(&k2).into_iter().filter(|x| x.abs() < 1.0).collect();
        assert_eq!(near, vec![0.0]);

        let r = k2.with_kappa(0.3);
        let roots = equilibria_on_axis(&r);
        let pos: Vec<f64> = roots.iter().copied().filter(|&x| x > 0.0 && x < 1.0).collect();
        assert_eq!(pos.len(), 1);
        let leading = ((4.0 * 0.3 - 1.0) / (32.0 * 0.3 - 1.0 / 6.0f64)).sqrt();
        assert!((leading - 0.1456).abs() < 1e-4);
        assert!((pos[0] - leading).abs() < 1e-3, "{} vs {leading}", pos[0]);
        assert!(roots.iter().any(|&x| (x + pos[0]).abs() < 1e-12));
        assert!(roots.contains(&0.0));

        let free = k2.with_kappa(0.0);
        assert_eq!(equilibria_on_axis(&free), vec![-PI, 0.0, PI]);
    }

    #[test]
    fn roots_next_to_the_origin_are_found() {
        let r = ReducedSystem::new(1, 0, InteractionPotential::double_well(), 0.2501).unwrap();
        let near: Vec<f64> = equilibria_on_axis(&r).into_iter().filter(|x| x.abs() < 0.1).collect();
        assert_eq!(near.len(), 3, "{near:?}");
        assert!(near[2] < AXIS_GRID_STEP);
    }

    fn grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
        let n = ((hi - lo) / step).round() as usize;
        (0..=n).map(|k| lo + k as f64 * step).collect()
    }

    #[test]
    fn pitchfork_k2() {
        let rs = ReducedSystem::new(1, 0, InteractionPotential::double_well(), 0.0).unwrap();
        let d = detect_pitchfork(&rs, &grid(0.2, 0.3, 1e-3)).unwrap();
        assert!(d.warnings.is_empty(), "{:?}", d.warnings);
        let pf: Vec<_> = d.pitchforks(Axis::X).collect();
        assert_eq!(pf.len(), 1);
        assert!((pf[0].kappa - 0.25).abs() <= 1e-3);
        assert!((pf[0].kappa_refined - 0.25).abs() <= 1e-10, "{:?}", pf[0]);
        assert!((pf[0].third_derivative_closed + 47.0).abs() < 1e-12);
        assert!((pf[0].third_derivative / -47.0 - 1.0).abs() <= 1e-4, "{}", pf[0].third_derivative);
        assert!((pf[0].mixed_derivative_closed - 4.0).abs() < 1e-12);
        assert!((pf[0].mixed_derivative / 4.0 - 1.0).abs() <= 1e-4, "{}", pf[0].mixed_derivative);
        assert_eq!(d.pitchforks(Axis::Y).count(), 0);
        for row in &d.equilibria {
            for e in row {
                assert!(e.residual <= 1e-10);
            }
        }
        // past the bifurcation the origin is a saddle flanked by centres
        let last = d.equilibria.last().unwrap();
        let origin = last.iter().find(|e| e.x == 0.0 && e.y == 0.0).unwrap();
        assert_eq!(origin.class, EquilibriumClass::Saddle);
        assert!(last.iter().filter(|e| e.x.abs() > 0.0 && e.x.abs() < 0.5).all(|e| e.class == EquilibriumClass::Center));
    }

    #[test]
    fn pitchfork_p3_and_k3() {
        let p3 = ReducedSystem::new(0, 1, InteractionPotential::double_well(), 0.0).unwrap();
        let d = detect_pitchfork(&p3, &grid(0.4, 0.6, 1e-3)).unwrap();
        let pf: Vec<_> = d.pitchforks(Axis::X).collect();
        assert_eq!(pf.len(), 1);
        assert!((pf[0].kappa - 0.5).abs() <= 1e-3);
        let k3 = ReducedSystem::new(1, 1, InteractionPotential::double_well(), 0.0).unwrap();
        let d = detect_pitchfork(&k3, &grid(0.1, 0.25, 1e-3)).unwrap();
        let pf: Vec<_> = d.pitchforks(Axis::X).collect();
        assert!((pf[0].kappa - 1.0 / 6.0).abs() <= 1e-3);
        assert!((pf[0].third_derivative / pf[0].third_derivative_closed - 1.0).abs() <= 1e-4, "{:?}", pf[0]);
    }

    #[test]
    fn y_axis_pitchfork_for_momentum_coupling() {
        let pot = InteractionPotential::new([((0, 1), -1.0), ((0, 2), 1.0)]);
        let rs = ReducedSystem::new(1, 0, pot, 0.0).unwrap();
        let d = detect_pitchfork(&rs, &grid(0.2, 0.3, 1e-3)).unwrap();
        let pf: Vec<_> = d.pitchforks(Axis::Y).collect();
        assert_eq!(pf.len(), 1);
        assert!((pf[0].kappa - 0.25).abs() <= 1e-3);
        assert!((pf[0].third_derivative / pf[0].third_derivative_closed - 1.0).abs() <= 1e-4, "{:?}", pf[0]);
        assert!((pf[0].mixed_derivative / pf[0].mixed_derivative_closed - 1.0).abs() <= 1e-4);
    }

    #[test]
    fn harmonic_never_bifurcates() {
        let rs = ReducedSystem::new(1, 0, InteractionPotential::harmonic(), 0.0).unwrap();
        let d = detect_pitchfork(&rs, &grid(0.01, 3.0, 0.01)).unwrap();
        assert!(d.bifurcations.is_empty());
        assert!(d.warnings.is_empty());
    }

    #[test]
    fn coarse_grid_warns() {
        let rs = ReducedSystem::new(1, 0, InteractionPotential::double_well(), 0.0).unwrap();
        let d = detect_pitchfork(&rs, &[0.3, 0.4, 0.5]).unwrap();
        assert_eq!(d.warnings.len(), 1);
        assert!(detect_pitchfork(&rs, &[0.3]).is_err());
    }

    #[test]
    fn transversal_examples() {
        let k2 = Graph::complete(2).unwrap();
        let v = sv(&k2, &[-1, 1]);
        let cells = transversal_stability_map(&sys(k2.clone(), 0.2), &v, &[0.0, 1.0, 2.0], &[0.1, 0.7]).unwrap();
        for c in &cells {
            let expected = c.x.cos();
            for z in &c.eigenvalues {
                // +-sqrt(-cos x)
                assert!((z.re * z.re - z.im * z.im + expected).abs() < 1e-12);
            }
            assert_eq!(c.stable, c.x < PI / 2.0);
        }
        let p3 = Graph::path(3).unwrap();
        let v = sv(&p3, &[-1, 0, 1]);
        let cells = transversal_stability_map(&sys(p3, 0.1), &v, &[0.01], &[0.1, 0.16, 0.17, 0.3]).unwrap();
        let flags: Vec<bool> = cells.iter().map(|c| c.stable).collect();
        assert_eq!(flags, vec![true, true, false, false]);
    }

    #[test]
    fn double_cusp_examples() {
        let pts = DoubleCusp { a: 1.0, alpha: 0.0, beta: 0.0 }.critical_points(2.0);
        assert_eq!(pts.len(), 1);
        assert!(pts[0].x.abs() < 1e-4 && pts[0].y.abs() < 1e-4 && pts[0].value.abs() < 1e-12);

        let pts = DoubleCusp { a: 1.0, alpha: -1.0, beta: 1.0 }.critical_points(2.0);
        assert_eq!(pts.len(), 3);
        let minima: Vec<_> = pts.iter().filter(|p| p.kind == CriticalKind::Minimum).collect();
        assert_eq!(minima.len(), 2);
        for m in minima {
            assert!((m.x.abs() - 0.5f64.sqrt()).abs() < 1e-12 && m.y.abs() < 1e-12, "{m:?}");
            assert!((m.value + 0.25).abs() < 1e-12);
        }
        assert!(pts.iter().any(|p| p.kind == CriticalKind::Saddle && p.x == 0.0 && p.y == 0.0));

        let ls = double_cusp_levelset(DoubleCusp { a: 1.0, alpha: -1.0, beta: -1.0 }, 2.0, 41, -0.25).unwrap();
        let pts = &ls.critical_points;
        assert_eq!(pts.len(), 9);
        let count = |k| pts.iter().filter(|p| p.kind == k).count();
        assert_eq!((count(CriticalKind::Maximum), count(CriticalKind::Saddle), count(CriticalKind::Minimum)), (1, 4, 4));
        for p in pts.iter().filter(|p| p.kind == CriticalKind::Saddle) {
            assert!((p.value + 0.25).abs() < 1e-12);
        }
        for p in pts.iter().filter(|p| p.kind == CriticalKind::Minimum) {
            assert!((p.value + 1.0 / 3.0).abs() < 1e-12);
        }
        assert_eq!(ls.values.len(), 41 * 41);
        assert!(ls.warning.is_none());
        assert!(double_cusp_levelset(DoubleCusp { a: 2.0, alpha: 0.0, beta: 0.0 }, 1.0, 5, 0.0).unwrap().warning.is_some());
    }

    #[test]
    fn reduced_energy_is_conserved() {
        let rs = ReducedSystem::new(1, 1, InteractionPotential::double_well(), 0.3).unwrap();
        let mut stepper = Stepper::new(&rs, IntegratorConfig::default()).unwrap();
        let mut y = vec![0.4, 0.1];
        let mut t = 0.0;
        let k0 = rs.hamiltonian(y[0], y[1]);
        for k in 1..=100 {
            stepper.advance(&mut y, &mut t, k as f64).unwrap();
            let k1 = rs.hamiltonian(y[0], y[1]);
            assert!((k1 - k0).abs() <= 1e-8 * (1.0 + k0.abs()));
        }
    }

    #[test]
    fn embedding_matches_full_system() {
        let cases = [
            (Graph::complete(2).unwrap(), vec![-1i8, 1], 0.2),
            (Graph::path(3).unwrap(), vec![-1, 0, 1], 0.3),
            (Graph::complete(3).unwrap(), vec![-1, 0, 1], 0.25),
        ];
        for (g, e, kappa) in cases {
            let full = sys(g.clone(), kappa);
            let v = sv(&g, &e);
            let rs = reduce(&full, &v).unwrap();
            let cfg = IntegratorConfig::default();
            let traj = integrate(&full, &ReducedSystem::embed(&v, 0.3, 0.05, 0.0), 50.0, &cfg).unwrap();
            let mut stepper = Stepper::new(&rs, cfg).unwrap();
            let mut y = vec![0.3, 0.05];
            let mut t = 0.0;
            let mut worst: f64 = 0.0;
            for (k, &ts) in traj.times.iter().enumerate() {
                stepper.advance(&mut y, &mut t, ts).unwrap();
                let emb = ReducedSystem::embed(&v, y[0], y[1], ts);
                for (a, b) in emb.flat().iter().zip(traj.states[k].flat()) {
                    worst = worst.max((a - b).abs());
                }
            }
            assert!(worst <= 1e-6, "{g}: {worst}");
        }
    }
}
