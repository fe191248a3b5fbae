//! Lyapunov spectra, spectral formulas at synchrony, critical couplings,
//! centre-of-mass diagnostics and the two-node relative coordinates.

use std::f64::consts::PI;

use nalgebra::{Complex, DMatrix};
use rustfft::FftPlanner;

use crate::dynamics::{CoupledSystem, SystemState};
use crate::error::{Error, Result};
use crate::graph::{edge_connectivity, spectrum};
use crate::integrator::{IntegratorConfig, Stepper, TangentSystem, Trajectory};

const FRAME_NORM_FLOOR: f64 = 1e-300;
const ZERO_EIGENVALUE_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, Default)]
struct Kahan {
    sum: f64,
    c: f64,
}

impl Kahan {
    fn add(&mut self, x: f64) {
        let y = x - self.c;
        let t = self.sum + y;
        self.c = (t - self.sum) - y;
        self.sum = t;
    }
}

#[derive(Clone, Debug)]
pub struct LyapunovResult {
    /// Sorted descending.
    pub exponents: Vec<f64>,
    /// `(t, running estimates sorted descending)` at every reorthonormalisation.
    pub history: Vec<(f64, Vec<f64>)>,
    pub t_total: f64,
    pub reorth_period: f64,
    pub energy_drift: f64,
    /// Set when the largest exponent still moves by more than 20% over the
    /// last decade of the run.
    pub warning: Option<String>,
}

impl LyapunovResult {
    pub fn max_exponent(&self) -> f64 {
        self.exponents[0]
    }

    pub fn sum(&self) -> f64 {
        self.exponents.iter().sum()
    }

    /// Largest `|l_k + l_{2N+1-k}|`.
    pub fn pairing_defect(&self) -> f64 {
        let n = self.exponents.len();
        (0..n / 2).map(|k| (self.exponents[k] + self.exponents[n - 1 - k]).abs()).fold(0.0, f64::max)
    }
}

fn sorted_desc(v: &[f64]) -> Vec<f64> {
    let mut v = v.to_vec();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// Benettin estimate of the full Lyapunov spectrum: an orthonormal tangent
/// frame is evolved with the flow and re-orthonormalised by modified
/// Gram-Schmidt every `reorth_period`.
pub fn lyapunov_spectrum(
    sys: &CoupledSystem,
    s0: &SystemState,
    t_total: f64,
    reorth_period: f64,
    cfg: &IntegratorConfig,
) -> Result<LyapunovResult> {
    let d = sys.dim();
    if s0.q.len() != sys.node_count() || s0.p.len() != sys.node_count() {
        return Err(Error::Dimension { expected: sys.node_count(), got: s0.q.len() });
    }
    if !(reorth_period.is_finite() && reorth_period > 0.0) {
        return Err(Error::Config(format!("reorthonormalisation period must be positive, got {reorth_period}")));
    }
    if !(t_total.is_finite() && t_total >= 100.0 * reorth_period) {
        return Err(Error::Config(format!(
            "total time {t_total} must be at least 100 reorthonormalisation periods ({})",
            100.0 * reorth_period
        )));
    }

    let aug = TangentSystem { system: sys };
    let mut stepper = Stepper::new(&aug, *cfg)?;
    let mut y: Vec<f64> = s0.flat();
    y.extend(DMatrix::<f64>::identity(d, d).iter());
    let h0 = sys.hamiltonian_flat(&y[..d]);
    let mut drift: f64 = 0.0;
    let mut sums = vec![Kahan::default(); d];
    let mut history = Vec::new();
    let steps = (t_total / reorth_period - 1e-9).ceil() as usize;
    let mut t = s0.t;
    for k in 1..=steps {
        let target = s0.t + (k as f64 * reorth_period).min(t_total);
        stepper.advance(&mut y, &mut t, target)?;
        let h = sys.hamiltonian_flat(&y[..d]);
        drift = drift.max((h - h0).abs() / (1.0 + h0.abs()));

        let frame = &mut y[d..];
        for c in 0..d {
            for prev in 0..c {
                let dot: f64 = (0..d).map(|r| frame[c * d + r] * frame[prev * d + r]).sum();
                for r in 0..d {
                    frame[c * d + r] -= dot * frame[prev * d + r];
                }
            }
            let norm = (0..d).map(|r| frame[c * d + r].powi(2)).sum::<f64>().sqrt();
            if !norm.is_finite() || norm <= FRAME_NORM_FLOOR {
                return Err(Error::DegenerateFrame { t, norm });
            }
            for r in 0..d {
                frame[c * d + r] /= norm;
            }
            sums[c].add(norm.ln());
        }
        stepper.reset_state();
        let elapsed = t - s0.t;
        let running: Vec<f64> = sums.iter().map(|s| s.sum / elapsed).collect();
        history.push((elapsed, sorted_desc(&running)));
    }

    let exponents = history.last().map(|h| h.1.clone()).unwrap_or_default();
    let warning = convergence_warning(&history, t_total);
    Ok(LyapunovResult { exponents, history, t_total, reorth_period, energy_drift: drift, warning })
}

fn convergence_warning(history: &[(f64, Vec<f64>)], t_total: f64) -> Option<String> {
    let last = history.last()?.1[0];
    let scale = last.abs().max(1e-2);
    let spread = history
        .iter()
        .filter(|(t, _)| *t >= t_total / 10.0)
        .map(|(_, v)| (v[0] - last).abs())
        .fold(0.0, f64::max);
    (spread > 0.2 * scale).then(|| {
        format!("largest exponent not converged: moved by {spread:.3e} over the last decade (final {last:.3e})")
    })
}

/// Linearisation eigenvalues at the synchronous equilibrium-type state
/// `q_i = q_synch, p_i = 0`: for each Laplacian eigenvalue the pair
/// `+-sqrt(-(1 + 2 k c01 l)(cos q + 2 k c10 l))`.
pub fn synchrony_eigenvalues(sys: &CoupledSystem, q_synch: f64) -> Result<Vec<Complex<f64>>> {
    let spec = spectrum(&sys.graph)?;
    let (c10, c01, k) = (sys.potential.c10(), sys.potential.c01(), sys.kappa);
    let mut out = Vec::with_capacity(2 * spec.eigenvalues.len());
    for &l in &spec.eigenvalues {
        let r = -(1.0 + 2.0 * k * c01 * l) * (q_synch.cos() + 2.0 * k * c10 * l);
        let z = if r >= 0.0 { Complex::new(r.sqrt(), 0.0) } else { Complex::new(0.0, (-r).sqrt()) };
        out.push(z);
        out.push(-z);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Branch {
    C10,
    C01,
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Branch::C10 => "c10",
            Branch::C01 => "c01",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriticalCoupling {
    pub kappa: f64,
    /// `(Laplacian eigenvalue, branch)` for every source of this value.
    pub sources: Vec<(f64, Branch)>,
}

impl CriticalCoupling {
    pub fn multiplicity(&self) -> usize {
        self.sources.len()
    }
}

fn negative_branches(sys: &CoupledSystem) -> Vec<(Branch, f64)> {
    [(Branch::C10, sys.potential.c10()), (Branch::C01, sys.potential.c01())]
        .into_iter()
        .filter(|&(_, c)| c < 0.0)
        .collect()
}

/// Largest distance in a greedy nearest-neighbour matching of two
/// equal-size multisets of complex numbers; infinite if the sizes differ.
pub fn multiset_distance(a: &[Complex<f64>], b: &[Complex<f64>]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut pool = b.to_vec();
    let mut worst: f64 = 0.0;
    for z in a {
        let (idx, d) = pool
            .iter()
            .enumerate()
            .map(|(i, w)| (i, (z - w).norm()))
            .fold((0, f64::INFINITY), |best, c| if c.1 < best.1 { c } else { best });
        worst = worst.max(d);
        pool.swap_remove(idx);
    }
    worst
}

/// Couplings `k = -1/(2 c l)` at which the origin changes from elliptic to
/// mixed, for `c` in `{c10, c01}` negative and `l` a non-zero Laplacian
/// eigenvalue. Sorted ascending; coincident values are merged.
pub fn critical_couplings(sys: &CoupledSystem) -> Result<Vec<CriticalCoupling>> {
    let spec = spectrum(&sys.graph)?;
    let mut raw: Vec<(f64, f64, Branch)> = Vec::new();
    for (branch, c) in negative_branches(sys) {
        for &l in spec.eigenvalues.iter().filter(|&&l| l > ZERO_EIGENVALUE_TOL) {
            raw.push((-1.0 / (2.0 * c * l), l, branch));
        }
    }
    raw.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.2.cmp(&b.2)));
    let mut out: Vec<CriticalCoupling> = Vec::new();
    for (kappa, l, branch) in raw {
        match out.last_mut() {
            Some(last) if (last.kappa - kappa).abs() <= 1e-9 * kappa.abs().max(1.0) => {
                last.sources.push((l, branch));
            }
            _ => out.push(CriticalCoupling { kappa, sources: vec![(l, branch)] }),
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BifurcationInterval {
    pub branch: Branch,
    pub coefficient: f64,
    /// `-1/(2c) * 1/N`
    pub lower: f64,
    /// `-1/(2c) * N/(2 k')` with `k'` the edge connectivity.
    pub upper: f64,
    /// Smallest and largest actual critical coupling on this branch.
    pub critical_min: f64,
    pub critical_max: f64,
}

impl BifurcationInterval {
    pub fn contains(&self, kappa: f64) -> bool {
        let slack = 1e-12 * self.upper.abs().max(1.0);
        kappa >= self.lower - slack && kappa <= self.upper + slack
    }

    pub fn contains_all(&self) -> bool {
        self.contains(self.critical_min) && self.contains(self.critical_max)
    }
}

/// Interval estimate `-1/(2c) [1/N, N/(2k')]` for each negative branch,
/// reported together with the actual extreme critical couplings.
pub fn bifurcation_interval(sys: &CoupledSystem) -> Result<Vec<BifurcationInterval>> {
    let g = &sys.graph;
    let n = g.node_count();
    if n < 2 || !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let kc = edge_connectivity(g) as f64;
    let spec = spectrum(g)?;
    let nonzero = spec.nonzero(ZERO_EIGENVALUE_TOL);
    let (lmin, lmax) = (nonzero[0], nonzero[nonzero.len() - 1]);
    Ok(negative_branches(sys)
        .into_iter()
        .map(|(branch, c)| {
            let scale = -1.0 / (2.0 * c);
            BifurcationInterval {
                branch,
                coefficient: c,
                lower: scale / n as f64,
                upper: scale * n as f64 / (2.0 * kc),
                critical_min: scale / lmax,
                critical_max: scale / lmin,
            }
        })
        .collect())
}

/// Centre-of-mass series `(q_bar, p_bar)` of a trajectory, with the mean
/// restoring force `(1/N) sum sin q_i` kept for residual checks.
#[derive(Clone, Debug)]
pub struct ComSeries {
    pub times: Vec<f64>,
    pub q_bar: Vec<f64>,
    pub p_bar: Vec<f64>,
    pub mean_sin: Vec<f64>,
}

pub fn centre_of_mass(traj: &Trajectory) -> Result<ComSeries> {
    if traj.is_empty() {
        return Err(Error::Domain("empty trajectory".into()));
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    Ok(ComSeries {
        times: traj.times.clone(),
        q_bar: traj.states.iter().map(|s| mean(&s.q)).collect(),
        p_bar: traj.states.iter().map(|s| mean(&s.p)).collect(),
        mean_sin: traj
            .states
            .iter()
            .map(|s| s.q.iter().map(|q| q.sin()).sum::<f64>() / s.len() as f64)
            .collect(),
    })
}

impl ComSeries {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn max_abs(&self) -> f64 {
        self.q_bar.iter().chain(&self.p_bar).fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// Largest `|dp_bar/dt + (1/N) sum sin q_i|` over interior samples, with
    /// the derivative from second-order three-point differences.
    pub fn momentum_residual(&self) -> f64 {
        let (t, p) = (&self.times, &self.p_bar);
        (1..t.len().saturating_sub(1))
            .map(|k| {
                let (h1, h2) = (t[k] - t[k - 1], t[k + 1] - t[k]);
                let dp = -h2 / (h1 * (h1 + h2)) * p[k - 1]
                    + (h2 - h1) / (h1 * h2) * p[k]
                    + h1 / (h2 * (h1 + h2)) * p[k + 1];
                (dp + self.mean_sin[k]).abs()
            })
            .fold(0.0, f64::max)
    }

    fn uniform_step(&self) -> Result<(usize, f64)> {
        let t = &self.times;
        if t.len() < 2 {
            return Err(Error::Domain("need at least two samples".into()));
        }
        let dt = t[1] - t[0];
        let mut len = t.len();
        // the final sample may land on a shortened interval
        if len > 2 && ((t[len - 1] - t[len - 2]) - dt).abs() > 1e-9 * dt.abs() {
            len -= 1;
        }
        if (1..len).any(|k| ((t[k] - t[k - 1]) - dt).abs() > 1e-9 * dt.abs()) {
            return Err(Error::Domain("samples are not uniformly spaced".into()));
        }
        Ok((len, dt))
    }

    /// One-sided amplitude spectrum of the mean-removed, Hann-windowed
    /// `q_bar`, as `(angular frequency, amplitude)` pairs.
    pub fn spectrum(&self) -> Result<Vec<(f64, f64)>> {
        let (len, dt) = self.uniform_step()?;
        let mags = windowed_magnitudes(&self.q_bar[..len]);
        let scale = 2.0 / len as f64;
        Ok(mags
            .iter()
            .enumerate()
            .map(|(k, m)| (2.0 * PI * k as f64 / (len as f64 * dt), m * scale))
            .collect())
    }
}

fn windowed_magnitudes(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mean = x.iter().sum::<f64>() / n as f64;
    let mut buf: Vec<Complex<f64>> = x
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let w = 0.5 - 0.5 * (2.0 * PI * i as f64 / (n - 1) as f64).cos();
            Complex::new((v - mean) * w, 0.0)
        })
        .collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    buf[..n / 2 + 1].iter().map(|c| c.norm()).collect()
}

pub const MIN_FREQUENCY_SAMPLES: usize = 1024;

/// Angular frequency of the strongest non-DC component of `q_bar`, refined
/// by a parabola through the peak bin and its neighbours.
pub fn dominant_frequency(series: &ComSeries) -> Result<f64> {
    let (len, dt) = series.uniform_step()?;
    if len < MIN_FREQUENCY_SAMPLES {
        return Err(Error::Domain(format!("need at least {MIN_FREQUENCY_SAMPLES} samples, got {len}")));
    }
    let mags = windowed_magnitudes(&series.q_bar[..len]);
    let (k, peak) = mags.iter().enumerate().skip(1).fold((0, 0.0), |best, (k, &m)| if m > best.1 { (k, m) } else { best });
    let level: f64 = series.q_bar[..len].iter().map(|v| v.abs()).sum();
    if k == 0 || peak <= 1e-12 * level + 1e-300 {
        return Err(Error::NoOscillation);
    }
    let mut bin = k as f64;
    if k + 1 < mags.len() {
        let (a, b, c) = (mags[k - 1], mags[k], mags[k + 1]);
        let denom = a - 2.0 * b + c;
        if denom != 0.0 {
            bin += 0.5 * (a - c) / denom;
        }
    }
    Ok(2.0 * PI * bin / (len as f64 * dt))
}

/// Two-node relative coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RelativeState {
    pub q_s: f64,
    pub p_s: f64,
    pub q_a: f64,
    pub p_a: f64,
}

fn require_two(n: usize) -> Result<()> {
    if n != 2 {
        return Err(Error::Domain(format!("relative coordinates need N = 2, got N = {n}")));
    }
    Ok(())
}

pub fn to_relative(s: &SystemState) -> Result<RelativeState> {
    require_two(s.q.len())?;
    Ok(RelativeState { q_s: s.q[0] - s.q[1], p_s: s.p[0] - s.p[1], q_a: s.q[0] + s.q[1], p_a: s.p[0] + s.p[1] })
}

pub fn from_relative(r: &RelativeState, t: f64) -> SystemState {
    SystemState {
        q: vec![0.5 * (r.q_a + r.q_s), 0.5 * (r.q_a - r.q_s)],
        p: vec![0.5 * (r.p_a + r.p_s), 0.5 * (r.p_a - r.p_s)],
        t,
    }
}

/// Vector field in relative coordinates. Without an edge the coupling
/// terms vanish.
pub fn relative_vector_field(sys: &CoupledSystem, r: &RelativeState) -> Result<RelativeState> {
    require_two(sys.node_count())?;
    let k = if sys.graph.has_edge(0, 1) { sys.kappa } else { 0.0 };
    let g = &sys.potential;
    let (hs, ha) = (0.5 * r.q_s, 0.5 * r.q_a);
    Ok(RelativeState {
        q_s: r.p_s + 2.0 * k * g.eval(r.q_s, r.p_s, 0, 1),
        p_s: -2.0 * (ha.cos() * hs.sin() + k * g.eval(r.q_s, r.p_s, 1, 0)),
        q_a: r.p_a,
        p_a: -2.0 * hs.cos() * ha.sin(),
    })
}
