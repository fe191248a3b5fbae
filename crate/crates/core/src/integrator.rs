//! Time integration of the network flow and of its variational (tangent)
//! equations.
//!
//! The Hamiltonian is non-separable as soon as the interaction depends on
//! momentum differences, so explicit symplectic splitting is not available.
//! Energy drift is measured along every trajectory instead.

use nalgebra::DMatrix;

use crate::dynamics::{CoupledSystem, SystemState};
use crate::error::{Error, Result};

const MIN_STEP: f64 = 1e-14;

/// Right-hand side of an autonomous ODE `y' = f(y)`.
pub trait OdeSystem {
    fn dim(&self) -> usize;
    fn rhs(&self, y: &[f64], dy: &mut [f64]);
}

impl OdeSystem for CoupledSystem {
    fn dim(&self) -> usize {
        CoupledSystem::dim(self)
    }

    fn rhs(&self, y: &[f64], dy: &mut [f64]) {
        CoupledSystem::rhs(self, y, dy)
    }
}

/// Base flow together with the tangent flow `Y' = J(x) Y`; the state is `x`
/// followed by the columns of `Y` (column-major).
pub struct TangentSystem<'a> {
    pub system: &'a CoupledSystem,
}

impl OdeSystem for TangentSystem<'_> {
    fn dim(&self) -> usize {
        let d = self.system.dim();
        d + d * d
    }

    fn rhs(&self, y: &[f64], dy: &mut [f64]) {
        let d = self.system.dim();
        let (x, frame) = y.split_at(d);
        let (dx, dframe) = dy.split_at_mut(d);
        self.system.rhs(x, dx);
        let j = self.system.jacobian_flat(x);
        let frame = nalgebra::DMatrixView::from_slice(frame, d, d);
        let product = j * frame;
        dframe.copy_from_slice(product.as_slice());
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Method {
    /// Classical fourth-order Runge-Kutta with a fixed step.
    FixedRk4 { step: f64 },
    /// Dormand-Prince 5(4) with PI step-size control.
    AdaptiveRk45 { abs_tol: f64, rel_tol: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegratorConfig {
    pub method: Method,
    pub max_step: f64,
    pub sample_interval: f64,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self {
            method: Method::AdaptiveRk45 { abs_tol: 1e-10, rel_tol: 1e-10 },
            max_step: 0.1,
            sample_interval: 0.05,
        }
    }
}

impl IntegratorConfig {
    pub fn adaptive(tol: f64) -> Self {
        Self { method: Method::AdaptiveRk45 { abs_tol: tol, rel_tol: tol }, ..Self::default() }
    }

    pub fn fixed(step: f64) -> Self {
        Self { method: Method::FixedRk4 { step }, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        let ok = match self.method {
            Method::FixedRk4 { step } => positive(step),
            Method::AdaptiveRk45 { abs_tol, rel_tol } => positive(abs_tol) && positive(rel_tol),
        };
        if !ok || !positive(self.max_step) || !positive(self.sample_interval) {
            return Err(Error::Config(format!("invalid integrator settings: {self:?}")));
        }
        Ok(())
    }

    /// `key=value` pairs for output metadata.
    pub fn describe(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        match self.method {
            Method::FixedRk4 { step } => {
                out.push(("method".into(), "fixed-rk4".into()));
                out.push(("step".into(), step.to_string()));
            }
            Method::AdaptiveRk45 { abs_tol, rel_tol } => {
                out.push(("method".into(), "adaptive-rk45".into()));
                out.push(("abs_tol".into(), abs_tol.to_string()));
                out.push(("rel_tol".into(), rel_tol.to_string()));
            }
        }
        out.push(("max_step".into(), self.max_step.to_string()));
        out.push(("sample_interval".into(), self.sample_interval.to_string()));
        out
    }
}

// Dormand-Prince 5(4) tableau
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

// PI controller constants
const SAFETY: f64 = 0.9;
const BETA: f64 = 0.04;
const EXPO: f64 = 0.2 - BETA * 0.75;
const FAC_MIN: f64 = 0.2;
const FAC_MAX: f64 = 10.0;

/// Stateful stepper that advances `y` to requested times, keeping its step
/// size estimate between calls. Time may run backwards.
pub struct Stepper<'a, S: OdeSystem> {
    system: &'a S,
    cfg: IntegratorConfig,
    h: f64,
    err_old: f64,
    k: [Vec<f64>; 7],
    tmp: Vec<f64>,
    y_new: Vec<f64>,
    fsal_valid: bool,
    pub accepted: usize,
    pub rejected: usize,
}

impl<'a, S: OdeSystem> Stepper<'a, S> {
    pub fn new(system: &'a S, cfg: IntegratorConfig) -> Result<Self> {
        cfg.validate()?;
        let d = system.dim();
        let h = match cfg.method {
            Method::FixedRk4 { step } => step,
            Method::AdaptiveRk45 { .. } => (1e-3f64).min(cfg.max_step),
        };
        Ok(Self {
            system,
            cfg,
            h,
            err_old: 1e-4,
            k: std::array::from_fn(|_| vec![0.0; d]),
            tmp: vec![0.0; d],
            y_new: vec![0.0; d],
            fsal_valid: false,
            accepted: 0,
            rejected: 0,
        })
    }

    /// Integrates from `*t` to `t_end`, landing exactly on `t_end`.
    pub fn advance(&mut self, y: &mut [f64], t: &mut f64, t_end: f64) -> Result<()> {
        match self.cfg.method {
            Method::FixedRk4 { step } => self.advance_rk4(y, t, t_end, step),
            Method::AdaptiveRk45 { abs_tol, rel_tol } => {
                self.advance_rk45(y, t, t_end, abs_tol, rel_tol)
            }
        }
    }

    fn advance_rk4(&mut self, y: &mut [f64], t: &mut f64, t_end: f64, step: f64) -> Result<()> {
        let span = t_end - *t;
        if span == 0.0 {
            return Ok(());
        }
        let steps = (span.abs() / step - 1e-9).ceil().max(1.0) as usize;
        let h = span / steps as f64;
        let t0 = *t;
        let d = y.len();
        for s in 0..steps {
            let [k1, k2, k3, k4, ..] = &mut self.k;
            self.system.rhs(y, k1);
            for i in 0..d {
                self.tmp[i] = y[i] + 0.5 * h * k1[i];
            }
            self.system.rhs(&self.tmp, k2);
            for i in 0..d {
                self.tmp[i] = y[i] + 0.5 * h * k2[i];
            }
            self.system.rhs(&self.tmp, k3);
            for i in 0..d {
                self.tmp[i] = y[i] + h * k3[i];
            }
            self.system.rhs(&self.tmp, k4);
            for i in 0..d {
                y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            }
            *t = t0 + (s + 1) as f64 * h;
            self.accepted += 1;
            if y.iter().any(|v| !v.is_finite()) {
                return Err(Error::Divergence { t: *t });
            }
        }
        *t = t_end;
        Ok(())
    }

    fn advance_rk45(
        &mut self,
        y: &mut [f64],
        t: &mut f64,
        t_end: f64,
        atol: f64,
        rtol: f64,
    ) -> Result<()> {
        let dir = (t_end - *t).signum();
        if t_end == *t {
            return Ok(());
        }
        let d = y.len();
        if !self.fsal_valid {
            self.system.rhs(y, &mut self.k[0]);
            self.fsal_valid = true;
        }
        loop {
            let remaining = (t_end - *t).abs();
            if remaining <= 1e-13 * t.abs().max(1.0) {
                *t = t_end;
                return Ok(());
            }
            let natural = self.h.min(self.cfg.max_step);
            let clipped = natural >= remaining;
            let h_abs = if clipped { remaining } else { natural };
            if h_abs < MIN_STEP {
                return Err(Error::Stiffness { t: *t, h: h_abs });
            }
            let h = dir * h_abs;

            let [k1, k2, k3, k4, k5, k6, k7] = &mut self.k;
            let tmp = &mut self.tmp;
            for i in 0..d {
                tmp[i] = y[i] + h * A21 * k1[i];
            }
            self.system.rhs(tmp, k2);
            for i in 0..d {
                tmp[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i]);
            }
            self.system.rhs(tmp, k3);
            for i in 0..d {
                tmp[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
            }
            self.system.rhs(tmp, k4);
            for i in 0..d {
                tmp[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
            }
            self.system.rhs(tmp, k5);
            for i in 0..d {
                tmp[i] = y[i]
                    + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
            }
            self.system.rhs(tmp, k6);
            let y_new = &mut self.y_new;
            for i in 0..d {
                y_new[i] = y[i]
                    + h * (A71 * k1[i] + A73 * k3[i] + A74 * k4[i] + A75 * k5[i] + A76 * k6[i]);
            }
            self.system.rhs(y_new, k7);

            let mut err = 0.0;
            for i in 0..d {
                let e = h
                    * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
                let sc = atol + rtol * y[i].abs().max(y_new[i].abs());
                err += (e / sc) * (e / sc);
            }
            let err = (err / d as f64).sqrt();
            if !err.is_finite() {
                if y_new.iter().any(|v| !v.is_finite()) && h_abs <= MIN_STEP * 10.0 {
                    return Err(Error::Divergence { t: *t });
                }
                self.h = h_abs * FAC_MIN;
                self.rejected += 1;
                continue;
            }

            let fac_err = err.powf(EXPO);
            if err <= 1.0 {
                let fac = (fac_err / self.err_old.powf(BETA) / SAFETY).clamp(1.0 / FAC_MAX, 1.0 / FAC_MIN);
                let proposed = h_abs / fac;
                self.err_old = err.max(1e-4);
                y.copy_from_slice(y_new);
                std::mem::swap(k1, k7);
                *t = if clipped { t_end } else { *t + h };
                self.accepted += 1;
                if y.iter().any(|v| !v.is_finite()) {
                    return Err(Error::Divergence { t: *t });
                }
                self.h = if clipped { natural.max(proposed) } else { proposed };
                if clipped {
                    return Ok(());
                }
            } else {
                let fac = (fac_err / SAFETY).min(1.0 / FAC_MIN);
                self.h = h_abs / fac;
                self.rejected += 1;
            }
        }
    }

    /// Invalidates the cached first stage after the caller edits `y`.
    pub fn reset_state(&mut self) {
        self.fsal_valid = false;
    }
}

/// Sampled solution with energies and the largest relative energy deviation
/// `|H(t) - H(0)| / (1 + |H(0)|)`.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<SystemState>,
    pub energies: Vec<f64>,
    pub energy_drift: f64,
    pub config: IntegratorConfig,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> &SystemState {
        self.states.last().expect("trajectory has at least the initial sample")
    }

    /// Largest `|q_i(t)|` over all samples and nodes.
    pub fn max_abs_position(&self) -> f64 {
        self.states.iter().flat_map(|s| s.q.iter()).fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

fn sample_times(t0: f64, duration: f64, interval: f64) -> Vec<f64> {
    let dir = duration.signum();
    let count = (duration.abs() / interval + 1e-9).floor() as usize;
    let mut times: Vec<f64> = (0..=count).map(|k| t0 + dir * k as f64 * interval).collect();
    let end = t0 + duration;
    if (end - times[times.len() - 1]).abs() > 1e-9 * interval {
        times.push(end);
    } else {
        *times.last_mut().unwrap() = end;
    }
    times
}

fn check_start(sys: &CoupledSystem, s0: &SystemState, duration: f64) -> Result<()> {
    if !(duration.is_finite() && duration != 0.0) {
        return Err(Error::Domain(format!("integration time must be finite and non-zero, got {duration}")));
    }
    let n = sys.node_count();
    if s0.q.len() != n || s0.p.len() != n {
        return Err(Error::Dimension { expected: n, got: s0.q.len().max(s0.p.len()) });
    }
    if s0.flat().iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain("initial state is not finite".into()));
    }
    Ok(())
}

/// Integrates the flow for `duration` time units (negative runs backwards)
/// and samples every `sample_interval`.
pub fn integrate(
    sys: &CoupledSystem,
    s0: &SystemState,
    duration: f64,
    cfg: &IntegratorConfig,
) -> Result<Trajectory> {
    check_start(sys, s0, duration)?;
    let mut stepper = Stepper::new(sys, *cfg)?;
    let mut y = s0.flat();
    let mut t = s0.t;
    let h0 = sys.hamiltonian_flat(&y);
    let times = sample_times(s0.t, duration, cfg.sample_interval);
    let mut states = Vec::with_capacity(times.len());
    let mut energies = Vec::with_capacity(times.len());
    let mut drift: f64 = 0.0;
    for &ts in &times {
        stepper.advance(&mut y, &mut t, ts)?;
        let h = sys.hamiltonian_flat(&y);
        drift = drift.max((h - h0).abs() / (1.0 + h0.abs()));
        energies.push(h);
        states.push(SystemState::from_flat(&y, ts).map_err(|_| Error::Divergence { t: ts })?);
    }
    Ok(Trajectory { times, states, energies, energy_drift: drift, config: *cfg })
}

#[derive(Clone, Debug)]
pub struct TangentCheckpoint {
    pub t: f64,
    pub frame: DMatrix<f64>,
}

/// Integrates `x' = f(x)` jointly with `Y' = J(x) Y` from `frame0`, recording
/// `Y` every `checkpoint_interval`. Base and tangent share step sizes.
pub fn integrate_with_tangent(
    sys: &CoupledSystem,
    s0: &SystemState,
    frame0: &DMatrix<f64>,
    duration: f64,
    cfg: &IntegratorConfig,
    checkpoint_interval: f64,
) -> Result<(Trajectory, Vec<TangentCheckpoint>)> {
    check_start(sys, s0, duration)?;
    let d = sys.dim();
    if frame0.nrows() != d || frame0.ncols() != d {
        return Err(Error::Dimension { expected: d, got: frame0.nrows() });
    }
    if !(checkpoint_interval.is_finite() && checkpoint_interval > 0.0) {
        return Err(Error::Config("checkpoint interval must be positive".into()));
    }
    let aug = TangentSystem { system: sys };
    let mut stepper = Stepper::new(&aug, *cfg)?;
    let mut y: Vec<f64> = s0.flat().into_iter().chain(frame0.iter().copied()).collect();
    let mut t = s0.t;
    let h0 = sys.hamiltonian_flat(&y[..d]);

    let samples = sample_times(s0.t, duration, cfg.sample_interval);
    let checkpoints = sample_times(s0.t, duration, checkpoint_interval);
    let mut events: Vec<(f64, bool, bool)> = Vec::new();
    {
        let (mut i, mut j) = (0, 0);
        let forward = duration > 0.0;
        let before = |a: f64, b: f64| if forward { a < b } else { a > b };
        while i < samples.len() || j < checkpoints.len() {
            let next = match (samples.get(i), checkpoints.get(j)) {
                (Some(&a), Some(&b)) if (a - b).abs() <= 1e-12 * a.abs().max(1.0) => {
                    i += 1;
                    j += 1;
                    (a, true, true)
                }
                (Some(&a), Some(&b)) if before(a, b) => {
                    i += 1;
                    (a, true, false)
                }
                (Some(_), Some(&b)) | (None, Some(&b)) => {
                    j += 1;
                    (b, false, true)
                }
                (Some(&a), None) => {
                    i += 1;
                    (a, true, false)
                }
                (None, None) => unreachable!(),
            };
            events.push(next);
        }
    }

    let mut times = Vec::new();
    let mut states = Vec::new();
    let mut energies = Vec::new();
    let mut history = Vec::new();
    let mut drift: f64 = 0.0;
    for (te, is_sample, is_checkpoint) in events {
        stepper.advance(&mut y, &mut t, te)?;
        if is_sample {
            let h = sys.hamiltonian_flat(&y[..d]);
            drift = drift.max((h - h0).abs() / (1.0 + h0.abs()));
            energies.push(h);
            times.push(te);
            states.push(SystemState::from_flat(&y[..d], te).map_err(|_| Error::Divergence { t: te })?);
        }
        if is_checkpoint {
            history.push(TangentCheckpoint { t: te, frame: DMatrix::from_column_slice(d, d, &y[d..]) });
        }
    }
    let traj = Trajectory { times, states, energies, energy_drift: drift, config: *cfg };
    Ok((traj, history))
}
