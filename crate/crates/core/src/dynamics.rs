//! Hamiltonian, vector field and Jacobian of the coupled pendulum network
//!
//! ```text
//! H = sum_i (p_i^2 / 2 - cos q_i) + kappa * sum_{ij in E} G(q_i - q_j, p_i - p_j)
//! G(x, y) = sum_{l,m} c_lm x^(2l) y^(2m)
//! ```

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::path::Path;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Even polynomial interaction `G(x, y) = sum c_lm x^(2l) y^(2m)`.
#[derive(Clone, Debug, PartialEq)]
pub struct InteractionPotential {
    coeffs: BTreeMap<(u32, u32), f64>,
}

impl InteractionPotential {
    pub fn new(coeffs: impl IntoIterator<Item = ((u32, u32), f64)>) -> Self {
        let mut map = BTreeMap::new();
        for (key, c) in coeffs {
            *map.entry(key).or_insert(0.0) += c;
        }
        map.retain(|_, c| *c != 0.0);
        Self { coeffs: map }
    }

    /// `G(x, y) = 1/4 - x^2 + x^4`.
    pub fn double_well() -> Self {
        Self::new([((0, 0), 0.25), ((1, 0), -1.0), ((2, 0), 1.0)])
    }

    /// `G(x, y) = x^2 / 2`.
    pub fn harmonic() -> Self {
        Self::new([((1, 0), 0.5)])
    }

    pub fn named(name: &str) -> Option<Self> {
        match name {
            "double-well" => Some(Self::double_well()),
            "harmonic" => Some(Self::harmonic()),
            _ => None,
        }
    }

    /// Named potential or a file of `l m c_lm` lines.
    pub fn from_spec(spec: &str) -> Result<Self> {
        match Self::named(spec) {
            Some(p) => Ok(p),
            None => {
                let text = std::fs::read_to_string(Path::new(spec)).map_err(|e| {
                    Error::Config(format!(
                        "`{spec}` is neither a named potential (double-well, harmonic) nor a readable coefficient file ({e})"
                    ))
                })?;
                Self::parse(&text)
            }
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut coeffs = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let bad = |msg: String| Error::Parse { line: idx + 1, msg };
            if fields.len() != 3 {
                return Err(bad("expected `l m c_lm`".into()));
            }
            let l = fields[0].parse::<u32>().map_err(|e| bad(format!("bad l: {e}")))?;
            let m = fields[1].parse::<u32>().map_err(|e| bad(format!("bad m: {e}")))?;
            let c = fields[2].parse::<f64>().map_err(|e| bad(format!("bad c_lm: {e}")))?;
            if !c.is_finite() {
                return Err(bad("coefficient is not finite".into()));
            }
            coeffs.push(((l, m), c));
        }
        Ok(Self::new(coeffs))
    }

    pub fn to_text(&self) -> String {
        self.coeffs.iter().map(|((l, m), c)| format!("{l} {m} {c:e}\n")).collect()
    }

    pub fn coefficient(&self, l: u32, m: u32) -> f64 {
        self.coeffs.get(&(l, m)).copied().unwrap_or(0.0)
    }

    pub fn coefficients(&self) -> impl Iterator<Item = ((u32, u32), f64)> + '_ {
        self.coeffs.iter().map(|(&k, &c)| (k, c))
    }

    pub fn c10(&self) -> f64 {
        self.coefficient(1, 0)
    }

    pub fn c01(&self) -> f64 {
        self.coefficient(0, 1)
    }

    /// `d^(dx+dy) G / dx^dx dy^dy` at `(x, y)`; requires `dx + dy <= 2`.
    pub fn eval(&self, x: f64, y: f64, dx: u32, dy: u32) -> f64 {
        assert!(dx + dy <= 2, "derivative order above 2 requested");
        self.eval_any(x, y, dx, dy)
    }

    /// Same as [`eval`](Self::eval) without the order limit.
    pub fn eval_any(&self, x: f64, y: f64, dx: u32, dy: u32) -> f64 {
        self.coeffs
            .iter()
            .map(|(&(l, m), &c)| c * power_derivative(x, 2 * l, dx) * power_derivative(y, 2 * m, dy))
            .sum()
    }

    /// Minimum of `G` over a 201 x 201 grid of `[-2pi, 2pi]^2`.
    pub fn sampled_minimum(&self) -> f64 {
        let pts = 201;
        let step = 4.0 * PI / (pts - 1) as f64;
        let mut min = f64::INFINITY;
        for i in 0..pts {
            let x = -2.0 * PI + i as f64 * step;
            for j in 0..pts {
                let y = -2.0 * PI + j as f64 * step;
                min = min.min(self.eval(x, y, 0, 0));
            }
        }
        min
    }

    /// `None` when the sampled minimum is `>= -1e-12`; otherwise a warning.
    /// A negative interaction voids the bounded-motion certificate but not
    /// the dynamics.
    pub fn nonnegativity_warning(&self) -> Option<String> {
        let min = self.sampled_minimum();
        (min < -1e-12).then(|| {
            format!("interaction potential is negative on the sample grid (min {min:e}); bounded-motion certificate is void")
        })
    }
}

impl fmt::Display for InteractionPotential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> =
            self.coeffs.iter().map(|((l, m), c)| format!("{c}*x^{}*y^{}", 2 * l, 2 * m)).collect();
        write!(f, "G = {}", if terms.is_empty() { "0".into() } else { terms.join(" + ") })
    }
}

/// `d^k/dx^k x^e`
fn power_derivative(x: f64, e: u32, k: u32) -> f64 {
    if k > e {
        return 0.0;
    }
    let falling: f64 = (0..k).map(|i| (e - i) as f64).product();
    falling * x.powi((e - k) as i32)
}

/// A phase-space point with its time stamp.
#[derive(Clone, Debug, PartialEq)]
pub struct SystemState {
    pub q: Vec<f64>,
    pub p: Vec<f64>,
    pub t: f64,
}

impl SystemState {
    pub fn new(q: Vec<f64>, p: Vec<f64>) -> Result<Self> {
        if q.len() != p.len() {
            return Err(Error::Dimension { expected: q.len(), got: p.len() });
        }
        if q.iter().chain(&p).any(|v| !v.is_finite()) {
            return Err(Error::Domain("state contains non-finite values".into()));
        }
        Ok(Self { q, p, t: 0.0 })
    }

    /// Splits `(q_1..q_N, p_1..p_N)`.
    pub fn from_flat(x: &[f64], t: f64) -> Result<Self> {
        if !x.len().is_multiple_of(2) {
            return Err(Error::Domain("flat state must have even length".into()));
        }
        let n = x.len() / 2;
        let mut s = Self::new(x[..n].to_vec(), x[n..].to_vec())?;
        s.t = t;
        Ok(s)
    }

    pub fn origin(n: usize) -> Self {
        Self { q: vec![0.0; n], p: vec![0.0; n], t: 0.0 }
    }

    pub fn synchronous(n: usize, q: f64, p: f64) -> Self {
        Self { q: vec![q; n], p: vec![p; n], t: 0.0 }
    }

    pub fn len(&self) -> usize {
        self.q.len()
    }

    pub fn is_empty(&self) -> bool {
        self.q.is_empty()
    }

    pub fn flat(&self) -> Vec<f64> {
        self.q.iter().chain(&self.p).copied().collect()
    }
}

/// Graph, interaction and coupling strength.
#[derive(Clone, Debug)]
pub struct CoupledSystem {
    pub graph: Graph,
    pub potential: InteractionPotential,
    pub kappa: f64,
}

impl CoupledSystem {
    pub fn new(graph: Graph, potential: InteractionPotential, kappa: f64) -> Result<Self> {
        if !(kappa.is_finite() && kappa >= 0.0) {
            return Err(Error::Domain(format!("coupling strength must be finite and >= 0, got {kappa}")));
        }
        Ok(Self { graph, potential, kappa })
    }

    pub fn with_kappa(&self, kappa: f64) -> Result<Self> {
        Self::new(self.graph.clone(), self.potential.clone(), kappa)
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    /// Phase-space dimension `2N`.
    pub fn dim(&self) -> usize {
        2 * self.node_count()
    }

    fn check(&self, s: &SystemState) -> Result<()> {
        let n = self.node_count();
        if s.q.len() != n {
            return Err(Error::Dimension { expected: n, got: s.q.len() });
        }
        if s.p.len() != n {
            return Err(Error::Dimension { expected: n, got: s.p.len() });
        }
        Ok(())
    }

    /// Vector field on the flat state `x = (q, p)`, written into `dx`.
    /// Lengths are not checked.
    pub fn rhs(&self, x: &[f64], dx: &mut [f64]) {
        let n = self.node_count();
        let (q, p) = x.split_at(n);
        let (dq, dp) = dx.split_at_mut(n);
        for i in 0..n {
            dq[i] = p[i];
            dp[i] = -q[i].sin();
        }
        if self.kappa == 0.0 {
            return;
        }
        let k = self.kappa;
        let mut t01 = Vec::new();
        let mut t10 = Vec::new();
        for i in 0..n {
            t01.clear();
            t10.clear();
            for &j in self.graph.neighbors(i) {
                let (u, v) = (q[i] - q[j], p[i] - p[j]);
                t01.push(self.potential.eval(u, v, 0, 1));
                t10.push(self.potential.eval(u, v, 1, 0));
            }
            dq[i] += k * symmetric_sum(&mut t01);
            dp[i] -= k * symmetric_sum(&mut t10);
        }
    }

}

/// Sum whose rounding depends only on the multiset of terms and which
/// satisfies `sum(-t) == -sum(t)` exactly: positive and negative parts are
/// each added in order of increasing magnitude. This keeps the discrete
/// flow exactly equivariant under node permutations and sign flips, so
/// invariant subspaces are not left through rounding.
fn symmetric_sum(t: &mut [f64]) -> f64 {
    t.sort_unstable_by(|a, b| a.abs().total_cmp(&b.abs()));
    let pos: f64 = t.iter().filter(|&&x| x > 0.0).sum();
    let neg: f64 = t.iter().filter(|&&x| x < 0.0).sum();
    pos + neg
}

impl CoupledSystem {
    pub fn vector_field(&self, s: &SystemState) -> Result<Vec<f64>> {
        self.check(s)?;
        let x = s.flat();
        let mut dx = vec![0.0; x.len()];
        self.rhs(&x, &mut dx);
        Ok(dx)
    }

    pub fn hamiltonian_flat(&self, x: &[f64]) -> f64 {
        let n = self.node_count();
        let (q, p) = x.split_at(n);
        let local: f64 = q.iter().zip(p).map(|(q, p)| 0.5 * p * p - q.cos()).sum();
        let coupling: f64 = self
            .graph
            .edges()
            .iter()
            .map(|&(i, j)| self.potential.eval(q[i] - q[j], p[i] - p[j], 0, 0))
            .sum();
        local + self.kappa * coupling
    }

    pub fn hamiltonian(&self, s: &SystemState) -> Result<f64> {
        self.check(s)?;
        Ok(self.hamiltonian_flat(&s.flat()))
    }

    /// Weighted Laplacian with edge weights `G_nm(q_i - q_j, p_i - p_j)`.
    pub fn weighted_laplacian(&self, x: &[f64], dx: u32, dy: u32) -> DMatrix<f64> {
        let n = self.node_count();
        let (q, p) = x.split_at(n);
        let mut l = DMatrix::zeros(n, n);
        for &(i, j) in self.graph.edges() {
            let w = self.potential.eval(q[i] - q[j], p[i] - p[j], dx, dy);
            l[(i, j)] -= w;
            l[(j, i)] -= w;
            l[(i, i)] += w;
            l[(j, j)] += w;
        }
        l
    }

    /// Jacobian on the flat state, in block form
    /// `[[k L11, I + k L02], [-diag(cos q) - k L20, -k L11]]`.
    pub fn jacobian_flat(&self, x: &[f64]) -> DMatrix<f64> {
        let n = self.node_count();
        let k = self.kappa;
        let l11 = self.weighted_laplacian(x, 1, 1) * k;
        let l20 = self.weighted_laplacian(x, 2, 0) * k;
        let l02 = self.weighted_laplacian(x, 0, 2) * k;
        let mut j = DMatrix::zeros(2 * n, 2 * n);
        j.view_mut((0, 0), (n, n)).copy_from(&l11);
        j.view_mut((0, n), (n, n)).copy_from(&(DMatrix::identity(n, n) + l02));
        let mut lower = -l20;
        for i in 0..n {
            lower[(i, i)] -= x[i].cos();
        }
        j.view_mut((n, 0), (n, n)).copy_from(&lower);
        j.view_mut((n, n), (n, n)).copy_from(&(-l11));
        j
    }

    pub fn jacobian(&self, s: &SystemState) -> Result<DMatrix<f64>> {
        self.check(s)?;
        Ok(self.jacobian_flat(&s.flat()))
    }

    /// `true` when `H <= 2 - N`, which guarantees a bounded forward orbit.
    /// The converse does not hold.
    pub fn bounded_motion_certificate(&self, s: &SystemState) -> Result<bool> {
        let n = self.node_count();
        if n < 2 {
            return Err(Error::Domain("the bounded-motion certificate needs N >= 2".into()));
        }
        Ok(self.hamiltonian(s)? <= 2.0 - n as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn k2(kappa: f64) -> CoupledSystem {
        CoupledSystem::new(Graph::complete(2).unwrap(), InteractionPotential::double_well(), kappa).unwrap()
    }

    fn k3(kappa: f64) -> CoupledSystem {
        CoupledSystem::new(Graph::complete(3).unwrap(), InteractionPotential::double_well(), kappa).unwrap()
    }

    fn state(q: &[f64], p: &[f64]) -> SystemState {
        SystemState::new(q.to_vec(), p.to_vec()).unwrap()
    }

    /// Mixed potential used where the momentum coupling matters.
    fn mixed() -> InteractionPotential {
        InteractionPotential::new([
            ((0, 0), 0.3),
            ((1, 0), -1.0),
            ((0, 1), 0.4),
            ((2, 0), 1.0),
            ((1, 1), 0.2),
            ((0, 2), 0.1),
        ])
    }

    #[test]
    fn potential_evaluation() {
        let dw = InteractionPotential::double_well();
        assert_eq!(dw.eval(0.0, 0.0, 0, 0), 0.25);
        assert_eq!(mixed().eval(0.0, 0.0, 1, 1), 0.0);
        assert_eq!(dw.eval(0.0, 0.0, 1, 1), 0.0);
        assert!((dw.eval(0.4, 0.0, 1, 0) - (-0.544)).abs() < 1e-12);
        assert_eq!(InteractionPotential::harmonic().c10(), 0.5);
        assert!(dw.nonnegativity_warning().is_none());
        let neg = InteractionPotential::new([((1, 0), -1.0)]);
        assert!(neg.nonnegativity_warning().is_some());
    }

    #[test]
    fn potential_file_format() {
        let p = InteractionPotential::parse("# dw\n0 0 0.25\n1 0 -1\n2 0 1\n").unwrap();
        assert_eq!(p, InteractionPotential::double_well());
        assert_eq!(InteractionPotential::parse(&p.to_text()).unwrap(), p);
        assert!(InteractionPotential::parse("1 0\n").is_err());
        assert!(InteractionPotential::parse("a 0 1\n").is_err());
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let g = mixed();
        let (x, y, h) = (0.37, -0.21, 1e-5);
        let fd_x = (g.eval(x + h, y, 0, 0) - g.eval(x - h, y, 0, 0)) / (2.0 * h);
        let fd_y = (g.eval(x, y + h, 0, 0) - g.eval(x, y - h, 0, 0)) / (2.0 * h);
        assert!((fd_x - g.eval(x, y, 1, 0)).abs() < 1e-8);
        assert!((fd_y - g.eval(x, y, 0, 1)).abs() < 1e-8);
        let fd_xy = (g.eval(x, y + h, 1, 0) - g.eval(x, y - h, 1, 0)) / (2.0 * h);
        assert!((fd_xy - g.eval(x, y, 1, 1)).abs() < 1e-8);
    }

    #[test]
    fn vector_field_examples() {
        let origin = SystemState::origin(3);
        assert!(k3(0.7).vector_field(&origin).unwrap().iter().all(|&v| v == 0.0));

        let s = state(&[0.3, -1.2, 2.0], &[0.5, 0.1, -0.4]);
        let f = k3(0.0).vector_field(&s).unwrap();
        for i in 0..3 {
            assert_eq!(f[i], s.p[i]);
            assert_eq!(f[3 + i], -s.q[i].sin());
        }

        let f = k2(0.2).vector_field(&state(&[0.2, 1.0 / 7.0], &[0.0, 0.0])).unwrap();
        let d: f64 = 0.2 - 1.0 / 7.0;
        let g10 = -2.0 * d + 4.0 * d.powi(3);
        assert!((g10 - (-0.11354)).abs() < 1e-5);
        assert_eq!(&f[..2], &[0.0, 0.0]);
        assert!((f[2] - (-0.17596)).abs() < 1e-5);
        assert!((f[3] - (-0.16508)).abs() < 1e-5);
        assert!((f[3] - (-(1.0f64 / 7.0).sin() + 0.2 * g10)).abs() < 1e-15);
        assert!((f[2] - (-(0.2f64).sin() - 0.2 * g10)).abs() < 1e-15);
    }

    #[test]
    fn synchronous_states_decouple() {
        let sys = CoupledSystem::new(Graph::complete(4).unwrap(), mixed(), 1.3).unwrap();
        let f = sys.vector_field(&SystemState::synchronous(4, 0.8, -0.3)).unwrap();
        for i in 0..4 {
            assert!((f[i] - (-0.3)).abs() < 1e-15);
            assert!((f[4 + i] + 0.8f64.sin()).abs() < 1e-15);
        }
    }

    #[test]
    fn hamiltonian_examples() {
        let s = state(&[0.2, 1.0 / 7.0], &[0.0, 0.0]);
        let h = k2(0.2).hamiltonian(&s).unwrap();
        assert!((h - (-1.9205)).abs() < 5e-5, "{h}");
        let h = k2(0.5).hamiltonian(&s).unwrap();
        assert!((h - (-1.8465)).abs() < 5e-5, "{h}");
        let h = k3(0.4).hamiltonian(&SystemState::origin(3)).unwrap();
        assert!((h - (-3.0 + 0.4 * 3.0 * 0.25)).abs() < 1e-15);
    }

    #[test]
    fn jacobian_structure_at_synchrony() {
        let sys = CoupledSystem::new(Graph::path(3).unwrap(), mixed(), 0.7).unwrap();
        let x = SystemState::synchronous(3, 0.4, 0.1).flat();
        assert!(sys.weighted_laplacian(&x, 1, 1).iter().all(|&v| v == 0.0));
        let lap = Graph::path(3).unwrap().laplacian().map(|v| v as f64);
        assert!((sys.weighted_laplacian(&x, 2, 0) - 2.0 * mixed().c10() * &lap).norm() < 1e-14);
        assert!((sys.weighted_laplacian(&x, 0, 2) - 2.0 * mixed().c01() * &lap).norm() < 1e-14);
    }

    #[test]
    fn jacobian_is_traceless_and_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let systems = [
            CoupledSystem::new(Graph::complete(2).unwrap(), mixed(), 0.6).unwrap(),
            CoupledSystem::new(Graph::path(3).unwrap(), mixed(), 0.9).unwrap(),
            CoupledSystem::new(Graph::complete(3).unwrap(), mixed(), 0.4).unwrap(),
            k3(0.25),
        ];
        for sys in &systems {
            let dim = sys.dim();
            for _ in 0..20 {
                let x: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.5..1.5)).collect();
                let j = sys.jacobian_flat(&x);
                assert!(j.trace().abs() < 1e-12);
                let h = 1e-6;
                let mut max_err: f64 = 0.0;
                for c in 0..dim {
                    let (mut xp, mut xm) = (x.clone(), x.clone());
                    xp[c] += h;
                    xm[c] -= h;
                    let (mut fp, mut fm) = (vec![0.0; dim], vec![0.0; dim]);
                    sys.rhs(&xp, &mut fp);
                    sys.rhs(&xm, &mut fm);
                    for r in 0..dim {
                        max_err = max_err.max(((fp[r] - fm[r]) / (2.0 * h) - j[(r, c)]).abs());
                    }
                }
                assert!(max_err <= 1e-6, "max abs error {max_err}");
            }
        }
    }

    #[test]
    fn coupling_sums_cancel() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let sys = CoupledSystem::new(Graph::cycle(5).unwrap(), mixed(), 1.0).unwrap();
        for _ in 0..50 {
            let q: Vec<f64> = (0..5).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let p: Vec<f64> = (0..5).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let (mut s01, mut s10) = (0.0, 0.0);
            for i in 0..5 {
                for &j in sys.graph.neighbors(i) {
                    s01 += sys.potential.eval(q[i] - q[j], p[i] - p[j], 0, 1);
                    s10 += sys.potential.eval(q[i] - q[j], p[i] - p[j], 1, 0);
                }
            }
            assert!(s01.abs() <= 1e-12 && s10.abs() <= 1e-12);
        }
    }

    fn permute(s: &SystemState, perm: &[usize]) -> SystemState {
        let mut out = s.clone();
        for (i, &pi) in perm.iter().enumerate() {
            out.q[pi] = s.q[i];
            out.p[pi] = s.p[i];
        }
        out
    }

    #[test]
    fn equivariance_under_automorphisms_and_sign_flip() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let k3_perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let cases: Vec<(CoupledSystem, Vec<Vec<usize>>)> = vec![
            (
                CoupledSystem::new(Graph::complete(3).unwrap(), mixed(), 0.8).unwrap(),
                k3_perms.iter().map(|p| p.to_vec()).collect(),
            ),
            (CoupledSystem::new(Graph::path(3).unwrap(), mixed(), 0.8).unwrap(), vec![vec![2, 1, 0]]),
        ];
        for (sys, perms) in &cases {
            for _ in 0..10 {
                let q: Vec<f64> = (0..3).map(|_| rng.gen_range(-2.0..2.0)).collect();
                let p: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let s = state(&q, &p);
                let f = SystemState::from_flat(&sys.vector_field(&s).unwrap(), 0.0).unwrap();
                for perm in perms {
                    assert!(sys.graph.is_automorphism(perm));
                    let lhs = sys.vector_field(&permute(&s, perm)).unwrap();
                    let rhs = permute(&f, perm).flat();
                    for (a, b) in lhs.iter().zip(&rhs) {
                        assert!((a - b).abs() <= 1e-14);
                    }
                }
                let neg = state(&q.iter().map(|v| -v).collect::<Vec<_>>(), &p.iter().map(|v| -v).collect::<Vec<_>>());
                let lhs = sys.vector_field(&neg).unwrap();
                for (a, b) in lhs.iter().zip(f.flat()) {
                    assert!((a + b).abs() <= 1e-14);
                }
            }
        }
    }

    #[test]
    fn certificate() {
        let s = state(&[0.2, 1.0 / 7.0], &[0.0, 0.0]);
        assert!(k2(0.2).bounded_motion_certificate(&s).unwrap());
        let s3 = state(&[0.2, 1.0 / 7.0, 0.1], &[0.0; 3]);
        let h = k3(0.125).hamiltonian(&s3).unwrap();
        assert!((h - (-2.87)).abs() < 5e-3);
        assert!(k3(0.125).bounded_motion_certificate(&s3).unwrap());
        let fast = state(&[0.0, 0.0], &[3.0, 0.0]);
        assert!((k2(0.0).hamiltonian(&fast).unwrap() - 2.5).abs() < 1e-15);
        assert!(!k2(0.0).bounded_motion_certificate(&fast).unwrap());
        let single = CoupledSystem::new(Graph::new(1, []).unwrap(), InteractionPotential::harmonic(), 1.0).unwrap();
        assert!(single.bounded_motion_certificate(&SystemState::origin(1)).is_err());
    }

    #[test]
    fn dimension_and_kappa_checks() {
        assert!(k2(0.1).vector_field(&SystemState::origin(3)).is_err());
        assert!(CoupledSystem::new(Graph::complete(2).unwrap(), InteractionPotential::harmonic(), -1.0).is_err());
        assert!(SystemState::new(vec![0.0], vec![0.0, 1.0]).is_err());
    }
}
