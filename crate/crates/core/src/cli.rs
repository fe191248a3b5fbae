//! Command-line front end.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::analysis::{
    bifurcation_interval, centre_of_mass, critical_couplings, dominant_frequency, lyapunov_spectrum,
};
use crate::dynamics::{CoupledSystem, InteractionPotential, SystemState};
use crate::error::{Error, Result};
use crate::graph::{
    edge_connectivity, find_sign_eigenvectors, partition_counts, sign_vector_to_partition, spectrum,
    verify_odd_balanced, Graph,
};
use crate::integrator::{integrate, IntegratorConfig};
use crate::io::{self, Metadata};
use crate::reduced::{detect_pitchfork, double_cusp_levelset, reduce, transversal_stability_map, Axis, DoubleCusp};
use crate::table1::{self, verdict};

#[derive(Parser, Debug)]
#[command(name = "pendnet", version, about = "Networks of pendula with diffusive Hamiltonian coupling")]
#[command(args_override_self = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Laplacian spectrum, sign eigenvectors, edge connectivity, critical couplings.
    Spectrum(Common),
    /// Sign eigenvectors with their induced partitions and balance checks.
    Partitions(Common),
    /// Integrate one trajectory; writes trajectory, centre-of-mass and SVG files.
    Simulate(Common),
    /// Lyapunov spectrum of one trajectory.
    Lyapunov(LyapunovArgs),
    /// Recompute the seven reference scenarios with regular/chaotic verdicts.
    Table1(Table1Args),
    /// Pitchfork branch diagrams and transversal stability maps over a coupling grid.
    Scan(ScanArgs),
    /// Centre-of-mass series, its spectrum and dominant frequency.
    Com(Common),
    /// Sample the double-cusp unfolding and locate its critical points.
    Levelset(LevelsetArgs),
}

#[derive(Args, Debug, Clone)]
#[command(args_override_self = true)]
pub struct Common {
    /// `path:N`, `cycle:N`, `complete:N` or an edge-list file.
    #[arg(long, default_value = "complete:2")]
    pub graph: String,
    /// `double-well`, `harmonic` or a coefficient file (`l m c` per line).
    #[arg(long, default_value = "double-well")]
    pub potential: String,
    #[arg(long, default_value = "0.2")]
    pub kappa: String,
    /// Coupling grid `start:stop:count`.
    #[arg(long = "kappa-range")]
    pub kappa_range: Option<String>,
    /// Comma-separated `q1..qN,p1..pN` (fractions allowed) or `random`.
    #[arg(long)]
    pub ic: Option<String>,
    /// Integration time.
    #[arg(long = "T", default_value = "100")]
    pub t: String,
    /// Absolute and relative integrator tolerance.
    #[arg(long, default_value = "1e-10")]
    pub tol: f64,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// Worker threads for grid sweeps and batch runs.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Seed for random initial conditions.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Flat `key = value` file; command-line flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct LyapunovArgs {
    #[command(flatten)]
    pub common: Common,
    /// Reorthonormalisation period.
    #[arg(long, default_value_t = 1.0)]
    pub reorth: f64,
}

#[derive(Args, Debug, Clone)]
pub struct Table1Args {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 1.0)]
    pub reorth: f64,
}

#[derive(Args, Debug, Clone)]
pub struct ScanArgs {
    #[command(flatten)]
    pub common: Common,
    /// Amplitude grid `start:stop:count` for the transversal map.
    #[arg(long = "x-range", default_value = "0:3:61")]
    pub x_range: String,
}

#[derive(Args, Debug, Clone)]
pub struct LevelsetArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
    #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
    pub beta: f64,
    #[arg(long, default_value_t = -0.25, allow_hyphen_values = true)]
    pub level: f64,
    /// Half-width of the square sampling window.
    #[arg(long, default_value_t = 1.5)]
    pub range: f64,
    #[arg(long, default_value_t = 121)]
    pub n: usize,
}

/// Parses a decimal or a fraction `a/b`.
pub fn parse_number(s: &str) -> Result<f64> {
    let s = s.trim();
    let bad = || Error::Config(format!("not a number: {s:?}"));
    let v = match s.split_once('/') {
        Some((a, b)) => {
            let (a, b): (f64, f64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
            a / b
        }
        None => s.parse().map_err(|_| bad())?,
    };
    if !v.is_finite() {
        return Err(bad());
    }
    Ok(v)
}

/// `start:stop:count`, inclusive, strictly increasing.
pub fn parse_range(s: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Config(format!("range must be start:stop:count, got {s:?}")));
    }
    let (a, b) = (parse_number(parts[0])?, parse_number(parts[1])?);
    let n: usize = parts[2].trim().parse().map_err(|_| Error::Config(format!("bad count in {s:?}")))?;
    if n < 2 || a.is_nan() || b.is_nan() || b <= a {
        return Err(Error::Config(format!("range {s:?} must be increasing with at least 2 points")));
    }
    Ok((0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect())
}

struct Scenario {
    sys: CoupledSystem,
    meta: Metadata,
}

impl Common {
    fn scenario(&self) -> Result<Scenario> {
        let graph = Graph::from_spec(&self.graph)?;
        let potential = InteractionPotential::from_spec(&self.potential)?;
        let kappa = parse_number(&self.kappa)?;
        let sys = CoupledSystem::new(graph, potential, kappa)?;
        let mut meta = Metadata::new();
        meta.set("graph", &self.graph)
            .set("potential", sys.potential.to_string())
            .set("kappa", kappa)
            .set("seed", self.seed);
        Ok(Scenario { sys, meta })
    }

    fn duration(&self) -> Result<f64> {
        parse_number(&self.t)
    }

    fn integrator(&self) -> Result<IntegratorConfig> {
        let cfg = IntegratorConfig::adaptive(self.tol);
        cfg.validate()?;
        Ok(cfg)
    }

    fn initial_state(&self, n: usize) -> Result<SystemState> {
        match self.ic.as_deref().map(str::trim) {
            None => Err(Error::Config("--ic is required".into())),
            Some("random") => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                let q = (0..n).map(|_| rng.gen_range(-0.5..0.5)).collect();
                let p = (0..n).map(|_| rng.gen_range(-0.5..0.5)).collect();
                SystemState::new(q, p)
            }
            Some(text) => {
                let vals = text.split(',').map(parse_number).collect::<Result<Vec<f64>>>()?;
                if vals.len() != 2 * n {
                    return Err(Error::Dimension { expected: 2 * n, got: vals.len() });
                }
                SystemState::from_flat(&vals, 0.0)
            }
        }
    }

    fn pool(&self) -> Result<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs.max(1))
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))
    }
}

fn fmt_vec(v: &[f64]) -> String {
    v.iter()
        .map(|x| {
            let s = format!("{x:.6}");
            // rounding noise should not print as -0
            if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') { s.trim_start_matches('-').to_string() } else { s }
        })
        .collect::<Vec<_>>()
        .join(", ")
}

fn cmd_spectrum(c: &Common, out: &mut String) -> Result<()> {
    let sc = c.scenario()?;
    let g = &sc.sys.graph;
    let spec = spectrum(g)?;
    let _ = writeln!(out, "graph: {g}");
    let _ = writeln!(out, "laplacian eigenvalues: {}", fmt_vec(&spec.eigenvalues));
    let _ = writeln!(out, "edge connectivity: {}", edge_connectivity(g));
    for v in find_sign_eigenvectors(g, true)? {
        let _ = writeln!(out, "sign eigenvector: {v}");
    }
    for cc in critical_couplings(&sc.sys)? {
        let src: Vec<String> = cc.sources.iter().map(|(l, b)| format!("{b}@{l:.6}")).collect();
        let _ = writeln!(out, "critical coupling: {:.6} (multiplicity {}; {})", cc.kappa, cc.multiplicity(), src.join(" "));
    }
    match bifurcation_interval(&sc.sys) {
        Ok(ivs) => {
            for iv in ivs {
                let _ = writeln!(
                    out,
                    "interval {}: [{:.6}, {:.6}]; actual critical range [{:.6}, {:.6}]; contained: {}",
                    iv.branch,
                    iv.lower,
                    iv.upper,
                    iv.critical_min,
                    iv.critical_max,
                    iv.contains_all()
                );
            }
        }
        Err(Error::Disconnected) => {
            let _ = writeln!(out, "interval: undefined (graph disconnected or a single node)");
        }
        Err(e) => return Err(e),
    }
    Ok(())
}

fn cmd_partitions(c: &Common, out: &mut String) -> Result<()> {
    let sc = c.scenario()?;
    let g = &sc.sys.graph;
    let vs = find_sign_eigenvectors(g, true)?;
    if vs.is_empty() {
        let _ = writeln!(out, "no sign eigenvectors");
    }
    for v in vs {
        let p = sign_vector_to_partition(&v);
        let show = |nodes: &[usize]| nodes.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(" ");
        let report = verify_odd_balanced(g, &p)?;
        let counts = match partition_counts(&v, g) {
            Ok((dp, d0)) => format!("(d_pm, d_0) = ({dp}, {d0})"),
            Err(e) => format!("counts: {e}"),
        };
        let _ = writeln!(
            out,
            "{v}: W0 = {{{}}} W+ = {{{}}} W- = {{{}}}; odd-balanced: {}; {counts}",
            show(&p.classes()[0]),
            show(&p.classes()[1]),
            show(&p.classes()[2]),
            report.balanced
        );
    }
    Ok(())
}

fn cmd_simulate(c: &Common, out: &mut String) -> Result<()> {
    let mut sc = c.scenario()?;
    let s0 = c.initial_state(sc.sys.node_count())?;
    let cfg = c.integrator()?;
    let t = c.duration()?;
    sc.meta.extend(cfg.describe()).set("T", t).set("ic", fmt_vec(&s0.flat()));
    if let Some(w) = sc.sys.potential.nonnegativity_warning() {
        let _ = writeln!(out, "warning: {w}");
    }
    let traj = integrate(&sc.sys, &s0, t, &cfg)?;
    sc.meta.set("energy_drift", format!("{:e}", traj.energy_drift));
    io::write_file(&c.out.join("trajectory.csv"), &io::trajectory_csv(&traj, &sc.meta))?;
    let com = centre_of_mass(&traj)?;
    io::write_file(&c.out.join("com.csv"), &io::com_csv(&com, &sc.meta))?;
    let series: Vec<(String, Vec<(f64, f64)>)> = (0..sc.sys.node_count())
        .map(|i| (format!("q{}", i + 1), traj.states.iter().map(|s| (s.t, s.q[i])).collect()))
        .collect();
    let refs: Vec<(&str, Vec<(f64, f64)>)> = series.iter().map(|(n, p)| (n.as_str(), p.clone())).collect();
    io::write_file(&c.out.join("trajectory.svg"), &io::svg_polylines(&format!("positions, {}", c.graph), &refs))?;
    let _ = writeln!(out, "samples: {}", traj.len());
    let _ = writeln!(out, "initial energy: {:.6}", traj.energies[0]);
    let _ = writeln!(out, "energy drift: {:e}", traj.energy_drift);
    let _ = writeln!(out, "max |q_i|: {:.6}", traj.max_abs_position());
    let _ = writeln!(out, "wrote {}", c.out.display());
    Ok(())
}

fn cmd_lyapunov(a: &LyapunovArgs, out: &mut String) -> Result<()> {
    let c = &a.common;
    let mut sc = c.scenario()?;
    let s0 = c.initial_state(sc.sys.node_count())?;
    let cfg = c.integrator()?;
    let t = c.duration()?;
    let res = lyapunov_spectrum(&sc.sys, &s0, t, a.reorth, &cfg)?;
    sc.meta
        .extend(cfg.describe())
        .set("T", t)
        .set("reorth_period", a.reorth)
        .set("ic", fmt_vec(&s0.flat()))
        .set("energy_drift", format!("{:e}", res.energy_drift))
        .set("convergence_warning", res.warning.as_deref().unwrap_or("none"));
    io::write_file(&c.out.join("lyapunov.csv"), &io::lyapunov_csv(&res, &sc.meta))?;
    let exps: Vec<String> = res.exponents.iter().map(|x| format!("{x:.3e}")).collect();
    let _ = writeln!(out, "exponents: {}", exps.join(", "));
    let _ = writeln!(out, "sum: {:.3e}  pairing defect: {:.3e}", res.sum(), res.pairing_defect());
    let _ = writeln!(out, "verdict: {}", verdict(res.max_exponent()));
    if let Some(w) = &res.warning {
        let _ = writeln!(out, "warning: {w}");
    }
    Ok(())
}

fn cmd_table1(a: &Table1Args, out: &mut String) -> Result<()> {
    let c = &a.common;
    let cfg = c.integrator()?;
    let t = c.duration()?;
    let results: Vec<Result<(f64, crate::analysis::LyapunovResult)>> = c.pool()?.install(|| {
        table1::ROWS
            .par_iter()
            .map(|row| {
                let sys = row.system()?;
                let s0 = row.initial_state();
                Ok((sys.hamiltonian(&s0)?, lyapunov_spectrum(&sys, &s0, t, a.reorth, &cfg)?))
            })
            .collect()
    });
    let mut meta = Metadata::new();
    meta.extend(cfg.describe()).set("T", t).set("reorth_period", a.reorth).set("potential", "double-well");
    let mut rows = Vec::new();
    for (row, r) in table1::ROWS.iter().zip(results) {
        let (h, res) = r?;
        let v = verdict(res.max_exponent());
        let expected = if row.reference_regular { "REGULAR" } else { "CHAOTIC" };
        let _ = writeln!(
            out,
            "{:<24} E = {h:.4} (ref {:.2})  max exponent {:.3e} (ref {:.1e})  {v} (ref {expected})",
            row.label(),
            row.reference_energy,
            res.max_exponent(),
            row.reference_max_exponent()
        );
        rows.push(format!(
            "{},{},{h:e},{},{:e},{:e},{v},{expected}",
            row.graph,
            row.kappa,
            row.reference_energy,
            res.max_exponent(),
            row.reference_max_exponent()
        ));
    }
    let mut text = meta.header();
    text.push_str("graph,kappa,energy,reference_energy,max_exponent,reference_max_exponent,verdict,reference_verdict\n");
    for r in rows {
        text.push_str(&r);
        text.push('\n');
    }
    io::write_file(&c.out.join("table1.csv"), &text)?;
    Ok(())
}

fn cmd_scan(a: &ScanArgs, out: &mut String) -> Result<()> {
    let c = &a.common;
    let mut sc = c.scenario()?;
    let range = c.kappa_range.as_deref().unwrap_or("0.05:0.6:551");
    let kappas = parse_range(range)?;
    let xs = parse_range(&a.x_range)?;
    sc.meta.set("kappa_range", range).set("x_range", &a.x_range);
    let vs = find_sign_eigenvectors(&sc.sys.graph, true)?;
    if vs.is_empty() {
        let _ = writeln!(out, "no sign eigenvectors: nothing to scan");
    }
    let pool = c.pool()?;
    for (idx, v) in vs.iter().enumerate() {
        let mut meta = sc.meta.clone();
        meta.set("sign_vector", v);
        let tag = idx + 1;
        let _ = writeln!(out, "sign eigenvector {tag}: {v}");
        match reduce(&sc.sys, v) {
            Ok(rs) => {
                let diagram = pool.install(|| detect_pitchfork(&rs, &kappas))?;
                io::write_file(&c.out.join(format!("branch_{tag}.csv")), &io::branch_csv(&diagram, &meta))?;
                for b in diagram.bifurcations.iter().filter(|b| b.is_pitchfork()) {
                    let axis = if b.axis == Axis::X { "x" } else { "y" };
                    let _ = writeln!(
                        out,
                        "  pitchfork on {axis}-axis at kappa ~ {:.6} (refined {:.8}); d3g = {:.4} (closed {:.4}); d2g/dkdx = {:.4} (closed {:.4})",
                        b.kappa,
                        b.kappa_refined,
                        b.third_derivative,
                        b.third_derivative_closed,
                        b.mixed_derivative,
                        b.mixed_derivative_closed
                    );
                }
                for w in &diagram.warnings {
                    let _ = writeln!(out, "  warning: {w}");
                }
                let branch: Vec<(f64, f64)> = diagram
                    .kappas
                    .iter()
                    .zip(&diagram.equilibria)
                    .flat_map(|(&k, eqs)| eqs.iter().filter(|e| e.y == 0.0).map(move |e| (k, e.x)))
                    .collect();
                io::write_file(
                    &c.out.join(format!("branch_{tag}.svg")),
                    &io::svg_polylines(&format!("axis equilibria vs kappa, {v}"), &[("x_eq", branch)]),
                )?;
            }
            Err(e) => {
                let _ = writeln!(out, "  no reduced system: {e}");
            }
        }
        let cells = pool.install(|| transversal_stability_map(&sc.sys, v, &xs, &kappas))?;
        io::write_file(&c.out.join(format!("stability_{tag}.csv")), &io::stability_csv(&cells, &meta))?;
        // first coupling at which the origin turns transversally unstable
        let at_origin: Vec<_> = cells.iter().filter(|cell| cell.x == xs[0]).collect();
        if let Some(first) = at_origin.iter().find(|cell| !cell.stable) {
            let _ = writeln!(out, "  transversal instability at x = {} from kappa ~ {:.6}", xs[0], first.kappa);
        }
    }
    let _ = writeln!(out, "wrote {}", c.out.display());
    Ok(())
}

fn cmd_com(c: &Common, out: &mut String) -> Result<()> {
    let mut sc = c.scenario()?;
    let s0 = c.initial_state(sc.sys.node_count())?;
    let cfg = c.integrator()?;
    let t = c.duration()?;
    sc.meta.extend(cfg.describe()).set("T", t).set("ic", fmt_vec(&s0.flat()));
    let traj = integrate(&sc.sys, &s0, t, &cfg)?;
    let com = centre_of_mass(&traj)?;
    io::write_file(&c.out.join("com.csv"), &io::com_csv(&com, &sc.meta))?;
    io::write_file(&c.out.join("com_spectrum.csv"), &io::spectrum_csv(&com.spectrum()?, &sc.meta))?;
    let _ = writeln!(out, "max |q_bar|, |p_bar|: {:e}", com.max_abs());
    let _ = writeln!(out, "momentum residual: {:.3e}", com.momentum_residual());
    match dominant_frequency(&com) {
        Ok(w) => {
            let _ = writeln!(out, "dominant angular frequency: {w:.6}");
        }
        Err(Error::NoOscillation) => {
            let _ = writeln!(out, "dominant angular frequency: none (no oscillation)");
        }
        Err(e) => return Err(e),
    }
    Ok(())
}

fn cmd_levelset(a: &LevelsetArgs, out: &mut String) -> Result<()> {
    let cusp = DoubleCusp { a: a.a, alpha: a.alpha, beta: a.beta };
    let ls = double_cusp_levelset(cusp, a.range, a.n, a.level)?;
    let mut meta = Metadata::new();
    meta.set("a", a.a).set("alpha", a.alpha).set("beta", a.beta).set("level", a.level).set("range", a.range).set("n", a.n);
    io::write_file(&a.common.out.join("levelset.csv"), &io::levelset_csv(&ls, &meta))?;
    if let Some(w) = &ls.warning {
        let _ = writeln!(out, "warning: {w}");
    }
    for p in &ls.critical_points {
        let _ = writeln!(out, "critical point ({:.6}, {:.6}) F = {:.6} {:?}", p.x, p.y, p.value, p.kind);
    }
    Ok(())
}

/// Expands `--config FILE` into flags placed before the user's own, so the
/// command line wins.
fn expand_config(args: Vec<OsString>) -> Result<Vec<OsString>> {
    let pos = args.iter().position(|a| a == "--config");
    let Some(pos) = pos else { return Ok(args) };
    let path = args.get(pos + 1).ok_or_else(|| Error::Config("--config needs a file".into()))?;
    let map: BTreeMap<String, String> = io::parse_config(&std::fs::read_to_string(Path::new(path))?)?;
    let mut out: Vec<OsString> = args[..2.min(args.len())].to_vec();
    for (k, v) in map {
        out.push(format!("--{k}").into());
        out.push(v.into());
    }
    out.extend(args.iter().enumerate().skip(2).filter(|(i, _)| *i != pos && *i != pos + 1).map(|(_, a)| a.clone()));
    Ok(out)
}

/// Runs the tool on `args` (including the program name) and returns the
/// text destined for stdout.
pub fn run<I, T>(args: I) -> Result<String>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args = expand_config(args.into_iter().map(Into::into).collect())?;
    let cli = Cli::try_parse_from(args).map_err(|e| Error::Config(e.render().to_string()))?;
    let mut out = String::new();
    match &cli.command {
        Command::Spectrum(c) => cmd_spectrum(c, &mut out)?,
        Command::Partitions(c) => cmd_partitions(c, &mut out)?,
        Command::Simulate(c) => cmd_simulate(c, &mut out)?,
        Command::Lyapunov(a) => cmd_lyapunov(a, &mut out)?,
        Command::Table1(a) => cmd_table1(a, &mut out)?,
        Command::Scan(a) => cmd_scan(a, &mut out)?,
        Command::Com(c) => cmd_com(c, &mut out)?,
        Command::Levelset(a) => cmd_levelset(a, &mut out)?,
    }
    Ok(out)
}

/// Process entry point: prints output and maps errors to exit codes.
pub fn main_entry() -> i32 {
    let args: Vec<OsString> = std::env::args_os().collect();
    // let clap handle help and version itself
    if args.iter().skip(1).any(|a| a == "--help" || a == "-h" || a == "--version" || a == "-V") || args.len() == 1 {
        Cli::parse_from(args);
        return 0;
    }
    match run(args) {
        Ok(text) => {
            print!("{text}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_and_ranges() {
        assert_eq!(parse_number("1/5").unwrap(), 0.2);
        assert_eq!(parse_number(" -0.5 ").unwrap(), -0.5);
        assert!(parse_number("x").is_err());
        assert!(parse_number("1/0").is_err());
        assert_eq!(parse_range("0:1:3").unwrap(), vec![0.0, 0.5, 1.0]);
        assert!(parse_range("1:0:3").is_err());
        assert!(parse_range("0:1:1").is_err());
    }

    #[test]
    fn spectrum_command() {
        let out = run(["pendnet", "spectrum", "--graph", "complete:3"]).unwrap();
        assert!(out.contains("laplacian eigenvalues: 0.000000, 3.000000, 3.000000"), "{out}");
        assert!(out.contains("edge connectivity: 2"));
        let out = run(["pendnet", "spectrum", "--graph", "path:3"]).unwrap();
        assert!(out.contains("0.000000, 1.000000, 3.000000") && out.contains("edge connectivity: 1"));
    }

    #[test]
    fn input_errors_map_to_exit_code_two() {
        let e = run(["pendnet", "spectrum", "--graph", "banana:3"]).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        let e = run(["pendnet", "simulate", "--ic", "1,2,3"]).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        let e = run(["pendnet", "frobnicate"]).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn config_file_with_override() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("run.cfg");
        std::fs::write(&cfg, "graph = path:4\nkappa = 0.3\n").unwrap();
        let out = run(["pendnet", "spectrum", "--config", cfg.to_str().unwrap()]).unwrap();
        assert!(out.contains("graph(n=4"), "{out}");
        let out = run(["pendnet", "spectrum", "--config", cfg.to_str().unwrap(), "--graph", "complete:3"]).unwrap();
        assert!(out.contains("graph(n=3"), "{out}");
    }
}
