//! CSV and SVG emission plus the flat `key = value` config format.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::analysis::{ComSeries, LyapunovResult};
use crate::error::{Error, Result};
use crate::integrator::Trajectory;
use crate::reduced::{BranchDiagram, LevelSet, StabilityCell};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Ordered settings written as `# key = value` lines at the top of every
/// output, followed by a hash of the settings themselves.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Metadata {
    entries: BTreeMap<String, String>,
}

impl Metadata {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.entries.insert(key.into(), value.to_string());
        self
    }

    pub fn extend(&mut self, pairs: impl IntoIterator<Item = (String, String)>) -> &mut Self {
        self.entries.extend(pairs);
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn config_hash(&self) -> String {
        let mut h = Sha256::new();
        for (k, v) in &self.entries {
            h.update(k.as_bytes());
            h.update(b"=");
            h.update(v.as_bytes());
            h.update(b"\n");
        }
        h.finalize().iter().take(8).map(|b| format!("{b:02x}")).collect()
    }

    pub fn header(&self) -> String {
        let mut out = format!("# tool = pendnet {TOOL_VERSION}\n# config_hash = {}\n", self.config_hash());
        for (k, v) in &self.entries {
            let _ = writeln!(out, "# {k} = {}", v.replace('\n', " "));
        }
        out
    }
}

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse { line: idx + 1, msg: format!("expected key = value, got {line:?}") })?;
        let key = k.trim();
        if key.is_empty() {
            return Err(Error::Parse { line: idx + 1, msg: "empty key".into() });
        }
        out.insert(key.to_string(), v.trim().to_string());
    }
    Ok(out)
}

fn csv(meta: &Metadata, header: &[String], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = meta.header();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn num(v: f64) -> String {
    format!("{v:e}")
}

pub fn trajectory_csv(traj: &Trajectory, meta: &Metadata) -> String {
    let n = traj.states.first().map_or(0, |s| s.len());
    let mut header = vec!["t".to_string()];
    header.extend((1..=n).map(|i| format!("q{i}")));
    header.extend((1..=n).map(|i| format!("p{i}")));
    header.push("H".into());
    let rows = traj.states.iter().zip(&traj.energies).map(|(s, h)| {
        let mut row = vec![num(s.t)];
        row.extend(s.q.iter().chain(&s.p).map(|&v| num(v)));
        row.push(num(*h));
        row
    });
    csv(meta, &header, rows)
}

pub fn lyapunov_csv(res: &LyapunovResult, meta: &Metadata) -> String {
    let d = res.exponents.len();
    let mut header = vec!["checkpoint_time".to_string()];
    header.extend((1..=d).map(|k| format!("lambda_{k}")));
    let mut rows: Vec<Vec<String>> = res
        .history
        .iter()
        .map(|(t, v)| std::iter::once(num(*t)).chain(v.iter().map(|&x| num(x))).collect())
        .collect();
    rows.push(std::iter::once("final".to_string()).chain(res.exponents.iter().map(|&x| num(x))).collect());
    csv(meta, &header, rows)
}

pub fn com_csv(com: &ComSeries, meta: &Metadata) -> String {
    let header: Vec<String> = ["t", "q_bar", "p_bar"].map(String::from).to_vec();
    let rows = (0..com.len()).map(|k| vec![num(com.times[k]), num(com.q_bar[k]), num(com.p_bar[k])]);
    csv(meta, &header, rows)
}

pub fn spectrum_csv(spec: &[(f64, f64)], meta: &Metadata) -> String {
    let header: Vec<String> = ["omega", "amplitude"].map(String::from).to_vec();
    csv(meta, &header, spec.iter().map(|&(w, a)| vec![num(w), num(a)]))
}

pub fn branch_csv(d: &BranchDiagram, meta: &Metadata) -> String {
    let header: Vec<String> = ["kappa", "x_eq", "y_eq", "class"].map(String::from).to_vec();
    let rows = d.kappas.iter().zip(&d.equilibria).flat_map(|(&k, eqs)| {
        eqs.iter().map(move |e| vec![num(k), num(e.x), num(e.y), e.class.to_string()])
    });
    csv(meta, &header, rows)
}

pub fn stability_csv(cells: &[StabilityCell], meta: &Metadata) -> String {
    let header: Vec<String> = ["x", "kappa", "stable"].map(String::from).to_vec();
    csv(meta, &header, cells.iter().map(|c| vec![num(c.x), num(c.kappa), (c.stable as u8).to_string()]))
}

pub fn levelset_csv(ls: &LevelSet, meta: &Metadata) -> String {
    let header: Vec<String> = ["x", "y", "F"].map(String::from).to_vec();
    let nx = ls.xs.len();
    let rows = ls
        .ys
        .iter()
        .enumerate()
        .flat_map(|(j, &y)| ls.xs.iter().enumerate().map(move |(i, &x)| (i, j, x, y)))
        .map(|(i, j, x, y)| vec![num(x), num(y), num(ls.values[j * nx + i])]);
    csv(meta, &header, rows)
}

/// Minimal SVG with a frame and one polyline per series.
pub fn svg_polylines(title: &str, series: &[(&str, Vec<(f64, f64)>)]) -> String {
    const W: f64 = 640.0;
    const H: f64 = 400.0;
    const M: f64 = 40.0;
    let pts = series.iter().flat_map(|s| s.1.iter()).filter(|p| p.0.is_finite() && p.1.is_finite());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !x0.is_finite() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    if x1 - x0 <= 0.0 {
        x1 = x0 + 1.0;
    }
    if y1 - y0 <= 0.0 {
        y1 = y0 + 1.0;
    }
    let sx = |x: f64| M + (x - x0) / (x1 - x0) * (W - 2.0 * M);
    let sy = |y: f64| H - M - (y - y0) / (y1 - y0) * (H - 2.0 * M);
    let colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n"
    );
    let _ = writeln!(out, "<rect x=\"{M}\" y=\"{M}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>", W - 2.0 * M, H - 2.0 * M);
    let _ = writeln!(out, "<text x=\"{M}\" y=\"{}\" font-size=\"14\">{}</text>", M - 12.0, escape(title));
    let _ = writeln!(out, "<text x=\"{M}\" y=\"{}\" font-size=\"11\">x: [{x0:.4}, {x1:.4}]  y: [{y0:.4}, {y1:.4}]</text>", H - 12.0);
    for (k, (name, pts)) in series.iter().enumerate() {
        let path: Vec<String> = pts
            .iter()
            .filter(|p| p.0.is_finite() && p.1.is_finite())
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        let _ = writeln!(
            out,
            "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1\" points=\"{}\"><title>{}</title></polyline>",
            colors[k % colors.len()],
            path.join(" "),
            escape(name)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(path, contents)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_parsing() {
        let cfg = parse_config("# comment\ngraph = path:3\nkappa=0.25 # trailing\n\n").unwrap();
        assert_eq!(cfg["graph"], "path:3");
        assert_eq!(cfg["kappa"], "0.25");
        assert!(matches!(parse_config("oops"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn metadata_hash_is_order_independent_and_sensitive() {
        let mut a = Metadata::new();
        a.set("kappa", 0.2).set("graph", "complete:2");
        let mut b = Metadata::new();
        b.set("graph", "complete:2").set("kappa", 0.2);
        assert_eq!(a.config_hash(), b.config_hash());
        b.set("kappa", 0.3);
        assert_ne!(a.config_hash(), b.config_hash());
        assert!(a.header().starts_with("# tool = pendnet"));
    }

    #[test]
    fn svg_is_well_formed() {
        let svg = svg_polylines("a < b", &[("q1", vec![(0.0, 1.0), (1.0, 2.0)]), ("empty", vec![])]);
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains("a &lt; b"));
        assert_eq!(svg.matches("<polyline").count(), 2);
    }
}
