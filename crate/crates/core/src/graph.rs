//! Coupling topology: simple undirected graphs, their Laplacian spectra,
//! edge-connectivity, and the sign eigenvectors that carry anti-synchrony
//! patterns.
//!
//! Nodes are indexed from 0 internally. The text formats use 1-based labels.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::path::Path;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Largest node count for which the sign-vector search enumerates all of
/// {-1, 0, 1}^n.
pub const EXHAUSTIVE_CAP: usize = 16;

const JACOBI_TOL: f64 = 1e-12;
const JACOBI_MAX_SWEEPS: usize = 100;

/// A simple undirected graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from 0-based edges. Rejects self-loops, duplicates and
    /// out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("node count must be at least 1".into()));
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {{{}, {}}} references a node outside 1..={n}",
                    a + 1,
                    b + 1
                )));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at node {}", a + 1)));
            }
            let e = (a.min(b), a.max(b));
            if !set.insert(e) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge {{{}, {}}}",
                    e.0 + 1,
                    e.1 + 1
                )));
            }
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut neighbors = vec![Vec::new(); n];
        for &(a, b) in &edges {
            neighbors[a].push(b);
            neighbors[b].push(a);
        }
        for nb in &mut neighbors {
            nb.sort_unstable();
        }
        Ok(Self { n, edges, neighbors })
    }

    pub fn path(n: usize) -> Result<Self> {
        Self::new(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGraph("a cycle needs at least 3 nodes".into()));
        }
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn complete(n: usize) -> Result<Self> {
        Self::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
    }

    /// Parses `path:N`, `cycle:N`, `complete:N`, or falls back to reading an
    /// edge-list file.
    pub fn from_spec(spec: &str) -> Result<Self> {
        if let Some((kind, count)) = spec.split_once(':') {
            let parsed = count.trim().parse::<usize>();
            let generator = match kind.trim() {
                "path" => Some(Self::path as fn(usize) -> Result<Self>),
                "cycle" => Some(Self::cycle as fn(usize) -> Result<Self>),
                "complete" => Some(Self::complete as fn(usize) -> Result<Self>),
                _ => None,
            };
            if let Some(generator) = generator {
                let n = parsed.map_err(|_| {
                    Error::InvalidGraph(format!("bad node count in generator `{spec}`"))
                })?;
                return generator(n);
            }
        }
        let text = std::fs::read_to_string(Path::new(spec)).map_err(|e| {
            Error::InvalidGraph(format!(
                "`{spec}` is neither path:N, cycle:N, complete:N nor a readable edge-list file ({e})"
            ))
        })?;
        Self::parse_edge_list(&text)
    }

    /// Parses the plain-text edge list: a header `n <count>` followed by one
    /// 1-based `i j` pair per line. Blank lines and `#` comments are skipped.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut n = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let first = parts.next().unwrap();
            let second = parts.next();
            if parts.next().is_some() {
                return Err(Error::Parse { line: line_no, msg: "expected two fields".into() });
            }
            let Some(second) = second else {
                return Err(Error::Parse { line: line_no, msg: "expected two fields".into() });
            };
            if n.is_none() {
                if first != "n" {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: "missing header `n <count>`".into(),
                    });
                }
                n = Some(second.parse::<usize>().map_err(|e| Error::Parse {
                    line: line_no,
                    msg: format!("bad node count: {e}"),
                })?);
                continue;
            }
            let parse = |s: &str| {
                s.parse::<usize>()
                    .ok()
                    .filter(|&v| v >= 1)
                    .ok_or_else(|| Error::Parse {
                        line: line_no,
                        msg: format!("bad node label `{s}` (labels are 1-based)"),
                    })
            };
            edges.push((parse(first)? - 1, parse(second)? - 1));
        }
        let n = n.ok_or(Error::Parse { line: 0, msg: "empty edge list".into() })?;
        Self::new(n, edges)
    }

    /// Writes the graph in the edge-list format accepted by [`Graph::parse_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for &(a, b) in &self.edges {
            out.push_str(&format!("{} {}\n", a + 1, b + 1));
        }
        out
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors[i].len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.neighbors[i].binary_search(&j).is_ok()
    }

    pub fn adjacency(&self) -> DMatrix<i64> {
        let mut a = DMatrix::zeros(self.n, self.n);
        for &(i, j) in &self.edges {
            a[(i, j)] = 1;
            a[(j, i)] = 1;
        }
        a
    }

    /// Combinatorial Laplacian `D - A`.
    pub fn laplacian(&self) -> DMatrix<i64> {
        let mut l = -self.adjacency();
        for i in 0..self.n {
            l[(i, i)] = self.degree(i) as i64;
        }
        l
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &self.neighbors[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == self.n
    }

    /// Image of the graph under a node relabeling `perm[i]`; used to check
    /// automorphisms.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        Self::new(self.n, self.edges.iter().map(|&(a, b)| (perm[a], perm[b])))
    }

    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        perm.len() == self.n && self.permuted(perm).map(|g| g == *self).unwrap_or(false)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "graph(n={}, |E|={})", self.n, self.edges.len())
    }
}

/// Ascending eigenvalues of the Laplacian with an orthonormal eigenbasis
/// (column `k` of `eigenvectors` pairs with `eigenvalues[k]`).
#[derive(Clone, Debug)]
pub struct LaplacianSpectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: DMatrix<f64>,
}

impl LaplacianSpectrum {
    pub fn eigenvector(&self, k: usize) -> DVector<f64> {
        self.eigenvectors.column(k).into_owned()
    }

    /// Strictly positive eigenvalues (above `tol`), ascending.
    pub fn nonzero(&self, tol: f64) -> Vec<f64> {
        self.eigenvalues.iter().copied().filter(|&l| l > tol).collect()
    }
}

/// Full eigendecomposition of the graph Laplacian by cyclic Jacobi rotations.
pub fn spectrum(g: &Graph) -> Result<LaplacianSpectrum> {
    let l = g.laplacian().map(|v| v as f64);
    let (values, vectors) = jacobi_eigen(l)?;
    Ok(LaplacianSpectrum { eigenvalues: values, eigenvectors: vectors })
}

/// Cyclic Jacobi eigensolver for a real symmetric matrix. Returns ascending
/// eigenvalues and the matching orthonormal eigenvector columns.
pub fn jacobi_eigen(mut a: DMatrix<f64>) -> Result<(Vec<f64>, DMatrix<f64>)> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "jacobi_eigen needs a square matrix");
    let mut v = DMatrix::<f64>::identity(n, n);
    let scale = a.norm().max(1.0);
    let off_norm = |a: &DMatrix<f64>| {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[(i, j)] * a[(i, j)];
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    loop {
        let off = off_norm(&a);
        if off <= JACOBI_TOL * scale {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok((values, vectors))
}

/// Global edge-connectivity: the minimum over targets `t != 0` of the unit
/// capacity max-flow between node 0 and `t`. Returns 0 for disconnected
/// graphs and for the single-node graph.
pub fn edge_connectivity(g: &Graph) -> usize {
    if g.n < 2 || !g.is_connected() {
        return 0;
    }
    (1..g.n).map(|t| max_flow_unit(g, 0, t)).min().unwrap_or(0)
}

/// Edmonds-Karp on the undirected graph with every edge of capacity 1 in
/// both directions.
fn max_flow_unit(g: &Graph, s: usize, t: usize) -> usize {
    let n = g.n;
    let mut cap = vec![vec![0i32; n]; n];
    for &(a, b) in &g.edges {
        cap[a][b] = 1;
        cap[b][a] = 1;
    }
    let mut flow = 0;
    loop {
        let mut parent = vec![usize::MAX; n];
        parent[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if u == t {
                break;
            }
            for &v in &g.neighbors[u] {
                if parent[v] == usize::MAX && cap[u][v] > 0 {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if parent[t] == usize::MAX {
            return flow;
        }
        let mut v = t;
        while v != s {
            let u = parent[v];
            cap[u][v] -= 1;
            cap[v][u] += 1;
            v = u;
        }
        flow += 1;
    }
}

/// A Laplacian eigenvector with entries in {-1, 0, 1} and its (integer)
/// eigenvalue. Bivalent when no entry is zero, trivalent otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector {
    pub entries: Vec<i8>,
    pub lambda: i64,
}

impl SignVector {
    /// Checks `L v = lambda v` exactly and returns the validated vector.
    pub fn new(g: &Graph, entries: Vec<i8>) -> Result<Self> {
        if entries.len() != g.n {
            return Err(Error::Dimension { expected: g.n, got: entries.len() });
        }
        if entries.iter().any(|&e| !(-1..=1).contains(&e)) {
            return Err(Error::Domain("sign vector entries must lie in {-1, 0, 1}".into()));
        }
        exact_eigenvalue(g, &entries)
            .map(|lambda| Self { entries, lambda })
            .ok_or_else(|| Error::Domain("not an exact Laplacian sign eigenvector".into()))
    }

    pub fn is_bivalent(&self) -> bool {
        self.entries.iter().all(|&e| e != 0)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn as_f64(&self) -> DVector<f64> {
        DVector::from_iterator(self.entries.len(), self.entries.iter().map(|&e| e as f64))
    }

    pub fn negated(&self) -> Self {
        Self { entries: self.entries.iter().map(|&e| -e).collect(), lambda: self.lambda }
    }

    /// Representative of `{v, -v}` whose first non-zero entry is -1.
    pub fn canonical(&self) -> Self {
        match self.entries.iter().find(|&&e| e != 0) {
            Some(&1) => self.negated(),
            _ => self.clone(),
        }
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "({}) lambda={}", body.join(","), self.lambda)
    }
}

/// Exact integer eigenvalue of `L v` for a {-1,0,1} vector carrying both
/// signs, or `None` when `v` is not an eigenvector.
fn exact_eigenvalue(g: &Graph, v: &[i8]) -> Option<i64> {
    if !v.contains(&1) || !v.contains(&-1) {
        return None;
    }
    let mut lambda = None;
    for i in 0..g.n {
        let lv = g.degree(i) as i64 * v[i] as i64
            - g.neighbors[i].iter().map(|&j| v[j] as i64).sum::<i64>();
        if v[i] == 0 {
            if lv != 0 {
                return None;
            }
            continue;
        }
        let ratio = lv * v[i] as i64;
        match lambda {
            None => lambda = Some(ratio),
            Some(l) if l != ratio => return None,
            _ => {}
        }
    }
    lambda.filter(|&l| l >= 0)
}

/// All sign eigenvectors of the Laplacian, one per `{v, -v}` pair, sorted.
///
/// Vectors must contain both a +1 and a -1 entry; the constant vector spans
/// synchrony and is excluded. For `n <= EXHAUSTIVE_CAP` every candidate is
/// enumerated; above that, numerical eigenvectors are rounded to sign
/// patterns and kept when they verify exactly.
pub fn find_sign_eigenvectors(g: &Graph, allow_zero: bool) -> Result<Vec<SignVector>> {
    find_sign_eigenvectors_with(g, allow_zero, true)
}

pub fn find_sign_eigenvectors_with(
    g: &Graph,
    allow_zero: bool,
    rounding_fallback: bool,
) -> Result<Vec<SignVector>> {
    let mut found = BTreeSet::new();
    if g.n <= EXHAUSTIVE_CAP {
        let alphabet: &[i8] = if allow_zero { &[-1, 0, 1] } else { &[-1, 1] };
        let base = alphabet.len();
        let total = base.pow(g.n as u32);
        let mut digits = vec![0usize; g.n];
        let mut v = vec![alphabet[0]; g.n];
        for _ in 0..total {
            for (slot, &d) in v.iter_mut().zip(&digits) {
                *slot = alphabet[d];
            }
            // first non-zero entry -1 picks one representative per sign pair
            if v.iter().find(|&&e| e != 0) == Some(&-1) {
                if let Some(lambda) = exact_eigenvalue(g, &v) {
                    found.insert(SignVector { entries: v.clone(), lambda });
                }
            }
            for d in digits.iter_mut() {
                *d += 1;
                if *d < base {
                    break;
                }
                *d = 0;
            }
        }
    } else if rounding_fallback {
        let spec = spectrum(g)?;
        for k in 0..g.n {
            let col = spec.eigenvector(k);
            let amax = col.amax();
            if amax == 0.0 {
                continue;
            }
            let v: Vec<i8> = col
                .iter()
                .map(|&x| {
                    let s = x / amax;
                    if s.abs() < 0.5 {
                        0
                    } else {
                        s.signum() as i8
                    }
                })
                .collect();
            if !allow_zero && v.contains(&0) {
                continue;
            }
            if let Some(lambda) = exact_eigenvalue(g, &v) {
                found.insert(SignVector { entries: v, lambda }.canonical());
            }
        }
    } else {
        return Err(Error::SearchIncomplete { n: g.n, cap: EXHAUSTIVE_CAP });
    }
    Ok(found.into_iter().collect())
}

/// Odd partition of the nodes with a sign-flipping matching of the classes.
///
/// Class 0 is always the fixed class `W0` (possibly empty). The remaining
/// classes come in matched pairs with opposite signs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchedPartition {
    n: usize,
    classes: Vec<Vec<usize>>,
    matching: Vec<usize>,
    signs: Vec<i8>,
    class_of: Vec<usize>,
}

impl MatchedPartition {
    /// Builds a partition from explicit classes and a matching. `signs[c]`
    /// is 0 for the fixed class and +-1 otherwise.
    pub fn new(
        n: usize,
        classes: Vec<Vec<usize>>,
        matching: Vec<usize>,
        signs: Vec<i8>,
    ) -> Result<Self> {
        let k = classes.len();
        if k.is_multiple_of(2) {
            return Err(Error::Structural(format!("class count {k} is even")));
        }
        if matching.len() != k || signs.len() != k {
            return Err(Error::Structural("matching/signs length differs from class count".into()));
        }
        let mut class_of = vec![usize::MAX; n];
        for (c, members) in classes.iter().enumerate() {
            for &i in members {
                if i >= n {
                    return Err(Error::Structural(format!("node {} out of range", i + 1)));
                }
                if class_of[i] != usize::MAX {
                    return Err(Error::Structural(format!("node {} in two classes", i + 1)));
                }
                class_of[i] = c;
            }
        }
        if let Some(i) = class_of.iter().position(|&c| c == usize::MAX) {
            return Err(Error::Structural(format!("node {} is not covered", i + 1)));
        }
        let mut fixed = Vec::new();
        for c in 0..k {
            let m = matching[c];
            if m >= k || matching[m] != c {
                return Err(Error::Structural("matching is not an involution".into()));
            }
            if m == c {
                fixed.push(c);
            } else if signs[c] * signs[m] != -1 {
                return Err(Error::Structural("matched classes must carry opposite signs".into()));
            }
        }
        if fixed != [0] {
            return Err(Error::Structural(
                "matching must have exactly one fixed class, stored at index 0".into(),
            ));
        }
        if signs[0] != 0 {
            return Err(Error::Structural("the fixed class carries sign 0".into()));
        }
        Ok(Self { n, classes, matching, signs, class_of })
    }

    /// Single-letter partition `{W0, W+, W-}` from 0-based node lists.
    pub fn single(n: usize, w0: Vec<usize>, plus: Vec<usize>, minus: Vec<usize>) -> Result<Self> {
        Self::new(n, vec![w0, plus, minus], vec![0, 2, 1], vec![0, 1, -1])
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn fixed_class(&self) -> &[usize] {
        &self.classes[0]
    }

    pub fn matched(&self, c: usize) -> usize {
        self.matching[c]
    }

    pub fn sign(&self, c: usize) -> i8 {
        self.signs[c]
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    /// Orthonormal basis of the position (or momentum) part of the
    /// anti-synchrony subspace: one direction per matched pair.
    pub fn subspace_basis(&self) -> DMatrix<f64> {
        let pairs: Vec<usize> =
            (1..self.classes.len()).filter(|&c| self.signs[c] == 1).collect();
        let mut b = DMatrix::zeros(self.n, pairs.len());
        for (col, &c) in pairs.iter().enumerate() {
            let m = self.matching[c];
            let size = (self.classes[c].len() + self.classes[m].len()) as f64;
            let w = 1.0 / size.sqrt();
            for &i in &self.classes[c] {
                b[(i, col)] = w;
            }
            for &i in &self.classes[m] {
                b[(i, col)] = -w;
            }
        }
        b
    }

    /// Euclidean distance of `x` from the subspace `{x_i = -x_j when [i] = -[j],
    /// x_i = x_j when [i] = [j], x_i = 0 on W0}`.
    pub fn distance(&self, x: &[f64]) -> f64 {
        let b = self.subspace_basis();
        let x = DVector::from_column_slice(x);
        let proj = &b * (b.transpose() * &x);
        (x - proj).norm()
    }
}

/// First violated balance condition: class `class`, nodes `i` and `j`
/// (equal for the fixed-class condition).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub class: usize,
    pub i: usize,
    pub j: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalanceReport {
    pub balanced: bool,
    pub violation: Option<Violation>,
}

fn class_degree(g: &Graph, p: &MatchedPartition, i: usize, class: usize) -> usize {
    g.neighbors[i].iter().filter(|&&j| p.class_of[j] == class).count()
}

/// Checks both odd-balance degree conditions for every class and node pair.
pub fn verify_odd_balanced(g: &Graph, p: &MatchedPartition) -> Result<BalanceReport> {
    if p.n != g.n {
        return Err(Error::Structural(format!(
            "partition covers {} nodes, graph has {}",
            p.n, g.n
        )));
    }
    let k = p.classes.len();
    for i in 0..g.n {
        let ci = p.class_of[i];
        if ci == 0 {
            for w in 1..k {
                if class_degree(g, p, i, w) != class_degree(g, p, i, p.matching[w]) {
                    return Ok(BalanceReport {
                        balanced: false,
                        violation: Some(Violation { class: w, i, j: i }),
                    });
                }
            }
            continue;
        }
        for &j in &p.classes[p.matching[ci]] {
            for w in (0..k).filter(|&w| w != ci) {
                if class_degree(g, p, i, w) != class_degree(g, p, j, p.matching[w]) {
                    return Ok(BalanceReport {
                        balanced: false,
                        violation: Some(Violation { class: w, i, j }),
                    });
                }
            }
        }
    }
    Ok(BalanceReport { balanced: true, violation: None })
}

/// Partition `{W0 = Z, W+ = P, W- = N}` induced by the zero, +1 and -1
/// entries of a sign vector.
pub fn sign_vector_to_partition(v: &SignVector) -> MatchedPartition {
    let pick = |s: i8| -> Vec<usize> {
        v.entries.iter().enumerate().filter(|(_, &e)| e == s).map(|(i, _)| i).collect()
    };
    MatchedPartition::single(v.len(), pick(0), pick(1), pick(-1))
        .expect("a sign vector always induces a valid single-letter partition")
}

/// Class-constant degree counts `(d_pm, d_0)` of a sign vector: the number of
/// opposite-sign neighbours and of zero neighbours of any non-zero node.
pub fn partition_counts(v: &SignVector, g: &Graph) -> Result<(usize, usize)> {
    if v.len() != g.n {
        return Err(Error::Dimension { expected: g.n, got: v.len() });
    }
    let mut counts: Option<(usize, usize)> = None;
    for i in (0..g.n).filter(|&i| v.entries[i] != 0) {
        let opposite = g.neighbors[i].iter().filter(|&&j| v.entries[j] == -v.entries[i]).count();
        let zero = g.neighbors[i].iter().filter(|&&j| v.entries[j] == 0).count();
        match counts {
            None => counts = Some((opposite, zero)),
            Some(c) if c != (opposite, zero) => {
                return Err(Error::NotClassConstant(format!(
                    "node {} has (d_pm, d_0) = ({opposite}, {zero}), expected {:?}",
                    i + 1,
                    c
                )));
            }
            _ => {}
        }
    }
    let (d_pm, d_0) = counts.ok_or_else(|| Error::Domain("sign vector is zero".into()))?;
    if (2 * d_pm + d_0) as i64 != v.lambda {
        return Err(Error::NotClassConstant(format!(
            "2 d_pm + d_0 = {} differs from lambda = {}",
            2 * d_pm + d_0,
            v.lambda
        )));
    }
    Ok((d_pm, d_0))
}
