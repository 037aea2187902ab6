//! Interaction networks: validated row-stochastic matrices, connectivity,
//! star detection and the dominant left eigenvector.
//!
//! The central type is [`InteractionMatrix`], the constant matrix `C` of
//! relative interpersonal weights. Entry `c_ij` is the weight (trust)
//! individual `i` places on individual `j`; it is positive exactly when the
//! network graph has an edge between the two. A valid matrix is
//! row-stochastic, has a zero diagonal and is irreducible (its graph is
//! strongly connected).
//!
//! Node labels in the public API are 1-based, matching the usual convention
//! for these models (node 1 is the centre of a star). Slice positions are
//! `label - 1`.

use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Tolerance on `|row sum - 1|` for row-stochasticity checks.
pub const ROW_SUM_TOL: f64 = 1e-12;

/// Default residual tolerance for eigenvector computations.
pub const DEFAULT_EIG_TOL: f64 = 1e-12;

/// Iteration cap for the power iteration.
pub const EIG_MAX_ITER: usize = 1_000_000;

/// Outcome of [`validate`]: one flag per interaction-matrix property.
///
/// `star_center` is populated only when the matrix is irreducible and the
/// graph is a star; it holds the 1-based centre label.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub row_stochastic: bool,
    pub zero_diagonal: bool,
    pub irreducible: bool,
    pub star_center: Option<usize>,
    pub worst_row_sum_error: f64,
}

impl ValidationReport {
    /// True when every property required of an interaction matrix holds.
    pub fn all_passed(&self) -> bool {
        self.row_stochastic && self.zero_diagonal && self.irreducible
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "row_stochastic={} (worst row-sum error {:.3e}), zero_diagonal={}, irreducible={}",
            self.row_stochastic, self.worst_row_sum_error, self.zero_diagonal, self.irreducible
        )
    }
}

/// Checks a raw square matrix against every interaction-matrix property
/// without mutating it. Each property is reported independently.
///
/// Errors only on malformed input: non-square shape, fewer than three rows,
/// or a NaN/infinite entry.
pub fn validate(rows: &[Vec<f64>]) -> Result<ValidationReport, Error> {
    let n = rows.len();
    if n < 3 {
        return Err(Error::Dimension {
            rows: n,
            cols: rows.first().map_or(0, Vec::len),
        });
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Dimension {
                rows: n,
                cols: row.len(),
            });
        }
        for (j, &v) in row.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NumericInput {
                    row: i + 1,
                    col: j + 1,
                });
            }
        }
    }

    let mut worst = 0.0f64;
    let mut nonnegative = true;
    for row in rows {
        let sum: f64 = row.iter().sum();
        worst = worst.max((sum - 1.0).abs());
        nonnegative &= row.iter().all(|&v| v >= 0.0);
    }
    let row_stochastic = nonnegative && worst <= ROW_SUM_TOL;
    let zero_diagonal = (0..n).all(|i| rows[i][i] == 0.0);
    let irreducible = strongly_connected(rows);
    let star_center = if irreducible { star_center(rows) } else { None };

    Ok(ValidationReport {
        row_stochastic,
        zero_diagonal,
        irreducible,
        star_center,
        worst_row_sum_error: worst,
    })
}

/// Strong connectivity of the positive-entry pattern, decided by exact graph
/// search (no numeric threshold): an edge exists wherever an entry is `> 0`.
///
/// Uses one forward and one backward reachability sweep from node 0; the
/// graph is strongly connected iff both sweeps cover every node.
pub fn strongly_connected(rows: &[Vec<f64>]) -> bool {
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return false;
    }
    fn sweep(n: usize, adjacent: impl Fn(usize, usize) -> bool) -> bool {
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for v in 0..n {
                if !seen[v] && adjacent(u, v) {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.iter().all(|&s| s)
    }
    sweep(n, |u, v| rows[u][v] > 0.0) && sweep(n, |u, v| rows[v][u] > 0.0)
}

/// Detects star topology on the positive-entry pattern: returns the 1-based
/// centre label when a node exists that touches every edge of the graph,
/// `None` otherwise. Callers are expected to have checked strong
/// connectivity; a strongly connected star has edges in both directions
/// between the centre and every other node.
pub fn star_center(rows: &[Vec<f64>]) -> Option<usize> {
    let n = rows.len();
    // First undirected pair with a positive entry in either direction.
    let mut first_pair = None;
    'outer: for i in 0..n {
        for j in (i + 1)..n {
            if rows[i][j] > 0.0 || rows[j][i] > 0.0 {
                first_pair = Some((i, j));
                break 'outer;
            }
        }
    }
    let (a, b) = first_pair?;
    // Every edge must touch the centre, so the centre is one of the two
    // endpoints of any edge; check both candidates in label order.
    'candidate: for c in [a, b] {
        for i in 0..n {
            for j in 0..n {
                if i != j && (rows[i][j] > 0.0 || rows[j][i] > 0.0) && i != c && j != c {
                    continue 'candidate;
                }
            }
        }
        return Some(c + 1);
    }
    None
}

#[derive(Serialize, Deserialize)]
struct MatrixFile {
    n: usize,
    rows: Vec<Vec<f64>>,
}

/// A validated relative interaction matrix: row-stochastic, zero diagonal,
/// irreducible, with all entries in `[0, 1]`. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct InteractionMatrix {
    n: usize,
    entries: Vec<f64>, // row-major
}

impl InteractionMatrix {
    /// Builds a matrix from rows, rejecting anything that fails [`validate`].
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self, Error> {
        let report = validate(&rows)?;
        if !report.all_passed() {
            return Err(Error::Invalid(report));
        }
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            entries.extend(row);
        }
        Ok(Self { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Row `i` (0-based position) as a slice.
    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    /// Entry at 0-based position `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    /// Recomputes the validation report (always all-pass for a constructed
    /// matrix; useful for displaying the star check).
    pub fn validation_report(&self) -> ValidationReport {
        validate(&self.to_rows()).expect("constructed matrix is well-formed")
    }

    /// 1-based centre label when the graph is a star, `None` otherwise.
    pub fn star_center(&self) -> Option<usize> {
        star_center(&self.to_rows())
    }

    /// The dominant left eigenvector of the matrix: the positive vector
    /// `gamma` with `gamma^T C = gamma^T` and `sum(gamma) = 1`, computed by
    /// damped power iteration to an infinity-norm residual of at most `tol`.
    ///
    /// Deterministic for a fixed matrix and tolerance. Fails with
    /// [`Error::Convergence`] if the residual does not reach `tol` within
    /// [`EIG_MAX_ITER`] iterations.
    pub fn dominant_left_eigenvector(
        &self,
        tol: f64,
    ) -> Result<DominantLeftEigenvector, Error> {
        let gamma = damped_left_power_iteration(&self.entries, self.n, tol, EIG_MAX_ITER)?;
        DominantLeftEigenvector::from_positive(gamma)
    }

    /// Serialises to the JSON matrix format `{"n": ..., "rows": [[...]]}`.
    pub fn to_json_string(&self) -> String {
        let file = MatrixFile {
            n: self.n,
            rows: self.to_rows(),
        };
        serde_json::to_string_pretty(&file).expect("matrix serialises")
    }

    /// Parses the JSON matrix format and validates the result.
    pub fn from_json_str(s: &str) -> Result<Self, Error> {
        let file: MatrixFile = serde_json::from_str(s)?;
        if file.rows.len() != file.n {
            return Err(Error::Parse(format!(
                "declared n = {} but found {} rows",
                file.n,
                file.rows.len()
            )));
        }
        Self::from_rows(file.rows)
    }

    /// Serialises to the CSV matrix format: n lines of n comma-separated
    /// values, no header.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::new();
        for i in 0..self.n {
            let line: Vec<String> = self.row(i).iter().map(|v| format!("{v}")).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    /// Parses the CSV matrix format and validates the result.
    pub fn from_csv_str(s: &str) -> Result<Self, Error> {
        let mut rows = Vec::new();
        for (i, line) in s.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let row: Result<Vec<f64>, _> = line
                .split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<f64>()
                        .map_err(|e| Error::Parse(format!("line {}: {e}", i + 1)))
                })
                .collect();
            rows.push(row?);
        }
        Self::from_rows(rows)
    }

    /// Loads a matrix file, picking the format by extension (`.csv` for the
    /// headerless CSV layout, JSON otherwise).
    pub fn from_file(path: &Path) -> Result<Self, Error> {
        let text = fs::read_to_string(path)?;
        match path.extension().and_then(|e| e.to_str()) {
            Some("csv") => Self::from_csv_str(&text),
            _ => Self::from_json_str(&text),
        }
    }
}

/// The normalised dominant left eigenvector of an interaction matrix:
/// strictly positive entries summing to one. Its ordering determines the
/// ordering of equilibrium social power.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DominantLeftEigenvector {
    gamma: Vec<f64>,
}

impl DominantLeftEigenvector {
    /// Wraps a strictly positive vector, normalising it to sum one.
    pub fn new(gamma: Vec<f64>) -> Result<Self, Error> {
        Self::from_positive(gamma)
    }

    pub(crate) fn from_positive(mut gamma: Vec<f64>) -> Result<Self, Error> {
        if gamma.is_empty() || gamma.iter().any(|&g| !g.is_finite() || g <= 0.0) {
            return Err(Error::Eigenvector(
                "entries must be finite and strictly positive".into(),
            ));
        }
        let sum: f64 = gamma.iter().sum();
        for g in &mut gamma {
            *g /= sum;
        }
        Ok(Self { gamma })
    }

    pub fn n(&self) -> usize {
        self.gamma.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.gamma
    }

    /// Entry for a 1-based node label.
    pub fn value(&self, node: usize) -> f64 {
        self.gamma[node - 1]
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.gamma
    }

    /// Infinity-norm of `gamma^T C - gamma^T`.
    pub fn residual(&self, c: &InteractionMatrix) -> f64 {
        left_residual(&self.gamma, &c.entries, c.n)
    }
}

fn left_residual(gamma: &[f64], entries: &[f64], n: usize) -> f64 {
    let mut worst = 0.0f64;
    for j in 0..n {
        let mut acc = 0.0;
        for i in 0..n {
            acc += gamma[i] * entries[i * n + j];
        }
        worst = worst.max((acc - gamma[j]).abs());
    }
    worst
}

/// Damped power iteration for the left Perron vector of a row-stochastic
/// matrix: `g <- (g + g^T M) / 2`, renormalised each step. The convex
/// combination with the previous iterate removes the oscillation of periodic
/// patterns (a directed ring, a pure star) without moving the fixed vector.
///
/// Stops at the first iterate whose residual `max_j |(g^T M - g^T)_j|` is at
/// most `tol`.
pub(crate) fn damped_left_power_iteration(
    entries: &[f64],
    n: usize,
    tol: f64,
    max_iter: usize,
) -> Result<Vec<f64>, Error> {
    assert!(tol > 0.0, "tolerance must be positive");
    let mut g = vec![1.0 / n as f64; n];
    let mut image = vec![0.0f64; n];
    let mut residual = f64::INFINITY;
    for _ in 0..max_iter {
        for v in image.iter_mut() {
            *v = 0.0;
        }
        for i in 0..n {
            let gi = g[i];
            let row = &entries[i * n..(i + 1) * n];
            for (v, &m) in image.iter_mut().zip(row) {
                *v += gi * m;
            }
        }
        residual = g
            .iter()
            .zip(&image)
            .map(|(a, b)| (b - a).abs())
            .fold(0.0, f64::max);
        if residual <= tol {
            return Ok(g);
        }
        let mut sum = 0.0;
        for (gv, &iv) in g.iter_mut().zip(&image) {
            *gv = 0.5 * (*gv + iv);
            sum += *gv;
        }
        for gv in g.iter_mut() {
            *gv /= sum;
        }
    }
    Err(Error::Convergence {
        residual,
        iterations: max_iter,
    })
}
